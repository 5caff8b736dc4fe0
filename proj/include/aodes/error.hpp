#pragma once

#include <stdexcept>
#include <string>

namespace aodes {

enum class ErrorKind {
    Parse,
    Autonomy,
    OrderLimit,
    Dimension,
    TrivialSystem,
    FactorizationLimit,
    ExtensionTowerLimit,
    ConstantPolynomial,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Process exit code contract: 0 success, 2 dimension, 3 parse/autonomy,
    // 4 resource limits, 1 anything else.
    int exit_code() const noexcept {
        switch (kind_) {
            case ErrorKind::Dimension: return 2;
            case ErrorKind::Parse:
            case ErrorKind::Autonomy: return 3;
            case ErrorKind::OrderLimit:
            case ErrorKind::FactorizationLimit:
            case ErrorKind::ExtensionTowerLimit: return 4;
            default: return 1;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void check(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

// Internal invariant violations (bugs, not user errors).
inline void invariant(bool cond, const std::string& msg) {
    if (!cond) fail(ErrorKind::Internal, "internal invariant violated: " + msg);
}

} // namespace aodes
