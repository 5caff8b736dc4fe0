#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "aodes/solveapi.hpp"

namespace {

std::string read_input(const std::string& file, const std::string& expr) {
    if (!expr.empty()) return expr;
    if (file.empty() || file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const aodes::CommandResult& r, bool json) {
    if (json) std::cout << r.json << "\n";
    else std::cout << r.text;
    if (r.exit_code != 0 && !json) std::cerr << "";
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver for systems of autonomous algebraic ODEs of dimension one"};
    app.require_subcommand(1);

    std::string file, expr, format = "text";
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", file, "input file with the system ('-' for stdin)");
        cmd->add_option("--expr", expr, "system given inline");
    };

    auto* reduce = app.add_subcommand("reduce", "compute the reduced differential equation");
    add_input(reduce);

    auto* tri = app.add_subcommand("triangularize", "regular chain decomposition (debug view)");
    add_input(tri);

    auto* solve = app.add_subcommand("solve", "enumerate formal Puiseux series solutions");
    add_input(solve);
    std::string order_str, point_str;
    bool at_inf = false;
    solve->add_option("--order", order_str, "truncation order (rational)");
    solve->add_flag("--at-infinity", at_inf, "expand at x = infinity");
    solve->add_option("--point", point_str, "x0,y0: solutions through a point");

    auto* alg = app.add_subcommand("solve-algebraic", "decide/compute algebraic solutions");
    add_input(alg);
    bool rational_only = false;
    alg->add_flag("--rational-only", rational_only, "report only rational solutions");

    auto* verify = app.add_subcommand("verify", "oracle check of a provided truncation");
    add_input(verify);
    std::string trunc_str, vorder_str = "3";
    verify->add_option("--truncation", trunc_str, "series, e.g. \"1 + x - 1/2*x^2\"")->required();
    verify->add_option("--order", vorder_str, "verification order (rational)");

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace aodes;
        bool json = format == "json";
        if (app.got_subcommand(reduce)) return emit(run_reduce(read_input(file, expr)), json);
        if (app.got_subcommand(tri)) return emit(run_triangularize(read_input(file, expr)), json);
        if (app.got_subcommand(solve)) {
            SolveOptions opts;
            if (!order_str.empty()) opts.order = Rat::from_string(order_str);
            opts.at_infinity = at_inf;
            if (!point_str.empty()) {
                auto comma = point_str.find(',');
                if (comma == std::string::npos) {
                    std::cerr << "error: --point expects x0,y0\n";
                    return 3;
                }
                opts.point = std::make_pair(Rat::from_string(point_str.substr(0, comma)),
                                            Rat::from_string(point_str.substr(comma + 1)));
            }
            return emit(run_solve(read_input(file, expr), opts), json);
        }
        if (app.got_subcommand(alg))
            return emit(run_solve_algebraic(read_input(file, expr), rational_only), json);
        if (app.got_subcommand(verify))
            return emit(run_verify(read_input(file, expr), trunc_str, Rat::from_string(vorder_str)),
                        json);
    } catch (const aodes::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    return 1;
}
