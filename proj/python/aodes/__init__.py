"""Exact solver for systems of autonomous algebraic ODEs of dimension one.

Thin wrapper over the C++ extension; every call returns the parsed JSON
report of the corresponding CLI command.
"""

import json

import _aodes

__all__ = ["reduce", "triangularize", "solve", "solve_algebraic", "verify"]


def reduce(system):
    return json.loads(_aodes.reduce(system))


def triangularize(system):
    return json.loads(_aodes.triangularize(system))


def solve(system, order="", at_infinity=False, point=""):
    return json.loads(_aodes.solve(system, order, at_infinity, point))


def solve_algebraic(system, rational_only=False):
    return json.loads(_aodes.solve_algebraic(system, rational_only))


def verify(system, truncation, order="3"):
    return json.loads(_aodes.verify(system, truncation, order))
