"""Smoke tests for the python module: the golden pipeline end to end."""

import pytest

import aodes

SYSTEM = "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0"


def test_reduce_golden():
    out = aodes.reduce(SYSTEM)
    assert out["H"] == "y*y' - 1"
    gcds = sorted(pc["h_chain"] for pc in out["per_chain"])
    assert gcds == ["1", "y*y' - 1"]


def test_solve_golden():
    out = aodes.solve(SYSTEM, order="3")
    assert out["H"] == "y*y' - 1"
    fam = out["families"][0]
    assert fam["constraints"] == ["y0"]
    terms = fam["truncation"]["terms"]
    assert [t["exp"] for t in terms] == ["0", "1", "2", "3"]
    assert terms[2]["coeff"]["num"] == "-1/2"
    assert terms[2]["coeff"]["den"] == "y0^3"
    assert len(out["critical"]) == 2
    assert all(c["exact"] for c in out["critical"])
    assert out["infinity_branch_count"] == 0


def test_solve_at_point():
    out = aodes.solve(SYSTEM, order="3", point="2,3")
    assert len(out["solutions"]) == 1
    terms = out["solutions"][0]["terms"]
    assert terms[0]["coeff"]["value"] == "3"


def test_solve_algebraic_golden():
    out = aodes.solve_algebraic(SYSTEM)
    fams = out["families"]
    assert len(fams) == 1
    assert fams[0]["G"] == "Y^2 - 2*x"
    assert (fams[0]["deg_x"], fams[0]["deg_Y"]) == (1, 2)


def test_verify():
    out = aodes.verify(SYSTEM, "1 + x - 1/2*x^2 + 1/2*x^3", order="3")
    assert out["ok"] is True
    bad = aodes.verify("y' = 1", "1 + 2*x", order="1")
    assert bad["ok"] is False


def test_triangularize():
    out = aodes.triangularize(SYSTEM)
    assert len(out["chains"]) >= 2
    assert all(c["regular"] for c in out["chains"])


def test_errors_raise():
    with pytest.raises(ValueError):
        aodes.reduce("x^2*y' - y + x = 0")
