"""Smoke tests for the python bindings."""

import math

import pytest

opoly = pytest.importorskip("opoly")


def test_rho_closed_form():
    value = float(opoly.rho(0.5, 1.0, digits=25))
    exact = math.sqrt(math.pi) * math.exp(-2.0)
    assert abs(value - exact) < 1e-15


def test_gamma():
    assert abs(float(opoly.gamma(5.0, digits=20)) - 24.0) < 1e-15


def test_laguerre_low_degrees():
    assert opoly.laguerre(0, 0.0, 3.0) == 1.0
    assert abs(opoly.laguerre(1, 0.0, 2.0) + 1.0) < 1e-12


def test_coeffs_anchor():
    table = opoly.coeffs(-0.5, 1.0, n_max=1, digits=30)
    assert table["n_max"] == 1
    assert table["rows"][0]["B_n"].startswith("1.5")
    assert table["rows"][1]["A_n"].startswith("-1")
    assert abs(float(table["rows"][0]["B_n"]) - 1.5) < 1e-25


def test_eval_and_gauss_consistency():
    # the single Gauss node of the 1-point rule is B_0 and P_1 vanishes there
    nodes, weights = opoly.gauss_rule(-0.5, 1.0, m=1, digits=25)
    assert len(nodes) == len(weights) == 1
    assert abs(float(nodes[0]) - 1.5) < 1e-20
    p1 = float(opoly.eval_poly(-0.5, 1.0, 1, float(nodes[0]), digits=25))
    assert abs(p1) < 1e-12


def test_expand_zero_block():
    d = opoly.expand(0.5, 1.0, n=2, k_max=4, digits=20)
    assert len(d) == 5
    assert abs(float(d[0])) < 1e-14
    assert abs(float(d[1])) < 1e-14
    assert abs(float(d[2])) > 1e-4


def test_verify_small_suite_passes():
    rows = opoly.verify(0.5, 1.0, n_max=2, digits=15, suite="2.1,2.5,3.1,2.27", seed=42)
    assert rows
    ids = {row["identity_id"] for row in rows}
    assert ids == {"2.1", "2.5", "3.1", "2.27"}
    assert all(row["pass"] for row in rows)


def test_identity_catalog():
    ids = opoly.identity_catalog()
    assert "3.11" in ids and "4.12" in ids and len(ids) == 50
