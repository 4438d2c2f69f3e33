"""Win-chain derivations: every intermediate constant of the bootstrap proof
certifies at its stated cap, across the full r sweep."""

import math
from fractions import Fraction

import pytest

from gpbound.certify import win_chain_sieved_derive, win_chain_derive, win_chain_sweep
from gpbound.errors import DomainError, ParameterError


def _check(report, name):
    matches = [c for c in report.checks if c.name.startswith(name)]
    assert matches, f"no check named {name!r}"
    return matches[0]


def test_win_chain_r2_values():
    rep = win_chain_derive(2)
    assert rep.all_certified
    # h recipe at p = 1e15: (4/e)(2p)^(1/4) / sqrt(3) ~= 5681.5
    h = _check(rep, "h >= 33")
    expected = (4 / math.e) * (2e15) ** 0.25 * (1 / 3) ** 0.5
    assert float(h.value) == pytest.approx(expected, rel=1e-6)
    x = _check(rep, "X >= 2000")
    assert float(x.value) == pytest.approx(2 * 16 * (1e15) ** 0.125, rel=1e-6)
    closing = _check(rep, "closing constant < 4")
    assert float(closing.value) == pytest.approx(3.38307, abs=1e-4)


def test_win_chain_constant_caps_across_sweep():
    for r in (2, 3, 7, 25, 100):
        rep = win_chain_derive(r)
        assert rep.all_certified, (r, rep.failed())
        assert float(_check(rep, "A(X)^r").value) >= 0.998
        assert float(_check(rep, "rY <=").value) <= 0.129
        assert float(_check(rep, "B(X)^r").value) <= 1.145
        assert float(_check(rep, "closing constant").value) < 4


def test_win2_chain_constant_caps():
    for r in (2, 3, 7, 50):
        rep = win_chain_sieved_derive(r)
        assert rep.all_certified, (r, rep.failed())
        assert float(_check(rep, "X >= 500").value) >= 500
        assert float(_check(rep, "A(X)^r").value) >= 0.992
        assert float(_check(rep, "rY <=").value) <= 0.138
        assert float(_check(rep, "B(X)^r").value) <= 1.158


def test_win2_caps_weaker_than_win():
    # the sieved caps are consistent relaxations of the plain ones
    assert Fraction(992, 1000) <= Fraction(998, 1000)
    assert Fraction(1158, 1000) >= Fraction(1145, 1000)
    assert Fraction(138, 1000) >= Fraction(129, 1000)
    rep1 = win_chain_derive(2)
    rep2 = win_chain_sieved_derive(2)
    assert rep1.all_certified and rep2.all_certified


def test_fallback_constant_tightest_at_r2():
    values = []
    for r in (2, 3, 5, 20):
        rep = win_chain_derive(r)
        values.append(float(_check(rep, "fallback constant").value))
    assert values == sorted(values)
    assert values[0] == pytest.approx((math.sqrt(2) / 3) ** 0.25, rel=1e-9)
    assert values[0] >= math.sqrt(math.e) / 2


def test_full_sweep():
    summary = win_chain_sweep(range(2, 101))
    assert summary["all_certified"], summary["failures"]


def test_trivial_branch_appears_for_large_r():
    rep = win_chain_derive(10)  # 2^80 > 1e15
    names = [c.name for c in rep.checks]
    assert any("trivial branch" in n for n in names)
    assert rep.all_certified


def test_input_validation():
    with pytest.raises(DomainError):
        win_chain_derive(1)
    with pytest.raises(ParameterError):
        win_chain_derive(2, p_min=10**9)
    with pytest.raises(ParameterError):
        win_chain_derive(2, omega_min=1)


def test_report_json():
    blob = win_chain_derive(3).to_json()
    assert blob["all_certified"] is True
    assert blob["kind"] == "plain"
    assert any(c["name"] == "h >= 33" for c in blob["checks"])
