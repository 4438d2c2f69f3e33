"""The Burgess interval family around the rationals tp/q.

For 0 <= t < q <= X with gcd(t,q)=1, the intervals

    I(q,t) = ( tp/q,        (tp+H)/q - h + 1 ]
    J(q,t) = [ (tp-H)/q,    tp/q - h + 1     )

are pairwise disjoint subsets of [-H, p-H) whenever X = H/h >= 2 and
2HX < p, and shifting any integer point by n < h stays within (0,H] resp.
[-H,0) after clearing denominators.  Endpoints are kept as exact rationals:
the counting envelopes are tight enough that floating endpoints could flip
integer counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd

import numpy as np

from .enclosure import CertifiedReal, enclose, envelope_a, envelope_b, working_precision
from .errors import ParameterError, VerificationFailure


@dataclass(frozen=True)
class IntervalEntry:
    q: int
    t: int
    i_lo: Fraction  # open
    i_hi: Fraction  # closed
    j_lo: Fraction  # closed
    j_hi: Fraction  # open

    def count_i(self) -> int:
        return floor(self.i_hi) - floor(self.i_lo)

    def count_j(self) -> int:
        return ceil(self.j_hi) - ceil(self.j_lo)

    def i_contains(self, z) -> bool:
        return self.i_lo < z <= self.i_hi

    def j_contains(self, z) -> bool:
        return self.j_lo <= z < self.j_hi


@dataclass(frozen=True)
class EnvelopePair:
    a_factor: float
    b_factor: float


@dataclass(frozen=True)
class IntervalSystem:
    p: int
    H: Fraction
    h: int
    X: Fraction
    entries: tuple[IntervalEntry, ...]


def build_intervals(p: int, H, h: int) -> IntervalSystem:
    """Construct the full (q,t) family with exact endpoints.

    Preconditions are checked by name: h >= 2, 0 < H < p, X = H/h >= 2,
    2HX < p.  Disjointness and containment in [-H, p-H) are asserted on the
    built system.
    """
    H = Fraction(H)
    if h < 2:
        raise ParameterError(f"h >= 2 required, got h = {h}")
    if not (0 < H < p):
        raise ParameterError(f"0 < H < p required, got H = {H}, p = {p}")
    X = H / h
    if X < 2:
        raise ParameterError(f"X = H/h >= 2 required, got X = {float(X):.6g}")
    if 2 * H * X >= p:
        raise ParameterError(
            f"2HX < p required, got 2HX = {float(2 * H * X):.6g} >= {p}"
        )
    entries = []
    for q in range(1, floor(X) + 1):
        for t in range(q):
            if gcd(t, q) != 1:
                continue
            a = Fraction(t * p, q)
            entries.append(
                IntervalEntry(
                    q=q,
                    t=t,
                    i_lo=a,
                    i_hi=a + H / q - h + 1,
                    j_lo=a - H / q,
                    j_hi=a - h + 1,
                )
            )
    system = IntervalSystem(p=p, H=H, h=h, X=X, entries=tuple(entries))
    _assert_disjoint_and_contained(system)
    return system


def _assert_disjoint_and_contained(system: IntervalSystem) -> None:
    # (left, right, right_closed) for every interval, exact comparisons
    spans = []
    for e in system.entries:
        spans.append((e.j_lo, e.j_hi, False))
        spans.append((e.i_lo, e.i_hi, True))
    spans.sort(key=lambda s: (s[0], s[1]))
    lo_bound, hi_bound = -system.H, system.p - system.H
    for left, right, _closed in spans:
        if left < lo_bound or right > hi_bound:
            raise VerificationFailure(
                f"interval [{left},{right}] escapes [-H, p-H) at p={system.p}"
            )
    for (l1, r1, closed1), (l2, _r2, _c2) in zip(spans, spans[1:]):
        # open/closed mix: touching endpoints collide only if both sides close
        if r1 > l2 or (r1 == l2 and closed1):
            raise VerificationFailure(
                f"intervals overlap near {float(l2):.6g} at p={system.p}"
            )


def count_points(system: IntervalSystem) -> int:
    """Exact number of integer points in the union, by rational floor/ceil."""
    return sum(e.count_i() + e.count_j() for e in system.entries)


def envelopes(X, h) -> EnvelopePair:
    """A(X) = 1 - 2pi^2/(9X);  B(X) = 1 + 2pi^2/(9X) + 1/h + (pi^2/3h) log(X)/X."""
    x = float(X)
    a = 1 - 2 * math.pi**2 / (9 * x)
    b = 1 + 2 * math.pi**2 / (9 * x) + 1 / h + (math.pi**2 / (3 * h)) * math.log(x) / x
    return EnvelopePair(a_factor=a, b_factor=b)


def envelope_bounds_enclosure(X, h) -> tuple[CertifiedReal, CertifiedReal]:
    """Enclosures of A(X)(6/pi^2)X^2 h and B(X)(6/pi^2)X^2 h."""
    x = enclose(Fraction(X))
    scale = 6 / CertifiedReal.pi() ** 2 * x**2 * h
    return envelope_a(x) * scale, envelope_b(x, h) * scale


# -- phi summatories ---------------------------------------------------------


def _phi_table(n: int) -> np.ndarray:
    ph = np.arange(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if ph[i] == i:
            ph[i::i] -= ph[i::i] // i
    return ph


def sum_T(X) -> int:
    """T(X) = sum_{q <= X} phi(q), exact."""
    n = floor(Fraction(X))
    if n < 1:
        return 0
    return int(_phi_table(n)[1:].sum())


def sum_S(X) -> Fraction:
    """S(X) = X sum_{q<=X} phi(q)/q - sum_{q<=X} phi(q), exact rational."""
    X = Fraction(X)
    n = floor(X)
    if n < 1:
        return Fraction(0)
    ph = _phi_table(n)
    acc = Fraction(0)
    for q in range(1, n + 1):
        acc += Fraction(int(ph[q]), q)
    return X * acc - int(ph[1:].sum())


@dataclass(frozen=True)
class SweepReport:
    claim: str
    x_range: tuple[float, float]
    worst_slack: float
    worst_x: float
    checked: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "X_range": list(self.x_range),
            "worst_slack": self.worst_slack,
            "worst_x": self.worst_x,
            "checked": self.checked,
            "pass": self.passed,
        }


def verify_S_envelope(x_max: int = 38, precision_bits: int = 128) -> SweepReport:
    """Check |S(X) - 3 X^2/pi^2| <= (2/3) X for all real X in [1, x_max).

    S is piecewise linear on [k, k+1) with S(X) = a X - b, a = sum phi(q)/q,
    b = T(k), and is continuous at integers.  On each segment the difference
    D(X) = S - 3X^2/pi^2 gives two one-sided constraints:
      D - (2/3)X is concave -> sup at the stationary point or endpoints;
      -D - (2/3)X is convex -> sup at endpoints.
    The stationary value has the closed form (a - 2/3)^2 pi^2/12 - b.
    """
    n = x_max
    ph = _phi_table(n)
    with working_precision(precision_bits):
        pi2 = CertifiedReal.pi() ** 2
        worst = None
        checked = 0
        a = Fraction(0)
        b = 0
        for k in range(1, n):
            a += Fraction(int(ph[k]), k)
            b += int(ph[k])

            def slack_at(x: Fraction) -> CertifiedReal:
                d = enclose(a * x - b) - 3 * enclose(x) ** 2 / pi2
                return enclose(Fraction(2, 3) * x) - abs(d)

            candidates = [
                (slack_at(Fraction(k)), float(k)),
                (slack_at(Fraction(k + 1)), float(k + 1)),
            ]
            checked += 2
            # stationary point of D - (2/3)X at X* = (a - 2/3) pi^2 / 6; its
            # value bounds the segment sup, so include it unless X* is
            # certainly outside (conservative when X* straddles an endpoint)
            xs = enclose(a - Fraction(2, 3)) * pi2 / 6
            certainly_outside = xs.le(k) is True or xs.ge(k + 1) is True
            if not certainly_outside:
                f1_max = enclose(a - Fraction(2, 3)) ** 2 * pi2 / 12 - b
                candidates.append((-f1_max, xs.lo))
                checked += 1
            for cand, where in candidates:
                if worst is None or cand.lo < worst[0].lo:
                    worst = (cand, where)
        slack, where = worst
        passed = bool(slack.gt(0))
    return SweepReport(
        claim="|S - 3X^2/pi^2| <= (2/3) X",
        x_range=(1.0, float(x_max)),
        worst_slack=slack.lo,
        worst_x=where,
        checked=checked,
        passed=passed,
    )


def verify_T_envelope(x_max: int = 1000, precision_bits: int = 128) -> SweepReport:
    """Check |T(X) - 3 X^2/pi^2| <= X log X for all real X in [2, x_max).

    T is constant on [k, k+1).  With u(X) = T(k) - 3X^2/pi^2:
      u - X log X is decreasing -> sup at the left endpoint;
      -u - X log X is convex for X >= pi^2/6 -> sup at endpoints.
    So both segment endpoints are the only candidates.
    """
    n = x_max
    ph = _phi_table(n)
    t_cum = np.cumsum(ph[1:])  # t_cum[k-1] = T(k)
    with working_precision(precision_bits):
        pi2 = CertifiedReal.pi() ** 2
        worst = None
        checked = 0
        for k in range(2, n):
            t_val = int(t_cum[k - 1])
            for x in (k, k + 1):
                xe = enclose(x)
                diff = abs(enclose(t_val) - 3 * xe**2 / pi2)
                slack = xe * xe.log() - diff
                checked += 1
                if worst is None or slack.lo < worst[0].lo:
                    worst = (slack, float(x))
        slack, where = worst
        passed = bool(slack.gt(0))
    return SweepReport(
        claim="|T - 3X^2/pi^2| <= X log X",
        x_range=(2.0, float(x_max)),
        worst_slack=slack.lo,
        worst_x=where,
        checked=checked,
        passed=passed,
    )


def _mobius_table(n: int) -> np.ndarray:
    mu = np.ones(n + 1, dtype=np.int64)
    is_comp = np.zeros(n + 1, dtype=bool)
    primes = []
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > n:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    mu[0] = 0
    return mu


def verify_external_inputs(x_max: int = 10**6) -> list[SweepReport]:
    """Desk-scale empirical checks of the trusted external estimates.

    At every integer X <= x_max:
      1. |sum_{d<=X} mu(d)/d| <= 1/10 + 2/X
      2. sum_{d<=X} mu(d)^2 <= (6/pi^2) X + 0.679091 sqrt(X)
      3. sum_{d<=X} mu(d)^2/d <= (6/pi^2) log X + 2          (X >= 2)
      4. |sum_{d>X} mu(d)/d^2| <= 1/X  (tail via 6/pi^2 minus the partial sum)

    These are trusted external estimates, not re-proved here; float
    evaluation with generous slack is appropriate.
    """
    mu = _mobius_table(x_max)
    d = np.arange(x_max + 1, dtype=float)
    d[0] = 1.0
    mu_f = mu.astype(float)
    c1 = np.cumsum(mu_f[1:] / d[1:])
    c2 = np.cumsum((mu[1:] != 0).astype(float))
    c3 = np.cumsum(mu_f[1:] ** 2 / d[1:])
    c4 = np.cumsum(mu_f[1:] / d[1:] ** 2)
    xs = np.arange(1, x_max + 1, dtype=float)
    six_pi2 = 6 / math.pi**2

    reports = []

    def summarize(claim, slack, lo=1):
        sl = slack[lo - 1 :]
        i = int(np.argmin(sl))
        reports.append(
            SweepReport(
                claim=claim,
                x_range=(float(lo), float(x_max)),
                worst_slack=float(sl[i]),
                worst_x=float(i + lo),
                checked=len(sl),
                passed=bool(sl[i] > 0),
            )
        )

    summarize("|sum mu(d)/d| <= 1/10 + 2/X", (0.1 + 2 / xs) - np.abs(c1))
    summarize(
        "sum mu^2(d) <= 6X/pi^2 + 0.679091 sqrt(X)",
        six_pi2 * xs + 0.679091 * np.sqrt(xs) - c2,
    )
    summarize(
        "sum mu^2(d)/d <= 6 log(X)/pi^2 + 2",
        six_pi2 * np.log(np.maximum(xs, 2)) + 2 - c3,
        lo=2,
    )
    summarize("|sum_{d>X} mu(d)/d^2| <= 1/X", 1 / xs - np.abs(six_pi2 - c4))
    return reports
