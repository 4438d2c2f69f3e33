"""The e-free sieve.

n is e-free when y^d = n (mod p) is insoluble for every divisor d > 1 of e;
(p-1)-free means primitive root.  In the cyclic group written to the fixed
generator, n = g^k is e-free iff no prime divisor of e divides k, which is
how every indicator here is computed (exactly, O(omega(e)) per query).

The module verifies the two displayed identities behind the sieve bound and
the bound itself:

    f_e(n)/theta(e) = 1 + sum_{d|e, d>1} (mu(d)/phi(d)) sum_{ord chi = d} chi(n)

    f(n)/(delta theta(e)) >= 1
        + (1/delta) sum_i theta(p_i) sum_{d|e} (mu(p_i d)/phi(p_i d)) sum_{ord = p_i d} chi(n)
        + sum_{d|e, d>1} (mu(d)/phi(d)) sum_{ord = d} chi(n)

(the excluded-prime inner sum deliberately includes d = 1, as displayed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import order_sum_table
from .errors import ConfigError, ConsistencyError, DomainError
from .ntcore import (
    Factorization,
    PrimeContext,
    euler_phi,
    factorize,
    moebius,
    theta,
)

IDENTITY_TOL = 1e-6


@dataclass(frozen=True)
class SieveConfig:
    """An even divisor e of p-1 with the excluded primes and their density.

    The excluded set is recomputed from the factorization of p-1 rather than
    trusted from the caller: delta is safety-critical downstream.
    """

    ctx: PrimeContext
    e: int
    excluded: tuple[int, ...]
    s: int
    delta: Fraction

    @classmethod
    def build(cls, ctx: PrimeContext, e: int) -> "SieveConfig":
        if e % 2 != 0:
            raise ConfigError(f"e must be even, got {e}")
        if (ctx.p - 1) % e != 0:
            raise ConfigError(f"e = {e} does not divide p-1 = {ctx.p - 1}")
        excluded = tuple(q for q in ctx.pm1_factors.primes if e % q != 0)
        delta = 1 - sum(Fraction(1, q) for q in excluded)
        return cls(ctx=ctx, e=e, excluded=excluded, s=len(excluded), delta=delta)

    @property
    def sieve_factor(self) -> Fraction:
        """(2 + (s-1)/delta) 2^(omega-s), exact; 2^omega when s = 0."""
        if self.s == 0:
            return Fraction(2**self.ctx.omega)
        if self.delta <= 0:
            raise ConfigError(f"delta = {self.delta} <= 0; config unusable in bounds")
        return (2 + Fraction(self.s - 1) / self.delta) * 2 ** (self.ctx.omega - self.s)

    def require_positive_delta(self) -> None:
        if self.delta <= 0:
            raise ConfigError(f"delta = {self.delta} <= 0")

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "excluded": list(self.excluded),
            "s": self.s,
            "delta": str(self.delta),
        }


def admissible_configs(ctx: PrimeContext) -> list[SieveConfig]:
    """Every even divisor of p-1 whose excluded primes keep delta > 0."""
    out = []
    for e in ctx.divisors_of_pm1():
        if e % 2 != 0:
            continue
        cfg = SieveConfig.build(ctx, e)
        if cfg.delta > 0:
            out.append(cfg)
    return out


def e_free(ctx: PrimeContext, e: int, n: int) -> int:
    """Indicator that n is e-free: via discrete log, no prime of e divides k."""
    if (ctx.p - 1) % e != 0:
        raise DomainError(f"e = {e} must divide p-1")
    k = ctx.dlog(n)
    return int(all(k % q != 0 for q in factorize(e).primes))


def e_free_all(ctx: PrimeContext, e: int) -> np.ndarray:
    """e-free indicator for all k in [0, p-1), indexed by discrete log."""
    k = np.arange(ctx.p - 1, dtype=np.int64)
    mask = np.ones(ctx.p - 1, dtype=bool)
    for q in factorize(e).primes:
        mask &= k % q != 0
    return mask


def _mu_over_phi(n: int) -> Fraction:
    m = moebius(n)
    return Fraction(0) if m == 0 else Fraction(m, euler_phi(n))


def _identity_rhs_table(ctx: PrimeContext, e: int, efac: Factorization) -> np.ndarray:
    """Vector over k of 1 + sum_{d|e, d>1} (mu(d)/phi(d)) sum_{ord=d} chi(g^k)."""
    rhs = np.ones(ctx.p - 1, dtype=complex)
    for d in efac.divisors():
        if d == 1:
            continue
        w = _mu_over_phi(d)
        if w == 0:
            continue
        rhs = rhs + float(w) * order_sum_table(ctx, d)
    return rhs


def fe_character_identity_check(ctx: PrimeContext, e: int, n: int) -> float:
    """|f_e(n)/theta(e) - Re RHS| + |Im RHS| for the displayed identity;
    raises ConsistencyError beyond 1e-6."""
    efac = factorize(e)
    k = ctx.dlog(n)
    lhs = float(Fraction(e_free(ctx, e, n), 1) / theta(e))
    rhs = complex(_identity_rhs_table(ctx, e, efac)[k])
    slack = abs(lhs - rhs.real) + abs(rhs.imag)
    if slack > IDENTITY_TOL:
        raise ConsistencyError(
            f"f_e identity violated at p={ctx.p}, e={e}, n={n}: slack={slack:.3e}"
        )
    return slack


def fe_identity_worst_slack(ctx: PrimeContext, e: int) -> float:
    """Worst identity slack over every n in [1, p-1] (vectorized)."""
    efac = factorize(e)
    lhs = e_free_all(ctx, e).astype(float) / float(theta(e))
    rhs = _identity_rhs_table(ctx, e, efac)
    slack = np.abs(lhs - rhs.real) + np.abs(rhs.imag)
    return float(slack.max())


def _lower_bound_rhs_table(config: SieveConfig) -> np.ndarray:
    """Vector over k of the sieve bound's right-hand side."""
    ctx = config.ctx
    efac = factorize(config.e)
    rhs = _identity_rhs_table(ctx, config.e, efac).copy()
    inv_delta = float(1 / config.delta)
    for p_i in config.excluded:
        inner = np.zeros(ctx.p - 1, dtype=complex)
        for d in efac.divisors():  # d = 1 included here
            w = _mu_over_phi(p_i * d)
            if w == 0:
                continue
            inner = inner + float(w) * order_sum_table(ctx, p_i * d)
        rhs = rhs + inv_delta * float(theta(p_i)) * inner
    return rhs


def sieve_lower_bound_check(config: SieveConfig, n: int) -> float:
    """Slack f(n)/(delta theta(e)) - Re RHS (>= -1e-6 required); also checks
    the RHS is real to tolerance."""
    config.require_positive_delta()
    ctx = config.ctx
    k = ctx.dlog(n)
    f = e_free(ctx, ctx.p - 1, n)
    lhs = float(Fraction(f) / (config.delta * theta(config.e)))
    rhs = complex(_lower_bound_rhs_table(config)[k])
    if abs(rhs.imag) > IDENTITY_TOL:
        raise ConsistencyError(f"sieve RHS not real at p={ctx.p}, n={n}: {rhs.imag}")
    slack = lhs - rhs.real
    if slack < -IDENTITY_TOL:
        raise ConsistencyError(
            f"sieve lower bound violated at p={ctx.p}, e={config.e}, n={n}: "
            f"lhs={lhs:.6f} rhs={rhs.real:.6f}"
        )
    return slack


def sieve_lower_bound_worst_slack(config: SieveConfig) -> float:
    """min over n of f(n)/(delta theta(e)) - Re RHS, vectorized; raises on breach."""
    config.require_positive_delta()
    ctx = config.ctx
    lhs = e_free_all(ctx, ctx.p - 1).astype(float) / float(
        config.delta * theta(config.e)
    )
    rhs = _lower_bound_rhs_table(config)
    if float(np.abs(rhs.imag).max()) > IDENTITY_TOL:
        raise ConsistencyError(f"sieve RHS not real at p={ctx.p}, e={config.e}")
    slack = lhs - rhs.real
    worst = float(slack.min())
    if worst < -IDENTITY_TOL:
        k = int(slack.argmin())
        n = pow(ctx.generator, k, ctx.p)
        raise ConsistencyError(
            f"sieve lower bound violated at p={ctx.p}, e={config.e}, n={n}: "
            f"slack={worst:.3e}"
        )
    return worst


def intermediate_identities_check(config: SieveConfig, n: int) -> dict:
    """Check the two proof-level displays at one n.

    (a) exact rational: f_{p-1}(n) >= sum_i (f_{p_i e}(n) - theta(p_i) f_e(n))
        + delta f_e(n)
    (b) float: f_{p_i e}(n) - theta(p_i) f_e(n)
        = theta(p_i e) sum_{d|e} (mu(p_i d)/phi(p_i d)) sum_{ord = p_i d} chi(n)
    """
    ctx = config.ctx
    e = config.e
    efac = factorize(e)
    k = ctx.dlog(n)
    f_full = e_free(ctx, ctx.p - 1, n)
    f_e_val = e_free(ctx, e, n)

    rhs_exact = Fraction(0)
    worst_expansion = 0.0
    for p_i in config.excluded:
        f_pe = e_free(ctx, p_i * e, n)
        term = Fraction(f_pe) - theta(p_i) * f_e_val
        rhs_exact += term

        expansion = 0j
        for d in efac.divisors():
            w = _mu_over_phi(p_i * d)
            if w == 0:
                continue
            expansion += float(w) * complex(order_sum_table(ctx, p_i * d)[k])
        expansion *= float(theta(p_i * e))
        err = abs(float(term) - expansion.real) + abs(expansion.imag)
        worst_expansion = max(worst_expansion, err)
    rhs_exact += config.delta * f_e_val

    combinatorial_ok = Fraction(f_full) >= rhs_exact
    if not combinatorial_ok:
        raise ConsistencyError(
            f"combinatorial sieve inequality violated at p={ctx.p}, e={e}, n={n}"
        )
    if worst_expansion > IDENTITY_TOL:
        raise ConsistencyError(
            f"character expansion of f_pe - theta f_e off by {worst_expansion:.3e}"
        )
    return {
        "n": n,
        "combinatorial_ok": combinatorial_ok,
        "combinatorial_margin": float(Fraction(f_full) - rhs_exact),
        "expansion_worst_error": worst_expansion,
    }
