"""Exact integer number theory.

Primality, factorization, the classical multiplicative functions, and the
brute-force least-primitive-root oracle.  Everything here is exact integer
or rational arithmetic; no floats.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import (
    BudgetExceededError,
    DomainError,
    UnsupportedRangeError,
)

# Strong-pseudoprime witnesses proven sufficient below this bound
# (Sorenson & Webster), which comfortably covers every integer the
# desk-scale machinery ever tests.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIME_LIMIT = 1 << 16


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_upto(_SMALL_PRIME_LIMIT))


def primes_upto(n: int) -> list[int]:
    """All primes <= n by a plain sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i in range(2, n + 1) if sieve[i]]


def first_primes(k: int) -> list[int]:
    """The first k primes."""
    if k <= 0:
        return []
    # p_k < k(ln k + ln ln k) for k >= 6
    bound = 15 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 10
    ps = primes_upto(bound)
    while len(ps) < k:
        bound *= 2
        ps = primes_upto(bound)
    return ps[:k]


def nth_prime(i: int) -> int:
    """The i-th prime, 1-indexed (nth_prime(1) == 2)."""
    if i < 1:
        raise DomainError("prime index must be >= 1")
    return first_primes(i)[-1]


def _mr_witness_composite(n: int, a: int, d: int, s: int) -> bool:
    """True if witness a proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Guaranteed correct for 0 <= n < MR_DETERMINISTIC_LIMIT (~3.3e24, beyond
    2^81); larger inputs raise UnsupportedRangeError rather than return a
    probabilistic answer.
    """
    if n < 0:
        raise DomainError("primality is defined for nonnegative integers")
    if n >= MR_DETERMINISTIC_LIMIT:
        raise UnsupportedRangeError(
            f"deterministic witness set only proven below {MR_DETERMINISTIC_LIMIT}"
        )
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return not any(_mr_witness_composite(n, a, d, s) for a in _MR_WITNESSES)


def is_probable_prime(n: int) -> bool:
    """Baillie-PSW probable-prime test for inputs beyond the deterministic range.

    Used only to validate user-supplied factorizations of huge p-1; no
    composite passing BPSW is known.  Below the deterministic limit this
    simply defers to is_prime.
    """
    if n < MR_DETERMINISTIC_LIMIT:
        return is_prime(n)
    if n % 2 == 0:
        return False
    for p in _small_primes()[:100]:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if _mr_witness_composite(n, 2, d, s):
        return False
    return _strong_lucas_prp(n)


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters (n odd, > 2, no small factors)."""
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        g = math.gcd(abs(D), n)
        if 1 < g < n:
            return False
        if _jacobi(D, n) == -1:
            break
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V = _lucas_uv(d, D, n)
    if U == 0 or V == 0:
        return True
    qk = pow(Q, d, n)
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        if V == 0:
            return True
        qk = qk * qk % n
    return False


def _lucas_uv(k: int, D: int, n: int) -> tuple[int, int]:
    """(U_k, V_k) mod n for the Lucas sequence with P=1 and discriminant D."""
    U, V = 1, 1
    inv2 = pow(2, -1, n)
    for bit in bin(k)[3:]:
        U, V = U * V % n, (V * V + D * U * U) * inv2 % n
        if bit == "1":
            U, V = (U + V) * inv2 % n, (D * U + V) * inv2 % n
    return U, V


def _jacobi(a: int, n: int) -> int:
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    if n != 1:
        return 0
    return result


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization as ((prime, exponent), ...) sorted by prime."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        for p, e in self.entries:
            if p <= prev:
                raise DomainError("factor primes must be strictly increasing")
            if e < 1:
                raise DomainError("exponents must be positive")
            prev = p

    def validate(self, n: int, *, allow_probable: bool = False) -> None:
        """Check primality of every entry and that the product reconstructs n."""
        prod = 1
        for p, e in self.entries:
            ok = is_probable_prime(p) if allow_probable else is_prime(p)
            if not ok:
                raise DomainError(f"factor {p} is not prime")
            prod *= p**e
        if prod != n:
            raise DomainError("factorization does not multiply back to n")

    @property
    def n(self) -> int:
        prod = 1
        for p, e in self.entries:
            prod *= p**e
        return prod

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def omega(self) -> int:
        return len(self.entries)

    def divisors(self) -> list[int]:
        """All divisors, sorted ascending."""
        ds = [1]
        for p, e in self.entries:
            ds = [d * p**k for d in ds for k in range(e + 1)]
        return sorted(ds)

    def to_json(self) -> list[list[int]]:
        return [[p, e] for p, e in self.entries]

    @classmethod
    def from_json(cls, data) -> "Factorization":
        return cls(tuple((int(p), int(e)) for p, e in data))


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite odd n (deterministic parameter sweep)."""
    if n % 2 == 0:
        return 2
    for x0 in range(2, 1000):
        y, c, m = x0, x0 | 1, 128
        g = q = r = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise UnsupportedRangeError(f"failed to factor {n}")


def factorize(n: int) -> Factorization:
    """Complete prime factorization by trial division plus Pollard-Brent rho.

    Sized for p-1 with p up to ~1e18; supply known factorizations for
    anything larger.
    """
    if n < 1:
        raise DomainError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(tuple(sorted(out.items())))


def euler_phi(n: int) -> int:
    """Euler totient from the factorization."""
    result = n
    for p in factorize(n).primes:
        result -= result // p
    return result


def moebius(n: int) -> int:
    """Mobius function: 0 on non-squarefree, else (-1)^omega."""
    f = factorize(n)
    if any(e > 1 for _, e in f.entries):
        return 0
    return -1 if f.omega % 2 else 1


def theta(n: int) -> Fraction:
    """phi(n)/n as an exact rational; it multiplies into certified inequalities."""
    return Fraction(euler_phi(n), n)


def phi_of_factorization(f: Factorization) -> int:
    result = f.n
    for p in f.primes:
        result -= result // p
    return result


def multiplicative_order(a: int, p: int, pm1_factors: Factorization | None = None) -> int:
    """Least k >= 1 with a^k = 1 mod p, by divisor descent over p-1."""
    if a % p == 0:
        raise DomainError("order undefined for a = 0 mod p")
    f = pm1_factors or factorize(p - 1)
    order = p - 1
    for q, _ in f.entries:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def is_primitive_root(a: int, p: int, pm1_factors: Factorization | None = None) -> bool:
    if a % p == 0:
        return False
    f = pm1_factors or factorize(p - 1)
    return all(pow(a, (p - 1) // q, p) != 1 for q in f.primes)


def least_primitive_root(
    p: int,
    pm1_factors: Factorization | None = None,
    *,
    candidate_limit: int | None = None,
    time_cap: float | None = None,
) -> int:
    """Smallest g >= 2 of multiplicative order p-1 modulo p.

    Brute-force oracle: candidates are tested with the order test against the
    factorization of p-1.  The candidate/time budget guards huge p, where the
    oracle has no business running.
    """
    if p == 3:
        return 2
    if p < 3 or p % 2 == 0 or not _prime_or_unsupported(p):
        raise DomainError(f"{p} is not an odd prime")
    f = pm1_factors or factorize(p - 1)
    limit = candidate_limit if candidate_limit is not None else p
    t0 = time.monotonic()
    for g in range(2, min(p, limit + 1)):
        if is_primitive_root(g, p, f):
            return g
        if time_cap is not None and time.monotonic() - t0 > time_cap:
            raise BudgetExceededError(f"g({p}) search exceeded {time_cap}s")
    raise BudgetExceededError(f"g({p}) not found within candidate limit {limit}")


def _prime_or_unsupported(p: int) -> bool:
    try:
        return is_prime(p)
    except UnsupportedRangeError:
        return is_probable_prime(p)


def primorial(k: int) -> int:
    """Product of the first k primes (exact big integer)."""
    if k < 0:
        raise DomainError("primorial requires k >= 0")
    prod = 1
    for p in first_primes(k):
        prod *= p
    return prod


class PrimeContext:
    """An odd prime p with factored p-1, a fixed primitive root, and a lazy
    discrete-log table.

    The fixed root is the canonical basis for all character indexing; the
    dlog table is built only on demand and only when p is small enough to
    enumerate (huge-p certification never needs it).  Instances are
    immutable after construction and safe to share.
    """

    DLOG_CAP = 10**7

    def __init__(
        self,
        p: int,
        pm1_factors: Factorization | None = None,
        generator: int | None = None,
        dlog_cap: int = DLOG_CAP,
        trust_primality: bool = False,
    ):
        if p < 3 or p % 2 == 0:
            raise DomainError("PrimeContext requires an odd prime >= 3")
        if not trust_primality and not _prime_or_unsupported(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.pm1_factors = pm1_factors if pm1_factors is not None else factorize(p - 1)
        self.pm1_factors.validate(p - 1, allow_probable=True)
        self.omega = self.pm1_factors.omega
        if generator is None:
            generator = least_primitive_root(p, self.pm1_factors, candidate_limit=10**6)
        elif not is_primitive_root(generator, p, self.pm1_factors):
            raise DomainError(f"{generator} is not a primitive root mod {p}")
        self.generator = generator
        self._dlog_cap = dlog_cap
        self._dlog = None
        self._root_powers = None
        self._order_sums: dict[int, object] = {}

    @classmethod
    def from_factorization(cls, p: int, entries, **kw) -> "PrimeContext":
        return cls(p, Factorization(tuple(sorted(tuple(map(int, t)) for t in entries))), **kw)

    def dlog_array(self):
        """numpy int64 array d with generator^d[n] = n mod p; d[0] = -1."""
        if self._dlog is None:
            if self.p > self._dlog_cap:
                raise UnsupportedRangeError(
                    f"dlog table capped at p <= {self._dlog_cap}; p = {self.p}"
                )
            import numpy as np

            table = np.full(self.p, -1, dtype=np.int64)
            x = 1
            for k in range(self.p - 1):
                table[x] = k
                x = x * self.generator % self.p
            self._dlog = table
        return self._dlog

    def dlog(self, n: int) -> int:
        """Discrete log of n (mod p) to the fixed generator; n must be nonzero mod p."""
        r = n % self.p
        if r == 0:
            raise DomainError("dlog(0) undefined")
        return int(self.dlog_array()[r])

    def root_powers(self):
        """numpy complex array of exp(2 pi i k/(p-1)) for k in [0, p-1)."""
        if self._root_powers is None:
            import numpy as np

            self._root_powers = np.exp(2j * np.pi * np.arange(self.p - 1) / (self.p - 1))
        return self._root_powers

    def divisors_of_pm1(self) -> list[int]:
        return self.pm1_factors.divisors()

    def __repr__(self):
        return f"PrimeContext(p={self.p}, omega={self.omega}, g={self.generator})"


def iter_primes(start: int, stop: int) -> Iterator[int]:
    """Primes in [start, stop), deterministic test per candidate."""
    n = max(start, 2)
    if n % 2 == 0 and n > 2:
        if n == 2:
            yield 2
        n += 1
    while n < stop:
        if is_prime(n):
            yield n
        n += 1 if n == 2 else 2
