"""gpbound: certified explicit bounds for the least primitive root mod p.

Layers, bottom up: exact integer number theory (ntcore), Dirichlet
characters and moment sums (characters), the Burgess interval system
(intervals), the e-free sieve (sieve), and the certification engine
(certify) whose verdicts ride on rigorous enclosures (enclosure).
"""

from . import characters, enclosure, intervals, ntcore, sieve
from .ntcore import (
    Factorization,
    PrimeContext,
    euler_phi,
    factorize,
    is_prime,
    least_primitive_root,
    moebius,
    multiplicative_order,
    primorial,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "PrimeContext",
    "characters",
    "enclosure",
    "euler_phi",
    "factorize",
    "intervals",
    "is_prime",
    "least_primitive_root",
    "moebius",
    "multiplicative_order",
    "ntcore",
    "primorial",
    "sieve",
    "theta",
]
