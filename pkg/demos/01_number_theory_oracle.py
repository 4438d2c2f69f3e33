"""Tour of the exact number-theory layer and the brute-force oracle.

Run:  python demos/01_number_theory_oracle.py
"""

from gpbound.ntcore import (
    PrimeContext,
    factorize,
    least_primitive_root,
    moebius,
    primorial,
    theta,
)

print("least primitive roots for a few primes:")
for p in (3, 7, 191, 1009, 10**9 + 7):
    print(f"  g({p}) = {least_primitive_root(p)}")

p = 10**9 + 7
f = factorize(p - 1)
print(f"\np-1 = {p-1} factors as {f.entries}; omega = {f.omega}")
print(f"theta(p-1) = phi/(p-1) = {theta(p - 1)}")
print(f"moebius(p-1) = {moebius(p - 1)}")

print(f"\nprimorial(18) = {primorial(18)}")
print("(a prime with 18 distinct factors of p-1 must exceed this)")

ctx = PrimeContext(13)
print(f"\ncontext for p=13: generator {ctx.generator}, dlog table:")
print("  n   :", list(range(1, 13)))
print("  dlog:", [ctx.dlog(n) for n in range(1, 13)])
