"""Prime-field arithmetic, primitive roots, and a bounded discrete logarithm.

Field elements are plain Python ints kept as canonical residues in [0, p-1].
A FieldContext bundles the modulus with the factored group order p-1, which
is what primitive-root validation needs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

MAX_MODULUS_BITS = 62

# Deterministic Miller-Rabin witness set, valid far beyond 2^62.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_DIVISION_LIMIT = 10**6


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    """Find a nontrivial factor of an odd composite n (Brent's variant)."""
    while True:
        y = rng.randrange(2, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
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


def factorize(n: int) -> list[tuple[int, int]]:
    """Factor n >= 1 into sorted (prime, multiplicity) pairs.

    Trial division up to 10^6, then Pollard rho on whatever cofactor is left.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    factors: dict[int, int] = {}
    d = 2
    while d <= _TRIAL_DIVISION_LIMIT and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    rng = random.Random(0xFAC7)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return sorted(factors.items())


@dataclass(frozen=True)
class FieldContext:
    """A prime modulus p together with the factorization of p - 1.

    Immutable; all arithmetic methods are pure and safe for concurrent use.
    """

    p: int
    order_factorization: tuple[tuple[int, int], ...]

    @classmethod
    def for_prime(cls, p: int) -> "FieldContext":
        if p.bit_length() > MAX_MODULUS_BITS:
            raise ValueError(f"modulus must be below 2^{MAX_MODULUS_BITS}")
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p, tuple(factorize(p - 1)))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, base: int, exponent: int) -> int:
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return pow(base, exponent, self.p)


def is_primitive_root(ctx: FieldContext, g: int) -> bool:
    """True iff g has multiplicative order exactly p - 1."""
    g %= ctx.p
    if g == 0:
        return False
    if ctx.p == 2:
        return True
    return all(pow(g, (ctx.p - 1) // r, ctx.p) != 1 for r, _ in ctx.order_factorization)


def find_primitive_root(ctx: FieldContext, rng: random.Random) -> int:
    """Pick random candidates until one generates the full group.

    Expected O(log p) candidates since a (phi(p-1)/(p-1)) fraction works.
    """
    if ctx.p == 2:
        return 1
    while True:
        g = rng.randrange(2, ctx.p)
        if is_primitive_root(ctx, g):
            return g


def sample_nonzero(ctx: FieldContext, rng: random.Random) -> int:
    """Uniform draw from [1, p-1]."""
    return rng.randrange(1, ctx.p)


def bounded_dlog(ctx: FieldContext, omega: int, target: int, bound: int) -> Optional[int]:
    """Find the unique e in [0, bound] with omega^e = target, or None.

    Baby-step/giant-step over the interval: a table of ~sqrt(bound+1) baby
    steps keyed by residue, then giant steps by omega^-m. O(sqrt(bound))
    group operations.
    """
    p = ctx.p
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if bound >= p - 1:
        raise ValueError("bound must be below the group order p - 1")
    target %= p
    if target == 0:
        return None
    m = math.isqrt(bound) + 1
    baby: dict[int, int] = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * omega % p
    giant = pow(omega, -m, p)
    y = target
    i = 0
    while i * m <= bound:
        j = baby.get(y)
        if j is not None and i * m + j <= bound:
            return i * m + j
        y = y * giant % p
        i += 1
    return None
