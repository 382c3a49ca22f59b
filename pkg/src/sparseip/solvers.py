"""Sequence and polynomial kernels over F_p.

Minimal linear recurrence (Berlekamp-Massey), distinct-root extraction of the
annihilator polynomial, and the transposed Vandermonde solve. Dense
polynomials are plain lists of coefficients in ascending power order with no
trailing zeros; [] is the zero polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import FieldContext


class TooFewRootsError(Exception):
    """The annihilator does not split into distinct linear factors over F_p."""


class SplittingBudgetError(RuntimeError):
    """Randomized equal-degree splitting exceeded its retry budget."""


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_dense(coeffs: list[int], x: int, ctx: FieldContext) -> int:
    """Horner evaluation of a dense polynomial at x."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % ctx.p
    return acc


@dataclass(frozen=True)
class RecurrenceResult:
    """Minimal generator of a sequence: t = recurrence length, lam monic of
    degree t (ascending coefficients) with
    a[j+t] + sum_{k<t} lam[k]*a[j+k] = 0 for all admissible j."""

    t: int
    lam: tuple[int, ...]


def berlekamp_massey(sequence: list[int], ctx: FieldContext) -> RecurrenceResult:
    """Minimal-length linear generator of a length-2T sequence over F_p.

    For a sum of t geometric progressions with distinct nonzero ratios and
    nonzero weights (t <= T), returns exactly that t and the monic annihilator
    whose roots are the ratios.
    """
    p = ctx.p
    if len(sequence) % 2:
        raise ValueError("sequence length must be even (2T probes)")
    seq = [s % p for s in sequence]
    conn = [1]  # connection polynomial, conn[0] == 1
    prev = [1]
    length = 0
    shift = 1
    last_d = 1
    for i, s in enumerate(seq):
        d = s
        for k in range(1, length + 1):
            d = (d + conn[k] * seq[i - k]) % p
        if d == 0:
            shift += 1
            continue
        coef = d * pow(last_d, -1, p) % p
        update = conn[:]
        if len(update) < len(prev) + shift:
            update += [0] * (len(prev) + shift - len(update))
        for k, pv in enumerate(prev):
            update[k + shift] = (update[k + shift] - coef * pv) % p
        if 2 * length <= i:
            prev = conn
            last_d = d
            length = i + 1 - length
            shift = 1
        else:
            shift += 1
        conn = update
    conn = conn[: length + 1] + [0] * (length + 1 - len(conn))
    lam = tuple(reversed(conn))
    return RecurrenceResult(length, lam)


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pdivmod(a: list[int], m: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder by a monic divisor m."""
    a = list(a)
    dm = len(m) - 1
    if dm < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if dm == 0:
        return _trim(a), []
    quot = [0] * max(0, len(a) - dm)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            quot[i - dm] = c
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(quot), _trim(a[:dm])


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    return _pdivmod(a, m, p)[1]


def _pmonic(a: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    if a and a[-1] != 1:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
        a[-1] = 1
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        b = _pmonic(b, p)
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p)


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def find_distinct_roots(lam: list[int], ctx: FieldContext, rng: random.Random) -> list[int]:
    """All roots of a monic polynomial, required to be simple and to account
    for the full degree.

    Computes g = gcd(z^p - z, lam); if deg g < deg lam the polynomial has
    repeated or non-linear factors and TooFewRootsError is raised. g is then
    split into linear factors by random (z+delta)^((p-1)/2) splittings.
    Returns the roots sorted ascending.
    """
    p = ctx.p
    lam = _trim(list(lam))
    if not lam:
        raise ValueError("zero polynomial has no well-defined root set")
    t = len(lam) - 1
    if t == 0:
        return []
    if lam[-1] != 1:
        raise ValueError("polynomial must be monic")
    if p == 2:
        roots = [x for x in (0, 1) if eval_dense(lam, x, ctx) == 0]
        if len(roots) < t:
            raise TooFewRootsError(f"{len(roots)} distinct roots for degree {t}")
        return roots
    xp = _ppowmod([0, 1], p, lam, p)
    xp_minus_x = list(xp)
    if len(xp_minus_x) < 2:
        xp_minus_x += [0] * (2 - len(xp_minus_x))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _pgcd(xp_minus_x, lam, p)
    if len(g) - 1 < t:
        raise TooFewRootsError(f"only {len(g) - 1} distinct roots for degree {t}")
    # Equal-degree splitting down to linear factors. Expected O(log t)
    # splittings per factor; the attempt cap guards against RNG pathology.
    attempt_limit = 64 * (1 + t.bit_length())
    attempts = 0
    half = (p - 1) // 2
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append((-h[0]) % p)
            continue
        if h[0] == 0:
            roots.append(0)
            stack.append(_trim(h[1:]))
            continue
        while True:
            attempts += 1
            if attempts > attempt_limit:
                raise SplittingBudgetError(
                    f"no proper split of a degree-{d} factor after {attempts} attempts"
                )
            delta = rng.randrange(p)
            w = _ppowmod([delta, 1], half, h, p)
            if w:
                w[0] = (w[0] - 1) % p
                w = _trim(w)
            else:
                w = [p - 1]
            g1 = _pgcd(w, h, p)
            if 0 < len(g1) - 1 < d:
                g2, rem = _pdivmod(h, g1, p)
                assert not rem
                stack.append(g1)
                stack.append(g2)
                break
    return sorted(roots)


def solve_transposed_vandermonde(
    nodes: list[int], rhs: list[int], ctx: FieldContext
) -> list[int]:
    """Solve sum_i c_i * nodes[i]^j = rhs[j] for j = 0..t-1.

    Master-polynomial method: with M(z) = prod(z - v_i) and Q_i = M/(z - v_i),
    c_i = (sum_j Q_i[j]*rhs[j]) / Q_i(v_i). Quadratic time, fine at desk scale.
    """
    p = ctx.p
    t = len(nodes)
    if t == 0 or len(rhs) != t:
        raise ValueError("nodes and rhs must be nonempty and of equal length")
    nodes = [v % p for v in nodes]
    if len(set(nodes)) != t:
        raise ValueError("nodes must be pairwise distinct")
    master = [1]
    for v in nodes:
        master = _pmul(master, [(-v) % p, 1], p)
    out = []
    for v in nodes:
        # synthetic division of master by (z - v)
        q = [0] * t
        acc = 0
        for j in range(t, 0, -1):
            acc = (master[j] + acc * v) % p
            q[j - 1] = acc
        denom = eval_dense(q, v, ctx)
        num = sum(qj * aj for qj, aj in zip(q, rhs)) % p
        out.append(num * pow(denom, -1, p) % p)
    return out
