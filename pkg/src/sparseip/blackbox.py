"""Sparse polynomial model, instrumented evaluation oracle, and instance I/O.

A SparsePolynomial stores its terms in canonical form: nonzero coefficients,
pairwise-distinct exponent vectors, sorted lexicographically. Interpolation
code never touches the polynomial behind an oracle; it may only call it.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import FieldContext, sample_nonzero

Term = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class SparsePolynomial:
    n: int
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        for c, e in self.terms:
            if len(e) != self.n:
                raise ValueError("exponent vector length does not match variable count")

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.terms)


def sparse_polynomial(n: int, terms: Sequence[Term], ctx: FieldContext) -> SparsePolynomial:
    """Canonicalize terms: reduce coefficients mod p, merge duplicate
    monomials, drop zeros, sort lexicographically by exponent vector."""
    if n < 0:
        raise ValueError("variable count must be nonnegative")
    merged: dict[tuple[int, ...], int] = {}
    for c, e in terms:
        e = tuple(int(x) for x in e)
        if len(e) != n:
            raise ValueError("exponent vector length does not match variable count")
        if any(x < 0 for x in e):
            raise ValueError("exponents must be nonnegative")
        merged[e] = (merged.get(e, 0) + c) % ctx.p
    canonical = tuple((c, e) for e, c in sorted(merged.items()) if c)
    return SparsePolynomial(n, canonical)


def evaluate(f: SparsePolynomial, point: Sequence[int], ctx: FieldContext) -> int:
    """f at a point in (F_p)^n, each power by square-and-multiply."""
    if len(point) != f.n:
        raise ValueError("point length does not match variable count")
    p = ctx.p
    total = 0
    for c, e in f.terms:
        term = c
        for x, k in zip(point, e):
            if k:
                term = term * pow(x, k, p) % p
        total = (total + term) % p
    return total


def scale_variables(f: SparsePolynomial, zeta: Sequence[int], ctx: FieldContext) -> SparsePolynomial:
    """The polynomial f(zeta_1*x_1, ..., zeta_n*x_n): same monomials,
    coefficient i multiplied by prod_k zeta_k^{e_{i,k}}."""
    if len(zeta) != f.n:
        raise ValueError("scaling vector length does not match variable count")
    p = ctx.p
    if any(z % p == 0 for z in zeta):
        raise ValueError("scaling factors must be nonzero")
    terms = []
    for c, e in f.terms:
        for z, k in zip(zeta, e):
            if k:
                c = c * pow(z, k, p) % p
        terms.append((c, e))
    return SparsePolynomial(f.n, tuple(terms))


def is_diverse(f: SparsePolynomial) -> bool:
    """True iff all coefficients are pairwise distinct."""
    coeffs = f.coefficients()
    return len(set(coeffs)) == len(coeffs)


def poly_equal(f: SparsePolynomial, g: SparsePolynomial) -> bool:
    """Structural equality of canonical forms."""
    if f.n != g.n:
        raise ValueError("polynomials have different variable counts")
    return f.terms == g.terms


def _decode_monomial(code: int, n: int, base: int) -> tuple[int, ...]:
    exps = []
    for _ in range(n):
        code, r = divmod(code, base)
        exps.append(r)
    return tuple(exps)


def random_sparse_polynomial(
    n: int, t: int, D: int, ctx: FieldContext, rng: random.Random
) -> SparsePolynomial:
    """Exactly t terms with distinct monomials, exponents uniform in [0, D],
    coefficients uniform nonzero. Deterministic under a fixed seed."""
    if n < 1 or t < 1 or D < 0:
        raise ValueError("need n >= 1, t >= 1, D >= 0")
    total = (D + 1) ** n
    if t > total:
        raise ValueError(f"cannot place {t} distinct monomials with D={D}, n={n}")
    if 3 * t >= total:
        monomials = [_decode_monomial(c, n, D + 1) for c in rng.sample(range(total), t)]
    else:
        seen: set[tuple[int, ...]] = set()
        while len(seen) < t:
            seen.add(tuple(rng.randrange(D + 1) for _ in range(n)))
        monomials = list(seen)
    terms = [(sample_nonzero(ctx, rng), e) for e in sorted(monomials)]
    return sparse_polynomial(n, terms, ctx)


class EvaluationOracle:
    """Black-box access to an n-variate polynomial with a monotone probe
    counter. Counter updates are atomic; evaluation itself is pure, so
    concurrent probes are safe."""

    def __init__(self, func: Callable[[tuple[int, ...]], int]):
        self._func = func
        self._probes = 0
        self._lock = threading.Lock()

    @classmethod
    def from_polynomial(cls, f: SparsePolynomial, ctx: FieldContext) -> "EvaluationOracle":
        return cls(lambda point: evaluate(f, point, ctx))

    @property
    def probe_count(self) -> int:
        return self._probes

    def __call__(self, point: Sequence[int]) -> int:
        with self._lock:
            self._probes += 1
        return self._func(tuple(point))


def format_instance(f: SparsePolynomial, p: int, D: int) -> str:
    """Instance file format: line 1 is 'p n t D', then one 'c e1 ... en'
    line per term, all decimal."""
    lines = [f"{p} {f.n} {f.term_count} {D}"]
    for c, e in f.terms:
        lines.append(" ".join(str(x) for x in (c, *e)))
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> tuple[SparsePolynomial, int, int]:
    """Parse the instance format; returns (polynomial, p, D)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty instance file")
    header = lines[0].split()
    if len(header) != 4:
        raise ValueError("header must be 'p n t D'")
    p, n, t, D = (int(x) for x in header)
    if len(lines) - 1 != t:
        raise ValueError(f"expected {t} term lines, found {len(lines) - 1}")
    ctx = FieldContext.for_prime(p)
    terms = []
    for ln in lines[1:]:
        parts = [int(x) for x in ln.split()]
        if len(parts) != n + 1:
            raise ValueError(f"term line needs {n + 1} values: {ln!r}")
        c, e = parts[0], tuple(parts[1:])
        if not 0 < c < p:
            raise ValueError(f"coefficient out of range: {c}")
        if any(x < 0 or x > D for x in e):
            raise ValueError(f"exponent out of range in line {ln!r}")
        terms.append((c, e))
    f = sparse_polynomial(n, terms, ctx)
    if f.term_count != t:
        raise ValueError("terms are not in canonical form (duplicates or zeros)")
    return f, p, D


def write_instance(f: SparsePolynomial, p: int, D: int, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_instance(f, p, D))


def read_instance(path: str) -> tuple[SparsePolynomial, int, int]:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())
