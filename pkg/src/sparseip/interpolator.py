"""Diversified Ben-Or/Tiwari interpolation over a prime field.

Two layers: mc_pairs recovers the sorted (scaled coefficient, monomial value)
pairs from one run of 2T probes; interpolate drives the base run plus one
per-variable shifted run, matches terms by their (diverse) coefficients, and
extracts exponents via bounded discrete logs.
"""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .blackbox import EvaluationOracle, SparsePolynomial, sparse_polynomial
from .field import (
    FieldContext,
    bounded_dlog,
    find_primitive_root,
    is_primitive_root,
    sample_nonzero,
)
from .solvers import (
    TooFewRootsError,
    berlekamp_massey,
    find_distinct_roots,
    solve_transposed_vandermonde,
)

STAGES = ("probe", "bm", "roots", "vand", "dlog", "assembly")


class FailReason(Enum):
    TOO_FEW_ROOTS = "too-few-roots"
    ZERO_COEFFICIENT = "zero-coefficient"
    DUPLICATE_COEFFICIENT = "duplicate-coefficient"
    COEFFICIENT_MISMATCH = "coefficient-mismatch"
    DLOG_OUT_OF_RANGE = "dlog-out-of-range"


class InterpolationFailure(Exception):
    """A detectable violation of the distinctness assumptions. The driver
    converts this into a Fail report; it never escapes interpolate()."""

    def __init__(self, reason: FailReason, message: str = ""):
        super().__init__(message or reason.value)
        self.reason = reason


class FieldTooSmallError(ValueError):
    """Field size is below the success-probability guarantee bound."""


def probe_sequence(
    oracle: EvaluationOracle,
    alpha: Sequence[int],
    zeta: Sequence[int],
    T: int,
    ctx: FieldContext,
    omega: Optional[int] = None,
    shift_var: Optional[int] = None,
) -> list[int]:
    """a_i = oracle(zeta_1*alpha_1^i, ..., zeta_n*alpha_n^i) for i = 0..2T-1.

    With shift_var = k (1-based), alpha_k is replaced by alpha_k*omega.
    Points are advanced incrementally, n multiplications per step.
    """
    p = ctx.p
    mult = [a % p for a in alpha]
    if shift_var is not None:
        if not 1 <= shift_var <= len(alpha):
            raise ValueError("shift_var out of range")
        if omega is None:
            raise ValueError("shifted run requires omega")
        mult[shift_var - 1] = mult[shift_var - 1] * omega % p
    point = [z % p for z in zeta]
    seq = []
    for _ in range(2 * T):
        seq.append(oracle(tuple(point)) % p)
        point = [x * m % p for x, m in zip(point, mult)]
    return seq


class _StageClock:
    """Accumulates per-stage wall time in microseconds."""

    def __init__(self, timings: dict[str, int]):
        self.timings = timings

    def add(self, stage: str, t0: float) -> None:
        self.timings[stage] = self.timings.get(stage, 0) + int(
            (time.perf_counter() - t0) * 1e6
        )


def mc_pairs(
    oracle: EvaluationOracle,
    alpha: Sequence[int],
    zeta: Sequence[int],
    T: int,
    ctx: FieldContext,
    rng: random.Random,
    omega: Optional[int] = None,
    shift_var: Optional[int] = None,
    timings: Optional[dict[str, int]] = None,
) -> list[tuple[int, int]]:
    """One probing run: 2T probes, minimal recurrence, annihilator roots,
    transposed Vandermonde solve; returns [(c~, v)] sorted ascending by c~.

    Raises InterpolationFailure on repeated/missing roots or a zero
    recovered coefficient.
    """
    clock = _StageClock(timings if timings is not None else {})
    t0 = time.perf_counter()
    seq = probe_sequence(oracle, alpha, zeta, T, ctx, omega=omega, shift_var=shift_var)
    clock.add("probe", t0)

    t0 = time.perf_counter()
    rec = berlekamp_massey(seq, ctx)
    clock.add("bm", t0)
    if rec.t == 0:
        return []

    t0 = time.perf_counter()
    try:
        roots = find_distinct_roots(list(rec.lam), ctx, rng)
    except TooFewRootsError as exc:
        clock.add("roots", t0)
        raise InterpolationFailure(FailReason.TOO_FEW_ROOTS, str(exc)) from exc
    clock.add("roots", t0)

    t0 = time.perf_counter()
    coeffs = solve_transposed_vandermonde(roots, seq[: rec.t], ctx)
    clock.add("vand", t0)
    if any(c == 0 for c in coeffs):
        raise InterpolationFailure(
            FailReason.ZERO_COEFFICIENT, "recovered a zero scaled coefficient"
        )
    return sorted(zip(coeffs, roots))


@dataclass
class InterpReport:
    """Outcome of one interpolation run: the polynomial (or the failure
    reason), exact probe count, per-stage wall time, and the configuration
    that produced it."""

    outcome: Optional[SparsePolynomial]
    fail_reason: Optional[FailReason]
    probes: int
    stage_timings: dict[str, int]
    config: dict

    @property
    def succeeded(self) -> bool:
        return self.outcome is not None


def interpolate(
    oracle: EvaluationOracle,
    n: int,
    T: int,
    D: int,
    ctx: FieldContext,
    rng: random.Random,
    omega: Optional[int] = None,
    alpha: Optional[Sequence[int]] = None,
    zeta: Optional[Sequence[int]] = None,
    force: bool = False,
) -> InterpReport:
    """Full Monte Carlo interpolation of the polynomial behind the oracle.

    Samples alpha, zeta (unless pinned), runs the base mc_pairs plus one
    shifted run per variable, matches terms positionally after checking the
    sorted coefficient lists agree, recovers each exponent by a bounded
    discrete log and each coefficient by undoing the variable scaling.

    Raises FieldTooSmallError when p < 2(n+2)T^2D + 1 unless force is set
    (then it warns and proceeds; the probability guarantee is void).
    Detectable assumption violations yield a Fail report, never an exception.
    """
    if n < 1 or T < 1 or D < 1:
        raise ValueError("need n >= 1, T >= 1, D >= 1")
    if D >= ctx.p - 1:
        raise ValueError("degree bound must be below p - 1")
    required = 2 * (n + 2) * T * T * D + 1
    if ctx.p < required:
        if not force:
            raise FieldTooSmallError(
                f"field size {ctx.p} is below the guarantee bound {required}; "
                "pass force=True to run without the probability guarantee"
            )
        warnings.warn(
            f"field size {ctx.p} below guarantee bound {required}; "
            "success probability is not guaranteed",
            stacklevel=2,
        )
    if alpha is None:
        alpha = [sample_nonzero(ctx, rng) for _ in range(n)]
    if zeta is None:
        zeta = [sample_nonzero(ctx, rng) for _ in range(n)]
    alpha = [a % ctx.p for a in alpha]
    zeta = [z % ctx.p for z in zeta]
    if len(alpha) != n or len(zeta) != n or 0 in alpha or 0 in zeta:
        raise ValueError("alpha and zeta must be n nonzero field elements")
    if omega is None:
        omega = find_primitive_root(ctx, rng)
    elif not is_primitive_root(ctx, omega):
        raise ValueError(f"{omega} is not a generator of F_{ctx.p}^*")

    p = ctx.p
    timings = {stage: 0 for stage in STAGES}
    config = {
        "n": n,
        "T": T,
        "D": D,
        "p": p,
        "alpha": list(alpha),
        "zeta": list(zeta),
        "omega": omega,
    }
    probes_before = oracle.probe_count
    clock = _StageClock(timings)
    outcome: Optional[SparsePolynomial] = None
    reason: Optional[FailReason] = None
    try:
        base = mc_pairs(oracle, alpha, zeta, T, ctx, rng, timings=timings)
        t = len(base)
        coeff_list = [c for c, _ in base]
        values = [v for _, v in base]
        if len(set(coeff_list)) != t:
            raise InterpolationFailure(
                FailReason.DUPLICATE_COEFFICIENT,
                "scaled coefficients are not pairwise distinct; matching is ambiguous",
            )
        exponents = [[0] * n for _ in range(t)]
        for k in range(1, n + 1):
            shifted = mc_pairs(
                oracle, alpha, zeta, T, ctx, rng,
                omega=omega, shift_var=k, timings=timings,
            )
            if [c for c, _ in shifted] != coeff_list:
                raise InterpolationFailure(
                    FailReason.COEFFICIENT_MISMATCH,
                    f"variable {k}: shifted coefficient list disagrees with base run",
                )
            t0 = time.perf_counter()
            for i, ((_, vk), v) in enumerate(zip(shifted, values)):
                if v == 0:
                    raise InterpolationFailure(
                        FailReason.DLOG_OUT_OF_RANGE, "zero monomial value"
                    )
                ratio = vk * pow(v, -1, p) % p
                e = bounded_dlog(ctx, omega, ratio, D)
                if e is None:
                    raise InterpolationFailure(
                        FailReason.DLOG_OUT_OF_RANGE,
                        f"variable {k}, term {i}: no exponent in [0, {D}]",
                    )
                exponents[i][k - 1] = e
            clock.add("dlog", t0)
        t0 = time.perf_counter()
        terms = []
        for ctil, exps in zip(coeff_list, exponents):
            scale = 1
            for z, e in zip(zeta, exps):
                if e:
                    scale = scale * pow(z, e, p) % p
            terms.append((ctil * pow(scale, -1, p) % p, tuple(exps)))
        outcome = sparse_polynomial(n, terms, ctx)
        clock.add("assembly", t0)
    except InterpolationFailure as exc:
        reason = exc.reason
    probes = oracle.probe_count - probes_before
    return InterpReport(outcome, reason, probes, timings, config)


def success_probability_bound(n: int, T: int, D: int, q: int) -> Fraction:
    """Lower bound on the probability that all distinctness assumptions hold:
    max(0, 1 - (n+2)T(T-1)D / (2(q-1)))."""
    if q <= 1:
        raise ValueError("field size must exceed 1")
    bound = 1 - Fraction((n + 2) * T * (T - 1) * D, 2 * (q - 1))
    return max(Fraction(0), bound)


def min_field_size(n: int, T: int, D: int, epsilon: Union[Fraction, float, str]) -> int:
    """Smallest field size guaranteeing failure probability <= epsilon:
    ceil((n+2)T(T-1)D / (2 epsilon)) + 1, floored at 2."""
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must be in (0, 1)")
    need = Fraction((n + 2) * T * (T - 1) * D, 2) / eps
    return max(2, math.ceil(need) + 1)
