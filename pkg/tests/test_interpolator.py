import random
import warnings
from fractions import Fraction

import pytest

from sparseip.blackbox import (
    EvaluationOracle,
    evaluate,
    poly_equal,
    random_sparse_polynomial,
    sparse_polynomial,
)
from sparseip.field import FieldContext
from sparseip.interpolator import (
    FailReason,
    FieldTooSmallError,
    interpolate,
    mc_pairs,
    min_field_size,
    probe_sequence,
    success_probability_bound,
)

P101 = FieldContext.for_prime(101)

EXAMPLE = sparse_polynomial(
    3,
    [(91, (0, 1, 2)), (91, (2, 1, 1)), (61, (2, 2, 1)), (61, (0, 0, 5)), (1, (0, 0, 0))],
    P101,
)
ALPHA = (5, 59, 78)
ZETA = (34, 29, 89)
OMEGA = 34


def _oracle():
    return EvaluationOracle.from_polynomial(EXAMPLE, P101)


def test_probe_sequence_base_run():
    seq = probe_sequence(_oracle(), ALPHA, ZETA, 5, P101)
    assert seq == [80, 28, 68, 48, 77, 63, 37, 0, 78, 87]


def test_probe_sequence_starts_at_zeta():
    oracle = _oracle()
    seq = probe_sequence(oracle, ALPHA, ZETA, 1, P101)
    assert seq[0] == evaluate(EXAMPLE, ZETA, P101)


def test_probe_sequence_shifted_matches_explicit_points():
    for k in (1, 2, 3):
        seq = probe_sequence(_oracle(), ALPHA, ZETA, 5, P101, omega=OMEGA, shift_var=k)
        mult = list(ALPHA)
        mult[k - 1] = mult[k - 1] * OMEGA % 101
        expected = [
            evaluate(EXAMPLE, [z * pow(m, i, 101) % 101 for z, m in zip(ZETA, mult)], P101)
            for i in range(10)
        ]
        assert seq == expected


def test_probe_sequence_probe_count():
    oracle = _oracle()
    probe_sequence(oracle, ALPHA, ZETA, 7, P101)
    assert oracle.probe_count == 14


def test_mc_pairs_golden():
    rng = random.Random(0)
    pairs = mc_pairs(_oracle(), ALPHA, ZETA, 5, P101, rng)
    assert pairs == [(1, 1), (33, 84), (43, 43), (50, 11), (54, 2)]


def test_mc_pairs_constant_polynomial():
    rng = random.Random(1)
    const = sparse_polynomial(2, [(42, (0, 0))], P101)
    oracle = EvaluationOracle.from_polynomial(const, P101)
    assert mc_pairs(oracle, (3, 7), (5, 9), 3, P101, rng) == [(42, 1)]


def test_mc_pairs_zero_polynomial():
    rng = random.Random(2)
    zero = sparse_polynomial(2, [], P101)
    oracle = EvaluationOracle.from_polynomial(zero, P101)
    assert mc_pairs(oracle, (3, 7), (5, 9), 3, P101, rng) == []


def test_mc_pairs_matches_direct_monomial_evaluation():
    rng = random.Random(3)
    ctx = FieldContext.for_prime(140122640051)
    for _ in range(20):
        n, t = 3, rng.randrange(1, 9)
        f = random_sparse_polynomial(n, t, 20, ctx, rng)
        alpha = [rng.randrange(1, ctx.p) for _ in range(n)]
        zeta = [rng.randrange(1, ctx.p) for _ in range(n)]
        oracle = EvaluationOracle.from_polynomial(f, ctx)
        pairs = mc_pairs(oracle, alpha, zeta, t, ctx, rng)
        expected = []
        for c, e in f.terms:
            v = 1
            ct = c
            for a, z, k in zip(alpha, zeta, e):
                v = v * pow(a, k, ctx.p) % ctx.p
                ct = ct * pow(z, k, ctx.p) % ctx.p
            expected.append((ct, v))
        assert pairs == sorted(expected)


def test_mc_pairs_reconstruction_identity():
    oracle = _oracle()
    seq = probe_sequence(oracle, ALPHA, ZETA, 5, P101)
    pairs = mc_pairs(_oracle(), ALPHA, ZETA, 5, P101, random.Random(4))
    for j in range(10):
        acc = sum(c * pow(v, j, 101) for c, v in pairs) % 101
        assert acc == seq[j]


def test_interpolate_golden_example():
    oracle = _oracle()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = interpolate(
            oracle, 3, 5, 5, P101, random.Random(0),
            omega=OMEGA, alpha=ALPHA, zeta=ZETA, force=True,
        )
    assert report.succeeded
    assert poly_equal(report.outcome, EXAMPLE)
    assert report.probes == 2 * (3 + 1) * 5 == 40


def test_interpolate_single_term():
    ctx = FieldContext.for_prime(140122640051)
    f = sparse_polynomial(1, [(123456, (17,))], ctx)
    oracle = EvaluationOracle.from_polynomial(f, ctx)
    report = interpolate(oracle, 1, 1, 20, ctx, random.Random(5))
    assert report.succeeded and poly_equal(report.outcome, f)
    assert report.probes == 4


def test_interpolate_term_bound_larger_than_t():
    ctx = FieldContext.for_prime(140122640051)
    rng = random.Random(6)
    f = random_sparse_polynomial(3, 5, 10, ctx, rng)
    oracle = EvaluationOracle.from_polynomial(f, ctx)
    T = 8
    report = interpolate(oracle, 3, T, 10, ctx, rng)
    assert report.succeeded and poly_equal(report.outcome, f)
    assert report.probes == 2 * 4 * T


def test_interpolate_rejects_small_field_without_force():
    oracle = _oracle()
    with pytest.raises(FieldTooSmallError):
        interpolate(oracle, 3, 5, 5, P101, random.Random(0))


def test_interpolate_warns_under_force():
    oracle = _oracle()
    with pytest.warns(UserWarning):
        interpolate(oracle, 3, 5, 5, P101, random.Random(0), force=True)


def test_interpolate_rejects_bad_omega():
    ctx = FieldContext.for_prime(140122640051)
    f = sparse_polynomial(1, [(5, (1,))], ctx)
    oracle = EvaluationOracle.from_polynomial(f, ctx)
    with pytest.raises(ValueError):
        interpolate(oracle, 1, 1, 5, ctx, random.Random(0), omega=1)


def test_interpolate_forced_monomial_collision_fails_or_wrong():
    # alpha = (1, 1): every monomial evaluates to 1, a hard Assumption-1
    # violation. Must be a clean Fail, never a crash.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = interpolate(
            _oracle(), 3, 5, 5, P101, random.Random(7),
            omega=OMEGA, alpha=(1, 1, 1), zeta=ZETA, force=True,
        )
    assert not report.succeeded
    assert report.fail_reason in set(FailReason)


def test_interpolate_duplicate_coefficients_fail():
    # zeta = (1,1,1) leaves the example's duplicate coefficients in place
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = interpolate(
            _oracle(), 3, 5, 5, P101, random.Random(8),
            omega=OMEGA, alpha=ALPHA, zeta=(1, 1, 1), force=True,
        )
    assert not report.succeeded
    assert report.fail_reason == FailReason.DUPLICATE_COEFFICIENT


def test_interpolate_timings_and_config_echo():
    ctx = FieldContext.for_prime(140122640051)
    rng = random.Random(9)
    f = random_sparse_polynomial(2, 4, 10, ctx, rng)
    oracle = EvaluationOracle.from_polynomial(f, ctx)
    report = interpolate(oracle, 2, 4, 10, ctx, rng)
    assert set(report.stage_timings) == {"probe", "bm", "roots", "vand", "dlog", "assembly"}
    assert report.config["n"] == 2 and report.config["p"] == ctx.p
    assert len(report.config["alpha"]) == 2


def test_success_probability_bound():
    # at the guarantee threshold the bound is >= 3/4
    for n, T, D in [(1, 1, 1), (3, 5, 5), (3, 10, 20), (8, 30, 10)]:
        q = 2 * (n + 2) * T * T * D + 1
        assert success_probability_bound(n, T, D, q) >= Fraction(3, 4)
    assert success_probability_bound(5, 1, 100, 7) == 1
    # worked-example regime is below the guarantee: bound clamps to 0
    assert success_probability_bound(3, 5, 5, 101) == 0
    with pytest.raises(ValueError):
        success_probability_bound(1, 1, 1, 1)


def test_min_field_size():
    assert min_field_size(3, 5, 5, Fraction(1, 4)) == 1001
    assert min_field_size(3, 1, 5, Fraction(1, 4)) == 2
    with pytest.raises(ValueError):
        min_field_size(3, 5, 5, 0)
    with pytest.raises(ValueError):
        min_field_size(3, 5, 5, 1)


def test_cross_run_coefficient_invariance():
    ctx = FieldContext.for_prime(140122640051)
    rng = random.Random(10)
    for _ in range(10):
        f = random_sparse_polynomial(3, 6, 15, ctx, rng)
        alpha = [rng.randrange(1, ctx.p) for _ in range(3)]
        zeta = [rng.randrange(1, ctx.p) for _ in range(3)]
        omega = 2
        oracle = EvaluationOracle.from_polynomial(f, ctx)
        base = mc_pairs(oracle, alpha, zeta, 6, ctx, rng)
        for k in (1, 2, 3):
            shifted = mc_pairs(oracle, alpha, zeta, 6, ctx, rng, omega=omega, shift_var=k)
            assert [c for c, _ in shifted] == [c for c, _ in base]


def test_dlog_consistency_on_success():
    ctx = FieldContext.for_prime(140122640051)
    rng = random.Random(11)
    f = random_sparse_polynomial(3, 6, 15, ctx, rng)
    oracle = EvaluationOracle.from_polynomial(f, ctx)
    report = interpolate(oracle, 3, 6, 15, ctx, rng, omega=2)
    assert report.succeeded
    assert all(0 <= e <= 15 for _, exps in report.outcome.terms for e in exps)
    assert poly_equal(report.outcome, f)
