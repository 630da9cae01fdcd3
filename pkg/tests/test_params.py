import itertools

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from apostol.errors import EmptySet, ExcludedPole, InadmissibleKind, ZeroLambda
from apostol.params import (
    LambdaClass,
    TruncationKind,
    admissible_kinds,
    make_context,
    parse_complex,
    pole,
    pole_chain,
    pole_groups,
    truncation_set,
)

GRID = {
    LambdaClass.IM_POSITIVE: ["0+1i", "0.5+0.5i", "-3+0.01i", "2+5i"],
    LambdaClass.IM_NEGATIVE: ["0-1i", "0.5-0.5i", "-3-0.01i", "2-5i"],
    LambdaClass.REAL_POSITIVE_NOT_ONE: ["2", "0.5", "1e-3", "50"],
    LambdaClass.REAL_NEGATIVE: ["-2", "-0.5", "-1", "-50"],
    LambdaClass.ONE: ["1"],
}
ALL_LAMBDAS = [lam for lams in GRID.values() for lam in lams]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2", 2),
        ("-0.7i", -0.7j),
        ("0+1i", 1j),
        ("-i", -1j),
        ("3-2i", 3 - 2j),
        ("1e-3+2e-2i", 1e-3 + 2e-2j),
        ("1/3", 1 / 3),
        ("-1.5e+1-1j", -15 - 1j),
    ],
)
def test_parse_complex(text, expected):
    assert complex(parse_complex(text, 64)) == pytest.approx(expected)


def test_parse_complex_rejects_garbage():
    with pytest.raises(ValueError):
        parse_complex("abc", 64)


def test_context_one():
    c = make_context(1)
    assert c.log_lambda == 0 and c.xi == 0 and c.cap_lambda is None
    assert c.lambda_class is LambdaClass.ONE


def test_context_minus_one():
    c = make_context(-1)
    assert abs(c.log_lambda - c.mp.mpc(0, c.mp.pi)) < 1e-35
    assert abs(c.xi - 0.5) < 1e-35
    assert c.lambda_class is LambdaClass.REAL_NEGATIVE


def test_context_i_matches_independent_log():
    c = make_context("0+1i", 200)
    with mpmath.workdps(70):
        ref = mpmath.log(mpmath.mpc(0, 1))
        assert abs(c.log_lambda - ref) < mpmath.mpf(10) ** -55
    assert abs(c.xi - mpmath.mpf(1) / 4) < 1e-55
    assert c.lambda_class is LambdaClass.IM_POSITIVE


def test_zero_lambda_rejected():
    with pytest.raises(ZeroLambda):
        make_context(0)


@pytest.mark.parametrize("lam", ALL_LAMBDAS)
def test_context_invariants(lam):
    c = make_context(lam)
    mp = c.mp
    assert abs(mp.exp(c.log_lambda) - c.lam) <= 1e-35 * abs(c.lam)
    assert -0.5 < c.xi.real <= 0.5
    if c.lambda_class is LambdaClass.REAL_NEGATIVE:
        assert abs(abs(c.cap_lambda - 1) - 1) < 1e-30
    elif not c.is_one:
        assert abs(c.cap_lambda - 1) > 1 and abs(c.cap_lambda + 1) > 1


def test_pole_examples():
    with mpmath.workdps(40):
        pi = +mpmath.pi
        p = pole(make_context(1), 1)
        assert abs(p.value - mpmath.mpc(0, 2 * pi)) < 1e-35
        assert abs(p.modulus - 2 * pi) < 1e-35 and abs(p.angle - 0.25) < 1e-35
        p = pole(make_context("0+1i"), 0)
        assert abs(p.value - mpmath.mpc(0, -pi / 2)) < 1e-35
        assert abs(p.modulus - pi / 2) < 1e-35
        p = pole(make_context(2), 1)
        ref = mpmath.sqrt(mpmath.log(2) ** 2 + 4 * pi**2)
        assert abs(p.modulus - ref) < 1e-35
    # the quoted 6.3212 is the true 6.32130 cut to four decimals
    assert float(p.modulus) == pytest.approx(6.3212, abs=2e-4)


def test_excluded_pole():
    with pytest.raises(ExcludedPole):
        pole(make_context(1), 0)


@pytest.mark.parametrize(
    "lam, count, expected",
    [("0+1i", 3, [0, 1, -1]), ("-2", 4, [0, 1, -1, 2]), ("1", 2, [1, -1]), ("0-1i", 3, [0, -1, 1])],
)
def test_chain_examples(lam, count, expected):
    chain = pole_chain(make_context(lam), count)
    assert [p.k for p in chain] == expected


def test_chain_ties_for_negative_lambda():
    chain = pole_chain(make_context(-2), 4)
    assert abs(chain[0].modulus - chain[1].modulus) < 1e-35
    assert abs(chain[2].modulus - chain[3].modulus) < 1e-35


@pytest.mark.parametrize("lam", ALL_LAMBDAS)
def test_chain_matches_brute_force_sort(lam):
    N = 50
    c = make_context(lam)
    chain = pole_chain(c, N)
    ks = [p.k for p in chain]
    ordered, mods = oracles.poles_brute_force(make_context(lam).lam, N)
    # equal up to permutation within ties: position by position the moduli agree
    with mpmath.workdps(40):
        assert all(abs(mods[a] - mods[b]) < 1e-30 for a, b in zip(ks, ordered))
    moduli = [p.modulus for p in chain]
    slack = 1 + c.mp.mpf(2) ** -100
    assert all(a <= b * slack for a, b in zip(moduli, moduli[1:]))


@pytest.mark.parametrize("lam", ALL_LAMBDAS)
def test_lower_modulus_bound(lam):
    c = make_context(lam)
    for p in pole_chain(c, 60):
        if p.k != 0:
            # equality holds for lambda = -1, so allow rounding
            bound = 2 * c.mp.pi * (abs(p.k) - c.mp.mpf(1) / 2)
            assert p.modulus >= bound * (1 - c.mp.mpf(2) ** -120)


def test_pole_groups_pair_real_lambda():
    groups = pole_groups(make_context(2), 3)
    assert [tuple(p.k for p in g) for g in groups] == [(0,), (1, -1), (2, -2)]
    groups = pole_groups(make_context(-2), 2)
    assert [tuple(p.k for p in g) for g in groups] == [(0, 1), (-1, 2)]


def test_truncation_examples():
    c = make_context(2)
    F = truncation_set(c, "Zm", 0)
    assert F.indices == (0,) and abs(F.mu - pole(c, 1).modulus) == 0
    c = make_context("0+1i")
    F = truncation_set(c, "ZmPlus", 0)
    assert set(F.indices) == {0, 1}
    assert abs(F.mu - 5 * c.mp.pi / 2) < 1e-35
    c = make_context(1)
    F = truncation_set(c, "Zm", 1)
    assert set(F.indices) == {-1, 1} and abs(F.mu - 4 * c.mp.pi) < 1e-35


def test_truncation_errors():
    with pytest.raises(EmptySet):
        truncation_set(make_context(1), "Zm", 0)
    with pytest.raises(InadmissibleKind):
        truncation_set(make_context(-2), "Zm", 0)
    with pytest.raises(InadmissibleKind):
        truncation_set(make_context("0+1i"), "ZmMinus", 0)
    with pytest.raises(InadmissibleKind):
        truncation_set(make_context(2), "ZmPlus", 1)


@pytest.mark.parametrize("lam", ALL_LAMBDAS)
def test_truncation_gap_invariant(lam):
    c = make_context(lam)
    for kind, m in itertools.product(admissible_kinds(c.lambda_class), range(4)):
        if c.is_one and m == 0:
            continue
        F = truncation_set(c, kind, m)
        assert F.max_member_modulus < F.mu
        assert F.mu >= c.mp.pi
        excluded = [abs(p.value) for p in pole_chain(c, 2 * m + 10) if p.k not in F]
        assert abs(min(excluded) - F.mu) < 1e-30


@settings(max_examples=60, deadline=None)
@given(
    st.floats(-20, 20, allow_nan=False).filter(lambda v: abs(v) > 1e-6),
    st.floats(-20, 20, allow_nan=False),
)
def test_classification_and_branch(re, im):
    c = make_context(mpmath.mpc(re, im), 80)
    assert -c.mp.pi < c.log_lambda.imag <= c.mp.pi
    if im > 0:
        assert c.lambda_class is LambdaClass.IM_POSITIVE
    elif im < 0:
        assert c.lambda_class is LambdaClass.IM_NEGATIVE
    kinds = admissible_kinds(c.lambda_class)
    assert TruncationKind.ZM in kinds or c.lambda_class is LambdaClass.REAL_NEGATIVE
