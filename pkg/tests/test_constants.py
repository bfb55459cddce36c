from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jnorm.constants import (
    ParamsError,
    a_closed,
    closed_forms,
    coefficient_a,
    enumerate_pairs,
    gradient_b,
    gradient_seq,
    pair_enum,
    partial_sum_a,
    tail_bound_a,
    tail_sum_a,
    validate_params,
)

P25 = validate_params(2, 5)


def brute_pairs(p, q, limit):
    """All pairs with m, n <= limit, sorted by key; only a prefix is reliable."""
    pairs = [(p**m * q**n, m, n) for m in range(2, limit + 1) for n in range(2, limit + 1)]
    pairs.sort()
    # any missing pair has m or n above limit, hence a key at least this
    cut = min(p ** (limit + 1) * q**2, p**2 * q ** (limit + 1))
    return [(m, n, k) for k, m, n in pairs if k < cut]


def test_closed_forms():
    assert closed_forms(2) == (Fraction(1, 2), Fraction(3, 2))
    assert closed_forms(5) == (Fraction(1, 20), Fraction(9, 80))
    assert closed_forms(4) == (Fraction(1, 12), Fraction(7, 36))
    with pytest.raises(ValueError):
        closed_forms(1)


@pytest.mark.parametrize("r", [2, 3, 5, 7, Fraction(5, 2)])
def test_closed_forms_against_truncated_sums(r):
    f, g = closed_forms(r)
    r = Fraction(r)
    N = 200
    fs = sum(r**-m for m in range(2, N))
    gs = sum(m * r**-m for m in range(2, N))
    assert 0 < f - fs < Fraction(1, 10**20)
    assert 0 < g - gs < Fraction(1, 10**20)


def test_a_values():
    assert a_closed(2, 2) == 4
    assert a_closed(2, 3) == Fraction(7, 6)
    assert P25.a == Fraction(13, 40)
    assert P25.b == a_closed(4, 25) == Fraction(73, 51840)


@pytest.mark.parametrize("pq", [(2, 2), (2, 3), (3, 2), (2, 4), (1, 5), (6, 9)])
def test_validate_rejects(pq):
    with pytest.raises(ParamsError):
        validate_params(*pq)


@pytest.mark.parametrize("pq", [(2, 5), (5, 2), (3, 4), (3, 5), (7, 11)])
def test_validate_accepts(pq):
    assert validate_params(*pq).a < 1


@pytest.mark.parametrize("pq", [(2, 5), (3, 4), (7, 11)])
def test_pair_enumeration_matches_sorting(pq):
    p, q = pq
    expected = brute_pairs(p, q, 30)
    assert enumerate_pairs(validate_params(p, q), len(expected)) == expected


def test_first_pairs():
    assert enumerate_pairs(P25, 6) == [
        (2, 2, 100), (3, 2, 200), (4, 2, 400), (2, 3, 500), (5, 2, 800), (3, 3, 1000)
    ]
    assert pair_enum(P25).index_of(14, 14) == 370


def test_coefficients():
    assert coefficient_a(P25, 1) == Fraction(1, 100)
    assert coefficient_a(P25, 3) == Fraction(1, 25)
    assert coefficient_a(P25, 5) == Fraction(1, 200)
    with pytest.raises(ValueError):
        coefficient_a(P25, 0)


@pytest.mark.parametrize("stages", [1, 5, 50, 120])
def test_partial_plus_tail_is_exact(stages):
    assert partial_sum_a(P25, 4 * stages) + tail_sum_a(P25, stages) == P25.a


def test_tail_bound_dominates():
    s = partial_sum_a(P25, 200)
    assert s < P25.a
    assert P25.a - s <= tail_bound_a(P25, 50)


def test_golden_gradient_values():
    assert [gradient_b(P25, k) for k in range(1, 5)] == [
        Fraction(469, 40960),
        Fraction(1123, 102400),
        Fraction(2147, 204800),
        Fraction(3007, 409600),
    ]
    st0 = gradient_seq(P25).stage(0)
    assert st0.delta == Fraction(99, 204800) and st0.halvings == 8


@pytest.mark.parametrize("pq", [(2, 5), (3, 4)])
def test_stage_inequalities(pq):
    params = validate_params(*pq)
    pe = pair_enum(params)
    grad = gradient_seq(params)
    prev = Fraction(1)
    for i in range(40):
        m, n = pe[i]
        P = Fraction(1, pe.key(i))
        L = Fraction(1, pe.key(i + 1))
        b = [grad[4 * i + j] for j in range(1, 5)]
        assert prev > b[0] > b[1] > b[2] > P > b[3] > L
        a = [coefficient_a(params, 4 * i + j) for j in range(1, 5)]
        assert sum(x * y for x, y in zip(a, b)) == P * sum(a)
        prev = b[3]


@given(st.integers(min_value=1, max_value=400))
def test_b_strictly_decreasing_and_positive(k):
    assert 0 < gradient_b(P25, k + 1) < gradient_b(P25, k) < 1


def test_keys_strictly_increasing_and_injective():
    pe = pair_enum(P25)
    pe.extend(2000)
    keys = pe.keys[:2000]
    assert all(x < y for x, y in zip(keys, keys[1:]))
    assert len(set(pe.pairs[:2000])) == 2000


def test_stage_precondition_chains():
    grad = gradient_seq(P25)
    pe = pair_enum(P25)
    for i in range(60):
        assert grad[4 * i + 4] > Fraction(1, pe.key(i + 1))
        assert grad.stage(i + 1).upper == grad[4 * i + 4]


def test_params_invariants():
    for pq in [(2, 5), (3, 4), (7, 11)]:
        prm = validate_params(*pq)
        assert 0 < prm.b < prm.a < 1
