import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from jnorm.constants import coefficient_a, validate_params
from jnorm.field import EPS, QQ_EPS, RatFunc
from jnorm.geometry import E1, E2, JSpace, Vec2, VecD, cross, get_space

from strategies import eps_linear, positive_rationals, rationals

SP = get_space()
SP_EPS = get_space(field=QQ_EPS)
VS = SP.vertices
LIMIT = VS.limit
N_ORACLE = 300


def line_through(u, w):
    """Functional equal to 1 on the line through ``u`` and ``w``."""
    d = cross(u, w)
    return (w.y - u.y) / d, (u.x - w.x) / d


ORACLE_FUNCTIONALS = [line_through(VS[k], VS[k + 1]) for k in range(N_ORACLE)]
ORACLE_FUNCTIONALS += [line_through(LIMIT, E2), line_through(E2, E1)]


def brute_norm(v):
    """Largest value of a supporting functional (or its negation) at ``v``.

    Truncating the chain only loses functionals of far-out facets, so this
    is exact unless the ray meets one of those, and a lower bound otherwise.
    """
    vals = [al * v.x + be * v.y for al, be in ORACLE_FUNCTIONALS]
    return max(max(vals), -min(vals))


vectors = st.builds(Vec2, rationals, rationals)


def test_reference_values():
    assert SP.norm(Vec2(1, 1)) == 2
    assert SP.norm(Vec2(-1, 1)) == Fraction(235929600, 235601173)
    assert SP.norm(E1) == SP.norm(E2) == 1
    assert SP.norm(Vec2(0, 0)) == 0


def test_minus_e1_plus_e2_lands_on_chain_segment():
    v = Vec2(-1, 1)
    n = SP.norm(v)
    assert n > 1
    u = v / n
    # u = (1 - t) v_1 + t v_2 for some 0 <= t <= 1, found without the norm code
    d = VS[2] - VS[1]
    t = (u.x - VS[1].x) / d.x
    assert 0 <= t <= 1
    assert VS[1].y + t * d.y == u.y


def test_edges_have_length_a_k():
    for k in range(1, 201):
        assert SP.norm(VS[k + 1] - VS[k]) == coefficient_a(SP.params, k)


def test_vertices_lie_on_unit_circle():
    for k in list(range(60)) + [500, 1000]:
        assert SP.norm(VS[k]) == 1
    assert SP.norm(LIMIT) == 1


def test_facet_functionals_support_the_disc():
    for k in range(1, 150):
        al, be = VS.functional(k)
        for j in (k, k + 1):
            assert al * VS[j].x + be * VS[j].y == 1
        for j in (k - 1, k + 2, k + 40):
            assert al * VS[j].x + be * VS[j].y < 1
        assert al * LIMIT.x + be * LIMIT.y < 1
        assert be < 1  # e2 strictly inside the half-plane


def test_classify_ray():
    assert SP.classify_ray(LIMIT)[1] == "ii"
    facet, case = SP.classify_ray(VS[1] + VS[2])
    assert (facet.kind, facet.index, case) == ("chain", 1, "i")
    assert SP.classify_ray(Vec2(1, 1))[0].kind == "northeast"
    assert SP.classify_ray(Vec2(-1, -1))[0].sign == -1


@given(vectors)
def test_norm_matches_brute_force(v):
    assume(not v.is_zero())
    facet, case = SP.classify_ray(v)
    n = SP.norm(v)
    b = brute_norm(v)
    if case == "i" and facet.index >= N_ORACLE:
        assert b <= n
    else:
        assert b == n


def test_norm_matches_brute_force_near_the_accumulation_point():
    # directions just clockwise of v_inf meet chain facets far out
    for k in (5, 50, 250):
        v = VS[k] + VS[k + 1] * 3
        assert SP.norm(v) == brute_norm(v)


@given(vectors, vectors)
def test_triangle_inequality(u, v):
    assert SP.norm(u + v) <= SP.norm(u) + SP.norm(v)


@given(vectors, rationals)
def test_homogeneity(v, c):
    assert SP.norm(v * c) == abs(c) * SP.norm(v)


@given(vectors)
def test_definiteness_and_symmetry(v):
    n = SP.norm(v)
    assert (n == 0) == v.is_zero()
    assert n >= 0 and SP.norm(-v) == n


eps_vectors = st.builds(Vec2, eps_linear(), eps_linear())


@given(eps_vectors, eps_vectors)
def test_triangle_inequality_eps(u, v):
    assert SP_EPS.norm(u + v) <= SP_EPS.norm(u) + SP_EPS.norm(v)


@given(eps_vectors, eps_linear())
def test_homogeneity_eps(v, c):
    assert SP_EPS.norm(v * c) == abs(c) * SP_EPS.norm(v)


@given(st.builds(Vec2, rationals, rationals))
def test_eps_space_extends_rational_space(v):
    lifted = Vec2(RatFunc.const(v.x), RatFunc.const(v.y))
    assert SP_EPS.norm(lifted) == SP.norm(v)


def test_disc_near_the_accumulation_point():
    c = LIMIT.x
    assert SP_EPS.disc_contains(Vec2(c - EPS, RatFunc.const(1)))
    assert not SP_EPS.disc_contains(Vec2(RatFunc.const(c - Fraction(1, 1000)), RatFunc.const(1)))
    assert not SP.disc_contains(Vec2(c - Fraction(1, 10**12), Fraction(1)))
    assert SP.disc_contains(Vec2(c, Fraction(1)))
    assert not SP.disc_contains(E2 - E1)


def test_extremality():
    assert SP.extreme_classify(1, E2).is_extreme
    mid = (VS[1] + VS[2]) / 2
    ex = SP.extreme_classify(1, mid)
    assert ex.status == "on_sphere" and not ex.is_extreme
    ex = SP.extreme_classify(100, VS[3] * 100)
    assert (ex.status, ex.kind, ex.index) == ("extreme", "chain", 3)
    assert SP.extreme_classify(1, LIMIT).kind == "limit"
    assert not SP_EPS.extreme_classify(1, Vec2(RatFunc.const(LIMIT.x), RatFunc.const(1))).is_extreme
    assert SP.extreme_classify(2, VS[3]).status == "not_on_sphere"
    ex = SP.extreme_classify(1, -VS[7])
    assert (ex.kind, ex.index, ex.sign) == ("chain", 7, -1)


def test_extremality_matches_midpoint_definition():
    # p is extreme iff no chord through p with both ends on the sphere
    for k in range(1, 30):
        p = VS[k]
        d = VS[k + 1] - VS[k - 1]
        for t in (Fraction(1, 10**6), Fraction(1, 3)):
            assert SP.norm(p + d * t) != 1 or SP.norm(p - d * t) != 1


def test_dimension_checks():
    sp4 = get_space(dimension=4)
    v = VecD.make(Vec2(1, 1), {1: Fraction(2), 2: Fraction(-1, 3)})
    assert sp4.norm(v) == 2 + 2 + Fraction(1, 3)
    with pytest.raises(ValueError):
        sp4.norm(VecD.basis(3))
    assert get_space(dimension=None).norm(VecD.basis(10**6, Fraction(5))) == 5
    with pytest.raises(ValueError):
        JSpace(dimension=1)


def test_w_basis_points_are_equidistant_from_other_extremes():
    sp4 = get_space(dimension=4)
    r = Fraction(7, 2)
    rng = random.Random(3)
    for n in (1, 2):
        for s in (1, -1):
            b = VecD.basis(n, s * r)
            assert sp4.extreme_classify(r, b).kind == "w"
            for _ in range(10):
                k = rng.randrange(0, 200)
                p = VecD(VS[k] * (r * rng.choice((1, -1))))
                assert sp4.norm(b - p) == 2 * r


@given(positive_rationals, st.integers(min_value=0, max_value=300))
def test_scaled_vertices_are_extreme(r, k):
    ex = SP.extreme_classify(r, VS[k] * r)
    assert ex.is_extreme and ex.index == k


def test_params_change_the_circle():
    sp34 = get_space(3, 4)
    assert sp34.params == validate_params(3, 4)
    v = sp34.vertices
    for k in range(1, 50):
        assert sp34.norm(v[k + 1] - v[k]) == coefficient_a(sp34.params, k)


def test_vertex_accessor_and_monotonicity():
    from jnorm.geometry import vertex

    assert vertex(VS, 0) == Vec2(-1, 0)
    assert vertex(VS, 1) == Vec2(-1, Fraction(51767, 51840))
    for k in range(1, 100):
        assert VS[k + 1].x > VS[k].x and VS[k + 1].y > VS[k].y
        assert VS.chord_gradient(k) > VS.chord_gradient(k + 1) > 0
        assert VS.ray_gradient(k) > VS.ray_gradient(k + 1) > 1 / LIMIT.x
    assert VS.ray_gradient(0) == 0


@given(vectors)
def test_disc_membership_matches_norm(v):
    n = SP.norm(v)
    assert SP.disc_contains(v) == (n <= 1)
    if n:
        assert SP.disc_contains(v / n)
        assert not SP.disc_contains(v / (n * (1 - Fraction(1, 1000))))


def test_ray_march_bracket_for_minus_e1_plus_e2():
    v = E2 - E1
    lo, hi = Fraction(1), Fraction(2)  # v/hi in D, v/lo not
    assert SP.disc_contains(v / hi) and not SP.disc_contains(v / lo)
    for _ in range(60):
        mid = (lo + hi) / 2
        if SP.disc_contains(v / mid):
            hi = mid
        else:
            lo = mid
    assert lo < SP.norm(v) <= hi and hi - lo < Fraction(1, 2**59)


@given(vectors)
def test_classification_mirrors(v):
    assume(not v.is_zero())
    (f1, c1), (f2, c2) = SP.classify_ray(v), SP.classify_ray(-v)
    assert c1 == c2 and f2 == f1.mirror()


def test_facets_strictly_separate_other_vertices():
    pts = [VS[j] for j in range(202)]
    for k in range(200):
        al, be = VS.functional(k)
        for j, v in enumerate(pts):
            if j not in (k, k + 1):
                assert al * v.x + be * v.y < 1
    for v in pts:
        assert v.y < 1 and v.x + v.y < 1


@pytest.mark.parametrize("digits", range(1, 7))
def test_east_face_rule_matches_a_violated_half_plane(digits):
    # (c - d, 1) is outside D: some chain facet's half-plane excludes it
    p = Vec2(LIMIT.x - Fraction(1, 10**digits), Fraction(1))
    assert not SP.disc_contains(p)
    hit = next(k for k in range(1, 5000) if sum(x * y for x, y in zip(VS.functional(k), p)) > 1)
    assert hit >= 1
