import pytest
from hypothesis import given, settings, strategies as st

from gkmchar.charformulas import (
    cohomology_pushforward,
    kac_basis_ind,
    kac_fiber_ind,
    kac_ind,
    kac_metadata,
    kac_numerator,
    weyl_denominator,
    weyl_ind,
    weyl_numerator,
)
from gkmchar.laurent import LaurentPoly, NotDivisible, Poly, chern_character, evaluate_at_one, orbit_sum, weyl_act
from gkmchar.localize import pushforward
from gkmchar.momentgraph import GKMSection, Theory, build_moment_graph, restrict_character
from gkmchar.qseries import QSeries, quasi_periodicity_check, theta, theta_index_set
from gkmchar.rootdata import EqualRankPair, dual_coxeter_number, looijenga_form, root_system, weight, wneg
from gkmchar.verify import invariant_orbit_characters, simple_coroots, small_weights

from oracles import freudenthal_character, weyl_dimension


def z(*fund):
    return LaurentPoly.monomial(weight(fund))


def dominant(rank, height):
    return [c for c in small_weights(rank, height) if all(v >= 0 for v in c)]


# Weyl character formula


@pytest.mark.parametrize("n", range(6))
def test_weyl_a1_string(n):
    p = EqualRankPair(root_system("A1"))
    expected = sum((z(n - 2 * i) for i in range(n + 1)), LaurentPoly.zero(1))
    assert weyl_ind(p, z(n)) == expected


def test_weyl_a1_trivial():
    p = EqualRankPair(root_system("A1"))
    assert weyl_ind(p, LaurentPoly.constant(1)) == LaurentPoly.constant(1)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_weyl_matches_freudenthal(name):
    rs = root_system(name)
    p = EqualRankPair(rs)
    dims = set()
    for lam in dominant(rs.rank, 3 if name == "A2" else 2):
        fund = tuple(c // 2 for c in lam)
        expected = freudenthal_character(rs, fund)
        out = weyl_ind(p, LaurentPoly.monomial(lam))
        assert out == expected
        assert evaluate_at_one(out) == weyl_dimension(rs, fund)
        dims.add(evaluate_at_one(out))
    if name == "A2":
        assert {1, 3, 6, 8, 10} <= dims


def test_weyl_a2_adjoint():
    out = weyl_ind(EqualRankPair(root_system("A2")), z(1, 1))
    assert evaluate_at_one(out) == 8
    assert out.coefficient((0, 0)) == 2


@pytest.mark.parametrize("name,sub", [("A1", []), ("A2", []), ("A2", [1]), ("A2", [2]), ("B2", [1]), ("G2", [1])])
def test_weyl_equals_localization(name, sub):
    p = EqualRankPair.parabolic(root_system(name), sub)
    g = build_moment_graph(p)
    for lam, chi in invariant_orbit_characters(p, 2):
        out = weyl_ind(p, chi)
        assert out == pushforward(g, restrict_character(g, chi))
        assert out.has_integer_coefficients()
        assert all(weyl_act(w, out) == out for w in p.ambient.weyl_group)


def test_weyl_full_group_is_identity():
    p = EqualRankPair.parabolic(root_system("B2"), [1, 2])
    chi = orbit_sum(p.W_H, weight((1, 1)))
    assert weyl_ind(p, chi) == chi


def test_weyl_rejects_non_invariant():
    p = EqualRankPair.parabolic(root_system("A2"), [1])
    with pytest.raises(ValueError):
        weyl_ind(p, z(1, 0))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2"]), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_weyl_ind_sign_law(name, c):
    # w(lam + rho) - rho gives det(w) times the same character
    rs = root_system(name)
    p = EqualRankPair(rs)
    lam = weight(c)
    base = weyl_ind(p, LaurentPoly.monomial(lam))
    for w in rs.weyl_group:
        mu = tuple(a - b for a, b in zip(w.act(tuple(x + y for x, y in zip(lam, rs.rho))), rs.rho))
        other = weyl_ind(p, LaurentPoly.monomial(mu))
        assert other == (base if w.det > 0 else -base)


# cohomology


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_cohomology_of_one_vanishes(name):
    rs = root_system(name)
    assert cohomology_pushforward(EqualRankPair(rs), Poly.constant(rs.rank)).is_zero()


def test_cohomology_a1_omega():
    p = EqualRankPair(root_system("A1"))
    assert cohomology_pushforward(p, Poly.linear(weight((1,)))) == Poly.constant(1, -1)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_cohomology_top_class(name):
    rs = root_system(name)
    f = Poly.constant(rs.rank)
    for a in rs.positive_roots:
        f = f * Poly.linear(a)
    out = cohomology_pushforward(EqualRankPair(rs), f)
    assert out in (Poly.constant(rs.rank, len(rs.weyl_group)), Poly.constant(rs.rank, -len(rs.weyl_group)))


@pytest.mark.parametrize("name,sub", [("A2", []), ("A2", [1]), ("B2", [2])])
def test_cohomology_degree_drop_and_localization(name, sub):
    p = EqualRankPair.parabolic(root_system(name), sub)
    g = build_moment_graph(p)
    for lam, chi in invariant_orbit_characters(p, 2):
        for j in range(p.dimension + 2):
            f = chern_character(chi, j)
            out = cohomology_pushforward(p, f)
            assert out.is_zero() or out.degree() == j - p.dimension
            assert out == pushforward(g, restrict_character(g, f))


def test_cohomology_low_degree_vanishes():
    # an alternating polynomial of degree below |R+| is zero
    p = EqualRankPair(root_system("A2"))
    assert cohomology_pushforward(p, Poly.linear(weight((1, 0))) + Poly.constant(2, 3)).is_zero()


def test_cohomology_non_class_section_rejected():
    p = EqualRankPair(root_system("A2"))
    g = build_moment_graph(p)
    vals = {v: Poly.zero(2) for v in g.vertices}
    vals[g.vertices[0]] = Poly.linear(weight((1, 0)))
    with pytest.raises(NotDivisible):
        pushforward(g, GKMSection(vals, Theory.COHOMOLOGY), verify=False)


# denominator identity


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "C3", "G2", "A3"])
def test_denominator_identity(name):
    rs = root_system(name)
    assert weyl_numerator(rs) == weyl_denominator(rs)


# Kac formula


A1 = root_system("A1")
A2 = root_system("A2")


def test_kac_zero():
    p = EqualRankPair(A1)
    assert kac_ind(p, QSeries.zero(1, 5)).is_zero()


def test_kac_wall_vanishes():
    form = looijenga_form(A1)
    p = EqualRankPair(A1)
    # lam = 0 is fixed by s
    assert kac_ind(p, theta(3, form, 8, (0,))).is_zero()
    assert kac_basis_ind(A1, 1, (0,), 8).is_zero()


@pytest.mark.parametrize("rs,level", [(A1, 1), (A1, 2), (A2, 1)])
def test_kac_numerator_identity(rs, level):
    form = looijenga_form(rs)
    k = level + dual_coxeter_number(rs)
    for lam in theta_index_set(k, form):
        t = theta(k, form, 6, lam)
        alt = None
        for w in rs.weyl_group:
            term = weyl_act(w, t) if w.det > 0 else -weyl_act(w, t)
            alt = term if alt is None else alt + term
        assert alt == kac_numerator(rs, k, lam, 6)


@pytest.mark.parametrize("rs,level", [(A1, 1), (A1, 2), (A2, 1)])
def test_kac_basis_matches_kac_ind(rs, level):
    form = looijenga_form(rs)
    k = level + dual_coxeter_number(rs)
    p = EqualRankPair(rs)
    for lam in theta_index_set(k, form):
        assert kac_basis_ind(rs, level, lam, 6) == kac_ind(p, theta(k, form, 6, lam))


@pytest.mark.parametrize("rs,level", [(A1, 1), (A2, 1)])
def test_kac_antisymmetry(rs, level):
    k = level + dual_coxeter_number(rs)
    for lam in theta_index_set(k, looijenga_form(rs)):
        base = kac_basis_ind(rs, level, lam, 5)
        for w in rs.weyl_group:
            other = kac_basis_ind(rs, level, w.act(lam), 5)
            assert other == (base if w.det > 0 else -base)


@pytest.mark.parametrize("level", [1, 2])
def test_kac_a1_classical_limit_and_level(level):
    form = looijenga_form(A1)
    p = EqualRankPair(A1)
    k = level + 2
    nonzero = 0
    for lam in theta_index_set(k, form):
        out = kac_basis_ind(A1, level, lam, 10)
        if out.is_zero():
            continue
        nonzero += 1
        f = theta(k, form, 10, lam)
        m0 = f.min_order
        assert out[m0] == weyl_ind(p, f[m0].shift(wneg(A1.rho)))
        assert quasi_periodicity_check(out, level, (1,), form)
        assert not quasi_periodicity_check(out, k, (1,), form)
        # the lowest coefficient is W-invariant
        low = out[out.min_order]
        assert all(weyl_act(w, low) == low for w in A1.weyl_group)
    assert nonzero > 0


def test_kac_a2_level_shift():
    form = looijenga_form(A2)
    out = kac_basis_ind(A2, 1, A2.rho, 4)
    assert not out.is_zero()
    for x in simple_coroots(2):
        assert quasi_periodicity_check(out, 1, x, form)


def test_kac_fiber_ind_invariant_and_functorial():
    form = looijenga_form(A2)
    p = EqualRankPair.parabolic(A2, [1])
    full = EqualRankPair(A2)
    for lam in theta_index_set(4, form)[:5]:
        t = theta(4, form, 3, lam)
        f = kac_fiber_ind(p, t)
        assert all(weyl_act(h, f) == f for h in p.W_H)
        assert kac_ind(p, f) == kac_ind(full, t)
    t = theta(4, form, 3, (2, 2))
    assert kac_fiber_ind(full, t) == t


def test_kac_ind_rejects_non_invariant():
    p = EqualRankPair.parabolic(A2, [1])
    with pytest.raises(ValueError):
        kac_ind(p, theta(4, looijenga_form(A2), 3, (2, 0)))


def test_kac_metadata():
    meta = kac_metadata(A1, 1, (2,))
    assert meta["theta_level"] == 3 and meta["dual_coxeter"] == 2
    assert meta["shifted_highest_weight"] == [4]
    assert meta["dimension"] == 1
