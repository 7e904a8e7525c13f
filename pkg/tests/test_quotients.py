from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import torelli_degree1, words
from jones_torelli import quotients as q
from jones_torelli.expansion import phi_generator, phi_truncated
from jones_torelli.words import Generator, Word, commutator, parse_word

letter = st.builds(Generator, st.sampled_from(["z1", "z2", "z3", "z4", "z5", "xi"]), st.sampled_from([1, -1]))


@settings(max_examples=200)
@given(st.integers(-50, 50), st.integers(-50, 50))
def test_xgcd(a, b):
    g, x, y = q.xgcd(a, b)
    assert g >= 0 and a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


def test_hnf_membership():
    lat = q.hnf([[2, 4, 0], [0, 3, 3]])
    assert lat.rank == 2
    assert (2, 7, 3) in lat
    assert (1, 2, 0) not in lat
    assert lat.coordinates((4, 11, 3)) is not None
    assert q.hnf([[0, 0]], 2).rank == 0
    with pytest.raises(ValueError):
        q.hnf([])


def test_smith_and_quotient():
    assert q.smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert q.smith_diagonal([[4, 6], [6, 9]]) == [1]
    full = q.IntegerLattice(2, [(1, 0), (0, 1)])
    sub = q.hnf([[2, 0]], 2)
    assert q.snf_quotient(full, sub) == [2, 0]
    with pytest.raises(ValueError):
        q.snf_quotient(sub, full)


def test_quotient_order_of():
    full = q.IntegerLattice(2, [(1, 0), (0, 1)])
    assert q.quotient_order_of((1, 0), full, q.hnf([[3, 0], [0, 1]], 2)) == 3
    assert q.quotient_order_of((1, 0), full, q.hnf([[0, 1]], 2)) is None
    assert q.quotient_order_of((0, 0), full, q.IntegerLattice(2, [])) == 1
    with pytest.raises(q.OrderCapExceeded):
        q.quotient_order_of((1, 0), full, q.hnf([[30, 0]], 2), cap=10)
    with pytest.raises(ValueError):
        q.quotient_order_of((1, 0), q.hnf([[2, 0]], 2), full)


@pytest.fixture(scope="module")
def degree1():
    return q.degree1_report()


def test_degree1_order_and_certificate(degree1):
    assert degree1.order == 10
    assert degree1.lattice.rank == 14
    assert degree1.sp_stable
    assert degree1.divisors == [1] * 13 + [10]
    assert degree1.generator in degree1.lattice


def test_degree1_lattices_are_stable(degree1):
    pairs = q._letter_pairs(q.ORBIT_LETTERS)
    for p, p_inv in pairs:
        for v in degree1.lattice.basis:
            assert q._conj_flat(p, v, p_inv) in degree1.lattice
        for v in degree1.relations.basis:
            assert q._conj_flat(p, v, p_inv) in degree1.relations


def test_degree1_scaling_invariance(degree1):
    res = q.degree1_report(extra_scale=2)
    assert res.order == degree1.order
    assert res.denominator == 2 * degree1.denominator


def test_degree1_independent_of_letter_order(degree1):
    res = q.orbit_lattice_degree1(letters=tuple(reversed(q.ORBIT_LETTERS)))
    assert res.lattice == degree1.lattice
    assert res.relations == degree1.relations


def test_degree1_rank_is_monotone(degree1):
    ranks = degree1.rank_by_depth
    assert ranks == sorted(ranks)


# ---------------------------------------------------------------------------
# degree 2


def x_of(text):
    return q.NilpotentElement.of_word(parse_word(text))


def test_group_law_matches_series():
    x, y = x_of("psi0"), x_of("xi psi0' xi'")
    assert (x * y).to_series() == x.to_series() @ y.to_series()
    assert (x * x.inverse()).is_identity()
    assert x ** 5 == x * x * x * x * x
    assert x ** -2 == x.inverse() * x.inverse()


@settings(max_examples=200)
@given(torelli_degree1(3), torelli_degree1(3))
def test_commutator_formula(u, v):
    x, y = q.NilpotentElement.of_word(u), q.NilpotentElement.of_word(v)
    c = q.nil_commutator(x, y)
    assert c == x * y * x.inverse() * y.inverse()
    assert c == q.NilpotentElement.of_word(commutator(u, v))
    assert c.is_central()


@settings(max_examples=200)
@given(torelli_degree1(3), letter)
def test_conjugation_formula_matches_series(u, g):
    x = q.NilpotentElement.of_word(u)
    assert x.conjugate(g) == x.conjugate_by_series(g)
    assert x.conjugate(g) == q.NilpotentElement.of_word(u.conjugate(Word([g])))


@settings(max_examples=50)
@given(words(3), torelli_degree1(2))
def test_conjugate_word(w, u):
    x = q.NilpotentElement.of_word(u)
    assert x.conjugate_word(w) == q.NilpotentElement.of_word(u.conjugate(w))


def test_subgroup_membership():
    x, y = x_of("psi0"), x_of("xi psi0 xi'")
    data = q.nilpotent_subgroup_closure([x ** 2, y])
    assert q.nilpotent_membership(x ** 4, data)
    assert q.nilpotent_membership(y ** -3 * x ** 2, data)
    assert not q.nilpotent_membership(x, data)
    assert q.nilpotent_membership(q.nil_commutator(x, y) ** 2, data)


def test_subgroup_rescaling():
    # a generator with a finer denominator forces a rebuild
    x = x_of("psi0")
    half = q.NilpotentElement(x.a.scale(Fraction(1, 2)), x.b.scale(Fraction(1, 4)))
    data = q.nilpotent_subgroup_closure([x])
    data.add(half)
    assert data.contains(half) and data.contains(x) and data.contains(half * half)


def test_normal_closure_is_normal():
    data = q.nilpotent_subgroup_closure([x_of("psi0")])
    rounds = q.normal_closure(data)
    assert rounds >= 1
    for e in data.elements():
        for g in q.CONJUGATORS:
            assert data.contains(e.conjugate(g))


def test_degree2_order():
    res = q.degree2_report(depth=2)
    assert res.order == 10
    assert res.order % q.cyclic_order_degree1() == 0
    ranks = res.ranks()
    assert ranks["image_degree1"] == 14


def test_degree2_cap():
    with pytest.raises(q.OrderCapExceeded):
        q.degree2_report(depth=2, cap=5)


def test_phi_generator_cache_consistency():
    g = Generator("z3", -1)
    assert phi_generator(g, 2) == phi_truncated(Word([g]), 2)
