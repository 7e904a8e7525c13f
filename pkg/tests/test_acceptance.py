"""The eleven acceptance criteria, all at zero tolerance.

Run ``pytest tests/test_acceptance.py -s`` (or read the summary section of
any pytest run) for one pass/fail line per criterion.
"""

from itertools import combinations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from acceptance_log import record
from strategies import int_matrices, torelli_degree1, torelli_degree2, words
from jones_torelli import quotients, sp4
from jones_torelli.exact import Matrix, T
from jones_torelli.expansion import conjugation_action, delta_k, phi_by_substitution, phi_truncated
from jones_torelli.jones import F, F_INV, check_minus_one_equivalence, psi0_closed_form, rho_evaluate, rho_specialize
from jones_torelli.words import commutator, is_symplectic, parse_word, symplectic_action

CASES = 200
PARTS = {}
SUITES = ("additivity", "bracket", "equivariance", "symplectic", "hnf", "truncation")


def rho(text):
    return rho_evaluate(parse_word(text))


def test_criterion_01_relations():
    ok = True
    for i in range(1, 5):
        ok &= rho(f"z{i} z{i + 1} z{i}") == rho(f"z{i + 1} z{i} z{i + 1}")
    for i in range(1, 6):
        for j in range(i + 2, 6):
            ok &= rho(f"z{i} z{j}") == rho(f"z{j} z{i}")
    ok &= (rho("xi") ** 6).is_identity()
    ok &= rho("z1 z2 z3 z4 z5") == rho("xi")
    iota = rho("iota")
    ok &= (iota @ iota).is_identity()
    ok &= all(iota @ rho(g) == rho(g) @ iota for g in ["z1", "z2", "z3", "z4", "z5", "xi"])
    record(1, "braid relations, xi^6 = Id, iota^2 = Id, iota central", ok)
    assert ok


def test_criterion_02_psi0_closed_form():
    m = rho("psi0")
    ok = m == psi0_closed_form()
    # spot entries of the closed form, written out independently
    ok &= m[0, 0] == T ** 6 and m[3, 3] == T ** 6 + (T ** 15 + 1) * T ** -24 * (1 - T ** 15)
    ok &= m[3, 0] == (T ** 15 + 1) * (T ** 10 - 1) * T ** -24
    ok &= rho_specialize(parse_word("psi0"), 1).is_identity()
    ok &= rho_specialize(parse_word("psi0"), -1).is_identity()
    record(2, "rho(psi0) closed form; identity at t = 1 and t = -1", ok)
    assert ok


def test_criterion_03_minus_one_equivalence():
    ok, witness = check_minus_one_equivalence()
    expected_f = Matrix([
        [0, -1, 0, 0, 0],
        [0, 0, 0, 0, -1],
        [1, 0, 0, 0, 0],
        [0, 0, 1, 1, -1],
        [0, 0, 0, 1, 0],
    ])
    ok &= witness["F"] == expected_f == F
    # the wrong sign must fail, so the check is not vacuous
    ok &= not check_minus_one_equivalence(sign=1)[0]
    record(3, "P(z1)F = -FZ and P(xi)F = -FX", ok)
    assert ok


def test_criterion_04_delta1_psi0():
    d = delta_k(parse_word("psi0"), 1)
    ok = d.matrix == F @ Matrix.diagonal([6, 6, -24, 6, 6]) @ F_INV
    e = sp4.basis_vector
    expected = tuple(
        -12 * (2 * e(3, 3)[k] - (e(1, 1)[k] + e(2, 2)[k])) - 6 * ((e(1, 1)[k] + e(2, 2)[k]) - (e(4, 4)[k] + e(5, 5)[k]))
        for k in range(25)
    )
    v = sp4.graded_identification(d)
    ok &= v == expected
    ok &= sp4.weight_of(v) == sp4.Weight(0, 0)
    ok &= v in sp4.gamma02()
    record(4, "delta_1(psi0) = F diag(6,6,-24,6,6) F^-1, weight-0 vector of Gamma_{0,2}", ok)
    assert ok


def test_criterion_05_tables():
    full, g02 = sp4.full_space(), sp4.gamma02()
    dims1 = [sp4.weight_table(full)[mu] for mu in sp4.TABLE_ORDER]
    ok = dims1 == [1, 2, 2, 2, 1, 2, 5, 2, 1, 2, 2, 2, 1]
    ok &= sp4.matches_table(full, sp4.END_WEIGHT_TABLE)
    ok &= sp4.matches_table(g02, sp4.GAMMA02_WEIGHT_TABLE)
    ok &= g02.dim == 14
    ok &= g02 == sp4.Submodule([v for row in sp4.table_spans(sp4.GAMMA02_WEIGHT_TABLE).values() for v in row])
    record(5, "weight spaces of End(Gamma_{0,1}) and Gamma_{0,2} match the reference bases", ok)
    assert ok


def test_criterion_06_decomposition():
    labels = sp4.identify_module(sp4.full_space())
    ok = labels == ["Gamma_{0,0}", "Gamma_{0,2}", "Gamma_{2,0}"]
    pieces = sp4.decompose(sp4.full_space())
    ok &= sorted(s.dim for _, s in pieces) == [1, 10, 14]
    record(6, "End(Gamma_{0,1}) = Gamma_{0,2} + Gamma_{2,0} + Gamma_{0,0}", ok)
    assert ok


def test_criterion_07_brackets():
    g02 = sp4.gamma02()
    br = sp4.bracket_module(g02, g02)
    table = sp4.weight_table(br)
    dims = [table.get(mu, 0) for mu in (sp4.Weight(2, 2), sp4.Weight(2, 0), sp4.Weight(0, 0))]
    ok = dims == [0, 1, 2]
    ok &= sp4.identify_module(br) == ["Gamma_{2,0}"]
    ok &= sp4.identify_module(sp4.bracket_module(g02, sp4.gamma20())) == ["Gamma_{0,2}"]
    record(7, "[G02,G02] dims 0,1,2 and = G20; [G02,G20] = G02", ok)
    assert ok


def test_criterion_08_theorem_a():
    basis, info = sp4.orbit_span(delta_k(parse_word("psi0"), 1), depth=4)
    ok = len(basis) == 14
    ok &= sp4.Submodule(basis) == sp4.gamma02()
    ok &= info["sp_stable"]
    ok &= info["rank_by_depth"][-1] == info["rank_by_depth"][-2] == 14
    record(8, "orbit span of delta_1(psi0) is Gamma_{0,2}, Sp-stable", ok)
    assert ok


def test_criterion_09_theorem_b():
    results = dict(sp4.alternation(6))
    ok = all(results[k] == (["Gamma_{2,0}"] if k % 2 == 0 else ["Gamma_{0,2}"]) for k in range(2, 7))
    record(9, "C_k alternates Gamma_{2,0}, Gamma_{0,2} for k = 2..6", ok)
    assert ok


def test_criterion_10_quotient_orders():
    o1 = quotients.cyclic_order_degree1()
    o2 = quotients.cyclic_order_degree2()
    ok = o1 == 10 and o2 == 10 and o2 % o1 == 0
    record(10, f"Z_phi1 and Z_phi2 have order 10 (got {o1}, {o2})", ok)
    assert ok


# ---------------------------------------------------------------------------
# criterion 11: property suites


def _run_part(name, fn):
    ok = False
    try:
        fn()
        ok = True
    finally:
        PARTS[name] = ok
        if set(PARTS) == set(SUITES):
            passed = sum(PARTS.values())
            record(11, f"property suites, {CASES} seeded cases each ({passed}/{len(SUITES)} passed)", all(PARTS.values()))


@settings(max_examples=CASES)
@given(st.sampled_from([1, 2]), st.data())
def _additivity(k, data):
    gen = torelli_degree1() if k == 1 else torelli_degree2()
    u, v = data.draw(gen), data.draw(gen)
    assert delta_k(u * v, k).matrix == delta_k(u, k).matrix + delta_k(v, k).matrix


def test_criterion_11_additivity():
    _run_part("additivity", _additivity)


@settings(max_examples=CASES)
@given(torelli_degree1(), torelli_degree1())
def _bracket(u, v):
    d = delta_k(commutator(u, v), 2)
    assert d == delta_k(u, 1).bracket(delta_k(v, 1))


def test_criterion_11_bracket():
    _run_part("bracket", _bracket)


@settings(max_examples=CASES)
@given(words(5), st.sampled_from([1, 2]), st.data())
def _equivariance(g, k, data):
    u = data.draw(torelli_degree1(3) if k == 1 else torelli_degree2())
    assert delta_k(u.conjugate(g), k) == conjugation_action(g, delta_k(u, k))


def test_criterion_11_equivariance():
    _run_part("equivariance", _equivariance)


@settings(max_examples=CASES)
@given(words(8), words(8))
def _symplectic(u, v):
    s = symplectic_action
    assert s(u * v) == s(u) @ s(v)
    assert (s(u) @ s(u.inverse())).is_identity()
    assert is_symplectic(s(u))


def test_criterion_11_symplectic_homomorphism():
    _run_part("symplectic", _symplectic)


def _det_divisor(rows, r):
    """gcd of all r x r minors: an independent lattice invariant."""
    g = 0
    m = sympy.Matrix(rows)
    for ri in combinations(range(m.rows), r):
        for ci in combinations(range(m.cols), r):
            g = sympy.gcd(g, m.extract(list(ri), list(ci)).det())
    return abs(int(g))


def _same_lattice(a, b):
    r = sympy.Matrix(a).rank() if a else 0
    if r != (sympy.Matrix(b).rank() if b else 0):
        return False
    if r == 0:
        return True
    both = list(a) + list(b)
    return _det_divisor(a, r) == _det_divisor(both, r) == _det_divisor(b, r)


@settings(max_examples=CASES)
@given(int_matrices(), st.randoms(use_true_random=False))
def _hnf(rows, rnd):
    n = len(rows[0])
    lat = quotients.hnf(rows, n)
    basis = [list(v) for v in lat.basis]
    assert _same_lattice(rows, basis)
    assert quotients.hnf(basis, n) == lat
    # unimodular row operations do not change the normal form
    shuffled = [list(r) for r in rows]
    for _ in range(6):
        i, j = rnd.randrange(len(shuffled)), rnd.randrange(len(shuffled))
        if i != j:
            c = rnd.randint(-3, 3)
            shuffled[i] = [x + c * y for x, y in zip(shuffled[i], shuffled[j])]
    rnd.shuffle(shuffled)
    assert quotients.hnf(shuffled, n) == lat
    expected = [int(d) for d in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if d]
    assert quotients.smith_diagonal(rows) == [abs(d) for d in expected]


def test_criterion_11_hnf_oracle():
    _run_part("hnf", _hnf)


@settings(max_examples=CASES)
@given(words(8), st.integers(0, 4), st.integers(0, 4))
def _truncation(w, k1, k2):
    lo, hi = sorted((k1, k2))
    m_hi = phi_truncated(w, hi)
    assert m_hi.map(lambda s: s.truncate(lo)) == phi_truncated(w, lo)
    assert m_hi == phi_by_substitution(w, hi)


def test_criterion_11_truncation_consistency():
    _run_part("truncation", _truncation)


def test_property_suites_are_seeded():
    # derandomized hypothesis: the drawn examples are the same on every run
    seen = []

    @settings(max_examples=5, database=None)
    @given(words(4))
    def collect(w):
        seen.append(str(w))

    collect()
    first = list(seen)
    seen.clear()
    collect()
    assert seen == first
