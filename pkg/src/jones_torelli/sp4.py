"""sp(4) weight machinery on Gamma_{0,1} = Lambda^2 H / omega and on
End(Gamma_{0,1}) = Gamma_{0,1} (x) Gamma_{0,1}^*, the target of the
graded classes delta_k.

Conventions: ``H`` has ordered basis ``(x1, x2, y1, y2)``, the Cartan
subalgebra is ``diag(a, b, -a, -b)``, and the weight ``aL1 + bL2`` is the
pair ``(a, b)``.  Positive roots are ``L1-L2, 2L1, L1+L2, 2L2``.
An End vector is a 25-tuple of Fractions, coordinate ``5*i + j`` being the
coefficient of ``e_{i+1,j+1} = t_{i+1} (x) t_{j+1}^*``.
"""

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from .exact import Matrix, in_span, nullspace, rational_inverse, rational_rank, rref
from .expansion import conjugation_action
from .jones import F, F_INV
from .words import GENERATORS, J, WEDGE_BASIS, Generator, Word, lambda2_matrix, symplectic_action, wedge_coordinates

Weight = namedtuple("Weight", "a b")


def _mat(*terms):
    rows = [[0] * 4 for _ in range(4)]
    for coeff, i, j in terms:
        rows[i][j] += coeff
    return Matrix(rows)


POSITIVE_ROOTS = {
    Weight(1, -1): _mat((1, 0, 1), (-1, 3, 2)),
    Weight(2, 0): _mat((1, 0, 2)),
    Weight(1, 1): _mat((1, 0, 3), (1, 1, 2)),
    Weight(0, 2): _mat((1, 1, 3)),
}

CARTAN = {
    "H1": _mat((1, 0, 0), (-1, 2, 2)),
    "H2": _mat((1, 1, 1), (-1, 3, 3)),
}


def root_name(w, sign):
    return f"{'X' if sign > 0 else 'Y'}[{w.a},{w.b}]"


def chevalley_basis():
    """The ten basis elements: ``H1, H2`` and ``X[a,b], Y[a,b]`` per positive root."""
    basis = dict(CARTAN)
    for w, x in POSITIVE_ROOTS.items():
        basis[root_name(w, 1)] = x
        basis[root_name(w, -1)] = x.transpose()
    for name, a in basis.items():
        if not is_sp4(a):
            raise AssertionError(f"{name} is not in sp(4)")
    return basis


def is_sp4(a):
    return (a.transpose() @ J + J @ a).is_zero()


def lie_bracket(a, b):
    return a @ b - b @ a


def negative_root_operators():
    return {root_name(w, -1): x.transpose() for w, x in POSITIVE_ROOTS.items()}


def positive_root_operators():
    return {root_name(w, 1): x for w, x in POSITIVE_ROOTS.items()}


# ---------------------------------------------------------------------------
# Gamma_{0,1}


def _derive_wedge(a, i, j):
    """Derivation action of ``a`` on ``e_i ^ e_j``, projected to t1..t5."""
    ei = [int(k == i) for k in range(4)]
    ej = [int(k == j) for k in range(4)]
    ai = [a[k, i] for k in range(4)]
    aj = [a[k, j] for k in range(4)]
    return [p + q for p, q in zip(wedge_coordinates(ai, ej), wedge_coordinates(ei, aj))]


def omega_image(a):
    """Image of omega = x1^y1 + x2^y2 under ``a``, in the quotient.

    Zero for every ``a`` in sp(4); this is what makes the action on the
    quotient independent of representatives.
    """
    u = _derive_wedge(a, 0, 2)
    v = _derive_wedge(a, 1, 3)
    return [p + q for p, q in zip(u, v)]


def gamma01_matrix(a):
    """5x5 matrix of ``a`` on Gamma_{0,1} in the basis t1..t5."""
    if any(omega_image(a)):
        raise ValueError("action does not preserve omega")
    cols = [_derive_wedge(a, i, j) for i, j in WEDGE_BASIS]
    return Matrix(zip(*cols))


def act_on_gamma01(a, v):
    m = gamma01_matrix(a)
    return tuple(sum(m[i, j] * Fraction(v[j]) for j in range(5)) for i in range(5))


# ---------------------------------------------------------------------------
# End(Gamma_{0,1})

DIM = 25


def basis_vector(i, j):
    """e_{i,j} with 1-based indices."""
    v = [Fraction(0)] * DIM
    v[5 * (i - 1) + (j - 1)] = Fraction(1)
    return tuple(v)


def to_matrix(v):
    return Matrix([v[5 * i:5 * i + 5] for i in range(5)])


def from_matrix(m):
    return tuple(m.flat())


@lru_cache(maxsize=None)
def _end_operator_cached(key):
    a = Matrix(key)
    return gamma01_matrix(a)


def end_operator(a):
    return _end_operator_cached(a.rows)


def act_on_end(a, e):
    """Derivation action ``[a, e]`` on End(Gamma_{0,1})."""
    m = end_operator(a)
    x = to_matrix(e)
    return from_matrix(m @ x - x @ m)


def group_act_on_end(s, e):
    """Action of a symplectic matrix ``s`` on End by conjugation."""
    m = lambda2_matrix(s)
    return from_matrix(m @ to_matrix(e) @ rational_inverse(m))


def weight_of(e):
    """Cartan eigenvalues of a weight vector, or None if ``e`` is not one."""
    if not any(e):
        return None
    vals = []
    for h in ("H1", "H2"):
        img = act_on_end(CARTAN[h], e)
        k = next(i for i, x in enumerate(e) if x)
        lam = img[k] / e[k]
        if any(y != lam * x for x, y in zip(e, img)):
            return None
        vals.append(int(lam))
    return Weight(*vals)


@lru_cache(maxsize=None)
def basis_weights():
    """Weight of each e_{i,j}, read from the Cartan action."""
    out = []
    for i in range(1, 6):
        for j in range(1, 6):
            w = weight_of(basis_vector(i, j))
            if w is None:
                raise AssertionError(f"e_{i},{j} is not a Cartan eigenvector")
            out.append(w)
    return tuple(out)


# row order of the reference weight tables
TABLE_ORDER = (
    Weight(2, 2), Weight(1, 1), Weight(2, 0), Weight(0, 2), Weight(2, -2),
    Weight(1, -1), Weight(0, 0), Weight(-1, 1), Weight(-2, 2), Weight(0, -2),
    Weight(-2, 0), Weight(-1, -1), Weight(-2, -2),
)


# Reference weight-space bases, rows in TABLE_ORDER.  Each basis vector is
# a tuple of (coefficient, i, j) terms meaning sum of coefficient * e_{i,j}.
END_WEIGHT_TABLE = (
    (((1, 1, 2),),),
    (((1, 1, 3),), ((1, 3, 2),)),
    (((1, 1, 5),), ((1, 4, 2),)),
    (((1, 1, 4),), ((1, 5, 2),)),
    (((1, 4, 5),),),
    (((1, 3, 5),), ((1, 4, 3),)),
    tuple(((1, i, i),) for i in range(1, 6)),
    (((1, 3, 4),), ((1, 5, 3),)),
    (((1, 5, 4),),),
    (((1, 2, 5),), ((1, 4, 1),)),
    (((1, 2, 4),), ((1, 5, 1),)),
    (((1, 2, 3),), ((1, 3, 1),)),
    (((1, 2, 1),),),
)

GAMMA02_WEIGHT_TABLE = (
    (((1, 1, 2),),),
    (((1, 1, 3), (2, 3, 2)),),
    (((1, 1, 5), (1, 4, 2)),),
    (((1, 1, 4), (1, 5, 2)),),
    (((1, 4, 5),),),
    (((1, 4, 3), (2, 3, 5)),),
    (((1, 1, 1), (1, 2, 2), (-1, 4, 4), (-1, 5, 5)), ((2, 3, 3), (-1, 1, 1), (-1, 2, 2))),
    (((2, 3, 4), (1, 5, 3)),),
    (((1, 5, 4),),),
    (((1, 2, 5), (1, 4, 1)),),
    (((1, 2, 4), (1, 5, 1)),),
    (((1, 2, 3), (2, 3, 1)),),
    (((1, 2, 1),),),
)


def table_vector(terms):
    v = [Fraction(0)] * DIM
    for c, i, j in terms:
        v[5 * (i - 1) + (j - 1)] += c
    return tuple(v)


def table_spans(table):
    """``{weight: rref basis}`` for a reference table."""
    return {mu: [tuple(r) for r in rref([table_vector(t) for t in row])[0]]
            for mu, row in zip(TABLE_ORDER, table)}


def matches_table(s, table):
    """True iff every weight space of ``s`` equals the table's span exactly."""
    ref = table_spans(table)
    if sum(len(b) for b in ref.values()) != s.dim:
        return False
    return all(weight_space(s, mu) == basis for mu, basis in ref.items())


class Submodule:
    """Rational subspace of End(Gamma_{0,1}) closed under sp(4).

    ``basis`` is the reduced row echelon basis, so two submodules are equal
    iff their bases are.
    """

    def __init__(self, vectors, check=True):
        self.basis = tuple(tuple(r) for r in rref(list(vectors))[0]) if vectors else ()
        if check and not self.is_closed():
            raise ValueError("span is not closed under the sp(4) action")

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __contains__(self, v):
        return in_span(self.basis, v)

    def contains_module(self, other):
        return all(v in self for v in other.basis)

    def is_closed(self):
        if not self.basis:
            return True
        ops = chevalley_basis().values()
        images = [act_on_end(a, v) for a in ops for v in self.basis]
        return rational_rank(list(self.basis) + images) == self.dim

    def weight_space(self, mu):
        return weight_space(self, mu)

    def __repr__(self):
        return f"Submodule(dim={self.dim})"


def full_space():
    return Submodule([basis_vector(i, j) for i in range(1, 6) for j in range(1, 6)], check=False)


def weight_space(s, mu):
    """Basis of the ``mu`` weight space of ``s``.

    ``s`` is Cartan-stable, so its weight space is its projection onto the
    coordinates of weight ``mu``.
    """
    ws = basis_weights()
    idx = [k for k in range(DIM) if ws[k] == mu]
    proj = [[v[k] if k in idx else Fraction(0) for k in range(DIM)] for v in s.basis]
    return [tuple(r) for r in rref(proj)[0]]


def weight_table(s):
    """Map weight -> dimension, in reference table row order.

    Raises if ``s`` does not split into Cartan weight spaces.
    """
    ws = basis_weights()
    table = {}
    for mu in TABLE_ORDER + tuple(sorted(set(ws) - set(TABLE_ORDER))):
        d = len(weight_space(s, mu))
        if d:
            table[mu] = d
    if sum(table.values()) != s.dim:
        raise ValueError("Cartan action on the span is not semisimple; not a submodule")
    return table


class NotHighestWeightError(ValueError):
    pass


def highest_weight_submodule(v):
    """Submodule generated from a highest weight vector by lowering operators."""
    v = tuple(Fraction(x) for x in v)
    if weight_of(v) is None:
        raise NotHighestWeightError("not a weight vector")
    for name, x in positive_root_operators().items():
        if any(act_on_end(x, v)):
            raise NotHighestWeightError(f"{name} does not kill the vector")
    lowers = list(negative_root_operators().values())
    span = [v]
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for y in lowers:
                img = act_on_end(y, u)
                if any(img) and not in_span(span, img):
                    span.append(img)
                    nxt.append(img)
        frontier = nxt
    return Submodule(span)


LABELS = {
    Weight(2, 2): "Gamma_{0,2}",
    Weight(2, 0): "Gamma_{2,0}",
    Weight(0, 0): "Gamma_{0,0}",
}
LABEL_DIMS = {"Gamma_{0,2}": 14, "Gamma_{2,0}": 10, "Gamma_{0,0}": 1}


class UnexpectedConstituentError(ValueError):
    pass


def highest_weight_vectors(s, mu):
    """Basis of the vectors of weight ``mu`` in ``s`` killed by all X."""
    space = weight_space(s, mu)
    if not space:
        return []
    # solve sum c_k X(space_k) = 0 for every positive root operator X
    cols = []
    for x in positive_root_operators().values():
        imgs = [act_on_end(x, u) for u in space]
        cols.extend(zip(*imgs))
    coeffs = nullspace([list(r) for r in cols], ncols=len(space))
    return [tuple(sum(c * u[k] for c, u in zip(cvec, space)) for k in range(DIM)) for cvec in coeffs]


def decompose(s):
    """Split ``s`` into irreducible pieces, peeling 2L1+2L2, then 2L1, then 0."""
    pieces = []
    gathered = []
    for mu, label in LABELS.items():
        for v in highest_weight_vectors(s, mu):
            sub = highest_weight_submodule(v)
            if sub.dim != LABEL_DIMS[label]:
                raise UnexpectedConstituentError(f"{label} piece has dimension {sub.dim}")
            pieces.append((label, sub))
            gathered.extend(sub.basis)
    found = rational_rank(gathered) if gathered else 0
    if found != s.dim:
        raise UnexpectedConstituentError("unexpected constituent: residual complement is nonzero")
    return pieces


def identify_module(s):
    """Sorted list of irreducible labels occurring in ``s`` (with multiplicity)."""
    return sorted(label for label, _ in decompose(s))


def bracket_module(s, t):
    """Span of ``[A, B] = AB - BA`` over spanning vectors of ``s`` and ``t``."""
    vecs = []
    for a in s.basis:
        ma = to_matrix(a)
        for b in t.basis:
            mb = to_matrix(b)
            c = from_matrix(ma @ mb - mb @ ma)
            if any(c):
                vecs.append(c)
    return Submodule(vecs)


@lru_cache(maxsize=None)
def gamma02():
    return highest_weight_submodule(basis_vector(1, 2))


@lru_cache(maxsize=None)
def gamma20():
    return bracket_module(gamma02(), gamma02())


def gamma00():
    return highest_weight_submodule(tuple(sum(basis_vector(i, i)[k] for i in range(1, 6)) for k in range(DIM)))


def graded_identification(d):
    """End vector of a graded class: coordinates of ``F^-1 d F``.

    Accepts a :class:`~jones_torelli.expansion.DeltaClass` or a rational
    5x5 matrix.
    """
    m = getattr(d, "matrix", d)
    return from_matrix(F_INV @ m @ F)


def ungraded_identification(e):
    """Inverse map: ``e -> F E F^-1``."""
    return F @ to_matrix(e) @ F_INV


def alternation(max_k=6):
    """``C_1 = Gamma_{0,2}``, ``C_{k+1} = [C_1, C_k]``; returns ``[(k, labels)]``."""
    c1 = gamma02()
    out = [(1, identify_module(c1))]
    ck = c1
    for k in range(2, max_k + 1):
        ck = bracket_module(c1, ck)
        out.append((k, identify_module(ck)))
    return out


def _letters():
    return [Generator(k, s) for k in GENERATORS for s in (1, -1)]


def orbit_span(d, depth=4):
    """Rational span of ``{w_* d}`` over words ``w`` of length <= ``depth``.

    Returns ``(span, info)`` where ``span`` is the list of identified
    End vectors (rref basis) and ``info`` records the depth at which the
    span stopped growing and whether it is stable under all generators.
    """
    letters = _letters()
    seen = {d.matrix}
    frontier = [d]
    span = [graded_identification(d)]
    rank_by_depth = [rational_rank(span)]
    for level in range(1, depth + 1):
        nxt = []
        for x in frontier:
            for g in letters:
                y = conjugation_action(g, x)
                if y.matrix in seen:
                    continue
                seen.add(y.matrix)
                nxt.append(y)
                v = graded_identification(y)
                if not in_span(span, v):
                    span.append(v)
        frontier = nxt
        rank_by_depth.append(rational_rank(span))
    basis = [tuple(r) for r in rref(span)[0]]
    stable = all(
        in_span(basis, group_act_on_end(symplectic_action(Word([g])), v))
        for v in basis for g in letters
    )
    return basis, {"rank_by_depth": rank_by_depth, "sp_stable": stable}
