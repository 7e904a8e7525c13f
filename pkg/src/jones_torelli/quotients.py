"""Cyclic quotients Z_sigma = sigma(I_2) / sigma([M_2, I_2]) for the
truncations sigma = phi^(1) and phi^(2).

Degree 1 is plain lattice arithmetic: the image of the Torelli group is the
Z-span L of the M_2-orbit of delta_1(psi0), and the image of [M_2, I_2] is
the span L' of the differences ``g.v - v``.

Degree 2 works in the class-2 nilpotent group of units ``1 + a h + b h^2``
modulo ``h^3``, with ``(a, b)(c, d) = (a + c, b + d + ac)``.  Subgroups are
stored polycyclically: echelonized lifts for the degree-1 lattice plus a
central degree-2 lattice.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .exact import Matrix, TruncSeries, rational_rank
from .expansion import coefficient, delta_k, phi_generator, phi_truncated
from .jones import minus_one_generator
from .words import Generator, MACROS, Word

CONJUGATORS = tuple(Generator(k, s) for k in ("z1", "xi") for s in (1, -1))
ORBIT_LETTERS = tuple(Generator(k, s) for k in ("z1", "z2", "z3", "z4", "z5", "xi") for s in (1, -1))


class ClosureError(RuntimeError):
    pass


class OrderCapExceeded(RuntimeError):
    def __init__(self, cap):
        super().__init__(f"order exceeds cap {cap}")
        self.cap = cap


# ---------------------------------------------------------------------------
# integer lattices


def xgcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _hnf_rows(rows, n):
    a = [list(map(int, r)) for r in rows if any(r)]
    r = 0
    for c in range(n):
        p = None
        for i in range(r, len(a)):
            if a[i][c] == 0:
                continue
            if p is None:
                a[r], a[i] = a[i], a[r]
                p = r
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = xgcd(x, y)
            top = [s * u + t * v for u, v in zip(a[r], a[i])]
            bot = [(y // g) * u - (x // g) * v for u, v in zip(a[r], a[i])]
            a[r], a[i] = top, bot
        if p is None:
            continue
        if a[r][c] < 0:
            a[r] = [-u for u in a[r]]
        for k in range(r):
            q = a[k][c] // a[r][c]
            if q:
                a[k] = [u - q * v for u, v in zip(a[k], a[r])]
        r += 1
        a = a[:r] + [row for row in a[r:] if any(row)]
    return [tuple(row) for row in a[:r]]


class IntegerLattice:
    """Sublattice of Z^n in row Hermite normal form (canonical)."""

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n, basis):
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @property
    def rank(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def coordinates(self, v):
        """Integer coefficients of ``v`` in the basis, or None if v is not in the lattice."""
        v = list(map(int, v))
        coords = []
        for row, p in zip(self.basis, self.pivots):
            if any(v[:p]):
                return None
            q, rem = divmod(v[p], row[p])
            if rem:
                return None
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return coords if not any(v) else None

    def __contains__(self, v):
        return self.coordinates(v) is not None

    def contains_lattice(self, other):
        return all(v in self for v in other.basis)

    def add(self, vectors):
        return hnf(list(self.basis) + list(vectors), self.n)

    def __repr__(self):
        return f"IntegerLattice(n={self.n}, rank={self.rank})"


def hnf(rows, n=None):
    rows = [tuple(r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("ambient dimension needed for an empty row list")
        n = len(rows[0])
    return IntegerLattice(n, _hnf_rows(rows, n))


def smith_diagonal(rows):
    """Nonzero Smith invariants ``d1 | d2 | ...`` of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
            if not done:
                entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
                _, i, j = min(entries)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def snf_quotient(lat, sub):
    """Elementary divisors of ``lat / sub``; trailing zeros are free summands."""
    coords = []
    for v in sub.basis:
        c = lat.coordinates(v)
        if c is None:
            raise ValueError("sublattice is not contained in the lattice")
        coords.append(c)
    divisors = smith_diagonal(coords) if coords else []
    return divisors + [0] * (lat.rank - len(divisors))


def quotient_order_of(v, lat, sub, cap=None):
    """Order of ``v + sub`` in ``lat / sub``; None if infinite."""
    if v not in lat:
        raise ValueError("vector is not in the lattice")
    if sub.rank == 0:
        return 1 if not any(v) else None
    if rational_rank(list(sub.basis) + [v]) > sub.rank:
        return None
    n = 1
    while [n * x for x in v] not in sub:
        n += 1
        if cap is not None and n > cap:
            raise OrderCapExceeded(cap)
    return n


# ---------------------------------------------------------------------------
# degree 1


def _int_mat(m):
    return tuple(tuple(int(x) for x in r) for r in m.rows)


def _conj_flat(p, v, q):
    """``p V q`` for 5x5 integer matrices with V given flat."""
    pv = [[sum(p[i][k] * v[5 * k + j] for k in range(5)) for j in range(5)] for i in range(5)]
    return tuple(sum(pv[i][k] * q[k][j] for k in range(5)) for i in range(5) for j in range(5))


def _letter_pairs(letters):
    return [(_int_mat(minus_one_generator(g)), _int_mat(minus_one_generator(g.inverse()))) for g in letters]


def scaled(vectors, denominator):
    out = []
    for v in vectors:
        w = [Fraction(x) * denominator for x in v]
        if any(x.denominator != 1 for x in w):
            raise ValueError("denominator does not clear the vector")
        out.append(tuple(int(x) for x in w))
    return out


def saturate(lat, step, max_rounds=50):
    """Close ``lat`` under ``step`` (a map from basis to new vectors)."""
    for rounds in range(1, max_rounds + 1):
        new = lat.add(step(lat.basis))
        if new == lat:
            return lat, rounds
        lat = new
    raise ClosureError(f"lattice did not stabilize in {max_rounds} rounds (rank {lat.rank})")


@dataclass
class Degree1Result:
    lattice: IntegerLattice
    relations: IntegerLattice
    generator: tuple
    denominator: int
    order: object
    divisors: list
    stabilized_at: int
    rank_by_depth: list
    sp_stable: bool
    seconds: float = 0.0


def orbit_lattice_degree1(depth=6, extra_scale=1, letters=ORBIT_LETTERS):
    """Lattices ``L`` (orbit of delta_1(psi0)) and ``L'`` (differences).

    Breadth-first over conjugating words, deduplicated by vector, stopping
    once the HNF is unchanged for two consecutive levels; then saturated
    under the generators as an Sp-stability certificate.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    start = time.perf_counter()
    v0 = delta_k(MACROS["psi0"], 1).matrix.flat()
    den = lcm(*(Fraction(x).denominator for x in v0)) * extra_scale
    pairs = _letter_pairs(letters)

    (g0,) = scaled([v0], den)
    lat = hnf([g0])
    seen = {g0}
    frontier = [g0]
    history = [lat]
    stabilized_at = None
    for level in range(1, depth + 1):
        nxt = []
        for v in frontier:
            for p, q in pairs:
                w = _conj_flat(p, v, q)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        fresh = [w for w in nxt if w not in lat]
        if fresh:
            lat = lat.add(fresh)
        history.append(lat)
        frontier = nxt
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            stabilized_at = level - 2
            break
    if stabilized_at is None:
        stabilized_at = next(i for i, x in enumerate(history) if x == history[-1])

    conj_pairs = _letter_pairs(CONJUGATORS)

    def images(basis):
        return [_conj_flat(p, v, q) for v in basis for p, q in conj_pairs]

    saturated, _ = saturate(lat, images)
    sp_stable = saturated == lat
    lat = saturated

    def differences(basis):
        out = []
        for v in basis:
            for p, q in conj_pairs:
                w = _conj_flat(p, v, q)
                out.append(tuple(x - y for x, y in zip(w, v)))
        return out

    rel = hnf(differences(lat.basis), lat.n)
    rel, _ = saturate(rel, images)
    return Degree1Result(
        lattice=lat,
        relations=rel,
        generator=g0,
        denominator=den,
        order=None,
        divisors=snf_quotient(lat, rel),
        stabilized_at=stabilized_at,
        rank_by_depth=[h.rank for h in history],
        sp_stable=sp_stable,
        seconds=time.perf_counter() - start,
    )


def cyclic_order_degree1(depth=6, lattice=None, relations=None, extra_scale=1, cap=None):
    """Order of delta_1(psi0) in L / L' (None when the class is free).

    ``lattice``/``relations`` override the computed L and L'.
    """
    res = orbit_lattice_degree1(depth, extra_scale)
    lat = res.lattice if lattice is None else lattice
    rel = res.relations if relations is None else relations
    return quotient_order_of(res.generator, lat, rel, cap)


def degree1_report(depth=6, extra_scale=1):
    res = orbit_lattice_degree1(depth, extra_scale)
    res.order = quotient_order_of(res.generator, res.lattice, res.relations)
    return res


# ---------------------------------------------------------------------------
# degree 2: class-2 nilpotent group


_ZERO5 = Matrix.zero(5)


@dataclass(frozen=True)
class NilpotentElement:
    """``1 + a h + b h^2`` modulo ``h^3``."""

    a: Matrix = _ZERO5
    b: Matrix = _ZERO5

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_series(cls, m):
        if not coefficient(m, 0).is_identity():
            raise ValueError("degree-0 part is not the identity")
        return cls(coefficient(m, 1), coefficient(m, 2))

    @classmethod
    def of_word(cls, w):
        return cls.from_series(phi_truncated(w, 2))

    def to_series(self):
        one, zero = Fraction(1), Fraction(0)
        return Matrix([
            [TruncSeries((one if i == j else zero, self.a[i, j], self.b[i, j]), 2) for j in range(5)]
            for i in range(5)
        ])

    def __mul__(self, other):
        return NilpotentElement(self.a + other.a, self.b + other.b + self.a @ other.a)

    def inverse(self):
        return NilpotentElement(-self.a, self.a @ self.a - self.b)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return NilpotentElement(self.a.scale(n), self.b.scale(n) + (self.a @ self.a).scale(comb(n, 2)))

    def is_identity(self):
        return self.a.is_zero() and self.b.is_zero()

    def is_central(self):
        return self.a.is_zero()

    def conjugate(self, g):
        """``phi(g) x phi(g^-1)`` for a single letter ``g``.

        With ``phi(g) = P0 + P1 h + ...`` and ``phi(g^-1) = Q0 + Q1 h + ...``
        the result is ``(P0 a Q0, P0 b Q0 + P0 a Q1 + P1 a Q0)``; the
        constant terms cancel because ``phi(g) phi(g^-1) = 1``.
        """
        p0, p1, q0, q1 = _letter_coefficients(g)
        pa = p0 @ self.a
        return NilpotentElement(pa @ q0, p0 @ self.b @ q0 + pa @ q1 + p1 @ self.a @ q0)

    def conjugate_by_series(self, g):
        """Same as :meth:`conjugate`, by multiplying truncated series matrices."""
        m = phi_generator(g, 2) @ self.to_series() @ phi_generator(g.inverse(), 2)
        return NilpotentElement.from_series(m)

    def conjugate_word(self, w):
        """``phi(w) x phi(w^-1)``."""
        x = self
        for g in reversed(w.letters):
            x = x.conjugate(g)
        return x


@lru_cache(maxsize=None)
def _letter_coefficients(g):
    p = phi_generator(g, 1)
    q = phi_generator(g.inverse(), 1)
    return coefficient(p, 0), coefficient(p, 1), coefficient(q, 0), coefficient(q, 1)


def nil_commutator(x, y):
    """``x y x^-1 y^-1 = (0, ac - ca)`` in class 2."""
    return NilpotentElement(_ZERO5, x.a @ y.a - y.a @ x.a)


class NilpotentSubgroupData:
    """Subgroup of the class-2 group generated by a list of elements.

    ``lifts`` maps a pivot column of the (scaled) degree-1 lattice to a
    group element whose degree-1 part has that pivot; ``central`` spans the
    subgroup's intersection with the centre ``{(0, b)}``.  Each lift
    records the generator indices it was built from.
    """

    def __init__(self, generators=(), denominator=1):
        self.denominator = denominator
        self.lifts = {}
        self.lift_words = {}
        self.central = []
        self._central_lattice = None
        self._central_den = 1
        self.generators = []
        self._checked_pairs = set()
        for g in generators:
            self.add(g)

    # -- coordinates

    def _coords1(self, x):
        out = []
        for v in x.a.flat():
            w = v * self.denominator
            if w.denominator != 1:
                raise _NeedsRescale(lcm(self.denominator, v.denominator))
            out.append(int(w))
        return out

    def _power_pivot(self, x, col):
        return self._coords1(x)[col]

    # -- central lattice

    def _add_central(self, c):
        if not c.is_zero():
            self.central.append(c.flat())
            self._central_lattice = None

    def central_lattice(self):
        if self._central_lattice is None:
            den = lcm(1, *(Fraction(x).denominator for v in self.central for x in v))
            self._central_den = den
            self._central_lattice = hnf(scaled(self.central, den), 25) if self.central else IntegerLattice(25, [])
        return self._central_lattice

    def _in_central(self, c):
        flat = c.flat()
        if not any(flat):
            return True
        lat = self.central_lattice()
        den = self._central_den
        w = [Fraction(x) * den for x in flat]
        if any(x.denominator != 1 for x in w):
            return False
        return tuple(int(x) for x in w) in lat

    # -- sifting

    def _sift(self, x, insert, tag=None):
        """Reduce ``x`` by the lifts.

        With ``insert``, new pivots become lifts and gcd steps update lifts;
        returns the central residue.  Without it, returns None as soon as
        ``x`` is seen to have degree-1 part outside the lattice.
        """
        word = dict(tag or {})
        while True:
            coords = self._coords1(x)
            col = next((j for j, v in enumerate(coords) if v), None)
            if col is None:
                return x
            v = coords[col]
            lift = self.lifts.get(col)
            if lift is None:
                if not insert:
                    return None
                if v < 0:
                    x = x.inverse()
                    word = {k: -e for k, e in word.items()}
                self.lifts[col] = x
                self.lift_words[col] = word
                return NilpotentElement()
            p = self._coords1(lift)[col]
            if v % p == 0:
                q = v // p
                x = x * lift ** (-q)
                for k, e in self.lift_words[col].items():
                    word[k] = word.get(k, 0) - q * e
                continue
            if not insert:
                return None
            g, s, t = xgcd(v, p)
            self._add_central(nil_commutator(x, lift).b)
            new_lift = x ** s * lift ** t
            rest = x ** (p // g) * lift ** (-(v // g))
            lw = self.lift_words[col]
            new_word = {k: s * word.get(k, 0) + t * lw.get(k, 0) for k in set(word) | set(lw)}
            rest_word = {k: (p // g) * word.get(k, 0) - (v // g) * lw.get(k, 0) for k in set(word) | set(lw)}
            self.lifts[col] = new_lift
            self.lift_words[col] = {k: e for k, e in new_word.items() if e}
            x = rest
            word = {k: e for k, e in rest_word.items() if e}

    def add(self, x, close=True):
        """Add a generator; returns True if the subgroup grew.

        With ``close=False`` commutators of lifts are not yet folded into
        the central lattice, so membership may report false negatives until
        :meth:`close` is called.
        """
        if self.contains(x):
            self.generators.append(x)
            return False
        self.generators.append(x)
        try:
            residue = self._sift(x, insert=True, tag={len(self.generators) - 1: 1})
        except _NeedsRescale as e:
            self._rebuild(e.denominator)
            return True
        self._add_central(residue.b)
        if close:
            self.close()
        return True

    def close(self):
        """Fold commutators of all lift pairs into the central lattice."""
        lifts = list(self.lifts.values())
        for i, x in enumerate(lifts):
            for y in lifts[i + 1:]:
                if (x, y) in self._checked_pairs:
                    continue
                self._checked_pairs.add((x, y))
                c = nil_commutator(x, y).b
                if not self._in_central(c):
                    self._add_central(c)

    def _rebuild(self, denominator):
        gens = self.generators
        self.__init__((), denominator)
        for g in gens:
            self.generators.append(g)
            residue = self._sift(g, insert=True, tag={len(self.generators) - 1: 1})
            self._add_central(residue.b)
        self.close()

    def contains(self, x):
        try:
            residue = self._sift(x, insert=False)
        except _NeedsRescale:
            return False
        return residue is not None and self._in_central(residue.b)

    def degree1_lattice(self):
        return hnf([self._coords1(x) for x in self.lifts.values()], 25) if self.lifts else IntegerLattice(25, [])

    def elements(self):
        """Generating set: lifts and central generators."""
        return list(self.lifts.values()) + [NilpotentElement(_ZERO5, Matrix([v[5 * i:5 * i + 5] for i in range(5)]))
                                            for v in self.central_lattice_vectors()]

    def central_lattice_vectors(self):
        lat = self.central_lattice()
        return [tuple(Fraction(x, self._central_den) for x in v) for v in lat.basis]


class _NeedsRescale(Exception):
    def __init__(self, denominator):
        self.denominator = denominator


def nilpotent_subgroup_closure(generators, denominator=1):
    return NilpotentSubgroupData(generators, denominator)


def nilpotent_membership(x, data):
    return data.contains(x)


def normal_closure(data, conjugators=CONJUGATORS, max_rounds=100):
    """Enlarge ``data`` until conjugation by every letter maps it into itself.

    Returns the number of rounds; the last round adds nothing.
    """
    for rounds in range(1, max_rounds + 1):
        grew = False
        for x in data.elements():
            for g in conjugators:
                y = x.conjugate(g)
                if not data.contains(y):
                    grew |= data.add(y, close=False)
        data.close()
        if not grew:
            return rounds
    raise ClosureError(f"normal closure did not stabilize in {max_rounds} rounds")


@dataclass
class Degree2Result:
    order: int
    image: NilpotentSubgroupData
    relations: NilpotentSubgroupData
    closure_rounds: dict = field(default_factory=dict)
    seconds: float = 0.0

    def ranks(self):
        return {
            "image_degree1": self.image.degree1_lattice().rank,
            "image_central": self.image.central_lattice().rank,
            "relations_degree1": self.relations.degree1_lattice().rank,
            "relations_central": self.relations.central_lattice().rank,
        }


def degree2_report(depth=6, cap=200):
    """Order of phi^(2)(psi0) modulo the image of [M_2, I_2].

    Seeds ``phi^(2)([w, psi0])`` are added for conjugating words ``w`` in
    breadth-first order, stopping once two consecutive levels add nothing
    (or at ``depth``).  The seed group is then closed under conjugation by
    ``z1, xi`` and their inverses, giving the image of the normal subgroup
    [M_2, I_2].  The image of the Torelli group is the normal closure of
    ``phi^(2)(psi0)``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    start = time.perf_counter()
    x0 = NilpotentElement.of_word(MACROS["psi0"])
    x0_inv = x0.inverse()

    image = NilpotentSubgroupData([x0])
    r_image = normal_closure(image)

    relations = NilpotentSubgroupData()
    quiet = 0
    levels = 0
    frontier = [Word()]
    for level in range(1, depth + 1):
        levels = level
        grew = False
        nxt = []
        for w in frontier:
            for g in CONJUGATORS:
                u = Word(w.letters + (g,))
                if len(u) != level:
                    continue
                nxt.append(u)
                grew |= relations.add(x0.conjugate_word(u) * x0_inv)
        frontier = nxt
        quiet = 0 if grew else quiet + 1
        if quiet == 2:
            break
    r_rel = normal_closure(relations)

    n = 1
    while not relations.contains(x0 ** n):
        n += 1
        if n > cap:
            raise OrderCapExceeded(cap)
    return Degree2Result(
        order=n,
        image=image,
        relations=relations,
        closure_rounds={"image": r_image, "relations": r_rel, "seed_levels": levels},
        seconds=time.perf_counter() - start,
    )


def cyclic_order_degree2(depth=6, cap=200):
    return degree2_report(depth, cap).order
