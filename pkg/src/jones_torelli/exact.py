"""Exact coefficient rings and dense matrix arithmetic.

Three coefficient domains are used throughout the package:

* ``fractions.Fraction`` for rationals,
* :class:`LaurentPoly` for integral Laurent polynomials in ``t``,
* :class:`TruncSeries` for rational power series in ``h`` truncated above
  a fixed order ``K``.

All values are immutable and kept in canonical form, so ``==`` is
structural equality.
"""

from fractions import Fraction
from functools import reduce
from math import factorial, lcm


class LaurentPoly:
    """Element of Z[t, 1/t], stored densely from its lowest degree."""

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs=(), low=0):
        coeffs = [int(c) for c in coeffs]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        coeffs = tuple(coeffs[start:end])
        self.coeffs = coeffs
        self.low = low + start if coeffs else 0

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls((coeff,), exponent)

    @classmethod
    def from_dict(cls, terms):
        terms = {int(k): int(v) for k, v in terms.items() if v}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def coerce(cls, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls((other,))
        return NotImplemented

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    def terms(self):
        """Yield ``(exponent, coefficient)`` for the nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    def to_dict(self):
        return dict(self.terms())

    def is_zero(self):
        return not self.coeffs

    def is_unit(self):
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    def __eq__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of Z[t, 1/t]")
        return LaurentPoly.monomial(-self.low, self.coeffs[0])

    def __call__(self, value):
        """Evaluate at a nonzero rational ``value``."""
        value = Fraction(value)
        if value == 0 and self.low < 0:
            raise ZeroDivisionError("t = 0 is not allowed for negative powers of t")
        return sum((c * value ** e for e, c in self.terms()), Fraction(0))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                if abs(c) != 1:
                    mono = f"{abs(c)}*{mono}"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + mono)
            else:
                parts.append(("-" if c < 0 else "") + mono)
        return " ".join(parts)


T = LaurentPoly.monomial(1)


class TruncSeries:
    """Rational power series in ``h`` modulo ``h**(order + 1)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c, order):
        return cls((c,), order)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries((other,), self.order)
        return NotImplemented

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return TruncSeries(self.coeffs[: order + 1], order)

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries((other,), self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = self.order + 1
        out = [Fraction(0)] * n
        for i in range(n):
            if a[i]:
                for j in range(n - i):
                    out[i + j] += a[i] * b[j]
        return TruncSeries(out, self.order)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("h" if i == 1 else f"h^{i}")
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) if parts else "0"


def exp_series(m, order):
    """Taylor polynomial of exp(m*h) up to ``h**order``."""
    return TruncSeries([Fraction(m**i, factorial(i)) for i in range(order + 1)], order)


def series_from_laurent_at_minus_exp_h(p, order):
    """Substitute ``t = -exp(h)`` into ``p`` and truncate at ``h**order``.

    Each monomial ``c*t**m`` becomes ``c*(-1)**m * sum_i (m*h)**i / i!``.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    p = LaurentPoly.coerce(p)
    out = [Fraction(0)] * (order + 1)
    for m, c in p.terms():
        sign = -c if m % 2 else c
        mi = 1
        for i in range(order + 1):
            out[i] += Fraction(sign * mi, factorial(i))
            mi *= m
    return TruncSeries(out, order)


# ---------------------------------------------------------------------------
# matrices


def _ring_of(x):
    if isinstance(x, LaurentPoly):
        return "laurent"
    if isinstance(x, TruncSeries):
        return ("series", x.order)
    if isinstance(x, (int, Fraction)):
        return "rational"
    raise TypeError(f"unsupported matrix entry {x!r}")


class Matrix:
    """Dense square matrix over one exact ring.

    Integer entries are promoted to ``Fraction`` so that integer and
    rational matrices share a ring.
    """

    __slots__ = ("rows", "ring")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        rings = {_ring_of(x) for r in rows for x in r}
        if len(rings) != 1:
            raise TypeError(f"mixed coefficient rings {rings}")
        (ring,) = rings
        if ring == "rational":
            rows = [[Fraction(x) for x in r] for r in rows]
        self.rows = tuple(tuple(r) for r in rows)
        self.ring = ring

    @classmethod
    def identity(cls, n, one=1):
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n, zero=0):
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        zero = entries[0] - entries[0]
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if self.ring != other.ring:
            raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._check(other)
        if self.ring == "rational":
            return _rational_matmul(self, other)
        cols = list(zip(*other.rows))
        n = self.n
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for k in range(1, n):
                    acc = acc + r[k] * c[k]
                row.append(acc)
            out.append(row)
        return Matrix(out)

    __mul__ = __matmul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("use an explicit inverse for negative powers")
        one = self.rows[0][0] - self.rows[0][0] + 1
        result = Matrix.identity(self.n, one)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self):
        return Matrix(zip(*self.rows))

    def map(self, f):
        return Matrix([[f(a) for a in r] for r in self.rows])

    def is_identity(self):
        return all(
            (a == 1) if i == j else (a == 0)
            for i, r in enumerate(self.rows)
            for j, a in enumerate(r)
        )

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def flat(self):
        return tuple(a for r in self.rows for a in r)

    def minor(self, i, j):
        return [r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i]

    def determinant(self):
        return _det(self.rows)

    def adjugate(self):
        n = self.n
        if n == 1:
            return Matrix([[self.rows[0][0] - self.rows[0][0] + 1]])
        cof = [[_det(self.minor(i, j)) for j in range(n)] for i in range(n)]
        return Matrix([[cof[j][i] if (i + j) % 2 == 0 else -cof[j][i] for j in range(n)] for i in range(n)])

    def __repr__(self):
        return "Matrix(\n" + "\n".join("  [" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + ")"


def _integer_form(m):
    den = lcm(*(x.denominator for r in m.rows for x in r))
    return [[x.numerator * (den // x.denominator) for x in r] for r in m.rows], den


def _rational_matmul(a, b):
    # integer product over a common denominator; far fewer Fraction ops
    ia, da = _integer_form(a)
    ib, db = _integer_form(b)
    cols = list(zip(*ib))
    den = da * db
    out = Matrix.__new__(Matrix)
    out.rows = tuple(
        tuple(Fraction(sum(x * y for x, y in zip(r, c)), den) for c in cols)
        for r in ia
    )
    out.ring = "rational"
    return out


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, a in enumerate(rows[0]):
        if a == 0:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] - rows[0][0]
    return total


def mat_inverse_unit_det(m):
    """Inverse of a Laurent matrix whose determinant is ``±t**k``."""
    if m.ring != "laurent":
        raise TypeError("expected a matrix over Z[t, 1/t]")
    d = m.determinant()
    if not d.is_unit():
        raise ValueError(f"not invertible over Laurent ring (det = {d})")
    return m.adjugate().scale(d.unit_inverse())


def rational_inverse(m):
    """Inverse of an invertible rational matrix by Gauss-Jordan."""
    n = m.n
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in red[:n]])


# ---------------------------------------------------------------------------
# rational row reduction


def rref(rows):
    """Reduced row echelon form over Q.

    Returns ``(nonzero_rows, pivot_columns)``.  Input rows may be any
    sequences of ints/Fractions; rectangular input is fine.
    """
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rational_rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}`` over Q."""
    if not rows:
        n = ncols
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def in_span(vectors, v):
    """True iff ``v`` is a rational combination of ``vectors``."""
    if not any(v):
        return True
    if not vectors:
        return False
    return rational_rank(list(vectors) + [v]) == rational_rank(vectors)


def common_denominator(values):
    return reduce(lcm, (Fraction(x).denominator for x in values), 1)
