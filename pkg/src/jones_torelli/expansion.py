"""Expansion of rho at t = -exp(h), the graded classes delta_k, and the
induced filtration on the Torelli group."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import Matrix, TruncSeries, series_from_laurent_at_minus_exp_h
from .jones import rho_at_minus_one, rho_evaluate, rho_generator
from .words import Generator, Word, as_word, is_torelli

DEFAULT_ORDER = 3


class NotTorelliError(ValueError):
    pass


@dataclass(frozen=True)
class DeltaClass:
    """Coefficient of ``h**degree``: an element of R[k]/R[k+1]."""

    degree: int
    matrix: Matrix

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return DeltaClass(self.degree, self.matrix + other.matrix)

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return DeltaClass(self.degree, self.matrix - other.matrix)

    def scale(self, c):
        return DeltaClass(self.degree, self.matrix.scale(Fraction(c)))

    def bracket(self, other):
        a, b = self.matrix, other.matrix
        return DeltaClass(self.degree + other.degree, a @ b - b @ a)

    def is_zero(self):
        return self.matrix.is_zero()


def series_matrix(m, order):
    """Push a Laurent matrix through t -> -exp(h) entrywise."""
    return m.map(lambda p: series_from_laurent_at_minus_exp_h(p, order))


@lru_cache(maxsize=None)
def phi_generator(g, order):
    return series_matrix(rho_generator(g), order)


def series_identity(order):
    return Matrix.identity(5, TruncSeries.constant(1, order))


# The h^i coefficient of phi(w) is N_i / i! with N_i an integer matrix, and
# N_k(AB) = sum_i C(k, i) N_i(A) N_{k-i}(B), so products stay in Z.


@lru_cache(maxsize=None)
def _integer_coefficients(g, order):
    m = phi_generator(g, order)
    return tuple(
        tuple(tuple(int(m[r, c][i] * factorial(i)) for c in range(5)) for r in range(5))
        for i in range(order + 1)
    )


def _imul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def _iadd(a, b, k):
    return [[x + k * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def phi_truncated(w, order=DEFAULT_ORDER):
    """phi(w) modulo ``h**(order+1)`` as a matrix of truncated series.

    Multiplies cached generator images, which equals substituting into
    ``rho_evaluate(w)`` since the substitution is a ring homomorphism.
    """
    zero = [[0] * 5 for _ in range(5)]
    acc = [[[int(r == c) for c in range(5)] for r in range(5)]] + [zero] * order
    for g in as_word(w):
        gen = _integer_coefficients(g, order)
        new = []
        for k in range(order + 1):
            nk = zero
            for i in range(k + 1):
                if any(any(r) for r in acc[i]):
                    nk = _iadd(nk, _imul(acc[i], gen[k - i]), comb(k, i))
            new.append(nk)
        acc = new
    facts = [factorial(i) for i in range(order + 1)]
    return Matrix([
        [TruncSeries([Fraction(acc[i][r][c], facts[i]) for i in range(order + 1)], order) for c in range(5)]
        for r in range(5)
    ])


def phi_by_substitution(w, order=DEFAULT_ORDER):
    """Same as :func:`phi_truncated`, evaluating rho(w) over Z[t, 1/t] first."""
    return series_matrix(rho_evaluate(w), order)


def coefficient(m, i):
    """Rational matrix of ``h**i`` coefficients of a series matrix."""
    return m.map(lambda s: s[i])


def delta_k(w, k, order=None):
    """delta_k(w): coefficient of h^k in phi(w) - 1.

    Raises if ``w`` is not Torelli or if a lower coefficient survives.
    """
    w = as_word(w)
    if not is_torelli(w):
        raise NotTorelliError("delta defined on Torelli group only")
    if k < 1:
        raise ValueError("k must be >= 1")
    m = phi_truncated(w, k if order is None else max(order, k))
    if not coefficient(m, 0).is_identity():
        raise ValueError("degree-0 part is not trivial")
    for i in range(1, k):
        if not coefficient(m, i).is_zero():
            raise ValueError(f"word has filtration degree {i} < {k}")
    return DeltaClass(k, coefficient(m, k))


def filtration_degree(w, k_max):
    """Smallest ``k <= k_max`` with a nonzero h^k coefficient in phi(w).

    Returns ``None`` when phi(w) agrees with the identity through
    ``h**k_max`` (degree exceeds the bound).
    """
    w = as_word(w)
    if not is_torelli(w):
        raise NotTorelliError("delta defined on Torelli group only")
    m = phi_truncated(w, k_max)
    for i in range(1, k_max + 1):
        if not coefficient(m, i).is_zero():
            return i
    return None


def conjugation_action(g, d):
    """``g_* d = P(g) d P(g^-1)`` with P the t = -1 specialization."""
    w = as_word(g) if not isinstance(g, Generator) else Word([g])
    p = rho_at_minus_one(w)
    p_inv = rho_at_minus_one(w.inverse())
    return DeltaClass(d.degree, p @ d.matrix @ p_inv)
