"""The genus-2 Jones representation over Z[t, 1/t]."""

from fractions import Fraction
from functools import lru_cache

from .exact import LaurentPoly, Matrix, T, mat_inverse_unit_det, rational_inverse
from .words import Generator, Word, as_word, generator_symplectic, lambda2_matrix

_ONE = LaurentPoly((1,))
_Z = LaurentPoly()
_TM2 = T ** -2
_T3 = T ** 3

RHO_Z1 = Matrix([
    [-_TM2, _Z, _Z, _Z, _T3],
    [_Z, -_TM2, _TM2, _Z, _Z],
    [_Z, _Z, _T3, _Z, _Z],
    [_Z, _Z, _TM2, -_TM2, _Z],
    [_Z, _Z, _Z, _Z, _T3],
])

RHO_XI = Matrix([[LaurentPoly((x,)) for x in row] for row in [
    [0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0],
]])

# intertwiner between the t = -1 specialization and Lambda^2 H / omega
F = Matrix([
    [0, -1, 0, 0, 0],
    [0, 0, 0, 0, -1],
    [1, 0, 0, 0, 0],
    [0, 0, 1, 1, -1],
    [0, 0, 0, 1, 0],
])
F_INV = rational_inverse(F)

IDENTITY = Matrix.identity(5, _ONE)


@lru_cache(maxsize=None)
def rho_generator(g):
    """Image of one letter; ``z_{i+1} = xi z_i xi^-1``."""
    if g.sign == -1:
        return mat_inverse_unit_det(rho_generator(g.inverse()))
    if g.kind == "xi":
        return RHO_XI
    i = int(g.kind[1]) - 1
    xi_inv = mat_inverse_unit_det(RHO_XI)
    m = RHO_Z1
    for _ in range(i):
        m = RHO_XI @ m @ xi_inv
    return m


def rho_evaluate(w):
    m = IDENTITY
    for g in as_word(w):
        m = m @ rho_generator(g)
    return m


def rho_specialize(w, value):
    """Evaluate every entry of rho(w) at ``t = value`` (value != 0)."""
    value = Fraction(value)
    if value == 0:
        raise ValueError("cannot specialize at t = 0")
    return rho_evaluate(w).map(lambda p: p(value))


@lru_cache(maxsize=None)
def minus_one_generator(g):
    """rho(g) at t = -1, cached per letter."""
    return rho_generator(g).map(lambda p: p(-1))


def rho_at_minus_one(w):
    """Product of cached t = -1 letters; agrees with ``rho_specialize(w, -1)``."""
    m = Matrix.identity(5)
    for g in as_word(w):
        m = m @ minus_one_generator(g)
    return m


def psi0_closed_form():
    """``t^6 Id + (t^15 + 1)/t^24 * N`` with N supported on row 4."""
    t = T
    row4 = [t**10 - 1, -t**10 + t**5, t**10 - 1, -t**15 + 1, -t**10 + t**5]
    scalar = (t**15 + 1) * t**-24
    rows = [[_Z] * 5 for _ in range(5)]
    rows[3] = [scalar * e for e in row4]
    return IDENTITY.scale(t**6) + Matrix(rows)


def check_minus_one_equivalence(f=None, sign=-1):
    """Check ``P(z1) F = sign F Z`` and ``P(xi) F = sign F X``.

    ``P`` is the t = -1 specialization and ``Z``, ``X`` are the actions of
    ``z1`` and ``xi`` on Lambda^2 H / omega.  Returns ``(ok, witness)``.
    """
    f = F if f is None else f
    witness = {"F": f}
    ok = True
    for name in ("z1", "xi"):
        g = Generator(name)
        p = rho_specialize(Word([g]), -1)
        a = lambda2_matrix(generator_symplectic(g))
        lhs = p @ f
        rhs = (f @ a).scale(sign)
        witness[name] = {"P": p, "action": a, "lhs": lhs, "rhs": rhs}
        ok = ok and lhs == rhs
    return ok, witness
