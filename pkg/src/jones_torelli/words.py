"""Words in the mapping class group of the closed genus-2 surface.

Letters are the chain twists ``z1..z5`` and ``xi = z1 z2 z3 z4 z5``.
Homology is ``H = Z^4`` with ordered basis ``(x1, x2, y1, y2)`` and
intersection pairing ``<u, v> = u^T J v``, ``J = [[0, I], [-I, 0]]``.

Chain-curve homology classes::

    C1 = y1, C2 = x1, C3 = y2 - y1, C4 = x2, C5 = y2

and the twist along ``C`` acts by ``u -> u + <c, u> c``.  This is the
unique convention (up to the signs of the classes) for which the
degree-zero part of the Jones representation intertwines with the action
on ``Lambda^2 H / omega`` through the fixed matrix ``F`` of
:mod:`jones_torelli.jones`; ``tests/test_words.py`` pins it.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Matrix

GENERATORS = ("z1", "z2", "z3", "z4", "z5", "xi")

J = Matrix([
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
])

CHAIN_CLASSES = {
    "z1": (0, 0, 1, 0),
    "z2": (1, 0, 0, 0),
    "z3": (0, 0, -1, 1),
    "z4": (0, 1, 0, 0),
    "z5": (0, 0, 0, 1),
}


@dataclass(frozen=True)
class Generator:
    kind: str
    sign: int = 1

    def __post_init__(self):
        if self.kind not in GENERATORS:
            raise ValueError(f"unknown generator {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self):
        return Generator(self.kind, -self.sign)

    def __str__(self):
        return self.kind if self.sign == 1 else f"{self.kind}^-1"


class Word:
    """Freely reduced word in the six generators."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        stack = []
        for g in letters:
            if isinstance(g, str):
                g = Generator(g)
            if stack and stack[-1] == g.inverse():
                stack.pop()
            else:
                stack.append(g)
        self.letters = tuple(stack)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def inverse(self):
        return Word(g.inverse() for g in reversed(self.letters))

    def conjugate(self, w):
        """``w * self * w^-1``."""
        return w * self * w.inverse()

    def __str__(self):
        return " ".join(str(g) for g in self.letters) or "1"

    def __repr__(self):
        return f"Word({str(self)!r})"


def invert_word(w):
    return w.inverse()


def commutator(x, y):
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


MACROS = {
    "psi0": Word(["z1", "z2", "z1"] * 4),
    "iota": Word(["z1", "z2", "z3", "z4", "z5", "z5", "z4", "z3", "z2", "z1"]),
}


class WordSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


_LEX = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*|1)|(?P<pow>\^\s*-?\d+)|(?P<punct>[()\[\],'])|(?P<bad>\S))")


def _tokens(text):
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m is None:  # trailing whitespace
            break
        kind = m.lastgroup
        if kind is None:
            break
        tok = m.group(kind)
        yield kind, tok, m.start(kind)
        pos = m.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        kind, t, pos = self.take()
        if t != tok:
            raise WordSyntaxError(f"expected {tok!r}, found {t or 'end of input'!r}", pos)

    def word(self):
        w = Word()
        while True:
            kind, tok, _ = self.peek()
            if kind == "name" or tok in ("(", "["):
                w = w * self.factor()
            else:
                return w

    def factor(self):
        kind, tok, pos = self.take()
        if kind == "bad":
            raise WordSyntaxError(f"unexpected character {tok!r}", pos)
        if tok == "1":
            base = Word()
        elif kind == "name":
            if tok in GENERATORS:
                base = Word([tok])
            elif tok in MACROS:
                base = MACROS[tok]
            else:
                raise WordSyntaxError(f"unknown token {tok!r}", pos)
        elif tok == "(":
            base = self.word()
            self.expect(")")
        else:  # "["
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            base = commutator(a, b)
        while True:
            kind, tok, _ = self.peek()
            if tok == "'":
                self.take()
                base = base.inverse()
            elif kind == "pow":
                self.take()
                base = base ** int(tok[1:].strip())
            else:
                return base


def parse_word(text):
    """Parse words such as ``"xi z1 xi^-1"`` or ``"[psi0, xi psi0 xi']"``.

    Atoms are generators (``z1``..``z5``, ``xi``), macros (``psi0``,
    ``iota``), ``1`` (the empty word), parenthesised words, and
    commutators ``[a, b] = a b a^-1 b^-1``.  Any atom may be followed by
    ``'`` (inverse) or ``^n`` for an integer power.
    """
    p = _Parser(text)
    w = p.word()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise WordSyntaxError(f"unexpected {tok!r}", pos)
    return w


def as_word(w):
    if isinstance(w, Word):
        return w
    if isinstance(w, Generator):
        return Word([w])
    if isinstance(w, str):
        return parse_word(w)
    raise TypeError(f"cannot interpret {w!r} as a word")


# ---------------------------------------------------------------------------
# homology


def pairing(u, v):
    """Intersection pairing, with ``<x_i, y_i> = 1``."""
    return sum(u[i] * J[i, j] * v[j] for i in range(4) for j in range(4))


def twist_matrix(c):
    """Transvection ``u -> u + <c, u> c`` as a 4x4 integer matrix."""
    cj = [sum(c[k] * J[k, j] for k in range(4)) for j in range(4)]
    return Matrix([[int(i == j) + c[i] * cj[j] for j in range(4)] for i in range(4)])


@lru_cache(maxsize=None)
def generator_symplectic(g):
    if g.kind == "xi":
        m = Matrix.identity(4)
        for k in ("z1", "z2", "z3", "z4", "z5"):
            m = m @ twist_matrix(CHAIN_CLASSES[k])
    else:
        m = twist_matrix(CHAIN_CLASSES[g.kind])
    if g.sign == -1:
        m = symplectic_inverse(m)
    return m


def symplectic_inverse(m):
    # M^-1 = -J M^T J for M^T J M = J
    return -(J @ m.transpose() @ J)


def symplectic_action(w):
    w = as_word(w)
    m = Matrix.identity(4)
    for g in w:
        m = m @ generator_symplectic(g)
    return m


def is_symplectic(m):
    return m.transpose() @ J @ m == J


def is_torelli(w):
    return symplectic_action(w).is_identity()


# ---------------------------------------------------------------------------
# Lambda^2 H / omega, basis t1..t5 = [x1^x2], [y1^y2], [x1^y1], [x1^y2], [x2^y1]

WEDGE_BASIS = ((0, 1), (2, 3), (0, 2), (0, 3), (1, 2))
OMEGA = {(0, 2): 1, (1, 3): 1}


def wedge_coordinates(u, v):
    """Coordinates of ``[u ^ v]`` in the basis t1..t5 (``x2^y2 = -t3``)."""
    out = [Fraction(0)] * 5
    for i in range(4):
        for j in range(i + 1, 4):
            c = u[i] * v[j] - u[j] * v[i]
            if c == 0:
                continue
            if (i, j) == (1, 3):
                out[2] -= c
            else:
                out[WEDGE_BASIS.index((i, j))] += c
    return out


def lambda2_matrix(m):
    """Matrix of the induced action of ``m`` on Lambda^2 H / omega.

    Column ``j`` holds the image of ``t_j``.
    """
    cols = []
    for i, j in WEDGE_BASIS:
        u = [m[k, i] for k in range(4)]
        v = [m[k, j] for k in range(4)]
        cols.append(wedge_coordinates(u, v))
    return Matrix(zip(*cols))
