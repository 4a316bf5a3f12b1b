# weylzhu/mta_zhu.py
"""Mode transition algebras of the Weyl vertex algebra and its Zhu tower.

An element of the (d1, -d2) piece is a matrix indexed by bipartitions of d1
(rows, creation words) and of d2 (columns, annihilation words) with Weyl
algebra entries. The product pairs the column word of the left factor with
the row word of the right factor through the zero-mode projection.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import factorial, prod
from collections import Counter

from .errors import DegenerateContractionError, GradingError
from .fock_module import FockVector, enumerate_bipartitions, sign
from .mode_algebra import (
    Generator,
    Kind,
    ModeElement,
    ModeWord,
    WeylElement,
    weyl_project,
)

logger = logging.getLogger(__name__)


def creator_word(bp):
    """a_{-m} for m in first, then a*_{-n} for n in second."""
    return ModeWord(
        tuple(Generator(Kind.A, -m) for m in bp.first)
        + tuple(Generator(Kind.ASTAR, -n) for n in bp.second)
    )


def annihilator_word(bp):
    """a*_q for q in first, then a_r for r in second."""
    return ModeWord(
        tuple(Generator(Kind.ASTAR, q) for q in bp.first)
        + tuple(Generator(Kind.A, r) for r in bp.second)
    )


def circledast(beta, alpha):
    """[beta alpha]_0 when the degrees cancel, zero otherwise."""
    if beta.degree + alpha.degree != 0:
        return WeylElement()
    return weyl_project(ModeElement.from_word(beta) * ModeElement.from_word(alpha))


@cache
def contraction_constant(bp):
    value = circledast(annihilator_word(bp), creator_word(bp))
    if not value.is_scalar() or value.scalar_part() == 0:
        raise DegenerateContractionError(bp)
    c = value.scalar_part()
    if c.denominator != 1:
        raise DegenerateContractionError(bp)
    logger.debug(f"contraction constant c{bp} = {c}")
    if c < 0:
        logger.info(f"contraction constant c{bp} = {c} is negative")
    return int(c)


def contraction_constant_formula(bp):
    """Conjectured closed form; reported beside the computed value."""
    multiplicities = list(Counter(bp.first).values()) + list(Counter(bp.second).values())
    return sign(len(bp.first)) * prod(factorial(k) for k in multiplicities)


@cache
def pairing_matrix(d):
    """annihilator(q) circledast creator(q') for all q, q' in P2(d)."""
    basis = enumerate_bipartitions(d)
    return {
        (q, q2): circledast(annihilator_word(q), creator_word(q2))
        for q in basis
        for q2 in basis
    }


class MTAElement:
    """Bipartition-indexed matrix with Weyl algebra entries."""

    __slots__ = ("bidegree", "entries")

    def __init__(self, bidegree, entries=None):
        d1, d2 = bidegree
        if d1 < 0 or d2 > 0:
            raise GradingError("MTAElement", "bidegree (d1 >= 0, d2 <= 0)", {bidegree})
        clean = {}
        for (row, col), value in (entries or {}).items():
            if row.total != d1 or col.total != -d2:
                raise GradingError("MTAElement", f"bipartitions of ({d1}, {-d2})", {(row.total, col.total)})
            if value:
                clean[(row, col)] = value
        self.bidegree = (d1, d2)
        self.entries = clean

    @classmethod
    def zero(cls, d1, d2):
        return cls((d1, d2))

    def entry(self, row, col):
        return self.entries.get((row, col), WeylElement())

    def __eq__(self, other):
        if not isinstance(other, MTAElement):
            return NotImplemented
        return self.bidegree == other.bidegree and self.entries == other.entries

    __hash__ = None

    def __add__(self, other):
        if self.bidegree != other.bidegree:
            raise GradingError("MTAElement addition", self.bidegree, {other.bidegree})
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, WeylElement()) + value
        return MTAElement(self.bidegree, entries)

    def __neg__(self):
        return MTAElement(self.bidegree, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return MTAElement(self.bidegree, {k: v.scale(c) for k, v in self.entries.items()})

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join(
            f"({value}) e[{row}|{col}]" for (row, col), value in sorted(self.entries.items())
        )

    def __repr__(self):
        return f"MTAElement({self.bidegree}, {str(self)!r})"


def epsilon(row, col, middle=None):
    """The basis element creator(row) (x) middle (x) annihilator(col)."""
    middle = WeylElement.one() if middle is None else middle
    return MTAElement((row.total, -col.total), {(row, col): middle})


def star(x, y):
    """The mode transition product x * y."""
    n, p = x.bidegree
    p2, m = y.bidegree
    if -p != p2:
        return MTAElement.zero(n, m)
    pairing = pairing_matrix(p2)
    entries = {}
    for (row, q1), left in x.entries.items():
        for (q2, col), right in y.entries.items():
            middle = pairing[(q1, q2)]
            if not middle:
                continue
            term = left * middle * right
            entries[(row, col)] = entries.get((row, col), WeylElement()) + term
    return MTAElement((n, m), entries)


def unity(d, constants=None):
    """Sum over bipartitions bp of d of eps(bp, bp) / c(bp).

    ``constants`` overrides individual contraction constants.
    """
    constants = constants or {}
    entries = {}
    for bp in enumerate_bipartitions(d):
        c = constants.get(bp, contraction_constant(bp))
        entries[(bp, bp)] = WeylElement.scalar(Fraction(1, c))
    return MTAElement((d, -d), entries)


def corrupted_unity(d, bp=None):
    """unity(d) with one constant replaced by c + 1; a negative control."""
    bp = bp or enumerate_bipartitions(d)[0]
    return unity(d, {bp: contraction_constant(bp) + 1})


MIDDLES = {
    "1": WeylElement.one(),
    "a": WeylElement.a(),
    "a*": WeylElement.astar(),
}


@dataclass
class StrongUnityReport:
    n: int
    m: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def as_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "checked": self.checked,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def verify_strong_unity(n, m, units=None):
    """Check I_n * e = e = e * I_m on every basis element of the (n, -m) piece.

    ``units`` maps a level to a replacement unity element.
    """
    units = units or {}
    left_unit = units.get(n) or unity(n)
    right_unit = units.get(m) or unity(m)
    report = StrongUnityReport(n, m)
    for row in enumerate_bipartitions(n):
        for col in enumerate_bipartitions(m):
            for name, middle in MIDDLES.items():
                element = epsilon(row, col, middle)
                report.checked += 1
                if star(left_unit, element) != element:
                    report.failures.append(f"I_{n} * e[{row}|{col}]({name}) != e")
                if star(element, right_unit) != element:
                    report.failures.append(f"e[{row}|{col}]({name}) * I_{m} != e")
    if report.failures:
        logger.warning(f"strong unity fails for ({n}, {m}): {report.failures[0]}")
    return report


# -- matrix picture ------------------------------------------------------

def matrix_iso(x):
    """eps(p, q) -> c(q) E_{p,q}; returns a square list-of-lists."""
    d, d2 = x.bidegree
    if d != -d2:
        raise GradingError("matrix_iso", "a diagonal bidegree (d, -d)", {x.bidegree})
    basis = enumerate_bipartitions(d)
    return [
        [x.entry(row, col).scale(contraction_constant(col)) for col in basis]
        for row in basis
    ]


def matrix_iso_inverse(matrix, d):
    basis = enumerate_bipartitions(d)
    entries = {}
    for i, row in enumerate(basis):
        for j, col in enumerate(basis):
            value = matrix[i][j]
            if value:
                entries[(row, col)] = value.scale(Fraction(1, contraction_constant(col)))
    return MTAElement((d, -d), entries)


def matrix_multiply(left, right):
    size = len(left)
    result = []
    for i in range(size):
        row = []
        for j in range(size):
            total = WeylElement()
            for k in range(size):
                if left[i][k] and right[k][j]:
                    total = total + left[i][k] * right[k][j]
            row.append(total)
        result.append(row)
    return result


def identity_matrix(size):
    return [
        [WeylElement.one() if i == j else WeylElement() for j in range(size)]
        for i in range(size)
    ]


@dataclass(frozen=True)
class ZhuBlocks:
    """Zhu_d as a product of matrix algebras over the Weyl algebra."""

    level: int
    block_sizes: tuple
    scalar_ring: str = "Weyl algebra C<a, a*>/(aa* - a*a - 1)"
    idempotents_checked: tuple = ()

    @property
    def total(self):
        return sum(size * size for size in self.block_sizes)

    def as_dict(self):
        return {
            "level": self.level,
            "block_sizes": list(self.block_sizes),
            "total": self.total,
            "scalar_ring": self.scalar_ring,
            "idempotents_checked": list(self.idempotents_checked),
        }


def zhu_structure(d, check_idempotents_up_to=2):
    """Block sizes |P2(0)|, ..., |P2(d)| with unity(j) idempotency checks."""
    sizes = tuple(len(enumerate_bipartitions(j)) for j in range(d + 1))
    checked = []
    for j in range(min(d, check_idempotents_up_to) + 1):
        identity = unity(j)
        if star(identity, identity) == identity:
            checked.append(j)
        else:
            logger.warning(f"unity({j}) is not idempotent")
    return ZhuBlocks(d, sizes, idempotents_checked=tuple(checked))


# -- zero-mode symbols -------------------------------------------------

def zhu_symbol(u):
    """Zero-mode word of u_{wt(u)-1} acting on a lowest level.

    a_{-m-1} contributes (-1)^m a_0, a*_0 contributes a*_0 and any a*_{-n}
    with n >= 1 kills the monomial.
    """
    if not isinstance(u, FockVector):
        raise TypeError(f"zhu_symbol expects a FockVector, got {type(u).__name__}")
    weights = u.weights()
    if len(weights) > 1:
        raise GradingError("zhu_symbol", "an L0-homogeneous state", weights)
    pairs = []
    for mono, c in u.items():
        if any(n != 0 for n in mono.astar_indices):
            continue
        coefficient = c * prod(sign(-m - 1) for m in mono.a_indices)
        word = ModeWord(
            (Generator(Kind.ASTAR, 0),) * len(mono.astar_indices)
            + (Generator(Kind.A, 0),) * len(mono.a_indices)
        )
        pairs.append((word, coefficient))
    return ModeElement.from_pairs(pairs)


def zhu_image(u):
    """The class of u in the level-zero Zhu algebra as a Weyl algebra element."""
    total = WeylElement()
    for part in u.components().values():
        total = total + weyl_project(zhu_symbol(part))
    return total
