# weylzhu/mode_algebra.py
"""Term-rewriting kernel for the affinized rank-one Weyl algebra.

Modes a_m and a*_n satisfy [a_m, a*_n] = delta_{m+n,0} with every other
bracket zero (the central element is fixed to 1). Words are brought into
canonical order by adjacent transpositions, each transposition emitting its
contraction term.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import GradingError, InvalidParameterError, ParseError
from .linear import LinearCombination

logger = logging.getLogger(__name__)


class Kind(Enum):
    A = "a"
    ASTAR = "a*"


@dataclass(frozen=True, slots=True)
class Generator:
    """A single mode a_m (kind A) or a*_m (kind ASTAR)."""

    kind: Kind
    index: int

    @property
    def degree(self):
        return -self.index

    @property
    def charge(self):
        return -1 if self.kind is Kind.A else 1

    @property
    def sort_key(self):
        # at index 0 a*_0 precedes a_0, elsewhere a precedes a*
        if self.index == 0:
            rank = 0 if self.kind is Kind.ASTAR else 1
        else:
            rank = 0 if self.kind is Kind.A else 1
        return (self.index, rank)

    def shifted(self, ell):
        """Image under the spectral flow of order ell."""
        step = ell if self.kind is Kind.A else -ell
        return Generator(self.kind, self.index + step)

    def __str__(self):
        return f"{self.kind.value}({self.index})"


def a(m):
    return Generator(Kind.A, m)


def astar(n):
    return Generator(Kind.ASTAR, n)


@dataclass(frozen=True, slots=True)
class ModeWord:
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    @classmethod
    def of(cls, *generators):
        return cls(generators)

    @property
    def degree(self):
        return sum(g.degree for g in self.generators)

    @property
    def charge(self):
        return sum(g.charge for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other):
        return ModeWord(self.generators + other.generators)

    def is_normal_ordered(self):
        keys = [g.sort_key for g in self.generators]
        return all(x <= y for x, y in zip(keys, keys[1:]))

    def is_zero_mode(self):
        return all(g.index == 0 for g in self.generators)

    def __str__(self):
        return " ".join(str(g) for g in self.generators) or "1"


EMPTY_WORD = ModeWord()


def _word_order(word):
    return (len(word), [(g.index, g.kind.value) for g in word.generators])


class ModeElement(LinearCombination):
    """Exact rational combination of mode words.

    Products normal-order their result, so elements built with ``*`` are
    always in canonical form.
    """

    __slots__ = ()

    sort_key = staticmethod(_word_order)
    format_key = staticmethod(str)

    @classmethod
    def from_word(cls, word, coefficient=1):
        if not isinstance(word, ModeWord):
            word = ModeWord(tuple(word))
        return cls({word: coefficient})

    @classmethod
    def scalar(cls, c):
        return cls({EMPTY_WORD: c})

    @classmethod
    def one(cls):
        return cls.scalar(1)

    @classmethod
    def generator(cls, g):
        return cls({ModeWord((g,)): 1})

    def degrees(self):
        return {word.degree for word in self.keys()}

    def components(self):
        """Bihomogeneous parts keyed by (degree, charge)."""
        return self.group_by(lambda word: (word.degree, word.charge))

    def is_normal_ordered(self):
        return all(word.is_normal_ordered() for word in self.keys())

    def _product(self, other):
        return multiply(self, other)


def commutator(g1, g2):
    """[g1, g2] as a ModeElement supported on the empty word."""
    if g1.index + g2.index != 0 or g1.kind is g2.kind:
        return ModeElement()
    return ModeElement.scalar(1 if g1.kind is Kind.A else -1)


def _bracket_value(g1, g2):
    if g1.index + g2.index != 0 or g1.kind is g2.kind:
        return 0
    return 1 if g1.kind is Kind.A else -1


@lru_cache(maxsize=1 << 16)
def _normal_order_word(word):
    """Canonical form of one word as a dict ModeWord -> Fraction."""
    gens = word.generators
    for i in range(len(gens) - 1):
        left, right = gens[i], gens[i + 1]
        if left.sort_key > right.sort_key:
            swapped = ModeWord(gens[:i] + (right, left) + gens[i + 2:])
            result = dict(_normal_order_word(swapped))
            c = _bracket_value(left, right)
            if c:
                contracted = ModeWord(gens[:i] + gens[i + 2:])
                for w, value in _normal_order_word(contracted).items():
                    result[w] = result.get(w, 0) + c * value
            return {w: v for w, v in result.items() if v != 0}
    return {word: Fraction(1)}


def normal_order(e):
    """Rewrite e so every word is in canonical order."""
    pairs = []
    for word, value in e.items():
        pairs.extend((w, value * c) for w, c in _normal_order_word(word).items())
    return ModeElement.from_pairs(pairs)


def multiply(e1, e2):
    pairs = []
    for w1, c1 in e1.items():
        for w2, c2 in e2.items():
            for w, c in _normal_order_word(w1 + w2).items():
                pairs.append((w, c1 * c2 * c))
    return ModeElement.from_pairs(pairs)


def spectral_flow(e, ell):
    """Apply a_n -> a_{n+ell}, a*_n -> a*_{n-ell} and re-normal-order."""
    flowed = e.map_keys(
        lambda word: ModeWord(tuple(g.shifted(ell) for g in word.generators))
    )
    return normal_order(flowed)


class WeylElement(LinearCombination):
    """Element of the Weyl algebra; key (i, j) stands for a*^i a^j."""

    __slots__ = ()

    @staticmethod
    def format_key(key):
        i, j = key
        parts = []
        if i:
            parts.append("a*" if i == 1 else f"a*^{i}")
        if j:
            parts.append("a" if j == 1 else f"a^{j}")
        return " ".join(parts) or "1"

    @classmethod
    def a(cls):
        return cls({(0, 1): 1})

    @classmethod
    def astar(cls):
        return cls({(1, 0): 1})

    @classmethod
    def one(cls):
        return cls.scalar(1)

    @classmethod
    def scalar(cls, c):
        return cls({(0, 0): c})

    def is_scalar(self):
        return all(key == (0, 0) for key in self.keys())

    def scalar_part(self):
        return self.coefficient((0, 0))

    def _product(self, other):
        pairs = []
        for (i, j), c1 in self.items():
            for (k, l), c2 in other.items():
                # a^j a*^k = sum_r C(j,r) C(k,r) r! a*^{k-r} a^{j-r}
                for r in range(min(j, k) + 1):
                    weight = comb(j, r) * comb(k, r) * factorial(r)
                    pairs.append(((i + k - r, j + l - r), c1 * c2 * weight))
        return WeylElement.from_pairs(pairs)

    def __pow__(self, n):
        result = WeylElement.one()
        for _ in range(n):
            result = result * self
        return result


def dixmier_phi(w, lam):
    """Automorphism a -> lam a*, a* -> -a / lam of the Weyl algebra."""
    lam = Fraction(lam)
    if lam == 0:
        raise InvalidParameterError("lambda", lam, "Dixmier twist needs a nonzero scalar")
    image_a = WeylElement({(1, 0): lam})
    image_astar = WeylElement({(0, 1): -1 / lam})
    result = WeylElement()
    for (i, j), c in w.items():
        result = result + (image_astar ** i * image_a ** j).scale(c)
    return result


def weyl_project(e):
    """Image of a degree-zero element in the zero-mode Weyl algebra."""
    degrees = e.degrees()
    if degrees - {0}:
        raise GradingError("weyl_project", "degree 0", degrees)
    pairs = []
    for word, c in normal_order(e).items():
        if not word.is_zero_mode():
            continue
        stars = sum(1 for g in word if g.kind is Kind.ASTAR)
        pairs.append(((stars, len(word) - stars), c))
    return WeylElement.from_pairs(pairs)


def wick_contraction(beta, alpha):
    """Sum over complete pairings of beta (left) against alpha (right).

    Each pairing contributes the product of the brackets [beta_i, alpha_j].
    Independent of the rewriting kernel; used as its oracle.
    """
    left = list(beta.generators)
    right = list(alpha.generators)
    if len(left) != len(right):
        return Fraction(0)

    def pairings(i, remaining):
        if i == len(left):
            return Fraction(1)
        total = Fraction(0)
        for pos, g in enumerate(remaining):
            c = _bracket_value(left[i], g)
            if c:
                total += c * pairings(i + 1, remaining[:pos] + remaining[pos + 1:])
        return total

    return pairings(0, tuple(right))


# -- text syntax -------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<gen>a(?P<star>\*)?\(\s*(?P<idx>[+-]?\d+)\s*\))"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(text, pos)
        if match.group("gen"):
            kind = Kind.ASTAR if match.group("star") else Kind.A
            tokens.append(("gen", Generator(kind, int(match.group("idx"))), match.start("gen")))
        elif match.group("num"):
            tokens.append(("num", Fraction(match.group("num")), match.start("num")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    return tokens


def parse_word(text):
    """Parse ``a(-3) a*(2)``; the literal ``1`` is the empty word."""
    tokens = _tokenize(text)
    if len(tokens) == 1 and tokens[0][0] == "num" and tokens[0][1] == 1:
        return EMPTY_WORD
    if not tokens:
        raise ParseError(text, 0, "empty word")
    for kind, _, pos in tokens:
        if kind != "gen":
            raise ParseError(text, pos, "expected a mode")
    return ModeWord(tuple(value for _, value, _ in tokens))


def parse_element(text):
    """Parse ``c1 * w1 + c2 * w2`` with rational coefficients p/q."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError(text, 0, "empty element")
    pairs = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, value, pos = tokens[i]
        if not expect_term:
            if kind != "op" or value == "*":
                raise ParseError(text, pos, "expected '+' or '-'")
            sign = 1 if value == "+" else -1
            expect_term = True
            i += 1
            continue
        if kind == "op" and value in "+-" and not pairs and sign == 1 and i == 0:
            sign = 1 if value == "+" else -1
            i += 1
            continue
        coefficient = Fraction(1)
        gens = []
        if kind == "num":
            coefficient = value
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                if i < len(tokens) and tokens[i][0] == "num" and tokens[i][1] == 1:
                    i += 1
                elif i >= len(tokens) or tokens[i][0] != "gen":
                    raise ParseError(text, tokens[i][2] if i < len(tokens) else len(text),
                                     "expected a word after '*'")
        elif kind != "gen":
            raise ParseError(text, pos, "expected a term")
        while i < len(tokens) and tokens[i][0] == "gen":
            gens.append(tokens[i][1])
            i += 1
        pairs.append((ModeWord(tuple(gens)), sign * coefficient))
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(text, len(text), "dangling operator")
    return ModeElement.from_pairs(pairs)


def format_element(e):
    return str(e)
