# weylzhu/fock_module.py
"""The Weyl vertex algebra as its vacuum Fock module.

Vectors are exact combinations of PBW monomials
a_{m1} ... a_{mk} a*_{n1} ... a*_{nl} |0> with m_i <= -1 and n_j <= 0.
Vertex-operator modes are computed on any ``ModeModule`` by peeling one
generator field off the state and applying the iterate formula

    (x_m w)_k = sum_i (-1)^i C(m, i) [x_{m-i} w_{k+i} - (-1)^m w_{m+k-i} x_i].
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from math import comb

import pandas as pd

from .errors import GradingError, InvalidParameterError
from .linear import LinearCombination, accumulate
from .mode_algebra import Generator, Kind, parse_word

logger = logging.getLogger(__name__)


def binomial(n, k):
    """C(n, k) for any integer n, zero for k < 0."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


def sign(n):
    return 1 if n % 2 == 0 else -1


def integer_partitions(n, max_part=None):
    """Partitions of n as weakly decreasing tuples, largest parts first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - part, part):
            yield (part,) + rest


@cache
def partitions_of(n):
    return tuple(integer_partitions(n))


@dataclass(frozen=True, slots=True)
class PBWMonomial:
    """Sorted creation modes applied to the vacuum."""

    a_indices: tuple = ()
    astar_indices: tuple = ()

    def __post_init__(self):
        a_indices = tuple(sorted(self.a_indices))
        astar_indices = tuple(sorted(self.astar_indices))
        if any(m > -1 for m in a_indices):
            raise InvalidParameterError("a_indices", a_indices, "creation a-modes have index <= -1")
        if any(n > 0 for n in astar_indices):
            raise InvalidParameterError("astar_indices", astar_indices, "creation a*-modes have index <= 0")
        object.__setattr__(self, "a_indices", a_indices)
        object.__setattr__(self, "astar_indices", astar_indices)

    @property
    def weight(self):
        return -sum(self.a_indices) - sum(self.astar_indices)

    @property
    def charge(self):
        return len(self.astar_indices) - len(self.a_indices)

    @property
    def zero_modes(self):
        return self.astar_indices.count(0)

    def is_vacuum(self):
        return not self.a_indices and not self.astar_indices

    def multiplicity(self, g):
        pool = self.a_indices if g.kind is Kind.A else self.astar_indices
        return pool.count(g.index)

    def with_mode(self, g):
        if g.kind is Kind.A:
            return PBWMonomial(self.a_indices + (g.index,), self.astar_indices)
        return PBWMonomial(self.a_indices, self.astar_indices + (g.index,))

    def without_mode(self, g):
        if g.kind is Kind.A:
            pool = list(self.a_indices)
            pool.remove(g.index)
            return PBWMonomial(tuple(pool), self.astar_indices)
        pool = list(self.astar_indices)
        pool.remove(g.index)
        return PBWMonomial(self.a_indices, tuple(pool))

    def generators(self):
        return tuple(Generator(Kind.A, m) for m in self.a_indices) + tuple(
            Generator(Kind.ASTAR, n) for n in self.astar_indices
        )

    def __str__(self):
        return " ".join(str(g) for g in self.generators()) or "1"


VACUUM_MONOMIAL = PBWMonomial()


def _monomial_order(mono):
    return (mono.weight, mono.charge, mono.a_indices, mono.astar_indices)


class FockVector(LinearCombination):
    __slots__ = ()

    sort_key = staticmethod(_monomial_order)
    format_key = staticmethod(str)

    @classmethod
    def vacuum(cls):
        return cls({VACUUM_MONOMIAL: 1})

    @classmethod
    def from_modes(cls, generators):
        """Apply the generators (rightmost first) to the vacuum."""
        v = cls.vacuum()
        for g in reversed(tuple(generators)):
            v = FOCK.act(g, v)
        return v

    @classmethod
    def from_word(cls, text):
        return cls.from_modes(parse_word(text).generators)

    def weights(self):
        return {mono.weight for mono in self.keys()}

    def components(self):
        return self.group_by(lambda mono: mono.weight)


def bigrade(v):
    """Bihomogeneous parts of v keyed by (L0-weight, J0-charge)."""
    return v.group_by(lambda mono: (mono.weight, mono.charge))


class ModeModule(ABC):
    """A module on which the Weyl modes and vertex operators act.

    Subclasses fix the basis keys and the action of a single mode on one
    basis key. Levels must be non-negative integers for the default
    ``mode`` to truncate its sums.
    """

    vector_type = LinearCombination

    @abstractmethod
    def act_key(self, g, key):
        """Action of one generator on one basis key as a dict key -> Fraction."""

    @abstractmethod
    def level(self, key):
        """L0-level of a basis key relative to the lowest level."""

    @abstractmethod
    def charge(self, key):
        """J0-eigenvalue of a basis key."""

    def act(self, g, v):
        pairs = []
        for key, c in v.items():
            pairs.extend((k, c * value) for k, value in self.act_key(g, key).items())
        return self.vector_type.from_pairs(pairs)

    def level_of(self, v):
        return max((self.level(key) for key in v.keys()), default=0)

    def mode(self, u, k, v):
        """u_k v for a Fock state u and a module vector v."""
        pairs = []
        for mono, cu in u.items():
            for key, cv in v.items():
                for target, value in _monomial_mode(self, mono, k, key).items():
                    pairs.append((target, cu * cv * value))
        return self.vector_type.from_pairs(pairs)


def _generator_mode(kind, j):
    # (a_{-1}|0>)_j = a_j and (a*_0|0>)_j = a*_{j+1}
    return Generator(kind, j) if kind is Kind.A else Generator(kind, j + 1)


@lru_cache(maxsize=1 << 16)
def _monomial_mode(module, mono, k, key):
    if mono.is_vacuum():
        return {key: Fraction(1)} if k == -1 else {}
    level = module.level(key)
    if k > mono.weight + level - 1:
        return {}
    if mono.a_indices:
        p = -mono.a_indices[0]
        kind, m = Kind.A, -p
        rest = mono.without_mode(Generator(Kind.A, -p))
    else:
        n = -mono.astar_indices[0]
        kind, m = Kind.ASTAR, -n - 1
        rest = mono.without_mode(Generator(Kind.ASTAR, -n))

    pairs = []
    for i in range(max(rest.weight + level - k, 0)):
        c = sign(i) * binomial(m, i)
        for key2, v2 in _monomial_mode(module, rest, k + i, key).items():
            for key3, v3 in module.act_key(_generator_mode(kind, m - i), key2).items():
                pairs.append((key3, c * v2 * v3))
    for i in range(level + 1):
        c = -sign(m) * sign(i) * binomial(m, i)
        for key2, v2 in module.act_key(_generator_mode(kind, i), key).items():
            for key3, v3 in _monomial_mode(module, rest, m + k - i, key2).items():
                pairs.append((key3, c * v2 * v3))
    return accumulate(pairs)


@dataclass(frozen=True)
class FockModule(ModeModule):
    """The vacuum module itself; basis keys are PBW monomials."""

    vector_type = FockVector

    def act_key(self, g, mono):
        if g.kind is Kind.A:
            if g.index <= -1:
                return {mono.with_mode(g): Fraction(1)}
            partner = Generator(Kind.ASTAR, -g.index)
            count = mono.multiplicity(partner)
            return {mono.without_mode(partner): Fraction(count)} if count else {}
        if g.index <= 0:
            return {mono.with_mode(g): Fraction(1)}
        partner = Generator(Kind.A, -g.index)
        count = mono.multiplicity(partner)
        return {mono.without_mode(partner): Fraction(-count)} if count else {}

    def level(self, mono):
        return mono.weight

    def charge(self, mono):
        return mono.charge


FOCK = FockModule()


def act(g, v):
    """Left action of the mode g on a Fock vector."""
    return FOCK.act(g, v)


VACUUM = FockVector.vacuum()
A_FIELD = FockVector.basis(PBWMonomial((-1,), ()))
ASTAR_FIELD = FockVector.basis(PBWMonomial((), (0,)))
J_VECTOR = FockVector.basis(PBWMonomial((-1,), (0,)))
OMEGA = FockVector.basis(PBWMonomial((-1,), (-1,)))

NAMED_VECTORS = {
    "vacuum": VACUUM,
    "a": A_FIELD,
    "astar": ASTAR_FIELD,
    "J": J_VECTOR,
    "omega": OMEGA,
}


def vertex_modes(u, k, v, module=None):
    """u_k v, the coefficient of z^{-k-1} in Y(u, z) v."""
    return (module or FOCK).mode(u, k, v)


def virasoro_mode(n, v, module=None):
    return vertex_modes(OMEGA, n + 1, v, module)


def heisenberg_mode(n, v, module=None):
    return vertex_modes(J_VECTOR, n, v, module)


def translation(u):
    return virasoro_mode(-1, u)


def zero_mode(u, v, module=None):
    """o(u) v summed over the weight components of u."""
    result = None
    for weight, part in u.components().items():
        term = vertex_modes(part, weight - 1, v, module)
        result = term if result is None else result + term
    if result is None:
        return (module or FOCK).vector_type()
    return result


def _homogeneous_weight(u, operation):
    weights = u.weights()
    if len(weights) > 1:
        raise GradingError(operation, "an L0-homogeneous state", weights)
    return weights.pop() if weights else 0


def zhu_circ(u, v, n):
    """u o_n v = sum_i C(wt u + n, i) u_{i-2n-2} v."""
    if n < 0:
        raise InvalidParameterError("n", n, "Zhu products need n >= 0")
    wt = _homogeneous_weight(u, "zhu_circ")
    total = FockVector()
    for i in range(wt + n + 1):
        total = total + vertex_modes(u, i - 2 * n - 2, v).scale(comb(wt + n, i))
    return total


def zhu_star(u, v, n):
    """u *_n v from the level-n Zhu product formula."""
    if n < 0:
        raise InvalidParameterError("n", n, "Zhu products need n >= 0")
    wt = _homogeneous_weight(u, "zhu_star")
    total = FockVector()
    for m in range(n + 1):
        outer = sign(m) * comb(m + n, n)
        for i in range(wt + n + 1):
            term = vertex_modes(u, i - n - m - 1, v)
            total = total + term.scale(outer * comb(wt + n, i))
    return total


def borcherds_defect(u, v, p, q, w, module=None):
    """(u_p v)_q w minus the iterate expansion; zero on a genuine module."""
    module = module or FOCK
    lhs = vertex_modes(vertex_modes(u, p, v), q, w, module)
    level = module.level_of(w)
    wt_u = max(u.weights(), default=0)
    wt_v = max(v.weights(), default=0)
    rhs = module.vector_type()
    for i in range(max(wt_v + level - q, 0)):
        c = sign(i) * binomial(p, i)
        if c:
            inner = vertex_modes(v, q + i, w, module)
            rhs = rhs + vertex_modes(u, p - i, inner, module).scale(c)
    for i in range(max(wt_u + level, 0)):
        c = sign(p) * sign(i) * binomial(p, i)
        if c:
            inner = vertex_modes(u, i, w, module)
            rhs = rhs - vertex_modes(v, p + q - i, inner, module).scale(c)
    return lhs - rhs


def commutator_defect(u, w, p, q, v, module=None):
    """[u_p, w_q] v minus sum_i C(p, i) (u_i w)_{p+q-i} v."""
    module = module or FOCK
    lhs = vertex_modes(u, p, vertex_modes(w, q, v, module), module) - vertex_modes(
        w, q, vertex_modes(u, p, v, module), module
    )
    wt_u = max(u.weights(), default=0)
    wt_w = max(w.weights(), default=0)
    rhs = module.vector_type()
    for i in range(max(wt_u + wt_w, 0)):
        c = binomial(p, i)
        if c:
            rhs = rhs + vertex_modes(vertex_modes(u, i, w), p + q - i, v, module).scale(c)
    return lhs - rhs


# -- gradings, bases and characters ------------------------------------

def iter_monomials(d, j=None, max_zero_modes=None):
    """PBW monomials of weight d (and charge j when given)."""
    for d_a in range(d + 1):
        for alpha in partitions_of(d_a):
            for beta in partitions_of(d - d_a):
                base_charge = len(beta) - len(alpha)
                if j is not None:
                    counts = [j - base_charge] if j - base_charge >= 0 else []
                else:
                    counts = range((max_zero_modes or 0) + 1)
                for r in counts:
                    if max_zero_modes is not None and r > max_zero_modes:
                        continue
                    yield PBWMonomial(
                        tuple(-m for m in alpha), tuple(-n for n in beta) + (0,) * r
                    )


def graded_dimension(d, j):
    """dim of the (d, j) bigraded piece by direct PBW enumeration."""
    if d < 0:
        raise InvalidParameterError("d", d, "weights are non-negative")
    if j < -d:
        return 0
    return sum(1 for _ in iter_monomials(d, j))


def fock_basis(max_weight, max_zero_modes=2):
    """Basis of the weight <= max_weight part with at most max_zero_modes a*_0 factors."""
    if max_weight < 0 or max_zero_modes < 0:
        raise InvalidParameterError(
            "max_weight", (max_weight, max_zero_modes), "bounds must be non-negative"
        )
    monomials = []
    for d in range(max_weight + 1):
        monomials.extend(iter_monomials(d, max_zero_modes=max_zero_modes))
    return sorted(monomials, key=_monomial_order)


@dataclass(frozen=True, slots=True, order=True)
class Bipartition:
    first: tuple = ()
    second: tuple = ()

    def __post_init__(self):
        for name in ("first", "second"):
            parts = tuple(getattr(self, name))
            if any(p < 1 for p in parts) or list(parts) != sorted(parts, reverse=True):
                raise InvalidParameterError(name, parts, "parts must be >= 1 and weakly decreasing")
            object.__setattr__(self, name, parts)

    @property
    def total(self):
        return sum(self.first) + sum(self.second)

    def __str__(self):
        first = ",".join(str(p) for p in self.first)
        second = ",".join(str(p) for p in self.second)
        return f"(({first}),({second}))"


@cache
def _bipartitions(d):
    found = []
    for d_first in range(d + 1):
        for first in partitions_of(d_first):
            for second in partitions_of(d - d_first):
                found.append(Bipartition(first, second))
    return tuple(sorted(found))


def enumerate_bipartitions(d):
    """All bipartitions of d in lexicographic (first, second) order."""
    if d < 0:
        raise InvalidParameterError("d", d, "bipartitions need d >= 0")
    return list(_bipartitions(d))


def bipartition_count(d):
    return len(enumerate_bipartitions(d))


QJ_CONVENTION = "q_J -> q_J^-1: a_{-n} carries q_J^-1 q_L^n, a*_{-n} carries q_J q_L^n"


@dataclass(frozen=True)
class BivariateSeries:
    """Truncated two-variable graded dimension series."""

    coefficients: dict
    max_d: int
    j_window: int
    prefactor_exponent: Fraction = Fraction(-1, 12)
    qj_convention: str = QJ_CONVENTION

    def coefficient(self, d, j):
        return self.coefficients.get((d, j), 0)

    def rows(self):
        return [
            {"d": d, "j": j, "coefficient": self.coefficient(d, j)}
            for d in range(self.max_d + 1)
            for j in range(-self.max_d, self.j_window + 1)
        ]

    def metadata(self):
        return {
            "prefactor_exponent": self.prefactor_exponent,
            "max_d": self.max_d,
            "j_window": self.j_window,
            "qj_convention": self.qj_convention,
        }

    def to_frame(self):
        return pd.DataFrame(self.rows(), columns=["d", "j", "coefficient"])


def character_series(max_d, j_window):
    """Expand prod_n (1 - q_J^-1 q_L^n)^-1 (1 - q_J q_L^{n-1})^-1 exactly."""
    if max_d < 0:
        raise InvalidParameterError("max_d", max_d, "must be non-negative")
    if j_window < max_d:
        raise InvalidParameterError("j_window", j_window, f"must be at least max_d={max_d}")
    # a-modes lower the charge by at most max_d in total
    cap = j_window + max_d
    table = {(0, 0): 1}
    factors = [(0, 1)]
    factors += [(n, -1) for n in range(1, max_d + 1)]
    factors += [(n, 1) for n in range(1, max_d + 1)]
    for weight, step in factors:
        for d in range(max_d + 1):
            for j in range(-max_d, cap + 1):
                previous = table.get((d - weight, j - step), 0)
                if previous:
                    table[(d, j)] = table.get((d, j), 0) + previous
    coefficients = {
        (d, j): c
        for (d, j), c in table.items()
        if c and d <= max_d and -max_d <= j <= j_window
    }
    logger.debug(f"character series: {len(coefficients)} nonzero coefficients up to d={max_d}")
    return BivariateSeries(coefficients, max_d, j_window)
