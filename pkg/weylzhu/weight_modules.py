# weylzhu/weight_modules.py
"""Block's weight modules over the Weyl algebra and the modules they induce.

Every family has one-dimensional weight spaces spanned by x^{k+lam}, and
a, a* move k by one step. Submodules are therefore unions of strongly
connected pieces of the chain graph "k -> k +- 1 when the coefficient is
nonzero", restricted to a finite window of exponents.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import InvalidParameterError, WindowOverflowError
from .fock_module import (
    ASTAR_FIELD,
    A_FIELD,
    FOCK,
    ModeModule,
    PBWMonomial,
    VACUUM_MONOMIAL,
    binomial,
    borcherds_defect,
    heisenberg_mode,
    iter_monomials,
    sign,
    vertex_modes,
    virasoro_mode,
)
from .linear import LinearCombination, accumulate
from .mode_algebra import Generator, Kind, WeylElement, dixmier_phi

logger = logging.getLogger(__name__)


class Family(Enum):
    V = "v"
    CV = "cv"
    W_LAMBDA = "wlambda"
    W0_PLUS = "w0+"
    W0_MINUS = "w0-"

    @property
    def a_is_derivative(self):
        return self in (Family.V, Family.W_LAMBDA, Family.W0_PLUS)

    @property
    def polynomial(self):
        return self in (Family.V, Family.CV)


@dataclass(frozen=True)
class WeightModuleSpec:
    family: Family
    window: int = 12
    lam: Fraction = Fraction(0)

    def __post_init__(self):
        family = Family(self.family)
        lam = Fraction(self.lam)
        if self.window < 0:
            raise InvalidParameterError("window", self.window, "must be non-negative")
        if family is Family.W_LAMBDA:
            if not 0 < lam < 1:
                raise InvalidParameterError("lambda", lam, "W_lambda needs 0 < lambda < 1")
        elif lam != 0:
            raise InvalidParameterError("lambda", lam, f"family {family.value} has no lambda")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "lam", lam)

    def with_window(self, window):
        return WeightModuleSpec(self.family, window, self.lam)

    def exponents(self, window=None):
        window = self.window if window is None else window
        low = 0 if self.family.polynomial else -window
        return range(low, window + 1)

    def in_domain(self, k):
        return k >= 0 or not self.family.polynomial

    def aastar_eigenvalue(self, k):
        if self.family.a_is_derivative:
            return k + self.lam + 1
        return -(k + self.lam)

    def j0_eigenvalue(self, k):
        """Eigenvalue of a* a on x^{k+lam}."""
        if self.family.a_is_derivative:
            return k + self.lam
        return -(k + self.lam + 1)

    def __str__(self):
        if self.family is Family.W_LAMBDA:
            return f"{self.family.value}({self.lam})"
        return self.family.value


class WeightVector(LinearCombination):
    """Sum of c_k x^{k+lam}; keys are the integer exponents k.

    ``leaked`` is set when an action produced exponents outside the window.
    Arithmetic on flagged vectors returns unflagged ones.
    """

    __slots__ = ("leaked",)

    def __init__(self, terms=None, leaked=False):
        super().__init__(terms)
        self.leaked = leaked

    @staticmethod
    def format_key(k):
        return f"x^{k}"


def _kind(g):
    if isinstance(g, Kind):
        return g
    if isinstance(g, Generator):
        return g.kind
    return Kind(g)


def _act_exponent(spec, kind, k):
    """(target exponent, coefficient) of a or a* on x^{k+lam}, or None."""
    derivative = (kind is Kind.A) == spec.family.a_is_derivative
    if derivative:
        coefficient = k + spec.lam
        if kind is Kind.ASTAR:
            coefficient = -coefficient
        if coefficient == 0:
            return None
        return k - 1, coefficient
    return k + 1, Fraction(1)


def weyl_act(spec, g, v, strict=False):
    """Action of a or a* on a weight vector.

    The result is exact; it is flagged as leaked when it leaves the window,
    and strict mode raises instead.
    """
    kind = _kind(g)
    allowed = spec.exponents()
    leaked = v.leaked
    pairs = []
    for k, c in v.items():
        if not spec.in_domain(k):
            raise InvalidParameterError("exponent", k, f"family {spec.family.value} has no x^{k}")
        image = _act_exponent(spec, kind, k)
        if image is None:
            continue
        target, coefficient = image
        if target not in allowed:
            if strict:
                raise WindowOverflowError(target, (allowed.start, allowed.stop - 1))
            logger.debug(f"{spec}: exponent {target} leaves the window")
            leaked = True
        pairs.append((target, c * coefficient))
    return WeightVector(accumulate(pairs), leaked)


def weyl_element_act(spec, w, v, strict=False):
    """Action of a*^i a^j terms, applying a first."""
    total = WeightVector()
    leaked = v.leaked
    for (i, j), c in w.items():
        image = v
        for _ in range(j):
            image = weyl_act(spec, Kind.A, image, strict)
        for _ in range(i):
            image = weyl_act(spec, Kind.ASTAR, image, strict)
        leaked = leaked or image.leaked
        total = total + image.scale(c)
    return WeightVector(dict(total.items()), leaked)


def weyl_relation_holds(spec):
    for k in spec.exponents():
        v = WeightVector.basis(k)
        aastar = weyl_act(spec, Kind.A, weyl_act(spec, Kind.ASTAR, v))
        astara = weyl_act(spec, Kind.ASTAR, weyl_act(spec, Kind.A, v))
        if aastar - astara != v:
            return False
    return True


def aastar_eigenvalues(spec):
    """Map k -> eigenvalue of aa* on x^{k+lam}, or None if not diagonal."""
    eigenvalues = {}
    for k in spec.exponents():
        v = WeightVector.basis(k)
        image = weyl_act(spec, Kind.A, weyl_act(spec, Kind.ASTAR, v))
        expected = spec.aastar_eigenvalue(k)
        eigenvalues[k] = expected if image == v.scale(expected) else None
    return eigenvalues


# -- cV_lambda versus W_{-lambda} ----------------------------------------

def cw_coefficient(lam, k):
    """(-1)^k (1+lam)...(k+lam), continued to negative k by its recurrence."""
    c = Fraction(1)
    if k >= 0:
        for i in range(1, k + 1):
            c *= -(i + lam)
    else:
        for i in range(0, k, -1):
            c /= -(i + lam)
    return c


@dataclass
class CwIsoReport:
    lam: Fraction
    window: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def as_dict(self):
        return {
            "lambda": self.lam,
            "window": self.window,
            "checked": self.checked,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def cw_iso_check(lam, window):
    """Check x^{k+lam} -> c_k x^{-(k+1+lam)} intertwines cW_lam with W_{-lam}."""
    lam = Fraction(lam)
    source = WeightModuleSpec(Family.W_LAMBDA, window, lam)
    # x^{-(k+1)-lam} = x^{-(k+2) + (1-lam)} in W_{1-lam}
    target = WeightModuleSpec(Family.W_LAMBDA, window + 2, 1 - lam)
    twisted = {
        Kind.A: dixmier_phi(WeylElement.a(), 1),
        Kind.ASTAR: dixmier_phi(WeylElement.astar(), 1),
    }

    def iso(v):
        return WeightVector.from_pairs(
            (-(k + 2), c * cw_coefficient(lam, k)) for k, c in v.items()
        )

    report = CwIsoReport(lam, window)
    for k in source.exponents():
        v = WeightVector.basis(k)
        for kind, element in twisted.items():
            report.checked += 1
            left = iso(weyl_element_act(source, element, v))
            right = weyl_act(target, kind, iso(v))
            if left != right:
                report.failures.append(f"{kind.value} on x^({k}+{lam}): {left} != {right}")
    return report


# -- socle, radical and interlocking --------------------------------------

class BoundaryStatus(Enum):
    CLEAN = "clean"
    INCONCLUSIVE = "inconclusive"


def strongly_connected_components(vertices, successors):
    """Kosaraju's algorithm without recursion; components sorted by min vertex."""
    vertices = list(vertices)
    edges = {v: [w for w in successors(v)] for v in vertices}
    reverse = {v: [] for v in vertices}
    for v, targets in edges.items():
        for w in targets:
            reverse[w].append(v)

    order = []
    seen = set()
    for root in vertices:
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, iter(edges[root]))]
        while stack:
            node, children = stack[-1]
            for child in children:
                if child not in seen:
                    seen.add(child)
                    stack.append((child, iter(edges[child])))
                    break
            else:
                stack.pop()
                order.append(node)

    components = []
    assigned = set()
    for root in reversed(order):
        if root in assigned:
            continue
        component = {root}
        assigned.add(root)
        stack = [root]
        while stack:
            node = stack.pop()
            for w in reverse[node]:
                if w not in assigned:
                    assigned.add(w)
                    component.add(w)
                    stack.append(w)
        components.append(frozenset(component))
    return sorted(components, key=min)


def _lattice(vertices, edges):
    """Socle and radical vertex sets from the condensation of the graph."""
    components = strongly_connected_components(vertices, lambda v: edges[v])
    owner = {v: i for i, comp in enumerate(components) for v in comp}
    has_out = set()
    has_in = set()
    for v, targets in edges.items():
        for w in targets:
            if owner[v] != owner[w]:
                has_out.add(owner[v])
                has_in.add(owner[w])
    socle = set()
    sources = set()
    for i, comp in enumerate(components):
        if i not in has_out:
            socle |= comp
        if i not in has_in:
            sources |= comp
    radical = set(vertices) - sources
    return socle, radical


@dataclass(frozen=True)
class IsoProfile:
    """aa*-spectrum of a chain module: residue mod 1 and interval ends.

    An end is None when the spectrum continues past the window.
    """

    residue: Fraction
    intervals: tuple = ()

    @property
    def label(self):
        if not self.intervals:
            return "0"
        return " + ".join(self._interval_label(lo, hi) for lo, hi in self.intervals)

    def _interval_label(self, lo, hi):
        if self.residue == 0:
            if lo == 1 and hi is None:
                return "V"
            if lo is None and hi == 0:
                return "cV"
        elif lo is None and hi is None:
            return f"W_{self.residue}"
        low = "-inf" if lo is None else str(lo)
        high = "inf" if hi is None else str(hi)
        return f"[{low}, {high}]"

    def as_dict(self):
        return {
            "label": self.label,
            "residue": self.residue,
            "intervals": [list(pair) for pair in self.intervals],
        }


@dataclass(frozen=True)
class SubmoduleDescription:
    spec: WeightModuleSpec
    exponents: frozenset
    profile: IsoProfile
    boundary_status: BoundaryStatus

    @property
    def label(self):
        return self.profile.label

    def runs(self):
        return _runs(self.exponents)

    def as_dict(self):
        return {
            "label": self.label,
            "exponent_runs": [list(run) for run in self.runs()],
            "profile": self.profile.as_dict(),
        }


def _runs(exponents):
    runs = []
    for k in sorted(exponents):
        if runs and runs[-1][1] == k - 1:
            runs[-1][1] = k
        else:
            runs.append([k, k])
    return [tuple(run) for run in runs]


@dataclass(frozen=True)
class ChainGraph:
    spec: WeightModuleSpec
    window: int
    vertices: tuple
    edges: dict
    open_low: bool
    open_high: bool
    boundary_status: BoundaryStatus
    leaks: tuple = ()

    def profile(self, exponents):
        residue = self.spec.lam % 1
        low_edge, high_edge = self.vertices[0], self.vertices[-1]
        intervals = []
        for lo, hi in _runs(exponents):
            lo_open = lo == low_edge and self.open_low
            hi_open = hi == high_edge and self.open_high
            if self.spec.family.a_is_derivative:
                ends = (
                    None if lo_open else self.spec.aastar_eigenvalue(lo),
                    None if hi_open else self.spec.aastar_eigenvalue(hi),
                )
            else:
                ends = (
                    None if hi_open else self.spec.aastar_eigenvalue(hi),
                    None if lo_open else self.spec.aastar_eigenvalue(lo),
                )
            intervals.append(ends)
        intervals.sort(key=lambda pair: (pair[0] is not None, pair[0] or 0))
        return IsoProfile(residue, tuple(intervals))

    def describe(self, exponents):
        return SubmoduleDescription(
            self.spec, frozenset(exponents), self.profile(exponents), self.boundary_status
        )


def chain_graph(spec, window=None):
    """Arrows between window exponents plus the crossing-arrow bookkeeping."""
    window = spec.window if window is None else window
    vertices = tuple(spec.exponents(window))
    inside = set(vertices)

    def targets(k):
        found = []
        for kind in (Kind.A, Kind.ASTAR):
            image = _act_exponent(spec, kind, k)
            if image is not None and spec.in_domain(image[0]):
                found.append(image[0])
        return found

    windowed = spec.with_window(window)
    edges = {}
    leaks = []
    for k in vertices:
        found = []
        for kind in (Kind.A, Kind.ASTAR):
            image = weyl_act(windowed, kind, WeightVector.basis(k))
            if image.leaked:
                leaks.append(k)
            found.extend(t for t in image.keys() if t in inside)
        edges[k] = found
    open_sides = {"low": False, "high": False}
    clean = True
    for edge, outside, side in ((vertices[0], vertices[0] - 1, "low"),
                                (vertices[-1], vertices[-1] + 1, "high")):
        if not spec.in_domain(outside):
            continue
        out_arrow = outside in targets(edge)
        in_arrow = edge in targets(outside)
        if out_arrow and in_arrow:
            open_sides[side] = True
        elif out_arrow or in_arrow:
            clean = False
            logger.debug(f"{spec}: one-way arrow across the window edge at {edge}")
    status = BoundaryStatus.CLEAN if clean else BoundaryStatus.INCONCLUSIVE
    return ChainGraph(
        spec, window, vertices, edges, open_sides["low"], open_sides["high"], status,
        tuple(sorted(set(leaks))),
    )


def socle(spec, window=None):
    graph = chain_graph(spec, window)
    soc, _ = _lattice(graph.vertices, graph.edges)
    return graph.describe(soc)


def radical(spec, window=None):
    graph = chain_graph(spec, window)
    _, rad = _lattice(graph.vertices, graph.edges)
    return graph.describe(rad)


@dataclass(frozen=True)
class InterlockReport:
    spec: WeightModuleSpec
    window: int
    socle: SubmoduleDescription
    radical: SubmoduleDescription
    quotient_by_socle: IsoProfile
    quotient_by_radical: IsoProfile
    weakly_interlocked: bool | None
    witness: str | None
    boundary_status: BoundaryStatus
    leaks: tuple = ()

    def as_dict(self):
        return {
            "family": str(self.spec),
            "window": self.window,
            "socle": self.socle.as_dict(),
            "radical": self.radical.as_dict(),
            "quotient_by_socle": self.quotient_by_socle.label,
            "quotient_by_radical": self.quotient_by_radical.label,
            "weakly_interlocked": self.weakly_interlocked,
            "witness": self.witness,
            "boundary_status": self.boundary_status.value,
            "leaks": list(self.leaks),
        }


def weakly_interlocked(spec, window=None):
    """Test W/Soc = Rad and W/Rad = Soc through aa*-spectrum profiles."""
    graph = chain_graph(spec, window)
    soc, rad = _lattice(graph.vertices, graph.edges)
    everything = set(graph.vertices)
    over_soc = graph.profile(everything - soc)
    over_rad = graph.profile(everything - rad)
    soc_desc = graph.describe(soc)
    rad_desc = graph.describe(rad)

    witness = None
    if over_soc != rad_desc.profile:
        witness = f"W/Soc ≅ {over_soc.label} but Rad ≅ {rad_desc.label}"
    elif over_rad != soc_desc.profile:
        witness = f"W/Rad ≅ {over_rad.label} but Soc ≅ {soc_desc.label}"

    if graph.boundary_status is BoundaryStatus.INCONCLUSIVE:
        verdict = None
        witness = "one-way arrow across the window edge"
    else:
        verdict = witness is None
    return InterlockReport(
        spec, graph.window, soc_desc, rad_desc, over_soc, over_rad,
        verdict, witness, graph.boundary_status, graph.leaks,
    )


# -- induction from level zero ------------------------------------------------

@dataclass(frozen=True, slots=True, order=True)
class InducedKey:
    """word (x) x^{exponent}; the word holds modes with index <= -1.

    level and the sort order are derived from the word, so keys compare
    equal exactly when word and exponent agree.
    """

    level: int = field(init=False)
    word: PBWMonomial = field(compare=False)
    exponent: int = 0
    _order: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "level", self.word.weight)
        object.__setattr__(self, "_order", (self.word.a_indices, self.word.astar_indices))

    @classmethod
    def of(cls, word, exponent):
        return cls(word, exponent)

    def __str__(self):
        return f"{self.word} (x) x^{self.exponent}"


class InducedVector(LinearCombination):
    __slots__ = ()

    @staticmethod
    def sort_key(key):
        return (key.level, key._order, key.exponent)

    format_key = staticmethod(str)


@dataclass(frozen=True)
class InducedModule(ModeModule):
    """Generalized Verma module over a weight module Z at level zero.

    Positive modes annihilate Z, zero modes act through the Weyl action and
    negative modes create the PBW word.
    """

    spec: WeightModuleSpec
    vector_type = InducedVector

    def act_key(self, g, key):
        word, e = key.word, key.exponent
        if g.index < 0:
            return {InducedKey.of(word.with_mode(g), e): Fraction(1)}
        if g.index > 0:
            if g.kind is Kind.A:
                partner, step = Generator(Kind.ASTAR, -g.index), 1
            else:
                partner, step = Generator(Kind.A, -g.index), -1
            count = word.multiplicity(partner)
            if not count:
                return {}
            return {InducedKey.of(word.without_mode(partner), e): Fraction(step * count)}
        image = _act_exponent(self.spec, g.kind, e)
        if image is None or not self.spec.in_domain(image[0]):
            return {}
        target, coefficient = image
        return {InducedKey.of(word, target): Fraction(coefficient)}

    def level(self, key):
        return key.level

    def charge(self, key):
        return key.word.charge + self.spec.j0_eigenvalue(key.exponent)

    def lowest(self, exponent):
        return InducedVector.basis(InducedKey.of(VACUUM_MONOMIAL, exponent))


@dataclass(frozen=True)
class AssociativityReport:
    checked: int = 0
    violations: tuple = ()

    @property
    def passed(self):
        return not self.violations


@dataclass(frozen=True)
class InducedTruncation:
    module: InducedModule
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise InvalidParameterError("depth", self.depth, "must be non-negative")

    @property
    def spec(self):
        return self.module.spec

    @property
    def window(self):
        return self.spec.window

    def words(self, level):
        """PBW words in modes a_{-m}, a*_{-n} (m, n >= 1) of the given weight."""
        return list(iter_monomials(level, max_zero_modes=0))

    def level_multiplicity(self, level):
        return len(self.words(level))

    def basis(self, depth=None):
        depth = self.depth if depth is None else depth
        keys = []
        for level in range(depth + 1):
            for word in self.words(level):
                keys.extend(InducedKey.of(word, e) for e in self.spec.exponents())
        return keys

    def contains(self, key):
        return key.level <= self.depth and key.exponent in self.spec.exponents()

    def apply(self, g, key, strict=False):
        image = self.module.act_key(g, key)
        for target in image:
            if not self.contains(target):
                if strict:
                    if target.level > self.depth:
                        raise WindowOverflowError(target.level, ("depth", self.depth))
                    raise WindowOverflowError(target.exponent, self.window)
                logger.debug(f"{self.spec}: {g} maps {key} outside the truncation")
        return image

    def action_matrix(self, g):
        """Row-major (row, col, value) triples of g on the truncation basis."""
        basis = self.basis()
        index = {key: i for i, key in enumerate(basis)}
        triples = []
        for col, key in enumerate(basis):
            for target, value in self.module.act_key(g, key).items():
                if target in index:
                    triples.append((index[target], col, value))
        return sorted(triples)

    def sample_keys(self, max_level=1, radius=1):
        return [
            key for key in self.basis(min(max_level, self.depth))
            if abs(key.exponent) <= radius
        ]


def induce(spec, depth):
    if depth < 0:
        raise InvalidParameterError("depth", depth, "must be non-negative")
    return InducedTruncation(InducedModule(spec), depth)


def borcherds_samples(truncation, orders=range(-2, 2), max_level=1):
    """Iterate-formula relations for generator pairs on low-level vectors."""
    module = truncation.module
    fields = {"a": A_FIELD, "a*": ASTAR_FIELD}
    checked = 0
    violations = []
    for key in truncation.sample_keys(max_level):
        w = InducedVector.basis(key)
        for u_name, u in fields.items():
            for v_name, v in fields.items():
                for p in orders:
                    for q in orders:
                        checked += 1
                        if borcherds_defect(u, v, p, q, w, module):
                            violations.append(f"({u_name}_{p} {v_name})_{q} on {key}")
    if violations:
        logger.warning(f"{truncation.spec}: {len(violations)} associativity violations")
    return AssociativityReport(checked, tuple(violations))


# -- the Delta operator and spectral flow -----------------------------------------

class DeltaExpansion:
    """Finite Laurent polynomial in x with vector coefficients."""

    __slots__ = ("terms", "vector_type")

    def __init__(self, terms, vector_type):
        self.vector_type = vector_type
        self.terms = {Fraction(p): v for p, v in terms.items() if v}

    def powers(self):
        return sorted(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, power):
        return self.terms.get(Fraction(power), self.vector_type())

    def __eq__(self, other):
        if not isinstance(other, DeltaExpansion):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def _combine(self, other, factor):
        terms = dict(self.terms)
        for p, v in other.terms.items():
            terms[p] = terms.get(p, self.vector_type()) + v.scale(factor)
        return DeltaExpansion(terms, self.vector_type)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return DeltaExpansion({p: -v for p, v in self.terms.items()}, self.vector_type)

    def map(self, operator):
        return DeltaExpansion({p: operator(v) for p, v in self.terms.items()}, self.vector_type)

    def derivative(self):
        return DeltaExpansion(
            {p - 1: v.scale(p) for p, v in self.terms.items() if p != 0}, self.vector_type
        )

    def apply_delta(self, ell, module=None):
        """Compose with a further Delta(-ell J, x) applied to every coefficient."""
        pairs = {}
        for p, v in self.terms.items():
            for q, w in delta_operator(ell, v, module).terms.items():
                pairs[p + q] = pairs.get(p + q, self.vector_type()) + w
        return DeltaExpansion(pairs, self.vector_type)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"x^{p} ({v})" for p, v in sorted(self.terms.items()))

    def __repr__(self):
        return f"DeltaExpansion({str(self)!r})"


def delta_operator(ell, v, module=None):
    """Delta(-ell J, x) v = x^{-ell J_0} exp(sum_k (-1)^k ell/k J_k x^{-k}) v."""
    module = module or FOCK
    zero = module.vector_type()
    total = {0: v}
    current = {0: v}
    n = 0
    while current:
        n += 1
        following = {}
        for power, w in current.items():
            for k in range(1, module.level_of(w) + 1):
                image = heisenberg_mode(k, w, module)
                if image:
                    c = Fraction(sign(k) * ell, k * n)
                    following[power - k] = following.get(power - k, zero) + image.scale(c)
        current = {p: w for p, w in following.items() if w}
        for p, w in current.items():
            total[p] = total.get(p, zero) + w
    pairs = {}
    for power, w in total.items():
        for key, c in w.items():
            shifted = Fraction(power) - ell * module.charge(key)
            pairs.setdefault(shifted, []).append((key, c))
    return DeltaExpansion(
        {p: module.vector_type.from_pairs(items) for p, items in pairs.items()},
        module.vector_type,
    )


def delta_conjugation_defect(ell, v, n, w, module=None):
    """x0^{-n-1} part of Y(Delta(x2 + x0) v, x0) Delta(x2) w - Delta(x2) Y(v, x0) w.

    (x2 + x0)^p is expanded in non-negative powers of x0. The result is a
    Laurent polynomial in x2 and is zero for every n when Delta intertwines
    the vertex operators of a module with those of its flow.
    """
    module = module or FOCK
    zero = module.vector_type()
    terms = {
        p: -part
        for p, part in delta_operator(ell, vertex_modes(v, n, w, module), module).terms.items()
    }
    top = max(v.weights(), default=0) + module.level_of(w)
    for p, v_part in delta_operator(ell, v).terms.items():
        for q, w_part in delta_operator(ell, w, module).terms.items():
            for i in range(max(top - n, 0) + 1):
                image = vertex_modes(v_part, n + i, w_part, module)
                if image:
                    power = p + q - i
                    terms[power] = terms.get(power, zero) + image.scale(binomial(int(p), i))
    return DeltaExpansion(terms, module.vector_type)


@dataclass(frozen=True)
class FlowedModule(ModeModule):
    """sigma^ell of a module: same space, modes read through Delta(-ell J, x)."""

    base: ModeModule
    ell: int

    @property
    def vector_type(self):
        return self.base.vector_type

    def act_key(self, g, key):
        return self.base.act_key(g.shifted(self.ell), key)

    def level(self, key):
        return self.base.level(key)

    def charge(self, key):
        return self.base.charge(key) + self.ell

    def mode(self, u, k, v):
        result = self.vector_type()
        for power, part in delta_operator(self.ell, u).terms.items():
            result = result + self.base.mode(part, k + int(power), v)
        return result


@dataclass(frozen=True)
class FlowedTruncation:
    truncation: InducedTruncation
    ell: int

    @property
    def module(self):
        return FlowedModule(self.truncation.module, self.ell)

    @property
    def spec(self):
        return self.truncation.spec

    @property
    def depth(self):
        return self.truncation.depth


def spectral_flow_module(m, ell):
    """sigma^ell of an induced truncation (flows compose additively)."""
    if isinstance(m, FlowedTruncation):
        return FlowedTruncation(m.truncation, m.ell + ell)
    return FlowedTruncation(m, ell)


@dataclass
class FlowReport:
    family: str
    ell: int
    depth: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, name, ok, detail):
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.failures.append(f"{name}: {detail}")

    def as_dict(self):
        return {
            "family": self.family,
            "ell": self.ell,
            "depth": self.depth,
            "checks": dict(self.checks),
            "passed": self.passed,
            "failures": list(self.failures),
        }


def verify_flow(flowed, indices=range(-2, 3), virasoro_indices=range(-1, 2), max_level=1):
    """Module-axiom samples for the flowed action."""
    module = flowed.module
    ell = flowed.ell
    report = FlowReport(str(flowed.spec), ell, flowed.depth)
    for key in flowed.truncation.sample_keys(max_level):
        w = InducedVector.basis(key)
        for n in indices:
            report.record(
                "generator_modes",
                vertex_modes(A_FIELD, n, w, module) == module.act(Generator(Kind.A, n), w)
                and vertex_modes(ASTAR_FIELD, n, w, module)
                == module.act(Generator(Kind.ASTAR, n + 1), w),
                f"n={n} on {key}",
            )
        for m in indices:
            for n in indices:
                bracket = module.act(Generator(Kind.A, m), module.act(Generator(Kind.ASTAR, n), w)) - \
                    module.act(Generator(Kind.ASTAR, n), module.act(Generator(Kind.A, m), w))
                expected = w if m + n == 0 else InducedVector()
                report.record("weyl_commutator", bracket == expected, f"[a_{m}, a*_{n}] on {key}")
                jj = heisenberg_mode(m, heisenberg_mode(n, w, module), module) - \
                    heisenberg_mode(n, heisenberg_mode(m, w, module), module)
                expected = w.scale(-m) if m + n == 0 else InducedVector()
                report.record("heisenberg", jj == expected, f"[J_{m}, J_{n}] on {key}")
        report.record(
            "flowed_charge",
            heisenberg_mode(0, w, module) == w.scale(module.charge(key)),
            f"J_0 on {key}",
        )
        base = flowed.truncation.module
        l0_expected = (
            virasoro_mode(0, w, base)
            - heisenberg_mode(0, w, base).scale(ell)
            - w.scale(Fraction(ell * (ell + 1), 2))
        )
        report.record("l0_shift", virasoro_mode(0, w, module) == l0_expected, f"L_0 on {key}")
        for m in virasoro_indices:
            for n in virasoro_indices:
                lhs = virasoro_mode(m, virasoro_mode(n, w, module), module) - \
                    virasoro_mode(n, virasoro_mode(m, w, module), module)
                rhs = virasoro_mode(m + n, w, module).scale(m - n)
                if m + n == 0:
                    rhs = rhs + w.scale(Fraction(m ** 3 - m, 6))
                report.record("virasoro", lhs == rhs, f"[L_{m}, L_{n}] on {key}")
    if report.failures:
        logger.warning(f"flow by {ell} on {flowed.spec}: {report.failures[0]}")
    return report


@dataclass(frozen=True)
class VertexInterlockReport:
    spec: WeightModuleSpec
    ell: int
    depth: int
    weakly_interlocked: bool | None
    witness: str | None
    boundary_status: BoundaryStatus
    socle_size: int
    radical_size: int
    level0_socle: tuple
    level0_radical: tuple
    consistent_with_base: bool
    leaks: int

    def as_dict(self):
        return {
            "family": str(self.spec),
            "ell": self.ell,
            "depth": self.depth,
            "weakly_interlocked": self.weakly_interlocked,
            "witness": self.witness,
            "boundary_status": self.boundary_status.value,
            "socle_size": self.socle_size,
            "radical_size": self.radical_size,
            "level0_socle": [list(run) for run in self.level0_socle],
            "level0_radical": [list(run) for run in self.level0_radical],
            "consistent_with_base": self.consistent_with_base,
            "leaks": self.leaks,
        }


def vertex_weakly_interlocked(m, depth=None):
    """Submodule lattice of an induced (possibly flowed) truncation.

    Every mode sends a basis key to a multiple of one key, so generated
    submodules are reachability closures. The level-zero restriction is
    compared with the weight-module answer, which decides the verdict.
    """
    if isinstance(m, FlowedTruncation):
        truncation, ell = m.truncation, m.ell
    else:
        truncation, ell = m, 0
    module = m.module
    depth = truncation.depth if depth is None else min(depth, truncation.depth)
    keys = truncation.basis(depth)
    inside = set(keys)
    bound = depth + abs(ell) + 1
    generators = [Generator(kind, n) for kind in Kind for n in range(-bound, bound + 1)]

    leaks = 0
    edges = {}
    for key in keys:
        targets = []
        for g in generators:
            for target in module.act_key(g, key):
                if target in inside:
                    targets.append(target)
                else:
                    leaks += 1
        edges[key] = targets
    soc, rad = _lattice(keys, edges)

    level0_soc = frozenset(key.exponent for key in soc if key.level == 0)
    level0_rad = frozenset(key.exponent for key in rad if key.level == 0)
    base = weakly_interlocked(truncation.spec)
    consistent = level0_soc == base.socle.exponents and level0_rad == base.radical.exponents
    if consistent:
        verdict, witness, status = base.weakly_interlocked, base.witness, base.boundary_status
    else:
        logger.warning(f"{truncation.spec}: level-zero lattice disagrees with the weight module")
        verdict, witness, status = None, "level-zero lattice disagrees", BoundaryStatus.INCONCLUSIVE
    return VertexInterlockReport(
        truncation.spec, ell, depth, verdict, witness, status,
        len(soc), len(rad), tuple(_runs(level0_soc)), tuple(_runs(level0_rad)),
        consistent, leaks,
    )
