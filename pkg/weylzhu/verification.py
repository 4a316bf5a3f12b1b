# weylzhu/verification.py
"""The acceptance suite behind ``weylzhu verify-all``.

Each check is a plain function returning (passed, detail); the ``check``
decorator times it, turns package errors into failures and registers it.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps
from itertools import product
from time import perf_counter

import sympy

from .errors import VerificationError, WeylZhuError
from .fock_module import (
    ASTAR_FIELD,
    A_FIELD,
    J_VECTOR,
    OMEGA,
    VACUUM,
    Bipartition,
    FockVector,
    character_series,
    enumerate_bipartitions,
    fock_basis,
    graded_dimension,
    heisenberg_mode,
    translation,
    virasoro_mode,
    zero_mode,
    zhu_star,
)
from .mode_algebra import (
    Generator,
    Kind,
    ModeElement,
    ModeWord,
    WeylElement,
    dixmier_phi,
    normal_order,
    spectral_flow,
    weyl_project,
    wick_contraction,
)
from .mta_zhu import (
    contraction_constant,
    epsilon,
    identity_matrix,
    matrix_iso,
    matrix_iso_inverse,
    matrix_multiply,
    star,
    unity,
    verify_strong_unity,
    zhu_structure,
)
from .weight_modules import (
    BoundaryStatus,
    Family,
    InducedVector,
    WeightModuleSpec,
    aastar_eigenvalues,
    cw_iso_check,
    delta_conjugation_defect,
    delta_operator,
    induce,
    spectral_flow_module,
    verify_flow,
    vertex_weakly_interlocked,
    weakly_interlocked,
    weyl_relation_holds,
)

logger = logging.getLogger(__name__)

LAMBDAS = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float

    def as_row(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "elapsed_s": round(self.elapsed_s, 3),
        }


CHECKS = []


def check(name):
    """Register a check function under a report name."""
    def decorator(func):
        @wraps(func)
        def wrapper(quick=False):
            start = perf_counter()
            try:
                passed, detail = func(quick)
            except WeylZhuError as exc:
                logger.error(f"{name} raised {type(exc).__name__}: {exc}")
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            elapsed = perf_counter() - start
            if not passed:
                logger.warning(f"check {name} failed: {detail}")
            else:
                logger.debug(f"check {name} passed in {elapsed:.2f}s")
            return CheckResult(name, passed, detail, elapsed)
        wrapper.check_name = name
        CHECKS.append(wrapper)
        return wrapper
    return decorator


def all_families(window, lambdas=LAMBDAS):
    specs = [WeightModuleSpec(Family.V, window), WeightModuleSpec(Family.CV, window)]
    specs += [WeightModuleSpec(Family.W_LAMBDA, window, lam) for lam in lambdas]
    specs += [WeightModuleSpec(Family.W0_PLUS, window), WeightModuleSpec(Family.W0_MINUS, window)]
    return specs


def partition_pair_counts(max_d):
    """Coefficients of prod_n (1 - q^n)^-2 up to q^max_d, expanded by sympy."""
    q = sympy.symbols("q")
    series = sympy.Poly(1, q)
    for n in range(1, max_d + 1):
        geometric = sympy.Poly(sum(q ** (n * r) for r in range(max_d // n + 1)), q)
        series = series * geometric * geometric
        series = sympy.Poly.from_dict(
            {m: c for m, c in series.as_dict().items() if m[0] <= max_d}, q
        )
    return [int(series.coeff_monomial(q ** d)) for d in range(max_d + 1)]


def random_word(rng, max_length=6, spread=4):
    length = rng.randint(0, max_length)
    return ModeWord(tuple(
        Generator(rng.choice(list(Kind)), rng.randint(-spread, spread)) for _ in range(length)
    ))


def random_element(rng, terms=2, max_length=4, spread=3):
    return ModeElement.from_pairs(
        (random_word(rng, max_length, spread), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        for _ in range(terms)
    )


def _commutator(op_m, op_n, v):
    return op_m(op_n(v)) - op_n(op_m(v))


@check("bipartition_counts")
def check_bipartitions(quick):
    max_d = 12 if quick else 20
    oracle = partition_pair_counts(max_d)
    counts = [len(enumerate_bipartitions(d)) for d in range(max_d + 1)]
    member = Bipartition((4, 1), (2, 2, 1)) in enumerate_bipartitions(10)
    return counts == oracle and member, f"counts up to d={max_d}: {counts[:7]}..."


@check("character_consistency")
def check_characters(quick):
    max_d = 5 if quick else 8
    series = character_series(max_d, max_d)
    mismatches = [
        (d, j) for d in range(max_d + 1) for j in range(-max_d, max_d + 1)
        if series.coefficient(d, j) != graded_dimension(d, j)
    ]
    return not mismatches, f"d <= {max_d}, |j| <= {max_d}; mismatches {mismatches[:3]}"


@check("virasoro_heisenberg")
def check_virasoro(quick):
    weight, spread = (3, 2) if quick else (5, 3)
    failures = []
    for mono in fock_basis(weight, max_zero_modes=1):
        v = FockVector.basis(mono)
        for m, n in product(range(-spread, spread + 1), repeat=2):
            lhs = _commutator(lambda x: virasoro_mode(m, x), lambda x: virasoro_mode(n, x), v)
            rhs = virasoro_mode(m + n, v).scale(m - n)
            if m + n == 0:
                rhs = rhs + v.scale(Fraction(m ** 3 - m, 6))
            if lhs != rhs:
                failures.append(f"[L_{m}, L_{n}] on {mono}")
            jj = _commutator(lambda x: heisenberg_mode(m, x), lambda x: heisenberg_mode(n, x), v)
            if jj != (v.scale(-m) if m + n == 0 else FockVector()):
                failures.append(f"[J_{m}, J_{n}] on {mono}")
    return not failures, f"weight <= {weight}, |m|,|n| <= {spread}; {failures[:3]}"


@check("mode_transition_structure")
def check_mta(quick):
    max_d = 2 if quick else 3
    failures = []
    for d in range(max_d + 1):
        basis = enumerate_bipartitions(d)
        for p, q, q2, r in product(basis, repeat=4):
            left, right = epsilon(p, q), epsilon(q2, r)
            expected = epsilon(p, r).scale(contraction_constant(q)) if q == q2 else epsilon(p, r).scale(0)
            result = star(left, right)
            if result != expected:
                failures.append(f"e[{p}|{q}] * e[{q2}|{r}]")
            if matrix_iso(result) != matrix_multiply(matrix_iso(left), matrix_iso(right)):
                failures.append(f"matrix_iso not multiplicative on e[{p}|{q}], e[{q2}|{r}]")
        for p, q in product(basis, repeat=2):
            element = epsilon(p, q, WeylElement.a())
            if matrix_iso_inverse(matrix_iso(element), d) != element:
                failures.append(f"inverse fails on e[{p}|{q}]")
    return not failures, f"d <= {max_d}; {failures[:3]}"


@check("unity_and_strong_unity")
def check_unity(quick):
    max_unit, max_strong = (2, 1) if quick else (4, 3)
    failures = []
    for d in range(max_unit + 1):
        identity = unity(d)
        if matrix_iso(identity) != identity_matrix(len(enumerate_bipartitions(d))):
            failures.append(f"unity({d}) is not the identity matrix")
        for p, q in product(enumerate_bipartitions(d), repeat=2):
            element = epsilon(p, q)
            if star(identity, element) != element or star(element, identity) != element:
                failures.append(f"unity({d}) on e[{p}|{q}]")
    for n, m in product(range(max_strong + 1), repeat=2):
        report = verify_strong_unity(n, m)
        failures.extend(report.failures)
    return not failures, f"unity d <= {max_unit}, strong unity n, m <= {max_strong}; {failures[:3]}"


@check("zhu_tower")
def check_zhu_tower(quick):
    first = zhu_structure(1, check_idempotents_up_to=1)
    fourth = zhu_structure(4, check_idempotents_up_to=1 if quick else 2)
    expected = tuple(len(enumerate_bipartitions(j)) for j in range(5))
    ok = first.block_sizes == (1, 2) and fourth.block_sizes == expected and fourth.total == 530
    ok = ok and fourth.idempotents_checked == tuple(range(len(fourth.idempotents_checked)))
    return ok, f"blocks {list(fourth.block_sizes)}, total {fourth.total}"


@check("zhu_zero_action")
def check_zhu_zero(quick):
    window = 2 if quick else 3
    states = {"a": A_FIELD, "a*": ASTAR_FIELD, "J": J_VECTOR, "omega": OMEGA}
    commutator = zhu_star(A_FIELD, ASTAR_FIELD, 0) - zhu_star(ASTAR_FIELD, A_FIELD, 0)
    failures = []
    for spec in all_families(window):
        module = induce(spec, 0).module
        for e in spec.exponents():
            if abs(e) > 1:
                continue
            z = module.lowest(e)
            if zero_mode(commutator, z, module) != z:
                failures.append(f"[a, a*] on {spec} x^{e}")
            for (u_name, u), (w_name, w) in product(states.items(), repeat=2):
                lhs = zero_mode(zhu_star(u, w, 0), z, module)
                rhs = zero_mode(u, zero_mode(w, z, module), module)
                if lhs != rhs:
                    failures.append(f"o({u_name} *0 {w_name}) on {spec} x^{e}")
    return not failures, f"window {window}; {failures[:3]}"


@check("block_families")
def check_block(quick):
    window = 6 if quick else 12
    failures = []
    for spec in all_families(window):
        if not weyl_relation_holds(spec):
            failures.append(f"Weyl relation on {spec}")
        if None in aastar_eigenvalues(spec).values():
            failures.append(f"aa* not diagonal on {spec}")
    for lam in LAMBDAS:
        if not cw_iso_check(lam, 4 if quick else 8).passed:
            failures.append(f"cW iso for lambda={lam}")
    expected = {Family.W0_PLUS: ("V", "V", "cV"), Family.W0_MINUS: ("cV", "cV", "V")}
    for family, (soc, rad, top) in expected.items():
        report = weakly_interlocked(WeightModuleSpec(family, window))
        got = (report.socle.label, report.radical.label, report.quotient_by_socle.label)
        if got != (soc, rad, top) or report.boundary_status is not BoundaryStatus.CLEAN:
            failures.append(f"{family.value}: {got}, {report.boundary_status.value}")
    return not failures, f"window {window}; {failures[:3]}"


@check("non_interlocking")
def check_interlocking(quick):
    window, depth = (4, 1) if quick else (6, 2)
    ells = (-1, 1) if quick else range(-3, 4)
    failures = []
    for spec in all_families(window):
        report = weakly_interlocked(spec)
        expected = spec.family not in (Family.W0_PLUS, Family.W0_MINUS)
        if report.weakly_interlocked is not expected:
            failures.append(f"{spec}: {report.weakly_interlocked}")
        if not expected and ("cV" not in report.witness or "V" not in report.witness):
            failures.append(f"{spec}: witness {report.witness}")
    for family in (Family.W0_PLUS, Family.W0_MINUS):
        truncation = induce(WeightModuleSpec(family, window), depth)
        if vertex_weakly_interlocked(truncation).weakly_interlocked is not False:
            failures.append(f"induced {family.value}")
        for ell in ells:
            flowed = spectral_flow_module(truncation, ell)
            if vertex_weakly_interlocked(flowed).weakly_interlocked is not False:
                failures.append(f"sigma^{ell} induced {family.value}")
    for ell in (-1, 1) if quick else (-2, -1, 1, 2):
        flowed = spectral_flow_module(induce(WeightModuleSpec(Family.W0_MINUS, window), 1), ell)
        report = verify_flow(flowed, indices=range(-1, 2), virasoro_indices=range(-1, 2))
        failures.extend(report.failures[:1])
    return not failures, f"window {window}, depth {depth}; {failures[:3]}"


@check("delta_operator")
def check_delta(quick):
    inverse_weight, translation_weight = (2, 2) if quick else (4, 3)
    conjugation_weight = 1 if quick else 2
    conjugation_indices = range(-1, 2) if quick else range(-2, 3)
    failures = []
    for ell in (1, 2, -1):
        if delta_operator(ell, VACUUM).terms != {0: VACUUM}:
            failures.append(f"Delta({ell}) on vacuum")
        if delta_operator(ell, A_FIELD).terms != {ell: A_FIELD}:
            failures.append(f"Delta({ell}) on a")
        for mono in fock_basis(inverse_weight, max_zero_modes=1):
            v = FockVector.basis(mono)
            if delta_operator(ell, v).apply_delta(-ell).terms != {0: v}:
                failures.append(f"Delta inverse for ell={ell} on {mono}")
        for mono in fock_basis(translation_weight, max_zero_modes=1):
            v = FockVector.basis(mono)
            expansion = delta_operator(ell, v)
            lhs = expansion.map(translation) - delta_operator(ell, translation(v))
            if lhs != -expansion.derivative():
                failures.append(f"[T, Delta] for ell={ell} on {mono}")
        for name, v in (("a", A_FIELD), ("a*", ASTAR_FIELD), ("J", J_VECTOR), ("omega", OMEGA)):
            for mono in fock_basis(conjugation_weight, max_zero_modes=1):
                for n in conjugation_indices:
                    if delta_conjugation_defect(ell, v, n, FockVector.basis(mono)):
                        failures.append(f"Delta conjugation of {name}_{n} for ell={ell} on {mono}")
    return not failures, f"inverse on weight <= {inverse_weight}; {failures[:3]}"


@check("property_suites")
def check_properties(quick):
    rng = random.Random(20240601)
    samples = 20 if quick else 60
    failures = []
    for _ in range(samples):
        e1, e2, e3 = (random_element(rng) for _ in range(3))
        ordered = normal_order(e1)
        if normal_order(ordered) != ordered:
            failures.append(f"normal_order not idempotent on {e1}")
        if (e1 * e2) * e3 != e1 * (e2 * e3):
            failures.append("multiply not associative")
        ell, k = rng.randint(-3, 3), rng.randint(-3, 3)
        if spectral_flow(e1 * e2, ell) != spectral_flow(e1, ell) * spectral_flow(e2, ell):
            failures.append(f"spectral flow {ell} not multiplicative")
        if spectral_flow(spectral_flow(e1, k), ell) != spectral_flow(e1, ell + k):
            failures.append(f"spectral flows {k}, {ell} do not compose")
        lam = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4))
        pa, ps = dixmier_phi(WeylElement.a(), lam), dixmier_phi(WeylElement.astar(), lam)
        if pa * ps - ps * pa != WeylElement.one():
            failures.append(f"phi_{lam} breaks the Weyl relation")
    for d in range(1, 5):
        for q in enumerate_bipartitions(d):
            for q2 in enumerate_bipartitions(d):
                beta = ModeWord(tuple(
                    Generator(Kind.ASTAR, m) for m in q.first
                ) + tuple(Generator(Kind.A, m) for m in q.second))
                alpha = ModeWord(tuple(
                    Generator(Kind.A, -m) for m in q2.first
                ) + tuple(Generator(Kind.ASTAR, -m) for m in q2.second))
                projected = weyl_project(ModeElement.from_word(beta) * ModeElement.from_word(alpha))
                if projected != WeylElement.scalar(wick_contraction(beta, alpha)):
                    failures.append(f"Wick mismatch {beta} | {alpha}")
    return not failures, f"{samples} random samples; {failures[:3]}"


def run_suite(quick=False):
    return [run_check(quick) for run_check in CHECKS]


def require(results):
    """Raise VerificationError naming every failed check."""
    failed = [result.name for result in results if not result.passed]
    if failed:
        raise VerificationError(failed)
    return results
