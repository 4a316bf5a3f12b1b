# tests/test_weight_modules.py
from fractions import Fraction
from itertools import product

import pytest

from weylzhu.errors import InvalidParameterError, WindowOverflowError
from weylzhu.fock_module import (
    ASTAR_FIELD,
    A_FIELD,
    J_VECTOR,
    OMEGA,
    VACUUM,
    FockVector,
    PBWMonomial,
    _monomial_mode,
    bipartition_count,
    fock_basis,
    translation,
    vertex_modes,
    zero_mode,
    zhu_star,
)
from weylzhu.mode_algebra import Generator, Kind, WeylElement
from weylzhu.weight_modules import (
    BoundaryStatus,
    Family,
    FlowedModule,
    FlowedTruncation,
    InducedKey,
    InducedVector,
    WeightModuleSpec,
    WeightVector,
    aastar_eigenvalues,
    borcherds_samples,
    chain_graph,
    cw_coefficient,
    cw_iso_check,
    delta_conjugation_defect,
    delta_operator,
    induce,
    radical,
    socle,
    spectral_flow_module,
    strongly_connected_components,
    verify_flow,
    vertex_weakly_interlocked,
    weakly_interlocked,
    weyl_act,
    weyl_element_act,
    weyl_relation_holds,
)

HALF = Fraction(1, 2)


def all_specs(window=6):
    specs = [WeightModuleSpec(Family.V, window), WeightModuleSpec(Family.CV, window)]
    specs += [WeightModuleSpec(Family.W_LAMBDA, window, lam) for lam in (Fraction(1, 3), HALF)]
    specs += [WeightModuleSpec(Family.W0_PLUS, window), WeightModuleSpec(Family.W0_MINUS, window)]
    return specs


def test_spec_validation():
    with pytest.raises(InvalidParameterError, match="0 < lambda < 1"):
        WeightModuleSpec(Family.W_LAMBDA, 4, Fraction(3, 2))
    with pytest.raises(InvalidParameterError, match="has no lambda"):
        WeightModuleSpec(Family.V, 4, HALF)
    with pytest.raises(InvalidParameterError, match="window"):
        WeightModuleSpec(Family.V, -1)
    assert WeightModuleSpec("w0+", 3).family is Family.W0_PLUS


@pytest.mark.parametrize(
    "spec, kind, k, expected",
    [
        (WeightModuleSpec(Family.V, 6), Kind.A, 3, WeightVector({2: 3})),
        (WeightModuleSpec(Family.V, 6), Kind.ASTAR, 3, WeightVector({4: 1})),
        (WeightModuleSpec(Family.V, 6), Kind.A, 0, WeightVector()),
        (WeightModuleSpec(Family.CV, 6), Kind.ASTAR, 0, WeightVector()),
        (WeightModuleSpec(Family.CV, 6), Kind.A, 2, WeightVector({3: 1})),
        (WeightModuleSpec(Family.W_LAMBDA, 6, HALF), Kind.A, 0, WeightVector({-1: HALF})),
    ],
)
def test_weyl_act_examples(spec, kind, k, expected):
    assert weyl_act(spec, kind, WeightVector.basis(k)) == expected


def test_weyl_act_strict_reports_overflow():
    spec = WeightModuleSpec(Family.V, 3)
    assert weyl_act(spec, Kind.ASTAR, WeightVector.basis(3)) == WeightVector.basis(4)
    with pytest.raises(WindowOverflowError, match="leaves the window"):
        weyl_act(spec, Kind.ASTAR, WeightVector.basis(3), strict=True)


def test_weyl_act_flags_leaks_at_the_window_edge():
    spec = WeightModuleSpec(Family.V, 3)
    assert not weyl_act(spec, Kind.ASTAR, WeightVector.basis(2)).leaked
    edge = weyl_act(spec, Kind.ASTAR, WeightVector.basis(3))
    assert edge.leaked
    assert edge == WeightVector.basis(4)
    assert weyl_act(spec, Kind.A, edge).leaked
    assert not weyl_act(spec, Kind.A, WeightVector.basis(3)).leaked
    twice = weyl_element_act(spec, WeylElement.astar() * WeylElement.astar(), WeightVector.basis(2))
    assert twice == WeightVector.basis(4)
    assert twice.leaked


def test_weyl_act_rejects_exponents_outside_the_family():
    for family in (Family.V, Family.CV):
        with pytest.raises(InvalidParameterError, match="exponent"):
            weyl_act(WeightModuleSpec(family, 3), Kind.A, WeightVector.basis(-1))
    w0 = WeightModuleSpec(Family.W0_PLUS, 3)
    assert weyl_act(w0, Kind.ASTAR, WeightVector.basis(-1)) == WeightVector.basis(0)


def test_weyl_element_act_applies_a_first():
    spec = WeightModuleSpec(Family.V, 6)
    v = WeightVector.basis(2)
    assert weyl_element_act(spec, WeylElement.astar() * WeylElement.a(), v) == v.scale(2)
    assert weyl_element_act(spec, WeylElement.a() * WeylElement.astar(), v) == v.scale(3)


@pytest.mark.parametrize("spec", all_specs(), ids=str)
def test_every_family_is_a_weight_module(spec):
    assert weyl_relation_holds(spec)
    eigenvalues = aastar_eigenvalues(spec)
    assert None not in eigenvalues.values()
    assert all(spec.aastar_eigenvalue(k) == value for k, value in eigenvalues.items())


def test_cw_coefficient():
    assert cw_coefficient(HALF, 0) == 1
    assert cw_coefficient(HALF, 1) == Fraction(-3, 2)
    assert cw_coefficient(HALF, 2) == Fraction(15, 4)
    # recurrence c_k = -(k + lam) c_{k-1} holds for negative k as well
    for k in range(-4, 4):
        assert cw_coefficient(HALF, k) == -(k + HALF) * cw_coefficient(HALF, k - 1)


@pytest.mark.parametrize("lam", [Fraction(1, 3), HALF, Fraction(2, 3)])
def test_cw_iso(lam):
    report = cw_iso_check(lam, 8)
    assert report.passed, report.failures
    assert report.checked == 2 * 17


def test_strongly_connected_components_on_a_chain():
    edges = {0: [1], 1: [0, 2], 2: [3], 3: []}
    components = strongly_connected_components(edges, lambda v: edges[v])
    assert components == [frozenset({0, 1}), frozenset({2}), frozenset({3})]


def test_irreducible_families():
    for spec in all_specs()[:4]:
        report = weakly_interlocked(spec)
        assert report.socle.exponents == frozenset(spec.exponents())
        assert report.radical.exponents == frozenset()
        assert report.weakly_interlocked is True
        assert report.witness is None


def test_block_labels():
    assert socle(WeightModuleSpec(Family.V, 6)).label == "V"
    assert socle(WeightModuleSpec(Family.CV, 6)).label == "cV"
    assert socle(WeightModuleSpec(Family.W_LAMBDA, 6, HALF)).label == "W_1/2"
    assert radical(WeightModuleSpec(Family.V, 6)).label == "0"


def test_w0_plus_structure(w0_plus):
    soc = socle(w0_plus)
    assert soc.exponents == frozenset(range(0, 7))
    assert soc.label == "V"
    assert radical(w0_plus).label == "V"
    report = weakly_interlocked(w0_plus)
    assert report.quotient_by_socle.label == "cV"
    assert report.weakly_interlocked is False
    assert report.witness == "W/Soc ≅ cV but Rad ≅ V"
    assert report.boundary_status is BoundaryStatus.CLEAN


def test_w0_minus_structure(w0_minus):
    report = weakly_interlocked(w0_minus)
    assert report.socle.label == "cV"
    assert report.radical.label == "cV"
    assert report.quotient_by_socle.label == "V"
    assert report.weakly_interlocked is False
    assert "V" in report.witness and "cV" in report.witness


def test_interlock_report_fields(w0_plus):
    data = weakly_interlocked(w0_plus).as_dict()
    assert set(data) >= {"family", "window", "socle", "radical", "weakly_interlocked", "witness", "boundary_status"}
    assert data["boundary_status"] == "clean"


def test_chain_graph_marks_open_sides():
    graph = chain_graph(WeightModuleSpec(Family.W_LAMBDA, 4, HALF))
    assert graph.open_low and graph.open_high
    graph = chain_graph(WeightModuleSpec(Family.V, 4))
    assert not graph.open_low and graph.open_high


def test_chain_graph_records_leaks(w0_plus):
    assert chain_graph(WeightModuleSpec(Family.V, 4)).leaks == (4,)
    assert chain_graph(WeightModuleSpec(Family.V, 6), window=2).leaks == (2,)
    assert chain_graph(WeightModuleSpec(Family.W_LAMBDA, 4, HALF)).leaks == (-4, 4)
    assert weakly_interlocked(w0_plus).as_dict()["leaks"] == [-6, 6]


def test_induced_level_multiplicities():
    truncation = induce(WeightModuleSpec(Family.V, 3), 4)
    for level in range(5):
        assert truncation.level_multiplicity(level) == bipartition_count(level)
    assert len(truncation.basis()) == sum(bipartition_count(k) for k in range(5)) * 4


def test_induce_rejects_negative_depth():
    with pytest.raises(InvalidParameterError, match="depth"):
        induce(WeightModuleSpec(Family.V, 3), -1)


def test_induced_keys_compare_by_word():
    a_word, astar_word = PBWMonomial((-1,), ()), PBWMonomial((), (-1,))
    assert InducedKey(a_word, 0) != InducedKey(astar_word, 0)
    assert InducedKey(a_word, 0) == InducedKey.of(a_word, 0)
    assert hash(InducedKey(a_word, 2)) == hash(InducedKey.of(a_word, 2))
    assert InducedKey(astar_word, 0).level == 1
    assert len({InducedKey(a_word, 0), InducedKey(astar_word, 0), InducedKey(a_word, 1)}) == 3


def test_zero_modes_act_through_the_weight_module():
    spec = WeightModuleSpec(Family.W_LAMBDA, 4, HALF)
    module = induce(spec, 1).module
    for e in range(-2, 3):
        z = module.lowest(e)
        for kind in Kind:
            image = module.act(Generator(kind, 0), z)
            expected = weyl_act(spec, kind, WeightVector.basis(e))
            assert {key.exponent: c for key, c in image.items()} == dict(expected.items())


def test_positive_modes_annihilate_level_zero(w0_plus):
    module = induce(w0_plus, 1).module
    z = module.lowest(2)
    assert module.act(Generator(Kind.A, 1), z) == InducedVector()
    assert module.act(Generator(Kind.ASTAR, 2), z) == InducedVector()


def test_mode_cache_is_shared_by_equal_modules():
    spec = WeightModuleSpec(Family.V, 3)
    first, second = induce(spec, 1).module, induce(spec, 1).module
    assert first is not second
    assert first == second
    w = first.lowest(1)
    vertex_modes(J_VECTOR, 0, w, first)
    hits = _monomial_mode.cache_info().hits
    assert vertex_modes(J_VECTOR, 0, w, second) == w.scale(spec.j0_eigenvalue(1))
    assert _monomial_mode.cache_info().hits > hits
    assert _monomial_mode.cache_info().maxsize == 1 << 16


def test_strict_truncation_apply(w0_plus):
    truncation = induce(w0_plus, 0)
    key = truncation.basis()[0]
    with pytest.raises(WindowOverflowError):
        truncation.apply(Generator(Kind.A, -1), key, strict=True)


def test_action_matrix_triples(w0_plus):
    triples = induce(w0_plus.with_window(2), 0).action_matrix(Generator(Kind.ASTAR, 0))
    assert triples == sorted(triples)
    assert all(len(triple) == 3 for triple in triples)


@pytest.mark.parametrize("spec", all_specs(window=3), ids=str)
def test_zhu_zero_action_on_lowest_level(spec):
    module = induce(spec, 0).module
    states = (A_FIELD, ASTAR_FIELD, J_VECTOR, OMEGA)
    commutator = zhu_star(A_FIELD, ASTAR_FIELD, 0) - zhu_star(ASTAR_FIELD, A_FIELD, 0)
    for e in (-1, 0, 1):
        if not spec.in_domain(e):
            continue
        z = module.lowest(e)
        assert zero_mode(commutator, z, module) == z
        for u, w in product(states, repeat=2):
            lhs = zero_mode(zhu_star(u, w, 0), z, module)
            assert lhs == zero_mode(u, zero_mode(w, z, module), module)


def test_borcherds_samples_pass(w0_minus):
    report = borcherds_samples(induce(w0_minus.with_window(2), 1), orders=range(-1, 1))
    assert report.passed, report.violations
    assert report.checked > 0


@pytest.mark.parametrize("ell", [1, 2, -1])
def test_delta_examples(ell):
    assert delta_operator(ell, VACUUM).coefficient(0) == VACUUM
    assert delta_operator(ell, VACUUM).powers() == [0]
    assert delta_operator(ell, A_FIELD).coefficient(ell) == A_FIELD
    expansion = delta_operator(ell, J_VECTOR)
    assert expansion.coefficient(0) == J_VECTOR
    assert expansion.coefficient(-1) == VACUUM.scale(ell)


def test_delta_on_conformal_vector():
    ell = 2
    expansion = delta_operator(ell, OMEGA)
    assert expansion.coefficient(0) == OMEGA
    assert expansion.coefficient(-1) == J_VECTOR.scale(-ell)
    assert expansion.coefficient(-2) == VACUUM.scale(-Fraction(ell * (ell + 1), 2))


def test_delta_inverse():
    for ell in (1, -2):
        for mono in fock_basis(3, max_zero_modes=1):
            v = FockVector.basis(mono)
            assert delta_operator(ell, v).apply_delta(-ell).terms == {0: v}


def test_delta_translation_identity():
    for mono in fock_basis(3, max_zero_modes=1):
        v = FockVector.basis(mono)
        expansion = delta_operator(1, v)
        bracket = expansion.map(translation) - delta_operator(1, translation(v))
        assert bracket == -expansion.derivative()


@pytest.mark.parametrize("ell", [1, -1, 2])
@pytest.mark.parametrize("name", ["a", "a*", "J", "omega"])
def test_delta_conjugates_vertex_operators(ell, name):
    v = {"a": A_FIELD, "a*": ASTAR_FIELD, "J": J_VECTOR, "omega": OMEGA}[name]
    for mono in fock_basis(2, max_zero_modes=1):
        w = FockVector.basis(mono)
        for n in range(-2, 3):
            defect = delta_conjugation_defect(ell, v, n, w)
            assert not defect, f"{name}_{n} on {mono}: {defect}"


def test_flowed_module_basics():
    truncation = induce(WeightModuleSpec(Family.W0_MINUS, 3), 1)
    flowed = spectral_flow_module(truncation, 2)
    assert isinstance(flowed, FlowedTruncation)
    assert spectral_flow_module(flowed, -1).ell == 1
    key = truncation.basis()[0]
    g = Generator(Kind.A, 0)
    assert flowed.module.act_key(g, key) == truncation.module.act_key(Generator(Kind.A, 2), key)
    assert flowed.module.charge(key) == truncation.module.charge(key) + 2
    identity = spectral_flow_module(truncation, 0)
    assert identity.module.act_key(g, key) == truncation.module.act_key(g, key)


@pytest.mark.parametrize("ell, k", list(product(range(-2, 3), repeat=2)))
def test_flows_compose(ell, k):
    truncation = induce(WeightModuleSpec(Family.W0_MINUS, 2), 1)
    nested = spectral_flow_module(spectral_flow_module(truncation, k), ell).module
    direct = spectral_flow_module(truncation, ell + k).module
    stacked = FlowedModule(FlowedModule(truncation.module, k), ell)
    generators = [Generator(kind, n) for kind in Kind for n in range(-2, 3)]
    for key in truncation.basis():
        for g in generators:
            expected = direct.act_key(g, key)
            assert nested.act_key(g, key) == expected
            assert stacked.act_key(g, key) == expected
        assert stacked.charge(key) == direct.charge(key)
    for key in truncation.sample_keys(max_level=0):
        w = InducedVector.basis(key)
        for u in (A_FIELD, ASTAR_FIELD, J_VECTOR):
            for n in range(-1, 2):
                assert vertex_modes(u, n, w, stacked) == vertex_modes(u, n, w, direct)


@pytest.mark.parametrize("ell", [-1, 1, 2])
def test_verify_flow(ell):
    flowed = spectral_flow_module(induce(WeightModuleSpec(Family.W0_PLUS, 2), 1), ell)
    report = verify_flow(flowed, indices=range(-1, 2), virasoro_indices=range(-1, 2), max_level=0)
    assert report.passed, report.failures
    assert set(report.checks) == {
        "generator_modes", "weyl_commutator", "heisenberg", "flowed_charge", "l0_shift", "virasoro",
    }


def test_vertex_interlocking_of_inductions():
    irreducible = vertex_weakly_interlocked(induce(WeightModuleSpec(Family.V, 4), 1))
    assert irreducible.weakly_interlocked is True
    for family in (Family.W0_PLUS, Family.W0_MINUS):
        truncation = induce(WeightModuleSpec(family, 4), 1)
        report = vertex_weakly_interlocked(truncation)
        assert report.weakly_interlocked is False
        assert report.consistent_with_base
        flowed = vertex_weakly_interlocked(spectral_flow_module(truncation, 2))
        assert flowed.weakly_interlocked is False
        assert flowed.as_dict()["ell"] == 2
