# tests/test_fock_module.py
from fractions import Fraction
from itertools import product

import pytest

from weylzhu.errors import GradingError, InvalidParameterError
from weylzhu.fock_module import (
    ASTAR_FIELD,
    A_FIELD,
    J_VECTOR,
    OMEGA,
    VACUUM,
    Bipartition,
    FockVector,
    PBWMonomial,
    act,
    bigrade,
    binomial,
    bipartition_count,
    borcherds_defect,
    character_series,
    commutator_defect,
    enumerate_bipartitions,
    fock_basis,
    graded_dimension,
    heisenberg_mode,
    iter_monomials,
    translation,
    vertex_modes,
    virasoro_mode,
    zero_mode,
    zhu_circ,
    zhu_star,
)
from weylzhu.mode_algebra import a, astar
from weylzhu.verification import partition_pair_counts


def test_binomial_extends_to_negative_tops():
    assert binomial(5, 2) == 10
    assert binomial(-1, 3) == -1
    assert binomial(-2, 2) == 3
    assert binomial(4, -1) == 0


def test_monomial_validation():
    with pytest.raises(InvalidParameterError, match="index <= -1"):
        PBWMonomial((0,), ())
    with pytest.raises(InvalidParameterError, match="index <= 0"):
        PBWMonomial((), (1,))


def test_monomials_store_sorted_indices():
    assert PBWMonomial((-1, -3), (0, -2)) == PBWMonomial((-3, -1), (-2, 0))


@pytest.mark.parametrize(
    "g, v, expected",
    [
        (a(0), VACUUM, FockVector()),
        (astar(1), VACUUM, FockVector()),
        (a(1), FockVector.from_modes([astar(-1)]), VACUUM),
        (astar(1), A_FIELD, -VACUUM),
    ],
)
def test_act_examples(g, v, expected):
    assert act(g, v) == expected


def test_from_word_builds_pbw_monomials():
    v = FockVector.from_word("a(-1) a*(0)")
    assert v == J_VECTOR
    assert FockVector.from_word("a*(0) a(-1)") == J_VECTOR


def test_bigrade():
    v = FockVector.basis(PBWMonomial((-2,), (-1, 0, 0, 0)))
    assert set(bigrade(v)) == {(3, 3)}
    assert set(bigrade(VACUUM)) == {(0, 0)}
    assert set(bigrade(OMEGA + A_FIELD)) == {(2, 0), (1, -1)}


def test_act_shifts_bigrading(small_basis):
    for v, (g, shift) in product(small_basis, [(a(-2), (2, -1)), (astar(-1), (1, 1))]):
        (weight, charge), = bigrade(v)
        assert set(bigrade(act(g, v))) == {(weight + shift[0], charge + shift[1])}


def test_enumerate_bipartitions_small_cases():
    assert enumerate_bipartitions(0) == [Bipartition()]
    assert len(enumerate_bipartitions(1)) == 2
    assert Bipartition((4, 1), (2, 2, 1)) in enumerate_bipartitions(10)
    assert str(Bipartition((2, 1), (1,))) == "((2,1),(1))"


def test_bipartition_counts_match_series_oracle():
    assert [bipartition_count(d) for d in range(7)] == [1, 2, 5, 10, 20, 36, 65]
    assert [bipartition_count(d) for d in range(13)] == partition_pair_counts(12)


def test_bipartitions_are_unique_and_sorted():
    bps = enumerate_bipartitions(6)
    assert len(set(bps)) == len(bps)
    assert bps == sorted(bps)
    assert all(bp.total == 6 for bp in bps)


def test_bipartition_rejects_bad_parts():
    with pytest.raises(InvalidParameterError, match="weakly decreasing"):
        Bipartition((1, 2), ())
    with pytest.raises(InvalidParameterError):
        enumerate_bipartitions(-1)


@pytest.mark.parametrize("d, j, expected", [(0, 0, 1), (0, 3, 1), (0, -1, 0), (1, -2, 0)])
def test_graded_dimension_examples(d, j, expected):
    assert graded_dimension(d, j) == expected


def test_graded_dimension_rejects_negative_weight():
    with pytest.raises(InvalidParameterError, match="non-negative"):
        graded_dimension(-1, 0)


def test_iter_monomials_respects_charge():
    for mono in iter_monomials(3, -1):
        assert mono.weight == 3
        assert mono.charge == -1


def test_character_series_matches_enumeration():
    series = character_series(5, 5)
    for d in range(6):
        for j in range(-5, 6):
            assert series.coefficient(d, j) == graded_dimension(d, j)


def test_character_series_metadata_and_rows():
    series = character_series(3, 4)
    assert series.prefactor_exponent == Fraction(-1, 12)
    assert series.metadata()["qj_convention"].startswith("q_J -> q_J^-1")
    assert all(series.coefficient(0, r) == 1 for r in range(5))
    assert series.coefficient(2, -3) == 0
    frame = series.to_frame()
    assert list(frame.columns) == ["d", "j", "coefficient"]
    assert len(frame) == 4 * (3 + 4 + 1)


def test_character_series_validates_window():
    with pytest.raises(InvalidParameterError, match="j_window"):
        character_series(4, 3)


def test_generator_fields_act_as_modes(small_basis):
    for v in small_basis:
        for k in range(-2, 3):
            assert vertex_modes(A_FIELD, k, v) == act(a(k), v)
            assert vertex_modes(ASTAR_FIELD, k, v) == act(astar(k + 1), v)
            assert vertex_modes(VACUUM, k, v) == (v if k == -1 else FockVector())


def test_conformal_vector_products():
    assert vertex_modes(OMEGA, 2, OMEGA) == FockVector()
    assert vertex_modes(OMEGA, 3, OMEGA) == VACUUM
    assert vertex_modes(OMEGA, 1, OMEGA) == OMEGA.scale(2)


def test_l0_measures_weight(small_basis):
    for v in small_basis:
        (weight, _), = bigrade(v)
        assert virasoro_mode(0, v) == v.scale(weight)


def test_j0_measures_charge(small_basis):
    for v in small_basis:
        (_, charge), = bigrade(v)
        assert heisenberg_mode(0, v) == v.scale(charge)


def test_virasoro_relations_at_central_charge_two(small_basis):
    for v in small_basis:
        for m, n in product(range(-2, 3), repeat=2):
            lhs = virasoro_mode(m, virasoro_mode(n, v)) - virasoro_mode(n, virasoro_mode(m, v))
            rhs = virasoro_mode(m + n, v).scale(m - n)
            if m + n == 0:
                rhs = rhs + v.scale(Fraction(m ** 3 - m, 6))
            assert lhs == rhs, (m, n, v)


def test_heisenberg_relations(small_basis):
    for v in small_basis:
        for m, n in product(range(-2, 3), repeat=2):
            lhs = heisenberg_mode(m, heisenberg_mode(n, v)) - heisenberg_mode(n, heisenberg_mode(m, v))
            assert lhs == (v.scale(-m) if m + n == 0 else FockVector())


def test_translation_is_minus_two_mode():
    for u in (A_FIELD, ASTAR_FIELD, J_VECTOR, OMEGA):
        assert translation(u) == vertex_modes(u, -2, VACUUM)


@pytest.mark.parametrize("p, q", [(-1, 0), (0, -1), (1, -2), (-2, 1)])
def test_borcherds_identity_on_fock_module(p, q):
    for u, v in product((A_FIELD, ASTAR_FIELD), repeat=2):
        for w in (VACUUM, A_FIELD, J_VECTOR):
            assert not borcherds_defect(u, v, p, q, w)


GENERATING_FIELDS = {"a": A_FIELD, "a*": ASTAR_FIELD, "J": J_VECTOR, "omega": OMEGA}


@pytest.mark.parametrize("u_name, w_name", list(product(GENERATING_FIELDS, repeat=2)))
def test_commutator_formula(small_basis, u_name, w_name):
    u, w = GENERATING_FIELDS[u_name], GENERATING_FIELDS[w_name]
    for v in small_basis:
        for p, q in product(range(-3, 4), repeat=2):
            assert not commutator_defect(u, w, p, q, v), f"[{u_name}_{p}, {w_name}_{q}] on {v}"


def test_zero_mode_of_vacuum_is_identity():
    assert zero_mode(VACUUM, OMEGA) == OMEGA


def test_zhu_products_with_vacuum():
    for v in (A_FIELD, J_VECTOR, OMEGA):
        for n in range(2):
            assert zhu_star(VACUUM, v, n) == v


def test_zhu_star_of_generators():
    assert zhu_star(A_FIELD, ASTAR_FIELD, 0) == J_VECTOR + VACUUM
    assert zhu_star(ASTAR_FIELD, A_FIELD, 0) == J_VECTOR


def test_zhu_circ_expands_binomially():
    assert zhu_circ(A_FIELD, ASTAR_FIELD, 0) == vertex_modes(A_FIELD, -2, ASTAR_FIELD) + vertex_modes(
        A_FIELD, -1, ASTAR_FIELD
    )


def test_zhu_products_reject_bad_input():
    with pytest.raises(InvalidParameterError, match="n >= 0"):
        zhu_star(A_FIELD, A_FIELD, -1)
    with pytest.raises(GradingError, match="L0-homogeneous"):
        zhu_circ(A_FIELD + OMEGA, VACUUM, 0)


def test_fock_basis_bounds():
    basis = fock_basis(2, max_zero_modes=1)
    assert all(mono.weight <= 2 and mono.zero_modes <= 1 for mono in basis)
    assert PBWMonomial((-1,), (-1,)) in basis
    with pytest.raises(InvalidParameterError):
        fock_basis(-1)
