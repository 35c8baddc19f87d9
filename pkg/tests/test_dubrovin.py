"""Quantum product and Dubrovin matrices: axioms, conventions, truncation."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bigqh.dubrovin import (QuantumClassVector, TruncationExceedsPotentialError,
                            dubrovin_class, dubrovin_matrix, matrix_text,
                            quantum_product, truncate_matrix)
from bigqh.schubert import CODEGREES, DIM, cup
from bigqh.series import QSeries, TPoly


def basis_product(i, j, p, alpha):
    return quantum_product(QuantumClassVector.basis(i),
                           QuantumClassVector.basis(j), p, alpha)


def random_vector(rng) -> QuantumClassVector:
    return QuantumClassVector.from_polys(
        [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(DIM)])


def test_unit_axiom(potential2):
    rng = random.Random(31)
    unit = QuantumClassVector.basis(0)
    for _ in range(10):
        v = random_vector(rng)
        for alpha in (1, 2, 3):
            got = quantum_product(unit, v, potential2, alpha)
            want = QuantumClassVector(tuple(c.truncate(alpha) for c in v.coeffs))
            assert got == want


def test_commutativity(potential2):
    for i in range(DIM):
        for j in range(i, DIM):
            assert basis_product(i, j, potential2, 2) == basis_product(j, i, potential2, 2)


def test_q_to_zero_recovers_cup(potential2):
    for i in range(DIM):
        for j in range(DIM):
            prod = basis_product(i, j, potential2, 1)
            classical = cup(i, j)
            for f in range(DIM):
                got = prod.coeffs[f]
                assert got.coefficient(0) == TPoly.constant(classical.coeffs[f])
                assert got.q_degree() == 0


def test_sigma1_squared_classical(potential2):
    prod = basis_product(1, 1, potential2, 2)
    assert prod.coeffs[2].coefficient(0) == TPoly.one()
    assert prod.coeffs[3].coefficient(0) == TPoly.one()


def test_sigma1_sigma4_at_origin(potential2):
    prod = basis_product(1, 4, potential2, 2)
    at0 = [c.substitute({2: 0, 3: 0, 4: 0, 5: 0}) for c in prod.coeffs]
    assert at0[5] == QSeries.one().truncate(2)
    assert at0[0] == QSeries.from_tpoly(TPoly.one(), 1, 2)
    for f in (1, 2, 3, 4):
        assert at0[f].is_zero()


def test_truncation_guard(potential2):
    with pytest.raises(TruncationExceedsPotentialError):
        quantum_product(QuantumClassVector.basis(1), QuantumClassVector.basis(1),
                        potential2, potential2.max_degree + 2)
    with pytest.raises(TruncationExceedsPotentialError):
        dubrovin_matrix(potential2, potential2.max_degree + 2)


def test_dubrovin_class_examples():
    k0 = dubrovin_class(t2=0, t3=0, t4=0, t5=0)
    assert k0.coeffs[1] == QSeries.constant(4)
    for f in (0, 2, 3, 4, 5):
        assert k0.coeffs[f].is_zero()

    k4 = dubrovin_class(t2=0, t3=0, t5=0)
    assert k4.coeffs[4] == QSeries.from_tpoly(TPoly.var(4) * -2)

    k_t0 = dubrovin_class(t0=None, t2=0, t3=0, t4=0, t5=0)
    assert k_t0.coeffs[0] == QSeries.from_tpoly(TPoly.var(0))

    sym = dubrovin_class()
    assert sym.coeffs[2] == QSeries.from_tpoly(TPoly.var(2) * -1)
    assert sym.coeffs[5] == QSeries.from_tpoly(TPoly.var(5) * -3)
    # weights follow (2 - codegree)/2
    for j, w in ((2, -1), (3, -1), (4, -2), (5, -3)):
        assert (2 - CODEGREES[j]) // 2 == w


def test_matrix_column_convention(potential2):
    m = dubrovin_matrix(potential2, 2, t2=0, t3=0, t4=0, t5=0)
    assert m.entry(0, 4) == QSeries.from_tpoly(TPoly.constant(4), 1)
    assert m.entry(1, 0) == QSeries.constant(4)


def test_matrix_classical_part_is_cup_action(potential2, full_matrix):
    kvec = dubrovin_class()
    for j in range(DIM):
        for f in range(DIM):
            expected = TPoly.zero()
            for i in range(DIM):
                ki = kvec.coeffs[i].coefficient(0)
                if not ki.is_zero():
                    expected = expected + ki * cup(i, j).coeffs[f]
            assert full_matrix.entry(f, j).coefficient(0) == expected


def test_translation_structure(potential2):
    shifted = dubrovin_matrix(potential2, 2, t0=None)
    base = dubrovin_matrix(potential2, 2)
    assert shifted == base.add_identity(TPoly.var(0))


def test_grading_invariant(full_matrix):
    """Every monomial c * t^n * q^d in entry (f, j) is homogeneous for
    deg t_m = 2 - codeg(m), deg q = 8: total degree 2 + codeg(j) - codeg(f)."""
    for f in range(DIM):
        for j in range(DIM):
            for d, poly in full_matrix.entry(f, j).items():
                for exps, _ in poly.terms():
                    deg = sum(n * (2 - CODEGREES[m]) for m, n in enumerate(exps)) + 8 * d
                    assert deg == 2 + CODEGREES[j] - CODEGREES[f], (f, j, d, exps)


def test_truncate_matrix(full_matrix):
    zero = truncate_matrix(full_matrix, 0)
    assert all(zero.entry(f, j).is_zero() for f in range(DIM) for j in range(DIM))

    classical = truncate_matrix(full_matrix, 1)
    for f in range(DIM):
        for j in range(DIM):
            assert classical.entry(f, j).q_degree() == 0

    twice = truncate_matrix(truncate_matrix(full_matrix, 2), 2)
    assert twice == truncate_matrix(full_matrix, 2)
    assert twice.alpha == 2


def test_entries_are_exact_polynomials(full_matrix):
    for f in range(DIM):
        for j in range(DIM):
            assert full_matrix.entry(f, j).truncation_order is None


def test_matrix_text_renders(family_matrices):
    text = matrix_text(family_matrices[2])
    lines = text.splitlines()
    assert len(lines) == 6
    assert "1/6t2^3q" in text


def test_matrix_json_round_trip(family_matrices):
    data = family_matrices[4].to_json()
    assert data["alpha"] == 2
    assert data["basis"][4] == "2,1"
    entry = QSeries.from_json(data["entries"][0][1])
    assert entry == family_matrices[4].entry(0, 1)
