"""Acceptance suite: one test per quantitative exit criterion, each printing a
pass/fail line and enforcing its stated time budget (run with -s to see them).

Criterion 3 compares the four alpha=2 single-parameter matrices against the
transcribed reference matrices.  The t2/t5 families match entry-for-entry.
For the t3/t4 families the transcription omits six quantum entries that
associativity of the product forces (they are exactly the images of verified
t2-family entries under the duality exchanging the two middle Schubert
classes); the entry-for-entry comparison for those two families is therefore
kept as a strict xfail documenting the discrepancy, while the sound content
(every nonzero transcribed entry, plus the duality-corrected full matrices)
is asserted green.  Details: notes/decisions.md (outside the package).
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from itertools import permutations

import pytest

from bigqh.dubrovin import (QuantumClassVector, dubrovin_matrix, matrix_text,
                            quantum_product, truncate_matrix)
from bigqh.potential import build_potential, solve_wdvv, wdvv_residuals
from bigqh.schubert import DIM, DUALITY_PERMUTATION
from bigqh.series import QSeries, TPoly
from bigqh.spectral import SimplicityClass, char_poly, classify, discriminant, numeric_spectrum

T2, T3, T4, T5 = (TPoly.var(i) for i in (2, 3, 4, 5))
FIGURE_POINTS = (0.5 + 1j, 1 + 2j, 1.5 + 3j)
ROOT8 = 4 * math.sqrt(2)


def _report(name: str, ok: bool, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    line = f"[{tag}] {name}"
    if detail:
        line += f" -- {detail}"
    print(line)


def _q1(p: TPoly) -> QSeries:
    return QSeries.from_tpoly(p, 1)


def _mat(rows) -> list:
    out = []
    for row in rows:
        cells = []
        for c in row:
            if isinstance(c, QSeries):
                cells.append(c)
            elif isinstance(c, TPoly):
                cells.append(QSeries.from_tpoly(c))
            else:
                cells.append(QSeries.constant(c))
        out.append(cells)
    return out


TRANSCRIBED = {
    2: _mat([
        [0, 0, 0, _q1(T2 * 3), _q1(TPoly.constant(4)), 0],
        [4, 0, 0, _q1(T2 * T2), _q1(T2 * 3), _q1(TPoly.constant(4))],
        [T2 * -1, 4, 0, 0, 0, 0],
        [0, 4, 0, _q1(T2 * T2 * T2 * Fraction(1, 6)), _q1(T2 * T2), _q1(T2 * 3)],
        [0, T2 * -1, 4, 4, 0, 0],
        [0, 0, T2 * -1, 0, 4, 0]]),
    3: _mat([
        [0, 0, _q1(T3 * 3), 0, _q1(TPoly.constant(4)), 0],
        [4, 0, 0, 0, 0, _q1(TPoly.constant(4))],
        [0, 4, 0, 0, 0, _q1(T3 * 3)],
        [T3 * -1, 4, 0, 0, 0, 0],
        [0, T3 * -1, 4, 4, 0, 0],
        [0, 0, 0, T3 * -1, 4, 0]]),
    4: _mat([
        [0, _q1(T4 * 2), 0, 0, _q1(TPoly.constant(4)), 0],
        [4, 0, _q1(T4 * 2), 0, 0, _q1(TPoly.constant(4))],
        [0, 4, 0, 0, _q1(T4 * 2), 0],
        [0, 4, 0, 0, 0, 0],
        [T4 * -2, 0, 4, 4, 0, _q1(T4 * 2)],
        [0, T4 * -2, 0, 0, 4, 0]]),
    5: _mat([
        [0, 0, 0, 0, _q1(TPoly.constant(4)), 0],
        [4, _q1(T5), 0, 0, 0, _q1(TPoly.constant(4))],
        [0, 4, 0, _q1(T5), 0, 0],
        [0, 4, _q1(T5), 0, 0, 0],
        [0, 0, 4, 4, _q1(T5), 0],
        [T5 * -3, 0, 0, 0, 4, 0]]),
}

# entries the transcription leaves at zero but associativity forces
TRANSCRIPTION_GAPS = {
    3: {(1, 2): _q1(T3 * T3), (1, 4): _q1(T3 * 3),
        (2, 2): _q1(T3 * T3 * T3 * Fraction(1, 6)), (2, 4): _q1(T3 * T3)},
    4: {(1, 3): _q1(T4 * 2), (3, 4): _q1(T4 * 2)},
}

DISC_COEFF_Q8 = 1208925819614629174706176        # 2**80
DISC_COEFF_Q9 = 1888946593147858085478400        # 25 * 2**76


@pytest.fixture(scope="module")
def fresh_table2():
    return solve_wdvv(2)


@pytest.fixture(scope="module")
def fresh_potential(fresh_table2):
    return build_potential(fresh_table2)


@pytest.fixture(scope="module")
def families(fresh_potential):
    out = {}
    for idx in (2, 3, 4, 5):
        coords = {f"t{i}": (None if i == idx else 0) for i in (2, 3, 4, 5)}
        out[idx] = dubrovin_matrix(fresh_potential, 2, **coords)
    return out


@pytest.fixture(scope="module")
def discriminants(families):
    return {idx: discriminant(char_poly(m)) for idx, m in families.items()}


def test_c01_gw_golden_table():
    start = time.perf_counter()
    table = solve_wdvv(1)
    elapsed = time.perf_counter() - start
    listed = {(5, 0, 0, 0): 0, (4, 1, 0, 0): 0, (3, 2, 0, 0): 1, (3, 0, 1, 0): 0,
              (2, 1, 1, 0): 1, (2, 0, 0, 1): 0, (1, 1, 0, 1): 1, (1, 0, 2, 0): 1,
              (0, 0, 1, 1): 1}
    try:
        for exps, expected in listed.items():
            assert table.value(*exps) == expected, exps
        assert sum(1 for v in listed.values() if v == 1) == 5
        assert elapsed < 1.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 1 (degree-1 golden table)", False)
        raise
    _report("criterion 1 (degree-1 golden table)", True, f"{elapsed:.3f}s")


def test_c02_wdvv_consistency_degree2():
    start = time.perf_counter()
    table = solve_wdvv(2)
    potential = build_potential(table)
    residuals = wdvv_residuals(potential, alpha=3)
    elapsed = time.perf_counter() - start
    try:
        assert table.stats[1].inconsistent == 0
        assert table.stats[2].inconsistent == 0
        assert residuals == {}, f"{len(residuals)} violated quadruples"
        assert elapsed < 30.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 2 (degree-2 WDVV consistency)", False)
        raise
    _report("criterion 2 (degree-2 WDVV consistency)", True,
            f"{elapsed:.3f}s, residual zero on all 1296 quadruples mod q^3")


def test_c03_specialized_matrices_recomputed(fresh_table2):
    start = time.perf_counter()
    potential = build_potential(fresh_table2)  # cold caches for honest timing
    built = {}
    for idx in (2, 3, 4, 5):
        coords = {f"t{i}": (None if i == idx else 0) for i in (2, 3, 4, 5)}
        built[idx] = dubrovin_matrix(potential, 2, **coords)
    elapsed = time.perf_counter() - start
    try:
        # t2 and t5 families: entry-for-entry against the transcription
        for idx in (2, 5):
            for f in range(DIM):
                for j in range(DIM):
                    assert built[idx].entry(f, j) == TRANSCRIBED[idx][f][j], (idx, f, j)
        # t3/t4 families: every nonzero transcribed entry is reproduced, and
        # the only differences are the six documented gap entries
        for idx in (3, 4):
            gaps = TRANSCRIPTION_GAPS[idx]
            for f in range(DIM):
                for j in range(DIM):
                    ours = built[idx].entry(f, j)
                    gold = TRANSCRIBED[idx][f][j]
                    if (f, j) in gaps:
                        assert gold.is_zero()
                        assert ours == gaps[(f, j)], (idx, f, j)
                    else:
                        assert ours == gold, (idx, f, j)
        # duality: the corrected t3 family is the middle-class swap image of
        # the verified t2 family, and the t4 family is swap-invariant
        perm = DUALITY_PERMUTATION
        swap = {2: TPoly.var(3), 3: TPoly.var(2)}
        for f in range(DIM):
            for j in range(DIM):
                image = built[2].entry(perm[f], perm[j]).substitute(swap)
                assert built[3].entry(f, j) == image, (f, j)
                t4_image = built[4].entry(perm[f], perm[j])
                assert built[4].entry(f, j) == t4_image, (f, j)
        assert elapsed < 5.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 3 (specialized matrices, recomputed)", False)
        raise
    _report("criterion 3 (specialized matrices, recomputed)", True,
            f"{elapsed:.3f}s; t2/t5 exact, t3/t4 exact up to six documented "
            "transcription gaps")


@pytest.mark.xfail(strict=True, reason="the transcribed t3/t4 reference matrices "
                   "omit six quantum entries that associativity of the product "
                   "forces; the recomputed matrices are bound by the green half "
                   "of criterion 3 -- see notes/decisions.md")
def test_c03_transcribed_t3_t4_entry_for_entry(families):
    mismatches = []
    for idx in (3, 4):
        for f in range(DIM):
            for j in range(DIM):
                if families[idx].entry(f, j) != TRANSCRIBED[idx][f][j]:
                    mismatches.append((idx, f, j))
    _report("criterion 3 (t3/t4 transcription, entry-for-entry)",
            not mismatches, f"{len(mismatches)} known gap entries" if mismatches else "")
    assert not mismatches, mismatches


def test_c04_exact_discriminants(families):
    start = time.perf_counter()
    results = {idx: discriminant(char_poly(m)) for idx, m in families.items()}
    elapsed = time.perf_counter() - start
    try:
        d2 = results[2]
        assert d2.valuation == 8
        assert d2.value.coefficient(8) == TPoly.monomial((0, 0, 2, 0, 0, 0), -DISC_COEFF_Q8)
        d3 = results[3]
        assert d3.valuation == 8
        assert d3.value.coefficient(8) == TPoly.monomial((0, 0, 0, 2, 0, 0), -DISC_COEFF_Q8)
        assert results[4].value.is_zero()
        d5 = results[5]
        assert d5.valuation == 9
        assert d5.value.coefficient(9) == TPoly.monomial((0, 0, 0, 0, 0, 2), DISC_COEFF_Q9)
        assert elapsed < 60.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 4 (exact discriminants)", False)
        raise
    _report("criterion 4 (exact discriminants)", True,
            f"{elapsed:.3f}s; -2^80 t^2 q^8 (t2,t3), 0 (t4), 25*2^76 t5^2 q^9 (t5)")


def test_c05_decoupling_verdicts(families):
    try:
        assert classify(families[2], 2).verdict == SimplicityClass.TRUNCATION_SIMPLE
        assert classify(families[3], 2).verdict == SimplicityClass.TRUNCATION_SIMPLE
        assert classify(families[5], 2).verdict == SimplicityClass.TRUNCATION_SIMPLE
        assert classify(families[4], 2).verdict == SimplicityClass.TRUNCATION_NONSIMPLE
    except AssertionError:
        _report("criterion 5 (decoupling verdicts)", False)
        raise
    _report("criterion 5 (decoupling verdicts)", True,
            "t2/t3/t5 TRUNCATION_SIMPLE, t4 TRUNCATION_NONSIMPLE")


def test_c06_k0_spectrum(fresh_potential):
    m0 = dubrovin_matrix(fresh_potential, 2, t2=0, t3=0, t4=0, t5=0)
    start = time.perf_counter()
    sample = numeric_spectrum(m0, (0,) * 6, 1.0)
    elapsed = time.perf_counter() - start
    expected = [ROOT8, -ROOT8, ROOT8 * 1j, -ROOT8 * 1j, 0, 0]
    try:
        worst = _best_match_distance(sample.eigenvalues, expected)
        assert worst <= 1e-9, worst
        zeros = sum(1 for ev in sample.eigenvalues if abs(ev) <= 1e-9)
        assert zeros == 2, zeros
        assert elapsed < 0.1, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 6 (classical spectrum at the origin)", False)
        raise
    _report("criterion 6 (classical spectrum at the origin)", True,
            f"{elapsed * 1000:.1f}ms; +-4sqrt2, +-4sqrt2 i, 0 (x2)")


def _best_match_distance(a, b):
    return min(max(abs(x - y) for x, y in zip(a, perm))
               for perm in permutations(b))


def test_c07_translation_lemma(fresh_potential):
    shifted = dubrovin_matrix(fresh_potential, 2, t0=None)
    base = dubrovin_matrix(fresh_potential, 2)
    rng = random.Random(271828)
    try:
        for _ in range(20):
            t0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            that = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                    for _ in range(4)]
            tvals = [0j, 0j] + that
            eig_base = numeric_spectrum(base, tvals, 1.0).eigenvalues
            eig_shift = numeric_spectrum(shifted, [t0, 0j] + that, 1.0).eigenvalues
            translated = [ev - t0 for ev in eig_shift]
            assert _best_match_distance(eig_base, translated) <= 1e-9
    except AssertionError:
        _report("criterion 7 (translation by t0)", False)
        raise
    _report("criterion 7 (translation by t0)", True, "20 random samples within 1e-9")


def test_c08_associativity_all_triples(fresh_potential):
    start = time.perf_counter()
    basis = [QuantumClassVector.basis(i) for i in range(DIM)]
    pair = {}
    for i in range(DIM):
        for j in range(DIM):
            pair[(i, j)] = quantum_product(basis[i], basis[j], fresh_potential, 2)
    failures = 0
    for i in range(DIM):
        for j in range(DIM):
            for k in range(DIM):
                left = quantum_product(pair[(i, j)], basis[k], fresh_potential, 2)
                right = quantum_product(basis[i], pair[(j, k)], fresh_potential, 2)
                if left != right:
                    failures += 1
    elapsed = time.perf_counter() - start
    try:
        assert failures == 0, f"{failures} of 216 triples"
        assert elapsed < 60.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 8 (associativity, 216 triples mod q^2)", False)
        raise
    _report("criterion 8 (associativity, 216 triples mod q^2)", True,
            f"{elapsed:.3f}s, exact at symbolic bulk parameters")


def _mat2_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)]
            for i in range(2)]


def test_c09_truncation_depends_on_basis():
    q = QSeries.q_power
    zero = QSeries.zero()
    a = [[zero, q(1)], [q(1), zero]]
    b = [[zero, q(2)], [QSeries.one(), zero]]
    p = [[q(1), zero], [zero, q(2)]]  # conjugating similarity, A P = P B
    try:
        lhs = _mat2_mul(a, p)
        rhs = _mat2_mul(p, b)
        assert lhs == rhs
        trunc = lambda m, alpha: [[e.truncate(alpha, keep_marker=False) for e in row]
                                  for row in m]
        assert trunc(a, 2) == a          # energy below 2 everywhere
        assert trunc(b, 2) != b          # loses the q^2 corner
        assert trunc(a, 2) != trunc(b, 2)
        assert trunc(b, 2) == [[zero, zero], [QSeries.one(), zero]]
    except AssertionError:
        _report("criterion 9 (truncation is basis-dependent)", False)
        raise
    _report("criterion 9 (truncation is basis-dependent)", True,
            "similar pair with unequal alpha=2 truncations")


def test_c10_figure_path_spectra(families):
    start = time.perf_counter()
    try:
        for idx in (2, 3, 5):
            for point in FIGURE_POINTS:
                tvals = [0j] * 6
                tvals[idx] = point
                evs = numeric_spectrum(families[idx], tvals, 1.0).eigenvalues
                gap = min(abs(a - b) for n, a in enumerate(evs) for b in evs[n + 1:])
                assert gap > 1e-6, (idx, point, gap)
        for point in FIGURE_POINTS:
            tvals = [0j] * 6
            tvals[4] = point
            evs = numeric_spectrum(families[4], tvals, 1.0).eigenvalues
            gap = min(abs(a - b) for n, a in enumerate(evs) for b in evs[n + 1:])
            assert gap < 1e-9, (point, gap)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"{elapsed:.3f}s"
    except AssertionError:
        _report("criterion 10 (figure-path spectra)", False)
        raise
    _report("criterion 10 (figure-path spectra)", True,
            f"{(time.perf_counter() - start) * 1000:.0f}ms; separation on t2/t3/t5, "
            "persistent double zero on t4")
