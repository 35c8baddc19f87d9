"""Exact and numeric spectral analysis of Dubrovin matrices.

Exact side: the characteristic polynomial det(lambda I - M) is expanded over
the commutative ring of q-series by a division-free minor-expansion DP, and
the discriminant is the Sylvester resultant Res(p, p') -- an 11x11 determinant
over the same ring, evaluated by fraction-free Bareiss elimination (every
division is exact by construction).  Sign convention: the Sylvester layout
puts the five shifted rows of p first, then the six rows of p'; this
reproduces the published signed values with no global flip.

Spectral simplicity of a finite-energy truncation is decided by the
q-valuation of the discriminant:

    discriminant == 0              -> TRUNCATION_NONSIMPLE
    nonzero below q^alpha          -> SIMPLE_CERTIFIED   (certifies the full operator)
    nonzero only at q^alpha and up -> TRUNCATION_SIMPLE  (full operator undecided)

Numeric side: eigenvalues via LAPACK's balanced Hessenberg reduction with
shifted QR iteration (numpy.linalg.eigvals), cross-checkable against
companion-matrix roots of the numerically evaluated characteristic
polynomial.  Samples carry a residual max_k |det(lambda_k I - A)| / max(1,
||A||_F)^6; a sample is rejected when it exceeds the bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .dubrovin import BASIS_LABELS, DubrovinMatrix, dubrovin_matrix, truncate_matrix
from .potential import Potential
from .schubert import DIM
from .series import QSeries, exact_div

RESIDUAL_BOUND = 1e-8
DEFAULT_TOL = 1e-9


class ConvergenceFailure(RuntimeError):
    """Eigenvalue iteration failed or the residual contract was violated."""

    def __init__(self, message: str, partial: Optional[Sequence[complex]] = None,
                 residual: Optional[float] = None):
        super().__init__(message)
        self.partial = tuple(partial) if partial is not None else None
        self.residual = residual


@dataclass(frozen=True)
class CharPoly:
    """Monic degree-6 polynomial lambda^6 + c5 lambda^5 + ... + c0."""

    coeffs: Tuple[QSeries, ...]  # (c0, ..., c5)

    def __post_init__(self):
        if len(self.coeffs) != DIM:
            raise ValueError("expected coefficients c0..c5")

    def all_coeffs_desc(self) -> List[QSeries]:
        """[1, c5, c4, c3, c2, c1, c0] -- descending powers of lambda."""
        return [QSeries.one()] + [self.coeffs[k] for k in range(DIM - 1, -1, -1)]

    def derivative_desc(self) -> List[QSeries]:
        """Coefficients of dp/dlambda, descending powers (degree 5)."""
        desc = self.all_coeffs_desc()
        return [desc[i] * (DIM - i) for i in range(DIM)]

    def evaluate(self, tvals: Sequence[complex], q: complex) -> np.ndarray:
        """Numeric descending coefficient vector of p."""
        return np.array([c.evaluate(tvals, q) for c in self.all_coeffs_desc()],
                        dtype=complex)

    def to_json(self) -> dict:
        return {"monic_degree": DIM,
                "coefficients": [c.to_json() for c in self.coeffs]}


def _lampoly_add(a: List[QSeries], b: List[QSeries]) -> List[QSeries]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else QSeries.zero()
        y = b[i] if i < len(b) else QSeries.zero()
        out.append(x + y)
    return out


def _lampoly_mul(a: List[QSeries], b: List[QSeries]) -> List[QSeries]:
    out = [QSeries.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def char_poly(m: DubrovinMatrix) -> CharPoly:
    """det(lambda I - M) by division-free expansion over the series ring.

    Minor DP over column subsets: level k holds the determinants of the
    submatrices on rows 0..k-1; 2^6 subsets, entries linear in lambda.
    Cofactor sign when adding row k and column c to a subset is
    (-1)^(k + #columns already below c).
    """
    a = [[[-m.entry(i, j).strip_truncation()] + ([QSeries.one()] if i == j else [])
          for j in range(DIM)] for i in range(DIM)]
    minors: Dict[int, List[QSeries]] = {0: [QSeries.one()]}
    for k in range(DIM):
        nxt: Dict[int, List[QSeries]] = {}
        for mask, det in minors.items():
            for c in range(DIM):
                if (mask >> c) & 1:
                    continue
                below = bin(mask & ((1 << c) - 1)).count("1")
                term = _lampoly_mul(a[k][c], det)
                if (k + below) % 2:
                    term = [-x for x in term]
                key = mask | (1 << c)
                nxt[key] = _lampoly_add(nxt[key], term) if key in nxt else term
        minors = nxt
    full = minors[(1 << DIM) - 1]
    full = full + [QSeries.zero()] * (DIM + 1 - len(full))
    if not (full[DIM] - QSeries.one()).is_zero():
        raise AssertionError("characteristic polynomial is not monic")
    return CharPoly(tuple(full[:DIM]))


def determinant(m: DubrovinMatrix) -> QSeries:
    """Exact determinant of the matrix itself (independent of char_poly)."""
    rows = [[m.entry(i, j).strip_truncation() for j in range(DIM)] for i in range(DIM)]
    return _bareiss(rows)


@dataclass(frozen=True)
class DiscriminantResult:
    value: QSeries
    valuation: Union[int, float]  # math.inf for the zero series

    def leading_coefficient(self):
        if self.value.is_zero():
            return None
        return self.value.coefficient(self.valuation)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(),
                "valuation": None if self.value.is_zero() else self.valuation}


def _size(s: QSeries) -> int:
    return sum(len(s.coefficient(d)) for d in s.degrees())


def _bareiss(rows: List[List[QSeries]]) -> QSeries:
    """Fraction-free determinant; divisions are exact in the series ring."""
    n = len(rows)
    m = [[e.strip_truncation() for e in row] for row in rows]
    sign = 1
    prev = QSeries.one()
    for k in range(n - 1):
        pivots = [(_size(m[r][k]), r) for r in range(k, n) if not m[r][k].is_zero()]
        if not pivots:
            return QSeries.zero()
        _, pr = min(pivots)
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev) if not num.is_zero() else num
            m[i][k] = QSeries.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(p_desc: List[QSeries], q_desc: List[QSeries]) -> List[List[QSeries]]:
    """Sylvester block layout, p-rows first: deg(q) rows of p, deg(p) rows of q."""
    dp, dq = len(p_desc) - 1, len(q_desc) - 1
    size = dp + dq
    rows = []
    for shift in range(dq):
        row = [QSeries.zero()] * size
        for i, c in enumerate(p_desc):
            row[shift + i] = c
        rows.append(row)
    for shift in range(dp):
        row = [QSeries.zero()] * size
        for i, c in enumerate(q_desc):
            row[shift + i] = c
        rows.append(row)
    return rows


def resultant(p_desc: List[QSeries], q_desc: List[QSeries]) -> QSeries:
    return _bareiss(sylvester_matrix(p_desc, q_desc))


def discriminant(p: CharPoly) -> DiscriminantResult:
    """Res(p, p') of the monic char poly and its lambda-derivative."""
    value = resultant(p.all_coeffs_desc(), p.derivative_desc())
    return DiscriminantResult(value=value, valuation=value.q_valuation())


class SimplicityClass(str, enum.Enum):
    SIMPLE_CERTIFIED = "SIMPLE_CERTIFIED"
    TRUNCATION_SIMPLE = "TRUNCATION_SIMPLE"
    TRUNCATION_NONSIMPLE = "TRUNCATION_NONSIMPLE"


@dataclass(frozen=True)
class SimplicityVerdict:
    verdict: SimplicityClass
    witness: DiscriminantResult

    def interpretation(self, alpha: int) -> str:
        """One-line reading of what the verdict says about the full operator."""
        if self.verdict is SimplicityClass.SIMPLE_CERTIFIED:
            return ("discriminant nonzero below q^%d: the untruncated operator "
                    "has simple spectrum" % alpha)
        if self.verdict is SimplicityClass.TRUNCATION_SIMPLE:
            return ("truncation has simple spectrum; for the untruncated "
                    "operator the discriminant valuation is >= %d, undecided"
                    % alpha)
        return ("truncation has non-simple spectrum; the untruncated operator "
                "is non-simple or has discriminant valuation >= %d" % alpha)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "discriminant": self.witness.to_json()}


def classify(m: DubrovinMatrix, alpha: int) -> SimplicityVerdict:
    """Decide spectral simplicity of the energy-alpha truncation.

    A nonzero discriminant below q^alpha certifies simplicity of the full
    operator as well; a discriminant supported only at q^alpha and above
    certifies the truncation but leaves the full operator undecided.

    At a symbolic parameter the discriminant is a polynomial in the bulk
    coordinates: nonzero means simple off a proper algebraic subset, and the
    witness's leading q-coefficient exhibits that exceptional locus as its
    zero set (e.g. a t2^2 factor pins the origin t2 = 0).
    """
    truncated = truncate_matrix(m, alpha)
    disc = discriminant(char_poly(truncated))
    if disc.value.is_zero():
        verdict = SimplicityClass.TRUNCATION_NONSIMPLE
    elif disc.valuation < alpha:
        verdict = SimplicityClass.SIMPLE_CERTIFIED
    else:
        verdict = SimplicityClass.TRUNCATION_SIMPLE
    return SimplicityVerdict(verdict=verdict, witness=disc)


# ---------------------------------------------------------------------------
# numeric spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumSample:
    """Six eigenvalues of a numerically specialized truncation, sorted by
    (real, imaginary), tagged with the parameter point that produced them."""

    cycle: Optional[str]
    t: complex
    q: complex
    alpha: Optional[int]
    eigenvalues: Tuple[complex, ...]
    residual: float

    def to_json(self) -> dict:
        return {
            "cycle": self.cycle,
            "t": [self.t.real, self.t.imag],
            "q": [self.q.real, self.q.imag],
            "alpha": self.alpha,
            "eigenvalues": [[ev.real, ev.imag] for ev in self.eigenvalues],
            "residual": self.residual,
        }


def _sorted_eigs(values) -> Tuple[complex, ...]:
    return tuple(sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag)))


def spectrum_residual(matrix: np.ndarray, eigenvalues: Sequence[complex]) -> float:
    scale = max(1.0, float(np.linalg.norm(matrix))) ** DIM
    worst = max(abs(np.linalg.det(ev * np.eye(DIM) - matrix)) for ev in eigenvalues)
    return float(worst / scale)


def numeric_spectrum(m: DubrovinMatrix, tvals: Sequence[complex], q: complex,
                     tol: float = RESIDUAL_BOUND, cycle: Optional[str] = None,
                     t_point: Optional[complex] = None) -> SpectrumSample:
    """Eigenvalues of the matrix specialized at complex coordinates.

    tvals are the six coordinate values used for evaluation; t_point is the
    single swept coordinate recorded in the sample (defaults to 0).
    """
    numeric = np.array(m.evaluate(tvals, q), dtype=complex)
    try:
        eigs = np.linalg.eigvals(numeric)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    eigs = _sorted_eigs(eigs)
    residual = spectrum_residual(numeric, eigs)
    if residual > tol:
        raise ConvergenceFailure(
            f"residual {residual:.3e} exceeds bound {tol:.1e}",
            partial=eigs, residual=residual)
    return SpectrumSample(cycle=cycle, t=complex(t_point if t_point is not None else 0),
                          q=complex(q), alpha=m.alpha, eigenvalues=eigs,
                          residual=residual)


def charpoly_spectrum(p: CharPoly, tvals: Sequence[complex], q: complex) -> Tuple[complex, ...]:
    """Companion-matrix route: roots of the numerically evaluated char poly."""
    return _sorted_eigs(np.roots(p.evaluate(tvals, q)))


@dataclass(frozen=True)
class SweepResult:
    cycle: str
    q: complex
    alpha: int
    reference: SpectrumSample
    samples: Tuple[SpectrumSample, ...]

    def to_json(self) -> dict:
        return {"cycle": self.cycle, "q": [self.q.real, self.q.imag],
                "alpha": self.alpha, "reference": self.reference.to_json(),
                "samples": [s.to_json() for s in self.samples],
                "trails": [[[ev.real, ev.imag] for ev in frame]
                           for frame in match_trails(self.samples)]}


def spectrum_sweep(cycle_index: int, path: Sequence[complex], q: complex,
                   alpha: int, p: Potential) -> SweepResult:
    """One sample per path point with the single bulk coordinate set, plus the
    zero reference sample once."""
    if cycle_index not in (2, 3, 4, 5):
        raise ValueError("bulk cycle index must be one of 2,3,4,5")
    if not path:
        raise ValueError("path must be non-empty")
    coords = {f"t{i}": (None if i == cycle_index else 0) for i in (2, 3, 4, 5)}
    matrix = dubrovin_matrix(p, alpha, **coords)
    label = BASIS_LABELS[cycle_index]
    reference = numeric_spectrum(matrix, (0,) * 6, q, cycle=label, t_point=0)
    samples = []
    for t in path:
        tvals = [0j] * 6
        tvals[cycle_index] = complex(t)
        samples.append(numeric_spectrum(matrix, tvals, q, cycle=label, t_point=t))
    return SweepResult(cycle=label, q=complex(q), alpha=alpha,
                       reference=reference, samples=tuple(samples))


def greedy_match(previous: Sequence[complex], current: Sequence[complex]) -> Tuple[complex, ...]:
    """Reorder current eigenvalues by nearest-neighbor continuation of the
    previous frame (greedy, a presentation choice for trail drawing only)."""
    remaining = list(current)
    matched = []
    for anchor in previous:
        best = min(range(len(remaining)), key=lambda k: abs(remaining[k] - anchor))
        matched.append(remaining.pop(best))
    return tuple(matched)


def match_trails(samples: Sequence[SpectrumSample]) -> List[Tuple[complex, ...]]:
    frames: List[Tuple[complex, ...]] = []
    for sample in samples:
        if not frames:
            frames.append(sample.eigenvalues)
        else:
            frames.append(greedy_match(frames[-1], sample.eigenvalues))
    return frames
