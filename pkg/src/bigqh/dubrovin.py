"""Big quantum product and the Dubrovin operator matrix for Gr(2,4).

The product is given by the structure constants

    sigma_i * sigma_j = sum_e Phi_ije sigma_{partner(e)} ,

third derivatives of the potential contracted with the (self-inverse)
intersection pairing.  The Dubrovin class

    K = 4 sigma_1 + t0 sigma_0 - t2 sigma_2 - t3 sigma_3 - 2 t4 sigma_4 - 3 t5 sigma_5

acts by multiplication; its matrix in the sigma basis uses the column-action
convention (column j is the expansion of K * sigma_j), fixed so that the
matrix entry (row 0, column 4) at the origin is 4q.

Finite-energy truncation keeps q-degrees d < alpha.  Truncated matrices store
exact polynomial entries (no modular marker): their characteristic polynomials
and discriminants are honest elements of the series ring, whose q-valuation
may well exceed alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .schubert import ALL_DIAGRAMS, DIM, PARTNER
from .series import QSeries, TPoly, format_qseries
from .potential import Potential, third_derivative

Coordinate = Union[int, Fraction, TPoly, None]

BASIS_LABELS: Tuple[str, ...] = tuple(str(d) for d in ALL_DIAGRAMS)

# sigma-coefficients of the Dubrovin class: (2 - codegree)/2 per coordinate,
# with the constant 4 = first Chern class on sigma_1
_K_WEIGHTS: Tuple[int, ...] = (1, 0, -1, -1, -2, -3)


class TruncationExceedsPotentialError(ValueError):
    """alpha demands curve counts beyond the potential's table."""


@dataclass(frozen=True)
class QuantumClassVector:
    """Element of the big quantum cohomology in the sigma basis."""

    coeffs: Tuple[QSeries, ...]

    def __post_init__(self):
        if len(self.coeffs) != DIM:
            raise ValueError("expected 6 components")

    @staticmethod
    def basis(i: int, alpha: Optional[int] = None) -> "QuantumClassVector":
        return QuantumClassVector(tuple(
            QSeries.one().truncate(alpha) if alpha is not None and k == i
            else QSeries.one() if k == i
            else QSeries.zero(alpha)
            for k in range(DIM)))

    @staticmethod
    def from_polys(polys: Sequence[Union[TPoly, QSeries, int, Fraction]],
                   alpha: Optional[int] = None) -> "QuantumClassVector":
        comps = []
        for p in polys:
            if isinstance(p, QSeries):
                s = p
            elif isinstance(p, TPoly):
                s = QSeries.from_tpoly(p)
            else:
                s = QSeries.constant(p)
            comps.append(s.truncate(alpha) if alpha is not None else s)
        return QuantumClassVector(tuple(comps))

    def __add__(self, other: "QuantumClassVector") -> "QuantumClassVector":
        return QuantumClassVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QuantumClassVector") -> "QuantumClassVector":
        return QuantumClassVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s: Union[int, Fraction, TPoly, QSeries]) -> "QuantumClassVector":
        return QuantumClassVector(tuple(c * s for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


def quantum_product(u: QuantumClassVector, v: QuantumClassVector,
                    p: Potential, alpha: Optional[int] = None) -> QuantumClassVector:
    """Bilinear extension of the structure-constant product, mod q^alpha."""
    if alpha is not None and alpha > p.max_degree + 1:
        raise TruncationExceedsPotentialError(
            f"alpha={alpha} needs curve counts of degree {alpha - 1}, table "
            f"stops at {p.max_degree}")
    out: List[QSeries] = [QSeries.zero(alpha) for _ in range(DIM)]
    for i in range(DIM):
        ui = u.coeffs[i]
        if ui.is_zero():
            continue
        for j in range(DIM):
            vj = v.coeffs[j]
            if vj.is_zero():
                continue
            weight = ui * vj
            for f in range(DIM):
                phi = third_derivative(p, i, j, PARTNER[f], alpha)
                if not phi.is_zero():
                    out[f] = out[f] + weight * phi
    return QuantumClassVector(tuple(out))


def dubrovin_class(t0: Coordinate = 0, t2: Coordinate = None, t3: Coordinate = None,
                   t4: Coordinate = None, t5: Coordinate = None) -> QuantumClassVector:
    """The Dubrovin class; None leaves a coordinate symbolic, numbers/polys
    specialize it.  t1 is identified with log q and has no slot."""
    coords = {0: t0, 2: t2, 3: t3, 4: t4, 5: t5}
    comps = []
    for idx in range(DIM):
        if idx == 1:
            comps.append(QSeries.constant(4))
            continue
        value = coords[idx]
        tpoly = TPoly.var(idx) if value is None else (
            value if isinstance(value, TPoly) else TPoly.constant(value))
        comps.append(QSeries.from_tpoly(tpoly * _K_WEIGHTS[idx]))
    return QuantumClassVector(tuple(comps))


@dataclass(frozen=True)
class DubrovinMatrix:
    """6x6 matrix of exact q-polynomials; column j = image of sigma_j."""

    entries: Tuple[Tuple[QSeries, ...], ...]
    alpha: Optional[int]
    basis: Tuple[str, ...] = BASIS_LABELS

    def entry(self, f: int, j: int) -> QSeries:
        return self.entries[f][j]

    def column(self, j: int) -> Tuple[QSeries, ...]:
        return tuple(self.entries[f][j] for f in range(DIM))

    def substitute(self, values: Dict[int, Union[int, Fraction, TPoly]]) -> "DubrovinMatrix":
        return DubrovinMatrix(tuple(
            tuple(e.substitute(values) for e in row) for row in self.entries),
            self.alpha, self.basis)

    def add_identity(self, value: Union[int, Fraction, TPoly]) -> "DubrovinMatrix":
        scalar = value if isinstance(value, TPoly) else TPoly.constant(value)
        rows = []
        for f in range(DIM):
            row = list(self.entries[f])
            row[f] = row[f] + QSeries.from_tpoly(scalar)
            rows.append(tuple(row))
        return DubrovinMatrix(tuple(rows), self.alpha, self.basis)

    def evaluate(self, tvals: Sequence[complex], q: complex) -> List[List[complex]]:
        return [[e.evaluate(tvals, q) for e in row] for row in self.entries]

    def map_entries(self, fn) -> "DubrovinMatrix":
        return DubrovinMatrix(tuple(tuple(fn(e) for e in row) for row in self.entries),
                              self.alpha, self.basis)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "basis": list(self.basis),
                "entries": [[e.to_json() for e in row] for row in self.entries]}


def dubrovin_matrix(p: Potential, alpha: Optional[int] = None,
                    t0: Coordinate = 0, t2: Coordinate = None, t3: Coordinate = None,
                    t4: Coordinate = None, t5: Coordinate = None) -> DubrovinMatrix:
    """Matrix of multiplication by the Dubrovin class, truncated below q^alpha.

    Coordinates follow dubrovin_class: None stays symbolic.  The q^0 part is
    classical cup multiplication by K; the structure constants are evaluated
    at the same coordinate point as the class itself.
    """
    if alpha is not None and alpha > p.max_degree + 1:
        raise TruncationExceedsPotentialError(
            f"alpha={alpha} needs curve counts of degree {alpha - 1}, table "
            f"stops at {p.max_degree}")
    kvec = dubrovin_class(t0=None)  # fully symbolic; specialized below
    columns = []
    for j in range(DIM):
        columns.append(quantum_product(kvec, QuantumClassVector.basis(j), p, alpha))
    subs = {i: v for i, v in ((0, t0), (2, t2), (3, t3), (4, t4), (5, t5))
            if v is not None}
    entries = tuple(
        tuple(columns[j].coeffs[f].substitute(subs).strip_truncation()
              for j in range(DIM))
        for f in range(DIM))
    return DubrovinMatrix(entries, alpha)


def truncate_matrix(m: DubrovinMatrix, alpha: int) -> DubrovinMatrix:
    """Entrywise finite-energy truncation: keep q-degrees d < alpha (exact)."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    return DubrovinMatrix(tuple(
        tuple(e.truncate(alpha, keep_marker=False) for e in row) for row in m.entries),
        alpha, m.basis)


def matrix_text(m: DubrovinMatrix) -> str:
    """Aligned plain-text rendering for eyeball comparison."""
    cells = [[format_qseries(m.entry(f, j)) for j in range(DIM)] for f in range(DIM)]
    widths = [max(len(cells[f][j]) for f in range(DIM)) for j in range(DIM)]
    lines = ["  ".join(cells[f][j].rjust(widths[j]) for j in range(DIM))
             for f in range(DIM)]
    return "\n".join(lines)
