"""Classical cohomology ring of Gr(2,4) in the Schubert basis.

The six basis classes are indexed by Young diagrams inside a 2x2 grid, in the
fixed order

    index   0     1      2      3      4      5
    diagram ()    (1,0)  (2,0)  (1,1)  (2,1)  (2,2)
    codeg   0     2      4      4      6      8

Everything downstream (matrices, truncations, spectra) inherits this order;
finite-energy truncation is basis-dependent, so the order is part of the
contract.  Cup products are the hard-coded 2x2-grid Littlewood-Richardson
table (21 unordered pairs); the test suite validates it against an
independent LR-tableau counting oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

DIAGRAMS: Tuple[Tuple[int, int], ...] = ((0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (2, 2))

# Poincare partner: pairing(i, j) != 0 iff j == PARTNER[i]
PARTNER: Tuple[int, ...] = (5, 4, 2, 3, 1, 0)

DIM = 6


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Young diagram (a, b) with 0 <= b <= a <= 2; row lengths top-down."""

    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.b <= self.a <= 2):
            raise ValueError(f"diagram rows must satisfy 0 <= b <= a <= 2, got ({self.a},{self.b})")

    @property
    def index(self) -> int:
        return DIAGRAMS.index((self.a, self.b))

    @property
    def boxes(self) -> int:
        return self.a + self.b

    @property
    def codegree(self) -> int:
        return 2 * (self.a + self.b)

    @staticmethod
    def from_index(i: int) -> "YoungDiagram":
        return YoungDiagram(*DIAGRAMS[i])

    @staticmethod
    def from_string(s: str) -> "YoungDiagram":
        parts = s.strip().split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {s!r}")
        return YoungDiagram(int(parts[0]), int(parts[1]))

    def __str__(self) -> str:
        return f"{self.a},{self.b}"


ALL_DIAGRAMS: Tuple[YoungDiagram, ...] = tuple(YoungDiagram(*d) for d in DIAGRAMS)


def codegree(d) -> int:
    """Cohomological degree of the class: twice the number of boxes."""
    if isinstance(d, YoungDiagram):
        return d.codegree
    return ALL_DIAGRAMS[d].codegree


CODEGREES: Tuple[int, ...] = tuple(d.codegree for d in ALL_DIAGRAMS)

# intersection pairing g (self-inverse: g.g = Id)
INTERSECTION_MATRIX: Tuple[Tuple[int, ...], ...] = tuple(
    tuple(1 if j == PARTNER[i] else 0 for j in range(DIM)) for i in range(DIM)
)


def pairing(i: int, j: int) -> int:
    return INTERSECTION_MATRIX[i][j]


class SchubertVector:
    """Exact element of H(Gr(2,4)) as coefficients in the sigma basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,) * DIM):
        vals = tuple(Fraction(c) for c in coeffs)
        if len(vals) != DIM:
            raise ValueError("expected 6 coefficients")
        self.coeffs = vals

    @staticmethod
    def basis(i: int) -> "SchubertVector":
        return SchubertVector(tuple(1 if k == i else 0 for k in range(DIM)))

    def __add__(self, other: "SchubertVector") -> "SchubertVector":
        return SchubertVector(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "SchubertVector") -> "SchubertVector":
        return SchubertVector(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, scalar) -> "SchubertVector":
        s = Fraction(scalar)
        return SchubertVector(c * s for c in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SchubertVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*s{i}" for i, c in enumerate(self.coeffs) if c) or "0"
        return f"SchubertVector({body})"


# Littlewood-Richardson products for the 2x2 grid, upper triangle (i <= j),
# as {result index: coefficient}.  Products of codegree > 8 vanish.
_CUP_TABLE = {
    (1, 1): {2: 1, 3: 1},
    (1, 2): {4: 1},
    (1, 3): {4: 1},
    (1, 4): {5: 1},
    (1, 5): {},
    (2, 2): {5: 1},
    (2, 3): {},
    (2, 4): {},
    (2, 5): {},
    (3, 3): {5: 1},
    (3, 4): {},
    (3, 5): {},
    (4, 4): {},
    (4, 5): {},
    (5, 5): {},
}


def _as_index(d) -> int:
    if isinstance(d, YoungDiagram):
        return d.index
    if isinstance(d, tuple):
        return DIAGRAMS.index(d)
    return int(d)


def cup(d1, d2) -> SchubertVector:
    """Classical cup product expanded in the sigma basis."""
    i, j = sorted((_as_index(d1), _as_index(d2)))
    if i == 0:
        return SchubertVector.basis(j)
    comps = _CUP_TABLE[(i, j)]
    return SchubertVector(tuple(Fraction(comps.get(k, 0)) for k in range(DIM)))


def triple_intersection(i: int, j: int, k: int) -> Fraction:
    """<sigma_i sigma_j sigma_k, [X]>: the cup product paired with sigma_k."""
    prod = cup(i, j)
    return sum((c * pairing(f, k) for f, c in enumerate(prod.coeffs)), Fraction(0))


# duality automorphism Gr(2,V) ~ Gr(2,V*): swaps the two middle classes
DUALITY_PERMUTATION: Tuple[int, ...] = (0, 1, 3, 2, 4, 5)
