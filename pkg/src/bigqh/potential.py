"""Genus-zero Gromov-Witten potential of Gr(2,4).

The potential splits as a classical cubic part (triple intersections of
Schubert classes, with explicit t0..t5 monomials at q^0) plus a quantum part

    sum_{d>=1} ( sum_{|n|=4d+1} N(n) t2^n2 t3^n3 t4^n4 t5^n5 / n! ) q^d ,

where |n| = n2 + n3 + 2 n4 + 3 n5 and N(n) counts degree-d rational curves
meeting general translates of the corresponding Schubert cycles.  The counts
are solved degree by degree from the WDVV associativity equations: at each
degree the unknown N(n) enter the q^d coefficient of every WDVV identity
linearly (quadratic terms pair lower degrees), so an exact rational linear
system determines them from the seed N(0,0,1,1) = 1.

Associativity alone leaves a one-dimensional gap at degree 1 (the direction
(t2 - t3)^5): the solver closes it with the duality of Gr(2,4) ~ Gr(2, V*),
which exchanges the two middle Schubert classes and forces
N(n2,n3,n4,n5) = N(n3,n2,n4,n5).  Both inputs (seed and duality) are exact
linear equations; everything else is elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .schubert import DIM, PARTNER, triple_intersection
from .series import QSeries, TPoly

WEIGHTS = (1, 1, 2, 3)  # weighted size of (n2, n3, n4, n5)


class WDVVSolveError(RuntimeError):
    """Base class for failures of the WDVV linear solve."""


class InconsistentSystemError(WDVVSolveError):
    """An exact contradiction appeared during elimination (implementation bug)."""


class UnderdeterminedError(WDVVSolveError):
    """Some counts were not pinned down; carries the free keys."""

    def __init__(self, degree: int, free_keys: Sequence["GWKey"]):
        self.degree = degree
        self.free_keys = tuple(free_keys)
        super().__init__(
            f"degree {degree} leaves {len(self.free_keys)} free count(s): "
            + ", ".join(str(k) for k in self.free_keys))


@dataclass(frozen=True, order=True)
class GWKey:
    """Exponent vector (n2, n3, n4, n5) of a degree-d curve count."""

    n2: int
    n3: int
    n4: int
    n5: int
    degree: int

    def __post_init__(self):
        if self.degree < 1 or min(self.n2, self.n3, self.n4, self.n5) < 0:
            raise ValueError(f"invalid count key {self!r}")
        if self.weighted_size != 4 * self.degree + 1:
            raise ValueError(
                f"key {self.exponents} has weighted size {self.weighted_size}, "
                f"degree {self.degree} requires {4 * self.degree + 1}")

    @property
    def exponents(self) -> Tuple[int, int, int, int]:
        return (self.n2, self.n3, self.n4, self.n5)

    @property
    def weighted_size(self) -> int:
        return sum(w * n for w, n in zip(WEIGHTS, self.exponents))

    def mirror(self) -> "GWKey":
        return GWKey(self.n3, self.n2, self.n4, self.n5, self.degree)

    def monomial(self) -> TPoly:
        """t^n / n! as a polynomial in t2..t5."""
        scale = Fraction(1)
        for n in self.exponents:
            scale /= math.factorial(n)
        return TPoly.monomial((0, 0) + self.exponents, scale)

    def __str__(self) -> str:
        return f"N({self.n2},{self.n3},{self.n4},{self.n5})@d{self.degree}"


def valid_keys(degree: int) -> List[GWKey]:
    """All exponent vectors with weighted size 4*degree + 1, ascending lex."""
    total = 4 * degree + 1
    out = []
    for n5 in range(total // 3 + 1):
        for n4 in range((total - 3 * n5) // 2 + 1):
            rest = total - 3 * n5 - 2 * n4
            for n2 in range(rest + 1):
                out.append(GWKey(n2, rest - n2, n4, n5, degree))
    out.sort(key=lambda k: k.exponents)
    return out


@dataclass(frozen=True)
class SolveStats:
    degree: int
    unknowns: int
    equations: int
    redundant: int
    inconsistent: int
    symmetry_rows: int
    seeded: bool


@dataclass
class GWTable:
    """Complete table of curve counts for every valid key up to max_degree."""

    entries: Dict[GWKey, Fraction]
    max_degree: int
    stats: Dict[int, SolveStats] = field(default_factory=dict)

    def value(self, n2: int, n3: int, n4: int, n5: int) -> Fraction:
        size = n2 + n3 + 2 * n4 + 3 * n5
        if (size - 1) % 4:
            raise KeyError(f"({n2},{n3},{n4},{n5}) has no valid degree")
        return self.entries[GWKey(n2, n3, n4, n5, (size - 1) // 4)]

    def degree_entries(self, degree: int) -> List[Tuple[GWKey, Fraction]]:
        return [(k, self.entries[k]) for k in valid_keys(degree)]

    def is_complete(self) -> bool:
        return all(k in self.entries
                   for d in range(1, self.max_degree + 1) for k in valid_keys(d))

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "weights": list(WEIGHTS),
            "entries": [
                {"n": list(k.exponents), "degree": k.degree,
                 "weighted_size": k.weighted_size, "value": str(v)}
                for k in sorted(self.entries, key=lambda k: (k.degree, k.exponents))
                for v in (self.entries[k],)
            ],
        }


@dataclass
class Potential:
    """Classical cubic plus per-degree quantum summands of the potential."""

    classical: TPoly
    quantum: Dict[int, TPoly]
    max_degree: int
    _thirds: Dict[tuple, QSeries] = field(default_factory=dict, repr=False, compare=False)

    def as_qseries(self, alpha: Optional[int] = None) -> QSeries:
        coeffs = {0: self.classical}
        coeffs.update({d: p for d, p in self.quantum.items()
                       if alpha is None or d < alpha})
        return QSeries(coeffs, alpha)

    def third(self, i: int, j: int, e: int, alpha: Optional[int] = None) -> QSeries:
        """Memoized third partial derivative (see third_derivative)."""
        key = (tuple(sorted((i, j, e))), alpha)
        hit = self._thirds.get(key)
        if hit is None:
            series = self.as_qseries(alpha)
            for idx in key[0]:
                series = series.derivative_t1() if idx == 1 else series.partial_t(idx)
            hit = self._thirds[key] = series
        return hit


def classical_potential() -> TPoly:
    """The cubic generating polynomial of triple intersection numbers."""
    out = TPoly.zero()
    sixth = Fraction(1, 6)
    for i in range(DIM):
        for j in range(DIM):
            for k in range(DIM):
                v = triple_intersection(i, j, k)
                if not v:
                    continue
                exps = [0] * 6
                for idx in (i, j, k):
                    exps[idx] += 1
                out = out + TPoly.monomial(exps, v * sixth)
    return out


def build_potential(table: GWTable) -> Potential:
    if not table.is_complete():
        raise ValueError("table is not complete up to its max_degree")
    quantum = {}
    for d in range(1, table.max_degree + 1):
        poly = TPoly.zero()
        for key, value in table.degree_entries(d):
            if value:
                poly = poly + key.monomial() * value
        quantum[d] = poly
    return Potential(classical_potential(), quantum, table.max_degree)


def third_derivative(p: Potential, i: int, j: int, e: int,
                     alpha: Optional[int] = None) -> QSeries:
    """Third partial of the potential, as a q-series known mod q^alpha.

    Index 1 is the quantum direction: it differentiates the explicit t1 in
    the classical part and multiplies the q^d coefficient by d.  Symmetric in
    (i, j, e) by construction; results are memoized on the potential.
    """
    return p.third(i, j, e, alpha)


# ---------------------------------------------------------------------------
# WDVV assembly and exact solve
# ---------------------------------------------------------------------------

_SEED = (0, 0, 1, 1)

Multiset3 = Tuple[int, int, int]


def _third_multisets(indices: Sequence[int]) -> List[Multiset3]:
    return list(combinations_with_replacement(indices, 3))


def _derivative_of_monomial(key: GWKey, multiset: Multiset3) -> Optional[TPoly]:
    """Third derivative of t^n/n! q^d at the multiset, including the q-weight
    d per t1 index; None when it vanishes (any t0 index, or exponent exhausted)."""
    exps = list((0, 0) + key.exponents)
    scale = Fraction(1)
    for n in key.exponents:
        scale /= math.factorial(n)
    for idx in multiset:
        if idx == 0:
            return None
        if idx == 1:
            scale *= key.degree
            continue
        if exps[idx] == 0:
            return None
        scale *= exps[idx]
        exps[idx] -= 1
    return TPoly.monomial(exps, scale)


def _pairings(quad: Tuple[int, int, int, int]) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    w, x, y, z = quad
    raw = [((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))]
    seen = []
    for a, b in raw:
        a, b = tuple(sorted(a)), tuple(sorted(b))
        pairing = tuple(sorted((a, b)))
        if pairing not in seen:
            seen.append(pairing)
    return seen


def _row_signature(row: Mapping[int, Fraction], rhs: Fraction) -> tuple:
    items = sorted(row.items())
    lead = items[0][1]
    return (tuple((c, v / lead) for c, v in items), rhs / lead)


def assemble_degree_rows(known: Potential, degree: int,
                         unknowns: Sequence[GWKey]) -> List[Tuple[Dict[int, Fraction], Fraction]]:
    """Scalar linear rows over the degree-d unknowns from every WDVV identity.

    For each 4-index multiset over {1..5} the three 2+2 pairings of the WDVV
    tensor must agree; the q^d coefficient of each pairwise difference is a
    polynomial in t2..t5 whose monomial coefficients give the rows.  Index 0
    quadruples are identities of the pairing and contribute nothing.
    """
    col = {k: c for c, k in enumerate(unknowns)}
    dk: Dict[Multiset3, QSeries] = {}
    const: Dict[Multiset3, Fraction] = {}
    for m in _third_multisets(range(DIM)):
        series = third_derivative(known, *m, alpha=degree)
        dk[m] = series
        c0 = series.coefficient(0)
        if not c0.is_constant():
            raise AssertionError("classical third derivative must be constant")
        const[m] = c0.constant_value()

    dt: Dict[GWKey, Dict[Multiset3, TPoly]] = {}
    for key in unknowns:
        per = {}
        for m in _third_multisets(range(1, DIM)):
            mono = _derivative_of_monomial(key, m)
            if mono is not None and not mono.is_zero():
                per[m] = mono
        dt[key] = per

    def known_at_qd(pair_a: Tuple[int, int], pair_b: Tuple[int, int]) -> TPoly:
        total = TPoly.zero()
        for e in range(DIM):
            ma = tuple(sorted(pair_a + (e,)))
            mb = tuple(sorted(pair_b + (PARTNER[e],)))
            sa, sb = dk[ma], dk[mb]
            for d1 in sa.degrees():
                d2 = degree - d1
                pb = sb.coefficient(d2)
                if pb.is_zero():
                    continue
                total = total + sa.coefficient(d1) * pb
        return total

    def linear_at_qd(pair_a, pair_b, key: GWKey) -> TPoly:
        total = TPoly.zero()
        per = dt[key]
        for e in range(DIM):
            ma = tuple(sorted(pair_a + (e,)))
            mb = tuple(sorted(pair_b + (PARTNER[e],)))
            ca, cb = const.get(ma, 0), const.get(mb, 0)
            if cb:
                mono = per.get(ma)
                if mono is not None:
                    total = total + mono * cb
            if ca:
                mono = per.get(mb)
                if mono is not None:
                    total = total + mono * ca
        return total

    pairing_known: Dict[tuple, TPoly] = {}
    pairing_linear: Dict[tuple, Dict[int, TPoly]] = {}

    def eval_pairing(pairing):
        if pairing not in pairing_known:
            (a, b) = pairing
            pairing_known[pairing] = known_at_qd(a, b)
            lin = {}
            for key in unknowns:
                poly = linear_at_qd(a, b, key)
                if not poly.is_zero():
                    lin[col[key]] = poly
            pairing_linear[pairing] = lin
        return pairing_known[pairing], pairing_linear[pairing]

    rows: List[Tuple[Dict[int, Fraction], Fraction]] = []
    seen = set()
    for quad in combinations_with_replacement(range(1, DIM), 4):
        pairings = _pairings(quad)
        base_known, base_lin = eval_pairing(pairings[0])
        for other in pairings[1:]:
            o_known, o_lin = eval_pairing(other)
            diff_known = base_known - o_known
            monomials = set()
            cols_here = set(base_lin) | set(o_lin)
            diff_lin = {}
            for c in cols_here:
                poly = base_lin.get(c, TPoly.zero()) - o_lin.get(c, TPoly.zero())
                if not poly.is_zero():
                    diff_lin[c] = poly
                    monomials.update(e for e, _ in poly.terms())
            monomials.update(e for e, _ in diff_known.terms())
            for mono in monomials:
                row = {}
                for c, poly in diff_lin.items():
                    v = poly.coeff(mono)
                    if v:
                        row[c] = v
                rhs = -diff_known.coeff(mono)
                if not row:
                    if rhs:
                        raise InconsistentSystemError(
                            f"constant WDVV contradiction at degree {degree}, "
                            f"quadruple {quad}, monomial {mono}")
                    continue
                sig = _row_signature(row, rhs)
                if sig not in seen:
                    seen.add(sig)
                    rows.append((row, rhs))
    return rows


def _eliminate(rows: List[Tuple[Dict[int, Fraction], Fraction]],
               unknowns: Sequence[GWKey], degree: int):
    """Exact Gauss-Jordan with sparsity pivoting.

    Pivot row: fewest nonzeros among unused rows; pivot column within it: the
    lowest key in lexicographic order.  Every redundant row is kept and checked
    for exact consistency at the end.
    """
    work = [(dict(r), rhs) for r, rhs in rows]
    pivot_of_col: Dict[int, int] = {}
    used = set()
    while True:
        best = None
        for ridx, (row, _) in enumerate(work):
            if ridx in used or not row:
                continue
            cand_col = min(row)
            cand = (len(row), cand_col, ridx)
            if best is None or cand < best:
                best = cand
        if best is None:
            break
        _, pcol, pidx = best
        prow, prhs = work[pidx]
        inv = 1 / prow[pcol]
        prow = {c: v * inv for c, v in prow.items()}
        prhs = prhs * inv
        work[pidx] = (prow, prhs)
        used.add(pidx)
        pivot_of_col[pcol] = pidx
        for ridx, (row, rhs) in enumerate(work):
            if ridx == pidx or pcol not in row:
                continue
            factor = row[pcol]
            new = dict(row)
            for c, v in prow.items():
                acc = new.get(c, Fraction(0)) - factor * v
                if acc:
                    new[c] = acc
                else:
                    new.pop(c, None)
            work[ridx] = (new, rhs - factor * prhs)

    inconsistent = 0
    redundant = 0
    for ridx, (row, rhs) in enumerate(work):
        if ridx in used or row:
            continue
        if rhs:
            inconsistent += 1
        else:
            redundant += 1
    if inconsistent:
        raise InconsistentSystemError(
            f"{inconsistent} exactly contradictory equation(s) at degree {degree}")

    free = [unknowns[c] for c in range(len(unknowns)) if c not in pivot_of_col]
    if free:
        raise UnderdeterminedError(degree, free)

    values = {}
    for c, ridx in pivot_of_col.items():
        row, rhs = work[ridx]
        extra = [cc for cc in row if cc != c]
        if extra:
            raise UnderdeterminedError(degree, [unknowns[cc] for cc in extra])
        values[unknowns[c]] = rhs
    return values, redundant


def solve_wdvv(max_degree: int, duality_symmetry: bool = True) -> GWTable:
    """Solve the curve counts degree by degree from associativity.

    duality_symmetry=False drops the middle-class symmetry rows; degree 1 is
    then genuinely underdetermined and raises UnderdeterminedError naming the
    free keys (kept as an honest record of the rank gap).
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    entries: Dict[GWKey, Fraction] = {}
    stats: Dict[int, SolveStats] = {}
    for degree in range(1, max_degree + 1):
        known = Potential(classical_potential(),
                          {d: p for d, p in _quantum_parts(entries, degree)},
                          degree - 1)
        unknowns = valid_keys(degree)
        rows = assemble_degree_rows(known, degree, unknowns)
        col = {k: c for c, k in enumerate(unknowns)}
        seeded = False
        if degree == 1:
            rows.append(({col[GWKey(*_SEED, 1)]: Fraction(1)}, Fraction(1)))
            seeded = True
        sym_rows = 0
        if duality_symmetry:
            for k in unknowns:
                m = k.mirror()
                if m != k and k.exponents > m.exponents:
                    rows.append(({col[k]: Fraction(1), col[m]: Fraction(-1)},
                                 Fraction(0)))
                    sym_rows += 1
        values, redundant = _eliminate(rows, unknowns, degree)
        entries.update(values)
        stats[degree] = SolveStats(degree=degree, unknowns=len(unknowns),
                                   equations=len(rows), redundant=redundant,
                                   inconsistent=0, symmetry_rows=sym_rows,
                                   seeded=seeded)
    return GWTable(entries=entries, max_degree=max_degree, stats=stats)


def _quantum_parts(entries: Mapping[GWKey, Fraction], degree: int):
    for d in range(1, degree):
        poly = TPoly.zero()
        for k in valid_keys(d):
            v = entries[k]
            if v:
                poly = poly + k.monomial() * v
        yield d, poly


# ---------------------------------------------------------------------------
# residual verification
# ---------------------------------------------------------------------------

def wdvv_residuals(p: Potential, alpha: int):
    """Residual q-series of every WDVV quadruple identity, mod q^alpha.

    Returns {(i,j,k,l): QSeries} for the quadruples with nonzero residual;
    empty dict certifies associativity of the structure constants to the
    given order over all 6^4 quadruples.
    """
    thirds: Dict[Multiset3, QSeries] = {}
    for m in _third_multisets(range(DIM)):
        thirds[m] = third_derivative(p, *m, alpha=alpha)

    pair_cache: Dict[tuple, QSeries] = {}

    def pairing_series(a: Tuple[int, int], b: Tuple[int, int]) -> QSeries:
        key = tuple(sorted((tuple(sorted(a)), tuple(sorted(b)))))
        if key not in pair_cache:
            pa, pb = key
            total = QSeries.zero(alpha)
            for e in range(DIM):
                total = total + thirds[tuple(sorted(pa + (e,)))] \
                    * thirds[tuple(sorted(pb + (PARTNER[e],)))]
            pair_cache[key] = total
        return pair_cache[key]

    bad = {}
    for i in range(DIM):
        for j in range(DIM):
            for k in range(DIM):
                for l in range(DIM):
                    res = pairing_series((i, j), (k, l)) - pairing_series((j, k), (i, l))
                    if not res.is_zero():
                        bad[(i, j, k, l)] = res
    return bad


def table_text(table: GWTable) -> str:
    """Human-readable table: representatives up to the middle-class mirror
    (n2 >= n3), descending lex, four per row, grouped by degree."""
    lines = []
    for d in range(1, table.max_degree + 1):
        lines.append(f"degree d={d} (weighted size 4d+1={4 * d + 1})")
        reps = [k for k in valid_keys(d) if k.n2 >= k.n3]
        reps.sort(key=lambda k: k.exponents, reverse=True)
        cells = ["N({},{},{},{})={}".format(*k.exponents, table.entries[k]) for k in reps]
        for start in range(0, len(cells), 4):
            lines.append("  ".join(c.ljust(18) for c in cells[start:start + 4]).rstrip())
    return "\n".join(lines)
