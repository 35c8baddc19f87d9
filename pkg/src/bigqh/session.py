"""Memoized pipeline state shared by the CLI and the HTTP service.

All heavy exact computation (curve-count tables, symbolic matrices, exact
discriminants) happens once per parameter set and is cached; per-request work
is numeric specialization only.  The cache is guarded by a re-entrant lock so
a session can back a concurrent service.
"""

from __future__ import annotations

import threading
from typing import Dict, Optional, Sequence, Tuple

from .dubrovin import BASIS_LABELS, DubrovinMatrix, dubrovin_matrix
from .potential import GWTable, Potential, build_potential, solve_wdvv
from .schubert import ALL_DIAGRAMS, CODEGREES, YoungDiagram
from .spectral import (SimplicityVerdict, SpectrumSample, SweepResult, classify,
                       numeric_spectrum, spectrum_sweep)

BULK_CYCLE_INDICES: Tuple[int, ...] = (2, 3, 4, 5)
BULK_CYCLES: Tuple[str, ...] = tuple(BASIS_LABELS[i] for i in BULK_CYCLE_INDICES)
DEFAULT_ALPHA = 2
DEFAULT_Q = 1 + 0j
FIGURE_PATH: Tuple[complex, ...] = (0.5 + 1j, 1 + 2j, 1.5 + 3j)


def parse_cycle(value) -> int:
    """Bulk cycle ('a,b' string, diagram, or index 2..5) -> basis index."""
    if isinstance(value, YoungDiagram):
        idx = value.index
    elif isinstance(value, int):
        idx = value
    else:
        idx = YoungDiagram.from_string(str(value)).index
    if idx not in BULK_CYCLE_INDICES:
        raise ValueError(
            f"cycle {value!r} is not a bulk cycle; choose one of {', '.join(BULK_CYCLES)}")
    return idx


class Session:
    """Lazily computed, immutable-once-computed pipeline state."""

    def __init__(self, default_degree: int = 2):
        self.default_degree = default_degree
        self._lock = threading.RLock()
        self._tables: Dict[int, GWTable] = {}
        self._potentials: Dict[int, Potential] = {}
        self._matrices: Dict[tuple, DubrovinMatrix] = {}
        self._verdicts: Dict[tuple, SimplicityVerdict] = {}

    # -- exact layers --------------------------------------------------------

    def table(self, max_degree: Optional[int] = None) -> GWTable:
        d = self.default_degree if max_degree is None else max_degree
        with self._lock:
            if d not in self._tables:
                self._tables[d] = solve_wdvv(d)
            return self._tables[d]

    def potential(self, max_degree: Optional[int] = None) -> Potential:
        d = self.default_degree if max_degree is None else max_degree
        with self._lock:
            if d not in self._potentials:
                self._potentials[d] = build_potential(self.table(d))
            return self._potentials[d]

    def matrix(self, alpha: int = DEFAULT_ALPHA,
               cycle: Optional[object] = None) -> DubrovinMatrix:
        """Symbolic matrix: one bulk coordinate symbolic when cycle is given,
        all four symbolic otherwise."""
        if alpha < 0:
            raise ValueError("alpha must be >= 0")
        idx = None if cycle is None else parse_cycle(cycle)
        key = ("matrix", alpha, idx)
        with self._lock:
            if key not in self._matrices:
                p = self.potential(max(alpha - 1, 1))
                if idx is None:
                    m = dubrovin_matrix(p, alpha)
                else:
                    coords = {f"t{i}": (None if i == idx else 0)
                              for i in BULK_CYCLE_INDICES}
                    m = dubrovin_matrix(p, alpha, **coords)
                self._matrices[key] = m
            return self._matrices[key]

    def origin_matrix(self, alpha: int = DEFAULT_ALPHA) -> DubrovinMatrix:
        key = ("origin", alpha)
        with self._lock:
            if key not in self._matrices:
                p = self.potential(max(alpha - 1, 1))
                self._matrices[key] = dubrovin_matrix(p, alpha, t2=0, t3=0, t4=0, t5=0)
            return self._matrices[key]

    def classify(self, cycle, alpha: int = DEFAULT_ALPHA) -> SimplicityVerdict:
        idx = parse_cycle(cycle)
        key = (idx, alpha)
        with self._lock:
            if key not in self._verdicts:
                self._verdicts[key] = classify(self.matrix(alpha, idx), alpha)
            return self._verdicts[key]

    # -- numeric layer ---------------------------------------------------------

    def spectrum(self, cycle: Optional[object], t: complex, q: complex = DEFAULT_Q,
                 alpha: int = DEFAULT_ALPHA) -> SpectrumSample:
        if cycle is None:
            if t != 0:
                raise ValueError("a bulk cycle is required when t is nonzero")
            m = self.origin_matrix(alpha)
            return numeric_spectrum(m, (0,) * 6, q, cycle=None, t_point=0)
        idx = parse_cycle(cycle)
        m = self.matrix(alpha, idx)
        tvals = [0j] * 6
        tvals[idx] = complex(t)
        return numeric_spectrum(m, tvals, q, cycle=BASIS_LABELS[idx], t_point=t)

    def sweep(self, cycle, path: Sequence[complex], q: complex = DEFAULT_Q,
              alpha: int = DEFAULT_ALPHA) -> SweepResult:
        idx = parse_cycle(cycle)
        return spectrum_sweep(idx, list(path), q, alpha, self.potential(max(alpha - 1, 1)))

    # -- description ----------------------------------------------------------

    def meta(self) -> dict:
        return {
            "basis": [{"index": i, "diagram": BASIS_LABELS[i], "codegree": CODEGREES[i]}
                      for i in range(len(ALL_DIAGRAMS))],
            "cycles": list(BULK_CYCLES),
            "defaults": {
                "alpha": DEFAULT_ALPHA,
                "q": [DEFAULT_Q.real, DEFAULT_Q.imag],
                "figure_path": [[z.real, z.imag] for z in FIGURE_PATH],
            },
        }


_shared: Optional[Session] = None
_shared_lock = threading.Lock()


def shared_session() -> Session:
    global _shared
    with _shared_lock:
        if _shared is None:
            _shared = Session()
        return _shared
