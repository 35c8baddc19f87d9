"""Big quantum cohomology of Gr(2,4) and the spectrum of its Dubrovin operator.

Exact-arithmetic pipeline: Schubert calculus -> WDVV-solved curve counts ->
big quantum product and Dubrovin matrices over a truncated Novikov ring ->
exact characteristic polynomials, discriminants and spectral-simplicity
verdicts -> numeric eigenvalue sweeps, exposed through a CLI and a read-only
HTTP service for the browser explorer.
"""

from .schubert import (ALL_DIAGRAMS, CODEGREES, DIM, INTERSECTION_MATRIX, PARTNER,
                       SchubertVector, YoungDiagram, codegree, cup, pairing,
                       triple_intersection)
from .series import (ExactDivisionError, MixedT1Error, QSeries, TPoly, exact_div,
                     format_qseries, format_tpoly)
from .potential import (GWKey, GWTable, InconsistentSystemError, Potential,
                        UnderdeterminedError, WDVVSolveError, build_potential,
                        classical_potential, solve_wdvv, table_text,
                        third_derivative, valid_keys, wdvv_residuals)
from .dubrovin import (BASIS_LABELS, DubrovinMatrix, QuantumClassVector,
                       TruncationExceedsPotentialError, dubrovin_class,
                       dubrovin_matrix, matrix_text, quantum_product,
                       truncate_matrix)
from .spectral import (CharPoly, ConvergenceFailure, DiscriminantResult,
                       SimplicityClass, SimplicityVerdict, SpectrumSample,
                       SweepResult, char_poly, charpoly_spectrum, classify,
                       determinant, discriminant, greedy_match, match_trails,
                       numeric_spectrum, resultant, spectrum_sweep)
from .session import Session, shared_session

__version__ = "0.1.0"
