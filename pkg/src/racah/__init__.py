"""Exact verification of the su(1,1) Racah problem and its 6j overlaps.

The package builds three realizations of the Racah algebra (three-variable
Bargmann operators, their one-variable hypergeometric reduction and an
equitable su(2) quadratic model), checks every defining identity with
exact rational arithmetic, and computes Racah overlap coefficients in two
independent ways.
"""

from .exact import NonTerminating, PoleInC, Poly1, Poly3, Scalar, format_scalar, scalar, terminating_2f1
from .operators import DiffOp1, DiffOp3, Matrix, NotInvariant, commutator, to_matrix, to_matrix3
from .report import VerificationReport
from .reps import (
    DegenerateParameters,
    NotLeonard,
    OverlapTable,
    SingularSystem,
    SpectrumMismatch,
    ZeroOffdiagonal,
    build_rep,
    eigen_solutions,
    leonard_pair_certificate,
    leonard_triple_certificate,
    racah_overlaps_hypergeometric,
    racah_overlaps_matrix,
    spectra,
    udld_transform,
)
from .su11 import RacahGenerators, RacahParams, StructureParams, check_racah_relations, check_z3_relations
from .su2 import SquaredEntryMatrix, quadratic_elements, verify_identification
from .suite import CHECKS, run_suite

__version__ = "0.1.0"
