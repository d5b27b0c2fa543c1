"""Exact construction and verification of Einstein pseudo- and para-Kähler metrics on solvable Lie algebras.

The pipeline runs nilsoliton metric -> pseudo-Iwasawa Einstein extension ->
parallel (para-)Kähler structure, entirely over the rationals.
"""

from .checks import Check, Ledger
from .curvature import MetricLieAlgebra, adjoint, covariant_derivative, is_einstein
from .exactla import Matrix, Q, det, inverse, nullspace, signature, solve_linear
from .extension import (ExtensionSpec, StandardDecomposition, pseudo_iwasawa_extend, rank_one_extension,
                        verify_correspondence, verify_pseudo_iwasawa)
from .liealg import ExtensionError, JacobiError, LieAlgebra, derivations, derivations_traceless, flags, semidirect_extend
from .nice import NotNiceError, diagonal_ricci_fast, nice_structure, nikolayevsky
from .notation import NotationError, format_algebra, format_form, parse_algebra, parse_form
from .soliton import (DEFAULT_LAMBDA, DiagonalSolitonProblem, NilType, SolitonDecomposition, diagonal_soliton_solve,
                      soliton_decompose, verify_nilsoliton)
from .structures import (PARA_KAHLER, PSEUDO_KAHLER, ObstructionReport, SearchResult, StructureCertificate, certify,
                         closed_two_forms, exterior_d, generalized_heisenberg, parallel_two_forms, search_family,
                         search_structures, verify_certificate)

__version__ = "0.1.0"
