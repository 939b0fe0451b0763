"""Bordered and framed Toeplitz/Hankel determinants with applications.

High-precision structured determinants, the orthogonal-polynomial
identities that factor them, and the integrable-probability applications
they compute: non-intersecting path ensembles (heights and widths) and
the six-vertex model with domain wall boundary conditions, each paired
with independent brute-force oracles.
"""

from .numerics import PrecisionConfig, DEFAULT_PRECISION
from .symbols import (CircleSymbol, DiscretizedCircleMeasure, LineMeasure,
                      SixVertexWeights, constant_symbol, discretize_circle_symbol,
                      gaussian_lattice_measure, gaussian_measure,
                      gaussian_tilted_measure, laurent_symbol, make_ctrw_symbol,
                      make_drw_symbol, make_nibb_measures, make_nibe_measures,
                      sixv_symbol_derivatives)
from .determinants import (DetResult, bordered_hankel_det, bordered_toeplitz_det,
                           dense_det, dodgson_check, framed_hankel_det,
                           framed_toeplitz_det, hankel_det,
                           semi_framed_toeplitz_det, toeplitz_det)
from .orthopoly import (BiOPSystem, FikMatrix, MonicOPSystem, build_bopuc,
                        build_oprl, fik_matrix_eval, hankel_lu_check)
from .identities import IdentityReport, run_identity_suite
from .walks import (PathEnsembleSpec, lgv_count, lgv_probability,
                    oracle_enumerate_rw, oracle_width_cdf, width_cdf_rw)
from .excursions import nibe_height_cdf
from .bridges import nibb_width_cdf
from .km import km_limit_extrapolate, oracle_km_two_walls
from .sixvertex import (SixVertexSpec, ik_partition, oracle_enumerate_sixvertex,
                        sixv_partition)
from .szego import (SzegoData, asymptotic_value, build_szego, c_n_phi,
                    convergence_study, exact_probability, rh_parametrix_check,
                    script_b_n, strong_szego_check)

__version__ = "0.1.0"
