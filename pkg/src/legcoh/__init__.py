"""Associated Legendre functions, their generating functions, and the
generalized coherent states of the spherical harmonics ``Y_m^m``."""

from .coherent import (CoefficientSequence, CoherentParams, coherent_coefficients,
                       coherent_eval_compact, coherent_eval_series, coherent_norm_check,
                       identity_moment_check, measure_density, normalization_k0)
from .errors import DomainError, NonConvergenceError
from .genfun import (GenFunQuery, SeriesResult, genfun_even_closed, genfun_even_series,
                     genfun_fixed_m_closed, genfun_fixed_m_series, genfun_odd_closed,
                     genfun_odd_series)
from .harmonics import gram_matrix, harmonic_on_grid, sphere_inner_product, spherical_harmonic
from .jets import (Jet, jet_derivative_at_base, jet_exp, jet_int_pow, jet_mul, jet_one,
                   jet_variable, jet_zero)
from .legendre import (LegendreIndex, assoc_legendre, negate_m, rodrigues_coefficient)
from .quadrature import AngularGrid, gauss_legendre
from .verify import VerificationReport, VerifyConfig, run_all

__version__ = "0.1.0"
