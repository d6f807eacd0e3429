"""Numerical toolkit for the Derivative-Hilbert operator ``DH_mu`` on Dirichlet spaces.

``DH_mu`` acts on Taylor coefficients by ``b_n = (n+1) sum_k mu_{n+k} a_k``
where ``mu_n`` are the moments of a positive measure on [0, 1).
"""

from .errors import ConvergenceError, DomainError, QuadratureError, ResourceError
from .measure import Measure, carleson_report, moment, moment_decay_report, moment_sequence, tail_mass
from .specialfn import KernelParams, beta, hardy_constant, hardy_kernel, kernel_integral_check, log_gamma
from .spaces import CoefficientFunction, dirichlet_norm
from .operator import apply_dh, apply_h, s_mu_matrix, tail_block
from .analysis import (
    boundedness_diagnostic,
    compactness_diagnostic,
    l2_norm_estimate,
    lower_bound_check,
    operator_norm_curve,
    schur_inequality_check,
)

__version__ = "0.1.0"
