"""Variational free-energy functionals for the SK spin glass.

Gibbs-potential expansions at the replica-symmetric and one-step levels,
the classical variational solutions they reproduce, exact finite-volume
quenched averages for cross-validation, and Poisson-Dirichlet cascade
Monte Carlo for the probabilistic representation of the one-step
functional.
"""

__version__ = "0.1.0"

from .errors import NonConvergenceError
from .params import GridSpec, ModelParams
from .quadrature import HermiteRule, gauss_expect, hermite_rule
from .curie_weiss import (CwSolution, cw_fixed_point, cw_free_energy_exact,
                          cw_free_energy_limit, rate_function)
from .rs import (RsPoint, RsSolution, at_stability, derivative_scan, f_rs,
                 g_rs, rs_fixed_point, rs_solution, scan_fixed_points,
                 t_overlap)
from .one_rsb import (InnerStats, OneRsbPoint, OneRsbSolution, g_1rsb,
                      inner_stats, onersb_fixed_point, outer_average, phi0,
                      parisi_1rsb_solve, parisi_1rsb_value, qstar_map)
from .finite_n import (DisorderSample, FiniteNEstimate, bound_check,
                       coupling_matrix, draw_disorder, quenched_estimate,
                       sk_log_partition_exact)
from .cascades import (CascadeSample, cascade_functional_mc, sample_pd,
                       smoothing_identity_check, truncation_tail_estimate)

__all__ = [
    "__version__",
    "NonConvergenceError",
    "GridSpec", "ModelParams",
    "HermiteRule", "gauss_expect", "hermite_rule",
    "CwSolution", "cw_fixed_point", "cw_free_energy_exact",
    "cw_free_energy_limit", "rate_function",
    "RsPoint", "RsSolution", "at_stability", "derivative_scan", "f_rs",
    "g_rs", "rs_fixed_point", "rs_solution", "scan_fixed_points",
    "t_overlap",
    "InnerStats", "OneRsbPoint", "OneRsbSolution", "g_1rsb", "inner_stats",
    "onersb_fixed_point", "outer_average", "phi0", "parisi_1rsb_solve",
    "parisi_1rsb_value", "qstar_map",
    "DisorderSample", "FiniteNEstimate", "bound_check", "coupling_matrix",
    "draw_disorder", "quenched_estimate", "sk_log_partition_exact",
    "CascadeSample", "cascade_functional_mc", "sample_pd",
    "smoothing_identity_check", "truncation_tail_estimate",
]
