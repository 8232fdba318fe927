"""Exact quadratic discrepancy of binary codes and finite metric spaces."""

from .codes import (
    BinaryCode,
    DistanceDistribution,
    DualDistribution,
    distance_distribution,
    dual_code,
    dual_distribution,
    extend_code,
    from_id,
    golay23,
    hamming_code,
    parse_code,
    parse_generator,
    qr17,
    random_code,
    repetition,
    simplex_code,
    subcube,
)
from .discrepancy import (
    DiscrepancyReport,
    discrepancy,
    discrepancy_brute,
    discrepancy_dual,
    discrepancy_spectrum,
    expected_discrepancy,
    variance_bound,
)
from .errors import (
    DomainError,
    IdentityMismatchError,
    ParseError,
    ResourceLimitError,
    ValidationError,
)
from .kernels import lambda_average, lambda_eval, lambda_values, mu_t
from .krawtchouk import kraw_eval, kraw_table, lambda_hat, macwilliams_forward, macwilliams_inverse
from .lp_bounds import certify_minimizer, check_certificate, primal_discrepancy_lp
from .metric_space import FiniteMetricSpace, general_discrepancy, load_space
