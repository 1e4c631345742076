"""Order-n upper bounds for point counts of curves over finite fields.

The bound of order n comes from minimizing the first normalized power sum
x_1 over the set of (x_1, ..., x_n) whose symmetric Toeplitz Gram matrix is
positive semidefinite, intersected with the line forced by nonnegativity of
the higher extension-field point counts.  See the module docstrings of
``gram``, ``domain``, ``optimize`` and ``bounds`` for the pieces.
"""

from .gram import (
    FactorPair,
    GramPoint,
    factor_pair,
    gram_det,
    gram_matrix,
    leading_minors,
    minus_factor,
    minus_factor_gradient,
    plus_factor,
)
from .domain import (
    INFINITE_GENUS,
    CurveCounts,
    DomainVerdict,
    IharaLine,
    ihara_point,
    ihara_slacks,
    in_closed_domain,
    in_open_domain,
    point_count_bound,
    point_from_counts,
    second_extension_bound,
)
from .optimize import (
    CriteriaReport,
    FeasibleSegment,
    NumericalError,
    ThresholdResult,
    feasible_segment,
    min_x1,
    min_x1_infinite,
    threshold_genus,
)
from .bounds import (
    BestBoundReport,
    OrderBound,
    TowerSpec,
    asymptotic_order_bound,
    best_bound,
    drinfeld_vladut_bound,
    fiber_product_bound,
    ihara_order2,
    order2_genus_threshold,
    order3_closed,
    order3_genus_threshold,
    order_n_bound,
    relative_order2,
    relative_weil,
    tsfasman_defect,
    tsfasman_partial,
    weil_order1,
)

__version__ = "0.1.0"

__all__ = [
    "BestBoundReport",
    "CriteriaReport",
    "CurveCounts",
    "DomainVerdict",
    "FactorPair",
    "FeasibleSegment",
    "GramPoint",
    "INFINITE_GENUS",
    "IharaLine",
    "NumericalError",
    "OrderBound",
    "ThresholdResult",
    "TowerSpec",
    "asymptotic_order_bound",
    "best_bound",
    "drinfeld_vladut_bound",
    "factor_pair",
    "feasible_segment",
    "fiber_product_bound",
    "gram_det",
    "gram_matrix",
    "ihara_order2",
    "ihara_point",
    "ihara_slacks",
    "in_closed_domain",
    "in_open_domain",
    "leading_minors",
    "min_x1",
    "min_x1_infinite",
    "minus_factor",
    "minus_factor_gradient",
    "order2_genus_threshold",
    "order3_closed",
    "order3_genus_threshold",
    "order_n_bound",
    "plus_factor",
    "point_count_bound",
    "point_from_counts",
    "relative_order2",
    "relative_weil",
    "second_extension_bound",
    "threshold_genus",
    "tsfasman_defect",
    "tsfasman_partial",
    "weil_order1",
    "__version__",
]
