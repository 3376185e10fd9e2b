"""Inconsistency analysis of pairwise comparisons matrices over groups.

Indicator maps ``T: X^3 -> G`` valued in an abelian linearly ordered group
measure how far a triad ``(x, y, z)`` is from ``x . z = y``; the worst triad of a
matrix gives its inconsistency indicator.
"""

from pcx.algebra import (
    AloGroup,
    Carrier,
    ForeignElementError,
    GAbsoluteValue,
    GMetric,
    Group,
    Morphism,
    Order,
    StructureMismatch,
    check_absvalue_axioms,
    check_alo_axioms,
    check_group_axioms,
    check_metric_axioms,
    finite_group,
    gnorm,
    metric_from_absolute_value,
    norm_induced_metric,
    product_group,
    transport_absolute_value,
    transport_metric,
)
from pcx.indicators import (
    AbelianRequired,
    G3Metric,
    IndicatorMap,
    Provenance,
    cap_min,
    check_g3_axioms,
    check_indicator_axioms,
    combine_max,
    combine_odot,
    full_symmetrization,
    g3_from_indicator,
    indicator_from_g3,
    indicator_from_metric,
    inverse_indicator,
    is_bounded_by,
    metric_from_indicator,
    pairwise_symmetrization,
    product_indicator,
    reverse_indicator,
    transport_indicator,
)
from pcx.laws import AxiomViolation, LawCheck, LawReport
from pcx.pcmatrix import (
    PCMatrix,
    TriadReport,
    additive_indicator,
    inconsistency_indicator,
    indicator_of_set,
    is_consistent,
    relabel,
    validate_pc,
)

__version__ = "0.1.0"
