"""Convergence analysis of power series solutions of the Heun equation."""
from .domains import (
    AbsBound, CellClass, DomainVerdict, PPDomain, RegionGrid, Status, Verdict, abs_boundary,
    abs_radius, abs_test, cell_class, characteristic_roots, domain_verdict, dominating_bound,
    heun_constants, hypergeom_ratio_limit, pp_domain, premise_start, ratio_test_limit,
    ratio_test_radius, region_scan, revised_characteristic,
)
from .errors import (
    ExcludedPointError, GeneratingPoleError, NoSolutionError, PremiseViolation,
    RecurrencePoleError, TooFewPointsError,
)
from .maier import VARIANT_IDS, MaierVariant, maier_condition, maier_transformed_params
from .recurrence import (
    CoefficientSequence, HeunParameters, RecurrenceRule, closed_form_term, coefficients,
    constant_rule, generating_value, heun_recurrence, indicial_roots, make_heun_params,
)
from .scaled import (
    ScaledReal, sr_abs, sr_add, sr_binomial, sr_cmp, sr_mul, sr_neg, sr_parse, sr_to_fixed,
    sr_to_sci,
)
from .summation import (
    DoubleSeriesArgs, ProbeVerdict, SumReport, abs_diagonal_sum, diagonal_sum,
    direct_sum, double_series_args, heun_series_sum, probe, rect_double_sum, sum_report,
)

__version__ = "0.1.0"
