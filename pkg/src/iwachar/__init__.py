"""Finite-precision arithmetic in the Iwasawa algebra Zp[[T]] and order-of-vanishing bookkeeping."""

from .errors import (ArithmeticObstruction, DegreeCapExceeded, IndeterminateOrder,
                     InsufficientPrecision, InvalidInput, IwasawaError, MissingData,
                     NegativeDifference, NegativeResidual, NotAUnit, NotDivisible, PrimeMismatch,
                     TorsionViolation)
from .padic import (AtLeastPrecision, PadicInt, invert_unit, padic_arith, padic_binomial,
                    valuation)
from .series import (Indeterminate, IwasawaSeries, SeriesPrecision, WeierstrassData,
                     binomial_series, cyclotomic_gamma, is_distinguished, leading_value, mu_lambda,
                     norm_to_subalgebra, omega, ord_at_zero, series_arith, substitute_generator,
                     substitute_index, weierstrass_prepare)
from .modules import (CorankSequence, ElementaryModule, Inconclusive, Semisimple,
                      StructureDeduction, char_element, coinvariant_rank, deduce_structure,
                      module_mu_lambda, semisimple_criterion)
from .akashi import (FractionElement, GradedCharList, LocalFactorRule, akashi_compose,
                     akashi_selmer_formula, artin_formalism_check, eval_induced, local_factor,
                     ord_of_fraction)
from .scenario import (Determined, EulerComponents, ReductionData, Scenario, Undetermined,
                       amenable_pair, analytic_lower_bound_false_tate, bsd_inequality_check,
                       darmon_tian_order, euler_leading_valuation, load_scenario, m_p_count,
                       s_via_corank_difference, uncond_orders, vanishing_order_regular)

__version__ = "0.1.0"
