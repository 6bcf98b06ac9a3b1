//! Numerical evaluation of every series the checks need.

mod asymptotic;
mod hurwitz;
mod mpl;
pub(crate) mod nested;
mod param;
mod theorem_a;

pub use hurwitz::{eval_hurwitz_mzv, Side};
pub use mpl::{eval_mpl, eval_mpl_with, mpl_partial_sums, polylog_half, EvalOptions, Method, SeriesValue};
pub use theorem_a::{
    check_theorem_a_conditions, eval_theorem_a_lhs, eval_theorem_a_rhs, ConditionReport,
    TheoremAParams,
};
pub use param::{eval_param_series, ParamFamily};
pub(crate) use param::gamma_ratio_taylor;
