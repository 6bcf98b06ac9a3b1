//! Working-precision arithmetic, special functions and acceleration kernels.

pub mod accel;
pub mod bernoulli;
pub mod precision;
pub mod real;
pub mod special;

pub use accel::{accelerate, Scheme};
pub use bernoulli::{bernoulli, bernoulli_float, BernoulliTable};
pub use precision::PrecisionContext;
pub use real::BigReal;
pub use special::{
    binomial, digamma, hurwitz_zeta, log_gamma, pochhammer, pochhammer_exact, zeta_even_exact,
    zeta_value, ZetaEvenValue,
};
