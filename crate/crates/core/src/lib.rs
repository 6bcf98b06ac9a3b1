//! High-precision evaluation of multiple zeta(-star) values, their alternating
//! variants and the hypergeometric series they come from, together with an
//! exact-rational layer for zeta polynomials and a registry of identity checks.
//!
//! Index convention: an index `(k_1, ..., k_n)` is read innermost first, so
//! `ζ(k_1, ..., k_n) = Σ_{0 < m_1 < ... < m_n} m_1^{-k_1} ... m_n^{-k_n}` and the
//! sign `z = ±1` rides on the outermost variable as `z^{m_n - 1}`.

pub mod error;
pub mod indices;
pub mod numerics;
pub mod series;
pub mod suite;
pub mod zeta_poly;

pub use error::{Error, Result};
pub use indices::{HurwitzIndex, MultiIndex, Sign};

pub use numerics::{BigReal, PrecisionContext};

pub use zeta_poly::{ZetaMonomial, ZetaPolynomial};
