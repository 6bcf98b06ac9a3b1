//! End-to-end runs: alternating sums reduced to zeta polynomials, and the
//! chain of identities behind the `{2,3}` expression of `ζ*(4,{2}^{s-1})`.

use super::checks::{sum3_lhs, sum4_lhs};
use super::{run_check, IdentityCheckResult, Outcome, Params};
use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;
use crate::zeta_poly::{gamma_ratio_coeffs, lemma2_reduce, Lemma2Weight, ZetaPolynomial};
use rug::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem1Sum {
    /// Binomial weights `C(s-2+i,i) + C(s-1+i,i)`.
    Sum3,
    /// Weights `2^{r-i+1} {C(2s+i-1,i) - C(2s+i-1,i-1)}`.
    Sum4,
}

impl Theorem1Sum {
    pub fn check_id(self) -> &'static str {
        match self {
            Theorem1Sum::Sum3 => "thm1_sum3",
            Theorem1Sum::Sum4 => "thm1_sum4",
        }
    }
}

/// The zeta polynomial the reduction assigns to the sum.
pub fn theorem1_polynomial(r: u32, s: u32, which: Theorem1Sum) -> Result<ZetaPolynomial> {
    match which {
        Theorem1Sum::Sum3 => lemma2_reduce(r, s as usize, 1, 2, Lemma2Weight::One),
        Theorem1Sum::Sum4 => {
            let g = gamma_ratio_coeffs(r as usize)?;
            let mut acc = ZetaPolynomial::zero();
            for i in 0..=r {
                let inner = lemma2_reduce(r - i, s as usize, 1, 2, Lemma2Weight::ProductRPlus1)?;
                let sign = Rational::from(if i % 2 == 0 { 1 } else { -1 });
                acc = &acc + &(&g.coeffs[i as usize] * &inner).scale(&sign);
            }
            Ok(acc)
        }
    }
}

fn bounds(p: &Params) -> Result<(u32, u32)> {
    use super::checks::uint;
    Ok((uint(p, "r", 0, 4)?, uint(p, "s", 1, 3)?))
}

fn run_thm1(p: &Params, ctx: &PrecisionContext, which: Theorem1Sum) -> Result<Outcome> {
    let (r, s) = bounds(p)?;
    let lhs = match which {
        Theorem1Sum::Sum3 => sum3_lhs(r, s, ctx)?,
        Theorem1Sum::Sum4 => sum4_lhs(r, s, ctx)?,
    };
    let poly = theorem1_polynomial(r, s, which)?;
    let rhs = poly.eval(ctx)?;
    Ok(Outcome::numeric(lhs, rhs, super::checks::TOL_LOOSE).note("polynomial", poly.to_string()))
}

pub(super) fn thm1_sum3(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    run_thm1(p, ctx, Theorem1Sum::Sum3)
}

pub(super) fn thm1_sum4(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    run_thm1(p, ctx, Theorem1Sum::Sum4)
}

pub fn theorem1_pipeline(r: u32, s: u32, which: Theorem1Sum, ctx: &PrecisionContext) -> Result<IdentityCheckResult> {
    run_check(which.check_id(), &Params::new().with("r", r).with("s", s), ctx)
}

/// Each link for one `s`: the `k = 2` identity, its right side rewritten,
/// the telescoped and Bernoulli forms of the moving-4 sum, then the final
/// identity under all three coefficient variants.
pub fn theorem3_pipeline(s: u32, ctx: &PrecisionContext) -> Result<Vec<IdentityCheckResult>> {
    if !(1..=5).contains(&s) {
        return Err(Error::OutOfRange(format!("s={s} outside 1..=5")));
    }
    let ps = Params::new().with("s", s);
    let mut out = vec![
        run_check("eq18", &ps, ctx)?,
        run_check("eq20", &ps, ctx)?,
        run_check("eq21_telescope", &ps.clone().with("t", 4u32), ctx)?,
    ];
    if s <= 4 {
        for form in ["chain", "final"] {
            out.push(run_check("eq21", &ps.clone().with("form", form), ctx)?);
        }
    }
    for v in ["proof_chain", "eq17", "eq22"] {
        out.push(run_check("eq16", &ps.clone().with("coefficient", v), ctx)?);
    }
    Ok(out)
}
