use super::nested::{Level, NestedSum};
use crate::error::{Error, Result};
use crate::indices::{MultiIndex, Sign};
use crate::numerics::{accelerate, BigReal, PrecisionContext, Scheme};
use rug::Float;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a value was (or should be) obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Direct,
    Levin,
    Cvz,
    EulerMaclaurin,
    Extrapolated,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Direct => "direct",
            Method::Levin => "levin",
            Method::Cvz => "cvz",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::Extrapolated => "extrapolated",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "direct" => Ok(Method::Direct),
            "levin" => Ok(Method::Levin),
            "cvz" => Ok(Method::Cvz),
            _ => Err(Error::Parse(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: BigReal,
    pub terms_used: usize,
    pub method: Method,
}

impl SeriesValue {
    fn checked(self, ctx: &PrecisionContext) -> Result<Self> {
        if self.value.err() <= ctx.tolerance() {
            Ok(self)
        } else {
            Err(Error::NonConvergence(format!(
                "error estimate {:.2e} above tolerance {:.2e} after {} terms ({})",
                self.value.err(),
                ctx.tolerance(),
                self.terms_used,
                self.method
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub method: Method,
    /// Cap on lattice terms for the direct and Levin paths.
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { method: Method::Auto, max_terms: 200_000 }
    }
}

pub(crate) fn nested_for(k: &MultiIndex) -> NestedSum {
    NestedSum {
        levels: k.parts().iter().map(|&p| Level::plain(p, k.is_strict())).collect(),
        outer_gamma: None,
        alternating: k.sign() == Sign::Minus,
    }
}

/// Value of the (star-)MZV or its alternating variant named by `k`.
pub fn eval_mpl(k: &MultiIndex, ctx: &PrecisionContext) -> Result<SeriesValue> {
    eval_mpl_with(k, ctx, EvalOptions::default())
}

pub fn eval_mpl_with(k: &MultiIndex, ctx: &PrecisionContext, opt: EvalOptions) -> Result<SeriesValue> {
    let ns = nested_for(k);
    let alternating = k.sign() == Sign::Minus;
    let out = match opt.method {
        Method::Auto | Method::EulerMaclaurin | Method::Extrapolated => {
            let v = ns.evaluate(ctx)?;
            let m = if alternating { Method::Cvz } else { Method::EulerMaclaurin };
            SeriesValue { value: v.value, terms_used: v.terms, method: m }
        }
        Method::Cvz => {
            if !alternating {
                return Err(Error::Domain(format!("cvz needs an alternating series, got {k}")));
            }
            let v = ns.evaluate(ctx)?;
            SeriesValue { value: v.value, terms_used: v.terms, method: Method::Cvz }
        }
        Method::Direct => {
            let m = opt.max_terms.max(2);
            let sums = partial_sums(&ns, m, ctx);
            let last = &sums[m - 1];
            let gap = if alternating {
                Float::with_val(last.prec(), last - &sums[m - 2])
            } else {
                Float::with_val(last.prec(), last - &sums[m / 2 - 1])
            };
            let e = gap.abs().to_f64() + 4.0 * last.to_f64().abs() * ctx.epsilon() * m as f64;
            SeriesValue {
                value: BigReal::new(Float::with_val(ctx.bits(), last), e),
                terms_used: m,
                method: Method::Direct,
            }
        }
        Method::Levin => {
            let m = opt.max_terms.clamp(8, 40);
            let sums: Vec<BigReal> =
                partial_sums(&ns, m, ctx).into_iter().map(BigReal::exact).collect();
            let v = accelerate(&sums, Scheme::LevinU, ctx)?;
            SeriesValue { value: v, terms_used: m, method: Method::Levin }
        }
    };
    out.checked(ctx)
}

fn partial_sums(ns: &NestedSum, m: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let mut out = Vec::with_capacity(m);
    ns.walk(m, ctx.bits() + 32, |_, s, _| out.push(s[s.len() - 1].clone()));
    out
}

/// Partial sums `Σ_{m_n ≤ M}` of the defining series, for `M = 1..=upto`.
pub fn mpl_partial_sums(k: &MultiIndex, upto: usize, ctx: &PrecisionContext) -> Vec<BigReal> {
    partial_sums(&nested_for(k), upto, ctx).into_iter().map(BigReal::exact).collect()
}

/// `Li_k(1/2) = Σ_{m≥1} 2^{-m} m^{-k}`.
pub fn polylog_half(k: u32, ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits() + 16;
    let m_max = ctx.bits() as usize + 8;
    let mut acc = Float::new(prec);
    let mut p = Float::with_val(prec, 1);
    for m in 1..=m_max {
        p /= 2u32;
        let mut t = p.clone();
        for _ in 0..k {
            t /= m as u32;
        }
        acc += t;
    }
    // tail ≤ Σ_{m>M} 2^{-m} = 2^{-M}
    let e = p.to_f64() + 4.0 * acc.to_f64() * ctx.epsilon();
    BigReal::new(Float::with_val(ctx.bits(), acc), e)
}
