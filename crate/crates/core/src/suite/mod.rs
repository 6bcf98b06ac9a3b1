//! Named identity checks, each run over a parameter grid and reduced to an
//! [`IdentityCheckResult`].

mod checks;
mod pipelines;
mod report;

pub use pipelines::{theorem1_pipeline, theorem1_polynomial, theorem3_pipeline, Theorem1Sum};
pub use report::{IdentityCheckResult, ParamValue, Params, Quantity, Status, SuiteReport};

use crate::error::{Error, Result};
use crate::numerics::{BigReal, PrecisionContext};
use rayon::prelude::*;
use regex::Regex;
use rug::{Float, Rational};
use std::time::Instant;

pub struct CheckSpec {
    pub id: &'static str,
    pub summary: &'static str,
    grid: fn() -> Vec<Params>,
    run: fn(&Params, &PrecisionContext) -> Result<Outcome>,
}

impl CheckSpec {
    pub fn default_grid(&self) -> Vec<Params> {
        (self.grid)()
    }
}

pub(crate) enum Sides {
    Numeric { lhs: BigReal, rhs: BigReal },
    Exact { lhs: Rational, rhs: Rational },
}

pub(crate) struct Outcome {
    pub sides: Sides,
    pub tolerance: f64,
    /// Documented comparison: never counts as pass or fail.
    pub reported: bool,
    pub extra: Vec<(&'static str, ParamValue)>,
}

impl Outcome {
    pub fn numeric(lhs: BigReal, rhs: BigReal, tolerance: f64) -> Self {
        Self { sides: Sides::Numeric { lhs, rhs }, tolerance, reported: false, extra: Vec::new() }
    }

    pub fn exact(lhs: Rational, rhs: Rational) -> Self {
        Self { sides: Sides::Exact { lhs, rhs }, tolerance: 0.0, reported: false, extra: Vec::new() }
    }

    pub fn reported(mut self) -> Self {
        self.reported = true;
        self
    }

    pub fn note(mut self, key: &'static str, v: impl Into<ParamValue>) -> Self {
        self.extra.push((key, v.into()));
        self
    }
}

pub fn registry() -> &'static [CheckSpec] {
    checks::REGISTRY
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

pub fn find_check(id: &str) -> Result<&'static CheckSpec> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn residuals(sides: &Sides, digits: usize) -> (Quantity, Quantity, f64, f64, f64) {
    match sides {
        Sides::Numeric { lhs, rhs } => {
            let p = lhs.prec().max(rhs.prec());
            let d = Float::with_val(p, lhs.value() - rhs.value()).abs();
            let abs = d.to_f64();
            let rel = if rhs.value().is_zero() { abs } else { (d / rhs.value().clone().abs()).to_f64() };
            let q = |x: &BigReal| Quantity::Real { value: x.to_decimal(digits), err: x.err() };
            (q(lhs), q(rhs), abs, rel, lhs.err() + rhs.err())
        }
        Sides::Exact { lhs, rhs } => {
            let d = Rational::from(lhs - rhs).abs();
            let abs = d.to_f64();
            let rel = if *rhs == 0 { abs } else { (d / rhs.clone().abs()).to_f64() };
            (Quantity::Exact(lhs.to_string()), Quantity::Exact(rhs.to_string()), abs, rel, 0.0)
        }
    }
}

/// Run one check at one parameter point. Unknown ids and out-of-range
/// parameters are errors; evaluation failures become `fail` records.
pub fn run_check(check_id: &str, params: &Params, ctx: &PrecisionContext) -> Result<IdentityCheckResult> {
    let spec = find_check(check_id)?;
    let start = Instant::now();
    let got = (spec.run)(params, ctx);
    let wall_ms = start.elapsed().as_millis() as u64;
    let mut params = params.clone();
    let out = match got {
        Ok(o) => o,
        Err(e @ (Error::OutOfRange(_) | Error::Parse(_) | Error::UnknownCheck(_))) => return Err(e),
        Err(e) => {
            return Ok(IdentityCheckResult {
                check_id: check_id.to_string(),
                params,
                lhs: Quantity::Unavailable(()),
                rhs: Quantity::Unavailable(()),
                abs_residual: f64::INFINITY,
                rel_residual: f64::INFINITY,
                tolerance: 0.0,
                status: Status::Fail,
                wall_ms,
                reason: Some(e.to_string()),
            })
        }
    };
    for (k, v) in out.extra {
        params.insert(k, v);
    }
    let (lhs, rhs, abs, rel, err_sum) = residuals(&out.sides, ctx.digits() as usize);
    let tol = out.tolerance;
    let rhs_big = match &out.sides {
        Sides::Numeric { rhs, .. } => rhs.value().clone().abs() > 1,
        Sides::Exact { rhs, .. } => rhs.clone().abs() > 1,
    };
    let close = match &out.sides {
        Sides::Exact { lhs, rhs } => lhs == rhs,
        Sides::Numeric { .. } => abs <= tol || (rhs_big && rel <= tol),
    };
    let mut reason = None;
    let status = if out.reported {
        Status::Reported
    } else if 10.0 * err_sum > tol && !matches!(out.sides, Sides::Exact { .. }) {
        reason = Some(format!("evaluator error {err_sum:.2e} too large for tolerance"));
        Status::Fail
    } else if close {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(IdentityCheckResult {
        check_id: check_id.to_string(),
        params,
        lhs,
        rhs,
        abs_residual: abs,
        rel_residual: rel,
        tolerance: tol,
        status,
        wall_ms,
        reason,
    })
}

/// Checks selected by a comma-separated list of ids or `*` globs; `all`
/// or `None` selects everything. A pattern matching nothing is an error.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static CheckSpec>> {
    let pats: Vec<&str> = match filter {
        None | Some("all") | Some("") => return Ok(registry().iter().collect()),
        Some(f) => f.split(',').map(str::trim).filter(|p| !p.is_empty()).collect(),
    };
    let mut out: Vec<&'static CheckSpec> = Vec::new();
    for p in pats {
        let re = Regex::new(&format!("^{}$", regex::escape(p).replace(r"\*", ".*")))
            .map_err(|e| Error::Parse(e.to_string()))?;
        let hits: Vec<_> = registry().iter().filter(|c| re.is_match(c.id)).collect();
        if hits.is_empty() {
            return Err(Error::UnknownCheck(p.to_string()));
        }
        for h in hits {
            if !out.iter().any(|c| c.id == h.id) {
                out.push(h);
            }
        }
    }
    out.sort_by_key(|c| registry().iter().position(|r| r.id == c.id));
    Ok(out)
}

/// Every selected check over its default grid, in registry then grid order.
pub fn run_suite(filter: Option<&str>, ctx: &PrecisionContext) -> Result<SuiteReport> {
    let jobs: Vec<(&CheckSpec, Params)> = select(filter)?
        .into_iter()
        .flat_map(|c| c.default_grid().into_iter().map(move |p| (c, p)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|(c, p)| run_check(c.id, p, ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { results })
}
