mod alternating;
mod hyper;
mod star;

use super::{CheckSpec, ParamValue, Params};
use crate::error::{Error, Result};
use crate::indices::{MultiIndex, Sign};
use crate::numerics::{zeta_value, BigReal, PrecisionContext};
use crate::series::eval_mpl;
use rug::Rational;

pub(super) use alternating::{sum3_lhs, sum4_lhs};

pub(crate) const TOL_TIGHT: f64 = 1e-10;
pub(crate) const TOL: f64 = 1e-9;
pub(crate) const TOL_LOOSE: f64 = 1e-8;

macro_rules! spec {
    ($id:literal, $summary:literal, $grid:path, $run:path) => {
        CheckSpec { id: $id, summary: $summary, grid: $grid, run: $run }
    };
}

pub(super) static REGISTRY: &[CheckSpec] = &[
    spec!("defs", "star sums split into strict sums plus merged entries", alternating::defs_grid, alternating::defs),
    spec!("eq05", "ζ_-({1}^m,2) in polylogarithms at 1/2", alternating::eq05_grid, alternating::eq05),
    spec!("eq06", "ζ_-(1,3) in polylogarithms at 1/2", alternating::single_grid, alternating::eq06),
    spec!("eq07", "alternating sum with binomial weights = star sum over compositions", alternating::eq07_grid, alternating::eq07),
    spec!("eq08", "second alternating sum = gamma-ratio convolution of weighted star sums", alternating::eq08_grid, alternating::eq08),
    spec!("pochhammer_deriv", "derivatives of (w)_m and 1/(w)_{m+1} as nested harmonic sums", hyper::poch_grid, hyper::pochhammer_deriv),
    spec!("eq09_10", "symmetrized star sums reduce to zeta polynomials", alternating::lemma2_grid, alternating::eq09_10),
    spec!("eq11", "Taylor coefficients of Γ(α)²/Γ(2α-1) at α=1", hyper::eq11_grid, hyper::eq11),
    spec!("eq12", "star alternating sum = first-weighted star sum", alternating::eq12_grid, alternating::eq12),
    spec!("remark3i", "star alternating sum = star sum of {1}^r,2 blocks", alternating::remark3i_grid, alternating::remark3i),
    spec!("eq13", "depth-one case of the strict alternating sum", alternating::r6_grid, alternating::eq13),
    spec!("eq14", "depth-one case of the star alternating sum", alternating::r6_grid, alternating::eq14),
    spec!("thmA_special", "one-parameter specializations of the very-well-poised identity", hyper::special_grid, hyper::thm_a_special),
    spec!("thmA_random", "very-well-poised identity at random rational parameters", hyper::random_grid, hyper::thm_a_random),
    spec!("eq15", "weighted star sums = multiple of ζ(k+2s)", star::eq15_grid, star::eq15),
    spec!("eq15_k0_k1", "k=0 and k=1 cases: ζ*({2}^s) and the ζ(2s+1) formula", star::k01_grid, star::eq15_k0_k1),
    spec!("general15", "two-parameter extension with alternating right side", star::general15_grid, star::general15),
    spec!("eq16", "ζ*(4,{2}^{s-1}) in the {2,3} basis, three coefficient variants", star::eq16_grid, star::eq16),
    spec!("eq18", "k=2 case of the weighted star identity", star::s4_grid, star::eq18),
    spec!("eq19", "ζ*({2}^s) = 2(1-2^{1-2s})ζ(2s)", star::eq19_grid, star::eq19),
    spec!("eq20", "right side of the k=2 case as a multiple of ζ*({2}^{s+1})", star::s5_grid, star::eq20),
    spec!("eq21", "sum of ζ*({2}^{i-1},4,{2}^{s-i}) in Bernoulli numbers", star::eq21_grid, star::eq21),
    spec!("eq21_telescope", "harmonic-product telescoping for ζ(t)ζ*({2}^n)", star::telescope_grid, star::eq21_telescope),
    spec!("eq22_vs_eq17", "closed form of c(s) against its defining sum", star::s30_grid, star::eq22_vs_eq17),
    spec!("bernoulli_id", "quadratic Bernoulli-number identity", star::s30_grid, star::bernoulli_id),
    spec!("bernoulli_rec", "Bernoulli recurrence Σ C(n+1,j) B_j = 0", star::rec_grid, star::bernoulli_rec),
    spec!("bernoulli_odd", "B_n = 0 for odd n ≥ 3", star::odd_grid, star::bernoulli_odd),
    spec!("euler_formula", "ζ(2s) from Bernoulli numbers against the series", star::s6_grid, star::euler_formula),
    spec!("duality23", "duality for Hurwitz-type multiple zeta values", hyper::duality_grid, hyper::duality23),
    spec!("note2vi", "ζ({1}^l,k+2) = ζ({1}^k,l+2)", hyper::note2vi_grid, hyper::note2vi),
    spec!("thm1_sum3", "first alternating sum as a zeta polynomial", alternating::thm1_grid, super::pipelines::thm1_sum3),
    spec!("thm1_sum4", "second alternating sum as a zeta polynomial", alternating::thm1_grid, super::pipelines::thm1_sum4),
];

pub(super) fn int(p: &Params, key: &str, lo: i64, hi: i64) -> Result<i64> {
    match p.get(key) {
        Some(ParamValue::Int(n)) if (lo..=hi).contains(n) => Ok(*n),
        Some(ParamValue::Int(n)) => Err(Error::OutOfRange(format!("{key}={n} outside {lo}..={hi}"))),
        Some(v) => Err(Error::OutOfRange(format!("{key}={v} is not an integer"))),
        None => Err(Error::OutOfRange(format!("missing parameter {key}"))),
    }
}

pub(super) fn uint(p: &Params, key: &str, lo: u32, hi: u32) -> Result<u32> {
    int(p, key, lo as i64, hi as i64).map(|n| n as u32)
}

pub(super) fn choice<'a>(p: &'a Params, key: &str, allowed: &[&'static str]) -> Result<&'static str> {
    let got = match p.get(key) {
        Some(ParamValue::Text(s)) => s.as_str(),
        Some(v) => return Err(Error::OutOfRange(format!("{key}={v} is not a name"))),
        None => return Err(Error::OutOfRange(format!("missing parameter {key}"))),
    };
    allowed
        .iter()
        .find(|a| **a == got)
        .copied()
        .ok_or_else(|| Error::OutOfRange(format!("{key}={got}, expected one of {allowed:?}")))
}

pub(super) fn rational(p: &Params, key: &str, allowed: &[(i64, i64)]) -> Result<Rational> {
    let q = match p.get(key) {
        Some(ParamValue::Int(n)) => Rational::from(*n),
        Some(ParamValue::Text(s)) => s
            .parse::<Rational>()
            .map_err(|_| Error::OutOfRange(format!("{key}={s} is not a rational")))?,
        None => return Err(Error::OutOfRange(format!("missing parameter {key}"))),
    };
    if allowed.iter().any(|&(n, d)| q == Rational::from((n, d))) {
        Ok(q)
    } else {
        Err(Error::OutOfRange(format!("{key}={q} not in the supported set")))
    }
}

pub(super) fn grid1(key: &str, vals: impl IntoIterator<Item = u32>) -> Vec<Params> {
    vals.into_iter().map(|v| Params::new().with(key, v)).collect()
}

pub(super) fn grid2(
    k1: &str,
    v1: impl IntoIterator<Item = u32> + Clone,
    k2: &str,
    v2: impl IntoIterator<Item = u32> + Clone,
) -> Vec<Params> {
    let mut out = Vec::new();
    for a in v1 {
        for b in v2.clone() {
            out.push(Params::new().with(k1, a).with(k2, b));
        }
    }
    out
}

pub(super) fn mpl(parts: &[u32], strict: bool, sign: Sign, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(eval_mpl(&MultiIndex::new(parts.to_vec(), strict, sign)?, ctx)?.value)
}

/// `ζ_-(parts)`.
pub(super) fn z_alt(parts: &[u32], ctx: &PrecisionContext) -> Result<BigReal> {
    mpl(parts, true, Sign::Minus, ctx)
}

/// `ζ*_-(parts)`.
pub(super) fn z_alt_star(parts: &[u32], ctx: &PrecisionContext) -> Result<BigReal> {
    mpl(parts, false, Sign::Minus, ctx)
}

/// `ζ*(parts)`, with `ζ*(∅) = 1`.
pub(super) fn z_star(parts: &[u32], ctx: &PrecisionContext) -> Result<BigReal> {
    if parts.is_empty() {
        return Ok(BigReal::one(ctx.bits()));
    }
    mpl(parts, false, Sign::Plus, ctx)
}

pub(super) fn z_mzv(parts: &[u32], ctx: &PrecisionContext) -> Result<BigReal> {
    mpl(parts, true, Sign::Plus, ctx)
}

pub(super) fn zeta(k: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    zeta_value(k, ctx)
}

pub(super) fn ones_then(n: u32, last: u32) -> Vec<u32> {
    let mut v = vec![1; n as usize];
    v.push(last);
    v
}

pub(super) fn twos(n: u32) -> Vec<u32> {
    vec![2; n as usize]
}

pub(super) fn concat(parts: &[&[u32]]) -> Vec<u32> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

pub(super) fn add(acc: &mut BigReal, term: &BigReal, coef: &Rational) {
    if *coef != 0 {
        *acc = &*acc + &term.mul_rational(coef);
    }
}

/// `2^n` as an exact rational, negative `n` allowed.
pub(super) fn pow2(n: i64) -> Rational {
    let m = Rational::from(rug::Integer::from(1) << n.unsigned_abs() as u32);
    if n < 0 {
        m.recip()
    } else {
        m
    }
}
