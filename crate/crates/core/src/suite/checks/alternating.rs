use super::*;
use crate::indices::compositions;
use crate::numerics::binomial;
use crate::series::polylog_half;
use crate::suite::Outcome;
use crate::zeta_poly::{gamma_ratio_coeffs, lemma2_reduce, Lemma2Weight};
use rug::float::Constant;
use rug::{Float, Integer};

pub fn defs_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for sign in ["plus", "minus"] {
        for a in 1..=3u32 {
            for b in 2..=3u32 {
                out.push(Params::new().with("sign", sign).with("a", a).with("b", b));
            }
        }
    }
    out
}

/// `ζ*(a,b) = ζ(a,b) + ζ(a+b)` for either sign.
pub fn defs(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let sign = match choice(p, "sign", &["plus", "minus"])? {
        "plus" => Sign::Plus,
        _ => Sign::Minus,
    };
    let a = uint(p, "a", 1, 6)?;
    let b = uint(p, "b", 2, 6)?;
    let lhs = mpl(&[a, b], false, sign, ctx)?;
    let rhs = &mpl(&[a, b], true, sign, ctx)? + &mpl(&[a + b], true, sign, ctx)?;
    Ok(Outcome::numeric(lhs, rhs, TOL_TIGHT))
}

pub fn eq05_grid() -> Vec<Params> {
    grid1("m", 0..=3)
}

pub fn single_grid() -> Vec<Params> {
    vec![Params::new()]
}

fn log2(ctx: &PrecisionContext) -> BigReal {
    BigReal::new(Float::with_val(ctx.bits(), Constant::Log2), ctx.epsilon())
}

fn factorial(n: u32) -> Rational {
    Rational::from(Integer::from(Integer::factorial(n)))
}

pub fn eq05(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let m = uint(p, "m", 0, 6)?;
    let n = m + 2;
    let lhs = z_alt(&ones_then(m, 2), ctx)?;
    let l = log2(ctx);
    let sgn = if m % 2 == 0 { 1 } else { -1 };
    let mut rhs = zeta(n, ctx)?.mul_int(sgn);
    add(&mut rhs, &l.powi(n), &(Rational::from(2 * sgn) / factorial(n)));
    for k in 0..=n {
        let term = &polylog_half(k, ctx) * &l.powi(n - k);
        add(&mut rhs, &term, &(Rational::from(-sgn) / factorial(n - k)));
    }
    Ok(Outcome::numeric(lhs, rhs, TOL_TIGHT))
}

pub fn eq06(_: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let lhs = z_alt(&[1, 3], ctx)?;
    let l = log2(ctx);
    let mut rhs = polylog_half(4, ctx).mul_int(-2);
    add(&mut rhs, &l.powi(4), &Rational::from((-1, 12)));
    add(&mut rhs, &zeta(4, ctx)?, &Rational::from((15, 8)));
    add(&mut rhs, &(&zeta(3, ctx)? * &l), &Rational::from((-7, 4)));
    add(&mut rhs, &(&zeta(2, ctx)? * &l.powi(2)), &Rational::from((1, 2)));
    Ok(Outcome::numeric(lhs, rhs, TOL_TIGHT))
}

fn b(n: i64, k: i64) -> Rational {
    binomial(n, k)
}

/// `Σ_i (-1)^{r-i} {C(s-2+i,i) + C(s-1+i,i)} ζ_-({1}^{r-i}, 2s+i)`.
pub(crate) fn sum3_lhs(r: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let (ri, si) = (r as i64, s as i64);
    let mut acc = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let ii = i as i64;
        let mut c = b(si - 2 + ii, ii) + b(si - 1 + ii, ii);
        if (ri - ii) % 2 == 1 {
            c = -c;
        }
        add(&mut acc, &z_alt(&ones_then(r - i, 2 * s + i), ctx)?, &c);
    }
    Ok(acc)
}

/// `Σ_i (-1)^{r-i} 2^{r-i+1} {C(2s+i-1,i) - C(2s+i-1,i-1)} ζ_-({1}^{r-i}, 2s+i)`.
pub(crate) fn sum4_lhs(r: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let (ri, si) = (r as i64, s as i64);
    let mut acc = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let ii = i as i64;
        let mut c = (b(2 * si + ii - 1, ii) - b(2 * si + ii - 1, ii - 1)) * pow2(ri - ii + 1);
        if (ri - ii) % 2 == 1 {
            c = -c;
        }
        add(&mut acc, &z_alt(&ones_then(r - i, 2 * s + i), ctx)?, &c);
    }
    Ok(acc)
}

/// `Σ_{r_1+...+r_s=r} f(r) ζ*(r_1+2, ..., r_s+2)`.
fn weighted_star(r: u32, s: u32, f: impl Fn(&[u32]) -> Integer, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::zero(ctx.bits());
    for c in compositions(r, s as usize) {
        let parts: Vec<u32> = c.parts.iter().map(|x| x + 2).collect();
        add(&mut acc, &z_star(&parts, ctx)?, &Rational::from(f(&c.parts)));
    }
    Ok(acc)
}

pub fn eq07_grid() -> Vec<Params> {
    grid2("r", 0..=4, "s", 1..=3)
}

pub fn eq07(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 6)?;
    let s = uint(p, "s", 1, 4)?;
    let lhs = sum3_lhs(r, s, ctx)?;
    let rhs = weighted_star(r, s, |_| Integer::from(1), ctx)?;
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

pub fn eq08_grid() -> Vec<Params> {
    grid2("r", 0..=3, "s", 1..=3)
}

pub fn eq08(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 5)?;
    let s = uint(p, "s", 1, 4)?;
    let lhs = sum4_lhs(r, s, ctx)?;
    let g = gamma_ratio_coeffs(r as usize)?;
    let mut rhs = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let gi = g.coeffs[i as usize].eval(ctx)?;
        let inner = weighted_star(r - i, s, |rs| rs.iter().map(|x| Integer::from(x + 1)).product(), ctx)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        add(&mut rhs, &(&gi * &inner), &Rational::from(sign));
    }
    let shown: Vec<String> = g.coeffs.iter().map(|c| c.to_string()).collect();
    Ok(Outcome::numeric(lhs, rhs, TOL).note("gamma_coeffs", shown.join("; ")))
}

pub fn lemma2_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for weight in ["one", "product_r_plus_1"] {
        for k in 1..=3u32 {
            for r in 0..=2u32 {
                for q in 1..=2u32 {
                    out.push(
                        Params::new().with("k", k).with("r", r).with("q", q).with("s", 2u32).with("weight", weight),
                    );
                }
            }
        }
    }
    out
}

pub fn eq09_10(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let k = uint(p, "k", 1, 4)?;
    let r = uint(p, "r", 0, 3)?;
    let q = uint(p, "q", 0, 2)?;
    let s = uint(p, "s", 2, 3)?;
    let weight = match choice(p, "weight", &["one", "product_r_plus_1"])? {
        "one" => Lemma2Weight::One,
        _ => Lemma2Weight::ProductRPlus1,
    };
    let mut lhs = BigReal::zero(ctx.bits());
    for c in compositions(r, k as usize) {
        let parts: Vec<u32> = c.parts.iter().map(|x| q * x + s).collect();
        let f: Integer = match weight {
            Lemma2Weight::One => Integer::from(1),
            Lemma2Weight::ProductRPlus1 => c.parts.iter().map(|x| Integer::from(x + 1)).product(),
        };
        add(&mut lhs, &z_star(&parts, ctx)?, &Rational::from(f));
    }
    let poly = lemma2_reduce(r, k as usize, q, s, weight)?;
    let rhs = poly.eval(ctx)?;
    Ok(Outcome::numeric(lhs, rhs, TOL).note("polynomial", poly.to_string()))
}

pub fn eq12_grid() -> Vec<Params> {
    grid2("r", 0..=4, "s", 1..=3)
}

/// `Σ_i {C(s-2+i,i) + C(s-1+i,i)} ζ*_-({1}^{r-i}, 2s+i)`.
fn star_alt_lhs(r: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let si = s as i64;
    let mut acc = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let ii = i as i64;
        let c = b(si - 2 + ii, ii) + b(si - 1 + ii, ii);
        add(&mut acc, &z_alt_star(&ones_then(r - i, 2 * s + i), ctx)?, &c);
    }
    Ok(acc)
}

pub fn eq12(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 6)?;
    let s = uint(p, "s", 1, 4)?;
    let lhs = star_alt_lhs(r, s, ctx)?;
    let rhs = weighted_star(r, s, |rs| Integer::from(rs[0] + 1), ctx)?;
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

pub fn remark3i_grid() -> Vec<Params> {
    [(1, 1), (2, 1), (1, 2)].into_iter().map(|(r, s)| Params::new().with("r", r as u32).with("s", s as u32)).collect()
}

pub fn remark3i(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 4)?;
    let s = uint(p, "s", 1, 3)?;
    let lhs = star_alt_lhs(r, s, ctx)?;
    let mut rhs = BigReal::zero(ctx.bits());
    for c in compositions(r, s as usize) {
        let parts: Vec<u32> = c.parts.iter().flat_map(|&ri| ones_then(ri, 2)).collect();
        add(&mut rhs, &z_star(&parts, ctx)?, &Rational::from(1));
    }
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

pub fn r6_grid() -> Vec<Params> {
    grid1("r", 0..=6)
}

pub fn eq13(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 8)?;
    let mut lhs = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let c = if i == 0 { 2 } else { 1 } * if (r - i) % 2 == 1 { -1 } else { 1 };
        add(&mut lhs, &z_alt(&ones_then(r - i, 2 + i), ctx)?, &Rational::from(c));
    }
    Ok(Outcome::numeric(lhs, zeta(r + 2, ctx)?, TOL_TIGHT))
}

pub fn eq14(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let r = uint(p, "r", 0, 8)?;
    let mut lhs = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let c = if i == 0 { 2 } else { 1 };
        add(&mut lhs, &z_alt_star(&ones_then(r - i, 2 + i), ctx)?, &Rational::from(c));
    }
    Ok(Outcome::numeric(lhs, zeta(r + 2, ctx)?.mul_int(r as i64 + 1), TOL_TIGHT))
}

pub fn thm1_grid() -> Vec<Params> {
    grid2("r", 0..=3, "s", 1..=2)
}
