//! The one-parameter families `lemma1` and `theorem2` and their signed
//! α-derivatives
//! `((-1)^r / r!) d^r/dα^r`, expanded termwise through Pochhammer calculus.

use super::hurwitz::Side;
use super::mpl::{Method, SeriesValue};
use super::nested::{cvz_terms, Level, NestedSum};
use crate::error::{Error, Result};
use crate::indices::compositions;
use crate::numerics::accel::cvz_with_err;
use crate::numerics::{digamma, hurwitz_zeta, log_gamma, BigReal, PrecisionContext};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamFamily {
    /// `2 Σ (2α-1)_{m+1}/m! (-1)^m (m+α)^{-2s-1}` against
    /// `Γ(α)²/Γ(2α-1) Σ_{m_1≤...≤m_s} Π (m_i+α)^{-2}`.
    Lemma1,
    /// `Σ m!/(α)_{m+1} (2m+α+1)/((m+α)^s (m+1)^s) (-1)^m` against
    /// `Σ_{m_1≤...≤m_s} (m_1+α)^{-2} Π_{i≥2} ((m_i+α)(m_i+1))^{-1}`.
    Theorem2,
}

impl fmt::Display for ParamFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamFamily::Lemma1 => "lemma1",
            ParamFamily::Theorem2 => "theorem2",
        })
    }
}

impl FromStr for ParamFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(ParamFamily::Lemma1),
            "theorem2" => Ok(ParamFamily::Theorem2),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

pub fn eval_param_series(
    family: ParamFamily,
    alpha: &Rational,
    s: u32,
    side: Side,
    r: u32,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be positive".into()));
    }
    match family {
        ParamFamily::Lemma1 => {
            let lo = Rational::from((1, 2));
            let hi = Rational::from(&lo + s);
            if !(*alpha > lo && *alpha < hi) {
                return Err(Error::Domain(format!("lemma1 needs 1/2 < α < s+1/2, got {alpha}")));
            }
        }
        ParamFamily::Theorem2 => {
            if *alpha <= 0 {
                return Err(Error::Domain(format!("theorem2 needs α > 0, got {alpha}")));
            }
        }
    }
    let out = match (family, side) {
        (ParamFamily::Lemma1, Side::Lhs) => lemma1_lhs(alpha, s, r, ctx),
        (ParamFamily::Lemma1, Side::Rhs) => lemma1_rhs(alpha, s, r, ctx)?,
        (ParamFamily::Theorem2, Side::Lhs) => theorem2_lhs(alpha, s, r, ctx),
        (ParamFamily::Theorem2, Side::Rhs) => theorem2_rhs(alpha, s, r, ctx)?,
    };
    if out.value.err() > ctx.tolerance() {
        return Err(Error::NonConvergence(format!(
            "{family} {side:?} error {:.2e} above tolerance",
            out.value.err()
        )));
    }
    Ok(out)
}

fn binom(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

fn alternating(terms: Vec<Float>, ctx: &PrecisionContext) -> SeriesValue {
    let n = terms.len();
    let (v, e) = cvz_with_err(&terms);
    SeriesValue {
        value: BigReal::new(Float::with_val(ctx.bits(), v), e + 4.0 * ctx.epsilon()),
        terms_used: n,
        method: Method::Cvz,
    }
}

fn lemma1_lhs(alpha: &Rational, s: u32, r: u32, ctx: &PrecisionContext) -> SeriesValue {
    let prec = ctx.bits() + 48;
    let a = Float::with_val(prec, alpha);
    let w = Float::with_val(prec, &a * 2u32) - 1u32;
    let p = 2 * s + 1;
    let ru = r as usize;
    // running (w)_{m+1}/m! and e_i(1/(w+j), j ≤ m)
    let mut ratio = Float::with_val(prec, &w);
    let mut e = vec![Float::new(prec); ru + 1];
    e[0] = Float::with_val(prec, 1);
    let n = cvz_terms(ctx);
    let mut terms = Vec::with_capacity(n);
    for m in 0..n as u32 {
        let x = Float::with_val(prec, 1) / Float::with_val(prec, &w + m);
        for i in (1..=ru).rev() {
            let t = Float::with_val(prec, &e[i - 1] * &x);
            e[i] += t;
        }
        if m > 0 {
            ratio *= Float::with_val(prec, &w + m);
            ratio /= m;
        }
        let base = Float::with_val(prec, &a + m);
        let mut acc = Float::new(prec);
        for i in 0..=r {
            let k = r - i;
            let pw = base.clone().pow(-((p + k) as i32));
            let c = binom(p + k - 1, k) * Integer::from(Integer::i_pow_u(-2, i));
            acc += Float::with_val(prec, &e[i as usize] * &pw) * c;
        }
        terms.push(Float::with_val(prec, &acc * &ratio) * 2u32);
    }
    alternating(terms, ctx)
}

fn theorem2_lhs(alpha: &Rational, s: u32, r: u32, ctx: &PrecisionContext) -> SeriesValue {
    let prec = ctx.bits() + 48;
    let a = Float::with_val(prec, alpha);
    let ru = r as usize;
    // running m!/(α)_{m+1} and h_i(1/(α+j), j ≤ m)
    let mut ratio = Float::with_val(prec, 1) / &a;
    let mut h = vec![Float::new(prec); ru + 1];
    h[0] = Float::with_val(prec, 1);
    let n = cvz_terms(ctx);
    let mut terms = Vec::with_capacity(n);
    for m in 0..n as u32 {
        let x = Float::with_val(prec, 1) / Float::with_val(prec, &a + m);
        for i in 1..=ru {
            let t = Float::with_val(prec, &h[i - 1] * &x);
            h[i] += t;
        }
        if m > 0 {
            ratio *= m;
            ratio /= Float::with_val(prec, &a + m);
        }
        let base = Float::with_val(prec, &a + m);
        let lin = Float::with_val(prec, &a + (2 * m + 1));
        let tail = Float::with_val(prec, m + 1).pow(-(s as i32));
        // the (2m+α+1) factor loses one order and contributes -1 at first order
        let power = |k: u32| -> Float {
            Float::with_val(prec, base.clone().pow(-((s + k) as i32)) * binom(s + k - 1, k))
        };
        let mut acc = Float::new(prec);
        for i in 0..=r {
            let k = r - i;
            let mut inner = Float::with_val(prec, &lin * &power(k));
            if k > 0 {
                inner -= power(k - 1);
            }
            acc += Float::with_val(prec, &h[i as usize] * &inner);
        }
        terms.push(Float::with_val(prec, &acc * &ratio) * &tail);
    }
    alternating(terms, ctx)
}

fn nested_total(
    sums: impl Iterator<Item = (Integer, NestedSum)>,
    ctx: &PrecisionContext,
) -> Result<(BigReal, usize)> {
    let mut total = BigReal::zero(ctx.bits());
    let mut terms = 0;
    for (c, ns) in sums {
        let v = ns.evaluate(ctx)?;
        terms = terms.max(v.terms);
        total = &total + &v.value.mul_rational(&Rational::from(c));
    }
    Ok((total, terms))
}

/// `T^k Z` for `Z = Σ_{m_1≤...≤m_s} Π (m_i+α)^{-2}`, `T = (-1)^k/k! d^k`.
fn lemma1_nested(alpha: &Rational, s: u32, k: u32, ctx: &PrecisionContext) -> Result<(BigReal, usize)> {
    let d = Rational::from(alpha - 1u32);
    nested_total(
        compositions(k, s as usize).map(|c| {
            let coef = c.parts.iter().map(|&ri| Integer::from(ri + 1)).product::<Integer>();
            let levels = c
                .parts
                .iter()
                .map(|&ri| Level { factors: vec![(d.clone(), 2 + ri)], strict_below: false })
                .collect();
            (coef, NestedSum { levels, outer_gamma: None, alternating: false })
        }),
        ctx,
    )
}

/// Taylor coefficients of `Γ(x)²/Γ(2x-1)` around `x = α`, up to order `r`.
pub(crate) fn gamma_ratio_taylor(alpha: &Rational, r: u32, ctx: &PrecisionContext) -> Result<Vec<BigReal>> {
    let prec = ctx.bits() + 32;
    let a = Float::with_val(prec, alpha);
    let w = Float::with_val(prec, &a * 2u32) - 1u32;
    let lg = &log_gamma(&a, ctx)?.mul_int(2) - &log_gamma(&w, ctx)?;
    let g0 = lg.exp();
    let ru = r as usize;
    // log G(α+h) = log G(α) + Σ d_k h^k
    let mut d = vec![BigReal::zero(prec); ru + 1];
    if ru >= 1 {
        let v = Float::with_val(prec, digamma(&a) - digamma(&w)) * 2u32;
        d[1] = BigReal::new(v, 8.0 * ctx.epsilon());
    }
    for k in 2..=ru {
        let sk = Float::with_val(prec, k as u32);
        let za = hurwitz_zeta(&sk, &a, ctx)?.mul_int(2);
        let zw = hurwitz_zeta(&sk, &w, ctx)?.mul_int(1i64 << k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        d[k] = (&za - &zw).mul_rational(&Rational::from((sign, k as i64)));
    }
    // exp of a series with zero constant term: k c_k = Σ j d_j c_{k-j}
    let mut c = vec![BigReal::one(prec); ru + 1];
    for k in 1..=ru {
        let mut acc = BigReal::zero(prec);
        for j in 1..=k {
            acc = &acc + &(&d[j] * &c[k - j]).mul_int(j as i64);
        }
        c[k] = acc.mul_rational(&Rational::from((1, k as i64)));
    }
    Ok(c.iter().map(|ck| ck * &g0).collect())
}

fn lemma1_rhs(alpha: &Rational, s: u32, r: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let g = gamma_ratio_taylor(alpha, r, ctx)?;
    let mut total = BigReal::zero(ctx.bits());
    let mut terms = 0;
    for i in 0..=r {
        let (z, t) = lemma1_nested(alpha, s, r - i, ctx)?;
        terms = terms.max(t);
        let gi = if i % 2 == 0 { g[i as usize].clone() } else { -&g[i as usize] };
        total = &total + &(&gi * &z);
    }
    Ok(SeriesValue { value: total, terms_used: terms, method: Method::EulerMaclaurin })
}

fn theorem2_rhs(alpha: &Rational, s: u32, r: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let d = Rational::from(alpha - 1u32);
    let (value, terms) = nested_total(
        compositions(r, s as usize).map(|c| {
            let levels = c
                .parts
                .iter()
                .enumerate()
                .map(|(i, &ri)| Level {
                    factors: if i == 0 {
                        vec![(d.clone(), 2 + ri)]
                    } else {
                        vec![(d.clone(), 1 + ri), (Rational::new(), 1)]
                    },
                    strict_below: false,
                })
                .collect();
            (Integer::from(c.parts[0] + 1), NestedSum { levels, outer_gamma: None, alternating: false })
        }),
        ctx,
    )?;
    Ok(SeriesValue { value, terms_used: terms, method: Method::EulerMaclaurin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40, 1e-12).unwrap()
    }

    fn z(k: u32, c: &PrecisionContext) -> Float {
        Float::with_val(c.bits(), k).zeta()
    }

    fn close(a: &BigReal, b: &Float, tol: f64) -> bool {
        a.is_within(&BigReal::exact(b.clone()), tol)
    }

    #[test]
    fn alpha_one_base_values() {
        let c = ctx();
        let one = Rational::from(1);
        let z2 = z(2, &c);
        for fam in [ParamFamily::Lemma1, ParamFamily::Theorem2] {
            for side in [Side::Lhs, Side::Rhs] {
                let v = eval_param_series(fam, &one, 1, side, 0, &c).unwrap().value;
                assert!(close(&v, &z2, 1e-30), "{fam} {side:?} {v}");
            }
        }
        // Σ_{m_1≤m_2} (m_1 m_2)^{-2} = (7/4) ζ(4)
        let v = eval_param_series(ParamFamily::Lemma1, &one, 2, Side::Rhs, 0, &c).unwrap().value;
        assert!(close(&v, &(z(4, &c) * 7u32 / 4u32), 1e-30));
    }

    #[test]
    fn theorem2_first_derivative_is_two_zeta3() {
        let c = ctx();
        let one = Rational::from(1);
        let want = z(3, &c) * 2u32;
        for side in [Side::Lhs, Side::Rhs] {
            let v = eval_param_series(ParamFamily::Theorem2, &one, 1, side, 1, &c).unwrap().value;
            assert!(close(&v, &want, 1e-30), "{side:?} {v}");
        }
    }

    #[test]
    fn sides_agree_off_alpha_one() {
        let c = ctx();
        for fam in [ParamFamily::Lemma1, ParamFamily::Theorem2] {
            for al in [(3, 4), (1, 1), (5, 4)] {
                let al = Rational::from(al);
                for s in 1..=2 {
                    for r in 0..=2 {
                        let l = eval_param_series(fam, &al, s, Side::Lhs, r, &c).unwrap().value;
                        let rh = eval_param_series(fam, &al, s, Side::Rhs, r, &c).unwrap().value;
                        assert!(l.is_within(&rh, 1e-25), "{fam} α={al} s={s} r={r}: {l} vs {rh}");
                    }
                }
            }
        }
    }

    #[test]
    fn domain_guards() {
        let c = ctx();
        let half = Rational::from((1, 2));
        assert!(eval_param_series(ParamFamily::Lemma1, &half, 1, Side::Lhs, 0, &c).is_err());
        assert!(eval_param_series(ParamFamily::Theorem2, &Rational::new(), 1, Side::Lhs, 0, &c).is_err());
        assert!("lemma3".parse::<ParamFamily>().is_err());
    }
}
