use super::accel::cvz_with_err;
use super::bernoulli::{bernoulli, bernoulli_float};
use super::precision::PrecisionContext;
use super::real::BigReal;
use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Rising factorial `a (a+1) ... (a+m-1)`.
pub fn pochhammer(a: &BigReal, m: u32) -> BigReal {
    let mut acc = BigReal::one(a.prec());
    let mut f = a.clone();
    let one = BigReal::one(a.prec());
    for _ in 0..m {
        acc = &acc * &f;
        f = &f + &one;
    }
    acc
}

pub fn pochhammer_exact(a: &Rational, m: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut f = a.clone();
    for _ in 0..m {
        acc *= &f;
        f += 1;
    }
    acc
}

/// `C(n, k) = (n-k+1)_k / k!` for `k ≥ 0`, and 0 for negative `k`.
///
/// With this reading `C(-1, 0) = 1` and `C(i-1, i) = 0` for `i ≥ 1`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::new();
    }
    let mut acc = Rational::from(1);
    for j in 0..k {
        acc *= Rational::from(n - k + 1 + j);
        acc /= j + 1;
    }
    acc
}

/// `ln Γ(x)` for `x > 0`: shift up, then Stirling with Bernoulli terms.
pub fn log_gamma(x: &Float, ctx: &PrecisionContext) -> Result<BigReal> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {}", x.to_f64())));
    }
    let prec = ctx.bits() + 32;
    let target = ctx.digits().max(10) as f64;
    let mut y = Float::with_val(prec, x);
    let mut shift = Float::with_val(prec, 1);
    while y < target {
        shift *= &y;
        y += 1;
    }
    let ln_y = Float::with_val(prec, y.ln_ref());
    let mut v = Float::with_val(prec, &y - 0.5) * &ln_y - &y;
    let two_pi = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32);
    v += two_pi.ln() / 2;
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let y2 = Float::with_val(prec, &y * &y);
    let mut ypow = y.clone();
    let mut last = f64::INFINITY;
    let mut omitted = 0.0;
    for k in 1..400usize {
        let b = bernoulli_float(2 * k, prec);
        let t = b / ((2 * k * (2 * k - 1)) as f64) / &ypow;
        let mag = t.to_f64().abs();
        if mag > last {
            omitted = last;
            break;
        }
        last = mag;
        if Float::with_val(prec, t.abs_ref()) < eps {
            omitted = mag;
            break;
        }
        v += t;
        ypow *= &y2;
    }
    v -= shift.ln();
    let scale = v.to_f64().abs() + y.to_f64() * ln_y.to_f64();
    let err = omitted + 16.0 * scale * ctx.epsilon();
    let out = Float::with_val(ctx.bits(), &v);
    Ok(BigReal::new(out, err))
}

/// Digamma `ψ(x)` at working precision.
pub fn digamma(x: &Float) -> Float {
    Float::with_val(x.prec(), x.digamma_ref())
}

/// `Σ_{m≥0} (m+a)^{-s}` for `s > 1`, `a > 0`.
///
/// Direct terms until `m + a` reaches the digit count, then an
/// Euler–Maclaurin tail truncated where its terms start to grow.
pub fn hurwitz_zeta(s: &Float, a: &Float, ctx: &PrecisionContext) -> Result<BigReal> {
    if !(s.is_finite() && *s > 1) {
        return Err(Error::Domain(format!("hurwitz_zeta needs s > 1, got {}", s.to_f64())));
    }
    if !(a.is_finite() && *a > 0) {
        return Err(Error::Domain(format!("hurwitz_zeta needs a > 0, got {}", a.to_f64())));
    }
    let prec = ctx.bits() + 16;
    let cut = ctx.digits().max(10) as f64;
    let mut x = Float::with_val(prec, a);
    let mut sum = Float::new(prec);
    let neg_s = Float::with_val(prec, -s);
    while x < cut {
        sum += Float::with_val(prec, (&x).pow(&neg_s));
        x += 1;
    }
    let xs = Float::with_val(prec, (&x).pow(&neg_s));
    // ∫_x^∞ t^{-s} dt + x^{-s}/2
    sum += Float::with_val(prec, &xs * &x) / Float::with_val(prec, s - 1u32);
    sum += Float::with_val(prec, &xs / 2u32);
    // B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
    let x2 = Float::with_val(prec, &x * &x);
    let mut poch = Float::with_val(prec, s);
    let mut fact = Float::with_val(prec, 2);
    let mut xp = Float::with_val(prec, &xs / &x);
    let mut last = f64::INFINITY;
    let mut omitted = 0.0;
    for k in 1..500usize {
        let t = Float::with_val(prec, &bernoulli_float(2 * k, prec) * &poch) / &fact * &xp;
        let mag = t.to_f64().abs();
        if mag >= last || mag == 0.0 {
            omitted = last.min(mag);
            break;
        }
        last = mag;
        sum += t;
        if mag < f64::MIN_POSITIVE || mag < sum.to_f64().abs() * 2f64.powi(-(prec as i32)) {
            omitted = mag;
            break;
        }
        // advance (s)_{2k-1} -> (s)_{2k+1} and (2k)! -> (2k+2)!
        poch *= Float::with_val(prec, s + (2 * k - 1) as u32);
        poch *= Float::with_val(prec, s + (2 * k) as u32);
        fact *= ((2 * k + 1) * (2 * k + 2)) as u32;
        xp /= &x2;
    }
    let err = omitted + 8.0 * sum.to_f64().abs() * ctx.epsilon();
    Ok(BigReal::new(Float::with_val(ctx.bits(), &sum), err))
}

/// `ζ(2s) = q π^{2s}` with exact rational `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaEvenValue {
    pub s: u32,
    pub q: Rational,
}

impl ZetaEvenValue {
    pub fn value(&self, ctx: &PrecisionContext) -> BigReal {
        let prec = ctx.bits();
        let pi = Float::with_val(prec + 16, Constant::Pi);
        let v = Float::with_val(prec + 16, &self.q) * pi.pow(2 * self.s);
        let e = v.to_f64().abs() * ctx.epsilon() * (4 + 2 * self.s) as f64;
        BigReal::new(Float::with_val(prec, v), e)
    }
}

/// Euler's formula `ζ(2s) = (-1)^{s-1} B_{2s} (2π)^{2s} / (2 (2s)!)`.
pub fn zeta_even_exact(s: u32) -> ZetaEvenValue {
    assert!(s >= 1, "zeta_even_exact needs s >= 1");
    let b = bernoulli(2 * s as usize);
    let mut q: Rational = b * Rational::from(Integer::from(1) << (2 * s)) / 2u32;
    q /= Integer::from(Integer::factorial(2 * s));
    if s % 2 == 0 {
        q = -q;
    }
    ZetaEvenValue { s, q }
}

/// `ζ(k)` for integer `k ≥ 2`; even values from Euler's formula, odd ones
/// from the alternating η-series. Cached per (k, digits).
pub fn zeta_value(k: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if k < 2 {
        return Err(Error::Domain(format!("ζ({k}) diverges")));
    }
    if k % 2 == 0 {
        return Ok(zeta_even_exact(k / 2).value(ctx));
    }
    static C: OnceLock<RwLock<HashMap<(u32, u32), BigReal>>> = OnceLock::new();
    let cache = C.get_or_init(|| RwLock::new(HashMap::new()));
    let key = (k, ctx.bits());
    if let Some(v) = cache.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let prec = ctx.bits() + 16;
    let n = (1.31 * ctx.digits() as f64).ceil() as usize + 12;
    let terms: Vec<Float> = (1..=n)
        .map(|m| Float::with_val(prec, Float::with_val(prec, m).pow(k)).recip())
        .collect();
    let (eta, e) = cvz_with_err(&terms);
    let factor = Float::with_val(prec, 1) - Float::with_val(prec, Float::i_exp(1, 1 - k as i32));
    let z = eta / &factor;
    let err = e / factor.to_f64() + 8.0 * z.to_f64().abs() * ctx.epsilon();
    let v = BigReal::new(Float::with_val(ctx.bits(), &z), err);
    cache.write().unwrap().insert(key, v.clone());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs().to_f64() <= tol
    }

    #[test]
    fn pochhammer_values() {
        let p = ctx().bits();
        let one = BigReal::one(p);
        assert_eq!(pochhammer(&one, 0).to_f64(), 1.0);
        assert_eq!(pochhammer(&one, 5).to_f64(), 120.0);
        let half = BigReal::from_f64(p, 0.5);
        assert_eq!(pochhammer(&half, 3).to_f64(), 15.0 / 8.0);
        assert_eq!(pochhammer_exact(&Rational::from((1, 2)), 3), Rational::from((15, 8)));
        assert_eq!(pochhammer_exact(&Rational::from(0), 3), 0);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(-1, 0), 1);
        for i in 1..6 {
            assert_eq!(binomial(i - 1, i), 0);
        }
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-2, 3), -4);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn log_gamma_values() {
        let c = ctx();
        let p = c.bits();
        for x in [1.0, 2.0] {
            let g = log_gamma(&Float::with_val(p, x), &c).unwrap();
            assert!(g.value().to_f64().abs() < 1e-38, "{x}");
        }
        let g = log_gamma(&Float::with_val(p, 0.5), &c).unwrap();
        let want = Float::with_val(p, Constant::Pi).sqrt().ln();
        assert!(close(g.value(), &want, 1e-38));
        assert!(g.err() < 1e-35);
        assert!(log_gamma(&Float::with_val(p, 0), &c).is_err());
        assert!(log_gamma(&Float::with_val(p, -1.5), &c).is_err());
        for x in [0.01, 0.37, 3.25, 17.5, 123.456] {
            let xf = Float::with_val(p, x);
            let g = log_gamma(&xf, &c).unwrap();
            let want = Float::with_val(p, xf.ln_gamma_ref());
            assert!(close(g.value(), &want, 1e-36), "x = {x}");
        }
    }

    #[test]
    fn hurwitz_values() {
        let c = ctx();
        let p = c.bits();
        let one = Float::with_val(p, 1);
        let pi = Float::with_val(p, Constant::Pi);
        let z2 = hurwitz_zeta(&Float::with_val(p, 2), &one, &c).unwrap();
        assert!(close(z2.value(), &(pi.clone().square() / 6u32), 1e-38));
        let z4 = hurwitz_zeta(&Float::with_val(p, 4), &one, &c).unwrap();
        assert!(close(z4.value(), &(pi.clone().pow(4u32) / 90u32), 1e-38));
        let s = Float::with_val(p, 2.5);
        let a = Float::with_val(p, 0.3);
        let h0 = hurwitz_zeta(&s, &a, &c).unwrap();
        let h1 = hurwitz_zeta(&s, &Float::with_val(p, &a + 1u32), &c).unwrap();
        let d = Float::with_val(p, h0.value() - h1.value());
        assert!(close(&d, &Float::with_val(p, (&a).pow(&Float::with_val(p, -&s))), 1e-37));
        assert!(hurwitz_zeta(&one, &one, &c).is_err());
        assert!(hurwitz_zeta(&s, &Float::with_val(p, 0), &c).is_err());
    }

    #[test]
    fn even_zeta_exact() {
        assert_eq!(zeta_even_exact(1).q, Rational::from((1, 6)));
        assert_eq!(zeta_even_exact(2).q, Rational::from((1, 90)));
        assert_eq!(zeta_even_exact(3).q, Rational::from((1, 945)));
        assert_eq!(zeta_even_exact(4).q, Rational::from((1, 9450)));
    }

    #[test]
    fn zeta_values_against_mpfr() {
        let c = ctx();
        for k in 2..=12u32 {
            let z = zeta_value(k, &c).unwrap();
            let want = Float::with_val(c.bits(), k).zeta();
            assert!(close(z.value(), &want, 1e-38), "k = {k}");
            assert!(z.err() < 1e-30);
        }
        assert!(zeta_value(1, &c).is_err());
    }
}
