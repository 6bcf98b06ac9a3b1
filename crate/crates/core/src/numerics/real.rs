use rug::float::Round;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A working-precision real together with an absolute error bound.
///
/// Arithmetic adds the propagated input error and one rounding of the result
/// to `err`, so the bound stays conservative as long as the inputs' bounds are.
#[derive(Clone, Debug, PartialEq)]
pub struct BigReal {
    value: Float,
    err: f64,
}

fn ulp(x: &Float) -> f64 {
    let m = x.to_f64().abs();
    if m == 0.0 {
        0.0
    } else {
        m * 2f64.powi(1 - x.prec() as i32)
    }
}

fn clamp(e: f64) -> f64 {
    if e.is_finite() {
        e
    } else {
        f64::MAX
    }
}

/// Round an f64 bound up by a hair so sums of bounds stay bounds.
fn up(e: f64) -> f64 {
    clamp(e * (1.0 + 4.0 * f64::EPSILON))
}

impl BigReal {
    pub fn new(value: Float, err: f64) -> Self {
        assert!(err >= 0.0, "negative error bound");
        Self { value, err: clamp(err) }
    }

    pub fn exact(value: Float) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn from_f64(prec: u32, x: f64) -> Self {
        Self::exact(Float::with_val(prec, x))
    }

    pub fn from_rational(prec: u32, q: &rug::Rational) -> Self {
        let v = Float::with_val(prec, q);
        let e = ulp(&v);
        Self::new(v, e)
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Float::with_val(prec, 1))
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn with_err(mut self, err: f64) -> Self {
        self.err = clamp(err.max(0.0));
        self
    }

    pub fn widen(mut self, extra: f64) -> Self {
        self.err = up(self.err + extra.max(0.0));
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs(&self) -> Self {
        Self { value: self.value.clone().abs(), err: self.err }
    }

    pub fn is_within(&self, other: &Self, tol: f64) -> bool {
        let d = Float::with_val(self.prec(), &self.value - &other.value);
        d.abs().to_f64() <= tol
    }

    pub fn mul_f64(&self, k: f64) -> Self {
        let v = Float::with_val(self.prec(), &self.value * k);
        let e = self.err * k.abs() + ulp(&v);
        Self::new(v, up(e))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let v = Float::with_val(self.prec(), &self.value * k);
        let e = self.err * (k as f64).abs() + ulp(&v);
        Self::new(v, up(e))
    }

    pub fn mul_rational(&self, q: &rug::Rational) -> Self {
        let qf = Float::with_val(self.prec(), q);
        let v = Float::with_val(self.prec(), &self.value * &qf);
        let e = self.err * qf.to_f64().abs() + ulp(&v) * 2.0;
        Self::new(v, up(e))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigReal::one(self.prec());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.exp_ref());
        // |e^{x+d} - e^x| <= e^x (e^|d| - 1)
        let e = v.to_f64().abs() * self.err.exp_m1() + ulp(&v);
        Self::new(v, up(e))
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_float(&self.value, digits)
    }
}

/// Scientific decimal rendering used by reports and the CLI.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return format!("0.{}e0", "0".repeat(digits.saturating_sub(1)));
    }
    let (neg, mant, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let exp = exp.unwrap_or(0) - 1;
    let (head, tail) = mant.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{} ± {:.1e}", self.to_decimal(digits), self.err)
    }
}

impl<'a> Add<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn add(self, o: &BigReal) -> BigReal {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value + &o.value);
        let e = self.err + o.err + ulp(&v);
        BigReal::new(v, up(e))
    }
}

impl<'a> Sub<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn sub(self, o: &BigReal) -> BigReal {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value - &o.value);
        let e = self.err + o.err + ulp(&v);
        BigReal::new(v, up(e))
    }
}

impl<'a> Mul<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn mul(self, o: &BigReal) -> BigReal {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value * &o.value);
        let a = self.value.to_f64().abs();
        let b = o.value.to_f64().abs();
        let e = a * o.err + b * self.err + self.err * o.err + ulp(&v);
        BigReal::new(v, up(e))
    }
}

impl<'a> Div<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn div(self, o: &BigReal) -> BigReal {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value / &o.value);
        let b = o.value.to_f64().abs();
        let e = if o.err >= b {
            f64::MAX
        } else {
            (self.err + v.to_f64().abs() * o.err) / (b - o.err) + ulp(&v)
        };
        BigReal::new(v, up(e))
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { value: -self.value.clone(), err: self.err }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: &BigReal) -> BigReal { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { value: -self.value, err: self.err }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64, e: f64) -> BigReal {
        BigReal::new(Float::with_val(200, x), e)
    }

    #[test]
    fn errors_accumulate() {
        let s = &r(1.0, 1e-20) + &r(2.0, 2e-20);
        assert!(s.err() >= 3e-20);
        let p = &r(3.0, 1e-20) * &r(2.0, 1e-20);
        assert!(p.err() >= 5e-20);
        let q = &r(1.0, 0.0) / &r(1e-30, 1.0);
        assert!(q.err().is_finite());
    }

    #[test]
    fn exact_ops_track_rounding_only() {
        let third = &BigReal::one(200) / &BigReal::from_f64(200, 3.0);
        assert!(third.err() > 0.0 && third.err() < 1e-55);
    }

    #[test]
    fn formatting() {
        let x = BigReal::from_f64(200, 1.5);
        assert_eq!(x.to_decimal(3), "1.50e0");
        assert_eq!(BigReal::from_f64(200, -0.00124).to_decimal(2), "-1.2e-3");
        assert_eq!(BigReal::zero(64).to_decimal(3), "0.00e0");
    }
}
