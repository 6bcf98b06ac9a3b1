//! Exact polynomials in formal symbols `ζ(k)`, `k ≥ 2`, and `π²`.

mod coeffs;
mod reduce;

pub use coeffs::{
    bernoulli_identity_check, gamma_ratio_coeffs, theorem3_coefficient, CoefficientVariant,
    GammaRatioExpansion, MAX_GAMMA_ORDER,
};
pub use reduce::{hoffman_symmetric_reduce, lemma2_reduce, Lemma2Weight, Variant, MAX_HOFFMAN_DEPTH};

use crate::error::{Error, Result};
use crate::numerics::{zeta_even_exact, zeta_value, BigReal, PrecisionContext};
use rug::float::Constant;
use rug::{Float, Rational};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZetaMonomial {
    factors: Vec<u32>,
    pi_power: u32,
}

impl ZetaMonomial {
    pub fn new(mut factors: Vec<u32>, pi_power: u32) -> Result<Self> {
        if let Some(k) = factors.iter().find(|&&k| k < 2) {
            return Err(Error::Domain(format!("ζ({k}) is not a valid symbol")));
        }
        if pi_power % 2 != 0 {
            return Err(Error::Domain(format!("odd power of π: {pi_power}")));
        }
        factors.sort_unstable();
        Ok(Self { factors, pi_power })
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().sum::<u32>() + self.pi_power
    }

    fn times(&self, other: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        f.sort_unstable();
        Self { factors: f, pi_power: self.pi_power + other.pi_power }
    }
}

impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.factors.cmp(&other.factors))
            .then_with(|| self.pi_power.cmp(&other.pi_power))
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.pi_power > 0 {
            parts.push(format!("pi^{}", self.pi_power));
        }
        let mut i = 0;
        while i < self.factors.len() {
            let k = self.factors[i];
            let n = self.factors[i..].iter().take_while(|&&x| x == k).count();
            parts.push(if n == 1 { format!("z{k}") } else { format!("z{k}^{n}") });
            i += n;
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse map monomial → nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZetaPolynomial {
    terms: BTreeMap<ZetaMonomial, Rational>,
}

impl ZetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(q: Rational) -> Self {
        Self::term(q, ZetaMonomial::one())
    }

    pub fn term(q: Rational, m: ZetaMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, q);
        p
    }

    /// The symbol `ζ(k)`.
    pub fn zeta(k: u32) -> Result<Self> {
        Ok(Self::term(Rational::from(1), ZetaMonomial::new(vec![k], 0)?))
    }

    /// `Π ζ(k_i)`.
    pub fn zeta_product(ks: &[u32]) -> Result<Self> {
        Ok(Self::term(Rational::from(1), ZetaMonomial::new(ks.to_vec(), 0)?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZetaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ZetaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ZetaMonomial::one())
    }

    pub fn add_term(&mut self, m: ZetaMonomial, q: Rational) {
        if q == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += q;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), Rational::from(c * q))).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replace every `ζ(2j)` by its rational multiple of `π^{2j}`.
    pub fn euler_reduce(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut q = c.clone();
            let mut odd = Vec::new();
            let mut pi = m.pi_power;
            for &k in &m.factors {
                if k % 2 == 0 {
                    q *= zeta_even_exact(k / 2).q;
                    pi += k;
                } else {
                    odd.push(k);
                }
            }
            out.add_term(ZetaMonomial { factors: odd, pi_power: pi }, q);
        }
        out
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        let prec = ctx.bits();
        let mut total = BigReal::zero(prec);
        for (m, c) in &self.terms {
            let mut v = BigReal::from_rational(prec, c);
            if m.pi_power > 0 {
                let pi = BigReal::new(Float::with_val(prec, Constant::Pi), ctx.epsilon());
                v = &v * &pi.powi(m.pi_power);
            }
            for &k in &m.factors {
                v = &v * &zeta_value(k, ctx)?;
            }
            total = &total + &v;
        }
        Ok(total)
    }
}

pub fn euler_reduce(p: &ZetaPolynomial) -> ZetaPolynomial {
    p.euler_reduce()
}

pub fn zp_eval(p: &ZetaPolynomial, ctx: &PrecisionContext) -> Result<BigReal> {
    p.eval(ctx)
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let a = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let bare = m.factors.is_empty() && m.pi_power == 0;
            if bare {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn add(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn sub(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn neg(self) -> ZetaPolynomial {
        self.scale(&Rational::from(-1))
    }
}

impl Mul for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = ZetaPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), Rational::from(c1 * c2));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for ZetaPolynomial {
            type Output = ZetaPolynomial;
            fn $f(self, rhs: ZetaPolynomial) -> ZetaPolynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: u32) -> ZetaPolynomial {
        ZetaPolynomial::zeta(k).unwrap()
    }

    #[test]
    fn products_and_cancellation() {
        let p = &z(2) * &z(2);
        assert_eq!(p.to_string(), "z2^2");
        assert!((&p + &(-&p)).is_zero());
        let q = &(&z(2) + &z(3)) * &z(2);
        assert_eq!(q.to_string(), "z2^2 + z2*z3");
        assert!(ZetaPolynomial::zeta(1).is_err());
    }

    #[test]
    fn rendering() {
        let p = &z(4).scale(&Rational::from((-7, 2))) + &(&z(2) * &z(2)).scale(&Rational::from((1, 2)));
        assert_eq!(p.to_string(), "1/2*z2^2 - 7/2*z4");
        assert_eq!((-&z(2)).to_string(), "-z2");
        assert_eq!(ZetaPolynomial::zero().to_string(), "0");
        let c = &ZetaPolynomial::constant(Rational::from((-3, 4))) + &z(3);
        assert_eq!(c.to_string(), "-3/4 + z3");
    }

    #[test]
    fn euler_forms() {
        assert_eq!(z(2).euler_reduce().to_string(), "1/6*pi^2");
        assert_eq!(z(4).euler_reduce().to_string(), "1/90*pi^4");
        let a = (&z(2) * &z(2)).euler_reduce();
        let b = z(4).euler_reduce();
        let m4 = ZetaMonomial::new(vec![], 4).unwrap();
        assert_eq!(a.coefficient(&m4) / b.coefficient(&m4), Rational::from((5, 2)));
        assert_eq!((&z(3) * &z(2)).euler_reduce().to_string(), "1/6*pi^2*z3");
    }

    #[test]
    fn evaluation() {
        let c = PrecisionContext::default();
        let one = ZetaPolynomial::one().eval(&c).unwrap();
        assert_eq!(*one.value(), 1);
        let v = z(3).eval(&c).unwrap();
        let want = Float::with_val(c.bits(), 3).zeta();
        assert!(v.is_within(&BigReal::exact(want), 1e-38));
        let p = &(&z(2) * &z(3)) + &z(5);
        let a = p.eval(&c).unwrap();
        let b = p.euler_reduce().eval(&c).unwrap();
        assert!(a.is_within(&b, 1e-37));
    }
}
