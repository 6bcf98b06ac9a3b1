use super::ZetaPolynomial;
use crate::error::{Error, Result};
use crate::numerics::{bernoulli, binomial};
use rug::{Integer, Rational};
use std::fmt;
use std::str::FromStr;

pub const MAX_GAMMA_ORDER: usize = 12;

/// `coeffs[i] = (1/i!) d^i/dα^i (Γ(α)²/Γ(2α-1))` at `α = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRatioExpansion {
    pub coeffs: Vec<ZetaPolynomial>,
}

/// Exponentiates `g(x) = Σ_{n≥2} (-1)^{n+1} ζ(n) (2^n-2)/n x^n`.
pub fn gamma_ratio_coeffs(order: usize) -> Result<GammaRatioExpansion> {
    if order > MAX_GAMMA_ORDER {
        return Err(Error::SizeCap(format!("order {order} above {MAX_GAMMA_ORDER}")));
    }
    let mut g = vec![ZetaPolynomial::zero(); order + 1];
    for (n, gn) in g.iter_mut().enumerate().skip(2) {
        let two_n = Integer::from(Integer::u_pow_u(2, n as u32)) - 2u32;
        let mut q = Rational::from((two_n, Integer::from(n)));
        if n % 2 == 0 {
            q = -q;
        }
        *gn = ZetaPolynomial::zeta(n as u32)?.scale(&q);
    }
    // k c_k = Σ_j j g_j c_{k-j}
    let mut c = vec![ZetaPolynomial::one()];
    for k in 1..=order {
        let mut acc = ZetaPolynomial::zero();
        for j in 1..=k {
            acc = &acc + &(&g[j] * &c[k - j]).scale(&Rational::from(j));
        }
        c.push(acc.scale(&Rational::from((1, k as u32))));
    }
    Ok(GammaRatioExpansion { coeffs: c })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientVariant {
    /// Sum over `i = 2..s+1` pairing `B_{2i}` with `1 - 2^{1-2i}`.
    Eq17,
    /// Closed form of the same sum after the Bernoulli identity.
    Eq22,
    /// Sum over `j = 0..s-1` from the telescoped harmonic product.
    ProofChain,
}

impl fmt::Display for CoefficientVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientVariant::Eq17 => "eq17",
            CoefficientVariant::Eq22 => "eq22",
            CoefficientVariant::ProofChain => "proof_chain",
        })
    }
}

impl FromStr for CoefficientVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq17" => Ok(Self::Eq17),
            "eq22" => Ok(Self::Eq22),
            "proof_chain" => Ok(Self::ProofChain),
            _ => Err(Error::Parse(format!("unknown coefficient variant `{s}`"))),
        }
    }
}

fn b(n: u32) -> Rational {
    bernoulli(n as usize)
}

/// `1 - 2^{1-2j}`, exact.
fn eta_factor(j: u32) -> Rational {
    Rational::from(1) - Rational::from(2).pow(1 - 2 * j as i32)
}

trait PowI {
    fn pow(self, e: i32) -> Rational;
}

impl PowI for Rational {
    fn pow(self, e: i32) -> Rational {
        let mag = rug::ops::Pow::pow(self, e.unsigned_abs());
        if e < 0 {
            mag.recip()
        } else {
            mag
        }
    }
}

pub fn theorem3_coefficient(s: u32, variant: CoefficientVariant) -> Result<Rational> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be positive".into()));
    }
    let n = s + 1;
    let bn = b(2 * n);
    let den = eta_factor(n);
    let base = Rational::from((2 * s * (s + 1), 3));
    let two3 = Rational::from((2, 3));
    Ok(match variant {
        CoefficientVariant::Eq17 => {
            let mut sum = Rational::new();
            for i in 2..=n {
                sum += binomial(2 * n as i64, 2 * i as i64) * b(2 * (n - i)) * b(2 * i) * eta_factor(i);
            }
            base + two3 * sum / bn / den
        }
        CoefficientVariant::ProofChain => {
            let mut sum = Rational::new();
            for j in 0..s {
                sum += binomial(2 * n as i64, 2 * j as i64) * b(2 * (n - j)) * b(2 * j) * eta_factor(j);
            }
            base + two3 * sum / bn / den
        }
        CoefficientVariant::Eq22 => {
            let ss = Rational::from(s);
            let first = Rational::from(&ss * Rational::from(s as i64 - 1)) - 1u32 + den.clone().recip();
            let second = Rational::from(((s + 1) * (2 * s + 1), 18)) / &den * b(2 * s) / &bn;
            two3 * first - second
        }
    })
}

/// Left side minus right side of the Bernoulli-number identity behind the
/// closed form of `c(s)`; zero when it holds.
pub fn bernoulli_identity_check(s: u32) -> Result<Rational> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be positive".into()));
    }
    let n = s + 1;
    let mut lhs = Rational::new();
    for i in 2..=n {
        lhs += binomial(2 * n as i64, 2 * i as i64) * b(2 * (n - i)) * b(2 * i) * eta_factor(i);
    }
    let rhs = (Rational::from(1) - Rational::from(2 * s + 1) * eta_factor(n)) * b(2 * n)
        - Rational::from(((s + 1) * (2 * s + 1), 12)) * b(2 * s);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;
    use rug::ops::Pow;
    use rug::Float;

    #[test]
    fn gamma_coefficients() {
        let g = gamma_ratio_coeffs(4).unwrap();
        let shown: Vec<String> = g.coeffs.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["1", "0", "-z2", "2*z3", "1/2*z2^2 - 7/2*z4"]);
        assert!(gamma_ratio_coeffs(13).is_err());
    }

    #[test]
    fn gamma_coefficients_match_finite_differences() {
        // Γ(1+h)²/Γ(1+2h) on a symmetric stencil, differenced at 80 digits
        let c = PrecisionContext::new(80, 1e-60).unwrap();
        let p = c.bits();
        let h = Float::with_val(p, 1e-5);
        let f = |k: i32| -> Float {
            let x = Float::with_val(p, &h * k) + 1u32;
            let w = Float::with_val(p, &x * 2u32) - 1u32;
            let lg = Float::with_val(p, x.ln_gamma_ref()) * 2u32 - Float::with_val(p, w.ln_gamma_ref());
            lg.exp()
        };
        let fs: Vec<Float> = (-2..=2).map(f).collect();
        let lin = |w: [i32; 5], div: u32| -> f64 {
            let mut acc = Float::new(p);
            for (wi, fi) in w.iter().zip(&fs) {
                acc += Float::with_val(p, fi * *wi);
            }
            let hp = Float::with_val(p, h.clone().pow(div));
            (acc / hp).to_f64()
        };
        let got = [
            lin([0, -1, 0, 1, 0], 1) / 2.0,
            lin([0, 1, -2, 1, 0], 2) / 2.0,
            lin([-1, 2, 0, -2, 1], 3) / 12.0,
            lin([1, -4, 6, -4, 1], 4) / 24.0,
        ];
        let g = gamma_ratio_coeffs(4).unwrap();
        for i in 1..=4 {
            let want = g.coeffs[i].eval(&c).unwrap().to_f64();
            assert!((got[i - 1] - want).abs() < 1e-8, "i={i}: {} vs {want}", got[i - 1]);
        }
    }

    #[test]
    fn coefficient_variants() {
        use CoefficientVariant::*;
        assert_eq!(theorem3_coefficient(1, Eq17).unwrap(), 2);
        assert_eq!(theorem3_coefficient(1, Eq22).unwrap(), 2);
        assert_eq!(theorem3_coefficient(1, ProofChain).unwrap(), Rational::from((4, 7)));
        assert_eq!(theorem3_coefficient(2, Eq17).unwrap(), Rational::from((238, 93)));
        assert_eq!(theorem3_coefficient(2, ProofChain).unwrap(), Rational::from((196, 93)));
        for s in 1..=30 {
            assert_eq!(theorem3_coefficient(s, Eq17).unwrap(), theorem3_coefficient(s, Eq22).unwrap());
        }
        assert!(theorem3_coefficient(0, Eq17).is_err());
        assert_eq!("proof_chain".parse::<CoefficientVariant>().unwrap(), ProofChain);
    }

    #[test]
    fn bernoulli_identity_vanishes() {
        for s in 1..=30 {
            assert_eq!(bernoulli_identity_check(s).unwrap(), 0, "s={s}");
        }
    }
}
