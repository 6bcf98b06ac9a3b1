use super::ZetaPolynomial;
use crate::error::{Error, Result};
use crate::indices::{compositions, set_partitions};
use rug::{Integer, Rational};

pub const MAX_HOFFMAN_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Strict,
    Star,
}

/// Symmetric function `f` weighting the compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma2Weight {
    One,
    ProductRPlus1,
}

/// `Σ_{σ ∈ S_k} ζ(k_σ(1), ..., k_σ(k))` (or `ζ*`) as a polynomial in
/// single zeta values, via the set-partition expansion.
pub fn hoffman_symmetric_reduce(exponents: &[u32], variant: Variant) -> Result<ZetaPolynomial> {
    if let Some(k) = exponents.iter().find(|&&k| k < 2) {
        return Err(Error::Domain(format!("exponent {k} < 2")));
    }
    if exponents.len() > MAX_HOFFMAN_DEPTH {
        return Err(Error::SizeCap(format!(
            "depth {} above {MAX_HOFFMAN_DEPTH}",
            exponents.len()
        )));
    }
    let mut out = ZetaPolynomial::zero();
    for part in set_partitions(exponents.len())? {
        let mut coef = Integer::from(1);
        let mut ks = Vec::with_capacity(part.blocks.len());
        for b in &part.blocks {
            let n = b.len() as u32;
            let mut c = Integer::from(Integer::factorial(n - 1));
            if variant == Variant::Strict && n % 2 == 0 {
                c = -c;
            }
            coef *= c;
            ks.push(b.iter().map(|&i| exponents[i - 1]).sum());
        }
        out = &out + &ZetaPolynomial::zeta_product(&ks)?.scale(&Rational::from(coef));
    }
    Ok(out)
}

/// `Σ_{r_1+...+r_k=r} f(r) ζ*(q r_1 + s, ..., q r_k + s)`, each term
/// replaced by `1/k!` of its symmetrized orbit.
pub fn lemma2_reduce(r: u32, k: usize, q: u32, s: u32, weight: Lemma2Weight) -> Result<ZetaPolynomial> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    if s < 2 {
        return Err(Error::Domain(format!("s = {s} < 2")));
    }
    let kfact = Rational::from(Integer::from(Integer::factorial(k as u32)));
    let mut out = ZetaPolynomial::zero();
    for c in compositions(r, k) {
        let f = match weight {
            Lemma2Weight::One => Integer::from(1),
            Lemma2Weight::ProductRPlus1 => c.parts.iter().map(|&ri| Integer::from(ri + 1)).product(),
        };
        let ex: Vec<u32> = c.parts.iter().map(|&ri| q * ri + s).collect();
        let orbit = hoffman_symmetric_reduce(&ex, Variant::Star)?;
        out = &out + &orbit.scale(&(Rational::from(f) / &kfact));
    }
    Ok(out)
}
