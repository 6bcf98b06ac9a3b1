use super::mpl::{Method, SeriesValue};
use super::nested::{Level, NestedSum};
use crate::error::{Error, Result};
use crate::indices::HurwitzIndex;
use crate::numerics::PrecisionContext;
use rug::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// One side of the Hurwitz duality: `lhs` is
/// `Σ_{0≤m_1<...<m_p} Π (m_i+α)^{-k_i}`, `rhs` the dual-index sum weighted
/// by `(m_q+1)!/(α)_{m_q+1}`.
pub fn eval_hurwitz_mzv(h: &HurwitzIndex, side: Side, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let ns = match side {
        Side::Lhs => {
            let d = Rational::from(h.alpha() - 1u32);
            NestedSum {
                levels: h
                    .parts()
                    .iter()
                    .map(|&k| Level { factors: vec![(d.clone(), k)], strict_below: true })
                    .collect(),
                outer_gamma: None,
                alternating: false,
            }
        }
        Side::Rhs => {
            let dual = h.dual()?;
            NestedSum {
                levels: dual.parts().iter().map(|&k| Level::plain(k, true)).collect(),
                outer_gamma: Some(h.alpha().clone()),
                alternating: false,
            }
        }
    };
    let v = ns.evaluate(ctx)?;
    if v.value.err() > ctx.tolerance() {
        return Err(Error::NonConvergence(format!(
            "duality side error {:.2e} above tolerance",
            v.value.err()
        )));
    }
    Ok(SeriesValue { value: v.value, terms_used: v.terms, method: Method::EulerMaclaurin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn alpha_one_is_plain_zeta() {
        let c = PrecisionContext::default();
        let h = HurwitzIndex::new(&[2], Rational::from(1)).unwrap();
        let z2 = Float::with_val(c.bits(), 2).zeta();
        for side in [Side::Lhs, Side::Rhs] {
            let v = eval_hurwitz_mzv(&h, side, &c).unwrap().value;
            assert!((Float::with_val(c.bits(), v.value() - &z2)).abs() < 1e-38);
        }
    }

    #[test]
    fn half_shift_three() {
        let c = PrecisionContext::default();
        let h = HurwitzIndex::new(&[3], Rational::from((1, 2))).unwrap();
        let l = eval_hurwitz_mzv(&h, Side::Lhs, &c).unwrap().value;
        let r = eval_hurwitz_mzv(&h, Side::Rhs, &c).unwrap().value;
        assert!(l.is_within(&r, 1e-35));
        // Σ (m+1/2)^{-3} = 7 ζ(3)
        let want = Float::with_val(c.bits(), 3).zeta() * 7u32;
        assert!((Float::with_val(c.bits(), l.value() - want)).abs() < 1e-37);
    }
}
