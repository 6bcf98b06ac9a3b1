//! Nested harmonic-type sums on the lattice `x = 1, 2, ...`.
//!
//! Level `i` (innermost first) carries `Π (x+δ)^{-k}`; consecutive levels are
//! related by `<` or `≤`. The outermost level may carry `x!/(α)_x` and the
//! sign `(-1)^{x-1}`. For the plain sign the value is an exact prefix plus an
//! Euler–Maclaurin antidifference built level by level on log-power
//! expansions; the alternating case goes through CVZ.

use super::asymptotic::Expansion;
use crate::error::{Error, Result};
use crate::numerics::accel::cvz_with_err;
use crate::numerics::{BigReal, PrecisionContext};
use rug::ops::Pow;
use rug::{Float, Rational};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Level {
    /// `(δ, k)` for a factor `(x+δ)^{-k}`.
    pub factors: Vec<(Rational, u32)>,
    /// Relation to the level below: `<` when true, `≤` otherwise.
    pub strict_below: bool,
}

impl Level {
    pub fn plain(k: u32, strict_below: bool) -> Self {
        Self { factors: vec![(Rational::new(), k)], strict_below }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct NestedSum {
    pub levels: Vec<Level>,
    pub outer_gamma: Option<Rational>,
    pub alternating: bool,
}

pub(crate) struct NestedValue {
    pub value: BigReal,
    pub terms: usize,
}

fn work_prec(ctx: &PrecisionContext) -> u32 {
    ctx.bits() + 32
}

/// Lattice cutoffs for the plain sign: two cutoffs for the error estimate.
fn cutoffs(ctx: &PrecisionContext) -> (usize, usize, usize) {
    let d = ctx.digits() as usize;
    let n1 = (2 * d).max(40);
    (n1, n1 + n1 / 2, d + 20)
}

pub(crate) fn cvz_terms(ctx: &PrecisionContext) -> usize {
    (1.31 * ctx.digits() as f64).ceil() as usize + 10
}

impl NestedSum {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn check(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::Inadmissible("empty nested sum".into()));
        }
        for lv in &self.levels {
            for (d, _) in &lv.factors {
                if *d <= -1 {
                    return Err(Error::Domain(format!("shift {d} hits a pole at x = 1")));
                }
            }
        }
        Ok(())
    }

    fn phi(&self, i: usize, x: &Float) -> Float {
        let prec = x.prec();
        let mut v = Float::with_val(prec, 1);
        for (d, k) in &self.levels[i].factors {
            let b = Float::with_val(prec, x + d);
            v *= b.pow(-(*k as i32));
        }
        v
    }

    /// Walk the lattice; calls `visit(x, partial_sums_after_x, outer_term)`.
    pub fn walk(&self, upto: usize, prec: u32, mut visit: impl FnMut(usize, &[Float], &Float)) {
        let n = self.depth();
        let mut s = vec![Float::new(prec); n];
        let mut t = vec![Float::new(prec); n];
        let mut g = Float::with_val(prec, 1);
        for x in 1..=upto {
            let xf = Float::with_val(prec, x);
            if let Some(a) = &self.outer_gamma {
                g *= &xf;
                g /= Float::with_val(prec, Rational::from(a + (x as u32 - 1)));
            }
            for i in 0..n {
                let inner = if i == 0 {
                    Float::with_val(prec, 1)
                } else if self.levels[i].strict_below {
                    s[i - 1].clone()
                } else {
                    Float::with_val(prec, &s[i - 1] + &t[i - 1])
                };
                t[i] = self.phi(i, &xf) * inner;
            }
            if self.outer_gamma.is_some() {
                t[n - 1] *= &g;
            }
            if self.alternating && x % 2 == 0 {
                let neg = Float::with_val(prec, -&t[n - 1]);
                t[n - 1] = neg;
            }
            for i in 0..n {
                s[i] += &t[i];
            }
            visit(x, &s, &t[n - 1]);
        }
    }

    /// Constants of the Euler–Maclaurin chain given `S_i(N) = Σ_{x<N} t_i(x)`.
    fn em_value(&self, big_n: usize, sums: &[Float], order: usize, prec: u32) -> Result<Float> {
        let n = self.depth();
        let xn = Float::with_val(prec, big_n);
        let mut below: Option<(Expansion, Expansion)> = None;
        for i in 0..n {
            let mut phi = Expansion::constant(&Float::with_val(prec, 1), order, prec);
            for (d, k) in &self.levels[i].factors {
                phi = phi.mul(&Expansion::power(&Float::with_val(prec, d), *k, order, prec));
            }
            let a = match &below {
                None => Expansion::constant(&Float::with_val(prec, 1), order, prec),
                Some((s, f)) => {
                    if self.levels[i].strict_below {
                        s.clone()
                    } else {
                        s.add(f)
                    }
                }
            };
            let mut f = phi.mul(&a);
            if i == n - 1 {
                if let Some(al) = &self.outer_gamma {
                    f = f.mul(&Expansion::gamma_ratio(al, order, prec));
                }
            }
            let big_f = f.antidifference();
            let c = Float::with_val(prec, &sums[i] - big_f.eval(&xn));
            if i == n - 1 {
                if !big_f.decays() {
                    return Err(Error::Inadmissible("the outermost sum diverges".into()));
                }
                return Ok(c);
            }
            below = Some((big_f.plus_constant(&c), f));
        }
        unreachable!()
    }

    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<NestedValue> {
        self.check()?;
        let key = (format!("{self:?}"), ctx.bits());
        static MEMO: OnceLock<Mutex<HashMap<(String, u32), (BigReal, usize)>>> = OnceLock::new();
        let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some((v, t)) = memo.lock().unwrap().get(&key) {
            return Ok(NestedValue { value: v.clone(), terms: *t });
        }
        let prec = work_prec(ctx);
        let out = if self.alternating {
            let m = cvz_terms(ctx);
            let mut a = Vec::with_capacity(m);
            self.walk(m, prec, |x, _, t| {
                a.push(if x % 2 == 0 { Float::with_val(prec, -t) } else { t.clone() })
            });
            let (v, e) = cvz_with_err(&a);
            let e = e + 16.0 * v.to_f64().abs() * ctx.epsilon() * (m * self.depth()) as f64;
            (BigReal::new(Float::with_val(ctx.bits(), v), e), m)
        } else {
            let (n1, n2, order) = cutoffs(ctx);
            let mut at1 = Vec::new();
            let mut at2 = Vec::new();
            self.walk(n2 - 1, prec, |x, s, _| {
                if x == n1 - 1 {
                    at1 = s.to_vec();
                }
                if x == n2 - 1 {
                    at2 = s.to_vec();
                }
            });
            let v1 = self.em_value(n1, &at1, order, prec)?;
            let v2 = self.em_value(n2, &at2, order, prec)?;
            let gap = Float::with_val(prec, &v2 - &v1).abs().to_f64();
            let e = 10.0 * gap + 16.0 * v2.to_f64().abs() * ctx.epsilon() * (n2 * self.depth()) as f64;
            (BigReal::new(Float::with_val(ctx.bits(), v2), e), n2 - 1)
        };
        memo.lock().unwrap().insert(key, out.clone());
        Ok(NestedValue { value: out.0, terms: out.1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn mzv(parts: &[u32], strict: bool, alternating: bool) -> NestedSum {
        NestedSum {
            levels: parts.iter().map(|&k| Level::plain(k, strict)).collect(),
            outer_gamma: None,
            alternating,
        }
    }

    fn zeta(k: u32, p: u32) -> Float {
        Float::with_val(p, k).zeta()
    }

    #[test]
    fn depth_one_values() {
        let c = PrecisionContext::default();
        let p = c.bits();
        for k in 2..6 {
            let v = mzv(&[k], true, false).evaluate(&c).unwrap().value;
            assert!(v.is_within(&BigReal::exact(zeta(k, p)), 1e-38), "k = {k}: {v}");
            assert!(v.err() < 1e-30);
        }
        let eta2 = mzv(&[2], true, true).evaluate(&c).unwrap().value;
        let want = Float::with_val(p, Constant::Pi).square() / 12u32;
        assert!(eta2.is_within(&BigReal::exact(want), 1e-38));
    }

    #[test]
    fn euler_relations() {
        let c = PrecisionContext::default();
        let p = c.bits();
        // ζ(1,2) = ζ(3), ζ*(1,2) = 2ζ(3), ζ(1,1,2) = ζ(4)
        let z3 = BigReal::exact(zeta(3, p));
        let v = mzv(&[1, 2], true, false).evaluate(&c).unwrap().value;
        assert!(v.is_within(&z3, 1e-36), "{v}");
        let v = mzv(&[1, 2], false, false).evaluate(&c).unwrap().value;
        assert!(v.is_within(&BigReal::exact(zeta(3, p) * 2u32), 1e-36), "{v}");
        let v = mzv(&[1, 1, 2], true, false).evaluate(&c).unwrap().value;
        assert!(v.is_within(&BigReal::exact(zeta(4, p)), 1e-36), "{v}");
        // alternating: ζ_-(1,2) = -ζ(3)/8
        let v = mzv(&[1, 2], true, true).evaluate(&c).unwrap().value;
        assert!(v.is_within(&BigReal::exact(-zeta(3, p) / 8u32), 1e-36), "{v}");
    }

    #[test]
    fn hurwitz_shift_depth_one() {
        let c = PrecisionContext::default();
        let p = c.bits();
        // Σ_{m≥0} (m+1/2)^{-2} = 3 ζ(2)
        let s = NestedSum {
            levels: vec![Level { factors: vec![(Rational::from((-1, 2)), 2)], strict_below: true }],
            outer_gamma: None,
            alternating: false,
        };
        let v = s.evaluate(&c).unwrap().value;
        assert!(v.is_within(&BigReal::exact(zeta(2, p) * 3u32), 1e-36), "{v}");
    }

    #[test]
    fn divergent_is_rejected() {
        let c = PrecisionContext::default();
        assert!(mzv(&[2, 1], true, false).evaluate(&c).is_err());
    }
}

