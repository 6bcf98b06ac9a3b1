//! Both sides of the very-well-poised `2s+4 F 2s+3` at `-1` identity.

use super::mpl::{Method, SeriesValue};
use super::nested::cvz_terms;
use crate::error::{Error, Result};
use crate::numerics::accel::{cvz_with_err, power_family_limit};
use crate::numerics::{log_gamma, BigReal, PrecisionContext};
use rand::Rng;
use rug::{Float, Rational};

/// `(a; b_1..b_{s+1}; c_1..c_{s+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremAParams {
    pub a: Rational,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub c1_margin: Rational,
    /// Minimum over `r = 2..s+1` and all choice vectors.
    pub c2_min_margin: Rational,
    pub c1_holds: bool,
    pub c2_holds: bool,
    /// `1+a-b_i`, `1+a-c_i` and `a/2` avoid the non-positive integers.
    pub poles_avoided: bool,
}

fn is_nonpositive_int(q: &Rational) -> bool {
    q.is_integer() && *q <= 0
}

impl TheoremAParams {
    pub fn new(a: Rational, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        if b.len() != c.len() || b.len() < 2 {
            return Err(Error::OutOfRange(format!(
                "need s+1 ≥ 2 values of b and c, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn s(&self) -> usize {
        self.b.len() - 1
    }

    /// `e_i = 1 + a - b_i - c_i`, `i = 1..s+1` (stored zero-based).
    pub fn e(&self) -> Vec<Rational> {
        self.b
            .iter()
            .zip(&self.c)
            .map(|(b, c)| Rational::from(&self.a + 1u32) - b - c)
            .collect()
    }

    /// `a = 2α`, `b_i = c_i = α`.
    pub fn lemma1_family(alpha: &Rational, s: usize) -> Self {
        let a = Rational::from(alpha * 2u32);
        Self { a, b: vec![alpha.clone(); s + 1], c: vec![alpha.clone(); s + 1] }
    }

    /// `a = α+1`, `b_1 = c_1 = 1`, `b_i = α`, `c_i = 1` otherwise.
    pub fn theorem2_family(alpha: &Rational, s: usize) -> Self {
        let a = Rational::from(alpha + 1u32);
        let mut b = vec![alpha.clone(); s + 1];
        let mut c = vec![Rational::from(1); s + 1];
        b[0] = Rational::from(1);
        c[0] = Rational::from(1);
        Self { a, b, c }
    }

    /// Random pack with rational entries and both margins at least `1/2`.
    ///
    /// The `e_i` are drawn with fractional parts away from integers, and so
    /// that the tail exponents of the right side stay separated.
    pub fn random<R: Rng>(rng: &mut R, s: usize) -> Self {
        let q = |n: i64| Rational::from((n, 40));
        loop {
            let mut e: Vec<Rational> = Vec::with_capacity(s + 1);
            for _ in 0..=s {
                let whole = rng.gen_range(0..2);
                let frac = rng.gen_range(8..=32);
                e.push(q(40 * whole + frac));
            }
            if e[s] < Rational::from((1, 2)) {
                continue;
            }
            let sum_e: Rational = e.iter().sum();
            // C1 = 2 Σ e - (a + 1) ≥ 1/2
            let a_max = Rational::from(&sum_e * 2u32) - Rational::from((3, 2));
            let hi = (a_max * 40u32).floor().numer().to_i64().unwrap_or(0).min(120);
            if hi < 4 {
                continue;
            }
            let a = q(rng.gen_range(4..=hi));
            let mut b = Vec::with_capacity(s + 1);
            let mut c = Vec::with_capacity(s + 1);
            for ei in &e {
                let top = (Rational::from(&a + 1u32) * 40u32).floor().numer().to_i64().unwrap();
                let bi = q(rng.gen_range(2..top.max(3)));
                let ci = Rational::from(&a + 1u32) - &bi - ei;
                b.push(bi);
                c.push(ci);
            }
            let p = Self { a, b, c };
            let rep = p.conditions();
            if rep.c1_margin >= Rational::from((1, 2))
                && rep.c2_min_margin >= Rational::from((1, 2))
                && rep.poles_avoided
                && p.tail_families_separated()
                && p.gamma_args_positive()
            {
                return p;
            }
        }
    }

    fn gamma_args_positive(&self) -> bool {
        let s = self.s();
        let one_a = Rational::from(&self.a + 1u32);
        one_a > 0
            && Rational::from(&one_a - &self.b[s]) > 0
            && Rational::from(&one_a - &self.c[s]) > 0
            && self.e()[s] > 0
    }

    /// Exponents `Σ_{i=r}^{s+1} A_i e_i` of the right side's tail.
    fn tail_exponents(&self) -> Vec<Rational> {
        let e = self.e();
        let s = self.s();
        let mut out = Vec::new();
        for r in 1..=s {
            // zero-based r..=s; A on r..s-1 free, A_s = 1
            let free = s - r;
            for mask in 0..(1u32 << free) {
                let mut acc = e[s].clone();
                for (t, ei) in e[r..s].iter().enumerate() {
                    let mult = if mask >> t & 1 == 1 { 2u32 } else { 1 };
                    acc += Rational::from(ei * mult);
                }
                out.push(acc);
            }
        }
        out
    }

    /// Distinct tail exponents modulo integers, each with the number of
    /// coincidences (used as the log power).
    fn tail_families(&self) -> Vec<(Rational, usize)> {
        let mut ex = self.tail_exponents();
        ex.sort();
        let mut fam: Vec<(Rational, usize)> = Vec::new();
        for x in ex {
            if let Some(f) = fam.iter_mut().find(|(y, _)| Rational::from(&x - y).is_integer()) {
                f.1 += 1;
            } else {
                fam.push((x, 0));
            }
        }
        fam
    }

    fn tail_families_separated(&self) -> bool {
        let ex = self.tail_exponents();
        for (i, x) in ex.iter().enumerate() {
            for y in &ex[i + 1..] {
                let d = Rational::from(x - y).abs();
                let frac = Rational::from(&d - d.clone().floor());
                if d != 0 && (frac < Rational::from((1, 10)) || frac > Rational::from((9, 10))) {
                    return false;
                }
            }
        }
        true
    }

    pub fn conditions(&self) -> ConditionReport {
        let s = self.s();
        let e = self.e();
        let c1: Rational = Rational::from(e.iter().sum::<Rational>() * 2u32) - &self.a - 1u32;
        let c2 = self
            .tail_exponents()
            .into_iter()
            .min()
            .expect("s ≥ 1 gives at least one exponent");
        let one_a = Rational::from(&self.a + 1u32);
        let mut poles = !is_nonpositive_int(&Rational::from(&self.a / 2u32));
        for i in 0..=s {
            poles &= !is_nonpositive_int(&Rational::from(&one_a - &self.b[i]));
            poles &= !is_nonpositive_int(&Rational::from(&one_a - &self.c[i]));
        }
        ConditionReport {
            c1_holds: c1 > 0,
            c2_holds: c2 > 0,
            c1_margin: c1,
            c2_min_margin: c2,
            poles_avoided: poles,
        }
    }
}

pub fn check_theorem_a_conditions(p: &TheoremAParams) -> ConditionReport {
    p.conditions()
}

/// The alternating hypergeometric side, summed with CVZ.
pub fn eval_theorem_a_lhs(p: &TheoremAParams, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let rep = p.conditions();
    if !rep.c1_holds {
        return Err(Error::Condition(format!("C1 margin {} is not positive", rep.c1_margin)));
    }
    if !rep.poles_avoided {
        return Err(Error::Condition("a parameter hits a pole".into()));
    }
    let prec = ctx.bits() + 32;
    let f = |q: &Rational| Float::with_val(prec, q);
    let a = f(&p.a);
    let one_a = Float::with_val(prec, &a + 1u32);
    let n = cvz_terms(ctx);
    let mut u = Float::with_val(prec, 1);
    let mut terms = Vec::with_capacity(n);
    for m in 0..n {
        // (a/2+1)_m / (a/2)_m = (a + 2m) / a
        let well = Float::with_val(prec, &a + 2 * m as u32) / &a;
        terms.push(Float::with_val(prec, &u * &well));
        let mf = m as u32;
        u *= Float::with_val(prec, &a + mf);
        for (b, c) in p.b.iter().zip(&p.c) {
            u *= Float::with_val(prec, f(b) + mf);
            u *= Float::with_val(prec, f(c) + mf);
            u /= Float::with_val(prec, &one_a - f(b)) + mf;
            u /= Float::with_val(prec, &one_a - f(c)) + mf;
        }
        u /= mf + 1;
    }
    let (v, e) = cvz_with_err(&terms);
    let e = e + 64.0 * v.to_f64().abs() * ctx.epsilon();
    let out = SeriesValue {
        value: BigReal::new(Float::with_val(ctx.bits(), v), e),
        terms_used: n,
        method: Method::Cvz,
    };
    if out.value.err() > ctx.tolerance() {
        return Err(Error::NonConvergence(format!("CVZ error {:.2e}", out.value.err())));
    }
    Ok(out)
}

const RHS_CUTOFF: usize = 1600;
const RHS_TERMS_PER_FAMILY: usize = 8;

/// Gamma prefactor times the `s`-fold sum, the sum being extrapolated from
/// its partial sums over `l_1 + ... + l_s ≤ N` with the known tail exponents.
pub fn eval_theorem_a_rhs(p: &TheoremAParams, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let rep = p.conditions();
    if !rep.c2_holds {
        return Err(Error::Condition(format!("C2 margin {} is not positive", rep.c2_min_margin)));
    }
    if !rep.poles_avoided {
        return Err(Error::Condition("a parameter hits a pole".into()));
    }
    if !p.gamma_args_positive() {
        return Err(Error::Domain("gamma prefactor needs positive arguments".into()));
    }
    let s = p.s();
    let prec = ctx.bits() + 64;
    let f = |q: &Rational| Float::with_val(prec, q);
    let e = p.e();
    let one_a = Rational::from(&p.a + 1u32);
    let n = RHS_CUTOFF;
    // Q_i(L) = R_i(L) Σ_{L'≤L} Q_{i-1}(L') w_i(L-L')
    let mut q_prev: Vec<Float> = vec![Float::new(prec); n + 1];
    q_prev[0] = Float::with_val(prec, 1);
    for i in 0..s {
        let ei = f(&e[i]);
        let mut w = Vec::with_capacity(n + 1);
        let mut wl = Float::with_val(prec, 1);
        for l in 0..=n {
            w.push(wl.clone());
            wl *= Float::with_val(prec, &ei + l as u32);
            wl /= l as u32 + 1;
        }
        let (bn, cn) = (f(&p.b[i + 1]), f(&p.c[i + 1]));
        let (bd, cd) = (f(&Rational::from(&one_a - &p.b[i])), f(&Rational::from(&one_a - &p.c[i])));
        let mut r = Float::with_val(prec, 1);
        let mut q = vec![Float::new(prec); n + 1];
        for big_l in 0..=n {
            let mut acc = Float::new(prec);
            for lp in 0..=big_l {
                if !q_prev[lp].is_zero() {
                    acc += Float::with_val(prec, &q_prev[lp] * &w[big_l - lp]);
                }
            }
            q[big_l] = acc * &r;
            let lf = big_l as u32;
            r *= Float::with_val(prec, &bn + lf);
            r *= Float::with_val(prec, &cn + lf);
            r /= Float::with_val(prec, &bd + lf);
            r /= Float::with_val(prec, &cd + lf);
        }
        q_prev = q;
    }
    let families: Vec<(Float, usize)> =
        p.tail_families().into_iter().map(|(x, k)| (f(&x), k)).collect();
    let mut samples = Vec::new();
    let mut acc = Float::new(prec);
    let first = n / 2;
    for (big_l, v) in q_prev.iter().enumerate() {
        acc += v;
        if big_l >= first && (big_l - first) % 8 == 0 {
            samples.push((Float::with_val(prec, big_l + 1), acc.clone()));
        }
    }
    let (sum, err) = power_family_limit(&samples, &families, RHS_TERMS_PER_FAMILY)?;
    let lg = |q: &Rational| log_gamma(&f(q), ctx);
    let bs = Rational::from(&one_a - &p.b[s]);
    let cs = Rational::from(&one_a - &p.c[s]);
    let lpre = (&lg(&bs)? + &lg(&cs)?) - (&lg(&one_a)? + &lg(&e[s])?);
    let pre = lpre.exp();
    let sum = BigReal::new(Float::with_val(ctx.bits(), &sum), err);
    let value = &pre * &sum;
    let out = SeriesValue { value, terms_used: n, method: Method::Extrapolated };
    if out.value.err() > ctx.tolerance() {
        return Err(Error::NonConvergence(format!("tail extrapolation error {:.2e}", out.value.err())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn condition_examples() {
        let p = TheoremAParams::new(q(2, 1), vec![q(1, 1); 2], vec![q(1, 1); 2]).unwrap();
        let r = p.conditions();
        assert_eq!(r.c1_margin, 1);
        assert!(r.c1_holds);
        let p = TheoremAParams::lemma1_family(&q(1, 1), 3);
        let r = p.conditions();
        assert!(p.e().iter().all(|e| *e == 1));
        assert!(r.c2_holds);
        for s in 1..4i64 {
            let p = TheoremAParams::lemma1_family(&q(2 * s + 1, 2), s as usize);
            let r = p.conditions();
            assert_eq!(r.c1_margin, 0);
            assert!(!r.c1_holds);
        }
    }

    #[test]
    fn alpha_one_is_eta2() {
        let c = PrecisionContext::new(40, 1e-9).unwrap();
        let p = TheoremAParams::lemma1_family(&q(1, 1), 1);
        let l = eval_theorem_a_lhs(&p, &c).unwrap().value;
        // terms collapse to (-1)^m/(m+1)^2
        let z2 = Float::with_val(c.bits(), 2).zeta() / 2u32;
        assert!(l.is_within(&BigReal::exact(z2.clone()), 1e-30));
        let r = eval_theorem_a_rhs(&p, &c).unwrap().value;
        assert!(r.is_within(&BigReal::exact(z2.clone()), 1e-25), "{r}");
        let p = TheoremAParams::theorem2_family(&q(1, 1), 1);
        let l = eval_theorem_a_lhs(&p, &c).unwrap().value;
        assert!(l.is_within(&BigReal::exact(z2), 1e-30));
    }

    #[test]
    fn random_packs_agree() {
        let c = PrecisionContext::new(40, 1e-8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [1usize, 2] {
            for _ in 0..3 {
                let p = TheoremAParams::random(&mut rng, s);
                let l = eval_theorem_a_lhs(&p, &c).unwrap().value;
                let r = eval_theorem_a_rhs(&p, &c).unwrap_or_else(|e| panic!("{p:?}: {e}")).value;
                assert!(l.is_within(&r, 1e-8), "{p:?}\n{l}\n{r}");
            }
        }
    }
}
