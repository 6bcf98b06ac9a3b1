use super::*;
use crate::indices::compositions;
use crate::numerics::{bernoulli, binomial, zeta_even_exact, BernoulliTable};
use crate::suite::Outcome;
use crate::zeta_poly::{bernoulli_identity_check, theorem3_coefficient, CoefficientVariant};

pub fn eq15_grid() -> Vec<Params> {
    grid2("k", 0..=4, "s", 1..=3)
}

/// `Σ_i 2^{k-i} C(i+r,i) Σ_{k_1+...+k_s=k-i} ζ*(i+k_1+r+2, k_2+2, ..., k_s+2)`.
fn weighted_lhs(k: u32, r: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::zero(ctx.bits());
    for i in 0..=k {
        let c = pow2((k - i) as i64) * binomial((i + r) as i64, i as i64);
        for comp in compositions(k - i, s as usize) {
            let mut parts: Vec<u32> = comp.parts.iter().map(|x| x + 2).collect();
            parts[0] += i + r;
            add(&mut acc, &z_star(&parts, ctx)?, &c);
        }
    }
    Ok(acc)
}

fn eq15_rhs(k: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let n = k + 2 * s;
    let c = pow2(1 + k as i64)
        * binomial((k + s - 1) as i64, k as i64)
        * (Rational::from(1) - pow2(1 - n as i64));
    Ok(zeta(n, ctx)?.mul_rational(&c))
}

pub fn eq15(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let k = uint(p, "k", 0, 5)?;
    let s = uint(p, "s", 1, 4)?;
    Ok(Outcome::numeric(weighted_lhs(k, 0, s, ctx)?, eq15_rhs(k, s, ctx)?, TOL))
}

pub fn k01_grid() -> Vec<Params> {
    grid2("k", 0..=1, "s", 1..=3)
}

/// `k = 0` against `2(1-2^{1-2s}) ζ(2s)`, `k = 1` against `4s(1-2^{-2s}) ζ(2s+1)`.
pub fn eq15_k0_k1(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let k = uint(p, "k", 0, 1)?;
    let s = uint(p, "s", 1, 5)?;
    let lhs = weighted_lhs(k, 0, s, ctx)?;
    let rhs = if k == 0 {
        zeta(2 * s, ctx)?.mul_rational(&((Rational::from(1) - pow2(1 - 2 * s as i64)) * 2u32))
    } else {
        zeta(2 * s + 1, ctx)?.mul_rational(&((Rational::from(1) - pow2(-2 * s as i64)) * (4 * s)))
    };
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

pub fn general15_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for k in 0..=2u32 {
        for r in 0..=2u32 {
            for s in 1..=2u32 {
                out.push(Params::new().with("k", k).with("r", r).with("s", s));
            }
        }
    }
    out
}

/// Right side: alternating strict values indexed by a split of `k` into
/// `i+2` parts and of `r+1` into `i+1` positive parts.
fn general15_rhs(k: u32, r: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::zero(ctx.bits());
    for i in 0..=r {
        let iu = i as usize;
        for ks in compositions(k, iu + 2) {
            for rs in compositions(r + 1 - (i + 1), iu + 1) {
                let rs: Vec<u32> = rs.parts.iter().map(|x| x + 1).collect();
                let ks = &ks.parts;
                let mut c = pow2((i + 1 + ks[iu + 1]) as i64);
                for j in 0..iu {
                    c *= binomial((ks[j] + rs[j]) as i64 - 1, ks[j] as i64);
                }
                c *= binomial((ks[iu] + rs[iu]) as i64 - 2, ks[iu] as i64);
                c *= binomial((ks[iu + 1] + s) as i64 - 1, ks[iu + 1] as i64);
                if c == 0 {
                    continue;
                }
                let mut parts: Vec<u32> = (0..iu).map(|j| ks[j] + rs[j]).collect();
                parts.push(ks[iu] + ks[iu + 1] + rs[iu] + 2 * s - 1);
                add(&mut acc, &z_alt(&parts, ctx)?, &c);
            }
        }
    }
    Ok(acc)
}

pub fn general15(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let k = uint(p, "k", 0, 3)?;
    let r = uint(p, "r", 0, 3)?;
    let s = uint(p, "s", 1, 3)?;
    Ok(Outcome::numeric(weighted_lhs(k, r, s, ctx)?, general15_rhs(k, r, s, ctx)?, TOL_LOOSE))
}

/// `Σ_{k_1+k_2+k_3=s-2} (2+δ_{0,k_1}) ζ*({2}^{k_1},3,{2}^{k_2},3,{2}^{k_3})`.
fn two_threes(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::zero(ctx.bits());
    if s < 2 {
        return Ok(acc);
    }
    for c in compositions(s - 2, 3) {
        let [a, b, d] = [c.parts[0], c.parts[1], c.parts[2]];
        let parts = concat(&[&twos(a), &[3], &twos(b), &[3], &twos(d)]);
        let w = if a == 0 { 3 } else { 2 };
        add(&mut acc, &z_star(&parts, ctx)?, &Rational::from(w));
    }
    Ok(acc)
}

fn four_then_twos(s: u32) -> Vec<u32> {
    concat(&[&[4], &twos(s - 1)])
}

/// `Σ_{i=1}^s ζ*({2}^{i-1}, t, {2}^{s-i})`.
fn moving_entry(t: u32, s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::zero(ctx.bits());
    for i in 1..=s {
        let parts = concat(&[&twos(i - 1), &[t], &twos(s - i)]);
        add(&mut acc, &z_star(&parts, ctx)?, &Rational::from(1));
    }
    Ok(acc)
}

pub fn eq16_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for s in 1..=5u32 {
        for v in ["proof_chain", "eq17", "eq22"] {
            out.push(Params::new().with("s", s).with("coefficient", v));
        }
    }
    out
}

pub fn eq16(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 6)?;
    let v: CoefficientVariant = choice(p, "coefficient", &["proof_chain", "eq17", "eq22"])?.parse()?;
    let c = theorem3_coefficient(s, v)?;
    let lhs = z_star(&four_then_twos(s), ctx)?;
    let mut rhs = z_star(&twos(s + 1), ctx)?.mul_rational(&c);
    add(&mut rhs, &two_threes(s, ctx)?, &Rational::from((-2, 3)));
    let out = Outcome::numeric(lhs, rhs, TOL).note("c", &c);
    Ok(if v == CoefficientVariant::ProofChain { out } else { out.reported() })
}

pub fn s4_grid() -> Vec<Params> {
    grid1("s", 1..=4)
}

pub fn s5_grid() -> Vec<Params> {
    grid1("s", 1..=5)
}

pub fn s6_grid() -> Vec<Params> {
    grid1("s", 1..=6)
}

pub fn s30_grid() -> Vec<Params> {
    grid1("s", 1..=30)
}

/// `4 s (s+1) (1-2^{-1-2s}) ζ(2s+2)`.
fn eq18_rhs(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let c = (Rational::from(1) - pow2(-1 - 2 * s as i64)) * (4 * s * (s + 1));
    Ok(zeta(2 * s + 2, ctx)?.mul_rational(&c))
}

pub fn eq18(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 5)?;
    let mut lhs = z_star(&four_then_twos(s), ctx)?.mul_int(3);
    add(&mut lhs, &moving_entry(4, s, ctx)?, &Rational::from(4));
    add(&mut lhs, &two_threes(s, ctx)?, &Rational::from(2));
    Ok(Outcome::numeric(lhs, eq18_rhs(s, ctx)?, TOL))
}

pub fn eq19_grid() -> Vec<Params> {
    grid1("s", 1..=6)
}

pub fn eq19(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 8)?;
    let lhs = z_star(&twos(s), ctx)?;
    let c = (Rational::from(1) - pow2(1 - 2 * s as i64)) * 2u32;
    Ok(Outcome::numeric(lhs, zeta(2 * s, ctx)?.mul_rational(&c), TOL))
}

pub fn eq20(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 6)?;
    let lhs = eq18_rhs(s, ctx)?;
    let rhs = z_star(&twos(s + 1), ctx)?.mul_int((2 * s * (s + 1)) as i64);
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

/// `-(1/2) Σ_{i<s} C(2s+2, 2i+4) B_{2i+4} B_{2s-2-2i} / B_{2s+2} · η-factor ratio`.
fn eq21_coefficient(s: u32) -> Rational {
    let n = s + 1;
    let eta = |j: u32| Rational::from(1) - pow2(1 - 2 * j as i64);
    let mut acc = Rational::new();
    for i in 0..s {
        let j = s - 1 - i;
        acc += binomial(2 * n as i64, 2 * (i + 2) as i64) * bernoulli(2 * (i + 2) as usize) * bernoulli(2 * j as usize)
            * eta(j);
    }
    acc / bernoulli(2 * n as usize) / eta(n) * Rational::from((-1, 2))
}

/// Rational multiple of `π^{2s+2}` in `Σ_{i<s} ζ(2i+4) ζ*({2}^{s-1-i})`,
/// using `ζ*({2}^n) = 2(1-2^{1-2n}) ζ(2n)` and `ζ(0) = -1/2`.
fn eq21_chain_pi_coefficient(s: u32) -> Rational {
    let zeta_even_q = |n: u32| if n == 0 { Rational::from((-1, 2)) } else { zeta_even_exact(n).q };
    let mut acc = Rational::new();
    for i in 0..s {
        let j = s - 1 - i;
        let star = (Rational::from(1) - pow2(1 - 2 * j as i64)) * 2u32 * zeta_even_q(j);
        acc += zeta_even_exact(i + 2).q * star;
    }
    acc
}

pub fn eq21_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for s in 1..=4u32 {
        for form in ["final", "chain"] {
            out.push(Params::new().with("s", s).with("form", form));
        }
    }
    out
}

pub fn eq21(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 6)?;
    let k = eq21_coefficient(s);
    match choice(p, "form", &["final", "chain"])? {
        "final" => {
            let lhs = moving_entry(4, s, ctx)?;
            let rhs = z_star(&twos(s + 1), ctx)?.mul_rational(&k);
            Ok(Outcome::numeric(lhs, rhs, TOL).note("coefficient", &k))
        }
        _ => {
            // both sides as rational multiples of π^{2s+2}
            let n = s + 1;
            let star_q = (Rational::from(1) - pow2(1 - 2 * n as i64)) * 2u32 * zeta_even_exact(n).q;
            Ok(Outcome::exact(eq21_chain_pi_coefficient(s), k * star_q))
        }
    }
}

pub fn telescope_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for t in [2u32, 4] {
        for s in 1..=4u32 {
            out.push(Params::new().with("t", t).with("s", s));
        }
    }
    out
}

pub fn eq21_telescope(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let t = uint(p, "t", 2, 6)?;
    let s = uint(p, "s", 1, 5)?;
    let mut lhs = BigReal::zero(ctx.bits());
    for i in 0..s {
        let term = &zeta(2 * i + t, ctx)? * &z_star(&twos(s - 1 - i), ctx)?;
        add(&mut lhs, &term, &Rational::from(1));
    }
    Ok(Outcome::numeric(lhs, moving_entry(t, s, ctx)?, TOL))
}

pub fn eq22_vs_eq17(p: &Params, _: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 60)?;
    Ok(Outcome::exact(
        theorem3_coefficient(s, CoefficientVariant::Eq17)?,
        theorem3_coefficient(s, CoefficientVariant::Eq22)?,
    ))
}

pub fn bernoulli_id(p: &Params, _: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 60)?;
    Ok(Outcome::exact(bernoulli_identity_check(s)?, Rational::new()))
}

pub fn rec_grid() -> Vec<Params> {
    grid1("n", 1..=60)
}

pub fn odd_grid() -> Vec<Params> {
    grid1("n", (3..=59).step_by(2))
}

pub fn bernoulli_rec(p: &Params, _: &PrecisionContext) -> Result<Outcome> {
    let n = uint(p, "n", 1, 120)?;
    let t = BernoulliTable::upto(n as usize);
    Ok(Outcome::exact(t.recurrence_residual(n as usize), Rational::new()))
}

pub fn bernoulli_odd(p: &Params, _: &PrecisionContext) -> Result<Outcome> {
    let n = int(p, "n", 3, 121)?;
    if n % 2 == 0 {
        return Err(Error::OutOfRange(format!("n={n} is even")));
    }
    Ok(Outcome::exact(bernoulli(n as usize), Rational::new()))
}

pub fn euler_formula(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let s = uint(p, "s", 1, 10)?;
    let e = zeta_even_exact(s);
    Ok(Outcome::numeric(e.value(ctx), z_mzv(&[2 * s], ctx)?, TOL_TIGHT).note("q", &e.q))
}
