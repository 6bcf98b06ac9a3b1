use super::*;
use crate::indices::{parse_index, HurwitzIndex};
use crate::series::{
    eval_hurwitz_mzv, eval_param_series, eval_theorem_a_lhs, eval_theorem_a_rhs, gamma_ratio_taylor,
    ParamFamily, Side, TheoremAParams,
};
use crate::suite::Outcome;
use crate::zeta_poly::gamma_ratio_coeffs;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn poch_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for form in ["rising", "reciprocal"] {
        for w in ["1", "3/4"] {
            for m in [3u32, 6] {
                for r in 1..=3u32 {
                    out.push(Params::new().with("form", form).with("w", w).with("m", m).with("r", r));
                }
            }
        }
    }
    out
}

/// Taylor coefficients in `h` of `Π_j (w + j + h)^{±1}`, up to `h^r`.
fn product_series(w: &Rational, js: impl Iterator<Item = u32>, r: usize, reciprocal: bool) -> Vec<Rational> {
    let mut acc = vec![Rational::new(); r + 1];
    acc[0] = Rational::from(1);
    for j in js {
        let a = Rational::from(w + j);
        // factor as a series: a + h, or 1/(a+h) = Σ (-h)^k / a^{k+1}
        let f: Vec<Rational> = if reciprocal {
            let mut v = Vec::with_capacity(r + 1);
            let mut t = a.clone().recip();
            for _ in 0..=r {
                v.push(t.clone());
                t = -t / &a;
            }
            v
        } else {
            let mut v = vec![Rational::new(); r + 1];
            v[0] = a;
            if r >= 1 {
                v[1] = Rational::from(1);
            }
            v
        };
        let mut next = vec![Rational::new(); r + 1];
        for (i, x) in acc.iter().enumerate() {
            for (k, y) in f.iter().enumerate().take(r + 1 - i) {
                next[i + k] += Rational::from(x * y);
            }
        }
        acc = next;
    }
    acc
}

/// `Σ Π 1/(m_i + w)` over index tuples `0 ≤ m_1 < ... < m_r < top` (strict)
/// or `0 ≤ m_1 ≤ ... ≤ m_r ≤ top` (non-strict), by direct enumeration.
fn nested_harmonic(w: &Rational, r: u32, top: u32, strict: bool) -> Rational {
    fn go(w: &Rational, left: u32, from: u32, top: u32, strict: bool) -> Rational {
        if left == 0 {
            return Rational::from(1);
        }
        let end = if strict { top } else { top + 1 };
        let mut acc = Rational::new();
        for m in from..end {
            let next = if strict { m + 1 } else { m };
            acc += go(w, left - 1, next, top, strict) / Rational::from(w + m);
        }
        acc
    }
    go(w, r, 0, top, strict)
}

pub fn pochhammer_deriv(p: &Params, _: &PrecisionContext) -> Result<Outcome> {
    let form = choice(p, "form", &["rising", "reciprocal"])?;
    let w = rational(p, "w", &[(1, 1), (3, 4), (1, 2), (5, 4)])?;
    let m = uint(p, "m", 1, 8)?;
    let r = uint(p, "r", 0, 4)?;
    let ru = r as usize;
    Ok(if form == "rising" {
        let lhs = product_series(&w, 0..m, ru, false)[ru].clone();
        let poch = product_series(&w, 0..m, 0, false)[0].clone();
        Outcome::exact(lhs, poch * nested_harmonic(&w, r, m, true))
    } else {
        let mut lhs = product_series(&w, 0..m + 1, ru, true)[ru].clone();
        if r % 2 == 1 {
            lhs = -lhs;
        }
        let inv = product_series(&w, 0..m + 1, 0, true)[0].clone();
        Outcome::exact(lhs, inv * nested_harmonic(&w, r, m, false))
    })
}

pub fn eq11_grid() -> Vec<Params> {
    grid1("i", 0..=6)
}

/// Symbolic coefficient against the Taylor expansion built from digamma
/// and Hurwitz zeta values.
pub fn eq11(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let i = uint(p, "i", 0, 12)? as usize;
    let sym = gamma_ratio_coeffs(i)?.coeffs[i].clone();
    let lhs = sym.eval(ctx)?;
    let rhs = gamma_ratio_taylor(&Rational::from(1), i as u32, ctx)?[i].clone();
    Ok(Outcome::numeric(lhs, rhs, TOL_TIGHT).note("polynomial", sym.to_string()))
}

const ALPHAS: [(i64, i64); 3] = [(3, 4), (1, 1), (5, 4)];

pub fn special_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for form in ["lemma1", "theorem2"] {
        for (n, d) in ALPHAS {
            for s in 1..=2u32 {
                for r in 0..=2u32 {
                    let a = Rational::from((n, d));
                    out.push(Params::new().with("form", form).with("alpha", &a).with("s", s).with("r", r));
                }
            }
        }
    }
    out
}

/// `r = 0`: the generic hypergeometric side at the specialized parameters
/// against the specialized nested sum, rescaled. `r ≥ 1`: the signed
/// α-derivatives of both specialized sides.
pub fn thm_a_special(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let fam: ParamFamily = choice(p, "form", &["lemma1", "theorem2"])?.parse()?;
    let alpha = rational(p, "alpha", &ALPHAS)?;
    let s = uint(p, "s", 1, 3)?;
    let r = uint(p, "r", 0, 3)?;
    if r > 0 {
        let lhs = eval_param_series(fam, &alpha, s, Side::Lhs, r, ctx)?.value;
        let rhs = eval_param_series(fam, &alpha, s, Side::Rhs, r, ctx)?.value;
        return Ok(Outcome::numeric(lhs, rhs, TOL));
    }
    let (generic, scale) = match fam {
        ParamFamily::Lemma1 => {
            let two_a1 = Rational::from(&alpha * 2u32) - 1u32;
            let pw = pow_q(&alpha, 2 * s + 1);
            (TheoremAParams::lemma1_family(&alpha, s as usize), pw / (two_a1 * 2u32))
        }
        ParamFamily::Theorem2 => {
            let pw = pow_q(&alpha, s + 1);
            (TheoremAParams::theorem2_family(&alpha, s as usize), pw / (Rational::from(&alpha + 1u32)))
        }
    };
    let lhs = eval_theorem_a_lhs(&generic, ctx)?.value;
    let rhs = eval_param_series(fam, &alpha, s, Side::Rhs, 0, ctx)?.value.mul_rational(&scale);
    Ok(Outcome::numeric(lhs, rhs, TOL))
}

fn pow_q(q: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::from(1), |acc, _| acc * q)
}

pub fn random_grid() -> Vec<Params> {
    grid1("pack", 0..20)
}

const RANDOM_SEED: u64 = 0x6d7a_766b;

/// Deterministic pack `n`: depth 1 for the first ten, depth 2 after.
pub(crate) fn random_pack(n: u32) -> TheoremAParams {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED + n as u64);
    TheoremAParams::random(&mut rng, if n < 10 { 1 } else { 2 })
}

pub fn thm_a_random(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let n = uint(p, "pack", 0, 999)?;
    let pack = random_pack(n);
    let cond = pack.conditions();
    let lhs = eval_theorem_a_lhs(&pack, ctx)?.value;
    let rhs = eval_theorem_a_rhs(&pack, ctx)?.value;
    let list = |v: &[Rational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
    Ok(Outcome::numeric(lhs, rhs, TOL_LOOSE)
        .note("a", &pack.a)
        .note("b", list(&pack.b))
        .note("c", list(&pack.c))
        .note("c1_margin", &cond.c1_margin)
        .note("c2_margin", &cond.c2_min_margin))
}

const DUALITY_INDICES: [&str; 5] = ["2", "3", "1,2", "1,1,3", "1,1,4"];
const HALF_ALPHAS: [(i64, i64); 3] = [(1, 2), (1, 1), (3, 2)];

pub fn duality_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for (n, d) in HALF_ALPHAS {
        for idx in DUALITY_INDICES {
            out.push(Params::new().with("alpha", &Rational::from((n, d))).with("index", idx));
        }
    }
    out
}

pub fn duality23(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let alpha = rational(p, "alpha", &HALF_ALPHAS)?;
    let idx = match p.get("index") {
        Some(ParamValue::Text(s)) => s.clone(),
        _ => return Err(Error::OutOfRange("index must be a string such as \"1,2\"".into())),
    };
    let parts = parse_index(&format!("z({idx})")).map_err(|e| Error::OutOfRange(e.to_string()))?;
    if parts.weight() > 8 {
        return Err(Error::OutOfRange(format!("weight of ({idx}) above 8")));
    }
    let h = HurwitzIndex::new(parts.parts(), alpha)?;
    let dual = h.dual()?;
    let l = eval_hurwitz_mzv(&h, Side::Lhs, ctx)?;
    let r = eval_hurwitz_mzv(&h, Side::Rhs, ctx)?;
    let shown = dual.parts().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
    Ok(Outcome::numeric(l.value, r.value, TOL)
        .note("dual", shown)
        .note("terms_lhs", l.terms_used as i64)
        .note("terms_rhs", r.terms_used as i64))
}

pub fn note2vi_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for l in 0..=3u32 {
        for k in l + 1..=3 {
            out.push(Params::new().with("l", l).with("k", k));
        }
    }
    out
}

pub fn note2vi(p: &Params, ctx: &PrecisionContext) -> Result<Outcome> {
    let l = uint(p, "l", 0, 4)?;
    let k = uint(p, "k", 0, 4)?;
    let lhs = z_mzv(&ones_then(l, k + 2), ctx)?;
    let rhs = z_mzv(&ones_then(k, l + 2), ctx)?;
    Ok(Outcome::numeric(lhs, rhs, TOL))
}
