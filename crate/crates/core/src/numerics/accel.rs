use super::precision::PrecisionContext;
use super::real::BigReal;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Raw summands of an alternating series.
    AlternatingCvz,
    /// Partial sums.
    LevinU,
    /// Partial sums with an expansion in powers of `1/n`.
    Richardson,
}

/// Cohen–Villegas–Zagier: `Σ_k (-1)^k a_k` from `a_0..a_{n-1}`.
pub fn cvz(a: &[Float]) -> Float {
    let n = a.len();
    let prec = a.first().map_or(64, |x| x.prec()) + 16;
    let sqrt8 = Float::with_val(prec, 8).sqrt();
    let mut d = Float::with_val(prec, sqrt8 + 3u32).pow(n as u32);
    d = (Float::with_val(prec, d.recip_ref()) + d) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut s = Float::new(prec);
    let nn = n as i64;
    for (k, ak) in a.iter().enumerate() {
        let k = k as i64;
        c = Float::with_val(prec, &b - &c);
        s += Float::with_val(prec, &c * ak);
        b *= 2 * (k + nn) * (k - nn);
        b /= (2 * k + 1) * (k + 1);
    }
    Float::with_val(prec - 16, s / d)
}

/// CVZ at orders `n` and `n-1`; the error estimate is ten times their gap
/// plus accumulated rounding.
pub fn cvz_with_err(a: &[Float]) -> (Float, f64) {
    let full = cvz(a);
    let prev = cvz(&a[..a.len() - 1]);
    let gap = Float::with_val(full.prec(), &full - &prev).abs().to_f64();
    let big = a.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let round = big * a.len() as f64 * 2f64.powi(4 - full.prec() as i32);
    (full, 10.0 * gap + round)
}

fn levin_u_order(s: &[Float], k: usize) -> Option<Float> {
    let prec = s[0].prec() + 32;
    let mut num = Float::new(prec);
    let mut den = Float::new(prec);
    let mut binom = Float::with_val(prec, 1);
    for j in 0..=k {
        let a = if j == 0 {
            Float::with_val(prec, &s[0])
        } else {
            Float::with_val(prec, &s[j] - &s[j - 1])
        };
        if a.is_zero() {
            return None;
        }
        let w = a * (j as u32 + 1);
        let ratio = Float::with_val(prec, j as u32 + 1) / (k as u32 + 1);
        let mut coef = Float::with_val(prec, &binom * ratio.pow(k.saturating_sub(1) as u32));
        if j % 2 == 1 {
            coef = -coef;
        }
        num += Float::with_val(prec, &coef * &s[j]) / &w;
        den += coef / &w;
        binom *= (k - j) as u32;
        binom /= (j + 1) as u32;
    }
    if den.is_zero() {
        return None;
    }
    Some(num / den)
}

/// Neville extrapolation of `s(h)` to `h = 0`.
fn neville_at_zero(h: &[Float], s: &[Float]) -> Float {
    let prec = s[0].prec() + 32;
    let mut p: Vec<Float> = s.iter().map(|v| Float::with_val(prec, v)).collect();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            // P_{i..i+m}(0) = (h_{i+m} P_{i..i+m-1} - h_i P_{i+1..i+m}) / (h_{i+m} - h_i)
            let num = Float::with_val(prec, &h[i + m] * &p[i]) - Float::with_val(prec, &h[i] * &p[i + 1]);
            let den = Float::with_val(prec, &h[i + m] - &h[i]);
            p[i] = num / den;
        }
    }
    p.swap_remove(0)
}

const RICHARDSON_POINTS: usize = 16;

/// Extrapolated limit of a series; see [`Scheme`] for what `terms` holds.
pub fn accelerate(terms: &[BigReal], scheme: Scheme, ctx: &PrecisionContext) -> Result<BigReal> {
    if terms.len() < 8 {
        return Err(Error::OutOfRange(format!(
            "acceleration needs at least 8 entries, got {}",
            terms.len()
        )));
    }
    let prec = ctx.bits();
    let input_err = terms.iter().map(BigReal::err).fold(0.0, f64::max);
    let vals: Vec<Float> = terms.iter().map(|t| Float::with_val(prec, t.value())).collect();
    let (value, est) = match scheme {
        Scheme::AlternatingCvz => {
            let a: Vec<Float> = vals
                .iter()
                .enumerate()
                .map(|(k, t)| if k % 2 == 0 { t.clone() } else { Float::with_val(prec, -t) })
                .collect();
            let (v, e) = cvz_with_err(&a);
            (v, e + input_err * terms.len() as f64)
        }
        Scheme::LevinU | Scheme::Richardson => {
            let last = &vals[vals.len() - 1];
            if vals.iter().all(|v| v == last) {
                return Ok(terms[terms.len() - 1].clone());
            }
            if scheme == Scheme::LevinU {
                let k = vals.len() - 1;
                let hi = levin_u_order(&vals, k);
                let lo = levin_u_order(&vals, k - 1);
                match (hi, lo) {
                    (Some(h), Some(l)) => {
                        let gap = Float::with_val(prec, &h - &l).abs().to_f64();
                        (h, 10.0 * gap + input_err)
                    }
                    _ => {
                        return Err(Error::NonConvergence(
                            "Levin u hit a vanishing term".into(),
                        ))
                    }
                }
            } else {
                let n = vals.len();
                let take = n.min(RICHARDSON_POINTS);
                let h: Vec<Float> =
                    (n - take..n).map(|i| Float::with_val(prec, 1) / (i as u32 + 1)).collect();
                let hi = neville_at_zero(&h, &vals[n - take..]);
                let lo = neville_at_zero(&h[..take - 1], &vals[n - take..n - 1]);
                let gap = Float::with_val(prec, &hi - &lo).abs().to_f64();
                (hi, 10.0 * gap + 4.0 * input_err)
            }
        }
    };
    let est = est + 8.0 * value.to_f64().abs() * ctx.epsilon();
    if !(est <= ctx.tolerance()) {
        return Err(Error::NonConvergence(format!(
            "{scheme:?} error estimate {est:.2e} exceeds tolerance {:.2e}",
            ctx.tolerance()
        )));
    }
    Ok(BigReal::new(Float::with_val(prec, value), est))
}

/// Limit of `S(N) = S∞ + Σ_r Σ_{j<J} Σ_{p≤P_r} c_{rjp} N^{-(σ_r + j)} ln^p N`
/// from samples `(N, S(N))`.
///
/// `families` holds `(σ_r, P_r)`. Solves on the last samples with `J` and
/// with `J-1` terms per family; returns the higher-order value and ten times
/// the gap.
pub fn power_family_limit(
    samples: &[(Float, Float)],
    families: &[(Float, usize)],
    per_family: usize,
) -> Result<(Float, f64)> {
    let solve_with = |j_terms: usize| -> Result<Float> {
        let unknowns = 1 + families.iter().map(|(_, p)| (p + 1) * j_terms).sum::<usize>();
        if samples.len() < unknowns {
            return Err(Error::NonConvergence("too few samples for extrapolation".into()));
        }
        let pts = &samples[samples.len() - unknowns..];
        let prec = pts[0].1.prec() + 64;
        let mut m: Vec<Vec<Float>> = Vec::with_capacity(unknowns);
        for (n, s) in pts {
            let ln_n = Float::with_val(prec, n.ln_ref());
            let mut row = vec![Float::with_val(prec, 1)];
            for (sig, logs) in families {
                for j in 0..j_terms {
                    let e = Float::with_val(prec, sig + j as u32);
                    let mut b = Float::with_val(prec, -(e * &ln_n)).exp();
                    for _ in 0..=*logs {
                        row.push(b.clone());
                        b *= &ln_n;
                    }
                }
            }
            row.push(Float::with_val(prec, s));
            m.push(row);
        }
        let x = gauss_solve(m)?;
        Ok(x.into_iter().next().unwrap())
    };
    let hi = solve_with(per_family)?;
    let lo = solve_with(per_family.saturating_sub(1).max(1))?;
    let gap = Float::with_val(hi.prec(), &hi - &lo).abs().to_f64();
    Ok((hi, 10.0 * gap))
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
pub(crate) fn gauss_solve(mut m: Vec<Vec<Float>>) -> Result<Vec<Float>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| {
                let x = m[a][col].clone().abs();
                let y = m[b][col].clone().abs();
                x.partial_cmp(&y).unwrap()
            })
            .unwrap();
        if m[piv][col].is_zero() {
            return Err(Error::NonConvergence("singular extrapolation system".into()));
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = Float::with_val(m[r][col].prec(), &m[r][col] / &m[col][col]);
            for c in col..=n {
                let t = Float::with_val(f.prec(), &f * &m[col][c]);
                m[r][c] -= t;
            }
        }
    }
    let mut x = vec![Float::new(m[0][0].prec()); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n].clone();
        for c in r + 1..n {
            acc -= Float::with_val(acc.prec(), &m[r][c] * &x[c]);
        }
        x[r] = acc / &m[r][r];
    }
    Ok(x)
}
