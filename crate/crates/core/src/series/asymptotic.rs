//! Truncated asymptotic expansions `Σ_{j,l} c_{jl} x^{-(β+j)} ln^l x` and the
//! Euler–Maclaurin antidifference acting on them.

use crate::numerics::bernoulli::{bernoulli_float, bernoulli_poly};
use rug::{Float, Rational};

#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    /// `None` means the integral family, offset exactly zero.
    beta: Option<Float>,
    /// `coef[j][l]`, `j = 0..=order`.
    coef: Vec<Vec<Float>>,
    prec: u32,
}

impl Expansion {
    pub fn zero(order: usize, prec: u32) -> Self {
        Self { beta: None, coef: vec![Vec::new(); order + 1], prec }
    }

    pub fn constant(c: &Float, order: usize, prec: u32) -> Self {
        let mut e = Self::zero(order, prec);
        e.set(0, 0, Float::with_val(prec, c));
        e
    }

    pub fn order(&self) -> usize {
        self.coef.len() - 1
    }

    fn set(&mut self, j: usize, l: usize, v: Float) {
        let row = &mut self.coef[j];
        if row.len() <= l {
            row.resize(l + 1, Float::new(self.prec));
        }
        row[l] = v;
    }

    fn add_at(&mut self, j: usize, l: usize, v: &Float) {
        if j >= self.coef.len() {
            return;
        }
        let row = &mut self.coef[j];
        if row.len() <= l {
            row.resize(l + 1, Float::new(self.prec));
        }
        row[l] += v;
    }

    /// `(x + δ)^{-k}` expanded in `x^{-1}`.
    pub fn power(delta: &Float, k: u32, order: usize, prec: u32) -> Self {
        let mut e = Self::zero(order, prec);
        let mut c = Float::with_val(prec, 1);
        let k = k as usize;
        for j in 0..=order.saturating_sub(k) {
            if k + j > order {
                break;
            }
            e.set(k + j, 0, c.clone());
            // C(-k, j+1) δ^{j+1} from C(-k, j) δ^j
            c *= delta;
            c *= -((k + j) as i64);
            c /= (j + 1) as u32;
            if c.is_zero() {
                break;
            }
        }
        e
    }

    /// `Γ(x+1) Γ(α) / Γ(x+α)`, i.e. `x! / (α)_x` on integers.
    pub fn gamma_ratio(alpha: &Rational, order: usize, prec: u32) -> Self {
        let a = Float::with_val(prec, alpha);
        let one = Float::with_val(prec, 1);
        // φ_k = (-1)^{k+1} (B_{k+1}(1) - B_{k+1}(α)) / (k (k+1))
        let mut phi = vec![Float::new(prec); order + 1];
        for (k, p) in phi.iter_mut().enumerate().skip(1) {
            let d = bernoulli_poly(k + 1, &one) - bernoulli_poly(k + 1, &a);
            let v = d / ((k * (k + 1)) as u32);
            *p = if k % 2 == 1 { v } else { -v };
        }
        // exp of Σ φ_k y^k
        let mut ex = vec![Float::new(prec); order + 1];
        ex[0] = Float::with_val(prec, 1);
        for n in 1..=order {
            let mut acc = Float::new(prec);
            for k in 1..=n {
                acc += Float::with_val(prec, &phi[k] * &ex[n - k]) * (k as u32);
            }
            ex[n] = acc / (n as u32);
        }
        let gamma_a = Float::with_val(prec, a.gamma_ref());
        let shift = Rational::from(alpha - 1u32);
        if shift.is_integer() && shift >= 0 {
            let s = shift.numer().to_usize().unwrap();
            let mut e = Self::zero(order, prec);
            for (n, c) in ex.iter().enumerate() {
                if n + s <= order {
                    e.set(n + s, 0, Float::with_val(prec, c * &gamma_a));
                }
            }
            e
        } else {
            let mut e = Self::zero(order, prec);
            e.beta = Some(Float::with_val(prec, &shift));
            for (n, c) in ex.iter().enumerate() {
                e.set(n, 0, Float::with_val(prec, c * &gamma_a));
            }
            e
        }
    }

    pub fn is_integral(&self) -> bool {
        self.beta.is_none()
    }

    pub fn add(&self, o: &Self) -> Self {
        match (&self.beta, &o.beta) {
            (None, None) => {}
            (Some(a), Some(b)) if a == b => {}
            _ => panic!("adding expansions with different offsets"),
        }
        let mut out = self.clone();
        for (j, row) in o.coef.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                out.add_at(j, l, c);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let mut out = Self::zero(order, self.prec);
        out.beta = match (&self.beta, &o.beta) {
            (None, None) => None,
            (Some(b), None) | (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(Float::with_val(self.prec, a + b)),
        };
        for (j1, r1) in self.coef.iter().enumerate() {
            for (l1, c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (j2, r2) in o.coef.iter().enumerate().take(order + 1 - j1.min(order + 1)) {
                    if j1 + j2 > order {
                        break;
                    }
                    for (l2, c2) in r2.iter().enumerate() {
                        if !c2.is_zero() {
                            let p = Float::with_val(self.prec, c1 * c2);
                            out.add_at(j1 + j2, l1 + l2, &p);
                        }
                    }
                }
            }
        }
        out
    }

    fn exponent(&self, j: usize) -> Float {
        match &self.beta {
            None => Float::with_val(self.prec, j as u32),
            Some(b) => Float::with_val(self.prec, b + j as u32),
        }
    }

    /// `d/dx`, keeping the offset: `x^{-p} ln^l x ↦ x^{-p-1}(l ln^{l-1} x - p ln^l x)`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.order(), self.prec);
        out.beta = self.beta.clone();
        for (j, row) in self.coef.iter().enumerate() {
            if j + 1 > self.order() {
                break;
            }
            let p = self.exponent(j);
            for (l, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.add_at(j + 1, l, &(-Float::with_val(self.prec, c * &p)));
                if l > 0 {
                    out.add_at(j + 1, l - 1, &Float::with_val(self.prec, c * (l as u32)));
                }
            }
        }
        out
    }

    /// `F` with `F(x+1) - F(x) ≈ f(x)`:
    /// `∫f - f/2 + Σ_k B_{2k}/(2k)! f^{(2k-1)}`.
    ///
    /// Integral-family output keeps offset 0 by shifting indices down one;
    /// otherwise the offset drops by one and indices stay put.
    pub fn antidifference(&self) -> Self {
        let prec = self.prec;
        let order = self.order();
        let integral = self.is_integral();
        if integral {
            assert!(
                self.coef[0].iter().all(|c| c.is_zero()),
                "antidifference of a non-decaying integral-family term"
            );
        }
        let mut out = Self::zero(order, prec);
        out.beta = self.beta.as_ref().map(|b| Float::with_val(prec, b - 1u32));
        // index in `out` of a term with exponent `β + j` in `self` terms
        let place = |j: usize| if integral { j } else { j + 1 };
        for (j, row) in self.coef.iter().enumerate() {
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            let p = self.exponent(j);
            let tgt = if integral { j - 1 } else { j };
            for (l, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if integral && j == 1 {
                    out.add_at(0, l + 1, &Float::with_val(prec, c / (l as u32 + 1)));
                    continue;
                }
                // x^{1-p} Σ_i (-1)^i l!/(l-i)! ln^{l-i} x / (1-p)^{i+1}
                let one_minus_p = Float::with_val(prec, 1 - &p);
                let mut fall = Float::with_val(prec, 1);
                let mut den = one_minus_p.clone();
                for i in 0..=l {
                    let mut t = Float::with_val(prec, c * &fall) / &den;
                    if i % 2 == 1 {
                        t = -t;
                    }
                    out.add_at(tgt, l - i, &t);
                    fall *= (l - i) as u32;
                    den *= &one_minus_p;
                }
            }
            for (l, c) in row.iter().enumerate() {
                out.add_at(place(j), l, &Float::with_val(prec, -(c.clone()) / 2u32));
            }
        }
        // odd derivatives; f^{(2k-1)} has indices shifted by 2k-1
        let mut d = self.derivative();
        let mut fact = Float::with_val(prec, 2);
        let mut k = 1usize;
        while 2 * k - 1 <= order {
            let b = Float::with_val(prec, bernoulli_float(2 * k, prec) / &fact);
            for (j, row) in d.coef.iter().enumerate() {
                for (l, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let idx = place(j);
                        out.add_at(idx, l, &Float::with_val(prec, c * &b));
                    }
                }
            }
            d = d.derivative().derivative();
            fact *= ((2 * k + 1) * (2 * k + 2)) as u32;
            k += 1;
        }
        out
    }

    /// Add a constant; only meaningful for the integral family.
    pub fn plus_constant(mut self, c: &Float) -> Self {
        assert!(self.is_integral());
        self.add_at(0, 0, c);
        self
    }

    pub fn eval(&self, x: &Float) -> Float {
        let prec = self.prec;
        let ln = Float::with_val(prec, x.ln_ref());
        let inv = Float::with_val(prec, x.recip_ref());
        let mut xp = match &self.beta {
            None => Float::with_val(prec, 1),
            Some(b) => Float::with_val(prec, -(Float::with_val(prec, b * &ln))).exp(),
        };
        let mut acc = Float::new(prec);
        for row in &self.coef {
            let mut lp = Float::with_val(prec, 1);
            let mut s = Float::new(prec);
            for c in row {
                s += Float::with_val(prec, c * &lp);
                lp *= &ln;
            }
            acc += s * &xp;
            xp *= &inv;
        }
        acc
    }

    /// True when every retained term tends to zero as `x → ∞`.
    pub fn decays(&self) -> bool {
        self.coef.iter().enumerate().all(|(j, row)| {
            let p = self.exponent(j);
            p > 0 || row.iter().all(|c| c.is_zero())
        })
    }
}
