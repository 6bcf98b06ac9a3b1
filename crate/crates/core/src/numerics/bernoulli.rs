use rug::{Float, Integer, Rational};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Exact Bernoulli numbers `B_0..B_n` with `B_1 = -1/2`.
#[derive(Clone, Debug, Default)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn upto(n: usize) -> Self {
        let mut t = Self::default();
        t.extend_to(n);
        t
    }

    /// `B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j`.
    fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let m = self.values.len();
            if m == 0 {
                self.values.push(Rational::from(1));
                continue;
            }
            let mut acc = Rational::new();
            let mut c = Integer::from(1);
            for (j, b) in self.values.iter().enumerate() {
                if *b.numer() != 0 {
                    acc += Rational::from(&c * b);
                }
                c = c * (m + 1 - j) / (j + 1);
            }
            acc /= -(m as i64 + 1);
            self.values.push(acc);
        }
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `Σ_{j=0}^{n} C(n+1, j) B_j`, zero for every `n ≥ 1`.
    pub fn recurrence_residual(&self, n: usize) -> Rational {
        let mut acc = Rational::new();
        for j in 0..=n {
            let c = Integer::from(Integer::binomial_u(n as u32 + 1, j as u32));
            acc += Rational::from(&c * &self.values[j]);
        }
        acc
    }
}

fn table() -> &'static RwLock<BernoulliTable> {
    static T: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(BernoulliTable::upto(64)))
}

/// Exact `B_n`, memoized process-wide.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = table().read().unwrap().get(n) {
        return b.clone();
    }
    let mut t = table().write().unwrap();
    t.extend_to(n);
    t.values[n].clone()
}

/// `B_n` rounded to `prec` bits; cached per precision.
pub fn bernoulli_float(n: usize, prec: u32) -> Float {
    static C: OnceLock<RwLock<HashMap<u32, Vec<Float>>>> = OnceLock::new();
    let cache = C.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&prec).and_then(|v| v.get(n)) {
        return v.clone();
    }
    let mut w = cache.write().unwrap();
    let v = w.entry(prec).or_default();
    while v.len() <= n {
        let b = bernoulli(v.len());
        v.push(Float::with_val(prec, &b));
    }
    v[n].clone()
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::new(prec);
    let mut xp = Float::with_val(prec, 1);
    // Σ_k C(n,k) B_{n-k} x^k
    for k in 0..=n {
        let c = Integer::from(Integer::binomial_u(n as u32, k as u32));
        let term = Float::with_val(prec, &bernoulli_float(n - k, prec) * &c) * &xp;
        acc += term;
        xp *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(6), Rational::from((1, 42)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn recurrence_and_odd_vanishing() {
        let t = BernoulliTable::upto(101);
        for n in 1..=100 {
            assert_eq!(t.recurrence_residual(n), 0, "n = {n}");
        }
        for k in 1..=50 {
            assert_eq!(*t.get(2 * k + 1).unwrap(), 0);
        }
    }

    #[test]
    fn growth_beyond_initial_table() {
        let b = bernoulli(80);
        assert!(b < 0);
        assert_eq!(bernoulli(81), 0);
    }

    #[test]
    fn polynomial_at_one_and_half() {
        let one = Float::with_val(128, 1);
        let half = Float::with_val(128, 0.5);
        // B_n(1) = B_n for n != 1, B_n(1/2) = (2^{1-n} - 1) B_n
        for n in [2usize, 3, 4, 6] {
            let d = bernoulli_poly(n, &one) - bernoulli_float(n, 128);
            assert!(d.abs() < 1e-30);
            let want = Float::with_val(128, &bernoulli(n)) * (2f64.powi(1 - n as i32) - 1.0);
            assert!((bernoulli_poly(n, &half) - want).abs() < 1e-30);
        }
    }
}
