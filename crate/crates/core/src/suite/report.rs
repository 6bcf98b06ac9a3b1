use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        })
    }
}

/// Integers stay integers; rationals are `"p/q"` strings, names are plain strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(n: i64) -> Self {
        ParamValue::Int(n)
    }
}

impl From<u32> for ParamValue {
    fn from(n: u32) -> Self {
        ParamValue::Int(n as i64)
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(s: String) -> Self {
        ParamValue::Text(s)
    }
}

impl From<&rug::Rational> for ParamValue {
    fn from(q: &rug::Rational) -> Self {
        ParamValue::Text(q.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, v: impl Into<ParamValue>) -> Self {
        self.0.insert(key.to_string(), v.into());
        self
    }

    pub fn insert(&mut self, key: &str, v: impl Into<ParamValue>) {
        self.0.insert(key.to_string(), v.into());
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.get(key)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// One side of a check as it appears in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Real {
        value: String,
        #[serde(with = "sci")]
        err: f64,
    },
    Exact(String),
    Unavailable(()),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Real { value, err } => write!(f, "{value} ± {}", sci::render(*err)),
            Quantity::Exact(q) => f.write_str(q),
            Quantity::Unavailable(()) => f.write_str("n/a"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckResult {
    pub check_id: String,
    pub params: Params,
    pub lhs: Quantity,
    pub rhs: Quantity,
    #[serde(with = "sci")]
    pub abs_residual: f64,
    #[serde(with = "sci")]
    pub rel_residual: f64,
    #[serde(with = "sci")]
    pub tolerance: f64,
    pub status: Status,
    pub wall_ms: u64,
    /// Why an evaluation failed; text output only.
    #[serde(skip)]
    pub reason: Option<String>,
}

impl fmt::Display for IdentityCheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {} [{}] |Δ|={} tol={}",
            self.status,
            self.check_id,
            self.params,
            sci::render(self.abs_residual),
            sci::render(self.tolerance)
        )?;
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteReport {
    pub results: Vec<IdentityCheckResult>,
}

impl SuiteReport {
    pub fn count(&self, s: Status) -> usize {
        self.results.iter().filter(|r| r.status == s).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn reported(&self) -> usize {
        self.count(Status::Reported)
    }

    pub fn summary(&self) -> String {
        format!("{} pass / {} fail / {} reported", self.passed(), self.failed(), self.reported())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.results).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        Ok(Self { results: serde_json::from_str(s)? })
    }
}

/// Reals as short scientific strings, e.g. `"3.142e0"`.
pub(crate) mod sci {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn render(x: f64) -> String {
        format!("{x:.3e}")
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> IdentityCheckResult {
        IdentityCheckResult {
            check_id: "x".into(),
            params: Params::new().with("s", 2u32).with("alpha", "3/4"),
            lhs: Quantity::Real { value: "1.25e0".into(), err: 3.5e-41 },
            rhs: Quantity::Exact("7/4".into()),
            abs_residual: 1.0 / 3.0,
            rel_residual: f64::INFINITY,
            tolerance: 1e-9,
            status: Status::Fail,
            wall_ms: 12,
            reason: None,
        }
    }

    #[test]
    fn field_order_and_round_trip() {
        let rep = SuiteReport { results: vec![sample()] };
        let js = rep.to_json();
        let keys = ["check_id", "params", "lhs", "rhs", "abs_residual", "rel_residual", "tolerance", "status", "wall_ms"];
        let pos: Vec<usize> = keys.iter().map(|k| js.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let back = SuiteReport::from_json(&js).unwrap();
        assert_eq!(back.to_json(), js);
        assert!(js.contains("\"alpha\": \"3/4\""));
        assert!(js.contains("\"s\": 2"));
    }

    #[test]
    fn unavailable_side_is_null() {
        let mut r = sample();
        r.lhs = Quantity::Unavailable(());
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"lhs\":null"));
        let back: IdentityCheckResult = serde_json::from_str(&js).unwrap();
        assert_eq!(back.lhs, Quantity::Unavailable(()));
    }
}
