use crate::error::{Error, Result};
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `(k_1, ..., k_n)` innermost first; `strict` selects `<` over `≤` and
/// `sign` is the `z` carried by the outermost variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    parts: Vec<u32>,
    strict: bool,
    sign: Sign,
}

impl MultiIndex {
    pub fn new(parts: Vec<u32>, strict: bool, sign: Sign) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Inadmissible("empty index".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Inadmissible(format!("zero exponent in {parts:?}")));
        }
        if *parts.last().unwrap() < 2 {
            return Err(Error::Inadmissible(format!(
                "last exponent of {parts:?} must be at least 2"
            )));
        }
        Ok(Self { parts, strict, sign })
    }

    pub fn mzv(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), true, Sign::Plus)
    }

    pub fn star(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), false, Sign::Plus)
    }

    pub fn alt(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), true, Sign::Minus)
    }

    pub fn alt_star(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec(), false, Sign::Minus)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    fn prefix(&self) -> &'static str {
        match (self.strict, self.sign) {
            (true, Sign::Plus) => "z",
            (false, Sign::Plus) => "zs",
            (true, Sign::Minus) => "za",
            (false, Sign::Minus) => "zsa",
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}({})", self.prefix(), body.join(","))
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_index(s)
    }
}

fn parse_uint(s: &str, what: &str) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected {what}, found `{s}`")));
    }
    s.parse().map_err(|_| Error::Parse(format!("{what} `{s}` out of range")))
}

/// Parse `z(..)`, `zs(..)`, `za(..)`, `zsa(..)`; entries are integers or `{a}^n`.
pub fn parse_index(text: &str) -> Result<MultiIndex> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let open = t.find('(').ok_or_else(|| Error::Parse(format!("missing `(` in `{text}`")))?;
    let (strict, sign) = match &t[..open] {
        "z" => (true, Sign::Plus),
        "zs" => (false, Sign::Plus),
        "za" => (true, Sign::Minus),
        "zsa" => (false, Sign::Minus),
        p => return Err(Error::Parse(format!("unknown prefix `{p}`"))),
    };
    let body = t[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("missing closing `)` in `{text}`")))?;
    if body.is_empty() {
        return Err(Error::Parse("empty index body".into()));
    }
    let mut parts = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let tail = if rest.starts_with('{') {
            let close = rest
                .find('}')
                .ok_or_else(|| Error::Parse(format!("unclosed `{{` in `{text}`")))?;
            let after = &rest[close + 1..];
            let after = after
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected `^` after `}}` in `{text}`")))?;
            let end = after.find(',').unwrap_or(after.len());
            let a = parse_uint(&rest[1..close], "repeated entry")?;
            let n = parse_uint(&after[..end], "repetition count")?;
            parts.extend(std::iter::repeat(a).take(n as usize));
            &after[end..]
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            parts.push(parse_uint(&rest[..end], "integer entry")?);
            &rest[end..]
        };
        rest = match tail.strip_prefix(',') {
            Some("") => return Err(Error::Parse("trailing comma".into())),
            Some(r) => r,
            None => tail,
        };
    }
    MultiIndex::new(parts, strict, sign)
}

/// Word in `x`/`y` for an index read outermost first: each part `k`
/// contributes `x^{k-1} y`.
fn to_word(outer_first: &[u32]) -> Vec<bool> {
    let mut w = Vec::new();
    for &k in outer_first {
        w.extend(std::iter::repeat(true).take(k as usize - 1));
        w.push(false);
    }
    w
}

fn from_word(w: &[bool]) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut run = 1;
    for &is_x in w {
        if is_x {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts
}

/// Dual of an admissible strict index (reverse the word, swap the letters).
pub fn dual_index(k: &MultiIndex) -> Result<MultiIndex> {
    if !k.is_strict() || k.sign() != Sign::Plus {
        return Err(Error::Domain(format!("duality is defined for plain MZV indices, got {k}")));
    }
    let outer_first: Vec<u32> = k.parts().iter().rev().copied().collect();
    let w: Vec<bool> = to_word(&outer_first).into_iter().rev().map(|b| !b).collect();
    let mut parts = from_word(&w);
    parts.reverse();
    MultiIndex::mzv(&parts)
}

/// Index for the shifted sum `Σ_{0≤m_1<...<m_p} Π (m_i+α)^{-k_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzIndex {
    index: MultiIndex,
    alpha: Rational,
}

impl HurwitzIndex {
    pub fn new(parts: &[u32], alpha: Rational) -> Result<Self> {
        if alpha <= 0 {
            return Err(Error::Domain(format!("shift must be positive, got {alpha}")));
        }
        Ok(Self { index: MultiIndex::mzv(parts)?, alpha })
    }

    pub fn parts(&self) -> &[u32] {
        self.index.parts()
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn dual(&self) -> Result<Self> {
        Ok(Self { index: dual_index(&self.index)?, alpha: self.alpha.clone() })
    }
}
