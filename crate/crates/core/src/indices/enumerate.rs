use crate::error::{Error, Result};

/// Enumerations beyond this size are refused.
pub const MAX_ENUM_SIZE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    pub parts: Vec<u32>,
    pub total: u32,
}

/// Weak compositions of `total` into `parts` entries, in lexicographic order.
pub struct Compositions {
    cur: Option<Vec<u32>>,
    total: u32,
}

pub fn compositions(total: u32, parts: usize) -> Compositions {
    let cur = if parts == 0 {
        (total == 0).then(Vec::new)
    } else {
        let mut v = vec![0; parts];
        v[parts - 1] = total;
        Some(v)
    };
    Compositions { cur, total }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let out = self.cur.take()?;
        let n = out.len();
        let mut nxt = out.clone();
        let mut suffix = 0;
        for i in (0..n.saturating_sub(1)).rev() {
            suffix += nxt[i + 1];
            if suffix > 0 {
                nxt[i] += 1;
                for t in nxt.iter_mut().skip(i + 1) {
                    *t = 0;
                }
                nxt[n - 1] = suffix - 1;
                self.cur = Some(nxt);
                break;
            }
        }
        Some(Composition { parts: out, total: self.total })
    }
}

/// Blocks are sorted and hold elements of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

/// Set partitions of `{1..k}` via restricted growth strings.
pub struct SetPartitions {
    rgs: Vec<usize>,
    done: bool,
}

pub fn set_partitions(k: usize) -> Result<SetPartitions> {
    if k > MAX_ENUM_SIZE {
        return Err(Error::SizeCap(format!("set partitions of {k} > {MAX_ENUM_SIZE} elements")));
    }
    Ok(SetPartitions { rgs: vec![0; k], done: false })
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let k = self.rgs.len();
        let nblocks = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        // advance: a[i] may rise to 1 + max(a[0..i])
        self.done = true;
        for i in (1..k).rev() {
            let cap = self.rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if self.rgs[i] < cap {
                self.rgs[i] += 1;
                for t in self.rgs.iter_mut().skip(i + 1) {
                    *t = 0;
                }
                self.done = false;
                break;
            }
        }
        Some(SetPartition { blocks })
    }
}

/// Distinct arrangements of a multiset, each paired with the number of
/// permutations of the positions that produce it.
pub struct MultisetPermutations<T> {
    cur: Option<Vec<T>>,
    multiplicity: u64,
}

pub fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Result<MultisetPermutations<T>> {
    if items.len() > MAX_ENUM_SIZE {
        return Err(Error::SizeCap(format!(
            "permutations of {} > {MAX_ENUM_SIZE} items",
            items.len()
        )));
    }
    let mut v = items.to_vec();
    v.sort();
    let mut mult = 1u64;
    let mut run = 0u64;
    for i in 0..v.len() {
        run = if i > 0 && v[i] == v[i - 1] { run + 1 } else { 1 };
        mult *= run;
    }
    Ok(MultisetPermutations { cur: Some(v), multiplicity: mult })
}

impl<T: Ord + Clone> Iterator for MultisetPermutations<T> {
    type Item = (Vec<T>, u64);

    fn next(&mut self) -> Option<(Vec<T>, u64)> {
        let out = self.cur.take()?;
        let mut v = out.clone();
        let n = v.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
                v.swap(i, j);
                v[i + 1..].reverse();
                self.cur = Some(v);
            }
        }
        Some((out, self.multiplicity))
    }
}
