use crate::error::{domain, Result};

/// A partition of `k` in multiplicity form `(k_1, …, k_s)`: `k_j` parts of
/// size `j`, with `k_s > 0` and `Σ j·k_j = k`. The empty partition has weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    mults: Vec<u32>,
}

impl Partition {
    pub fn new(mults: Vec<u32>) -> Result<Self> {
        if mults.last() == Some(&0) {
            return domain("the last multiplicity of a partition must be positive");
        }
        Ok(Self { mults })
    }

    /// From a list of part sizes, in any order.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        let s = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut mults = vec![0; s];
        for &p in parts {
            mults[p as usize - 1] += 1;
        }
        Ok(Self { mults })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    pub fn weight(&self) -> u32 {
        self.mults
            .iter()
            .enumerate()
            .map(|(j, &k)| (j as u32 + 1) * k)
            .sum()
    }

    pub fn num_parts(&self) -> u32 {
        self.mults.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        self.mults.len()
    }
}

/// All partitions of `k`, in reverse lexicographic order of their part lists
/// (so `(k)` comes first and `(1, …, 1)` last).
pub fn partitions(k: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_parts(parts).expect("parts are positive"));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            parts.push(p);
            go(rest - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}
