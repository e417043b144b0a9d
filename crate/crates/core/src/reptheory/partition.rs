use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use super::RepError;

/// An integer partition, parts non-increasing and positive.
///
/// Ordered by weight, then reverse-lexicographically, so `(3) < (2,1) < (1,1,1)`.
/// Serialized as its display form, `"(2,1)"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, RepError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(RepError::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let mut out = Vec::new();
        for i in 1..=self.first() {
            out.push(self.0.iter().filter(|&&p| p >= i).count() as u32);
        }
        Self(out)
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let c = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                out.push(row - j as u32 + c.0[j] - i as u32 - 1);
            }
        }
        out
    }

    /// `z_μ = Π i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type `μ`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
                z *= BigInt::from(part) * BigInt::from(m);
            }
        }
        z
    }

    /// Cycle type of a permutation in one-line notation.
    pub fn cycle_type(perm: &[usize]) -> Self {
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            parts.push(len);
        }
        Self::from_unsorted(parts)
    }

    /// Canonical permutation of this cycle type: cycles on consecutive points, longest first,
    /// so the smallest points are the moved ones.
    pub fn representative(&self) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.weight() as usize);
        let mut start = 0;
        for &p in &self.0 {
            let p = p as usize;
            for i in 0..p {
                perm.push(start + (i + 1) % p);
            }
            start += p;
        }
        perm
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Partition {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, RepError> {
        let bad = || RepError::InvalidPartition(Vec::new());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = RepError;

    fn try_from(s: String) -> Result<Self, RepError> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> Self {
        p.to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `(n - |λ̄|, λ̄₁, λ̄₂, ...)`.
pub fn pad(bar: &Partition, n: u32) -> Result<Partition, RepError> {
    let w = bar.weight();
    if n < w || n - w < bar.first() {
        return Err(RepError::PaddingInvalid {
            partition: bar.clone(),
            n,
        });
    }
    let mut parts = Vec::with_capacity(bar.len() + 1);
    if n > w {
        parts.push(n - w);
    }
    parts.extend_from_slice(bar.parts());
    Ok(Partition(parts))
}

/// Drops the first row.
pub fn unpad(lambda: &Partition) -> Partition {
    Partition(lambda.0.iter().skip(1).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions(8).len(), 22);
        let mut sorted = partitions(6);
        sorted.sort();
        assert_eq!(sorted, partitions(6));
    }

    #[test]
    fn padding() {
        assert_eq!(pad(&Partition::empty(), 5).unwrap(), p(&[5]));
        assert_eq!(pad(&p(&[1]), 4).unwrap(), p(&[3, 1]));
        assert_eq!(pad(&p(&[2, 1]), 7).unwrap(), p(&[4, 2, 1]));
        assert!(matches!(pad(&p(&[2, 1]), 4), Err(RepError::PaddingInvalid { .. })));
        assert_eq!(unpad(&pad(&p(&[2, 1]), 7).unwrap()), p(&[2, 1]));
        assert_eq!(pad(&Partition::empty(), 0).unwrap(), Partition::empty());
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Partition::cycle_type(&[1, 0, 2]), p(&[2, 1]));
        for mu in partitions(6) {
            assert_eq!(Partition::cycle_type(&mu.representative()), mu);
        }
        assert_eq!(p(&[2, 1]).representative(), vec![1, 0, 2]);
        assert_eq!(p(&[1, 1, 1]).centralizer_order(), BigInt::from(6));
        assert_eq!(p(&[2, 2]).centralizer_order(), BigInt::from(8));
    }

    #[test]
    fn text_round_trip() {
        for lambda in partitions(5).into_iter().chain([Partition::empty()]) {
            assert_eq!(lambda.to_string().parse::<Partition>().unwrap(), lambda);
        }
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("2,1".parse::<Partition>().is_err());
    }

    #[test]
    fn hooks_and_conjugate() {
        assert_eq!(p(&[2, 1]).hooks(), vec![3, 1, 1]);
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
