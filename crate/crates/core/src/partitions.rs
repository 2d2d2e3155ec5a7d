//! Integer partitions in nondecreasing canonical form and the statistics the
//! sum formulas weight by.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::factorial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

/// `(length, product of parts, |Aut|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub length: usize,
    pub product: BigInt,
    pub aut: BigInt,
}

impl Partition {
    /// Sorts the parts; rejects empty lists and zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::ParsePartition(format!("{parts:?}")));
        }
        parts.sort_unstable();
        Ok(Self(parts))
    }

    /// `(1^d)`.
    pub fn ones(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self(vec![1; d as usize]))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &p| acc * p)
    }

    /// `m! = prod over distinct values of (multiplicity)!`.
    pub fn aut(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let j = i + self.0[i..].iter().take_while(|&&p| p == self.0[i]).count();
            acc *= factorial((j - i) as u32);
            i = j;
        }
        acc
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            length: self.len(),
            product: self.product(),
            aut: self.aut(),
        }
    }

    /// Number of orderings of the parts: `l! / m!`.
    pub fn ordered_count(&self) -> BigInt {
        factorial(self.len() as u32) / self.aut()
    }
}

/// Every partition of `d`, each once, in lexicographic order of the
/// nondecreasing part lists.
pub fn partitions_of(d: u32) -> Result<Vec<Partition>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(d, 1, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in min..=rest {
        // a lone remaining part is always allowed; otherwise leave room for >= p more
        if p != rest && rest - p < p {
            continue;
        }
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(1,1,2)` in any part order and the shorthand `(1^d)`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParsePartition(s.to_string());
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        if let Some(d) = inner.strip_prefix("1^") {
            let d: u32 = d.parse().map_err(|_| err())?;
            return Partition::ones(d).map_err(|_| err());
        }
        let parts = inner
            .split(',')
            .map(|p| p.parse::<u32>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| err())
    }
}
