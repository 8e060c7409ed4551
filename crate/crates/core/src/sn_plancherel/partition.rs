use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::factorial;

/// Integer partition stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Accepts trailing zeros and drops them; any other zero, or an increase, is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.is_empty() {
            return Err(Error::Invalid("partition of 0".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not nonincreasing")));
        }
        Ok(Self { parts })
    }

    /// `(n)`.
    pub fn trivial(n: u32) -> Self {
        Self { parts: vec![n] }
    }

    /// `(n-1, 1)`.
    pub fn defining(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("(n-1, 1) needs n >= 2, got {n}")));
        }
        Ok(Self { parts: vec![n - 1, 1] })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Part `i` (1-indexed), zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts[0] as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Self { parts }
    }

    /// Number of permutations with this cycle type, `n! / z`.
    pub fn class_size(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0u32;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
            }
            z *= num_traits::pow(BigInt::from(p), m as usize) * factorial(m);
        }
        factorial(self.n()) / z
    }

    /// Fixed points of a permutation of this cycle type.
    pub fn fixed_points(&self) -> u32 {
        self.parts.iter().filter(|&&p| p == 1).count() as u32
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"5,3,3,1"` or `"(5,3,3,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("bad partition '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert_eq!(Partition::new(vec![3, 1, 0]).unwrap().parts(), &[3, 1]);
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert!(Partition::new(vec![0]).is_err());
        assert_eq!("(5,3,3,1)".parse::<Partition>().unwrap().n(), 12);
        assert_eq!(Partition::new(vec![4, 2, 1]).unwrap().to_string(), "(4,2,1)");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_of(4)[0], Partition::trivial(4));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=9 {
            let total: BigInt = partitions_of(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
        assert_eq!(Partition::new(vec![2, 2]).unwrap().class_size(), BigInt::from(3));
    }

    #[test]
    fn conjugate_involution() {
        for p in partitions_of(7) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().n(), 7);
        }
    }
}
