//! Irreducible characters of S_n by the Murnaghan-Nakayama rule.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::factorial;
use crate::sn_plancherel::{partitions_of, Partition};

/// Largest `n` accepted by [`mn_character`].
pub const MAX_CHARACTER_N: u32 = 14;

type Memo = HashMap<(Vec<u32>, Vec<u32>), BigInt>;

fn memo() -> &'static Mutex<Memo> {
    static MEMO: std::sync::OnceLock<Mutex<Memo>> = std::sync::OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

// beads: strictly decreasing first-column hook lengths; cycles: remaining cycle lengths
fn mn(beads: Vec<u32>, cycles: &[u32]) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let key = (beads.clone(), cycles.to_vec());
    if let Some(v) = memo().lock().expect("character memo poisoned").get(&key) {
        return v.clone();
    }
    let mut acc = BigInt::zero();
    for (idx, &b) in beads.iter().enumerate() {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beads.clone();
        next[idx] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let v = mn(next, rest);
        if between % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    memo().lock().expect("character memo poisoned").insert(key, acc.clone());
    acc
}

fn beads(lambda: &Partition) -> Vec<u32> {
    let l = lambda.len() as u32;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i as u32)
        .collect()
}

/// `chi^lambda` at a permutation of the given cycle type.
pub fn mn_character(lambda: &Partition, cycle_type: &Partition) -> Result<BigInt> {
    if lambda.n() != cycle_type.n() {
        return Err(Error::Invalid(format!(
            "{lambda} and cycle type {cycle_type} have different sizes"
        )));
    }
    if lambda.n() > MAX_CHARACTER_N {
        return Err(out_of_range("n", lambda.n(), format!("n <= {MAX_CHARACTER_N}")));
    }
    Ok(mn(beads(lambda), cycle_type.parts()))
}

/// `dim(lambda) = n! / prod(hook lengths)`.
pub fn hook_length_dim(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.n()) / hooks
}

/// Rows indexed by `partitions_of(n)` (representations), columns by the same list (cycle types).
pub fn character_table(n: u32) -> Result<Vec<Vec<BigInt>>> {
    let ps = partitions_of(n);
    ps.iter()
        .map(|l| ps.iter().map(|c| mn_character(l, c)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use crate::sn_plancherel::{character_ratio, ConjugacyClassTag};

    #[test]
    fn identity_column_is_dimension() {
        for n in 1..=8 {
            let id = Partition::new(vec![1; n as usize]).unwrap();
            for l in partitions_of(n) {
                assert_eq!(mn_character(&l, &id).unwrap(), hook_length_dim(&l), "{l}");
            }
        }
        assert_eq!(hook_length_dim(&Partition::new(vec![3, 2]).unwrap()), BigInt::from(5));
    }

    #[test]
    fn small_table() {
        // S_3: rows (3), (2,1), (1,1,1); columns (3), (2,1), (1,1,1)
        let t = character_table(3).unwrap();
        let expect = [[1, 1, 1], [-1, 0, 2], [1, -1, 1]];
        for (row, e) in t.iter().zip(expect) {
            assert_eq!(row, &e.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let ps = partitions_of(n);
            let t = character_table(n).unwrap();
            for a in 0..ps.len() {
                for b in 0..ps.len() {
                    let s: BigInt = (0..ps.len()).map(|l| &t[l][a] * &t[l][b]).sum();
                    let expect = if a == b {
                        factorial(n) / ps[a].class_size()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn content_formula_matches() {
        for n in 4..=7 {
            for l in partitions_of(n) {
                let dim = Rational::from_integer(hook_length_dim(&l));
                for k in ConjugacyClassTag::ALL {
                    let ct = k.cycle_type(n).unwrap();
                    let mn = Rational::from_integer(mn_character(&l, &ct).unwrap()) / &dim;
                    assert_eq!(character_ratio(&l, k).unwrap(), mn);
                }
            }
        }
    }

    #[test]
    fn rejects_mismatch() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert!(mn_character(&l, &Partition::new(vec![2, 2]).unwrap()).is_err());
    }
}
