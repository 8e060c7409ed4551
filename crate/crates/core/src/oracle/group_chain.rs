//! The chain `L_tau` on irreducible representations of S_n, built from the
//! full character table: `L_tau(lambda, rho) = m dim(rho) / (dim(lambda) dim(tau))`
//! where `m` is the multiplicity of `rho` in `lambda (x) tau`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{factorial, Rational};
use crate::kernel::TransitionMatrix;
use crate::sn_plancherel::{partitions_of, Partition};

use super::characters::{character_table, hook_length_dim};
use super::FullStateChain;

pub const MAX_GROUP_N: u32 = 8;

fn check_n(n: u32) -> Result<()> {
    if !(2..=MAX_GROUP_N).contains(&n) {
        return Err(out_of_range("n", n, format!("2..={MAX_GROUP_N}")));
    }
    Ok(())
}

/// Plancherel law `dim(lambda)^2 / n!` in the order of [`partitions_of`].
pub fn plancherel(n: u32) -> Vec<Rational> {
    let nf = Rational::from_integer(factorial(n));
    partitions_of(n)
        .iter()
        .map(|l| {
            let d = hook_length_dim(l);
            Rational::from_integer(&d * &d) / &nf
        })
        .collect()
}

pub fn build_group_chain(tau: &Partition, n: u32) -> Result<FullStateChain<Partition>> {
    check_n(n)?;
    if tau.n() != n {
        return Err(Error::Invalid(format!("{tau} is not a partition of {n}")));
    }
    let states = partitions_of(n);
    let table = character_table(n)?;
    let t = states
        .iter()
        .position(|p| p == tau)
        .ok_or_else(|| Error::Invariant(format!("{tau} missing from partition list")))?;
    // columns follow the same partition order as rows
    let sizes: Vec<BigInt> = states.iter().map(Partition::class_size).collect();
    let dims: Vec<BigInt> = states.iter().map(hook_length_dim).collect();
    let nf = factorial(n);
    let weighted: Vec<BigInt> = (0..states.len()).map(|c| &sizes[c] * &table[t][c]).collect();
    let mut rows = Vec::with_capacity(states.len());
    for (l, row_l) in table.iter().enumerate() {
        let mut row = Vec::new();
        for (r, row_r) in table.iter().enumerate() {
            let m: BigInt = (0..states.len()).map(|c| &weighted[c] * &row_l[c] * &row_r[c]).sum();
            if m.is_zero() {
                continue;
            }
            let denom = &nf * &dims[l] * &dims[t];
            row.push((r, Rational::new(m * &dims[r], denom)));
        }
        rows.push(row);
    }
    Ok(FullStateChain {
        kernel: TransitionMatrix::from_sparse(states.len(), rows)?,
        stationary: plancherel(n),
        states,
    })
}

fn removable(l: &Partition) -> Vec<Partition> {
    (0..l.len())
        .filter(|&i| l.parts()[i] > l.part(i + 2))
        .filter_map(|i| {
            let mut p = l.parts().to_vec();
            p[i] -= 1;
            Partition::new(p).ok()
        })
        .collect()
}

fn addable(l: &Partition) -> Vec<Partition> {
    (0..=l.len())
        .filter(|&i| i == 0 || l.parts()[i - 1] > l.part(i + 1))
        .filter_map(|i| {
            let mut p = l.parts().to_vec();
            if i == p.len() {
                p.push(1);
            } else {
                p[i] += 1;
            }
            Partition::new(p).ok()
        })
        .collect()
}

/// `L_(n-1,1)` from the branching rule: `lambda (x) (n-1,1) = Ind Res lambda - lambda`,
/// where `Ind Res` removes one corner and adds one box.
pub fn defining_rep_kernel(n: u32) -> Result<TransitionMatrix> {
    check_n(n)?;
    let states = partitions_of(n);
    let index: BTreeMap<&Partition, usize> = states.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let dims: Vec<BigInt> = states.iter().map(hook_length_dim).collect();
    let denom_tau = BigInt::from(n - 1);
    let mut rows = Vec::with_capacity(states.len());
    for (li, l) in states.iter().enumerate() {
        let mut mult: BTreeMap<usize, i64> = BTreeMap::new();
        for smaller in removable(l) {
            for bigger in addable(&smaller) {
                *mult.entry(index[&bigger]).or_default() += 1;
            }
        }
        *mult.entry(li).or_default() -= 1;
        let row = mult
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|(r, m)| {
                (r, Rational::new(BigInt::from(m) * &dims[r], &dims[li] * &denom_tau))
            })
            .collect();
        rows.push(row);
    }
    TransitionMatrix::from_sparse(states.len(), rows)
}

/// `chi^lambda(transposition) / dim(lambda)` per state, read from the table.
pub fn transposition_ratios(n: u32) -> Result<Vec<Rational>> {
    check_n(n)?;
    let states = partitions_of(n);
    let table = character_table(n)?;
    let mut cycle = vec![2];
    cycle.extend(std::iter::repeat(1).take(n as usize - 2));
    let col = states
        .iter()
        .position(|p| p.parts() == cycle.as_slice())
        .ok_or_else(|| Error::Invariant("transposition class missing".into()))?;
    Ok(states
        .iter()
        .zip(&table)
        .map(|(l, row)| Rational::new(row[col].clone(), hook_length_dim(l)))
        .collect())
}

/// `1 / C(n, 2)`, the stationary variance of the transposition ratio.
pub fn transposition_ratio_variance(n: u32) -> Rational {
    Rational::one() / Rational::from_integer(BigInt::from(n) * BigInt::from(n - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::moments::exact_conditional_moments;
    use crate::sn_plancherel::{stein_bound_group, GroupBoundInput};

    #[test]
    fn chains_are_reversible() {
        for n in 2..=6u32 {
            for tau in partitions_of(n) {
                let chain = build_group_chain(&tau, n).unwrap();
                chain.validate().unwrap();
                assert!(chain.kernel.is_nonnegative());
                assert!(chain.is_reversible(), "{tau}");
            }
        }
    }

    #[test]
    fn branching_matches_characters() {
        for n in 2..=MAX_GROUP_N {
            let chain = build_group_chain(&Partition::defining(n).unwrap(), n).unwrap();
            assert_eq!(defining_rep_kernel(n).unwrap(), chain.kernel, "n = {n}");
        }
    }

    #[test]
    fn moments_match_closed_form() {
        for n in 4..=7u32 {
            let input = GroupBoundInput::symmetric_transpositions(n).unwrap();
            let x = transposition_ratios(n).unwrap();
            let s2 = transposition_ratio_variance(n);
            for tau in partitions_of(n).into_iter().filter(|t| !t.is_trivial()) {
                let Ok(report) = stein_bound_group(&input, &tau) else { continue };
                let chain = build_group_chain(&tau, n).unwrap();
                let m = exact_conditional_moments(&chain, &x, &s2).unwrap();
                assert_eq!(m.a, report.a, "{tau}");
                assert_eq!(m.variance_radicand().unwrap(), report.variance_sq, "{tau}");
                assert_eq!(m.moment_radicand().unwrap(), report.moment_radicand, "{tau}");
                assert!(m.var_cond_sq <= m.var_cond_sq_state);
            }
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(build_group_chain(&Partition::defining(9).unwrap(), 9).is_err());
    }
}
