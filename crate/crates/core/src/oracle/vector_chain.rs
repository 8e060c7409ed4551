//! The step-size chain on the cube `{0,1}^n` itself: draw `i ~ b`, then flip
//! a uniformly chosen set of `i` coordinates.

use num_traits::Zero;

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, ratio, Rational};
use crate::hamming::MixingDistribution;
use crate::kernel::TransitionMatrix;

use super::FullStateChain;

pub const MAX_VECTOR_N: u32 = 14;

/// States are bitmasks `0..2^n`; the stationary law is uniform.
pub fn build_binary_vector_chain(n: u32, mixing: &MixingDistribution) -> Result<FullStateChain<u32>> {
    if n == 0 || n > MAX_VECTOR_N {
        return Err(out_of_range("n", n, format!("1..={MAX_VECTOR_N}")));
    }
    if mixing.n() != n {
        return Err(Error::Invalid(format!("mixing has length {}, expected {}", mixing.n() + 1, n + 1)));
    }
    let size = 1usize << n;
    let mut masks_by_weight: Vec<Vec<u32>> = vec![Vec::new(); n as usize + 1];
    for m in 0..size as u32 {
        masks_by_weight[m.count_ones() as usize].push(m);
    }
    let per_mask: Vec<(u32, Rational)> = mixing
        .support()
        .map(|(d, b)| (d, b / Rational::from_integer(binomial(n as i64, d as i64))))
        .collect();
    let rows = (0..size as u32)
        .map(|x| {
            per_mask
                .iter()
                .flat_map(|(d, w)| {
                    masks_by_weight[*d as usize]
                        .iter()
                        .map(move |m| ((x ^ m) as usize, w.clone()))
                })
                .collect()
        })
        .collect();
    Ok(FullStateChain {
        states: (0..size as u32).collect(),
        kernel: TransitionMatrix::from_sparse(size, rows)?,
        stationary: vec![ratio(1, size as i64); size],
    })
}

/// Projects onto Hamming weight. Fails if two states of equal weight have
/// different projected rows.
pub fn lump_by_weight(chain: &FullStateChain<u32>, n: u32) -> Result<TransitionMatrix> {
    let dim = n as usize + 1;
    let mut lumped: Vec<Option<Vec<Rational>>> = vec![None; dim];
    for (s, &x) in chain.states.iter().enumerate() {
        let mut row = vec![Rational::zero(); dim];
        for (t, p) in chain.kernel.row(s) {
            row[chain.states[*t].count_ones() as usize] += p;
        }
        let level = x.count_ones() as usize;
        match &lumped[level] {
            None => lumped[level] = Some(row),
            Some(prev) if *prev == row => {}
            Some(_) => {
                return Err(Error::Invariant(format!("weight {level} is not lumpable")));
            }
        }
    }
    TransitionMatrix::from_dense(lumped.into_iter().map(|r| r.expect("every weight occurs")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::HammingModel;

    #[test]
    fn lumps_to_level_chain() {
        for n in 1..=6u32 {
            for spec in ["1:1", "1:1/2,2:1/2", "0:1/3,1:1/3,3:1/3"] {
                let Ok(b) = MixingDistribution::parse(n, spec) else { continue };
                let chain = build_binary_vector_chain(n, &b).unwrap();
                chain.validate().unwrap();
                assert!(chain.is_reversible());
                let lumped = lump_by_weight(&chain, n).unwrap();
                let model = HammingModel::from_params(n, 2, b).unwrap();
                assert_eq!(lumped, model.transition_mixed().unwrap());
            }
        }
    }

    #[test]
    fn size_limit() {
        let b = MixingDistribution::point_mass(15, 1).unwrap();
        assert!(build_binary_vector_chain(15, &b).is_err());
    }
}
