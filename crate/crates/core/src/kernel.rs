//! Exact Markov kernels stored row by row.
//!
//! Rows keep only their nonzero entries, so the level chains (n+1 states) and
//! the full 2^n vector chain of the oracle share one type.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    dim: usize,
    // sorted by column, no explicit zeros
    rows: Vec<Vec<(usize, Rational)>>,
}

impl TransitionMatrix {
    /// Builds from a dense table. Zero entries are dropped.
    pub fn from_dense(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = entries.len();
        let mut rows = Vec::with_capacity(dim);
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            rows.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect(),
            );
        }
        Ok(Self { dim, rows })
    }

    /// Builds from per-row `(column, value)` lists. Duplicate columns are summed.
    pub fn from_sparse(dim: usize, rows: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        if rows.len() != dim {
            return Err(Error::Invalid(format!("{} rows for dimension {dim}", rows.len())));
        }
        let mut out = Vec::with_capacity(dim);
        for mut row in rows {
            if let Some((c, _)) = row.iter().find(|(c, _)| *c >= dim) {
                return Err(Error::Invalid(format!("column {c} outside dimension {dim}")));
            }
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (c, x) in row {
                match merged.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx += x,
                    _ => merged.push((c, x)),
                }
            }
            merged.retain(|(_, x)| !x.is_zero());
            out.push(merged);
        }
        Ok(Self { dim, rows: out })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    /// `sum_k w_k M_k`. All matrices must share a dimension.
    pub fn combination(dim: usize, terms: &[(Rational, &TransitionMatrix)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim];
        for (w, m) in terms {
            if m.dim != dim {
                return Err(Error::Invalid("dimension mismatch in combination".into()));
            }
            if w.is_zero() {
                continue;
            }
            for (i, row) in m.rows.iter().enumerate() {
                rows[i].extend(row.iter().map(|(j, x)| (*j, w * x)));
            }
        }
        Self::from_sparse(dim, rows)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|(_, x)| !x.is_negative())
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.is_nonnegative()
            && self
                .rows
                .iter()
                .all(|row| row.iter().fold(Rational::zero(), |a, (_, x)| a + x).is_one())
    }

    /// `pi_i M(i, j) = pi_j M(j, i)` for every pair.
    pub fn satisfies_detailed_balance(&self, pi: &[Rational]) -> bool {
        if pi.len() != self.dim {
            return false;
        }
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .all(|(j, x)| &pi[i] * x == &pi[*j] * self.get(*j, i))
        })
    }

    /// `M v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (j, x)| acc + x * &v[*j])
            })
            .collect()
    }

    /// `v M`.
    pub fn apply_left(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            for (j, x) in row {
                out[*j] += &v[i] * x;
            }
        }
        out
    }
}
