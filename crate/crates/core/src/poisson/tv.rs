//! Total variation between integer-valued laws: `(1/2) sum_k |a_k - b_k|`.

use statrs::distribution::{Discrete, Poisson};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{to_real, Rational};

use super::binomial::binomial_pmf;
use super::negbin::negbin_pmf;

/// Probabilities on `0..len` plus the mass left beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPmf {
    pub probs: Vec<f64>,
    pub tail: f64,
}

impl TruncatedPmf {
    /// A finitely supported law; its tail is 0.
    pub fn exact(probs: &[Rational]) -> Self {
        Self {
            probs: probs.iter().map(to_real).collect(),
            tail: 0.0,
        }
    }

    pub fn binomial(n: u32, p: &Rational) -> Self {
        Self::exact(&binomial_pmf(n, p))
    }

    /// Poisson(lambda) cut where the remaining mass drops below `tol`.
    pub fn poisson(lambda: f64, tol: f64) -> Result<Self> {
        let law = Poisson::new(lambda).map_err(|e| Error::Invalid(format!("Poisson({lambda}): {e}")))?;
        Ok(Self::accumulate(|x| law.pmf(x), tol))
    }

    /// Negative binomial `(r, p)` cut where the remaining mass drops below `tol`.
    pub fn negbin(r: u32, p: &Rational, tol: f64) -> Self {
        Self::accumulate(|x| to_real(&negbin_pmf(r, p, x as u32)), tol)
    }

    // Stops once the remaining mass is below `tol`, or once terms past the
    // mean are negligible: `1 - mass` cannot get below rounding error in f64.
    fn accumulate(pmf: impl Fn(u64) -> f64, tol: f64) -> Self {
        let mut probs = Vec::new();
        let mut mass = 0.0;
        let mut mean = 0.0;
        let mut x = 0u64;
        while 1.0 - mass >= tol && x < 1_000_000 {
            let px = pmf(x);
            probs.push(px);
            mass += px;
            mean += x as f64 * px;
            x += 1;
            if x as f64 > 2.0 * mean + 10.0 && px < tol * 1e-6 {
                break;
            }
        }
        Self {
            probs,
            tail: (1.0 - mass).max(0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvEstimate {
    /// Half-sum over the common truncated support.
    pub value: f64,
    /// Largest change the neglected tails could make.
    pub slack: f64,
}

/// Fails when either tail exceeds `tol`.
pub fn tv_distance(a: &TruncatedPmf, b: &TruncatedPmf, tol: f64) -> Result<TvEstimate> {
    for (name, t) in [("tail of first law", a.tail), ("tail of second law", b.tail)] {
        if t > tol {
            return Err(out_of_range(name, t, format!("<= {tol}")));
        }
    }
    let len = a.probs.len().max(b.probs.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let value = 0.5 * (0..len).map(|i| (get(&a.probs, i) - get(&b.probs, i)).abs()).sum::<f64>();
    Ok(TvEstimate {
        value,
        slack: 0.5 * (a.tail + b.tail),
    })
}
