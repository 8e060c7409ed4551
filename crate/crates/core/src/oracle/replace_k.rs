//! Replace-k chains on explicit configurations. Positivity of
//! `lambda - c P(W' = W + 1 | X)` and `W - c P(W' = W - 1 | X)` is what
//! lets the Poisson bound drop its absolute values.

use num_traits::{One, Signed, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, int, powi, ratio, Rational};
use crate::kernel::TransitionMatrix;
use crate::poisson::negbin::{lambda, negbin_pmf};
use crate::poisson::{c_binomial, c_negbin, cond_prob_binomial, Direction};

use super::FullStateChain;

pub const MAX_BINOMIAL_N: u32 = 12;

/// Smallest slack over all enumerated configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivitySummary {
    pub configurations: u64,
    pub min_up_slack: Rational,
    pub min_down_slack: Rational,
}

impl PositivitySummary {
    pub fn holds(&self) -> bool {
        !self.min_up_slack.is_negative() && !self.min_down_slack.is_negative()
    }
}

fn check_binomial(n: u32, k: u32) -> Result<()> {
    if !(2..=MAX_BINOMIAL_N).contains(&n) {
        return Err(out_of_range("n", n, format!("2..={MAX_BINOMIAL_N}")));
    }
    if k == 0 || k > n {
        return Err(out_of_range("k", k, format!("1..={n}")));
    }
    Ok(())
}

fn masks_of_weight(n: u32, k: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() == k).collect()
}

// law of the number of ones among k fresh Bernoulli(1/n) bits, by enumerating the bits
fn fresh_counts(n: u32, k: u32) -> Vec<Rational> {
    let p = ratio(1, n as i64);
    let q = Rational::one() - &p;
    let mut out = vec![Rational::zero(); k as usize + 1];
    for f in 0..1u32 << k {
        let ones = f.count_ones() as i64;
        out[ones as usize] += powi(&p, ones) * powi(&q, k as i64 - ones);
    }
    out
}

/// `P(W' = W +- 1 | X = x)` by enumerating the chosen coordinates.
pub fn binomial_config_probs(n: u32, k: u32, x: u32) -> Result<(Rational, Rational)> {
    check_binomial(n, k)?;
    let fresh = fresh_counts(n, k);
    let subsets = masks_of_weight(n, k);
    let mut up = Rational::zero();
    let mut down = Rational::zero();
    for s in &subsets {
        let held = (x & s).count_ones() as usize;
        if held < k as usize {
            up += &fresh[held + 1];
        }
        if held > 0 {
            down += &fresh[held - 1];
        }
    }
    let c = int(subsets.len() as i64);
    Ok((up / &c, down / c))
}

/// Checks all `2^n` configurations with `c = c_k`, and that each
/// configuration's probabilities depend only on its weight.
pub fn binomial_positivity(n: u32, k: u32) -> Result<PositivitySummary> {
    check_binomial(n, k)?;
    let c = c_binomial(n, k)?;
    let mut min_up: Option<Rational> = None;
    let mut min_down: Option<Rational> = None;
    for x in 0..1u32 << n {
        let w = x.count_ones();
        let (up, down) = binomial_config_probs(n, k, x)?;
        if up != cond_prob_binomial(n, k, Direction::Up, w)?
            || down != cond_prob_binomial(n, k, Direction::Down, w)?
        {
            return Err(Error::Invariant(format!("configuration {x:b} disagrees with weight {w}")));
        }
        let su = Rational::one() - &c * up;
        let sd = int(w as i64) - &c * down;
        min_up = Some(min_up.map_or(su.clone(), |m| m.min(su)));
        min_down = Some(min_down.map_or(sd.clone(), |m| m.min(sd)));
    }
    Ok(PositivitySummary {
        configurations: 1u64 << n,
        min_up_slack: min_up.expect("at least one configuration"),
        min_down_slack: min_down.expect("at least one configuration"),
    })
}

/// The replace-k chain on `{0,1}^n` with Bernoulli(1/n) product law.
pub fn binomial_replace_k_chain(n: u32, k: u32) -> Result<FullStateChain<u32>> {
    check_binomial(n, k)?;
    let p = ratio(1, n as i64);
    let q = Rational::one() - &p;
    let subsets = masks_of_weight(n, k);
    let per_subset = Rational::one() / int(subsets.len() as i64);
    let fresh_weight: Vec<Rational> = (0..=k as i64)
        .map(|ones| &per_subset * powi(&p, ones) * powi(&q, k as i64 - ones))
        .collect();
    let size = 1usize << n;
    let rows = (0..size as u32)
        .map(|x| {
            let mut row = Vec::new();
            for s in &subsets {
                let kept = x & !s;
                // walk every sub-mask f of s
                let mut f = *s;
                loop {
                    row.push(((kept | f) as usize, fresh_weight[f.count_ones() as usize].clone()));
                    if f == 0 {
                        break;
                    }
                    f = (f - 1) & s;
                }
            }
            row
        })
        .collect();
    let stationary = (0..size as u32)
        .map(|x| {
            let ones = x.count_ones() as i64;
            powi(&p, ones) * powi(&q, n as i64 - ones)
        })
        .collect();
    Ok(FullStateChain {
        states: (0..size as u32).collect(),
        kernel: TransitionMatrix::from_sparse(size, rows)?,
        stationary,
    })
}

fn for_each_config(r: usize, m: u32, mut f: impl FnMut(&[u32])) {
    let mut cfg = vec![0u32; r];
    loop {
        f(&cfg);
        let mut i = 0;
        while i < r && cfg[i] == m {
            cfg[i] = 0;
            i += 1;
        }
        if i == r {
            return;
        }
        cfg[i] += 1;
    }
}

fn cond_probs_negbin_enumerated(r: u32, p: &Rational, k: u32, cfg: &[u32]) -> (Rational, Rational) {
    // fresh sum of k geometrics is NB(k, p); average over k-subsets of coordinates
    let masks: Vec<u32> = (0..1u32 << r).filter(|s| s.count_ones() == k).collect();
    let mut up = Rational::zero();
    let mut down = Rational::zero();
    for s in &masks {
        let held: u32 = (0..r).filter(|i| s >> i & 1 == 1).map(|i| cfg[i as usize]).sum();
        up += negbin_pmf(k, p, held + 1);
        if held > 0 {
            down += negbin_pmf(k, p, held - 1);
        }
    }
    let c = int(masks.len() as i64);
    (up / &c, down / c)
}

/// Checks every configuration with coordinates in `0..=max_coord`.
pub fn negbin_positivity(r: u32, p: &Rational, k: u32, max_coord: u32) -> Result<PositivitySummary> {
    if r == 0 || r > 8 {
        return Err(out_of_range("r", r, "1..=8"));
    }
    let lam = lambda(r, p);
    let c = c_negbin(r, p, k, &lam)?;
    let mut min_up: Option<Rational> = None;
    let mut min_down: Option<Rational> = None;
    let mut count = 0u64;
    for_each_config(r as usize, max_coord, |cfg| {
        count += 1;
        let (up, down) = cond_probs_negbin_enumerated(r, p, k, cfg);
        let w: u32 = cfg.iter().sum();
        let su = &lam - &c * up;
        let sd = int(w as i64) - &c * down;
        min_up = Some(min_up.take().map_or(su.clone(), |m| m.min(su)));
        min_down = Some(min_down.take().map_or(sd.clone(), |m| m.min(sd)));
    });
    Ok(PositivitySummary {
        configurations: count,
        min_up_slack: min_up.expect("at least one configuration"),
        min_down_slack: min_down.expect("at least one configuration"),
    })
}

/// `E[c_k P(W' = W + 1 | X)]` summed over configurations with coordinates
/// up to `max_coord`, with the probability mass left out.
pub fn negbin_expected_truncated(r: u32, p: &Rational, k: u32, max_coord: u32) -> Result<(Rational, Rational)> {
    if r == 0 || r > 6 {
        return Err(out_of_range("r", r, "1..=6"));
    }
    let lam = lambda(r, p);
    let c = c_negbin(r, p, k, &lam)?;
    let geo: Vec<Rational> = (0..=max_coord).map(|x| negbin_pmf(1, p, x)).collect();
    let mut acc = Rational::zero();
    let mut mass = Rational::zero();
    for_each_config(r as usize, max_coord, |cfg| {
        let w: Rational = cfg.iter().map(|&x| &geo[x as usize]).product();
        let (up, _) = cond_probs_negbin_enumerated(r, p, k, cfg);
        acc += &w * up;
        mass += w;
    });
    Ok((c * acc, Rational::one() - mass))
}

/// `C(r, k)`, the number of coordinate subsets.
pub fn subset_count(r: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(r as i64, k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::expected_scaled_prob_negbin;
    use crate::poisson::negbin::regime;

    #[test]
    fn binomial_positive_and_tight() {
        for n in 2..=7u32 {
            for k in 1..=n {
                let s = binomial_positivity(n, k).unwrap();
                assert!(s.holds(), "n={n} k={k} {s:?}");
                assert_eq!(s.min_up_slack, int(0), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn binomial_chain_reversible() {
        for n in 2..=6u32 {
            for k in 1..=n {
                let chain = binomial_replace_k_chain(n, k).unwrap();
                chain.validate().unwrap();
                assert!(chain.is_reversible(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn negbin_positive_in_covered_regime() {
        let p = ratio(4, 5);
        for k in 1..=4u32 {
            if regime(4, &p, k).is_none() {
                continue;
            }
            let s = negbin_positivity(4, &p, k, 6).unwrap();
            assert!(s.holds(), "k={k} {s:?}");
            assert_eq!(s.min_down_slack, int(0), "k={k}");
        }
    }

    #[test]
    fn negbin_truncated_expectation_converges() {
        let p = ratio(4, 5);
        for k in 1..=2u32 {
            let exact = expected_scaled_prob_negbin(3, &p, k, Direction::Up).unwrap();
            let (approx, missing) = negbin_expected_truncated(3, &p, k, 10).unwrap();
            assert!(approx <= exact);
            let c = c_negbin(3, &p, k, &lambda(3, &p)).unwrap();
            assert!(&exact - &approx <= c * missing);
        }
    }
}
