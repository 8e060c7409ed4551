use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

use super::FullStateChain;

/// Moments of `W' - W` for `W = (X - mu) / sigma`, read off a full kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalMoments {
    /// From `E(W' | state) = (1 - a) W`.
    pub a: Rational,
    /// `Var(E[(W'-W)^2 | W])`.
    pub var_cond_sq: Rational,
    /// `Var(E[(W'-W)^2 | state])`; equals `var_cond_sq` when `X` is injective.
    pub var_cond_sq_state: Rational,
    /// `E(W'-W)^4`.
    pub fourth: Rational,
}

impl ConditionalMoments {
    /// `V = var / a^2`, using the state conditioning.
    pub fn variance_radicand(&self) -> Option<Rational> {
        (!self.a.is_zero()).then(|| &self.var_cond_sq_state / (&self.a * &self.a))
    }

    /// `R = E(W'-W)^4 / a`.
    pub fn moment_radicand(&self) -> Option<Rational> {
        (!self.a.is_zero()).then(|| &self.fourth / &self.a)
    }
}

/// `x` gives the raw statistic per state and `sigma_sq` its variance under
/// the stationary law. Fails if `E(X' | state)` is not affine in `X`.
pub fn exact_conditional_moments<S>(
    chain: &FullStateChain<S>,
    x: &[Rational],
    sigma_sq: &Rational,
) -> Result<ConditionalMoments> {
    let pi = &chain.stationary;
    if x.len() != pi.len() {
        return Err(Error::Invalid("statistic length differs from state count".into()));
    }
    let mu: Rational = pi.iter().zip(x).map(|(p, v)| p * v).sum();
    let mut slope: Option<Rational> = None;
    let mut g = Vec::with_capacity(x.len());
    let mut fourth = Rational::zero();
    for (s, xs) in x.iter().enumerate() {
        let mut m1 = Rational::zero();
        let mut m2 = Rational::zero();
        let mut m4 = Rational::zero();
        for (t, p) in chain.kernel.row(s) {
            let d = &x[*t] - xs;
            m1 += p * &x[*t];
            let d2 = &d * &d;
            m2 += p * &d2;
            m4 += p * &d2 * &d2;
        }
        let dev = xs - &mu;
        let moved = m1 - &mu;
        if dev.is_zero() {
            if !moved.is_zero() {
                return Err(Error::Invariant(format!("E(X'|X) is not linear at state {s}")));
            }
        } else {
            let r = moved / &dev;
            match &slope {
                None => slope = Some(r),
                Some(prev) if *prev == r => {}
                Some(prev) => {
                    return Err(Error::Invariant(format!(
                        "E(X'|X) slope {r} at state {s} differs from {prev}"
                    )));
                }
            }
        }
        fourth += &pi[s] * m4;
        g.push(m2);
    }
    let slope = slope.ok_or_else(|| Error::Invalid("statistic is constant".into()))?;
    let mean_g: Rational = pi.iter().zip(&g).map(|(p, v)| p * v).sum();
    let var_state: Rational = pi.iter().zip(&g).map(|(p, v)| p * v * v).sum::<Rational>() - &mean_g * &mean_g;
    let mut by_value: BTreeMap<&Rational, (Rational, Rational)> = BTreeMap::new();
    for ((p, v), gs) in pi.iter().zip(x).zip(&g) {
        let e = by_value.entry(v).or_insert((Rational::zero(), Rational::zero()));
        e.0 += p;
        e.1 += p * gs;
    }
    let var_w: Rational = by_value
        .values()
        .filter(|(mass, _)| !mass.is_zero())
        .map(|(mass, tot)| tot * tot / mass)
        .sum::<Rational>()
        - &mean_g * &mean_g;
    let s4 = sigma_sq * sigma_sq;
    Ok(ConditionalMoments {
        a: Rational::one() - slope,
        var_cond_sq: var_w / &s4,
        var_cond_sq_state: var_state / &s4,
        fourth: fourth / &s4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio};
    use crate::hamming::{fourth_moment_binomial_half, MixingDistribution};
    use crate::oracle::vector_chain::build_binary_vector_chain;

    fn weight_statistic(n: u32, states: &[u32]) -> Vec<Rational> {
        states.iter().map(|s| int(2 * s.count_ones() as i64 - n as i64)).collect()
    }

    #[test]
    fn binary_chain_moments() {
        let n = 6u32;
        let b = MixingDistribution::parse(n, "1:1/2,2:1/4,3:1/4").unwrap();
        let chain = build_binary_vector_chain(n, &b).unwrap();
        let x = weight_statistic(n, &chain.states);
        let m = exact_conditional_moments(&chain, &x, &int(n as i64)).unwrap();
        let a_sum = b.support().fold(int(0), |acc, (i, w)| acc + w * ratio(i as i64, n as i64));
        let b_sum = b.support().fold(int(0), |acc, (i, w)| {
            acc + w * ratio((i * (i.max(1) - 1)) as i64, (n * (n - 1)) as i64)
        });
        assert_eq!(m.a, int(2) * &a_sum);
        let expect_var = int(16) * &b_sum * &b_sum * (fourth_moment_binomial_half(n) - int(1));
        assert_eq!(m.var_cond_sq, expect_var);
        assert_eq!(m.var_cond_sq_state, m.var_cond_sq);
        let expect4 = ratio(16, n as i64) * (&a_sum + int(3) * &b_sum * int(n as i64 - 1));
        assert_eq!(m.fourth, expect4);
    }

    #[test]
    fn holding_chain_is_degenerate() {
        let n = 4u32;
        let chain = build_binary_vector_chain(n, &MixingDistribution::point_mass(n, 0).unwrap()).unwrap();
        let x = weight_statistic(n, &chain.states);
        let m = exact_conditional_moments(&chain, &x, &int(n as i64)).unwrap();
        assert_eq!(m.a, int(0));
        assert_eq!(m.var_cond_sq, int(0));
        assert_eq!(m.fourth, int(0));
        assert_eq!(m.variance_radicand(), None);
    }
}
