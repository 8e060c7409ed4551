//! Seeded sampling from exact discrete laws, with exact and empirical
//! Kolmogorov and total-variation distances.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, to_real, Rational};
use crate::krawtchouk::KrawtchoukContext;
use crate::poisson::TruncatedPmf;
use crate::sn_plancherel::{character_ratio, partitions_of, ConjugacyClassTag};

use super::characters::hook_length_dim;

/// Smallest sample count accepted by [`empirical_distance`].
pub const MIN_SAMPLES: usize = 10_000;
/// Confidence radii hold with probability `1 - ALPHA`.
pub const ALPHA: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct SeededSampler {
    seed: u64,
    rng: ChaCha20Rng,
}

impl SeededSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Index of an atom of `law`, by inversion.
    pub fn sample(&mut self, law: &DiscreteLaw) -> usize {
        let u: f64 = self.rng.gen();
        law.cdf.partition_point(|&c| c <= u).min(law.atoms.len() - 1)
    }
}

/// Finitely many atoms in increasing order with exact probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw {
    atoms: Vec<f64>,
    probs: Vec<Rational>,
    cdf: Vec<f64>,
}

impl DiscreteLaw {
    /// Sorts atoms, merges equal ones and drops zero mass. Probabilities must sum to 1.
    pub fn new(mut pairs: Vec<(f64, Rational)>) -> Result<Self> {
        if pairs.iter().any(|(x, p)| !x.is_finite() || p.is_negative()) {
            return Err(Error::Invalid("atoms must be finite with nonnegative mass".into()));
        }
        pairs.retain(|(_, p)| !p.is_zero());
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::new();
        let mut probs: Vec<Rational> = Vec::new();
        for (x, p) in pairs {
            if atoms.last() == Some(&x) {
                *probs.last_mut().expect("nonempty") += p;
            } else {
                atoms.push(x);
                probs.push(p);
            }
        }
        let total: Rational = probs.iter().sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::Invalid(format!("probabilities sum to {total}")));
        }
        let mut acc = Rational::zero();
        let cdf = probs
            .iter()
            .map(|p| {
                acc += p;
                to_real(&acc)
            })
            .collect();
        Ok(Self { atoms, probs, cdf })
    }

    /// `(2 S - n) / sqrt(n)` for `S ~ Binomial(n, 1/2)`.
    pub fn standardized_binomial_half(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(out_of_range("n", n, "n >= 1"));
        }
        let scale = (n as f64).sqrt();
        let total = BigInt::from(2).pow(n);
        Self::new(
            (0..=n)
                .map(|i| {
                    let x = (2.0 * i as f64 - n as f64) / scale;
                    (x, Rational::new(binomial(n as i64, i as i64), total.clone()))
                })
                .collect(),
        )
    }

    /// `K_1(d(x, 0)) / sqrt(n(q-1))` for `x` uniform on `{0..q-1}^n`.
    pub fn hamming_statistic(n: u32, q: u32) -> Result<Self> {
        let ctx = KrawtchoukContext::new(n, q)?;
        let scale = ((n * (q - 1)) as f64).sqrt();
        let total = BigInt::from(q).pow(n);
        Self::new(
            (0..=n)
                .map(|i| {
                    let k1 = ctx.krawtchouk(1, i)?;
                    let x = k1.to_f64().unwrap_or(f64::NAN) / scale;
                    Ok((x, Rational::new(ctx.multiplicity(i)?, total.clone())))
                })
                .collect::<Result<_>>()?,
        )
    }

    /// `sqrt(C(n,2)) chi^lambda(t) / dim(lambda)` under the Plancherel law.
    pub fn group_statistic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(out_of_range("n", n, "n >= 2"));
        }
        let scale = ((n * (n - 1) / 2) as f64).sqrt();
        let nf = crate::exactmath::factorial(n);
        Self::new(
            partitions_of(n)
                .iter()
                .map(|l| {
                    let d = hook_length_dim(l);
                    let x = scale * to_real(&character_ratio(l, ConjugacyClassTag::Transposition)?);
                    Ok((x, Rational::new(&d * &d, nf.clone())))
                })
                .collect::<Result<_>>()?,
        )
    }

    /// Law on `0..probs.len()`.
    pub fn on_integers(probs: &[Rational]) -> Result<Self> {
        Self::new(probs.iter().enumerate().map(|(i, p)| (i as f64, p.clone())).collect())
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Kolmogorov,
    TotalVariation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    StandardNormal,
    /// An integer-valued law; the compared law must live on integers too.
    Pmf(TruncatedPmf),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEstimate {
    pub estimate: f64,
    /// `|estimate - exact| <= radius` with probability at least `1 - ALPHA`.
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
}

impl DistanceEstimate {
    pub fn covers(&self, exact: f64) -> bool {
        (self.estimate - exact).abs() <= self.radius
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal is valid")
}

// sup |F - Phi| for a step function F with the given atoms and cumulative masses;
// the supremum is approached from either side of some atom.
fn kolmogorov_steps(atoms: &[f64], cum: &[f64]) -> f64 {
    let phi = standard_normal();
    let mut prev = 0.0;
    let mut best: f64 = 0.0;
    for (x, c) in atoms.iter().zip(cum) {
        let g = phi.cdf(*x);
        best = best.max((c - g).abs()).max((prev - g).abs());
        prev = *c;
    }
    best
}

fn integer_index(law: &DiscreteLaw) -> Result<Vec<usize>> {
    law.atoms
        .iter()
        .map(|&x| {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(Error::Invalid(format!("atom {x} is not a nonnegative integer")))
            }
        })
        .collect()
}

fn spread(law: &DiscreteLaw, mass: &[f64]) -> Result<Vec<f64>> {
    let idx = integer_index(law)?;
    let mut out = vec![0.0; idx.last().map_or(0, |m| m + 1)];
    for (i, m) in idx.into_iter().zip(mass) {
        out[i] = *m;
    }
    Ok(out)
}

fn pmf_distance(mass: &[f64], reference: &TruncatedPmf, metric: Metric) -> f64 {
    let len = mass.len().max(reference.probs.len());
    let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    match metric {
        Metric::TotalVariation => {
            0.5 * ((0..len).map(|i| (get(mass, i) - get(&reference.probs, i)).abs()).sum::<f64>()
                + reference.tail)
        }
        Metric::Kolmogorov => {
            let (mut fa, mut fb, mut best) = (0.0, 0.0, 0.0f64);
            for i in 0..len {
                fa += get(mass, i);
                fb += get(&reference.probs, i);
                best = best.max((fa - fb).abs());
            }
            best
        }
    }
}

fn distance(law: &DiscreteLaw, mass: &[f64], reference: &Reference, metric: Metric) -> Result<f64> {
    match (reference, metric) {
        (Reference::StandardNormal, Metric::Kolmogorov) => {
            let mut acc = 0.0;
            let cum: Vec<f64> = mass
                .iter()
                .map(|m| {
                    acc += m;
                    acc
                })
                .collect();
            Ok(kolmogorov_steps(&law.atoms, &cum))
        }
        (Reference::StandardNormal, Metric::TotalVariation) => Err(Error::Invalid(
            "total variation to a continuous law is always 1".into(),
        )),
        (Reference::Pmf(pmf), m) => Ok(pmf_distance(&spread(law, mass)?, pmf, m)),
    }
}

/// Distance from `law` to `reference`, computed from the exact masses.
pub fn exact_distance(law: &DiscreteLaw, reference: &Reference, metric: Metric) -> Result<f64> {
    let mass: Vec<f64> = law.probs.iter().map(to_real).collect();
    distance(law, &mass, reference, metric)
}

/// The same distance with `law` replaced by the empirical law of `samples` draws.
pub fn empirical_distance(
    sampler: &mut SeededSampler,
    law: &DiscreteLaw,
    reference: &Reference,
    metric: Metric,
    samples: usize,
) -> Result<DistanceEstimate> {
    if samples < MIN_SAMPLES {
        return Err(out_of_range("samples", samples, format!(">= {MIN_SAMPLES}")));
    }
    let mut counts = vec![0usize; law.atoms.len()];
    for _ in 0..samples {
        counts[sampler.sample(law)] += 1;
    }
    let nf = samples as f64;
    let mass: Vec<f64> = counts.iter().map(|&c| c as f64 / nf).collect();
    let estimate = distance(law, &mass, reference, metric)?;
    let concentration = ((2.0 / ALPHA).ln() / (2.0 * nf)).sqrt();
    let radius = match metric {
        // DKW: sup |F_N - F| <= radius
        Metric::Kolmogorov => concentration,
        // mean absolute error of the cell frequencies plus a bounded-difference tail
        Metric::TotalVariation => {
            0.5 * law
                .probs
                .iter()
                .map(|p| {
                    let p = to_real(p);
                    (p * (1.0 - p) / nf).sqrt()
                })
                .sum::<f64>()
                + concentration
        }
    };
    Ok(DistanceEstimate {
        estimate,
        radius,
        samples,
        seed: sampler.seed(),
    })
}
