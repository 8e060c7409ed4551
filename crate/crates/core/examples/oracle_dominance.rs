//! Brute-force oracles: exact moments from full kernels, exact distances,
//! and a seeded Monte Carlo estimate with its DKW radius.

use stein_steps::exactmath::int;
use stein_steps::hamming::{stein_bound_binomial_half, MixingDistribution};
use stein_steps::oracle::empirical::{exact_distance, MIN_SAMPLES};
use stein_steps::oracle::vector_chain::build_binary_vector_chain;
use stein_steps::oracle::{empirical_distance, exact_conditional_moments, DiscreteLaw, Metric, Reference, SeededSampler};

fn main() -> stein_steps::Result<()> {
    let n = 10;
    let b = MixingDistribution::point_mass(n, 1)?;
    let chain = build_binary_vector_chain(n, &b)?;
    let x: Vec<_> = chain.states.iter().map(|s| int(2 * s.count_ones() as i64 - n as i64)).collect();
    let m = exact_conditional_moments(&chain, &x, &int(n as i64))?;
    let report = stein_bound_binomial_half(n, &b)?;
    println!("2^{n} states: a = {}, E(W'-W)^4 = {}; closed form a = {}", m.a, m.fourth, report.a);

    let law = DiscreteLaw::standardized_binomial_half(n)?;
    let exact = exact_distance(&law, &Reference::StandardNormal, Metric::Kolmogorov)?;
    println!("Kolmogorov distance {exact:.6} <= bound {:.6}", report.total);
    let mut sampler = SeededSampler::new(42);
    let est = empirical_distance(&mut sampler, &law, &Reference::StandardNormal, Metric::Kolmogorov, 10 * MIN_SAMPLES)?;
    println!("Monte Carlo {:.6} +- {:.6} (seed {}), covers exact: {}", est.estimate, est.radius, est.seed, est.covers(exact));
    Ok(())
}
