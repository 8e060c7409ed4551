//! Named groups of oracle checks, as run by `verify`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{int, ratio};
use crate::hamming::{canonical_grid, stein_bound_binomial_half, HammingModel, MixingDistribution};
use crate::krawtchouk::{check_identities, KrawtchoukContext};
use crate::poisson::binomial::binomial_pmf;
use crate::poisson::negbin::regime;
use crate::poisson::{poisson_bound_binomial, TruncatedPmf};
use crate::sn_plancherel::{partitions_of, stein_bound_group, GroupBoundInput, Partition};
use crate::spectrum::verify_spectrum_against_matrix;

use super::empirical::{empirical_distance, exact_distance, DiscreteLaw, Metric, Reference, SeededSampler};
use super::group_chain::{
    build_group_chain, defining_rep_kernel, transposition_ratio_variance, transposition_ratios, MAX_GROUP_N,
};
use super::moments::exact_conditional_moments;
use super::replace_k::{binomial_positivity, binomial_replace_k_chain, negbin_positivity};
use super::vector_chain::{build_binary_vector_chain, lump_by_weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Krawtchouk,
    Hamming,
    Group,
    Poisson,
    MonteCarlo,
    All,
}

impl Suite {
    const NAMES: [(&'static str, Suite); 6] = [
        ("krawtchouk", Suite::Krawtchouk),
        ("hamming", Suite::Hamming),
        ("group", Suite::Group),
        ("poisson", Suite::Poisson),
        ("monte-carlo", Suite::MonteCarlo),
        ("all", Suite::All),
    ];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = Self::NAMES.iter().find(|(_, v)| v == self).map_or("?", |(n, _)| n);
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn record(out: &mut Vec<CheckResult>, name: String, outcome: Result<String>) {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    out.push(CheckResult { name, passed, detail });
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg.into()))
    }
}

fn hamming_checks(out: &mut Vec<CheckResult>, max_n: u32) {
    for n in 2..=max_n.min(10) {
        record(out, format!("vector-chain n={n}"), (|| {
            let mut checked = 0;
            for b in canonical_grid(n) {
                let Ok(report) = stein_bound_binomial_half(n, &b) else { continue };
                let chain = build_binary_vector_chain(n, &b)?;
                chain.validate()?;
                ensure(chain.is_reversible(), format!("{b} not reversible"))?;
                let model = HammingModel::from_params(n, 2, b.clone())?;
                ensure(lump_by_weight(&chain, n)? == model.transition_mixed()?, "lumping differs")?;
                let x: Vec<_> = chain.states.iter().map(|s| int(2 * s.count_ones() as i64 - n as i64)).collect();
                let m = exact_conditional_moments(&chain, &x, &int(n as i64))?;
                ensure(m.a == report.a, format!("a differs for {b}"))?;
                ensure(m.variance_radicand() == Some(report.variance_sq.clone()), format!("V differs for {b}"))?;
                ensure(m.moment_radicand() == Some(report.moment_radicand.clone()), format!("R differs for {b}"))?;
                checked += 1;
            }
            Ok(format!("{checked} mixings"))
        })());
    }
    for n in 2..=max_n.min(12) {
        for q in 2..=4u32 {
            record(out, format!("spectrum n={n} q={q}"), (|| {
                let b = MixingDistribution::parse(n, "1:1")?;
                let model = HammingModel::from_params(n, q, b)?;
                ensure(verify_spectrum_against_matrix(&model)?, "eigenvector mismatch")?;
                Ok("eigenpairs verified".into())
            })());
        }
    }
}

fn group_checks(out: &mut Vec<CheckResult>, max_n: u32) {
    for n in 4..=max_n.min(MAX_GROUP_N) {
        record(out, format!("group-chain n={n}"), (|| {
            let input = GroupBoundInput::symmetric_transpositions(n)?;
            let x = transposition_ratios(n)?;
            let s2 = transposition_ratio_variance(n);
            let mut checked = 0;
            for tau in partitions_of(n).into_iter().filter(|t| !t.is_trivial()) {
                let chain = build_group_chain(&tau, n)?;
                chain.validate()?;
                ensure(chain.is_reversible(), format!("{tau} not reversible"))?;
                let Ok(report) = stein_bound_group(&input, &tau) else { continue };
                let m = exact_conditional_moments(&chain, &x, &s2)?;
                ensure(m.a == report.a, format!("a differs for {tau}"))?;
                ensure(m.variance_radicand() == Some(report.variance_sq.clone()), format!("V differs for {tau}"))?;
                ensure(m.moment_radicand() == Some(report.moment_radicand.clone()), format!("R differs for {tau}"))?;
                checked += 1;
            }
            let defining = build_group_chain(&Partition::defining(n)?, n)?;
            ensure(defining_rep_kernel(n)? == defining.kernel, "branching kernel differs")?;
            Ok(format!("{checked} representations"))
        })());
    }
}

fn poisson_checks(out: &mut Vec<CheckResult>, max_n: u32) {
    for n in 2..=max_n.min(8) {
        record(out, format!("replace-k binomial n={n}"), (|| {
            for k in 1..=n {
                let s = binomial_positivity(n, k)?;
                ensure(s.holds(), format!("negative slack at k={k}"))?;
                let chain = binomial_replace_k_chain(n, k)?;
                chain.validate()?;
                ensure(chain.is_reversible(), format!("k={k} not reversible"))?;
                poisson_bound_binomial(n, k)?;
            }
            Ok(format!("k = 1..={n}"))
        })());
    }
    for (r, p) in [(3u32, ratio(3, 4)), (4, ratio(4, 5)), (4, ratio(9, 10))] {
        record(out, format!("replace-k negbin r={r} p={p}"), (|| {
            let mut checked = 0;
            for k in 1..=r {
                if regime(r, &p, k).is_none() {
                    continue;
                }
                let s = negbin_positivity(r, &p, k, 6)?;
                ensure(s.holds(), format!("negative slack at k={k}"))?;
                checked += 1;
            }
            Ok(format!("{checked} covered k"))
        })());
    }
}

fn monte_carlo_checks(out: &mut Vec<CheckResult>, max_n: u32, seed: u64, samples: usize) {
    let laws: Vec<(String, Result<DiscreteLaw>, Reference, Metric)> = vec![
        (
            format!("binomial-half n={max_n}"),
            DiscreteLaw::standardized_binomial_half(max_n),
            Reference::StandardNormal,
            Metric::Kolmogorov,
        ),
        (
            format!("hamming n={max_n} q=3"),
            DiscreteLaw::hamming_statistic(max_n, 3),
            Reference::StandardNormal,
            Metric::Kolmogorov,
        ),
        (
            format!("group n={}", max_n.clamp(2, 14)),
            DiscreteLaw::group_statistic(max_n.clamp(2, 14)),
            Reference::StandardNormal,
            Metric::Kolmogorov,
        ),
    ];
    let mut sampler = SeededSampler::new(seed);
    for (name, law, reference, metric) in laws {
        record(out, format!("monte-carlo {name}"), (|| {
            let law = law?;
            let exact = exact_distance(&law, &reference, metric)?;
            let e = empirical_distance(&mut sampler, &law, &reference, metric, samples)?;
            ensure(e.covers(exact), format!("{} vs exact {exact}, radius {}", e.estimate, e.radius))?;
            Ok(format!("exact {exact:.6}, empirical {:.6} +- {:.6}", e.estimate, e.radius))
        })());
    }
    let n = max_n.max(2);
    record(out, format!("monte-carlo binomial-poisson n={n}"), (|| {
        let law = DiscreteLaw::on_integers(&binomial_pmf(n, &ratio(1, n as i64)))?;
        let reference = Reference::Pmf(TruncatedPmf::poisson(1.0, 1e-15)?);
        let exact = exact_distance(&law, &reference, Metric::TotalVariation)?;
        let e = empirical_distance(&mut sampler, &law, &reference, Metric::TotalVariation, samples)?;
        ensure(e.covers(exact), format!("{} vs exact {exact}, radius {}", e.estimate, e.radius))?;
        Ok(format!("exact {exact:.6}, empirical {:.6} +- {:.6}", e.estimate, e.radius))
    })());
}

/// Runs every check of `suite` up to size `max_n`.
pub fn run_suite(suite: Suite, max_n: u32, seed: u64, samples: usize) -> Result<Vec<CheckResult>> {
    if max_n < 2 {
        return Err(crate::error::out_of_range("max_n", max_n, ">= 2"));
    }
    let mut out = Vec::new();
    if suite.includes(Suite::Krawtchouk) {
        for n in 1..=max_n.min(20) {
            for q in 2..=5u32 {
                record(&mut out, format!("krawtchouk n={n} q={q}"), (|| {
                    check_identities(&KrawtchoukContext::new(n, q)?)?;
                    Ok("identities hold".into())
                })());
            }
        }
    }
    if suite.includes(Suite::Hamming) {
        hamming_checks(&mut out, max_n);
    }
    if suite.includes(Suite::Group) {
        group_checks(&mut out, max_n);
    }
    if suite.includes(Suite::Poisson) {
        poisson_checks(&mut out, max_n);
    }
    if suite.includes(Suite::MonteCarlo) {
        monte_carlo_checks(&mut out, max_n, seed, samples);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for (name, s) in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap(), s);
            assert_eq!(s.to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suite_passes() {
        let results = run_suite(Suite::All, 5, 11, 10_000).unwrap();
        let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(results.len() > 20);
    }
}
