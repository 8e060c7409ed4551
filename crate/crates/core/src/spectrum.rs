//! Closed-form spectra of the step-size families and the functionals that
//! order their bounds.
//!
//! The mixed Hamming kernel acts on `(K_s(j))_j` by `lambda_s`, and `L_tau`
//! acts on the class functions of `S_n` by character ratios. No numerical
//! eigensolver is used; [`verify_spectrum_against_matrix`] checks the closed
//! forms by exact residuals.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::bound::{DetailKey, SteinBoundReport};
use crate::error::{Error, Result};
use crate::exactmath::{ratio, Rational};
use crate::hamming::{stein_bound_hamming, HammingModel, MixingDistribution, SweepTemplate};
use crate::krawtchouk::KrawtchoukContext;
use crate::oracle::characters::{hook_length_dim, mn_character, MAX_CHARACTER_N};
use crate::sn_plancherel::{
    character_ratio, exhaustive_group_bounds, partitions_of, ConjugacyClassTag, Partition,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// `Level(s)` for Hamming chains, `Class(K)` for group chains.
    pub eigenvalues: Vec<(DetailKey, Rational)>,
    /// `(lambda_K - 1) / (1 - lambda_1)` keyed like the eigenvalues.
    pub bound_functional: BTreeMap<DetailKey, Rational>,
    /// `None` when the condition is not evaluated for this input.
    pub moduli_condition_met: Option<bool>,
}

impl SpectrumReport {
    pub fn eigenvalue(&self, key: DetailKey) -> Option<&Rational> {
        self.eigenvalues.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

/// `lambda_s = sum_t b_t K_s(t) / v_s` for `s = 0..=n`.
pub fn hamming_spectrum(model: &HammingModel) -> Result<SpectrumReport> {
    let n = model.n();
    let eigenvalues: Vec<(DetailKey, Rational)> = (0..=n)
        .map(|s| Ok((DetailKey::Level(s), model.eigenvalue(s)?)))
        .collect::<Result<_>>()?;
    let gap = Rational::one() - &eigenvalues[1].1;
    if gap.is_zero() {
        return Err(Error::DegenerateStep { a: "0".into() });
    }
    let mut bound_functional = BTreeMap::new();
    if n >= 2 {
        bound_functional.insert(DetailKey::Level(2), (&eigenvalues[2].1 - Rational::one()) / &gap);
    }
    let b = model.mixing();
    let moduli_condition_met = if (b.get(0) + b.get(1)).is_one() {
        Some(n <= 2 || hamming_moduli_condition(n, model.q(), &b.get(1)))
    } else {
        None
    };
    Ok(SpectrumReport {
        eigenvalues,
        bound_functional,
        moduli_condition_met,
    })
}

/// With `b_0 + b_1 = 1` and `n >= 3`: `lambda_1`, `lambda_2` have the largest
/// moduli among `s >= 1` exactly when `b_1 <= 2n(q-1) / (q(n+2))`.
pub fn hamming_moduli_condition(n: u32, q: u32, b1: &Rational) -> bool {
    let (n, q) = (n as i64, q as i64);
    *b1 <= ratio(2 * n * (q - 1), q * (n + 2))
}

/// Character ratios of `tau` on the requested classes, with the functionals
/// for the 3-cycles and double transpositions.
pub fn group_spectrum(tau: &Partition, classes: &[ConjugacyClassTag]) -> Result<SpectrumReport> {
    if tau.is_trivial() {
        return Err(Error::TrivialRepresentation { n: tau.n() });
    }
    let n = tau.n();
    let eigenvalues: Vec<(DetailKey, Rational)> = classes
        .iter()
        .map(|&k| Ok((DetailKey::Class(k), character_ratio(tau, k)?)))
        .collect::<Result<_>>()?;
    let gap = Rational::one() - character_ratio(tau, ConjugacyClassTag::Transposition)?;
    if gap.is_zero() {
        return Err(Error::DegenerateStep { a: "0".into() });
    }
    let mut bound_functional = BTreeMap::new();
    for k in [ConjugacyClassTag::ThreeCycle, ConjugacyClassTag::TwoTwo] {
        if n >= k.min_n() {
            bound_functional.insert(DetailKey::Class(k), (character_ratio(tau, k)? - Rational::one()) / &gap);
        }
    }
    let moduli_condition_met = if (4..=MAX_CHARACTER_N).contains(&n) {
        Some(group_moduli_condition(tau)?)
    } else {
        None
    };
    Ok(SpectrumReport {
        eigenvalues,
        bound_functional,
        moduli_condition_met,
    })
}

/// Whether the ratios at `(2)`, `(3)` and `(2,2)` are at least as large in
/// modulus as the ratio at every other non-identity class.
pub fn group_moduli_condition(tau: &Partition) -> Result<bool> {
    let n = tau.n();
    let dim = Rational::from_integer(hook_length_dim(tau));
    let relevant: Vec<Partition> = [
        ConjugacyClassTag::Transposition,
        ConjugacyClassTag::ThreeCycle,
        ConjugacyClassTag::TwoTwo,
    ]
    .iter()
    .map(|k| k.cycle_type(n))
    .collect::<Result<_>>()?;
    let id = ConjugacyClassTag::Id.cycle_type(n)?;
    let mut min_relevant: Option<Rational> = None;
    let mut max_other = Rational::zero();
    for c in partitions_of(n) {
        if c == id {
            continue;
        }
        let m = (Rational::from_integer(mn_character(tau, &c)?) / &dim).abs();
        if relevant.contains(&c) {
            min_relevant = Some(match min_relevant {
                Some(x) if x <= m => x,
                _ => m,
            });
        } else if m > max_other {
            max_other = m;
        }
    }
    Ok(min_relevant.is_some_and(|m| m >= max_other))
}

/// Checks `M (K_s(j))_j = lambda_s (K_s(j))_j` exactly for every `s`.
pub fn verify_spectrum_against_matrix(model: &HammingModel) -> Result<bool> {
    let m = model.transition_mixed()?;
    let n = model.n();
    for s in 0..=n {
        let v: Vec<Rational> = (0..=n)
            .map(|j| Ok(Rational::from_integer(model.ctx().krawtchouk(s, j)?)))
            .collect::<Result<_>>()?;
        let lam = model.eigenvalue(s)?;
        let mv = m.apply(&v);
        if mv.iter().zip(&v).any(|(x, y)| *x != &lam * y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On a Hamming sweep grid, ordering by `(lambda_2 - 1) / (1 - lambda_1)`
/// and ordering by the bound coincide: a strictly smaller functional gives
/// strictly smaller radicands, and equal functionals give equal bounds.
/// Grid points with `a` outside (0, 1) are skipped.
pub fn functional_ranking_agrees(template: SweepTemplate, grid: &[MixingDistribution]) -> Result<bool> {
    let (n, q) = match template {
        SweepTemplate::BinomialHalf { n } => (n, 2),
        SweepTemplate::Hamming { n, q } => (n, q),
    };
    // the binomial template has no size cap, so lift the table's
    let ctx = KrawtchoukContext::with_max_n(n, q, n)?;
    ctx.krawtchouk(0, 0)?;
    let mut rows: Vec<(Rational, SteinBoundReport)> = Vec::new();
    for m in grid {
        let model = HammingModel::new(ctx.clone(), m.clone())?;
        let report = match template {
            SweepTemplate::Hamming { .. } => stein_bound_hamming(&model),
            SweepTemplate::BinomialHalf { .. } => template.evaluate(m),
        };
        let report = match report {
            Ok(r) => r,
            Err(Error::DegenerateStep { .. }) => continue,
            Err(e) => return Err(e),
        };
        let spec = hamming_spectrum(&model)?;
        let f = spec
            .bound_functional
            .get(&DetailKey::Level(2))
            .cloned()
            .unwrap_or_else(Rational::zero);
        rows.push((f, report));
    }
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(rows.windows(2).all(|w| {
        let (fa, ra) = (&w[0].0, &w[0].1);
        let (fb, rb) = (&w[1].0, &w[1].1);
        if fa == fb {
            ra.variance_sq == rb.variance_sq && ra.moment_radicand == rb.moment_radicand
        } else {
            n < 2
                || (ra.variance_sq < rb.variance_sq && ra.moment_radicand < rb.moment_radicand)
        }
    }))
}

/// Over the nontrivial partitions of `n` with `a < 1`: componentwise
/// dominance of the `(3)` and `(2,2)` functionals implies bound dominance.
pub fn group_functional_dominance_holds(n: u32) -> Result<bool> {
    let (ranked, _) = exhaustive_group_bounds(n)?;
    let k3 = DetailKey::Class(ConjugacyClassTag::ThreeCycle);
    let k22 = DetailKey::Class(ConjugacyClassTag::TwoTwo);
    let funcs: Vec<(Rational, Rational, &SteinBoundReport)> = ranked
        .iter()
        .map(|(p, r)| {
            let s = group_spectrum(p, &[])?;
            Ok((s.bound_functional[&k3].clone(), s.bound_functional[&k22].clone(), r))
        })
        .collect::<Result<_>>()?;
    for (a3, a22, ra) in &funcs {
        for (b3, b22, rb) in &funcs {
            if a3 <= b3 && a22 <= b22 && !ra.dominates(rb) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::hamming::canonical_grid;

    fn model(n: u32, q: u32, spec: &str) -> HammingModel {
        HammingModel::from_params(n, q, MixingDistribution::parse(n, spec).unwrap()).unwrap()
    }

    #[test]
    fn lazy_chain_eigenvalues() {
        let (n, q) = (6u32, 3u32);
        let m = model(n, q, "0:1/4,1:3/4");
        let s = hamming_spectrum(&m).unwrap();
        for (key, lam) in &s.eigenvalues {
            let DetailKey::Level(j) = key else { unreachable!() };
            let expect = int(1) - ratio(3, 4) * ratio((q * j) as i64, (n * (q - 1)) as i64);
            assert_eq!(lam, &expect);
        }
        assert_eq!(s.moduli_condition_met, Some(true));
        let s = hamming_spectrum(&model(6, 2, "1:1")).unwrap();
        assert_eq!(s.moduli_condition_met, Some(false));
        let s = hamming_spectrum(&model(6, 2, "1:1/2,2:1/2")).unwrap();
        assert_eq!(s.moduli_condition_met, None);
    }

    #[test]
    fn moduli_condition_matches_direct_check() {
        for q in 2..=4u32 {
            for n in 3..=9u32 {
                for num in 1..=8 {
                    let b1 = ratio(num, 8);
                    let m = model(n, q, &format!("0:{},1:{}", int(1) - &b1, b1));
                    let s = hamming_spectrum(&m).unwrap();
                    let mods: Vec<Rational> = s.eigenvalues[1..].iter().map(|(_, l)| l.abs()).collect();
                    let direct = mods[2..].iter().all(|x| x <= &mods[1]) && mods[1] <= mods[0];
                    assert_eq!(s.moduli_condition_met, Some(direct), "n={n} q={q} b1={b1}");
                }
            }
        }
    }

    #[test]
    fn point_mass_eigenvalues() {
        let m = model(5, 3, "2:1");
        let s = hamming_spectrum(&m).unwrap();
        for j in 0..=5 {
            let expect = Rational::new(m.ctx().krawtchouk(j, 2).unwrap(), m.ctx().multiplicity(j).unwrap());
            assert_eq!(s.eigenvalue(DetailKey::Level(j)).unwrap(), &expect);
        }
        assert!(hamming_spectrum(&model(5, 3, "0:1")).is_err());
    }

    #[test]
    fn matrix_verification() {
        assert!(verify_spectrum_against_matrix(&model(4, 2, "1:1")).unwrap());
        assert!(verify_spectrum_against_matrix(&model(3, 3, "1:1/2,2:1/2")).unwrap());
        let id = model(3, 2, "0:1");
        assert!(verify_spectrum_against_matrix(&id).unwrap());
        for j in 0..=3 {
            assert_eq!(id.eigenvalue(j).unwrap(), int(1));
        }
    }

    #[test]
    fn defining_rep_ratios_are_fixed_point_counts() {
        for n in 4..=7u32 {
            let tau = Partition::defining(n).unwrap();
            let s = group_spectrum(&tau, &ConjugacyClassTag::ALL).unwrap();
            for k in ConjugacyClassTag::ALL {
                let f = k.cycle_type(n).unwrap().fixed_points() as i64;
                assert_eq!(s.eigenvalue(DetailKey::Class(k)).unwrap(), &ratio(f - 1, n as i64 - 1));
            }
            assert_eq!(s.eigenvalue(DetailKey::Class(ConjugacyClassTag::Id)).unwrap(), &int(1));
        }
    }

    #[test]
    fn group_moduli_holds_from_six() {
        assert_eq!(group_spectrum(&Partition::defining(5).unwrap(), &[]).unwrap().moduli_condition_met, Some(false));
        for n in 6..=10 {
            let s = group_spectrum(&Partition::defining(n).unwrap(), &[]).unwrap();
            assert_eq!(s.moduli_condition_met, Some(true), "n={n}");
        }
    }

    #[test]
    fn ranking_links() {
        for q in 2..=4 {
            for n in [3u32, 6, 9] {
                assert!(functional_ranking_agrees(SweepTemplate::Hamming { n, q }, &canonical_grid(n)).unwrap());
            }
        }
        for n in 5..=8 {
            assert!(group_functional_dominance_holds(n).unwrap());
        }
    }
}
