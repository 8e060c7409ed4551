//! Eigenvalues of a mixed Hamming chain, checked against its kernel, and
//! the group spectrum of the defining representation.

use stein_steps::hamming::{HammingModel, MixingDistribution};
use stein_steps::sn_plancherel::{ConjugacyClassTag, Partition};
use stein_steps::spectrum::{group_spectrum, hamming_spectrum, verify_spectrum_against_matrix};

fn main() -> stein_steps::Result<()> {
    let model = HammingModel::from_params(8, 2, MixingDistribution::parse(8, "1:2/3,2:1/3")?)?;
    let report = hamming_spectrum(&model)?;
    for (key, ev) in &report.eigenvalues {
        println!("{key}: {ev}");
    }
    println!("functional: {:?}", report.bound_functional.values().map(ToString::to_string).collect::<Vec<_>>());
    println!("eigenpairs verified on the dense kernel: {}", verify_spectrum_against_matrix(&model)?);

    let tau = Partition::defining(8)?;
    let g = group_spectrum(&tau, &ConjugacyClassTag::ALL)?;
    for (key, ev) in &g.eigenvalues {
        println!("{tau}, {key}: {ev}");
    }
    println!("moduli condition: {:?}", g.moduli_condition_met);
    Ok(())
}
