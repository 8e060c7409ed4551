//! The spectral and combinatorial descriptions of the distance-t step agree.

use stein_steps::hamming::{HammingModel, MixingDistribution};

fn main() -> stein_steps::Result<()> {
    let (n, q, t) = (5, 3, 2);
    let model = HammingModel::from_params(n, q, MixingDistribution::point_mass(n, t)?)?;
    let spectral = model.transition_spectral(t)?;
    let combinatorial = model.transition_combinatorial(t)?;
    println!("L_{t} on levels of H({n}, {q}):");
    for row in spectral.to_dense() {
        println!("  {}", row.iter().map(|x| format!("{:>8}", x.to_string())).collect::<String>());
    }
    println!("identical entry for entry: {}", spectral == combinatorial);
    println!("reversible w.r.t. the level law: {}", spectral.satisfies_detailed_balance(&model.plancherel_pmf()));
    Ok(())
}
