//! Poisson bound for a sum of r geometrics, with the regime that covers each k.

use stein_steps::exactmath::ratio;
use stein_steps::poisson::negbin::{lambda, regime};
use stein_steps::poisson::{poisson_bound_negbin, tv_distance, TruncatedPmf};
use stein_steps::Error;

fn main() -> stein_steps::Result<()> {
    let (r, p) = (40, ratio(80, 81));
    let lam = lambda(r, &p);
    println!("r = {r}, p = {p}, lambda = {lam}");
    for k in 1..=r {
        match poisson_bound_negbin(r, &p, k, None) {
            Ok(rep) => println!("k = {k:>2} ({:?}): bound = {:.6}", rep.regime.expect("covered"), rep.total),
            Err(Error::UncoveredRegime { .. }) => println!("k = {k:>2}: not covered ({:?})", regime(r, &p, k)),
            Err(e) => return Err(e),
        }
    }
    let tv = tv_distance(
        &TruncatedPmf::negbin(r, &p, 1e-15),
        &TruncatedPmf::poisson(stein_steps::exactmath::to_real(&lam), 1e-15)?,
        1e-12,
    )?;
    println!("exact TV to Poisson(lambda) ~ {:.6} (+- {:.1e})", tv.value, tv.slack);
    Ok(())
}
