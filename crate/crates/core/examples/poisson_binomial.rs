//! Poisson bound for Binomial(n, 1/n) as a function of the number of
//! replaced coordinates, with the exact total variation for comparison.

use stein_steps::exactmath::ratio;
use stein_steps::poisson::{poisson_bound_binomial, tv_distance, TruncatedPmf};

fn main() -> stein_steps::Result<()> {
    let n = 10;
    for k in 1..=n {
        let r = poisson_bound_binomial(n, k)?;
        println!("k = {k:>2}: c = {:<12} bound = {}", r.c.to_string(), r.total_exact.expect("lambda = 1"));
    }
    let tv = tv_distance(
        &TruncatedPmf::binomial(n, &ratio(1, n as i64)),
        &TruncatedPmf::poisson(1.0, 1e-15)?,
        1e-12,
    )?;
    println!("exact TV(Binomial({n}, 1/{n}), Poisson(1)) = {:.6}", tv.value);
    Ok(())
}
