//! Normal bound for Binomial(n, 1/2) built from single-coordinate flips,
//! compared with flipping several coordinates per step.

use stein_steps::hamming::{stein_bound_binomial_half, MixingDistribution};

fn main() -> stein_steps::Result<()> {
    for n in [10u32, 100, 1000] {
        let flip_one = stein_bound_binomial_half(n, &MixingDistribution::point_mass(n, 1)?)?;
        let closed = (8.0 / (std::f64::consts::PI * n as f64)).powf(0.25);
        println!("n = {n:>4}: a = {}, bound = {:.6} (closed form {closed:.6})", flip_one.a, flip_one.total);
        let mut wider = vec![2, 3, n / 4];
        wider.dedup();
        for t in wider {
            let r = stein_bound_binomial_half(n, &MixingDistribution::point_mass(n, t)?)?;
            println!("          flip {t:>3}: a = {}, bound = {:.6}", r.a, r.total);
        }
    }
    Ok(())
}
