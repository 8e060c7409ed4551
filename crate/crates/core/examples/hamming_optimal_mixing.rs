//! Ranks the canonical grid of step-size mixings on H(n, q).

use stein_steps::hamming::{canonical_grid, optimal_mixing_sweep, SweepTemplate};

fn main() -> stein_steps::Result<()> {
    let (n, q) = (12, 3);
    let outcome = optimal_mixing_sweep(SweepTemplate::Hamming { n, q }, &canonical_grid(n))?;
    println!("H({n}, {q}), {} usable mixings", outcome.ranked.len());
    for row in &outcome.ranked {
        println!("{:>2}. {:<40} a = {:<6} total = {:.6}", row.rank, row.mixing.to_string(), row.report.a.to_string(), row.report.total);
    }
    for (m, e) in &outcome.rejected {
        println!("  rejected {m}: {e}");
    }
    let best = &outcome.ranked[0];
    let beaten = outcome.ranked[1..].iter().all(|r| best.report.dominates(&r.report));
    println!("rank 1 dominates every other row exactly: {beaten}");
    Ok(())
}
