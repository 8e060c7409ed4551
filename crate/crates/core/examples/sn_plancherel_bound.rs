//! Bound for the chain on representations of S_n induced by tensoring with tau.

use stein_steps::sn_plancherel::{exhaustive_group_bounds, f_criterion, h_criterion, succession_step, Partition, StepTarget};

fn main() -> stein_steps::Result<()> {
    let n = 7;
    let (ranked, rejected) = exhaustive_group_bounds(n)?;
    for (i, (p, r)) in ranked.iter().enumerate() {
        println!("{:>2}. {:<16} a = {:<6} total = {:.5}", i + 1, p.to_string(), r.a.to_string(), r.total);
    }
    println!("{} partitions have a >= 1 and no bound", rejected.len());
    let lambda: Partition = "4,2,1".parse()?;
    for target in [StepTarget::LastRow, StepTarget::NewRow] {
        let mu = succession_step(&lambda, target)?;
        println!(
            "{lambda} -> {mu}: f = {}, h = {}",
            f_criterion(&lambda, target)?,
            h_criterion(&lambda, target)?
        );
    }
    Ok(())
}
