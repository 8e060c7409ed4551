//! Krawtchouk values, a linearization table, and the exact identity checks.

use stein_steps::krawtchouk::{check_identities, KrawtchoukContext};

fn main() -> stein_steps::Result<()> {
    let ctx = KrawtchoukContext::new(6, 3)?;
    println!("K_j(i) for n = 6, q = 3 (rows j, columns i):");
    for j in 0..=6 {
        let row: Vec<String> = (0..=6).map(|i| ctx.krawtchouk(j, i).map(|v| format!("{v:>6}"))).collect::<Result<_, _>>()?;
        println!("  j={j}: {}", row.join(""));
    }
    let lin = ctx.linearization(2, 3)?;
    println!("K_2 K_3 = sum_l A_l K_l with A = {:?}", lin.coefficients.iter().map(|(l, a)| format!("{l}:{a}")).collect::<Vec<_>>());
    println!("all coefficients nonnegative: {}", lin.all_nonnegative());
    for n in 1..=10 {
        for q in 2..=5 {
            check_identities(&KrawtchoukContext::new(n, q)?)?;
        }
    }
    println!("orthogonality, recurrence, swap and linearization hold for n <= 10, q <= 5");
    Ok(())
}
