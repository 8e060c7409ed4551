//! Replace-k on explicit Bernoulli vectors, simulated step by step in exact arithmetic.

use num_traits::{One, Zero};
use stein_steps::exactmath::{int, ratio, Rational};
use stein_steps::poisson::binomial::binomial_pmf;
use stein_steps::poisson::{c_binomial, expected_scaled_prob_binomial, poisson_bound_binomial, tv_distance, Direction, TruncatedPmf};

// E over the product law of c * P(W' = W + 1 | X), by listing every
// configuration, every k-subset and every refill of that subset.
fn expected_up(n: u32, k: u32) -> Rational {
    let p = ratio(1, n as i64);
    let q = Rational::one() - &p;
    let weight = |m: u32, len: u32| -> Rational {
        let ones = m.count_ones() as i32;
        num_traits::pow(p.clone(), ones as usize) * num_traits::pow(q.clone(), (len as i32 - ones) as usize)
    };
    let subsets: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() == k).collect();
    let mut total = Rational::zero();
    for x in 0..1u32 << n {
        let px = weight(x, n);
        let mut up = Rational::zero();
        for &s in &subsets {
            let mut refill = s;
            loop {
                let y = (x & !s) | refill;
                if y.count_ones() == x.count_ones() + 1 {
                    up += weight(refill, k);
                }
                if refill == 0 {
                    break;
                }
                refill = (refill - 1) & s;
            }
        }
        total += px * up / int(subsets.len() as i64);
    }
    total * c_binomial(n, k).unwrap()
}

#[test]
fn closed_form_matches_simulation() {
    for n in 2..=7u32 {
        for k in 1..=n {
            assert_eq!(
                expected_scaled_prob_binomial(n, k, Direction::Up).unwrap(),
                expected_up(n, k),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn bound_exceeds_total_variation() {
    for n in 2..=30u32 {
        let bound = poisson_bound_binomial(n, 1).unwrap();
        let tv = tv_distance(
            &TruncatedPmf::exact(&binomial_pmf(n, &ratio(1, n as i64))),
            &TruncatedPmf::poisson(1.0, 1e-15).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!(tv.value + tv.slack <= bound.total, "n={n}");
    }
}
