//! `n` Bernoulli(1/n) coordinates, so `lambda = 1`.
//!
//! Given the configuration, the chances of moving up or down depend only on
//! `W`: the chosen `k` coordinates hold `i` ones with hypergeometric
//! probability and are replaced by a fresh Binomial(k, 1/n) count.

use num_traits::{One, Signed, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, falling_factorial, factorial, int, powi, ratio, Rational};

use super::{check_k, Direction, PoissonBoundReport};

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(out_of_range("n", n, "n >= 2"));
    }
    Ok(())
}

/// `P(Binomial(n, p) = x)` for `x = 0..=n`.
pub fn binomial_pmf(n: u32, p: &Rational) -> Vec<Rational> {
    let q = Rational::one() - p;
    (0..=n)
        .map(|x| {
            Rational::from_integer(binomial(n as i64, x as i64))
                * powi(p, x as i64)
                * powi(&q, (n - x) as i64)
        })
        .collect()
}

/// `P(W' = W +- 1 | X)` for a configuration with `w` ones.
pub fn cond_prob_binomial(n: u32, k: u32, direction: Direction, w: u32) -> Result<Rational> {
    check_n(n)?;
    check_k(k, n)?;
    if w > n {
        return Err(out_of_range("W", w, format!("0..={n}")));
    }
    let (n_, k_, w_) = (n as i64, k as i64, w as i64);
    let fresh = binomial_pmf(k, &ratio(1, n_));
    let subsets = Rational::from_integer(binomial(n_, k_));
    let mut acc = Rational::zero();
    for i in 0..=k_ {
        let ways = binomial(w_, i) * binomial(n_ - w_, k_ - i);
        if ways.is_zero() {
            continue;
        }
        let target = match direction {
            Direction::Up => i + 1,
            Direction::Down => i - 1,
        };
        if target < 0 || target > k_ {
            continue;
        }
        acc += Rational::from_integer(ways) * &fresh[target as usize];
    }
    Ok(acc / subsets)
}

/// `c_k = (n/k) (n/(n-1))^(k-1)`.
pub fn c_binomial(n: u32, k: u32) -> Result<Rational> {
    check_n(n)?;
    check_k(k, n)?;
    let n_ = n as i64;
    Ok(ratio(n_, k as i64) * powi(&ratio(n_, n_ - 1), k as i64 - 1))
}

/// `c_1' = n / (1 - p) = n^2 / (n - 1)`.
pub fn c_binomial_alternative(n: u32) -> Result<Rational> {
    check_n(n)?;
    let n_ = n as i64;
    Ok(ratio(n_ * n_, n_ - 1))
}

/// `E[c_k P(W' = W +- 1 | X)]` in closed form; both directions agree.
pub fn expected_scaled_prob_binomial(n: u32, k: u32, _direction: Direction) -> Result<Rational> {
    let c = c_binomial(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    let nn = int(n_);
    let n1 = int(n_ - 1);
    let mut acc = Rational::zero();
    for i in 0..k_ {
        acc += Rational::from_integer(binomial(k_, i + 1) * binomial(k_, i))
            * powi(&n1, 2 * k_ - 2 * i - 1);
    }
    Ok(c * acc / powi(&nn, 2 * k_))
}

/// Both absolute-value terms for an arbitrary constant, summed exactly over the law of `W`.
pub fn poisson_bound_binomial_with_constant(n: u32, k: u32, c: &Rational) -> Result<PoissonBoundReport> {
    check_n(n)?;
    check_k(k, n)?;
    let law = binomial_pmf(n, &ratio(1, n as i64));
    let mut up = Rational::zero();
    let mut down = Rational::zero();
    for (w, pw) in law.iter().enumerate() {
        let w = w as u32;
        let pu = cond_prob_binomial(n, k, Direction::Up, w)?;
        let pd = cond_prob_binomial(n, k, Direction::Down, w)?;
        up += pw * (Rational::one() - c * pu).abs();
        down += pw * (int(w as i64) - c * pd).abs();
    }
    PoissonBoundReport::assemble(c.clone(), Rational::one(), up, down, None, None)
}

/// Bound with the constant `c_k`. The closed form of the expectations is
/// cross-checked against the exact sum over `W`.
pub fn poisson_bound_binomial(n: u32, k: u32) -> Result<PoissonBoundReport> {
    let c = c_binomial(n, k)?;
    let report = poisson_bound_binomial_with_constant(n, k, &c)?;
    let closed = Rational::one() - expected_scaled_prob_binomial(n, k, Direction::Up)?;
    if report.term_up_exact != closed || report.term_down_exact != closed {
        return Err(Error::Invariant(format!(
            "closed form {closed} disagrees with summed terms ({}, {}) at n={n}, k={k}",
            report.term_up_exact, report.term_down_exact
        )));
    }
    Ok(report)
}

/// `E[C(W, i) C(n-W, k-i)] i! (k-i)! = n(n-1)...(n-k+1) (n-1)^(k-i) / n^k`
/// for `W ~ Binomial(n, 1/n)`; returns the common value.
pub fn poisson_moment_identity(n: u32, k: u32, i: u32) -> Result<Rational> {
    if i > k || k > n {
        return Err(out_of_range("(i, k)", format!("({i}, {k})"), format!("0 <= i <= k <= n = {n}")));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let (n_, k_, i_) = (n as i64, k as i64, i as i64);
    let law = binomial_pmf(n, &ratio(1, n_));
    let mut lhs = Rational::zero();
    for (w, pw) in law.iter().enumerate() {
        let w = w as i64;
        lhs += pw * Rational::from_integer(binomial(w, i_) * binomial(n_ - w, k_ - i_));
    }
    lhs *= Rational::from_integer(factorial(i) * factorial(k - i));
    let rhs = Rational::from_integer(falling_factorial(n_, k_)?) * powi(&int(n_ - 1), k_ - i_)
        / powi(&int(n_), k_);
    if lhs != rhs {
        return Err(Error::Invariant(format!("moment identity fails: {lhs} != {rhs}")));
    }
    Ok(lhs)
}
