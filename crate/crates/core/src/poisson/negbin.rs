//! `r` coordinates with `P(X = x) = p (1-p)^x`, so `W` is negative binomial
//! with mean `lambda = r(1-p)/p`. The sum of `k` fresh coordinates is
//! negative binomial with parameters `(k, p)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, floor, int, powi, to_real, Rational};

use super::{check_k, check_p, Direction, PoissonBoundReport};

/// Which expectation bound covers a step count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// `(k-1)(1-p)/p < 1`.
    SmallK,
    /// `3 lambda^2 e^lambda <= r` and `k >= 1/(1-p)`.
    LargeK,
}

pub fn lambda(r: u32, p: &Rational) -> Rational {
    int(r as i64) * (Rational::one() - p) / p
}

fn check_rp(r: u32, p: &Rational) -> Result<()> {
    if r == 0 {
        return Err(out_of_range("r", r, "r >= 1"));
    }
    check_p(p)
}

/// `P(NB(r, p) = x) = C(r+x-1, x) (1-p)^x p^r`.
pub fn negbin_pmf(r: u32, p: &Rational, x: u32) -> Rational {
    Rational::from_integer(binomial(r as i64 + x as i64 - 1, x as i64))
        * powi(&(Rational::one() - p), x as i64)
        * powi(p, r as i64)
}

/// `floor((r-1)(1-p)/p)`.
pub fn mode_negbin(r: u32, p: &Rational) -> Result<BigInt> {
    check_rp(r, p)?;
    Ok(floor(&(int(r as i64 - 1) * (Rational::one() - p) / p)))
}

/// `a_k = max(1, floor((k-2)(1-p)/p))`.
pub fn a_k(k: u32, p: &Rational) -> BigInt {
    let f = floor(&(int(k as i64 - 2) * (Rational::one() - p) / p));
    f.max(BigInt::one())
}

/// `c_k = lambda a_k / (k C(k+a_k-2, k-1) (1-p)^a_k p^(k-1))`.
pub fn c_negbin(r: u32, p: &Rational, k: u32, lambda: &Rational) -> Result<Rational> {
    check_rp(r, p)?;
    check_k(k, r)?;
    let a = a_k(k, p)
        .to_i64()
        .ok_or_else(|| Error::Invalid("a_k does not fit in 64 bits".into()))?;
    let k_ = k as i64;
    let denom = int(k_)
        * Rational::from_integer(binomial(k_ + a - 2, k_ - 1))
        * powi(&(Rational::one() - p), a)
        * powi(p, k_ - 1);
    Ok(lambda * int(a) / denom)
}

/// Visits every `k`-subset of `0..r`.
fn for_each_subset(r: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == r - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Average over the `C(r, k)` subsets of the chance that the fresh negative
/// binomial sum moves `W` by one.
pub fn cond_prob_negbin(
    r: u32,
    p: &Rational,
    k: u32,
    direction: Direction,
    config: &[u32],
) -> Result<Rational> {
    check_rp(r, p)?;
    check_k(k, r)?;
    if config.len() != r as usize {
        return Err(Error::Invalid(format!(
            "configuration has {} coordinates, expected r = {r}",
            config.len()
        )));
    }
    let q = Rational::one() - p;
    let pk = powi(p, k as i64);
    let k_ = k as i64;
    let mut acc = Rational::zero();
    let mut count = 0u64;
    for_each_subset(r as usize, k as usize, |s| {
        count += 1;
        let sub: i64 = s.iter().map(|&i| config[i] as i64).sum();
        let term = match direction {
            Direction::Up => {
                Rational::from_integer(binomial(k_ + sub, k_ - 1)) * powi(&q, sub + 1) * &pk
            }
            Direction::Down if sub == 0 => Rational::zero(),
            Direction::Down => {
                Rational::from_integer(binomial(k_ + sub - 2, k_ - 1)) * powi(&q, sub - 1) * &pk
            }
        };
        acc += term;
    });
    Ok(acc / int(count as i64))
}

/// `E[c_k P(W' = W +- 1 | X)]`; both directions agree.
pub fn expected_scaled_prob_negbin(r: u32, p: &Rational, k: u32, _direction: Direction) -> Result<Rational> {
    let lam = lambda(r, p);
    let c = c_negbin(r, p, k, &lam)?;
    let q = Rational::one() - p;
    let two_p = int(2) - p;
    let x = &q * &q / (p * &two_p);
    let k_ = k as i64;
    let mut s = Rational::zero();
    for l in 0..k_ {
        s += Rational::from_integer(binomial(k_, l + 1) * binomial(k_ + l - 1, l)) * powi(&x, l);
    }
    Ok(c * q * powi(p, k_) * s / powi(&two_p, k_))
}

/// The covering regime, if any.
pub fn regime(r: u32, p: &Rational, k: u32) -> Option<Regime> {
    let q = Rational::one() - p;
    if int(k as i64 - 1) * &q / p < Rational::one() {
        return Some(Regime::SmallK);
    }
    let lam = to_real(&lambda(r, p));
    let large_r = 3.0 * lam * lam * lam.exp() <= r as f64;
    if large_r && int(k as i64) * &q >= Rational::one() {
        return Some(Regime::LargeK);
    }
    None
}

/// Bound with the constant `c_k`, for `k` inside a covered regime.
/// `c_lambda` is required when `lambda > 1`.
pub fn poisson_bound_negbin(
    r: u32,
    p: &Rational,
    k: u32,
    c_lambda: Option<f64>,
) -> Result<PoissonBoundReport> {
    check_rp(r, p)?;
    check_k(k, r)?;
    let reg = regime(r, p, k).ok_or(Error::UncoveredRegime { k })?;
    let lam = lambda(r, p);
    let c = c_negbin(r, p, k, &lam)?;
    let e = expected_scaled_prob_negbin(r, p, k, Direction::Up)?;
    let term = &lam - e;
    PoissonBoundReport::assemble(c, lam, term.clone(), term, c_lambda, Some(reg))
}

/// `(1 - p^k) / (k (1-p) (p(2-p))^(k-1))`, the small-k envelope.
pub fn small_k_envelope(p: &Rational, k: u32) -> Rational {
    let k_ = k as i64;
    (Rational::one() - powi(p, k_))
        / (int(k_) * (Rational::one() - p) * powi(&(p * (int(2) - p)), k_ - 1))
}

/// `((k-1) / (k (2-p)^(k-2))) (((1-p)/((2-p)p) + 1)^k - 1)`, the large-k envelope.
pub fn large_k_envelope(p: &Rational, k: u32) -> Rational {
    let k_ = k as i64;
    let two_p = int(2) - p;
    let base = (Rational::one() - p) / (&two_p * p) + Rational::one();
    int(k_ - 1) / (int(k_) * powi(&two_p, k_ - 2)) * (powi(&base, k_) - Rational::one())
}

/// `(e^l l^2 / (7r), e^l - (1 + l/r)^r, e^l l^2 / (2r))`.
pub fn negbin_sandwich(lambda: f64, r: f64) -> (f64, f64, f64) {
    let el = lambda.exp();
    let mid = -el * (r * (lambda / r).ln_1p() - lambda).exp_m1();
    (el * lambda * lambda / (7.0 * r), mid, el * lambda * lambda / (2.0 * r))
}

/// Smallest `M` with `r (1-p)^(M+1) < tol`, so coordinates above `M`
/// carry total mass below `tol`.
pub fn truncation_level(r: u32, p: &Rational, tol: f64) -> Result<u32> {
    check_rp(r, p)?;
    if !(tol > 0.0) {
        return Err(out_of_range("tol", tol, "tol > 0"));
    }
    let q = to_real(&(Rational::one() - p));
    let mut m = 0u32;
    let mut tail = r as f64 * q;
    while tail >= tol {
        m += 1;
        tail *= q;
        if m > 100_000 {
            return Err(Error::Invalid("truncation level exceeds 100000".into()));
        }
    }
    Ok(m)
}
