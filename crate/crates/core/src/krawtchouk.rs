//! q-Krawtchouk polynomials of the Hamming scheme H(n, q).
//!
//! `K_j(i) = sum_l (-1)^l (q-1)^(j-l) C(i, l) C(n-i, j-l)` is evaluated by its
//! defining sum and cached per context. The three-term recurrence, the swap
//! symmetry and both orthogonality relations are properties checked in tests,
//! never used as evaluators.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, powi, Rational};

/// Default upper bound on `n` for a context.
pub const DEFAULT_MAX_N: u32 = 64;

/// Parameters `(n, q)` of the Hamming scheme, with a lazily filled value cache.
#[derive(Debug)]
pub struct KrawtchoukContext {
    n: u32,
    q: u32,
    // row-major (j, i) -> K_j(i)
    table: OnceLock<Vec<BigInt>>,
}

impl Clone for KrawtchoukContext {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            q: self.q,
            table: self.table.clone(),
        }
    }
}

impl PartialEq for KrawtchoukContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.q == other.q
    }
}

impl Eq for KrawtchoukContext {}

impl KrawtchoukContext {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        Self::with_max_n(n, q, DEFAULT_MAX_N)
    }

    pub fn with_max_n(n: u32, q: u32, max_n: u32) -> Result<Self> {
        if n == 0 || n > max_n {
            return Err(out_of_range("n", n, format!("1 <= n <= {max_n}")));
        }
        if q < 2 {
            return Err(out_of_range("q", q, "q >= 2"));
        }
        Ok(Self {
            n,
            q,
            table: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|X| = q^n`.
    pub fn size(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), self.n as usize)
    }

    fn check_index(&self, name: &'static str, x: u32) -> Result<()> {
        if x > self.n {
            return Err(out_of_range(name, x, format!("0..={}", self.n)));
        }
        Ok(())
    }

    fn table(&self) -> &[BigInt] {
        self.table.get_or_init(|| {
            let m = self.n as usize + 1;
            let mut out = Vec::with_capacity(m * m);
            for j in 0..=self.n {
                for i in 0..=self.n {
                    out.push(defining_sum(self.n, self.q, j, i));
                }
            }
            out
        })
    }

    /// `K_j(i)` without range checks; callers guarantee `j, i <= n`.
    pub(crate) fn value(&self, j: u32, i: u32) -> &BigInt {
        &self.table()[j as usize * (self.n as usize + 1) + i as usize]
    }

    /// `K_j(i)` for `0 <= j, i <= n`.
    pub fn krawtchouk(&self, j: u32, i: u32) -> Result<BigInt> {
        self.check_index("j", j)?;
        self.check_index("i", i)?;
        Ok(self.value(j, i).clone())
    }

    /// `v_i = (q-1)^i C(n, i)`, the size of the i-th distance class.
    pub fn multiplicity(&self, i: u32) -> Result<BigInt> {
        self.check_index("i", i)?;
        Ok(self.v(i))
    }

    pub(crate) fn v(&self, i: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.q - 1), i as usize) * binomial(self.n as i64, i as i64)
    }

    /// Coefficients `A_{j, i+l}(i)` with `K_i(r) K_j(r) = sum_l A_{j,i+l}(i) K_{i+l}(r)`.
    pub fn linearization(&self, i: u32, j: u32) -> Result<LinearizationTable> {
        self.check_index("i", i)?;
        self.check_index("j", j)?;
        let (n, i_, j_) = (self.n as i64, i as i64, j as i64);
        let q2 = Rational::from_integer(BigInt::from(self.q as i64 - 2));
        let q1 = Rational::from_integer(BigInt::from(self.q as i64 - 1));
        let mut coefficients = BTreeMap::new();
        for l in -j_..=j_ {
            let target = i_ + l;
            if target < 0 || target > n {
                continue;
            }
            let mut acc = Rational::zero();
            for k in 0..=j_ {
                let c = binomial(j_ - k, k - l);
                if c.is_zero() {
                    continue;
                }
                // C(j-k, k-l) != 0 forces j - 2k + l >= 0
                let term = c * binomial(n - i_, k) * binomial(i_, j_ - k);
                if term.is_zero() {
                    continue;
                }
                acc += Rational::from_integer(term) * powi(&q2, j_ - 2 * k + l) * powi(&q1, k - l);
            }
            let scale = Rational::new(binomial(n, i_), binomial(n, target));
            let coeff = acc * scale;
            if !coeff.is_zero() {
                coefficients.insert(target as u32, coeff);
            }
        }
        Ok(LinearizationTable { i, j, coefficients })
    }
}

fn defining_sum(n: u32, q: u32, j: u32, i: u32) -> BigInt {
    let (n, q, j, i) = (n as i64, q as i64, j as i64, i as i64);
    let mut acc = BigInt::zero();
    for l in 0..=j {
        let term = num_traits::pow(BigInt::from(q - 1), (j - l) as usize)
            * binomial(i, l)
            * binomial(n - i, j - l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Expansion of `K_i K_j` in the Krawtchouk basis. Absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizationTable {
    pub i: u32,
    pub j: u32,
    pub coefficients: BTreeMap<u32, Rational>,
}

impl LinearizationTable {
    /// Coefficient of `K_m`; zero when `m` is not stored.
    pub fn get(&self, m: u32) -> Rational {
        self.coefficients.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluates `sum_m A_m K_m(r)` in `ctx`.
    pub fn evaluate(&self, ctx: &KrawtchoukContext, r: u32) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, a) in &self.coefficients {
            acc += a * Rational::from_integer(ctx.krawtchouk(*m, r)?);
        }
        Ok(acc)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coefficients.values().all(|a| !a.is_negative())
    }
}

/// Relative error check helper used by the identity suites: returns an
/// [`Error::Invariant`] naming `what` unless `lhs == rhs`.
pub(crate) fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, lhs: &T, rhs: &T) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::Invariant(format!("{what}: {lhs} != {rhs}")))
    }
}

/// Runs the Krawtchouk identity battery (both orthogonality relations, the
/// recurrence, swap symmetry, linearization and its nonnegativity) on one context.
pub fn check_identities(ctx: &KrawtchoukContext) -> Result<()> {
    let n = ctx.n();
    let q = BigInt::from(ctx.q());
    let size = ctx.size();
    let kq = |j: u32, i: u32| Rational::from_integer(ctx.value(j, i).clone());
    let vq = |i: u32| Rational::from_integer(ctx.v(i));

    for j in 0..=n {
        for l in 0..=n {
            let first: Rational = (0..=n)
                .map(|i| kq(i, j) * kq(i, l) / vq(i))
                .fold(Rational::zero(), |a, b| a + b);
            let expect1 = if j == l {
                Rational::from_integer(size.clone()) / vq(j)
            } else {
                Rational::zero()
            };
            expect_eq(&format!("orthogonality I (n={n}, j={j}, l={l})"), &first, &expect1)?;

            let second: BigInt = (0..=n)
                .map(|i| ctx.v(i) * ctx.value(j, i) * ctx.value(l, i))
                .fold(BigInt::zero(), |a, b| a + b);
            let expect2 = if j == l { &size * ctx.v(j) } else { BigInt::zero() };
            expect_eq(&format!("orthogonality II (n={n}, j={j}, l={l})"), &second, &expect2)?;
        }
    }

    let q1 = &q - BigInt::one();
    for j in 1..n {
        for i in 0..=n {
            let lhs = BigInt::from(j + 1) * ctx.value(j + 1, i);
            let coef = BigInt::from(n - j) * &q1 + BigInt::from(j) - &q * BigInt::from(i);
            let rhs = coef * ctx.value(j, i) - &q1 * BigInt::from(n - j + 1) * ctx.value(j - 1, i);
            expect_eq(&format!("recurrence (j={j}, i={i})"), &lhs, &rhs)?;
        }
    }

    let q1r = Rational::from_integer(q1);
    for i in 0..=n {
        for j in 0..=n {
            let rhs = powi(&q1r, j as i64 - i as i64)
                * Rational::new(binomial(n as i64, j as i64), binomial(n as i64, i as i64))
                * kq(i, j);
            expect_eq(&format!("swap (i={i}, j={j})"), &kq(j, i), &rhs)?;
        }
    }

    for i in 0..=n {
        for j in 0..=n {
            let table = ctx.linearization(i, j)?;
            if !table.all_nonnegative() {
                return Err(Error::Invariant(format!(
                    "negative linearization coefficient (i={i}, j={j})"
                )));
            }
            for r in 0..=n {
                let lhs = kq(i, r) * kq(j, r);
                expect_eq(&format!("linearization (i={i}, j={j}, r={r})"), &lhs, &table.evaluate(ctx, r)?)?;
            }
        }
    }
    Ok(())
}
