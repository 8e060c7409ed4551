//! Poisson approximation through the replace-k chain: resample `k`
//! uniformly chosen coordinates of an i.i.d. vector and compare the sum
//! before and after.
//!
//! For a constant `c` the error is at most
//! `C_lambda * (E|lambda - c P(W'=W+1|X)| + E|W - c P(W'=W-1|X)|)`.

pub mod binomial;
pub mod negbin;
pub mod tv;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{to_real, Rational};

pub use binomial::{
    c_binomial, c_binomial_alternative, cond_prob_binomial, expected_scaled_prob_binomial,
    poisson_bound_binomial, poisson_bound_binomial_with_constant, poisson_moment_identity,
};
pub use negbin::{
    c_negbin, cond_prob_negbin, expected_scaled_prob_negbin, mode_negbin, poisson_bound_negbin,
    Regime,
};
pub use tv::{tv_distance, TruncatedPmf, TvEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Up,
    Down,
}

/// Marginal law of each coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Marginal {
    /// `n` Bernoulli(1/n) coordinates.
    Bernoulli { n: u32 },
    /// `r` coordinates with `P(X = x) = p (1-p)^x`.
    Geometric { r: u32, p: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplaceKModel {
    pub marginal: Marginal,
    pub k: u32,
}

impl ReplaceKModel {
    pub fn binomial(n: u32, k: u32) -> Result<Self> {
        if n < 2 {
            return Err(out_of_range("n", n, "n >= 2"));
        }
        check_k(k, n)?;
        Ok(Self {
            marginal: Marginal::Bernoulli { n },
            k,
        })
    }

    pub fn negbin(r: u32, p: Rational, k: u32) -> Result<Self> {
        if r == 0 {
            return Err(out_of_range("r", r, "r >= 1"));
        }
        check_p(&p)?;
        check_k(k, r)?;
        Ok(Self {
            marginal: Marginal::Geometric { r, p },
            k,
        })
    }

    /// Coordinate count.
    pub fn count(&self) -> u32 {
        match &self.marginal {
            Marginal::Bernoulli { n } => *n,
            Marginal::Geometric { r, .. } => *r,
        }
    }

    /// Mean of `W`.
    pub fn lambda(&self) -> Rational {
        match &self.marginal {
            Marginal::Bernoulli { .. } => Rational::one(),
            Marginal::Geometric { r, p } => negbin::lambda(*r, p),
        }
    }

    /// Bound with the default constant for this marginal.
    pub fn bound(&self, c_lambda: Option<f64>) -> Result<PoissonBoundReport> {
        match &self.marginal {
            Marginal::Bernoulli { n } => poisson_bound_binomial(*n, self.k),
            Marginal::Geometric { r, p } => poisson_bound_negbin(*r, p, self.k, c_lambda),
        }
    }
}

pub(crate) fn check_k(k: u32, count: u32) -> Result<()> {
    if k == 0 || k > count {
        return Err(out_of_range("k", k, format!("1 <= k <= {count}")));
    }
    Ok(())
}

pub(crate) fn check_p(p: &Rational) -> Result<()> {
    if !p.is_positive() || *p >= Rational::one() {
        return Err(out_of_range("p", p, "0 < p < 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonBoundReport {
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub c: Rational,
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub lambda: Rational,
    /// `E|lambda - c P(W'=W+1|X)|`.
    pub term_up: f64,
    /// `E|W - c P(W'=W-1|X)|`.
    pub term_down: f64,
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub term_up_exact: Rational,
    #[serde(serialize_with = "crate::exactmath::serialize_rational")]
    pub term_down_exact: Rational,
    pub c_lambda: f64,
    /// True when `C_lambda` was supplied by the caller rather than known to be 1.
    pub c_lambda_external: bool,
    pub total: f64,
    /// Present when `C_lambda = 1`.
    #[serde(serialize_with = "crate::exactmath::serialize_opt_rational")]
    pub total_exact: Option<Rational>,
    pub regime: Option<Regime>,
}

impl PoissonBoundReport {
    pub(crate) fn assemble(
        c: Rational,
        lambda: Rational,
        term_up_exact: Rational,
        term_down_exact: Rational,
        c_lambda: Option<f64>,
        regime: Option<Regime>,
    ) -> Result<Self> {
        if term_up_exact.is_negative() || term_down_exact.is_negative() {
            return Err(Error::Invariant(format!(
                "negative absolute-value term ({term_up_exact}, {term_down_exact})"
            )));
        }
        let (cl, external) = resolve_c_lambda(&lambda, c_lambda)?;
        let sum = &term_up_exact + &term_down_exact;
        let total_exact = (!external).then(|| sum.clone());
        let total = cl * to_real(&sum);
        if !total.is_finite() {
            return Err(Error::Invariant("non-finite Poisson bound".into()));
        }
        Ok(Self {
            term_up: to_real(&term_up_exact),
            term_down: to_real(&term_down_exact),
            c,
            lambda,
            term_up_exact,
            term_down_exact,
            c_lambda: cl,
            c_lambda_external: external,
            total,
            total_exact,
            regime,
        })
    }
}

/// `C_lambda = 1` for `lambda <= 1`; otherwise the caller must supply it.
fn resolve_c_lambda(lambda: &Rational, supplied: Option<f64>) -> Result<(f64, bool)> {
    if *lambda <= Rational::one() {
        return Ok((1.0, false));
    }
    match supplied {
        Some(c) if c.is_finite() && c > 0.0 => Ok((c, true)),
        Some(c) => Err(out_of_range("c_lambda", c, "finite and positive")),
        None => Err(Error::MissingCLambda {
            lambda: to_real(lambda),
        }),
    }
}
