//! Normal-approximation bound assembly.
//!
//! For an exchangeable pair with `E(W'|W) = (1-a) W` the bound is
//! `sqrt(V) + (R / pi)^(1/4)` with
//! `V = Var(E[(W'-W)^2 | W]) / a^2` and `R = E(W'-W)^4 / a`.
//! Both radicands are kept exactly so bounds can be ranked without rounding.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{to_real, Rational};
use crate::sn_plancherel::ConjugacyClassTag;

/// Key of a per-level (Hamming) or per-class (group) detail entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DetailKey {
    Level(u32),
    Class(ConjugacyClassTag),
}

impl std::fmt::Display for DetailKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetailKey::Level(j) => write!(f, "level {j}"),
            DetailKey::Class(k) => write!(f, "class {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinBoundReport {
    /// Linearity constant, in (0, 1).
    pub a: Rational,
    /// `V`; `variance_term = sqrt(V)`.
    pub variance_sq: Rational,
    /// `R`; `moment_term = (R / pi)^(1/4)`.
    pub moment_radicand: Rational,
    pub variance_term: f64,
    pub moment_term: f64,
    pub total: f64,
    /// `(lambda_j - 1) / a` per level or class.
    pub per_level_detail: BTreeMap<DetailKey, Rational>,
}

impl SteinBoundReport {
    pub fn assemble(
        a: Rational,
        variance_sq: Rational,
        moment_radicand: Rational,
        per_level_detail: BTreeMap<DetailKey, Rational>,
    ) -> Result<Self> {
        check_a(&a)?;
        if variance_sq.is_negative() || moment_radicand.is_negative() {
            return Err(Error::Invariant(format!(
                "negative radicand (V = {variance_sq}, R = {moment_radicand})"
            )));
        }
        let variance_term = to_real(&variance_sq).sqrt();
        let moment_term = (to_real(&moment_radicand) / PI).powf(0.25);
        let total = variance_term + moment_term;
        if !total.is_finite() {
            return Err(Error::Invariant(format!("non-finite bound for a = {a}")));
        }
        Ok(Self {
            a,
            variance_sq,
            moment_radicand,
            variance_term,
            moment_term,
            total,
            per_level_detail,
        })
    }

    /// True when both radicands are `<=` the other's, so `self.total <= other.total` exactly.
    pub fn dominates(&self, other: &Self) -> bool {
        self.variance_sq <= other.variance_sq && self.moment_radicand <= other.moment_radicand
    }

    /// Total order used for rankings: float total, then `(V, R)` exactly.
    pub fn cmp_bound(&self, other: &Self) -> Ordering {
        self.total
            .total_cmp(&other.total)
            .then_with(|| self.variance_sq.cmp(&other.variance_sq))
            .then_with(|| self.moment_radicand.cmp(&other.moment_radicand))
    }
}

pub(crate) fn check_a(a: &Rational) -> Result<()> {
    if a.is_positive() && *a < Rational::one() {
        Ok(())
    } else {
        Err(Error::DegenerateStep { a: a.to_string() })
    }
}
