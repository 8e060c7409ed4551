//! Brute-force and Monte Carlo checks that share no code path with the
//! closed forms they verify.

pub mod characters;
pub mod empirical;
pub mod group_chain;
pub mod moments;
pub mod replace_k;
pub mod suite;
pub mod vector_chain;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{sum, Rational};
use crate::kernel::TransitionMatrix;

pub use characters::{character_table, hook_length_dim, mn_character};
pub use empirical::{empirical_distance, DiscreteLaw, DistanceEstimate, Metric, Reference, SeededSampler};
pub use group_chain::build_group_chain;
pub use moments::{exact_conditional_moments, ConditionalMoments};
pub use vector_chain::build_binary_vector_chain;

/// A chain on an explicitly enumerated state space.
#[derive(Debug, Clone, PartialEq)]
pub struct FullStateChain<S> {
    pub states: Vec<S>,
    pub kernel: TransitionMatrix,
    pub stationary: Vec<Rational>,
}

impl<S> FullStateChain<S> {
    /// Checks stochastic rows, a probability vector, and `pi M = pi`.
    pub fn validate(&self) -> Result<()> {
        if self.states.len() != self.kernel.dim() || self.stationary.len() != self.kernel.dim() {
            return Err(Error::Invariant("state, kernel and stationary sizes differ".into()));
        }
        if !self.kernel.is_row_stochastic() {
            return Err(Error::Invariant("kernel rows do not sum to 1".into()));
        }
        if !sum(self.stationary.iter().cloned()).is_one() {
            return Err(Error::Invariant("stationary law does not sum to 1".into()));
        }
        if self.kernel.apply_left(&self.stationary) != self.stationary {
            return Err(Error::Invariant("stationary law is not invariant".into()));
        }
        Ok(())
    }

    pub fn is_reversible(&self) -> bool {
        self.kernel.satisfies_detailed_balance(&self.stationary)
    }
}
