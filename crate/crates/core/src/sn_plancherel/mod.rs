//! The random-transposition chain lifted to irreducible representations of S_n.
//!
//! Representations are partitions `lambda`. The walk generated by a class `C`
//! has eigenvalue `chi^lambda(C) / dim(lambda)` on `lambda`; for the four
//! classes within two transpositions of the identity these ratios are
//! polynomials in the contents of `lambda`.

mod partition;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bound::{check_a, DetailKey, SteinBoundReport};
use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, binomial_q, int, ratio, Rational};

pub use partition::{partitions_of, Partition};

/// Conjugacy classes reachable in at most two transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConjugacyClassTag {
    Id,
    Transposition,
    ThreeCycle,
    TwoTwo,
}

impl ConjugacyClassTag {
    pub const ALL: [ConjugacyClassTag; 4] = [
        ConjugacyClassTag::Id,
        ConjugacyClassTag::Transposition,
        ConjugacyClassTag::ThreeCycle,
        ConjugacyClassTag::TwoTwo,
    ];

    /// Smallest `n` in which the class exists.
    pub fn min_n(self) -> u32 {
        match self {
            ConjugacyClassTag::Id => 1,
            ConjugacyClassTag::Transposition => 2,
            ConjugacyClassTag::ThreeCycle => 3,
            ConjugacyClassTag::TwoTwo => 4,
        }
    }

    pub fn cycle_type(self, n: u32) -> Result<Partition> {
        self.check_n(n)?;
        let mut parts = match self {
            ConjugacyClassTag::Id => vec![],
            ConjugacyClassTag::Transposition => vec![2],
            ConjugacyClassTag::ThreeCycle => vec![3],
            ConjugacyClassTag::TwoTwo => vec![2, 2],
        };
        let moved: u32 = parts.iter().sum();
        parts.extend(std::iter::repeat(1).take((n - moved) as usize));
        Partition::new(parts)
    }

    pub fn class_size(self, n: u32) -> Result<BigInt> {
        Ok(self.cycle_type(n)?.class_size())
    }

    fn check_n(self, n: u32) -> Result<()> {
        if n < self.min_n() {
            return Err(out_of_range("n", n, format!("n >= {} for class {self}", self.min_n())));
        }
        Ok(())
    }
}

impl fmt::Display for ConjugacyClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjugacyClassTag::Id => "id",
            ConjugacyClassTag::Transposition => "(2)",
            ConjugacyClassTag::ThreeCycle => "(3)",
            ConjugacyClassTag::TwoTwo => "(2,2)",
        })
    }
}

/// `sum c` and `sum c^2` over the boxes, where `c = column - row`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentStats {
    pub sum1: Rational,
    pub sum2: Rational,
}

// Rows may end in a zero part here.
fn row_contents(rows: &[u32]) -> (i64, i64) {
    let mut s1 = 0i64;
    let mut s2 = 0i64;
    for (r, &len) in rows.iter().enumerate() {
        let r = r as i64 + 1;
        for j in 1..=len as i64 {
            s1 += j - r;
            s2 += (j - r) * (j - r);
        }
    }
    (s1, s2)
}

pub fn contents(lambda: &Partition) -> ContentStats {
    let (s1, s2) = row_contents(lambda.parts());
    ContentStats {
        sum1: int(s1),
        sum2: int(s2),
    }
}

/// `chi^lambda(K) / dim(lambda)` from the content sums.
pub fn character_ratio(lambda: &Partition, k: ConjugacyClassTag) -> Result<Rational> {
    let n = lambda.n();
    k.check_n(n)?;
    let ContentStats { sum1, sum2 } = contents(lambda);
    let n_ = n as i64;
    Ok(match k {
        ConjugacyClassTag::Id => Rational::one(),
        ConjugacyClassTag::Transposition => int(2) * sum1 / int(n_ * (n_ - 1)),
        ConjugacyClassTag::ThreeCycle => {
            int(3) * (sum2 - binomial_q(n_, 2)) / int(n_ * (n_ - 1) * (n_ - 2))
        }
        ConjugacyClassTag::TwoTwo => {
            (&sum1 * &sum1 - int(3) * sum2 + int(n_ * (n_ - 1))) / (int(6) * binomial_q(n_, 4))
        }
    })
}

fn nontrivial(lambda: &Partition) -> Result<()> {
    if lambda.is_trivial() {
        return Err(Error::TrivialRepresentation { n: lambda.n() });
    }
    Ok(())
}

/// `a_lambda = 1 - chi^lambda(2) / dim(lambda)`.
pub fn a_lambda(lambda: &Partition) -> Result<Rational> {
    nontrivial(lambda)?;
    Ok(Rational::one() - character_ratio(lambda, ConjugacyClassTag::Transposition)?)
}

/// `T_K(lambda) = (chi^lambda(K) / dim(lambda) - 1) / a_lambda`.
pub fn t_functional(lambda: &Partition, k: ConjugacyClassTag) -> Result<Rational> {
    let a = a_lambda(lambda)?;
    Ok((character_ratio(lambda, k)? - Rational::one()) / a)
}

/// The succession order: with `k` the number of rows of `lambda` and `mu`
/// padded with zeros, `lambda_1 >= mu_1`, `lambda_i = mu_i` for `1 < i < k`,
/// and `lambda_k <= mu_k`.
pub fn succeeds(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.n() != mu.n() {
        return Err(Error::Invalid(format!(
            "{lambda} and {mu} partition different integers"
        )));
    }
    let k = lambda.len();
    Ok(lambda.part(1) >= mu.part(1)
        && (2..k).all(|i| lambda.part(i) == mu.part(i))
        && lambda.part(k) <= mu.part(k))
}

/// Where a single-box move from the first row lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepTarget {
    /// The current last row.
    LastRow,
    /// A new row below the last one.
    NewRow,
}

// lambda with the trailing zero row appended for NewRow.
fn step_rows(lambda: &Partition, target: StepTarget) -> Vec<u32> {
    let mut rows = lambda.parts().to_vec();
    if target == StepTarget::NewRow {
        rows.push(0);
    }
    rows
}

/// `(lambda_1 - 1, lambda_2, ..., lambda_k + 1)`.
pub fn succession_step(lambda: &Partition, target: StepTarget) -> Result<Partition> {
    let mut rows = step_rows(lambda, target);
    let k = rows.len();
    if k < 2 {
        return Err(Error::Invalid(format!(
            "{lambda} has a single row; use a new-row step"
        )));
    }
    rows[0] -= 1;
    rows[k - 1] += 1;
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!(
            "moving a box of {lambda} to row {k} breaks weak decrease"
        )));
    }
    Partition::new(rows)
}

// Checks the step is admissible and returns (rows, joint content sums, n).
fn criterion_setup(lambda: &Partition, target: StepTarget) -> Result<(Vec<u32>, i64, i64)> {
    nontrivial(lambda)?;
    succession_step(lambda, target)?;
    let rows = step_rows(lambda, target);
    let mut joint = rows.clone();
    joint[0] -= 1;
    let (s1, s2) = row_contents(&joint);
    Ok((rows, s1, s2))
}

/// Sign of `T_(3)(mu) - T_(3)(lambda)` for `mu = succession_step(lambda, target)`.
pub fn f_criterion(lambda: &Partition, target: StepTarget) -> Result<Rational> {
    let (rows, s1, s2) = criterion_setup(lambda, target)?;
    let n = lambda.n() as i64;
    let k = rows.len() as i64;
    let (l1, lk) = (rows[0] as i64, rows[k as usize - 1] as i64);
    let c2 = binomial(n, 2);
    let c3 = binomial(n, 3);
    let f = BigInt::from(l1 + lk - k) * (BigInt::from(s1) - &c2)
        + BigInt::from((l1 - 1) * (lk + 1 - k))
        - BigInt::from(s2)
        + &c2
        + BigInt::from(2) * c3;
    Ok(Rational::from_integer(f))
}

/// Sign of `T_(2,2)(mu) - T_(2,2)(lambda)` for `mu = succession_step(lambda, target)`.
pub fn h_criterion(lambda: &Partition, target: StepTarget) -> Result<Rational> {
    let (rows, s1, s2) = criterion_setup(lambda, target)?;
    let n = lambda.n() as i64;
    let k = rows.len() as i64;
    let (l1, lk) = (rows[0] as i64, rows[k as usize - 1] as i64);
    let c2 = binomial(n, 2);
    let c4 = binomial(n, 4);
    let s1b = BigInt::from(s1);
    let h = BigInt::from(2 * (l1 + lk - k)) * (&c2 - &s1b)
        - BigInt::from(2 * (l1 - 1) * (lk + 1 - k))
        - BigInt::from(2) * &c2 * &s1b
        + &s1b * &s1b
        + BigInt::from(3 * s2)
        + BigInt::from(6) * c4
        - BigInt::from(2) * c2;
    Ok(Rational::from_integer(h))
}

/// Two-step class law of the transposition walk from the identity.
pub fn p2_transpositions(n: u32) -> Result<BTreeMap<ConjugacyClassTag, Rational>> {
    if n < 4 {
        return Err(out_of_range("n", n, "n >= 4"));
    }
    let n_ = n as i64;
    let c2 = binomial_q(n_, 2);
    let mut m = BTreeMap::new();
    m.insert(ConjugacyClassTag::Id, Rational::one() / &c2);
    m.insert(ConjugacyClassTag::ThreeCycle, int(2 * (n_ - 2)) / &c2);
    m.insert(ConjugacyClassTag::TwoTwo, binomial_q(n_ - 2, 2) / &c2);
    Ok(m)
}

pub type RatioProvider = Box<dyn Fn(&Partition, ConjugacyClassTag) -> Result<Rational> + Send + Sync>;

/// Data for the bound of a walk generated by one self-inverse conjugacy class.
pub struct GroupBoundInput {
    pub generator: ConjugacyClassTag,
    /// `|C|`.
    pub class_size: BigInt,
    pub p2: BTreeMap<ConjugacyClassTag, Rational>,
    pub class_sizes: BTreeMap<ConjugacyClassTag, BigInt>,
    /// `chi^tau(K) / dim(tau)`.
    pub ratio_provider: RatioProvider,
}

impl fmt::Debug for GroupBoundInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupBoundInput")
            .field("generator", &self.generator)
            .field("class_size", &self.class_size)
            .field("p2", &self.p2)
            .field("class_sizes", &self.class_sizes)
            .finish_non_exhaustive()
    }
}

impl GroupBoundInput {
    /// S_n generated by transpositions, ratios from contents.
    pub fn symmetric_transpositions(n: u32) -> Result<Self> {
        let p2 = p2_transpositions(n)?;
        let class_sizes = p2
            .keys()
            .map(|&k| Ok((k, k.class_size(n)?)))
            .collect::<Result<_>>()?;
        let total: Rational = p2.values().fold(Rational::zero(), |a, b| a + b);
        if !total.is_one() {
            return Err(Error::Invariant(format!("p2 sums to {total}")));
        }
        Ok(Self {
            generator: ConjugacyClassTag::Transposition,
            class_size: ConjugacyClassTag::Transposition.class_size(n)?,
            p2,
            class_sizes,
            ratio_provider: Box::new(character_ratio),
        })
    }
}

/// Normal bound for the chain `L_tau` on representations.
pub fn stein_bound_group(input: &GroupBoundInput, tau: &Partition) -> Result<SteinBoundReport> {
    nontrivial(tau)?;
    let a = Rational::one() - (input.ratio_provider)(tau, input.generator)?;
    check_a(&a)?;
    let c = Rational::from_integer(input.class_size.clone());
    let mut var = Rational::zero();
    let mut mom = Rational::zero();
    let mut detail = BTreeMap::new();
    for (&k, p) in &input.p2 {
        let size = input
            .class_sizes
            .get(&k)
            .ok_or_else(|| Error::Invalid(format!("class size of {k} unavailable")))?;
        let w = p * p / Rational::from_integer(size.clone());
        let t = ((input.ratio_provider)(tau, k)? - Rational::one()) / &a;
        if k != ConjugacyClassTag::Id {
            let d = &t + int(2);
            var += &w * &d * &d;
        }
        mom += &w * (int(8) + int(6) * &t);
        detail.insert(DetailKey::Class(k), t);
    }
    let csq = &c * &c;
    SteinBoundReport::assemble(a, &csq * var, csq * mom, detail)
}

/// Bound for every nontrivial `lambda |- n`, ranked ascending; partitions
/// with `a_lambda >= 1` are returned separately.
#[allow(clippy::type_complexity)]
pub fn exhaustive_group_bounds(
    n: u32,
) -> Result<(Vec<(Partition, SteinBoundReport)>, Vec<(Partition, Error)>)> {
    let input = GroupBoundInput::symmetric_transpositions(n)?;
    let evaluated: Vec<(Partition, Result<SteinBoundReport>)> = partitions_of(n)
        .into_par_iter()
        .filter(|p| !p.is_trivial())
        .map(|p| {
            let r = stein_bound_group(&input, &p);
            (p, r)
        })
        .collect();
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for (p, r) in evaluated {
        match r {
            Ok(r) => ok.push((p, r)),
            Err(e @ Error::DegenerateStep { .. }) => rejected.push((p, e)),
            Err(e) => return Err(e),
        }
    }
    ok.sort_by(|(pa, ra), (pb, rb)| ra.cmp_bound(rb).then_with(|| pb.cmp(pa)));
    Ok((ok, rejected))
}

/// `C(n, 2)`, the number of transpositions, as a rational.
pub fn transposition_count(n: u32) -> Rational {
    ratio(n as i64 * (n as i64 - 1), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn content_examples() {
        assert_eq!(contents(&p(&[5, 3, 3, 1])).sum1, int(4));
        for n in 1..8 {
            assert_eq!(contents(&Partition::trivial(n)).sum1, binomial_q(n as i64, 2));
        }
        assert_eq!(contents(&p(&[1, 1, 1])).sum1, int(-3));
        assert_eq!(contents(&p(&[2, 1])).sum2, int(2));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            character_ratio(&p(&[5, 3, 3, 1]), ConjugacyClassTag::Transposition).unwrap(),
            ratio(2, 33)
        );
        for n in 4..10 {
            let tau = Partition::defining(n).unwrap();
            assert_eq!(
                character_ratio(&tau, ConjugacyClassTag::Transposition).unwrap(),
                ratio(n as i64 - 3, n as i64 - 1)
            );
            assert_eq!(character_ratio(&tau, ConjugacyClassTag::Id).unwrap(), int(1));
            assert_eq!(a_lambda(&tau).unwrap(), ratio(2, n as i64 - 1));
            assert_eq!(t_functional(&tau, ConjugacyClassTag::ThreeCycle).unwrap(), ratio(-3, 2));
            assert_eq!(t_functional(&tau, ConjugacyClassTag::TwoTwo).unwrap(), int(-2));
        }
        assert!(character_ratio(&p(&[2, 1]), ConjugacyClassTag::TwoTwo).is_err());
        assert!(character_ratio(&p(&[1]), ConjugacyClassTag::Transposition).is_err());
    }

    #[test]
    fn sign_representation() {
        for n in 2..9 {
            let sign = Partition::new(vec![1; n as usize]).unwrap();
            assert_eq!(a_lambda(&sign).unwrap(), int(2));
        }
        assert!(matches!(
            a_lambda(&Partition::trivial(5)),
            Err(Error::TrivialRepresentation { n: 5 })
        ));
    }

    #[test]
    fn t_functional_fixed_values() {
        for lam in partitions_of(7).into_iter().filter(|l| !l.is_trivial()) {
            assert_eq!(t_functional(&lam, ConjugacyClassTag::Id).unwrap(), int(0));
            assert_eq!(t_functional(&lam, ConjugacyClassTag::Transposition).unwrap(), int(-1));
        }
    }

    #[test]
    fn succession_examples() {
        assert!(succeeds(&p(&[4, 2]), &p(&[3, 3])).unwrap());
        assert!(!succeeds(&p(&[3, 3]), &p(&[4, 2])).unwrap());
        for lam in partitions_of(6) {
            assert!(succeeds(&lam, &lam).unwrap());
        }
        let tau = Partition::defining(6).unwrap();
        for mu in partitions_of(6).into_iter().filter(|m| !m.is_trivial()) {
            assert!(succeeds(&tau, &mu).unwrap(), "{mu}");
        }
        assert!(succeeds(&p(&[2, 1]), &p(&[3, 1])).is_err());
    }

    #[test]
    fn step_examples() {
        assert_eq!(succession_step(&p(&[3, 1]), StepTarget::LastRow).unwrap(), p(&[2, 2]));
        assert!(succession_step(&p(&[2, 2]), StepTarget::NewRow).is_err());
        assert!(succession_step(&p(&[2, 2]), StepTarget::LastRow).is_err());
        assert_eq!(
            succession_step(&Partition::trivial(5), StepTarget::NewRow).unwrap(),
            p(&[4, 1])
        );
        assert!(succession_step(&Partition::trivial(5), StepTarget::LastRow).is_err());
    }

    #[test]
    fn criteria_small_cases() {
        let l = p(&[2, 1]);
        assert!(f_criterion(&l, StepTarget::NewRow).unwrap() >= int(0));
        assert!(h_criterion(&l, StepTarget::NewRow).unwrap() >= int(0));
        for n in 4..10 {
            let tau = Partition::defining(n).unwrap();
            assert!(f_criterion(&tau, StepTarget::NewRow).unwrap() >= int(0));
        }
        assert!(f_criterion(&Partition::trivial(4), StepTarget::NewRow).is_err());
    }

    #[test]
    fn criteria_track_t_differences() {
        let sign = |x: &Rational| x.cmp(&Rational::zero());
        for n in 4..=8 {
            for lam in partitions_of(n).into_iter().filter(|l| !l.is_trivial()) {
                for target in [StepTarget::LastRow, StepTarget::NewRow] {
                    let Ok(mu) = succession_step(&lam, target) else { continue };
                    let d3 = t_functional(&mu, ConjugacyClassTag::ThreeCycle).unwrap()
                        - t_functional(&lam, ConjugacyClassTag::ThreeCycle).unwrap();
                    let d22 = t_functional(&mu, ConjugacyClassTag::TwoTwo).unwrap()
                        - t_functional(&lam, ConjugacyClassTag::TwoTwo).unwrap();
                    assert_eq!(sign(&f_criterion(&lam, target).unwrap()), sign(&d3), "{lam}");
                    assert_eq!(sign(&h_criterion(&lam, target).unwrap()), sign(&d22), "{lam}");
                }
            }
        }
    }

    #[test]
    fn p2_examples() {
        let m = p2_transpositions(4).unwrap();
        assert_eq!(m[&ConjugacyClassTag::Id], ratio(1, 6));
        assert_eq!(m[&ConjugacyClassTag::ThreeCycle], ratio(2, 3));
        assert_eq!(m[&ConjugacyClassTag::TwoTwo], ratio(1, 6));
        assert!(!m.contains_key(&ConjugacyClassTag::Transposition));
        assert!(p2_transpositions(3).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(ConjugacyClassTag::Transposition.class_size(6).unwrap(), BigInt::from(15));
        assert_eq!(ConjugacyClassTag::ThreeCycle.class_size(6).unwrap(), BigInt::from(40));
        assert_eq!(ConjugacyClassTag::TwoTwo.class_size(6).unwrap(), BigInt::from(45));
        assert_eq!(ConjugacyClassTag::Id.class_size(6).unwrap(), BigInt::from(1));
    }

    #[test]
    fn group_bound_prefers_defining() {
        for n in 5..=8 {
            let (ranked, _) = exhaustive_group_bounds(n).unwrap();
            assert_eq!(ranked[0].0, Partition::defining(n).unwrap());
            let r = &ranked[0].1;
            assert_eq!(r.per_level_detail[&DetailKey::Class(ConjugacyClassTag::TwoTwo)], int(-2));
        }
        let input = GroupBoundInput::symmetric_transpositions(6).unwrap();
        assert!(stein_bound_group(&input, &Partition::trivial(6)).is_err());
    }
}
