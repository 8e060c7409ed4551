//! Plancherel chains on the levels of the Hamming scheme H(n, q).
//!
//! States are distances `0..=n` from a reference word. A step first draws the
//! step size `T ~ b`, then moves by the kernel `L_T`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bound::{check_a, DetailKey, SteinBoundReport};
use crate::error::{out_of_range, Error, Result};
use crate::exactmath::{binomial, int, powi, ratio, sum, Rational};
use crate::kernel::TransitionMatrix;
use crate::krawtchouk::KrawtchoukContext;

/// Step-size law `(b_0, ..., b_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixingDistribution {
    weights: Vec<Rational>,
}

impl MixingDistribution {
    /// Checks nonnegativity and `sum b_t = 1`. A point mass at 0 is accepted
    /// here and rejected by [`HammingModel::linearity_constant`].
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Invalid("empty mixing distribution".into()));
        }
        if let Some(t) = weights.iter().position(|b| b.is_negative()) {
            return Err(Error::Invalid(format!("negative weight b_{t} = {}", weights[t])));
        }
        let total = sum(weights.iter().cloned());
        if !total.is_one() {
            return Err(Error::Invalid(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn point_mass(n: u32, t: u32) -> Result<Self> {
        if t > n {
            return Err(out_of_range("t", t, format!("0..={n}")));
        }
        let mut w = vec![Rational::zero(); n as usize + 1];
        w[t as usize] = Rational::one();
        Ok(Self { weights: w })
    }

    /// Uniform over the listed step sizes (duplicates ignored).
    pub fn uniform(n: u32, support: &[u32]) -> Result<Self> {
        let mut s: Vec<u32> = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::Invalid("empty support".into()));
        }
        if let Some(&t) = s.iter().find(|&&t| t > n) {
            return Err(out_of_range("t", t, format!("0..={n}")));
        }
        let mut w = vec![Rational::zero(); n as usize + 1];
        for &t in &s {
            w[t as usize] = ratio(1, s.len() as i64);
        }
        Ok(Self { weights: w })
    }

    /// Parses `"t:w,t:w"` where each `w` is a rational like `1/2` or `0.25`.
    pub fn parse(n: u32, spec: &str) -> Result<Self> {
        let mut w = vec![Rational::zero(); n as usize + 1];
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (t, b) = item
                .split_once(':')
                .ok_or_else(|| Error::Invalid(format!("mixing entry '{item}' is not t:w")))?;
            let t: u32 = t
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad step size '{t}'")))?;
            if t > n {
                return Err(out_of_range("t", t, format!("0..={n}")));
            }
            let b = crate::exactmath::parse_rational(b)
                .ok_or_else(|| Error::Invalid(format!("bad weight '{b}'")))?;
            w[t as usize] += b;
        }
        Self::new(w)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Largest admissible step size.
    pub fn n(&self) -> u32 {
        self.weights.len() as u32 - 1
    }

    pub fn get(&self, t: u32) -> Rational {
        self.weights.get(t as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(t, b_t)` with `b_t > 0`.
    pub fn support(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(t, b)| (t as u32, b))
    }

    /// Drops the holding weight `b_0` and renormalizes.
    pub fn without_holding(&self) -> Result<Self> {
        let rest = Rational::one() - &self.weights[0];
        if rest.is_zero() {
            return Err(Error::Invalid("b_0 = 1 leaves nothing to renormalize".into()));
        }
        let mut w: Vec<Rational> = self.weights.iter().map(|b| b / &rest).collect();
        w[0] = Rational::zero();
        Ok(Self { weights: w })
    }
}

impl fmt::Display for MixingDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support().map(|(t, b)| format!("{t}:{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Hamming scheme parameters together with a step-size law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingModel {
    ctx: KrawtchoukContext,
    mixing: MixingDistribution,
}

impl HammingModel {
    pub fn new(ctx: KrawtchoukContext, mixing: MixingDistribution) -> Result<Self> {
        if mixing.n() != ctx.n() {
            return Err(Error::Invalid(format!(
                "mixing has {} weights, expected n + 1 = {}",
                mixing.weights.len(),
                ctx.n() + 1
            )));
        }
        Ok(Self { ctx, mixing })
    }

    pub fn from_params(n: u32, q: u32, mixing: MixingDistribution) -> Result<Self> {
        Self::new(KrawtchoukContext::new(n, q)?, mixing)
    }

    pub fn ctx(&self) -> &KrawtchoukContext {
        &self.ctx
    }

    pub fn mixing(&self) -> &MixingDistribution {
        &self.mixing
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    /// `v_i / q^n` for `i = 0..=n`.
    pub fn plancherel_pmf(&self) -> Vec<Rational> {
        let size = self.ctx.size();
        (0..=self.n())
            .map(|i| Rational::new(self.ctx.v(i), size.clone()))
            .collect()
    }

    fn check_t(&self, t: u32) -> Result<()> {
        if t > self.n() {
            return Err(out_of_range("t", t, format!("0..={}", self.n())));
        }
        Ok(())
    }

    /// `L_t(i, j) = (v_j / q^n) sum_r K_r(i) K_r(t) K_r(j) / v_r^2`.
    pub fn transition_spectral(&self, t: u32) -> Result<TransitionMatrix> {
        self.check_t(t)?;
        let n = self.n();
        let size = Rational::from_integer(self.ctx.size());
        let vsq: Vec<Rational> = (0..=n)
            .map(|r| Rational::from_integer(self.ctx.v(r).pow(2u32)))
            .collect();
        // w_r(i) = K_r(i) K_r(t) / v_r^2
        let mut rows = Vec::with_capacity(n as usize + 1);
        for i in 0..=n {
            let w: Vec<Rational> = (0..=n)
                .map(|r| {
                    Rational::from_integer(self.ctx.value(r, i) * self.ctx.value(r, t)) / &vsq[r as usize]
                })
                .collect();
            let mut row = Vec::with_capacity(n as usize + 1);
            for j in 0..=n {
                let s = (0..=n).fold(Rational::zero(), |acc, r| {
                    acc + &w[r as usize] * Rational::from_integer(self.ctx.value(r, j).clone())
                });
                row.push(s * Rational::from_integer(self.ctx.v(j)) / &size);
            }
            rows.push(row);
        }
        TransitionMatrix::from_dense(rows)
    }

    /// The same kernel built by moving coordinates: from level `i`, pick `t`
    /// coordinates; each chosen zero becomes a uniform nonzero letter, each
    /// chosen nonzero letter becomes zero with probability `1/(q-1)` and
    /// another nonzero letter otherwise.
    pub fn transition_combinatorial(&self, t: u32) -> Result<TransitionMatrix> {
        self.check_t(t)?;
        let (n, q) = (self.n() as i64, self.q() as i64);
        let t = t as i64;
        let q2 = int(q - 2);
        let q1 = int(q - 1);
        let cnt = Rational::from_integer(binomial(n, t));
        let mut rows = Vec::with_capacity(n as usize + 1);
        for i in 0..=n {
            let mut row = Vec::new();
            for l in -t..=t {
                let target = i + l;
                if target < 0 || target > n {
                    continue;
                }
                let mut acc = Rational::zero();
                for k in 0..=t {
                    let c = binomial(t - k, k - l);
                    if c.is_zero() {
                        continue;
                    }
                    let ways = binomial(n - i, k) * binomial(i, t - k);
                    if ways.is_zero() {
                        continue;
                    }
                    acc += Rational::from_integer(c * ways) * powi(&q2, t - 2 * k + l) / powi(&q1, t - k);
                }
                row.push((target as usize, acc / &cnt));
            }
            rows.push(row);
        }
        TransitionMatrix::from_sparse(n as usize + 1, rows)
    }

    /// `sum_t b_t L_t`.
    pub fn transition_mixed(&self) -> Result<TransitionMatrix> {
        let dim = self.n() as usize + 1;
        let parts: Vec<(Rational, TransitionMatrix)> = self
            .mixing
            .support()
            .map(|(t, b)| Ok((b.clone(), self.transition_spectral(t)?)))
            .collect::<Result<_>>()?;
        let terms: Vec<(Rational, &TransitionMatrix)> = parts.iter().map(|(b, m)| (b.clone(), m)).collect();
        TransitionMatrix::combination(dim, &terms)
    }

    /// `lambda_s = sum_t b_t K_s(t) / v_s`, the eigenvalue of the mixed kernel on `K_s`.
    pub fn eigenvalue(&self, s: u32) -> Result<Rational> {
        if s > self.n() {
            return Err(out_of_range("s", s, format!("0..={}", self.n())));
        }
        let vs = Rational::from_integer(self.ctx.v(s));
        Ok(self
            .mixing
            .support()
            .fold(Rational::zero(), |acc, (t, b)| {
                acc + b * Rational::from_integer(self.ctx.value(s, t).clone())
            })
            / vs)
    }

    /// `a = 1 - lambda_1`; signals unless `0 < a < 1`.
    pub fn linearity_constant(&self) -> Result<Rational> {
        let a = Rational::one() - self.eigenvalue(1)?;
        check_a(&a)?;
        Ok(a)
    }

    /// Two-step distance law of the single-coordinate walk.
    pub fn p2(&self, j: u32) -> Result<Rational> {
        p2_hamming(self.n(), self.q(), j)
    }
}

/// `p_2(j)` for the walk that resamples one coordinate to a different letter.
pub fn p2_hamming(n: u32, q: u32, j: u32) -> Result<Rational> {
    if j > n {
        return Err(out_of_range("j", j, format!("0..={n}")));
    }
    let (n_, q_) = (n as i64, q as i64);
    Ok(match j {
        0 => ratio(1, n_ * (q_ - 1)),
        1 => ratio(q_ - 2, n_ * (q_ - 1)),
        2 => ratio(n_ - 1, n_),
        _ => Rational::zero(),
    })
}

/// Normal bound for `W = K_1(i) / sqrt(v_1)` under the mixed chain.
pub fn stein_bound_hamming(model: &HammingModel) -> Result<SteinBoundReport> {
    let a = model.linearity_constant()?;
    let top = model.n().min(2);
    let lam: Vec<Rational> = (0..=top).map(|j| model.eigenvalue(j)).collect::<Result<_>>()?;
    let v1 = Rational::from_integer(model.ctx.v(1));
    let v1sq = &v1 * &v1;
    let mut var = Rational::zero();
    let mut mom = Rational::zero();
    let mut detail = BTreeMap::new();
    for j in 0..=top {
        let w = model.p2(j)?.pow(2) / Rational::from_integer(model.ctx.v(j));
        let lj = &lam[j as usize];
        if j >= 1 {
            let d = lj + Rational::one() - int(2) * &lam[1];
            var += &w * &d * &d;
        }
        let t = (lj - Rational::one()) / &a;
        mom += &w * (int(8) + int(6) * &t);
        detail.insert(DetailKey::Level(j), t);
    }
    let variance_sq = &v1sq * var / (&a * &a);
    let moment_radicand = v1sq * mom;
    SteinBoundReport::assemble(a, variance_sq, moment_radicand, detail)
}

/// `E[W^4] = 3 - 2/n` for the standardized Binomial(n, 1/2).
pub fn fourth_moment_binomial_half(n: u32) -> Rational {
    int(3) - ratio(2, n as i64)
}

/// The q = 2 chain on `{0,1}^n` with `W = (2 * ones - n) / sqrt(n)`.
pub fn stein_bound_binomial_half(n: u32, mixing: &MixingDistribution) -> Result<SteinBoundReport> {
    if n == 0 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    if mixing.n() != n {
        return Err(Error::Invalid(format!(
            "mixing has {} weights, expected n + 1 = {}",
            mixing.weights.len(),
            n + 1
        )));
    }
    let n_ = n as i64;
    let a_sum = mixing
        .support()
        .fold(Rational::zero(), |acc, (i, b)| acc + b * ratio(i as i64, n_));
    let b_sum = if n >= 2 {
        mixing.support().fold(Rational::zero(), |acc, (i, b)| {
            let i = i as i64;
            acc + b * ratio(i * (i - 1), n_ * (n_ - 1))
        })
    } else {
        Rational::zero()
    };
    if a_sum.is_zero() {
        return Err(Error::DegenerateStep { a: "0".into() });
    }
    let a = int(2) * &a_sum;
    check_a(&a)?;
    // Var E[(W'-W)^2 | W] = 16 B^2 Var(W^2); E(W'-W)^4 = (16/n)(A + 3B(n-1)).
    let var_w2 = fourth_moment_binomial_half(n) - Rational::one();
    let cond_var = int(16) * &b_sum * &b_sum * var_w2;
    let fourth = ratio(16, n_) * (&a_sum + int(3) * &b_sum * int(n_ - 1));
    let mut detail = BTreeMap::new();
    detail.insert(DetailKey::Level(0), Rational::zero());
    detail.insert(DetailKey::Level(1), -Rational::one());
    if n >= 2 {
        detail.insert(DetailKey::Level(2), int(2) * &b_sum / &a_sum - int(2));
    }
    SteinBoundReport::assemble(a.clone(), cond_var / (&a * &a), fourth / &a, detail)
}

/// Which bound a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTemplate {
    BinomialHalf { n: u32 },
    Hamming { n: u32, q: u32 },
}

impl SweepTemplate {
    pub fn n(&self) -> u32 {
        match *self {
            SweepTemplate::BinomialHalf { n } | SweepTemplate::Hamming { n, .. } => n,
        }
    }

    pub fn evaluate(&self, mixing: &MixingDistribution) -> Result<SteinBoundReport> {
        match *self {
            SweepTemplate::BinomialHalf { n } => stein_bound_binomial_half(n, mixing),
            SweepTemplate::Hamming { n, q } => {
                stein_bound_hamming(&HammingModel::from_params(n, q, mixing.clone())?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rank: usize,
    pub mixing: MixingDistribution,
    pub report: SteinBoundReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Ascending by total; ties by smaller `a`, then lexicographic mixing.
    pub ranked: Vec<SweepRow>,
    /// Grid points whose bound does not apply, with the reason.
    pub rejected: Vec<(MixingDistribution, Error)>,
}

/// Point masses at `1..=n` and uniform laws on `{1..m}` for `m` in `{2, 3, n}`.
pub fn canonical_grid(n: u32) -> Vec<MixingDistribution> {
    let mut grid: Vec<MixingDistribution> = (1..=n)
        .map(|t| MixingDistribution::point_mass(n, t).expect("t <= n"))
        .collect();
    for m in [2, 3, n] {
        if m >= 2 && m <= n {
            let support: Vec<u32> = (1..=m).collect();
            grid.push(MixingDistribution::uniform(n, &support).expect("support within 1..=n"));
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

pub fn optimal_mixing_sweep(
    template: SweepTemplate,
    grid: &[MixingDistribution],
) -> Result<SweepOutcome> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty mixing grid".into()));
    }
    // One filled Krawtchouk table shared by every grid point.
    let shared = match template {
        SweepTemplate::Hamming { n, q } => {
            let ctx = KrawtchoukContext::new(n, q)?;
            ctx.krawtchouk(0, 0)?;
            Some(ctx)
        }
        SweepTemplate::BinomialHalf { .. } => None,
    };
    let evaluated: Vec<(MixingDistribution, Result<SteinBoundReport>)> = grid
        .par_iter()
        .map(|m| {
            let r = match &shared {
                Some(ctx) => HammingModel::new(ctx.clone(), m.clone()).and_then(|h| stein_bound_hamming(&h)),
                None => template.evaluate(m),
            };
            (m.clone(), r)
        })
        .collect();
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for (m, r) in evaluated {
        match r {
            Ok(report) => ok.push((m, report)),
            Err(e @ Error::DegenerateStep { .. }) => rejected.push((m, e)),
            Err(e) => return Err(e),
        }
    }
    ok.sort_by(|(ma, ra), (mb, rb)| {
        ra.cmp_bound(rb)
            .then_with(|| rb.a.cmp(&ra.a))
            .then_with(|| ma.cmp(mb))
    });
    rejected.sort_by(|x, y| x.0.cmp(&y.0));
    let ranked = ok
        .into_iter()
        .enumerate()
        .map(|(i, (mixing, report))| SweepRow {
            rank: i + 1,
            mixing,
            report,
        })
        .collect();
    Ok(SweepOutcome { ranked, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: u32, q: u32, mixing: MixingDistribution) -> HammingModel {
        HammingModel::from_params(n, q, mixing).unwrap()
    }

    #[test]
    fn mixing_validation() {
        assert!(MixingDistribution::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(MixingDistribution::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(MixingDistribution::new(vec![int(1), int(0)]).is_ok());
        let m = MixingDistribution::parse(4, "1:1/2, 3:0.5").unwrap();
        assert_eq!(m.get(3), ratio(1, 2));
        assert_eq!(m.to_string(), "1:1/2,3:1/2");
        assert!(MixingDistribution::parse(4, "5:1").is_err());
        assert!(MixingDistribution::parse(4, "1:1/2").is_err());
    }

    #[test]
    fn plancherel_examples() {
        let pm = MixingDistribution::point_mass;
        assert_eq!(model(1, 2, pm(1, 1).unwrap()).plancherel_pmf(), vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(
            model(3, 2, pm(3, 1).unwrap()).plancherel_pmf(),
            vec![ratio(1, 8), ratio(3, 8), ratio(3, 8), ratio(1, 8)]
        );
        assert_eq!(
            model(2, 3, pm(2, 1).unwrap()).plancherel_pmf(),
            vec![ratio(1, 9), ratio(4, 9), ratio(4, 9)]
        );
    }

    #[test]
    fn spectral_kernel_examples() {
        let m = model(3, 3, MixingDistribution::point_mass(3, 1).unwrap());
        assert_eq!(m.transition_spectral(0).unwrap(), TransitionMatrix::identity(4));
        let l2 = m.transition_spectral(2).unwrap();
        assert!(l2.is_row_stochastic());
        let v: Vec<Rational> = (0..=3).map(|i| Rational::from_integer(m.ctx().v(i))).collect();
        assert!(l2.satisfies_detailed_balance(&v));
        let m = model(2, 2, MixingDistribution::point_mass(2, 1).unwrap());
        assert!(m.transition_spectral(1).unwrap().is_row_stochastic());
        assert!(m.transition_spectral(3).is_err());
    }

    #[test]
    fn combinatorial_kernel_examples() {
        let n = 5;
        let m = model(n, 2, MixingDistribution::point_mass(n, 1).unwrap());
        let l1 = m.transition_combinatorial(1).unwrap();
        for i in 0..=n as usize {
            if i < n as usize {
                assert_eq!(l1.get(i, i + 1), ratio((n as usize - i) as i64, n as i64));
            }
            if i > 0 {
                assert_eq!(l1.get(i, i - 1), ratio(i as i64, n as i64));
            }
        }
        let m = model(2, 3, MixingDistribution::point_mass(2, 1).unwrap());
        let l = m.transition_combinatorial(1).unwrap();
        assert_eq!(l.to_dense()[0], vec![int(0), int(1), int(0)]);
        let m = model(4, 2, MixingDistribution::point_mass(4, 1).unwrap());
        assert_eq!(m.transition_combinatorial(2).unwrap(), m.transition_spectral(2).unwrap());
    }

    #[test]
    fn mixed_kernel_is_linear_and_stationary() {
        let n = 4;
        let half = MixingDistribution::new(vec![ratio(1, 2), ratio(1, 2), int(0), int(0), int(0)]).unwrap();
        let m = model(n, 3, half);
        let mixed = m.transition_mixed().unwrap();
        let l1 = m.transition_spectral(1).unwrap();
        let expect = TransitionMatrix::combination(
            5,
            &[(ratio(1, 2), &TransitionMatrix::identity(5)), (ratio(1, 2), &l1)],
        )
        .unwrap();
        assert_eq!(mixed, expect);
        let pi = m.plancherel_pmf();
        assert_eq!(mixed.apply_left(&pi), pi);
    }

    #[test]
    fn linearity_constant_examples() {
        for (n, q, t) in [(6u32, 3u32, 2u32), (5, 4, 1), (7, 2, 3)] {
            let m = model(n, q, MixingDistribution::point_mass(n, t).unwrap());
            assert_eq!(
                m.linearity_constant().unwrap(),
                ratio((q * t) as i64, (n * (q - 1)) as i64)
            );
        }
        let m = model(10, 2, MixingDistribution::point_mass(10, 1).unwrap());
        assert_eq!(m.linearity_constant().unwrap(), ratio(1, 5));
        let b = MixingDistribution::parse(6, "1:1/3,2:1/3,4:1/3").unwrap();
        let m = model(6, 2, b.clone());
        let expect = int(2) * b.support().fold(int(0), |acc, (t, w)| acc + w * ratio(t as i64, 6));
        assert_eq!(m.linearity_constant().unwrap(), expect);
        let id = model(3, 2, MixingDistribution::point_mass(3, 0).unwrap());
        assert!(matches!(id.linearity_constant(), Err(Error::DegenerateStep { .. })));
        let far = model(4, 2, MixingDistribution::point_mass(4, 2).unwrap());
        assert!(matches!(far.linearity_constant(), Err(Error::DegenerateStep { .. })));
    }

    #[test]
    fn p2_examples() {
        assert_eq!(p2_hamming(5, 2, 1).unwrap(), int(0));
        assert_eq!(p2_hamming(5, 3, 0).unwrap(), ratio(1, 10));
        assert_eq!(p2_hamming(5, 3, 1).unwrap(), ratio(1, 10));
        assert_eq!(p2_hamming(5, 3, 2).unwrap(), ratio(4, 5));
        assert_eq!(p2_hamming(5, 3, 3).unwrap(), int(0));
        for q in 2..6 {
            let s = sum((0..=5).map(|j| p2_hamming(5, q, j).unwrap()));
            assert!(s.is_one());
        }
    }

    #[test]
    fn hamming_detail_levels() {
        let b = MixingDistribution::parse(6, "1:1/2,2:1/4,3:1/4").unwrap();
        for q in 2..=5 {
            let r = stein_bound_hamming(&model(6, q, b.clone())).unwrap();
            assert_eq!(r.per_level_detail[&DetailKey::Level(0)], int(0));
            assert_eq!(r.per_level_detail[&DetailKey::Level(1)], int(-1));
            let num = b
                .support()
                .filter(|(t, _)| *t >= 2)
                .fold(int(0), |acc, (t, w)| acc + w * ratio((t * (t - 1)) as i64, 30));
            let den = b.support().fold(int(0), |acc, (t, w)| acc + w * ratio(t as i64, 6));
            let expect = ratio(q as i64, q as i64 - 1) * num / den;
            assert_eq!(&r.per_level_detail[&DetailKey::Level(2)] + int(2), expect);
        }
    }

    #[test]
    fn binomial_half_b1() {
        for n in [3u32, 10, 100, 1000] {
            let r = stein_bound_binomial_half(n, &MixingDistribution::point_mass(n, 1).unwrap()).unwrap();
            let direct = (8.0 / (std::f64::consts::PI * n as f64)).powf(0.25);
            assert!((r.total - direct).abs() <= 1e-14 * direct);
            assert_eq!(r.variance_sq, int(0));
        }
        let r = stein_bound_binomial_half(100, &MixingDistribution::point_mass(100, 1).unwrap()).unwrap();
        assert!((r.total - 0.39947).abs() < 5e-6);
        assert_eq!(fourth_moment_binomial_half(4), ratio(5, 2));
        assert!(stein_bound_binomial_half(5, &MixingDistribution::point_mass(5, 0).unwrap()).is_err());
    }

    #[test]
    fn q2_matches_binomial_half() {
        let n = 7;
        for b in canonical_grid(n) {
            let h = stein_bound_hamming(&model(n, 2, b.clone()));
            let s = stein_bound_binomial_half(n, &b);
            match (h, s) {
                (Ok(h), Ok(s)) => {
                    assert_eq!(h.a, s.a);
                    assert_eq!(h.variance_sq, s.variance_sq);
                    assert_eq!(h.moment_radicand, s.moment_radicand);
                    assert_eq!(h.per_level_detail, s.per_level_detail);
                }
                (Err(_), Err(_)) => {}
                other => panic!("disagreement for {b}: {other:?}"),
            }
        }
    }

    #[test]
    fn holding_probability_is_irrelevant() {
        let b = MixingDistribution::parse(8, "0:1/3,1:1/3,3:1/3").unwrap();
        let stripped = b.without_holding().unwrap();
        let x = stein_bound_binomial_half(8, &b).unwrap();
        let y = stein_bound_binomial_half(8, &stripped).unwrap();
        assert_eq!(x.variance_sq, y.variance_sq);
        assert_eq!(x.moment_radicand, y.moment_radicand);
        assert_ne!(x.a, y.a);
    }

    #[test]
    fn canonical_grid_shape() {
        let g = canonical_grid(5);
        assert_eq!(g.len(), 5 + 3);
        let g = canonical_grid(3);
        assert_eq!(g.len(), 3 + 2);
        assert_eq!(canonical_grid(1).len(), 1);
    }

    #[test]
    fn sweep_ranks_b1_first() {
        let n = 12;
        let out = optimal_mixing_sweep(SweepTemplate::Hamming { n, q: 3 }, &canonical_grid(n)).unwrap();
        assert_eq!(out.ranked[0].mixing, MixingDistribution::point_mass(n, 1).unwrap());
        for row in &out.ranked[1..] {
            assert!(out.ranked[0].report.dominates(&row.report));
        }
        let single = [MixingDistribution::point_mass(n, 1).unwrap()];
        let out = optimal_mixing_sweep(SweepTemplate::BinomialHalf { n }, &single).unwrap();
        assert_eq!(out.ranked.len(), 1);
        // q = 2 point masses with t >= n/2 give a >= 1 and are rejected
        let out = optimal_mixing_sweep(SweepTemplate::BinomialHalf { n }, &canonical_grid(n)).unwrap();
        assert!(!out.rejected.is_empty());
        assert!(optimal_mixing_sweep(SweepTemplate::BinomialHalf { n }, &[]).is_err());
    }
}
