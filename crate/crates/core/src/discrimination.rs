//! Binary discrimination between two qubit states from local projective
//! measurements on one or many copies.

use std::f64::consts::FRAC_PI_2;

use rand_distr::{Binomial, Distribution};

use crate::binomial::{binomial_pmf_with, ln_factorials, tails};
use crate::channel::{apply_gad_bloch, check_probability, ThermalBath};
use crate::error::{Error, Result};
use crate::optimize::minimize_angle;
use crate::rng::{derive_seed, rng_from};
use crate::state::{fidelity, measure_prob, BlochVector, DensityMatrix, Projector};

/// Prior probabilities of the two hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorPair {
    pi1: f64,
    pi2: f64,
}

impl PriorPair {
    pub const EQUAL: PriorPair = PriorPair { pi1: 0.5, pi2: 0.5 };

    pub fn new(pi1: f64, pi2: f64) -> Result<Self> {
        let in_range = (0.0..=1.0).contains(&pi1) && (0.0..=1.0).contains(&pi2);
        if !in_range || (pi1 + pi2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPriors { pi1, pi2 });
        }
        Ok(PriorPair { pi1, pi2 })
    }

    /// `(pi1, 1 - pi1)`.
    pub fn with_first(pi1: f64) -> Result<Self> {
        Self::new(pi1, 1.0 - pi1)
    }

    pub fn pi1(&self) -> f64 {
        self.pi1
    }

    pub fn pi2(&self) -> f64 {
        self.pi2
    }

    pub fn get(&self, h: Hypothesis) -> f64 {
        match h {
            Hypothesis::First => self.pi1,
            Hypothesis::Second => self.pi2,
        }
    }

    /// The more probable hypothesis; ties go to the first.
    pub fn favoured(&self) -> Hypothesis {
        if self.pi1 >= self.pi2 {
            Hypothesis::First
        } else {
            Hypothesis::Second
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    First,
    Second,
}

impl Hypothesis {
    pub fn other(self) -> Hypothesis {
        match self {
            Hypothesis::First => Hypothesis::Second,
            Hypothesis::Second => Hypothesis::First,
        }
    }

    /// 1-based index as used in tables.
    pub fn index(self) -> usize {
        match self {
            Hypothesis::First => 1,
            Hypothesis::Second => 2,
        }
    }
}

/// Which hypothesis a threshold strategy declares when the number of
/// positive outcomes reaches the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Declare the first hypothesis iff `count >= k`.
    FirstAbove,
    /// Declare the second hypothesis iff `count >= k`.
    SecondAbove,
}

/// The same projector on every copy, followed by a threshold on the count
/// of positive outcomes. `k = 0` and `k = N + 1` ignore the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticStrategy {
    pub m: Projector,
    pub k: usize,
    pub labeling: Labeling,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminationProblem {
    pub rho1: BlochVector,
    pub rho2: BlochVector,
    pub priors: PriorPair,
    n: usize,
}

impl DiscriminationProblem {
    pub fn new(rho1: BlochVector, rho2: BlochVector, priors: PriorPair, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        Ok(DiscriminationProblem { rho1, rho2, priors, n })
    }

    pub fn single(rho1: BlochVector, rho2: BlochVector, priors: PriorPair) -> Self {
        DiscriminationProblem { rho1, rho2, priors, n: 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.rho1, self.rho2, self.priors, n)
    }

    fn require_planar(&self) -> Result<()> {
        self.rho1.require_planar()?;
        self.rho2.require_planar()
    }
}

/// Single-copy error of measuring `m` and declaring by the better labeling,
/// or by the prior alone when that is better still.
///
/// Only the states and priors of `prob` are used.
pub fn pe_single(prob: &DiscriminationProblem, m: &Projector) -> f64 {
    let PriorPair { pi1, pi2 } = prob.priors;
    let q1 = measure_prob(&prob.rho1, m);
    let q2 = measure_prob(&prob.rho2, m);
    let declare_second_on_click = pi1 * q1 + pi2 * (1.0 - q2);
    let declare_first_on_click = pi1 * (1.0 - q1) + pi2 * q2;
    declare_second_on_click.min(declare_first_on_click).min(pi1.min(pi2))
}

/// Best single-copy projector. States must lie in the x-z plane.
///
/// Of the two optimal angles (a projector and its complement) the smaller is
/// returned; when no measurement beats guessing from the priors, `H`.
pub fn optimal_angle_single(prob: &DiscriminationProblem) -> Result<(Projector, f64)> {
    prob.require_planar()?;
    let m = best_single_projector(prob);
    Ok((m, pe_single(prob, &m)))
}

/// The projector whose Bloch direction is parallel to `pi1 r1 - pi2 r2`.
pub(crate) fn best_single_projector(prob: &DiscriminationProblem) -> Projector {
    let PriorPair { pi1, pi2 } = prob.priors;
    let wx = pi1 * prob.rho1.sx() - pi2 * prob.rho2.sx();
    let wz = pi1 * prob.rho1.sz() - pi2 * prob.rho2.sz();
    if wx.hypot(wz) <= (pi1 - pi2).abs() {
        return Projector::H;
    }
    // Direction (sin 2t, 0, -cos 2t).
    let theta = 0.5 * wx.atan2(-wz);
    Projector::new(theta.rem_euclid(FRAC_PI_2))
}

/// The same input after thermalizing for `t` in each bath: `(hot, cold)`.
pub fn output_pair(
    input: &BlochVector,
    hot: &ThermalBath,
    cold: &ThermalBath,
    t: f64,
) -> Result<(BlochVector, BlochVector)> {
    Ok((
        apply_gad_bloch(&hot.channel_at(t)?, input),
        apply_gad_bloch(&cold.channel_at(t)?, input),
    ))
}

/// Threshold-test error probabilities for every `k = 0..=N+1`.
struct ThresholdTable {
    /// `(pe with FirstAbove, pe with SecondAbove)` per threshold.
    by_k: Vec<(f64, f64)>,
}

impl ThresholdTable {
    fn new(prob: &DiscriminationProblem, m: &Projector, ln_fact: &[f64]) -> Self {
        let n = prob.n;
        let PriorPair { pi1, pi2 } = prob.priors;
        let (lower1, upper1) = tails(&binomial_pmf_with(ln_fact, n, measure_prob(&prob.rho1, m)));
        let (lower2, upper2) = tails(&binomial_pmf_with(ln_fact, n, measure_prob(&prob.rho2, m)));
        let by_k = (0..=n + 1)
            .map(|k| {
                let first_above = pi1 * lower1[k] + pi2 * upper2[k];
                let second_above = pi2 * lower2[k] + pi1 * upper1[k];
                (first_above, second_above)
            })
            .collect();
        ThresholdTable { by_k }
    }

    /// Smallest error; ties prefer smaller `k`, then [`Labeling::FirstAbove`].
    fn best(&self) -> (usize, Labeling, f64) {
        let mut best = (0, Labeling::FirstAbove, self.by_k[0].0);
        for (k, &(a, b)) in self.by_k.iter().enumerate() {
            if a < best.2 {
                best = (k, Labeling::FirstAbove, a);
            }
            if b < best.2 {
                best = (k, Labeling::SecondAbove, b);
            }
        }
        best
    }
}

/// Error of a given static strategy on `prob.n()` copies.
pub fn pe_static_threshold(prob: &DiscriminationProblem, strategy: &StaticStrategy) -> f64 {
    let table = ThresholdTable::new(prob, &strategy.m, &ln_factorials(prob.n));
    let (a, b) = table.by_k.get(strategy.k).copied().unwrap_or((prob.priors.pi1, prob.priors.pi2));
    match strategy.labeling {
        Labeling::FirstAbove => a,
        Labeling::SecondAbove => b,
    }
}

/// Best threshold and labeling for measuring `m` on every copy.
pub fn pe_static_multi(prob: &DiscriminationProblem, m: &Projector) -> (StaticStrategy, f64) {
    let table = ThresholdTable::new(prob, m, &ln_factorials(prob.n));
    let (k, labeling, pe) = table.best();
    (StaticStrategy { m: *m, k, labeling }, pe)
}

/// Best static strategy over all projector angles for `prob.n()` copies.
pub fn optimal_static_multi(prob: &DiscriminationProblem) -> Result<(StaticStrategy, f64)> {
    prob.require_planar()?;
    let ln_fact = ln_factorials(prob.n);
    let objective = |t: f64| ThresholdTable::new(prob, &Projector::new(t), &ln_fact).best().2;
    let (theta, _) = minimize_angle(objective);
    let m = Projector::new(theta);
    let (k, labeling, pe) = ThresholdTable::new(prob, &m, &ln_fact).best();
    Ok((StaticStrategy { m, k, labeling }, pe))
}

/// Squared difference of the estimated outcome probabilities over the larger
/// of their binomial variances at `n_shots` shots. Equal means give 0;
/// different means with zero variance give `+inf`.
pub fn distinguishability(p_hot: f64, p_cold: f64, n_shots: u64) -> Result<f64> {
    check_probability("p_hot", p_hot)?;
    check_probability("p_cold", p_cold)?;
    if n_shots == 0 {
        return Err(Error::OutOfRange { name: "n_shots", value: 0.0 });
    }
    let n = n_shots as f64;
    let var = (p_hot * (1.0 - p_hot) / n).max(p_cold * (1.0 - p_cold) / n);
    Ok(signal_to_noise(p_hot - p_cold, var))
}

fn signal_to_noise(diff: f64, var: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if var == 0.0 {
        f64::INFINITY
    } else {
        diff * diff / var
    }
}

/// Fraction of positive outcomes in `n` seeded Bernoulli(`p`) shots.
pub fn simulate_shots(p: f64, n: u64, seed: u64) -> Result<f64> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::OutOfRange { name: "n_shots", value: 0.0 });
    }
    let dist = Binomial::new(n, p).map_err(|_| Error::InvalidProbability { name: "p", value: p })?;
    let count = dist.sample(&mut rng_from(seed));
    Ok(count as f64 / n as f64)
}

/// Distinguishability with means and variances estimated across
/// `replicates` seeded datasets of `n_shots` shots per bath.
pub fn empirical_distinguishability(
    p_hot: f64,
    p_cold: f64,
    n_shots: u64,
    replicates: usize,
    seed: u64,
) -> Result<f64> {
    if replicates < 2 {
        return Err(Error::OutOfRange { name: "replicates", value: replicates as f64 });
    }
    let sample = |p: f64, offset: u64| -> Result<Vec<f64>> {
        (0..replicates as u64)
            .map(|r| simulate_shots(p, n_shots, derive_seed(seed, 2 * r + offset)))
            .collect()
    };
    let (hot, cold) = (sample(p_hot, 0)?, sample(p_cold, 1)?);
    let (mh, vh) = mean_var(&hot);
    let (mc, vc) = mean_var(&cold);
    Ok(signal_to_noise(mh - mc, vh.max(vc)))
}

/// Mean and unbiased sample variance.
fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// `(F, (1 - F)/2)`; the second entry is the many-copy error characterization.
pub fn fidelity_bound(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<(f64, f64)> {
    let f = fidelity(rho1, rho2)?;
    Ok((f, 0.5 * (1.0 - f)))
}
