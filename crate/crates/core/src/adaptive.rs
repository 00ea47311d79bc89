//! Adaptive Bayesian discrimination.
//!
//! Each copy is measured with the projector that minimizes the single-copy
//! error under the current posterior; after the last copy the hypothesis
//! with the larger posterior is declared. The exact error probability comes
//! from enumerating all `2^N` outcome sequences; longer runs are sampled.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrimination::{
    best_single_projector, optimal_angle_single, optimal_static_multi, pe_static_multi, DiscriminationProblem,
    Hypothesis, PriorPair,
};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from};
use crate::state::{measure_prob, BlochVector, Projector};

/// Largest `N` for which the full outcome tree is built by default.
pub const DEFAULT_DEPTH_CAP: usize = 20;

/// Below this many remaining copies subtrees are evaluated on one thread.
const PARALLEL_DEPTH: usize = 10;

/// Outcome of one projective measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The projector fired.
    Positive,
    Negative,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Positive, Outcome::Negative];
}

/// Probability of `outcome` when measuring `m` on `rho`.
pub fn likelihood(rho: &BlochVector, m: &Projector, outcome: Outcome) -> f64 {
    let q = measure_prob(rho, m);
    match outcome {
        Outcome::Positive => q,
        Outcome::Negative => 1.0 - q,
    }
}

/// Posterior over the two hypotheses plus the measurements that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefState {
    priors: PriorPair,
    history: Vec<(Projector, Outcome)>,
}

impl BeliefState {
    pub fn new(priors: PriorPair) -> Self {
        BeliefState { priors, history: Vec::new() }
    }

    pub fn priors(&self) -> PriorPair {
        self.priors
    }

    pub fn history(&self) -> &[(Projector, Outcome)] {
        &self.history
    }

    /// Hypothesis with the larger posterior; ties declare the first.
    pub fn declaration(&self) -> Hypothesis {
        self.priors.favoured()
    }

    fn observe(&mut self, rho1: &BlochVector, rho2: &BlochVector, m: Projector, outcome: Outcome) -> Result<()> {
        self.priors = posterior(
            self.priors,
            likelihood(rho1, &m, outcome),
            likelihood(rho2, &m, outcome),
        )?;
        self.history.push((m, outcome));
        Ok(())
    }
}

fn posterior(priors: PriorPair, l1: f64, l2: f64) -> Result<PriorPair> {
    let joint1 = priors.pi1() * l1;
    let joint2 = priors.pi2() * l2;
    let evidence = joint1 + joint2;
    if !(evidence > 0.0) {
        return Err(Error::ImpossibleOutcome);
    }
    let pi1 = joint1 / evidence;
    // Complement rather than divide so the pair sums to one exactly.
    PriorPair::new(pi1, 1.0 - pi1)
}

/// Bayes' rule after observing `outcome` of `m`.
pub fn bayes_update(
    belief: &BeliefState,
    rho1: &BlochVector,
    rho2: &BlochVector,
    m: &Projector,
    outcome: Outcome,
) -> Result<BeliefState> {
    let mut next = belief.clone();
    next.observe(rho1, rho2, *m, outcome)?;
    Ok(next)
}

/// Greedy choice: the projector minimizing the single-copy error under the
/// current posterior. States must lie in the x-z plane.
pub fn next_angle(belief: &BeliefState, rho1: &BlochVector, rho2: &BlochVector) -> Result<Projector> {
    let prob = DiscriminationProblem::single(*rho1, *rho2, belief.priors);
    Ok(optimal_angle_single(&prob)?.0)
}

/// Settings for the adaptive evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    /// Largest `N` for the exact tree.
    pub depth_cap: usize,
    /// Round every commanded angle to a multiple of this step (radians),
    /// emulating finite waveplate-mount precision.
    pub quantize_step: Option<f64>,
    /// Merge subtrees whose posteriors agree to 12 decimals.
    pub coalesce: bool,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions { depth_cap: DEFAULT_DEPTH_CAP, quantize_step: None, coalesce: false }
    }
}

/// The angle policy shared by the tree and sampled runs.
#[derive(Clone, Copy)]
struct Policy {
    rho1: BlochVector,
    rho2: BlochVector,
    quantize_step: Option<f64>,
}

impl Policy {
    fn new(rho1: &BlochVector, rho2: &BlochVector, opts: &AdaptiveOptions) -> Result<Self> {
        rho1.require_planar()?;
        rho2.require_planar()?;
        if let Some(step) = opts.quantize_step {
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::OutOfRange { name: "quantize_step", value: step });
            }
        }
        Ok(Policy { rho1: *rho1, rho2: *rho2, quantize_step: opts.quantize_step })
    }

    fn angle(&self, priors: PriorPair) -> Projector {
        let m = best_single_projector(&DiscriminationProblem::single(self.rho1, self.rho2, priors));
        match self.quantize_step {
            Some(step) => Projector::new((m.theta() / step).round() * step),
            None => m,
        }
    }

    fn likelihoods(&self, m: &Projector, outcome: Outcome) -> [f64; 2] {
        [likelihood(&self.rho1, m, outcome), likelihood(&self.rho2, m, outcome)]
    }

    /// Posterior after `outcome`, or `None` when both hypotheses forbid it.
    fn branch(&self, priors: PriorPair, m: &Projector, outcome: Outcome) -> ([f64; 2], Option<PriorPair>) {
        let l = self.likelihoods(m, outcome);
        (l, posterior(priors, l[0], l[1]).ok())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Internal {
        m: Projector,
        /// `P(positive | h)` for each hypothesis.
        positive: [f64; 2],
        /// `P(negative | h)` for each hypothesis.
        negative: [f64; 2],
        /// Child node indices, `[positive, negative]`.
        children: [usize; 2],
    },
    Leaf {
        declared: Hypothesis,
        /// `false` when the path has probability zero under both hypotheses.
        reachable: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub priors: PriorPair,
    pub depth: usize,
    /// Probability of reaching this node under each hypothesis.
    pub path_prob: [f64; 2],
    pub kind: NodeKind,
}

/// Every measurement sequence of an adaptive run, stored as an arena with
/// the root at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeTree {
    pub priors: PriorPair,
    pub n: usize,
    pub nodes: Vec<TreeNode>,
}

impl OutcomeTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| matches!(n.kind, NodeKind::Leaf { .. }))
    }

    /// `sum over leaves and h of pi_h P(leaf | h) [declared != h]`.
    pub fn error_probability(&self) -> f64 {
        self.leaves()
            .map(|leaf| match leaf.kind {
                NodeKind::Leaf { declared: Hypothesis::First, .. } => self.priors.pi2() * leaf.path_prob[1],
                NodeKind::Leaf { declared: Hypothesis::Second, .. } => self.priors.pi1() * leaf.path_prob[0],
                NodeKind::Internal { .. } => 0.0,
            })
            .sum()
    }

    fn build(&mut self, policy: &Policy, priors: PriorPair, depth: usize, path_prob: [f64; 2], reachable: bool) -> usize {
        let index = self.nodes.len();
        if depth == self.n || !reachable {
            self.nodes.push(TreeNode {
                priors,
                depth,
                path_prob,
                kind: NodeKind::Leaf { declared: priors.favoured(), reachable },
            });
            return index;
        }
        let m = policy.angle(priors);
        let positive = policy.likelihoods(&m, Outcome::Positive);
        let negative = policy.likelihoods(&m, Outcome::Negative);
        // Placeholder until the children exist.
        self.nodes.push(TreeNode {
            priors,
            depth,
            path_prob,
            kind: NodeKind::Leaf { declared: priors.favoured(), reachable },
        });
        let mut children = [0; 2];
        for (slot, outcome) in Outcome::BOTH.into_iter().enumerate() {
            let (l, next) = policy.branch(priors, &m, outcome);
            let child_prob = [path_prob[0] * l[0], path_prob[1] * l[1]];
            children[slot] = match next {
                Some(next) => self.build(policy, next, depth + 1, child_prob, true),
                None => self.build(policy, priors, depth + 1, child_prob, false),
            };
        }
        self.nodes[index].kind = NodeKind::Internal { m, positive, negative, children };
        index
    }
}

/// Exact adaptive error probability together with the full outcome tree.
pub fn adaptive_pe_exact(
    rho1: &BlochVector,
    rho2: &BlochVector,
    priors: PriorPair,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<(f64, OutcomeTree)> {
    check_depth(n, opts)?;
    let policy = Policy::new(rho1, rho2, opts)?;
    let mut tree = OutcomeTree { priors, n, nodes: Vec::with_capacity((1 << (n + 1)) - 1) };
    tree.build(&policy, priors, 0, [1.0, 1.0], true);
    Ok((tree.error_probability(), tree))
}

fn check_depth(n: usize, opts: &AdaptiveOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if n > opts.depth_cap {
        return Err(Error::DepthCapExceeded { n, cap: opts.depth_cap });
    }
    Ok(())
}

/// Exact adaptive error probability without materializing the tree.
///
/// Evaluates sibling subtrees in parallel, or memoizes them by posterior
/// when [`AdaptiveOptions::coalesce`] is set.
pub fn adaptive_pe(
    rho1: &BlochVector,
    rho2: &BlochVector,
    priors: PriorPair,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<f64> {
    check_depth(n, opts)?;
    let policy = Policy::new(rho1, rho2, opts)?;
    let errors = if opts.coalesce {
        subtree_errors_memo(&policy, priors, n, &mut HashMap::new())
    } else {
        subtree_errors(&policy, priors, n)
    };
    Ok(priors.pi1() * errors[0] + priors.pi2() * errors[1])
}

/// `P(wrong declaration | h)` from a node with `remaining` copies left.
fn subtree_errors(policy: &Policy, priors: PriorPair, remaining: usize) -> [f64; 2] {
    if remaining == 0 {
        return leaf_errors(priors);
    }
    let m = policy.angle(priors);
    let child = |outcome| {
        let (l, next) = policy.branch(priors, &m, outcome);
        let e = match next {
            Some(next) => subtree_errors(policy, next, remaining - 1),
            None => leaf_errors(priors),
        };
        [l[0] * e[0], l[1] * e[1]]
    };
    let (a, b) = if remaining >= PARALLEL_DEPTH {
        rayon::join(|| child(Outcome::Positive), || child(Outcome::Negative))
    } else {
        (child(Outcome::Positive), child(Outcome::Negative))
    };
    [a[0] + b[0], a[1] + b[1]]
}

fn subtree_errors_memo(
    policy: &Policy,
    priors: PriorPair,
    remaining: usize,
    memo: &mut HashMap<(i64, usize), [f64; 2]>,
) -> [f64; 2] {
    if remaining == 0 {
        return leaf_errors(priors);
    }
    let key = ((priors.pi1() * 1e12).round() as i64, remaining);
    if let Some(&e) = memo.get(&key) {
        return e;
    }
    let m = policy.angle(priors);
    let mut total = [0.0; 2];
    for outcome in Outcome::BOTH {
        let (l, next) = policy.branch(priors, &m, outcome);
        let e = match next {
            Some(next) => subtree_errors_memo(policy, next, remaining - 1, memo),
            None => leaf_errors(priors),
        };
        total[0] += l[0] * e[0];
        total[1] += l[1] * e[1];
    }
    memo.insert(key, total);
    total
}

fn leaf_errors(priors: PriorPair) -> [f64; 2] {
    match priors.favoured() {
        Hypothesis::First => [0.0, 1.0],
        Hypothesis::Second => [1.0, 0.0],
    }
}

/// One sampled adaptive run, advanced a copy at a time. Because the policy
/// depends only on the current posterior, a run can be extended after the
/// fact with identical results.
pub struct AdaptiveRun {
    truth: Hypothesis,
    policy: Policy,
    belief: BeliefState,
    rng: ChaCha8Rng,
}

impl AdaptiveRun {
    pub fn new(
        truth: Hypothesis,
        rho1: &BlochVector,
        rho2: &BlochVector,
        priors: PriorPair,
        seed: u64,
        opts: &AdaptiveOptions,
    ) -> Result<Self> {
        Ok(AdaptiveRun {
            truth,
            policy: Policy::new(rho1, rho2, opts)?,
            belief: BeliefState::new(priors),
            rng: rng_from(seed),
        })
    }

    /// Measures one more copy of the true state.
    pub fn step(&mut self) -> Result<Outcome> {
        let m = self.policy.angle(self.belief.priors);
        let rho = match self.truth {
            Hypothesis::First => self.policy.rho1,
            Hypothesis::Second => self.policy.rho2,
        };
        let u: f64 = self.rng.random();
        let outcome = if u < measure_prob(&rho, &m) { Outcome::Positive } else { Outcome::Negative };
        let (rho1, rho2) = (self.policy.rho1, self.policy.rho2);
        self.belief.observe(&rho1, &rho2, m, outcome)?;
        Ok(outcome)
    }

    pub fn run(&mut self, copies: usize) -> Result<()> {
        for _ in 0..copies {
            self.step()?;
        }
        Ok(())
    }

    pub fn belief(&self) -> &BeliefState {
        &self.belief
    }

    pub fn decision(&self) -> Hypothesis {
        self.belief.declaration()
    }
}

/// Samples one adaptive run on `n` copies of the state named by `truth`.
pub fn adaptive_simulate(
    truth: Hypothesis,
    rho1: &BlochVector,
    rho2: &BlochVector,
    priors: PriorPair,
    n: usize,
    seed: u64,
) -> Result<(Hypothesis, BeliefState)> {
    let mut run = AdaptiveRun::new(truth, rho1, rho2, priors, seed, &AdaptiveOptions::default())?;
    run.run(n)?;
    Ok((run.decision(), run.belief))
}

/// Empirical error frequency of sampled adaptive runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub errors: u64,
    pub rate: f64,
    pub std_error: f64,
}

/// Runs `trials` independent adaptive runs with the true hypothesis drawn
/// from the priors. Trial `i` uses seeds derived from `(seed, i)`, so the
/// result does not depend on thread scheduling.
pub fn adaptive_error_rate(
    rho1: &BlochVector,
    rho2: &BlochVector,
    priors: PriorPair,
    n: usize,
    trials: u64,
    seed: u64,
    opts: &AdaptiveOptions,
) -> Result<MonteCarloEstimate> {
    if n == 0 {
        return Err(Error::NoQubits);
    }
    if trials == 0 {
        return Err(Error::OutOfRange { name: "trials", value: 0.0 });
    }
    Policy::new(rho1, rho2, opts)?;
    let errors = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let u: f64 = rng_from(derive_seed(seed, 2 * i)).random();
            let truth = if u < priors.pi1() { Hypothesis::First } else { Hypothesis::Second };
            let mut run = AdaptiveRun::new(truth, rho1, rho2, priors, derive_seed(seed, 2 * i + 1), opts)?;
            run.run(n)?;
            Ok(u64::from(run.decision() != truth))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let rate = errors as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        trials,
        errors,
        rate,
        std_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
    })
}

/// Error probabilities of the three strategies at one copy count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyRow {
    pub n: usize,
    /// Single-copy optimal projector repeated on every copy.
    pub pe_1qubit_static: f64,
    /// Best static projector for this `n`.
    pub pe_global_static: f64,
    pub pe_adaptive: f64,
}

/// Compares static and adaptive strategies for `n = 1..=n_max`.
pub fn strategy_compare(
    rho1: &BlochVector,
    rho2: &BlochVector,
    priors: PriorPair,
    n_max: usize,
    opts: &AdaptiveOptions,
) -> Result<Vec<StrategyRow>> {
    if n_max == 0 {
        return Err(Error::NoQubits);
    }
    let single = DiscriminationProblem::single(*rho1, *rho2, priors);
    let (m1, _) = optimal_angle_single(&single)?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let prob = single.with_n(n)?;
            Ok(StrategyRow {
                n,
                pe_1qubit_static: pe_static_multi(&prob, &m1).1,
                pe_global_static: optimal_static_multi(&prob)?.1,
                pe_adaptive: adaptive_pe(rho1, rho2, priors, n, opts)?,
            })
        })
        .collect()
}
