//! Discriminating thermal baths with a single qubit probe.
//!
//! A probe qubit relaxes toward equilibrium through a generalized amplitude
//! damping channel whose parameters are set by the bath temperature. Two
//! baths at different temperatures leave the probe in different states, and
//! the tools here quantify how well projective measurements on one or many
//! probes can tell them apart: single-copy Helstrom-style optimization,
//! static multi-copy threshold rules, and adaptive Bayesian measurement.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adaptive;
pub mod binomial;
pub mod channel;
pub mod discrimination;
pub mod error;
pub mod matrix;
pub mod optimize;
pub mod rng;
pub mod state;

pub use adaptive::{
    adaptive_error_rate, adaptive_pe, adaptive_pe_exact, adaptive_simulate, bayes_update, likelihood,
    next_angle, AdaptiveOptions, AdaptiveRun, BeliefState, MonteCarloEstimate, NodeKind, Outcome,
    OutcomeTree, StrategyRow, TreeNode, strategy_compare,
};
pub use channel::{
    apply_gad_bloch, apply_gad_kraus, asymptotic_state, channel_from_waveplates, characterize_channel,
    gamma_at, trajectory, waveplate_settings, AffineMap, BranchAngles, GadChannel, KrausPair, ThermalBath,
    WaveplateSettings,
};
pub use discrimination::{
    distinguishability, empirical_distinguishability, fidelity_bound, optimal_angle_single,
    optimal_static_multi, output_pair, pe_single, pe_static_multi, pe_static_threshold, simulate_shots,
    DiscriminationProblem, Hypothesis, Labeling, PriorPair, StaticStrategy,
};
pub use error::{Error, Result};
pub use matrix::Mat2;
pub use rng::derive_seed;
pub use state::{
    bloch_to_density, density_to_bloch, euclidean_distance, fidelity, fidelity_bloch, helstrom_pe,
    measure_prob, BlochVector, DensityMatrix, Projector,
};
