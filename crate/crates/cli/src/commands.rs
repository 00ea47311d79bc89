use qtherm::adaptive::DEFAULT_DEPTH_CAP;
use qtherm::{
    adaptive_error_rate, adaptive_pe, derive_seed, distinguishability, empirical_distinguishability,
    fidelity_bloch, measure_prob, optimal_angle_single, optimal_static_multi, output_pair, pe_static_multi,
    waveplate_settings, AdaptiveOptions, BlochVector, DiscriminationProblem, GadChannel, PriorPair,
    ThermalBath,
};

use crate::config::SweepConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};

fn baths(cfg: &SweepConfig) -> Result<(ThermalBath, ThermalBath), CliError> {
    Ok((ThermalBath::from_xi(cfg.xi_hot)?, ThermalBath::from_xi(cfg.xi_cold)?))
}

fn state(v: [f64; 3]) -> Result<BlochVector, CliError> {
    Ok(BlochVector::new(v[0], v[1], v[2])?)
}

/// Probe state after `t` in each bath, as an equal-prior single-copy problem.
fn problem_at(cfg: &SweepConfig, t: f64) -> Result<DiscriminationProblem, CliError> {
    let (hot, cold) = baths(cfg)?;
    let (r_hot, r_cold) = output_pair(&state(cfg.input)?, &hot, &cold, t)?;
    Ok(DiscriminationProblem::single(r_hot, r_cold, PriorPair::EQUAL))
}

pub fn trajectory(cfg: &SweepConfig) -> Result<Table, CliError> {
    let (hot, cold) = baths(cfg)?;
    let input = state(cfg.input)?;
    let mut table = Table::new(&["t", "bath_label", "sx", "sz"]);
    let hot_path = qtherm::trajectory(&hot, &input, &cfg.times)?;
    let cold_path = qtherm::trajectory(&cold, &input, &cfg.times)?;
    for ((&t, h), c) in cfg.times.iter().zip(&hot_path).zip(&cold_path) {
        for (label, r) in [("hot", h), ("cold", c)] {
            table.push(vec![t.into(), label.into(), r.sx().into(), r.sz().into()]);
        }
    }
    Ok(table)
}

pub fn pe_curve(cfg: &SweepConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["t", "theta_opt", "pe_hot_vs_cold"]);
    for &t in &cfg.times {
        let (m, pe) = optimal_angle_single(&problem_at(cfg, t)?)?;
        table.push(vec![t.into(), m.theta().into(), pe.into()]);
    }
    Ok(table)
}

pub fn multiqubit(cfg: &SweepConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["t", "pe_N", "fidelity", "fidelity_bound"]);
    for &t in &cfg.times {
        let prob = problem_at(cfg, t)?.with_n(cfg.n_qubits)?;
        let (_, pe) = optimal_static_multi(&prob)?;
        let f = fidelity_bloch(&prob.rho1, &prob.rho2)?;
        table.push(vec![t.into(), pe.into(), f.into(), (0.5 * (1.0 - f)).into()]);
    }
    Ok(table)
}

pub fn distinguishability_curve(cfg: &SweepConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["t", "d_analytic", "d_empirical"]);
    for (i, &t) in cfg.times.iter().enumerate() {
        let prob = problem_at(cfg, t)?;
        let (m, _) = optimal_angle_single(&prob)?;
        let (p_hot, p_cold) = (measure_prob(&prob.rho1, &m), measure_prob(&prob.rho2, &m));
        let analytic = distinguishability(p_hot, p_cold, cfg.n_shots)?;
        let seed = derive_seed(cfg.seed, i as u64);
        let empirical = empirical_distinguishability(p_hot, p_cold, cfg.n_shots, cfg.replicates, seed)?;
        table.push(vec![t.into(), analytic.into(), empirical.into()]);
    }
    Ok(table)
}

pub fn adaptive(cfg: &SweepConfig) -> Result<Table, CliError> {
    let (rho1, rho2) = (state(cfg.rho1)?, state(cfg.rho2)?);
    let priors = PriorPair::EQUAL;
    let opts = AdaptiveOptions {
        quantize_step: cfg.quantize_deg.map(f64::to_radians),
        ..AdaptiveOptions::default()
    };
    let single = DiscriminationProblem::single(rho1, rho2, priors);
    let (m1, _) = optimal_angle_single(&single)?;
    let mut table = Table::new(&[
        "N",
        "pe_1qubit_static",
        "pe_global_static",
        "pe_adaptive_exact",
        "pe_adaptive_mc",
        "pe_adaptive_mc_se",
    ]);
    for n in 1..=cfg.n_qubits {
        let prob = single.with_n(n)?;
        let exact = if n <= DEFAULT_DEPTH_CAP {
            Some(adaptive_pe(&rho1, &rho2, priors, n, &opts)?)
        } else {
            None
        };
        let mc = adaptive_error_rate(&rho1, &rho2, priors, n, cfg.trials, derive_seed(cfg.seed, n as u64), &opts)?;
        table.push(vec![
            n.into(),
            pe_static_multi(&prob, &m1).1.into(),
            optimal_static_multi(&prob)?.1.into(),
            Cell::from(exact),
            mc.rate.into(),
            mc.std_error.into(),
        ]);
    }
    Ok(table)
}

pub fn waveplates(p: f64, gamma: f64) -> Result<Table, CliError> {
    let w = waveplate_settings(&GadChannel::new(p, gamma)?);
    let mut table = Table::new(&[
        "p",
        "gamma",
        "theta_vbs_rad",
        "theta_vbs_deg",
        "theta_v_rad",
        "theta_v_deg",
        "theta_h_rad",
        "theta_h_deg",
    ]);
    let mut row = vec![p.into(), gamma.into()];
    for angle in [w.theta_vbs, w.emission.theta_v, w.absorption.theta_h] {
        row.push(angle.into());
        row.push(angle.to_degrees().into());
    }
    table.push(row);
    Ok(table)
}
