use clap::{Args, Parser, Subcommand, ValueEnum};
use qtherm::BlochVector;
use serde::Serialize;

use crate::error::CliError;
use crate::output::round_sig;

#[derive(Debug, Parser)]
#[command(name = "qtherm", version, about = "Parameter sweeps for qubit-probe thermometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Subcommand)]
pub enum Command {
    /// Bloch components of the probe in each bath over time.
    Trajectory,
    /// Optimal single-copy measurement angle and error probability over time.
    PeCurve,
    /// Best static N-copy error probability and the fidelity bound over time.
    Multiqubit,
    /// Signal-to-noise of the optimal measurement over time.
    Distinguishability,
    /// Static and adaptive strategies by number of copies.
    Adaptive,
    /// Waveplate angles that emulate a given channel.
    Waveplates {
        /// Absorption-branch weight.
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        /// Damping parameter.
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Trajectory => "trajectory",
            Command::PeCurve => "pe-curve",
            Command::Multiqubit => "multiqubit",
            Command::Distinguishability => "distinguishability",
            Command::Adaptive => "adaptive",
            Command::Waveplates { .. } => "waveplates",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Hot bath xi = 1/(1 + 2 nbar), in (0, 1].
    #[arg(long, global = true, default_value_t = 1.0 / 20.0, allow_hyphen_values = true)]
    pub xi_hot: f64,
    /// Cold bath xi, in (0, 1].
    #[arg(long, global = true, default_value_t = 1.0 / 12.0, allow_hyphen_values = true)]
    pub xi_cold: f64,
    /// Probe state: +z, -z, +x, -x or an explicit "sx,sy,sz".
    #[arg(long, global = true, default_value = "+x", allow_hyphen_values = true)]
    pub input: String,
    #[arg(long, global = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t_start: f64,
    #[arg(long, global = true, default_value_t = 0.4, allow_hyphen_values = true)]
    pub t_stop: f64,
    #[arg(long, global = true, default_value_t = 0.005, allow_hyphen_values = true)]
    pub t_step: f64,
    /// Explicit comma-separated interaction times; overrides the uniform grid.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub times: Option<Vec<f64>>,
    /// Number of probe copies [default: 100 for multiqubit, 10 for adaptive].
    #[arg(long, global = true)]
    pub n_qubits: Option<usize>,
    /// Shots per simulated dataset.
    #[arg(long, global = true, default_value_t = 40_000)]
    pub n_shots: u64,
    /// Simulated datasets per time point for the empirical column.
    #[arg(long, global = true, default_value_t = 9)]
    pub replicates: usize,
    /// Monte Carlo runs per row of the adaptive table.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Round adaptive angles to this step, e.g. "0.2deg" or "0.0035rad";
    /// a bare number is in degrees.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub quantize_angles: Option<String>,
    /// First hypothesis of the adaptive comparison.
    #[arg(long, global = true, default_value = "-z", allow_hyphen_values = true)]
    pub rho1: String,
    /// Second hypothesis of the adaptive comparison.
    #[arg(long, global = true, default_value = "+x", allow_hyphen_values = true)]
    pub rho2: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file [default: stdout].
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

fn invalid(field: &'static str, message: impl Into<String>) -> CliError {
    CliError::Config { field, message: message.into() }
}

/// A validated run description, echoed into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub command: &'static str,
    pub xi_hot: f64,
    pub xi_cold: f64,
    pub input: [f64; 3],
    pub times: Vec<f64>,
    pub n_qubits: usize,
    pub n_shots: u64,
    pub replicates: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantize_deg: Option<f64>,
    pub rho1: [f64; 3],
    pub rho2: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub format: Format,
}

impl SweepConfig {
    /// The normalized settings the command actually reads, in a fixed order.
    pub fn echo(&self) -> serde_json::Value {
        let mut keys = vec!["command"];
        match self.command {
            "waveplates" => keys.extend(["p", "gamma"]),
            "adaptive" => keys.extend(["rho1", "rho2", "n_qubits", "trials", "seed", "quantize_deg"]),
            other => {
                keys.extend(["xi_hot", "xi_cold", "input", "times"]);
                match other {
                    "multiqubit" => keys.push("n_qubits"),
                    "distinguishability" => keys.extend(["n_shots", "replicates", "seed"]),
                    _ => {}
                }
            }
        }
        keys.push("format");
        let full = serde_json::to_value(self).expect("config serializes");
        let echoed = keys
            .into_iter()
            .filter_map(|k| full.get(k).map(|v| (k.to_owned(), v.clone())))
            .collect();
        serde_json::Value::Object(echoed)
    }

    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let a = &cli.sweep;
        let command = cli.command;
        let planar = !matches!(command, Command::Trajectory);
        for (field, xi) in [("xi_hot", a.xi_hot), ("xi_cold", a.xi_cold)] {
            if !(xi > 0.0 && xi <= 1.0) {
                return Err(invalid(field, format!("{xi} is outside (0, 1]")));
            }
        }
        let n_qubits = a.n_qubits.unwrap_or(match command {
            Command::Adaptive => 10,
            _ => 100,
        });
        if n_qubits == 0 {
            return Err(invalid("n_qubits", "must be at least 1"));
        }
        if a.n_shots == 0 {
            return Err(invalid("n_shots", "must be at least 1"));
        }
        if a.replicates < 2 {
            return Err(invalid("replicates", "need at least 2 datasets for a variance"));
        }
        if a.trials == 0 {
            return Err(invalid("trials", "must be at least 1"));
        }
        let (p, gamma) = match command {
            Command::Waveplates { p, gamma } => {
                for (field, v) in [("p", p), ("gamma", gamma)] {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(invalid(field, format!("{v} is outside [0, 1]")));
                    }
                }
                (Some(p), Some(gamma))
            }
            _ => (None, None),
        };
        Ok(SweepConfig {
            command: command.name(),
            xi_hot: a.xi_hot,
            xi_cold: a.xi_cold,
            input: parse_state("input", &a.input, planar)?.to_array(),
            times: time_grid(a)?,
            n_qubits,
            n_shots: a.n_shots,
            replicates: a.replicates,
            trials: a.trials,
            seed: a.seed,
            quantize_deg: a.quantize_angles.as_deref().map(parse_angle_step).transpose()?,
            rho1: parse_state("rho1", &a.rho1, true)?.to_array(),
            rho2: parse_state("rho2", &a.rho2, true)?.to_array(),
            p,
            gamma,
            format: a.format,
        })
    }
}

/// A named cardinal state or an explicit `sx,sy,sz` triple.
pub fn parse_state(field: &'static str, s: &str, planar: bool) -> Result<BlochVector, CliError> {
    let r = match s.trim().to_ascii_lowercase().as_str() {
        "+z" => BlochVector::EXCITED,
        "-z" => BlochVector::GROUND,
        "+x" => BlochVector::PLUS_X,
        "-x" => BlochVector::new(-1.0, 0.0, 0.0).expect("pure state"),
        other => {
            let parts = other
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| invalid(field, format!("expected +z, -z, +x, -x or sx,sy,sz; got {s:?}")))?;
            let [sx, sy, sz] = parts[..] else {
                return Err(invalid(field, format!("expected three components, got {}", parts.len())));
            };
            BlochVector::new(sx, sy, sz).map_err(|e| invalid(field, e.to_string()))?
        }
    };
    if planar {
        r.require_planar().map_err(|e| invalid(field, e.to_string()))?;
    }
    Ok(r)
}

/// Step in degrees from `"0.2deg"`, `"0.2°"`, `"0.0035rad"` or a bare number.
pub fn parse_angle_step(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    let (number, to_deg) = if let Some(v) = s.strip_suffix("deg").or_else(|| s.strip_suffix('°')) {
        (v, 1.0)
    } else if let Some(v) = s.strip_suffix("rad") {
        (v, 180.0 / std::f64::consts::PI)
    } else {
        (s, 1.0)
    };
    let step = number
        .trim()
        .parse::<f64>()
        .map_err(|_| invalid("quantize_angles", format!("cannot parse {s:?} as an angle")))?
        * to_deg;
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid("quantize_angles", "step must be positive"));
    }
    Ok(step)
}

fn time_grid(a: &SweepArgs) -> Result<Vec<f64>, CliError> {
    if let Some(times) = &a.times {
        if times.is_empty() {
            return Err(invalid("times", "list is empty"));
        }
        if let Some(t) = times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(invalid("times", format!("{t} is not a non-negative time")));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("times", "must be strictly increasing"));
        }
        return Ok(times.clone());
    }
    if !(a.t_start >= 0.0 && a.t_start.is_finite()) {
        return Err(invalid("t_start", format!("{} is not a non-negative time", a.t_start)));
    }
    if !(a.t_step > 0.0 && a.t_step.is_finite()) {
        return Err(invalid("t_step", "must be positive"));
    }
    if !(a.t_stop >= a.t_start && a.t_stop.is_finite()) {
        return Err(invalid("t_stop", "must not precede t_start"));
    }
    // Tolerate rounding in (stop - start)/step so the endpoint is kept.
    let count = ((a.t_stop - a.t_start) / a.t_step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| round_sig(a.t_start + i as f64 * a.t_step)).collect())
}
