//! Thermal baths and the generalized amplitude damping (GAD) channel.
//!
//! Times are dimensionless in units of the coupling time `tau_sp`;
//! temperatures are in units of `hbar omega / k_B`.

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::state::{bloch_to_density, density_to_bloch, BlochVector, DensityMatrix};

/// A bosonic thermal bath, encoded by its mean occupation number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermalBath {
    Finite { nbar: f64 },
    /// `T = infinity`: `xi = 0`, `p = 1/2`.
    Infinite,
}

impl ThermalBath {
    pub const ZERO_TEMPERATURE: ThermalBath = ThermalBath::Finite { nbar: 0.0 };

    pub fn from_nbar(nbar: f64) -> Result<Self> {
        if !(nbar >= 0.0) {
            return Err(Error::OutOfRange { name: "nbar", value: nbar });
        }
        if nbar.is_infinite() {
            return Ok(ThermalBath::Infinite);
        }
        Ok(ThermalBath::Finite { nbar })
    }

    /// Bath with `xi = 1/(1 + 2 nbar)`; `xi = 0` is the infinite-temperature bath.
    pub fn from_xi(xi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::OutOfRange { name: "xi", value: xi });
        }
        if xi == 0.0 {
            return Ok(ThermalBath::Infinite);
        }
        Ok(ThermalBath::Finite { nbar: 0.5 * (1.0 / xi - 1.0) })
    }

    /// Bath at temperature `t` via the Planck occupation `1/(exp(1/t) - 1)`.
    pub fn from_temperature(t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::OutOfRange { name: "temperature", value: t });
        }
        match t {
            0.0 => Ok(ThermalBath::ZERO_TEMPERATURE),
            t if t.is_infinite() => Ok(ThermalBath::Infinite),
            t => Ok(ThermalBath::Finite { nbar: 1.0 / (1.0 / t).exp_m1() }),
        }
    }

    pub fn nbar(&self) -> f64 {
        match *self {
            ThermalBath::Finite { nbar } => nbar,
            ThermalBath::Infinite => f64::INFINITY,
        }
    }

    pub fn xi(&self) -> f64 {
        match *self {
            ThermalBath::Finite { nbar } => 1.0 / (1.0 + 2.0 * nbar),
            ThermalBath::Infinite => 0.0,
        }
    }

    /// Asymptotic excited-state population `p = nbar/(1 + 2 nbar)`.
    pub fn p_exc(&self) -> f64 {
        match *self {
            ThermalBath::Finite { nbar } => nbar / (1.0 + 2.0 * nbar),
            ThermalBath::Infinite => 0.5,
        }
    }

    /// `T = 1/(2 atanh(xi))`.
    pub fn temperature(&self) -> f64 {
        match *self {
            ThermalBath::Finite { nbar: 0.0 } => 0.0,
            ThermalBath::Finite { .. } => 0.5 / self.xi().atanh(),
            ThermalBath::Infinite => f64::INFINITY,
        }
    }

    /// Population relaxation time `xi tau_sp`.
    pub fn tau1(&self) -> f64 {
        self.xi()
    }

    /// Coherence relaxation time `2 xi tau_sp`.
    pub fn tau2(&self) -> f64 {
        2.0 * self.xi()
    }

    /// The GAD channel this bath applies after interaction time `t`.
    pub fn channel_at(&self, t: f64) -> Result<GadChannel> {
        let gamma = gamma_at(self, t)?;
        match self {
            ThermalBath::Infinite => GadChannel::new(self.p_exc(), gamma),
            ThermalBath::Finite { .. } => GadChannel::from_survival(self.p_exc(), (-t / self.xi()).exp()),
        }
    }
}

/// Generalized amplitude damping with absorption weight `p` and damping `gamma`.
///
/// `p > 1/2` (population inversion) is allowed even though no bath produces it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadChannel {
    p: f64,
    gamma: f64,
    /// `1 - gamma`, kept separately so long times keep their precision.
    survival: f64,
}

impl GadChannel {
    pub const IDENTITY: GadChannel = GadChannel { p: 0.0, gamma: 0.0, survival: 1.0 };

    pub fn new(p: f64, gamma: f64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("gamma", gamma)?;
        Ok(GadChannel { p, gamma, survival: 1.0 - gamma })
    }

    /// Channel with damping `1 - survival`, exact even when `survival` is
    /// far below machine epsilon.
    pub fn from_survival(p: f64, survival: f64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("survival", survival)?;
        Ok(GadChannel { p, gamma: 1.0 - survival, survival })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The two weighted Kraus pairs: `(p, absorption)` and `(1 - p, emission)`.
    pub fn kraus_branches(&self) -> [(f64, KrausPair); 2] {
        [(self.p, KrausPair::absorption(self.gamma)), (1.0 - self.p, KrausPair::emission(self.gamma))]
    }

    /// The equivalent affine action on Bloch vectors.
    pub fn affine_map(&self) -> AffineMap {
        let c = self.survival.sqrt();
        AffineMap {
            matrix: [[c, 0.0, 0.0], [0.0, c, 0.0], [0.0, 0.0, self.survival]],
            offset: [0.0, 0.0, (2.0 * self.p - 1.0) * self.gamma],
        }
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidProbability { name, value });
    }
    Ok(())
}

/// A pair of Kraus operators `rho -> K1 rho K1^dag + K2 rho K2^dag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausPair {
    pub k1: Mat2,
    pub k2: Mat2,
}

impl KrausPair {
    /// `|H> -> |V>` with probability `gamma`.
    pub fn absorption(gamma: f64) -> Self {
        KrausPair {
            k1: Mat2::diag((1.0 - gamma).sqrt(), 1.0),
            k2: Mat2::real(0.0, 0.0, gamma.sqrt(), 0.0),
        }
    }

    /// `|V> -> |H>` with probability `gamma`.
    pub fn emission(gamma: f64) -> Self {
        KrausPair {
            k1: Mat2::diag(1.0, (1.0 - gamma).sqrt()),
            k2: Mat2::real(0.0, gamma.sqrt(), 0.0, 0.0),
        }
    }

    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        self.k1.sandwich(rho) + self.k2.sandwich(rho)
    }

    /// `K1^dag K1 + K2^dag K2`; the identity for a trace-preserving pair.
    pub fn completeness(&self) -> Mat2 {
        self.k1.adjoint() * self.k1 + self.k2.adjoint() * self.k2
    }
}

/// `gamma(t) = 1 - exp(-t/xi)`.
pub fn gamma_at(bath: &ThermalBath, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    match bath {
        ThermalBath::Infinite => Ok(1.0),
        ThermalBath::Finite { .. } => Ok(-(-t / bath.xi()).exp_m1()),
    }
}

pub fn apply_gad_bloch(ch: &GadChannel, v: &BlochVector) -> BlochVector {
    let c = ch.survival.sqrt();
    BlochVector::from_trusted(
        c * v.sx(),
        c * v.sy(),
        ch.survival * v.sz() + (2.0 * ch.p - 1.0) * ch.gamma,
    )
}

pub fn apply_gad_kraus(ch: &GadChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let out = ch
        .kraus_branches()
        .iter()
        .map(|(w, pair)| pair.apply(rho.matrix()).scale(*w))
        .fold(Mat2::ZERO, |acc, m| acc + m);
    DensityMatrix::new(out)
}

/// Fixed point `(0, 0, 2p - 1)` of every channel the bath produces.
pub fn asymptotic_state(bath: &ThermalBath) -> BlochVector {
    BlochVector::from_trusted(0.0, 0.0, 2.0 * bath.p_exc() - 1.0)
}

/// The state after thermalizing for each of `times`, which must be
/// non-negative and ascending.
pub fn trajectory(bath: &ThermalBath, initial: &BlochVector, times: &[f64]) -> Result<Vec<BlochVector>> {
    if times.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::UnsortedTimes);
    }
    times
        .iter()
        .map(|&t| Ok(apply_gad_bloch(&bath.channel_at(t)?, initial)))
        .collect()
}

/// Half-wave plate angles of one interferometric channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchAngles {
    pub theta_h: f64,
    pub theta_v: f64,
}

impl BranchAngles {
    pub fn kraus(&self) -> KrausPair {
        channel_from_waveplates(self.theta_h, self.theta_v)
    }
}

/// Waveplate settings that realize a GAD channel optically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplateSettings {
    /// Variable beamsplitter plate: `cos^2(2 theta_vbs) = p` routes to the absorption branch.
    pub theta_vbs: f64,
    /// `theta_h = 0`, `sin^2(2 theta_v) = gamma`.
    pub emission: BranchAngles,
    /// `theta_v = 0`, `sin^2(2 theta_h) = gamma`.
    pub absorption: BranchAngles,
}

impl WaveplateSettings {
    /// Runs a state through the emulated channel.
    pub fn emulate(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let c = (2.0 * self.theta_vbs).cos();
        let w_abs = c * c;
        let out = self.absorption.kraus().apply(rho.matrix()).scale(w_abs)
            + self.emission.kraus().apply(rho.matrix()).scale(1.0 - w_abs);
        DensityMatrix::new(out)
    }
}

/// Principal-branch angles (all in `[0, pi/4]`) realizing `ch`.
pub fn waveplate_settings(ch: &GadChannel) -> WaveplateSettings {
    let damping = 0.5 * ch.gamma.sqrt().asin();
    WaveplateSettings {
        theta_vbs: 0.5 * ch.p.sqrt().acos(),
        emission: BranchAngles { theta_h: 0.0, theta_v: damping },
        absorption: BranchAngles { theta_h: damping, theta_v: 0.0 },
    }
}

/// Kraus pair of one interferometer: `K1 = diag(cos 2theta_H, cos 2theta_V)`,
/// `K2 = antidiag(sin 2theta_V, sin 2theta_H)`.
pub fn channel_from_waveplates(theta_h: f64, theta_v: f64) -> KrausPair {
    let (sh, ch) = (2.0 * theta_h).sin_cos();
    let (sv, cv) = (2.0 * theta_v).sin_cos();
    KrausPair { k1: Mat2::diag(ch, cv), k2: Mat2::real(0.0, sv, sh, 0.0) }
}

/// `v -> A v + b` on Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub matrix: [[f64; 3]; 3],
    pub offset: [f64; 3],
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        matrix: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        offset: [0.0; 3],
    };

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.offset[i] + (0..3).map(|j| self.matrix[i][j] * v[j]).sum::<f64>())
    }

    pub fn max_abs_diff(&self, other: &AffineMap) -> f64 {
        let m = self.matrix.iter().flatten().zip(other.matrix.iter().flatten());
        let b = self.offset.iter().zip(other.offset.iter());
        m.chain(b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Residual above which a probed channel is reported as non-affine.
pub const LINEARITY_TOLERANCE: f64 = 1e-8;

/// Recovers the affine Bloch action of a channel from its outputs on the six
/// cardinal states, checked against the maximally mixed probe.
pub fn characterize_channel<F>(channel: F) -> Result<AffineMap>
where
    F: Fn(&DensityMatrix) -> Result<DensityMatrix>,
{
    let probe = |v: [f64; 3]| -> Result<[f64; 3]> {
        let rho = bloch_to_density(&BlochVector::new(v[0], v[1], v[2])?)?;
        Ok(density_to_bloch(&channel(&rho)?)?.to_array())
    };
    let centre = probe([0.0; 3])?;
    let mut map = AffineMap { matrix: [[0.0; 3]; 3], offset: [0.0; 3] };
    let mut midpoints = [[0.0; 3]; 3];
    for axis in 0..3 {
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        let plus = probe(e)?;
        e[axis] = -1.0;
        let minus = probe(e)?;
        for i in 0..3 {
            map.matrix[i][axis] = 0.5 * (plus[i] - minus[i]);
            midpoints[axis][i] = 0.5 * (plus[i] + minus[i]);
        }
    }
    map.offset = [0, 1, 2].map(|i| midpoints.iter().map(|m| m[i]).sum::<f64>() / 3.0);
    let residual = midpoints
        .iter()
        .flatten()
        .zip(map.offset.iter().cycle())
        .chain(centre.iter().zip(map.offset.iter()))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > LINEARITY_TOLERANCE {
        return Err(Error::NonLinearChannel { residual });
    }
    Ok(map)
}
