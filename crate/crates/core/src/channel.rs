//! Classically correlated dephasing driven by random telegraph noise.
//!
//! Both qubits see the same σz-type Pauli channel. Consecutive applications
//! share a classical correlation `μ`, so the joint Kraus weights are
//! `p_ij = (1 − μ) p_i p_j + μ p_i δ_ij`. The single-qubit flip probability
//! comes from the ensemble-averaged telegraph kernel `K(t)` via
//! `p = (1 − K)/2`. On X-states the whole channel reduces to scaling the two
//! off-diagonal pairs by `η = K² + (1 − K²) μ`.

use thiserror::Error;

use crate::linalg::{pauli_product, ComplexMat4, PauliIndex};
use crate::state::DensityMatrix4;

/// Tolerance on `|K| ≤ 1` and on probability sums.
pub const KERNEL_TOL: f64 = 1e-12;
/// `|4τ − 1|` below this is treated as the regime boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Below this `v` the `v → 0` limit of the kernel is used.
pub const SMALL_V: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ChannelError {
    #[error("classical correlation mu = {0} outside [0, 1]")]
    MuOutOfRange(f64),
    #[error("time constant tau = {0} must be positive and finite")]
    InvalidTau(f64),
    #[error("negative time t = {0}")]
    NegativeTime(f64),
    #[error("kernel value {0} outside [-1, 1]")]
    InvalidKernel(f64),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("input is not an X-state (off-X magnitude {0:e})")]
    NotXState(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `4τ < 1`: monotone decay.
    Markovian,
    /// `4τ > 1`: damped oscillation.
    NonMarkovian,
    /// `4τ = 1` within [`BOUNDARY_TOL`].
    Boundary,
}

impl Regime {
    pub fn of_tau(tau: f64) -> Self {
        let x = 4.0 * tau - 1.0;
        if x.abs() < BOUNDARY_TOL {
            Regime::Boundary
        } else if x < 0.0 {
            Regime::Markovian
        } else {
            Regime::NonMarkovian
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Regime::Markovian => "markovian",
            Regime::NonMarkovian => "non-markovian",
            Regime::Boundary => "boundary",
        }
    }
}

/// Which closed form of the telegraph kernel to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelVariant {
    /// `cos + (u/v) sin` for `4τ > 1`, `cosh + (u/v) sinh` for `4τ < 1`.
    #[default]
    Standard,
    /// `cos + (1/v) sinh` for `4τ > 1`, `cosh + (1/v) sin` for `4τ < 1`.
    /// Violates `K'(0) = 0` and, for `4τ > 1`, `|K| ≤ 1`; kept for comparison
    /// and as a negative control for the self-check.
    Printed,
}

impl KernelVariant {
    pub const fn as_str(self) -> &'static str {
        match self {
            KernelVariant::Standard => "standard",
            KernelVariant::Printed => "printed",
        }
    }
}

/// Coin amplitude of the telegraph signal; fixed.
pub const OMEGA: f64 = 1.0;

/// Channel parameters: correlation `μ`, noise time constant `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    mu: f64,
    tau: f64,
    variant: KernelVariant,
}

impl ChannelConfig {
    pub fn new(mu: f64, tau: f64) -> Result<Self, ChannelError> {
        Self::with_variant(mu, tau, KernelVariant::Standard)
    }

    pub fn with_variant(mu: f64, tau: f64, variant: KernelVariant) -> Result<Self, ChannelError> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(ChannelError::MuOutOfRange(mu));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(ChannelError::InvalidTau(tau));
        }
        Ok(Self { mu, tau, variant })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
    pub fn variant(&self) -> KernelVariant {
        self.variant
    }
    pub fn regime(&self) -> Regime {
        Regime::of_tau(self.tau)
    }
    pub fn omega(&self) -> f64 {
        OMEGA
    }
    /// Damping rate `u = 1/(2τ)`.
    pub fn u(&self) -> f64 {
        1.0 / (2.0 * self.tau)
    }
    /// `v = sqrt(|u² − 1|)`.
    pub fn v(&self) -> f64 {
        let u = self.u();
        libm::sqrt((u * u - 1.0).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub k: f64,
    pub u: f64,
    pub v: f64,
}

pub fn memory_kernel(t: f64, cfg: &ChannelConfig) -> Result<KernelValue, ChannelError> {
    if !(t >= 0.0) {
        return Err(ChannelError::NegativeTime(t));
    }
    let (u, v) = (cfg.u(), cfg.v());
    let envelope = libm::exp(-u * t);
    let limit = cfg.regime() == Regime::Boundary || v < SMALL_V;
    let k = match (cfg.variant, limit) {
        (KernelVariant::Standard, true) => envelope * (1.0 + u * t),
        (KernelVariant::Printed, true) => envelope * (1.0 + t),
        (KernelVariant::Standard, false) => match cfg.regime() {
            Regime::NonMarkovian => {
                envelope * (libm::cos(v * t) + (u / v) * libm::sin(v * t))
            }
            _ => {
                // e^{-ut} cosh(vt) etc. overflow separately for large t;
                // combine the exponents first.
                let plus = libm::exp((v - u) * t);
                let minus = libm::exp(-(u + v) * t);
                0.5 * (plus + minus) + 0.5 * (u / v) * (plus - minus)
            }
        },
        (KernelVariant::Printed, false) => match cfg.regime() {
            Regime::NonMarkovian => envelope * (libm::cos(v * t) + libm::sinh(v * t) / v),
            _ => {
                let cosh_part = 0.5 * (libm::exp((v - u) * t) + libm::exp(-(u + v) * t));
                cosh_part + envelope * libm::sin(v * t) / v
            }
        },
    };
    Ok(KernelValue { k, u, v })
}

/// `p = (1 − K)/2`.
pub fn flip_probability(k: KernelValue) -> Result<f64, ChannelError> {
    if !(k.k.abs() <= 1.0 + KERNEL_TOL) {
        return Err(ChannelError::InvalidKernel(k.k));
    }
    Ok((0.5 * (1.0 - k.k)).clamp(0.0, 1.0))
}

/// Joint Kraus weights `p_ij` indexed by Pauli labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProbabilities {
    p: [[f64; 4]; 4],
}

impl JointProbabilities {
    /// `p_ij = (1 − μ) p_i p_j + μ p_i δ_ij` for a single-qubit Pauli
    /// distribution `(p_0, p_x, p_y, p_z)`.
    pub fn from_single(dist: [f64; 4], mu: f64) -> Result<Self, ChannelError> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(ChannelError::MuOutOfRange(mu));
        }
        for &q in &dist {
            if !(0.0..=1.0).contains(&q) {
                return Err(ChannelError::ProbabilityOutOfRange(q));
            }
        }
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > KERNEL_TOL {
            return Err(ChannelError::ProbabilityOutOfRange(total));
        }
        let mut p = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let delta = if i == j { dist[i] } else { 0.0 };
                p[i][j] = (1.0 - mu) * dist[i] * dist[j] + mu * delta;
            }
        }
        Ok(Self { p })
    }

    /// Arbitrary weights, for tests of the Kraus map itself.
    pub fn from_matrix(p: [[f64; 4]; 4]) -> Result<Self, ChannelError> {
        let mut total = 0.0;
        for &q in p.iter().flatten() {
            if !(q >= 0.0) {
                return Err(ChannelError::ProbabilityOutOfRange(q));
            }
            total += q;
        }
        if (total - 1.0).abs() > KERNEL_TOL {
            return Err(ChannelError::ProbabilityOutOfRange(total));
        }
        Ok(Self { p })
    }

    pub fn get(&self, i: PauliIndex, j: PauliIndex) -> f64 {
        self.p[i.index()][j.index()]
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.p
    }

    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }
}

/// Dephasing weights: `p_0 = 1 − p`, `p_x = p_y = 0`, `p_z = p`.
pub fn joint_probabilities(p: f64, mu: f64) -> Result<JointProbabilities, ChannelError> {
    JointProbabilities::from_single([1.0 - p, 0.0, 0.0, p], mu)
}

/// `Σ_ij L_ij ρ L_ij†` with `L_ij = sqrt(p_ij) σ_i ⊗ σ_j`.
pub fn kraus_apply(rho: &DensityMatrix4, jp: &JointProbabilities) -> DensityMatrix4 {
    let mut out = ComplexMat4::zeros();
    for i in PauliIndex::ALL {
        for j in PauliIndex::ALL {
            let w = jp.get(i, j);
            if w == 0.0 {
                continue;
            }
            let l = pauli_product(i, j);
            out = out + (l * *rho.matrix() * l.adjoint()).scale_real(w);
        }
    }
    DensityMatrix4::new_unchecked(out)
}

/// Off-diagonal survival factor `η = K² + (1 − K²) μ`.
pub fn eta(t: f64, cfg: &ChannelConfig) -> Result<f64, ChannelError> {
    let k = memory_kernel(t, cfg)?.k;
    Ok(eta_from_kernel(k, cfg.mu))
}

pub fn eta_from_kernel(k: f64, mu: f64) -> f64 {
    let k2 = k * k;
    k2 + (1.0 - k2) * mu
}

/// Scales the X-state coherences `ρ14`, `ρ23` (and their conjugates) by `η`.
pub fn dephase(rho0: &DensityMatrix4, eta: f64) -> Result<DensityMatrix4, ChannelError> {
    let off = rho0.off_x_magnitude();
    if off > crate::state::X_SHAPE_TOL {
        return Err(ChannelError::NotXState(off));
    }
    let mut m = *rho0.matrix();
    for &(i, j) in &[(0, 3), (3, 0), (1, 2), (2, 1)] {
        m[(i, j)] *= eta;
    }
    Ok(DensityMatrix4::new_unchecked(m))
}

/// Closed-form evolution of an X-state to time `t`.
pub fn evolve(rho0: &DensityMatrix4, t: f64, cfg: &ChannelConfig) -> Result<DensityMatrix4, ChannelError> {
    let k = memory_kernel(t, cfg)?;
    if !(k.k.abs() <= 1.0 + KERNEL_TOL) {
        return Err(ChannelError::InvalidKernel(k.k));
    }
    dephase(rho0, eta_from_kernel(k.k, cfg.mu))
}

/// Evolution through the explicit Kraus sum; the oracle for [`evolve`].
pub fn evolve_kraus(rho0: &DensityMatrix4, t: f64, cfg: &ChannelConfig) -> Result<DensityMatrix4, ChannelError> {
    let k = memory_kernel(t, cfg)?;
    let p = flip_probability(k)?;
    Ok(kraus_apply(rho0, &joint_probabilities(p, cfg.mu)?))
}
