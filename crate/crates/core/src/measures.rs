//! Quantum-resource measures on (dephased) X-states.
//!
//! All functions read the entries of the evolved matrix directly: the
//! dephasing factor is already inside `ρ14` and `ρ23`, so nothing here takes
//! `η` as an input except [`concurrence_closed`] and the bookkeeping fields of
//! [`MeasureRecord`].

use core::fmt;

use thiserror::Error;

use crate::linalg::{kron, ComplexMat2, ComplexMat4, PauliIndex, Subsystem};
use crate::state::{xstate_params, DensityMatrix4, HyperonChannel, StateError};

/// Slack allowed on `c ∈ [0, 1]` before [`eof`] reports a domain error.
pub const UNIT_INTERVAL_TOL: f64 = 1e-12;
/// Below this the discord denominator is treated as vanishing.
pub const GQD_DEGENERATE_DENOMINATOR: f64 = 1e-14;

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;
const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MeasureError {
    #[error("concurrence {0} outside [0, 1]")]
    DomainError(f64),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Which party measures in a steering test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringDirection {
    /// The hyperon (Alice) steers the antihyperon (Bob).
    AliceToBob,
    /// The antihyperon (Bob) steers the hyperon (Alice).
    BobToAlice,
}

/// `τ = ρ/√3 + (1 − 1/√3) σ`, where `σ` is `I/2 ⊗ ρ_B` for Alice→Bob and
/// `ρ_A ⊗ I/2` for Bob→Alice. Entanglement of `τ` witnesses steerability of `ρ`.
pub fn steering_operator(rho: &DensityMatrix4, direction: SteeringDirection) -> ComplexMat4 {
    let half = ComplexMat2::identity().scale_real(0.5);
    let marginal = match direction {
        SteeringDirection::AliceToBob => kron(&half, &rho.reduced(Subsystem::Second)),
        SteeringDirection::BobToAlice => kron(&rho.reduced(Subsystem::First), &half),
    };
    rho.matrix().scale_real(FRAC_1_SQRT_3) + marginal.scale_real(1.0 - FRAC_1_SQRT_3)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FFunctions {
    pub f_a: f64,
    pub f_b: f64,
    pub f_c: f64,
}

/// Diagonal combinations entering the steering inequalities.
pub fn f_functions(rho: &DensityMatrix4) -> FFunctions {
    let d = |i| rho.at(i, i).re;
    let (r11, r22, r33, r44) = (d(1), d(2), d(3), d(4));
    let lo = (2.0 - SQRT_3) / 2.0;
    let hi = (2.0 + SQRT_3) / 2.0;
    let cross = 0.25 * (r11 + r44) * (r22 + r33);
    FFunctions {
        f_a: lo * r11 * r44 + hi * r22 * r33 + cross,
        f_b: 0.25 * (r11 - r44) * (r22 - r33),
        f_c: hi * r11 * r44 + lo * r22 * r33 + cross,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SteeringClass {
    NoWay,
    OneWayAB,
    OneWayBA,
    TwoWay,
}

impl SteeringClass {
    pub fn classify(s_ab: f64, s_ba: f64) -> Self {
        match (s_ab > 0.0, s_ba > 0.0) {
            (false, false) => SteeringClass::NoWay,
            (true, false) => SteeringClass::OneWayAB,
            (false, true) => SteeringClass::OneWayBA,
            (true, true) => SteeringClass::TwoWay,
        }
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            SteeringClass::NoWay => "no-way",
            SteeringClass::OneWayAB => "one-way-ab",
            SteeringClass::OneWayBA => "one-way-ba",
            SteeringClass::TwoWay => "two-way",
        }
    }
}

impl fmt::Display for SteeringClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringResult {
    /// Alice → Bob.
    pub s_ab: f64,
    /// Bob → Alice.
    pub s_ba: f64,
    pub delta_s: f64,
    pub class: SteeringClass,
}

/// Bidirectional steerability `S = max{0, (8/√3) max(|ρ14|² − f_a ∓ f_b, |ρ23|² − f_c ∓ f_b)}`.
pub fn steering(rho: &DensityMatrix4) -> SteeringResult {
    let f = f_functions(rho);
    let c14 = rho.at(1, 4).norm_sqr();
    let c23 = rho.at(2, 3).norm_sqr();
    let weight = 8.0 / SQRT_3;
    let score = |sign: f64| {
        let outer = c14 - f.f_a + sign * f.f_b;
        let inner = c23 - f.f_c + sign * f.f_b;
        (weight * outer.max(inner)).max(0.0)
    };
    let s_ab = score(-1.0);
    let s_ba = score(1.0);
    SteeringResult { s_ab, s_ba, delta_s: (s_ab - s_ba).abs(), class: SteeringClass::classify(s_ab, s_ba) }
}

/// Wootters concurrence of an X-state,
/// `2 max{|ρ23| − sqrt(ρ11 ρ44), |ρ14| − sqrt(ρ22 ρ33), 0}`.
pub fn concurrence(rho: &DensityMatrix4) -> f64 {
    let d = |i| rho.at(i, i).re.max(0.0);
    let inner = rho.at(2, 3).norm() - libm::sqrt(d(1) * d(4));
    let outer = rho.at(1, 4).norm() - libm::sqrt(d(2) * d(3));
    2.0 * inner.max(outer).max(0.0)
}

/// Closed-form concurrence `|η γ2|` of the dephased production state.
///
/// Agrees with [`concurrence`] at `η = 1`. For `η < 1` it is an upper bound:
/// the difference is `½(1 − η)(γ1 − γ2)` whenever the Wootters expression is
/// positive, because dephasing leaves the populations untouched.
pub fn concurrence_closed(ch: &HyperonChannel, phi: f64, eta: f64) -> Result<f64, StateError> {
    Ok((eta * xstate_params(ch, phi)?.gamma[1]).abs())
}

/// `|η γ2|` read off an evolved state: `|R22| = 2|Re ρ23 − Re ρ14|`.
pub fn concurrence_closed_from_state(rho: &DensityMatrix4) -> f64 {
    (2.0 * (rho.at(2, 3).re - rho.at(1, 4).re)).abs()
}

/// Binary entropy `g(x) = −x log2 x − (1 − x) log2 (1 − x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * libm::log2(p) };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation `g((1 + sqrt(1 − c²))/2)`.
pub fn eof(c: f64) -> Result<f64, MeasureError> {
    if !(-UNIT_INTERVAL_TOL..=1.0 + UNIT_INTERVAL_TOL).contains(&c) {
        return Err(MeasureError::DomainError(c));
    }
    let c = c.clamp(0.0, 1.0);
    let x = (0.5 * (1.0 + libm::sqrt(1.0 - c * c))).clamp(0.0, 1.0);
    Ok(binary_entropy(x))
}

/// Non-vanishing Fano–Bloch components of an X-state, `R_αβ = tr[(σ_α ⊗ σ_β) ρ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoBloch {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r03: f64,
    pub r30: f64,
}

/// Components from the X-state entries.
pub fn fano_bloch(rho: &DensityMatrix4) -> FanoBloch {
    let d = |i| rho.at(i, i).re;
    let r14 = rho.at(1, 4).re;
    let r23 = rho.at(2, 3).re;
    FanoBloch {
        r11: 2.0 * (r23 + r14),
        r22: 2.0 * (r23 - r14),
        r33: 1.0 - 2.0 * (d(2) + d(3)),
        r03: d(1) - d(2) + d(3) - d(4),
        r30: d(1) + d(2) - d(3) - d(4),
    }
}

/// Same components computed as explicit Pauli expectation values.
pub fn fano_bloch_by_trace(rho: &DensityMatrix4) -> FanoBloch {
    use PauliIndex as P;
    FanoBloch {
        r11: rho.expectation(P::X, P::X),
        r22: rho.expectation(P::Y, P::Y),
        r33: rho.expectation(P::Z, P::Z),
        r03: rho.expectation(P::I, P::Z),
        r30: rho.expectation(P::Z, P::I),
    }
}

/// Trace-norm geometric discord of an X-state.
///
/// The two transverse correlations are ordered so that `|R11| ≥ |R22|`
/// (a local rotation about z, which leaves the discord unchanged).
pub fn gqd(rho: &DensityMatrix4) -> f64 {
    gqd_from_components(&fano_bloch(rho))
}

pub fn gqd_from_components(r: &FanoBloch) -> f64 {
    let (a2, b2) = {
        let (x, y) = (r.r11 * r.r11, r.r22 * r.r22);
        (x.max(y), x.min(y))
    };
    let r33_2 = r.r33 * r.r33;
    let r_max2 = (b2 + r.r30 * r.r30).max(r33_2);
    let r_min2 = a2.min(r33_2);
    let den = r_max2 - r_min2 + a2 - b2;
    if den < GQD_DEGENERATE_DENOMINATOR {
        return 0.0;
    }
    let num = (a2 * r_max2 - b2 * r_min2).max(0.0);
    0.5 * libm::sqrt(num / den)
}

/// l1-norm coherence: sum of the moduli of all off-diagonal entries.
pub fn coherence_l1(rho: &DensityMatrix4) -> f64 {
    let m = rho.matrix();
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += m[(i, j)].norm();
            }
        }
    }
    sum
}

/// All measures on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureRecord {
    pub steering: SteeringResult,
    /// Closed-form `|η γ2|`, the quantity the entanglement figures are
    /// built from; see [`concurrence_closed`].
    pub concurrence: f64,
    pub eof: f64,
    pub gqd: f64,
    pub coherence_l1: f64,
    pub eta: f64,
    pub kernel: f64,
}

pub fn measure_all(rho: &DensityMatrix4, eta: f64, kernel: f64) -> Result<MeasureRecord, MeasureError> {
    let concurrence = concurrence_closed_from_state(rho);
    Ok(MeasureRecord {
        steering: steering(rho),
        concurrence,
        eof: eof(concurrence)?,
        gqd: gqd(rho),
        coherence_l1: coherence_l1(rho),
        eta,
        kernel,
    })
}
