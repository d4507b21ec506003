//! Spin state of a hyperon–antihyperon pair from `e+e- -> J/psi -> Y Ybar`.
//!
//! The production state is parameterised by the decay parameter `υ_ψ`, the
//! form-factor phase `Δθ` and the production angle `φ`. Swapping the y and z
//! axes and diagonalising the x–z correlation block turns it into a symmetric
//! X-state, which is what every downstream module works with.

use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    self, hermitian_eigenvalues, pauli_product, ComplexMat, ComplexMat2, ComplexMat4, LinalgError,
    PauliIndex,
};

/// Radicand values in `[-RADICAND_TOL, 0)` are treated as round-off and clamped.
pub const RADICAND_TOL: f64 = 1e-12;
/// Trace tolerance for [`DensityMatrix4`].
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest admissible eigenvalue for [`DensityMatrix4`].
pub const PSD_TOL: f64 = 1e-9;
/// Entries outside the X pattern must be below this.
pub const X_SHAPE_TOL: f64 = 1e-12;

const MIN_DENOMINATOR: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StateError {
    #[error("unknown hyperon channel")]
    UnknownChannel,
    #[error("production angle {phi} outside [0, pi]")]
    AngleOutOfRange { phi: f64 },
    #[error("upsilon_psi = {0} outside [-1, 1]")]
    UpsilonOutOfRange(f64),
    #[error("delta_theta = {0} outside [-pi, pi]")]
    PhaseOutOfRange(f64),
    #[error("negative discriminant {radicand:e} at phi = {phi}")]
    NegativeDiscriminant { radicand: f64, phi: f64 },
    #[error("trace {trace} differs from 1")]
    NotUnitTrace { trace: f64 },
    #[error("smallest eigenvalue {min_eigenvalue:e} is negative")]
    NotPositive { min_eigenvalue: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The four registered `J/psi -> Y Ybar` decay channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelName {
    Lambda,
    SigmaPlus,
    XiMinus,
    XiZero,
}

impl ChannelName {
    pub const ALL: [ChannelName; 4] = [
        ChannelName::Lambda,
        ChannelName::SigmaPlus,
        ChannelName::XiMinus,
        ChannelName::XiZero,
    ];

    /// Lower-case ASCII name used on the command line and in output files.
    pub const fn as_str(self) -> &'static str {
        match self {
            ChannelName::Lambda => "lambda",
            ChannelName::SigmaPlus => "sigma+",
            ChannelName::XiMinus => "xi-",
            ChannelName::XiZero => "xi0",
        }
    }
}

impl fmt::Display for ChannelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelName {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChannelName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or(StateError::UnknownChannel)
    }
}

/// Production parameters of one decay channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperonChannel {
    pub name: ChannelName,
    /// Decay parameter `υ_ψ` of the vector charmonium, in `[-1, 1]`.
    pub upsilon_psi: f64,
    /// Relative form-factor phase `Δθ` in radians, in `[-π, π]`.
    pub delta_theta: f64,
}

impl HyperonChannel {
    /// Channel with arbitrary parameters, checked against their domains.
    pub fn custom(name: ChannelName, upsilon_psi: f64, delta_theta: f64) -> Result<Self, StateError> {
        if !(-1.0..=1.0).contains(&upsilon_psi) {
            return Err(StateError::UpsilonOutOfRange(upsilon_psi));
        }
        if !(-PI..=PI).contains(&delta_theta) {
            return Err(StateError::PhaseOutOfRange(delta_theta));
        }
        Ok(Self { name, upsilon_psi, delta_theta })
    }

    /// `1 + υ cos²φ`, the common denominator of every production quantity.
    fn denominator(&self, phi: f64) -> f64 {
        let c = libm::cos(phi);
        let d = 1.0 + self.upsilon_psi * c * c;
        assert!(d > MIN_DENOMINATOR, "production denominator {d} too small");
        d
    }
}

/// Central values of the measured `(υ_ψ, Δθ)` pairs.
pub fn channel_params(name: ChannelName) -> HyperonChannel {
    let (upsilon_psi, delta_theta) = match name {
        ChannelName::Lambda => (0.475, 0.752),
        ChannelName::SigmaPlus => (-0.508, -0.270),
        ChannelName::XiMinus => (0.586, 1.213),
        ChannelName::XiZero => (0.514, 1.168),
    };
    HyperonChannel { name, upsilon_psi, delta_theta }
}

/// Looks a channel up by its command-line name.
pub fn channel_by_name(name: &str) -> Result<HyperonChannel, StateError> {
    name.parse().map(channel_params)
}

fn check_angle(phi: f64) -> Result<(), StateError> {
    if (0.0..=PI).contains(&phi) {
        Ok(())
    } else {
        Err(StateError::AngleOutOfRange { phi })
    }
}

/// Transverse polarisation `P_y` (equal for hyperon and antihyperon).
pub fn polarization(ch: &HyperonChannel, phi: f64) -> f64 {
    let v = ch.upsilon_psi;
    libm::sqrt(1.0 - v * v) * libm::sin(ch.delta_theta) * libm::sin(phi) * libm::cos(phi)
        / ch.denominator(phi)
}

/// Real 4x4 matrix `Φ_αβ` of polarisations and spin correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiMatrix {
    entries: [[f64; 4]; 4],
}

impl PhiMatrix {
    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, alpha: PauliIndex, beta: PauliIndex) -> f64 {
        self.entries[alpha.index()][beta.index()]
    }

    pub fn p_y(&self) -> f64 {
        self.entries[0][2]
    }
    pub fn c_xx(&self) -> f64 {
        self.entries[1][1]
    }
    pub fn c_yy(&self) -> f64 {
        self.entries[2][2]
    }
    pub fn c_zz(&self) -> f64 {
        self.entries[3][3]
    }
    pub fn c_xz(&self) -> f64 {
        self.entries[1][3]
    }

    /// `¼ Σ Φ_αβ σ_α ⊗ σ_β` in the helicity frame.
    pub fn to_operator(&self) -> ComplexMat4 {
        let mut rho = ComplexMat4::zeros();
        for a in PauliIndex::ALL {
            for b in PauliIndex::ALL {
                let w = self.get(a, b);
                if w != 0.0 {
                    rho = rho + pauli_product(a, b).scale_real(0.25 * w);
                }
            }
        }
        rho
    }
}

pub fn phi_matrix(ch: &HyperonChannel, phi: f64) -> PhiMatrix {
    let v = ch.upsilon_psi;
    let d = ch.denominator(phi);
    let (s, c) = (libm::sin(phi), libm::cos(phi));
    let p_y = polarization(ch, phi);
    let c_xx = s * s / d;
    let c_yy = -v * s * s / d;
    let c_zz = (v + c * c) / d;
    let c_xz = libm::sqrt(1.0 - v * v) * libm::cos(ch.delta_theta) * s * c / d;
    PhiMatrix {
        entries: [
            [1.0, 0.0, p_y, 0.0],
            [0.0, c_xx, 0.0, c_xz],
            [p_y, 0.0, c_yy, 0.0],
            [0.0, c_xz, 0.0, c_zz],
        ],
    }
}

/// Parameters of the symmetric X-state `¼(I⊗I + κ(σz⊗I + I⊗σz) + Σ γ_i σ_i⊗σ_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub kappa: f64,
    /// `[γ1, γ2, γ3]` with `γ1 ≥ γ2`.
    pub gamma: [f64; 3],
}

/// How the eigenvalue discriminant is written.
///
/// `Corrected` is the form that agrees with diagonalising the correlation
/// block. `PrintedCosSquared` squares `cos 2φ` inside the bracket and exists
/// only as a negative control for that check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadicandForm {
    #[default]
    Corrected,
    PrintedCosSquared,
}

/// `(1 + υ cos2φ)² − (1 − υ²) sin²Δθ sin²2φ`, clamped at zero within tolerance.
pub fn discriminant(ch: &HyperonChannel, phi: f64, form: RadicandForm) -> Result<f64, StateError> {
    let v = ch.upsilon_psi;
    let c2 = libm::cos(2.0 * phi);
    let s2 = libm::sin(2.0 * phi);
    let sd = libm::sin(ch.delta_theta);
    let lead = match form {
        RadicandForm::Corrected => 1.0 + v * c2,
        RadicandForm::PrintedCosSquared => 1.0 + v * c2 * c2,
    };
    let radicand = lead * lead - (1.0 - v * v) * sd * sd * s2 * s2;
    if radicand < -RADICAND_TOL {
        return Err(StateError::NegativeDiscriminant { radicand, phi });
    }
    Ok(radicand.max(0.0))
}

pub fn xstate_params(ch: &HyperonChannel, phi: f64) -> Result<XStateParams, StateError> {
    xstate_params_with(ch, phi, RadicandForm::Corrected)
}

pub fn xstate_params_with(
    ch: &HyperonChannel,
    phi: f64,
    form: RadicandForm,
) -> Result<XStateParams, StateError> {
    check_angle(phi)?;
    let v = ch.upsilon_psi;
    let d = ch.denominator(phi);
    let root = libm::sqrt(discriminant(ch, phi, form)?);
    let s = libm::sin(phi);
    Ok(XStateParams {
        kappa: polarization(ch, phi),
        gamma: [
            (1.0 + v + root) / (2.0 * d),
            (1.0 + v - root) / (2.0 * d),
            -v * s * s / d,
        ],
    })
}

/// Independent route to [`xstate_params`]: diagonalises the x–z correlation
/// block of `Φ` numerically. `γ3` is the y–y correlation relabelled by the
/// y↔z swap and `κ` the transverse polarisation.
pub fn numeric_xstate_params(ch: &HyperonChannel, phi: f64) -> Result<XStateParams, StateError> {
    check_angle(phi)?;
    let m = phi_matrix(ch, phi);
    let block = ComplexMat2::from_real([[m.c_xx(), m.c_xz()], [m.c_xz(), m.c_zz()]])?;
    let [g1, g2] = hermitian_eigenvalues(&block)?;
    Ok(XStateParams { kappa: m.p_y(), gamma: [g1, g2, m.c_yy()] })
}

/// Two-qubit density matrix in the computational (σz) basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    matrix: ComplexMat4,
}

impl DensityMatrix4 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMat4) -> Result<Self, StateError> {
        let eig = hermitian_eigenvalues(&matrix)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(StateError::NotUnitTrace { trace });
        }
        if eig[3] < -PSD_TOL {
            return Err(StateError::NotPositive { min_eigenvalue: eig[3] });
        }
        Ok(Self { matrix })
    }

    /// Skips validation; used where the construction guarantees the invariants.
    pub(crate) fn new_unchecked(matrix: ComplexMat4) -> Self {
        Self { matrix }
    }

    /// Real symmetric X-state from its five independent entries (1-based
    /// names: ρ11, ρ22 = ρ33, ρ44, ρ14, ρ23).
    pub fn x_state(r11: f64, r22: f64, r33: f64, r44: f64, r14: f64, r23: f64) -> Result<Self, StateError> {
        Self::new(x_matrix(r11, r22, r33, r44, r14, r23))
    }

    pub fn maximally_mixed() -> Self {
        Self { matrix: ComplexMat4::identity().scale_real(0.25) }
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.matrix
    }

    /// 1-based entry access, matching the usual `ρ_{i,j}` labelling.
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i - 1, j - 1)]
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.matrix).expect("density matrix is Hermitian")
    }

    /// Largest modulus among the eight entries outside the diagonal and anti-diagonal.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn is_x_shaped(&self) -> bool {
        self.off_x_magnitude() <= X_SHAPE_TOL
    }

    pub fn expectation(&self, a: PauliIndex, b: PauliIndex) -> f64 {
        (pauli_product(a, b) * self.matrix).trace().re
    }

    pub fn reduced(&self, keep: linalg::Subsystem) -> ComplexMat2 {
        linalg::partial_trace(&self.matrix, keep)
    }
}

pub(crate) fn x_matrix(r11: f64, r22: f64, r33: f64, r44: f64, r14: f64, r23: f64) -> ComplexMat4 {
    ComplexMat::from_real([
        [r11, 0.0, 0.0, r14],
        [0.0, r22, r23, 0.0],
        [0.0, r23, r33, 0.0],
        [r14, 0.0, 0.0, r44],
    ])
    .expect("finite X-state entries")
}

/// Production density matrix in the σz basis.
pub fn density_matrix(ch: &HyperonChannel, phi: f64) -> Result<DensityMatrix4, StateError> {
    let x = xstate_params(ch, phi)?;
    let [g1, g2, g3] = x.gamma;
    let k = x.kappa;
    let r11 = 0.25 * (1.0 + 2.0 * k + g3);
    let r44 = 0.25 * (1.0 - 2.0 * k + g3);
    let r22 = 0.25 * (1.0 - g3);
    let r14 = 0.25 * (g1 - g2);
    let r23 = 0.25 * (g1 + g2);
    Ok(DensityMatrix4::new_unchecked(x_matrix(r11, r22, r22, r44, r14, r23)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;
    use core::f64::consts::FRAC_PI_4;

    fn lambda() -> HyperonChannel {
        channel_params(ChannelName::Lambda)
    }

    #[test]
    fn registry_values() {
        let l = lambda();
        assert_eq!((l.upsilon_psi, l.delta_theta), (0.475, 0.752));
        let s = channel_params(ChannelName::SigmaPlus);
        assert_eq!((s.upsilon_psi, s.delta_theta), (-0.508, -0.270));
        let xm = channel_params(ChannelName::XiMinus);
        assert_eq!((xm.upsilon_psi, xm.delta_theta), (0.586, 1.213));
        let x0 = channel_params(ChannelName::XiZero);
        assert_eq!((x0.upsilon_psi, x0.delta_theta), (0.514, 1.168));
    }

    #[test]
    fn names_round_trip() {
        for c in ChannelName::ALL {
            assert_eq!(c.as_str().parse::<ChannelName>().unwrap(), c);
        }
        assert!(matches!(channel_by_name("bogus"), Err(StateError::UnknownChannel)));
        assert!(channel_by_name("Lambda").is_err());
    }

    #[test]
    fn custom_channel_domain() {
        assert!(HyperonChannel::custom(ChannelName::Lambda, 1.2, 0.0).is_err());
        assert!(HyperonChannel::custom(ChannelName::Lambda, 0.5, 4.0).is_err());
        assert!(HyperonChannel::custom(ChannelName::Lambda, -1.0, PI).is_ok());
    }

    #[test]
    fn polarization_values() {
        assert_eq!(polarization(&lambda(), 0.0), 0.0);
        assert!(polarization(&lambda(), FRAC_PI_2).abs() < 1e-16);
        // sqrt(1-0.475²)·sin(0.752)·½ / (1 + 0.475·½)
        let expected = libm::sqrt(1.0 - 0.475 * 0.475) * libm::sin(0.752) * 0.5 / 1.2375;
        assert!((polarization(&lambda(), FRAC_PI_4) - expected).abs() < 1e-15);
        assert!((expected - 0.2429).abs() < 1e-4);
    }

    #[test]
    fn phi_matrix_at_endpoints() {
        let m = phi_matrix(&lambda(), 0.0);
        assert_eq!((m.c_xx(), m.c_yy(), m.c_zz(), m.c_xz(), m.p_y()), (0.0, 0.0, 1.0, 0.0, 0.0));
        let m = phi_matrix(&lambda(), FRAC_PI_2);
        assert!((m.c_xx() - 1.0).abs() < 1e-15);
        assert!((m.c_yy() + 0.475).abs() < 1e-15);
        assert!((m.c_zz() - 0.475).abs() < 1e-15);
        assert!(m.c_xz().abs() < 1e-15);
        assert_eq!(m.entries()[0][0], 1.0);
        assert_eq!(m.entries()[1][3], m.entries()[3][1]);
    }

    #[test]
    fn phi_matrix_sparsity() {
        let allowed = [(0, 0), (0, 2), (2, 0), (1, 1), (1, 3), (3, 1), (2, 2), (3, 3)];
        for ch in ChannelName::ALL.map(channel_params) {
            let m = phi_matrix(&ch, 1.1);
            for a in 0..4 {
                for b in 0..4 {
                    if !allowed.contains(&(a, b)) {
                        assert_eq!(m.entries()[a][b], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn operator_reconstruction_reproduces_polarization() {
        let m = phi_matrix(&lambda(), FRAC_PI_4);
        let rho = DensityMatrix4::new(m.to_operator()).unwrap();
        let py = rho.expectation(PauliIndex::Y, PauliIndex::I);
        assert!((py - polarization(&lambda(), FRAC_PI_4)).abs() < 1e-14);
    }

    #[test]
    fn xstate_endpoints() {
        let x = xstate_params(&lambda(), 0.0).unwrap();
        assert_eq!(x.kappa, 0.0);
        assert!((x.gamma[0] - 1.0).abs() < 1e-15);
        assert!(x.gamma[1].abs() < 1e-15 && x.gamma[2].abs() < 1e-15);

        let x = xstate_params(&lambda(), FRAC_PI_2).unwrap();
        assert!(x.kappa.abs() < 1e-15);
        assert!((x.gamma[0] - 1.0).abs() < 1e-15);
        assert!((x.gamma[1] - 0.475).abs() < 1e-15);
        assert!((x.gamma[2] + 0.475).abs() < 1e-15);

        let x = xstate_params(&channel_params(ChannelName::SigmaPlus), FRAC_PI_2).unwrap();
        assert!((x.gamma[1] + 0.508).abs() < 1e-15);
    }

    #[test]
    fn numeric_oracle_agrees_at_spot_points() {
        let xm = channel_params(ChannelName::XiMinus);
        let a = xstate_params(&xm, PI / 3.0).unwrap();
        let b = numeric_xstate_params(&xm, PI / 3.0).unwrap();
        assert!((a.kappa - b.kappa).abs() < 1e-10);
        for i in 0..3 {
            assert!((a.gamma[i] - b.gamma[i]).abs() < 1e-10);
        }
        let b = numeric_xstate_params(&lambda(), 0.0).unwrap();
        assert!((b.gamma[0] - 1.0).abs() < 1e-14 && b.gamma[1].abs() < 1e-14);
    }

    #[test]
    fn printed_radicand_disagrees_at_right_angle() {
        let a = xstate_params_with(&lambda(), FRAC_PI_2, RadicandForm::PrintedCosSquared).unwrap();
        let b = numeric_xstate_params(&lambda(), FRAC_PI_2).unwrap();
        assert!((a.gamma[1] - b.gamma[1]).abs() > 0.1);
    }

    #[test]
    fn angle_domain_enforced() {
        assert!(matches!(
            xstate_params(&lambda(), -0.1),
            Err(StateError::AngleOutOfRange { .. })
        ));
        assert!(density_matrix(&lambda(), 3.2).is_err());
    }

    #[test]
    fn density_matrix_values() {
        let rho = density_matrix(&lambda(), 0.0).unwrap();
        for &(i, j) in &[(1, 1), (1, 4), (4, 4), (2, 2), (2, 3), (3, 3)] {
            assert!((rho.at(i, j).re - 0.25).abs() < 1e-15, "({i},{j})");
        }
        let rho = density_matrix(&lambda(), FRAC_PI_2).unwrap();
        for &(i, j, v) in &[(1, 1, 0.13125), (4, 4, 0.13125), (1, 4, 0.13125), (2, 2, 0.36875), (2, 3, 0.36875)] {
            assert!((rho.at(i, j).re - v).abs() < 1e-15, "({i},{j})");
        }
        assert_eq!(rho.at(2, 2), rho.at(3, 3));
        assert!(rho.is_x_shaped());
    }

    #[test]
    fn right_angle_state_has_rank_two() {
        let eig = density_matrix(&lambda(), FRAC_PI_2).unwrap().eigenvalues();
        assert!(eig[0] > 0.1 && eig[1] > 0.1);
        assert!(eig[2].abs() < 1e-9 && eig[3].abs() < 1e-9);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(matches!(
            DensityMatrix4::new(ComplexMat4::identity()),
            Err(StateError::NotUnitTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix4::x_state(0.5, 0.0, 0.0, 0.5, 0.6, 0.0),
            Err(StateError::NotPositive { .. })
        ));
        assert!(DensityMatrix4::x_state(0.25, 0.25, 0.25, 0.25, 0.1, 0.2).is_ok());
    }
}
