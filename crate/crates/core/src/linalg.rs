//! Fixed-size dense complex matrices for one and two qubits.
//!
//! Everything here lives on the stack: `ComplexMat<2>` for single-qubit
//! operators and `ComplexMat<4>` for two-qubit operators. Only the handful of
//! operations the state and measure modules need are provided.

use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Absolute entry tolerance for `m == m†`.
pub const HERMITIAN_TOL: f64 = 1e-10;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const I1: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
}

/// Row-major `N x N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat<const N: usize> {
    entries: [[Complex64; N]; N],
}

pub type ComplexMat2 = ComplexMat<2>;
pub type ComplexMat4 = ComplexMat<4>;

impl<const N: usize> ComplexMat<N> {
    /// Builds a matrix, rejecting NaN or infinite entries.
    pub fn new(entries: [[Complex64; N]; N]) -> Result<Self, LinalgError> {
        for (row, r) in entries.iter().enumerate() {
            for (col, z) in r.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(LinalgError::NonFinite { row, col });
                }
            }
        }
        Ok(Self { entries })
    }

    pub(crate) const fn from_entries(entries: [[Complex64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: [[f64; N]; N]) -> Result<Self, LinalgError> {
        let mut out = [[C0; N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = Complex64::new(entries[i][j], 0.0);
            }
        }
        Self::new(out)
    }

    pub const fn zeros() -> Self {
        Self { entries: [[C0; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = C1;
        }
        m
    }

    pub fn diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.iter().enumerate() {
            m.entries[i][i] = Complex64::new(*d, 0.0);
        }
        m
    }

    pub fn entries(&self) -> &[[Complex64; N]; N] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        m
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL
    }
}

impl<const N: usize> Index<(usize, usize)> for ComplexMat<N> {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for ComplexMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for ComplexMat<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for ComplexMat<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Mul for ComplexMat<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == C0 {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// Index into the Pauli basis: 0 = identity, 1 = σx, 2 = σy, 3 = σz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const I: Self = Self(0);
    pub const X: Self = Self(1);
    pub const Y: Self = Self(2);
    pub const Z: Self = Self(3);
    pub const ALL: [Self; 4] = [Self::I, Self::X, Self::Y, Self::Z];

    pub const fn new(index: u8) -> Option<Self> {
        if index < 4 {
            Some(Self(index))
        } else {
            None
        }
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn matrix(self) -> ComplexMat2 {
        pauli(self)
    }
}

pub const SIGMA_0: ComplexMat2 = ComplexMat::from_entries([[C1, C0], [C0, C1]]);
pub const SIGMA_X: ComplexMat2 = ComplexMat::from_entries([[C0, C1], [C1, C0]]);
pub const SIGMA_Y: ComplexMat2 =
    ComplexMat::from_entries([[C0, Complex64::new(0.0, -1.0)], [I1, C0]]);
pub const SIGMA_Z: ComplexMat2 =
    ComplexMat::from_entries([[C1, C0], [C0, Complex64::new(-1.0, 0.0)]]);

pub fn pauli(index: PauliIndex) -> ComplexMat2 {
    match index.0 {
        0 => SIGMA_0,
        1 => SIGMA_X,
        2 => SIGMA_Y,
        _ => SIGMA_Z,
    }
}

/// `a ⊗ b`, with `(a ⊗ b)[2i + k][2j + l] = a[i][j] · b[k][l]`.
pub fn kron(a: &ComplexMat2, b: &ComplexMat2) -> ComplexMat4 {
    let mut out = ComplexMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    out
}

/// `σ_a ⊗ σ_b`.
pub fn pauli_product(a: PauliIndex, b: PauliIndex) -> ComplexMat4 {
    kron(&pauli(a), &pauli(b))
}

/// Which qubit of a two-qubit operator survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// Hyperon (Alice), the left tensor factor.
    First,
    /// Antihyperon (Bob), the right tensor factor.
    Second,
}

/// Traces out the qubit not named by `keep`.
pub fn partial_trace(rho: &ComplexMat4, keep: Subsystem) -> ComplexMat2 {
    let mut out = ComplexMat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.entries[i][j] = match keep {
                Subsystem::First => rho.entries[2 * i][2 * j] + rho.entries[2 * i + 1][2 * j + 1],
                Subsystem::Second => rho.entries[i][j] + rho.entries[2 + i][2 + j],
            };
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Cyclic complex Jacobi: each pivot is first made real by a diagonal phase,
/// then annihilated by a real plane rotation.
pub fn hermitian_eigenvalues<const N: usize>(m: &ComplexMat<N>) -> Result<[f64; N], LinalgError> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian { deviation });
    }
    // Symmetrize so the iteration sees an exactly Hermitian input.
    let mut a = (*m + m.adjoint()).scale_real(0.5);
    let scale = a
        .entries
        .iter()
        .flatten()
        .fold(0.0f64, |acc, z| acc.max(z.norm()))
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    off += a.entries[i][j].norm_sqr();
                }
            }
        }
        if libm::sqrt(off) <= 1e-16 * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.entries[p][q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a.entries[p][p].re;
                let aqq = a.entries[q][q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                // U = Φ·P with Φ_qq = e^{-iθ}; columns p and q of U.
                let mut u = ComplexMat::<N>::identity();
                let conj_phase = phase.conj();
                u.entries[p][p] = Complex64::new(c, 0.0);
                u.entries[p][q] = Complex64::new(s, 0.0);
                u.entries[q][p] = conj_phase * (-s);
                u.entries[q][q] = conj_phase * c;
                a = u.adjoint() * a * u;
                a.entries[p][q] = C0;
                a.entries[q][p] = C0;
            }
        }
    }

    let mut eig = [0.0; N];
    for (i, e) in eig.iter_mut().enumerate() {
        *e = a.entries[i][i].re;
    }
    eig.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_identity_and_pauli_products() {
        assert_eq!(kron(&SIGMA_0, &SIGMA_0), ComplexMat4::identity());
        assert_eq!(kron(&SIGMA_Z, &SIGMA_Z), ComplexMat4::diagonal([1.0, -1.0, -1.0, 1.0]));
        let xx = kron(&SIGMA_X, &SIGMA_X);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { c(1.0) } else { C0 };
                assert_eq!(xx[(i, j)], expected);
            }
        }
    }

    #[test]
    fn sigma_y_convention() {
        assert_eq!(SIGMA_Y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(SIGMA_Y[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(SIGMA_X * SIGMA_Y, SIGMA_Z.scale(I1));
    }

    #[test]
    fn partial_trace_cases() {
        let mixed = ComplexMat4::identity().scale_real(0.25);
        let half = ComplexMat2::identity().scale_real(0.5);
        assert!(partial_trace(&mixed, Subsystem::First).max_abs_diff(&half) < 1e-15);

        let p00 = ComplexMat4::diagonal([1.0, 0.0, 0.0, 0.0]);
        let p0 = ComplexMat2::diagonal([1.0, 0.0]);
        assert_eq!(partial_trace(&p00, Subsystem::First), p0);
        assert_eq!(partial_trace(&p00, Subsystem::Second), p0);

        // (|00> + |11>)/sqrt2
        let mut bell = ComplexMat4::zeros();
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(i, j)] = c(0.5);
        }
        assert!(partial_trace(&bell, Subsystem::First).max_abs_diff(&half) < 1e-15);
        assert!(partial_trace(&bell, Subsystem::Second).max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_the_named_factor() {
        let a = ComplexMat2::from_real([[0.7, 0.1], [0.1, 0.3]]).unwrap();
        let b = ComplexMat2::new([[c(0.4), Complex64::new(0.2, -0.1)], [Complex64::new(0.2, 0.1), c(0.6)]])
            .unwrap();
        let ab = kron(&a, &b);
        assert!(partial_trace(&ab, Subsystem::First).max_abs_diff(&a) < 1e-12);
        assert!(partial_trace(&ab, Subsystem::Second).max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let d = ComplexMat4::diagonal([1.0, 3.0, 4.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), [4.0, 3.0, 2.0, 1.0]);
        let mixed = ComplexMat4::identity().scale_real(0.25);
        for e in hermitian_eigenvalues(&mixed).unwrap() {
            assert!((e - 0.25).abs() < 1e-15);
        }
        let y = hermitian_eigenvalues(&SIGMA_Y).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-14 && (y[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = ComplexMat4::identity();
        m[(0, 1)] = c(1e-3);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let err = ComplexMat2::from_real([[1.0, f64::NAN], [0.0, 1.0]]).unwrap_err();
        assert_eq!(err, LinalgError::NonFinite { row: 0, col: 1 });
    }

    #[test]
    fn pauli_index_bounds() {
        assert_eq!(PauliIndex::new(3), Some(PauliIndex::Z));
        assert_eq!(PauliIndex::new(4), None);
        assert_eq!(PauliIndex::Y.matrix(), SIGMA_Y);
    }
}
