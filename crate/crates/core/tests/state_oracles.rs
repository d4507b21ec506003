use std::f64::consts::{FRAC_PI_2, PI};

use hyperspin_core::linalg::{hermitian_eigenvalues, ComplexMat4, PauliIndex};
use hyperspin_core::state::{
    channel_params, density_matrix, numeric_xstate_params, phi_matrix, polarization, xstate_params,
    ChannelName, DensityMatrix4, HyperonChannel,
};
use proptest::prelude::*;

fn channels() -> impl Iterator<Item = HyperonChannel> {
    ChannelName::ALL.into_iter().map(channel_params)
}

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| PI * k as f64 / (n - 1) as f64)
}

#[test]
fn closed_form_matches_block_diagonalisation() {
    for ch in channels() {
        for phi in grid(201) {
            let a = xstate_params(&ch, phi).unwrap();
            let b = numeric_xstate_params(&ch, phi).unwrap();
            assert!((a.kappa - b.kappa).abs() < 1e-10);
            for i in 0..3 {
                assert!((a.gamma[i] - b.gamma[i]).abs() < 1e-10, "{ch:?} phi={phi} i={i}");
            }
        }
    }
}

#[test]
fn density_matrix_matches_pauli_reconstruction() {
    // Rebuild ¼ Σ Φ^X σ⊗σ from (κ, γ) and compare with the entry formulas.
    for ch in channels() {
        for phi in grid(37) {
            let x = xstate_params(&ch, phi).unwrap();
            let mut m = ComplexMat4::zeros();
            let terms = [
                (PauliIndex::I, PauliIndex::I, 1.0),
                (PauliIndex::Z, PauliIndex::I, x.kappa),
                (PauliIndex::I, PauliIndex::Z, x.kappa),
                (PauliIndex::X, PauliIndex::X, x.gamma[0]),
                (PauliIndex::Y, PauliIndex::Y, x.gamma[1]),
                (PauliIndex::Z, PauliIndex::Z, x.gamma[2]),
            ];
            for (a, b, w) in terms {
                m = m + hyperspin_core::linalg::pauli_product(a, b).scale_real(0.25 * w);
            }
            let rho = density_matrix(&ch, phi).unwrap();
            assert!(rho.matrix().max_abs_diff(&m) < 1e-14);
        }
    }
}

#[test]
fn helicity_state_and_x_state_share_a_spectrum() {
    // The X-state is a local change of basis of the helicity-frame state.
    for ch in channels() {
        for phi in grid(19) {
            let helicity = phi_matrix(&ch, phi).to_operator();
            let a = hermitian_eigenvalues(&helicity).unwrap();
            let b = density_matrix(&ch, phi).unwrap().eigenvalues();
            for i in 0..4 {
                assert!((a[i] - b[i]).abs() < 1e-10, "{ch:?} phi={phi}");
            }
        }
    }
}

#[test]
fn valid_rank_two_states_on_fine_grid() {
    for ch in channels() {
        for phi in grid(721) {
            let rho = density_matrix(&ch, phi).unwrap();
            assert!(rho.matrix().is_hermitian());
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-10);
            let eig = rho.eigenvalues();
            assert!(eig[3] >= -1e-9);
            assert_eq!(eig.iter().filter(|e| e.abs() < 1e-9).count(), 2, "{ch:?} phi={phi} {eig:?}");
            assert!(rho.is_x_shaped());
            assert_eq!(rho.at(2, 2), rho.at(3, 3));
            assert!((rho.at(2, 2) - rho.at(2, 3)).norm() < 1e-12);
            assert!(DensityMatrix4::new(*rho.matrix()).is_ok());
        }
    }
}

#[test]
fn reflection_symmetry_about_right_angle() {
    for ch in channels() {
        for phi in grid(91) {
            let a = xstate_params(&ch, phi).unwrap();
            let b = xstate_params(&ch, PI - phi).unwrap();
            assert!((a.kappa + b.kappa).abs() < 1e-12);
            for i in 0..3 {
                assert!((a.gamma[i] - b.gamma[i]).abs() < 1e-12);
            }
            let ra = density_matrix(&ch, phi).unwrap();
            let rb = density_matrix(&ch, PI - phi).unwrap();
            assert!((ra.at(1, 4).norm() - rb.at(1, 4).norm()).abs() < 1e-12);
            assert!((polarization(&ch, phi) + polarization(&ch, PI - phi)).abs() < 1e-12);
        }
    }
}

#[test]
fn right_angle_entries() {
    let rho = density_matrix(&channel_params(ChannelName::Lambda), FRAC_PI_2).unwrap();
    assert!((rho.at(1, 1).re - (1.0 - 0.475) / 4.0).abs() < 1e-15);
    assert!((rho.at(2, 2).re - (1.0 + 0.475) / 4.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn unit_trace_for_random_draws(idx in 0usize..4, phi in 0.0f64..=PI) {
        let rho = density_matrix(&channel_params(ChannelName::ALL[idx]), phi).unwrap();
        prop_assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(phi_matrix(&channel_params(ChannelName::ALL[idx]), phi).entries()[0][0] == 1.0);
    }

    #[test]
    fn gammas_bounded(idx in 0usize..4, phi in 0.0f64..=PI) {
        let x = xstate_params(&channel_params(ChannelName::ALL[idx]), phi).unwrap();
        prop_assert!(x.kappa.abs() <= 1.0);
        prop_assert!(x.gamma.iter().all(|g| g.abs() <= 1.0 + 1e-12));
        prop_assert!(x.gamma[0] >= x.gamma[1]);
    }
}
