use std::f64::consts::PI;

use hyperspin_core::channel::{
    eta, evolve, evolve_kraus, flip_probability, joint_probabilities, memory_kernel, ChannelConfig,
    KernelVariant,
};
use hyperspin_core::state::{channel_params, density_matrix, ChannelName};
use proptest::prelude::*;

const MUS: [f64; 5] = [0.0, 0.3, 0.6, 0.8, 1.0];
const TAUS: [f64; 2] = [0.1, 5.0];

#[test]
fn closed_form_evolution_matches_kraus_sum() {
    let mut worst = 0.0f64;
    for name in ChannelName::ALL {
        let ch = channel_params(name);
        for k in 0..9 {
            let rho0 = density_matrix(&ch, PI * k as f64 / 8.0).unwrap();
            for mu in MUS {
                for tau in TAUS {
                    let cfg = ChannelConfig::new(mu, tau).unwrap();
                    for i in 0..50 {
                        let t = i as f64 * if tau < 1.0 { 0.1 } else { 1.0 };
                        let a = evolve(&rho0, t, &cfg).unwrap();
                        let b = evolve_kraus(&rho0, t, &cfg).unwrap();
                        worst = worst.max(a.matrix().max_abs_diff(b.matrix()));
                        assert!((b.matrix().trace().re - 1.0).abs() < 1e-12);
                        assert!(b.is_x_shaped());
                    }
                }
            }
        }
    }
    assert!(worst < 1e-12, "max deviation {worst:e}");
}

#[test]
fn kernel_contract_both_regimes() {
    for tau in [0.05, 0.1, 0.25 - 1e-9, 0.25, 0.25 + 1e-9, 0.5, 1.0, 5.0] {
        let cfg = ChannelConfig::new(0.0, tau).unwrap();
        let k = |t: f64| memory_kernel(t, &cfg).unwrap().k;
        assert_eq!(k(0.0), 1.0);
        let h = 1e-4;
        // K is even in t about 0 for these closed forms; use the one-sided
        // second-order difference on [0, 2h].
        let slope = (-3.0 * k(0.0) + 4.0 * k(h) - k(2.0 * h)) / (2.0 * h);
        assert!(slope.abs() < 1e-6, "tau={tau} slope={slope:e}");
        for i in 0..=50_000 {
            let t = i as f64 * 1e-3;
            assert!(k(t).abs() <= 1.0 + 1e-12, "tau={tau} t={t}");
        }
    }
}

#[test]
fn markovian_kernel_is_monotone() {
    for tau in [0.05, 0.1, 0.2] {
        let cfg = ChannelConfig::new(0.0, tau).unwrap();
        let mut prev = 1.0;
        for i in 1..=5000 {
            let k = memory_kernel(i as f64 * 0.01, &cfg).unwrap().k;
            assert!(k < prev && k >= 0.0, "tau={tau} i={i}");
            prev = k;
        }
    }
}

#[test]
fn oscillating_kernel_changes_sign() {
    let cfg = ChannelConfig::new(0.0, 5.0).unwrap();
    let mut changes = 0;
    let mut prev = 1.0f64;
    for i in 1..=5000 {
        let k = memory_kernel(i as f64 * 0.01, &cfg).unwrap().k;
        if k.signum() != prev.signum() {
            changes += 1;
        }
        prev = k;
    }
    assert!(changes >= 2, "{changes}");
}

#[test]
fn printed_kernel_has_nonzero_initial_slope() {
    let cfg = ChannelConfig::with_variant(0.0, 0.1, KernelVariant::Printed).unwrap();
    let h = 1e-6;
    let slope = (memory_kernel(h, &cfg).unwrap().k - 1.0) / h;
    // d/dt at 0 is 1 - u = -4
    assert!((slope + 4.0).abs() < 1e-3);
}

#[test]
fn eta_has_the_stationary_points_of_k_squared() {
    let cfg = ChannelConfig::new(0.6, 5.0).unwrap();
    let k2 = |t: f64| memory_kernel(t, &cfg).unwrap().k.powi(2);
    let e = |t: f64| eta(t, &cfg).unwrap();
    for i in 1..4999 {
        let t = i as f64 * 0.01;
        let dk = k2(t + 0.01) - k2(t - 0.01);
        let de = e(t + 0.01) - e(t - 0.01);
        assert!((de - 0.4 * dk).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn joint_probabilities_are_a_distribution(p in 0.0f64..=1.0, mu in 0.0f64..=1.0) {
        let jp = joint_probabilities(p, mu).unwrap();
        prop_assert!((jp.total() - 1.0).abs() < 1e-12);
        prop_assert!(jp.matrix().iter().flatten().all(|&q| q >= 0.0));
        let m = jp.matrix();
        for i in 0..4 {
            let row: f64 = m[i].iter().sum();
            let col: f64 = m.iter().map(|r| r[i]).sum();
            let single = [1.0 - p, 0.0, 0.0, p][i];
            prop_assert!((row - single).abs() < 1e-12 && (col - single).abs() < 1e-12);
        }
    }

    #[test]
    fn eta_is_monotone_in_mu(t in 0.0f64..50.0, tau in prop::sample::select(vec![0.05, 0.1, 1.0, 5.0]),
                              mu1 in 0.0f64..=1.0, mu2 in 0.0f64..=1.0) {
        let (lo, hi) = if mu1 <= mu2 { (mu1, mu2) } else { (mu2, mu1) };
        let a = eta(t, &ChannelConfig::new(lo, tau).unwrap()).unwrap();
        let b = eta(t, &ChannelConfig::new(hi, tau).unwrap()).unwrap();
        prop_assert!(a <= b + 1e-15);
        prop_assert!(a >= lo - 1e-15 && b <= 1.0 + 1e-15);
    }

    #[test]
    fn flip_probability_in_unit_interval(t in 0.0f64..50.0, tau in 0.01f64..10.0) {
        let k = memory_kernel(t, &ChannelConfig::new(0.0, tau).unwrap()).unwrap();
        let p = flip_probability(k).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
    }
}
