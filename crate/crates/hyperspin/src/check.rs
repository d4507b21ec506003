//! Embedded invariant suite behind the `check` command.

use std::f64::consts::PI;
use std::fmt;

use hyperspin_core::channel::{evolve, evolve_kraus, memory_kernel, ChannelConfig};
use hyperspin_core::state::{channel_params, density_matrix, numeric_xstate_params, xstate_params};
use hyperspin_core::{ChannelName, DensityMatrix4, KernelVariant, MeasureRecord};

use crate::grid::GridPoint;
use crate::sweep::evaluate_point;

/// Threshold for "nonzero" in the resource hierarchy.
pub const HIERARCHY_THRESHOLD: f64 = 1e-12;

/// Which link of `steering ⇒ entanglement ⇒ discord ⇒ coherence` fails, if any.
pub fn hierarchy_violation(r: &MeasureRecord) -> Option<&'static str> {
    let on = |x: f64| x > HIERARCHY_THRESHOLD;
    let steer = r.steering.s_ab.max(r.steering.s_ba);
    if on(steer) && !on(r.concurrence) {
        Some("steering without entanglement")
    } else if on(r.concurrence) && !on(r.gqd) {
        Some("entanglement without discord")
    } else if on(r.gqd) && !on(r.coherence_l1) {
        Some("discord without coherence")
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub kernel_variant: KernelVariant,
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "self-check (kernel variant: {})", self.kernel_variant.as_str())?;
        for s in &self.suites {
            let status = if s.passed() { "ok" } else { "FAIL" };
            write!(f, "  {:<20} {:<4} {:>8} checks {:>8} failures", s.name, status, s.checks, s.failures)?;
            if let Some(first) = &s.first_failure {
                write!(f, "  first: {first}")?;
            }
            writeln!(f)?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        if failed == 0 {
            writeln!(f, "all {} suites passed", self.suites.len())
        } else {
            writeln!(f, "{failed} of {} suites failed", self.suites.len())
        }
    }
}

fn phi_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| if k + 1 == n { PI } else { PI * k as f64 / (n - 1) as f64 })
}

fn registry() -> SuiteReport {
    let mut s = SuiteReport::new("registry");
    let table = [
        (ChannelName::Lambda, 0.475, 0.752),
        (ChannelName::SigmaPlus, -0.508, -0.270),
        (ChannelName::XiMinus, 0.586, 1.213),
        (ChannelName::XiZero, 0.514, 1.168),
    ];
    for (name, u, d) in table {
        let ch = channel_params(name);
        s.check(ch.upsilon_psi == u && ch.delta_theta == d, || format!("{name}: {ch:?}"));
    }
    s
}

fn state_validity() -> SuiteReport {
    let mut s = SuiteReport::new("state-validity");
    for name in ChannelName::ALL {
        for phi in phi_grid(181) {
            match density_matrix(&channel_params(name), phi) {
                Ok(rho) => {
                    let eig = rho.eigenvalues();
                    let zeros = eig.iter().filter(|e| e.abs() < 1e-9).count();
                    s.check(rho.matrix().hermitian_deviation() <= 1e-10, || format!("{name} phi={phi} not Hermitian"));
                    s.check((rho.matrix().trace().re - 1.0).abs() <= 1e-10, || format!("{name} phi={phi} trace"));
                    s.check(eig[3] >= -1e-9, || format!("{name} phi={phi} eigenvalue {}", eig[3]));
                    s.check(zeros == 2, || format!("{name} phi={phi} rank {}", 4 - zeros));
                }
                Err(e) => s.check(false, || format!("{name} phi={phi}: {e}")),
            }
        }
    }
    s
}

fn closed_form_state() -> SuiteReport {
    let mut s = SuiteReport::new("closed-form-state");
    for name in ChannelName::ALL {
        let ch = channel_params(name);
        for phi in phi_grid(181) {
            let (Ok(a), Ok(b)) = (xstate_params(&ch, phi), numeric_xstate_params(&ch, phi)) else {
                s.check(false, || format!("{name} phi={phi}: parameter error"));
                continue;
            };
            let dev = (0..3).map(|i| (a.gamma[i] - b.gamma[i]).abs()).fold((a.kappa - b.kappa).abs(), f64::max);
            s.check(dev <= 1e-10, || format!("{name} phi={phi} deviation {dev:e}"));
        }
    }
    s
}

fn kernel_contract(variant: KernelVariant) -> SuiteReport {
    let mut s = SuiteReport::new("kernel-contract");
    for tau in [0.05, 0.1, 0.25 - 1e-9, 0.25, 0.25 + 1e-9, 1.0, 5.0] {
        let cfg = ChannelConfig::with_variant(0.0, tau, variant).expect("valid tau");
        let k = |t: f64| memory_kernel(t, &cfg).expect("t >= 0").k;
        s.check(k(0.0) == 1.0, || format!("tau={tau}: K(0) = {}", k(0.0)));
        let h = 1e-4;
        let slope = (-3.0 * k(0.0) + 4.0 * k(h) - k(2.0 * h)) / (2.0 * h);
        s.check(slope.abs() < 1e-6, || format!("tau={tau}: K'(0) = {slope:e}"));
        let mut prev = 1.0f64;
        let mut sign_changes = 0;
        let mut monotone = true;
        let mut worst = 0.0f64;
        for i in 1..=5000 {
            let v = k(i as f64 * 0.01);
            worst = worst.max(v.abs());
            monotone &= v <= prev;
            if v.signum() != prev.signum() {
                sign_changes += 1;
            }
            prev = v;
        }
        s.check(worst <= 1.0 + 1e-12, || format!("tau={tau}: max |K| = {worst}"));
        if 4.0 * tau < 1.0 - 1e-6 {
            s.check(monotone, || format!("tau={tau}: Markovian kernel not monotone"));
        }
        if tau >= 5.0 {
            s.check(sign_changes >= 2, || format!("tau={tau}: {sign_changes} sign changes"));
        }
    }
    s
}

const MUS: [f64; 5] = [0.0, 0.3, 0.6, 0.8, 1.0];
const TAUS: [f64; 2] = [0.1, 5.0];

fn oracle_points() -> impl Iterator<Item = (ChannelName, f64, f64, f64, f64)> {
    ChannelName::ALL.into_iter().flat_map(|name| {
        (0..9).flat_map(move |k| {
            let phi = PI * k as f64 / 8.0;
            MUS.into_iter().flat_map(move |mu| {
                TAUS.into_iter().flat_map(move |tau| {
                    let dt = if tau < 1.0 { 0.1 } else { 1.0 };
                    (0..50).map(move |i| (name, phi, mu, tau, i as f64 * dt))
                })
            })
        })
    })
}

fn channel_oracle(variant: KernelVariant) -> SuiteReport {
    let mut s = SuiteReport::new("channel-oracle");
    for (name, phi, mu, tau, t) in oracle_points() {
        let rho0 = density_matrix(&channel_params(name), phi).expect("valid angle");
        let cfg = ChannelConfig::with_variant(mu, tau, variant).expect("valid parameters");
        match (evolve(&rho0, t, &cfg), evolve_kraus(&rho0, t, &cfg)) {
            (Ok(a), Ok(b)) => {
                let dev = a.matrix().max_abs_diff(b.matrix());
                s.check(dev <= 1e-12, || format!("{name} phi={phi} mu={mu} tau={tau} t={t}: {dev:e}"));
            }
            (a, b) => s.check(false, || format!("{name} phi={phi} mu={mu} tau={tau} t={t}: {:?}", a.err().or(b.err()))),
        }
    }
    s
}

fn cptp(variant: KernelVariant) -> SuiteReport {
    let mut s = SuiteReport::new("cptp");
    for (name, phi, mu, tau, t) in oracle_points().step_by(5) {
        let rho0 = density_matrix(&channel_params(name), phi).expect("valid angle");
        let cfg = ChannelConfig::with_variant(mu, tau, variant).expect("valid parameters");
        match evolve_kraus(&rho0, t, &cfg) {
            Ok(out) => {
                let ok = DensityMatrix4::new(*out.matrix()).is_ok() && out.is_x_shaped();
                s.check(ok, || format!("{name} phi={phi} mu={mu} tau={tau} t={t}: output not an X-state"));
            }
            Err(e) => s.check(false, || format!("{name} phi={phi} mu={mu} tau={tau} t={t}: {e}")),
        }
    }
    s
}

fn hierarchy(variant: KernelVariant) -> SuiteReport {
    let mut s = SuiteReport::new("hierarchy");
    for channel in ChannelName::ALL {
        for phi in phi_grid(37) {
            for mu in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
                for (tau, dt) in [(0.1, 0.05), (5.0, 0.5)] {
                    for i in 0..=100 {
                        let p = GridPoint { channel, phi, mu, tau, time: i as f64 * dt };
                        match evaluate_point(&p, variant) {
                            Ok(r) => {
                                let v = hierarchy_violation(&r);
                                s.check(v.is_none(), || format!("{p}: {}", v.unwrap_or_default()));
                            }
                            Err(e) => s.check(false, || format!("{p}: {e}")),
                        }
                    }
                }
            }
        }
    }
    s
}

fn freezing(variant: KernelVariant) -> SuiteReport {
    let mut s = SuiteReport::new("unit-mu-freezing");
    for channel in ChannelName::ALL {
        for phi in phi_grid(9) {
            for (tau, dt) in [(0.1, 0.05), (5.0, 0.5)] {
                let at = |t| evaluate_point(&GridPoint { channel, phi, mu: 1.0, tau, time: t }, variant);
                let Ok(r0) = at(0.0) else {
                    s.check(false, || format!("{channel} phi={phi} tau={tau}: t=0 failed"));
                    continue;
                };
                for i in 1..=100 {
                    let t = i as f64 * dt;
                    match at(t) {
                        Ok(r) => {
                            let dev = [
                                r.steering.s_ab - r0.steering.s_ab,
                                r.concurrence - r0.concurrence,
                                r.gqd - r0.gqd,
                                r.coherence_l1 - r0.coherence_l1,
                            ]
                            .into_iter()
                            .fold(0.0f64, |m, d| m.max(d.abs()));
                            s.check(dev <= 1e-12, || format!("{channel} phi={phi} tau={tau} t={t}: drift {dev:e}"));
                        }
                        Err(e) => s.check(false, || format!("{channel} phi={phi} tau={tau} t={t}: {e}")),
                    }
                }
            }
        }
    }
    s
}

/// Runs every suite with the given kernel variant.
pub fn run_checks(variant: KernelVariant) -> CheckReport {
    CheckReport {
        kernel_variant: variant,
        suites: vec![
            registry(),
            state_validity(),
            closed_form_state(),
            kernel_contract(variant),
            channel_oracle(variant),
            cptp(variant),
            hierarchy(variant),
            freezing(variant),
        ],
    }
}
