//! Named grids, one per plotted panel.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use hyperspin_core::ChannelName;

use crate::grid::{mu_percent_grid, phi_degrees_grid, Progression, SweepGrid};
use crate::SweepError;

/// Quantity a figure plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Steering,
    Entanglement,
    Discord,
    Coherence,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Steering, Measure::Entanglement, Measure::Discord, Measure::Coherence];

    pub const fn as_str(self) -> &'static str {
        match self {
            Measure::Steering => "steering",
            Measure::Entanglement => "entanglement",
            Measure::Discord => "discord",
            Measure::Coherence => "coherence",
        }
    }
}

/// Which measures a sweep is meant to report. Every measure is still
/// computed and written; the selector is recorded in the metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSelector(Vec<Measure>);

impl MeasureSelector {
    pub fn all() -> Self {
        Self(Measure::ALL.to_vec())
    }

    pub fn only(m: Measure) -> Self {
        Self(vec![m])
    }

    pub fn measures(&self) -> &[Measure] {
        &self.0
    }

    pub fn contains(&self, m: Measure) -> bool {
        self.0.contains(&m)
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|m| m.as_str().to_owned()).collect()
    }
}

/// Markovian panels use `τ = 0.1` on `t ∈ [0, 5]`, non-Markovian panels
/// `τ = 5` on `t ∈ [0, 50]`; both with step 0.01.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetRegime {
    Markovian,
    NonMarkovian,
}

impl PresetRegime {
    pub fn tau(self) -> f64 {
        match self {
            PresetRegime::Markovian => 0.1,
            PresetRegime::NonMarkovian => 5.0,
        }
    }

    pub fn time(self) -> Progression {
        let stop = match self {
            PresetRegime::Markovian => 5.0,
            PresetRegime::NonMarkovian => 50.0,
        };
        Progression { start: 0.0, stop, step: 0.01 }
    }
}

/// Second swept axis besides time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetSweep {
    /// φ over `[0, π]` at fixed μ.
    Phi { mu: f64 },
    /// μ over `[0, 1]` at `φ = π/2`.
    Mu,
    /// Only time varies, `φ = π/2`.
    Time { mu: f64 },
}

macro_rules! presets {
    ($($variant:ident => $id:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum FigurePreset {
            $($variant),*
        }

        impl FigurePreset {
            pub const ALL: [FigurePreset; 28] = [$(FigurePreset::$variant),*];

            pub const fn as_str(self) -> &'static str {
                match self {
                    $(FigurePreset::$variant => $id),*
                }
            }
        }
    };
}

presets! {
    H1a => "h1a", H1b => "h1b", H2a => "h2a", H2b => "h2b",
    Sc1a => "sc1a", Sc1b => "sc1b", Sc2a => "sc2a", Sc2b => "sc2b",
    E1a => "e1a", E1b => "e1b", E2a => "e2a", E2b => "e2b",
    D1a => "d1a", D1b => "d1b", D2a => "d2a", D2b => "d2b",
    C1a => "c1a", C1b => "c1b", C2a => "c2a", C2b => "c2b",
    M0 => "m0", M06 => "m06", M08 => "m08", M1 => "m1",
    Nm0 => "nm0", Nm06 => "nm06", Nm08 => "nm08", Nm1 => "nm1",
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigurePreset {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| SweepError::UnknownPreset(s.to_owned()))
    }
}

/// Fixed parameters of a preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetSpec {
    pub regime: PresetRegime,
    pub sweep: PresetSweep,
    /// `None` means all four measures.
    pub measure: Option<Measure>,
}

impl FigurePreset {
    pub fn spec(self) -> PresetSpec {
        use FigurePreset::*;
        use PresetRegime::{Markovian as M, NonMarkovian as N};
        use PresetSweep::{Mu, Phi, Time};

        let panel = |measure, regime, b: bool| PresetSpec {
            regime,
            sweep: if b { Mu } else { Phi { mu: 0.8 } },
            measure: Some(measure),
        };
        let sc = |regime, mu| PresetSpec { regime, sweep: Phi { mu }, measure: Some(Measure::Steering) };
        let all = |regime, mu| PresetSpec { regime, sweep: Time { mu }, measure: None };
        match self {
            H1a => panel(Measure::Steering, M, false),
            H1b => panel(Measure::Steering, M, true),
            H2a => panel(Measure::Steering, N, false),
            H2b => panel(Measure::Steering, N, true),
            Sc1a => sc(M, 0.6),
            Sc1b => sc(M, 0.8),
            Sc2a => sc(N, 0.6),
            Sc2b => sc(N, 0.8),
            E1a => panel(Measure::Entanglement, M, false),
            E1b => panel(Measure::Entanglement, M, true),
            E2a => panel(Measure::Entanglement, N, false),
            E2b => panel(Measure::Entanglement, N, true),
            D1a => panel(Measure::Discord, M, false),
            D1b => panel(Measure::Discord, M, true),
            D2a => panel(Measure::Discord, N, false),
            D2b => panel(Measure::Discord, N, true),
            C1a => panel(Measure::Coherence, M, false),
            C1b => panel(Measure::Coherence, M, true),
            C2a => panel(Measure::Coherence, N, false),
            C2b => panel(Measure::Coherence, N, true),
            M0 => all(M, 0.0),
            M06 => all(M, 0.6),
            M08 => all(M, 0.8),
            M1 => all(M, 1.0),
            Nm0 => all(N, 0.0),
            Nm06 => all(N, 0.6),
            Nm08 => all(N, 0.8),
            Nm1 => all(N, 1.0),
        }
    }

    pub fn grid(self) -> SweepGrid {
        let spec = self.spec();
        let (phi, mu) = match spec.sweep {
            PresetSweep::Phi { mu } => (phi_degrees_grid(), vec![mu]),
            PresetSweep::Mu => (vec![FRAC_PI_2], mu_percent_grid()),
            PresetSweep::Time { mu } => (vec![FRAC_PI_2], vec![mu]),
        };
        SweepGrid::new(vec![ChannelName::Lambda], phi, mu, vec![spec.regime.tau()], spec.regime.time())
            .expect("preset grids are valid")
    }

    pub fn selector(self) -> MeasureSelector {
        match self.spec().measure {
            Some(m) => MeasureSelector::only(m),
            None => MeasureSelector::all(),
        }
    }
}

/// Grid and measure selector of a preset.
pub fn figure_preset(id: FigurePreset) -> (SweepGrid, MeasureSelector) {
    (id.grid(), id.selector())
}

/// Looks up a preset by its id string.
pub fn figure_preset_by_name(id: &str) -> Result<(SweepGrid, MeasureSelector), SweepError> {
    Ok(figure_preset(id.parse()?))
}
