//! Sweep axes and grid points.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use hyperspin_core::{ChannelName, KernelVariant};
use serde::Serialize;

use crate::SweepError;

/// Slack on the point count so that `0:5:0.01` has 501 points despite rounding.
const COUNT_SLACK: f64 = 1e-9;

/// Arithmetic progression `start, start + step, …` up to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Progression {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Progression {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, SweepError> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(SweepError::InvalidGrid(format!("non-finite progression {start}:{stop}:{step}")));
        }
        if step <= 0.0 {
            return Err(SweepError::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(SweepError::InvalidGrid(format!("stop {stop} is below start {start}")));
        }
        Ok(Self { start, stop, step })
    }

    pub fn single(value: f64) -> Self {
        Self { start: value, stop: value, step: 1.0 }
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + COUNT_SLACK).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> f64 {
        (self.start + i as f64 * self.step).min(self.stop)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }
}

impl FromStr for Progression {
    type Err = SweepError;

    /// `start:stop:step`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(SweepError::InvalidGrid(format!("expected start:stop:step, got {s:?}")));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| SweepError::InvalidGrid(format!("not a number: {x:?}")))
        };
        Self::new(num(a)?, num(b)?, num(c)?)
    }
}

/// A sweepable axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Phi,
    Mu,
    Tau,
    Time,
}

impl FromStr for Axis {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(Axis::Phi),
            "mu" => Ok(Axis::Mu),
            "tau" => Ok(Axis::Tau),
            "time" => Ok(Axis::Time),
            _ => Err(SweepError::InvalidGrid(format!("unknown axis {s:?} (phi, mu, tau, time)"))),
        }
    }
}

/// Parses `axis=start:stop:step`.
pub fn parse_axis_spec(s: &str) -> Result<(Axis, Progression), SweepError> {
    let (axis, range) = s
        .split_once('=')
        .ok_or_else(|| SweepError::InvalidGrid(format!("expected axis=start:stop:step, got {s:?}")))?;
    Ok((axis.trim().parse()?, range.parse()?))
}

/// `k π / 180` for `k = 0..=180`, exact at both ends.
pub fn phi_degrees_grid() -> Vec<f64> {
    (0..=180).map(|k| if k == 180 { PI } else { k as f64 * PI / 180.0 }).collect()
}

/// `0, 0.01, …, 1`.
pub fn mu_percent_grid() -> Vec<f64> {
    (0..=100).map(|k| k as f64 / 100.0).collect()
}

/// Cartesian grid over `(channel, φ, μ, τ, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub channels: Vec<ChannelName>,
    pub phi: Vec<f64>,
    pub mu: Vec<f64>,
    pub tau: Vec<f64>,
    pub time: Progression,
    pub kernel_variant: KernelVariant,
}

/// One point of a [`SweepGrid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub channel: ChannelName,
    pub phi: f64,
    pub mu: f64,
    pub tau: f64,
    pub time: f64,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(channel={}, phi={}, mu={}, tau={}, t={})",
            self.channel, self.phi, self.mu, self.tau, self.time
        )
    }
}

impl SweepGrid {
    pub fn new(
        channels: Vec<ChannelName>,
        phi: Vec<f64>,
        mu: Vec<f64>,
        tau: Vec<f64>,
        time: Progression,
    ) -> Result<Self, SweepError> {
        let grid = Self { channels, phi, mu, tau, time, kernel_variant: KernelVariant::Standard };
        grid.validate()?;
        Ok(grid)
    }

    pub fn with_variant(mut self, variant: KernelVariant) -> Self {
        self.kernel_variant = variant;
        self
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let bad = |msg: String| Err(SweepError::InvalidGrid(msg));
        if self.channels.is_empty() || self.phi.is_empty() || self.mu.is_empty() || self.tau.is_empty() {
            return bad("every axis needs at least one value".into());
        }
        if let Some(p) = self.phi.iter().find(|p| !(0.0..=PI).contains(*p)) {
            return bad(format!("phi = {p} outside [0, pi]"));
        }
        if let Some(m) = self.mu.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return bad(format!("mu = {m} outside [0, 1]"));
        }
        if let Some(t) = self.tau.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return bad(format!("tau = {t} must be positive"));
        }
        Progression::new(self.time.start, self.time.stop, self.time.step)?;
        if self.time.start < 0.0 {
            return bad(format!("time starts at {} < 0", self.time.start));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.channels.len() * self.phi.len() * self.mu.len() * self.tau.len() * self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `index` in lexicographic `(channel, φ, μ, τ, t)` order.
    pub fn point(&self, index: usize) -> GridPoint {
        let nt = self.time.len();
        let (rest, it) = (index / nt, index % nt);
        let (rest, itau) = (rest / self.tau.len(), rest % self.tau.len());
        let (rest, imu) = (rest / self.mu.len(), rest % self.mu.len());
        let (ich, iphi) = (rest / self.phi.len(), rest % self.phi.len());
        GridPoint {
            channel: self.channels[ich],
            phi: self.phi[iphi],
            mu: self.mu[imu],
            tau: self.tau[itau],
            time: self.time.value(it),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec {
            channels: self.channels.iter().map(|c| c.as_str().to_owned()).collect(),
            phi: self.phi.clone(),
            mu: self.mu.clone(),
            tau: self.tau.clone(),
            time: self.time,
            points: self.len(),
        }
    }
}

/// Serialisable description of a grid, written into result metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub channels: Vec<String>,
    pub phi: Vec<f64>,
    pub mu: Vec<f64>,
    pub tau: Vec<f64>,
    pub time: Progression,
    pub points: usize,
}
