//! Parallel evaluation of a grid with deterministic gather order.

use hyperspin_core::channel::{evolve, memory_kernel, ChannelConfig};
use hyperspin_core::state::{channel_params, density_matrix};
use hyperspin_core::measures::measure_all;
use hyperspin_core::{ChannelError, MeasureError, MeasureRecord, StateError};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::grid::{GridPoint, GridSpec, SweepGrid};
use crate::preset::{FigurePreset, MeasureSelector};
use crate::SweepError;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "HYPERSPIN_THREADS";
/// Points per scheduling chunk.
const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PointError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// State, evolution and measures at one grid point.
pub fn evaluate_point(
    point: &GridPoint,
    variant: hyperspin_core::KernelVariant,
) -> Result<MeasureRecord, PointError> {
    let rho0 = density_matrix(&channel_params(point.channel), point.phi)?;
    let cfg = ChannelConfig::with_variant(point.mu, point.tau, variant)?;
    let k = memory_kernel(point.time, &cfg)?.k;
    let rho = evolve(&rho0, point.time, &cfg)?;
    let eta = hyperspin_core::channel::eta_from_kernel(k, point.mu);
    Ok(measure_all(&rho, eta, k)?)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Metadata {
    pub preset: Option<String>,
    pub grid_hash: String,
    pub kernel_variant: String,
    pub version: String,
    pub measures: Vec<String>,
    pub grid: GridSpec,
}

impl Metadata {
    pub fn new(grid: &SweepGrid, selector: &MeasureSelector, preset: Option<FigurePreset>) -> Self {
        Self {
            preset: preset.map(|p| p.as_str().to_owned()),
            grid_hash: grid_hash(grid),
            kernel_variant: grid.kernel_variant.as_str().to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            measures: selector.names(),
            grid: grid.spec(),
        }
    }
}

/// SHA-256 of the canonical JSON grid description and kernel variant.
pub fn grid_hash(grid: &SweepGrid) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(&grid.spec()).expect("grid spec serialises"));
    h.update(grid.kernel_variant.as_str().as_bytes());
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<(GridPoint, MeasureRecord)>,
    pub metadata: Metadata,
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run_sweep(grid: &SweepGrid, selector: &MeasureSelector) -> Result<SweepResult, SweepError> {
    run_sweep_with(grid, selector, None, threads_from_env())
}

pub fn run_preset(id: FigurePreset) -> Result<SweepResult, SweepError> {
    run_sweep_with(&id.grid(), &id.selector(), Some(id), threads_from_env())
}

/// As [`run_sweep`] with an explicit worker cap; `Some(1)` runs serially.
pub fn run_sweep_with(
    grid: &SweepGrid,
    selector: &MeasureSelector,
    preset: Option<FigurePreset>,
    threads: Option<usize>,
) -> Result<SweepResult, SweepError> {
    grid.validate()?;
    let variant = grid.kernel_variant;
    let eval = |i: usize| {
        let p = grid.point(i);
        evaluate_point(&p, variant).map(|r| (p, r)).map_err(|e| (p, e))
    };
    let outcomes: Vec<_> = match threads {
        Some(1) => (0..grid.len()).map(eval).collect(),
        _ => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| SweepError::Pool(e.to_string()))?;
            pool.install(|| (0..grid.len()).into_par_iter().with_min_len(CHUNK).map(eval).collect())
        }
    };
    let mut records = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Ok(r) => records.push(r),
            Err((point, source)) => return Err(SweepError::Point { point, source }),
        }
    }
    Ok(SweepResult { records, metadata: Metadata::new(grid, selector, preset) })
}
