//! Spin correlations of hyperon–antihyperon pairs under correlated dephasing.
//!
//! The crate is `no_std` and allocation-free. It covers:
//!
//! * [`linalg`]: fixed-size 2x2 / 4x4 complex matrices, Pauli algebra,
//!   partial traces and a Hermitian eigenvalue solver.
//! * [`state`]: the `J/psi -> Y Ybar` production state, its X-state form and
//!   the channel parameter registry.
//! * [`channel`]: the random-telegraph memory kernel, the correlated Pauli
//!   channel and the closed-form evolution of X-states.
//! * [`measures`]: steering, concurrence and entanglement of formation,
//!   trace-norm geometric discord and l1-norm coherence.
//!
//! ```
//! use hyperspin_core::{channel, measures, state};
//!
//! let lambda = state::channel_params(state::ChannelName::Lambda);
//! let rho0 = state::density_matrix(&lambda, core::f64::consts::FRAC_PI_2).unwrap();
//! let cfg = channel::ChannelConfig::new(0.8, 0.1).unwrap();
//! let k = channel::memory_kernel(1.0, &cfg).unwrap().k;
//! let eta = channel::eta_from_kernel(k, cfg.mu());
//! let rho = channel::evolve(&rho0, 1.0, &cfg).unwrap();
//! let record = measures::measure_all(&rho, eta, k).unwrap();
//! assert!(record.coherence_l1 <= 1.0);
//! ```

#![no_std]
// NaN must fail domain checks, hence `!(x >= 0.0)` style comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod linalg;
pub mod measures;
pub mod state;

pub use channel::{ChannelConfig, ChannelError, KernelVariant, Regime};
pub use linalg::{ComplexMat2, ComplexMat4, PauliIndex};
pub use measures::{MeasureError, MeasureRecord, SteeringClass, SteeringResult};
pub use state::{ChannelName, DensityMatrix4, HyperonChannel, StateError};
