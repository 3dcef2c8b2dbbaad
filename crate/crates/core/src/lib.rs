#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Quantum pendulum: Mathieu spectra, symmetry regions, velocity observables,
//! uncertainty products, the classical pendulum and torsional oscillators.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

pub mod classical;
pub mod error;
pub mod fixtures;
pub mod mathieu;
pub mod scalar;
pub mod series;
pub mod states;
pub mod symmetry;
pub mod torsion;
pub mod tridiag;
pub mod uncertainty;

pub use error::{Error, Result};
pub use mathieu::{
    build_series, ce, ce_value, characteristic_value, fourier_coefficients, se, se_value,
    MathieuClass, SpectralLevel, Truncation,
};
pub use scalar::Real;
pub use series::TrigSeries;
pub use states::{
    build_state, density, density_maxima, jump_at_boundary, velocity_expect, velocity_sq_expect,
    ObservableJump, QuantumState, StateFamily, StateSpec,
};
pub use symmetry::{GroupElement, Subgroup};
pub use uncertainty::{angular_moments, UncertaintyReport};

pub type Series = TrigSeries<f64>;
pub type Level = SpectralLevel<f64>;
pub type State = QuantumState<f64>;
pub type Spec = StateSpec<f64>;
pub type Jump = ObservableJump<f64>;
pub type Uncertainty = UncertaintyReport<f64>;
pub type Boundary = symmetry::RegionBoundary<f64>;
pub type Threshold = symmetry::GapThreshold<f64>;
pub type Params = classical::ClassicalParams<f64>;
pub type Rotor = torsion::TorsionRotor<f64>;
pub type Universal = torsion::UniversalParams<f64>;
