//! Published reference values for levels `n = 1..=8`, and the evaluation
//! points inferred from them.
//!
//! Column order of the four-column tables is `(φ⁺→ξ, φ⁺→η, φ⁻→ξ, φ⁻→η)` for
//! the jumps and `(φ⁺, φ⁻, ξ, η)` for the uncertainty products. Jump entries
//! are quoted as `from − to`.

use crate::states::StateFamily;
use crate::symmetry::{BoundaryTarget, GapThreshold, PairingKind, RegionThresholds};

/// Where a reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Printed in the published tables.
    Published,
    /// Not printed; reconstructed by fitting computed values to published ones.
    Inferred,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Self::Published => "published",
            Self::Inferred => "inferred",
        }
    }
}

pub const LEVELS: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// Splitting points (G₋ → G₀), indexed by `n − 1`.
pub const SPLITTING_POINTS: [f64; 8] = [0.0, 0.2, 1.14, 3.17, 6.42, 10.95, 16.78, 23.93];

/// Merging points (G₀ → G₊), indexed by `n − 1`.
pub const MERGING_POINTS: [f64; 8] = [3.42, 7.51, 13.93, 18.4, 24.69, 32.23, 40.96, 50.84];

/// Transitions of the jump tables, in column order.
pub const JUMP_COLUMNS: [(StateFamily, StateFamily); 4] = [
    (StateFamily::PhiPlus, StateFamily::Xi),
    (StateFamily::PhiPlus, StateFamily::Eta),
    (StateFamily::PhiMinus, StateFamily::Xi),
    (StateFamily::PhiMinus, StateFamily::Eta),
];

/// States of the uncertainty tables, in column order.
pub const UR_COLUMNS: [StateFamily; 4] = [
    StateFamily::PhiPlus,
    StateFamily::PhiMinus,
    StateFamily::Xi,
    StateFamily::Eta,
];

pub const VELOCITY_JUMPS: [[f64; 4]; 8] = [
    [2.0, 2.0, -2.0, -2.0],
    [3.981, 3.981, -3.981, -3.981],
    [5.929, 5.929, -5.929, -5.929],
    [7.927, 7.927, -7.927, -7.927],
    [9.815, 9.815, -9.815, -9.815],
    [11.665, 11.665, -11.665, -11.665],
    [13.437, 13.437, -13.437, -13.437],
    [13.884, 13.884, -13.884, -13.884],
];

pub const VELOCITY_SQ_JUMPS: [[f64; 4]; 8] = [
    [0.0, 0.0, 0.0, 0.0],
    [0.088, -0.087, 0.088, -0.087],
    [0.204, -0.203, 0.204, -0.203],
    [0.079, -0.08, 0.079, -0.08],
    [0.181, -0.182, 0.181, -0.182],
    [0.304, -0.304, 0.304, -0.304],
    [0.558, -0.558, 0.558, -0.558],
    [10.964, -10.964, 10.964, -10.964],
];

pub const UR_A: [[f64; 4]; 8] = [
    [-0.125, -0.125, 0.0625, 0.6875],
    [-0.119738, -0.119738, 1.59984, 1.92984],
    [-0.0795267, -0.0795267, 3.81139, 4.15142],
    [-0.0617743, -0.0617743, 7.20129, 7.31649],
    [0.0777876, 0.0777876, 10.8688, 11.0587],
    [0.303495, 0.303495, 15.1676, 15.4109],
    [0.68743, 0.68743, 19.8053, 20.2087],
    [2.69405, 2.69405, 17.8697, 23.1462],
];

pub const UR_B: [[f64; 4]; 8] = [
    [-0.125, -0.125, 0.6875, 0.0625],
    [-0.106602, -0.106602, 2.11391, 1.82766],
    [-0.0514835, -0.0514835, 4.79486, 4.55658],
    [-0.0343079, -0.0343079, 8.39221, 8.31676],
    [0.147406, 0.147406, 13.3947, 13.2956],
    [0.454449, 0.454449, 19.5324, 19.4411],
    [1.00283, 1.00283, 26.8837, 26.7593],
    [4.80609, 4.80609, 35.0808, 35.2863],
];

/// Barrier values at which the tabulated velocity jumps are reproduced,
/// indexed by `n − 1`. They differ from the splitting points for `n ≥ 2`.
pub const INFERRED_JUMP_POINTS: [f64; 8] = [0.0, 0.3, 1.2, 2.0, 4.5, 8.0, 13.0, 28.0];

/// Relative-gap thresholds fitted to the splitting and merging tables.
pub const SPLITTING_EPSILON: f64 = 0.0049759;
pub const MERGING_EPSILON: f64 = 0.0038788;

pub fn calibrated_thresholds() -> RegionThresholds<f64> {
    RegionThresholds {
        rotor: GapThreshold::relative(SPLITTING_EPSILON),
        well: GapThreshold::relative(MERGING_EPSILON),
    }
}

/// Splitting-point targets as `(n, rotor)` boundaries.
pub fn splitting_targets() -> Vec<BoundaryTarget<f64>> {
    LEVELS
        .iter()
        .zip(SPLITTING_POINTS)
        .map(|(&n, l_c)| BoundaryTarget {
            n,
            pairing: PairingKind::Rotor,
            l_c,
        })
        .collect()
}

/// Merging-point targets: level `n` merges through the well pair `(ce_{n−1}, se_n)`.
pub fn merging_targets() -> Vec<BoundaryTarget<f64>> {
    LEVELS
        .iter()
        .zip(MERGING_POINTS)
        .map(|(&n, l_c)| BoundaryTarget {
            n: n - 1,
            pairing: PairingKind::Well,
            l_c,
        })
        .collect()
}
