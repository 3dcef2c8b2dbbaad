//! Klein four-group symmetry of the pendulum and the regions it labels.

mod group;
mod regions;

pub use group::{apply_group_element, series_invariance, GroupElement, Invariance, Subgroup};
pub use regions::{
    calibrate, calibrate_with, classify_region, classify_region_with, evaluate_threshold,
    evaluate_threshold_with, find_boundary, find_boundary_with, gap_measure, gap_measure_with,
    merging_point, pair_gap, region_intervals, relative_gap, splitting_point,
    sweep_characteristics, sweep_characteristics_with, BoundarySearch, BoundaryTarget, Calibration,
    CalibrationRow, CharacteristicRow, GapCriterion, GapCurve, GapThreshold, PairingKind,
    RegionBoundary, RegionTag, RegionThresholds, SymmetryRegion,
};
