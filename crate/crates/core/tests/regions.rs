use qpendulum::fixtures::{merging_targets, splitting_targets, MERGING_EPSILON, SPLITTING_EPSILON};
use qpendulum::symmetry::{
    calibrate, classify_region, find_boundary, merging_point, pair_gap, region_intervals,
    relative_gap, splitting_point, sweep_characteristics, GapCriterion, PairingKind, RegionTag,
    RegionThresholds,
};
use qpendulum::{ce, se, GroupElement, MathieuClass};

fn thresholds() -> RegionThresholds<f64> {
    qpendulum::fixtures::calibrated_thresholds()
}

#[test]
fn rotor_pairs_are_degenerate_at_zero_barrier() {
    for n in 1..=12 {
        assert_eq!(pair_gap(n, PairingKind::Rotor, 0.0_f64).unwrap(), 0.0);
        assert_eq!(relative_gap(n, PairingKind::Rotor, 0.0_f64).unwrap(), 0.0);
    }
    assert!(relative_gap(0, PairingKind::Well, 0.0_f64)
        .unwrap()
        .is_infinite());
}

#[test]
fn boundaries_are_ordered_and_increasing() {
    let t = thresholds();
    let mut prev = (-1.0, -1.0);
    for n in 1..=8 {
        let split = splitting_point(n, t.rotor).unwrap().l_c;
        let merge = merging_point(n, t.well).unwrap().l_c;
        assert!(split < merge, "n={n}: {split} !< {merge}");
        assert!(split > prev.0 && merge > prev.1, "n={n}");
        prev = (split, merge);
    }
}

#[test]
fn boundary_brackets_straddle_threshold() {
    let t = thresholds();
    for n in [2, 5] {
        let b = find_boundary(n, PairingKind::Rotor, t.rotor).unwrap();
        let (lo, hi) = b.bracket;
        assert!(hi - lo <= 1e-4 && lo <= b.l_c && b.l_c <= hi);
        assert!(relative_gap(n, PairingKind::Rotor, lo).unwrap() < t.rotor.epsilon);
        assert!(relative_gap(n, PairingKind::Rotor, hi).unwrap() >= t.rotor.epsilon);
    }
}

#[test]
fn regions_partition_the_barrier_axis() {
    let t = thresholds();
    for n in 1..=4 {
        let [minus, zero, plus] = region_intervals(n, &t).unwrap();
        assert_eq!(minus.l_range.0, 0.0);
        assert_eq!(minus.l_range.1, zero.l_range.0);
        assert_eq!(zero.l_range.1, plus.l_range.0);
        assert_eq!(plus.l_range.1, 200.0);
        for i in 0..=240 {
            let l = i as f64 * 0.25;
            let near_edge = [minus.l_range.1, zero.l_range.1]
                .iter()
                .any(|&e| (l - e).abs() < 1e-3);
            if near_edge {
                continue;
            }
            let expected = [&minus, &zero, &plus]
                .into_iter()
                .find(|r| r.l_range.0 <= l && l < r.l_range.1)
                .unwrap()
                .tag;
            assert_eq!(classify_region(n, l, &t).unwrap(), expected, "n={n} l={l}");
        }
    }
    assert_eq!(classify_region(1, 100.0, &t).unwrap(), RegionTag::GPlus);
    assert!(classify_region(0, 1.0, &t).is_err());
}

#[test]
fn eigenfunction_parity_under_reflection() {
    for &l in &[0.0, 3.42, 23.93] {
        for n in 0..=8 {
            let c = ce(n, l).unwrap().series();
            assert!((GroupElement::A.apply(&c) - c.clone()).norm() < 1e-14);
            if n >= 1 {
                let s = se(n, l).unwrap().series();
                assert!((GroupElement::A.apply(&s) + s.clone()).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn sweep_rows_are_ordered() {
    let rows = sweep_characteristics(3, &[0.0, 1.0, 2.5]).unwrap();
    let per_l: usize = MathieuClass::ALL.iter().map(|c| c.orders(3).count()).sum();
    assert_eq!(rows.len(), 3 * per_l);
    assert!(rows.windows(2).all(|w| w[0].l <= w[1].l));
    for r in &rows {
        assert_eq!(
            r.value,
            qpendulum::characteristic_value(r.class, r.n, r.l).unwrap()
        );
    }
    assert!(sweep_characteristics(3, &[1.0, 0.5]).is_err());
    assert!(sweep_characteristics(3, &[-1.0]).is_err());
    assert!(sweep_characteristics::<f64>(3, &[]).is_err());
}

#[test]
fn shipped_thresholds_are_the_fitted_ones() {
    for (targets, shipped) in [
        (splitting_targets(), SPLITTING_EPSILON),
        (merging_targets(), MERGING_EPSILON),
    ] {
        let fit = calibrate(&targets, GapCriterion::Relative, 1e-5, 1.0).unwrap();
        assert_eq!(fit.not_found, 0);
        let eps = fit.threshold.epsilon;
        assert!((eps - shipped).abs() < 1e-3 * shipped, "{eps} vs {shipped}");
    }
}
