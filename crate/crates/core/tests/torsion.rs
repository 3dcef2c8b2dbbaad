use qpendulum::symmetry::RegionThresholds;
use qpendulum::torsion::{
    crossing_times, lorentz_to_universal, modulation_schedule, parse_preset, preset,
    reduced_inertia, torsion_modulation, torsion_to_mathieu, TorsionRotor, Units, HBAR,
};
use qpendulum::{characteristic_value, MathieuClass};
use std::f64::consts::PI;

fn ethane() -> TorsionRotor<f64> {
    preset("ethane").unwrap()
}

fn thresholds() -> RegionThresholds<f64> {
    qpendulum::fixtures::calibrated_thresholds()
}

#[test]
fn reduced_inertia_examples() {
    assert_eq!(reduced_inertia(1.0_f64, 1.0).unwrap(), 0.5);
    assert!((reduced_inertia(5.3e-47_f64, 5.3e-47).unwrap() - 2.65e-47).abs() < 1e-60);
    assert!((reduced_inertia(2.0_f64, 1e12).unwrap() - 2.0).abs() < 1e-11);
    assert!(reduced_inertia(0.0_f64, 1.0).is_err());
    assert!(reduced_inertia(1.0_f64, -1.0).is_err());
}

#[test]
fn ethane_barrier_by_hand() {
    let p = torsion_to_mathieu(&ethane()).unwrap();
    let oracle = 2.0 * 2.65e-47 * 2.1e-20 / (9.0 * 1.0546e-34 * 1.0546e-34);
    assert!((p.l - oracle).abs() < 1e-3 * oracle);
    assert!((p.l - 11.1).abs() < 0.05, "l = {}", p.l);
    assert!((p.energy_scale - 9.0 * HBAR * HBAR / (8.0 * 2.65e-47)).abs() < 1e-12 * p.energy_scale);
    assert_eq!(p.phase_shift, PI / 2.0);
    // Identity l = 8U/(ℏ²ω′) holds in any unit system.
    let via_u = 8.0 * p.u_amp / (HBAR * HBAR * p.omega_prime);
    assert!((p.l - via_u).abs() < 1e-12 * p.l);
}

#[test]
fn barrier_linearity_and_fold_scaling() {
    let r = ethane();
    let base = torsion_to_mathieu(&r).unwrap().l;
    let doubled = torsion_to_mathieu(&r.with_v0(2.0 * r.v0)).unwrap().l;
    assert_eq!(doubled, 2.0 * base);
    assert_eq!(torsion_to_mathieu(&r.with_v0(0.0)).unwrap().l, 0.0);
    let mut prev = f64::INFINITY;
    for n_fold in 1..=6 {
        let l = torsion_to_mathieu(&TorsionRotor { n_fold, ..r }).unwrap().l;
        assert!((l * (n_fold * n_fold) as f64 - 9.0 * base).abs() < 1e-12 * base * 9.0);
        assert!(l < prev);
        prev = l;
    }
    let mut prev = -1.0;
    for i in 0..10 {
        let l = torsion_to_mathieu(&r.with_v0(i as f64 * 1e-21)).unwrap().l;
        assert!(l > prev);
        prev = l;
    }
}

#[test]
fn free_internal_rotor_round_trip() {
    let r = TorsionRotor::new(3.0e-47, 6.0e-47, 0.0, 3).unwrap();
    let p = torsion_to_mathieu(&r).unwrap();
    let inertia = reduced_inertia(r.i1, r.i2).unwrap();
    for k in 0..=3usize {
        // Mathieu level ce_{2k} at l = 0 has a = (2k)², i.e. angular momentum 3k about φ.
        let a = characteristic_value(MathieuClass::CeEven, 2 * k, 0.0).unwrap();
        let direct = HBAR * HBAR * (3 * k).pow(2) as f64 / (2.0 * inertia);
        let mapped = p.physical_energy(a);
        assert!(
            (mapped - direct).abs() <= 1e-12 * direct.max(1e-30),
            "k={k}: {mapped} vs {direct}"
        );
    }
}

#[test]
fn rescaled_units_are_dimensionless() {
    let r = TorsionRotor {
        units: Units::Rescaled,
        ..TorsionRotor::new(2.0, 2.0, 3.0, 2).unwrap()
    };
    let p = torsion_to_mathieu(&r).unwrap();
    assert_eq!(p.l, 2.0 * 1.0 * 3.0 / 4.0);
}

#[test]
fn lorentz_unit_inputs() {
    let p = lorentz_to_universal(1.0, 1.0, 1.0, 1.0, 1.0, Units::Rescaled).unwrap();
    assert!((p.omega_prime - 1.5 * PI).abs() < 1e-15);
    assert_eq!(p.u_amp, 1.0);
    assert!((p.l - 16.0 / (3.0 * PI)).abs() < 1e-15);
    let twice_mu = lorentz_to_universal(1.0, 1.0, 2.0, 1.0, 1.0, Units::Rescaled).unwrap();
    assert!((twice_mu.l - p.l / 2.0).abs() < 1e-15);
    let four_i = lorentz_to_universal(1.0, 1.0, 1.0, 1.0, 4.0, Units::Rescaled).unwrap();
    assert_eq!(four_i.u_amp, 2.0);
    assert!(matches!(
        lorentz_to_universal(1.0, 1.0, 0.0, 1.0, 1.0, Units::Rescaled),
        Err(qpendulum::Error::Degenerate(_))
    ));
}

#[test]
fn schedule_crosses_at_cosine_zeros() {
    let omega = 2.0;
    let t: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
    let sched = modulation_schedule(0.2, 0.05, omega, &t, &[2], &thresholds()).unwrap();
    let expected = crossing_times(omega, 4.0).unwrap();
    let flagged: Vec<f64> = sched.iter().filter(|s| s.crossing).map(|s| s.t).collect();
    assert_eq!(flagged.len(), expected.len());
    for (f, e) in flagged.iter().zip(&expected) {
        assert!(*f >= *e && *f - *e < 0.01 + 1e-12, "{f} vs {e}");
        assert!(((omega * e) - PI / 2.0).rem_euclid(PI) < 1e-12);
    }
}

#[test]
fn tiny_modulation_keeps_tags() {
    let t: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
    let sched = modulation_schedule(11.1, 1e-9, 1.0, &t, &[1, 2, 3, 4], &thresholds()).unwrap();
    for s in &sched {
        assert_eq!(s.tags, sched[0].tags);
    }
    assert!(modulation_schedule(0.01, 0.05, 1.0, &t, &[1], &thresholds()).is_err());
    assert!(modulation_schedule(1.0, 0.0, 1.0, &t, &[1], &thresholds()).is_err());
}

#[test]
fn pumped_barrier_matches_pointwise_recomputation() {
    let r = ethane();
    let (dv, big_omega) = (0.1 * r.v0, 3.0);
    let t: Vec<f64> = (0..30).map(|i| i as f64 * 0.17).collect();
    let sched = torsion_modulation(&r, dv, big_omega, &t).unwrap();
    for (ti, l) in sched {
        let direct = torsion_to_mathieu(&r.with_v0(r.v0 + dv * (big_omega * ti).cos()))
            .unwrap()
            .l;
        assert!((l - direct).abs() < 1e-12 * direct);
    }
    assert!(torsion_modulation(&r, 2.0 * r.v0, 1.0, &t).is_err());
}

#[test]
fn preset_parsing() {
    let r = ethane();
    assert_eq!((r.i1, r.i2, r.v0, r.n_fold), (5.3e-47, 5.3e-47, 2.1e-20, 3));
    let err = preset::<f64>("propane").unwrap_err().to_string();
    assert!(err.contains("ethane"), "{err}");
    assert!(parse_preset::<f64>("I1 = 1\nI2 = 1\nV0_J = 1").is_err());
    assert!(parse_preset::<f64>("I1 = 1\nI2 = 1\nV0_J = 1\nn_fold = 2\nmass = 3").is_err());
    let ok =
        parse_preset::<f64>("# comment\nI1=1\n\nI2 = 3 # trailing\nV0_J=0.5\nn_fold=2").unwrap();
    assert_eq!((ok.i2, ok.n_fold), (3.0, 2));
}
