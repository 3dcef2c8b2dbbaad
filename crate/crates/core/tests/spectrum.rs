use nalgebra::DMatrix;
use qpendulum::mathieu::{characteristic_value_with, SpectralLevel, Truncation};
use qpendulum::{ce, se, MathieuClass, Series};

/// Lowest `count` eigenvalues of `−d²/dφ² + 2l cos 2φ` in the basis `e^{ikφ}`,
/// `|k| ≤ k_max`, where the operator is `k² δ + l (δ_{k,k±2})`.
fn dense_spectrum(l: f64, k_max: usize, count: usize) -> Vec<f64> {
    let dim = 2 * k_max + 1;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let k = i as f64 - k_max as f64;
        h[(i, i)] = k * k;
        if i + 2 < dim {
            h[(i, i + 2)] = l;
            h[(i + 2, i)] = l;
        }
    }
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.truncate(count);
    ev
}

fn mathieu_spectrum(l: f64, n_max: usize) -> Vec<f64> {
    let mut all = Vec::new();
    for class in MathieuClass::ALL {
        for n in class.orders(n_max) {
            all.push(qpendulum::characteristic_value(class, n, l).unwrap());
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all
}

#[test]
fn matches_dense_exponential_basis() {
    for &l in &[0.0, 0.5, 3.42, 11.1, 23.93, 50.84] {
        let ours = mathieu_spectrum(l, 12);
        // Orders ≤ 12 of every class are the 25 lowest levels.
        let dense = dense_spectrum(l, 80, ours.len());
        for (i, (a, b)) in ours.iter().zip(&dense).enumerate() {
            assert!(
                (a - b).abs() < 1e-10 * b.abs().max(1.0),
                "l={l} level {i}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn free_rotor_is_integer_squares() {
    for class in MathieuClass::ALL {
        for n in class.orders(12) {
            let a = qpendulum::characteristic_value(class, n, 0.0).unwrap();
            assert!((a - (n * n) as f64).abs() < 1e-12, "{class} {n}: {a}");
        }
    }
}

fn all_levels(l: f64, n_max: usize) -> Vec<(String, Series)> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.push((format!("ce{n}"), ce(n, l).unwrap().series()));
        if n >= 1 {
            out.push((format!("se{n}"), se(n, l).unwrap().series()));
        }
    }
    out
}

#[test]
fn levels_are_orthonormal() {
    for &l in &[0.5, 3.42, 11.1, 50.84] {
        let levels = all_levels(l, 10);
        for (i, (ni, si)) in levels.iter().enumerate() {
            for (j, (nj, sj)) in levels.iter().enumerate() {
                let g = si.inner_product(sj);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (g.re - expected).abs() < 1e-10 && g.im.abs() < 1e-15,
                    "l={l} <{ni}|{nj}> = {g}"
                );
            }
        }
    }
}

#[test]
fn mathieu_operator_residual() {
    for &l in &[0.5, 3.42, 11.1, 50.84] {
        for class in MathieuClass::ALL {
            for n in class.orders(10) {
                let level = SpectralLevel::<f64>::solve(class, n, l).unwrap();
                let s = level.series();
                // ψ'' + (a − 2l cos 2φ)ψ
                let r = s.derivative().derivative() + s.clone() * level.value
                    - s.multiply_by_cos2() * (2.0 * l);
                assert!(r.norm() < 1e-8, "{class} {n} l={l}: {}", r.norm());
            }
        }
    }
}

#[test]
fn coefficients_are_signed_and_decay() {
    for &l in &[0.0, 3.42, 50.84] {
        for class in MathieuClass::ALL {
            for n in class.orders(8) {
                let level = SpectralLevel::<f64>::solve(class, n, l).unwrap();
                let row = class.index_of(n).unwrap();
                assert!(level.coeffs[row] > 0.0);
                let big = level.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
                assert!(level.coeffs.last().unwrap().abs() < 1e-14 * big);
                let norm: f64 = level.coeffs.iter().map(|c| c * c).sum();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn larger_truncation_does_not_move_results() {
    for &l in &[1.14, 23.93, 120.0] {
        for class in MathieuClass::ALL {
            let n = class.orders(9).last().unwrap();
            let adaptive = SpectralLevel::<f64>::solve(class, n, l).unwrap();
            let big = SpectralLevel::<f64>::solve_fixed(class, n, l, 400).unwrap();
            assert!((adaptive.value - big.value).abs() < 1e-11);
            for (a, b) in adaptive.coeffs.iter().zip(&big.coeffs) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn truncation_cap_is_enforced() {
    let tight = Truncation {
        min_start: 4,
        cap: 8,
        ..Truncation::default()
    };
    let err = characteristic_value_with(MathieuClass::CeEven, 4, 200.0_f64, &tight).unwrap_err();
    assert!(matches!(err, qpendulum::Error::Convergence { cap: 8, .. }));
}

#[test]
fn single_precision_tracks_double() {
    for &l in &[0.0_f32, 1.14, 11.1] {
        for class in MathieuClass::ALL {
            for n in class.orders(6) {
                let lo = qpendulum::characteristic_value(class, n, l).unwrap();
                let hi = qpendulum::characteristic_value(class, n, f64::from(l)).unwrap();
                assert!(
                    (f64::from(lo) - hi).abs() < 1e-4 * hi.abs().max(1.0),
                    "{class} {n} {l}"
                );
            }
        }
    }
}
