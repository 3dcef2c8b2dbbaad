//! Angular uncertainty products built from `L_z = −i d/dφ`, `sin φ` and `cos φ`.
//!
//! `ur_a = (ΔL_z)²(Δ sin φ)² − ¼(Δ cos φ)²` and `ur_b` with sin and cos
//! exchanged. Negative values are reported as computed.

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::states::{density_maxima, density_minima, wrap_angle, QuantumState, StateSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport<T> {
    pub spec: StateSpec<T>,
    pub exp_sin: T,
    pub exp_cos: T,
    pub exp_sin2: T,
    pub exp_cos2: T,
    pub exp_lz: T,
    pub exp_lz2: T,
    pub var_sin: T,
    pub var_cos: T,
    pub var_lz: T,
    pub ur_a: T,
    pub ur_b: T,
}

/// All moments and both products, in coefficient space.
pub fn angular_moments<T: Real>(state: &QuantumState<T>) -> UncertaintyReport<T> {
    let s = &state.series;
    let by_sin = s.multiply_by_sin();
    let by_cos = s.multiply_by_cos();
    let ds = s.derivative();

    let exp_sin = s.inner_product(&by_sin).re;
    let exp_cos = s.inner_product(&by_cos).re;
    let exp_sin2 = by_sin.norm_sqr();
    let exp_cos2 = by_cos.norm_sqr();
    // ⟨−i d/dφ⟩ = −i⟨s|s′⟩
    let exp_lz = s.inner_product(&ds).im;
    let exp_lz2 = ds.norm_sqr();

    let var_sin = exp_sin2 - exp_sin * exp_sin;
    let var_cos = exp_cos2 - exp_cos * exp_cos;
    let var_lz = exp_lz2 - exp_lz * exp_lz;
    let quarter = T::lit(0.25);
    UncertaintyReport {
        spec: state.spec,
        exp_sin,
        exp_cos,
        exp_sin2,
        exp_cos2,
        exp_lz,
        exp_lz2,
        var_sin,
        var_cos,
        var_lz,
        ur_a: var_lz * var_sin - quarter * var_cos,
        ur_b: var_lz * var_cos - quarter * var_sin,
    }
}

pub fn ur_a<T: Real>(state: &QuantumState<T>) -> T {
    angular_moments(state).ur_a
}

pub fn ur_b<T: Real>(state: &QuantumState<T>) -> T {
    angular_moments(state).ur_b
}

/// Small-angle inequality `ΔL_z⟨φ²⟩ ≥ ¼(1 − ½⟨φ²⟩)` at one density maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalInequality<T> {
    pub phi_max: T,
    /// Integration window `(start, end)` around the maximum, `start < phi_max < end`.
    pub window: (T, T),
    /// Second moment of the density about the maximum, normalized over the window.
    pub local_phi2: T,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

const WINDOW_POINTS: usize = 2048;

/// Evaluates the inequality at every density maximum.
///
/// The window runs between the adjacent density minima; without minima it is
/// `±π/(2n)`.
pub fn local_variance_inequality<T: Real>(
    state: &QuantumState<T>,
) -> Result<Vec<LocalInequality<T>>> {
    let maxima = density_maxima(state);
    if maxima.is_empty() {
        return Err(domain(format!(
            "{} n={} has a flat density and no maxima",
            state.spec.family, state.spec.n
        )));
    }
    let minima = density_minima(state);
    let delta_lz = angular_moments(state).var_lz.max(T::zero()).sqrt();
    let half_width = T::FRAC_PI_2() / T::from_usize_lossy(state.spec.n.max(1));
    let tau = T::TAU();

    maxima
        .into_iter()
        .map(|phi_max| {
            let window = adjacent(&minima, phi_max, tau)
                .unwrap_or((phi_max - half_width, phi_max + half_width));
            let local_phi2 = local_moment(state, phi_max, window);
            let lhs = delta_lz * local_phi2;
            let rhs = T::lit(0.25) * (T::one() - T::lit(0.5) * local_phi2);
            Ok(LocalInequality {
                phi_max,
                window,
                local_phi2,
                lhs,
                rhs,
                holds: lhs >= rhs,
            })
        })
        .collect()
}

/// Nearest minima on either side of `phi`, unwrapped so that `lo < phi < hi`.
fn adjacent<T: Real>(minima: &[T], phi: T, tau: T) -> Option<(T, T)> {
    if minima.is_empty() {
        return None;
    }
    let below = minima
        .iter()
        .map(|&m| phi - wrap_angle(phi - m))
        .filter(|&m| m < phi)
        .fold(T::neg_infinity(), T::max);
    let above = minima
        .iter()
        .map(|&m| phi + wrap_angle(m - phi))
        .filter(|&m| m > phi)
        .fold(T::infinity(), T::min);
    (below.is_finite() && above.is_finite() && above - below <= tau).then_some((below, above))
}

fn local_moment<T: Real>(state: &QuantumState<T>, center: T, (a, b): (T, T)) -> T {
    let h = (b - a) / T::from_usize_lossy(WINDOW_POINTS);
    let half = T::lit(0.5);
    let (mut mass, mut moment) = (T::zero(), T::zero());
    for i in 0..=WINDOW_POINTS {
        let phi = a + h * T::from_usize_lossy(i);
        let w = if i == 0 || i == WINDOW_POINTS {
            half
        } else {
            T::one()
        };
        let rho = state.series.eval(phi).norm_sqr() * w;
        let d = phi - center;
        mass += rho;
        moment += rho * d * d;
    }
    moment / mass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{build_state, StateFamily};
    use std::f64::consts::PI;

    fn state(family: StateFamily, n: usize, l: f64) -> QuantumState<f64> {
        build_state(StateSpec::new(family, n, l)).unwrap()
    }

    #[test]
    fn first_harmonic_moments() {
        let r = angular_moments(&state(StateFamily::Xi, 1, 0.0));
        assert!((r.exp_sin2 - 0.25).abs() < 1e-15);
        assert!((r.exp_cos2 - 0.75).abs() < 1e-15);
        assert!((r.exp_lz2 - 1.0).abs() < 1e-15);
        assert!((r.ur_a - 0.0625).abs() < 1e-15);
        let r = angular_moments(&state(StateFamily::Eta, 1, 0.0));
        assert!((r.ur_a - 0.6875).abs() < 1e-15);
        assert!((r.ur_b - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn plane_wave_moments() {
        let r = angular_moments(&state(StateFamily::PhiPlus, 1, 0.0));
        assert!((r.exp_lz - 1.0).abs() < 1e-15);
        assert!(r.var_lz.abs() < 1e-15);
        assert!((r.exp_sin2 - 0.5).abs() < 1e-15);
        assert!((r.ur_a + 0.125).abs() < 1e-15);
        assert!((r.ur_b + 0.125).abs() < 1e-15);
    }

    #[test]
    fn flat_density_has_no_inequality() {
        assert!(local_variance_inequality(&state(StateFamily::PhiPlus, 1, 0.0)).is_err());
    }

    #[test]
    fn cosine_window_runs_between_minima() {
        let out = local_variance_inequality(&state(StateFamily::Xi, 1, 0.0)).unwrap();
        assert_eq!(out.len(), 2);
        let first = &out[0];
        assert!((first.window.0 + PI / 2.0).abs() < 1e-6);
        assert!((first.window.1 - PI / 2.0).abs() < 1e-6);
        // ∫φ²cos²φ / ∫cos²φ over (−π/2, π/2) = π²/12 − 1/2
        assert!((first.local_phi2 - (PI * PI / 12.0 - 0.5)).abs() < 1e-6);
    }
}
