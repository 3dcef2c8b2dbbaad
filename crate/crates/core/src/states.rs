//! Irreducible-basis states of the three symmetry regions and their velocity
//! observables.
//!
//! `⟨v⟩ = −2i⟨s|s′⟩` and `⟨v²⟩ = −4⟨s|s″⟩ = 4‖s′‖²`, both evaluated in
//! coefficient space.

use std::fmt;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::mathieu::{MathieuClass, SpectralLevel, Truncation};
use crate::scalar::Real;
use crate::series::TrigSeries;
use crate::symmetry::{series_invariance, Invariance, Subgroup};

/// State family of the irreducible basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateFamily {
    /// `(ce_n + i se_n)/√2`
    PhiPlus,
    /// `(ce_n − i se_n)/√2`
    PhiMinus,
    /// `ce_n`
    Xi,
    /// `se_n`
    Eta,
    /// `(ce_n + i se_{n+1})/√2`
    PsiPlus,
    /// `(ce_n − i se_{n+1})/√2`
    PsiMinus,
}

impl StateFamily {
    pub const ALL: [StateFamily; 6] = [
        Self::PhiPlus,
        Self::PhiMinus,
        Self::Xi,
        Self::Eta,
        Self::PsiPlus,
        Self::PsiMinus,
    ];

    /// Subgroup the family is an irreducible basis of.
    pub fn subgroup(self) -> Subgroup {
        match self {
            Self::PhiPlus | Self::PhiMinus => Subgroup::GMinus,
            Self::Xi | Self::Eta => Subgroup::G0,
            Self::PsiPlus | Self::PsiMinus => Subgroup::GPlus,
        }
    }

    /// The family with the opposite `±` branch, or itself.
    pub fn partner(self) -> Self {
        match self {
            Self::PhiPlus => Self::PhiMinus,
            Self::PhiMinus => Self::PhiPlus,
            Self::PsiPlus => Self::PsiMinus,
            Self::PsiMinus => Self::PsiPlus,
            f => f,
        }
    }

    /// Orders `(ce, se)` combined by the family at index `n`; `None` marks an absent member.
    pub fn members(self, n: usize) -> Result<(Option<usize>, Option<usize>)> {
        match self {
            Self::Xi => Ok((Some(n), None)),
            Self::Eta if n == 0 => Err(domain("eta needs n ≥ 1")),
            Self::Eta => Ok((None, Some(n))),
            Self::PhiPlus | Self::PhiMinus if n == 0 => Err(domain("phi states need n ≥ 1")),
            Self::PhiPlus | Self::PhiMinus => Ok((Some(n), Some(n))),
            Self::PsiPlus | Self::PsiMinus => Ok((Some(n), Some(n + 1))),
        }
    }

    fn branch<T: Real>(self) -> T {
        match self {
            Self::PhiMinus | Self::PsiMinus => -T::one(),
            _ => T::one(),
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PhiPlus => "phi+",
            Self::PhiMinus => "phi-",
            Self::Xi => "xi",
            Self::Eta => "eta",
            Self::PsiPlus => "psi+",
            Self::PsiMinus => "psi-",
        })
    }
}

impl std::str::FromStr for StateFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi+" | "phi-plus" => Self::PhiPlus,
            "phi-" | "phi-minus" => Self::PhiMinus,
            "xi" => Self::Xi,
            "eta" => Self::Eta,
            "psi+" | "psi-plus" => Self::PsiPlus,
            "psi-" | "psi-minus" => Self::PsiMinus,
            _ => return Err(domain(format!("unknown state family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec<T> {
    pub family: StateFamily,
    pub n: usize,
    pub l: T,
}

impl<T: Real> StateSpec<T> {
    pub fn new(family: StateFamily, n: usize, l: T) -> Self {
        Self { family, n, l }
    }
}

/// A realized state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState<T> {
    pub spec: StateSpec<T>,
    pub series: TrigSeries<T>,
    /// `|⟨s|s⟩ − 1|`
    pub norm_check: T,
    /// Largest matrix size used by the constituent levels.
    pub truncation: usize,
}

/// Builds a state with the default truncation policy.
pub fn build_state<T: Real>(spec: StateSpec<T>) -> Result<QuantumState<T>> {
    build_state_with(spec, &Truncation::default())
}

pub fn build_state_with<T: Real>(
    spec: StateSpec<T>,
    policy: &Truncation,
) -> Result<QuantumState<T>> {
    let (c, s) = spec.family.members(spec.n)?;
    let ce = c
        .map(|n| SpectralLevel::solve_with(MathieuClass::ce(n), n, spec.l, policy))
        .transpose()?;
    let se = s
        .map(|n| {
            MathieuClass::se(n)
                .and_then(|class| SpectralLevel::solve_with(class, n, spec.l, policy))
        })
        .transpose()?;
    let truncation = ce
        .iter()
        .chain(se.iter())
        .map(|lv| lv.truncation)
        .max()
        .unwrap_or(0);
    let series = match (ce, se) {
        (Some(c), None) => c.series(),
        (None, Some(s)) => s.series(),
        (Some(c), Some(s)) => {
            let w = T::FRAC_1_SQRT_2();
            let i = Complex::new(T::zero(), spec.family.branch::<T>());
            (c.series() + s.series().scale(i)) * w
        }
        (None, None) => unreachable!("every family has a member"),
    };
    let norm_check = (series.norm_sqr() - T::one()).abs();
    Ok(QuantumState {
        spec,
        series,
        norm_check,
        truncation,
    })
}

/// `⟨v⟩ = −2i⟨s|s′⟩`.
pub fn velocity_expect<T: Real>(state: &QuantumState<T>) -> T {
    let z = state.series.inner_product(&state.series.derivative())
        * Complex::new(T::zero(), -T::lit(2.0));
    let slack = T::tol(1e-12, 64.0) * z.re.abs().max(T::one());
    assert!(z.im.abs() < slack, "velocity expectation not real: {z}");
    z.re
}

/// `⟨v²⟩ = 4‖s′‖²`.
pub fn velocity_sq_expect<T: Real>(state: &QuantumState<T>) -> T {
    T::lit(4.0) * state.series.derivative().norm_sqr()
}

/// Checks that `state` is an eigenvector of every element of `subgroup` to 1e−10.
pub fn subgroup_invariance_check<T: Real>(
    state: &QuantumState<T>,
    subgroup: Subgroup,
) -> Invariance<T> {
    series_invariance(&state.series, subgroup, T::tol(1e-10, 256.0))
}

/// Jump of the velocity observables across a symmetry boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableJump<T> {
    pub n: usize,
    pub transition: (StateFamily, StateFamily),
    pub l_c: T,
    /// `⟨v⟩(to) − ⟨v⟩(from)`
    pub delta_v: T,
    /// `⟨v²⟩(to) − ⟨v²⟩(from)`
    pub delta_v2: T,
    /// `delta_v2 − delta_v²`
    pub fluct_radicand: T,
    pub fluct_defined: bool,
}

impl<T: Real> ObservableJump<T> {
    pub fn magnitude_v(&self) -> T {
        self.delta_v.abs()
    }

    pub fn magnitude_v2(&self) -> T {
        self.delta_v2.abs()
    }

    /// `√radicand` where defined.
    pub fn fluctuation(&self) -> Option<T> {
        self.fluct_defined.then(|| self.fluct_radicand.sqrt())
    }
}

fn check_transition(from: StateFamily, to: StateFamily) -> Result<()> {
    use StateFamily::*;
    match (from, to) {
        (PhiPlus | PhiMinus, Xi | Eta) | (Xi | Eta, PsiPlus | PsiMinus) => Ok(()),
        _ => Err(domain(format!(
            "no symmetry boundary between {from} and {to}"
        ))),
    }
}

/// Index of the `from`-side state for transition into `to` at level `n`.
///
/// On the well side the `η` partner of `ψ_n` is `se_{n+1}`.
fn from_index(from: StateFamily, to: StateFamily, n: usize) -> usize {
    match (from, to) {
        (StateFamily::Eta, StateFamily::PsiPlus | StateFamily::PsiMinus) => n + 1,
        _ => n,
    }
}

/// Jump evaluated exactly at `l_c`.
pub fn jump_at_boundary<T: Real>(
    n: usize,
    from: StateFamily,
    to: StateFamily,
    l_c: T,
) -> Result<ObservableJump<T>> {
    jump_with(n, from, to, l_c, T::zero(), &Truncation::default())
}

/// Jump between `from` at `l_c − dl` (clamped at 0) and `to` at `l_c + dl`.
pub fn jump_probe<T: Real>(
    n: usize,
    from: StateFamily,
    to: StateFamily,
    l_c: T,
    dl: T,
) -> Result<ObservableJump<T>> {
    jump_with(n, from, to, l_c, dl, &Truncation::default())
}

pub fn jump_with<T: Real>(
    n: usize,
    from: StateFamily,
    to: StateFamily,
    l_c: T,
    dl: T,
    policy: &Truncation,
) -> Result<ObservableJump<T>> {
    check_transition(from, to)?;
    if l_c.is_nan() || dl.is_nan() || l_c < T::zero() || dl < T::zero() {
        return Err(domain("boundary and probe offset must be nonnegative"));
    }
    let before = build_state_with(
        StateSpec::new(from, from_index(from, to, n), (l_c - dl).max(T::zero())),
        policy,
    )?;
    let after = build_state_with(StateSpec::new(to, n, l_c + dl), policy)?;
    let delta_v = velocity_expect(&after) - velocity_expect(&before);
    let delta_v2 = velocity_sq_expect(&after) - velocity_sq_expect(&before);
    let fluct_radicand = delta_v2 - delta_v * delta_v;
    Ok(ObservableJump {
        n,
        transition: (from, to),
        l_c,
        delta_v,
        delta_v2,
        fluct_radicand,
        fluct_defined: fluct_radicand >= T::zero(),
    })
}

/// `|s(φ)|²` on the given angles.
pub fn density<T: Real>(state: &QuantumState<T>, grid: &[T]) -> Vec<(T, T)> {
    grid.iter()
        .map(|&phi| (phi, state.series.eval(phi).norm_sqr()))
        .collect()
}

/// Uniform grid of `points` angles on `[0, 2π)`.
pub fn angle_grid<T: Real>(points: usize) -> Vec<T> {
    let h = T::TAU() / T::from_usize_lossy(points);
    (0..points).map(|i| h * T::from_usize_lossy(i)).collect()
}

/// Periodic trapezoid rule over `[0, 2π)` on a uniform grid.
pub fn periodic_trapezoid<T: Real>(values: &[T]) -> T {
    let h = T::TAU() / T::from_usize_lossy(values.len());
    values.iter().fold(T::zero(), |acc, &v| acc + v) * h
}

const EXTREMA_GRID: usize = 4096;

/// Local maxima of `|s|²`, refined by parabolic interpolation, ascending in `[0, 2π)`.
/// A density flat to within 1e−9 of its peak has none.
pub fn density_maxima<T: Real>(state: &QuantumState<T>) -> Vec<T> {
    extrema(state, true)
}

/// Local minima of `|s|²`, as for [`density_maxima`].
pub fn density_minima<T: Real>(state: &QuantumState<T>) -> Vec<T> {
    extrema(state, false)
}

fn extrema<T: Real>(state: &QuantumState<T>, maxima: bool) -> Vec<T> {
    let grid = angle_grid::<T>(EXTREMA_GRID);
    let sign = if maxima { T::one() } else { -T::one() };
    let d: Vec<T> = density(state, &grid)
        .into_iter()
        .map(|(_, v)| v * sign)
        .collect();
    let (lo, hi) = d
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if hi - lo <= T::tol(1e-9, 1024.0) * hi.abs().max(lo.abs()) {
        return Vec::new();
    }
    let m = d.len();
    let h = T::TAU() / T::from_usize_lossy(m);
    let half = T::lit(0.5);
    let mut out: Vec<T> = (0..m)
        .filter_map(|i| {
            let (prev, cur, next) = (d[(i + m - 1) % m], d[i], d[(i + 1) % m]);
            if !(cur > prev && cur >= next) {
                return None;
            }
            let curv = prev - cur - cur + next;
            let shift = if curv < T::zero() {
                half * (prev - next) / curv
            } else {
                T::zero()
            };
            Some(wrap_angle(grid[i] + shift * h))
        })
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    out
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle<T: Real>(phi: T) -> T {
    let tau = T::TAU();
    let r = phi - (phi / tau).floor() * tau;
    if r >= tau {
        r - tau
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn state(family: StateFamily, n: usize, l: f64) -> QuantumState<f64> {
        build_state(StateSpec::new(family, n, l)).unwrap()
    }

    #[test]
    fn plane_wave_at_zero_barrier() {
        let s = state(StateFamily::PhiPlus, 1, 0.0);
        let phi: f64 = 0.8;
        let expected = Complex::new(phi.cos(), phi.sin()) / (2.0 * PI).sqrt();
        assert!((s.series.eval(phi) - expected).norm() < 1e-14);
        assert!((velocity_expect(&s) - 2.0).abs() < 1e-14);
        assert!((velocity_expect(&state(StateFamily::PhiMinus, 1, 0.0)) + 2.0).abs() < 1e-14);
        assert!((velocity_sq_expect(&s) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn real_states_have_zero_velocity() {
        for family in [StateFamily::Xi, StateFamily::Eta] {
            assert_eq!(velocity_expect(&state(family, 3, 4.2)), 0.0);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(build_state(StateSpec::new(StateFamily::Eta, 0, 1.0_f64)).is_err());
        assert!(build_state(StateSpec::new(StateFamily::PhiPlus, 0, 1.0_f64)).is_err());
        assert!(build_state(StateSpec::new(StateFamily::PsiPlus, 0, 1.0_f64)).is_ok());
    }

    #[test]
    fn invalid_transition() {
        let err = jump_at_boundary(2, StateFamily::Xi, StateFamily::Eta, 0.2_f64).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn first_level_jump() {
        let j = jump_at_boundary(1, StateFamily::PhiPlus, StateFamily::Xi, 0.0_f64).unwrap();
        assert!((j.delta_v + 2.0).abs() < 1e-14);
        assert!(j.delta_v2.abs() < 1e-14);
        assert!(!j.fluct_defined);
        assert!(j.fluctuation().is_none());
    }

    #[test]
    fn probe_mode_agrees_with_exact_evaluation() {
        let exact = jump_at_boundary(3, StateFamily::PhiMinus, StateFamily::Eta, 1.14_f64).unwrap();
        let probe = jump_probe(3, StateFamily::PhiMinus, StateFamily::Eta, 1.14_f64, 1e-6).unwrap();
        assert!((exact.delta_v - probe.delta_v).abs() < 1e-5);
        assert!((exact.delta_v2 - probe.delta_v2).abs() < 1e-5);
    }

    #[test]
    fn extrema_of_first_harmonics() {
        let xi = state(StateFamily::Xi, 1, 0.0);
        let m = density_maxima(&xi);
        assert_eq!(m.len(), 2);
        assert!(m[0].abs() < 1e-9 && (m[1] - PI).abs() < 1e-9);
        let eta = state(StateFamily::Eta, 1, 0.0);
        let m = density_maxima(&eta);
        assert!((m[0] - PI / 2.0).abs() < 1e-9 && (m[1] - 1.5 * PI).abs() < 1e-9);
        assert!(density_maxima(&state(StateFamily::PhiPlus, 1, 0.0)).is_empty());
    }

    #[test]
    fn density_of_cosine() {
        let xi = state(StateFamily::Xi, 1, 0.0);
        for (phi, d) in density(&xi, &[0.0, 0.4, 2.0]) {
            assert!((d - phi.cos().powi(2) / PI).abs() < 1e-14);
        }
    }
}
