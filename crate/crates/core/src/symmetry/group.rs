//! Klein four-group of angle maps acting on trigonometric series.

use std::fmt;

use num_complex::Complex;

use crate::scalar::Real;
use crate::series::TrigSeries;

/// Element of the Klein four-group acting on the angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// φ → φ
    E,
    /// φ → −φ
    A,
    /// φ → π − φ
    B,
    /// φ → π + φ
    C,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [Self::E, Self::A, Self::B, Self::C];

    /// Group product `self ∘ other`.
    pub fn compose(self, other: Self) -> Self {
        use GroupElement::*;
        match (self, other) {
            (E, g) | (g, E) => g,
            (x, y) if x == y => E,
            (A, B) | (B, A) => C,
            (B, C) | (C, B) => A,
            (C, A) | (A, C) => B,
            _ => unreachable!(),
        }
    }

    /// Image of an angle.
    pub fn map_angle<T: Real>(self, phi: T) -> T {
        match self {
            Self::E => phi,
            Self::A => -phi,
            Self::B => T::PI() - phi,
            Self::C => T::PI() + phi,
        }
    }

    /// Signs picked up by `cos kφ` and `sin kφ` under the substitution.
    pub fn harmonic_signs(self, k: usize) -> (i8, i8) {
        let alt: i8 = if k.is_multiple_of(2) { 1 } else { -1 };
        match self {
            Self::E => (1, 1),
            Self::A => (1, -1),
            // cos k(π−φ) = (−1)^k cos kφ, sin k(π−φ) = −(−1)^k sin kφ
            Self::B => (alt, -alt),
            Self::C => (alt, alt),
        }
    }

    /// `(g f)(φ) = f(g φ)`, exactly in coefficient space.
    pub fn apply<T: Real>(self, s: &TrigSeries<T>) -> TrigSeries<T> {
        let sign = |x: i8| if x < 0 { -T::one() } else { T::one() };
        s.map_slots(
            |k, c| c * sign(self.harmonic_signs(k).0),
            |k, c| c * sign(self.harmonic_signs(k).1),
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::E => "e",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
        })
    }
}

/// Applies a group element to a series.
pub fn apply_group_element<T: Real>(s: &TrigSeries<T>, g: GroupElement) -> TrigSeries<T> {
    g.apply(s)
}

/// The three two-element subgroups labelling the symmetry regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    /// `{e, a}`: non-degenerate region, real ce/se states.
    G0,
    /// `{e, b}`: deep-well doublets `(ce_n ± i se_{n+1})/√2`.
    GPlus,
    /// `{e, c}`: rotor doublets `(ce_n ± i se_n)/√2`.
    GMinus,
}

impl Subgroup {
    pub fn elements(self) -> [GroupElement; 2] {
        match self {
            Self::G0 => [GroupElement::E, GroupElement::A],
            Self::GPlus => [GroupElement::E, GroupElement::B],
            Self::GMinus => [GroupElement::E, GroupElement::C],
        }
    }
}

/// Outcome of an invariance test: the phase each element multiplies the state by.
#[derive(Debug, Clone, PartialEq)]
pub struct Invariance<T> {
    pub invariant: bool,
    /// `(element, phase, residual)` with `residual = ‖g s − phase·s‖`.
    pub phases: Vec<(GroupElement, Complex<T>, T)>,
}

/// Checks that every element of `subgroup` maps `s` to a unimodular multiple of itself.
pub fn series_invariance<T: Real>(s: &TrigSeries<T>, subgroup: Subgroup, tol: T) -> Invariance<T> {
    let norm_sqr = s.norm_sqr();
    let phases: Vec<_> = subgroup
        .elements()
        .into_iter()
        .map(|g| {
            let image = g.apply(s);
            let phase = if norm_sqr > T::zero() {
                s.inner_product(&image) / norm_sqr
            } else {
                Complex::new(T::one(), T::zero())
            };
            let residual = (image - s.scale(phase)).norm();
            (g, phase, residual)
        })
        .collect();
    let invariant = phases
        .iter()
        .all(|(_, phase, residual)| *residual < tol && (phase.norm() - T::one()).abs() < tol);
    Invariance { invariant, phases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupElement::*;

    #[test]
    fn multiplication_table() {
        for g in GroupElement::ALL {
            assert_eq!(g.compose(g), E);
            assert_eq!(g.compose(E), g);
        }
        assert_eq!(A.compose(B), C);
        assert_eq!(B.compose(C), A);
        assert_eq!(C.compose(A), B);
    }

    #[test]
    fn angle_maps_agree_with_composition() {
        let phi = 0.731_f64;
        for g in GroupElement::ALL {
            for h in GroupElement::ALL {
                let lhs = g.map_angle(h.map_angle(phi));
                let rhs = g.compose(h).map_angle(phi);
                let d = (lhs - rhs).rem_euclid(2.0 * std::f64::consts::PI);
                assert!(d.min(2.0 * std::f64::consts::PI - d) < 1e-12, "{g}{h}");
            }
        }
    }

    #[test]
    fn parity_of_single_harmonics() {
        let cos1 = TrigSeries::<f64>::cos_basis(1);
        let sin1 = TrigSeries::<f64>::sin_basis(1);
        let cos2 = TrigSeries::<f64>::cos_basis(2);
        assert_eq!(A.apply(&cos1), cos1);
        assert_eq!(A.apply(&sin1), -sin1.clone());
        assert_eq!(B.apply(&cos2), cos2);
        assert_eq!(B.apply(&cos1), -cos1.clone());
        // sin(π − φ) = sin φ
        assert_eq!(B.apply(&sin1), sin1);
    }

    #[test]
    fn coefficient_action_matches_pointwise_substitution() {
        let s = TrigSeries::from_real(0.3, &[0.2, -0.5, 0.1], &[0.7, 0.05, -0.4]);
        for g in GroupElement::ALL {
            let image = g.apply(&s);
            for i in 0..16 {
                let phi = 0.4 * i as f64;
                let direct = s.eval(g.map_angle(phi));
                assert!((image.eval(phi) - direct).norm() < 1e-13, "{g} at {phi}");
            }
        }
    }
}
