//! Classical universal pendulum `H = (ω′/2)ΔI² + U cos φ`: complete elliptic
//! integrals, Jacobi elliptic functions, closed-form trajectories and
//! equilibria.

use std::fmt;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Arithmetic–geometric mean and the number of iterations it took.
pub fn agm<T: Real>(a: T, b: T) -> (T, usize) {
    let (mut a, mut b) = (a, b);
    let tol = T::epsilon() * T::lit(4.0);
    let mut iterations = 0;
    while (a - b).abs() > tol * a.abs() && iterations < 64 {
        let next = (a + b) * T::lit(0.5);
        b = (a * b).sqrt();
        a = next;
        iterations += 1;
    }
    (a, iterations)
}

/// Complete elliptic integral of the first kind `K(k)`, `0 ≤ k < 1`.
pub fn elliptic_k<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero() && k < T::one()) {
        return Err(domain(format!("elliptic K needs 0 ≤ k < 1, got {k}")));
    }
    let kp = ((T::one() - k) * (T::one() + k)).sqrt();
    Ok(T::FRAC_PI_2() / agm(T::one(), kp).0)
}

/// `(sn, cn, dn)` of argument `u` and modulus `k ∈ [0, 1]`, by descending Landen transformation.
pub fn jacobi_sn_cn_dn<T: Real>(u: T, k: T) -> Result<(T, T, T)> {
    if !(k >= T::zero() && k <= T::one()) {
        return Err(domain(format!("Jacobi functions need 0 ≤ k ≤ 1, got {k}")));
    }
    if k == T::zero() {
        return Ok((u.sin(), u.cos(), T::one()));
    }
    if k == T::one() {
        let sech = T::one() / u.cosh();
        return Ok((u.tanh(), sech, sech));
    }
    let half = T::lit(0.5);
    let mut a = vec![T::one()];
    let mut c = vec![k];
    let mut b = ((T::one() - k) * (T::one() + k)).sqrt();
    while c.last().expect("nonempty").abs() > T::epsilon() * a[a.len() - 1] && a.len() < 32 {
        let an = a[a.len() - 1];
        a.push((an + b) * half);
        c.push((an - b) * half);
        b = (an * b).sqrt();
    }
    let steps = a.len() - 1;
    let mut phi = T::lit(2f64.powi(steps as i32)) * a[steps] * u;
    for n in (1..=steps).rev() {
        phi = (phi + (c[n] / a[n] * phi.sin()).asin()) * half;
    }
    let (sn, cn) = phi.sin_cos();
    // dn² = k′² + k² cn², free of cancellation near sn = 1
    let dn = ((T::one() - k) * (T::one() + k) + k * k * cn * cn).sqrt();
    Ok((sn, cn, dn))
}

/// `(cn, dn)`.
pub fn jacobi_cn_dn<T: Real>(u: T, k: T) -> Result<(T, T)> {
    jacobi_sn_cn_dn(u, k).map(|(_, cn, dn)| (cn, dn))
}

/// How the argument (and amplitude) of the closed-form trajectory is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ArgConvention {
    /// Amplitude `√((E+U)ω′)`, argument `ω′√((E+U)ω′)·t`.
    #[default]
    AsPrinted,
    /// Amplitude `√((E+U)ω′)`, argument `√((E+U)ω′)·t`.
    Dimensional,
    /// Exact solution of Hamilton's equations: amplitude `√(2(E+U)/ω′)`,
    /// argument `√((E+U)ω′/2)·t` for rotation and `√(ω′U)·t` for libration.
    Consistent,
}

impl fmt::Display for ArgConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AsPrinted => "as-printed",
            Self::Dimensional => "dimensional",
            Self::Consistent => "consistent",
        })
    }
}

impl std::str::FromStr for ArgConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(Self::AsPrinted),
            "dimensional" => Ok(Self::Dimensional),
            "consistent" => Ok(Self::Consistent),
            _ => Err(domain(format!("unknown argument convention {s:?}"))),
        }
    }
}

/// Kind of closed orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Motion {
    /// `E > U`, open trajectory, `dn` form with modulus `k`.
    Rotation,
    /// `E < U`, closed trajectory, `cn` form with modulus `1/k`.
    Libration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams<T> {
    pub omega_prime: T,
    pub u_amp: T,
    pub energy: T,
}

impl<T: Real> ClassicalParams<T> {
    /// Requires `ω′ > 0`, `U > 0` and `E > −U`.
    pub fn new(omega_prime: T, u_amp: T, energy: T) -> Result<Self> {
        if omega_prime <= T::zero() || !omega_prime.is_finite() {
            return Err(domain("omega' must be positive"));
        }
        if u_amp <= T::zero() || !u_amp.is_finite() {
            return Err(domain("barrier amplitude U must be positive"));
        }
        if energy <= -u_amp || !energy.is_finite() {
            return Err(domain("energy must exceed −U"));
        }
        Ok(Self {
            omega_prime,
            u_amp,
            energy,
        })
    }

    /// `k = √(2U/(E+U))`.
    pub fn modulus(&self) -> T {
        (T::lit(2.0) * self.u_amp / (self.energy + self.u_amp)).sqrt()
    }

    pub fn motion(&self) -> Result<Motion> {
        if self.energy > self.u_amp {
            Ok(Motion::Rotation)
        } else if self.energy < self.u_amp {
            Ok(Motion::Libration)
        } else {
            Err(Error::Separatrix)
        }
    }

    /// Modulus passed to the elliptic function, `k` or `1/k`.
    pub fn elliptic_modulus(&self) -> Result<T> {
        let k = self.modulus();
        Ok(match self.motion()? {
            Motion::Rotation => k,
            Motion::Libration => T::one() / k,
        })
    }

    /// `(amplitude, rate)` with `ΔI = amplitude · f(rate · t)`.
    pub fn scales(&self, conv: ArgConvention) -> Result<(T, T)> {
        let motion = self.motion()?;
        Ok(self.scales_for(motion, conv))
    }

    fn scales_for(&self, motion: Motion, conv: ArgConvention) -> (T, T) {
        let (w, s) = (self.omega_prime, self.energy + self.u_amp);
        let printed = (s * w).sqrt();
        match conv {
            ArgConvention::AsPrinted => (printed, w * printed),
            ArgConvention::Dimensional => (printed, printed),
            ArgConvention::Consistent => {
                let two = T::lit(2.0);
                let rate = match motion {
                    Motion::Rotation => (s * w / two).sqrt(),
                    Motion::Libration => (w * self.u_amp).sqrt(),
                };
                ((two * s / w).sqrt(), rate)
            }
        }
    }

    /// Period of `ΔI(t)`: `2K(k)/rate` for rotation, `4K(1/k)/rate` for libration.
    pub fn period(&self, conv: ArgConvention) -> Result<T> {
        let motion = self.motion()?;
        let (_, rate) = self.scales_for(motion, conv);
        let big_k = elliptic_k(self.elliptic_modulus()?)?;
        Ok(match motion {
            Motion::Rotation => T::lit(2.0) * big_k / rate,
            Motion::Libration => T::lit(4.0) * big_k / rate,
        })
    }

    /// `H(ΔI, φ)`.
    pub fn hamiltonian(&self, delta_i: T, phi: T) -> T {
        T::lit(0.5) * self.omega_prime * delta_i * delta_i + self.u_amp * phi.cos()
    }
}

/// `ΔI(t)` on the given times.
pub fn trajectory<T: Real>(
    params: &ClassicalParams<T>,
    t_grid: &[T],
    conv: ArgConvention,
) -> Result<Vec<T>> {
    let motion = params.motion()?;
    let (amp, rate) = params.scales_for(motion, conv);
    let m = params.elliptic_modulus()?;
    t_grid
        .iter()
        .map(|&t| {
            let (cn, dn) = jacobi_cn_dn(rate * t, m)?;
            Ok(amp
                * match motion {
                    Motion::Rotation => dn,
                    Motion::Libration => cn,
                })
        })
        .collect()
}

/// `ΔI(t)` exactly on the separatrix: `amplitude · sech(rate · t)`.
pub fn separatrix_trajectory<T: Real>(
    params: &ClassicalParams<T>,
    t_grid: &[T],
    conv: ArgConvention,
) -> Vec<T> {
    let (amp, rate) = params.scales_for(Motion::Libration, conv);
    t_grid.iter().map(|&t| amp / (rate * t).cosh()).collect()
}

/// `(φ(t), ΔI(t))` of the exact solution through `(π, ΔI_max)` at `t = 0`.
pub fn phase_point<T: Real>(params: &ClassicalParams<T>, t: T) -> Result<(T, T)> {
    let motion = params.motion()?;
    let (amp, rate) = params.scales_for(motion, ArgConvention::Consistent);
    let m = params.elliptic_modulus()?;
    let (sn, cn, dn) = jacobi_sn_cn_dn(rate * t, m)?;
    let two = T::lit(2.0);
    // θ = φ − π measured from the potential minimum.
    let (theta, delta_i) = match motion {
        Motion::Rotation => (two * sn.atan2(cn), amp * dn),
        Motion::Libration => (two * (m * sn).atan2(dn), amp * cn),
    };
    Ok((theta + T::PI(), delta_i))
}

/// `ω = π / ln(32/(1 − E))` with the separatrix at `E = 1`, for `−31 < E < 1`
/// where the logarithm is positive.
pub fn separatrix_frequency<T: Real>(energy: T) -> Result<T> {
    if !(energy > T::lit(-31.0) && energy < T::one()) {
        return Err(domain(format!(
            "separatrix frequency needs −31 < E < 1, got {energy}"
        )));
    }
    Ok(T::PI() / (T::lit(32.0) / (T::one() - energy)).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Elliptic,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint<T> {
    pub phi_s: T,
    pub kind: EquilibriumKind,
}

/// Equilibria of `U cos φ` in `[0, 2π)`: `φ = 0` and `φ = π`.
pub fn classify_equilibria<T: Real>(u_amp: T) -> Result<Vec<EquilibriumPoint<T>>> {
    if u_amp == T::zero() || !u_amp.is_finite() {
        return Err(Error::Degenerate(
            "zero barrier has no isolated equilibria".into(),
        ));
    }
    Ok([T::zero(), T::PI()]
        .into_iter()
        .map(|phi_s| {
            // Curvature of the potential U cos φ.
            let curvature = -u_amp * phi_s.cos();
            let kind = if curvature < T::zero() {
                EquilibriumKind::Hyperbolic
            } else {
                EquilibriumKind::Elliptic
            };
            EquilibriumPoint { phi_s, kind }
        })
        .collect())
}

/// Eigenvalues `±√(ω′ U cos φ_s)` of the flow linearized at `φ_s`.
pub fn linearized_exponents<T: Real>(omega_prime: T, u_amp: T, phi_s: T) -> [Complex<T>; 2] {
    let r = Complex::new(omega_prime * u_amp * phi_s.cos(), T::zero()).sqrt();
    [r, -r]
}
