//! Maps physical rotors onto the dimensionless Mathieu barrier `l`.
//!
//! Hindered internal rotation `−ℏ²/(2I) d²/dφ² + (V₀/2)(1 − cos nφ)` becomes
//! the Mathieu form under `θ = nφ/2` with `l = 2IV₀/(n²ℏ²)` and
//! `E = n²ℏ²/(8I) · a + V₀/2`. The cosine changes sign on the way, which a
//! quarter-period shift `θ → θ + π/2` undoes.

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::symmetry::{classify_region, RegionTag, RegionThresholds};

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Unit system fixing ℏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Units {
    #[default]
    Si,
    /// ℏ = 1.
    Rescaled,
}

impl Units {
    pub fn hbar<T: Real>(self) -> T {
        match self {
            Self::Si => T::lit(HBAR),
            Self::Rescaled => T::one(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionRotor<T> {
    pub i1: T,
    pub i2: T,
    pub v0: T,
    pub n_fold: u32,
    pub units: Units,
}

impl<T: Real> TorsionRotor<T> {
    /// SI rotor. Requires positive inertias, `V₀ ≥ 0` and `n_fold ≥ 1`.
    pub fn new(i1: T, i2: T, v0: T, n_fold: u32) -> Result<Self> {
        let rotor = Self {
            i1,
            i2,
            v0,
            n_fold,
            units: Units::Si,
        };
        rotor.validate()?;
        Ok(rotor)
    }

    fn validate(&self) -> Result<()> {
        reduced_inertia(self.i1, self.i2)?;
        if !(self.v0 >= T::zero()) || !self.v0.is_finite() {
            return Err(domain("barrier V0 must be finite and nonnegative"));
        }
        if self.n_fold == 0 {
            return Err(domain("n_fold must be at least 1"));
        }
        Ok(())
    }

    pub fn with_v0(self, v0: T) -> Self {
        Self { v0, ..self }
    }
}

/// Parameters of the universal pendulum and the Mathieu barrier they give.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalParams<T> {
    pub omega_prime: T,
    pub u_amp: T,
    /// `8U/(ℏ²ω′)`
    pub l: T,
    /// Physical energy per unit of characteristic value, `ℏ²ω′/8`.
    pub energy_scale: T,
    /// Physical energy at characteristic value zero.
    pub energy_offset: T,
    /// Angle shift between the Mathieu frame and the physical frame.
    pub phase_shift: T,
}

impl<T: Real> UniversalParams<T> {
    /// Physical energy of characteristic value `a`.
    pub fn physical_energy(&self, a: T) -> T {
        self.energy_scale * a + self.energy_offset
    }
}

/// `I₁I₂/(I₁ + I₂)`.
pub fn reduced_inertia<T: Real>(i1: T, i2: T) -> Result<T> {
    if !(i1 > T::zero() && i2 > T::zero()) {
        return Err(domain("moments of inertia must be positive"));
    }
    Ok(i1 * i2 / (i1 + i2))
}

/// Mathieu parameters of a torsional rotor.
pub fn torsion_to_mathieu<T: Real>(rotor: &TorsionRotor<T>) -> Result<UniversalParams<T>> {
    rotor.validate()?;
    let inertia = reduced_inertia(rotor.i1, rotor.i2)?;
    let hbar = rotor.units.hbar::<T>();
    let n2 = T::lit(f64::from(rotor.n_fold).powi(2));
    let l = T::lit(2.0) * inertia * rotor.v0 / (n2 * hbar * hbar);
    let omega_prime = n2 / inertia;
    Ok(UniversalParams {
        omega_prime,
        u_amp: rotor.v0 / T::lit(4.0),
        l,
        energy_scale: n2 * hbar * hbar / (T::lit(8.0) * inertia),
        energy_offset: rotor.v0 / T::lit(2.0),
        phase_shift: T::FRAC_PI_2(),
    })
}

/// Universal parameters of the driven nonlinear oscillator:
/// `ω′ = 3πμ/(2mω₀²)`, `U = V₀√(I₀/(mω₀))`.
pub fn lorentz_to_universal<T: Real>(
    m: T,
    omega0: T,
    mu: T,
    v0: T,
    i0: T,
    units: Units,
) -> Result<UniversalParams<T>> {
    if !(m > T::zero() && omega0 > T::zero()) {
        return Err(domain("mass and frequency must be positive"));
    }
    if !(i0 >= T::zero()) {
        return Err(domain("action I0 must be nonnegative"));
    }
    if mu == T::zero() {
        return Err(Error::Degenerate(
            "mu = 0 gives omega' = 0 and an undefined barrier".into(),
        ));
    }
    let hbar = units.hbar::<T>();
    let omega_prime = T::lit(3.0) * T::PI() * mu / (T::lit(2.0) * m * omega0 * omega0);
    let u_amp = v0 * (i0 / (m * omega0)).sqrt();
    Ok(UniversalParams {
        omega_prime,
        u_amp,
        l: T::lit(8.0) * u_amp / (hbar * hbar * omega_prime),
        energy_scale: hbar * hbar * omega_prime / T::lit(8.0),
        energy_offset: T::zero(),
        phase_shift: T::zero(),
    })
}

/// One instant of a quasi-static barrier sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleSample<T> {
    pub t: T,
    pub l: T,
    /// `(level, region)` for each requested level.
    pub tags: Vec<(usize, RegionTag)>,
    /// `l(t) − l_c` changed sign since the previous sample.
    pub crossing: bool,
}

/// `l(t) = l_c + Δl cos ωt` with the region of every level at each instant.
pub fn modulation_schedule<T: Real>(
    l_c: T,
    delta_l: T,
    omega: T,
    t_grid: &[T],
    levels: &[usize],
    thresholds: &RegionThresholds<T>,
) -> Result<Vec<ScheduleSample<T>>> {
    if !(delta_l > T::zero()) {
        return Err(domain("modulation amplitude must be positive"));
    }
    if !(l_c - delta_l >= T::zero()) {
        return Err(domain("modulated barrier would become negative"));
    }
    let mut prev: Option<T> = None;
    t_grid
        .iter()
        .map(|&t| {
            let offset = delta_l * (omega * t).cos();
            let l = l_c + offset;
            let tags = levels
                .iter()
                .map(|&n| classify_region(n, l, thresholds).map(|tag| (n, tag)))
                .collect::<Result<_>>()?;
            let crossing = prev.is_some_and(|p| (p > T::zero()) != (offset > T::zero()));
            prev = Some(offset);
            Ok(ScheduleSample {
                t,
                l,
                tags,
                crossing,
            })
        })
        .collect()
}

/// Instants `ωt = π/2 + kπ` in `[0, t_max]` where `l(t)` passes `l_c`.
pub fn crossing_times<T: Real>(omega: T, t_max: T) -> Result<Vec<T>> {
    if !(omega > T::zero()) {
        return Err(domain("modulation frequency must be positive"));
    }
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let t = (T::FRAC_PI_2() + T::PI() * T::from_usize_lossy(k)) / omega;
        if t > t_max {
            return Ok(out);
        }
        out.push(t);
        k += 1;
    }
}

/// `l(t)` of a rotor whose barrier is pumped as `V₀ + ΔV cos Ωt`.
pub fn torsion_modulation<T: Real>(
    rotor: &TorsionRotor<T>,
    delta_v: T,
    big_omega: T,
    t_grid: &[T],
) -> Result<Vec<(T, T)>> {
    if !(rotor.v0 - delta_v.abs() >= T::zero()) {
        return Err(domain("pumped barrier would become negative"));
    }
    let base = torsion_to_mathieu(rotor)?.l;
    let per_joule = if rotor.v0 > T::zero() {
        base / rotor.v0
    } else {
        torsion_to_mathieu(&rotor.with_v0(T::one()))?.l
    };
    Ok(t_grid
        .iter()
        .map(|&t| (t, base + per_joule * delta_v * (big_omega * t).cos()))
        .collect())
}

/// Shipped presets as `(name, text)`.
pub const PRESETS: &[(&str, &str)] = &[("ethane", include_str!("../presets/ethane.preset"))];

/// Looks up a shipped preset by name.
pub fn preset<T: Real>(name: &str) -> Result<TorsionRotor<T>> {
    let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
        domain(format!(
            "unknown preset {name:?}; available: {}",
            names.join(", ")
        ))
    })?;
    parse_preset(text)
}

/// Parses `key = value` lines with keys `I1`, `I2`, `V0_J`, `n_fold`; `#` starts a comment.
pub fn parse_preset<T: Real>(text: &str) -> Result<TorsionRotor<T>> {
    let (mut i1, mut i2, mut v0, mut n_fold) = (None, None, None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| domain(format!("line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || {
            value
                .parse::<f64>()
                .map(T::lit)
                .map_err(|_| domain(format!("line {}: bad number {value:?}", lineno + 1)))
        };
        match key {
            "I1" => i1 = Some(number()?),
            "I2" => i2 = Some(number()?),
            "V0_J" => v0 = Some(number()?),
            "n_fold" => {
                n_fold =
                    Some(value.parse::<u32>().map_err(|_| {
                        domain(format!("line {}: bad integer {value:?}", lineno + 1))
                    })?)
            }
            _ => return Err(domain(format!("line {}: unknown key {key:?}", lineno + 1))),
        }
    }
    let missing = |k: &str| domain(format!("preset is missing {k}"));
    TorsionRotor::new(
        i1.ok_or_else(|| missing("I1"))?,
        i2.ok_or_else(|| missing("I2"))?,
        v0.ok_or_else(|| missing("V0_J"))?,
        n_fold.ok_or_else(|| missing("n_fold"))?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_inertia_values() {
        assert_eq!(reduced_inertia(1.0_f64, 1.0).unwrap(), 0.5);
        assert!((reduced_inertia(2.0_f64, 1e12).unwrap() - 2.0).abs() < 1e-10);
        assert!(reduced_inertia(0.0_f64, 1.0).is_err());
    }

    #[test]
    fn ethane_preset_parses() {
        let r: TorsionRotor<f64> = preset("ethane").unwrap();
        assert_eq!(r.n_fold, 3);
        assert_eq!(r.i1, 5.3e-47);
        assert_eq!(r.v0, 2.1e-20);
        let err = preset::<f64>("propane").unwrap_err().to_string();
        assert!(err.contains("ethane"));
    }

    #[test]
    fn preset_errors() {
        assert!(parse_preset::<f64>("I1 = 1\nI2 = 1\nV0_J = 1").is_err());
        assert!(parse_preset::<f64>("I1 = x").is_err());
        assert!(parse_preset::<f64>("mass = 1").is_err());
        assert!(parse_preset::<f64>("I1 = 1\nI2 = 1\nV0_J = 1\nn_fold = 0").is_err());
    }

    #[test]
    fn unit_oscillator() {
        let p = lorentz_to_universal(1.0_f64, 1.0, 1.0, 1.0, 1.0, Units::Rescaled).unwrap();
        assert!((p.omega_prime - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(p.u_amp, 1.0);
        assert!((p.l - 16.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-14);
        assert!(matches!(
            lorentz_to_universal(1.0_f64, 1.0, 0.0, 1.0, 1.0, Units::Rescaled),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn crossing_instants() {
        let t = crossing_times(2.0_f64, 4.0).unwrap();
        assert_eq!(t.len(), 3);
        assert!((t[0] - std::f64::consts::PI / 4.0).abs() < 1e-15);
    }
}
