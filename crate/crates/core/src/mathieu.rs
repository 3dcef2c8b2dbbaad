//! Periodic solutions of the Mathieu–Schrödinger equation
//!
//! ```text
//! ψ'' + (E − 2l cos 2φ) ψ = 0
//! ```
//!
//! Each parity family reduces to a symmetric tridiagonal matrix written in the
//! orthonormal basis `1/√(2π), cos kφ/√π, sin kφ/√π`. In that basis the
//! coupling between the constant and `cos 2φ` carries a factor √2, which makes
//! the matrix symmetric and lets the eigenvector be read off directly as the
//! unit-norm coefficient sequence.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::series::TrigSeries;
use crate::tridiag::SymTridiagonal;

/// Parity family of a periodic Mathieu function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MathieuClass {
    /// `ce_{2m}`: cosines of even harmonics, characteristic values `a_{2m}`.
    CeEven,
    /// `ce_{2m+1}`: cosines of odd harmonics, `a_{2m+1}`.
    CeOdd,
    /// `se_{2m+1}`: sines of odd harmonics, `b_{2m+1}`.
    SeOdd,
    /// `se_{2m+2}`: sines of even harmonics, `b_{2m+2}`.
    SeEven,
}

impl MathieuClass {
    pub const ALL: [MathieuClass; 4] = [Self::CeEven, Self::CeOdd, Self::SeOdd, Self::SeEven];

    /// The class holding `ce_n`.
    pub fn ce(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Self::CeEven
        } else {
            Self::CeOdd
        }
    }

    /// The class holding `se_n`; `n` must be at least 1.
    pub fn se(n: usize) -> Result<Self> {
        match n {
            0 => Err(domain("se_0 does not exist")),
            n if n % 2 == 1 => Ok(Self::SeOdd),
            _ => Ok(Self::SeEven),
        }
    }

    pub fn is_cosine(self) -> bool {
        matches!(self, Self::CeEven | Self::CeOdd)
    }

    /// Whether `n` is an admissible order for this class.
    pub fn admits(self, n: usize) -> bool {
        match self {
            Self::CeEven => n.is_multiple_of(2),
            Self::CeOdd | Self::SeOdd => n % 2 == 1,
            Self::SeEven => n >= 2 && n.is_multiple_of(2),
        }
    }

    /// Position of order `n` in the ascending spectrum of this class.
    pub fn index_of(self, n: usize) -> Result<usize> {
        if !self.admits(n) {
            return Err(domain(format!("order {n} is not valid for {self}")));
        }
        Ok(match self {
            Self::CeEven => n / 2,
            Self::CeOdd | Self::SeOdd => (n - 1) / 2,
            Self::SeEven => (n - 2) / 2,
        })
    }

    /// Harmonic carried by row `r` of the class matrix.
    pub fn harmonic(self, r: usize) -> usize {
        match self {
            Self::CeEven => 2 * r,
            Self::CeOdd | Self::SeOdd => 2 * r + 1,
            Self::SeEven => 2 * r + 2,
        }
    }

    /// Orders admitted by this class up to and including `n_max`.
    pub fn orders(self, n_max: usize) -> impl Iterator<Item = usize> {
        (0..=n_max).filter(move |&n| self.admits(n))
    }

    /// Truncated recurrence matrix with `size` rows at barrier `l`.
    pub fn matrix<T: Real>(self, l: T, size: usize) -> SymTridiagonal<T> {
        let diag: Vec<T> = (0..size)
            .map(|r| {
                let k = T::from_usize_lossy(self.harmonic(r));
                let mut d = k * k;
                if r == 0 {
                    match self {
                        Self::CeOdd => d += l,
                        Self::SeOdd => d -= l,
                        _ => {}
                    }
                }
                d
            })
            .collect();
        let mut off = vec![l; size.saturating_sub(1)];
        if self == Self::CeEven && size > 1 {
            off[0] = l * T::SQRT_2();
        }
        SymTridiagonal::new(diag, off)
    }
}

impl fmt::Display for MathieuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CeEven => "ce_even",
            Self::CeOdd => "ce_odd",
            Self::SeOdd => "se_odd",
            Self::SeEven => "se_even",
        })
    }
}

impl std::str::FromStr for MathieuClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| domain(format!("unknown Mathieu class {s:?}")))
    }
}

/// Adaptive truncation policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Lower bound on the starting matrix size.
    pub min_start: usize,
    /// Largest matrix size tried before giving up.
    pub cap: usize,
    /// Accept when doubling moves the eigenvalue by less than this.
    pub shift_tol: f64,
    /// Accept when the last coefficient is this small relative to the largest.
    pub tail_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            min_start: 32,
            cap: 512,
            shift_tol: 1e-12,
            tail_tol: 1e-14,
        }
    }
}

impl Truncation {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    /// Starting size `max(min_start, n + 8⌈√l⌉)`.
    pub fn start<T: Real>(&self, n: usize, l: T) -> usize {
        let root = l.sqrt().ceil().to_usize().unwrap_or(0);
        self.min_start.max(n + 8 * root).min(self.cap)
    }
}

/// One periodic Mathieu eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLevel<T> {
    pub class: MathieuClass,
    pub n: usize,
    pub l: T,
    /// Characteristic value `a_n(l)` or `b_n(l)`.
    pub value: T,
    /// Unit-norm coefficients; entry `r` multiplies harmonic `class.harmonic(r)`
    /// on the orthonormal basis (the constant term on `1/√(2π)`).
    pub coeffs: Vec<T>,
    /// Matrix size the solution was accepted at.
    pub truncation: usize,
}

impl<T: Real> SpectralLevel<T> {
    /// Solves `class`/`n` at barrier `l` with the default truncation policy.
    pub fn solve(class: MathieuClass, n: usize, l: T) -> Result<Self> {
        Self::solve_with(class, n, l, &Truncation::default())
    }

    pub fn solve_with(class: MathieuClass, n: usize, l: T, policy: &Truncation) -> Result<Self> {
        let index = class.index_of(n)?;
        if l < T::zero() || !l.is_finite() {
            return Err(domain(format!(
                "barrier l must be finite and nonnegative, got {l}"
            )));
        }
        let shift_tol = T::tol(policy.shift_tol, 64.0);
        let tail_tol = T::tol(policy.tail_tol, 16.0);

        let mut size = policy.start(n, l).max(index + 2);
        let mut previous: Option<T> = None;
        loop {
            let matrix = class.matrix(l, size);
            let value = matrix.eigenvalue(index);
            if let Some(prev) = previous {
                if (value - prev).abs() < shift_tol {
                    let coeffs = matrix.eigenvector(value);
                    if tail_ok(&coeffs, tail_tol) {
                        return Ok(Self::finish(class, n, l, value, coeffs, index, size));
                    }
                }
            }
            if size >= policy.cap {
                return Err(Error::Convergence {
                    context: format!("{class} n={n} l={l}"),
                    cap: policy.cap,
                    previous: previous.map_or(f64::NAN, Real::to_f64_lossy),
                    last: value.to_f64_lossy(),
                });
            }
            previous = Some(value);
            size = (size * 2).min(policy.cap);
        }
    }

    /// Solves at a fixed matrix size, with no convergence checks.
    pub fn solve_fixed(class: MathieuClass, n: usize, l: T, size: usize) -> Result<Self> {
        let index = class.index_of(n)?;
        if size <= index {
            return Err(domain(format!(
                "matrix size {size} too small for order {n}"
            )));
        }
        let matrix = class.matrix(l, size);
        let value = matrix.eigenvalue(index);
        let coeffs = matrix.eigenvector(value);
        Ok(Self::finish(class, n, l, value, coeffs, index, size))
    }

    fn finish(
        class: MathieuClass,
        n: usize,
        l: T,
        value: T,
        mut coeffs: Vec<T>,
        index: usize,
        size: usize,
    ) -> Self {
        // The row carrying harmonic n is the eigen index itself.
        if coeffs[index] < T::zero() {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        Self {
            class,
            n,
            l,
            value,
            coeffs,
            truncation: size,
        }
    }

    /// Coefficients in the unnormalized convention
    /// `Σ A_k cos kφ` (or `Σ B_k sin kφ`), i.e. with the √2 of the constant term undone.
    pub fn classical_coefficients(&self) -> Vec<(usize, T)> {
        let inv_sqrt_pi = T::one() / T::PI().sqrt();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, &c)| {
                let k = self.class.harmonic(r);
                let scale = if k == 0 {
                    inv_sqrt_pi * T::FRAC_1_SQRT_2()
                } else {
                    inv_sqrt_pi
                };
                (k, c * scale)
            })
            .collect()
    }

    /// Places the coefficients on the basis slots of a [`TrigSeries`].
    pub fn series(&self) -> TrigSeries<T> {
        let top = self.class.harmonic(self.coeffs.len().saturating_sub(1));
        let mut s = TrigSeries::zeros(top);
        for (r, &c) in self.coeffs.iter().enumerate() {
            let k = self.class.harmonic(r);
            if self.class.is_cosine() {
                s.set_cos(k, c.into());
            } else {
                s.set_sin(k, c.into());
            }
        }
        s
    }
}

fn tail_ok<T: Real>(coeffs: &[T], tol: T) -> bool {
    let largest = coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()));
    let last = coeffs.last().map_or(T::zero(), |c| c.abs());
    last <= tol * largest
}

/// Characteristic value `a_n(l)` / `b_n(l)` for the given class and order.
pub fn characteristic_value<T: Real>(class: MathieuClass, n: usize, l: T) -> Result<T> {
    characteristic_value_with(class, n, l, &Truncation::default())
}

/// Characteristic value alone: the truncation grows until doubling moves it
/// by less than the shift tolerance. No eigenvector is formed.
pub fn characteristic_value_with<T: Real>(
    class: MathieuClass,
    n: usize,
    l: T,
    policy: &Truncation,
) -> Result<T> {
    let index = class.index_of(n)?;
    if l < T::zero() || !l.is_finite() {
        return Err(domain(format!(
            "barrier l must be finite and nonnegative, got {l}"
        )));
    }
    let shift_tol = T::tol(policy.shift_tol, 64.0);
    let mut size = policy.start(n, l).max(index + 2);
    let mut earlier: Option<T> = None;
    let mut previous = class.matrix(l, size).eigenvalue(index);
    loop {
        if size >= policy.cap {
            return Err(Error::Convergence {
                context: format!("{class} n={n} l={l}"),
                cap: policy.cap,
                previous: earlier.map_or(f64::NAN, Real::to_f64_lossy),
                last: previous.to_f64_lossy(),
            });
        }
        size = (size * 2).min(policy.cap);
        let value = class.matrix(l, size).eigenvalue(index);
        if (value - previous).abs() < shift_tol {
            return Ok(value);
        }
        earlier = Some(previous);
        previous = value;
    }
}

/// Unit-norm, sign-fixed coefficient sequence of the level.
pub fn fourier_coefficients<T: Real>(class: MathieuClass, n: usize, l: T) -> Result<Vec<T>> {
    SpectralLevel::solve(class, n, l).map(|s| s.coeffs)
}

/// Realizes a level as a [`TrigSeries`].
pub fn build_series<T: Real>(level: &SpectralLevel<T>) -> TrigSeries<T> {
    level.series()
}

/// `a_n(l)`: characteristic value of `ce_n`.
pub fn ce_value<T: Real>(n: usize, l: T) -> Result<T> {
    characteristic_value(MathieuClass::ce(n), n, l)
}

/// `b_n(l)`: characteristic value of `se_n`, `n ≥ 1`.
pub fn se_value<T: Real>(n: usize, l: T) -> Result<T> {
    characteristic_value(MathieuClass::se(n)?, n, l)
}

/// Solved `ce_n` level.
pub fn ce<T: Real>(n: usize, l: T) -> Result<SpectralLevel<T>> {
    SpectralLevel::solve(MathieuClass::ce(n), n, l)
}

/// Solved `se_n` level.
pub fn se<T: Real>(n: usize, l: T) -> Result<SpectralLevel<T>> {
    SpectralLevel::solve(MathieuClass::se(n)?, n, l)
}
