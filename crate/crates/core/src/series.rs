//! Truncated trigonometric series on `[0, 2π)` in the orthonormal basis
//! `1/√(2π), cos kφ/√π, sin kφ/√π`.
//!
//! Coefficients are complex so that superpositions such as `(ce ± i se)/√2`
//! live in the same type. Every operator here acts exactly in coefficient
//! space; no quadrature is involved.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

/// Trigonometric series with harmonics `1..=harmonics()`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries<T> {
    c0: Complex<T>,
    /// `cos[k-1]` multiplies `cos kφ/√π`.
    cos: Vec<Complex<T>>,
    /// `sin[k-1]` multiplies `sin kφ/√π`.
    sin: Vec<Complex<T>>,
}

impl<T: Real> TrigSeries<T> {
    pub fn zeros(harmonics: usize) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self {
            c0: z,
            cos: vec![z; harmonics],
            sin: vec![z; harmonics],
        }
    }

    /// The normalized constant `1/√(2π)`.
    pub fn constant() -> Self {
        let mut s = Self::zeros(0);
        s.c0 = T::one().into();
        s
    }

    /// `cos kφ/√π` (or the constant basis element for `k = 0`).
    pub fn cos_basis(k: usize) -> Self {
        let mut s = Self::zeros(k);
        s.set_cos(k, T::one().into());
        s
    }

    /// `sin kφ/√π`, `k ≥ 1`.
    pub fn sin_basis(k: usize) -> Self {
        let mut s = Self::zeros(k);
        s.set_sin(k, T::one().into());
        s
    }

    /// Builds a series from real coefficient slices (`cos[k-1]`, `sin[k-1]`).
    pub fn from_real(c0: T, cos: &[T], sin: &[T]) -> Self {
        let h = cos.len().max(sin.len());
        let mut s = Self::zeros(h);
        s.c0 = c0.into();
        for (k, &c) in cos.iter().enumerate() {
            s.cos[k] = c.into();
        }
        for (k, &c) in sin.iter().enumerate() {
            s.sin[k] = c.into();
        }
        s
    }

    /// Highest harmonic stored.
    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    pub fn c0(&self) -> Complex<T> {
        self.c0
    }

    /// Coefficient of `cos kφ/√π`; `k = 0` returns the constant slot.
    pub fn cos_coeff(&self, k: usize) -> Complex<T> {
        if k == 0 {
            self.c0
        } else {
            self.cos.get(k - 1).copied().unwrap_or_else(zero)
        }
    }

    /// Coefficient of `sin kφ/√π`; zero for `k = 0`.
    pub fn sin_coeff(&self, k: usize) -> Complex<T> {
        if k == 0 {
            zero()
        } else {
            self.sin.get(k - 1).copied().unwrap_or_else(zero)
        }
    }

    pub fn set_cos(&mut self, k: usize, v: Complex<T>) {
        if k == 0 {
            self.c0 = v;
        } else {
            self.grow(k);
            self.cos[k - 1] = v;
        }
    }

    pub fn set_sin(&mut self, k: usize, v: Complex<T>) {
        assert!(k > 0, "sin 0φ is not a basis element");
        self.grow(k);
        self.sin[k - 1] = v;
    }

    fn add_cos(&mut self, k: usize, v: Complex<T>) {
        let cur = self.cos_coeff(k);
        self.set_cos(k, cur + v);
    }

    fn add_sin(&mut self, k: usize, v: Complex<T>) {
        let cur = self.sin_coeff(k);
        self.set_sin(k, cur + v);
    }

    fn grow(&mut self, h: usize) {
        if h > self.cos.len() {
            self.cos.resize(h, zero());
            self.sin.resize(h, zero());
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, mut f: impl FnMut(Complex<T>) -> Complex<T>) -> Self {
        Self {
            c0: f(self.c0),
            cos: self.cos.iter().map(|&c| f(c)).collect(),
            sin: self.sin.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Maps cosine and sine slots separately, passing the harmonic index.
    pub fn map_slots(
        &self,
        mut on_cos: impl FnMut(usize, Complex<T>) -> Complex<T>,
        mut on_sin: impl FnMut(usize, Complex<T>) -> Complex<T>,
    ) -> Self {
        Self {
            c0: on_cos(0, self.c0),
            cos: self
                .cos
                .iter()
                .enumerate()
                .map(|(i, &c)| on_cos(i + 1, c))
                .collect(),
            sin: self
                .sin
                .iter()
                .enumerate()
                .map(|(i, &c)| on_sin(i + 1, c))
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        self.map(|c| c * factor)
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// Pointwise value at `phi`.
    pub fn eval(&self, phi: T) -> Complex<T> {
        let inv_sqrt_pi = T::one() / T::PI().sqrt();
        let mut acc = self.c0 * (inv_sqrt_pi * T::FRAC_1_SQRT_2());
        for k in 1..=self.harmonics() {
            let (s, c) = (T::from_usize_lossy(k) * phi).sin_cos();
            acc += (self.cos[k - 1] * c + self.sin[k - 1] * s) * inv_sqrt_pi;
        }
        acc
    }

    /// `d/dφ`: `cos kφ → −k sin kφ`, `sin kφ → k cos kφ`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zeros(self.harmonics());
        for k in 1..=self.harmonics() {
            let kk = T::from_usize_lossy(k);
            out.cos[k - 1] = self.sin[k - 1] * kk;
            out.sin[k - 1] = -self.cos[k - 1] * kk;
        }
        out
    }

    /// Product with `cos φ`. The result carries one more harmonic.
    pub fn multiply_by_cos(&self) -> Self {
        let half = T::lit(0.5);
        let r2 = T::FRAC_1_SQRT_2();
        let mut out = Self::zeros(self.harmonics() + 1);
        out.add_cos(1, self.c0 * r2);
        for k in 1..=self.harmonics() {
            let c = self.cos[k - 1];
            let s = self.sin[k - 1];
            out.add_cos(k + 1, c * half);
            out.add_sin(k + 1, s * half);
            if k == 1 {
                out.add_cos(0, c * r2);
            } else {
                out.add_cos(k - 1, c * half);
                out.add_sin(k - 1, s * half);
            }
        }
        out
    }

    /// Product with `sin φ`. The result carries one more harmonic.
    pub fn multiply_by_sin(&self) -> Self {
        let half = T::lit(0.5);
        let r2 = T::FRAC_1_SQRT_2();
        let mut out = Self::zeros(self.harmonics() + 1);
        out.add_sin(1, self.c0 * r2);
        for k in 1..=self.harmonics() {
            let c = self.cos[k - 1];
            let s = self.sin[k - 1];
            // cos kφ sin φ = ½[sin(k+1)φ − sin(k−1)φ]
            out.add_sin(k + 1, c * half);
            // sin kφ sin φ = ½[cos(k−1)φ − cos(k+1)φ]
            out.add_cos(k + 1, -s * half);
            if k == 1 {
                out.add_cos(0, s * r2);
            } else {
                out.add_sin(k - 1, -c * half);
                out.add_cos(k - 1, s * half);
            }
        }
        out
    }

    /// Product with `cos 2φ`, as `2 cos²φ − 1`.
    pub fn multiply_by_cos2(&self) -> Self {
        let two = T::lit(2.0);
        self.multiply_by_cos().multiply_by_cos().scale(two.into()) - self.clone()
    }

    /// `⟨self|other⟩ = ∫ self* other dφ`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Complex<T> {
        let mut acc = self.c0.conj() * other.c0;
        for k in 1..=self.harmonics().min(other.harmonics()) {
            acc = acc
                + self.cos[k - 1].conj() * other.cos[k - 1]
                + self.sin[k - 1].conj() * other.sin[k - 1];
        }
        acc
    }

    pub fn norm_sqr(&self) -> T {
        self.inner_product(self).re
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|op(self)⟩`.
    pub fn expect(&self, op: impl FnOnce(&Self) -> Self) -> Complex<T> {
        self.inner_product(&op(self))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> T {
        std::iter::once(&self.c0)
            .chain(&self.cos)
            .chain(&self.sin)
            .fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// Drops trailing harmonics whose coefficients are exactly zero.
    pub fn trimmed(&self) -> Self {
        let mut h = self.harmonics();
        while h > 0 && self.cos[h - 1] == zero() && self.sin[h - 1] == zero() {
            h -= 1;
        }
        Self {
            c0: self.c0,
            cos: self.cos[..h].to_vec(),
            sin: self.sin[..h].to_vec(),
        }
    }
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn zip_with<T: Real>(
    a: &TrigSeries<T>,
    b: &TrigSeries<T>,
    f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
) -> TrigSeries<T> {
    let h = a.harmonics().max(b.harmonics());
    let mut out = TrigSeries::zeros(h);
    out.c0 = f(a.c0, b.c0);
    for k in 1..=h {
        out.cos[k - 1] = f(a.cos_coeff(k), b.cos_coeff(k));
        out.sin[k - 1] = f(a.sin_coeff(k), b.sin_coeff(k));
    }
    out
}

impl<T: Real> Add for TrigSeries<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        zip_with(&self, &rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for TrigSeries<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        zip_with(&self, &rhs, |a, b| a - b)
    }
}

impl<T: Real> Neg for TrigSeries<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c)
    }
}

impl<T: Real> Mul<Complex<T>> for TrigSeries<T> {
    type Output = Self;
    fn mul(self, rhs: Complex<T>) -> Self {
        self.scale(rhs)
    }
}

impl<T: Real> Mul<T> for TrigSeries<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn basis_is_orthonormal() {
        let basis: Vec<TrigSeries<f64>> = std::iter::once(TrigSeries::constant())
            .chain((1..5).map(TrigSeries::cos_basis))
            .chain((1..5).map(TrigSeries::sin_basis))
            .collect();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(a.inner_product(b), c(expected));
            }
        }
    }

    #[test]
    fn eval_basis_elements() {
        let s = TrigSeries::<f64>::cos_basis(1);
        assert!((s.eval(0.0).re - 1.0 / PI.sqrt()).abs() < 1e-15);
        let s = TrigSeries::<f64>::sin_basis(1);
        assert!((s.eval(PI / 2.0).re - 1.0 / PI.sqrt()).abs() < 1e-15);
        let s = TrigSeries::<f64>::constant();
        assert!((s.eval(1.3).re - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn derivative_of_cos_is_minus_sin() {
        let d = TrigSeries::<f64>::cos_basis(1).derivative();
        assert_eq!(d.sin_coeff(1), c(-1.0));
        assert_eq!(d.cos_coeff(1), c(0.0));
        assert_eq!(TrigSeries::<f64>::constant().derivative().norm(), 0.0);
        let s = TrigSeries::<f64>::cos_basis(3);
        let dd = s.derivative().derivative();
        assert_eq!(dd, s.scale(c(-9.0)));
    }

    #[test]
    fn products_reproduce_trig_identities() {
        // cos φ · 1/√(2π) = cos φ/√π · 1/√2
        let p = TrigSeries::<f64>::constant().multiply_by_cos();
        assert!(close(
            p.cos_coeff(1),
            c(std::f64::consts::FRAC_1_SQRT_2),
            1e-15
        ));
        assert_eq!(p.sin_coeff(1), c(0.0));
        // sin φ · cos φ = ½ sin 2φ
        let p = TrigSeries::<f64>::sin_basis(1).multiply_by_cos();
        assert!(close(p.sin_coeff(2), c(0.5), 1e-15));
        assert!(close(p.c0(), c(0.0), 1e-15));
        // sin φ · sin φ = ½ − ½ cos 2φ
        let p = TrigSeries::<f64>::sin_basis(1).multiply_by_sin();
        assert!(close(p.cos_coeff(2), c(-0.5), 1e-15));
        assert!(close(p.c0(), c(std::f64::consts::FRAC_1_SQRT_2), 1e-15));
    }

    #[test]
    fn cos_fourth_moment() {
        let s = TrigSeries::<f64>::cos_basis(1);
        let v = s.expect(|x| x.multiply_by_cos().multiply_by_cos());
        assert!(close(v, c(0.75), 1e-15));
    }

    #[test]
    fn cos2_shift() {
        let s = TrigSeries::<f64>::cos_basis(1);
        let p = s.multiply_by_cos2();
        assert!(close(p.cos_coeff(1), c(0.5), 1e-15));
        assert!(close(p.cos_coeff(3), c(0.5), 1e-15));
        let s = TrigSeries::<f64>::sin_basis(1);
        let p = s.multiply_by_cos2();
        assert!(close(p.sin_coeff(1), c(-0.5), 1e-15));
        assert!(close(p.sin_coeff(3), c(0.5), 1e-15));
    }

    #[test]
    fn inner_product_is_conjugate_linear() {
        let a = TrigSeries::<f64>::cos_basis(2).scale(Complex::new(0.0, 1.0));
        let b = TrigSeries::<f64>::cos_basis(2);
        assert_eq!(a.inner_product(&b), Complex::new(0.0, -1.0));
        assert_eq!(b.inner_product(&a), Complex::new(0.0, 1.0));
    }

    #[test]
    fn ce1_against_sine_derivative() {
        let ce = TrigSeries::<f64>::cos_basis(1);
        let se = TrigSeries::<f64>::sin_basis(1);
        assert!(close(ce.inner_product(&se.derivative()), c(1.0), 1e-15));
    }

    #[test]
    fn trimmed_drops_zero_tail() {
        let mut s = TrigSeries::<f64>::zeros(6);
        s.set_cos(2, c(1.0));
        assert_eq!(s.trimmed().harmonics(), 2);
    }
}
