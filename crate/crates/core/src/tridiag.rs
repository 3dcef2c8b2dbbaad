//! Symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues come from Sturm-sequence bisection, which returns the k-th
//! smallest eigenvalue directly and never mixes up the ordering. Eigenvectors
//! come from inverse iteration on the shifted matrix, factored with partial
//! pivoting.

use crate::scalar::Real;

/// Symmetric tridiagonal matrix given by its diagonal and sub-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    /// `off.len()` must be `diag.len() - 1`.
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        assert!(!diag.is_empty(), "empty tridiagonal matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < T::zero() {
            count += 1;
        }
        for i in 1..self.diag.len() {
            if q.abs() < tiny {
                q = if q < T::zero() { -tiny } else { tiny };
            }
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> T {
        assert!(k < self.dim(), "eigenvalue index {k} out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let pad = (hi - lo).abs() * T::epsilon() + T::min_positive_value();
        lo -= pad;
        hi += pad;
        let two = T::lit(2.0);
        let floor = T::epsilon() * (hi - lo).abs().max(T::one()) * T::epsilon();
        for _ in 0..256 {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi || hi - lo <= floor {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if lo <= T::zero() && hi >= T::zero() {
            return T::zero();
        }
        (lo + hi) / two
    }

    /// Unit eigenvector for an (accurate) eigenvalue `lambda`, sign unfixed.
    pub fn eigenvector(&self, lambda: T) -> Vec<T> {
        let n = self.dim();
        if n == 1 {
            return vec![T::one()];
        }
        let lu = ShiftedLu::factor(self, lambda);
        // Deterministic start vector with no special alignment to the eigenbasis.
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + T::lit(0.5) * T::lit(((i * 7919) % 113) as f64 / 113.0))
            .collect();
        normalize(&mut x);
        for _ in 0..4 {
            lu.solve(&mut x);
            normalize(&mut x);
        }
        x
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }
}

fn normalize<T: Real>(x: &mut [T]) {
    let norm = x.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
    if norm > T::zero() {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// LU factors of `T - λI` with row interchanges (the `gttrf` layout).
struct ShiftedLu<T> {
    /// Multipliers.
    l: Vec<T>,
    /// Main, first and second super-diagonals of U.
    u0: Vec<T>,
    u1: Vec<T>,
    u2: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> ShiftedLu<T> {
    fn factor(m: &SymTridiagonal<T>, lambda: T) -> Self {
        let n = m.dim();
        let scale = m
            .diag
            .iter()
            .chain(m.off.iter())
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
            .max(T::one());
        let floor = T::epsilon() * scale;

        let mut u0: Vec<T> = m.diag.iter().map(|&d| d - lambda).collect();
        let mut u1: Vec<T> = m.off.clone();
        u1.push(T::zero());
        let mut u2 = vec![T::zero(); n];
        let mut l = vec![T::zero(); n];
        let mut swapped = vec![false; n];
        // Sub-diagonal entries still to be eliminated.
        let sub = m.off.clone();

        for i in 0..n - 1 {
            if u0[i].abs() >= sub[i].abs() {
                let piv = if u0[i].abs() < floor { floor } else { u0[i] };
                u0[i] = piv;
                let f = sub[i] / piv;
                l[i] = f;
                u0[i + 1] -= f * u1[i];
            } else {
                // Swap rows i and i+1.
                swapped[i] = true;
                let f = u0[i] / sub[i];
                l[i] = f;
                let (a0, a1) = (u1[i], u0[i + 1]);
                let next = if i + 1 < n - 1 { u1[i + 1] } else { T::zero() };
                u0[i] = sub[i];
                u1[i] = a1;
                u2[i] = next;
                u0[i + 1] = a0 - f * a1;
                if i + 1 < n - 1 {
                    u1[i + 1] = -f * next;
                }
            }
        }
        if u0[n - 1].abs() < floor {
            u0[n - 1] = floor;
        }
        Self {
            l,
            u0,
            u1,
            u2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [T]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            let t = b[i];
            b[i + 1] -= self.l[i] * t;
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.u2[i] * b[i + 2];
            }
            b[i] = acc / self.u0[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SymTridiagonal<f64> {
        SymTridiagonal::new(vec![2.0, -1.0, 4.0, 0.5, 3.0], vec![1.0, 0.3, -2.0, 0.7])
    }

    #[test]
    fn sturm_count_brackets_each_eigenvalue() {
        let m = sample();
        for k in 0..m.dim() {
            let ev = m.eigenvalue(k);
            assert_eq!(m.count_below(ev - 1e-9), k);
            assert_eq!(m.count_below(ev + 1e-9), k + 1);
        }
    }

    #[test]
    fn eigenpairs_have_small_residual() {
        let m = sample();
        for k in 0..m.dim() {
            let ev = m.eigenvalue(k);
            let v = m.eigenvector(ev);
            let r = m.apply(&v);
            let res: f64 = r
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - ev * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-12, "k={k} residual {res}");
        }
    }

    #[test]
    fn diagonal_matrix_is_exact() {
        let m = SymTridiagonal::new(vec![9.0, 1.0, 25.0], vec![0.0, 0.0]);
        assert_eq!(m.eigenvalue(0), 1.0);
        assert_eq!(m.eigenvalue(1), 9.0);
        assert_eq!(m.eigenvalue(2), 25.0);
        let v: Vec<f64> = m.eigenvector(9.0);
        assert!((v[0].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_by_one() {
        let m = SymTridiagonal::new(vec![3.5_f32], vec![]);
        assert_eq!(m.eigenvalue(0), 3.5);
        assert_eq!(m.eigenvector(3.5), vec![1.0]);
    }
}
