//! Dense complex vectors and matrices, with the validation predicates the
//! bound algebra is built on.
//!
//! Matrices are row-major and intended for small dimensions (n up to ~16);
//! nothing here is tuned for large systems. All values are immutable after
//! construction and every operation is a pure function.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    /// Build a vector from its entries. Rejects empty or non-finite input.
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries })
    }

    /// Vector with all entries zero.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex::new(T::zero(), T::zero()); dim])
    }

    /// Computational basis vector |index⟩.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                name: "index",
                value: index,
                len: dim,
            });
        }
        let mut v = vec![Complex::new(T::zero(), T::zero()); dim];
        v[index] = Complex::new(T::one(), T::zero());
        Self::new(v)
    }

    /// Convenience constructor from real parts.
    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&r| Complex::new(r, T::zero())).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn norm_sq(&self) -> T {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// ⟨self|other⟩ with the conjugate on `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Returns a normalized copy, or an error for (numerically) zero vectors.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        // Negated so a NaN norm is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(n > T::of(1e-150)) {
            return Err(Error::ZeroVector);
        }
        Self::new(self.entries.iter().map(|c| c / n).collect())
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    entries: Vec<Complex<T>>,
    rows: usize,
    cols: usize,
}

impl<T: Real> ComplexMatrix<T> {
    /// Build a matrix from row-major entries; `entries.len()` must equal
    /// `rows * cols` and both dimensions must be positive.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            entries,
            rows,
            cols,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(
            rows,
            cols,
            vec![Complex::new(T::zero(), T::zero()); rows * cols],
        )
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Diagonal matrix from the given (complex) diagonal.
    pub fn diagonal(diag: &[Complex<T>]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            out.push(
                row.iter()
                    .zip(v.entries())
                    .map(|(m, x)| m * x)
                    .sum::<Complex<T>>(),
            );
        }
        ComplexVector::new(out)
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        Self {
            entries,
            rows: self.cols,
            cols: self.rows,
        }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|c| c * factor).collect(),
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Self::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Largest deviation of `self† self` from the identity.
    pub fn unitarity_deviation(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let gram = self.adjoint().matmul(self)?;
        gram.max_abs_diff(&Self::identity(self.rows)?)
    }

    /// True iff the max-entry deviation of `self† self` from the identity is
    /// at most `tol`.
    pub fn is_unitary(&self, tol: T) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.unitarity_deviation()? <= tol)
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.max_abs_diff(&self.adjoint())
    }
}

pub(crate) fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol < T::zero() || !tol.is_finite() {
        return Err(Error::BadTolerance);
    }
    Ok(())
}

/// True iff `a b - ω b a` vanishes entrywise to `tol`, with ω = e^{i2π/d}.
///
/// This is the Weyl commutation phase satisfied by the clock and shift
/// operators of dimension `d`.
pub fn commutation_phase_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    d: usize,
    tol: T,
) -> Result<bool> {
    check_tol(tol)?;
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    if d < 2 {
        return Err(Error::ScenarioDimension(d));
    }
    let omega = Complex::from_polar(T::one(), T::of(2.0) * T::PI() / T::of(d as f64));
    let lhs = a.matmul(b)?;
    let rhs = b.matmul(a)?.scale(omega);
    Ok(lhs.max_abs_diff(&rhs)? <= tol)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns the real eigenvalues (unsorted) and a unitary `V` with
/// `m == V diag(λ) V†`.
///
/// Intended for the small dimensions this crate works at; convergence is
/// quadratic once the off-diagonal mass is small.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n)?;
    let scale = T::max(T::one(), a.max_abs());
    let stop = T::epsilon() * T::of(32.0) * scale;
    let half = T::of(0.5);

    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = T::max(off, a.get(p, q).norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= stop * T::of(1e-2) {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Phase factor pulling the pivot onto the real axis, then a
                // real rotation zeroing it: J columns are
                //   col p = (c, s e^{-iφ}),  col q = (-s, c e^{-iφ}).
                let phase = Complex::from_polar(T::one(), apq.arg());
                let theta = half * T::atan2(T::of(2.0) * mag, app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                let cs = Complex::new(c, T::zero());
                let s_conj_phase = phase.conj() * s;

                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp * cs + arq * s_conj_phase);
                    a.set(r, q, arq * phase.conj() * c - arp * s);
                }
                for cidx in 0..n {
                    let apc = a.get(p, cidx);
                    let aqc = a.get(q, cidx);
                    a.set(p, cidx, apc * cs + aqc * phase * s);
                    a.set(q, cidx, aqc * phase * c - apc * s);
                }
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, vrp * cs + vrq * s_conj_phase);
                    v.set(r, q, vrq * phase.conj() * c - vrp * s);
                }
            }
        }
    }

    let eigenvalues = (0..n).map(|i| a.get(i, i).re).collect();
    Ok((eigenvalues, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    type M = ComplexMatrix<f64>;
    type V = ComplexVector<f64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn clock3() -> M {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        M::diagonal(&[c(1.0, 0.0), w, w * w]).unwrap()
    }

    fn shift3() -> M {
        M::new(
            3,
            3,
            vec![
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apply_identity_is_noop() {
        let id = M::identity(3).unwrap();
        let v = V::basis(3, 0).unwrap();
        let out = id.apply(&v).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn shift_moves_basis_states() {
        let b = shift3();
        let out = b.apply(&V::basis(3, 0).unwrap()).unwrap();
        assert_eq!(out, V::basis(3, 1).unwrap());
        let again = b.apply(&out).unwrap();
        assert_eq!(again, V::basis(3, 2).unwrap());
    }

    #[test]
    fn clock_phases_last_basis_state() {
        let a = clock3();
        let out = a.apply(&V::basis(3, 2).unwrap()).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!((out.entries()[2] - expected).norm() < 1e-15);
        assert!(out.entries()[0].norm() < 1e-15);
        assert!(out.entries()[1].norm() < 1e-15);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let id = M::identity(3).unwrap();
        let v = V::basis(2, 0).unwrap();
        assert!(matches!(id.apply(&v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn adjoint_of_identity_and_clock() {
        let id = M::identity(4).unwrap();
        assert_eq!(id.adjoint(), id);
        let a = clock3();
        let adj = a.adjoint();
        let w_conj = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 3.0);
        assert!((adj.get(1, 1) - w_conj).norm() < 1e-15);
        assert!((adj.get(2, 2) - w_conj * w_conj).norm() < 1e-15);
    }

    #[test]
    fn adjoint_of_shift_is_its_inverse() {
        let b = shift3();
        let prod = b.adjoint().matmul(&b).unwrap();
        let id = M::identity(3).unwrap();
        assert!(prod.max_abs_diff(&id).unwrap() < 1e-15);
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = M::new(
            2,
            3,
            vec![
                c(1.0, 2.0),
                c(0.5, -0.25),
                c(0.0, 1.0),
                c(-1.0, 0.0),
                c(2.0, 2.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn unitarity_checks() {
        assert!(M::identity(4).unwrap().is_unitary(1e-12).unwrap());
        assert!(clock3().is_unitary(1e-12).unwrap());
        assert!(shift3().is_unitary(1e-12).unwrap());
        let bad = M::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(!bad.is_unitary(1e-12).unwrap());
        let rect = M::zeros(2, 3).unwrap();
        assert!(matches!(
            rect.is_unitary(1e-12),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn weyl_commutation_for_clock_shift() {
        let a = clock3();
        let b = shift3();
        assert!(commutation_phase_check(&a, &b, 3, 1e-12).unwrap());
        let id = M::identity(3).unwrap();
        assert!(!commutation_phase_check(&id, &id, 3, 1e-12).unwrap());
    }

    #[test]
    fn eigen_recovers_diagonal() {
        let m = M::diagonal(&[c(0.5, 0.0), c(0.3, 0.0), c(0.2, 0.0)]).unwrap();
        let (mut vals, _) = hermitian_eigen(&m).unwrap();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 0.2).abs() < 1e-14);
        assert!((vals[1] - 0.3).abs() < 1e-14);
        assert!((vals[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn eigen_reconstructs_dense_hermitian() {
        let m = M::new(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(0.3, 0.4),
                c(-0.1, 0.2),
                c(0.3, -0.4),
                c(1.0, 0.0),
                c(0.0, -0.7),
                c(-0.1, -0.2),
                c(0.0, 0.7),
                c(0.5, 0.0),
            ],
        )
        .unwrap();
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!(vecs.unitarity_deviation().unwrap() < 1e-12);
        let diag: Vec<_> = vals.iter().map(|&l| c(l, 0.0)).collect();
        let rebuilt = vecs
            .matmul(&M::diagonal(&diag).unwrap())
            .unwrap()
            .matmul(&vecs.adjoint())
            .unwrap();
        assert!(rebuilt.max_abs_diff(&m).unwrap() < 1e-12);
    }
}
