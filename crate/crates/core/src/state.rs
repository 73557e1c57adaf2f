//! Quantum states: normalized pure vectors and density matrices.
//!
//! Mixed states keep a principal square root of the density matrix alongside
//! it, so the amplitude-vector construction downstream never has to
//! rediagonalize per operator.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{check_tol, hermitian_eigen, ComplexMatrix, ComplexVector};
use crate::scalar::Real;

/// A quantum state of fixed dimension, either pure or mixed.
#[derive(Debug, Clone)]
pub enum QuantumState<T> {
    /// A normalized state vector.
    Pure(ComplexVector<T>),
    /// A density matrix together with its principal (PSD Hermitian) square
    /// root.
    Mixed {
        density: ComplexMatrix<T>,
        sqrt_density: ComplexMatrix<T>,
    },
}

impl<T: Real> QuantumState<T> {
    /// Validate a vector as a pure state: normalized to `tol` in the squared
    /// norm.
    pub fn pure(vector: ComplexVector<T>, tol: T) -> Result<Self> {
        check_tol(tol)?;
        let nsq = vector.norm_sq();
        if (nsq - T::one()).abs() > tol {
            return Err(Error::NotNormalized {
                norm_sq: nsq.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::Pure(vector))
    }

    /// Normalize a vector and wrap it as a pure state. Rejects (numerically)
    /// zero vectors.
    pub fn pure_normalized(vector: &ComplexVector<T>) -> Result<Self> {
        Ok(Self::Pure(vector.normalized()?))
    }

    /// Validate a matrix as a density operator: Hermitian, unit trace, and
    /// positive semidefinite, each to `tol`. The principal square root is
    /// computed here once, with small negative eigenvalues (within `tol`)
    /// clamped to zero.
    pub fn mixed(density: ComplexMatrix<T>, tol: T) -> Result<Self> {
        check_tol(tol)?;
        if !density.is_square() {
            return Err(Error::NotSquare {
                rows: density.rows(),
                cols: density.cols(),
            });
        }
        let herm = density.hermiticity_deviation()?;
        if herm > tol {
            return Err(Error::NotHermitian {
                deviation: herm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = density.trace()?;
        let tr_dev = (tr - Complex::new(T::one(), T::zero())).norm();
        if tr_dev > tol {
            return Err(Error::TraceNotOne {
                trace: tr.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (vals, vecs) = hermitian_eigen(&density)?;
        let mut min_eig = T::infinity();
        for &l in &vals {
            min_eig = T::min(min_eig, l);
        }
        if min_eig < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min_eig.to_f64().unwrap_or(f64::NAN),
            });
        }
        let sqrt_diag: Vec<Complex<T>> = vals
            .iter()
            .map(|&l| Complex::new(T::max(l, T::zero()).sqrt(), T::zero()))
            .collect();
        let sqrt_density = vecs
            .matmul(&ComplexMatrix::diagonal(&sqrt_diag)?)?
            .matmul(&vecs.adjoint())?;
        Ok(Self::Mixed {
            density,
            sqrt_density,
        })
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        match self {
            Self::Pure(v) => v.dim(),
            Self::Mixed { density, .. } => density.rows(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Self::Pure(_))
    }

    /// Human-readable kind tag, used in errors and reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Pure(_) => "pure",
            Self::Mixed { .. } => "mixed",
        }
    }

    /// ⟨U⟩ on this state: ⟨ψ|U|ψ⟩ or Tr(ρU).
    pub fn expectation(&self, op: &ComplexMatrix<T>) -> Result<Complex<T>> {
        if op.rows() != self.dim() || op.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.rows(),
            });
        }
        match self {
            Self::Pure(v) => v.inner(&op.apply(v)?),
            Self::Mixed { density, .. } => density.matmul(op)?.trace(),
        }
    }

    /// The density matrix of this state (|ψ⟩⟨ψ| for pure states).
    pub fn density_matrix(&self) -> Result<ComplexMatrix<T>> {
        match self {
            Self::Mixed { density, .. } => Ok(density.clone()),
            Self::Pure(v) => {
                let n = v.dim();
                let mut m = ComplexMatrix::zeros(n, n)?;
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, v.entries()[i] * v.entries()[j].conj());
                    }
                }
                Ok(m)
            }
        }
    }
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

    #[test]
    fn pure_accepts_normalized_and_rejects_unnormalized() {
        let v = V::from_real(&[0.6, 0.8]).unwrap();
        assert!(QuantumState::pure(v.clone(), 1e-12).is_ok());
        let long = v.scale(c(2.0, 0.0));
        assert!(matches!(
            QuantumState::pure(long, 1e-12),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn pure_normalized_rescales() {
        let v = V::from_real(&[3.0, 4.0]).unwrap();
        let s = QuantumState::pure_normalized(&v).unwrap();
        match s {
            QuantumState::Pure(u) => assert!((u.norm_sq() - 1.0).abs() < 1e-15),
            _ => panic!("expected pure"),
        }
    }

    #[test]
    fn mixed_validates_and_roots() {
        let rho = M::diagonal(&[c(0.5, 0.0), c(0.3, 0.0), c(0.2, 0.0)]).unwrap();
        let s = QuantumState::mixed(rho.clone(), 1e-10).unwrap();
        match &s {
            QuantumState::Mixed { sqrt_density, .. } => {
                let sq = sqrt_density.matmul(sqrt_density).unwrap();
                assert!(sq.max_abs_diff(&rho).unwrap() < 1e-12);
            }
            _ => panic!("expected mixed"),
        }
        assert_eq!(s.dim(), 3);
        assert_eq!(s.kind(), "mixed");
    }

    #[test]
    fn mixed_rejects_bad_density() {
        let not_trace_one = M::diagonal(&[c(0.5, 0.0), c(0.2, 0.0)]).unwrap();
        assert!(matches!(
            QuantumState::mixed(not_trace_one, 1e-10),
            Err(Error::TraceNotOne { .. })
        ));

        let not_hermitian = M::new(
            2,
            2,
            vec![c(0.5, 0.0), c(0.3, 0.1), c(0.4, 0.1), c(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            QuantumState::mixed(not_hermitian, 1e-10),
            Err(Error::NotHermitian { .. })
        ));

        let negative = M::diagonal(&[c(1.5, 0.0), c(-0.5, 0.0)]).unwrap();
        assert!(matches!(
            QuantumState::mixed(negative, 1e-10),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn expectation_matches_both_forms() {
        // ⟨A⟩ on (|0⟩+|1⟩)/√2 with A = diag(1, ω) at d=2: (1 + ω)/2 = 0.
        let v = V::from_real(&[std::f64::consts::FRAC_1_SQRT_2; 2]).unwrap();
        let s = QuantumState::pure(v, 1e-12).unwrap();
        let a = M::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let e = s.expectation(&a).unwrap();
        assert!(e.norm() < 1e-15);

        let rho = s.density_matrix().unwrap();
        let sm = QuantumState::mixed(rho, 1e-10).unwrap();
        let em = sm.expectation(&a).unwrap();
        assert!((e - em).norm() < 1e-12);
    }
}
