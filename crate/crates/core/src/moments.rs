//! First and second moments of unitaries on states: expectations, variances,
//! and the nonnegative amplitude vectors the bound algebra consumes.
//!
//! For a unitary U and state ρ, the variance is ΔU² = 1 − |⟨U⟩|². Writing
//! Ā = U − ⟨U⟩, the amplitude vector collects the moduli of the expansion of
//! Ā acting on the state: ⟨i|Ā|ψ⟩ over a basis for pure states, or the
//! entries of Ā√ρ (flattened row-major) for mixed ones. Its squared norm is
//! the variance in both cases.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;
use crate::state::QuantumState;
use num_complex::Complex;

/// Nonnegative amplitude vector of one unitary on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector<T> {
    values: Vec<T>,
}

impl<T: Real> AmplitudeVector<T> {
    /// Wrap raw amplitudes. Entries must be finite and nonnegative, and the
    /// squared norm may not exceed 1 beyond roundoff (it equals a variance).
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            if v < T::zero() {
                return Err(Error::NegativeAmplitude {
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let nsq: T = values.iter().map(|&v| v * v).sum();
        if nsq > T::one() + T::of(1e-9) {
            return Err(Error::AmplitudeNormTooLarge {
                norm_sq: nsq.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }

    /// Σ x_i², i.e. the variance this vector decomposes.
    pub fn norm_sq(&self) -> T {
        self.values.iter().map(|&v| v * v).sum()
    }

    /// Reorder entries: `new[i] = old[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: perm.len(),
            });
        }
        let mut out = Vec::with_capacity(perm.len());
        for &p in perm {
            if p >= self.values.len() {
                return Err(Error::IndexOutOfRange {
                    name: "permutation image",
                    value: p,
                    len: self.values.len(),
                });
            }
            out.push(self.values[p]);
        }
        Self::new(out)
    }
}

/// ⟨U⟩ on the state.
pub fn expectation<T: Real>(op: &ComplexMatrix<T>, state: &QuantumState<T>) -> Result<Complex<T>> {
    state.expectation(op)
}

/// ΔU² = 1 − |⟨U⟩|², clamped into [0, 1] against roundoff.
pub fn variance<T: Real>(op: &ComplexMatrix<T>, state: &QuantumState<T>) -> Result<T> {
    let e = state.expectation(op)?;
    let v = T::one() - e.norm_sqr();
    Ok(T::min(T::max(v, T::zero()), T::one()))
}

fn centered<T: Real>(op: &ComplexMatrix<T>, state: &QuantumState<T>) -> Result<ComplexMatrix<T>> {
    let e = state.expectation(op)?;
    let n = op.rows();
    let shift = ComplexMatrix::identity(n)?.scale(e);
    op.sub(&shift)
}

/// The amplitude vector of `op` on `state`.
///
/// Pure states give a length-n vector; mixed states a length-n² one. The
/// squared norm equals `variance(op, state)` up to roundoff.
pub fn amplitude_vector<T: Real>(
    op: &ComplexMatrix<T>,
    state: &QuantumState<T>,
) -> Result<AmplitudeVector<T>> {
    if op.rows() != state.dim() || op.cols() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: op.rows(),
        });
    }
    let bar = centered(op, state)?;
    let raw: Vec<T> = match state {
        QuantumState::Pure(v) => bar.apply(v)?.entries().iter().map(|c| c.norm()).collect(),
        QuantumState::Mixed { sqrt_density, .. } => bar
            .matmul(sqrt_density)?
            .entries()
            .iter()
            .map(|c| c.norm())
            .collect(),
    };
    AmplitudeVector::new(raw)
}

/// Expectation, variance, and amplitude vector of one unitary on one state.
#[derive(Debug, Clone)]
pub struct VarianceReport<T> {
    pub expectation: Complex<T>,
    pub variance: T,
    pub amplitudes: AmplitudeVector<T>,
}

impl<T: Real> VarianceReport<T> {
    pub fn compute(op: &ComplexMatrix<T>, state: &QuantumState<T>) -> Result<Self> {
        let expectation = state.expectation(op)?;
        let variance = variance(op, state)?;
        let amplitudes = amplitude_vector(op, state)?;
        Ok(Self {
            expectation,
            variance,
            amplitudes,
        })
    }
}

/// |Σ x_i² − ΔU²|: how far the amplitude decomposition is from reproducing
/// the variance. Zero up to roundoff for any valid unitary/state pair.
pub fn product_decomposition_residual<T: Real>(
    op: &ComplexMatrix<T>,
    state: &QuantumState<T>,
) -> Result<T> {
    let v = variance(op, state)?;
    let x = amplitude_vector(op, state)?;
    Ok((x.norm_sq() - v).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexVector;
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
        let mut m = M::zeros(3, 3).unwrap();
        m.set(1, 0, c(1.0, 0.0));
        m.set(2, 1, c(1.0, 0.0));
        m.set(0, 2, c(1.0, 0.0));
        m
    }

    fn theta_state(theta: f64) -> QuantumState<f64> {
        let v = V::from_real(&[theta.cos(), 0.0, theta.sin()]).unwrap();
        QuantumState::pure(v, 1e-12).unwrap()
    }

    #[test]
    fn clock_moments_at_quarter_pi() {
        // (cos θ, 0, sin θ) at θ = π/4: ⟨A⟩ = (1 + ω²)/2 = 1/4 − i√3/4.
        let s = theta_state(std::f64::consts::FRAC_PI_4);
        let e = expectation(&clock3(), &s).unwrap();
        assert!((e.re - 0.25).abs() < 1e-15);
        assert!((e.im + 3f64.sqrt() / 4.0).abs() < 1e-15);
        let v = variance(&clock3(), &s).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn amplitudes_at_quarter_pi() {
        let s = theta_state(std::f64::consts::FRAC_PI_4);
        let x = amplitude_vector(&clock3(), &s).unwrap();
        let y = amplitude_vector(&shift3(), &s).unwrap();
        let q = 6f64.sqrt() / 4.0;
        let r = 2f64.sqrt() / 4.0;
        let ex = [q, 0.0, q];
        let ey = [r, 2f64.sqrt() / 2.0, r];
        for i in 0..3 {
            assert!((x.get(i) - ex[i]).abs() < 1e-15, "x[{i}]");
            assert!((y.get(i) - ey[i]).abs() < 1e-15, "y[{i}]");
        }
    }

    #[test]
    fn decomposition_residual_vanishes_pure_and_mixed() {
        let s = theta_state(0.9);
        assert!(product_decomposition_residual(&clock3(), &s).unwrap() < 1e-14);

        let rho = M::diagonal(&[c(0.5, 0.0), c(0.3, 0.0), c(0.2, 0.0)]).unwrap();
        let sm = QuantumState::mixed(rho, 1e-10).unwrap();
        let x = amplitude_vector(&shift3(), &sm).unwrap();
        assert_eq!(x.len(), 9);
        assert!(product_decomposition_residual(&shift3(), &sm).unwrap() < 1e-13);
    }

    #[test]
    fn amplitude_vector_rejects_bad_input() {
        assert!(matches!(
            AmplitudeVector::<f64>::new(vec![]),
            Err(Error::Empty)
        ));
        assert!(matches!(
            AmplitudeVector::new(vec![0.5, -0.1]),
            Err(Error::NegativeAmplitude { .. })
        ));
        assert!(matches!(
            AmplitudeVector::new(vec![1.0, 1.0]),
            Err(Error::AmplitudeNormTooLarge { .. })
        ));
    }

    #[test]
    fn permuted_reorders() {
        let x = AmplitudeVector::new(vec![0.1, 0.2, 0.3]).unwrap();
        let p = x.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.values(), &[0.3, 0.1, 0.2]);
        assert!(x.permuted(&[0, 1]).is_err());
        assert!(x.permuted(&[0, 1, 5]).is_err());
    }
}
