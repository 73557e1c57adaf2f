//! Seeded random states and unitaries for property suites and verification
//! runs. Everything is deterministic given the seed.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::scalar::Real;
use crate::state::QuantumState;

/// Deterministic source of random quantum objects.
pub struct RandomSource {
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    fn gaussian<T: Real>(&mut self) -> Complex<T> {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex::new(T::of(re), T::of(im))
    }

    fn gaussian_matrix<T: Real>(&mut self, dim: usize) -> Result<ComplexMatrix<T>> {
        let entries = (0..dim * dim).map(|_| self.gaussian()).collect();
        ComplexMatrix::new(dim, dim, entries)
    }

    /// Haar-like random pure state: a normalized complex Gaussian vector.
    pub fn pure_state<T: Real>(&mut self, dim: usize) -> Result<QuantumState<T>> {
        let v = ComplexVector::new((0..dim).map(|_| self.gaussian()).collect())?;
        QuantumState::pure_normalized(&v)
    }

    /// Random unitary via Gram–Schmidt on a complex Gaussian matrix
    /// (QR with the rows as the vectors being orthonormalized).
    pub fn unitary<T: Real>(&mut self, dim: usize) -> Result<ComplexMatrix<T>> {
        let g = self.gaussian_matrix::<T>(dim)?;
        let mut columns: Vec<Vec<Complex<T>>> = (0..dim)
            .map(|c| (0..dim).map(|r| g.get(r, c)).collect())
            .collect();
        for c in 0..dim {
            for prev in 0..c {
                let proj: Complex<T> = (0..dim)
                    .map(|r| columns[prev][r].conj() * columns[c][r])
                    .sum();
                let deltas: Vec<Complex<T>> = columns[prev].iter().map(|&v| v * proj).collect();
                for (v, delta) in columns[c].iter_mut().zip(deltas) {
                    *v -= delta;
                }
            }
            let norm: T = columns[c].iter().map(|v| v.norm_sqr()).sum::<T>().sqrt();
            for v in columns[c].iter_mut() {
                *v /= norm;
            }
        }
        let mut m = ComplexMatrix::zeros(dim, dim)?;
        for (c, column) in columns.iter().enumerate() {
            for (r, &v) in column.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    /// Random full-rank density matrix: GG†, normalized to unit trace.
    pub fn density<T: Real>(&mut self, dim: usize) -> Result<QuantumState<T>> {
        let g = self.gaussian_matrix::<T>(dim)?;
        let w = g.matmul(&g.adjoint())?;
        let tr = w.trace()?.re;
        let rho = w.scale(Complex::new(T::one() / tr, T::zero()));
        QuantumState::mixed(rho, T::of(1e-8))
    }
}
