//! The worked state families and operator sets: clock/shift pairs in
//! dimension d and a three-unitary qutrit set, each with a θ-parametrized
//! pure state.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::scalar::Real;
use crate::state::QuantumState;

/// Stable identifiers for the built-in scenarios (`ex1`, `ex2`, `ex3:d`,
/// `ex4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioId {
    /// Qutrit clock/shift on cosθ|0⟩ + sinθ|2⟩.
    Ex1,
    /// Qutrit clock/shift on (√2/2)cosθ|0⟩ + (√2/2)cosθ|1⟩ + sinθ|2⟩.
    Ex2,
    /// Dimension-d clock/shift on the uniform-minus-last family.
    Ex3(usize),
    /// Three qutrit unitaries A = diag(1, i, −i), the cyclic shift, and the
    /// |0⟩↔|1⟩ swap, on a state normalized before use.
    Ex4,
}

impl ScenarioId {
    pub fn dim(self) -> usize {
        match self {
            ScenarioId::Ex1 | ScenarioId::Ex2 | ScenarioId::Ex4 => 3,
            ScenarioId::Ex3(d) => d,
        }
    }

    pub fn operator_count(self) -> usize {
        match self {
            ScenarioId::Ex4 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioId::Ex1 => write!(f, "ex1"),
            ScenarioId::Ex2 => write!(f, "ex2"),
            ScenarioId::Ex3(d) => write!(f, "ex3:{d}"),
            ScenarioId::Ex4 => write!(f, "ex4"),
        }
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex1" => Ok(ScenarioId::Ex1),
            "ex2" => Ok(ScenarioId::Ex2),
            "ex4" => Ok(ScenarioId::Ex4),
            other => {
                if let Some(d) = other.strip_prefix("ex3:") {
                    let d: usize = d
                        .parse()
                        .map_err(|_| Error::UnknownScenario(other.to_string()))?;
                    if d < 2 {
                        return Err(Error::ScenarioDimension(d));
                    }
                    Ok(ScenarioId::Ex3(d))
                } else {
                    Err(Error::UnknownScenario(other.to_string()))
                }
            }
        }
    }
}

/// The clock and shift pair in dimension d: A = diag(1, ω, …, ω^{d−1}) with
/// ω = e^{i2π/d}, and B the cyclic shift (ones on the subdiagonal and the
/// top-right corner). They satisfy AB = ωBA.
pub fn clock_shift<T: Real>(d: usize) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    if d < 2 {
        return Err(Error::ScenarioDimension(d));
    }
    let step = T::of(2.0) * T::PI() / T::of(d as f64);
    let diag: Vec<Complex<T>> = (0..d)
        .map(|k| Complex::from_polar(T::one(), step * T::of(k as f64)))
        .collect();
    let clock = ComplexMatrix::diagonal(&diag)?;
    let mut shift = ComplexMatrix::zeros(d, d)?;
    let one = Complex::new(T::one(), T::zero());
    for r in 1..d {
        shift.set(r, r - 1, one);
    }
    shift.set(0, d - 1, one);
    Ok((clock, shift))
}

/// The scenario's operators, in the order their bounds are reported
/// (A, B[, C]). All are unitary to machine precision.
pub fn scenario_operators<T: Real>(id: ScenarioId) -> Result<Vec<ComplexMatrix<T>>> {
    match id {
        ScenarioId::Ex1 | ScenarioId::Ex2 => {
            let (a, b) = clock_shift(3)?;
            Ok(vec![a, b])
        }
        ScenarioId::Ex3(d) => {
            let (a, b) = clock_shift(d)?;
            Ok(vec![a, b])
        }
        ScenarioId::Ex4 => {
            let half_pi = T::PI() / T::of(2.0);
            let a = ComplexMatrix::diagonal(&[
                Complex::new(T::one(), T::zero()),
                Complex::from_polar(T::one(), half_pi),
                Complex::from_polar(T::one(), T::of(3.0) * half_pi),
            ])?;
            let (_, b) = clock_shift(3)?;
            let one = Complex::new(T::one(), T::zero());
            let mut c = ComplexMatrix::zeros(3, 3)?;
            c.set(0, 1, one);
            c.set(1, 0, one);
            c.set(2, 2, one);
            Ok(vec![a, b, c])
        }
    }
}

/// The raw state vector at θ, before any normalization.
pub fn scenario_vector<T: Real>(id: ScenarioId, theta: T) -> Result<ComplexVector<T>> {
    let z = |v: T| Complex::new(v, T::zero());
    match id {
        ScenarioId::Ex1 => ComplexVector::new(vec![z(theta.cos()), z(T::zero()), z(theta.sin())]),
        ScenarioId::Ex2 => {
            let h = T::of(0.5).sqrt();
            ComplexVector::new(vec![z(h * theta.cos()), z(h * theta.cos()), z(theta.sin())])
        }
        ScenarioId::Ex3(d) => {
            if d < 2 {
                return Err(Error::ScenarioDimension(d));
            }
            let head = theta.cos() / T::of((d - 1) as f64).sqrt();
            let mut v = vec![z(head); d];
            v[d - 1] = z(-theta.sin());
            ComplexVector::new(v)
        }
        ScenarioId::Ex4 => {
            let h = T::of(0.5).sqrt();
            let half = theta / T::of(2.0);
            ComplexVector::new(vec![z(h * half.cos()), z(h * half.sin()), z(-half.sin())])
        }
    }
}

/// The scenario state at θ, with the squared norm the raw vector had before
/// normalization. The first three families are normalized by construction
/// (pre-norm 1 up to roundoff); the three-operator family's published
/// coefficients square-sum to (1 + sin²(θ/2))/2 and are rescaled here.
pub fn scenario_state<T: Real>(id: ScenarioId, theta: T) -> Result<(QuantumState<T>, T)> {
    let raw = scenario_vector(id, theta)?;
    let prenorm_sq = raw.norm_sq();
    Ok((QuantumState::pure_normalized(&raw)?, prenorm_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutation_phase_check;
    use crate::moments::amplitude_vector;

    #[test]
    fn ids_round_trip_and_reject_garbage() {
        for s in ["ex1", "ex2", "ex3:3", "ex3:12", "ex4"] {
            let id: ScenarioId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("ex5".parse::<ScenarioId>().is_err());
        assert!("ex3:".parse::<ScenarioId>().is_err());
        assert!("ex3:1".parse::<ScenarioId>().is_err());
        assert!("ex3:x".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn clock_shift_commutation_across_dims() {
        for d in 2..=12 {
            let (a, b) = clock_shift::<f64>(d).unwrap();
            assert!(a.is_unitary(1e-12).unwrap(), "clock d={d}");
            assert!(b.is_unitary(1e-12).unwrap(), "shift d={d}");
            assert!(commutation_phase_check(&a, &b, d, 1e-12).unwrap(), "d={d}");
        }
        assert!(clock_shift::<f64>(1).is_err());
    }

    #[test]
    fn dim_two_clock_is_pauli_like() {
        let (a, b) = clock_shift::<f64>(2).unwrap();
        assert!((a.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((a.get(1, 1).re + 1.0).abs() < 1e-15);
        assert!((b.get(0, 1).re - 1.0).abs() < 1e-15);
        assert!((b.get(1, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_scenario_operators_are_unitary() {
        for id in [
            ScenarioId::Ex1,
            ScenarioId::Ex2,
            ScenarioId::Ex3(4),
            ScenarioId::Ex4,
        ] {
            for op in scenario_operators::<f64>(id).unwrap() {
                assert!(op.is_unitary(1e-12).unwrap(), "{id}");
            }
        }
    }

    #[test]
    fn states_are_normalized_for_every_theta() {
        let mut theta = 0.0f64;
        while theta < 6.3 {
            for id in [
                ScenarioId::Ex1,
                ScenarioId::Ex2,
                ScenarioId::Ex3(3),
                ScenarioId::Ex3(5),
                ScenarioId::Ex4,
            ] {
                let (state, _) = scenario_state(id, theta).unwrap();
                match state {
                    QuantumState::Pure(v) => {
                        assert!((v.norm_sq() - 1.0).abs() < 1e-12, "{id} at {theta}")
                    }
                    _ => panic!("scenario states are pure"),
                }
            }
            theta += 0.37;
        }
    }

    #[test]
    fn ex1_at_zero_is_ground_state() {
        let v = scenario_vector::<f64>(ScenarioId::Ex1, 0.0).unwrap();
        assert!((v.entries()[0].re - 1.0).abs() < 1e-15);
        assert!(v.entries()[1].norm() < 1e-15);
        assert!(v.entries()[2].norm() < 1e-15);
    }

    #[test]
    fn ex3_at_zero_is_uniform_header() {
        let v = scenario_vector::<f64>(ScenarioId::Ex3(4), 0.0).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for i in 0..3 {
            assert!((v.entries()[i].re - third).abs() < 1e-15);
        }
        assert!(v.entries()[3].norm() < 1e-15);
    }

    #[test]
    fn ex4_prenorm_tracks_half_angle() {
        for theta in [0.0, 0.5, 1.0, 2.0, std::f64::consts::PI] {
            let (_, prenorm_sq) = scenario_state::<f64>(ScenarioId::Ex4, theta).unwrap();
            let expect = 0.5 + (theta / 2.0).sin().powi(2);
            assert!((prenorm_sq - expect).abs() < 1e-14, "theta={theta}");
        }
    }

    #[test]
    fn ex1_amplitudes_match_closed_forms() {
        // On cosθ|0⟩ + sinθ|2⟩ the amplitude vectors have closed forms
        //   x = (|1−ω̄|sin²θ|cosθ|, 0, |1−ω̄||sinθ|cos²θ),
        //   y = (|sinθ|³, |cosθ|, sin²θ|cosθ|),
        // with ω̄ = e^{−2πi/3}, so |1−ω̄| = √3.
        let ops = scenario_operators::<f64>(ScenarioId::Ex1).unwrap();
        let gap = 3f64.sqrt();
        for k in 0..100 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 99.0;
            let (state, _) = scenario_state(ScenarioId::Ex1, theta).unwrap();
            let x = amplitude_vector(&ops[0], &state).unwrap();
            let y = amplitude_vector(&ops[1], &state).unwrap();
            let (s, c) = (theta.sin(), theta.cos());
            let want_x = [gap * s * s * c.abs(), 0.0, gap * s.abs() * c * c];
            let want_y = [s.abs().powi(3), c.abs(), s * s * c.abs()];
            for i in 0..3 {
                assert!((x.get(i) - want_x[i]).abs() < 1e-12, "x[{i}] at θ={theta}");
                assert!((y.get(i) - want_y[i]).abs() < 1e-12, "y[{i}] at θ={theta}");
            }
        }
    }
}
