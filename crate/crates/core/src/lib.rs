//! Variance-based uncertainty bounds for unitary operators.
//!
//! For unitary operators A, B (and optionally C) and a quantum state, the
//! variance ΔU² = 1 − |⟨U⟩|² of each operator decomposes into a nonnegative
//! amplitude vector; products of variances are then bounded below by
//! descending families of chain bounds built from those vectors:
//!
//! * [`pair::bound_i`] / [`pair::bound_i1_prime`] / [`pair::bound_s`] for
//!   two operators,
//! * [`triple::bound_m`] and the axis maximum [`triple::bound_m_max`] for
//!   three,
//! * permutation-strengthened maxima over index relabelings,
//! * the built-in [`scenarios`] reproducing the worked examples.
//!
//! All numerics are generic over the scalar via [`scalar::Real`] (f64 by
//! default, f32 supported); the `*64` aliases below fix the common case.
//!
//! ```
//! use unibounds::{ScenarioId, PairContext64, scenario_operators, scenario_state};
//!
//! let ops = scenario_operators::<f64>(ScenarioId::Ex1).unwrap();
//! let (state, _) = scenario_state(ScenarioId::Ex1, std::f64::consts::FRAC_PI_4).unwrap();
//! let ctx = PairContext64::from_state(&ops[0], &ops[1], &state).unwrap();
//! let product = unibounds::pair::bound_s(&ctx, 1, 0).unwrap();
//! let i1p = unibounds::pair::bound_i1_prime(&ctx).unwrap();
//! assert!((product - 0.5625).abs() < 1e-12);
//! assert!((i1p - 0.515625).abs() < 1e-12);
//! ```

pub use num_complex;

pub mod chain;
pub mod error;
pub mod linalg;
pub mod moments;
pub mod pair;
pub mod perm;
pub mod random;
pub mod scalar;
pub mod scenarios;
pub mod state;
pub mod triple;

pub use chain::{BoundChain, ChainEntry};
pub use error::{Error, Result};
pub use linalg::{commutation_phase_check, hermitian_eigen, ComplexMatrix, ComplexVector};
pub use moments::{
    amplitude_vector, expectation, product_decomposition_residual, variance, AmplitudeVector,
    VarianceReport,
};
pub use pair::{
    bound_i, bound_i1_prime, bound_s, chain_s, perm_max_i1_prime, perm_max_s, s_coordinates,
    PairContext, PermConvention,
};
pub use perm::{PermSearchResult, Permutation, Strategy, EXHAUSTIVE_CAP};
pub use random::RandomSource;
pub use scalar::Real;
pub use scenarios::{clock_shift, scenario_operators, scenario_state, scenario_vector, ScenarioId};
pub use state::QuantumState;
pub use triple::{
    bound_m, bound_m_max, chain_m, m_coordinates, perm_max_m, yu_triple_bound, Axis, MCoordinate,
    TripleContext,
};

/// f64 state vector.
pub type ComplexVector64 = ComplexVector<f64>;
/// f64 matrix.
pub type ComplexMatrix64 = ComplexMatrix<f64>;
/// f64 quantum state.
pub type QuantumState64 = QuantumState<f64>;
/// f64 amplitude vector.
pub type AmplitudeVector64 = AmplitudeVector<f64>;
/// f64 two-operator context.
pub type PairContext64 = PairContext<f64>;
/// f64 three-operator context.
pub type TripleContext64 = TripleContext<f64>;
/// f64 bound chain.
pub type BoundChain64 = BoundChain<f64>;
