//! Two-operator lower bounds on the variance product ΔA²ΔB².
//!
//! Everything here is real arithmetic on a pair of amplitude vectors
//! (x⃗, y⃗) of common length N. The bound families:
//!
//! * `I_d` — the classic descending family; `I₁` is the full product
//!   Σ_{i,j} x_i²y_j², and `I_N` collapses to (Σ x_i y_i)².
//! * `I₁′` — a strengthening of `I₁` obtained by an AM–GM step on the
//!   (x₂, x₃) block against y₁, so `I₁ − I₁′ = y₁²(x₂ − x₃)²`.
//! * `S_pq` — a lattice interpolating between consecutive `I_d`, built by
//!   subtracting one Cauchy–Schwarz square at a time; `S_{p(p−1)} = I_p`.
//!
//! Index conventions follow the mathematical (1-based) form in the
//! documentation; code translates to 0-based storage.

use crate::chain::{BoundChain, ChainEntry};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::moments::{amplitude_vector, AmplitudeVector};
use crate::perm::{exhaustive_max, sampled_max, PermSearchResult, Permutation, Strategy};
use crate::scalar::{chain_slack, Real};
use crate::state::QuantumState;

/// Which form of the permuted I₁′ cross term to use.
///
/// `Consistent` relabels x-indices with π₁ and y-indices with π₂ in every
/// term — equivalent to evaluating the unpermuted bound on permuted
/// vectors. `CrossTerm` keeps the published index placement, where the
/// final term reads 2·y²_{π₁(1)}·x_{π₂(2)}·x_{π₂(3)} with the permutation
/// roles swapped relative to the other terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PermConvention {
    #[default]
    Consistent,
    CrossTerm,
}

/// A pair of amplitude vectors of equal length.
#[derive(Debug, Clone)]
pub struct PairContext<T> {
    xs: AmplitudeVector<T>,
    ys: AmplitudeVector<T>,
}

impl<T: Real> PairContext<T> {
    pub fn new(xs: AmplitudeVector<T>, ys: AmplitudeVector<T>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                found: ys.len(),
            });
        }
        Ok(Self { xs, ys })
    }

    /// Amplitude vectors of two unitaries on a common state.
    pub fn from_state(
        a: &ComplexMatrix<T>,
        b: &ComplexMatrix<T>,
        state: &QuantumState<T>,
    ) -> Result<Self> {
        Self::new(amplitude_vector(a, state)?, amplitude_vector(b, state)?)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &AmplitudeVector<T> {
        &self.xs
    }

    pub fn ys(&self) -> &AmplitudeVector<T> {
        &self.ys
    }

    /// Context with both vectors permuted: x∘π₁, y∘π₂.
    pub fn permuted(&self, pi1: &Permutation, pi2: &Permutation) -> Result<Self> {
        Self::new(
            self.xs.permuted(pi1.image())?,
            self.ys.permuted(pi2.image())?,
        )
    }

    fn x(&self, i1: usize) -> T {
        self.xs.get(i1 - 1)
    }

    fn y(&self, i1: usize) -> T {
        self.ys.get(i1 - 1)
    }

    /// Σ_{i,j} x_i² y_j², the head of every chain.
    pub fn full_product(&self) -> T {
        let n = self.len();
        let mut total = T::zero();
        for i in 1..=n {
            let xi2 = self.x(i) * self.x(i);
            for j in 1..=n {
                total += xi2 * self.y(j) * self.y(j);
            }
        }
        total
    }

    /// Σ x_i y_i, whose square is the common floor of the chains.
    pub fn diagonal_overlap(&self) -> T {
        (1..=self.len()).map(|i| self.x(i) * self.y(i)).sum()
    }
}

/// I_d = Σ x_i²y_i² + Σ_{i<j, d<j} (x_i²y_j² + x_j²y_i²) + Σ_{i<j≤d} 2x_iy_ix_jy_j.
///
/// Requires 1 ≤ d ≤ N. `I₁` equals the full product and the family is
/// weakly decreasing in d down to `I_N = (Σ x_iy_i)²`.
pub fn bound_i<T: Real>(ctx: &PairContext<T>, d: usize) -> Result<T> {
    let n = ctx.len();
    if d < 1 || d > n {
        return Err(Error::IndexOutOfRange {
            name: "d",
            value: d,
            len: n,
        });
    }
    let mut total = T::zero();
    for i in 1..=n {
        total += ctx.x(i) * ctx.x(i) * ctx.y(i) * ctx.y(i);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if j > d {
                total += ctx.x(i) * ctx.x(i) * ctx.y(j) * ctx.y(j)
                    + ctx.x(j) * ctx.x(j) * ctx.y(i) * ctx.y(i);
            } else {
                total += T::of(2.0) * ctx.x(i) * ctx.y(i) * ctx.x(j) * ctx.y(j);
            }
        }
    }
    Ok(total)
}

fn i1_prime_shared_terms<T: Real>(ctx: &PairContext<T>) -> T {
    let n = ctx.len();
    let mut total = T::zero();
    for i in 1..=n {
        total += ctx.x(i) * ctx.x(i) * ctx.y(i) * ctx.y(i);
    }
    for j in 2..=n {
        for i in 1..=n {
            if i != j {
                total += ctx.x(i) * ctx.x(i) * ctx.y(j) * ctx.y(j);
            }
        }
    }
    for i in 4..=n {
        total += ctx.y(1) * ctx.y(1) * ctx.x(i) * ctx.x(i);
    }
    total
}

/// I₁′ = Σx_i²y_i² + Σ_{j≠1,i≠j} x_i²y_j² + y₁²Σ_{i≥4} x_i² + 2y₁²x₂x₃.
///
/// Requires N ≥ 3 (the i ≥ 4 sum is empty at N = 3). Tightens I₁ by
/// exactly y₁²(x₂ − x₃)², so the two agree iff x₂ = x₃.
pub fn bound_i1_prime<T: Real>(ctx: &PairContext<T>) -> Result<T> {
    let n = ctx.len();
    if n < 3 {
        return Err(Error::IndexOutOfRange {
            name: "N",
            value: n,
            len: 3,
        });
    }
    Ok(i1_prime_shared_terms(ctx) + T::of(2.0) * ctx.y(1) * ctx.y(1) * ctx.x(2) * ctx.x(3))
}

/// Membership test for the S lattice: (1,0) or 2 ≤ p ≤ N, 1 ≤ q ≤ p−1.
fn check_s_coordinate(n: usize, p: usize, q: usize) -> Result<()> {
    let ok = (p == 1 && q == 0) || (p >= 2 && p <= n && q >= 1 && q < p);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidCoordinate { t: 0, p, q, len: n })
    }
}

/// S_pq = Σ_{i,j} x_i²y_j² − Σ_{j=2..p−1} Σ_{i<j} (x_jy_i − x_iy_j)²
///        − Σ_{m=1..q} (x_py_m − x_my_p)².
///
/// `S₁₀` is the untouched product; each admissible step subtracts one more
/// square, and `S_{p(p−1)} = I_p`.
pub fn bound_s<T: Real>(ctx: &PairContext<T>, p: usize, q: usize) -> Result<T> {
    let n = ctx.len();
    check_s_coordinate(n, p, q)?;
    let mut total = ctx.full_product();
    for j in 2..p {
        for i in 1..j {
            let cross = ctx.x(j) * ctx.y(i) - ctx.x(i) * ctx.y(j);
            total -= cross * cross;
        }
    }
    for m in 1..=q {
        let cross = ctx.x(p) * ctx.y(m) - ctx.x(m) * ctx.y(p);
        total -= cross * cross;
    }
    Ok(total)
}

/// Canonical S-lattice order: (1,0), then p ascending with q = 1..p−1.
pub fn s_coordinates(n: usize) -> Vec<(usize, usize)> {
    let mut coords = vec![(1, 0)];
    for p in 2..=n {
        for q in 1..p {
            coords.push((p, q));
        }
    }
    coords
}

/// The full descending S-chain in canonical order, validated weakly
/// decreasing and floored at its own terminal value `I_N`.
pub fn chain_s<T: Real>(ctx: &PairContext<T>) -> Result<BoundChain<T>> {
    let n = ctx.len();
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            name: "N",
            value: n,
            len: 2,
        });
    }
    let entries: Vec<ChainEntry<T>> = s_coordinates(n)
        .into_iter()
        .map(|(p, q)| {
            Ok(ChainEntry {
                label: format!("S({p},{q})"),
                value: bound_s(ctx, p, q)?,
            })
        })
        .collect::<Result<_>>()?;
    let floor = entries.last().map(|e| e.value).unwrap_or_else(T::zero);
    BoundChain::new(entries, floor, chain_slack::<T>())
}

/// Permuted I₁′ under the given convention.
pub fn bound_i1_prime_permuted<T: Real>(
    ctx: &PairContext<T>,
    pi1: &Permutation,
    pi2: &Permutation,
    convention: PermConvention,
) -> Result<T> {
    let relabeled = ctx.permuted(pi1, pi2)?;
    match convention {
        PermConvention::Consistent => bound_i1_prime(&relabeled),
        PermConvention::CrossTerm => {
            if ctx.len() < 3 {
                return Err(Error::IndexOutOfRange {
                    name: "N",
                    value: ctx.len(),
                    len: 3,
                });
            }
            let y_head = ctx.ys.get(pi1.image()[0]);
            let cross = T::of(2.0)
                * y_head
                * y_head
                * ctx.xs.get(pi2.image()[1])
                * ctx.xs.get(pi2.image()[2]);
            Ok(i1_prime_shared_terms(&relabeled) + cross)
        }
    }
}

fn search_pairs<T, F>(n: usize, strategy: Strategy, f: F) -> Result<PermSearchResult<T>>
where
    T: Real,
    F: FnMut(&[Permutation]) -> Result<T>,
{
    match strategy {
        Strategy::Exhaustive => exhaustive_max(n, 2, f),
        Strategy::Sampled { seed, samples } => sampled_max(n, 2, seed, samples, f),
    }
}

/// Maximize I₁′ over permutation pairs (π₁, π₂) under the consistent
/// convention. Exhaustive strategies enumerate all (N!)² pairs in
/// lexicographic order (capped); sampled ones are seeded and include the
/// identity pair, so the result never falls below the unpermuted bound.
pub fn perm_max_i1_prime<T: Real>(
    ctx: &PairContext<T>,
    strategy: Strategy,
) -> Result<PermSearchResult<T>> {
    perm_max_i1_prime_with(ctx, strategy, PermConvention::Consistent)
}

/// As [`perm_max_i1_prime`], with an explicit cross-term convention.
pub fn perm_max_i1_prime_with<T: Real>(
    ctx: &PairContext<T>,
    strategy: Strategy,
    convention: PermConvention,
) -> Result<PermSearchResult<T>> {
    if ctx.len() < 3 {
        return Err(Error::IndexOutOfRange {
            name: "N",
            value: ctx.len(),
            len: 3,
        });
    }
    search_pairs(ctx.len(), strategy, |t| {
        bound_i1_prime_permuted(ctx, &t[0], &t[1], convention)
    })
}

/// Maximize S_pq over permutation pairs (both vectors relabeled).
pub fn perm_max_s<T: Real>(
    ctx: &PairContext<T>,
    p: usize,
    q: usize,
    strategy: Strategy,
) -> Result<PermSearchResult<T>> {
    check_s_coordinate(ctx.len(), p, q)?;
    search_pairs(ctx.len(), strategy, |t| {
        bound_s(&ctx.permuted(&t[0], &t[1])?, p, q)
    })
}
