//! Three-operator lower bounds on ΔA²ΔB²ΔC².
//!
//! Each bound M_tpq scales a two-operator S-chain by the squared components
//! of the third amplitude vector. Along the z axis,
//!
//! ```text
//! M_tpq^(z) = M₀₁₀ + Σ_{r<t} z_r²(S_{N(N−1)}^(xy) − S₁₀^(xy))
//!                  + z_t²(S_pq^(xy) − S₁₀^(xy)),
//! ```
//!
//! with M₀₁₀ = Σ x_i²y_j²z_k² = ΔA²ΔB²ΔC². The x and y axes substitute the
//! (y,z) and (x,z) pair lattices. Telescoping to the terminal coordinate
//! (N, N, N−1) collapses the z-axis bound to ΔC²·(Σ x_iy_i)².

use crate::chain::{BoundChain, ChainEntry};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::moments::{amplitude_vector, AmplitudeVector};
use crate::pair::{bound_i, bound_s, s_coordinates, PairContext};
use crate::perm::{exhaustive_max, sampled_max, PermSearchResult, Permutation, Strategy};
use crate::scalar::{chain_slack, Real};
use crate::state::QuantumState;

/// Which amplitude vector supplies the scaling components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Z, Axis::Y, Axis::X];

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// A chain coordinate (t, p, q) on one axis. The sentinel (0, 1, 0) names
/// the untouched product M₀₁₀ on every axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MCoordinate {
    pub t: usize,
    pub p: usize,
    pub q: usize,
    pub axis: Axis,
}

impl MCoordinate {
    pub fn new(t: usize, p: usize, q: usize, axis: Axis) -> Self {
        Self { t, p, q, axis }
    }

    pub fn is_sentinel(self) -> bool {
        (self.t, self.p, self.q) == (0, 1, 0)
    }

    fn check(self, n: usize) -> Result<()> {
        if self.is_sentinel() {
            return Ok(());
        }
        let ok = self.t >= 1
            && self.t <= n
            && self.p >= 2
            && self.p <= n
            && self.q >= 1
            && self.q < self.p;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCoordinate {
                t: self.t,
                p: self.p,
                q: self.q,
                len: n,
            })
        }
    }
}

/// Three amplitude vectors of equal length.
#[derive(Debug, Clone)]
pub struct TripleContext<T> {
    xs: AmplitudeVector<T>,
    ys: AmplitudeVector<T>,
    zs: AmplitudeVector<T>,
}

impl<T: Real> TripleContext<T> {
    pub fn new(
        xs: AmplitudeVector<T>,
        ys: AmplitudeVector<T>,
        zs: AmplitudeVector<T>,
    ) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() != zs.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                found: if xs.len() != ys.len() {
                    ys.len()
                } else {
                    zs.len()
                },
            });
        }
        Ok(Self { xs, ys, zs })
    }

    /// Amplitude vectors of three unitaries on a common state.
    pub fn from_state(
        a: &ComplexMatrix<T>,
        b: &ComplexMatrix<T>,
        c: &ComplexMatrix<T>,
        state: &QuantumState<T>,
    ) -> Result<Self> {
        Self::new(
            amplitude_vector(a, state)?,
            amplitude_vector(b, state)?,
            amplitude_vector(c, state)?,
        )
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

    pub fn zs(&self) -> &AmplitudeVector<T> {
        &self.zs
    }

    /// Context with each vector independently permuted.
    pub fn permuted(
        &self,
        pi1: &Permutation,
        pi2: &Permutation,
        pi3: &Permutation,
    ) -> Result<Self> {
        Self::new(
            self.xs.permuted(pi1.image())?,
            self.ys.permuted(pi2.image())?,
            self.zs.permuted(pi3.image())?,
        )
    }

    /// ΔA²ΔB²ΔC² as the factored triple product (equals the brute-force
    /// triple sum Σ x_i²y_j²z_k²).
    pub fn m010(&self) -> T {
        self.xs.norm_sq() * self.ys.norm_sq() * self.zs.norm_sq()
    }

    /// The scaling vector of an axis and the pair context it multiplies.
    fn split(&self, axis: Axis) -> Result<(&AmplitudeVector<T>, PairContext<T>)> {
        let (scaling, a, b) = match axis {
            Axis::Z => (&self.zs, &self.xs, &self.ys),
            Axis::Y => (&self.ys, &self.xs, &self.zs),
            Axis::X => (&self.xs, &self.ys, &self.zs),
        };
        Ok((scaling, PairContext::new(a.clone(), b.clone())?))
    }
}

/// M at one coordinate on one axis.
pub fn bound_m<T: Real>(ctx: &TripleContext<T>, coord: MCoordinate) -> Result<T> {
    let n = ctx.len();
    coord.check(n)?;
    if coord.is_sentinel() {
        return Ok(ctx.m010());
    }
    let (scaling, pair) = ctx.split(coord.axis)?;
    let s10 = bound_s(&pair, 1, 0)?;
    let s_end = if n >= 2 {
        bound_s(&pair, n, n - 1)?
    } else {
        s10
    };
    let s_pq = bound_s(&pair, coord.p, coord.q)?;
    let third_sq = scaling.norm_sq();
    let mut value = s10 * third_sq;
    for r in 0..coord.t - 1 {
        let zr = scaling.get(r);
        value += zr * zr * (s_end - s10);
    }
    let zt = scaling.get(coord.t - 1);
    value += zt * zt * (s_pq - s10);
    Ok(value)
}

/// max over the three axes at (t, p, q), with the winning axis. Exact ties
/// resolve z over y over x.
pub fn bound_m_max<T: Real>(
    ctx: &TripleContext<T>,
    t: usize,
    p: usize,
    q: usize,
) -> Result<(T, Axis)> {
    let mut best: Option<(T, Axis)> = None;
    for axis in Axis::ALL {
        let value = bound_m(ctx, MCoordinate::new(t, p, q, axis))?;
        match best {
            Some((b, _)) if value <= b => {}
            _ => best = Some((value, axis)),
        }
    }
    Ok(best.expect("three axes evaluated"))
}

/// Coordinates of the descending M-chain: the sentinel, then t ascending
/// with the (p,q) cells of the S lattice (skipping its (1,0) head) inside
/// each t.
pub fn m_coordinates(n: usize, axis: Axis) -> Vec<MCoordinate> {
    let mut coords = vec![MCoordinate::new(0, 1, 0, axis)];
    for t in 1..=n {
        for (p, q) in s_coordinates(n).into_iter().skip(1) {
            coords.push(MCoordinate::new(t, p, q, axis));
        }
    }
    coords
}

/// The full descending M-chain along one axis, validated weakly decreasing
/// and floored at its terminal value.
pub fn chain_m<T: Real>(ctx: &TripleContext<T>, axis: Axis) -> Result<BoundChain<T>> {
    let n = ctx.len();
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            name: "N",
            value: n,
            len: 2,
        });
    }
    // One S-table per axis; every chain cell is then O(1).
    let (scaling, pair) = ctx.split(axis)?;
    let s10 = bound_s(&pair, 1, 0)?;
    let s_end = bound_s(&pair, n, n - 1)?;
    let third_sq = scaling.norm_sq();
    let mut s_table = Vec::new();
    for (p, q) in s_coordinates(n).into_iter().skip(1) {
        s_table.push(((p, q), bound_s(&pair, p, q)?));
    }

    let mut entries = vec![ChainEntry {
        label: "M(0,1,0)".to_string(),
        value: ctx.m010(),
    }];
    let mut prefix = T::zero();
    for t in 1..=n {
        let zt = scaling.get(t - 1);
        for &((p, q), s_pq) in &s_table {
            let value = s10 * third_sq + prefix + zt * zt * (s_pq - s10);
            entries.push(ChainEntry {
                label: format!("M({t},{p},{q})"),
                value,
            });
        }
        prefix += zt * zt * (s_end - s10);
    }
    let floor = entries.last().map(|e| e.value).unwrap_or_else(T::zero);
    BoundChain::new(entries, floor, chain_slack::<T>())
}

/// √(I_d on (A,B) · I_d on (B,C) · I_d on (A,C)): the geometric-mean triple
/// bound the M family is compared against. All three contexts must share
/// one length.
pub fn yu_triple_bound<T: Real>(
    ctx_ab: &PairContext<T>,
    ctx_bc: &PairContext<T>,
    ctx_ac: &PairContext<T>,
    d: usize,
) -> Result<T> {
    if ctx_ab.len() != ctx_bc.len() || ctx_ab.len() != ctx_ac.len() {
        return Err(Error::DimensionMismatch {
            expected: ctx_ab.len(),
            found: if ctx_ab.len() != ctx_bc.len() {
                ctx_bc.len()
            } else {
                ctx_ac.len()
            },
        });
    }
    let product = bound_i(ctx_ab, d)? * bound_i(ctx_bc, d)? * bound_i(ctx_ac, d)?;
    Ok(T::max(product, T::zero()).sqrt())
}

/// Maximize the axis-maximum of M_tpq over permutation triples
/// (π₁ on x, π₂ on y, π₃ on z). Exhaustive enumeration is capped at
/// (N!)³ ≤ 10⁷ tuples and reports the lexicographically smallest argmax;
/// the sampled strategy always includes the identity triple.
pub fn perm_max_m<T: Real>(
    ctx: &TripleContext<T>,
    t: usize,
    p: usize,
    q: usize,
    strategy: Strategy,
) -> Result<PermSearchResult<T>> {
    MCoordinate::new(t, p, q, Axis::Z).check(ctx.len())?;
    let eval = |tuple: &[Permutation]| -> Result<T> {
        let relabeled = ctx.permuted(&tuple[0], &tuple[1], &tuple[2])?;
        Ok(bound_m_max(&relabeled, t, p, q)?.0)
    };
    match strategy {
        Strategy::Exhaustive => exhaustive_max(ctx.len(), 3, eval),
        Strategy::Sampled { seed, samples } => sampled_max(ctx.len(), 3, seed, samples, eval),
    }
}
