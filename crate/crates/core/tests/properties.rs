//! Property suites over random amplitude vectors, states, and unitaries.

use proptest::prelude::*;

use unibounds::pair::{bound_i, bound_i1_prime, bound_s, chain_s, perm_max_s, PairContext};
use unibounds::triple::{bound_m, chain_m, yu_triple_bound, Axis, MCoordinate, TripleContext};
use unibounds::Strategy as SearchStrategy;
use unibounds::{
    amplitude_vector, product_decomposition_residual, s_coordinates, variance, AmplitudeVector,
    QuantumState, RandomSource,
};

/// Nonnegative vector with squared norm scaled into (0, 1].
fn amp_vec(n: usize) -> impl Strategy<Value = AmplitudeVector<f64>> {
    (proptest::collection::vec(0.0f64..1.0, n), 0.05f64..1.0).prop_map(|(raw, target)| {
        let nsq: f64 = raw.iter().map(|v| v * v).sum();
        let scale = if nsq > 0.0 {
            (target / nsq).sqrt()
        } else {
            0.0
        };
        AmplitudeVector::new(raw.into_iter().map(|v| v * scale).collect()).unwrap()
    })
}

fn pair_ctx(n: usize) -> impl Strategy<Value = PairContext<f64>> {
    (amp_vec(n), amp_vec(n)).prop_map(|(x, y)| PairContext::new(x, y).unwrap())
}

fn triple_ctx(n: usize) -> impl Strategy<Value = TripleContext<f64>> {
    (amp_vec(n), amp_vec(n), amp_vec(n)).prop_map(|(x, y, z)| TripleContext::new(x, y, z).unwrap())
}

proptest! {
    #[test]
    fn s_chain_is_weakly_decreasing_with_exact_steps(n in 2usize..=6, ctx in (2usize..=6).prop_flat_map(pair_ctx)) {
        let _ = n;
        let chain = chain_s(&ctx).unwrap();
        let coords = s_coordinates(ctx.len());
        prop_assert_eq!(chain.len(), coords.len());
        for (k, w) in chain.entries().windows(2).enumerate() {
            let (p, q) = coords[k + 1];
            let cross = ctx.xs().get(p - 1) * ctx.ys().get(q - 1)
                - ctx.xs().get(q - 1) * ctx.ys().get(p - 1);
            let step = w[1].value - w[0].value;
            prop_assert!((step + cross * cross).abs() < 1e-12);
        }
    }

    #[test]
    fn i_recursion_has_the_minus_form(ctx in (3usize..=6).prop_flat_map(pair_ctx)) {
        let n = ctx.len();
        for d in 1..n {
            let lhs = bound_i(&ctx, d + 1).unwrap() - bound_i(&ctx, d).unwrap();
            let mut rhs = 0.0;
            for i in 0..d {
                let cross = ctx.xs().get(i) * ctx.ys().get(d) - ctx.xs().get(d) * ctx.ys().get(i);
                rhs -= cross * cross;
            }
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn s_embeds_i_on_the_diagonal(ctx in (2usize..=6).prop_flat_map(pair_ctx)) {
        let n = ctx.len();
        prop_assert!((bound_s(&ctx, 1, 0).unwrap() - bound_i(&ctx, 1).unwrap()).abs() < 1e-12);
        for p in 2..=n {
            let s = bound_s(&ctx, p, p - 1).unwrap();
            let i = bound_i(&ctx, p).unwrap();
            prop_assert!((s - i).abs() < 1e-12);
        }
    }

    #[test]
    fn i1_prime_gap_is_a_square(ctx in (3usize..=6).prop_flat_map(pair_ctx)) {
        let i1 = bound_i(&ctx, 1).unwrap();
        let i1p = bound_i1_prime(&ctx).unwrap();
        let y1 = ctx.ys().get(0);
        let gap = y1 * y1 * (ctx.xs().get(1) - ctx.xs().get(2)).powi(2);
        prop_assert!((i1 - i1p - gap).abs() < 1e-12);
        prop_assert!(i1p <= i1 + 1e-15);
    }

    #[test]
    fn every_s_sits_above_the_floor(ctx in (2usize..=6).prop_flat_map(pair_ctx)) {
        let n = ctx.len();
        let floor = {
            let overlap = ctx.diagonal_overlap();
            overlap * overlap
        };
        for (p, q) in s_coordinates(n) {
            prop_assert!(bound_s(&ctx, p, q).unwrap() >= floor - 1e-12);
        }
    }

    #[test]
    fn m_values_stay_in_the_envelope(ctx in (2usize..=5).prop_flat_map(triple_ctx)) {
        let n = ctx.len();
        let top = ctx.m010();
        for axis in Axis::ALL {
            for t in 1..=n {
                for (p, q) in s_coordinates(n).into_iter().skip(1) {
                    let m = bound_m(&ctx, MCoordinate::new(t, p, q, axis)).unwrap();
                    prop_assert!(m <= top + 1e-12);
                    prop_assert!(m >= -1e-12);
                }
            }
        }
    }

    #[test]
    fn m_terminal_identity_on_every_axis(ctx in (2usize..=5).prop_flat_map(triple_ctx)) {
        let n = ctx.len();
        let dot = |a: &AmplitudeVector<f64>, b: &AmplitudeVector<f64>| -> f64 {
            (0..n).map(|i| a.get(i) * b.get(i)).sum()
        };
        let cases = [
            (Axis::Z, ctx.zs().norm_sq(), dot(ctx.xs(), ctx.ys())),
            (Axis::Y, ctx.ys().norm_sq(), dot(ctx.xs(), ctx.zs())),
            (Axis::X, ctx.xs().norm_sq(), dot(ctx.ys(), ctx.zs())),
        ];
        for (axis, third, overlap) in cases {
            let m = bound_m(&ctx, MCoordinate::new(n, n, n - 1, axis)).unwrap();
            prop_assert!((m - third * overlap * overlap).abs() < 1e-12);
        }
    }

    #[test]
    fn m_chain_monotone_with_exact_steps(ctx in (2usize..=4).prop_flat_map(triple_ctx)) {
        let n = ctx.len();
        for axis in Axis::ALL {
            let chain = chain_m(&ctx, axis).unwrap();
            let values = chain.values();
            for w in values.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-12);
            }
            // Within-block steps: M(t,p,q) − M(t,p,q−1) = ±z_t²·ΔS.
            let scaling = match axis {
                Axis::Z => ctx.zs(),
                Axis::Y => ctx.ys(),
                Axis::X => ctx.xs(),
            };
            let pair = match axis {
                Axis::Z => PairContext::new(ctx.xs().clone(), ctx.ys().clone()).unwrap(),
                Axis::Y => PairContext::new(ctx.xs().clone(), ctx.zs().clone()).unwrap(),
                Axis::X => PairContext::new(ctx.ys().clone(), ctx.zs().clone()).unwrap(),
            };
            let cells: Vec<(usize, usize)> = s_coordinates(n).into_iter().skip(1).collect();
            let cells_per_t = cells.len();
            for t in 1..=n {
                let zt = scaling.get(t - 1);
                for k in 1..cells_per_t {
                    let idx = 1 + (t - 1) * cells_per_t + k;
                    let (p, q) = cells[k];
                    let (pp, pq) = cells[k - 1];
                    let ds = bound_s(&pair, p, q).unwrap() - bound_s(&pair, pp, pq).unwrap();
                    let step = values[idx] - values[idx - 1];
                    prop_assert!((step - zt * zt * ds).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn yu_depth_one_matches_triple_product(ctx in (2usize..=5).prop_flat_map(triple_ctx)) {
        let ab = PairContext::new(ctx.xs().clone(), ctx.ys().clone()).unwrap();
        let bc = PairContext::new(ctx.ys().clone(), ctx.zs().clone()).unwrap();
        let ac = PairContext::new(ctx.xs().clone(), ctx.zs().clone()).unwrap();
        let yu = yu_triple_bound(&ab, &bc, &ac, 1).unwrap();
        prop_assert!((yu - ctx.m010()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_perm_search_dominates_identity(ctx in (3usize..=5).prop_flat_map(pair_ctx), seed in 0u64..1000) {
        let res = perm_max_s(&ctx, 2, 1, SearchStrategy::Sampled { seed, samples: 4 }).unwrap();
        prop_assert!(res.value >= bound_s(&ctx, 2, 1).unwrap() - 1e-15);
        let product = bound_s(&ctx, 1, 0).unwrap();
        prop_assert!(res.value <= product + 1e-12);
    }
}

#[test]
fn random_instances_decompose_variances_exactly() {
    let mut src = RandomSource::new(20240817);
    for dim in 2..=6 {
        for _ in 0..50 {
            let state = src.pure_state::<f64>(dim).unwrap();
            let u = src.unitary::<f64>(dim).unwrap();
            assert!(product_decomposition_residual(&u, &state).unwrap() < 1e-12);
        }
    }
}

#[test]
fn mixed_states_decompose_through_the_square_root() {
    let mut src = RandomSource::new(8881);
    for dim in 2..=4 {
        for _ in 0..20 {
            let state = src.density::<f64>(dim).unwrap();
            let u = src.unitary::<f64>(dim).unwrap();
            let x = amplitude_vector(&u, &state).unwrap();
            assert_eq!(x.len(), dim * dim);
            let v = variance(&u, &state).unwrap();
            assert!((x.norm_sq() - v).abs() < 1e-10);
        }
    }
}

#[test]
fn mixed_state_chains_stay_monotone() {
    let mut src = RandomSource::new(5150);
    for dim in [3usize, 4] {
        let state = src.density::<f64>(dim).unwrap();
        let a = src.unitary::<f64>(dim).unwrap();
        let b = src.unitary::<f64>(dim).unwrap();
        let ctx = PairContext::from_state(&a, &b, &state).unwrap();
        assert_eq!(ctx.len(), dim * dim);
        // Construction of chain_s validates monotonicity internally.
        let chain = chain_s(&ctx).unwrap();
        assert_eq!(chain.len(), 1 + dim * dim * (dim * dim - 1) / 2);
    }
}

#[test]
fn pure_state_unitary_invariance_of_variance() {
    // Conjugating the operator and rotating the state together leaves the
    // variance unchanged.
    let mut src = RandomSource::new(314159);
    for _ in 0..20 {
        let dim = 4;
        let u = src.unitary::<f64>(dim).unwrap();
        let w = src.unitary::<f64>(dim).unwrap();
        let state = src.pure_state::<f64>(dim).unwrap();
        let v1 = variance(&u, &state).unwrap();
        let rotated_op = w.matmul(&u).unwrap().matmul(&w.adjoint()).unwrap();
        let rotated_state = match &state {
            QuantumState::Pure(psi) => QuantumState::pure(w.apply(psi).unwrap(), 1e-10).unwrap(),
            _ => unreachable!(),
        };
        let v2 = variance(&rotated_op, &rotated_state).unwrap();
        assert!((v1 - v2).abs() < 1e-12);
    }
}
