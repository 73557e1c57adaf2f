//! Verification suites: re-check the library's invariants on scenario
//! sweeps or random corpora, reporting one line per check and serializing
//! the first failing instance for replay.

use unibounds::pair::{bound_i, bound_i1_prime, bound_s, PairContext};
use unibounds::triple::{bound_m, Axis, MCoordinate, TripleContext};
use unibounds::{
    m_coordinates, s_coordinates, scenario_operators, scenario_state, variance, ComplexMatrix64,
    QuantumState64, RandomSource, ScenarioId,
};

use crate::config::GridSpec;
use crate::error::{CliError, CliResult};
use crate::fileio::{render_operator, render_state};

/// One aggregated check: its worst residual and failure count over every
/// instance it saw.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub worst: f64,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Agg {
    name: &'static str,
    instances: usize,
    failures: usize,
    worst: f64,
    first_failure: Option<String>,
}

impl Agg {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            instances: 0,
            failures: 0,
            worst: 0.0,
            first_failure: None,
        }
    }

    /// Record one residual; anything above `tol` (or non-finite) fails.
    fn observe(&mut self, residual: f64, tol: f64, context: &str) -> bool {
        self.instances += 1;
        let bad = !residual.is_finite() || residual > tol;
        if residual.is_finite() {
            self.worst = self.worst.max(residual);
        } else {
            self.worst = f64::INFINITY;
        }
        if bad {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(format!("residual {residual:.3e} at {context}"));
            }
        }
        !bad
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            instances: self.instances,
            failures: self.failures,
            worst: self.worst,
            first_failure: self.first_failure,
        }
    }
}

/// The first failing instance, serialized in the state/operator file
/// format so the run can be replayed through `eval`.
#[derive(Debug, Clone)]
pub struct FailureArtifact {
    pub state_text: String,
    pub operator_texts: Vec<String>,
    pub context: String,
}

/// Outcome of a verification run.
#[derive(Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub artifact: Option<FailureArtifact>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn math(err: unibounds::Error) -> CliError {
    CliError::math_from(err)
}

/// The residual-producing checks shared by both suites, run on one
/// instance (state + two or three operators).
struct InstanceChecks {
    residual: Agg,
    oracle: Agg,
    chain: Agg,
    embed: Agg,
    gap_identity: Agg,
    floor: Agg,
    m_chain: Agg,
    m_terminal: Agg,
    m_envelope: Agg,
}

impl InstanceChecks {
    fn new() -> Self {
        Self {
            residual: Agg::new("variance decomposition residual"),
            oracle: Agg::new("S10 equals the variance product"),
            chain: Agg::new("S-chain weakly decreasing"),
            embed: Agg::new("S(p,p-1) embeds I_p"),
            gap_identity: Agg::new("I1 - I1' equals y1^2 (x2-x3)^2"),
            floor: Agg::new("S values above the (sum x_i y_i)^2 floor"),
            m_chain: Agg::new("M-chains weakly decreasing on all axes"),
            m_terminal: Agg::new("terminal M equals third-variance times overlap^2"),
            m_envelope: Agg::new("M values within [0, product]"),
        }
    }

    /// Run every applicable check; true iff all passed for this instance.
    fn run(
        &mut self,
        state: &QuantumState64,
        ops: &[ComplexMatrix64],
        tol: f64,
        context: &str,
    ) -> CliResult<bool> {
        let mut ok = true;
        let mut variances = Vec::with_capacity(ops.len());
        for (k, op) in ops.iter().enumerate() {
            let v = variance(op, state).map_err(math)?;
            variances.push(v);
            let x = unibounds::amplitude_vector(op, state).map_err(math)?;
            let r = (x.norm_sq() - v).abs();
            ok &= self
                .residual
                .observe(r, tol, &format!("{context}, operator {k}"));
        }

        let ctx = PairContext::from_state(&ops[0], &ops[1], state).map_err(math)?;
        let n = ctx.len();
        let s10 = bound_s(&ctx, 1, 0).map_err(math)?;
        ok &= self
            .oracle
            .observe((s10 - variances[0] * variances[1]).abs(), tol, context);

        let coords = s_coordinates(n);
        let values: Vec<f64> = coords
            .iter()
            .map(|&(p, q)| bound_s(&ctx, p, q).map_err(math))
            .collect::<CliResult<_>>()?;
        for w in values.windows(2) {
            ok &= self.chain.observe((w[1] - w[0]).max(0.0), tol, context);
        }
        let overlap = ctx.diagonal_overlap();
        let fl = overlap * overlap;
        for &v in &values {
            ok &= self.floor.observe((fl - v).max(0.0), tol, context);
        }
        for p in 2..=n {
            let s = bound_s(&ctx, p, p - 1).map_err(math)?;
            let i = bound_i(&ctx, p).map_err(math)?;
            ok &= self.embed.observe((s - i).abs(), tol, context);
        }
        if n >= 3 {
            let i1 = bound_i(&ctx, 1).map_err(math)?;
            let i1p = bound_i1_prime(&ctx).map_err(math)?;
            let y1 = ctx.ys().get(0);
            let gap = y1 * y1 * (ctx.xs().get(1) - ctx.xs().get(2)).powi(2);
            ok &= self.gap_identity.observe((i1 - i1p - gap).abs(), tol, context);
        }

        if ops.len() >= 3 {
            let tctx = TripleContext::from_state(&ops[0], &ops[1], &ops[2], state).map_err(math)?;
            let top = variances[0] * variances[1] * variances[2];
            for axis in Axis::ALL {
                let coords = m_coordinates(n, axis);
                let values: Vec<f64> = coords
                    .iter()
                    .map(|&c| bound_m(&tctx, c).map_err(math))
                    .collect::<CliResult<_>>()?;
                for w in values.windows(2) {
                    ok &= self.m_chain.observe((w[1] - w[0]).max(0.0), tol, context);
                }
                for &v in &values {
                    ok &= self
                        .m_envelope
                        .observe((v - top).max(0.0).max(-v), tol, context);
                }
                let dot =
                    |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
                let (third, pair_overlap) = match axis {
                    Axis::Z => (variances[2], dot(tctx.xs().values(), tctx.ys().values())),
                    Axis::Y => (variances[1], dot(tctx.xs().values(), tctx.zs().values())),
                    Axis::X => (variances[0], dot(tctx.ys().values(), tctx.zs().values())),
                };
                let terminal = bound_m(&tctx, MCoordinate::new(n, n, n - 1, axis)).map_err(math)?;
                ok &= self.m_terminal.observe(
                    (terminal - third * pair_overlap * pair_overlap).abs(),
                    tol,
                    context,
                );
            }
        }
        Ok(ok)
    }

    fn finish(self, include_triple: bool) -> Vec<Check> {
        let mut checks = vec![
            self.residual.finish(),
            self.oracle.finish(),
            self.chain.finish(),
            self.embed.finish(),
            self.gap_identity.finish(),
            self.floor.finish(),
        ];
        if include_triple {
            checks.push(self.m_chain.finish());
            checks.push(self.m_terminal.finish());
            checks.push(self.m_envelope.finish());
        }
        checks
    }
}

fn capture(
    artifact: &mut Option<FailureArtifact>,
    state: &QuantumState64,
    ops: &[ComplexMatrix64],
    context: &str,
) {
    if artifact.is_none() {
        *artifact = Some(FailureArtifact {
            state_text: render_state(state),
            operator_texts: ops.iter().map(render_operator).collect(),
            context: context.to_string(),
        });
    }
}

/// Re-verify a scenario across a θ grid: operator unitarity, state
/// normalization, and the full invariant set at every point.
pub fn scenario_suite(id: ScenarioId, grid: &GridSpec, tol: f64) -> CliResult<VerifyReport> {
    let ops = scenario_operators::<f64>(id).map_err(math)?;
    let mut unitarity = Agg::new("operators unitary");
    let mut normalized = Agg::new("states normalized");
    let mut inst = InstanceChecks::new();
    let mut artifact = None;

    for (k, op) in ops.iter().enumerate() {
        let dev = op.unitarity_deviation().map_err(math)?;
        unitarity.observe(dev, tol, &format!("operator {k}"));
    }
    for theta in grid.points() {
        let (state, _) = scenario_state(id, theta).map_err(math)?;
        let context = format!("{id} at theta = {theta:.6}");
        let norm_residual = match &state {
            QuantumState64::Pure(v) => (v.norm_sq() - 1.0).abs(),
            QuantumState64::Mixed { density, .. } => {
                (density.trace().map_err(math)?.re - 1.0).abs()
            }
        };
        let mut ok = normalized.observe(norm_residual, tol, &context);
        ok &= inst.run(&state, &ops, tol, &context)?;
        if !ok {
            capture(&mut artifact, &state, &ops, &context);
        }
    }

    let mut checks = vec![unitarity.finish(), normalized.finish()];
    checks.extend(inst.finish(id.operator_count() >= 3));
    Ok(VerifyReport { checks, artifact })
}

/// Verify the invariants on seeded random instances: pure states (plus
/// densities when `mixed` is set) against random unitary pairs and triples.
pub fn random_suite(
    dim: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    mixed: bool,
) -> CliResult<VerifyReport> {
    if dim < 2 {
        return Err(CliError::Math(format!(
            "random verification needs dimension >= 2, got {dim}"
        )));
    }
    if trials == 0 {
        return Err(CliError::Input("trials must be positive".into()));
    }
    let mut src = RandomSource::new(seed);
    let mut inst = InstanceChecks::new();
    let mut artifact = None;

    for trial in 0..trials {
        let state: QuantumState64 = if mixed && trial % 2 == 1 {
            src.density(dim).map_err(math)?
        } else {
            src.pure_state(dim).map_err(math)?
        };
        let ops: Vec<ComplexMatrix64> = (0..3)
            .map(|_| src.unitary(dim))
            .collect::<unibounds::Result<_>>()
            .map_err(math)?;
        let context = format!("dim {dim}, seed {seed}, trial {trial}");
        if !inst.run(&state, &ops, tol, &context)? {
            capture(&mut artifact, &state, &ops, &context);
        }
    }

    Ok(VerifyReport {
        checks: inst.finish(true),
        artifact,
    })
}
