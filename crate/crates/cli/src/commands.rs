//! Subcommand implementations. Each returns the text to print on stdout;
//! errors carry their exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use unibounds::pair::{
    bound_i, bound_i1_prime, bound_s, perm_max_i1_prime_with, perm_max_s, PairContext,
    PermConvention,
};
use unibounds::triple::{
    bound_m, bound_m_max, perm_max_m, yu_triple_bound, MCoordinate, TripleContext,
};
use unibounds::{
    expectation, variance, ComplexMatrix64, PermSearchResult, Permutation, QuantumState64,
    ScenarioId, Strategy,
};

use crate::config::{BoundSelector, GridSpec, OutputFormat};
use crate::error::{CliError, CliResult};
use crate::fileio;
use crate::sweep::{figure_sweep, plot_script, FigureId};
use crate::verify::{random_suite, scenario_suite, VerifyReport};

fn math(err: unibounds::Error) -> CliError {
    CliError::math_from(err)
}

/// The state and operators a command acts on, from a scenario id or files.
pub struct Instance {
    pub label: String,
    pub state: QuantumState64,
    pub operators: Vec<ComplexMatrix64>,
}

impl Instance {
    pub fn load(
        scenario: Option<&str>,
        theta: Option<f64>,
        state_path: Option<&Path>,
        op_paths: &[PathBuf],
        tol: f64,
    ) -> CliResult<Self> {
        let (label, state, operators) = match (scenario, state_path) {
            (Some(id), None) => {
                let id: ScenarioId = id.parse().map_err(CliError::input_from)?;
                let theta = theta
                    .ok_or_else(|| CliError::Input("--theta is required with --scenario".into()))?;
                let (state, _) = unibounds::scenario_state(id, theta).map_err(math)?;
                let ops = unibounds::scenario_operators::<f64>(id).map_err(math)?;
                (format!("{id} at theta = {theta}"), state, ops)
            }
            (None, Some(path)) => {
                if op_paths.is_empty() {
                    return Err(CliError::Input("--ops is required with --state".into()));
                }
                let state = fileio::parse_file(path)?.into_state(tol)?;
                let ops = op_paths
                    .iter()
                    .map(|p| fileio::parse_file(p)?.into_operator())
                    .collect::<CliResult<Vec<_>>>()?;
                (path.display().to_string(), state, ops)
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Input(
                    "--scenario and --state are mutually exclusive".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Input(
                    "either --scenario or --state is required".into(),
                ))
            }
        };
        if operators.len() < 2 || operators.len() > 3 {
            return Err(CliError::Input(format!(
                "expected two or three operators, got {}",
                operators.len()
            )));
        }
        for (k, op) in operators.iter().enumerate() {
            if op.rows() != state.dim() || op.cols() != state.dim() {
                return Err(CliError::Math(format!(
                    "operator {k} is {}x{} but the state has dimension {}",
                    op.rows(),
                    op.cols(),
                    state.dim()
                )));
            }
            if !op.is_unitary(tol.max(1e-12)).map_err(math)? {
                let dev = op.unitarity_deviation().map_err(math)?;
                return Err(CliError::Math(format!(
                    "operator {k} is not unitary (deviation {dev:.3e})"
                )));
            }
        }
        Ok(Self {
            label,
            state,
            operators,
        })
    }

    fn pair(&self) -> CliResult<PairContext<f64>> {
        PairContext::from_state(&self.operators[0], &self.operators[1], &self.state).map_err(math)
    }

    fn triple(&self) -> CliResult<TripleContext<f64>> {
        if self.operators.len() < 3 {
            return Err(CliError::Math("this bound needs three operators".into()));
        }
        TripleContext::from_state(
            &self.operators[0],
            &self.operators[1],
            &self.operators[2],
            &self.state,
        )
        .map_err(math)
    }

    fn variances(&self) -> CliResult<Vec<f64>> {
        self.operators
            .iter()
            .map(|op| variance(op, &self.state).map_err(math))
            .collect()
    }
}

#[derive(Debug, Serialize)]
struct EvalRow {
    kind: &'static str,
    name: String,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinate: Option<String>,
}

fn eval_bound(inst: &Instance, sel: BoundSelector) -> CliResult<EvalRow> {
    let pair = inst.pair()?;
    let n = pair.len();
    let (value, coordinate) = match sel {
        BoundSelector::Product => {
            let vs = inst.variances()?;
            let coord = if inst.operators.len() >= 3 {
                "M(0,1,0)"
            } else {
                "S(1,0)"
            };
            (vs.iter().product(), Some(coord.to_string()))
        }
        BoundSelector::I(d) => {
            let v = bound_i(&pair, d).map_err(math)?;
            let coord = if d == 1 {
                "S(1,0)".to_string()
            } else {
                format!("S({d},{})", d - 1)
            };
            (v, Some(coord))
        }
        BoundSelector::I1Prime => {
            let v = bound_i1_prime(&pair).map_err(math)?;
            (v, Some("refines S(1,0)".to_string()))
        }
        BoundSelector::S { p, q } => {
            let v = bound_s(&pair, p, q).map_err(math)?;
            (v, Some(format!("S({p},{q})")))
        }
        BoundSelector::M { t, p, q, axis } => {
            let tctx = inst.triple()?;
            match axis {
                Some(a) => {
                    let v = bound_m(&tctx, MCoordinate::new(t, p, q, a)).map_err(math)?;
                    (v, Some(format!("M({t},{p},{q}) axis {}", a.label())))
                }
                None => {
                    let (v, a) = bound_m_max(&tctx, t, p, q).map_err(math)?;
                    (v, Some(format!("M({t},{p},{q}) max, axis {}", a.label())))
                }
            }
        }
        BoundSelector::Yu(d) => {
            if inst.operators.len() < 3 {
                return Err(CliError::Math("yu bounds need three operators".into()));
            }
            if d < 1 || d > n {
                return Err(CliError::Math(format!(
                    "yu depth {d} out of range for {n} amplitudes"
                )));
            }
            let ab = pair;
            let bc = PairContext::from_state(&inst.operators[1], &inst.operators[2], &inst.state)
                .map_err(math)?;
            let ac = PairContext::from_state(&inst.operators[0], &inst.operators[2], &inst.state)
                .map_err(math)?;
            let v = yu_triple_bound(&ab, &bc, &ac, d).map_err(math)?;
            (v, Some(format!("geometric mean at depth {d}")))
        }
    };
    Ok(EvalRow {
        kind: "bound",
        name: sel.to_string(),
        value,
        coordinate,
    })
}

fn render_rows(rows: &[EvalRow], format: OutputFormat, header: &str) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "{header}");
            for r in rows {
                let _ = write!(out, "  {:<12} {:>24.16e}", r.name, r.value);
                if let Some(c) = &r.coordinate {
                    let _ = write!(out, "   [{c}]");
                }
                let _ = writeln!(out);
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "kind,name,value,coordinate");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{:.16e},{}",
                    r.kind,
                    r.name,
                    r.value,
                    r.coordinate.as_deref().unwrap_or("")
                );
            }
        }
        OutputFormat::JsonLines => {
            for r in rows {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(r).expect("serializable row")
                );
            }
        }
    }
    out
}

/// `eval`: variances, the product, and each requested bound.
#[allow(clippy::too_many_arguments)]
pub fn cmd_eval(
    scenario: Option<&str>,
    theta: Option<f64>,
    state_path: Option<&Path>,
    op_paths: &[PathBuf],
    bounds: &str,
    tol: f64,
    format: OutputFormat,
) -> CliResult<String> {
    let inst = Instance::load(scenario, theta, state_path, op_paths, tol)?;
    let selectors = BoundSelector::parse_list(bounds)?;
    let mut rows = Vec::new();
    let names = ["A", "B", "C"];
    for (k, op) in inst.operators.iter().enumerate() {
        let e = expectation(op, &inst.state).map_err(math)?;
        let v = variance(op, &inst.state).map_err(math)?;
        rows.push(EvalRow {
            kind: "variance",
            name: format!("var({})", names[k]),
            value: v,
            coordinate: Some(format!("expectation {:.6}{:+.6}i", e.re, e.im)),
        });
    }
    let vs = inst.variances()?;
    rows.push(EvalRow {
        kind: "product",
        name: "product".into(),
        value: vs.iter().product(),
        coordinate: None,
    });
    for sel in selectors {
        if sel == BoundSelector::Product {
            continue;
        }
        rows.push(eval_bound(&inst, sel)?);
    }
    Ok(render_rows(&rows, format, &inst.label))
}

fn one_line(perm: &Permutation) -> String {
    let body: Vec<String> = perm.image().iter().map(|&v| (v + 1).to_string()).collect();
    format!("({})", body.join(" "))
}

#[derive(Debug, Serialize)]
struct PermReport {
    bound: String,
    strategy: String,
    identity_value: f64,
    max_value: f64,
    improvement: f64,
    argmax: Vec<String>,
    evaluated: u64,
}

/// `permmax`: maximize one bound over index relabelings.
#[allow(clippy::too_many_arguments)]
pub fn cmd_permmax(
    scenario: Option<&str>,
    theta: Option<f64>,
    state_path: Option<&Path>,
    op_paths: &[PathBuf],
    bound: &str,
    strategy: Strategy,
    convention: PermConvention,
    tol: f64,
    format: OutputFormat,
) -> CliResult<String> {
    let inst = Instance::load(scenario, theta, state_path, op_paths, tol)?;
    let sel: BoundSelector = bound.parse()?;
    let search_err = |err: unibounds::Error| match err {
        unibounds::Error::SearchSpaceTooLarge { .. } => {
            CliError::Math(format!("{err}; use --strategy sampled with --samples"))
        }
        other => CliError::Math(other.to_string()),
    };
    let (identity_value, result): (f64, PermSearchResult<f64>) = match sel {
        BoundSelector::I1Prime => {
            let pair = inst.pair()?;
            let id = bound_i1_prime(&pair).map_err(math)?;
            let res = perm_max_i1_prime_with(&pair, strategy, convention).map_err(search_err)?;
            (id, res)
        }
        BoundSelector::S { p, q } => {
            let pair = inst.pair()?;
            let id = bound_s(&pair, p, q).map_err(math)?;
            let res = perm_max_s(&pair, p, q, strategy).map_err(search_err)?;
            (id, res)
        }
        BoundSelector::M {
            t,
            p,
            q,
            axis: None,
        } => {
            let tctx = inst.triple()?;
            let (id, _) = bound_m_max(&tctx, t, p, q).map_err(math)?;
            let res = perm_max_m(&tctx, t, p, q, strategy).map_err(search_err)?;
            (id, res)
        }
        other => {
            return Err(CliError::Input(format!(
                "permutation search supports I1prime, S<p>-<q>, and M<t>-<p>-<q>; got '{other}'"
            )))
        }
    };
    let report = PermReport {
        bound: sel.to_string(),
        strategy: match strategy {
            Strategy::Exhaustive => "exhaustive".into(),
            Strategy::Sampled { seed, samples } => {
                format!("sampled (seed {seed}, {samples} samples)")
            }
        },
        identity_value,
        max_value: result.value,
        improvement: result.value - identity_value,
        argmax: result.argmax.iter().map(one_line).collect(),
        evaluated: result.evaluated,
    };
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "{}", inst.label);
            let _ = writeln!(out, "  bound          {}", report.bound);
            let _ = writeln!(out, "  strategy       {}", report.strategy);
            let _ = writeln!(out, "  identity value {:.16e}", report.identity_value);
            let _ = writeln!(out, "  maximum        {:.16e}", report.max_value);
            let _ = writeln!(out, "  improvement    {:.16e}", report.improvement);
            let _ = writeln!(out, "  argmax         {}", report.argmax.join(" "));
            let _ = writeln!(out, "  evaluated      {}", report.evaluated);
        }
        OutputFormat::Csv => {
            let _ = writeln!(
                out,
                "bound,identity_value,max_value,improvement,argmax,evaluated"
            );
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{},{}",
                report.bound,
                report.identity_value,
                report.max_value,
                report.improvement,
                report.argmax.join(" "),
                report.evaluated
            );
        }
        OutputFormat::JsonLines => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("serializable")
            );
        }
    }
    Ok(out)
}

/// `sweep`: write a figure's CSV and companion plot script.
pub fn cmd_sweep(figure: &str, grid: &GridSpec, out: Option<&Path>) -> CliResult<String> {
    let fig: FigureId = figure.parse()?;
    let sweep = figure_sweep(fig, grid)?;
    // An existing directory wins over the extension heuristic, so dotted
    // directory names (mktemp's tmp.XXXX) still work as --out targets.
    let csv_path: PathBuf = match out {
        Some(p) if p.is_dir() => p.join(format!("{fig}.csv")),
        Some(p) if p.extension().is_some() => p.to_path_buf(),
        Some(dir) => dir.join(format!("{fig}.csv")),
        None => PathBuf::from(format!("{fig}.csv")),
    };
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
        }
    }
    fs::write(&csv_path, sweep.to_csv())
        .map_err(|e| CliError::Io(format!("{}: {e}", csv_path.display())))?;
    let script_path = csv_path.with_extension("py");
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    fs::write(&script_path, plot_script(fig, &csv_name))
        .map_err(|e| CliError::Io(format!("{}: {e}", script_path.display())))?;
    Ok(format!(
        "{fig}: {} points x {} columns -> {} (plot script {})\n",
        sweep.grid.len(),
        sweep.columns.len(),
        csv_path.display(),
        script_path.display()
    ))
}

fn render_verify(report: &VerifyReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "{} {:<55} instances {:>6}  worst {:.3e}{}",
                    if c.passed() { "ok  " } else { "FAIL" },
                    c.name,
                    c.instances,
                    c.worst,
                    c.first_failure
                        .as_deref()
                        .map(|f| format!("  ({f})"))
                        .unwrap_or_default()
                );
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "check,passed,instances,failures,worst");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.16e}",
                    c.name,
                    c.passed(),
                    c.instances,
                    c.failures,
                    c.worst
                );
            }
        }
        OutputFormat::JsonLines => {
            #[derive(Serialize)]
            struct Row<'a> {
                check: &'a str,
                passed: bool,
                instances: usize,
                failures: usize,
                worst: f64,
                first_failure: Option<&'a str>,
            }
            for c in &report.checks {
                let row = Row {
                    check: &c.name,
                    passed: c.passed(),
                    instances: c.instances,
                    failures: c.failures,
                    worst: c.worst,
                    first_failure: c.first_failure.as_deref(),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&row).expect("serializable")
                );
            }
        }
    }
    out
}

/// `verify`: run an invariant suite; nonzero exit and a replayable artifact
/// on failure.
#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    scenario: Option<&str>,
    random_dim: Option<usize>,
    trials: usize,
    mixed: bool,
    grid: &GridSpec,
    seed: u64,
    tol: f64,
    out_dir: Option<&Path>,
    format: OutputFormat,
) -> CliResult<String> {
    if tol < 0.0 || !tol.is_finite() {
        return Err(CliError::Input(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    let report = match (scenario, random_dim) {
        (Some(id), None) => {
            let id: ScenarioId = id.parse().map_err(CliError::input_from)?;
            scenario_suite(id, grid, tol)?
        }
        (None, Some(dim)) => random_suite(dim, trials, seed, tol, mixed)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "--scenario and --random are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Input(
                "either --scenario or --random is required".into(),
            ))
        }
    };

    let mut out = render_verify(&report, format);
    if report.passed() {
        if format == OutputFormat::Text {
            let _ = writeln!(out, "all checks passed");
        }
        return Ok(out);
    }

    if let Some(artifact) = &report.artifact {
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let state_path = dir.join("failure_state.txt");
            fs::write(&state_path, &artifact.state_text)
                .map_err(|e| CliError::Io(format!("{}: {e}", state_path.display())))?;
            let mut op_args = Vec::new();
            for (k, text) in artifact.operator_texts.iter().enumerate() {
                let p = dir.join(format!("failure_op_{}.txt", (b'a' + k as u8) as char));
                fs::write(&p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                op_args.push(p.display().to_string());
            }
            let replay = format!(
                "unibounds eval --state {} --ops {} --bounds product,I2\n",
                state_path.display(),
                op_args.join(",")
            );
            let replay_path = dir.join("replay.txt");
            fs::write(&replay_path, &replay)
                .map_err(|e| CliError::Io(format!("{}: {e}", replay_path.display())))?;
            let _ = writeln!(
                out,
                "failing instance ({}) written to {}",
                artifact.context,
                dir.display()
            );
        } else {
            let _ = writeln!(out, "failing instance: {}", artifact.context);
        }
    }
    print!("{out}");
    Err(CliError::Verification("one or more checks failed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_reports_reference_values() {
        let out = cmd_eval(
            Some("ex1"),
            Some(std::f64::consts::FRAC_PI_4),
            None,
            &[],
            "I1prime,I2",
            1e-10,
            OutputFormat::JsonLines,
        )
        .unwrap();
        let mut product = None;
        let mut i1p = None;
        let mut i2 = None;
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            match v["name"].as_str().unwrap() {
                "product" => product = v["value"].as_f64(),
                "I1prime" => i1p = v["value"].as_f64(),
                "I2" => i2 = v["value"].as_f64(),
                _ => {}
            }
        }
        assert!((product.unwrap() - 0.5625).abs() < 1e-12);
        assert!((i1p.unwrap() - 0.515625).abs() < 1e-12);
        assert!((i2.unwrap() - 0.375).abs() < 1e-12);
    }

    #[test]
    fn eval_rejects_m_bounds_for_pairs() {
        let err = cmd_eval(
            Some("ex1"),
            Some(0.5),
            None,
            &[],
            "M1-2-1",
            1e-10,
            OutputFormat::Text,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn permmax_improvement_is_nonnegative() {
        let out = cmd_permmax(
            Some("ex1"),
            Some(std::f64::consts::FRAC_PI_4),
            None,
            &[],
            "I1prime",
            Strategy::Exhaustive,
            PermConvention::Consistent,
            1e-10,
            OutputFormat::JsonLines,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!(v["improvement"].as_f64().unwrap() >= 0.0);
        assert_eq!(v["evaluated"].as_u64().unwrap(), 36);
    }
}
