//! θ sweeps over the built-in scenarios: the data series behind each
//! figure, CSV emission with lossless doubles, and a companion plot script.

use std::fmt;
use std::str::FromStr;

use unibounds::pair::{bound_i, bound_i1_prime, bound_s, PairContext};
use unibounds::triple::{bound_m, bound_m_max, yu_triple_bound, Axis, MCoordinate, TripleContext};
use unibounds::{scenario_operators, scenario_state, variance, ScenarioId};

use crate::config::GridSpec;
use crate::error::{CliError, CliResult};

/// How a column participates in validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    /// The variance product every bound must stay below.
    Product,
    /// A lower bound on the product.
    Bound,
    /// A signed difference of two series; unconstrained.
    Diff,
    /// Bookkeeping (e.g. pre-normalization norms); unconstrained.
    Aux,
}

#[derive(Debug, Clone)]
pub struct SweepColumn {
    pub name: String,
    pub kind: ColumnKind,
    pub values: Vec<f64>,
}

/// A finished sweep: the grid plus named series of equal length.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub columns: Vec<SweepColumn>,
}

impl SweepResult {
    /// Validate lengths and the bound-below-product invariant (to 1e-9).
    pub fn new(parameter: &str, grid: Vec<f64>, columns: Vec<SweepColumn>) -> CliResult<Self> {
        for col in &columns {
            if col.values.len() != grid.len() {
                return Err(CliError::Math(format!(
                    "column '{}' has {} values for {} grid points",
                    col.name,
                    col.values.len(),
                    grid.len()
                )));
            }
        }
        if let Some(product) = columns.iter().find(|c| c.kind == ColumnKind::Product) {
            for col in columns.iter().filter(|c| c.kind == ColumnKind::Bound) {
                for (k, (&b, &p)) in col.values.iter().zip(&product.values).enumerate() {
                    if b > p + 1e-9 {
                        return Err(CliError::Math(format!(
                            "column '{}' exceeds the product at {parameter} = {}: {b} > {p}",
                            col.name, grid[k]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            parameter: parameter.to_string(),
            grid,
            columns,
        })
    }

    pub fn column(&self, name: &str) -> Option<&SweepColumn> {
        self.columns.iter().find(|c| c.name == name)
    }

    /// Render as CSV: header row, then one row per grid point with every
    /// value printed to 17 significant digits (lossless for f64).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.parameter);
        for col in &self.columns {
            out.push(',');
            out.push_str(&col.name);
        }
        out.push('\n');
        for (k, theta) in self.grid.iter().enumerate() {
            out.push_str(&format!("{theta:.16e}"));
            for col in &self.columns {
                out.push_str(&format!(",{:.16e}", col.values[k]));
            }
            out.push('\n');
        }
        out
    }
}

/// Parse a CSV produced by [`SweepResult::to_csv`]: header names plus
/// column-major data.
pub fn parse_csv(text: &str) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty CSV".into()))?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if names.is_empty() {
        return Err(CliError::Input("CSV header has no columns".into()));
    }
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (row_idx, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != names.len() {
            return Err(CliError::Input(format!(
                "CSV row {} has {} cells, expected {}",
                row_idx + 2,
                cells.len(),
                names.len()
            )));
        }
        for (c, cell) in cells.iter().enumerate() {
            let v: f64 = cell
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad CSV number '{cell}'")))?;
            columns[c].push(v);
        }
    }
    Ok((names, columns))
}

/// The figure-reproduction sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn scenario(self) -> ScenarioId {
        match self {
            FigureId::Fig1 => ScenarioId::Ex1,
            FigureId::Fig2 => ScenarioId::Ex2,
            FigureId::Fig4 => ScenarioId::Ex3(3),
            FigureId::Fig5 => ScenarioId::Ex3(4),
            FigureId::Fig6 | FigureId::Fig7 => ScenarioId::Ex4,
        }
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            "fig7" => Ok(FigureId::Fig7),
            other => Err(CliError::Input(format!(
                "unknown figure '{other}' (expected fig1, fig2, fig4, fig5, fig6, or fig7)"
            ))),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        };
        write!(f, "{s}")
    }
}

fn math(err: unibounds::Error) -> CliError {
    CliError::math_from(err)
}

/// Series names for a pair figure: product, I2, I1prime, and their gap.
fn pair_figure(id: ScenarioId, grid: &[f64]) -> CliResult<SweepResult> {
    let ops = scenario_operators::<f64>(id).map_err(math)?;
    let mut product = Vec::with_capacity(grid.len());
    let mut i2 = Vec::with_capacity(grid.len());
    let mut i1p = Vec::with_capacity(grid.len());
    let mut diff = Vec::with_capacity(grid.len());
    for &theta in grid {
        let (state, _) = scenario_state(id, theta).map_err(math)?;
        let ctx = PairContext::from_state(&ops[0], &ops[1], &state).map_err(math)?;
        let va = variance(&ops[0], &state).map_err(math)?;
        let vb = variance(&ops[1], &state).map_err(math)?;
        let b2 = bound_i(&ctx, 2).map_err(math)?;
        let b1p = bound_i1_prime(&ctx).map_err(math)?;
        product.push(va * vb);
        i2.push(b2);
        i1p.push(b1p);
        diff.push(b1p - b2);
    }
    SweepResult::new(
        "theta",
        grid.to_vec(),
        vec![
            SweepColumn {
                name: "product".into(),
                kind: ColumnKind::Product,
                values: product,
            },
            SweepColumn {
                name: "I2".into(),
                kind: ColumnKind::Bound,
                values: i2,
            },
            SweepColumn {
                name: "I1prime".into(),
                kind: ColumnKind::Bound,
                values: i1p,
            },
            SweepColumn {
                name: "diff_I1prime_minus_I2".into(),
                kind: ColumnKind::Diff,
                values: diff,
            },
        ],
    )
}

/// Series for an S-chain figure: product plus every S cell of the lattice.
fn chain_figure(d: usize, grid: &[f64]) -> CliResult<SweepResult> {
    let id = ScenarioId::Ex3(d);
    let ops = scenario_operators::<f64>(id).map_err(math)?;
    let cells: Vec<(usize, usize)> = unibounds::s_coordinates(d).into_iter().skip(1).collect();
    let mut product = Vec::with_capacity(grid.len());
    let mut series: Vec<Vec<f64>> = vec![Vec::with_capacity(grid.len()); cells.len()];
    for &theta in grid {
        let (state, _) = scenario_state(id, theta).map_err(math)?;
        let ctx = PairContext::from_state(&ops[0], &ops[1], &state).map_err(math)?;
        let va = variance(&ops[0], &state).map_err(math)?;
        let vb = variance(&ops[1], &state).map_err(math)?;
        product.push(va * vb);
        for (k, &(p, q)) in cells.iter().enumerate() {
            series[k].push(bound_s(&ctx, p, q).map_err(math)?);
        }
    }
    let mut columns = vec![SweepColumn {
        name: "product".into(),
        kind: ColumnKind::Product,
        values: product,
    }];
    for (k, &(p, q)) in cells.iter().enumerate() {
        columns.push(SweepColumn {
            name: format!("S{p}{q}"),
            kind: ColumnKind::Bound,
            values: std::mem::take(&mut series[k]),
        });
    }
    SweepResult::new("theta", grid.to_vec(), columns)
}

/// Series for the three-operator figures. `axis_max` selects the Fig-7 view
/// (axis maxima) over the Fig-6 one (z axis only).
fn triple_figure(axis_max: bool, grid: &[f64]) -> CliResult<SweepResult> {
    let id = ScenarioId::Ex4;
    let ops = scenario_operators::<f64>(id).map_err(math)?;
    let coords = [(1usize, 2usize, 1usize), (1, 3, 1), (1, 3, 2)];
    let mut product = Vec::with_capacity(grid.len());
    let mut m_series: Vec<Vec<f64>> = vec![Vec::with_capacity(grid.len()); coords.len()];
    let mut m121z = Vec::with_capacity(grid.len());
    let mut yu2 = Vec::with_capacity(grid.len());
    let mut yu3 = Vec::with_capacity(grid.len());
    let mut prenorm = Vec::with_capacity(grid.len());
    for &theta in grid {
        let (state, prenorm_sq) = scenario_state(id, theta).map_err(math)?;
        let ctx = TripleContext::from_state(&ops[0], &ops[1], &ops[2], &state).map_err(math)?;
        let va = variance(&ops[0], &state).map_err(math)?;
        let vb = variance(&ops[1], &state).map_err(math)?;
        let vc = variance(&ops[2], &state).map_err(math)?;
        product.push(va * vb * vc);
        for (k, &(t, p, q)) in coords.iter().enumerate() {
            let value = if axis_max {
                bound_m_max(&ctx, t, p, q).map_err(math)?.0
            } else {
                bound_m(&ctx, MCoordinate::new(t, p, q, Axis::Z)).map_err(math)?
            };
            m_series[k].push(value);
        }
        m121z.push(bound_m(&ctx, MCoordinate::new(1, 2, 1, Axis::Z)).map_err(math)?);
        let ab = PairContext::from_state(&ops[0], &ops[1], &state).map_err(math)?;
        let bc = PairContext::from_state(&ops[1], &ops[2], &state).map_err(math)?;
        let ac = PairContext::from_state(&ops[0], &ops[2], &state).map_err(math)?;
        yu2.push(yu_triple_bound(&ab, &bc, &ac, 2).map_err(math)?);
        yu3.push(yu_triple_bound(&ab, &bc, &ac, 3).map_err(math)?);
        prenorm.push(prenorm_sq);
    }
    let mut columns = vec![SweepColumn {
        name: "product".into(),
        kind: ColumnKind::Product,
        values: product,
    }];
    for (k, &(t, p, q)) in coords.iter().enumerate() {
        let name = if axis_max {
            format!("M{t}{p}{q}")
        } else {
            format!("M{t}{p}{q}z")
        };
        columns.push(SweepColumn {
            name,
            kind: ColumnKind::Bound,
            values: std::mem::take(&mut m_series[k]),
        });
    }
    if axis_max {
        columns.push(SweepColumn {
            name: "M121z".into(),
            kind: ColumnKind::Bound,
            values: m121z,
        });
    }
    columns.push(SweepColumn {
        name: "yu_d2".into(),
        kind: ColumnKind::Bound,
        values: yu2,
    });
    columns.push(SweepColumn {
        name: "yu_d3".into(),
        kind: ColumnKind::Bound,
        values: yu3,
    });
    columns.push(SweepColumn {
        name: "prenorm_sq".into(),
        kind: ColumnKind::Aux,
        values: prenorm,
    });
    SweepResult::new("theta", grid.to_vec(), columns)
}

/// Evaluate one figure's series on the grid.
pub fn figure_sweep(fig: FigureId, grid: &GridSpec) -> CliResult<SweepResult> {
    let points = grid.points();
    match fig {
        FigureId::Fig1 => pair_figure(ScenarioId::Ex1, &points),
        FigureId::Fig2 => pair_figure(ScenarioId::Ex2, &points),
        FigureId::Fig4 => chain_figure(3, &points),
        FigureId::Fig5 => chain_figure(4, &points),
        FigureId::Fig6 => triple_figure(false, &points),
        FigureId::Fig7 => triple_figure(true, &points),
    }
}

/// A matplotlib script that reads only the CSV next to it.
pub fn plot_script(fig: FigureId, csv_name: &str) -> String {
    format!(
        r#"#!/usr/bin/env python3
"""Plot the {fig} sweep from {csv}."""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "{csv}"
with open(path, newline="") as fh:
    rows = list(csv.reader(fh))
header, data = rows[0], rows[1:]
cols = {{name: [float(r[i]) for r in data] for i, name in enumerate(header)}}

theta = cols.pop(header[0])
fig, ax = plt.subplots(figsize=(8, 5))
for name, values in cols.items():
    if name.startswith("diff"):
        ax.plot(theta, values, linestyle=":", label=name)
    elif name == "prenorm_sq":
        continue
    else:
        ax.plot(theta, values, label=name)
ax.axhline(0.0, color="gray", linewidth=0.5)
ax.set_xlabel(header[0])
ax.set_ylabel("bound value")
ax.set_title("{fig}")
ax.legend(fontsize=8)
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print(f"wrote {{out}}")
"#,
        fig = fig,
        csv = csv_name,
    )
}
