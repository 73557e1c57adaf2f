//! Parsed command-line value types: grids, bound selectors, output formats.

use std::fmt;
use std::str::FromStr;

use unibounds::Axis;

use crate::error::{CliError, CliResult};

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    /// 629 points over [0, 2π] at step 0.01. The stop is a grid endpoint,
    /// not a stand-in for 2π itself.
    #[allow(clippy::approx_constant)]
    pub const DEFAULT: GridSpec = GridSpec {
        start: 0.0,
        stop: 6.28,
        step: 0.01,
    };

    pub fn new(start: f64, stop: f64, step: f64) -> CliResult<Self> {
        if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
            return Err(CliError::Input("grid values must be finite".into()));
        }
        if step <= 0.0 {
            return Err(CliError::Input(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if stop < start + step {
            return Err(CliError::Input(
                "grid must contain at least two points".into(),
            ));
        }
        Ok(Self { start, stop, step })
    }

    /// The grid points, endpoint included up to half a step of roundoff.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        let mut k = 0u64;
        loop {
            let theta = self.start + self.step * k as f64;
            if theta > self.stop + self.step * 1e-9 {
                break;
            }
            pts.push(theta);
            k += 1;
        }
        pts
    }
}

impl FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Input(format!(
                "grid must be start:stop:step, got '{s}'"
            )));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| CliError::Input(format!("bad grid number '{p}'")))
            })
            .collect::<CliResult<_>>()?;
        GridSpec::new(nums[0], nums[1], nums[2])
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// One requested bound: `product`, `I<d>`, `I1prime`, `S<p>-<q>`,
/// `M<t>-<p>-<q>[-<axis>]`, or `yu<d>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundSelector {
    Product,
    I(usize),
    I1Prime,
    S {
        p: usize,
        q: usize,
    },
    M {
        t: usize,
        p: usize,
        q: usize,
        axis: Option<Axis>,
    },
    Yu(usize),
}

impl BoundSelector {
    /// Parse a comma-separated list.
    pub fn parse_list(s: &str) -> CliResult<Vec<Self>> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }

    pub fn needs_three_operators(&self) -> bool {
        matches!(self, BoundSelector::M { .. } | BoundSelector::Yu(_))
    }
}

fn parse_axis(s: &str) -> CliResult<Axis> {
    match s {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        "z" => Ok(Axis::Z),
        other => Err(CliError::Input(format!("unknown axis '{other}'"))),
    }
}

impl FromStr for BoundSelector {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Input(format!("unknown bound selector '{s}'"));
        if s == "product" {
            return Ok(BoundSelector::Product);
        }
        if s == "I1prime" {
            return Ok(BoundSelector::I1Prime);
        }
        if let Some(rest) = s.strip_prefix("yu") {
            return rest.parse().map(BoundSelector::Yu).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('I') {
            return rest.parse().map(BoundSelector::I).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('S') {
            let parts: Vec<&str> = rest.split('-').collect();
            if parts.len() != 2 {
                return Err(bad());
            }
            let p = parts[0].parse().map_err(|_| bad())?;
            let q = parts[1].parse().map_err(|_| bad())?;
            return Ok(BoundSelector::S { p, q });
        }
        if let Some(rest) = s.strip_prefix('M') {
            let parts: Vec<&str> = rest.split('-').collect();
            if parts.len() != 3 && parts.len() != 4 {
                return Err(bad());
            }
            let t = parts[0].parse().map_err(|_| bad())?;
            let p = parts[1].parse().map_err(|_| bad())?;
            let q = parts[2].parse().map_err(|_| bad())?;
            let axis = if parts.len() == 4 {
                Some(parse_axis(parts[3])?)
            } else {
                None
            };
            return Ok(BoundSelector::M { t, p, q, axis });
        }
        Err(bad())
    }
}

impl fmt::Display for BoundSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSelector::Product => write!(f, "product"),
            BoundSelector::I(d) => write!(f, "I{d}"),
            BoundSelector::I1Prime => write!(f, "I1prime"),
            BoundSelector::S { p, q } => write!(f, "S{p}-{q}"),
            BoundSelector::M { t, p, q, axis } => {
                write!(f, "M{t}-{p}-{q}")?;
                if let Some(a) = axis {
                    write!(f, "-{}", a.label())?;
                }
                Ok(())
            }
            BoundSelector::Yu(d) => write!(f, "yu{d}"),
        }
    }
}

/// Report format on stdout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}
