//! Parameter sweeps over arc weights and preparation angles.
//!
//! Each grid point is evaluated three ways (closed form, exact statevector,
//! optionally shots) and the rows are returned in grid order regardless of
//! how they were scheduled.

use std::io::{self, Write};

use crate::analytic::{entanglement_analytic, entanglement_from_bloch};
use crate::angle::parse_angle;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::GraphStateSpec;
use crate::protocol::run_protocol;
use crate::rng::derive_seed;
use crate::statevector::prepare_state;

/// Maximum allowed `|E_analytic - E_exact|` on any emitted row.
pub const ANALYTIC_EXACT_TOL: f64 = 1e-10;

/// One swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    /// Weight of arc `from -> to` (inserted if the graph lacks it).
    Arc {
        from: usize,
        to: usize,
    },
    Alpha(usize),
    Theta(usize),
    AllAlpha,
    AllTheta,
}

impl SweepTarget {
    /// Parses `arc:i:j`, `alpha:k`, `theta:k`, `alpha:*` or `theta:*`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSweep(format!("unknown sweep target `{text}`"));
        let parts: Vec<&str> = text.trim().split(':').collect();
        let index = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["arc", i, j] => Ok(SweepTarget::Arc {
                from: index(i)?,
                to: index(j)?,
            }),
            ["alpha", "*"] => Ok(SweepTarget::AllAlpha),
            ["theta", "*"] => Ok(SweepTarget::AllTheta),
            ["alpha", k] => Ok(SweepTarget::Alpha(index(k)?)),
            ["theta", k] => Ok(SweepTarget::Theta(index(k)?)),
            _ => Err(bad()),
        }
    }

    /// Writes `value` into `spec`.
    pub fn apply(&self, spec: &mut GraphStateSpec, value: f64) -> Result<()> {
        match *self {
            SweepTarget::Arc { from, to } => spec.set_arc_weight(from, to, value),
            SweepTarget::Alpha(k) => {
                spec.prep_mut(k)?.alpha = value;
                Ok(())
            }
            SweepTarget::Theta(k) => {
                spec.prep_mut(k)?.theta = value;
                Ok(())
            }
            SweepTarget::AllAlpha => {
                for k in 0..spec.num_qubits() {
                    spec.prep_mut(k)?.alpha = value;
                }
                Ok(())
            }
            SweepTarget::AllTheta => {
                for k in 0..spec.num_qubits() {
                    spec.prep_mut(k)?.theta = value;
                }
                Ok(())
            }
        }
    }
}

impl std::fmt::Display for SweepTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepTarget::Arc { from, to } => write!(f, "arc:{from}:{to}"),
            SweepTarget::Alpha(k) => write!(f, "alpha:{k}"),
            SweepTarget::Theta(k) => write!(f, "theta:{k}"),
            SweepTarget::AllAlpha => f.write_str("alpha:*"),
            SweepTarget::AllTheta => f.write_str("theta:*"),
        }
    }
}

/// One- or two-dimensional grid; both axes share `from`, `to` and `step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub targets: Vec<SweepTarget>,
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl SweepSpec {
    /// `[0, pi]` in steps of `pi/16`.
    pub fn default_range(targets: Vec<SweepTarget>) -> Self {
        Self {
            targets,
            from: 0.0,
            to: std::f64::consts::PI,
            step: std::f64::consts::PI / 16.0,
        }
    }

    pub fn parse_range(
        targets: Vec<SweepTarget>,
        from: &str,
        to: &str,
        step: &str,
    ) -> Result<Self> {
        let spec = Self {
            targets,
            from: parse_angle(from)?,
            to: parse_angle(to)?,
            step: parse_angle(step)?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::InvalidSweep("no sweep targets".into()));
        }
        if self.targets.len() > 2 {
            return Err(Error::InvalidSweep(format!(
                "at most 2 targets supported, got {}",
                self.targets.len()
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidSweep("step must be positive".into()));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || self.from > self.to {
            return Err(Error::InvalidSweep("require from <= to".into()));
        }
        if self.axis_values().len() > 1_000_000 {
            return Err(Error::InvalidSweep("grid too large".into()));
        }
        Ok(())
    }

    /// Values along one axis, both endpoints included.
    pub fn axis_values(&self) -> Vec<f64> {
        let span = (self.to - self.from) / self.step;
        let n = (span + 1e-9).floor().min(1e7) as usize + 1;
        (0..n)
            .map(|i| {
                let v = self.from + i as f64 * self.step;
                if (v - self.to).abs() <= 1e-9 * self.step {
                    self.to
                } else {
                    v
                }
            })
            .collect()
    }

    /// Grid points in row-major order (first target outermost).
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let axis = self.axis_values();
        match self.targets.len() {
            1 => axis.iter().map(|&v| vec![v]).collect(),
            _ => axis
                .iter()
                .flat_map(|&a| axis.iter().map(move |&b| vec![a, b]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub e_analytic: f64,
    pub e_exact: f64,
    pub e_shots: Option<f64>,
    pub stderr: Option<f64>,
    pub stderr_unreliable: bool,
}

/// Shot settings for a sweep. Grid point `i` uses seed `derive_seed(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotConfig {
    pub shots: u64,
    pub seed: u64,
}

/// Evaluates every grid point of `sweep` for qubit `k` of `base`.
///
/// Fails with [`Error::CrossCheck`] if the closed form and the statevector
/// disagree by more than [`ANALYTIC_EXACT_TOL`] anywhere.
pub fn run_sweep(
    base: &GraphStateSpec,
    k: usize,
    sweep: &SweepSpec,
    shots: Option<ShotConfig>,
    exec: Exec,
) -> Result<Vec<SweepRow>> {
    sweep.validate()?;
    base.check_vertex(k)?;
    if let Some(cfg) = shots {
        if cfg.shots == 0 {
            return Err(Error::ZeroShots);
        }
    }
    // Surface bad targets before evaluating anything.
    let mut probe = base.clone();
    for t in &sweep.targets {
        t.apply(&mut probe, 0.0)?;
    }

    let grid = sweep.grid();
    let rows = exec.map_indexed(grid.len(), |idx| {
        let params = &grid[idx];
        let mut spec = base.clone();
        for (t, &v) in sweep.targets.iter().zip(params) {
            t.apply(&mut spec, v)?;
        }
        evaluate_point(
            &spec,
            k,
            params.clone(),
            shots.map(|c| (c.shots, derive_seed(c.seed, idx as u64))),
        )
    });
    rows.into_iter().collect()
}

fn evaluate_point(
    spec: &GraphStateSpec,
    k: usize,
    params: Vec<f64>,
    shots: Option<(u64, u64)>,
) -> Result<SweepRow> {
    let e_analytic = entanglement_analytic(spec, k)?.value;
    let e_exact = entanglement_from_bloch(&prepare_state(spec)?.reduced_bloch(k)?);
    if (e_analytic - e_exact).abs() > ANALYTIC_EXACT_TOL {
        return Err(Error::CrossCheck(format!(
            "E_analytic = {e_analytic} but E_exact = {e_exact} at {params:?}"
        )));
    }
    let (e_shots, stderr, stderr_unreliable) = match shots {
        Some((n, seed)) => {
            let out = run_protocol(spec, k, n, seed)?;
            (
                Some(out.estimate.value),
                out.estimate.stderr,
                out.stderr_unreliable,
            )
        }
        None => (None, None, false),
    };
    Ok(SweepRow {
        params,
        e_analytic,
        e_exact,
        e_shots,
        stderr,
        stderr_unreliable,
    })
}

/// Formats `x` with 12 significant digits in plain decimal notation.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            format!("{x}")
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 40) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999.. -> 10.00..).
    let carried = s
        .parse::<f64>()
        .is_ok_and(|r| r.abs() >= 10f64.powi(magnitude + 1));
    if carried && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

/// Writes rows as CSV. The header is `param1[,param2],E_analytic,E_exact`,
/// followed by `,E_shots,stderr` when shot estimates are present.
pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    let n_params = rows.first().map_or(1, |r| r.params.len());
    let with_shots = rows.iter().any(|r| r.e_shots.is_some());

    let mut header: Vec<String> = (1..=n_params).map(|i| format!("param{i}")).collect();
    header.push("E_analytic".into());
    header.push("E_exact".into());
    if with_shots {
        header.push("E_shots".into());
        header.push("stderr".into());
    }
    writeln!(out, "{}", header.join(","))?;

    for row in rows {
        let mut fields: Vec<String> = row.params.iter().map(|&v| format_sig12(v)).collect();
        fields.push(format_sig12(row.e_analytic));
        fields.push(format_sig12(row.e_exact));
        if with_shots {
            fields.push(row.e_shots.map(format_sig12).unwrap_or_default());
            fields.push(row.stderr.map(format_sig12).unwrap_or_default());
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}
