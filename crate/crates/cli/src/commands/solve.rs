//! `solve`: run the full predictor-corrector pipeline on a named dataset or
//! custom parameters, optionally sweeping the cycle period, and emit a
//! machine-readable JSON record.

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::Deserialize;
use std::path::PathBuf;

use specperiod::chemostat::{ChemostatParams, Rational};
use specperiod::error::Error as CoreError;
use specperiod::solver::{run_fgpc, CorrectorOpts, FgpcConfig, FgpcSolution, PredictorOpts};

use crate::output::{write_out, JsonRecord};
use crate::{EXIT_NONCONVERGENCE, EXIT_VALIDATION};

#[derive(Args)]
pub struct SolveArgs {
    /// Named dataset: d1 or d2.
    #[arg(long, conflicts_with = "config")]
    dataset: Option<String>,
    /// JSON config file (schema-validated; flags override its values).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Collocation size (even).
    #[arg(long)]
    n: Option<usize>,
    /// Edge-detection sample count.
    #[arg(long)]
    m: Option<usize>,
    /// Element degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
    /// Gegenbauer parameter.
    #[arg(long)]
    alpha: Option<f64>,
    /// Seed recorded with the output (reserved for randomized checks).
    #[arg(long)]
    seed: Option<u64>,
    /// Sweep the cycle period: start:step:end (hours).
    #[arg(long)]
    sweep_t: Option<String>,
    /// Trajectory samples in the record.
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// On-disk config schema; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    dataset: Option<String>,
    params: Option<FileParams>,
    n: Option<usize>,
    m: Option<usize>,
    degrees: Option<Vec<usize>>,
    alpha: Option<f64>,
    seed: Option<u64>,
    predictor: Option<FilePredictor>,
    corrector: Option<FileCorrector>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileParams {
    s_in: f64,
    mu_max: f64,
    k_s: f64,
    u_min: f64,
    u_max: f64,
    period: f64,
    /// Exact rational dilution rate as [numerator, denominator].
    u_bar: [i64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilePredictor {
    constraint_tol: Option<f64>,
    grad_tol: Option<f64>,
    max_outer: Option<usize>,
    max_inner: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCorrector {
    residual_tol: Option<f64>,
    max_iterations: Option<usize>,
}

struct Resolved {
    label: String,
    params: ChemostatParams,
    config: FgpcConfig,
    seed: u64,
}

fn resolve(args: &SolveArgs) -> Result<Resolved> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).context("config schema validation")?
        }
        None => FileConfig::default(),
    };
    let dataset = args.dataset.clone().or(file.dataset.clone());
    let (label, params) = match (dataset.as_deref(), &file.params) {
        (Some("d1"), None) => ("d1".to_string(), ChemostatParams::dataset_d1()),
        (Some("d2"), None) => ("d2".to_string(), ChemostatParams::dataset_d2()),
        (Some(other), None) => bail!("unknown dataset {other:?} (expected d1 or d2)"),
        (None, Some(p)) => (
            "custom".to_string(),
            ChemostatParams::new(
                p.s_in,
                p.mu_max,
                p.k_s,
                p.u_min,
                p.u_max,
                p.period,
                Rational::new(p.u_bar[0], p.u_bar[1]),
            )
            .map_err(|e| anyhow::anyhow!("{e}"))?,
        ),
        (Some(_), Some(_)) => bail!("dataset and custom params are mutually exclusive"),
        (None, None) => bail!("either --dataset or a config with dataset/params is required"),
    };
    let n = args.n.or(file.n).unwrap_or(100);
    let m = args.m.or(file.m).unwrap_or(100);
    let degrees = args.degrees.clone().or(file.degrees).unwrap_or_else(|| vec![16, 16, 4]);
    let alpha = args.alpha.or(file.alpha).unwrap_or(0.5);
    let mut config = FgpcConfig::new(n, m, degrees, alpha);
    if let Some(p) = &file.predictor {
        let mut o = PredictorOpts::default();
        if let Some(v) = p.constraint_tol {
            o.constraint_tol = v;
        }
        if let Some(v) = p.grad_tol {
            o.grad_tol = v;
        }
        if let Some(v) = p.max_outer {
            o.max_outer = v;
        }
        if let Some(v) = p.max_inner {
            o.max_inner = v;
        }
        config.predictor = o;
    }
    if let Some(c) = &file.corrector {
        let mut o = CorrectorOpts::default();
        if let Some(v) = c.residual_tol {
            o.residual_tol = v;
        }
        if let Some(v) = c.max_iterations {
            o.max_iterations = v;
        }
        config.corrector = o;
    }
    Ok(Resolved { label, params, config, seed: args.seed.or(file.seed).unwrap_or(0) })
}

fn record(meta: &Resolved, params: &ChemostatParams, sol: &FgpcSolution, samples: usize) -> String {
    let t = params.period;
    let ts: Vec<f64> = (0..samples).map(|i| t * i as f64 / (samples - 1) as f64).collect();
    let s_traj: Vec<f64> = ts.iter().map(|&x| sol.corrector.interpolate_state(x.max(1e-12))).collect();
    let u_traj: Vec<f64> = ts.iter().map(|&x| sol.control.evaluate(x)).collect();

    let mut iterations = JsonRecord::new();
    iterations
        .integer("predictor", sol.predictor.iterations as u64)
        .integer("corrector", sol.corrector.newton_iterations as u64);
    let mut timings = JsonRecord::new();
    timings
        .number("predictor_seconds", sol.predictor_seconds)
        .number("edges_seconds", sol.edges_seconds)
        .number("corrector_seconds", sol.corrector_seconds);
    let mut trajectories = JsonRecord::new();
    trajectories.numbers("t", &ts).numbers("s", &s_traj).numbers("u", &u_traj);

    let mut rec = JsonRecord::new();
    rec.string("dataset", &meta.label)
        .number("period", t)
        .integer("n", meta.config.n as u64)
        .integer("m", meta.config.m as u64)
        .integers("degrees", &meta.config.degrees.iter().map(|&d| d as u64).collect::<Vec<_>>())
        .number("alpha", meta.config.alpha)
        .integer("seed", meta.seed)
        .numbers("xi", &sol.xi)
        .number("j_p", sol.j_p)
        .number("j_c", sol.j_c)
        .number("predictor_constraint_norm", sol.predictor.constraint_norm)
        .number("corrector_residual_norm", sol.corrector.residual_norm)
        .boolean("converged", sol.predictor.converged)
        .nested("iterations", iterations)
        .nested("timings", timings)
        .nested("trajectories", trajectories);
    rec.finish()
}

pub fn run(args: SolveArgs) -> Result<i32> {
    let meta = match resolve(&args) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(EXIT_VALIDATION);
        }
    };
    if args.samples < 2 {
        eprintln!("error: --samples must be at least 2");
        return Ok(EXIT_VALIDATION);
    }

    match &args.sweep_t {
        None => match run_fgpc(&meta.params, &meta.config) {
            Ok(sol) => {
                let json = record(&meta, &meta.params, &sol, args.samples);
                write_out(args.out.as_deref(), &(json + "\n"))?;
                Ok(0)
            }
            Err(e) => {
                eprintln!("solve=failed stage-error: {e}");
                Ok(nonconvergence_code(&e))
            }
        },
        Some(spec) => {
            let periods = parse_float_range(spec)?;
            let runs: Vec<(usize, Result<FgpcSolution, CoreError>, ChemostatParams)> = periods
                .par_iter()
                .enumerate()
                .map(|(i, &t)| {
                    let p = ChemostatParams::new(
                        meta.params.s_in,
                        meta.params.mu_max,
                        meta.params.k_s,
                        meta.params.u_min,
                        meta.params.u_max,
                        t,
                        meta.params.u_bar,
                    )
                    .expect("validated params stay valid under period change");
                    let sol = run_fgpc(&p, &meta.config);
                    (i, sol, p)
                })
                .collect();
            let mut lines = Vec::new();
            let mut failed = None;
            for (i, sol, p) in runs {
                match sol {
                    Ok(sol) => lines.push((i, record(&meta, &p, &sol, args.samples))),
                    Err(e) => {
                        eprintln!("solve=failed T={} stage-error: {e}", periods[i]);
                        failed = Some(nonconvergence_code(&e));
                    }
                }
            }
            lines.sort_by_key(|(i, _)| *i);
            let body: String =
                lines.into_iter().map(|(_, l)| l + "\n").collect::<Vec<_>>().join("");
            write_out(args.out.as_deref(), &body)?;
            Ok(failed.unwrap_or(0))
        }
    }
}

fn nonconvergence_code(e: &CoreError) -> i32 {
    fn is_nonconvergence(e: &CoreError) -> bool {
        match e {
            CoreError::NonConvergence(_) | CoreError::SingularJacobian(_) => true,
            CoreError::Stage { source, .. } => is_nonconvergence(source),
            _ => false,
        }
    }
    if is_nonconvergence(e) {
        EXIT_NONCONVERGENCE
    } else {
        crate::EXIT_CHECK_FAILED
    }
}

fn parse_float_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("range must be start:step:end, got {spec:?}");
    }
    let (start, step, end): (f64, f64, f64) =
        (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
    if !(step > 0.0) || end < start {
        bail!("bad range {spec:?}");
    }
    let mut out = Vec::new();
    let mut t = start;
    while t <= end + 1e-9 * step {
        out.push(t);
        t += step;
    }
    Ok(out)
}
