//! `quad`: Fourier pseudospectral quadrature error sweeps over the corpus,
//! with the error-norm upper bounds and fitted convergence slopes, plus the
//! reconstructed-integrand comparison table.

use anyhow::{bail, Result};
use clap::Args;
use rayon::prelude::*;
use std::path::PathBuf;

use specperiod::analysis::{corpus_function, fpsq_error_bounds, power_fit, TestFunction};
use specperiod::edges::{reconstruct, EdgeConfig};
use specperiod::fourier::{build_fim_fast, dft_coefficients, FourierInterpolant, PeriodicGrid};

use crate::output::{fmt, write_out};

#[derive(Args)]
pub struct QuadArgs {
    /// Comma-separated corpus functions, e.g. f1,f2,f6.
    #[arg(long, value_delimiter = ',', default_value = "f1,f2,f3,f4,f5")]
    functions: Vec<String>,
    /// Collocation sweep as start:step:end (even values only are used).
    #[arg(long, default_value = "110:10:200")]
    n_range: String,
    /// Emit coefficient magnitudes and their decay slope instead of
    /// quadrature errors.
    #[arg(long)]
    coefficients: bool,
    /// Reproduce the reconstructed-integrand error table instead: FPSQ of
    /// the detected two-level model against the exact integrals.
    #[arg(long)]
    table4: bool,
    /// Sample counts for --table4.
    #[arg(long, value_delimiter = ',', default_value = "100,400")]
    m: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn parse_range(spec: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("range must be start:step:end, got {spec:?}");
    }
    let (start, step, end): (usize, usize, usize) =
        (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
    if step == 0 || end < start {
        bail!("bad range {spec:?}");
    }
    Ok((start..=end).step_by(step).collect())
}

fn fpsq_errors(f: &TestFunction, n: usize) -> (f64, f64) {
    let grid = PeriodicGrid::new(1.0, n).unwrap();
    let fim = build_fim_fast(&grid);
    let values: Vec<f64> = grid.nodes().iter().map(|&x| f.eval(x)).collect();
    let approx = fim.integrate(&values).unwrap();
    let mut inf = 0.0f64;
    let mut l2 = 0.0f64;
    for (l, &a) in approx.iter().enumerate() {
        let e = (a - f.integrate_to(grid.node(l))).abs();
        inf = inf.max(e);
        l2 += e * e;
    }
    (inf, l2.sqrt())
}

pub fn run(args: QuadArgs) -> Result<i32> {
    let ns: Vec<usize> = parse_range(&args.n_range)?.into_iter().filter(|n| n % 2 == 0).collect();
    let mut functions = Vec::new();
    for name in &args.functions {
        match corpus_function(name) {
            Some(f) => functions.push(f),
            None => {
                eprintln!("error: unknown corpus function {name:?}");
                return Ok(crate::EXIT_VALIDATION);
            }
        }
    }

    let mut csv = String::new();
    if args.table4 {
        csv.push_str("function,n,m,error_inf\n");
        let mut rows: Vec<(usize, usize, usize, f64)> = functions
            .par_iter()
            .enumerate()
            .flat_map_iter(|(fi, f)| {
                let ms = args.m.clone();
                ns.iter().flat_map(move |&n| {
                    let grid = PeriodicGrid::new(1.0, n).unwrap();
                    let interp = FourierInterpolant::from_fn(grid.clone(), |x| f.eval(x)).unwrap();
                    let fim = build_fim_fast(&grid);
                    ms.clone().into_iter().map(move |m| {
                        let config = EdgeConfig::new(m, 1.0).unwrap();
                        let err = match reconstruct(&interp, &config) {
                            Ok(rec) => {
                                let values: Vec<f64> =
                                    grid.nodes().iter().map(|&x| rec.evaluate(x)).collect();
                                let approx = fim.integrate(&values).unwrap();
                                approx
                                    .iter()
                                    .enumerate()
                                    .map(|(l, &a)| (a - f.integrate_to(grid.node(l))).abs())
                                    .fold(0.0f64, f64::max)
                            }
                            Err(_) => f64::NAN,
                        };
                        (fi, n, m, err)
                    })
                })
            })
            .collect();
        rows.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        for (fi, n, m, err) in rows {
            csv.push_str(&format!("{},{n},{m},{}\n", functions[fi].name, fmt(err)));
        }
    } else if args.coefficients {
        csv.push_str("function,k,coeff_abs,fitted_slope\n");
        for f in &functions {
            // Odd-indexed coefficient magnitudes at the largest sweep size.
            let n = *ns.last().unwrap();
            let grid = PeriodicGrid::new(1.0, n).unwrap();
            let values: Vec<f64> = grid.nodes().iter().map(|&x| f.eval(x)).collect();
            let coeffs = dft_coefficients(&values, &grid).unwrap();
            let half = n as i64 / 2;
            let mut ks = Vec::new();
            let mut mags = Vec::new();
            for k in (1..half).step_by(2) {
                let c = coeffs[(k + half) as usize].norm();
                if c > 0.0 {
                    ks.push(k as f64);
                    mags.push(c);
                }
            }
            let slope = power_fit(&ks, &mags).map(|fit| fit.b).unwrap_or(f64::NAN);
            for (k, c) in ks.iter().zip(&mags) {
                csv.push_str(&format!("{},{k},{},{}\n", f.name, fmt(*c), fmt(slope)));
            }
        }
    } else {
        csv.push_str(
            "function,n,error_inf,error_l2,bound_tight,bound_relaxed,bound_asym,fitted_slope\n",
        );
        let results: Vec<Vec<(usize, f64, f64)>> = functions
            .par_iter()
            .map(|f| ns.par_iter().map(|&n| {
                let (inf, l2) = fpsq_errors(f, n);
                (n, inf, l2)
            }).collect())
            .collect();
        for (f, rows) in functions.iter().zip(&results) {
            let xs: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
            let ys: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let slope = power_fit(&xs, &ys).map(|fit| fit.b).unwrap_or(f64::NAN);
            for &(n, inf, l2) in rows {
                let (tight, relaxed, asym) = fpsq_error_bounds(f.smoothness, f.bv_norm, n, 1.0);
                csv.push_str(&format!(
                    "{},{n},{},{},{},{},{},{}\n",
                    f.name,
                    fmt(inf),
                    fmt(l2),
                    fmt(tight),
                    fmt(relaxed),
                    fmt(asym),
                    fmt(slope)
                ));
            }
        }
    }
    write_out(args.out.as_deref(), &csv)?;
    Ok(0)
}
