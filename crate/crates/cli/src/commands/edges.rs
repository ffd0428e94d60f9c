//! `edges`: jump-detection and level-reconstruction error tables over the
//! piecewise-constant corpus.

use anyhow::Result;
use clap::Args;
use rayon::prelude::*;
use std::path::PathBuf;

use specperiod::analysis::corpus_function;
use specperiod::edges::{reconstruct, EdgeConfig};
use specperiod::fourier::{FourierInterpolant, PeriodicGrid};

use crate::output::{fmt, write_out};

#[derive(Args)]
pub struct EdgesArgs {
    /// Comma-separated corpus functions (two-jump entries f6..f12).
    #[arg(long, value_delimiter = ',', default_value = "f6,f7,f8,f9,f10,f11,f12")]
    functions: Vec<String>,
    /// Comma-separated collocation sizes.
    #[arg(long, value_delimiter = ',', default_value = "200")]
    n: Vec<usize>,
    /// Comma-separated sample counts.
    #[arg(long, value_delimiter = ',', default_value = "100,400")]
    m: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: EdgesArgs) -> Result<i32> {
    let mut functions = Vec::new();
    for name in &args.functions {
        match corpus_function(name) {
            Some(f) if !f.jumps.is_empty() => functions.push(f),
            Some(_) => {
                eprintln!("error: {name} has no jumps to detect");
                return Ok(crate::EXIT_VALIDATION);
            }
            None => {
                eprintln!("error: unknown corpus function {name:?}");
                return Ok(crate::EXIT_VALIDATION);
            }
        }
    }

    let mut rows: Vec<(usize, usize, usize, String)> = functions
        .par_iter()
        .enumerate()
        .flat_map_iter(|(fi, f)| {
            let ns = args.n.clone();
            let ms = args.m.clone();
            ns.into_iter().flat_map(move |n| {
                let grid = PeriodicGrid::new(1.0, n).unwrap();
                let interp = FourierInterpolant::from_fn(grid, |x| f.eval(x)).unwrap();
                let f = f.clone();
                ms.clone().into_iter().map(move |m| {
                    let config = EdgeConfig::new(m, 1.0).unwrap();
                    let cells = match reconstruct(&interp, &config) {
                        Ok(rec) => {
                            let (hi, lo) = f.plateau_levels.unwrap();
                            let r1 = (rec.xi[0] - f.jumps[0]).abs() / f.jumps[0];
                            let r2 = (rec.xi[1] - f.jumps[1]).abs() / f.jumps[1];
                            format!(
                                "{},{},{},{},{},{},{},{}",
                                fmt(rec.xi[0]),
                                fmt(rec.xi[1]),
                                fmt(r1),
                                fmt(r2),
                                fmt(rec.level_max),
                                fmt(rec.level_min),
                                fmt((rec.level_max - hi).abs()),
                                fmt((rec.level_min - lo).abs()),
                            )
                        }
                        Err(e) => format!(",,,,,,,detection-error: {e}"),
                    };
                    (fi, n, m, cells)
                })
            })
        })
        .collect();
    rows.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));

    let mut csv = String::from(
        "function,n,m,xi1,xi2,xi1_rel_err,xi2_rel_err,level_max,level_min,level_max_abs_err,level_min_abs_err\n",
    );
    for (fi, n, m, cells) in rows {
        csv.push_str(&format!("{},{n},{m},{cells}\n", functions[fi].name));
    }
    write_out(args.out.as_deref(), &csv)?;
    Ok(0)
}
