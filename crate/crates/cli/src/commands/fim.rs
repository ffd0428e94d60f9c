//! `fim`: construct the integration matrix, run the structural checks, and
//! optionally benchmark the fast constructor against the naive per-entry
//! evaluation.

use anyhow::Result;
use clap::Args;
use std::path::PathBuf;
use std::time::Instant;

use specperiod::fourier::{build_fim_direct, build_fim_fast, PeriodicGrid};

use crate::output::{fmt, write_out};
use crate::{EXIT_CHECK_FAILED, EXIT_VALIDATION};

#[derive(Args)]
pub struct FimArgs {
    /// Collocation size (even).
    #[arg(long)]
    n: usize,
    /// Period.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Run the structural checks (row 0, twin symmetry, fast-vs-direct).
    #[arg(long)]
    check: bool,
    /// Compare fast vs naive construction wall-clock (median of 3 runs).
    #[arg(long)]
    bench: bool,
    /// Write the matrix as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: FimArgs) -> Result<i32> {
    let grid = match PeriodicGrid::new(args.t, args.n) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_VALIDATION);
        }
    };
    let fim = build_fim_fast(&grid);
    let n = grid.n();
    let theta = fim.theta();

    if let Some(path) = &args.out {
        let mut csv = String::new();
        for l in 0..n {
            for j in 0..n {
                if j > 0 {
                    csv.push(',');
                }
                csv.push_str(&fmt(theta[(l, j)]));
            }
            csv.push('\n');
        }
        write_out(Some(path), &csv)?;
    }

    if args.check {
        let row0_ok = (0..n).all(|j| theta[(0, j)] == 0.0);
        let mut twins_ok = true;
        for l in 1..n {
            for j in 0..=(l.saturating_sub(1)) / 2 {
                if theta[(l, j)].to_bits() != theta[(l, l - j)].to_bits() {
                    twins_ok = false;
                }
            }
        }
        for l in 1..n.saturating_sub(1) {
            for j in 1..=(n - l - 1) / 2 {
                if theta[(l, n - j)].to_bits() != theta[(l, l + j)].to_bits() {
                    twins_ok = false;
                }
            }
        }
        let direct = build_fim_direct(&grid);
        let mut max_diff = 0.0f64;
        for l in 0..n {
            for j in 0..n {
                max_diff = max_diff.max((theta[(l, j)] - direct.theta()[(l, j)]).abs());
            }
        }
        let finite_ok = theta.iter().all(|v| v.is_finite());
        let agree_ok = max_diff <= 1e-13;
        println!(
            "check: row0 {}, twin symmetry {}, finite {}, fast-vs-direct {} (max |diff| = {})",
            if row0_ok { "OK" } else { "FAIL" },
            if twins_ok { "OK" } else { "FAIL" },
            if finite_ok { "OK" } else { "FAIL" },
            if agree_ok { "OK" } else { "FAIL" },
            fmt(max_diff),
        );
        if !(row0_ok && twins_ok && finite_ok && agree_ok) {
            eprintln!("check=failed n={n}");
            return Ok(EXIT_CHECK_FAILED);
        }
    }

    if args.bench {
        let median_of = |f: &dyn Fn() -> ()| -> f64 {
            let mut times: Vec<f64> = (0..3)
                .map(|_| {
                    let t0 = Instant::now();
                    f();
                    t0.elapsed().as_secs_f64()
                })
                .collect();
            times.sort_by(|a, b| a.partial_cmp(b).unwrap());
            times[1]
        };
        let fast = median_of(&|| {
            std::hint::black_box(build_fim_fast(&grid));
        });
        let naive = median_of(&|| {
            std::hint::black_box(build_fim_direct(&grid));
        });
        let ratio = fast / naive;
        println!("bench: fast {} s, naive {} s, ratio {}", fmt(fast), fmt(naive), fmt(ratio));
        if ratio > 0.5 {
            eprintln!("bench=failed ratio={}", fmt(ratio));
            return Ok(EXIT_CHECK_FAILED);
        }
    }

    Ok(0)
}
