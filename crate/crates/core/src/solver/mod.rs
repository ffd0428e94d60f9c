//! The predictor-corrector pipeline: Fourier-collocated NLP prediction of
//! the periodic state and control, jump detection and bang-bang snapping of
//! the predicted control, and a shifted-Gegenbauer collocated Newton solve
//! that refines the state on the switch-aligned mesh.

mod corrector;
mod nlp;

pub use corrector::{objective_corrected, solve_corrector, CorrectorOpts, CorrectorResult};
pub use nlp::{assemble_nlp, solve_predictor, solve_predictor_debug, Nlp, PredictorOpts, PredictorResult};

use std::time::Instant;

use crate::chemostat::ChemostatParams;
use crate::edges::{reconstruct, EdgeConfig, ReconstructedPiecewise};
use crate::error::{Error, Result};
use crate::fourier::{FourierInterpolant, PeriodicGrid};
use crate::gegenbauer::MeshPartition;

/// Bang-bang control with two switch points and half-open pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct BangBangControl {
    /// Switch points, ascending, in `(0, T]`.
    pub xi: [f64; 2],
    /// Level on `[0, xi_1)` and `[xi_2, T]`.
    pub outer: f64,
    /// Level on `[xi_1, xi_2)`.
    pub inner: f64,
    period: f64,
}

impl BangBangControl {
    pub fn evaluate(&self, t: f64) -> f64 {
        let tt = if t == self.period { t } else { t.rem_euclid(self.period) };
        if tt < self.xi[0] || tt >= self.xi[1] {
            self.outer
        } else {
            self.inner
        }
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}

/// Snap a reconstructed two-level model to the admissible dilation extremes:
/// the mid-piece level moves to whichever bound it is closer to, the outer
/// level to the other.
pub fn correct_control(recon: &ReconstructedPiecewise, params: &ChemostatParams) -> BangBangControl {
    let mid_level = if recon.starts_high { recon.level_min } else { recon.level_max };
    let (inner, outer) = if (mid_level - params.u_min).abs() < (params.u_max - mid_level).abs() {
        (params.u_min, params.u_max)
    } else {
        (params.u_max, params.u_min)
    };
    BangBangControl { xi: recon.xi, inner, outer, period: recon.period() }
}

/// Full-pipeline configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FgpcConfig {
    /// Fourier collocation size (even).
    pub n: usize,
    /// Edge-detection sample count.
    pub m: usize,
    /// Gegenbauer interpolant degrees per mesh element (truncated to the
    /// number of elements actually produced by the detected switches).
    pub degrees: Vec<usize>,
    pub alpha: f64,
    pub predictor: PredictorOpts,
    pub corrector: CorrectorOpts,
}

impl FgpcConfig {
    pub fn new(n: usize, m: usize, degrees: Vec<usize>, alpha: f64) -> Self {
        Self {
            n,
            m,
            degrees,
            alpha,
            predictor: PredictorOpts::default(),
            corrector: CorrectorOpts::default(),
        }
    }
}

/// Everything the pipeline produces, including per-stage wall-clock timings.
#[derive(Debug, Clone)]
pub struct FgpcSolution {
    pub predictor: PredictorResult,
    pub reconstruction: ReconstructedPiecewise,
    pub control: BangBangControl,
    pub corrector: CorrectorResult,
    pub xi: [f64; 2],
    pub j_p: f64,
    pub j_c: f64,
    pub predictor_seconds: f64,
    pub edges_seconds: f64,
    pub corrector_seconds: f64,
}

/// Run prediction, detection, control correction, and state correction.
pub fn run_fgpc(params: &ChemostatParams, config: &FgpcConfig) -> Result<FgpcSolution> {
    let grid =
        PeriodicGrid::new(params.period, config.n).map_err(|e| e.in_stage("predictor"))?;

    let t0 = Instant::now();
    let nlp = assemble_nlp(params, &grid);
    let predictor =
        solve_predictor(&nlp, None, &config.predictor).map_err(|e| e.in_stage("predictor"))?;
    let predictor_seconds = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let u_interp = FourierInterpolant::new(grid.clone(), predictor.u.clone())
        .map_err(|e| e.in_stage("edges"))?;
    let edge_config = EdgeConfig::new(config.m, params.period).map_err(|e| e.in_stage("edges"))?;
    let reconstruction = reconstruct(&u_interp, &edge_config).map_err(|e| e.in_stage("edges"))?;
    let control = correct_control(&reconstruction, params);
    let edges_seconds = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let partition = switch_partition(params.period, &control.xi)?;
    let degrees: Vec<usize> = config.degrees.iter().copied().take(partition.len()).collect();
    if degrees.len() != partition.len() {
        return Err(Error::DimensionMismatch {
            expected: partition.len(),
            got: config.degrees.len(),
        }
        .in_stage("corrector"));
    }
    // Initial corrected-state guess: the predicted state interpolant sampled
    // at the Gegenbauer nodes.
    let mut s_values = Vec::with_capacity(config.n);
    s_values.push(params.s_bar);
    s_values.extend_from_slice(&predictor.s);
    let s_interp =
        FourierInterpolant::new(grid, s_values).map_err(|e| e.in_stage("corrector"))?;
    let corrector = solve_corrector(
        &control,
        params,
        &partition,
        &degrees,
        config.alpha,
        |t| s_interp.evaluate(t),
        &config.corrector,
    )
    .map_err(|e| e.in_stage("corrector"))?;
    let corrector_seconds = t0.elapsed().as_secs_f64();

    Ok(FgpcSolution {
        xi: control.xi,
        j_p: predictor.j_p,
        j_c: corrector.j_c,
        predictor,
        reconstruction,
        control,
        corrector,
        predictor_seconds,
        edges_seconds,
        corrector_seconds,
    })
}

/// Mesh `0 < xi_1 < xi_2 <= T` with switch points that coincide with an
/// endpoint or with each other dropped (width floor `1e-6 T`).
fn switch_partition(period: f64, xi: &[f64; 2]) -> Result<MeshPartition> {
    let floor = 1e-6 * period;
    let mut tau = vec![0.0];
    for &x in xi {
        if x - tau.last().unwrap() > floor && period - x > floor {
            tau.push(x);
        }
    }
    tau.push(period);
    MeshPartition::new(tau).map_err(|e| e.in_stage("corrector"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chemostat::ChemostatParams;

    fn recon(starts_high: bool, hi: f64, lo: f64) -> ReconstructedPiecewise {
        ReconstructedPiecewise::new([3.0, 8.0], hi, lo, starts_high, 10.0)
    }

    #[test]
    fn control_snap_picks_nearest_bound_for_the_mid_piece() {
        let p = ChemostatParams::dataset_d1();
        // Mid piece near the upper bound: Eq.-18-style branch.
        let c = correct_control(&recon(false, 1.98, 0.03), &p);
        assert_eq!(c.inner, 2.0);
        assert_eq!(c.outer, 0.0);
        assert_eq!(c.evaluate(0.0), 0.0);
        assert_eq!(c.evaluate(3.0), 2.0); // half-open: switch belongs to mid piece
        assert_eq!(c.evaluate(7.999), 2.0);
        assert_eq!(c.evaluate(8.0), 0.0);
        assert_eq!(c.evaluate(10.0), 0.0);
        // Mid piece near the lower bound: the outer piece takes u_max.
        let c = correct_control(&recon(true, 1.98, 0.03), &p);
        assert_eq!(c.inner, 0.0);
        assert_eq!(c.outer, 2.0);
    }

    #[test]
    fn switch_partition_drops_boundary_coincident_switches() {
        let p = switch_partition(10.0, &[5.0, 10.0]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.mesh_points(), &[0.0, 5.0, 10.0]);
        let p = switch_partition(10.0, &[5.0, 9.0]).unwrap();
        assert_eq!(p.len(), 3);
        // Nearly duplicate switches collapse.
        let p = switch_partition(10.0, &[5.0, 5.0 + 1e-9]).unwrap();
        assert_eq!(p.len(), 2);
    }
}
