//! Jump detection and two-level reconstruction for periodic piecewise
//! constant signals, driven by the behavior of their Fourier interpolants
//! near discontinuities.
//!
//! The interpolant is sampled at `M` equally spaced nodes spanning `[0, T]`
//! inclusive (spacing `T/(M-1)`). A separation line at the average of the
//! refined extreme values splits the samples in two; candidate jumps are
//! samples landing inside a narrow zone around the line, and failing that,
//! the sign changes of the two-state auxiliary signal locate the jump cells.

use crate::error::{Error, Result};
use crate::fourier::FourierInterpolant;

/// Tuning knobs for the detection pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeConfig {
    /// Evaluation-node count; the interpolant is sampled at `M` points from
    /// `0` to `T` inclusive.
    pub m: usize,
    /// Relative half-width of the discontinuity feasible zone, in `(0, 0.01]`.
    pub eps_tilde: f64,
    /// Proximity tolerance used when matching a zone candidate against an
    /// auxiliary-signal interval; must stay below `T/M`.
    pub varepsilon: f64,
}

impl EdgeConfig {
    /// Defaults from the reference runs:
    /// `eps_tilde = 0.005`, `varepsilon = T/(2M)`.
    pub fn new(m: usize, period: f64) -> Result<Self> {
        if m < 4 {
            return Err(Error::Domain(format!("need M >= 4 samples, got {m}")));
        }
        Ok(Self { m, eps_tilde: 0.005, varepsilon: period / (2.0 * m as f64) })
    }

    pub fn with_eps_tilde(mut self, eps_tilde: f64) -> Result<Self> {
        if !(eps_tilde > 0.0 && eps_tilde <= 0.01) {
            return Err(Error::Domain(format!("eps_tilde must lie in (0, 0.01], got {eps_tilde}")));
        }
        self.eps_tilde = eps_tilde;
        Ok(self)
    }
}

/// Two-level piecewise model recovered from interpolant samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructedPiecewise {
    /// Estimated jump points, ascending, in `(0, T]`.
    pub xi: [f64; 2],
    pub level_max: f64,
    pub level_min: f64,
    /// Whether the signal starts on the upper level at `t = 0`.
    pub starts_high: bool,
    period: f64,
}

impl ReconstructedPiecewise {
    pub fn new(xi: [f64; 2], level_max: f64, level_min: f64, starts_high: bool, period: f64) -> Self {
        Self { xi, level_max, level_min, starts_high, period }
    }

    /// Piecewise-constant evaluation with half-open pieces: the opening level
    /// holds on `[0, xi_1)` and `[xi_2, T]`, the other on `[xi_1, xi_2)`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let outer = if self.starts_high { self.level_max } else { self.level_min };
        let inner = if self.starts_high { self.level_min } else { self.level_max };
        let tt = if t == self.period { t } else { t.rem_euclid(self.period) };
        if tt < self.xi[0] || tt >= self.xi[1] {
            outer
        } else {
            inner
        }
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}

/// Refined extreme values of the interpolant and their abscissas:
/// `(min, max, argmin, argmax)`.
///
/// A coarse pass over the sample grid brackets each extremum; golden-section
/// search then sharpens it to an abscissa tolerance of `1e-10 T`.
pub fn locate_extrema(interp: &FourierInterpolant, m: usize) -> Result<(f64, f64, f64, f64)> {
    if m < 4 {
        return Err(Error::Domain(format!("need M >= 4 samples, got {m}")));
    }
    let t = interp.grid().period();
    let h = t / (m - 1) as f64;
    let samples: Vec<f64> = (0..m).map(|l| interp.evaluate(l as f64 * h)).collect();
    let (mut d_min, mut d_max) = (0usize, 0usize);
    for (l, &v) in samples.iter().enumerate() {
        if v < samples[d_min] {
            d_min = l;
        }
        if v > samples[d_max] {
            d_max = l;
        }
    }
    let coarse_max = samples[d_max];
    let coarse_min = samples[d_min];
    if coarse_max - coarse_min <= 1e-13 * coarse_max.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NoJump);
    }
    let tol = 1e-10 * t;
    let bracket = |d: usize| -> (f64, f64) {
        // Periodic wrap keeps the bracket well defined at the ends.
        (d as f64 * h - h, d as f64 * h + h)
    };
    let (lo, hi) = bracket(d_max);
    let (x_max, f_max) = golden_section(|x| interp.evaluate(x), lo, hi, true, tol);
    let (lo, hi) = bracket(d_min);
    let (x_min, f_min) = golden_section(|x| interp.evaluate(x), lo, hi, false, tol);
    Ok((f_min, f_max, x_min.rem_euclid(t), x_max.rem_euclid(t)))
}

/// Derivative-free bracketing extremizer; the bracket is already `O(T/M)`
/// wide, so the abscissa tolerance is the whole contract.
fn golden_section(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    maximize: bool,
    tol: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = sign * f(c);
    let mut fd = sign * f(d);
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = sign * f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = sign * f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

struct Sampled {
    ys: Vec<f64>,
    values: Vec<f64>,
    mu: f64,
    eps: f64,
}

fn sample(interp: &FourierInterpolant, config: &EdgeConfig) -> Result<Sampled> {
    let t = interp.grid().period();
    let m = config.m;
    let h = t / (m - 1) as f64;
    let ys: Vec<f64> = (0..m).map(|l| l as f64 * h).collect();
    let values: Vec<f64> = ys.iter().map(|&y| interp.evaluate(y)).collect();
    let (f_min, f_max, _, _) = locate_extrema(interp, m)?;
    let mu = 0.5 * (f_max + f_min);
    let eps = config.eps_tilde * (f_max - f_min);
    Ok(Sampled { ys, values, mu, eps })
}

/// Estimated jump points of a two-jump piecewise-constant signal, ascending.
pub fn detect_edges(interp: &FourierInterpolant, config: &EdgeConfig) -> Result<[f64; 2]> {
    let s = sample(interp, config)?;
    let t = interp.grid().period();
    let m = config.m;

    // Feasible-zone pass: samples within eps of the separation line.
    let mut zone: Vec<usize> = (0..m).filter(|&l| (s.values[l] - s.mu).abs() <= s.eps).collect();
    if zone.len() > 2 {
        // Keep the two farthest apart; the expectation is one candidate per
        // discontinuity.
        zone = vec![zone[0], *zone.last().unwrap()];
    }
    let mut xi: Vec<f64> = Vec::with_capacity(2);
    let mut snapped_to_t = false;
    // An estimate inside the boundary jump's transition region belongs to
    // the jump at T itself; the region is one collocation cell (T/N) wide.
    // The sample one cell short of T is the index-rule special case.
    let boundary_band = t / interp.grid().n() as f64;
    for &l in &zone {
        if l == m - 2 || t - s.ys[l] <= boundary_band {
            xi.push(t);
            snapped_to_t = true;
        } else {
            xi.push(s.ys[l]);
        }
    }
    xi.dedup();
    let snap = |x: f64| if t - x <= boundary_band { t } else { x };
    if xi.len() >= 2 {
        xi.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return Ok([xi[0], xi[1]]);
    }

    // Auxiliary two-state signal; its sign changes bracket the jumps.
    let aux: Vec<bool> = s.values.iter().map(|&v| v >= s.mu).collect();
    let transitions: Vec<usize> = (0..m - 1).filter(|&j| aux[j] != aux[j + 1]).collect();
    if transitions.len() < 2 {
        return Err(Error::DetectionFailed(format!(
            "expected two sign changes in the auxiliary signal, found {}",
            transitions.len()
        )));
    }
    // More than two sign changes means clustered crossings; the outermost
    // pair spans the two jump regions.
    let j1 = transitions[0];
    let j2 = *transitions.last().unwrap();

    if j2 == m - 2 && !snapped_to_t {
        xi.push(t);
    }
    if xi.len() < 2 {
        if xi.is_empty() {
            xi.push(snap(0.5 * (s.ys[j1] + s.ys[j1 + 1])));
            xi.push(snap(0.5 * (s.ys[j2] + s.ys[j2 + 1])));
        } else {
            let known = xi[0];
            for &j in &[j1, j2] {
                if xi.len() >= 2 {
                    break;
                }
                if s.ys[j] - known > config.varepsilon || known - s.ys[j + 1] > config.varepsilon {
                    xi.push(snap(0.5 * (s.ys[j] + s.ys[j + 1])));
                }
            }
        }
    }
    if xi.len() < 2 {
        return Err(Error::DetectionFailed(
            "could not separate two distinct jump locations".into(),
        ));
    }
    xi.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok([xi[0], xi[1]])
}

/// Detect the jumps and rebuild the two-level model: the samples split by the
/// separation line, each group summarized by its median.
pub fn reconstruct(interp: &FourierInterpolant, config: &EdgeConfig) -> Result<ReconstructedPiecewise> {
    let xi = detect_edges(interp, config)?;
    let s = sample(interp, config)?;
    let mut up: Vec<f64> = s.values.iter().copied().filter(|&v| v > s.mu).collect();
    let mut down: Vec<f64> = s.values.iter().copied().filter(|&v| v < s.mu).collect();
    if up.is_empty() || down.is_empty() {
        return Err(Error::DegenerateSignal(
            "one side of the separation line holds no samples".into(),
        ));
    }
    let level_max = median(&mut up);
    let level_min = median(&mut down);
    Ok(ReconstructedPiecewise {
        xi,
        level_max,
        level_min,
        starts_high: s.values[0] > s.mu,
        period: interp.grid().period(),
    })
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::corpus_function;
    use crate::fourier::{FourierInterpolant, PeriodicGrid};
    use approx::assert_abs_diff_eq;

    fn interpolant_of(name: &str, n: usize) -> FourierInterpolant {
        let f = corpus_function(name).unwrap();
        let grid = PeriodicGrid::new(1.0, n).unwrap();
        FourierInterpolant::from_fn(grid, |x| f.eval(x)).unwrap()
    }

    #[test]
    fn extrema_of_square_wave_match_reported_overshoot() {
        let interp = interpolant_of("f6", 200);
        let (min, max, _, _) = locate_extrema(&interp, 200).unwrap();
        assert_abs_diff_eq!(max, 1.14116, epsilon = 1e-5);
        assert_abs_diff_eq!(min, -0.14116, epsilon = 1e-5);
    }

    #[test]
    fn extrema_of_sine() {
        let grid = PeriodicGrid::new(1.0, 64).unwrap();
        let interp =
            FourierInterpolant::from_fn(grid, |x| (2.0 * std::f64::consts::PI * x).sin()).unwrap();
        let (min, max, x_min, x_max) = locate_extrema(&interp, 50).unwrap();
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(min, -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(x_max, 0.25, epsilon = 1e-8);
        assert_abs_diff_eq!(x_min, 0.75, epsilon = 1e-8);
    }

    #[test]
    fn flat_signal_raises_no_jump() {
        let grid = PeriodicGrid::new(1.0, 16).unwrap();
        let interp = FourierInterpolant::new(grid, vec![2.0; 16]).unwrap();
        assert!(matches!(locate_extrema(&interp, 32), Err(Error::NoJump)));
        let config = EdgeConfig::new(32, 1.0).unwrap();
        assert!(detect_edges(&interp, &config).is_err());
    }

    #[test]
    fn f6_exact_recovery_at_reference_resolution() {
        // Reference data: relative errors (0, 0) at N = 200, M = 100.
        let interp = interpolant_of("f6", 200);
        let config = EdgeConfig::new(100, 1.0).unwrap();
        let xi = detect_edges(&interp, &config).unwrap();
        assert_abs_diff_eq!(xi[0], 0.5, epsilon = 1e-14);
        assert_eq!(xi[1], 1.0);
    }

    #[test]
    fn f9_high_accuracy_case() {
        // Reference data: xi_1 relative error 5.20671e-6 at N = 200, M = 400;
        // the boundary jump lands exactly on T.
        let interp = interpolant_of("f9", 200);
        let config = EdgeConfig::new(400, 1.0).unwrap();
        let xi = detect_edges(&interp, &config).unwrap();
        let rel = (xi[0] - 0.8183f64).abs() / 0.8183;
        assert!(rel <= 1e-5, "relative error {rel:e}");
        assert_eq!(xi[1], 1.0);
    }

    #[test]
    fn f10_interior_jumps() {
        // Reference data: relative errors about (7.9e-4, 4.0e-4) at
        // N = 1000, M = 400.
        let interp = interpolant_of("f10", 1000);
        let config = EdgeConfig::new(400, 1.0).unwrap();
        let xi = detect_edges(&interp, &config).unwrap();
        let f = corpus_function("f10").unwrap();
        let r1 = (xi[0] - f.jumps[0]).abs() / f.jumps[0];
        let r2 = (xi[1] - f.jumps[1]).abs() / f.jumps[1];
        assert!(r1 < 2e-3, "r1 = {r1:e}");
        assert!(r2 < 1e-3, "r2 = {r2:e}");
    }

    #[test]
    fn boundary_jump_detected_exactly_across_grid() {
        for name in ["f6", "f7", "f8", "f9"] {
            for n in [100usize, 400, 800] {
                let interp = interpolant_of(name, n);
                for m in [100usize, 400] {
                    let config = EdgeConfig::new(m, 1.0).unwrap();
                    let xi = detect_edges(&interp, &config).unwrap();
                    assert_eq!(xi[1], 1.0, "{name} N={n} M={m}");
                }
            }
        }
    }

    #[test]
    fn reconstruct_levels_f6() {
        // Reference data: |max - 1| <= 1e-4 and |min| ~ 4.4e-5 at
        // N = 300, M = 400.
        let interp = interpolant_of("f6", 300);
        let config = EdgeConfig::new(400, 1.0).unwrap();
        let rec = reconstruct(&interp, &config).unwrap();
        assert!((rec.level_max - 1.0).abs() <= 1e-4);
        assert!(rec.level_min.abs() <= 1e-4);
        assert!(rec.starts_high);
        assert!(rec.level_max > rec.level_min);
    }

    #[test]
    fn reconstruct_levels_f11_exact_at_n1200() {
        let interp = interpolant_of("f11", 1200);
        let config = EdgeConfig::new(400, 1.0).unwrap();
        let rec = reconstruct(&interp, &config).unwrap();
        assert_eq!(rec.level_max, 10.0);
        assert_eq!(rec.level_min, -2.0);
    }

    #[test]
    fn reconstruct_exact_two_level_input() {
        // M = 65 samples on an N = 64 grid land on the collocation nodes, so
        // every sample is an exact plateau value and the medians recover the
        // levels exactly.
        let grid = PeriodicGrid::new(1.0, 64).unwrap();
        let vals: Vec<f64> =
            grid.nodes().iter().map(|&x| if (0.25..0.75).contains(&x) { 3.0 } else { -1.0 }).collect();
        let interp = FourierInterpolant::new(grid, vals).unwrap();
        let config = EdgeConfig::new(65, 1.0).unwrap();
        let rec = reconstruct(&interp, &config).unwrap();
        assert_eq!(rec.level_max, 3.0);
        assert_eq!(rec.level_min, -1.0);
        assert!(!rec.starts_high);
        assert_eq!(rec.evaluate(0.0), -1.0);
        assert_eq!(rec.evaluate(0.5), 3.0);
        assert_eq!(rec.evaluate(rec.xi[0]), 3.0); // half-open convention
        assert_eq!(rec.evaluate(0.9), -1.0);
    }

    #[test]
    fn orientation_matches_sign_convention_across_corpus() {
        for name in ["f6", "f7", "f8", "f9", "f10", "f11", "f12"] {
            let f = corpus_function(name).unwrap();
            let interp = interpolant_of(name, 600);
            let config = EdgeConfig::new(400, 1.0).unwrap();
            let rec = reconstruct(&interp, &config).unwrap();
            let (hi, lo) = f.plateau_levels.unwrap();
            let expect_high = f.eval(0.0) > 0.5 * (hi + lo);
            assert_eq!(rec.starts_high, expect_high, "{name}");
        }
    }

    #[test]
    fn median_robust_to_single_outlier() {
        // The group medians must not move when a single member is pushed out
        // by ten times the jump size.
        let interp = interpolant_of("f6", 200);
        let config = EdgeConfig::new(100, 1.0).unwrap();
        let s = sample(&interp, &config).unwrap();
        let mut up: Vec<f64> = s.values.iter().copied().filter(|&v| v > s.mu).collect();
        let mut down: Vec<f64> = s.values.iter().copied().filter(|&v| v < s.mu).collect();
        let base_up = median(&mut up.clone());
        let base_down = median(&mut down.clone());
        up[0] += 10.0;
        down[0] -= 10.0;
        assert_abs_diff_eq!(median(&mut up), base_up, epsilon = 1e-3);
        assert_abs_diff_eq!(median(&mut down), base_down, epsilon = 1e-3);
    }
}
