//! Error-bound calculators for nonsmooth periodic approximation, observed
//! convergence-order regression, the periodic test corpus, and matrix
//! condition-number studies.

pub mod corpus;

pub use corpus::{corpus_function, test_corpus, TestFunction};

use crate::error::{Error, Result};
use crate::fourier::{build_fim_fast, PeriodicGrid};
use crate::special::ln_gamma;
use std::f64::consts::PI;

/// Least-squares power-law fit `y = a x^b` through log-log regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub a: f64,
    pub b: f64,
    /// Residual sum of squares of the fit in (ln x, ln y) space.
    pub rss: f64,
}

/// Smoothness descriptor: `f` is in `H_T^s` with `||f^(s)||_BV = bv_norm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessClass {
    pub s: usize,
    pub bv_norm: f64,
}

/// Fit `ln y = b ln x + ln a` by ordinary least squares.
pub fn power_fit(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
    }
    if xs.len() < 3 {
        return Err(Error::Domain(format!("power fit needs >= 3 points, got {}", xs.len())));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return Err(Error::Domain("power fit needs strictly positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let intercept = my - b * mx;
    let rss: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (b * x + intercept);
            r * r
        })
        .sum();
    Ok(PowerFit { a: intercept.exp(), b, rss })
}

/// Riemann zeta at integer arguments `m >= 2`: partial sum over `10^6` terms
/// plus the Euler-Maclaurin tail correction, accurate well below `1e-12`.
pub fn zeta(m: usize) -> f64 {
    assert!(m >= 2, "zeta(m) implemented for m >= 2 only");
    const K: usize = 1_000_000;
    let mf = m as f64;
    let mut acc = 0.0;
    // Small terms first.
    for n in (1..=K).rev() {
        acc += (n as f64).powi(-(m as i32));
    }
    let k1 = (K + 1) as f64;
    acc += (K as f64).powi(-(m as i32)); // transition term adjustment below
    acc -= (K as f64).powi(-(m as i32));
    // Tail from n = K+1: integral + half-term + Bernoulli correction.
    acc += k1.powf(1.0 - mf) / (mf - 1.0) + 0.5 * k1.powf(-mf) + mf / 12.0 * k1.powf(-mf - 1.0);
    acc
}

/// Fourier-coefficient upper bound for `f` in `H_T^s`:
/// `|f_hat_k| <= ||f^(s)||_BV / (T omega_|k|^{s+1})`.
pub fn coefficient_bound(s: usize, bv_norm: f64, k: usize, t: f64) -> f64 {
    assert!(k > 0, "coefficient bound applies to nonzero modes");
    let omega = 2.0 * PI * k as f64 / t;
    bv_norm / (t * omega.powi(s as i32 + 1))
}

/// Truncation error bound `||f - Pi_N f|| <= bv / (sqrt((2s+1) pi) omega_{N/2}^{s+1/2})`.
pub fn truncation_bound(s: usize, bv_norm: f64, n: usize, t: f64) -> f64 {
    let omega_half = PI * n as f64 / t;
    bv_norm / (((2 * s + 1) as f64 * PI).sqrt() * omega_half.powf(s as f64 + 0.5))
}

/// Aliasing error bound
/// `||E_N f|| <= (1/sqrt(pi)) (sqrt(zeta(2s+2) + 1/N) + 1/sqrt(N)) bv omega_{N/2}^{-s-1/2}`.
pub fn aliasing_bound(s: usize, bv_norm: f64, n: usize, t: f64) -> f64 {
    let omega_half = PI * n as f64 / t;
    let nf = n as f64;
    (1.0 / PI.sqrt())
        * ((zeta(2 * s + 2) + 1.0 / nf).sqrt() + 1.0 / nf.sqrt())
        * bv_norm
        * omega_half.powf(-(s as f64) - 0.5)
}

/// The interpolation error factors `(nu_1, nu_2, nu_3)`: tight, zeta-relaxed,
/// and asymptotic. All three decrease monotonically in `s`, and `nu_3` tends
/// to `1/sqrt(pi)` as `s` grows.
pub fn interpolation_error_factors(s: usize, n: usize) -> (f64, f64, f64) {
    let nf = n as f64;
    let sf = s as f64;
    let common = 1.0 / (2.0 * sf + 1.0);
    let pow = 2f64.powi(2 * s as i32 + 1) - 1.0;
    let nu1 = ((common + ((zeta(2 * s + 2) + 1.0 / nf).sqrt() + 1.0 / nf.sqrt()).powi(2)) / PI).sqrt();
    let nu2 = ((common + ((1.0 + 1.0 / pow + 1.0 / nf).sqrt() + 1.0 / nf.sqrt()).powi(2)) / PI).sqrt();
    let nu3 = ((1.0 + common + 1.0 / pow) / PI).sqrt();
    (nu1, nu2, nu3)
}

/// Euclidean-norm FPSQ error bounds (tight, relaxed, asymptotic): the
/// interpolation factors times `bv omega_{N/2}^{-s-1/2} ||sqrt(x_N)||_2`,
/// with `||sqrt(x_N)||_2^2 = sum_l x_l = T (N-1)/2`.
pub fn fpsq_error_bounds(s: usize, bv_norm: f64, n: usize, t: f64) -> (f64, f64, f64) {
    let omega_half = PI * n as f64 / t;
    let node_factor = (t * (n as f64 - 1.0) / 2.0).sqrt();
    let scale = bv_norm * omega_half.powf(-(s as f64) - 0.5) * node_factor;
    let (nu1, nu2, nu3) = interpolation_error_factors(s, n);
    (nu1 * scale, nu2 * scale, nu3 * scale)
}

/// Leading coefficient `K_{k,j}` of the degree-`j` shifted Gegenbauer
/// polynomial on an element of the given length, evaluated through log-gamma
/// with sign tracking so negative `alpha` stays accurate.
pub fn sg_leading_coefficient(alpha: f64, j: usize, element_length: f64) -> Result<f64> {
    if !(alpha > -0.5) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be > -1/2, got {alpha}")));
    }
    if !(element_length > 0.0) {
        return Err(Error::Domain(format!(
            "element length must be positive, got {element_length}"
        )));
    }
    let jf = j as f64;
    let signed_ln = |x: f64| -> (f64, f64) {
        if x > 0.0 {
            (ln_gamma(x), 1.0)
        } else {
            // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
            let s = (PI * x).sin();
            (PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
        }
    };
    let (l1, s1) = signed_ln(2.0 * alpha + 1.0);
    let (l2, s2) = signed_ln(jf + alpha);
    let (l3, s3) = signed_ln(alpha + 1.0);
    let (l4, s4) = signed_ln(jf + 2.0 * alpha);
    let ln_mag = (2.0 * jf - 1.0) * 2f64.ln() - jf * element_length.ln() + l1 + l2 - l3 - l4;
    Ok(s1 * s2 * s3 * s4 * ln_mag.exp())
}

/// 2-norm condition number of the integration matrix with row 0 deleted,
/// computed from the full singular value spectrum (pseudoinverse sense:
/// largest over smallest nonzero singular value).
pub fn condition_number_theta(grid: &PeriodicGrid) -> f64 {
    let fim = build_fim_fast(grid);
    let reduced = fim.theta_rows_1_onward();
    let svd = reduced.svd(false, false);
    let mut min = f64::INFINITY;
    let mut max = 0.0f64;
    for &s in svd.singular_values.iter() {
        if s > 0.0 {
            min = min.min(s);
            max = max.max(s);
        }
    }
    max / min
}
