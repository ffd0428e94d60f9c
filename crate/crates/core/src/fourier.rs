//! Fourier interpolation on equispaced periodic grids and the associated
//! pseudospectral integration matrices.
//!
//! Grid values of a `T`-periodic function are mapped to discrete Fourier
//! coefficients over the index window `k = -N/2 .. N/2-1` (the "primed sum"
//! convention: the `k = N/2` term is omitted everywhere, which is equivalent
//! to folding it onto `k = -N/2` by aliasing). The integration matrices send
//! grid values to integrals of the interpolant over `[0, x_l]`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Equispaced periodic collocation grid: `N` nodes `x_j = T j / N`, `N` even.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGrid {
    period: f64,
    n: usize,
}

impl PeriodicGrid {
    pub fn new(period: f64, n: usize) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::InvalidGrid(format!("period must be > 0, got {period}")));
        }
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!("N must be even and >= 2, got {n}")));
        }
        Ok(Self { period, n })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Node `x_j = T j / N`.
    pub fn node(&self, j: usize) -> f64 {
        self.period * j as f64 / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Angular frequency `omega_k = 2 pi k / T`.
    pub fn omega(&self, k: f64) -> f64 {
        2.0 * PI * k / self.period
    }

    /// Unit roots `e^{2 pi i m / N}` for `m = 0..N-1`.
    fn root_table(&self) -> Vec<Complex64> {
        let n = self.n;
        (0..n)
            .map(|m| {
                let a = 2.0 * PI * m as f64 / n as f64;
                Complex64::new(a.cos(), a.sin())
            })
            .collect()
    }
}

/// Discrete Fourier coefficients of real grid data, `k = -N/2 .. N/2-1`.
///
/// `tilde_f_k = (1/N) sum_j f_j e^{-i omega_k x_j}`. The inverse transform
/// recovers the grid data; see [`inverse_dft`].
pub fn dft_coefficients(values: &[f64], grid: &PeriodicGrid) -> Result<Vec<Complex64>> {
    let n = grid.n();
    if values.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: values.len() });
    }
    let roots = grid.root_table();
    let half = (n / 2) as i64;
    let mut coeffs = Vec::with_capacity(n);
    for k in -half..half {
        let kk = k.rem_euclid(n as i64) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &fj) in values.iter().enumerate() {
            // e^{-i omega_k x_j} = e^{-2 pi i k j / N} = conj(root[(k j) mod N])
            let m = (kk * j) % n;
            acc += fj * roots[m].conj();
        }
        coeffs.push(acc / n as f64);
    }
    Ok(coeffs)
}

/// Inverse of [`dft_coefficients`]: `f_j = sum_{k in K'_N} tilde_f_k e^{i omega_k x_j}`.
pub fn inverse_dft(coeffs: &[Complex64], grid: &PeriodicGrid) -> Result<Vec<f64>> {
    let n = grid.n();
    if coeffs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: coeffs.len() });
    }
    let roots = grid.root_table();
    let half = (n / 2) as i64;
    let mut values = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, k) in (-half..half).enumerate() {
            let kk = k.rem_euclid(n as i64) as usize;
            let m = (kk * j) % n;
            acc += coeffs[idx] * roots[m];
        }
        values.push(acc.re);
    }
    Ok(values)
}

/// `N/2`-degree trigonometric interpolant of real data on a [`PeriodicGrid`].
#[derive(Debug, Clone)]
pub struct FourierInterpolant {
    grid: PeriodicGrid,
    values: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl FourierInterpolant {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        let coeffs = dft_coefficients(&values, &grid)?;
        Ok(Self { grid, values, coeffs })
    }

    /// Interpolant of a function sampled at the grid nodes.
    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Coefficient `tilde_f_k` for `k` in the window `-N/2 .. N/2-1`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let half = (self.grid.n() / 2) as i64;
        assert!(k >= -half && k < half, "coefficient index {k} outside window");
        self.coeffs[(k + half) as usize]
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Evaluate `I_N f(x)`; the argument is interpreted `T`-periodically.
    ///
    /// Within `1e-13 T` of a grid node the stored value is returned directly;
    /// the trigonometric form is singular there and the interpolation
    /// condition pins the value anyway.
    pub fn evaluate(&self, x: f64) -> f64 {
        let n = self.grid.n();
        let t = self.grid.period();
        let xr = x.rem_euclid(t);
        let jr = (xr / t * n as f64).round() as usize;
        if (xr - t * (jr as f64) / n as f64).abs() < 1e-13 * t {
            return self.values[jr % n];
        }
        let half = (n / 2) as i64;
        // The k = -N/2 mode has no conjugate partner inside the primed
        // window; folding it onto the real cosine combination reproduces the
        // Lagrange cot form exactly and keeps the sum conjugate-symmetric.
        // Real part unchanged, imaginary part reduced to rounding noise.
        let w = 2.0 * PI * xr / t;
        let mut acc = self.coeffs[0] * (half as f64 * w).cos();
        // Remaining modes k = -N/2+1 .. N/2-1 via phase recurrence; the
        // per-step multiplication drift stays below ~N eps, well under every
        // tolerance the evaluations feed into.
        let step = Complex64::new(w.cos(), w.sin());
        let a0 = -((half - 1) as f64) * w;
        let mut phase = Complex64::new(a0.cos(), a0.sin());
        for c in &self.coeffs[1..] {
            acc += c * phase;
            phase *= step;
        }
        debug_assert!(
            acc.im.abs() <= 1e-10 * (1.0 + acc.re.abs()),
            "imaginary residue {} too large",
            acc.im
        );
        acc.re
    }
}

/// Square first-order Fourier integration matrix: row `l` maps grid values to
/// the integral of the interpolant over `[0, x_l]`.
#[derive(Debug, Clone)]
pub struct FIMatrix {
    theta: DMatrix<f64>,
    grid: PeriodicGrid,
}

impl FIMatrix {
    pub fn theta(&self) -> &DMatrix<f64> {
        &self.theta
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    /// The full-period row `Theta_N`: every entry equals `T/N`.
    pub fn period_row(&self) -> Vec<f64> {
        vec![self.grid.period() / self.grid.n() as f64; self.grid.n()]
    }

    /// `Theta f`: integrals of the interpolant over `[0, x_l]` for every `l`.
    pub fn integrate(&self, values: &[f64]) -> Result<Vec<f64>> {
        let n = self.grid.n();
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        Ok((0..n)
            .map(|l| (0..n).map(|j| self.theta[(l, j)] * values[j]).sum())
            .collect())
    }

    /// Rows `1..N-1` as an `(N-1) x N` matrix (row 0 deleted).
    pub fn theta_rows_1_onward(&self) -> DMatrix<f64> {
        self.theta.rows(1, self.grid.n() - 1).into_owned()
    }
}

/// Rectangular Fourier integration matrix for arbitrary targets in `(0, T]`.
#[derive(Debug, Clone)]
pub struct RectFIMatrix {
    theta_hat: DMatrix<f64>,
    targets: Vec<f64>,
    grid: PeriodicGrid,
}

impl RectFIMatrix {
    pub fn theta_hat(&self) -> &DMatrix<f64> {
        &self.theta_hat
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// `Theta_hat f`: integrals of the interpolant over `[0, y_l]`.
    pub fn integrate(&self, values: &[f64]) -> Result<Vec<f64>> {
        let n = self.grid.n();
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        Ok((0..self.targets.len())
            .map(|l| (0..n).map(|j| self.theta_hat[(l, j)] * values[j]).sum())
            .collect())
    }
}

/// Integral of the interpolant over the whole period: `(T/N) sum_j f_j`.
pub fn fpsq_period(grid: &PeriodicGrid, values: &[f64]) -> Result<f64> {
    if values.len() != grid.n() {
        return Err(Error::DimensionMismatch { expected: grid.n(), got: values.len() });
    }
    Ok(grid.period() / grid.n() as f64 * values.iter().sum::<f64>())
}

/// Entry formula evaluated the slow way: fresh complex exponentials for every
/// `(l, j, k)` triple. Reference oracle for the fast constructor and the
/// baseline for its speed comparison.
pub fn build_fim_direct(grid: &PeriodicGrid) -> FIMatrix {
    let n = grid.n();
    let t = grid.period();
    let half = (n / 2) as i64;
    let c2 = Complex64::new(0.0, t / (2.0 * PI));
    let mut theta = DMatrix::zeros(n, n);
    for l in 1..n {
        let xl = grid.node(l);
        for j in 0..n {
            let xj = grid.node(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in -half..half {
                if k == 0 {
                    continue;
                }
                let wk = grid.omega(k as f64);
                let ej = Complex64::new((-wk * xj).cos(), (-wk * xj).sin());
                let el = Complex64::new((wk * xl).cos(), (wk * xl).sin());
                acc += ej * (Complex64::new(1.0, 0.0) - el) / k as f64;
            }
            theta[(l, j)] = (xl + (c2 * acc).re) / n as f64;
        }
    }
    FIMatrix { theta, grid: grid.clone() }
}

/// Fast constructor: precomputes the exponential table, evaluates only about
/// half of each row and mirrors the rest through the row-wise twin identities
/// `theta_{l,j} = theta_{l,l-j}` and `theta_{l,N-j} = theta_{l,l+j}`.
/// Mirrored entries are copied, hence bitwise equal to their twins.
pub fn build_fim_fast(grid: &PeriodicGrid) -> FIMatrix {
    let n = grid.n();
    let t = grid.period();
    let half = (n / 2) as i64;
    let c2 = Complex64::new(0.0, t / (2.0 * PI));
    let roots = grid.root_table();

    // a[j][m] = e^{i omega_k x_j} and inv_k[m] = 1/k for the nonzero window.
    let ks: Vec<i64> = (-half..half).filter(|&k| k != 0).collect();
    let inv_k: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
    let a: Vec<Vec<Complex64>> = (0..n)
        .map(|j| ks.iter().map(|&k| roots[(k.rem_euclid(n as i64) as usize * j) % n]).collect())
        .collect();

    let mut theta = DMatrix::zeros(n, n);
    for l in 1..n {
        let xl = grid.node(l);
        let b: Vec<Complex64> = a[l].iter().map(|&e| Complex64::new(1.0, 0.0) - e).collect();
        let entry = |j: usize| -> f64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &bm) in b.iter().enumerate() {
                acc += bm * a[j][m].conj() * inv_k[m];
            }
            (xl + (c2 * acc).re) / n as f64
        };
        // Columns 0..=l: compute j <= l/2, mirror onto l-j.
        for j in 0..=l / 2 {
            let e = entry(j);
            theta[(l, j)] = e;
            theta[(l, l - j)] = e;
        }
        // Columns l+1..N-1: compute l+m, mirror onto N-m.
        for m in 1..=(n - l) / 2 {
            let j1 = l + m;
            if j1 > n - 1 {
                break;
            }
            let j2 = n - m;
            let e = entry(j1);
            theta[(l, j1)] = e;
            theta[(l, j2)] = e;
        }
    }
    FIMatrix { theta, grid: grid.clone() }
}

/// Rectangular FIM per the target-replacement rule; a target exactly equal to
/// `T` gets the constant row `T/N`.
pub fn build_rect_fim(grid: &PeriodicGrid, targets: &[f64]) -> Result<RectFIMatrix> {
    let n = grid.n();
    let t = grid.period();
    for &y in targets {
        if !(y > 0.0 && y <= t) {
            return Err(Error::Domain(format!("target {y} outside (0, {t}]")));
        }
    }
    let half = (n / 2) as i64;
    let c2 = Complex64::new(0.0, t / (2.0 * PI));
    let roots = grid.root_table();
    let ks: Vec<i64> = (-half..half).filter(|&k| k != 0).collect();
    let inv_k: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
    let a: Vec<Vec<Complex64>> = (0..n)
        .map(|j| ks.iter().map(|&k| roots[(k.rem_euclid(n as i64) as usize * j) % n]).collect())
        .collect();

    let mut theta_hat = DMatrix::zeros(targets.len(), n);
    for (l, &y) in targets.iter().enumerate() {
        if y == t {
            for j in 0..n {
                theta_hat[(l, j)] = t / n as f64;
            }
            continue;
        }
        let b: Vec<Complex64> = ks
            .iter()
            .map(|&k| {
                let wy = grid.omega(k as f64) * y;
                Complex64::new(1.0 - wy.cos(), -wy.sin())
            })
            .collect();
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &bm) in b.iter().enumerate() {
                acc += bm * a[j][m].conj() * inv_k[m];
            }
            theta_hat[(l, j)] = (y + (c2 * acc).re) / n as f64;
        }
    }
    Ok(RectFIMatrix { theta_hat, targets: targets.to_vec(), grid: grid.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid(t: f64, n: usize) -> PeriodicGrid {
        PeriodicGrid::new(t, n).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(PeriodicGrid::new(1.0, 7).is_err());
        assert!(PeriodicGrid::new(1.0, 0).is_err());
        assert!(PeriodicGrid::new(-1.0, 8).is_err());
        assert!(PeriodicGrid::new(1.0, 2).is_ok());
    }

    #[test]
    fn dft_constant() {
        let g = grid(2.0, 8);
        let c = dft_coefficients(&vec![3.5; 8], &g).unwrap();
        assert_abs_diff_eq!(c[4].re, 3.5, epsilon = 1e-14); // k = 0
        for (i, ck) in c.iter().enumerate() {
            if i != 4 {
                assert!(ck.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn dft_single_cosine_mode() {
        for n in [4usize, 10, 32] {
            let g = grid(1.0, n);
            let vals: Vec<f64> = g.nodes().iter().map(|&x| (g.omega(1.0) * x).cos()).collect();
            let c = dft_coefficients(&vals, &g).unwrap();
            let half = n as i64 / 2;
            for k in -half..half {
                let expect = if k.abs() == 1 { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(c[(k + half) as usize].re, expect, epsilon = 1e-12);
                assert!(c[(k + half) as usize].im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dft_roundtrip_and_conjugate_symmetry() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for n in (2..=64).step_by(2) {
            let g = grid(1.5, n);
            let vals: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let c = dft_coefficients(&vals, &g).unwrap();
            let back = inverse_dft(&c, &g).unwrap();
            for (a, b) in vals.iter().zip(&back) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
            let half = n as i64 / 2;
            for k in 1..half {
                let a = c[(k + half) as usize];
                let b = c[(-k + half) as usize];
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
                assert_abs_diff_eq!(a.im, -b.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn dft_rejects_bad_length() {
        let g = grid(1.0, 8);
        assert!(dft_coefficients(&[0.0; 7], &g).is_err());
    }

    #[test]
    fn interpolant_matches_values_at_nodes() {
        let g = grid(3.0, 12);
        let vals: Vec<f64> = (0..12).map(|j| (j as f64).sin() + 0.3 * j as f64).collect();
        let interp = FourierInterpolant::new(g.clone(), vals.clone()).unwrap();
        for j in 0..12 {
            assert_eq!(interp.evaluate(g.node(j)), vals[j]);
        }
        // Periodic wrap: x = T maps to node 0.
        assert_eq!(interp.evaluate(3.0), vals[0]);
    }

    #[test]
    fn interpolant_reproduces_trig_polynomial_off_grid() {
        let g = grid(1.0, 16);
        let w = g.omega(1.0);
        let f = move |x: f64| 1.0 + (3.0 * w * x).cos() - 2.0 * (5.0 * w * x).sin();
        let interp = FourierInterpolant::from_fn(g, f).unwrap();
        for &x in &[0.013, 0.37, 0.61234, 0.95] {
            assert_abs_diff_eq!(interp.evaluate(x), f(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn coefficient_aliasing_identity() {
        // Recompute with shifted index windows by hand: tilde_f_{k+-N} = tilde_f_k.
        let g = grid(1.0, 10);
        let vals: Vec<f64> = g.nodes().iter().map(|&x| (2.0 * PI * x).cos() + x).collect();
        let c = dft_coefficients(&vals, &g).unwrap();
        let n = 10i64;
        for k in -5..5 {
            let shifted: Complex64 = vals
                .iter()
                .enumerate()
                .map(|(j, &f)| {
                    let w = g.omega((k + n) as f64) * g.node(j);
                    f * Complex64::new((-w).cos(), (-w).sin())
                })
                .sum::<Complex64>()
                / 10.0;
            let base = c[(k + 5) as usize];
            assert_abs_diff_eq!(base.re, shifted.re, epsilon = 1e-12);
            assert_abs_diff_eq!(base.im, shifted.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn fim_direct_row0_zero_and_smallest_n() {
        for t in [1.0, 2.5] {
            let g = grid(t, 2);
            let fim = build_fim_direct(&g);
            assert_eq!(fim.theta()[(0, 0)], 0.0);
            assert_eq!(fim.theta()[(0, 1)], 0.0);
            // Row 1 from the primed sum over k = -1 only: both entries T/4.
            assert_abs_diff_eq!(fim.theta()[(1, 0)], t / 4.0, epsilon = 1e-14);
            assert_abs_diff_eq!(fim.theta()[(1, 1)], t / 4.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn fim_integrates_cosine_analytically() {
        let g = grid(1.0, 100);
        let fim = build_fim_fast(&g);
        let w = 2.0 * PI;
        let vals: Vec<f64> = g.nodes().iter().map(|&x| (w * x).cos()).collect();
        let ints = fim.integrate(&vals).unwrap();
        for (l, &i) in ints.iter().enumerate() {
            let exact = (w * g.node(l)).sin() / w;
            assert_abs_diff_eq!(i, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn fim_twin_symmetry() {
        let g = grid(1.0, 20);
        let fim = build_fim_direct(&g);
        let th = fim.theta();
        for l in 1..20 {
            for j in 0..=(l - 1) / 2 {
                assert_abs_diff_eq!(th[(l, j)], th[(l, l - j)], epsilon = 1e-14);
            }
        }
        for l in 1..19 {
            for j in 1..=(20 - l - 1) / 2 {
                assert_abs_diff_eq!(th[(l, 20 - j)], th[(l, l + j)], epsilon = 1e-14);
            }
        }
        // The fast path copies twins, so they are bitwise identical there.
        let fast = build_fim_fast(&g);
        let th = fast.theta();
        for l in 1..20usize {
            for j in 0..=(l - 1) / 2 {
                assert_eq!(th[(l, j)].to_bits(), th[(l, l - j)].to_bits());
            }
        }
    }

    #[test]
    fn fim_fast_matches_direct() {
        for n in (10..=40).step_by(2) {
            let g = grid(1.0, n);
            let slow = build_fim_direct(&g);
            let fast = build_fim_fast(&g);
            let mut max = 0.0f64;
            for l in 0..n {
                for j in 0..n {
                    max = max.max((slow.theta()[(l, j)] - fast.theta()[(l, j)]).abs());
                }
            }
            assert!(max <= 1e-13, "N={n}: max |fast - direct| = {max:e}");
        }
    }

    #[test]
    fn fpsq_integrates_low_modes_exactly() {
        let n = 16;
        let g = grid(2.0, n);
        let fim = build_fim_fast(&g);
        for k in 0..(n as i64 / 2) {
            let w = g.omega(k as f64);
            let cos_vals: Vec<f64> = g.nodes().iter().map(|&x| (w * x).cos()).collect();
            let sin_vals: Vec<f64> = g.nodes().iter().map(|&x| (w * x).sin()).collect();
            let ic = fim.integrate(&cos_vals).unwrap();
            let is = fim.integrate(&sin_vals).unwrap();
            for l in 0..n {
                let xl = g.node(l);
                let (ec, es) = if k == 0 {
                    (xl, 0.0)
                } else {
                    ((w * xl).sin() / w, (1.0 - (w * xl).cos()) / w)
                };
                assert_abs_diff_eq!(ic[l], ec, epsilon = 1e-12);
                assert_abs_diff_eq!(is[l], es, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn period_row_integrates_constant() {
        let g = grid(2.0, 10);
        assert_abs_diff_eq!(fpsq_period(&g, &vec![3.0; 10]).unwrap(), 6.0, epsilon = 1e-13);
    }

    #[test]
    fn rect_fim_matches_square_rows_and_period() {
        let g = grid(2.0, 12);
        let fim = build_fim_direct(&g);
        let targets: Vec<f64> = (1..12).map(|j| g.node(j)).collect();
        let rect = build_rect_fim(&g, &targets).unwrap();
        for (r, l) in (1..12).enumerate() {
            for j in 0..12 {
                assert_abs_diff_eq!(
                    rect.theta_hat()[(r, j)],
                    fim.theta()[(l, j)],
                    epsilon = 1e-12
                );
            }
        }
        let rect_t = build_rect_fim(&g, &[2.0]).unwrap();
        for j in 0..12 {
            assert_eq!(rect_t.theta_hat()[(0, j)], 2.0 / 12.0);
        }
    }

    #[test]
    fn rect_fim_third_period_cosine() {
        let g = grid(1.0, 64);
        let rect = build_rect_fim(&g, &[1.0 / 3.0]).unwrap();
        let w = 2.0 * PI;
        let vals: Vec<f64> = g.nodes().iter().map(|&x| (w * x).cos()).collect();
        let got = rect.integrate(&vals).unwrap()[0];
        assert_abs_diff_eq!(got, (w / 3.0).sin() / w, epsilon = 1e-12);
    }

    #[test]
    fn rect_fim_rejects_out_of_domain_targets() {
        let g = grid(1.0, 8);
        assert!(build_rect_fim(&g, &[0.0]).is_err());
        assert!(build_rect_fim(&g, &[-0.5]).is_err());
        assert!(build_rect_fim(&g, &[1.0 + 1e-12]).is_err());
    }
}
