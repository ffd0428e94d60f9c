//! Standardized Gegenbauer polynomials, Gauss nodes and Christoffel numbers,
//! barycentric weights, and shifted-Gegenbauer integration matrices on mesh
//! partitions, plus piecewise quadrature of discontinuous integrands.
//!
//! The polynomials follow the standardization `G_n(1) = 1`, under which the
//! three-term recurrence reads
//! `G_{n+1}(x) = (2 (n + alpha) x G_n(x) - n G_{n-1}(x)) / (n + 2 alpha)`
//! and stays well defined on the whole parameter range `alpha > -1/2`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// Default Gegenbauer parameter when a caller does not care.
pub const DEFAULT_ALPHA: f64 = 0.5;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -0.5) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be > -1/2, got {alpha}")));
    }
    Ok(())
}

/// `G_n(x)` with the standardization `G_n(1) = 1`.
pub fn gegenbauer_eval(alpha: f64, n: usize, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(eval_with_derivative(alpha, n, x).0)
}

/// Value and first derivative of the standardized polynomial.
pub(crate) fn eval_with_derivative(alpha: f64, n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut gm, mut dgm) = (1.0, 0.0); // G_0
    let (mut g, mut dg) = (x, 1.0); // G_1
    for m in 1..n {
        let mf = m as f64;
        let c = 2.0 * (mf + alpha);
        let denom = mf + 2.0 * alpha;
        let gn = (c * x * g - mf * gm) / denom;
        let dgn = (c * (g + x * dg) - mf * dgm) / denom;
        gm = g;
        dgm = dg;
        g = gn;
        dg = dgn;
    }
    (g, dg)
}

/// Indefinite integral of the standardized polynomial from `-1` to `x`.
///
/// Derived from the ultraspherical identity
/// `2 (n + alpha) C_n = d/dx (C_{n+1} - C_{n-1})` rewritten for the
/// `G_n(1) = 1` normalization. Undefined at `alpha = 0`, `n = 1`, where the
/// ratio of leading coefficients degenerates; the test corpus stays on
/// `alpha in {-0.1, 0.5, 1}`.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn integral_from_minus_one(alpha: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return x + 1.0;
    }
    let nf = n as f64;
    let rp = (nf + 2.0 * alpha) / (nf + 1.0);
    let rm = nf / (nf + 2.0 * alpha - 1.0);
    let prim = |y: f64| -> f64 {
        let gp = eval_with_derivative(alpha, n + 1, y).0;
        let gm = eval_with_derivative(alpha, n - 1, y).0;
        (rp * gp - rm * gm) / (2.0 * (nf + alpha))
    };
    prim(x) - prim(-1.0)
}

/// Gauss nodes (zeros of `G_{n+1}`) and Christoffel numbers on `[-1, 1]` for
/// the weight `(1 - x^2)^{alpha - 1/2}`.
///
/// Nodes come from the symmetric Jacobi tridiagonal eigenproblem and are then
/// polished by Newton iteration on `G_{n+1}`; node/weight symmetry about the
/// origin is enforced exactly.
pub fn gg_nodes_weights(alpha: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_alpha(alpha)?;
    let points = n + 1;
    // Total weight integral via the Legendre duplication form.
    let mu0 = (0.5 * std::f64::consts::PI.ln() + ln_gamma(alpha + 0.5) - ln_gamma(alpha + 1.0)).exp();
    if points == 1 {
        return Ok((vec![0.0], vec![mu0]));
    }

    // Ultraspherical recurrence coefficients (monic form): beta_1 has a
    // removable singularity in the generic Jacobi formula, so it is coded
    // separately.
    let beta = |k: usize| -> f64 {
        let kf = k as f64;
        if k == 1 {
            1.0 / (2.0 * (alpha + 1.0))
        } else {
            kf * (kf + 2.0 * alpha - 1.0) / (4.0 * (kf + alpha) * (kf + alpha - 1.0))
        }
    };
    let mut jac = DMatrix::<f64>::zeros(points, points);
    for k in 1..points {
        let b = beta(k).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = nalgebra::SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    // Newton polish on G_{n+1}.
    for t in nodes.iter_mut() {
        for _ in 0..50 {
            let (g, dg) = eval_with_derivative(alpha, points, *t);
            let dt = g / dg;
            *t -= dt;
            if dt.abs() < 1e-14 {
                break;
            }
        }
    }
    // Exact symmetrization about the origin.
    for i in 0..points / 2 {
        let j = points - 1 - i;
        let t = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -t;
        nodes[j] = t;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if points % 2 == 1 {
        nodes[points / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// Mesh partition `0 = tau_0 < tau_1 < ... < tau_K = T` of the period.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshPartition {
    tau: Vec<f64>,
}

impl MeshPartition {
    pub fn new(tau: Vec<f64>) -> Result<Self> {
        if tau.len() < 2 {
            return Err(Error::InvalidGrid("partition needs at least two mesh points".into()));
        }
        if tau[0] != 0.0 {
            return Err(Error::InvalidGrid(format!("partition must start at 0, got {}", tau[0])));
        }
        let t = *tau.last().unwrap();
        if !(t > 0.0) {
            return Err(Error::InvalidGrid("partition endpoint must be positive".into()));
        }
        for w in tau.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidGrid(format!(
                    "mesh points must increase strictly: {} !< {}",
                    w[0], w[1]
                )));
            }
            if w[1] - w[0] < 1e-12 * t {
                return Err(Error::DegeneratePartition(format!(
                    "element [{}, {}] is narrower than 1e-12 T",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { tau })
    }

    /// Number of elements `K`.
    pub fn len(&self) -> usize {
        self.tau.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mesh_points(&self) -> &[f64] {
        &self.tau
    }

    pub fn period(&self) -> f64 {
        *self.tau.last().unwrap()
    }

    /// Element `k` as `(tau_k, tau_{k+1})`, `k = 0..K-1`.
    pub fn element(&self, k: usize) -> (f64, f64) {
        (self.tau[k], self.tau[k + 1])
    }

    /// Element midpoint `tau_k^+`.
    pub fn center(&self, k: usize) -> f64 {
        0.5 * (self.tau[k] + self.tau[k + 1])
    }

    /// Element half-length `tau_k^-`.
    pub fn half_width(&self, k: usize) -> f64 {
        0.5 * (self.tau[k + 1] - self.tau[k])
    }

    /// Index of the element whose half-open interval `(tau_k, tau_{k+1}]`
    /// contains `y`.
    pub fn locate(&self, y: f64) -> Result<usize> {
        if !(y > 0.0 && y <= self.period()) {
            return Err(Error::Domain(format!("target {y} outside (0, {}]", self.period())));
        }
        let k = self.tau.partition_point(|&t| t < y);
        Ok((k - 1).min(self.len() - 1))
    }
}

/// Shifted Gegenbauer-Gauss data on one mesh element: nodes, Christoffel
/// numbers, barycentric weights, and normalization factors.
#[derive(Debug, Clone)]
pub struct SGGNodes {
    alpha: f64,
    degree: usize,
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    christoffel: Vec<f64>,
    bary_weights: Vec<f64>,
    norms: Vec<f64>,
}

impl SGGNodes {
    /// Data on the reference element `[-1, 1]`.
    pub fn reference(alpha: f64, degree: usize) -> Result<Self> {
        let (nodes, weights) = gg_nodes_weights(alpha, degree)?;
        Ok(Self::assemble(alpha, degree, -1.0, 1.0, nodes, weights))
    }

    /// Data on element `k` of `partition`, affinely mapped from the reference
    /// rule: `t = tau^- x + tau^+`, `varpi_k = (tau^-)^{2 alpha} varpi`.
    pub fn shift_to_partition(
        reference: &(Vec<f64>, Vec<f64>),
        alpha: f64,
        partition: &MeshPartition,
        k: usize,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if k >= partition.len() {
            return Err(Error::Domain(format!(
                "partition index {k} out of range (K = {})",
                partition.len()
            )));
        }
        let (rn, rw) = reference;
        if rn.len() != rw.len() || rn.is_empty() {
            return Err(Error::DimensionMismatch { expected: rn.len().max(1), got: rw.len() });
        }
        let degree = rn.len() - 1;
        let (a, b) = partition.element(k);
        let hw = partition.half_width(k);
        let mid = partition.center(k);
        let scale = hw.powf(2.0 * alpha);
        let nodes: Vec<f64> = rn.iter().map(|&x| hw * x + mid).collect();
        let weights: Vec<f64> = rw.iter().map(|&w| scale * w).collect();
        Ok(Self::assemble(alpha, degree, a, b, nodes, weights))
    }

    /// Convenience constructor on an arbitrary interval `[a, b]`.
    pub fn on_interval(alpha: f64, degree: usize, a: f64, b: f64) -> Result<Self> {
        if !(b > a) {
            return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
        }
        let reference = gg_nodes_weights(alpha, degree)?;
        let hw = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let scale = hw.powf(2.0 * alpha);
        let nodes: Vec<f64> = reference.0.iter().map(|&x| hw * x + mid).collect();
        let weights: Vec<f64> = reference.1.iter().map(|&w| scale * w).collect();
        Ok(Self::assemble(alpha, degree, a, b, nodes, weights))
    }

    fn assemble(
        alpha: f64,
        degree: usize,
        a: f64,
        b: f64,
        nodes: Vec<f64>,
        christoffel: Vec<f64>,
    ) -> Self {
        let hw = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        // Trigonometric barycentric weights: avoids the cancellation the
        // algebraic square-root form suffers near clustered endpoints.
        let bary_weights: Vec<f64> = nodes
            .iter()
            .zip(&christoffel)
            .enumerate()
            .map(|(l, (&t, &w))| {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let c = ((t - mid) / hw).clamp(-1.0, 1.0);
                hw.powf(-alpha) * sign * c.acos().sin() * w.sqrt()
            })
            .collect();
        // Normalization factors lambda_{k,j}: quadrature of G_j^2 w with a
        // rule of degree degree+10, then scaled by (tau^-)^{2 alpha}.
        let (hn, hww) = gg_nodes_weights(alpha, degree + 10).expect("alpha already validated");
        let norms: Vec<f64> = (0..=degree)
            .map(|j| {
                let refval: f64 = hn
                    .iter()
                    .zip(&hww)
                    .map(|(&x, &w)| {
                        let g = eval_with_derivative(alpha, j, x).0;
                        w * g * g
                    })
                    .sum();
                hw.powf(2.0 * alpha) * refval
            })
            .collect();
        Self { alpha, degree, a, b, nodes, christoffel, bary_weights, norms }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Interpolant degree `N_k`; the rule has `N_k + 1` points.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn christoffel(&self) -> &[f64] {
        &self.christoffel
    }

    pub fn bary_weights(&self) -> &[f64] {
        &self.bary_weights
    }

    /// Normalization factors `lambda_{k,0:N_k}`.
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// Values of all Lagrange cardinals at `t` via the true barycentric form.
    pub fn cardinal_row(&self, t: f64) -> Vec<f64> {
        let n = self.nodes.len();
        let mut row = vec![0.0; n];
        for (j, &tj) in self.nodes.iter().enumerate() {
            if t == tj {
                row[j] = 1.0;
                return row;
            }
        }
        let mut denom = 0.0;
        for (j, (&tj, &xi)) in self.nodes.iter().zip(&self.bary_weights).enumerate() {
            let r = xi / (t - tj);
            row[j] = r;
            denom += r;
        }
        for r in row.iter_mut() {
            *r /= denom;
        }
        row
    }

    /// Barycentric interpolation of grid data at `t`.
    pub fn interpolate(&self, fvals: &[f64], t: f64) -> f64 {
        self.cardinal_row(t).iter().zip(fvals).map(|(c, f)| c * f).sum()
    }
}

/// Barycentric weights of an SGG node set, algebraic square-root form.
/// Reference cross-check for the trigonometric form stored on the nodes.
pub fn barycentric_weights_algebraic(sgg: &SGGNodes) -> Vec<f64> {
    let (a, b) = sgg.interval();
    let hw = 0.5 * (b - a);
    sgg.nodes()
        .iter()
        .zip(sgg.christoffel())
        .enumerate()
        .map(|(l, (&t, &w))| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            hw.powf(-(sgg.alpha() + 1.0)) * sign * ((b - t) * (t - a) * w).sqrt()
        })
        .collect()
}

/// Shifted Gegenbauer integration matrix on one element: row `i` integrates
/// grid data from the element's left endpoint to node `i`; `full_row` covers
/// the whole element; `rect` holds rows for arbitrary extra targets.
#[derive(Debug, Clone)]
pub struct SGIMatrix {
    p: DMatrix<f64>,
    full_row: Vec<f64>,
    rect: Option<DMatrix<f64>>,
    targets: Option<Vec<f64>>,
}

impl SGIMatrix {
    pub fn p(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn full_row(&self) -> &[f64] {
        &self.full_row
    }

    pub fn rect(&self) -> Option<&DMatrix<f64>> {
        self.rect.as_ref()
    }

    pub fn targets(&self) -> Option<&[f64]> {
        self.targets.as_deref()
    }

    /// Integral over the whole element of the interpolant of `fvals`.
    pub fn integrate_full(&self, fvals: &[f64]) -> f64 {
        self.full_row.iter().zip(fvals).map(|(p, f)| p * f).sum()
    }
}

/// Integrals of the Lagrange cardinals of `sgg` from the left endpoint to
/// each node (square part), the right endpoint (full row), and optionally to
/// arbitrary `targets` in `(a, b]`.
///
/// Cardinals are polynomials of degree `N_k`, so the `2 N_k + 8`-point
/// Legendre rule used per upper limit integrates them exactly.
pub fn build_sgim(sgg: &SGGNodes, targets: Option<&[f64]>) -> Result<SGIMatrix> {
    let (a, b) = sgg.interval();
    if let Some(ts) = targets {
        for &y in ts {
            if !(y > a && y <= b) {
                return Err(Error::Domain(format!("target {y} outside ({a}, {b}]")));
            }
        }
    }
    let npts = sgg.nodes().len();
    let (gl_nodes, gl_weights) = gg_nodes_weights(0.5, 2 * sgg.degree() + 7)?;

    let row_to = |upper: f64| -> Vec<f64> {
        let hw = 0.5 * (upper - a);
        let mid = 0.5 * (upper + a);
        let mut row = vec![0.0; npts];
        for (&x, &w) in gl_nodes.iter().zip(&gl_weights) {
            let t = hw * x + mid;
            let cards = sgg.cardinal_row(t);
            for (r, c) in row.iter_mut().zip(&cards) {
                *r += w * c;
            }
        }
        for r in row.iter_mut() {
            *r *= hw;
        }
        row
    };

    let mut p = DMatrix::zeros(npts, npts);
    for (i, &ti) in sgg.nodes().iter().enumerate() {
        let row = row_to(ti);
        for (j, &v) in row.iter().enumerate() {
            p[(i, j)] = v;
        }
    }
    let full_row = row_to(b);
    let (rect, targets) = match targets {
        Some(ts) => {
            let mut m = DMatrix::zeros(ts.len(), npts);
            for (i, &y) in ts.iter().enumerate() {
                let row = if y == b { full_row.clone() } else { row_to(y) };
                for (j, &v) in row.iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            (Some(m), Some(ts.to_vec()))
        }
        None => (None, None),
    };
    Ok(SGIMatrix { p, full_row, rect, targets })
}

/// Cumulative integrals `int_0^y sampler` for sorted targets in `(0, T]`,
/// evaluated element-by-element: closed earlier elements contribute their
/// full-row integrals, the element containing `y` contributes a rectangular
/// row. Exponentially accurate when the sampler is analytic inside every
/// element.
pub fn piecewise_integrate(
    sampler: impl Fn(f64) -> f64,
    partition: &MeshPartition,
    degrees: &[usize],
    alpha: f64,
    targets: &[f64],
) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    if degrees.len() != partition.len() {
        return Err(Error::DimensionMismatch { expected: partition.len(), got: degrees.len() });
    }
    for w in targets.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Domain(format!("targets not sorted: {} after {}", w[1], w[0])));
        }
    }
    // Bin the targets per element up front.
    let mut bins: Vec<Vec<f64>> = vec![Vec::new(); partition.len()];
    for &y in targets {
        bins[partition.locate(y)?].push(y);
    }

    let mut results = Vec::with_capacity(targets.len());
    let mut prefix = 0.0;
    for k in 0..partition.len() {
        let sgg = SGGNodes::on_interval(alpha, degrees[k], partition.element(k).0, partition.element(k).1)?;
        let samples: Vec<f64> = sgg.nodes().iter().map(|&t| sampler(t)).collect();
        if bins[k].is_empty() {
            let sgim = build_sgim(&sgg, None)?;
            prefix += sgim.integrate_full(&samples);
            continue;
        }
        let sgim = build_sgim(&sgg, Some(&bins[k]))?;
        let rect = sgim.rect().unwrap();
        for i in 0..bins[k].len() {
            let local: f64 = (0..samples.len()).map(|j| rect[(i, j)] * samples[j]).sum();
            results.push(prefix + local);
        }
        prefix += sgim.integrate_full(&samples);
    }
    // Targets were binned in ascending element order and each bin kept its
    // input order, so results align with the sorted input.
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn g0_is_one_and_standardization_at_one() {
        for &alpha in &[-0.1, 0.5, 1.0] {
            assert_eq!(gegenbauer_eval(alpha, 0, 0.37).unwrap(), 1.0);
            for n in 0..=10 {
                assert_abs_diff_eq!(gegenbauer_eval(alpha, n, 1.0).unwrap(), 1.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn legendre_value_at_zero() {
        // alpha = 1/2 gives Legendre with P_2(x) = (3x^2 - 1)/2.
        assert_abs_diff_eq!(gegenbauer_eval(0.5, 2, 0.0).unwrap(), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(gegenbauer_eval(0.5, 2, 0.7).unwrap(), (3.0 * 0.49 - 1.0) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn alpha_domain_error() {
        assert!(gegenbauer_eval(-0.5, 3, 0.0).is_err());
        assert!(gg_nodes_weights(-0.6, 4).is_err());
    }

    #[test]
    fn parity_symmetry() {
        for &alpha in &[-0.1, 0.5, 1.0] {
            for n in 0..8usize {
                for &x in &[0.1, 0.45, 0.9] {
                    let plus = gegenbauer_eval(alpha, n, x).unwrap();
                    let minus = gegenbauer_eval(alpha, n, -x).unwrap();
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    assert_abs_diff_eq!(minus, sign * plus, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn legendre_two_point_nodes() {
        let (nodes, _) = gg_nodes_weights(0.5, 1).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert_abs_diff_eq!(nodes[0], -r, epsilon = 1e-14);
        assert_abs_diff_eq!(nodes[1], r, epsilon = 1e-14);
    }

    #[test]
    fn nodes_and_weights_symmetric() {
        for &alpha in &[-0.1, 0.5, 1.0, 2.3] {
            for n in 0..12usize {
                let (nodes, weights) = gg_nodes_weights(alpha, n).unwrap();
                for i in 0..=n {
                    assert_eq!(nodes[i], -nodes[n - i]);
                    assert_eq!(weights[i], weights[n - i]);
                    assert!(weights[i] > 0.0);
                }
                for w in nodes.windows(2) {
                    assert!(w[1] > w[0]);
                }
            }
        }
    }

    #[test]
    fn gauss_exactness_for_weighted_monomials() {
        // Exact weighted monomial integrals by parts:
        // m_j = int x^j (1-x^2)^(alpha-1/2) dx, m_0 = mu0,
        // m_j = (j-1)/(j + 2 alpha) m_{j-2} (odd ones vanish).
        for &alpha in &[-0.1, 0.5, 1.0] {
            let mu0 = (0.5 * std::f64::consts::PI.ln() + ln_gamma(alpha + 0.5)
                - ln_gamma(alpha + 1.0))
            .exp();
            for n in 0..=10usize {
                let (nodes, weights) = gg_nodes_weights(alpha, n).unwrap();
                let mut exact = vec![0.0; 2 * n + 2];
                exact[0] = mu0;
                for j in (2..2 * n + 2).step_by(2) {
                    exact[j] = (j as f64 - 1.0) / (j as f64 + 2.0 * alpha) * exact[j - 2];
                }
                for (m, &e) in exact.iter().enumerate() {
                    let quad: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powi(m as i32)).sum();
                    if e == 0.0 {
                        assert!(quad.abs() < 1e-12 * mu0);
                    } else {
                        assert_relative_eq!(quad, e, epsilon = 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_monomial_plain_integral() {
        // alpha = 1/2 has unit weight: int_{-1}^{1} x^10 dx = 2/11.
        let (nodes, weights) = gg_nodes_weights(0.5, 5).unwrap();
        let quad: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powi(10)).sum();
        assert_abs_diff_eq!(quad, 2.0 / 11.0, epsilon = 1e-13);
    }

    #[test]
    fn partition_validation() {
        assert!(MeshPartition::new(vec![0.0, 1.0, 2.0]).is_ok());
        assert!(MeshPartition::new(vec![0.1, 1.0]).is_err());
        assert!(MeshPartition::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(MeshPartition::new(vec![0.0, 1.0, 1.0 + 1e-14, 2.0]).is_err());
        assert!(MeshPartition::new(vec![0.0]).is_err());
    }

    #[test]
    fn partition_locate_uses_half_open_elements() {
        let p = MeshPartition::new(vec![0.0, 1.0, 3.0, 10.0]).unwrap();
        assert_eq!(p.locate(0.5).unwrap(), 0);
        assert_eq!(p.locate(1.0).unwrap(), 0);
        assert_eq!(p.locate(1.0 + 1e-9).unwrap(), 1);
        assert_eq!(p.locate(10.0).unwrap(), 2);
        assert!(p.locate(0.0).is_err());
        assert!(p.locate(10.1).is_err());
    }

    #[test]
    fn shift_identity_on_reference_element() {
        let reference = gg_nodes_weights(0.5, 4).unwrap();
        // Build a partition whose single element is [0, 2]; centering maps
        // the element [-1,1] structure onto [0,2] shifted by tau^+ = 1.
        let p = MeshPartition::new(vec![0.0, 2.0]).unwrap();
        let sgg = SGGNodes::shift_to_partition(&reference, 0.5, &p, 0).unwrap();
        // tau^- = 1: nodes are reference + 1, weights unchanged.
        for (s, r) in sgg.nodes().iter().zip(&reference.0) {
            assert_abs_diff_eq!(s - 1.0, *r, epsilon = 1e-15);
        }
        for (s, r) in sgg.christoffel().iter().zip(&reference.1) {
            assert_abs_diff_eq!(*s, *r, epsilon = 1e-15);
        }
    }

    #[test]
    fn shifted_legendre_two_point_on_0_2() {
        let reference = gg_nodes_weights(0.5, 1).unwrap();
        let p = MeshPartition::new(vec![0.0, 2.0]).unwrap();
        let sgg = SGGNodes::shift_to_partition(&reference, 0.5, &p, 0).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert_abs_diff_eq!(sgg.nodes()[0], 1.0 - r, epsilon = 1e-14);
        assert_abs_diff_eq!(sgg.nodes()[1], 1.0 + r, epsilon = 1e-14);
    }

    #[test]
    fn christoffel_positive_after_negative_alpha_shift() {
        let reference = gg_nodes_weights(-0.1, 6).unwrap();
        let p = MeshPartition::new(vec![0.0, 0.3, 1.0]).unwrap();
        for k in 0..2 {
            let sgg = SGGNodes::shift_to_partition(&reference, -0.1, &p, k).unwrap();
            assert!(sgg.christoffel().iter().all(|&w| w > 0.0));
            let scale = p.half_width(k).powf(-0.2);
            let total: f64 = sgg.christoffel().iter().sum();
            let ref_total: f64 = reference.1.iter().sum();
            assert_relative_eq!(total, scale * ref_total, epsilon = 1e-13);
        }
    }

    #[test]
    fn barycentric_weights_alternate_and_match_algebraic_form() {
        let sgg = SGGNodes::on_interval(0.5, 8, 0.0, 1.0).unwrap();
        let trig = sgg.bary_weights();
        for w in trig.windows(2) {
            assert!(w[0] * w[1] < 0.0);
        }
        let alg = barycentric_weights_algebraic(&sgg);
        for (t, a) in trig.iter().zip(&alg) {
            assert_abs_diff_eq!(t, a, epsilon = 1e-10);
        }
    }

    #[test]
    fn barycentric_interpolation_reproduces_polynomial() {
        let n = 7;
        let sgg = SGGNodes::on_interval(-0.1, n, 2.0, 5.0).unwrap();
        let poly = |t: f64| 3.0 - t + 0.5 * t.powi(3) - 0.01 * t.powi(7);
        let fvals: Vec<f64> = sgg.nodes().iter().map(|&t| poly(t)).collect();
        for &t in &[2.01, 2.7, 3.333, 4.2, 4.999, sgg.nodes()[3]] {
            assert_relative_eq!(sgg.interpolate(&fvals, t), poly(t), epsilon = 1e-12);
        }
    }

    #[test]
    fn discrete_orthogonality() {
        for &alpha in &[-0.1, 0.5, 1.0] {
            let nk = 6;
            let sgg = SGGNodes::on_interval(alpha, nk, 0.0, 2.5).unwrap();
            let (mid, hw) = (1.25, 1.25);
            for m in 0..=nk {
                for n in 0..=nk {
                    if m + n > 2 * nk + 1 {
                        continue;
                    }
                    let q: f64 = sgg
                        .nodes()
                        .iter()
                        .zip(sgg.christoffel())
                        .map(|(&t, &w)| {
                            let x = (t - mid) / hw;
                            w * eval_with_derivative(alpha, m, x).0 * eval_with_derivative(alpha, n, x).0
                        })
                        .sum();
                    if m == n {
                        assert_relative_eq!(q, sgg.norms()[n], epsilon = 1e-10);
                    } else {
                        assert!(q.abs() < 1e-10 * sgg.norms()[m.min(n)]);
                    }
                }
            }
        }
    }

    #[test]
    fn christoffel_identity_from_norms() {
        // varpi_l = 1 / sum_j lambda_j^{-1} G_j(t_l)^2
        for &alpha in &[-0.1, 0.5] {
            let nk = 5;
            let sgg = SGGNodes::on_interval(alpha, nk, 0.0, 1.0).unwrap();
            let (mid, hw) = (0.5, 0.5);
            for (l, (&t, &w)) in sgg.nodes().iter().zip(sgg.christoffel()).enumerate() {
                let x = (t - mid) / hw;
                let denom: f64 = (0..=nk)
                    .map(|j| {
                        let g = eval_with_derivative(alpha, j, x).0;
                        g * g / sgg.norms()[j]
                    })
                    .sum();
                assert_relative_eq!(w, 1.0 / denom, epsilon = 1e-10, max_relative = 1e-10);
                let _ = l;
            }
        }
    }

    #[test]
    fn sgim_integrates_constant_to_node_offsets() {
        let sgg = SGGNodes::on_interval(-0.1, 5, 1.0, 4.0).unwrap();
        let sgim = build_sgim(&sgg, None).unwrap();
        let ones = vec![1.0; 6];
        for (i, &ti) in sgg.nodes().iter().enumerate() {
            let got: f64 = (0..6).map(|j| sgim.p()[(i, j)] * ones[j]).sum();
            assert_abs_diff_eq!(got, ti - 1.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(sgim.integrate_full(&ones), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn two_point_legendre_full_row_exact_for_cubics() {
        let sgg = SGGNodes::on_interval(0.5, 1, 0.0, 1.0).unwrap();
        let sgim = build_sgim(&sgg, None).unwrap();
        let cubes: Vec<f64> = sgg.nodes().iter().map(|&t| t * t * t).collect();
        assert_abs_diff_eq!(sgim.integrate_full(&cubes), 0.25, epsilon = 1e-13);
    }

    #[test]
    fn sgim_matches_basis_form() {
        // Rational/quadrature route vs the modal route through the
        // Gegenbauer indefinite-integral recurrence.
        for &alpha in &[-0.1, 0.5, 1.0] {
            let nk = 8;
            let sgg = SGGNodes::on_interval(alpha, nk, 0.0, 1.5).unwrap();
            let sgim = build_sgim(&sgg, None).unwrap();
            let (mid, hw) = (0.75, 0.75);
            for (i, &ti) in sgg.nodes().iter().enumerate() {
                let xi = (ti - mid) / hw;
                for (j, &tj) in sgg.nodes().iter().enumerate() {
                    let xj = (tj - mid) / hw;
                    let modal: f64 = (0..=nk)
                        .map(|l| {
                            let g_at_j = eval_with_derivative(alpha, l, xj).0;
                            sgg.christoffel()[j] / sgg.norms()[l]
                                * g_at_j
                                * hw
                                * integral_from_minus_one(alpha, l, xi)
                        })
                        .sum();
                    assert_abs_diff_eq!(sgim.p()[(i, j)], modal, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn sgim_scaling_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let alpha = rng.gen_range(-0.4..1.5);
            let nk = rng.gen_range(1..=20usize);
            let a = rng.gen_range(-2.0..2.0);
            let len = rng.gen_range(0.1..6.0);
            let reference = SGGNodes::on_interval(alpha, nk, -1.0, 1.0).unwrap();
            let shifted = SGGNodes::on_interval(alpha, nk, a, a + len).unwrap();
            let pr = build_sgim(&reference, None).unwrap();
            let ps = build_sgim(&shifted, None).unwrap();
            let hw = 0.5 * len;
            for i in 0..=nk {
                for j in 0..=nk {
                    assert_abs_diff_eq!(ps.p()[(i, j)], hw * pr.p()[(i, j)], epsilon = 1e-13 * hw.max(1.0));
                }
                assert_abs_diff_eq!(ps.full_row()[i], hw * pr.full_row()[i], epsilon = 1e-13 * hw.max(1.0));
            }
        }
    }

    #[test]
    fn sgim_on_2_5_is_1p5_times_reference() {
        let nk = 4;
        let reference = SGGNodes::on_interval(-0.1, nk, -1.0, 1.0).unwrap();
        let shifted = SGGNodes::on_interval(-0.1, nk, 2.0, 5.0).unwrap();
        let pr = build_sgim(&reference, None).unwrap();
        let ps = build_sgim(&shifted, None).unwrap();
        for i in 0..=nk {
            for j in 0..=nk {
                assert_abs_diff_eq!(ps.p()[(i, j)], 1.5 * pr.p()[(i, j)], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn sgim_rejects_target_outside_element() {
        let sgg = SGGNodes::on_interval(0.5, 3, 0.0, 1.0).unwrap();
        assert!(build_sgim(&sgg, Some(&[1.2])).is_err());
        assert!(build_sgim(&sgg, Some(&[0.0])).is_err());
        assert!(build_sgim(&sgg, Some(&[0.5, 1.0])).is_ok());
    }

    #[test]
    fn piecewise_integrate_constant_returns_targets() {
        let p = MeshPartition::new(vec![0.0, 0.4, 0.9, 2.0]).unwrap();
        let targets = [0.1, 0.4, 0.65, 1.7, 2.0];
        let got = piecewise_integrate(|_| 1.0, &p, &[3, 3, 3], 0.5, &targets).unwrap();
        for (g, y) in got.iter().zip(&targets) {
            assert_abs_diff_eq!(g, y, epsilon = 1e-13);
        }
    }

    #[test]
    fn piecewise_integrate_piecewise_smooth_against_closed_form() {
        // f(t) = t^2 on [0,1), cos(t) on [1,3]; exact cumulative integral known.
        let p = MeshPartition::new(vec![0.0, 1.0, 3.0]).unwrap();
        let f = |t: f64| if t < 1.0 { t * t } else { t.cos() };
        let exact = |y: f64| -> f64 {
            if y <= 1.0 {
                y.powi(3) / 3.0
            } else {
                1.0 / 3.0 + y.sin() - 1.0f64.sin()
            }
        };
        let targets = [0.3, 0.99, 1.0, 1.5, 2.2, 3.0];
        let got = piecewise_integrate(f, &p, &[14, 14], 0.5, &targets).unwrap();
        for (g, &y) in got.iter().zip(&targets) {
            assert_abs_diff_eq!(*g, exact(y), epsilon = 1e-12);
        }
    }

    #[test]
    fn piecewise_integrate_rejects_unsorted_targets() {
        let p = MeshPartition::new(vec![0.0, 1.0]).unwrap();
        assert!(piecewise_integrate(|_| 1.0, &p, &[2], 0.5, &[0.5, 0.2]).is_err());
        assert!(piecewise_integrate(|_| 1.0, &p, &[2], 0.5, &[0.0, 0.2]).is_err());
    }

}
