//! Fourier-collocated prediction NLP and its solver.
//!
//! Decision vector `X = [s_1..s_{N-1}; u_0..u_{N-1}]`; scaled objective
//! `1^t [s_bar; s]`; nonlinear equality `s = s_bar 1 + Theta' psi(s, u)` with
//! `Theta'` the integration matrix less its zero row; linear equality
//! `sum u = N u_bar`; box bounds on both blocks.
//!
//! The solver is an augmented-Lagrangian outer loop over the collocation
//! constraints with a projected spectral-gradient (Barzilai-Borwein) inner
//! loop. The mean-dilution constraint is not penalized: the inner iterates
//! are projected exactly onto the affine slice of the control box, so it
//! holds to the projection tolerance throughout.

use nalgebra::{DMatrix, DVector};

use crate::chemostat::{dpsi_ds, growth_nu, ChemostatParams};
use crate::error::{Error, Result};
use crate::fourier::{build_fim_fast, PeriodicGrid};

/// Assembled problem data shared by every evaluation.
pub struct Nlp {
    pub params: ChemostatParams,
    pub n: usize,
    /// `Theta` rows `1..N-1`: `(N-1) x N`.
    theta_reduced: DMatrix<f64>,
}

impl Nlp {
    /// State value at collocation node `j` (node 0 is pinned to `s_bar`).
    fn state(&self, x: &DVector<f64>, j: usize) -> f64 {
        if j == 0 {
            self.params.s_bar
        } else {
            x[j - 1]
        }
    }

    /// `psi` at every collocation node.
    fn psi_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        DVector::from_fn(n, |j, _| {
            let s = self.state(x, j);
            let u = x[n - 1 + j];
            (u - growth_nu(s, &self.params)) * (self.params.s_in - s)
        })
    }

    /// Scaled objective `J_bar = s_bar + sum s_j`.
    pub fn objective(&self, x: &DVector<f64>) -> f64 {
        self.params.s_bar + x.rows(0, self.n - 1).sum()
    }

    /// Collocation residual `s - s_bar 1 - Theta' psi`.
    pub fn constraint_residual(&self, x: &DVector<f64>) -> DVector<f64> {
        let psi = self.psi_vec(x);
        let mut r = &self.theta_reduced * psi;
        for i in 0..self.n - 1 {
            r[i] = x[i] - self.params.s_bar - r[i];
        }
        r
    }

    /// `J_r^t w` assembled from one transposed matrix-vector product:
    /// the `s`-block is `w_m - psi_s(s_m) (Theta'^t w)_m`, the `u`-block
    /// `-(s_in - s_j) (Theta'^t w)_j`.
    pub fn constraint_jac_t(&self, x: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let tw = self.theta_reduced.tr_mul(w);
        let mut out = DVector::zeros(2 * n - 1);
        for m in 1..n {
            let s = x[m - 1];
            let u = x[n - 1 + m];
            out[m - 1] = w[m - 1] - dpsi_ds(s, u, &self.params) * tw[m];
        }
        for j in 0..n {
            out[n - 1 + j] = -(self.params.s_in - self.state(x, j)) * tw[j];
        }
        out
    }

    /// Dense constraint Jacobian, for tests and diagnostics.
    pub fn constraint_jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n;
        let mut jac = DMatrix::zeros(n - 1, 2 * n - 1);
        for i in 0..n - 1 {
            for m in 1..n {
                let s = x[m - 1];
                let u = x[n - 1 + m];
                let d = if i == m - 1 { 1.0 } else { 0.0 };
                jac[(i, m - 1)] = d - self.theta_reduced[(i, m)] * dpsi_ds(s, u, &self.params);
            }
            for j in 0..n {
                jac[(i, n - 1 + j)] =
                    -self.theta_reduced[(i, j)] * (self.params.s_in - self.state(x, j));
            }
        }
        jac
    }

    /// Equilibrium initial guess `s = s_bar, u = u_bar`.
    pub fn equilibrium_guess(&self) -> DVector<f64> {
        let n = self.n;
        DVector::from_fn(2 * n - 1, |i, _| {
            if i < n - 1 {
                self.params.s_bar
            } else {
                self.params.u_bar_value()
            }
        })
    }

    /// Project onto the feasible box intersected with the mean-dilution
    /// hyperplane `sum u = N u_bar`.
    pub fn project(&self, x: &mut DVector<f64>) {
        let n = self.n;
        let p = &self.params;
        for i in 0..n - 1 {
            x[i] = x[i].clamp(0.0, p.s_in);
        }
        let target = n as f64 * p.u_bar_value();
        let u = x.rows(n - 1, n).iter().copied().collect::<Vec<f64>>();
        let shifted = project_box_hyperplane(&u, p.u_min, p.u_max, target);
        for (j, v) in shifted.into_iter().enumerate() {
            x[n - 1 + j] = v;
        }
    }
}

/// Euclidean projection of `v` onto `{ lo <= u <= hi, sum u = target }` by
/// bisection on the shift multiplier of `clamp(v - lambda)`.
fn project_box_hyperplane(v: &[f64], lo: f64, hi: f64, target: f64) -> Vec<f64> {
    let sum_at = |lambda: f64| -> f64 {
        v.iter().map(|&vi| (vi - lambda).clamp(lo, hi)).sum::<f64>()
    };
    let mut a = v.iter().cloned().fold(f64::INFINITY, f64::min) - hi - 1.0;
    let mut b = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - lo + 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if sum_at(mid) > target {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
    }
    let lambda = 0.5 * (a + b);
    v.iter().map(|&vi| (vi - lambda).clamp(lo, hi)).collect()
}

/// Build the problem for a collocation grid (the integration matrix is the
/// fast-path construction).
pub fn assemble_nlp(params: &ChemostatParams, grid: &PeriodicGrid) -> Nlp {
    let fim = build_fim_fast(grid);
    Nlp {
        params: params.clone(),
        n: grid.n(),
        theta_reduced: fim.theta_rows_1_onward(),
    }
}

/// Predictor solver settings. The tolerances are the contract; the paper's
/// black-box interior-point settings are not reproducible as such.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictorOpts {
    /// Infinity-norm bound on the collocation residual.
    pub constraint_tol: f64,
    /// Infinity-norm bound on the projected Lagrangian gradient.
    pub grad_tol: f64,
    pub max_outer: usize,
    pub max_inner: usize,
}

impl Default for PredictorOpts {
    fn default() -> Self {
        Self { constraint_tol: 1e-8, grad_tol: 1e-6, max_outer: 40, max_inner: 20_000 }
    }
}

/// Output of the prediction stage.
#[derive(Debug, Clone)]
pub struct PredictorResult {
    /// State values at nodes `1..N-1`.
    pub s: Vec<f64>,
    /// Control values at nodes `0..N-1`.
    pub u: Vec<f64>,
    /// Objective scaled back: `J_p = J_bar / N`.
    pub j_p: f64,
    pub iterations: usize,
    pub converged: bool,
    pub constraint_norm: f64,
    pub grad_norm: f64,
}

struct AugmentedLagrangian<'a> {
    nlp: &'a Nlp,
    lambda: DVector<f64>,
    rho: f64,
}

impl AugmentedLagrangian<'_> {
    fn value(&self, x: &DVector<f64>) -> f64 {
        let r = self.nlp.constraint_residual(x);
        self.nlp.objective(x) + self.lambda.dot(&r) + 0.5 * self.rho * r.norm_squared()
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        let r = self.nlp.constraint_residual(x);
        let w = &self.lambda + self.rho * r;
        let mut g = self.nlp.constraint_jac_t(x, &w);
        for i in 0..self.nlp.n - 1 {
            g[i] += 1.0;
        }
        g
    }
}

/// Projected-gradient stationarity measure `||P(x - g) - x||_inf`.
fn projected_gradient_norm(nlp: &Nlp, x: &DVector<f64>, g: &DVector<f64>) -> f64 {
    let mut step = x - g;
    nlp.project(&mut step);
    (&step - x).amax()
}

/// Spectral projected gradient (nonmonotone Armijo over the last 10 values).
/// Returns the iterate and the iteration count.
fn solve_inner(
    al: &AugmentedLagrangian<'_>,
    x0: DVector<f64>,
    tol: f64,
    max_iter: usize,
) -> (DVector<f64>, usize) {
    let nlp = al.nlp;
    let mut x = x0;
    nlp.project(&mut x);
    let mut f = al.value(&x);
    let mut g = al.gradient(&x);
    let mut alpha = 1.0 / g.amax().max(1e-12);
    let mut history = vec![f];
    for iter in 0..max_iter {
        if projected_gradient_norm(nlp, &x, &g) <= tol {
            return (x, iter);
        }
        let mut trial = &x - alpha * &g;
        nlp.project(&mut trial);
        let d = trial - &x;
        let gd = g.dot(&d);
        let f_ref = history.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut t = 1.0;
        let mut x_new;
        let mut f_new;
        loop {
            x_new = &x + t * &d;
            f_new = al.value(&x_new);
            if f_new <= f_ref + 1e-4 * t * gd || t < 1e-12 {
                break;
            }
            t *= 0.5;
        }
        let g_new = al.gradient(&x_new);
        let s = &x_new - &x;
        let y = &g_new - &g;
        let sy = s.dot(&y);
        alpha = if sy > 1e-16 { (s.norm_squared() / sy).clamp(1e-10, 1e10) } else { 1.0 };
        x = x_new;
        f = f_new;
        g = g_new;
        history.push(f);
        if history.len() > 10 {
            history.remove(0);
        }
    }
    (x, max_iter)
}

/// Augmented-Lagrangian outer loop. `initial` defaults to the equilibrium
/// guess, which is the reference starting point.
pub fn solve_predictor(
    nlp: &Nlp,
    initial: Option<DVector<f64>>,
    opts: &PredictorOpts,
) -> Result<PredictorResult> {
    let n = nlp.n;
    let mut x = initial.unwrap_or_else(|| nlp.equilibrium_guess());
    nlp.project(&mut x);
    let mut al = AugmentedLagrangian { nlp, lambda: DVector::zeros(n - 1), rho: 10.0 };
    let mut total_inner = 0usize;
    // Textbook safeguarded schedule: multipliers move only when the
    // constraint norm meets eta; on a penalty increase eta resets upward so
    // updates keep flowing at the new rho.
    let mut eta: f64 = 1.0 / al.rho.powf(0.1);
    let mut inner_tol: f64 = 1.0 / al.rho;
    let mut converged = false;
    for _outer in 0..opts.max_outer {
        let (x_new, used) =
            solve_inner(&al, x, inner_tol.max(0.5 * opts.grad_tol), opts.max_inner);
        x = x_new;
        total_inner += used;
        let r = nlp.constraint_residual(&x);
        let cnorm = r.amax();
        let g = al.gradient(&x);
        let pg = projected_gradient_norm(nlp, &x, &g);
        if cnorm <= opts.constraint_tol && pg <= opts.grad_tol {
            converged = true;
            break;
        }
        if cnorm <= eta.max(opts.constraint_tol) {
            al.lambda += al.rho * &r;
            eta /= al.rho.powf(0.9);
            inner_tol /= al.rho;
        } else {
            al.rho = (al.rho * 5.0).min(1e9);
            eta = 1.0 / al.rho.powf(0.1);
            inner_tol = 1.0 / al.rho;
        }
    }
    let r = nlp.constraint_residual(&x);
    let g = al.gradient(&x);
    let result = PredictorResult {
        s: x.rows(0, n - 1).iter().copied().collect(),
        u: x.rows(n - 1, n).iter().copied().collect(),
        j_p: nlp.objective(&x) / n as f64,
        iterations: total_inner,
        converged,
        constraint_norm: r.amax(),
        grad_norm: projected_gradient_norm(nlp, &x, &g),
    };
    if !converged {
        return Err(Error::NonConvergence(format!(
            "predictor stalled: constraint {:.3e}, projected gradient {:.3e}",
            result.constraint_norm, result.grad_norm
        )));
    }
    Ok(result)
}


/// Diagnostic variant that prints per-outer-iteration progress.
pub fn solve_predictor_debug(
    nlp: &Nlp,
    initial: Option<DVector<f64>>,
    opts: &PredictorOpts,
) -> Result<PredictorResult> {
    let n = nlp.n;
    let mut x = initial.unwrap_or_else(|| nlp.equilibrium_guess());
    nlp.project(&mut x);
    let mut al = AugmentedLagrangian { nlp, lambda: DVector::zeros(n - 1), rho: 10.0 };
    let mut eta: f64 = 0.1;
    let mut inner_tol: f64 = 1e-2;
    for outer in 0..opts.max_outer {
        let (x_new, used) = solve_inner(&al, x, inner_tol, opts.max_inner);
        x = x_new;
        let r = nlp.constraint_residual(&x);
        let cnorm = r.amax();
        let g = al.gradient(&x);
        let pg = projected_gradient_norm(nlp, &x, &g);
        println!(
            "outer {outer}: inner={used} cnorm={cnorm:.3e} pg={pg:.3e} rho={:.1e} |lambda|={:.3e} J={:.5} itol={inner_tol:.1e}",
            al.rho,
            al.lambda.amax(),
            nlp.objective(&x) / n as f64
        );
        if cnorm <= opts.constraint_tol && pg <= opts.grad_tol {
            break;
        }
        if cnorm <= eta.max(opts.constraint_tol) {
            al.lambda += al.rho * &r;
            eta = (eta * 0.2).max(0.1 * opts.constraint_tol);
            inner_tol = (inner_tol * 0.2).max(0.5 * opts.grad_tol);
        } else {
            al.rho = (al.rho * 5.0).min(1e9);
        }
    }
    Err(Error::NonConvergence("debug run".into()))
}
