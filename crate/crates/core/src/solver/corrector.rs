//! Gegenbauer-collocated state correction: solve the integral-form dynamics
//! at the shifted Gauss nodes of the switch-aligned mesh by damped Newton
//! with the analytic Jacobian, with dogleg trust-region steps as the
//! stagnation fallback.

use nalgebra::{DMatrix, DVector};

use crate::chemostat::{dpsi_ds, state_derivative_psi, ChemostatParams};
use crate::error::{Error, Result};
use crate::gegenbauer::{build_sgim, MeshPartition, SGGNodes};
use crate::solver::BangBangControl;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectorOpts {
    /// Infinity-norm bound on the collocation residual at the solution.
    pub residual_tol: f64,
    pub max_iterations: usize,
}

impl Default for CorrectorOpts {
    fn default() -> Self {
        Self { residual_tol: 1e-12, max_iterations: 100 }
    }
}

/// Corrected state data on the switch-aligned mesh.
#[derive(Debug, Clone)]
pub struct CorrectorResult {
    pub partition: MeshPartition,
    /// Gauss node data per element, in mesh order.
    pub elements: Vec<SGGNodes>,
    /// Corrected state values at the element Gauss nodes.
    pub states: Vec<Vec<f64>>,
    /// Control values at the element Gauss nodes.
    pub controls: Vec<Vec<f64>>,
    /// Corrected objective `J_c = (1/T) int_0^T s`.
    pub j_c: f64,
    pub newton_iterations: usize,
    pub residual_norm: f64,
}

impl CorrectorResult {
    /// Barycentric interpolation of the corrected state; elements are
    /// half-open on the left so mesh points evaluate on the earlier element.
    pub fn interpolate_state(&self, t: f64) -> f64 {
        let k = self.partition.locate(t).unwrap_or(0);
        self.elements[k].interpolate(&self.states[k], t)
    }

    /// State at the right endpoint of each element through the integral
    /// chain (cumulative full-row integrals of `psi`).
    pub fn state_at_mesh_points(&self, params: &ChemostatParams) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.elements.len() + 1);
        let mut acc = params.s_bar;
        out.push(acc);
        for (k, sgg) in self.elements.iter().enumerate() {
            let sgim = build_sgim(sgg, None).expect("targets omitted");
            let psi: Vec<f64> = self.states[k]
                .iter()
                .zip(&self.controls[k])
                .map(|(&s, &u)| state_derivative_psi(s, u, params))
                .collect();
            acc += sgim.integrate_full(&psi);
            out.push(acc);
        }
        out
    }
}

/// Solve `s = s_bar + int_0^t psi(s, u)` collocated at every element's Gauss
/// nodes. `initial` supplies the starting state guess as a function of time
/// (the predicted-state interpolant in the full pipeline).
pub fn solve_corrector(
    control: &BangBangControl,
    params: &ChemostatParams,
    partition: &MeshPartition,
    degrees: &[usize],
    alpha: f64,
    initial: impl Fn(f64) -> f64,
    opts: &CorrectorOpts,
) -> Result<CorrectorResult> {
    if degrees.len() != partition.len() {
        return Err(Error::DimensionMismatch { expected: partition.len(), got: degrees.len() });
    }
    let elements: Vec<SGGNodes> = (0..partition.len())
        .map(|k| {
            let (a, b) = partition.element(k);
            SGGNodes::on_interval(alpha, degrees[k], a, b)
        })
        .collect::<Result<_>>()?;
    let sgims: Vec<_> = elements.iter().map(|sgg| build_sgim(sgg, None)).collect::<Result<_>>()?;

    let sizes: Vec<usize> = elements.iter().map(|e| e.nodes().len()).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().sum();

    // Row (k, i) integrates psi from 0 to the i-th node of element k: full
    // rows of the earlier elements plus the in-element integration row.
    let mut quad = DMatrix::zeros(total, total);
    for k in 0..elements.len() {
        for i in 0..sizes[k] {
            let row = offsets[k] + i;
            for m in 0..k {
                for j in 0..sizes[m] {
                    quad[(row, offsets[m] + j)] = sgims[m].full_row()[j];
                }
            }
            for j in 0..sizes[k] {
                quad[(row, offsets[k] + j)] = sgims[k].p()[(i, j)];
            }
        }
    }

    let node_times: Vec<f64> = elements.iter().flat_map(|e| e.nodes().iter().copied()).collect();
    let u_at_nodes: Vec<f64> = node_times.iter().map(|&t| control.evaluate(t)).collect();

    let residual = |s: &DVector<f64>| -> DVector<f64> {
        let psi = DVector::from_fn(total, |i, _| {
            state_derivative_psi(s[i], u_at_nodes[i], params)
        });
        let mut r = &quad * psi;
        for i in 0..total {
            r[i] = s[i] - params.s_bar - r[i];
        }
        r
    };
    let jacobian = |s: &DVector<f64>| -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(total, total);
        for j in 0..total {
            let d = dpsi_ds(s[j], u_at_nodes[j], params);
            for i in 0..total {
                jac[(i, j)] = -quad[(i, j)] * d;
            }
            jac[(j, j)] += 1.0;
        }
        jac
    };

    let mut s = DVector::from_fn(total, |i, _| initial(node_times[i]));
    let mut f = residual(&s);
    let mut iterations = 0usize;
    while f.amax() > opts.residual_tol {
        if iterations >= opts.max_iterations {
            return Err(Error::NonConvergence(format!(
                "corrector residual {:.3e} after {} iterations",
                f.amax(),
                iterations
            )));
        }
        let jac = jacobian(&s);
        let lu = jac.clone().lu();
        let newton = match lu.solve(&(-&f)) {
            Some(step) => step,
            None => return Err(Error::SingularJacobian(iterations)),
        };
        let f2 = f.norm_squared();
        let mut accepted = false;
        let mut t = 1.0;
        while t >= 1e-4 {
            let cand = &s + t * &newton;
            let fc = residual(&cand);
            if fc.norm_squared() <= (1.0 - 2e-4 * t) * f2 {
                s = cand;
                f = fc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // Armijo stagnated: take a dogleg step on 0.5 ||F||^2, shrinking
            // the radius until the residual drops.
            let g = jac.tr_mul(&f);
            let jg = &jac * &g;
            let cauchy = -(g.norm_squared() / jg.norm_squared().max(1e-300)) * &g;
            let mut delta = 0.5 * newton.norm();
            let mut ok = false;
            for _ in 0..40 {
                let p = dogleg_step(&newton, &cauchy, delta);
                let cand = &s + &p;
                let fc = residual(&cand);
                if fc.norm_squared() < f2 {
                    s = cand;
                    f = fc;
                    ok = true;
                    break;
                }
                delta *= 0.5;
            }
            if !ok {
                return Err(Error::NonConvergence(format!(
                    "corrector trust-region stalled at residual {:.3e}",
                    f.amax()
                )));
            }
        }
        iterations += 1;
    }

    let states: Vec<Vec<f64>> = (0..elements.len())
        .map(|k| (0..sizes[k]).map(|i| s[offsets[k] + i]).collect())
        .collect();
    let controls: Vec<Vec<f64>> = (0..elements.len())
        .map(|k| (0..sizes[k]).map(|i| u_at_nodes[offsets[k] + i]).collect())
        .collect();
    let j_c = quadrature_objective(&sgims, &states, params.period);
    Ok(CorrectorResult {
        partition: partition.clone(),
        elements,
        states,
        controls,
        j_c,
        newton_iterations: iterations,
        residual_norm: f.amax(),
    })
}

fn dogleg_step(newton: &DVector<f64>, cauchy: &DVector<f64>, delta: f64) -> DVector<f64> {
    if newton.norm() <= delta {
        return newton.clone();
    }
    let cn = cauchy.norm();
    if cn >= delta {
        return (delta / cn) * cauchy;
    }
    // ||cauchy + tau (newton - cauchy)|| = delta
    let d = newton - cauchy;
    let a = d.norm_squared();
    let b = 2.0 * cauchy.dot(&d);
    let c = cn * cn - delta * delta;
    let tau = (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a);
    cauchy + tau * d
}

fn quadrature_objective(
    sgims: &[crate::gegenbauer::SGIMatrix],
    states: &[Vec<f64>],
    period: f64,
) -> f64 {
    let total: f64 = sgims.iter().zip(states).map(|(sgim, s)| sgim.integrate_full(s)).sum();
    total / period
}

/// `J_c` recomputed from a finished result (the full-row quadrature of the
/// corrected state per element, averaged over the period).
pub fn objective_corrected(result: &CorrectorResult) -> f64 {
    let sgims: Vec<_> = result
        .elements
        .iter()
        .map(|sgg| build_sgim(sgg, None).expect("targets omitted"))
        .collect();
    quadrature_objective(&sgims, &result.states, result.partition.period())
}
