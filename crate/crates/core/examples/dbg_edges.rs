use nalgebra::{DMatrix, DVector};
use specperiod::chemostat::{dpsi_ds, state_derivative_psi, ChemostatParams, Rational};
use specperiod::fourier::{build_fim_fast, PeriodicGrid};
use specperiod::solver::{assemble_nlp, solve_predictor, PredictorOpts};

fn main() {
    let p = ChemostatParams::new(3.0, 1.0, 2.5, 0.0, 2.0, 20.0, Rational::new(58, 63)).unwrap();
    let n = 200usize;
    let grid = PeriodicGrid::new(20.0, n).unwrap();
    let nlp = assemble_nlp(&p, &grid);
    let opts = PredictorOpts { constraint_tol: 5e-4, grad_tol: 1e-4, ..Default::default() };
    let r = solve_predictor(&nlp, None, &opts).unwrap();

    // Newton-solve the state subsystem for the fixed control.
    let fim = build_fim_fast(&grid);
    let theta = fim.theta_rows_1_onward();
    let u = r.u.clone();
    let mut s = DVector::from_iterator(n - 1, r.s.iter().copied());
    for it in 0..30 {
        let mut psi = DVector::zeros(n);
        psi[0] = state_derivative_psi(p.s_bar, u[0], &p);
        for j in 1..n {
            psi[j] = state_derivative_psi(s[j - 1], u[j], &p);
        }
        let mut f = &theta * &psi;
        for i in 0..n - 1 {
            f[i] = s[i] - p.s_bar - f[i];
        }
        let fnorm = f.amax();
        if fnorm < 1e-13 {
            println!("newton converged in {it} iterations, residual {fnorm:.2e}");
            break;
        }
        let mut jac = DMatrix::identity(n - 1, n - 1);
        for m in 1..n {
            let d = dpsi_ds(s[m - 1], u[m], &p);
            for i in 0..n - 1 {
                jac[(i, m - 1)] -= theta[(i, m)] * d;
            }
        }
        let step = jac.lu().solve(&(-&f)).expect("nonsingular");
        s += step;
    }
    let smax = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("state subsystem solution: min s = {smin:.6e}, max s = {smax:.6}");
    println!("max s - 3 = {:.3e}", smax - 3.0);
    // Count how many nodes exceed the bound and by how much
    let over: Vec<(usize, f64)> = (0..n - 1).filter(|&i| s[i] > 3.0).map(|i| (i + 1, s[i] - 3.0)).collect();
    println!("nodes above s_in: {:?}", over);
}
