//! Reduced chemostat model: Contois growth on the invariant set
//! `x = s_in - s`, the state derivative `psi`, the equilibrium relation, and
//! the two experimental parameter sets used throughout.

use crate::error::{Error, Result};

/// Exact rational dilution rate, kept as a fraction where the source gives
/// one and materialized to `f64` at use sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a.abs()
}

/// Parameters of the reduced chemostat problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ChemostatParams {
    pub s_in: f64,
    pub mu_max: f64,
    pub k_s: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub period: f64,
    pub s_bar: f64,
    pub u_bar: Rational,
}

impl ChemostatParams {
    pub fn new(
        s_in: f64,
        mu_max: f64,
        k_s: f64,
        u_min: f64,
        u_max: f64,
        period: f64,
        u_bar: Rational,
    ) -> Result<Self> {
        if !(s_in > 0.0 && mu_max > 0.0 && period > 0.0) {
            return Err(Error::Domain("s_in, mu_max and T must be positive".into()));
        }
        if !(k_s > 1.0) {
            return Err(Error::Domain(format!("k_s must exceed 1, got {k_s}")));
        }
        if !(u_min >= 0.0 && u_min < u_max) {
            return Err(Error::Domain(format!("need 0 <= u_min < u_max, got [{u_min}, {u_max}]")));
        }
        let ub = u_bar.value();
        if !(ub >= u_min && ub <= u_max && ub < mu_max) {
            return Err(Error::Domain(format!(
                "u_bar = {ub} must sit in [u_min, u_max] and below mu_max"
            )));
        }
        let s_bar = equilibrium_sbar(s_in, mu_max, k_s, ub)?;
        Ok(Self { s_in, mu_max, k_s, u_min, u_max, period, s_bar, u_bar })
    }

    /// Dataset D1: `s_in = 3, s_bar = 2.9, u in [0, 2], mu_max = 1, k_s = 2.5`
    /// with `u_bar = 58/63`, on a 10 h period.
    pub fn dataset_d1() -> Self {
        Self::new(3.0, 1.0, 2.5, 0.0, 2.0, 10.0, Rational::new(58, 63)).unwrap()
    }

    /// Dataset D2: same bounds with `u_bar = 36754/94869`, `s_bar = 1.8377`.
    pub fn dataset_d2() -> Self {
        Self::new(3.0, 1.0, 2.5, 0.0, 2.0, 10.0, Rational::new(36754, 94869)).unwrap()
    }

    pub fn u_bar_value(&self) -> f64 {
        self.u_bar.value()
    }
}

/// Non-trivial equilibrium substrate level for a constant dilution rate:
/// `s_bar = u_bar k_s s_in / (u_bar (k_s - 1) + mu_max)`.
pub fn equilibrium_sbar(s_in: f64, mu_max: f64, k_s: f64, u_bar: f64) -> Result<f64> {
    if !(u_bar >= 0.0 && u_bar < mu_max) {
        return Err(Error::Domain(format!("need 0 <= u_bar < mu_max, got {u_bar} vs {mu_max}")));
    }
    Ok(u_bar * k_s * s_in / (u_bar * (k_s - 1.0) + mu_max))
}

/// Equilibrium relation carried out in exact rational arithmetic; every
/// parameter is a fraction. Returns the reduced fraction `s_bar`.
pub fn equilibrium_sbar_rational(
    s_in: (i64, i64),
    mu_max: (i64, i64),
    k_s: (i64, i64),
    u_bar: (i64, i64),
) -> (i128, i128) {
    // s_bar = u k s_in / (u (k - 1) + mu)
    let (un, ud) = (u_bar.0 as i128, u_bar.1 as i128);
    let (kn, kd) = (k_s.0 as i128, k_s.1 as i128);
    let (sn, sd) = (s_in.0 as i128, s_in.1 as i128);
    let (mn, md) = (mu_max.0 as i128, mu_max.1 as i128);
    // numerator: u k s_in
    let num_n = un * kn * sn;
    let num_d = ud * kd * sd;
    // denominator: u (k - 1) + mu = (u (kn - kd) md + mn ud kd) / (ud kd md)
    let den_n = un * (kn - kd) * md + mn * ud * kd;
    let den_d = ud * kd * md;
    let mut rn = num_n * den_d;
    let mut rd = num_d * den_n;
    let g = gcd(rn, rd);
    rn /= g;
    rd /= g;
    if rd < 0 {
        rn = -rn;
        rd = -rd;
    }
    (rn, rd)
}

/// Contois growth rate on the invariant set:
/// `nu = mu_max s / (k_s (s_in - s) + s)`.
pub fn growth_nu(s: f64, p: &ChemostatParams) -> f64 {
    p.mu_max * s / (p.k_s * (p.s_in - s) + s)
}

/// State derivative `psi = (u - nu(s)) (s_in - s)`.
pub fn state_derivative_psi(s: f64, u: f64, p: &ChemostatParams) -> f64 {
    (u - growth_nu(s, p)) * (p.s_in - s)
}

/// Analytic `d psi / d s`, used by the predictor gradients and the corrector
/// Jacobian.
pub fn dpsi_ds(s: f64, u: f64, p: &ChemostatParams) -> f64 {
    let denom = p.k_s * (p.s_in - s) + s;
    let dnu = p.mu_max * p.k_s * p.s_in / (denom * denom);
    -dnu * (p.s_in - s) - (u - growth_nu(s, p))
}
