//! The 1-periodic test corpus: five polynomial functions whose periodic
//! extensions lose smoothness in successively higher derivatives, and seven
//! piecewise-constant functions with two jumps per period.

/// One corpus entry. `eval` and `integrate_to` treat the function as the
/// 1-periodic extension of its principal definition on `[0, 1)`.
#[derive(Clone)]
pub struct TestFunction {
    pub name: &'static str,
    /// Derivative order `s` with bounded variation (`f` lies in `H_1^s`).
    pub smoothness: usize,
    /// Total variation of `f^(s)` over one period, wrap jump included.
    /// Stored constants; derivations noted at each definition site.
    pub bv_norm: f64,
    /// Jump abscissas in `(0, 1]` for the piecewise-constant entries.
    pub jumps: &'static [f64],
    /// Upper and lower plateau levels for the piecewise-constant entries.
    pub plateau_levels: Option<(f64, f64)>,
    eval_principal: fn(f64) -> f64,
    antiderivative: fn(f64) -> f64,
}

impl TestFunction {
    /// Periodic evaluation at any real `x`.
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval_principal)(x.rem_euclid(1.0))
    }

    /// Exact `int_0^x f` for any `x >= 0`, using whole-period totals plus the
    /// principal antiderivative on the remainder.
    pub fn integrate_to(&self, x: f64) -> f64 {
        let periods = x.floor();
        let frac = x - periods;
        periods * (self.antiderivative)(1.0) + (self.antiderivative)(frac)
    }
}

const F9_XI: f64 = 0.8183;
const PI_5: f64 = std::f64::consts::PI / 5.0;
const PI_4: f64 = std::f64::consts::PI / 4.0;
const E_5: f64 = std::f64::consts::E / 5.0;
const E_3: f64 = std::f64::consts::E / 3.0;
// ln(1.5) and ln(2) obtained lazily; const fn ln is unavailable.
fn ln_15() -> f64 {
    1.5f64.ln()
}
fn ln_2() -> f64 {
    2.0f64.ln()
}

fn f1(x: f64) -> f64 {
    x * (1.0 - x)
}
fn f1_int(x: f64) -> f64 {
    x * x / 2.0 - x * x * x / 3.0
}

fn f2(x: f64) -> f64 {
    x * x * x / 3.0 - x * x / 2.0 + x / 6.0 + 1.0
}
fn f2_int(x: f64) -> f64 {
    x.powi(4) / 12.0 - x.powi(3) / 6.0 + x * x / 12.0 + x
}

fn f3(x: f64) -> f64 {
    x.powi(4) - 2.0 * x.powi(3) + x * x
}
fn f3_int(x: f64) -> f64 {
    x.powi(5) / 5.0 - x.powi(4) / 2.0 + x.powi(3) / 3.0
}

fn f4(x: f64) -> f64 {
    -x.powi(5) + 15.0 / 6.0 * x.powi(4) - 5.0 / 3.0 * x.powi(3) + x / 6.0 + 2.0
}
fn f4_int(x: f64) -> f64 {
    -x.powi(6) / 6.0 + x.powi(5) / 2.0 - 5.0 / 12.0 * x.powi(4) + x * x / 12.0 + 2.0 * x
}

fn f5(x: f64) -> f64 {
    -x.powi(6) + 3.0 * x.powi(5) - 2.5 * x.powi(4) + 0.5 * x * x - 1.0
}
fn f5_int(x: f64) -> f64 {
    -x.powi(7) / 7.0 + x.powi(6) / 2.0 - x.powi(5) / 2.0 + x.powi(3) / 6.0 - x
}

fn f6(x: f64) -> f64 {
    if x < 0.5 {
        1.0
    } else {
        0.0
    }
}
fn f6_int(x: f64) -> f64 {
    x.min(0.5)
}

fn f7(x: f64) -> f64 {
    if x < 1.0 / 3.0 {
        1.0
    } else {
        0.0
    }
}
fn f7_int(x: f64) -> f64 {
    x.min(1.0 / 3.0)
}

fn f8(x: f64) -> f64 {
    if x < 2.0 / 3.0 {
        4.0
    } else {
        0.0
    }
}
fn f8_int(x: f64) -> f64 {
    4.0 * x.min(2.0 / 3.0)
}

fn f9(x: f64) -> f64 {
    if x < F9_XI {
        -5.0
    } else {
        0.0
    }
}
fn f9_int(x: f64) -> f64 {
    -5.0 * x.min(F9_XI)
}

fn f10(x: f64) -> f64 {
    if x < PI_5 || x >= PI_4 {
        2.0
    } else {
        1.0
    }
}
fn f10_int(x: f64) -> f64 {
    2.0 * x.min(PI_5) + (x.min(PI_4) - PI_5).max(0.0) + 2.0 * (x - PI_4).max(0.0)
}

fn f11(x: f64) -> f64 {
    if x < E_5 || x >= E_3 {
        10.0
    } else {
        -2.0
    }
}
fn f11_int(x: f64) -> f64 {
    10.0 * x.min(E_5) - 2.0 * (x.min(E_3) - E_5).max(0.0) + 10.0 * (x - E_3).max(0.0)
}

fn f12(x: f64) -> f64 {
    if x < ln_15() || x >= ln_2() {
        -3.0
    } else {
        2.0
    }
}
fn f12_int(x: f64) -> f64 {
    -3.0 * x.min(ln_15()) + 2.0 * (x.min(ln_2()) - ln_15()).max(0.0) - 3.0 * (x - ln_2()).max(0.0)
}

static JUMPS_F6: [f64; 2] = [0.5, 1.0];
static JUMPS_F7: [f64; 2] = [1.0 / 3.0, 1.0];
static JUMPS_F8: [f64; 2] = [2.0 / 3.0, 1.0];
static JUMPS_F9: [f64; 2] = [F9_XI, 1.0];
static JUMPS_F10: [f64; 2] = [PI_5, PI_4];
static JUMPS_F11: [f64; 2] = [E_5, E_3];
// ln 1.5 and ln 2 to full f64 precision.
static JUMPS_F12: [f64; 2] = [0.405_465_108_108_164_4, 0.693_147_180_559_945_3];

/// The corpus `f_1 .. f_12` in order.
pub fn test_corpus() -> Vec<TestFunction> {
    vec![
        // BV norms of f^(s) over one period (variation of the last smooth
        // derivative, periodic wrap jump included):
        // f1: f' = 1 - 2x, int |f''| = 2, wrap jump |1 - (-1)| = 2 -> 4.
        TestFunction {
            name: "f1",
            smoothness: 1,
            bv_norm: 4.0,
            jumps: &[],
            plateau_levels: None,
            eval_principal: f1,
            antiderivative: f1_int,
        },
        // f2: f'' = 2x - 1, int |f'''| = 2, wrap jump 2 -> 4.
        TestFunction {
            name: "f2",
            smoothness: 2,
            bv_norm: 4.0,
            jumps: &[],
            plateau_levels: None,
            eval_principal: f2,
            antiderivative: f2_int,
        },
        // f3: f''' = 24x - 12, int |f''''| = 24, wrap jump 24 -> 48.
        TestFunction {
            name: "f3",
            smoothness: 3,
            bv_norm: 48.0,
            jumps: &[],
            plateau_levels: None,
            eval_principal: f3,
            antiderivative: f3_int,
        },
        // f4: f'''' = -120x + 60, int |f^(5)| = 120, wrap jump 120 -> 240.
        TestFunction {
            name: "f4",
            smoothness: 4,
            bv_norm: 240.0,
            jumps: &[],
            plateau_levels: None,
            eval_principal: f4,
            antiderivative: f4_int,
        },
        // f5: f^(5) = -720x + 360, int |f^(6)| = 720, wrap jump 720 -> 1440.
        TestFunction {
            name: "f5",
            smoothness: 5,
            bv_norm: 1440.0,
            jumps: &[],
            plateau_levels: None,
            eval_principal: f5,
            antiderivative: f5_int,
        },
        // f6..f12: variation of the function itself, two jumps each.
        TestFunction {
            name: "f6",
            smoothness: 0,
            bv_norm: 2.0,
            jumps: &JUMPS_F6,
            plateau_levels: Some((1.0, 0.0)),
            eval_principal: f6,
            antiderivative: f6_int,
        },
        TestFunction {
            name: "f7",
            smoothness: 0,
            bv_norm: 2.0,
            jumps: &JUMPS_F7,
            plateau_levels: Some((1.0, 0.0)),
            eval_principal: f7,
            antiderivative: f7_int,
        },
        TestFunction {
            name: "f8",
            smoothness: 0,
            bv_norm: 8.0,
            jumps: &JUMPS_F8,
            plateau_levels: Some((4.0, 0.0)),
            eval_principal: f8,
            antiderivative: f8_int,
        },
        TestFunction {
            name: "f9",
            smoothness: 0,
            bv_norm: 10.0,
            jumps: &JUMPS_F9,
            plateau_levels: Some((0.0, -5.0)),
            eval_principal: f9,
            antiderivative: f9_int,
        },
        TestFunction {
            name: "f10",
            smoothness: 0,
            bv_norm: 2.0,
            jumps: &JUMPS_F10,
            plateau_levels: Some((2.0, 1.0)),
            eval_principal: f10,
            antiderivative: f10_int,
        },
        TestFunction {
            name: "f11",
            smoothness: 0,
            bv_norm: 24.0,
            jumps: &JUMPS_F11,
            plateau_levels: Some((10.0, -2.0)),
            eval_principal: f11,
            antiderivative: f11_int,
        },
        TestFunction {
            name: "f12",
            smoothness: 0,
            bv_norm: 10.0,
            jumps: &JUMPS_F12,
            plateau_levels: Some((2.0, -3.0)),
            eval_principal: f12,
            antiderivative: f12_int,
        },
    ]
}

/// Look up a corpus function by its name (`"f1"` .. `"f12"`).
pub fn corpus_function(name: &str) -> Option<TestFunction> {
    test_corpus().into_iter().find(|f| f.name == name)
}
