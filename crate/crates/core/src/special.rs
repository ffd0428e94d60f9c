//! Log-gamma via the Lanczos approximation (g = 7, 9 coefficients), accurate
//! to ~15 significant digits for positive arguments, plus a sign-aware gamma
//! for negative non-integer arguments through the reflection formula.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // Reflection keeps the Lanczos series in its accurate range.
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma(x) for any non-pole real argument, including negative non-integers.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        return ln_gamma(x).exp();
    }
    assert!(
        x.fract() != 0.0,
        "gamma has a pole at the non-positive integer {x}"
    );
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    PI / ((PI * x).sin() * ln_gamma(1.0 - x).exp())
}
