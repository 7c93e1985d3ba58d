//! Complex dilogarithm on the principal branch.
//!
//! The argument is mapped into `|z| <= 1, Re z <= 1/2` with the reflection and
//! inversion identities, after which the Bernoulli series in `u = -ln(1 - z)`
//! converges quickly (`|u| < 1.3` on that region, radius of convergence `2π`).

use std::f64::consts::PI;

use num_complex::Complex64;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k + 1)!` for `k = 1..=12`.
const BERNOULLI: [f64; 12] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
];

/// `sum_{n>=0} B_n u^{n+1} / (n+1)!`, which equals `Li2(1 - e^{-u})`.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(0.0, 0.0);
    for &b in BERNOULLI.iter().rev() {
        acc = acc * u2 + b;
    }
    u - 0.25 * u2 + acc * u2 * u
}

fn bernoulli_series_real(u: f64) -> f64 {
    let u2 = u * u;
    let mut acc = 0.0;
    for &b in BERNOULLI.iter().rev() {
        acc = acc * u2 + b;
    }
    u - 0.25 * u2 + acc * u2 * u
}

/// Real dilogarithm for `x <= 1`.
///
/// For `x > 1` the real part of the principal value is returned; use
/// [`dilog`] to also get the imaginary part.
pub fn dilog_real(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return PI2_6;
    }
    if x > 1.0 {
        // Re Li2(x) = π²/3 - ln²(x)/2 - Li2(1/x)
        let l = x.ln();
        return 2.0 * PI2_6 - 0.5 * l * l - dilog_real(1.0 / x);
    }
    if x < -1.0 {
        let l = (-x).ln();
        return -PI2_6 - 0.5 * l * l - dilog_real(1.0 / x);
    }
    if x <= 0.5 {
        return bernoulli_series_real(-(-x).ln_1p());
    }
    // 1/2 < x < 1
    PI2_6 - x.ln() * (-x).ln_1p() - bernoulli_series_real(-x.ln())
}

/// Principal-branch dilogarithm `Li2(z) = -∫_0^z ln(1 - t)/t dt`.
///
/// On the cut `z = x > 1` the value is the limit from below the real axis,
/// `Im Li2(x - i0) = -π ln x`.
pub fn dilog(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        let re = dilog_real(z.re);
        let im = if z.re > 1.0 { -PI * z.re.ln() } else { 0.0 };
        return Complex64::new(re, im);
    }

    let nz = z.norm_sqr();
    if nz < f64::EPSILON {
        return z * (1.0 + 0.25 * z);
    }

    let one = Complex64::new(1.0, 0.0);
    if z.re <= 0.5 {
        if nz > 1.0 {
            // Li2(z) = -π²/6 - ln²(-z)/2 - Li2(1/z)
            let lz = (-z).ln();
            let u = -(one - one / z).ln();
            -bernoulli_series(u) - 0.5 * lz * lz - PI2_6
        } else {
            bernoulli_series(-(one - z).ln())
        }
    } else if nz <= 2.0 * z.re {
        // |1 - z| <= 1: Li2(z) = π²/6 - ln z ln(1 - z) - Li2(1 - z)
        let u = -z.ln();
        -bernoulli_series(u) + u * (one - z).ln() + PI2_6
    } else {
        let lz = (-z).ln();
        let u = -(one - one / z).ln();
        -bernoulli_series(u) - 0.5 * lz * lz - PI2_6
    }
}

/// Lobachevsky function `Λ(θ) = -∫_0^θ ln|2 sin t| dt = Im Li2(e^{2iθ}) / 2`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * dilog(Complex64::from_polar(1.0, 2.0 * theta)).im
}
