//! Nonlinearity evaluations shared by the iteration and the direct solver.

/// |w|^p, with exact fast paths for the common integer exponents.
#[inline]
pub(crate) fn abs_pow(w: f64, p: f64) -> f64 {
    if p == 2.0 {
        w * w
    } else if p == 3.0 {
        let a = w.abs();
        a * a * a
    } else {
        w.abs().powf(p)
    }
}

/// p |w|^(p-2) w wt, the derivative source of the u_xt equation.
///
/// At w = 0 with 1 < p < 2 the expression is defined as its limit 0, which
/// avoids a singular evaluation.
#[inline]
pub(crate) fn signed_pow(w: f64, wt: f64, p: f64) -> f64 {
    if w == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        2.0 * w * wt
    } else if p == 3.0 {
        3.0 * w.abs() * w * wt
    } else {
        p * w.signum() * w.abs().powf(p - 1.0) * wt
    }
}
