//! Polynomial pieces in scaled local coordinates, with exact derivatives,
//! antiderivatives, and real-root isolation.
//!
//! A piece stores q(sigma) = sum_k c_k sigma^k with sigma = (x - center) / scale.
//! Keeping coefficients in the local variable makes translation exact and keeps
//! the coefficient magnitudes of narrow bumps tame.

use serde::Serialize;

/// One polynomial piece on the closed interval `[lo, hi]`.
#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub scale: f64,
    /// Coefficients of sigma^0, sigma^1, ... in sigma = (x - center) / scale.
    pub coeffs: Vec<f64>,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, center: f64, scale: f64, coeffs: Vec<f64>) -> Self {
        assert!(lo < hi, "piece interval must be nondegenerate: [{lo}, {hi}]");
        assert!(scale > 0.0, "piece scale must be positive");
        Self { lo, hi, center, scale, coeffs }
    }

    fn sigma(&self, x: f64) -> f64 {
        (x - self.center) / self.scale
    }

    /// Value of the piece polynomial at `x` (no interval check).
    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, self.sigma(x))
    }

    /// Derivative of the given order, as a new piece on the same interval.
    pub fn derivative(&self, order: usize) -> Piece {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..order {
            coeffs = differentiate(&coeffs, self.scale);
        }
        Piece { coeffs, ..self.clone() }
    }

    /// Antiderivative piece A with A(lo) = 0.
    pub fn antiderivative(&self) -> Piece {
        let mut coeffs = vec![0.0; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c * self.scale / (k + 1) as f64;
        }
        let mut out = Piece { coeffs, ..self.clone() };
        let at_lo = out.eval(self.lo);
        out.coeffs[0] -= at_lo;
        out
    }

    /// Exact integral of the piece over its interval.
    pub fn integral(&self) -> f64 {
        self.antiderivative().eval(self.hi)
    }

    /// Minimum and maximum of the piece polynomial over `[lo, hi]`.
    ///
    /// Extrema candidates are the endpoints and the real roots of the first
    /// derivative; root isolation works on monotone intervals delimited by the
    /// derivative's own critical points. If the coefficients are not finite the
    /// routine falls back to dense sampling (1e4 points, documented tolerance
    /// O(range / 1e4 * |q'|)).
    pub fn extrema(&self) -> (f64, f64) {
        let slo = self.sigma(self.lo);
        let shi = self.sigma(self.hi);
        if self.coeffs.iter().any(|c| !c.is_finite()) {
            return self.extrema_sampled(slo, shi);
        }
        let deriv = differentiate(&self.coeffs, 1.0);
        let mut candidates = real_roots(&deriv, slo, shi);
        candidates.push(slo);
        candidates.push(shi);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for s in candidates {
            let v = horner(&self.coeffs, s);
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }

    fn extrema_sampled(&self, slo: f64, shi: f64) -> (f64, f64) {
        let n = 10_000;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for i in 0..=n {
            let s = slo + (shi - slo) * i as f64 / n as f64;
            let v = horner(&self.coeffs, s);
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }

    /// Shift the piece by `dx` (exact: only interval and center move).
    pub fn translated(&self, dx: f64) -> Piece {
        Piece {
            lo: self.lo + dx,
            hi: self.hi + dx,
            center: self.center + dx,
            ..self.clone()
        }
    }

    /// Multiply the piece values by `c`.
    pub fn scaled(&self, c: f64) -> Piece {
        Piece {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }
}

/// Horner evaluation of sum_k c_k s^k.
pub fn horner(coeffs: &[f64], s: f64) -> f64 {
    let mut v = 0.0;
    for &c in coeffs.iter().rev() {
        v = v * s + c;
    }
    v
}

/// Coefficients of the derivative; `scale` divides to convert d/dsigma to d/dx.
fn differentiate(coeffs: &[f64], scale: f64) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64 / scale)
        .collect()
}

/// All real roots of the polynomial `coeffs` (in the variable s) inside `[a, b]`.
///
/// Recursive scheme: the roots of the derivative split `[a, b]` into monotone
/// intervals, and each monotone interval holds at most one root, found by
/// bisection. Degree <= 1 is closed-form.
pub fn real_roots(coeffs: &[f64], a: f64, b: f64) -> Vec<f64> {
    let coeffs = trim(coeffs);
    let deg = coeffs.len().saturating_sub(1);
    if a >= b || deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = -coeffs[0] / coeffs[1];
        if r >= a && r <= b {
            return vec![r];
        }
        return Vec::new();
    }
    let deriv = differentiate(&coeffs, 1.0);
    let mut breaks = real_roots(&deriv, a, b);
    breaks.insert(0, a);
    breaks.push(b);
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let zero_tol = scale * 1e-14;
    let mut roots = Vec::new();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo >= hi {
            continue;
        }
        let flo = horner(&coeffs, lo);
        let fhi = horner(&coeffs, hi);
        if flo.abs() <= zero_tol {
            push_unique(&mut roots, lo);
        }
        if fhi.abs() <= zero_tol {
            push_unique(&mut roots, hi);
            continue;
        }
        if flo.abs() <= zero_tol || flo.signum() == fhi.signum() {
            continue;
        }
        let mut lo = lo;
        let mut hi = hi;
        let mut flo = flo;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fmid = horner(&coeffs, mid);
            if fmid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fmid.signum() == flo.signum() {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        push_unique(&mut roots, 0.5 * (lo + hi));
    }
    roots
}

fn push_unique(roots: &mut Vec<f64>, r: f64) {
    let near = roots.iter().any(|&x| {
        let tol = 1e-13 * (1.0 + x.abs().max(r.abs()));
        (x - r).abs() <= tol
    });
    if !near {
        roots.push(r);
    }
}

fn trim(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let tol = scale * 1e-300;
    let mut v: Vec<f64> = coeffs.to_vec();
    while v.len() > 1 && v.last().map(|c| c.abs() <= tol).unwrap_or(false) {
        v.pop();
    }
    v
}
