//! Compactly supported piecewise-polynomial data profiles.
//!
//! Initial data f, g and their exact derivatives live here. The profiles are
//! identically zero outside their pieces, so evaluation beyond the support is
//! an exact 0.0, which downstream support checks rely on.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Piece;

/// A compactly supported piecewise polynomial with a global continuity class.
#[derive(Debug, Clone, Serialize)]
pub struct Profile {
    /// Sorted, non-overlapping pieces. Gaps and the outside evaluate to 0.
    pub pieces: Vec<Piece>,
    /// Global continuity class: the function is C^smoothness across ties and
    /// support edges, so derivatives up to this order are classical.
    pub smoothness: usize,
}

impl Profile {
    /// The identically zero profile (smooth of every order; class is nominal).
    pub fn zero() -> Self {
        Profile { pieces: Vec::new(), smoothness: usize::MAX }
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.coeffs.iter().all(|&c| c == 0.0))
    }

    /// Support interval, if any piece exists.
    pub fn support(&self) -> Option<(f64, f64)> {
        let lo = self.pieces.iter().map(|p| p.lo).fold(f64::INFINITY, f64::min);
        let hi = self.pieces.iter().map(|p| p.hi).fold(f64::NEG_INFINITY, f64::max);
        if lo < hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Check supp ⊂ [-radius, radius].
    pub fn check_support(&self, radius: f64) -> Result<()> {
        if let Some((lo, hi)) = self.support() {
            if lo < -radius || hi > radius {
                return Err(Error::SupportViolation { lo, hi, radius });
            }
        }
        Ok(())
    }

    /// Value at `x`. Points outside every piece (including the open exterior
    /// of the support) give an exact 0.0. Piece intervals are treated as
    /// half-open [lo, hi) so a shared endpoint belongs to the right piece;
    /// the rightmost endpoint of the support evaluates to 0 exactly, matching
    /// the C^0 limit for profiles vanishing at their support edge.
    pub fn eval(&self, x: f64) -> f64 {
        self.derivative_at(x, 0)
    }

    fn find_piece(&self, x: f64) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.lo <= x && x < p.hi)
    }

    pub(crate) fn derivative_at(&self, x: f64, order: usize) -> f64 {
        match self.find_piece(x) {
            Some(p) => p.derivative(order).eval(x),
            None => 0.0,
        }
    }

    /// Derivative as a profile of its own (class drops by `order`). Used to
    /// precompute f', f'', g' once instead of differentiating per evaluation.
    pub fn derivative(&self, order: usize) -> Profile {
        Profile {
            pieces: self.pieces.iter().map(|p| p.derivative(order)).collect(),
            smoothness: self.smoothness.saturating_sub(order),
        }
    }

    /// Sup norm of the `order`-th derivative over the whole line, computed
    /// from polynomial critical points rather than sampling.
    pub fn sup_norm(&self, order: usize) -> f64 {
        let mut sup = 0.0_f64;
        for p in &self.pieces {
            let (min, max) = p.derivative(order).extrema();
            sup = sup.max(min.abs()).max(max.abs());
        }
        sup
    }

    /// Minimum value of the profile over the whole line (0 outside support).
    pub fn min_value(&self) -> f64 {
        let mut min = 0.0_f64;
        for p in &self.pieces {
            min = min.min(p.extrema().0);
        }
        min
    }

    /// Exact integral over [a, b].
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Exact antiderivative A with A(x) = 0 left of the support.
    pub fn antiderivative(&self) -> Antiderivative {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut cum = 0.0;
        let mut sorted: Vec<&Piece> = self.pieces.iter().collect();
        sorted.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        for p in sorted {
            let mut anti = p.antiderivative();
            anti.coeffs[0] += cum;
            cum = anti.eval(p.hi);
            pieces.push(anti);
        }
        Antiderivative { pieces, total: cum }
    }

    /// Profile scaled by a constant factor.
    pub fn scaled(&self, c: f64) -> Profile {
        Profile {
            pieces: self.pieces.iter().map(|p| p.scaled(c)).collect(),
            smoothness: self.smoothness,
        }
    }

    /// Profile translated by `dx` (exact).
    pub fn translated(&self, dx: f64) -> Profile {
        Profile {
            pieces: self.pieces.iter().map(|p| p.translated(dx)).collect(),
            smoothness: self.smoothness,
        }
    }
}

/// Piecewise antiderivative of a compactly supported profile: 0 left of the
/// support, constant on gaps and equal to `total` right of the support.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    pieces: Vec<Piece>,
    total: f64,
}

impl Antiderivative {
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for p in &self.pieces {
            if x < p.lo {
                return acc;
            }
            if x < p.hi {
                return p.eval(x);
            }
            acc = p.eval(p.hi);
        }
        self.total_or(acc)
    }

    fn total_or(&self, acc: f64) -> f64 {
        if self.pieces.is_empty() {
            self.total
        } else {
            acc
        }
    }

    pub fn total(&self) -> f64 {
        self.total
    }
}

/// Build the bump amplitude * (1 - ((x - center)/radius)^2)^(order + 1),
/// supported on [center - radius, center + radius] and of global class
/// C^order. Derivatives are exact polynomials of the piece.
pub fn make_bump(center: f64, radius: f64, amplitude: f64, order: usize) -> Result<Profile> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParams(format!("bump radius must be positive, got {radius}")));
    }
    if order < 1 {
        return Err(Error::InvalidParams("bump order must be at least 1".into()));
    }
    let m = order + 1;
    let mut coeffs = vec![0.0; 2 * m + 1];
    // (1 - s^2)^m = sum_k C(m, k) (-1)^k s^(2k)
    let mut binom = 1.0_f64;
    for k in 0..=m {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[2 * k] = amplitude * sign * binom;
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    let piece = Piece::new(center - radius, center + radius, center, radius, coeffs);
    Ok(Profile { pieces: vec![piece], smoothness: order })
}

/// Exact derivative evaluation; classical only up to the smoothness class.
pub fn profile_derivative(pr: &Profile, x: f64, order: usize) -> Result<f64> {
    if order > pr.smoothness {
        return Err(Error::OrderExceedsSmoothness { order, smoothness: pr.smoothness });
    }
    Ok(pr.derivative_at(x, order))
}

/// The data size M = sum_{a=0..2} ||f^(a)|| + sum_{b=0..1} ||g^(b)||,
/// each sup norm exact from polynomial critical points.
pub fn compute_m(f: &Profile, g: &Profile) -> Result<f64> {
    if f.smoothness < 2 {
        return Err(Error::InsufficientSmoothness(format!(
            "f must be C^2, got C^{}",
            f.smoothness
        )));
    }
    if g.smoothness < 1 {
        return Err(Error::InsufficientSmoothness(format!(
            "g must be C^1, got C^{}",
            g.smoothness
        )));
    }
    Ok(f.sup_norm(0) + f.sup_norm(1) + f.sup_norm(2) + g.sup_norm(0) + g.sup_norm(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_sup_norm(pr: &Profile, order: usize, lo: f64, hi: f64) -> f64 {
        let n = 200_000;
        let mut sup = 0.0_f64;
        for i in 0..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            sup = sup.max(profile_derivative(pr, x, order).unwrap().abs());
        }
        sup
    }

    #[test]
    fn zero_amplitude_bump_is_zero_everywhere() {
        let b = make_bump(0.0, 1.0, 0.0, 3).unwrap();
        for i in -20..=20 {
            assert_eq!(b.eval(i as f64 * 0.1), 0.0);
        }
    }

    #[test]
    fn bump_definition_endpoints() {
        let b = make_bump(0.0, 1.0, 1.0, 3).unwrap();
        assert_eq!(b.eval(0.0), 1.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert_eq!(b.eval(-1.0), 0.0);
    }

    #[test]
    fn bump_first_derivative_matches_central_difference() {
        let b = make_bump(0.0, 1.0, 1.0, 3).unwrap();
        let x = 0.5;
        let d = 1e-5;
        let fd = (b.eval(x + d) - b.eval(x - d)) / (2.0 * d);
        let exact = profile_derivative(&b, x, 1).unwrap();
        assert!(
            (fd - exact).abs() < 1e-8,
            "finite difference {fd} vs exact {exact}"
        );
    }

    #[test]
    fn second_derivative_matches_second_central_difference() {
        let b = make_bump(0.25, 0.5, 2.0, 4).unwrap();
        let d = 1e-4;
        for &x in &[0.1, 0.25, 0.4, 0.6] {
            let fd = (b.eval(x + d) - 2.0 * b.eval(x) + b.eval(x - d)) / (d * d);
            let exact = profile_derivative(&b, x, 2).unwrap();
            assert!(
                (fd - exact).abs() < 1e-5 * (1.0 + exact.abs()),
                "x = {x}: fd {fd} vs exact {exact}"
            );
        }
    }

    #[test]
    fn derivative_outside_support_is_exactly_zero() {
        let b = make_bump(0.0, 0.5, 3.0, 2).unwrap();
        for order in 0..=2 {
            assert_eq!(profile_derivative(&b, 0.75, order).unwrap(), 0.0);
            assert_eq!(profile_derivative(&b, -2.0, order).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_bump_derivative_vanishes_at_center() {
        let b = make_bump(0.25, 0.25, 1.5, 3).unwrap();
        assert_eq!(profile_derivative(&b, 0.25, 1).unwrap(), 0.0);
    }

    #[test]
    fn order_above_smoothness_is_an_error() {
        let b = make_bump(0.0, 1.0, 1.0, 2).unwrap();
        assert!(matches!(
            profile_derivative(&b, 0.0, 3),
            Err(Error::OrderExceedsSmoothness { .. })
        ));
    }

    #[test]
    fn continuity_across_support_edge_up_to_smoothness() {
        let order = 3;
        let b = make_bump(0.0, 1.0, 1.0, order).unwrap();
        let eps = 1e-7;
        for k in 0..=order {
            let inside = profile_derivative(&b, 1.0 - eps, k).unwrap();
            let outside = profile_derivative(&b, 1.0 + eps, k).unwrap();
            assert!(
                (inside - outside).abs() < 1e-4,
                "order {k}: one-sided values {inside} vs {outside}"
            );
        }
    }

    #[test]
    fn compute_m_zero_data() {
        assert_eq!(compute_m(&Profile::zero(), &Profile::zero()).unwrap(), 0.0);
    }

    #[test]
    fn compute_m_unit_bump_matches_dense_sampling() {
        let f = make_bump(0.0, 1.0, 1.0, 3).unwrap();
        let g = Profile::zero();
        let m = compute_m(&f, &g).unwrap();
        let dense = dense_sup_norm(&f, 0, -1.0, 1.0)
            + dense_sup_norm(&f, 1, -1.0, 1.0)
            + dense_sup_norm(&f, 2, -1.0, 1.0);
        assert!(f.sup_norm(0) == 1.0, "||f|| = {}", f.sup_norm(0));
        assert!(
            (m - dense).abs() < 1e-7 * m,
            "critical-point M = {m} vs dense-sampled {dense}"
        );
    }

    #[test]
    fn compute_m_is_homogeneous() {
        let f = make_bump(0.5, 0.5, 1.0, 3).unwrap();
        let g = make_bump(-0.25, 0.25, 0.7, 2).unwrap();
        let m = compute_m(&f, &g).unwrap();
        let c = 3.5;
        let mc = compute_m(&f.scaled(c), &g.scaled(c)).unwrap();
        assert!((mc - c * m).abs() < 1e-12 * mc);
    }

    #[test]
    fn compute_m_translation_invariant() {
        let f = make_bump(0.0, 0.25, 1.0, 3).unwrap();
        let g = make_bump(0.0, 0.25, 0.5, 2).unwrap();
        let h = 1.0 / 64.0;
        let m0 = compute_m(&f, &g).unwrap();
        let m1 = compute_m(&f.translated(12.0 * h), &g.translated(12.0 * h)).unwrap();
        assert_eq!(m0, m1);
    }

    #[test]
    fn compute_m_requires_smoothness() {
        let f = make_bump(0.0, 1.0, 1.0, 1).unwrap();
        assert!(matches!(
            compute_m(&f, &Profile::zero()),
            Err(Error::InsufficientSmoothness(_))
        ));
    }

    #[test]
    fn antiderivative_of_bump() {
        let g = make_bump(0.0, 1.0, 1.0, 2).unwrap();
        let anti = g.antiderivative();
        assert_eq!(anti.eval(-1.5), 0.0);
        // total = int_{-1}^{1} (1-s^2)^3 ds = 32/35
        assert!((anti.total() - 32.0 / 35.0).abs() < 1e-14);
        assert!((anti.eval(5.0) - 32.0 / 35.0).abs() < 1e-14);
        // derivative recovers g
        let d = 1e-6;
        for &x in &[-0.7, -0.2, 0.3, 0.9] {
            let fd = (anti.eval(x + d) - anti.eval(x - d)) / (2.0 * d);
            assert!((fd - g.eval(x)).abs() < 1e-7);
        }
    }

    #[test]
    fn support_check() {
        let b = make_bump(0.75, 0.5, 1.0, 3).unwrap();
        assert!(b.check_support(1.25).is_ok());
        assert!(matches!(b.check_support(1.0), Err(Error::SupportViolation { .. })));
    }

    #[test]
    fn profile_zero_outside_support_randomized() {
        let b = make_bump(0.25, 0.75, 2.0, 3).unwrap();
        let mut state = 0x9e3779b97f4a7c15_u64;
        for _ in 0..1000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let x = 1.0 + 9.0 * u; // outside [-0.5, 1.0]
            assert_eq!(b.eval(x), 0.0);
            assert_eq!(b.eval(-x), 0.0);
        }
    }
}
