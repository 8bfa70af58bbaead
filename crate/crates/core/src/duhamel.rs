//! The three light-cone integral operators on grid fields.
//!
//! L(v)(x,t)  = 1/2 int_0^t ds int_{x-t+s}^{x+t-s} v(y,s) dy
//! L'(v)(x,t) = 1/2 int_0^t { v(x+t-s, s) + v(x-t+s, s) } ds
//! Lbar(v)    = 1/2 int_0^t { v(x+t-s, s) - v(x-t+s, s) } ds
//!
//! With dt = dx = h the backward characteristics from any node pass exactly
//! through nodes, so the composite trapezoid rule reads the integrand without
//! interpolation. Field-wide application accumulates the characteristic
//! integrals level by level: level n of the output uses only levels <= n of
//! the input, which is the ordering the fixed-point iteration relies on.

use serde::Serialize;

use crate::error::Result;
use crate::grid::GridField;

/// Selector for the three operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    /// Double light-cone integral (Duhamel term of u).
    L,
    /// Sum of the two characteristic integrals (Duhamel term of u_t).
    LPrime,
    /// Difference of the two characteristic integrals (Duhamel term of u_x).
    LBar,
}

/// The a-priori estimate constant C in ||L'(|w|^p)|| <= C ||w||^p (T + R).
///
/// The direct bound |L'(|w|^p)| <= t ||w||^p <= (T + R) ||w||^p makes C = 1
/// sufficient, and C is independent of T and epsilon. Kept configurable so a
/// sharper constant propagates into every derived quantity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AprioriConstant(pub f64);

impl Default for AprioriConstant {
    fn default() -> Self {
        AprioriConstant(1.0)
    }
}

/// Operator value at a single node by composite trapezoid along the backward
/// characteristics (iterated trapezoid in s then y for `L`).
///
/// Characteristic samples beyond the stored extent count as zero only when
/// they are provably outside the light cone of `v.radius()`; otherwise the
/// field is too narrow and an error is returned.
pub fn apply(kind: OperatorKind, v: &GridField, x_node: usize, t_level: usize) -> Result<f64> {
    let h = v.h();
    let i = x_node as isize;
    let n = t_level as isize;
    match kind {
        OperatorKind::LPrime | OperatorKind::LBar => {
            let mut plus = 0.0; // along x + t = const
            let mut minus = 0.0; // along x - t = const
            for m in 1..=n {
                plus += 0.5 * h * (v.read_or_zero((m - 1) as usize, i + n - (m - 1))?
                    + v.read_or_zero(m as usize, i + n - m)?);
                minus += 0.5 * h * (v.read_or_zero((m - 1) as usize, i - n + (m - 1))?
                    + v.read_or_zero(m as usize, i - n + m)?);
            }
            Ok(match kind {
                OperatorKind::LPrime => 0.5 * (plus + minus),
                _ => 0.5 * (plus - minus),
            })
        }
        OperatorKind::L => {
            let inner = |m: isize| -> Result<f64> {
                let lo = i - n + m;
                let hi = i + n - m;
                let mut acc = 0.0;
                for j in lo + 1..=hi {
                    acc += 0.5 * h * (v.read_or_zero(m as usize, j - 1)?
                        + v.read_or_zero(m as usize, j)?);
                }
                Ok(acc)
            };
            let mut acc = 0.0;
            let mut prev = inner(0)?;
            for m in 1..=n {
                let cur = inner(m)?;
                acc += 0.5 * h * (prev + cur);
                prev = cur;
            }
            Ok(0.5 * acc)
        }
    }
}

/// Operator applied at every node, level by level.
///
/// The input extent must cover the light cone of `v.radius()` at every level
/// (true for every field the pipeline produces); the output then inherits the
/// support property of the input. For `LPrime` and `LBar` the accumulation
/// order matches [`apply`] summand for summand, so both paths agree bitwise.
pub fn apply_field(kind: OperatorKind, v: &GridField) -> Result<GridField> {
    match kind {
        OperatorKind::LPrime | OperatorKind::LBar => apply_field_chars(kind, v),
        OperatorKind::L => apply_field_cone(v),
    }
}

fn apply_field_chars(kind: OperatorKind, v: &GridField) -> Result<GridField> {
    let width = v.width();
    let n_t = v.n_t();
    let h = v.h();
    let mut out = GridField::from_fn(h, n_t, v.x_offset(), width, v.radius(), |_, _| 0.0);
    let slots = width + n_t;
    // plus[xi]: integral of v along x + t = const(xi); minus[j]: along x - t,
    // with j = i - n + n_t.
    let mut plus = vec![0.0_f64; slots];
    let mut minus = vec![0.0_f64; slots];
    for n in 1..=n_t {
        let ni = n as isize;
        for (xi, acc) in plus.iter_mut().enumerate().take(slots).skip(n) {
            let xi = xi as isize;
            *acc += 0.5 * h * (v.read_or_zero(n - 1, xi - (ni - 1))?
                + v.read_or_zero(n, xi - ni)?);
        }
        for (j, acc) in minus.iter_mut().enumerate().take(slots - n) {
            let base = j as isize - n_t as isize;
            *acc += 0.5 * h * (v.read_or_zero(n - 1, base + ni - 1)?
                + v.read_or_zero(n, base + ni)?);
        }
        let sign = if kind == OperatorKind::LPrime { 1.0 } else { -1.0 };
        for i in 0..width {
            let p = plus[i + n];
            let q = minus[i - n + n_t];
            out.set(n, i, 0.5 * (p + sign * q));
        }
    }
    Ok(out)
}

fn apply_field_cone(v: &GridField) -> Result<GridField> {
    let width = v.width();
    let n_t = v.n_t();
    let h = v.h();
    let mut out = GridField::from_fn(h, n_t, v.x_offset(), width, v.radius(), |_, _| 0.0);
    let slots = width + n_t;

    // prefix[j] = integral of the current level from the left edge to node j;
    // constant continuation outside the extent is valid because v vanishes
    // outside its light cone, which the extent covers.
    let prefix_of = |n: usize| -> Result<Vec<f64>> {
        let mut b = vec![0.0_f64; width];
        for j in 1..width {
            b[j] = b[j - 1] + 0.5 * h * (v.get(n, j - 1) + v.get(n, j));
        }
        Ok(b)
    };
    let read_prefix = |b: &[f64], j: isize| -> f64 {
        if j < 0 {
            0.0
        } else if j as usize >= width {
            b[width - 1]
        } else {
            b[j as usize]
        }
    };

    let mut plus = vec![0.0_f64; slots];
    let mut minus = vec![0.0_f64; slots];
    let mut b_prev = prefix_of(0)?;
    for n in 1..=n_t {
        let ni = n as isize;
        let b_cur = prefix_of(n)?;
        for (xi, acc) in plus.iter_mut().enumerate().take(slots).skip(n) {
            let xi = xi as isize;
            *acc += 0.5 * h * (read_prefix(&b_prev, xi - (ni - 1)) + read_prefix(&b_cur, xi - ni));
        }
        for (j, acc) in minus.iter_mut().enumerate().take(slots - n) {
            let base = j as isize - n_t as isize;
            *acc += 0.5 * h * (read_prefix(&b_prev, base + ni - 1) + read_prefix(&b_cur, base + ni));
        }
        for i in 0..width {
            out.set(n, i, 0.5 * (plus[i + n] - minus[i - n + n_t]));
        }
        b_prev = b_cur;
    }
    Ok(out)
}

/// Both sides of the a-priori estimate ||L'(|v|^p)|| <= C ||v||^p (T + R).
pub fn apriori_bound(
    v: &GridField,
    p: f64,
    t_horizon: f64,
    radius: f64,
    c: AprioriConstant,
) -> Result<(f64, f64)> {
    let source = v.map(|w| w.abs().powf(p));
    let lhs = apply_field(OperatorKind::LPrime, &source)?.sup_norm();
    let rhs = c.0 * v.sup_norm().powf(p) * (t_horizon + radius);
    Ok((lhs, rhs))
}
