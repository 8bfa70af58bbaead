//! Space-time scalar fields on the characteristic-aligned uniform grid.
//!
//! A `GridField` stores one value per node (time level n, space node i) with
//! dt = dx = h. Fields produced by the pipeline are supported in the light
//! cone |x| <= t + R; nodes outside the cone hold an exact 0.0 and the grid
//! extent covers the cone at every level, so reads past the stored extent are
//! either provably zero or an error ("field too narrow").

use crate::error::{Error, Result};
use crate::params::Params;

/// A scalar field sampled on the uniform grid, row-major by time level.
#[derive(Debug, Clone)]
pub struct GridField {
    h: f64,
    n_t: usize,
    x_offset: f64,
    radius: f64,
    width: usize,
    values: Vec<f64>,
}

impl GridField {
    /// Zero field whose extent covers the light cone |x| <= t + radius for all
    /// levels 0..=n_t. `radius` must be an integer multiple of h.
    pub fn cone(h: f64, n_t: usize, radius: f64) -> Self {
        let r_nodes = (radius / h).round() as usize;
        let half = n_t + r_nodes;
        let width = 2 * half + 1;
        GridField {
            h,
            n_t,
            x_offset: -(half as f64) * h,
            radius,
            width,
            values: vec![0.0; (n_t + 1) * width],
        }
    }

    /// Cone-covering zero field sized from `params`.
    pub fn from_params(params: &Params, n_t: usize) -> Self {
        Self::cone(params.h, n_t, params.support_radius)
    }

    /// Explicit-extent field for tests and synthetic inputs. `radius` governs
    /// the light-cone semantics of out-of-extent reads; use `f64::INFINITY`
    /// to make every out-of-extent read an error.
    pub fn from_fn<F: Fn(f64, f64) -> f64>(
        h: f64,
        n_t: usize,
        x_offset: f64,
        width: usize,
        radius: f64,
        f: F,
    ) -> Self {
        let mut field = GridField {
            h,
            n_t,
            x_offset,
            radius,
            width,
            values: vec![0.0; (n_t + 1) * width],
        };
        for n in 0..=n_t {
            let t = field.t(n);
            for i in 0..width {
                let x = field.x(i);
                field.values[n * width + i] = f(x, t);
            }
        }
        field
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Index of the last stored time level (levels run 0..=n_t).
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn num_levels(&self) -> usize {
        self.n_t + 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn x_offset(&self) -> f64 {
        self.x_offset
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_offset + i as f64 * self.h
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.h
    }

    /// Space index of x = 0, when it is a node.
    pub fn center_index(&self) -> usize {
        (-self.x_offset / self.h).round() as usize
    }

    pub fn get(&self, n: usize, i: usize) -> f64 {
        self.values[n * self.width + i]
    }

    pub fn set(&mut self, n: usize, i: usize, v: f64) {
        self.values[n * self.width + i] = v;
    }

    pub fn level(&self, n: usize) -> &[f64] {
        &self.values[n * self.width..(n + 1) * self.width]
    }

    pub fn level_mut(&mut self, n: usize) -> &mut [f64] {
        &mut self.values[n * self.width..(n + 1) * self.width]
    }

    /// Read at a possibly out-of-extent space index. Outside the stored extent
    /// the value is 0 when the point lies outside the light cone |x| <= t + R;
    /// otherwise the field is genuinely too narrow.
    pub fn read_or_zero(&self, n: usize, i: isize) -> Result<f64> {
        if i >= 0 && (i as usize) < self.width {
            return Ok(self.values[n * self.width + i as usize]);
        }
        let x = self.x_offset + i as f64 * self.h;
        if x.abs() > self.t(n) + self.radius {
            Ok(0.0)
        } else {
            Err(Error::FieldTooNarrow { level: n, node: i })
        }
    }

    /// Sup norm over all stored nodes.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Sup norm of the difference with a field of identical layout.
    pub fn sup_diff(&self, other: &GridField) -> f64 {
        assert_eq!(self.values.len(), other.values.len(), "field layouts differ");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Node-wise map with the same layout.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> GridField {
        GridField {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// Node-wise combination of two fields with identical layout.
    pub fn zip_map<F: Fn(f64, f64) -> f64>(&self, other: &GridField, f: F) -> GridField {
        assert_eq!(self.values.len(), other.values.len(), "field layouts differ");
        GridField {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            ..self.clone()
        }
    }

    /// True when every node with |x| > t + R holds an exact 0.0.
    pub fn support_contained(&self) -> bool {
        for n in 0..=self.n_t {
            let bound = self.t(n) + self.radius;
            for i in 0..self.width {
                if self.x(i).abs() > bound && self.get(n, i) != 0.0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Sup norms of a (w, w_t) pair: the X-norm is their sum.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SupNormReport {
    pub norm_w: f64,
    pub norm_wt: f64,
    pub norm_x: f64,
}

impl SupNormReport {
    pub fn new(norm_w: f64, norm_wt: f64) -> Self {
        SupNormReport { norm_w, norm_wt, norm_x: norm_w + norm_wt }
    }

    pub fn of(w: &GridField, wt: &GridField) -> Self {
        Self::new(w.sup_norm(), wt.sup_norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_extent_covers_cone() {
        let f = GridField::cone(0.25, 8, 1.0);
        assert_eq!(f.width, 2 * (8 + 4) + 1);
        assert_eq!(f.x(0), -3.0);
        assert_eq!(f.x(f.width - 1), 3.0);
        assert_eq!(f.t(8), 2.0);
        assert_eq!(f.center_index(), 12);
    }

    #[test]
    fn out_of_extent_reads() {
        let f = GridField::cone(0.5, 4, 1.0);
        // beyond the right edge: outside the cone at every level
        assert_eq!(f.read_or_zero(0, f.width as isize + 3).unwrap(), 0.0);
        // narrow synthetic field: in-cone read past the extent must error
        let g = GridField::from_fn(0.5, 4, -0.5, 3, f64::INFINITY, |_, _| 1.0);
        assert!(matches!(
            g.read_or_zero(2, -1),
            Err(Error::FieldTooNarrow { .. })
        ));
    }

    #[test]
    fn sup_norm_report_sums() {
        let r = SupNormReport::new(1.5, 0.25);
        assert_eq!(r.norm_x, 1.75);
    }

    #[test]
    fn support_check_flags_violations() {
        let mut f = GridField::cone(0.5, 4, 1.0);
        assert!(f.support_contained());
        // the node at x = -3, t = 0 lies outside |x| <= t + 1
        f.set(0, 0, 1e-300);
        assert!(!f.support_contained());
    }
}
