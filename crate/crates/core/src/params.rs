//! Problem and discretization parameters.

use serde::Serialize;

use crate::error::{Error, Result};

/// Problem parameters plus numerical controls.
///
/// The grid is uniform and characteristic-aligned (dt = dx = h), so backward
/// characteristics pass exactly through nodes. `support_radius` (R) and
/// `inner_radius` (R0) must be integer multiples of h so that support
/// endpoints and the moving window [s + R0, s + R] land on grid nodes.
#[derive(Debug, Clone, Serialize)]
pub struct Params {
    /// Nonlinearity exponent, p > 1.
    pub p: f64,
    /// Data amplitude, epsilon >= 0 (0 is the degenerate all-zero case).
    pub epsilon: f64,
    /// Support radius R >= 1 of the initial data.
    pub support_radius: f64,
    /// Inner radius R0, 0 < R0 < R.
    pub inner_radius: f64,
    /// Grid step h > 0 (both dt and dx).
    pub h: f64,
    /// Time horizon for marching and sampling.
    pub t_max: f64,
    /// Absolute blow-up detection threshold on |u_x|.
    pub blowup_threshold: f64,
}

fn is_node_multiple(value: f64, h: f64) -> bool {
    let k = (value / h).round();
    (value - k * h).abs() <= 1e-9 * value.abs().max(h)
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) {
            return Err(Error::InvalidParams(format!("p must exceed 1, got {}", self.p)));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must be nonnegative, got {}",
                self.epsilon
            )));
        }
        if !(self.support_radius >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "support radius R must be at least 1, got {}",
                self.support_radius
            )));
        }
        if !(self.inner_radius > 0.0 && self.inner_radius < self.support_radius) {
            return Err(Error::InvalidParams(format!(
                "inner radius must satisfy 0 < R0 < R, got R0 = {}, R = {}",
                self.inner_radius, self.support_radius
            )));
        }
        if !(self.h > 0.0) {
            return Err(Error::InvalidParams(format!("grid step must be positive, got {}", self.h)));
        }
        if !(self.t_max >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "horizon must be nonnegative, got {}",
                self.t_max
            )));
        }
        if !(self.blowup_threshold > 0.0) {
            return Err(Error::InvalidParams(format!(
                "blow-up threshold must be positive, got {}",
                self.blowup_threshold
            )));
        }
        if !is_node_multiple(self.support_radius, self.h) {
            return Err(Error::InvalidParams(format!(
                "R = {} is not an integer multiple of h = {}",
                self.support_radius, self.h
            )));
        }
        if !is_node_multiple(self.inner_radius, self.h) {
            return Err(Error::InvalidParams(format!(
                "R0 = {} is not an integer multiple of h = {}",
                self.inner_radius, self.h
            )));
        }
        Ok(())
    }

    /// R in grid nodes.
    pub fn r_nodes(&self) -> usize {
        (self.support_radius / self.h).round() as usize
    }

    /// R0 in grid nodes.
    pub fn r0_nodes(&self) -> usize {
        (self.inner_radius / self.h).round() as usize
    }

    /// Number of whole grid steps that fit in the horizon.
    pub fn horizon_levels(&self) -> usize {
        (self.t_max / self.h + 1e-9).floor() as usize
    }

    /// Copy with a different epsilon (threshold is left to the caller).
    pub fn with_epsilon(&self, epsilon: f64) -> Params {
        Params { epsilon, ..self.clone() }
    }
}
