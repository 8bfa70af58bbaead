//! Fixed-point construction of w = u_x on the guaranteed existence window.
//!
//! The iteration runs on full space-time fields,
//!
//!   w_{j+1}   = eps u0_x  + Lbar(|w_j|^p),            w_1   = eps u0_x,
//!   (w_{j+1})_t = eps u0_xt + L'(p |w_j|^(p-2) w_j (w_j)_t), (w_1)_t = eps u0_xt,
//!
//! so the measured contraction ratio of consecutive differences is meaningful
//! (the causal march lives in `direct`). Under the four smallness conditions
//! the iterates stay below 2 M eps in sup norm and contract with ratio 1/2.

use serde::Serialize;

use crate::duhamel::{apply_field, AprioriConstant, OperatorKind};
use crate::error::{Error, Result};
use crate::free_wave::{FreeField, FreeSolution};
use crate::grid::{GridField, SupNormReport};
use crate::nonlin;
use crate::params::Params;

/// Default iteration cap; a contraction ratio of 1/2 makes this ample.
pub const DEFAULT_MAX_ITER: usize = 60;

/// Default convergence tolerance, scaled to the data size.
pub fn default_tol(m: f64, eps: f64) -> f64 {
    1e-10 * (m * eps).max(1.0)
}

/// One iterate with its norms, consecutive differences, and difference ratio.
#[derive(Debug, Clone)]
pub struct IterationState {
    pub j: usize,
    pub w: GridField,
    pub wt: GridField,
    pub norms: SupNormReport,
    /// sup |w_j - w_{j-1}| (against the zero field for j = 1).
    pub delta_w: f64,
    pub delta_wt: f64,
    /// delta_w(j) / delta_w(j-1); NaN while undefined.
    pub ratio_w: f64,
}

impl IterationState {
    /// State with index `j` whose predecessor is the zero field.
    pub fn initial(j: usize, w: GridField, wt: GridField) -> Self {
        let norms = SupNormReport::of(&w, &wt);
        IterationState {
            j,
            delta_w: norms.norm_w,
            delta_wt: norms.norm_wt,
            ratio_w: f64::NAN,
            norms,
            w,
            wt,
        }
    }

    pub fn stats(&self) -> IterationStats {
        IterationStats {
            j: self.j,
            norm_w: self.norms.norm_w,
            norm_wt: self.norms.norm_wt,
            delta_w: self.delta_w,
            delta_wt: self.delta_wt,
            ratio_w: self.ratio_w,
        }
    }
}

/// Scalar trace row of one iterate (the CSV columns of the trace export).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IterationStats {
    pub j: usize,
    pub norm_w: f64,
    pub norm_wt: f64,
    pub delta_w: f64,
    pub delta_wt: f64,
    pub ratio_w: f64,
}

/// How a fixed-point run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PicardOutcome {
    Converged,
    /// Iteration cap reached; the smallness conditions are likely violated,
    /// i.e. the window T is too large for this epsilon.
    MaxIterReached,
    /// Non-finite values appeared; the iteration escaped the contraction regime.
    Diverged,
}

/// Result of a fixed-point run: last iterate pair and the scalar trace.
#[derive(Debug, Clone)]
pub struct PicardRun {
    pub w: GridField,
    pub wt: GridField,
    pub trace: Vec<IterationStats>,
    pub outcome: PicardOutcome,
}

impl PicardRun {
    pub fn converged(&self) -> bool {
        self.outcome == PicardOutcome::Converged
    }
}

fn scaled_base(fs: &FreeSolution, which: FreeField, params: &Params, n_t: usize) -> Result<GridField> {
    let eps = params.epsilon;
    Ok(fs.sample(which, params, n_t)?.map(|v| eps * v))
}

fn step(
    prev: &IterationState,
    base_x: &GridField,
    base_xt: &GridField,
    p: f64,
) -> Result<IterationState> {
    let source_w = prev.w.map(|w| nonlin::abs_pow(w, p));
    let w_next = base_x.zip_map(&apply_field(OperatorKind::LBar, &source_w)?, |b, l| b + l);
    drop(source_w);
    let source_wt = prev.w.zip_map(&prev.wt, |w, wt| nonlin::signed_pow(w, wt, p));
    let wt_next = base_xt.zip_map(&apply_field(OperatorKind::LPrime, &source_wt)?, |b, l| b + l);
    drop(source_wt);
    if !w_next.is_finite() || !wt_next.is_finite() {
        return Err(Error::Diverged { iterate: prev.j + 1 });
    }
    let delta_w = w_next.sup_diff(&prev.w);
    let delta_wt = wt_next.sup_diff(&prev.wt);
    let ratio_w = if prev.delta_w > 0.0 { delta_w / prev.delta_w } else { f64::NAN };
    Ok(IterationState {
        j: prev.j + 1,
        norms: SupNormReport::of(&w_next, &wt_next),
        w: w_next,
        wt: wt_next,
        delta_w,
        delta_wt,
        ratio_w,
    })
}

/// One update of the pair (w, w_t); errors on non-finite values.
pub fn iterate_once(
    prev: &IterationState,
    fs: &FreeSolution,
    params: &Params,
) -> Result<IterationState> {
    let n_t = prev.w.n_t();
    let base_x = scaled_base(fs, FreeField::U0X, params, n_t)?;
    let base_xt = scaled_base(fs, FreeField::U0XT, params, n_t)?;
    step(prev, &base_x, &base_xt, params.p)
}

/// Iterate from w_1 = eps u0_x until delta_w + delta_wt <= tol.
///
/// Divergence (non-finite values) and hitting `max_iter` are reported through
/// [`PicardRun::outcome`] with the trace collected so far, so a caller can
/// log the failure and continue with other methods.
pub fn run_picard(
    fs: &FreeSolution,
    params: &Params,
    tol: f64,
    max_iter: usize,
) -> Result<PicardRun> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
    }
    let n_t = params.horizon_levels();
    let base_x = scaled_base(fs, FreeField::U0X, params, n_t)?;
    let base_xt = scaled_base(fs, FreeField::U0XT, params, n_t)?;
    let mut state = IterationState::initial(1, base_x.clone(), base_xt.clone());
    let mut trace = vec![state.stats()];
    let outcome = loop {
        if state.delta_w + state.delta_wt <= tol {
            break PicardOutcome::Converged;
        }
        if state.j >= max_iter {
            break PicardOutcome::MaxIterReached;
        }
        match step(&state, &base_x, &base_xt, params.p) {
            Ok(next) => {
                state = next;
                trace.push(state.stats());
            }
            Err(Error::Diverged { .. }) => break PicardOutcome::Diverged,
            Err(e) => return Err(e),
        }
    };
    Ok(PicardRun { w: state.w, wt: state.wt, trace, outcome })
}

/// Sup norm of w - eps u0_x - Lbar(|w|^p), the defect of the fixed point.
pub fn fixed_point_residual(w: &GridField, fs: &FreeSolution, params: &Params) -> Result<f64> {
    let base_x = scaled_base(fs, FreeField::U0X, params, w.n_t())?;
    let source = w.map(|v| nonlin::abs_pow(v, params.p));
    let rhs = base_x.zip_map(&apply_field(OperatorKind::LBar, &source)?, |b, l| b + l);
    Ok(w.sup_diff(&rhs))
}

/// One evaluated smallness condition.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ConditionCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        ConditionCheck { lhs, rhs, holds: lhs <= rhs }
    }
}

/// The four smallness conditions guaranteeing boundedness and contraction:
///
///   c1: C (2 M eps)^p (T + R)         <= M eps
///   c2: 2^p p C (2 M eps)^(p-1)(T+R)  <= 1/2
///   c3: p C (2 M eps)^(p-1)(T+R)      <= 1
///   c4: p C (2 M eps)^(p-1)(T+R)      <= 1/2
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionReport {
    pub c1: ConditionCheck,
    pub c2: ConditionCheck,
    pub c3: ConditionCheck,
    pub c4: ConditionCheck,
    pub m: f64,
    pub t_horizon: f64,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.c1.holds && self.c2.holds && self.c3.holds && self.c4.holds
    }
}

/// Evaluate the four conditions exactly as written.
pub fn check_conditions(
    m: f64,
    eps: f64,
    t_horizon: f64,
    params: &Params,
    c: AprioriConstant,
) -> ConditionReport {
    let p = params.p;
    let r = params.support_radius;
    let span = t_horizon + r;
    let q = p * c.0 * (2.0 * m * eps).powf(p - 1.0) * span;
    ConditionReport {
        c1: ConditionCheck::new(c.0 * (2.0 * m * eps).powf(p) * span, m * eps),
        c2: ConditionCheck::new(2.0_f64.powf(p) * q, 0.5),
        c3: ConditionCheck::new(q, 1.0),
        c4: ConditionCheck::new(q, 0.5),
        m,
        t_horizon,
    }
}

/// The closed-form smallness threshold and lower-bound constant:
///
///   eps1 = (2^(p+2) p C (2M)^(p-1) R)^(-1/(p-1)),
///   C1   = (2^(p+2) p C (2M)^(p-1))^(-1).
///
/// For eps <= eps1 and T <= C1 eps^-(p-1) the master inequality
/// 2^(p+1) p C (2M)^(p-1) eps^(p-1) (T + R) <= 1 holds (both halves carry
/// budget 1/2), which implies all four smallness conditions; by construction
/// C1 eps1^-(p-1) = R exactly.
pub fn theory_constants(m: f64, params: &Params, c: AprioriConstant) -> Result<TheoryConstants> {
    if !(m > 0.0) {
        return Err(Error::DegenerateData(
            "M = 0: zero data has infinite lifespan, constants undefined".into(),
        ));
    }
    let p = params.p;
    let a2 = 2.0_f64.powf(p + 2.0) * p * c.0 * (2.0 * m).powf(p - 1.0);
    Ok(TheoryConstants {
        eps1: (a2 * params.support_radius).powf(-1.0 / (p - 1.0)),
        c1: 1.0 / a2,
    })
}

/// eps1 and C1 of the existence theorem.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TheoryConstants {
    pub eps1: f64,
    pub c1: f64,
}

impl TheoryConstants {
    /// The guaranteed existence window T = C1 eps^-(p-1).
    pub fn window(&self, eps: f64, p: f64) -> f64 {
        self.c1 * eps.powf(-(p - 1.0))
    }
}

/// u(x, t) = int_{-infty}^x w(y, t) dy by cumulative trapezoid per level.
pub fn reconstruct_u(w: &GridField) -> GridField {
    let mut u = GridField::from_fn(w.h(), w.n_t(), w.x_offset(), w.width(), w.radius(), |_, _| 0.0);
    let h = w.h();
    for n in 0..=w.n_t() {
        let mut acc = 0.0;
        u.set(n, 0, 0.0);
        for i in 1..w.width() {
            acc += 0.5 * h * (w.get(n, i - 1) + w.get(n, i));
            u.set(n, i, acc);
        }
    }
    u
}
