//! Numerical laboratory for the 1D semilinear wave equation
//! u_tt - u_xx = |u_x|^p with small compactly supported data
//! u(x,0) = eps f(x), u_t(x,0) = eps g(x).
//!
//! The crate builds solutions two independent ways - a fixed-point iteration
//! on the integral equations for (u_x, u_xt) and a causal leapfrog march with
//! blow-up detection - and verifies the two-sided lifespan scaling law
//! C1 eps^-(p-1) <= T(eps) <= C2 eps^-(p-1) together with the intermediate
//! estimates that drive it.

pub mod direct;
pub mod duhamel;
pub mod error;
pub mod free_wave;
pub mod functional;
pub mod grid;
pub mod lab;
mod nonlin;
pub mod params;
pub mod picard;
pub mod poly;
pub mod profile;

pub use direct::{detect_blowup, solve_direct, DetectReason, LifespanRecord};
pub use duhamel::{apply, apply_field, apriori_bound, AprioriConstant, OperatorKind};
pub use error::{Error, Result};
pub use free_wave::{eval_free, sample_free, FreeField, FreeSolution};
pub use functional::{
    compute_constants, compute_trace, ode_comparison_lifespan, verify_lower_bound,
    verify_ode_inequality, BlowupConstants, FunctionalTrace,
};
pub use grid::{GridField, SupNormReport};
pub use lab::{fit_powerlaw, sweep, Scenario, SweepResult};
pub use params::Params;
pub use picard::{
    check_conditions, iterate_once, reconstruct_u, run_picard, theory_constants, ConditionReport,
    IterationState, IterationStats, PicardOutcome, PicardRun, TheoryConstants,
};
pub use profile::{compute_m, make_bump, profile_derivative, Profile};
