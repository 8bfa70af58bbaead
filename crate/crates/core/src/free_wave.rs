//! Closed-form free waves: u0 and its first derivatives, evaluated exactly.
//!
//! u0(x,t)    = 1/2 {f(x+t) + f(x-t)} + 1/2 {G(x+t) - G(x-t)},  G' = g
//! u0_t(x,t)  = 1/2 {f'(x+t) - f'(x-t) + g(x+t) + g(x-t)}
//! u0_x(x,t)  = 1/2 {f'(x+t) + f'(x-t) + g(x+t) - g(x-t)}
//! u0_xt(x,t) = 1/2 {f''(x+t) - f''(x-t) + g'(x+t) + g'(x-t)}
//!
//! The g-integral is carried by the exact piecewise-polynomial antiderivative
//! G normalized to G(-R) = 0; only differences G(x+t) - G(x-t) ever enter, so
//! the normalization constant is immaterial.

use crate::error::{Error, Result};
use crate::grid::GridField;
use crate::params::Params;
use crate::profile::{Antiderivative, Profile};

/// Which free field to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeField {
    U0,
    U0T,
    U0X,
    U0XT,
}

/// The free solution with data (f, g), holding the exact derivative profiles
/// and the antiderivative of g.
#[derive(Debug, Clone)]
pub struct FreeSolution {
    pub f: Profile,
    pub g: Profile,
    f1: Profile,
    f2: Profile,
    g1: Profile,
    big_g: Antiderivative,
    support_radius: f64,
}

impl FreeSolution {
    /// Build from data profiles, enforcing (f, g) in C^2 x C^1 and
    /// supp f, supp g inside [-R, R].
    pub fn new(f: Profile, g: Profile, params: &Params) -> Result<Self> {
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
        f.check_support(params.support_radius)?;
        g.check_support(params.support_radius)?;
        let f1 = f.derivative(1);
        let f2 = f.derivative(2);
        let g1 = g.derivative(1);
        let big_g = g.antiderivative();
        Ok(FreeSolution {
            f,
            g,
            f1,
            f2,
            g1,
            big_g,
            support_radius: params.support_radius,
        })
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// G(b) - G(a), the exact integral of g over [a, b].
    pub fn g_integral(&self, a: f64, b: f64) -> f64 {
        self.big_g.eval(b) - self.big_g.eval(a)
    }

    /// Exact value of the selected free field at (x, t), t >= 0.
    pub fn eval(&self, which: FreeField, x: f64, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        let xp = x + t;
        let xm = x - t;
        let v = match which {
            FreeField::U0 => {
                0.5 * (self.f.eval(xp) + self.f.eval(xm))
                    + 0.5 * (self.big_g.eval(xp) - self.big_g.eval(xm))
            }
            FreeField::U0T => {
                0.5 * (self.f1.eval(xp) - self.f1.eval(xm) + self.g.eval(xp) + self.g.eval(xm))
            }
            FreeField::U0X => {
                0.5 * (self.f1.eval(xp) + self.f1.eval(xm) + self.g.eval(xp) - self.g.eval(xm))
            }
            FreeField::U0XT => {
                0.5 * (self.f2.eval(xp) - self.f2.eval(xm) + self.g1.eval(xp) + self.g1.eval(xm))
            }
        };
        Ok(v)
    }

    /// Sample the selected free field at every node up to level n_t.
    pub fn sample(&self, which: FreeField, params: &Params, n_t: usize) -> Result<GridField> {
        if n_t as f64 * params.h > params.t_max + 1e-12 * params.t_max.max(1.0) {
            return Err(Error::HorizonExceeded {
                requested: n_t as f64 * params.h,
                available: params.t_max,
            });
        }
        let mut field = GridField::from_params(params, n_t);
        for n in 0..=n_t {
            let t = field.t(n);
            for i in 0..field.width() {
                let x = field.x(i);
                let v = self.eval(which, x, t)?;
                field.set(n, i, v);
            }
        }
        Ok(field)
    }
}

/// Free-standing form of [`FreeSolution::eval`].
pub fn eval_free(fs: &FreeSolution, which: FreeField, x: f64, t: f64) -> Result<f64> {
    fs.eval(which, x, t)
}

/// Free-standing form of [`FreeSolution::sample`].
pub fn sample_free(
    fs: &FreeSolution,
    which: FreeField,
    params: &Params,
    n_t: usize,
) -> Result<GridField> {
    fs.sample(which, params, n_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::make_bump;

    fn params() -> Params {
        Params {
            p: 2.0,
            epsilon: 1.0,
            support_radius: 1.0,
            inner_radius: 0.5,
            h: 1.0 / 32.0,
            t_max: 2.0,
            blowup_threshold: 1e6,
        }
    }

    fn bump_data() -> FreeSolution {
        let f = make_bump(0.25, 0.5, 1.0, 3).unwrap();
        let g = make_bump(-0.25, 0.5, 0.8, 2).unwrap();
        FreeSolution::new(f, g, &params()).unwrap()
    }

    #[test]
    fn zero_data_gives_zero_everywhere() {
        let fs = FreeSolution::new(Profile::zero(), Profile::zero(), &params()).unwrap();
        for which in [FreeField::U0, FreeField::U0T, FreeField::U0X, FreeField::U0XT] {
            assert_eq!(fs.eval(which, 0.37, 1.91).unwrap(), 0.0);
        }
    }

    #[test]
    fn initial_conditions() {
        let fs = bump_data();
        for i in -8..=8 {
            let x = i as f64 * 0.125;
            assert_eq!(fs.eval(FreeField::U0, x, 0.0).unwrap(), fs.f.eval(x));
            assert_eq!(fs.eval(FreeField::U0T, x, 0.0).unwrap(), fs.g.eval(x));
        }
    }

    #[test]
    fn negative_time_rejected() {
        let fs = bump_data();
        assert!(matches!(
            fs.eval(FreeField::U0, 0.0, -0.1),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn wave_equation_residual_second_differences() {
        let fs = bump_data();
        let d = 1e-4;
        for &(x, t) in &[(0.3, 0.7), (-0.9, 1.2), (0.05, 0.4)] {
            let u = |x: f64, t: f64| fs.eval(FreeField::U0, x, t).unwrap();
            let utt = (u(x, t + d) - 2.0 * u(x, t) + u(x, t - d)) / (d * d);
            let uxx = (u(x + d, t) - 2.0 * u(x, t) + u(x - d, t)) / (d * d);
            assert!(
                (utt - uxx).abs() < 1e-4,
                "free-wave residual at ({x},{t}): {}",
                utt - uxx
            );
        }
    }

    #[test]
    fn parallelogram_identity_exact() {
        let fs = bump_data();
        let mut state = 0x853c49e6748fea9b_u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for which in [FreeField::U0, FreeField::U0T, FreeField::U0X, FreeField::U0XT] {
            for _ in 0..250 {
                let t = 0.2 + 1.8 * rnd();
                let x = -2.0 + 4.0 * rnd();
                let a = 0.5 * t * rnd();
                let lhs = fs.eval(which, x, t).unwrap();
                let rhs = fs.eval(which, x + a, t - a).unwrap()
                    + fs.eval(which, x - a, t - a).unwrap()
                    - fs.eval(which, x, t - 2.0 * a).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()),
                    "parallelogram identity broken for {which:?} at ({x},{t},{a}): {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn cross_derivative_consistency() {
        let fs = bump_data();
        let d = 1e-5;
        for &(x, t) in &[(0.2, 0.6), (-0.4, 1.1)] {
            let uxt = fs.eval(FreeField::U0XT, x, t).unwrap();
            let ux_t = (fs.eval(FreeField::U0X, x, t + d).unwrap()
                - fs.eval(FreeField::U0X, x, t - d).unwrap())
                / (2.0 * d);
            let ut_x = (fs.eval(FreeField::U0T, x + d, t).unwrap()
                - fs.eval(FreeField::U0T, x - d, t).unwrap())
                / (2.0 * d);
            assert!((uxt - ux_t).abs() < 1e-6 * (1.0 + uxt.abs()));
            assert!((uxt - ut_x).abs() < 1e-6 * (1.0 + uxt.abs()));
        }
    }

    #[test]
    fn finite_speed_exact_zero() {
        let fs = bump_data();
        for which in [FreeField::U0, FreeField::U0T, FreeField::U0X, FreeField::U0XT] {
            for k in 1..40 {
                let t = 0.05 * k as f64;
                let x = t + 1.0 + 0.0625 * k as f64;
                assert_eq!(fs.eval(which, x, t).unwrap(), 0.0);
                assert_eq!(fs.eval(which, -x, t).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn sampled_u0x_matches_x_difference_of_u0() {
        let fs = bump_data();
        let p = params();
        let n_t = 32;
        let u0 = fs.sample(FreeField::U0, &p, n_t).unwrap();
        let u0x = fs.sample(FreeField::U0X, &p, n_t).unwrap();
        let mut worst = 0.0_f64;
        for n in 0..=n_t {
            for i in 1..u0.width() - 1 {
                let diff = (u0.get(n, i + 1) - u0.get(n, i - 1)) / (2.0 * p.h);
                worst = worst.max((diff - u0x.get(n, i)).abs());
            }
        }
        assert!(worst < 4.0 * p.h * p.h * fs.f.sup_norm(2).max(1.0), "O(h^2) violated: {worst}");
    }

    #[test]
    fn sampled_field_support() {
        let fs = bump_data();
        let p = params();
        let field = fs.sample(FreeField::U0X, &p, 48).unwrap();
        assert!(field.support_contained());
    }

    #[test]
    fn sample_beyond_horizon_rejected() {
        let fs = bump_data();
        let p = params();
        assert!(fs.sample(FreeField::U0, &p, 65).is_err());
    }
}
