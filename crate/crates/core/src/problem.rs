//! Problem data for u_t = d₂u_xx − d₁u_x + d_α ∂^α u/∂|x|^α + s(x, t).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gamma::gamma_real;

pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Coefficients, domain, horizon and data of one problem instance.
/// Boundary values are homogeneous: u(a, t) = u(b, t) = 0.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    /// Advection coefficient.
    pub d1: f64,
    /// Diffusion coefficient.
    pub d2: f64,
    /// Fractional diffusion coefficient.
    pub d_alpha: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub t_end: f64,
    pub source: SpaceTimeFn,
    pub initial: SpaceFn,
    pub exact: Option<SpaceTimeFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("d1", &self.d1)
            .field("d2", &self.d2)
            .field("d_alpha", &self.d_alpha)
            .field("alpha", &self.alpha)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("t_end", &self.t_end)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    /// Checks the parameter ranges the schemes rely on.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha {
                alpha: self.alpha,
                reason: "the schemes require 0 < alpha < 1",
            });
        }
        if !(self.d2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "d2 = {} must be positive",
                self.d2
            )));
        }
        if !(self.d1.is_finite() && self.d_alpha.is_finite() && self.d_alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "d1 = {} must be finite and d_alpha = {} nonnegative",
                self.d1, self.d_alpha
            )));
        }
        if !(self.a.is_finite() && self.b.is_finite() && self.b > self.a) {
            return Err(Error::InvalidGrid(format!(
                "need a < b, got [{}, {}]",
                self.a, self.b
            )));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "horizon T = {} must be positive",
                self.t_end
            )));
        }
        Ok(())
    }
}

/// Σ_k coef_k Γ(n₀+k+1)/Γ(n₀+k+1−α) [x^{n₀+k−α} + (1−x)^{n₀+k−α}].
fn power_bracket_sum(coefs: &[f64], n0: u32, alpha: f64) -> Result<impl Fn(f64) -> f64> {
    let mut terms = Vec::with_capacity(coefs.len());
    for (k, &c) in coefs.iter().enumerate() {
        let n = f64::from(n0) + k as f64;
        let w = gamma_real(n + 1.0)? / gamma_real(n + 1.0 - alpha)?;
        terms.push((c * w, n - alpha));
    }
    Ok(move |x: f64| {
        terms
            .iter()
            .map(|&(cw, e)| cw * (x.powf(e) + (1.0 - x).powf(e)))
            .sum::<f64>()
    })
}

/// u = eᵗx⁶(1−x)⁶ with d₁ = d₂ = d_α = 1 on [0, 1] × [0, 1].
fn example2(alpha: f64) -> Result<ProblemSpec> {
    let bracket = power_bracket_sum(&[1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0], 6, alpha)?;
    let sec = 1.0 / (PI * alpha / 2.0).cos();
    let source = move |x: f64, t: f64| {
        let et = t.exp();
        let poly = x.powi(4) * (1.0 - x).powi(4)
            * (x.powi(4) + 10.0 * x.powi(3) - 149.0 * x * x + 138.0 * x - 30.0);
        et * poly + 0.5 * et * sec * bracket(x)
    };
    let bump = |x: f64| (x * (1.0 - x)).powi(6);
    Ok(ProblemSpec {
        name: "example2".into(),
        d1: 1.0,
        d2: 1.0,
        d_alpha: 1.0,
        alpha,
        a: 0.0,
        b: 1.0,
        t_end: 1.0,
        source: Arc::new(source),
        initial: Arc::new(bump),
        exact: Some(Arc::new(move |x, t| t.exp() * bump(x))),
    })
}

/// u = sin(t)x⁸(1−x)⁸ with d₁ = 2, d₂ = 1, d_α = α² on [0, 1] × [0, 1].
fn example3(alpha: f64) -> Result<ProblemSpec> {
    let bracket = power_bracket_sum(
        &[1.0, -8.0, 28.0, -56.0, 70.0, -56.0, 28.0, -8.0, 1.0],
        8,
        alpha,
    )?;
    let sec = 1.0 / (PI * alpha / 2.0).cos();
    let source = move |x: f64, t: f64| {
        let base = x.powi(6) * (1.0 - x).powi(6);
        let poly = t.cos() * (x.powi(4) - 2.0 * x.powi(3) + x * x)
            + t.sin() * (32.0 * x.powi(3) - 288.0 * x * x + 256.0 * x - 56.0);
        base * poly + alpha * alpha / 2.0 * t.sin() * sec * bracket(x)
    };
    let bump = |x: f64| (x * (1.0 - x)).powi(8);
    Ok(ProblemSpec {
        name: "example3".into(),
        d1: 2.0,
        d2: 1.0,
        d_alpha: alpha * alpha,
        alpha,
        a: 0.0,
        b: 1.0,
        t_end: 1.0,
        source: Arc::new(source),
        initial: Arc::new(|_| 0.0),
        exact: Some(Arc::new(move |x, t| t.sin() * bump(x))),
    })
}

/// `example2` or `example3` at the given fractional order.
pub fn builtin_problem(name: &str, alpha: f64) -> Result<ProblemSpec> {
    let spec = match name {
        "example2" => example2(alpha)?,
        "example3" => example3(alpha)?,
        other => return Err(Error::UnknownProblem(other.to_string())),
    };
    spec.validate()?;
    Ok(spec)
}
