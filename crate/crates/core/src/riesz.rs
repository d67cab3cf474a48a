//! The order-p shifted-difference approximation of the Riesz derivative
//! and the analytic reference for x^p(1 − x)^p.

use std::f64::consts::PI;

use crate::coefficients::{expand_generating_function, CoefficientTable};
use crate::convergence::{ConvergenceReport, ReportMeta};
use crate::error::{Error, Result};
use crate::gamma::gamma_real;
use crate::grid::{GridFunction, UniformGrid};

pub(crate) fn check_riesz_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidAlpha {
            alpha,
            reason: "must lie in (0, 2)",
        });
    }
    if alpha == 1.0 {
        return Err(Error::InvalidAlpha {
            alpha,
            reason: "cos(pi*alpha/2) vanishes at alpha = 1",
        });
    }
    Ok(())
}

/// −1 / (2 cos(πα/2) h^α).
pub fn riesz_prefactor(alpha: f64, h: f64) -> f64 {
    -1.0 / (2.0 * (PI * alpha / 2.0).cos() * h.powf(alpha))
}

/// Applies the approximation at every interior node.
///
/// output[j] = −1/(2cos(πα/2)h^α) · [Σ_{ℓ=0}^{j} ϖ_ℓ f_{j−ℓ} + Σ_{ℓ=0}^{M−j} ϖ_ℓ f_{j+ℓ}],
/// with output[0] = output[M] = 0. `f` must vanish at both ends.
pub fn riesz_apply(table: &CoefficientTable, f: &GridFunction) -> Result<GridFunction> {
    check_riesz_alpha(table.alpha())?;
    let grid = *f.grid();
    let m = grid.m();
    if table.length() < m {
        return Err(Error::TableTooShort {
            have: table.length(),
            need: m,
        });
    }
    let v = f.values();
    if v[0] != 0.0 || v[m] != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "grid function must vanish at both boundaries, got {} and {}",
            v[0], v[m]
        )));
    }
    let w = table.values();
    let c = riesz_prefactor(table.alpha(), grid.h());
    let mut out = vec![0.0; m + 1];
    for j in 1..m {
        let left: f64 = (0..=j).map(|l| w[l] * v[j - l]).sum();
        let right: f64 = (0..=m - j).map(|l| w[l] * v[j + l]).sum();
        out[j] = c * (left + right);
    }
    GridFunction::new(grid, out)
}

/// The same stencil centred at an arbitrary point x of [a, b].
///
/// Samples f(x ± ℓh) are taken off-grid while they stay inside [a, b];
/// beyond the interval f is extended by zero.
pub fn riesz_at_point(
    table: &CoefficientTable,
    f: impl Fn(f64) -> f64,
    x: f64,
    h: f64,
    a: f64,
    b: f64,
) -> Result<f64> {
    check_riesz_alpha(table.alpha())?;
    if !(h > 0.0 && x >= a && x <= b) {
        return Err(Error::InvalidParameter(format!(
            "need h > 0 and x in [{a}, {b}], got h = {h}, x = {x}"
        )));
    }
    // Small slack so that points meant to land on an endpoint are kept.
    let slack = 1e-12 * h;
    let n_left = ((x - a + slack) / h).floor() as usize;
    let n_right = ((b - x + slack) / h).floor() as usize;
    let need = n_left.max(n_right);
    if table.length() < need {
        return Err(Error::TableTooShort {
            have: table.length(),
            need,
        });
    }
    let w = table.values();
    let left: f64 = (0..=n_left).map(|l| w[l] * f(x - l as f64 * h)).sum();
    let right: f64 = (0..=n_right).map(|l| w[l] * f(x + l as f64 * h)).sum();
    Ok(riesz_prefactor(table.alpha(), h) * (left + right))
}

/// Analytic Riesz derivative of x^n(1 − x)^n on [0, 1] for n ≥ 1.
///
/// Expanding x^n(1−x)^n = Σ_ℓ (−1)^ℓ C(n,ℓ) x^{n+ℓ} and applying the power
/// rule to the left and right Riemann–Liouville parts gives
/// −1/(2cos(πα/2)) Σ_ℓ (−1)^ℓ n!(n+ℓ)!/(ℓ!(n−ℓ)!Γ(n+ℓ+1−α)) [x^{n+ℓ−α} + (1−x)^{n+ℓ−α}].
pub fn analytic_riesz_bump(n: u32, alpha: f64, x: f64) -> Result<f64> {
    check_riesz_alpha(alpha)?;
    if n == 0 || n > 24 {
        return Err(Error::InvalidParameter(format!(
            "bump degree {n} outside 1..=24"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
    }
    let mut binom = 1.0;
    let mut sum = 0.0;
    for l in 0..=n {
        if l > 0 {
            binom *= f64::from(n - l + 1) / f64::from(l);
        }
        let k = f64::from(n + l);
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let weight = gamma_real(k + 1.0)? / gamma_real(k + 1.0 - alpha)?;
        let e = k - alpha;
        sum += sign * binom * weight * (x.powf(e) + (1.0 - x).powf(e));
    }
    Ok(-sum / (2.0 * (PI * alpha / 2.0).cos()))
}

/// Analytic Riesz derivative of f_p(x) = x^p(1 − x)^p, p = 2..6.
pub fn analytic_riesz_fp(p: usize, alpha: f64, x: f64) -> Result<f64> {
    if !(2..=6).contains(&p) {
        return Err(Error::UnsupportedOrder {
            order: p,
            expected: "2..=6",
        });
    }
    analytic_riesz_bump(p as u32, alpha, x)
}

/// How a spatial error is reduced to one number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example1Metric {
    /// |error| at x = 1/2, sampling f off-grid when M is odd.
    Midpoint,
    /// max over interior nodes j = 1..M−1.
    MaxInterior,
}

impl Example1Metric {
    pub fn tag(self) -> &'static str {
        match self {
            Example1Metric::Midpoint => "midpoint-abs",
            Example1Metric::MaxInterior => "max-abs-interior",
        }
    }
}

pub(crate) fn cells_from_step(h: f64) -> Result<usize> {
    if !(h > 0.0 && h <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "step h = {h} must lie in (0, 1/2]"
        )));
    }
    let m = (1.0 / h).round();
    if (m * h - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "step h = {h} is not 1/M for an integer M"
        )));
    }
    Ok(m as usize)
}

/// Error of the order-p approximation on f_p(x) = x^p(1−x)^p, one row per h.
pub fn example1_error(p: usize, alpha: f64, m: usize, metric: Example1Metric) -> Result<f64> {
    let grid = UniformGrid::unit(m)?;
    let table = expand_generating_function(p, alpha, m)?;
    let fp = |x: f64| {
        if (0.0..=1.0).contains(&x) {
            (x * (1.0 - x)).powi(p as i32)
        } else {
            0.0
        }
    };
    match metric {
        Example1Metric::Midpoint => {
            let approx = riesz_at_point(&table, fp, 0.5, grid.h(), 0.0, 1.0)?;
            Ok((approx - analytic_riesz_fp(p, alpha, 0.5)?).abs())
        }
        Example1Metric::MaxInterior => {
            let f = GridFunction::from_fn(grid, fp);
            let approx = riesz_apply(&table, &f)?;
            let mut err: f64 = 0.0;
            for j in 1..m {
                let exact = analytic_riesz_fp(p, alpha, grid.x(j))?;
                err = err.max((approx.values()[j] - exact).abs());
            }
            Ok(err)
        }
    }
}

/// Operator convergence study on x^p(1 − x)^p with the midpoint metric.
pub fn example1_convergence(p: usize, alpha: f64, h_list: &[f64]) -> Result<ConvergenceReport> {
    example1_convergence_with(p, alpha, h_list, Example1Metric::Midpoint)
}

/// Operator convergence study on x^p(1 − x)^p with an explicit metric.
pub fn example1_convergence_with(
    p: usize,
    alpha: f64,
    h_list: &[f64],
    metric: Example1Metric,
) -> Result<ConvergenceReport> {
    let mut entries = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let m = cells_from_step(h)?;
        entries.push((1.0 / m as f64, None, example1_error(p, alpha, m, metric)?));
    }
    Ok(ConvergenceReport::from_errors(
        ReportMeta {
            scheme: format!("riesz-p{p}"),
            problem: "example1".into(),
            alpha,
            norm: metric.tag().into(),
        },
        &entries,
    ))
}
