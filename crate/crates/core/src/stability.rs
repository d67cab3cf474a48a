//! Von Neumann amplification factors ξ(θ) of the three Crank–Nicolson
//! schemes and |ξ| ≤ 1 scans over the phase angle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analysis::symbol_value;
use crate::error::{Error, Result};
use crate::scheme::{scheme_stencils, Scheme};

/// Largest accepted |ξ| in a passing scan.
pub const STABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationQuery {
    pub scheme: Scheme,
    pub alpha: f64,
    pub h: f64,
    pub tau: f64,
    pub d1: f64,
    pub d2: f64,
    pub d_alpha: f64,
    pub theta: f64,
}

impl AmplificationQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha {
                alpha: self.alpha,
                reason: "stability analysis needs 0 < alpha < 1",
            });
        }
        for (name, v) in [
            ("h", self.h),
            ("tau", self.tau),
            ("d1", self.d1),
            ("d2", self.d2),
            ("d_alpha", self.d_alpha),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.theta.abs() <= PI) {
            return Err(Error::InvalidParameter(format!(
                "theta = {} outside [-pi, pi]",
                self.theta
            )));
        }
        Ok(())
    }

    fn nu(&self) -> f64 {
        self.d_alpha / (2.0 * (PI * self.alpha / 2.0).cos() * self.h.powf(self.alpha))
    }

    fn symbol(&self) -> f64 {
        symbol_value(self.scheme.weight_order(), self.alpha, self.theta).unwrap_or(f64::NAN)
    }
}

/// The three groups of a printed factor ξ = (P − G − iI)/(P + G + iI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorGroups {
    /// Time-derivative part (2h/τ, s₁ or w₁).
    pub time: f64,
    /// Real dissipative group (spatial sin² terms plus ν·symbol terms).
    pub real: f64,
    /// Coefficient of i in the denominator.
    pub imag: f64,
}

pub fn factor_groups(q: &AmplificationQuery) -> FactorGroups {
    let (h, tau, d1, d2) = (q.h, q.tau, q.d1, q.d2);
    let nu = q.nu();
    let s = q.symbol();
    let sh = (q.theta / 2.0).sin().powi(2);
    let st = q.theta.sin();
    match q.scheme {
        Scheme::Order2 => FactorGroups {
            time: 2.0 * h / tau,
            real: 4.0 * d2 / h * sh + 2.0 * nu * h * s,
            imag: d1 * st,
        },
        Scheme::Order4 => {
            let s1 = 2.0 / tau * (1.0 - sh / 3.0);
            let s2 = 2.0 * sh * (2.0 * d2 / (h * h) + d1 * d1 / (6.0 * d2));
            let s3 = 2.0 * (1.0 - sh / 3.0) * s;
            let s4 = (d1 * h / (6.0 * tau * d2) + d1 / h) - d1 * h / (6.0 * d2) * s;
            FactorGroups {
                time: s1,
                real: s2 + s3 * nu,
                imag: s4 * nu * st,
            }
        }
        Scheme::Order6 => {
            let sh2 = sh * sh;
            let w1 = 2.0 / (45.0 * tau) * (45.0 - 8.0 * sh2);
            let w2 = 2.0 * d2 / (3.0 * h * h) * (7.0 - q.theta.cos()) * sh
                + 16.0 * d1 * d1 / (45.0 * d2) * sh2;
            let w3 = 2.0 / 45.0 * (45.0 - 8.0 * sh2) * s;
            let w4 = -8.0 * d1 * h / (45.0 * tau * d2) * sh
                + d1 / (3.0 * h) * (4.0 - q.theta.cos())
                + 8.0 * d1 * h * nu / (45.0 * d2) * sh * s;
            FactorGroups {
                time: w1,
                real: w2 + w3 * nu,
                imag: w4 * st,
            }
        }
    }
}

/// The printed ξ(θ), with the weight series replaced by the exact symbol.
pub fn amplification_factor(q: &AmplificationQuery) -> Complex64 {
    let g = factor_groups(q);
    Complex64::new(g.time - g.real, -g.imag) / Complex64::new(g.time + g.real, g.imag)
}

/// ξ(θ) = B̂/Â taken directly from the assembled stencils on the infinite
/// grid; the Riesz part contributes 2ν·symbol·Ĉ.
pub fn stencil_amplification_factor(q: &AmplificationQuery) -> Result<Complex64> {
    q.validate()?;
    let st = scheme_stencils(q.scheme, q.d1, q.d2, q.h)?;
    let hat = |s: &[(isize, f64)]| {
        s.iter()
            .map(|&(m, v)| Complex64::from_polar(v, m as f64 * q.theta))
            .sum::<Complex64>()
    };
    let c = hat(&st.mass);
    let e = hat(&st.operator);
    let z = e + c * (2.0 * q.nu() * q.symbol());
    let c = c * (2.0 / q.tau);
    Ok((c - z) / (c + z))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub scheme: Scheme,
    pub alpha: f64,
    pub h: f64,
    pub tau: f64,
    pub max_abs: f64,
    pub argmax_theta: f64,
    /// Smallest real group over the grid; |ξ| ≤ 1 needs it nonnegative.
    pub min_real_group: f64,
    /// max |ξ| of the stencil-derived factor.
    pub stencil_max_abs: f64,
    pub pass: bool,
}

/// max |ξ(θ)| over θ_k = −π + 2πk/n, k = 0..=n.
#[allow(clippy::too_many_arguments)]
pub fn stability_scan(
    scheme: Scheme,
    alpha: f64,
    h: f64,
    tau: f64,
    d1: f64,
    d2: f64,
    d_alpha: f64,
    grid_size: usize,
) -> Result<StabilityReport> {
    if grid_size < 1024 {
        return Err(Error::InvalidParameter(format!(
            "theta grid of {grid_size} points is below the minimum 1024"
        )));
    }
    let mut q = AmplificationQuery {
        scheme,
        alpha,
        h,
        tau,
        d1,
        d2,
        d_alpha,
        theta: 0.0,
    };
    q.validate()?;
    let mut max_abs = 0.0;
    let mut argmax = 0.0;
    let mut min_real = f64::INFINITY;
    let mut stencil_max: f64 = 0.0;
    for k in 0..=grid_size {
        q.theta = (-PI + 2.0 * PI * k as f64 / grid_size as f64).clamp(-PI, PI);
        let xi = amplification_factor(&q).norm();
        if xi > max_abs || xi.is_nan() {
            max_abs = xi;
            argmax = q.theta;
        }
        min_real = min_real.min(factor_groups(&q).real);
        stencil_max = stencil_max.max(stencil_amplification_factor(&q)?.norm());
    }
    if !max_abs.is_finite() {
        return Err(Error::NonFinite(format!(
            "amplification factor of {scheme} at alpha = {alpha}, h = {h}, tau = {tau}"
        )));
    }
    Ok(StabilityReport {
        scheme,
        alpha,
        h,
        tau,
        max_abs,
        argmax_theta: argmax,
        min_real_group: min_real,
        stencil_max_abs: stencil_max,
        pass: max_abs <= 1.0 + STABILITY_TOL,
    })
}
