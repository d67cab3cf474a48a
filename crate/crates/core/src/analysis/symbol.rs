//! The symbol f_p(α, θ) = Re[W_p(e^{iθ})^α] = Σ_ℓ ϖ_{p,ℓ} cos(ℓθ).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coefficients::{check_alpha_open_0_2, generator_polynomial};
use crate::error::{Error, Result};

/// Values above −1e-12 count as nonnegative.
pub const NONNEGATIVITY_TOL: f64 = -1e-12;

/// One evaluation of the symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSample {
    pub theta: f64,
    pub value: f64,
}

fn check_theta(theta: f64) -> Result<()> {
    // Allow the last ulp so that grids built as −π + k·2π/n stay valid.
    if theta.is_finite() && theta.abs() <= PI * (1.0 + 4.0 * f64::EPSILON) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "theta = {theta} outside [-pi, pi]"
        )))
    }
}

/// W_p(e^{iθ})^α on the principal branch.
pub fn symbol_complex(p: usize, alpha: f64, theta: f64) -> Result<Complex64> {
    let g = generator_polynomial(p)?.coeffs_f64();
    check_alpha_open_0_2(alpha)?;
    check_theta(theta)?;
    let z = Complex64::from_polar(1.0, theta);
    // Horner from the top coefficient.
    let w = g
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &gk| acc * z + gk);
    if w.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(w.powf(alpha))
}

/// Re[W_p(e^{iθ})^α].
pub fn symbol_value(p: usize, alpha: f64, theta: f64) -> Result<f64> {
    if theta == 0.0 {
        // W_p(1) = 0 exactly; skip the rounding residue of the Horner sum.
        generator_polynomial(p)?;
        check_alpha_open_0_2(alpha)?;
        return Ok(0.0);
    }
    Ok(symbol_complex(p, alpha, theta)?.re)
}

/// Result of a nonnegativity scan over a uniform θ grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonnegativityCheck {
    pub holds: bool,
    pub min: SymbolSample,
}

/// Scans θ_k = −π + 2πk/n, k = 0..=n, and reports the minimum.
pub fn check_symbol_nonnegativity(
    p: usize,
    alpha: f64,
    grid_size: usize,
) -> Result<NonnegativityCheck> {
    if grid_size < 1024 {
        return Err(Error::InvalidParameter(format!(
            "theta grid size {grid_size} below 1024"
        )));
    }
    let mut min = SymbolSample {
        theta: 0.0,
        value: f64::INFINITY,
    };
    for k in 0..=grid_size {
        let theta = (-PI + 2.0 * PI * k as f64 / grid_size as f64).clamp(-PI, PI);
        let value = symbol_value(p, alpha, theta)?;
        if value < min.value {
            min = SymbolSample { theta, value };
        }
    }
    Ok(NonnegativityCheck {
        holds: min.value >= NONNEGATIVITY_TOL,
        min,
    })
}

/// π / (π − arccos(1/5) + 2 arctan(191√6/317)) ≈ 0.8439.
pub fn alpha_threshold_p4() -> f64 {
    PI / (PI - (0.2f64).acos() + 2.0 * (191.0 * 6f64.sqrt() / 317.0).atan())
}
