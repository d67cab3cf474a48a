//! Convolution weights ϖ_{p,ℓ}^{(α)} of the order-p shifted difference
//! approximations, generated from the Taylor expansion of W_p(z)^α.

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Highest supported approximation order.
pub const MAX_ORDER: usize = 6;

/// Base polynomial W_p(z) = Σ gᵢ zⁱ of the order-p generating function.
///
/// W_p(z) = Σ_{k=1}^{p} (1 − z)^k / k, so the coefficients are exact
/// rationals, sum to zero and have g₀ = H_p > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPolynomial {
    order: usize,
    coeffs: Vec<Rational64>,
}

impl GeneratorPolynomial {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Exact coefficients g₀..g_p.
    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// Coefficients as `f64`.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect()
    }

    pub fn leading(&self) -> f64 {
        let g0 = self.coeffs[0];
        *g0.numer() as f64 / *g0.denom() as f64
    }
}

/// Exact base polynomial of W_p for 1 ≤ p ≤ 6.
pub fn generator_polynomial(p: usize) -> Result<GeneratorPolynomial> {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    let i = |n: i64| Rational64::from_integer(n);
    let coeffs = match p {
        1 => vec![i(1), i(-1)],
        2 => vec![r(3, 2), i(-2), r(1, 2)],
        3 => vec![r(11, 6), i(-3), r(3, 2), r(-1, 3)],
        4 => vec![r(25, 12), i(-4), i(3), r(-4, 3), r(1, 4)],
        5 => vec![r(137, 60), i(-5), i(5), r(-10, 3), r(5, 4), r(-1, 5)],
        6 => vec![r(147, 60), i(-6), r(15, 2), r(-20, 3), r(15, 4), r(-6, 5), r(1, 6)],
        _ => {
            return Err(Error::UnsupportedOrder {
                order: p,
                expected: "1..=6",
            })
        }
    };
    Ok(GeneratorPolynomial { order: p, coeffs })
}

/// The weights ϖ_{p,0..=L}^{(α)} for one (p, α).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    order: usize,
    alpha: f64,
    values: Vec<f64>,
}

impl CoefficientTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Largest index L stored in the table.
    pub fn length(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// ϖ_ℓ, or zero past the end of the table.
    pub fn get(&self, ell: usize) -> f64 {
        self.values.get(ell).copied().unwrap_or(0.0)
    }

    /// Σ_{ℓ=0}^{L} ϖ_ℓ for every L in the table.
    pub fn partial_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }
}

pub(crate) fn check_alpha_open_0_2(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha {
            alpha,
            reason: "must lie in (0, 2)",
        })
    }
}

/// First-order (Grünwald) weight ϖ_{1,j}^{(α)} = (−1)^j C(α, j).
pub fn first_order_coeff(alpha: f64, j: usize) -> f64 {
    (1..=j).fold(1.0, |w, i| w * (1.0 - (alpha + 1.0) / i as f64))
}

/// ϖ_{1,0..=len}^{(α)} by the same multiplicative recurrence.
pub fn first_order_coeffs(alpha: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len + 1);
    let mut w = 1.0;
    out.push(w);
    for i in 1..=len {
        w *= 1.0 - (alpha + 1.0) / i as f64;
        out.push(w);
    }
    out
}

/// Taylor coefficients of W_p(z)^α up to z^L.
///
/// With P(z) = g₀(1 + q(z)) the coefficients of P^α obey Miller's
/// recurrence n·w_n = Σ_{k=1}^{min(n,p)} ((α + 1)k − n) q_k w_{n−k},
/// which costs O(pL).
pub fn expand_generating_function(p: usize, alpha: f64, len: usize) -> Result<CoefficientTable> {
    let poly = generator_polynomial(p)?;
    check_alpha_open_0_2(alpha)?;
    let g = poly.coeffs_f64();
    let q: Vec<f64> = g.iter().map(|gi| gi / g[0]).collect();

    let mut values = Vec::with_capacity(len + 1);
    values.push(g[0].powf(alpha));
    for n in 1..=len {
        let nf = n as f64;
        let acc: f64 = (1..=n.min(p))
            .map(|k| ((alpha + 1.0) * k as f64 - nf) * q[k] * values[n - k])
            .sum();
        values.push(acc / nf);
    }
    Ok(CoefficientTable {
        order: p,
        alpha,
        values,
    })
}
