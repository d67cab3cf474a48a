//! Lower/upper bound sandwiches for |ϖ_{1,ℓ}|, its tails, and |ϖ_{2,ℓ}|.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::coefficients::{expand_generating_function, first_order_coeffs};
use crate::error::{Error, Result};

/// Which bound pair and which observed quantity to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    /// tilde-B₁ᴸ < |ϖ_{1,ℓ}^{(α)}| < B₁ᴿ
    FirstOrderExpPointwise,
    /// tilde-S₁ᴸ < Σ_{k≥ℓ} |ϖ_{1,k}^{(α)}| < S₁ᴿ
    FirstOrderExpTail,
    /// B₁ᴸ < |ϖ_{1,ℓ}^{(α)}| < B₁ᴿ
    FirstOrderPointwise,
    /// S₁ᴸ < Σ_{k≥ℓ} |ϖ_{1,k}^{(α)}| < S₁ᴿ
    FirstOrderTail,
    /// overline-B₁ᴸ < |ϖ_{1,ℓ}^{(1+α)}| < overline-B₁ᴿ
    ShiftedPointwise,
    /// overline-S₁ᴸ < Σ_{k≥ℓ} |ϖ_{1,k}^{(1+α)}| < overline-S₁ᴿ
    ShiftedTail,
    /// B₂ᴸ < |ϖ_{2,ℓ}^{(α)}| < B₂ᴿ
    SecondOrderPointwise,
    /// overline-B₂ᴸ < |ϖ_{2,ℓ}^{(1+α)}| < overline-B₂ᴿ
    SecondOrderShifted,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 8] = [
        BoundFamily::FirstOrderExpPointwise,
        BoundFamily::FirstOrderExpTail,
        BoundFamily::FirstOrderPointwise,
        BoundFamily::FirstOrderTail,
        BoundFamily::ShiftedPointwise,
        BoundFamily::ShiftedTail,
        BoundFamily::SecondOrderPointwise,
        BoundFamily::SecondOrderShifted,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BoundFamily::FirstOrderExpPointwise => "th4-pointwise",
            BoundFamily::FirstOrderExpTail => "th4-tail",
            BoundFamily::FirstOrderPointwise => "th5-pointwise",
            BoundFamily::FirstOrderTail => "th5-tail",
            BoundFamily::ShiftedPointwise => "th7-pointwise",
            BoundFamily::ShiftedTail => "th7-tail",
            BoundFamily::SecondOrderPointwise => "th8-pointwise",
            BoundFamily::SecondOrderShifted => "th8-overline",
        }
    }

    /// Smallest ℓ the bound is stated for.
    pub fn min_index(self) -> usize {
        match self {
            BoundFamily::FirstOrderExpPointwise
            | BoundFamily::FirstOrderExpTail
            | BoundFamily::FirstOrderPointwise
            | BoundFamily::FirstOrderTail => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::UnknownBoundFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheckRecord {
    pub family: BoundFamily,
    pub alpha: f64,
    pub ell: usize,
    pub lower: f64,
    pub observed: f64,
    pub upper: f64,
    pub holds: bool,
}

fn third_pow(n: i64) -> f64 {
    (1.0f64 / 3.0).powi(n as i32)
}

fn tilde_b1l(a: f64, l: f64) -> f64 {
    (-(a + 1.0).powi(2) * (PI * PI / 6.0 - 1.25)).exp() * a * (1.0 - a) * 2f64.powf(a)
        / l.powf(a + 1.0)
}

fn b1l(a: f64, l: f64) -> f64 {
    a * (1.0 - a) / 2.0 * (2.0 / l).powf(2.0 * (a + 1.0))
}

fn b1r(a: f64, l: f64) -> f64 {
    a * 2f64.powf(a + 1.0) / (l + 1.0).powf(a + 1.0)
}

fn tilde_s1l(a: f64, l: f64) -> f64 {
    (1.0 - a) / 5.0 * (2.0 / l).powf(a)
}

fn s1l(a: f64, l: f64) -> f64 {
    a * (1.0 - a) / (2.0 * a + 1.0) * (2.0 / l).powf(2.0 * a + 1.0)
}

fn s1r(a: f64, l: f64) -> f64 {
    2.0 * (2.0 / l).powf(a)
}

fn bar_b1l(a: f64, l: f64) -> f64 {
    (1.0 - a) * a * (1.0 + a) / 6.0 * (3.0 / l).powf(2.0 * (2.0 + a))
}

fn bar_b1r(a: f64, l: f64) -> f64 {
    a * (1.0 + a) / 2.0 * (3.0 / (l + 1.0)).powf(2.0 + a)
}

fn bar_s1l(a: f64, l: f64) -> f64 {
    (1.0 - a) * a * (1.0 + a) / (2.0 * (3.0 + 2.0 * a)) * (3.0 / l).powf(3.0 + 2.0 * a)
}

fn bar_s1r(a: f64, l: f64) -> f64 {
    1.5 * a * (3.0 / l).powf(1.0 + a)
}

fn b2l(a: f64, ell: usize) -> f64 {
    let l = ell as f64;
    let n = ell as i64;
    1.5f64.powf(a)
        * ((1.0 + third_pow(n)) * a * (1.0 - a) / 2.0 * (2.0 / l).powf(2.0 * (1.0 + a))
            - (1.0 - third_pow(n - 1)) * a * a * 2f64.powf(2.0 * a + 1.0)
                / (1.0 + (a + 1.0) * l))
}

fn b2r(a: f64, ell: usize) -> f64 {
    let l = ell as f64;
    let n = ell as i64;
    1.5f64.powf(a)
        * ((1.0 + third_pow(n)) * a * 2f64.powf(a + 1.0) / (l + 1.0).powf(a + 1.0)
            - a * a * (1.0 - a).powi(2) * 4f64.powf(2.0 * a + 1.0) / 2.0
                * (1.0 - third_pow(n - 1))
                * (2.0 / l).powf(4.0 * (a + 1.0)))
}

fn bar_b2l(a: f64, ell: usize) -> f64 {
    let l = ell as f64;
    let n = ell as i64;
    1.5f64.powf(1.0 + a)
        * ((1.0 + third_pow(n)) * (1.0 - a) * a * (1.0 + a) / 6.0
            * (3.0 / l).powf(2.0 * (2.0 + a))
            + (1.0 - a).powi(2) * a * a * (1.0 + a).powi(2) / 216.0
                * (1.0 - third_pow(n - 3))
                * (6.0 / l).powf(4.0 * (2.0 + a))
            - a * (1.0 + a).powi(2) / 2.0
                * (1.0 / 3.0 + third_pow(n - 1))
                * (3.0 / l).powf(2.0 + a))
}

fn bar_b2r(a: f64, ell: usize) -> f64 {
    let l = ell as f64;
    let n = ell as i64;
    1.5f64.powf(1.0 + a)
        * ((1.0 + third_pow(n)) * a * (a + 1.0) * 3f64.powf(a + 2.0)
            / (2.0 * (l + 1.0).powf(a + 2.0))
            + (1.0 - third_pow(n - 3)) * a * a * (1.0 + a).powi(2)
                * 3f64.powf(2.0 * (2.0 + a))
                / (24.0 * (1.0 + (2.0 + a) * l))
            - (1.0 - a) * a * (1.0 + a).powi(2) / 6.0
                * (1.0 / 3.0 + third_pow(n - 1))
                * (3.0 / (l - 1.0)).powf(2.0 * (2.0 + a)))
}

/// Σ_{k≥ℓ} |ϖ_{1,k}^{(β)}| for β ∈ (0,1) ∪ (1,2), ℓ ≥ 2.
///
/// The weights sum to zero and keep one sign from k = 2 on (negative for
/// β < 1, positive for β > 1), so the infinite tail equals the negated
/// finite head: ∓Σ_{k<ℓ} ϖ_{1,k}. No truncation error.
pub(crate) fn first_order_abs_tail(beta: f64, ell: usize) -> f64 {
    let head: f64 = first_order_coeffs(beta, ell - 1).iter().sum();
    if beta < 1.0 {
        head
    } else {
        -head
    }
}

/// Evaluates one bound family at (α, ℓ).
pub fn evaluate_bounds(family: BoundFamily, alpha: f64, ell: usize) -> Result<BoundCheckRecord> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha {
            alpha,
            reason: "bounds are stated for 0 < alpha < 1",
        });
    }
    if ell < family.min_index() {
        return Err(Error::InvalidParameter(format!(
            "{family} requires ell >= {}, got {ell}",
            family.min_index()
        )));
    }
    let a = alpha;
    let l = ell as f64;
    let (lower, observed, upper) = match family {
        BoundFamily::FirstOrderExpPointwise => (
            tilde_b1l(a, l),
            first_order_coeffs(a, ell)[ell].abs(),
            b1r(a, l),
        ),
        BoundFamily::FirstOrderExpTail => (tilde_s1l(a, l), first_order_abs_tail(a, ell), s1r(a, l)),
        BoundFamily::FirstOrderPointwise => (b1l(a, l), first_order_coeffs(a, ell)[ell].abs(), b1r(a, l)),
        BoundFamily::FirstOrderTail => (s1l(a, l), first_order_abs_tail(a, ell), s1r(a, l)),
        BoundFamily::ShiftedPointwise => (
            bar_b1l(a, l),
            first_order_coeffs(1.0 + a, ell)[ell].abs(),
            bar_b1r(a, l),
        ),
        BoundFamily::ShiftedTail => (
            bar_s1l(a, l),
            first_order_abs_tail(1.0 + a, ell),
            bar_s1r(a, l),
        ),
        BoundFamily::SecondOrderPointwise => (
            b2l(a, ell),
            expand_generating_function(2, a, ell)?.values()[ell].abs(),
            b2r(a, ell),
        ),
        BoundFamily::SecondOrderShifted => (
            bar_b2l(a, ell),
            expand_generating_function(2, 1.0 + a, ell)?.values()[ell].abs(),
            bar_b2r(a, ell),
        ),
    };
    Ok(BoundCheckRecord {
        family,
        alpha,
        ell,
        lower,
        observed,
        upper,
        holds: lower < observed && observed < upper,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOrdering {
    /// The plain bound is the smaller one, so the tilde bound is tighter.
    PlainBelowTilde,
    /// The plain bound is larger (tighter) or equal.
    PlainAtOrAboveTilde,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundComparison {
    pub alpha: f64,
    pub ell: usize,
    pub b1l: f64,
    pub tilde_b1l: f64,
    pub pointwise: BoundOrdering,
    pub s1l: f64,
    pub tilde_s1l: f64,
    pub tail: BoundOrdering,
}

fn ordering(plain: f64, tilde: f64) -> BoundOrdering {
    if plain < tilde {
        BoundOrdering::PlainBelowTilde
    } else {
        BoundOrdering::PlainAtOrAboveTilde
    }
}

/// Orders B₁ᴸ against tilde-B₁ᴸ and S₁ᴸ against tilde-S₁ᴸ.
pub fn compare_lower_bounds(alpha: f64, ell: usize) -> Result<LowerBoundComparison> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha {
            alpha,
            reason: "bounds are stated for 0 < alpha < 1",
        });
    }
    if ell < 3 {
        return Err(Error::InvalidParameter(format!(
            "lower-bound comparison requires ell >= 3, got {ell}"
        )));
    }
    let l = ell as f64;
    let (b, tb) = (b1l(alpha, l), tilde_b1l(alpha, l));
    let (s, ts) = (s1l(alpha, l), tilde_s1l(alpha, l));
    Ok(LowerBoundComparison {
        alpha,
        ell,
        b1l: b,
        tilde_b1l: tb,
        pointwise: ordering(b, tb),
        s1l: s,
        tilde_s1l: ts,
        tail: ordering(s, ts),
    })
}

/// α at which B₁ᴸ(α, ℓ) = tilde-B₁ᴸ(α, ℓ): 12 ln(ℓ/2)/(2π² − 15) − 1.
///
/// B₁ᴸ < tilde-B₁ᴸ exactly for α below this value; it is ≥ 1 from ℓ = 5 on.
pub fn crossover_alpha(ell: usize) -> f64 {
    12.0 * (ell as f64 / 2.0).ln() / (2.0 * PI * PI - 15.0) - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpEstimates {
    /// 1 − x < e^{−x} on (0, 1).
    pub upper_holds: bool,
    /// 1 − x > e^{−2x} on (0, 0.7968].
    pub lower_holds: bool,
}

/// Checks both exponential estimates on `n` interior grid points each.
pub fn exp_estimates_check(n: usize) -> ExpEstimates {
    let upper_holds = (1..=n).all(|k| {
        let x = k as f64 / (n + 1) as f64;
        1.0 - x < (-x).exp()
    });
    let lower_holds = (1..=n).all(|k| {
        let x = 0.7968 * k as f64 / n as f64;
        1.0 - x > (-2.0 * x).exp()
    });
    ExpEstimates {
        upper_holds,
        lower_holds,
    }
}
