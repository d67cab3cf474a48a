//! Start of the monotone tail of ϖ_{p,ℓ}.

use crate::coefficients::expand_generating_function;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneDirection {
    /// α < 1: ϖ_ℓ ≤ ϖ_{ℓ+1}.
    Nondecreasing,
    /// α > 1: ϖ_ℓ ≥ ϖ_{ℓ+1}.
    Nonincreasing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneTail {
    pub order: usize,
    pub alpha: f64,
    pub direction: MonotoneDirection,
    /// Smallest ℓ* with the comparison holding for every ℓ* ≤ ℓ < L.
    pub start: usize,
    pub length: usize,
}

/// Finds the smallest ℓ* from which the tail of ϖ_{p,ℓ} is monotone up to L.
pub fn monotonicity_scan(p: usize, alpha: f64, len: usize) -> Result<MonotoneTail> {
    if !(2..=6).contains(&p) {
        return Err(Error::UnsupportedOrder {
            order: p,
            expected: "2..=6",
        });
    }
    if alpha == 1.0 {
        return Err(Error::InvalidAlpha {
            alpha,
            reason: "the tail is identically zero at alpha = 1",
        });
    }
    if len < 200 {
        return Err(Error::InvalidParameter(format!(
            "scan length {len} below 200"
        )));
    }
    let table = expand_generating_function(p, alpha, len)?;
    let w = table.values();
    let direction = if alpha < 1.0 {
        MonotoneDirection::Nondecreasing
    } else {
        MonotoneDirection::Nonincreasing
    };
    let ok = |l: usize| match direction {
        MonotoneDirection::Nondecreasing => w[l] <= w[l + 1],
        MonotoneDirection::Nonincreasing => w[l] >= w[l + 1],
    };
    let mut start = len;
    while start > 0 && ok(start - 1) {
        start -= 1;
    }
    if start == len {
        return Err(Error::NoMonotoneTail(len));
    }
    Ok(MonotoneTail {
        order: p,
        alpha,
        direction,
        start,
        length: len,
    })
}
