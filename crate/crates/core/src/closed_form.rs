//! Explicit nested-sum expressions for ϖ_{p,ℓ}, p = 2..6, written in terms
//! of the first-order weights. These are an independent route to the same
//! numbers produced by [`crate::coefficients::expand_generating_function`].
//!
//! The sums alternate in sign through (−1)^{ℓ₂} and their terms grow
//! geometrically, so for p ≥ 4 a double-precision evaluation loses most of
//! its digits by ℓ ≈ 60. All accumulation is done in double-double
//! arithmetic and only the final value is rounded to `f64`.

use crate::coefficients::check_alpha_open_0_2;
use crate::ddouble::Dd;
use crate::error::{Error, Result};

/// Largest ℓ accepted; the factorial ratios overflow beyond this.
pub const CLOSED_FORM_MAX_INDEX: usize = 170;

fn dd(x: f64) -> Dd {
    Dd::new(x)
}

fn ratio(n: f64, d: f64) -> Dd {
    dd(n) / dd(d)
}

fn factorials(n: usize) -> Vec<Dd> {
    let mut out = vec![Dd::ONE; n + 1];
    for i in 1..=n {
        out[i] = out[i - 1] * (i as f64);
    }
    out
}

fn powers(base: Dd, n: usize) -> Vec<Dd> {
    let mut out = vec![Dd::ONE; n + 1];
    for i in 1..=n {
        out[i] = out[i - 1] * base;
    }
    out
}

fn first_order_dd(alpha: f64, n: usize) -> Vec<Dd> {
    let mut out = vec![Dd::ONE; n + 1];
    for j in 1..=n {
        out[j] = out[j - 1] * (Dd::ONE - dd(alpha + 1.0) / (j as f64));
    }
    out
}

fn signed(k: usize, x: Dd) -> Dd {
    if k % 2 == 0 {
        x
    } else {
        -x
    }
}

/// ϖ_{p,ℓ}^{(α)} from the nested multinomial sums.
///
/// Floor-bracket upper limits are integer floors and the `max(0, ·)` lower
/// limits are kept as written, so the loops visit exactly the index sets of
/// the printed formulas.
pub fn closed_form_coeff(p: usize, alpha: f64, ell: usize) -> Result<f64> {
    if !(2..=6).contains(&p) {
        return Err(Error::UnsupportedOrder {
            order: p,
            expected: "2..=6",
        });
    }
    check_alpha_open_0_2(alpha)?;
    if ell > CLOSED_FORM_MAX_INDEX {
        return Err(Error::InvalidParameter(format!(
            "closed-form index {ell} exceeds {CLOSED_FORM_MAX_INDEX}"
        )));
    }
    let w1 = first_order_dd(alpha, ell);
    let fa = factorials(ell);
    let l = ell;

    let (lead, s) = match p {
        2 => {
            let r = powers(ratio(1.0, 3.0), l);
            let mut s = Dd::ZERO;
            for l1 in 0..=l {
                s += r[l1] * w1[l1] * w1[l - l1];
            }
            (1.5, s)
        }
        3 => {
            let r1 = powers(ratio(7.0, 11.0), l);
            let r2 = powers(ratio(2.0, 7.0), l);
            let mut s = Dd::ZERO;
            for l1 in 0..=l {
                for l2 in 0..=l1 / 2 {
                    let t = r1[l1 - l2] * r2[l2] * fa[l1 - l2] / (fa[l2] * fa[l1 - 2 * l2]);
                    s += signed(l2, t * w1[l - l1] * w1[l1 - l2]);
                }
            }
            (11.0 / 6.0, s)
        }
        4 => {
            let r1 = powers(ratio(23.0, 25.0), l);
            let r2 = powers(ratio(13.0, 23.0), l);
            let r3 = powers(ratio(3.0, 13.0), l);
            let mut s = Dd::ZERO;
            for l1 in 0..=l {
                for l2 in 0..=(2 * l1) / 3 {
                    let mut inner = Dd::ZERO;
                    for l3 in (2 * l2).saturating_sub(l1)..=l2 / 2 {
                        inner += r2[l2 - l3] * r3[l3]
                            / (fa[l3] * fa[l2 - 2 * l3] * fa[l1 + l3 - 2 * l2]);
                    }
                    let t = r1[l1 - l2] * fa[l1 - l2] * inner;
                    s += signed(l2, t * w1[l - l1] * w1[l1 - l2]);
                }
            }
            (25.0 / 12.0, s)
        }
        5 => {
            let r1 = powers(ratio(163.0, 137.0), l);
            let r2 = powers(ratio(137.0, 163.0), l);
            let r3 = powers(ratio(63.0, 137.0), l);
            let r4 = powers(ratio(4.0, 21.0), l);
            let mut s = Dd::ZERO;
            for l1 in 0..=l {
                for l2 in 0..=(3 * l1) / 4 {
                    let mut inner = Dd::ZERO;
                    for l3 in (2 * l2).saturating_sub(l1)..=(2 * l2) / 3 {
                        for l4 in (2 * l3).saturating_sub(l2)..=l3 / 2 {
                            inner += r2[l2 - l3] * r3[l3 - l4] * r4[l4]
                                / (fa[l4]
                                    * fa[l3 - 2 * l4]
                                    * fa[l1 + l3 - 2 * l2]
                                    * fa[l2 + l4 - 2 * l3]);
                        }
                    }
                    let t = r1[l1 - l2] * fa[l1 - l2] * inner;
                    s += signed(l2, t * w1[l - l1] * w1[l1 - l2]);
                }
            }
            (137.0 / 60.0, s)
        }
        _ => {
            let r1 = powers(ratio(213.0, 147.0), l);
            let r2 = powers(ratio(237.0, 213.0), l);
            let r3 = powers(ratio(163.0, 237.0), l);
            let r4 = powers(ratio(62.0, 163.0), l);
            let r5 = powers(ratio(5.0, 31.0), l);
            let mut s = Dd::ZERO;
            for l1 in 0..=l {
                for l2 in 0..=(4 * l1) / 5 {
                    let mut inner = Dd::ZERO;
                    for l3 in (2 * l2).saturating_sub(l1)..=(3 * l2) / 4 {
                        for l4 in (2 * l3).saturating_sub(l2)..=(2 * l3) / 3 {
                            for l5 in (2 * l4).saturating_sub(l3)..=l4 / 2 {
                                inner += r2[l2 - l3] * r3[l3 - l4] * r4[l4 - l5] * r5[l5]
                                    / (fa[l5]
                                        * fa[l4 - 2 * l5]
                                        * fa[l1 + l3 - 2 * l2]
                                        * fa[l2 + l4 - 2 * l3]
                                        * fa[l3 + l5 - 2 * l4]);
                            }
                        }
                    }
                    let t = r1[l1 - l2] * fa[l1 - l2] * inner;
                    s += signed(l2, t * w1[l - l1] * w1[l1 - l2]);
                }
            }
            (147.0 / 60.0, s)
        }
    };
    let lead: f64 = lead;
    Ok((s * lead.powf(alpha)).to_f64())
}
