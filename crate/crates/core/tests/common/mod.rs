//! Scalar reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rieszkit_core::coefficients::expand_generating_function;
use rieszkit_core::problem::ProblemSpec;
use rieszkit_core::scheme::{assemble, Scheme};

/// Dense Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Mass and right-hand-side operator coefficients straight from the
/// printed parameter lists: (offset, a or c, b or −e).
pub fn printed_rows(scheme: Scheme, d1: f64, d2: f64, h: f64) -> Vec<(isize, f64, f64)> {
    match scheme {
        Scheme::Order2 => vec![
            (-1, 0.0, d2 / (h * h) + d1 / (2.0 * h)),
            (0, 1.0, -2.0 * d2 / (h * h)),
            (1, 0.0, d2 / (h * h) - d1 / (2.0 * h)),
        ],
        Scheme::Order4 => {
            let a1 = 1.0 / 12.0 + d1 * h / (24.0 * d2);
            let a3 = 1.0 / 12.0 - d1 * h / (24.0 * d2);
            let b1 = d2 / (h * h) + d1 * d1 / (12.0 * d2) + d1 / (2.0 * h);
            let b2 = -2.0 * (d2 / (h * h) + d1 * d1 / (12.0 * d2));
            let b3 = d2 / (h * h) + d1 * d1 / (12.0 * d2) - d1 / (2.0 * h);
            vec![(-1, a1, b1), (0, 5.0 / 6.0, b2), (1, a3, b3)]
        }
        Scheme::Order6 => {
            let h2 = h * h;
            let c1 = -(1.0 + d1 * h / d2) / 90.0;
            let c2 = (4.0 + 2.0 * d1 * h / d2) / 90.0;
            let c4 = (4.0 - 2.0 * d1 * h / d2) / 90.0;
            let c5 = -(1.0 - d1 * h / d2) / 90.0;
            let e1 = d2 / (12.0 * h2) + d1 / (12.0 * h) + d1 * d1 / (45.0 * d2);
            let e2 = -(4.0 * d2 / (3.0 * h2) + 2.0 * d1 / (3.0 * h) + 4.0 * d1 * d1 / (45.0 * d2));
            let e3 = 5.0 * d2 / (2.0 * h2) + 2.0 * d1 * d1 / (15.0 * d2);
            let e4 = -(4.0 * d2 / (3.0 * h2) - 2.0 * d1 / (3.0 * h) + 4.0 * d1 * d1 / (45.0 * d2));
            let e5 = d2 / (12.0 * h2) - d1 / (12.0 * h) + d1 * d1 / (45.0 * d2);
            vec![
                (-2, c1, -e1),
                (-1, c2, -e2),
                (0, 14.0 / 15.0, -e3),
                (1, c4, -e4),
                (2, c5, -e5),
            ]
        }
    }
}

/// One Crank–Nicolson step written as scalar loops: for every row j,
/// (2/τ)Σ a(u¹ − u⁰) = Σ b(u¹ + u⁰) − νΣ a·R(u¹ + u⁰) + 2Σ a·s, where R at
/// node r is Σ_ℓ ϖ_ℓ (u_{r−ℓ} + u_{r+ℓ}) over the zero-extended state.
pub fn naive_step(scheme: Scheme, spec: &ProblemSpec, m: usize, tau: f64, u: &[f64], s: &[f64]) -> Vec<f64> {
    let h = (spec.b - spec.a) / m as f64;
    let nu = spec.d_alpha / (2.0 * (PI * spec.alpha / 2.0).cos() * h.powf(spec.alpha));
    let w = expand_generating_function(scheme.weight_order(), spec.alpha, m + 4).unwrap();
    let w = w.values();
    let rows = printed_rows(scheme, spec.d1, spec.d2, h);
    let at = |v: &[f64], i: isize| if i >= 1 && i < m as isize { v[i as usize] } else { 0.0 };
    let src = |i: isize| if i >= 0 && i <= m as isize { s[i as usize] } else { 0.0 };
    let riesz = |v: &[f64], r: isize| {
        let mut acc = 0.0;
        for (l, wl) in w.iter().enumerate() {
            acc += wl * (at(v, r - l as isize) + at(v, r + l as isize));
        }
        acc
    };
    let n = m - 1;
    let mut a = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for j in 1..m {
        let ji = j as isize;
        for &(off, mass, op) in &rows {
            let r = ji + off;
            // explicit side
            rhs[j - 1] += (2.0 / tau) * mass * at(u, r) + op * at(u, r) - nu * mass * riesz(u, r)
                + 2.0 * mass * src(r);
            // implicit side, column by column via unit vectors
            for i in 1..m {
                let mut e = vec![0.0; m + 1];
                e[i] = 1.0;
                a[j - 1][i - 1] +=
                    (2.0 / tau) * mass * at(&e, r) - op * at(&e, r) + nu * mass * riesz(&e, r);
            }
        }
    }
    let x = gauss_solve(a, rhs);
    let mut out = vec![0.0; m + 1];
    out[1..m].copy_from_slice(&x);
    out
}

pub fn sample(spec: &ProblemSpec, m: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    let ex = spec.exact.as_ref().unwrap();
    let xs: Vec<f64> = (0..=m).map(|j| spec.a + (spec.b - spec.a) * j as f64 / m as f64).collect();
    let u = xs.iter().map(|&x| ex(x, t)).collect();
    let s = xs.iter().map(|&x| (spec.source)(x, t)).collect();
    (u, s)
}

/// max |A u(t+τ) − B u(t) − 2C s(t+τ/2)| over rows with `skip` rows left
/// out at each end.
pub fn manufactured_residual(scheme: Scheme, spec: &ProblemSpec, m: usize, tau: f64, skip: usize) -> f64 {
    let mats = assemble(scheme, spec, m, tau).unwrap();
    let t = 0.5 - tau;
    let (u0, _) = sample(spec, m, t);
    let (u1, _) = sample(spec, m, t + tau);
    let (_, s) = sample(spec, m, t + tau / 2.0);
    let r = mats.residual(&u0, &u1, &s).unwrap();
    r[skip..r.len() - skip].iter().fold(0.0, |a, v| a.max(v.abs()))
}

