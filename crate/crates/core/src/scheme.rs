//! Crank–Nicolson schemes of spatial order 2, 4 (compact) and 6 (compact).
//!
//! Each scheme is written as
//!   [(2/τ)C + E + νC·R] u^{k+1} = [(2/τ)C − E − νC·R] u^k + 2C s^{k+1/2},
//! where C is the mass stencil (identity for order 2), E the discrete
//! −d₂∂²ₓ + d₁∂ₓ operator, R the Riesz weight sums applied to the
//! zero-extended grid function and ν = d_α/(2cos(πα/2)h^α). Grid values
//! outside [0, M] are zero.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::coefficients::expand_generating_function;
use crate::convergence::{ConvergenceReport, ReportMeta};
use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::problem::ProblemSpec;
use crate::riesz::riesz_prefactor;

/// α above which the order-4 symbol is not covered by the sufficient
/// nonnegativity condition.
pub const ORDER4_ALPHA_LIMIT: f64 = 0.8439;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Order2,
    Order4,
    Order6,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Order2, Scheme::Order4, Scheme::Order6];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Order2 => "order2",
            Scheme::Order4 => "order4",
            Scheme::Order6 => "order6",
        }
    }

    /// Order p of the Riesz weights the scheme embeds.
    pub fn weight_order(self) -> usize {
        match self {
            Scheme::Order2 => 2,
            Scheme::Order4 => 4,
            Scheme::Order6 => 6,
        }
    }

    pub fn min_cells(self) -> usize {
        match self {
            Scheme::Order6 => 6,
            _ => 4,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// A finite-difference stencil as (offset, weight) pairs.
pub type Stencil = Vec<(isize, f64)>;

/// Mass stencil C and operator stencil E of a scheme.
///
/// E is minus the printed b₁..b₃ for order 4 and equals e₁..e₅ for order 6.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeStencils {
    pub mass: Stencil,
    pub operator: Stencil,
}

pub fn scheme_stencils(scheme: Scheme, d1: f64, d2: f64, h: f64) -> Result<SchemeStencils> {
    if !(d2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "d2 = {d2} must be positive"
        )));
    }
    let h2 = h * h;
    Ok(match scheme {
        Scheme::Order2 => SchemeStencils {
            mass: vec![(0, 1.0)],
            operator: vec![
                (-1, -(d2 / h2 + d1 / (2.0 * h))),
                (0, 2.0 * d2 / h2),
                (1, -(d2 / h2 - d1 / (2.0 * h))),
            ],
        },
        Scheme::Order4 => {
            let p = printed_parameters(scheme, d1, d2, h)?;
            let v = |name: &str| p.iter().find(|(n, _)| *n == name).unwrap().1;
            SchemeStencils {
                mass: vec![(-1, v("a1")), (0, v("a2")), (1, v("a3"))],
                operator: vec![(-1, -v("b1")), (0, -v("b2")), (1, -v("b3"))],
            }
        }
        Scheme::Order6 => {
            let p = printed_parameters(scheme, d1, d2, h)?;
            let v = |name: &str| p.iter().find(|(n, _)| *n == name).unwrap().1;
            SchemeStencils {
                mass: vec![
                    (-2, v("c1")),
                    (-1, v("c2")),
                    (0, v("c3")),
                    (1, v("c4")),
                    (2, v("c5")),
                ],
                operator: vec![
                    (-2, v("e1")),
                    (-1, v("e2")),
                    (0, v("e3")),
                    (1, v("e4")),
                    (2, v("e5")),
                ],
            }
        }
    })
}

/// The scheme parameters under their printed names (a₁..a₃, b₁..b₃ or
/// c₁..c₅, e₁..e₅). Order 2 has none.
pub fn printed_parameters(
    scheme: Scheme,
    d1: f64,
    d2: f64,
    h: f64,
) -> Result<Vec<(&'static str, f64)>> {
    if !(d2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "d2 = {d2} must be positive"
        )));
    }
    let h2 = h * h;
    Ok(match scheme {
        Scheme::Order2 => Vec::new(),
        Scheme::Order4 => {
            let k = d2 / h2 + d1 * d1 / (12.0 * d2);
            vec![
                ("a1", 1.0 / 12.0 + d1 * h / (24.0 * d2)),
                ("a2", 5.0 / 6.0),
                ("a3", 1.0 / 12.0 - d1 * h / (24.0 * d2)),
                ("b1", k + d1 / (2.0 * h)),
                ("b2", -2.0 * k),
                ("b3", k - d1 / (2.0 * h)),
            ]
        }
        Scheme::Order6 => {
            let r = d1 * h / d2;
            let q = d1 * d1 / d2;
            vec![
                ("c1", -(1.0 + r) / 90.0),
                ("c2", (4.0 + 2.0 * r) / 90.0),
                ("c3", 14.0 / 15.0),
                ("c4", (4.0 - 2.0 * r) / 90.0),
                ("c5", -(1.0 - r) / 90.0),
                ("e1", d2 / (12.0 * h2) + d1 / (12.0 * h) + q / 45.0),
                ("e2", -(4.0 * d2 / (3.0 * h2) + 2.0 * d1 / (3.0 * h) + 4.0 * q / 45.0)),
                ("e3", 5.0 * d2 / (2.0 * h2) + 2.0 * q / 15.0),
                ("e4", -(4.0 * d2 / (3.0 * h2) - 2.0 * d1 / (3.0 * h) + 4.0 * q / 45.0)),
                ("e5", d2 / (12.0 * h2) - d1 / (12.0 * h) + q / 45.0),
            ]
        }
    })
}

/// Assembled and factored system of one (scheme, problem, M, τ).
#[derive(Clone)]
pub struct SchemeMatrices {
    scheme: Scheme,
    grid: UniformGrid,
    tau: f64,
    alpha: f64,
    nu: f64,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    source_stencil: Stencil,
    lu: LU<f64, Dyn, Dyn>,
    warnings: Vec<String>,
}

impl fmt::Debug for SchemeMatrices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchemeMatrices")
            .field("scheme", &self.scheme)
            .field("m", &self.grid.m())
            .field("tau", &self.tau)
            .field("nu", &self.nu)
            .finish()
    }
}

impl SchemeMatrices {
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Implicit-side matrix on the M − 1 interior unknowns.
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    /// Explicit-side matrix on the M − 1 interior unknowns.
    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    /// Weights applied to s^{k+1/2} at nodes j + offset (2·C).
    pub fn source_stencil(&self) -> &Stencil {
        &self.source_stencil
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn check_len(&self, what: &str, v: &[f64]) -> Result<()> {
        if v.len() != self.grid.m() + 1 {
            return Err(Error::GridMismatch(format!(
                "{what} has {} values, grid has {} nodes",
                v.len(),
                self.grid.m() + 1
            )));
        }
        Ok(())
    }

    /// B·u^k + 2C·s on the interior, from full nodal vectors.
    fn rhs(&self, u_now: &[f64], s_half: &[f64]) -> DVector<f64> {
        let m = self.grid.m();
        let interior = DVector::from_column_slice(&u_now[1..m]);
        let mut rhs = &self.b * interior;
        for j in 1..m {
            for &(off, w) in &self.source_stencil {
                let k = j as isize + off;
                if (0..=m as isize).contains(&k) {
                    rhs[j - 1] += w * s_half[k as usize];
                }
            }
        }
        rhs
    }

    /// Advances one step: solves A·u^{k+1} = B·u^k + 2C·s^{k+1/2}.
    ///
    /// `u_now` and `s_half` hold all M + 1 nodes; the returned state has
    /// zero boundary values.
    pub fn step(&self, u_now: &[f64], s_half: &[f64]) -> Result<Vec<f64>> {
        self.check_len("state", u_now)?;
        self.check_len("source", s_half)?;
        let m = self.grid.m();
        let rhs = self.rhs(u_now, s_half);
        let sol = self.lu.solve(&rhs).ok_or(Error::SingularSystem {
            scheme: self.scheme.name(),
            alpha: self.alpha,
            m,
            tau: self.tau,
        })?;
        let mut out = vec![0.0; m + 1];
        for j in 1..m {
            if !sol[j - 1].is_finite() {
                return Err(Error::NonFinite(format!(
                    "{} step produced {} at node {j}",
                    self.scheme, sol[j - 1]
                )));
            }
            out[j] = sol[j - 1];
        }
        Ok(out)
    }

    /// A·u^{k+1} − B·u^k − 2C·s^{k+1/2} on the interior.
    pub fn residual(&self, u_now: &[f64], u_next: &[f64], s_half: &[f64]) -> Result<Vec<f64>> {
        self.check_len("state", u_now)?;
        self.check_len("next state", u_next)?;
        self.check_len("source", s_half)?;
        let m = self.grid.m();
        let next = DVector::from_column_slice(&u_next[1..m]);
        let r = &self.a * next - self.rhs(u_now, s_half);
        Ok(r.iter().copied().collect())
    }
}

/// Builds A and B for the scheme and factors A.
pub fn assemble(scheme: Scheme, spec: &ProblemSpec, m: usize, tau: f64) -> Result<SchemeMatrices> {
    spec.validate()?;
    if m < scheme.min_cells() {
        return Err(Error::InvalidGrid(format!(
            "{scheme} needs M >= {}, got {m}",
            scheme.min_cells()
        )));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time step tau = {tau} must be positive"
        )));
    }
    let grid = UniformGrid::new(spec.a, spec.b, m)?;
    let h = grid.h();
    let alpha = spec.alpha;
    let nu = -spec.d_alpha * riesz_prefactor(alpha, h);
    assert!(
        nu >= 0.0 && (spec.d_alpha == 0.0 || nu > 0.0),
        "nu must be positive for 0 < alpha < 1 and d_alpha > 0"
    );

    let mut warnings = Vec::new();
    if scheme == Scheme::Order4 && alpha > ORDER4_ALPHA_LIMIT {
        let msg = format!(
            "order4 scheme with alpha = {alpha} > {ORDER4_ALPHA_LIMIT}: outside the proven stability range"
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }

    let st = scheme_stencils(scheme, spec.d1, spec.d2, h)?;
    let w = expand_generating_function(scheme.weight_order(), alpha, m + 2)?;
    let w = w.values();
    let n = m - 1;
    let inside = |k: isize| (1..m as isize).contains(&k);

    let mut c = DMatrix::<f64>::zeros(n, n);
    let mut e = DMatrix::<f64>::zeros(n, n);
    let mut cr = DMatrix::<f64>::zeros(n, n);
    for j in 1..m {
        let row = j - 1;
        let ji = j as isize;
        for &(off, v) in &st.mass {
            if inside(ji + off) {
                c[(row, (ji + off - 1) as usize)] += v;
            }
        }
        for &(off, v) in &st.operator {
            if inside(ji + off) {
                e[(row, (ji + off - 1) as usize)] += v;
            }
        }
        // Riesz sums at node r = j + off of the zero-extended grid function:
        // u_i enters with ϖ_{|r−i|}, twice when i = r.
        for &(off, v) in &st.mass {
            let r = ji + off;
            for i in 1..m {
                let d = (r - i as isize).unsigned_abs();
                let wd = if d == 0 { 2.0 * w[0] } else { w[d] };
                cr[(row, i - 1)] += v * wd;
            }
        }
    }
    let implicit_part = &e + &cr * nu;
    let a = &c * (2.0 / tau) + &implicit_part;
    let b = &c * (2.0 / tau) - &implicit_part;
    let lu = a.clone().lu();
    if !lu.is_invertible() {
        return Err(Error::SingularSystem {
            scheme: scheme.name(),
            alpha,
            m,
            tau,
        });
    }
    let source_stencil = st.mass.iter().map(|&(o, v)| (o, 2.0 * v)).collect();
    Ok(SchemeMatrices {
        scheme,
        grid,
        tau,
        alpha,
        nu,
        a,
        b,
        source_stencil,
        lu,
        warnings,
    })
}

/// Full time history u_j^k on the space-time mesh.
#[derive(Debug, Clone)]
pub struct SolutionGrid {
    pub spec: ProblemSpec,
    pub scheme: Scheme,
    pub m: usize,
    pub n: usize,
    pub h: f64,
    pub tau: f64,
    values: Vec<f64>,
    /// max_j |u_j^N − u(x_j, T)| when the exact solution is known.
    pub final_error: Option<f64>,
    pub warnings: Vec<String>,
}

impl SolutionGrid {
    /// u^k at all M + 1 nodes.
    pub fn row(&self, k: usize) -> &[f64] {
        let w = self.m + 1;
        &self.values[k * w..(k + 1) * w]
    }

    pub fn final_row(&self) -> &[f64] {
        self.row(self.n)
    }

    pub fn nodes(&self) -> Vec<f64> {
        UniformGrid::new(self.spec.a, self.spec.b, self.m)
            .map(|g| g.nodes())
            .unwrap_or_default()
    }
}

fn sample_source(spec: &ProblemSpec, grid: &UniformGrid, t: f64) -> Vec<f64> {
    grid.nodes().into_iter().map(|x| (spec.source)(x, t)).collect()
}

/// Marches from the initial condition to T in N steps.
pub fn solve(scheme: Scheme, spec: &ProblemSpec, m: usize, n: usize) -> Result<SolutionGrid> {
    if n == 0 {
        return Err(Error::InvalidParameter("need N >= 1 time steps".into()));
    }
    let tau = spec.t_end / n as f64;
    let mats = assemble(scheme, spec, m, tau)?;
    let grid = *mats.grid();
    let mut u: Vec<f64> = grid.nodes().into_iter().map(|x| (spec.initial)(x)).collect();
    u[0] = 0.0;
    u[m] = 0.0;
    let mut values = Vec::with_capacity((n + 1) * (m + 1));
    values.extend_from_slice(&u);
    for k in 0..n {
        let t_half = (k as f64 + 0.5) * tau;
        let s = sample_source(spec, &grid, t_half);
        u = mats.step(&u, &s)?;
        values.extend_from_slice(&u);
    }
    let final_error = spec.exact.as_ref().map(|ex| {
        (1..m)
            .map(|j| (u[j] - ex(grid.x(j), spec.t_end)).abs())
            .fold(0.0, f64::max)
    });
    Ok(SolutionGrid {
        spec: spec.clone(),
        scheme,
        m,
        n,
        h: grid.h(),
        tau,
        values,
        final_error,
        warnings: mats.warnings().to_vec(),
    })
}

/// Errors at T over a ladder of (M, N) resolutions, with observed orders.
pub fn convergence_study(
    scheme: Scheme,
    spec: &ProblemSpec,
    ladder: &[(usize, usize)],
) -> Result<ConvergenceReport> {
    if ladder.is_empty() {
        return Err(Error::InvalidParameter("empty resolution ladder".into()));
    }
    if spec.exact.is_none() {
        return Err(Error::InvalidParameter(format!(
            "problem {} has no exact solution",
            spec.name
        )));
    }
    let mut entries = Vec::with_capacity(ladder.len());
    for &(m, n) in ladder {
        let sol = solve(scheme, spec, m, n)?;
        let err = sol.final_error.unwrap_or(f64::NAN);
        entries.push((sol.h, Some(sol.tau), err));
    }
    Ok(ConvergenceReport::from_errors(
        ReportMeta {
            scheme: scheme.name().into(),
            problem: spec.name.clone(),
            alpha: spec.alpha,
            norm: "max-abs-at-final-time".into(),
        },
        &entries,
    ))
}
