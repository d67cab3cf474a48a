//! One function per subcommand. Each reads its own config section, runs the
//! independent cells on the worker pool and assembles the tables in declared
//! order.

use rayon::prelude::*;
use rayon::ThreadPool;

use rieszkit_core::analysis::{
    check_symbol_nonnegativity, evaluate_bounds, monotonicity_scan, BoundFamily,
    MonotoneDirection,
};
use rieszkit_core::closed_form::{closed_form_coeff, CLOSED_FORM_MAX_INDEX};
use rieszkit_core::coefficients::expand_generating_function;
use rieszkit_core::problem::builtin_problem;
use rieszkit_core::report::{convergence_table, convergence_text, fmt_f64, Table};
use rieszkit_core::riesz::{example1_convergence_with, Example1Metric};
use rieszkit_core::scheme::{convergence_study, solve, Scheme};
use rieszkit_core::stability::stability_scan;
use rieszkit_core::Error;

use crate::config::Section;
use crate::error::{CliError, CliResult};

/// What a subcommand hands back for writing.
#[derive(Debug)]
pub struct Output {
    pub csv: Table,
    pub text: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn plain(csv: Table) -> Self {
        let text = short_text(&csv);
        Output {
            csv,
            text,
            warnings: Vec::new(),
        }
    }
}

/// Short numbers as written, everything else with 7 significant digits.
fn short_number(v: f64) -> String {
    let plain = format!("{v}");
    if plain.len() <= 8 {
        plain
    } else {
        format!("{v:.6e}")
    }
}

fn short_text(t: &Table) -> String {
    let mut short = Table::new(&t.header.iter().map(String::as_str).collect::<Vec<_>>());
    for row in &t.rows {
        short.push(
            row.iter()
                .map(|c| {
                    if c.contains('e') {
                        c.parse::<f64>().map(short_number).unwrap_or(c.clone())
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        );
    }
    short.to_text()
}

fn run_cells<T, R, F>(pool: &ThreadPool, cells: &[T], f: F) -> CliResult<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> rieszkit_core::Result<R> + Sync,
{
    let results: Vec<rieszkit_core::Result<R>> =
        pool.install(|| cells.par_iter().map(&f).collect());
    results
        .into_iter()
        .collect::<rieszkit_core::Result<Vec<R>>>()
        .map_err(CliError::from)
}

fn grid<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (*x, *y))).collect()
}

fn usage(s: &Section, key: &str, msg: impl Into<String>) -> CliError {
    CliError::Config(s.value_error(key, msg))
}

fn alphas_in(s: &Section, key: &str, lo: f64, hi: f64, exclude_one: bool) -> CliResult<Vec<f64>> {
    let alphas = s.f64_list(key)?;
    for &a in &alphas {
        if !(a > lo && a < hi) {
            return Err(usage(s, key, format!("alpha = {a} must lie in ({lo}, {hi})")));
        }
        if exclude_one && a == 1.0 {
            return Err(usage(s, key, "alpha = 1 is excluded"));
        }
    }
    Ok(alphas)
}

fn orders_in(s: &Section, key: &str, lo: usize, hi: usize) -> CliResult<Vec<usize>> {
    let orders = s.usize_list(key)?;
    for &p in &orders {
        if !(lo..=hi).contains(&p) {
            return Err(usage(s, key, format!("order {p} must lie in {lo}..={hi}")));
        }
    }
    Ok(orders)
}

fn schemes(s: &Section, key: &str) -> CliResult<Vec<Scheme>> {
    if !s.has(key) {
        return Ok(vec![Scheme::Order2]);
    }
    s.list(key)?
        .into_iter()
        .map(|name| {
            name.parse::<Scheme>()
                .map_err(|_| usage(s, key, format!("unknown scheme `{name}`")))
        })
        .collect()
}

fn bool_value(s: &Section, key: &str, default: bool) -> CliResult<bool> {
    match s.str_or(key, if default { "true" } else { "false" })? {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(usage(s, key, format!("`{other}` is not true or false"))),
    }
}

/// `[coeffs]`: the weights ϖ_{p,ℓ} for ℓ = start..=length.
pub fn coeffs(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["orders", "alphas", "length", "start", "closed_form"])?;
    let orders = orders_in(s, "orders", 1, 6)?;
    let alphas = alphas_in(s, "alphas", 0.0, 2.0, false)?;
    let length = s.usize("length")?;
    let start = s.usize_or("start", 0)?;
    if start > length {
        return Err(usage(s, "start", format!("start {start} exceeds length {length}")));
    }
    let with_cf = bool_value(s, "closed_form", false)?;
    if with_cf {
        if length > CLOSED_FORM_MAX_INDEX {
            return Err(usage(
                s,
                "length",
                format!("closed_form = true needs length <= {CLOSED_FORM_MAX_INDEX}"),
            ));
        }
        if orders.contains(&1) {
            return Err(usage(s, "orders", "closed_form = true needs orders in 2..=6"));
        }
    }

    let cells = grid(&orders, &alphas);
    let tables = run_cells(pool, &cells, |&(p, a)| {
        let series = expand_generating_function(p, a, length)?;
        let cf = if with_cf {
            (start..=length)
                .map(|l| closed_form_coeff(p, a, l))
                .collect::<rieszkit_core::Result<Vec<f64>>>()?
        } else {
            Vec::new()
        };
        Ok((series, cf))
    })?;

    let mut header = vec!["order", "alpha", "ell", "value"];
    if with_cf {
        header.extend(["closed_form", "abs_difference"]);
    }
    let mut t = Table::new(&header);
    for ((p, a), (series, cf)) in cells.iter().zip(&tables) {
        for ell in start..=length {
            let v = series.values()[ell];
            let mut row = vec![p.to_string(), fmt_f64(*a), ell.to_string(), fmt_f64(v)];
            if with_cf {
                let c = cf[ell - start];
                row.push(fmt_f64(c));
                row.push(fmt_f64((c - v).abs()));
            }
            t.push(row);
        }
    }
    Ok(Output::plain(t))
}

/// `[symbol]`: minimum of Re W_p(e^{iθ})^α over the θ grid.
pub fn symbol(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["orders", "alphas", "grid_size"])?;
    let orders = orders_in(s, "orders", 1, 6)?;
    let alphas = alphas_in(s, "alphas", 0.0, 2.0, false)?;
    let n = s.usize_or("grid_size", 4096)?;
    if n < 1024 {
        return Err(usage(s, "grid_size", "grid_size must be at least 1024"));
    }
    let cells = grid(&orders, &alphas);
    let checks = run_cells(pool, &cells, |&(p, a)| check_symbol_nonnegativity(p, a, n))?;
    let mut t = Table::new(&["order", "alpha", "grid_size", "min_theta", "min_value", "nonnegative"]);
    for ((p, a), c) in cells.iter().zip(&checks) {
        t.push(vec![
            p.to_string(),
            fmt_f64(*a),
            n.to_string(),
            fmt_f64(c.min.theta),
            fmt_f64(c.min.value),
            c.holds.to_string(),
        ]);
    }
    Ok(Output::plain(t))
}

/// `[bounds]`: lower < observed < upper for each family, α and ℓ.
pub fn bounds(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["families", "alphas", "ell_max"])?;
    let families: Vec<BoundFamily> = if s.has("families") {
        s.list("families")?
            .into_iter()
            .map(|f| {
                f.parse()
                    .map_err(|_| usage(s, "families", format!("unknown bound family `{f}`")))
            })
            .collect::<CliResult<_>>()?
    } else {
        BoundFamily::ALL.to_vec()
    };
    let alphas = alphas_in(s, "alphas", 0.0, 1.0, false)?;
    let ell_max = s.usize("ell_max")?;
    if ell_max < 4 {
        return Err(usage(s, "ell_max", "ell_max must be at least 4"));
    }
    let cells = grid(&families, &alphas);
    let records = run_cells(pool, &cells, |&(f, a)| {
        (f.min_index()..=ell_max)
            .map(|l| evaluate_bounds(f, a, l))
            .collect::<rieszkit_core::Result<Vec<_>>>()
    })?;
    let mut t = Table::new(&["family", "alpha", "ell", "lower", "observed", "upper", "holds"]);
    for r in records.iter().flatten() {
        t.push(vec![
            r.family.tag().into(),
            fmt_f64(r.alpha),
            r.ell.to_string(),
            fmt_f64(r.lower),
            fmt_f64(r.observed),
            fmt_f64(r.upper),
            r.holds.to_string(),
        ]);
    }
    Ok(Output::plain(t))
}

/// `[monotonicity]`: start of the monotone tail of ϖ_{p,ℓ} below L.
pub fn monotonicity(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["orders", "alphas", "length"])?;
    let orders = orders_in(s, "orders", 2, 6)?;
    let alphas = alphas_in(s, "alphas", 0.0, 2.0, true)?;
    let length = s.usize_or("length", 2000)?;
    if length < 200 {
        return Err(usage(s, "length", "length must be at least 200"));
    }
    let cells = grid(&orders, &alphas);
    let tails = run_cells(pool, &cells, |&(p, a)| match monotonicity_scan(p, a, length) {
        Ok(tail) => Ok(Some(tail)),
        Err(Error::NoMonotoneTail(_)) => Ok(None),
        Err(e) => Err(e),
    })?;
    let mut t = Table::new(&["order", "alpha", "direction", "start", "length"]);
    for ((p, a), tail) in cells.iter().zip(&tails) {
        let direction = if *a < 1.0 {
            MonotoneDirection::Nondecreasing
        } else {
            MonotoneDirection::Nonincreasing
        };
        t.push(vec![
            p.to_string(),
            fmt_f64(*a),
            match direction {
                MonotoneDirection::Nondecreasing => "nondecreasing".into(),
                MonotoneDirection::Nonincreasing => "nonincreasing".into(),
            },
            tail.map(|t| t.start.to_string()).unwrap_or_default(),
            length.to_string(),
        ]);
    }
    Ok(Output::plain(t))
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// `[riesz]`: errors of the order-p operator on x^p(1 − x)^p over an h list.
pub fn riesz(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["orders", "alphas", "steps", "metric"])?;
    let orders = orders_in(s, "orders", 1, 6)?;
    let alphas = alphas_in(s, "alphas", 0.0, 2.0, true)?;
    let steps = s.f64_list("steps")?;
    if !strictly_decreasing(&steps) {
        return Err(usage(s, "steps", "steps must be strictly decreasing"));
    }
    let metric = match s.str_or("metric", "midpoint")? {
        "midpoint" => Example1Metric::Midpoint,
        "max-interior" => Example1Metric::MaxInterior,
        other => {
            return Err(usage(
                s,
                "metric",
                format!("unknown metric `{other}`; expected midpoint or max-interior"),
            ))
        }
    };
    let cells = grid(&orders, &alphas);
    let reports = run_cells(pool, &cells, |&(p, a)| {
        example1_convergence_with(p, a, &steps, metric)
    })?;
    Ok(Output {
        csv: convergence_table(&reports),
        text: convergence_text(&reports),
        warnings: Vec::new(),
    })
}

fn pde_alpha(s: &Section, a: f64, key: &str) -> CliResult<()> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(usage(s, key, format!("alpha = {a} must lie in (0, 1)")))
    }
}

fn problem_name<'a>(s: &'a Section) -> CliResult<&'a str> {
    let name = s.str_or("problem", "example2")?;
    match name {
        "example2" | "example3" => Ok(name),
        other => Err(usage(
            s,
            "problem",
            format!("unknown problem `{other}`; expected example2 or example3"),
        )),
    }
}

fn order4_warning(scheme: Scheme, alpha: f64) -> Option<String> {
    (scheme == Scheme::Order4 && alpha > rieszkit_core::scheme::ORDER4_ALPHA_LIMIT).then(|| {
        format!(
            "order4 at alpha = {alpha} is above {} where stability is not guaranteed",
            rieszkit_core::scheme::ORDER4_ALPHA_LIMIT
        )
    })
}

/// `[solve]`: one space-time solution, written in long format.
pub fn solve_cmd(s: &Section, _pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["scheme", "problem", "alpha", "cells", "steps", "every"])?;
    let scheme = *schemes(s, "scheme")?
        .first()
        .ok_or_else(|| usage(s, "scheme", "no scheme given"))?;
    if s.has("scheme") && s.list("scheme")?.len() > 1 {
        return Err(usage(s, "scheme", "solve takes a single scheme"));
    }
    let problem = problem_name(s)?;
    let alpha = s.f64("alpha")?;
    pde_alpha(s, alpha, "alpha")?;
    let m = s.usize("cells")?;
    if m < scheme.min_cells() {
        return Err(usage(
            s,
            "cells",
            format!("{scheme} needs at least {} cells", scheme.min_cells()),
        ));
    }
    let n = s.usize("steps")?;
    if n == 0 {
        return Err(usage(s, "steps", "steps must be positive"));
    }
    let every = s.usize_or("every", 1)?;
    if every == 0 {
        return Err(usage(s, "every", "every must be positive"));
    }
    let spec = builtin_problem(problem, alpha)?;
    let sol = solve(scheme, &spec, m, n)?;

    let nodes = sol.nodes();
    let mut snapshots: Vec<usize> = (0..=n).step_by(every).collect();
    if snapshots.last() != Some(&n) {
        snapshots.push(n);
    }
    let mut t = Table::new(&["k", "t", "j", "x", "u", "exact", "abs_error"]);
    let mut summary = Table::new(&["k", "t", "max_abs_u", "max_abs_error"]);
    for &k in &snapshots {
        let time = k as f64 * sol.tau;
        let mut umax: f64 = 0.0;
        let mut emax: Option<f64> = None;
        for (j, (&x, &u)) in nodes.iter().zip(sol.row(k)).enumerate() {
            let exact = spec.exact.as_ref().map(|ex| ex(x, time));
            let err = exact.map(|e| (u - e).abs());
            umax = umax.max(u.abs());
            if let Some(e) = err {
                emax = Some(emax.unwrap_or(0.0).max(e));
            }
            t.push(vec![
                k.to_string(),
                fmt_f64(time),
                j.to_string(),
                fmt_f64(x),
                fmt_f64(u),
                exact.map(fmt_f64).unwrap_or_default(),
                err.map(fmt_f64).unwrap_or_default(),
            ]);
        }
        summary.push(vec![
            k.to_string(),
            format!("{time:.6}"),
            format!("{umax:.6e}"),
            emax.map(|e| format!("{e:.6e}")).unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut warnings = sol.warnings.clone();
    warnings.extend(order4_warning(scheme, alpha));
    warnings.dedup();
    Ok(Output {
        csv: t,
        text: summary.to_text(),
        warnings,
    })
}

/// `[convergence]`: errors at T over an (M, N) ladder for each scheme and α.
pub fn convergence(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&["schemes", "problem", "alphas", "ladder"])?;
    let schemes = schemes(s, "schemes")?;
    let problem = problem_name(s)?;
    let alphas = s.f64_list("alphas")?;
    for &a in &alphas {
        pde_alpha(s, a, "alphas")?;
    }
    let ladder = s.ladder("ladder")?;
    if !ladder.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1) {
        return Err(usage(
            s,
            "ladder",
            "ladder must be strictly refining in both M and N",
        ));
    }
    for sc in &schemes {
        if let Some(&(m, _)) = ladder.iter().find(|(m, _)| *m < sc.min_cells()) {
            return Err(usage(
                s,
                "ladder",
                format!("{sc} needs at least {} cells, got M = {m}", sc.min_cells()),
            ));
        }
    }
    if ladder.iter().any(|&(_, n)| n == 0) {
        return Err(usage(s, "ladder", "N must be positive"));
    }
    let cells = grid(&schemes, &alphas);
    let reports = run_cells(pool, &cells, |&(sc, a)| {
        let spec = builtin_problem(problem, a)?;
        convergence_study(sc, &spec, &ladder)
    })?;
    let warnings = cells
        .iter()
        .filter_map(|&(sc, a)| order4_warning(sc, a))
        .collect();
    Ok(Output {
        csv: convergence_table(&reports),
        text: convergence_text(&reports),
        warnings,
    })
}

/// `[stability]`: max |ξ(θ)| over the (scheme, α, h, τ) grid.
pub fn stability(s: &Section, pool: &ThreadPool) -> CliResult<Output> {
    s.expect_keys(&[
        "schemes", "alphas", "h", "tau", "d1", "d2", "d_alpha", "grid_size",
    ])?;
    let schemes = schemes(s, "schemes")?;
    let alphas = s.f64_list("alphas")?;
    for &a in &alphas {
        pde_alpha(s, a, "alphas")?;
    }
    let hs = s.f64_list("h")?;
    let taus = s.f64_list("tau")?;
    if let Some(h) = hs.iter().find(|h| **h <= 0.0) {
        return Err(usage(s, "h", format!("h = {h} must be positive")));
    }
    if let Some(tau) = taus.iter().find(|t| **t <= 0.0) {
        return Err(usage(s, "tau", format!("tau = {tau} must be positive")));
    }
    let d1 = s.f64_or("d1", 1.0)?;
    let d2 = s.f64_or("d2", 1.0)?;
    if d2 <= 0.0 {
        return Err(usage(s, "d2", "d2 must be positive"));
    }
    let d_alpha = s.f64_or("d_alpha", 1.0)?;
    if d_alpha < 0.0 {
        return Err(usage(s, "d_alpha", "d_alpha must be nonnegative"));
    }
    let n = s.usize_or("grid_size", 4096)?;
    if n < 1024 {
        return Err(usage(s, "grid_size", "grid_size must be at least 1024"));
    }
    let mut cells = Vec::new();
    for &sc in &schemes {
        for &a in &alphas {
            for &h in &hs {
                for &tau in &taus {
                    cells.push((sc, a, h, tau));
                }
            }
        }
    }
    let reports = run_cells(pool, &cells, |&(sc, a, h, tau)| {
        stability_scan(sc, a, h, tau, d1, d2, d_alpha, n)
    })?;
    let mut t = Table::new(&[
        "scheme",
        "alpha",
        "h",
        "tau",
        "max_abs_xi",
        "argmax_theta",
        "min_real_group",
        "stencil_max_abs_xi",
        "pass",
    ]);
    for r in &reports {
        t.push(vec![
            r.scheme.name().into(),
            fmt_f64(r.alpha),
            fmt_f64(r.h),
            fmt_f64(r.tau),
            fmt_f64(r.max_abs),
            fmt_f64(r.argmax_theta),
            fmt_f64(r.min_real_group),
            fmt_f64(r.stencil_max_abs),
            r.pass.to_string(),
        ]);
    }
    let warnings = schemes
        .iter()
        .flat_map(|&sc| alphas.iter().filter_map(move |&a| order4_warning(sc, a)))
        .collect();
    let mut out = Output::plain(t);
    out.warnings = warnings;
    Ok(out)
}
