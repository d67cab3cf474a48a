//! Error tables with observed convergence orders between consecutive rows.

/// One resolution of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    /// Time step, absent for purely spatial studies.
    pub tau: Option<f64>,
    pub error: f64,
    /// ln(e₁/e₂)/ln(τ₁/τ₂) against the previous row.
    pub temporal_order: Option<f64>,
    /// ln(e₁/e₂)/ln(h₁/h₂) against the previous row.
    pub spatial_order: Option<f64>,
}

/// What a report measured.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    /// `riesz-p2` … `riesz-p6` or `order2` / `order4` / `order6`.
    pub scheme: String,
    pub problem: String,
    pub alpha: f64,
    /// `midpoint-abs`, `max-abs-interior` or `max-abs-at-final-time`.
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub meta: ReportMeta,
    pub rows: Vec<ConvergenceRow>,
}

/// ln(e₁/e₂)/ln(s₁/s₂), or `None` when the steps coincide.
pub fn observed_order(e1: f64, e2: f64, s1: f64, s2: f64) -> Option<f64> {
    if s1 == s2 || !(s1 > 0.0 && s2 > 0.0) {
        return None;
    }
    Some((e1 / e2).ln() / (s1 / s2).ln())
}

impl ConvergenceReport {
    /// Builds the rows from (h, τ, error) triples in ladder order.
    pub fn from_errors(meta: ReportMeta, entries: &[(f64, Option<f64>, f64)]) -> Self {
        let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(entries.len());
        for (i, &(h, tau, error)) in entries.iter().enumerate() {
            let (temporal_order, spatial_order) = if i == 0 {
                (None, None)
            } else {
                let prev = entries[i - 1];
                let temporal = match (prev.1, tau) {
                    (Some(t1), Some(t2)) => observed_order(prev.2, error, t1, t2),
                    _ => None,
                };
                (temporal, observed_order(prev.2, error, prev.0, h))
            };
            rows.push(ConvergenceRow {
                h,
                tau,
                error,
                temporal_order,
                spatial_order,
            });
        }
        ConvergenceReport { meta, rows }
    }

    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error).collect()
    }
}
