//! Numerical checks of the coefficient properties: symbol nonnegativity,
//! monotone tails and the bound sandwiches.

pub mod bounds;
pub mod monotonicity;
pub mod symbol;

pub use bounds::{
    compare_lower_bounds, crossover_alpha, evaluate_bounds, exp_estimates_check, BoundCheckRecord,
    BoundFamily, BoundOrdering, ExpEstimates, LowerBoundComparison,
};
pub use monotonicity::{monotonicity_scan, MonotoneDirection, MonotoneTail};
pub use symbol::{
    alpha_threshold_p4, check_symbol_nonnegativity, symbol_complex, symbol_value,
    NonnegativityCheck, SymbolSample, NONNEGATIVITY_TOL,
};
