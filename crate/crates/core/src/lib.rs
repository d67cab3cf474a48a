//! Riesz fractional derivative approximations of orders 2 to 6, the
//! Crank–Nicolson schemes built on them, and numerical checks of the
//! coefficient properties those schemes rely on.

pub mod analysis;
pub mod closed_form;
pub mod coefficients;
pub mod convergence;
mod ddouble;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod problem;
pub mod report;
pub mod riesz;
pub mod scheme;
pub mod stability;

pub use error::{Error, Result};
