//! Uniform spatial grids and nodal samples on them.

use crate::error::{Error, Result};

/// x_j = a + j·h, j = 0..=M, h = (b − a)/M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    a: f64,
    b: f64,
    m: usize,
    h: f64,
}

impl UniformGrid {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::InvalidGrid(format!("need a < b, got [{a}, {b}]")));
        }
        if m < 2 {
            return Err(Error::InvalidGrid(format!("need M >= 2, got {m}")));
        }
        Ok(UniformGrid {
            a,
            b,
            m,
            h: (b - a) / m as f64,
        })
    }

    /// The unit interval split into M cells.
    pub fn unit(m: usize) -> Result<Self> {
        Self::new(0.0, 1.0, m)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn x(&self, j: usize) -> f64 {
        if j == self.m {
            self.b
        } else {
            self.a + j as f64 * self.h
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.m).map(|j| self.x(j)).collect()
    }
}

/// Values at the M + 1 nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.m() + 1 {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid with {} nodes",
                values.len(),
                grid.m() + 1
            )));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        GridFunction { grid, values }
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        GridFunction {
            grid,
            values: vec![0.0; grid.m() + 1],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}
