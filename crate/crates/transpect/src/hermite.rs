//! Classical Hermite functions and the weighted orthonormal basis obtained by
//! pulling them back through the transmutation.
//!
//! The functions are evaluated with the normalized three-term recurrence
//! `h_{n+1}(y) = sqrt(2/(n+1)) y h_n(y) - sqrt(n/(n+1)) h_{n-1}(y)` seeded by
//! `h_0(y) = pi^(-1/4) exp(-y^2/2)`. Unlike the Rodrigues form this never
//! touches factorials, so it stays in range far beyond n = 85; it is accurate
//! for orders up to several hundred.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeometryPair, GeometrySpec};
use crate::grid::{weighted_inner, Grid, WeightedSignal};

/// Evaluate the classical Hermite function h_n at the given points.
pub fn hermite_function(n: usize, points: &[f64]) -> Vec<f64> {
    let mut prev = vec![0.0; points.len()];
    let mut cur: Vec<f64> = points
        .iter()
        .map(|&y| std::f64::consts::PI.powf(-0.25) * (-y * y / 2.0).exp())
        .collect();
    for m in 0..n {
        let a = (2.0 / (m as f64 + 1.0)).sqrt();
        let b = (m as f64 / (m as f64 + 1.0)).sqrt();
        let next: Vec<f64> = points
            .iter()
            .enumerate()
            .map(|(j, &y)| a * y * cur[j] - b * prev[j])
            .collect();
        prev = std::mem::take(&mut cur);
        cur = next;
    }
    cur
}

/// The weighted Hermite basis function: the pullback h_n(psi(t)) / omega(t),
/// sampled on the grid. The grid must have been built from the given pair.
pub fn weighted_hermite(g: &GeometryPair, n: usize, grid: &Grid) -> Result<WeightedSignal> {
    if grid.geometry() != g {
        return Err(Error::GridMismatch);
    }
    let hy = hermite_function(n, grid.y_nodes());
    let samples: Vec<Complex64> = hy
        .iter()
        .zip(grid.omega_nodes())
        .map(|(&h, &w)| Complex64::new(h / w, 0.0))
        .collect();
    Ok(WeightedSignal::from_samples_unchecked(grid, samples))
}

/// A truncated expansion of a weighted signal in the weighted Hermite basis.
#[derive(Debug, Clone)]
pub struct HermiteExpansion {
    coefficients: Vec<Complex64>,
    geometry: GeometrySpec,
    grid: Grid,
}

impl HermiteExpansion {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn geometry(&self) -> &GeometrySpec {
        &self.geometry
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn modes(&self) -> usize {
        self.coefficients.len()
    }
}

/// JSON form of an expansion: the geometry descriptor plus re/im pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub geometry: GeometrySpec,
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&HermiteExpansion> for ExpansionRecord {
    fn from(e: &HermiteExpansion) -> Self {
        ExpansionRecord {
            geometry: e.geometry.clone(),
            coeffs: e.coefficients.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

/// Expand a signal in the weighted Hermite basis: c_n = <f, H_n> under the
/// weighted quadrature, for n < modes. The mode count is capped at N/2 so
/// that the highest basis function stays resolved on the grid.
pub fn expand(f: &WeightedSignal, modes: usize) -> Result<HermiteExpansion> {
    let max = f.grid().len() / 2;
    if modes == 0 || modes > max {
        return Err(Error::TooManyModes {
            requested: modes,
            max,
        });
    }
    let grid = f.grid().clone();
    let g = grid.geometry().clone();
    let mut coefficients = Vec::with_capacity(modes);
    for n in 0..modes {
        let basis = weighted_hermite(&g, n, &grid)?;
        coefficients.push(weighted_inner(f, &basis)?);
    }
    Ok(HermiteExpansion {
        coefficients,
        geometry: g.spec().clone(),
        grid,
    })
}

/// Sum the expansion back into a weighted signal.
pub fn reconstruct(e: &HermiteExpansion) -> WeightedSignal {
    let grid = &e.grid;
    let points = grid.y_nodes();
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
    // rolling recurrence over the basis, accumulating as we go
    let mut prev = vec![0.0; points.len()];
    let mut cur: Vec<f64> = points
        .iter()
        .map(|&y| std::f64::consts::PI.powf(-0.25) * (-y * y / 2.0).exp())
        .collect();
    for (n, c) in e.coefficients.iter().enumerate() {
        for (a, &h) in acc.iter_mut().zip(&cur) {
            *a += c * h;
        }
        let a = (2.0 / (n as f64 + 1.0)).sqrt();
        let b = (n as f64 / (n as f64 + 1.0)).sqrt();
        let next: Vec<f64> = points
            .iter()
            .enumerate()
            .map(|(j, &y)| a * y * cur[j] - b * prev[j])
            .collect();
        prev = std::mem::take(&mut cur);
        cur = next;
    }
    for (a, &w) in acc.iter_mut().zip(grid.omega_nodes()) {
        *a /= w;
    }
    WeightedSignal::from_samples_unchecked(grid, acc)
}
