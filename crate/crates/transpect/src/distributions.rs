//! Mollified weighted Dirac deltas and the bilinear duality pairing.
//!
//! The weighted delta at tau is the standard delta scaled by the dilution
//! factor 1 / (omega(tau)^2 psi'(tau)): exactly the amplitude needed so the
//! pairing against the weighted measure samples test functions with unit
//! strength. It is represented here by a Gaussian mollifier of width eps,
//! never by a single-node spike; a one-node discrete delta would tie the
//! amplitude to the grid spacing and destroy the second-order convergence
//! in eps that the study below measures.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::jacobian_factor;
use crate::grid::{Grid, WeightedSignal};

/// Gaussian mollifier (2 pi eps^2)^(-1/2) exp(-(t - tau)^2 / (2 eps^2))
/// sampled on the physical nodes, without the dilution factor.
pub fn standard_mollifier(grid: &Grid, tau: f64, eps: f64) -> Result<WeightedSignal> {
    if !grid.geometry().contains(tau) {
        return Err(Error::OutOfDomain(tau));
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::UnresolvedMollifier { eps, min: 0.0 });
    }
    let amp = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * eps);
    Ok(WeightedSignal::from_real_fn(grid, |t| {
        let x = (t - tau) / eps;
        amp * (-x * x / 2.0).exp()
    }))
}

/// Mollified weighted delta: the standard mollifier scaled by the dilution
/// factor of the geometry at tau.
pub fn mollified_delta(grid: &Grid, tau: f64, eps: f64) -> Result<WeightedSignal> {
    let j = jacobian_factor(grid.geometry(), tau)?;
    Ok(standard_mollifier(grid, tau, eps)?.scaled(Complex64::new(j, 0.0)))
}

/// Bilinear duality pairing (no conjugation):
/// dy * sum_j omega(t_j)^2 d_j phi_j, the discrete weighted-measure integral.
/// The sesquilinear inner product lives in [`crate::grid::weighted_inner`].
pub fn pair(d: &WeightedSignal, phi: &WeightedSignal) -> Result<Complex64> {
    if !d.grid().same_as(phi.grid()) {
        return Err(Error::GridMismatch);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for ((a, b), &w) in d
        .samples()
        .iter()
        .zip(phi.samples())
        .zip(d.grid().omega_nodes())
    {
        acc += a * b * (w * w);
    }
    Ok(acc * d.grid().dy())
}

/// Smallest mollifier width the grid resolves near tau: four local node
/// spacings in physical coordinates.
pub fn min_resolvable_eps(grid: &Grid, tau: f64) -> f64 {
    4.0 * grid.local_t_spacing(grid.nearest_index(tau))
}

/// One row of a delta convergence study.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaStudyRow {
    pub eps: f64,
    pub abs_error: f64,
    /// Richardson estimate against the previous row; absent on the first row.
    pub est_order: Option<f64>,
}

/// Sampling-property convergence study: pair the mollified weighted delta at
/// tau against phi for each width and tabulate |pair - phi(tau)|.
///
/// phi is a closed-form test function; it is sampled onto the grid for the
/// pairing while phi(tau) is evaluated exactly. Widths must be strictly
/// decreasing and each must be resolvable on the grid.
pub fn delta_convergence_study(
    grid: &Grid,
    tau: f64,
    phi: impl Fn(f64) -> Complex64,
    eps_list: &[f64],
) -> Result<Vec<DeltaStudyRow>> {
    if eps_list.is_empty() {
        return Err(Error::UnresolvedMollifier {
            eps: f64::NAN,
            min: 0.0,
        });
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidGridSize(
            "mollifier widths must be strictly decreasing".into(),
        ));
    }
    let min_eps = min_resolvable_eps(grid, tau);
    if let Some(&bad) = eps_list.iter().find(|&&e| e < min_eps) {
        return Err(Error::UnresolvedMollifier {
            eps: bad,
            min: min_eps,
        });
    }
    let phi_signal = WeightedSignal::from_fn(grid, &phi);
    let reference = phi(tau);
    let mut rows: Vec<DeltaStudyRow> = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let delta = mollified_delta(grid, tau, eps)?;
        let sampled = pair(&delta, &phi_signal)?;
        let abs_error = (sampled - reference).norm();
        let est_order = rows.last().map(|prev: &DeltaStudyRow| {
            (prev.abs_error / abs_error).ln() / (prev.eps / eps).ln()
        });
        rows.push(DeltaStudyRow {
            eps,
            abs_error,
            est_order,
        });
    }
    Ok(rows)
}
