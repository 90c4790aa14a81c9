//! Matched grids and weighted quadrature.
//!
//! A [`Grid`] couples three node sets: uniform transmuted nodes y_j on
//! [-L, L), their pullback t_j = psi^-1(y_j) in physical coordinates, and the
//! FFT frequencies xi_k = pi k / L for k = -N/2 .. N/2 - 1 (stored in
//! increasing order). Quadrature lives in y-space: the substitution y = psi(t)
//! turns every weighted t-integral against the measure omega^2 psi' dt into a
//! plain rectangle-rule sum on the uniform y nodes, which is spectrally
//! accurate for rapidly decaying integrands and makes the transmutation an
//! exact isometry at the discrete level.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::geometry::GeometryPair;

struct GridInner {
    geometry: GeometryPair,
    half_width: f64,
    n: usize,
    y: Vec<f64>,
    t: Vec<f64>,
    xi: Vec<f64>,
    omega_t: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

/// Immutable matched grid. Cheap to clone (shared behind an `Arc`) and safe
/// to use from multiple threads; the cached FFT plans are immutable.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("geometry", self.geometry())
            .field("half_width", &self.half_width())
            .field("n", &self.len())
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Grid {
    /// Build the matched grid for a geometry: y_j = -L + j (2L/N),
    /// t_j = psi^-1(y_j), xi_k = pi k / L.
    ///
    /// N must be a power of two with N >= 8 so that the FFT convention and
    /// the frequency layout below are well defined.
    pub fn build(geometry: &GeometryPair, half_width: f64, n: usize) -> Result<Grid> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidGridSize(format!(
                "half-width must be positive and finite, got {half_width}"
            )));
        }
        if !n.is_power_of_two() || n < 8 {
            return Err(Error::InvalidGridSize(format!(
                "node count must be a power of two >= 8, got {n}"
            )));
        }
        let dy = 2.0 * half_width / n as f64;
        let y: Vec<f64> = (0..n).map(|j| j as f64 * dy - half_width).collect();
        let mut t = Vec::with_capacity(n);
        for &yj in &y {
            let tj = geometry.psi_inv(yj);
            if !tj.is_finite() || !geometry.contains(tj) {
                return Err(Error::DomainOverflow(format!(
                    "psi^-1({yj}) = {tj} is not a usable physical node"
                )));
            }
            t.push(tj);
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DomainOverflow(
                "pulled-back nodes are not strictly increasing".into(),
            ));
        }
        let dxi = std::f64::consts::PI / half_width;
        let half = n as i64 / 2;
        let xi: Vec<f64> = (0..n).map(|m| (m as i64 - half) as f64 * dxi).collect();
        let omega_t: Vec<f64> = t.iter().map(|&tj| geometry.omega(tj)).collect();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Grid {
            inner: Arc::new(GridInner {
                geometry: geometry.clone(),
                half_width,
                n,
                y,
                t,
                xi,
                omega_t,
                fwd,
                inv,
            }),
        })
    }

    pub fn geometry(&self) -> &GeometryPair {
        &self.inner.geometry
    }

    pub fn len(&self) -> usize {
        self.inner.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> f64 {
        self.inner.half_width
    }

    /// Spacing of the uniform y nodes, 2L/N.
    pub fn dy(&self) -> f64 {
        2.0 * self.inner.half_width / self.inner.n as f64
    }

    /// Spacing of the frequency nodes, pi/L.
    pub fn dxi(&self) -> f64 {
        std::f64::consts::PI / self.inner.half_width
    }

    pub fn y_nodes(&self) -> &[f64] {
        &self.inner.y
    }

    pub fn t_nodes(&self) -> &[f64] {
        &self.inner.t
    }

    /// Frequencies in increasing order, xi_k = pi k / L for k in [-N/2, N/2).
    pub fn xi_nodes(&self) -> &[f64] {
        &self.inner.xi
    }

    /// Cached omega(t_j).
    pub fn omega_nodes(&self) -> &[f64] {
        &self.inner.omega_t
    }

    /// Two grids match when they share geometry, half-width and node count.
    pub fn same_as(&self, other: &Grid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.geometry == other.inner.geometry
                && self.inner.half_width == other.inner.half_width
                && self.inner.n == other.inner.n)
    }

    pub(crate) fn fwd_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.fwd
    }

    pub(crate) fn inv_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inner.inv
    }

    /// Index of the physical node closest to t.
    pub fn nearest_index(&self, t: f64) -> usize {
        let nodes = self.t_nodes();
        let pos = nodes.partition_point(|&x| x < t);
        if pos == 0 {
            0
        } else if pos >= nodes.len() {
            nodes.len() - 1
        } else if (nodes[pos] - t).abs() < (t - nodes[pos - 1]).abs() {
            pos
        } else {
            pos - 1
        }
    }

    /// Local spacing of the physical nodes around index j.
    pub fn local_t_spacing(&self, j: usize) -> f64 {
        let t = self.t_nodes();
        let n = t.len();
        if j + 1 < n {
            if j > 0 {
                (t[j + 1] - t[j]).max(t[j] - t[j - 1])
            } else {
                t[1] - t[0]
            }
        } else {
            t[n - 1] - t[n - 2]
        }
    }

    /// A C-infinity plateau window in y: identically 1 for |y| <= flat_frac L,
    /// identically 0 for |y| >= support_frac L, with a smooth bump transition
    /// between. Used to confine signals that would otherwise wrap at the
    /// periodic boundary; the library never applies it implicitly.
    pub fn plateau_window(&self, flat_frac: f64, support_frac: f64) -> Vec<f64> {
        assert!(
            0.0 < flat_frac && flat_frac < support_frac && support_frac <= 1.0,
            "window fractions must satisfy 0 < flat < support <= 1"
        );
        let l = self.half_width();
        let r0 = flat_frac * l;
        let r1 = support_frac * l;
        self.y_nodes()
            .iter()
            .map(|&y| smooth_step((r1 - y.abs()) / (r1 - r0)))
            .collect()
    }
}

/// Smooth monotone step: 0 for x <= 0, 1 for x >= 1, C-infinity in between.
fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

/// Complex samples of a function on the physical nodes t_j of a grid.
/// Elements of the weighted L^2 space in discrete form.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSignal {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl WeightedSignal {
    /// Wrap raw samples; the length must equal the grid size and every value
    /// must be finite.
    pub fn from_samples(grid: &Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidGridSize(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        if let Some(i) = samples
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self {
            grid: grid.clone(),
            samples,
        })
    }

    pub(crate) fn from_samples_unchecked(grid: &Grid, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len());
        Self {
            grid: grid.clone(),
            samples,
        }
    }

    /// Sample a function of the physical coordinate t.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.t_nodes().iter().map(|&t| f(t)).collect();
        Self::from_samples_unchecked(grid, samples)
    }

    /// Sample a real-valued function of t.
    pub fn from_real_fn(grid: &Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |t| Complex64::new(f(t), 0.0))
    }

    /// Pull a transmuted profile v(y) back through the geometry:
    /// samples v(y_j) / omega(t_j). This is the inverse transmutation of a
    /// closed-form profile.
    pub fn from_y_profile(grid: &Grid, v: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid
            .y_nodes()
            .iter()
            .zip(grid.omega_nodes())
            .map(|(&y, &w)| v(y) / w)
            .collect();
        Self::from_samples_unchecked(grid, samples)
    }

    pub fn zero(grid: &Grid) -> Self {
        Self::from_samples_unchecked(grid, vec![Complex64::new(0.0, 0.0); grid.len()])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Pointwise sum. The grids must match.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_samples_unchecked(&self.grid, samples))
    }

    /// Pointwise difference. The grids must match.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_samples_unchecked(&self.grid, samples))
    }

    /// Scale every sample by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let samples = self.samples.iter().map(|z| z * factor).collect();
        Self::from_samples_unchecked(&self.grid, samples)
    }

    /// Multiply samplewise by a real window (for example a plateau window).
    pub fn windowed(&self, window: &[f64]) -> Self {
        assert_eq!(window.len(), self.samples.len());
        let samples = self
            .samples
            .iter()
            .zip(window)
            .map(|(z, &w)| z * w)
            .collect();
        Self::from_samples_unchecked(&self.grid, samples)
    }
}

/// Weighted inner product <f, h> = dy * sum_j omega(t_j)^2 f_j conj(h_j).
///
/// This is the rectangle rule in y for the integral of f conj(h) against the
/// weighted measure omega^2 psi' dt.
pub fn weighted_inner(f: &WeightedSignal, h: &WeightedSignal) -> Result<Complex64> {
    if !f.grid().same_as(h.grid()) {
        return Err(Error::GridMismatch);
    }
    let w = f.grid().omega_nodes();
    let mut acc = Complex64::new(0.0, 0.0);
    for ((a, b), &wj) in f.samples().iter().zip(h.samples()).zip(w) {
        acc += a * b.conj() * (wj * wj);
    }
    Ok(acc * f.grid().dy())
}

/// Weighted L^2 norm, sqrt of the inner product with itself.
pub fn weighted_norm(f: &WeightedSignal) -> f64 {
    let w = f.grid().omega_nodes();
    let mut acc = 0.0;
    for (a, &wj) in f.samples().iter().zip(w) {
        acc += a.norm_sqr() * (wj * wj);
    }
    (acc * f.grid().dy()).sqrt()
}
