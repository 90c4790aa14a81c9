//! The weighted Fourier transform: transmutation followed by the classical
//! Fourier transform.
//!
//! Convention: the unitary angular-frequency form
//! `g^(xi) = (2 pi)^(-1/2) integral g(y) exp(-i xi y) dy`, so Plancherel holds
//! with constant one and the Gaussian exp(-y^2/2) is a fixed point. On the
//! grid this becomes
//! `g^(xi_k) = (dy / sqrt(2 pi)) sum_j v_j exp(-i xi_k y_j)`,
//! evaluated with one FFT. Because the nodes start at y = -L rather than 0,
//! each output bin carries the offset phase exp(+i xi_k L); with xi_k = pi k/L
//! that phase is exactly (-1)^k, applied here without trigonometry.
//!
//! With this pairing of grids (dy * dxi = 2 pi / N) the discrete map is
//! unitary to rounding: the rectangle-rule norm in xi equals the
//! rectangle-rule norm in y bit-for-bit up to floating-point accumulation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, WeightedSignal};
use crate::transmutation::{inverse_transmute, transmute, EuclideanSignal};

/// Complex spectral samples on the sorted frequency nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl SpectralDensity {
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

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Forward transform in y: continuous-convention spectrum on the sorted
/// frequency nodes.
pub(crate) fn forward_y(grid: &Grid, v: &[Complex64]) -> Vec<Complex64> {
    let n = grid.len();
    debug_assert_eq!(v.len(), n);
    let mut buf = v.to_vec();
    grid.fwd_plan().process(&mut buf);
    let scale = grid.dy() / (2.0 * std::f64::consts::PI).sqrt();
    let half = n as i64 / 2;
    let mut out = Vec::with_capacity(n);
    for m in 0..n as i64 {
        let k = m - half;
        let bin = k.rem_euclid(n as i64) as usize;
        let sign = if k.rem_euclid(2) == 0 { scale } else { -scale };
        out.push(buf[bin] * sign);
    }
    out
}

/// Inverse of [`forward_y`].
pub(crate) fn inverse_y(grid: &Grid, spectrum: &[Complex64]) -> Vec<Complex64> {
    let n = grid.len();
    debug_assert_eq!(spectrum.len(), n);
    let half = n as i64 / 2;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n as i64 {
        let k = m - half;
        let bin = k.rem_euclid(n as i64) as usize;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        buf[bin] = spectrum[m as usize] * sign;
    }
    grid.inv_plan().process(&mut buf);
    let scale = grid.dxi() / (2.0 * std::f64::consts::PI).sqrt();
    buf.iter().map(|z| z * scale).collect()
}

/// Weighted Fourier transform of a signal: transmute, then transform in y.
pub fn wft(f: &WeightedSignal) -> SpectralDensity {
    let v = transmute(f);
    SpectralDensity::from_samples_unchecked(f.grid(), forward_y(f.grid(), v.samples()))
}

/// Inverse weighted Fourier transform: inverse transform in y, then pull the
/// profile back through the geometry.
pub fn iwft(spectrum: &SpectralDensity) -> WeightedSignal {
    let v = EuclideanSignal::from_samples_unchecked(
        spectrum.grid(),
        inverse_y(spectrum.grid(), spectrum.samples()),
    );
    inverse_transmute(&v)
}

/// Multiply a spectrum samplewise by a frequency symbol. Fails if the symbol
/// is not finite at some grid frequency.
pub fn apply_multiplier(
    spectrum: &SpectralDensity,
    symbol: impl Fn(f64) -> Complex64,
) -> Result<SpectralDensity> {
    let mut out = Vec::with_capacity(spectrum.samples().len());
    for (&xi, z) in spectrum.grid().xi_nodes().iter().zip(spectrum.samples()) {
        let s = symbol(xi);
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::SymbolSingular(xi));
        }
        out.push(z * s);
    }
    Ok(SpectralDensity::from_samples_unchecked(spectrum.grid(), out))
}

/// Rectangle-rule L^2 norm in frequency, sqrt(dxi sum |F_k|^2).
pub fn spectral_l2_norm(spectrum: &SpectralDensity) -> f64 {
    let sum: f64 = spectrum.samples().iter().map(|z| z.norm_sqr()).sum();
    (sum * spectrum.grid().dxi()).sqrt()
}

/// Spectral derivative of a y-space profile: multiply the spectrum by
/// (i xi)^m and transform back. Exposed for structural checks against the
/// weighted derivative.
pub fn spectral_y_derivative(v: &EuclideanSignal, m: u32) -> EuclideanSignal {
    let spec = forward_y(v.grid(), v.samples());
    let mult: Vec<Complex64> = v
        .grid()
        .xi_nodes()
        .iter()
        .zip(&spec)
        .map(|(&xi, z)| z * Complex64::new(0.0, xi).powu(m))
        .collect();
    EuclideanSignal::from_samples_unchecked(v.grid(), inverse_y(v.grid(), &mult))
}
