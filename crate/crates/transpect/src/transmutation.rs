//! The transmutation operator T, its inverse, the fundamental weighted
//! derivative and the Schwartz-type seminorms.
//!
//! T maps a weighted signal f(t) to the Euclidean profile
//! v(y) = omega(psi^-1(y)) f(psi^-1(y)). On a matched grid this is pointwise
//! exact: t_j = psi^-1(y_j) by construction, so no interpolation is ever
//! involved and the round trip costs only two multiplications per sample.
//!
//! The weighted derivative D f = (1 / (omega psi')) d/dt (omega f)
//! intertwines with d/dy under T, so powers of it are computed spectrally:
//! transmute, multiply the spectrum by (i xi)^m, transform back.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, WeightedSignal};
use crate::wft;

/// Complex samples on the uniform y nodes: an ordinary L^2(R) signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanSignal {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl EuclideanSignal {
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

    /// Sample a profile v(y) on the uniform nodes.
    pub fn from_fn(grid: &Grid, v: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.y_nodes().iter().map(|&y| v(y)).collect();
        Self::from_samples_unchecked(grid, samples)
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

/// Plain rectangle-rule L^2 norm on the y nodes, sqrt(dy sum |v_j|^2).
pub fn euclidean_norm(v: &EuclideanSignal) -> f64 {
    let sum: f64 = v.samples().iter().map(|z| z.norm_sqr()).sum();
    (sum * v.grid().dy()).sqrt()
}

/// Forward transmutation: v_j = omega(t_j) f_j.
pub fn transmute(f: &WeightedSignal) -> EuclideanSignal {
    let samples = f
        .samples()
        .iter()
        .zip(f.grid().omega_nodes())
        .map(|(z, &w)| z * w)
        .collect();
    EuclideanSignal::from_samples_unchecked(f.grid(), samples)
}

/// Inverse transmutation: f_j = v_j / omega(t_j). Well defined because the
/// weight is strictly positive.
pub fn inverse_transmute(v: &EuclideanSignal) -> WeightedSignal {
    let samples = v
        .samples()
        .iter()
        .zip(v.grid().omega_nodes())
        .map(|(z, &w)| z / w)
        .collect();
    WeightedSignal::from_samples_unchecked(v.grid(), samples)
}

/// m-th power of the fundamental weighted derivative, computed spectrally as
/// the (i xi)^m multiplier conjugated by the weighted Fourier transform.
///
/// The signal is assumed to decay before the grid boundary; nothing is
/// windowed implicitly, so a wrapping signal will show Gibbs artifacts.
pub fn weighted_derivative(f: &WeightedSignal, m: u32) -> WeightedSignal {
    let spectrum = wft::wft(f);
    let diff = wft::apply_multiplier(&spectrum, |xi| Complex64::new(0.0, xi).powu(m))
        .expect("power symbol is finite at every frequency");
    wft::iwft(&diff)
}

/// Seminorm rho_{k,m}(f) = max_j |y_j^k (D^m f)(t_j)|, the grid restriction
/// of sup_t |psi(t)^k D^m f(t)|. Note psi(t_j) = y_j exactly on a matched
/// grid. The grid max is a lower bound for the true sup.
pub fn seminorm(f: &WeightedSignal, k: u32, m: u32) -> f64 {
    let d = if m == 0 {
        f.clone()
    } else {
        weighted_derivative(f, m)
    };
    d.samples()
        .iter()
        .zip(f.grid().y_nodes())
        .map(|(z, &y)| y.powi(k as i32).abs() * z.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_geometry, GeometrySpec, WeightSpec};
    use crate::grid::weighted_norm;

    fn grid_for(spec: GeometrySpec, l: f64, n: usize) -> Grid {
        Grid::build(&make_geometry(&spec).unwrap(), l, n).unwrap()
    }

    fn gauss(t: f64) -> f64 {
        (-t * t / 2.0).exp()
    }

    #[test]
    fn identity_transmute_is_identity() {
        let grid = grid_for(GeometrySpec::identity(), 10.0, 64);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let v = transmute(&f);
        assert_eq!(v.samples(), f.samples());
    }

    #[test]
    fn constant_weight_scales_samples() {
        let spec = GeometrySpec::identity().with_weight(WeightSpec::Constant { c: 2.0 });
        let grid = grid_for(spec, 10.0, 64);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let v = transmute(&f);
        for (a, b) in v.samples().iter().zip(f.samples()) {
            assert_eq!(*a, b * 2.0);
        }
    }

    #[test]
    fn hadamard_transmute_reads_off_the_profile() {
        let grid = grid_for(GeometrySpec::hadamard(0.0), 8.0, 64);
        // f(t) = g(ln t) with g a Gaussian
        let f = WeightedSignal::from_real_fn(&grid, |t| gauss(t.ln()));
        let v = transmute(&f);
        for (z, &y) in v.samples().iter().zip(grid.y_nodes()) {
            assert!((z.re - gauss(y)).abs() <= 1e-14);
        }
    }

    #[test]
    fn round_trip_is_exact_to_rounding() {
        let spec = GeometrySpec::hadamard(0.0).with_weight(WeightSpec::Poly { p: 1.0 });
        let grid = grid_for(spec, 8.0, 256);
        let f = WeightedSignal::from_real_fn(&grid, |t| gauss(t.ln()));
        let back = inverse_transmute(&transmute(&f));
        for (a, b) in back.samples().iter().zip(f.samples()) {
            assert!((a - b).norm() <= 1e-15 * b.norm().max(1e-300));
        }
    }

    #[test]
    fn pullback_of_hermite_ground_state() {
        // under a poly weight the pullback divides by omega pointwise
        let spec = GeometrySpec::identity().with_weight(WeightSpec::Poly { p: 1.0 });
        let grid = grid_for(spec, 10.0, 128);
        let h0 = |y: f64| std::f64::consts::PI.powf(-0.25) * gauss(y);
        let v = EuclideanSignal::from_fn(&grid, |y| Complex64::new(h0(y), 0.0));
        let f = inverse_transmute(&v);
        for ((z, &t), &y) in f.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
            let expected = h0(y) / (1.0 + t * t).sqrt();
            assert!((z.re - expected).abs() <= 1e-14);
        }
    }

    #[test]
    fn discrete_unitarity() {
        let specs = [
            GeometrySpec::identity(),
            GeometrySpec::affine(2.0, 0.0).with_weight(WeightSpec::Poly { p: 1.0 }),
            GeometrySpec::hadamard(0.0).with_weight(WeightSpec::Constant { c: 2.0 }),
        ];
        for spec in specs {
            let grid = grid_for(spec, 20.0, 2048);
            let f = WeightedSignal::from_y_profile(&grid, |y| Complex64::new(gauss(y), 0.0));
            let lhs = weighted_norm(&f);
            let rhs = euclidean_norm(&transmute(&f));
            assert!((lhs - rhs).abs() <= 1e-13 * rhs);
        }
    }

    #[test]
    fn derivative_order_zero_returns_signal() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 1024);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let d = weighted_derivative(&f, 0);
        for (a, b) in d.samples().iter().zip(f.samples()) {
            assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn classical_derivative_of_windowed_sine() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let window = grid.plateau_window(0.55, 0.95);
        let f = WeightedSignal::from_real_fn(&grid, |t| t.sin()).windowed(&window);
        let d = weighted_derivative(&f, 1);
        // compare on the flat part of the window only
        let mut err: f64 = 0.0;
        for ((z, &t), &y) in d.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
            if y.abs() <= 10.0 {
                err = err.max((z.re - t.cos()).abs().max(z.im.abs()));
            }
        }
        assert!(err <= 1e-8, "max error {err}");
    }

    #[test]
    fn classical_derivatives_of_gaussian_and_cosine() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let d = weighted_derivative(&f, 1);
        let mut err: f64 = 0.0;
        for (z, &t) in d.samples().iter().zip(grid.t_nodes()) {
            err = err.max((z.re - (-t) * gauss(t)).abs());
        }
        assert!(err <= 1e-8, "gaussian derivative error {err}");

        let window = grid.plateau_window(0.55, 0.95);
        let f = WeightedSignal::from_real_fn(&grid, |t| t.cos()).windowed(&window);
        let d = weighted_derivative(&f, 1);
        let mut err: f64 = 0.0;
        for ((z, &t), &y) in d.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
            if y.abs() <= 10.0 {
                err = err.max((z.re + t.sin()).abs());
            }
        }
        assert!(err <= 1e-8, "cosine derivative error {err}");
    }

    #[test]
    fn hadamard_derivative_is_t_d_dt() {
        // f(t) = exp(-(ln t)^2 / 2) transports to a plain Gaussian profile,
        // and D f = t f'(t) = -ln(t) f(t) in the logarithmic regime.
        let grid = grid_for(GeometrySpec::hadamard(0.0), 20.0, 4096);
        let f = WeightedSignal::from_real_fn(&grid, |t| gauss(t.ln()));
        let d = weighted_derivative(&f, 1);
        let third = grid.half_width() / 3.0;
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for ((z, &t), &y) in d.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
            if y.abs() <= third {
                let exact = -t.ln() * gauss(t.ln());
                err = err.max((z.re - exact).abs().max(z.im.abs()));
                scale = scale.max(exact.abs());
            }
        }
        assert!(err <= 1e-6 * scale, "relative error {}", err / scale);
    }

    #[test]
    fn hadamard_derivative_of_windowed_ramp() {
        // f(t) = t is e^y in the transmuted coordinate; windowed so it decays
        // before the periodic boundary, the weighted derivative is
        // t f'(t) = t on the interior third
        let grid = grid_for(GeometrySpec::hadamard(0.0), 20.0, 4096);
        let window = grid.plateau_window(0.4, 0.7);
        let f = WeightedSignal::from_real_fn(&grid, |t| t).windowed(&window);
        let d = weighted_derivative(&f, 1);
        let third = grid.half_width() / 3.0;
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for ((z, &t), &y) in d.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
            if y.abs() <= third {
                err = err.max((z.re - t).abs().max(z.im.abs()));
                scale = scale.max(t.abs());
            }
        }
        assert!(err <= 1e-6 * scale, "relative error {}", err / scale);
    }

    #[test]
    fn intertwining_matches_literally() {
        // transmute(D f) and the spectral y-derivative of transmute(f) run
        // through the same spectral path; they may differ only by the
        // round trip through the strictly positive weight.
        let spec = GeometrySpec::affine(2.0, 1.0).with_weight(WeightSpec::Poly { p: 1.0 });
        let grid = grid_for(spec, 20.0, 2048);
        let f = WeightedSignal::from_y_profile(&grid, |y| Complex64::new(gauss(y), 0.0));
        let lhs = transmute(&weighted_derivative(&f, 1));
        let v = transmute(&f);
        let rhs = crate::wft::spectral_y_derivative(&v, 1);
        let scale = rhs.max_abs();
        for (a, b) in lhs.samples().iter().zip(rhs.samples()) {
            assert!((a - b).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn derivative_matches_fourth_order_differences() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let d = weighted_derivative(&f, 1);
        let v = transmute(&f);
        let n = grid.len();
        let dy = grid.dy();
        let mut err: f64 = 0.0;
        for j in 0..n {
            let vm2 = v.samples()[(j + n - 2) % n];
            let vm1 = v.samples()[(j + n - 1) % n];
            let vp1 = v.samples()[(j + 1) % n];
            let vp2 = v.samples()[(j + 2) % n];
            let fd = (-vp2 + vp1 * 8.0 - vm1 * 8.0 + vm2) / (12.0 * dy);
            err = err.max((d.samples()[j] - fd).norm());
        }
        assert!(err <= 1e-6, "max deviation from FD4 oracle {err}");
    }

    #[test]
    fn seminorm_basics() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        // rho_00 is the max modulus; 0 is a grid node so the peak is exact
        assert!((seminorm(&f, 0, 0) - 1.0).abs() <= 1e-12);
        // rho_10: max of |t| exp(-t^2/2) is exp(-1/2) at t = 1
        let exact = (-0.5f64).exp();
        assert!((seminorm(&f, 1, 0) - exact).abs() <= 1e-4);
    }

    #[test]
    fn seminorm_transports_across_scale_presets() {
        // with unit weight the seminorm of a pullback depends only on the
        // y profile, not on the scale preset
        let profile = |y: f64| Complex64::new(gauss(y), 0.0);
        let mut values = Vec::new();
        for spec in [
            GeometrySpec::identity(),
            GeometrySpec::affine(2.0, 0.0),
            GeometrySpec::hadamard(0.0),
        ] {
            let grid = grid_for(spec, 20.0, 1024);
            let f = WeightedSignal::from_y_profile(&grid, profile);
            values.push(seminorm(&f, 2, 1));
        }
        for v in &values[1..] {
            assert!((v - values[0]).abs() <= 1e-12 * values[0].max(1.0));
        }
    }
}
