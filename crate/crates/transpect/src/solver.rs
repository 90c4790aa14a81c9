//! The fractional aging equation (D^alpha + I) u = f: forward operator,
//! spectral solve with a certified multiplier bound, mollified Green's
//! functions and decay-envelope sweeps.
//!
//! The fractional power is the spectral multiplier
//! sigma(xi) = (i xi)^alpha + 1 with the principal branch
//! (i xi)^alpha = |xi|^alpha exp(i alpha pi sign(xi) / 2),
//! the one branch whose angular range stays inside (-pi, pi) for
//! alpha in (0, 2), so sigma never vanishes on the real line and the solve
//! divides by it samplewise. The identity shift keeps the zero frequency
//! invertible; the unshifted operator alone is singular there.
//!
//! Arbitrary symbols can still be pushed through
//! [`crate::wft::apply_multiplier`]; the certification in this module covers
//! the shifted power family only.

use num_complex::Complex64;
use serde::Serialize;

use crate::distributions::{min_resolvable_eps, mollified_delta};
use crate::error::{Error, Result};
use crate::grid::{Grid, WeightedSignal};
use crate::sobolev::sobolev_norm_of_spectrum;
use crate::wft::{apply_multiplier, iwft, wft, SpectralDensity};

/// Validated fractional order alpha in the open interval (0, 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgingSymbol {
    alpha: f64,
}

impl AgingSymbol {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 2.0 {
            return Err(Error::OrderOutOfRange(alpha));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// sigma(xi) = |xi|^alpha exp(i alpha pi sign(xi)/2) + 1; sigma(0) = 1.
    pub fn eval(self, xi: f64) -> Complex64 {
        let r = xi.abs().powf(self.alpha);
        let theta = self.alpha * std::f64::consts::FRAC_PI_2 * sign(xi);
        Complex64::from_polar(r, theta) + 1.0
    }

    /// The regularity-gain multiplier M(xi) = (1 + xi^2)^(alpha/2) / |sigma(xi)|.
    pub fn multiplier_gain(self, xi: f64) -> f64 {
        (1.0 + xi * xi).powf(self.alpha / 2.0) / self.eval(xi).norm()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Evaluate the shifted fractional symbol at a frequency.
pub fn aging_symbol_eval(a: AgingSymbol, xi: f64) -> Complex64 {
    a.eval(xi)
}

/// Apply the forward operator (D^alpha + I) spectrally.
pub fn apply_aging_operator(u: &WeightedSignal, a: AgingSymbol) -> WeightedSignal {
    let spectrum = apply_multiplier(&wft(u), |xi| a.eval(xi))
        .expect("shifted power symbol is finite at every frequency");
    iwft(&spectrum)
}

/// Solver output: the solution plus the certificate quantities.
///
/// The a-priori bound `output_norm_s_plus_alpha <= multiplier_bound *
/// input_norm_s` holds exactly at the discrete level because all three
/// quantities are computed from the same spectral samples.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: WeightedSignal,
    /// sup over the frequency grid of M(xi).
    pub multiplier_bound: f64,
    /// ||f||_{H^s} of the input.
    pub input_norm_s: f64,
    /// ||u||_{H^{s+alpha}} of the solution.
    pub output_norm_s_plus_alpha: f64,
    pub s: f64,
    pub alpha: f64,
}

/// JSON form of a solve report (without the solution samples).
#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub alpha: f64,
    pub s: f64,
    pub multiplier_bound: f64,
    pub input_norm_s: f64,
    pub output_norm_s_plus_alpha: f64,
    pub bound_satisfied: bool,
}

impl SolveReport {
    pub fn summary(&self) -> SolveSummary {
        SolveSummary {
            alpha: self.alpha,
            s: self.s,
            multiplier_bound: self.multiplier_bound,
            input_norm_s: self.input_norm_s,
            output_norm_s_plus_alpha: self.output_norm_s_plus_alpha,
            bound_satisfied: self.output_norm_s_plus_alpha
                <= self.multiplier_bound * self.input_norm_s * (1.0 + 1e-9),
        }
    }
}

/// Solve (D^alpha + I) u = f by dividing the spectrum by sigma. The order s
/// only affects the reported norms, never the solution itself.
pub fn solve_aging(f: &WeightedSignal, a: AgingSymbol, s: f64) -> SolveReport {
    let grid = f.grid().clone();
    let fhat = wft(f);
    let uhat_samples: Vec<Complex64> = grid
        .xi_nodes()
        .iter()
        .zip(fhat.samples())
        .map(|(&xi, z)| z / a.eval(xi))
        .collect();
    let uhat = SpectralDensity::from_samples_unchecked(&grid, uhat_samples);
    let multiplier_bound = grid
        .xi_nodes()
        .iter()
        .map(|&xi| a.multiplier_gain(xi))
        .fold(0.0, f64::max);
    let input_norm_s = sobolev_norm_of_spectrum(&fhat, s);
    let output_norm_s_plus_alpha = sobolev_norm_of_spectrum(&uhat, s + a.alpha());
    debug_assert!(
        output_norm_s_plus_alpha <= multiplier_bound * input_norm_s * (1.0 + 1e-9),
        "a-priori bound violated"
    );
    SolveReport {
        solution: iwft(&uhat),
        multiplier_bound,
        input_norm_s,
        output_norm_s_plus_alpha,
        s,
        alpha: a.alpha(),
    }
}

/// Fundamental solution of the shifted equation driven by the mollified
/// weighted delta at t0. The width must be resolvable on the grid.
pub fn green_function(grid: &Grid, a: AgingSymbol, t0: f64, eps: f64) -> Result<WeightedSignal> {
    let delta = mollified_delta(grid, t0, eps)?;
    let min = min_resolvable_eps(grid, t0);
    if eps < min {
        return Err(Error::UnresolvedMollifier { eps, min });
    }
    let dhat = wft(&delta);
    let ghat: Vec<Complex64> = grid
        .xi_nodes()
        .iter()
        .zip(dhat.samples())
        .map(|(&xi, z)| z / a.eval(xi))
        .collect();
    Ok(iwft(&SpectralDensity::from_samples_unchecked(grid, ghat)))
}

/// sup_j omega(t_j) omega(t0) |G_j|, the weighted amplitude of an impulse
/// response relative to its source point.
pub fn envelope_sup(green: &WeightedSignal, t0: f64) -> Result<f64> {
    let g = green.grid().geometry();
    if !g.contains(t0) {
        return Err(Error::OutOfDomain(t0));
    }
    let w0 = g.omega(t0);
    Ok(green
        .samples()
        .iter()
        .zip(green.grid().omega_nodes())
        .map(|(z, &w)| w0 * w * z.norm())
        .fold(0.0, f64::max))
}

/// One point of an envelope sweep.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeRow {
    pub t0: f64,
    pub alpha: f64,
    pub sup_envelope: f64,
}

/// Decay-envelope sweep report. `pass` asserts uniform boundedness of the
/// weighted sups across the sweep; the size of the spread is reported but
/// carries no pass/fail meaning of its own.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub rows: Vec<EnvelopeRow>,
    pub max_sup: f64,
    pub min_sup: f64,
    /// max_sup / min_sup.
    pub spread: f64,
    pub pass: bool,
}

/// Sweep Green's functions over source points and collect the weighted sups.
/// Requires alpha > 1: below that order the impulse response does not reach
/// the continuous regime where the pointwise envelope statement applies.
pub fn check_decay_envelope(
    grid: &Grid,
    a: AgingSymbol,
    t0_list: &[f64],
    eps: f64,
) -> Result<EnvelopeReport> {
    if a.alpha() <= 1.0 {
        return Err(Error::OrderTooLowForEnvelope(a.alpha()));
    }
    let mut rows = Vec::with_capacity(t0_list.len());
    for &t0 in t0_list {
        let green = green_function(grid, a, t0, eps)?;
        rows.push(EnvelopeRow {
            t0,
            alpha: a.alpha(),
            sup_envelope: envelope_sup(&green, t0)?,
        });
    }
    let max_sup = rows.iter().map(|r| r.sup_envelope).fold(0.0, f64::max);
    let min_sup = rows
        .iter()
        .map(|r| r.sup_envelope)
        .fold(f64::INFINITY, f64::min);
    let spread = if min_sup > 0.0 {
        max_sup / min_sup
    } else {
        f64::INFINITY
    };
    Ok(EnvelopeReport {
        rows,
        max_sup,
        min_sup,
        spread,
        pass: max_sup.is_finite(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_geometry, GeometrySpec, WeightSpec};
    use crate::grid::weighted_norm;
    use crate::sobolev::{random_hs_sample, sobolev_norm};

    fn grid_for(spec: GeometrySpec, l: f64, n: usize) -> Grid {
        Grid::build(&make_geometry(&spec).unwrap(), l, n).unwrap()
    }

    fn gauss(t: f64) -> f64 {
        (-t * t / 2.0).exp()
    }

    fn rel_err(a: &WeightedSignal, b: &WeightedSignal) -> f64 {
        let scale = b.max_abs();
        a.samples()
            .iter()
            .zip(b.samples())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / scale
    }

    #[test]
    fn order_outside_the_open_interval_rejected() {
        for alpha in [0.0, 2.0, 2.5, -0.3, f64::NAN] {
            assert!(matches!(
                AgingSymbol::new(alpha),
                Err(Error::OrderOutOfRange(_))
            ));
        }
        assert!(AgingSymbol::new(1.999).is_ok());
        assert!(AgingSymbol::new(1e-6).is_ok());
    }

    #[test]
    fn symbol_values() {
        let a = AgingSymbol::new(1.0).unwrap();
        let s = a.eval(1.0);
        assert!((s - Complex64::new(1.0, 1.0)).norm() <= 1e-15);
        assert!((s.norm() - 2.0f64.sqrt()).abs() <= 1e-15);

        for alpha in [0.3, 0.7, 1.0, 1.5, 1.9] {
            let a = AgingSymbol::new(alpha).unwrap();
            assert_eq!(a.eval(0.0), Complex64::new(1.0, 0.0));
        }

        // alpha = 1/2 at xi = 1: exp(i pi/4) + 1 = 1 + sqrt(2)/2 + i sqrt(2)/2
        let a = AgingSymbol::new(0.5).unwrap();
        let s = a.eval(1.0);
        let expected = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4) + 1.0;
        assert!((s - expected).norm() <= 1e-12);
        let half_sqrt2 = 2.0f64.sqrt() / 2.0;
        assert!((s.re - (1.0 + half_sqrt2)).abs() <= 1e-12);
        assert!((s.im - half_sqrt2).abs() <= 1e-12);
        // |sigma|^2 = (1 + sqrt(2)/2)^2 + 1/2 = 2 + sqrt(2)
        assert!((s.norm() - (2.0 + 2.0f64.sqrt()).sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn symbol_stays_away_from_zero() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        for alpha in [0.1, 0.3, 0.7, 1.0, 1.3, 1.7, 1.9, 1.99] {
            let a = AgingSymbol::new(alpha).unwrap();
            let min = grid
                .xi_nodes()
                .iter()
                .map(|&xi| a.eval(xi).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(min > 1e-3, "alpha {alpha}: min |sigma| = {min}");
        }
    }

    #[test]
    fn forward_operator_at_order_one_is_derivative_plus_identity() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let u = WeightedSignal::from_real_fn(&grid, gauss);
        let a = AgingSymbol::new(1.0).unwrap();
        let out = apply_aging_operator(&u, a);
        let exact = WeightedSignal::from_real_fn(&grid, |t| (1.0 - t) * gauss(t));
        assert!(rel_err(&out, &exact) <= 1e-8);
    }

    #[test]
    fn zero_maps_to_zero() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 256);
        let a = AgingSymbol::new(0.7).unwrap();
        assert_eq!(apply_aging_operator(&WeightedSignal::zero(&grid), a).max_abs(), 0.0);
    }

    #[test]
    fn manufactured_solution_is_recovered() {
        let spec = GeometrySpec::hadamard(0.0).with_weight(WeightSpec::Poly { p: 1.0 });
        let grid = grid_for(spec, 20.0, 2048);
        let target = WeightedSignal::from_y_profile(&grid, |y| Complex64::new(gauss(y), 0.0));
        let a = AgingSymbol::new(0.7).unwrap();
        let forcing = apply_aging_operator(&target, a);
        let report = solve_aging(&forcing, a, 0.0);
        assert!(rel_err(&report.solution, &target) <= 1e-9);
    }

    #[test]
    fn solve_then_apply_is_the_identity() {
        let grid = grid_for(GeometrySpec::affine(2.0, 0.0), 20.0, 2048);
        let f = WeightedSignal::from_y_profile(&grid, |y| {
            Complex64::new(gauss(y), 0.1 * gauss(y - 1.0))
        });
        for alpha in [0.3, 1.0, 1.9] {
            let a = AgingSymbol::new(alpha).unwrap();
            let u = solve_aging(&f, a, 0.0).solution;
            let back = apply_aging_operator(&u, a);
            assert!(rel_err(&back, &f) <= 1e-9, "alpha {alpha}");
        }
    }

    #[test]
    fn low_frequency_forcing_passes_through() {
        // spectrum confined near xi = 0 where sigma is close to 1
        let grid = grid_for(GeometrySpec::identity(), 20.0, 2048);
        let width = 0.05;
        let f = {
            let spec: Vec<Complex64> = grid
                .xi_nodes()
                .iter()
                .map(|&xi| Complex64::new((-xi * xi / (2.0 * width * width)).exp(), 0.0))
                .collect();
            iwft(&SpectralDensity::from_samples_unchecked(&grid, spec))
        };
        let a = AgingSymbol::new(1.5).unwrap();
        let u = solve_aging(&f, a, 0.0).solution;
        assert!(rel_err(&u, &f) <= 0.02);
    }

    #[test]
    fn multiplier_bound_is_one_at_order_one() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let f = WeightedSignal::from_real_fn(&grid, gauss);
        let report = solve_aging(&f, AgingSymbol::new(1.0).unwrap(), 0.0);
        assert!((report.multiplier_bound - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn multiplier_limits_and_grid_stability() {
        let coarse = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let fine = grid_for(GeometrySpec::identity(), 20.0, 8192);
        for alpha in [0.7, 1.0, 1.3, 1.5, 1.9] {
            let a = AgingSymbol::new(alpha).unwrap();
            assert_eq!(a.multiplier_gain(0.0), 1.0);
            let xi_max = *coarse.xi_nodes().last().unwrap();
            assert!(
                (a.multiplier_gain(xi_max) - 1.0).abs() <= 1e-2,
                "alpha {alpha}: M(xi_max) = {}",
                a.multiplier_gain(xi_max)
            );
            let sup = |g: &Grid| {
                g.xi_nodes()
                    .iter()
                    .map(|&xi| a.multiplier_gain(xi))
                    .fold(0.0, f64::max)
            };
            let s1 = sup(&coarse);
            let s2 = sup(&fine);
            assert!(
                (s1 - s2).abs() <= 1e-3 * s1,
                "alpha {alpha}: sup moved {s1} -> {s2}"
            );
        }
    }

    #[test]
    fn regularity_gain_bound_on_random_inputs() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 1024);
        for alpha in [0.3, 1.3] {
            let a = AgingSymbol::new(alpha).unwrap();
            for s in [-1.0, 0.0, 1.0] {
                for seed in 0..4u64 {
                    let f = random_hs_sample(seed, s, 1.0, &grid);
                    let report = solve_aging(&f, a, s);
                    assert!(
                        report.output_norm_s_plus_alpha
                            <= report.multiplier_bound * report.input_norm_s * (1.0 + 1e-9),
                        "bound violated at alpha {alpha}, s {s}, seed {seed}"
                    );
                    assert!(report.summary().bound_satisfied);
                }
            }
        }
    }

    #[test]
    fn green_function_is_real_causal_and_localized() {
        // The principal branch makes the response one-sided: at alpha = 1 it
        // is exactly exp(-(t - t0)) for t > t0 and zero before the source.
        // For alpha in (1, 2) the profile is real, peaks shortly after t0 and
        // leaves only a small backward tail.
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let a = AgingSymbol::new(1.5).unwrap();
        let g = green_function(&grid, a, 0.0, 0.05).unwrap();
        let peak = g.max_abs();
        let max_im = g.samples().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(max_im <= 1e-12 * peak, "response should be real");
        let peak_at = grid.t_nodes()[g
            .samples()
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
            .unwrap()
            .0];
        assert!(
            (0.0..2.0).contains(&peak_at),
            "peak should sit shortly after the source, found t = {peak_at}"
        );
        let backward = g
            .samples()
            .iter()
            .zip(grid.t_nodes())
            .filter(|(_, &t)| t < -1.0)
            .map(|(z, _)| z.norm())
            .fold(0.0, f64::max);
        assert!(backward <= 1e-2 * peak, "backward tail {backward} vs peak {peak}");
        // and it decays before the grid boundary
        let edge = g.samples()[0].norm().max(g.samples()[grid.len() - 1].norm());
        assert!(edge <= 1e-2 * peak);
    }

    #[test]
    fn green_function_translates_with_the_source() {
        // shift invariance in the identity geometry
        let grid = grid_for(GeometrySpec::identity(), 20.0, 4096);
        let a = AgingSymbol::new(1.5).unwrap();
        // 2.5 is a whole number of nodes (256 * dy), so the shifted source
        // samples are an exact translate and the comparison is clean
        let g0 = green_function(&grid, a, 0.0, 0.05).unwrap();
        let g2 = green_function(&grid, a, 2.5, 0.05).unwrap();
        let shift = (2.5 / grid.dy()).round() as usize;
        assert_eq!(shift, 256);
        let n = grid.len();
        let peak = g0.max_abs();
        let mut err: f64 = 0.0;
        // compare away from the wrap-around region
        for j in 0..(n - shift) {
            if grid.t_nodes()[j].abs() <= 10.0 {
                err = err.max((g2.samples()[j + shift] - g0.samples()[j]).norm());
            }
        }
        assert!(err <= 1e-6 * peak, "translation error {err}");
    }

    #[test]
    fn green_functions_form_a_cauchy_sequence_in_eps() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 8192);
        let a = AgingSymbol::new(1.5).unwrap();
        let eps = [0.4, 0.2, 0.1, 0.05];
        let greens: Vec<WeightedSignal> = eps
            .iter()
            .map(|&e| green_function(&grid, a, 0.0, e).unwrap())
            .collect();
        let mut last = f64::INFINITY;
        for w in greens.windows(2) {
            let d = weighted_norm(&w[1].sub(&w[0]).unwrap());
            assert!(d < last, "differences not shrinking: {d} >= {last}");
            last = d;
        }
    }

    #[test]
    fn green_source_outside_domain_rejected() {
        let grid = grid_for(GeometrySpec::hadamard(0.0), 8.0, 256);
        let a = AgingSymbol::new(1.5).unwrap();
        assert!(matches!(
            green_function(&grid, a, -2.0, 0.1),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn unresolved_green_width_rejected() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 256);
        let a = AgingSymbol::new(1.5).unwrap();
        assert!(matches!(
            green_function(&grid, a, 0.0, 0.01),
            Err(Error::UnresolvedMollifier { .. })
        ));
    }

    #[test]
    fn envelope_requires_order_above_one() {
        let grid = grid_for(GeometrySpec::identity(), 20.0, 256);
        let a = AgingSymbol::new(0.9).unwrap();
        assert!(matches!(
            check_decay_envelope(&grid, a, &[0.0], 0.5),
            Err(Error::OrderTooLowForEnvelope(_))
        ));
    }

    #[test]
    fn envelope_sweep_is_uniformly_bounded() {
        let spec = GeometrySpec::identity().with_weight(WeightSpec::Poly { p: 1.0 });
        let grid = grid_for(spec, 20.0, 4096);
        let a = AgingSymbol::new(1.5).unwrap();
        let report = check_decay_envelope(&grid, a, &[-2.0, 0.0, 2.0], 0.05).unwrap();
        assert!(report.pass);
        assert!(report.max_sup.is_finite() && report.min_sup > 0.0);
        assert!(report.spread < 10.0, "spread {}", report.spread);
        // raw sups across different weights are deliberately not compared;
        // each sweep only asserts its own boundedness
    }

    #[test]
    fn mollified_delta_membership_trend() {
        // H^{-0.6} norms saturate as eps shrinks, L^2 norms blow up
        let grid = grid_for(GeometrySpec::identity(), 20.0, 8192);
        let eps = [0.4, 0.2, 0.1, 0.05];
        let norms_neg: Vec<f64> = eps
            .iter()
            .map(|&e| sobolev_norm(&mollified_delta(&grid, 0.0, e).unwrap(), -0.6))
            .collect();
        let norms_zero: Vec<f64> = eps
            .iter()
            .map(|&e| sobolev_norm(&mollified_delta(&grid, 0.0, e).unwrap(), 0.0))
            .collect();
        let sat = norms_neg.last().unwrap() / norms_neg.first().unwrap();
        assert!(sat < 1.5, "negative-order norm should stay bounded, grew {sat}x");
        let blow = norms_zero.last().unwrap() / norms_zero.first().unwrap();
        assert!(blow > 2.0, "L2 norm should grow like eps^-1/2, grew {blow}x");
    }
}
