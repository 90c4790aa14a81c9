//! Structural pairs (psi, omega): the scale function and weight that define
//! the medium geometry.
//!
//! A pair is admissible when psi is a smooth strictly increasing bijection of
//! an open interval I onto the real line (H1) and omega is smooth and strictly
//! positive on I with at most polynomial growth (H2). Every preset offered
//! here has closed-form psi, psi', psi^-1, omega and omega', so both
//! hypotheses are checkable by construction and the inverse is exact.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale-function presets. Each variant has an exact closed-form inverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "lowercase")]
pub enum ScaleSpec {
    /// psi(t) = t on all of R.
    Identity,
    /// psi(t) = a t + b on all of R, with a > 0.
    Affine { a: f64, b: f64 },
    /// psi(t) = ln(t + t_shift) on (-t_shift, inf). The logarithmic regime.
    Hadamard { t_shift: f64 },
    /// psi(t) = a ln(t + t_shift) + b on (-t_shift, inf), with a > 0.
    /// An affine map composed over the logarithmic scale.
    Composed { a: f64, b: f64, t_shift: f64 },
}

/// Weight presets. All are polynomial-type, so the growth part of H2 holds
/// by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightSpec {
    /// omega(t) = c with c > 0.
    Constant { c: f64 },
    /// omega(t) = (1 + t^2)^(p/2).
    Poly { p: f64 },
    /// omega(t) = sum coeffs[k] t^k, required strictly positive on the domain.
    Coeffs { coeffs: Vec<f64> },
}

/// Serializable descriptor for a structural pair. This is the JSON schema the
/// CLI config loader reads:
/// `{"kind": "identity"|"affine"|"hadamard"|"composed", "params": {...},
///   "weight": {"kind": "constant"|"poly"|"coeffs", ...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    #[serde(flatten)]
    pub scale: ScaleSpec,
    pub weight: WeightSpec,
}

impl GeometrySpec {
    pub fn new(scale: ScaleSpec, weight: WeightSpec) -> Self {
        Self { scale, weight }
    }

    /// psi(t) = t, omega(t) = 1.
    pub fn identity() -> Self {
        Self::new(ScaleSpec::Identity, WeightSpec::Constant { c: 1.0 })
    }

    /// psi(t) = a t + b with unit weight.
    pub fn affine(a: f64, b: f64) -> Self {
        Self::new(ScaleSpec::Affine { a, b }, WeightSpec::Constant { c: 1.0 })
    }

    /// psi(t) = ln(t + t_shift) with unit weight.
    pub fn hadamard(t_shift: f64) -> Self {
        Self::new(
            ScaleSpec::Hadamard { t_shift },
            WeightSpec::Constant { c: 1.0 },
        )
    }

    /// Replace the weight, keeping the scale.
    pub fn with_weight(mut self, weight: WeightSpec) -> Self {
        self.weight = weight;
        self
    }
}

/// A validated structural pair together with its open domain I.
///
/// Immutable after construction; all evaluations are pure closed forms, so a
/// pair can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryPair {
    spec: GeometrySpec,
    domain: (f64, f64),
}

/// Build and validate a structural pair from its descriptor.
pub fn make_geometry(spec: &GeometrySpec) -> Result<GeometryPair> {
    let domain = match spec.scale {
        ScaleSpec::Identity => (f64::NEG_INFINITY, f64::INFINITY),
        ScaleSpec::Affine { a, b } => {
            if !a.is_finite() || !b.is_finite() || a <= 0.0 {
                return Err(Error::NonMonotoneScale(format!(
                    "affine slope must be positive and finite, got a = {a}"
                )));
            }
            (f64::NEG_INFINITY, f64::INFINITY)
        }
        ScaleSpec::Hadamard { t_shift } => {
            if !t_shift.is_finite() {
                return Err(Error::DomainEmpty);
            }
            (-t_shift, f64::INFINITY)
        }
        ScaleSpec::Composed { a, b, t_shift } => {
            if !t_shift.is_finite() {
                return Err(Error::DomainEmpty);
            }
            if !a.is_finite() || !b.is_finite() || a <= 0.0 {
                return Err(Error::NonMonotoneScale(format!(
                    "composed slope must be positive and finite, got a = {a}"
                )));
            }
            (-t_shift, f64::INFINITY)
        }
    };
    validate_weight(&spec.weight, domain)?;
    Ok(GeometryPair {
        spec: spec.clone(),
        domain,
    })
}

impl GeometryPair {
    /// Same as [`make_geometry`].
    pub fn new(spec: &GeometrySpec) -> Result<Self> {
        make_geometry(spec)
    }

    pub fn spec(&self) -> &GeometrySpec {
        &self.spec
    }

    /// The open interval I on which the pair is defined.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn contains(&self, t: f64) -> bool {
        t.is_finite() && self.domain.0 < t && t < self.domain.1
    }

    /// The scale function psi.
    pub fn psi(&self, t: f64) -> f64 {
        match self.spec.scale {
            ScaleSpec::Identity => t,
            ScaleSpec::Affine { a, b } => a * t + b,
            ScaleSpec::Hadamard { t_shift } => (t + t_shift).ln(),
            ScaleSpec::Composed { a, b, t_shift } => a * (t + t_shift).ln() + b,
        }
    }

    /// The derivative psi'(t), strictly positive on I.
    pub fn dpsi(&self, t: f64) -> f64 {
        match self.spec.scale {
            ScaleSpec::Identity => 1.0,
            ScaleSpec::Affine { a, .. } => a,
            ScaleSpec::Hadamard { t_shift } => 1.0 / (t + t_shift),
            ScaleSpec::Composed { a, t_shift, .. } => a / (t + t_shift),
        }
    }

    /// The exact inverse psi^-1(y).
    pub fn psi_inv(&self, y: f64) -> f64 {
        match self.spec.scale {
            ScaleSpec::Identity => y,
            ScaleSpec::Affine { a, b } => (y - b) / a,
            ScaleSpec::Hadamard { t_shift } => y.exp() - t_shift,
            ScaleSpec::Composed { a, b, t_shift } => ((y - b) / a).exp() - t_shift,
        }
    }

    /// The weight omega(t).
    pub fn omega(&self, t: f64) -> f64 {
        match &self.spec.weight {
            WeightSpec::Constant { c } => *c,
            WeightSpec::Poly { p } => (1.0 + t * t).powf(p / 2.0),
            WeightSpec::Coeffs { coeffs } => poly_eval(coeffs, t),
        }
    }

    /// The derivative omega'(t).
    pub fn domega(&self, t: f64) -> f64 {
        match &self.spec.weight {
            WeightSpec::Constant { .. } => 0.0,
            WeightSpec::Poly { p } => p * t * (1.0 + t * t).powf(p / 2.0 - 1.0),
            WeightSpec::Coeffs { coeffs } => {
                let d: Vec<f64> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| k as f64 * c)
                    .collect();
                poly_eval(&d, t)
            }
        }
    }
}

/// The pointwise dilution factor J(tau) = 1 / (omega(tau)^2 psi'(tau)).
///
/// This is the amplitude that rescales a standard impulse at tau so that it
/// samples test functions with unit strength under the weighted pairing.
pub fn jacobian_factor(g: &GeometryPair, tau: f64) -> Result<f64> {
    if !g.contains(tau) {
        return Err(Error::OutOfDomain(tau));
    }
    let w = g.omega(tau);
    Ok(1.0 / (w * w * g.dpsi(tau)))
}

/// Numerical spot-check report for H1/H2 over a log-spaced sample of I.
#[derive(Debug, Clone, Serialize)]
pub struct GeometryValidation {
    pub samples: usize,
    pub min_dpsi: f64,
    pub min_dpsi_at: f64,
    pub min_omega: f64,
    pub min_omega_at: f64,
    pub pass: bool,
}

/// Sample psi' and omega over a log-spaced set of points in I and report the
/// minima. Failures are carried in the report, never raised as errors.
pub fn validate_geometry(g: &GeometryPair, n_samples: usize) -> GeometryValidation {
    let points = probe_points(g.domain(), n_samples.max(2));
    let mut report = GeometryValidation {
        samples: points.len(),
        min_dpsi: f64::INFINITY,
        min_dpsi_at: f64::NAN,
        min_omega: f64::INFINITY,
        min_omega_at: f64::NAN,
        pass: true,
    };
    for &t in &points {
        let d = g.dpsi(t);
        if d < report.min_dpsi {
            report.min_dpsi = d;
            report.min_dpsi_at = t;
        }
        let w = g.omega(t);
        if w < report.min_omega {
            report.min_omega = w;
            report.min_omega_at = t;
        }
    }
    report.pass = report.min_dpsi > 0.0
        && report.min_omega > 0.0
        && report.min_dpsi.is_finite()
        && report.min_omega.is_finite();
    report
}

/// Log-spaced probe points spanning twelve decades of I.
fn probe_points(domain: (f64, f64), n: usize) -> Vec<f64> {
    let (lo, hi) = domain;
    let decades = |k: usize, m: usize| -> f64 {
        // magnitudes from 1e-6 up to 1e6
        let f = k as f64 / (m.max(2) - 1) as f64;
        10f64.powf(-6.0 + 12.0 * f)
    };
    let mut pts = Vec::with_capacity(n);
    match (lo.is_finite(), hi.is_finite()) {
        (false, false) => {
            let half = n / 2;
            for k in 0..half {
                pts.push(-decades(k, half));
            }
            for k in 0..(n - half) {
                pts.push(decades(k, n - half));
            }
        }
        (true, false) => {
            for k in 0..n {
                pts.push(lo + decades(k, n));
            }
        }
        (false, true) => {
            for k in 0..n {
                pts.push(hi - decades(k, n));
            }
        }
        (true, true) => {
            let width = hi - lo;
            for k in 0..n {
                let f = (k as f64 + 0.5) / n as f64;
                pts.push(lo + width * f);
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts
}

fn poly_eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn validate_weight(weight: &WeightSpec, domain: (f64, f64)) -> Result<()> {
    match weight {
        WeightSpec::Constant { c } => {
            if !c.is_finite() || *c <= 0.0 {
                return Err(Error::NonPositiveWeight(format!(
                    "constant weight must be positive, got c = {c}"
                )));
            }
        }
        WeightSpec::Poly { p } => {
            if !p.is_finite() {
                return Err(Error::NonPositiveWeight(format!(
                    "polynomial exponent must be finite, got p = {p}"
                )));
            }
        }
        WeightSpec::Coeffs { coeffs } => {
            if coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonPositiveWeight(
                    "polynomial coefficients must be finite".into(),
                ));
            }
            let trimmed = trim_leading_zeros(coeffs);
            if trimmed.is_empty() {
                return Err(Error::NonPositiveWeight(
                    "zero polynomial is not a valid weight".into(),
                ));
            }
            if let Some(root) = real_root_in(&trimmed, domain) {
                return Err(Error::NonPositiveWeight(format!(
                    "polynomial weight vanishes at t = {root} inside the domain"
                )));
            }
            // No roots in the open interval, so the sign is constant there.
            let probe = if domain.0.is_finite() {
                domain.0 + 1.0
            } else if domain.1.is_finite() {
                domain.1 - 1.0
            } else {
                0.0
            };
            if poly_eval(&trimmed, probe) <= 0.0 {
                return Err(Error::NonPositiveWeight(format!(
                    "polynomial weight is negative on the domain (value at t = {probe})"
                )));
            }
        }
    }
    Ok(())
}

fn trim_leading_zeros(coeffs: &[f64]) -> Vec<f64> {
    let mut v = coeffs.to_vec();
    while v.last() == Some(&0.0) {
        v.pop();
    }
    v
}

/// First real root of the polynomial inside the open interval, if any.
/// Roots come from the eigenvalues of the companion matrix.
fn real_root_in(coeffs: &[f64], domain: (f64, f64)) -> Option<f64> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return None;
    }
    let lead = coeffs[degree];
    let companion = DMatrix::<f64>::from_fn(degree, degree, |i, j| {
        if j + 1 == degree {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eigen = companion.complex_eigenvalues();
    for z in eigen.iter() {
        let is_real = z.im.abs() <= 1e-8 * (1.0 + z.re.abs());
        if is_real && domain.0 < z.re && z.re < domain.1 {
            return Some(z.re);
        }
    }
    None
}
