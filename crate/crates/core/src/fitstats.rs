//! Two-parameter force-curve fitting and chi-squared statistics.
//!
//! The model F(d) = F_C(d) - pi eps0 R V_rms^2 / d - a is affine in
//! beta1 = V_rms^2 and beta2 = a, so the weighted least-squares optimum is
//! the exact solution of 2x2 normal equations; no iterative optimizer is
//! involved. A negative beta1 optimum is reported as V_rms = -sqrt(-beta1)
//! together with a diagnostic flag rather than being clamped, which would
//! bias the chi-squared.

use std::path::Path;

use crate::constants::EPS0;
use crate::error::{CasimirError, Result};
use crate::special::gamma_q;
use crate::units::{ForceValue, Separation};

use std::f64::consts::PI;

/// One measured point: separation, total force (negative = attractive),
/// one-standard-deviation error.
#[derive(Debug, Clone, Copy)]
pub struct ForcePoint {
    pub d: Separation,
    pub force: ForceValue,
    pub sigma: f64,
}

/// An experimental force-distance dataset.
#[derive(Debug, Clone)]
pub struct ForceDataset {
    points: Vec<ForcePoint>,
    pub label: String,
}

impl ForceDataset {
    pub fn new(points: Vec<ForcePoint>, label: impl Into<String>) -> Result<Self> {
        if points.len() < 3 {
            return Err(CasimirError::Data(format!(
                "dataset needs at least 3 points, got {}",
                points.len()
            )));
        }
        for w in points.windows(2) {
            if w[1].d.meters() <= w[0].d.meters() {
                return Err(CasimirError::Data(
                    "dataset separations must be strictly increasing".into(),
                ));
            }
        }
        for p in &points {
            if !(p.sigma > 0.0) || !p.sigma.is_finite() {
                return Err(CasimirError::Data(format!(
                    "every sigma must be positive and finite, got {} at d = {} um",
                    p.sigma,
                    p.d.micrometers()
                )));
            }
            if !p.force.newtons().is_finite() {
                return Err(CasimirError::Data("non-finite force value".into()));
            }
        }
        Ok(ForceDataset {
            points,
            label: label.into(),
        })
    }

    /// Load from CSV with header `d_um,f_pn,sigma_pn`; `#` starts a comment.
    /// With `attractive_magnitudes`, force values are magnitudes of
    /// attractive forces and are negated on ingestion.
    pub fn load_csv<P: AsRef<Path>>(path: P, attractive_magnitudes: bool) -> Result<Self> {
        let label = path.as_ref().display().to_string();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(path.as_ref())?;
        let headers = reader.headers()?.clone();
        if headers.len() < 3
            || &headers[0] != "d_um"
            || &headers[1] != "f_pn"
            || &headers[2] != "sigma_pn"
        {
            return Err(CasimirError::Data(format!(
                "dataset CSV must have header d_um,f_pn,sigma_pn, got {headers:?}"
            )));
        }
        let mut points = Vec::new();
        for record in reader.records() {
            let record = record?;
            let d_um: f64 = record[0]
                .parse()
                .map_err(|e| CasimirError::Data(format!("bad d_um value: {e}")))?;
            let mut f_pn: f64 = record[1]
                .parse()
                .map_err(|e| CasimirError::Data(format!("bad f_pn value: {e}")))?;
            let sigma_pn: f64 = record[2]
                .parse()
                .map_err(|e| CasimirError::Data(format!("bad sigma_pn value: {e}")))?;
            if attractive_magnitudes {
                f_pn = -f_pn.abs();
            }
            points.push(ForcePoint {
                d: Separation::from_um(d_um)?,
                force: ForceValue::from_piconewtons(f_pn),
                sigma: sigma_pn * 1e-12,
            });
        }
        ForceDataset::new(points, label)
    }

    pub fn points(&self) -> &[ForcePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Restrict to separations within [d_min, d_max] (either side optional).
    pub fn filter_separation(&self, d_min: Option<f64>, d_max: Option<f64>) -> Result<Self> {
        let kept: Vec<ForcePoint> = self
            .points
            .iter()
            .copied()
            .filter(|p| {
                let d = p.d.meters();
                d_min.map_or(true, |lo| d >= lo) && d_max.map_or(true, |hi| d <= hi)
            })
            .collect();
        if kept.len() < 3 {
            return Err(CasimirError::Data(format!(
                "separation filter leaves {} points; at least 3 are needed for a 2-parameter fit",
                kept.len()
            )));
        }
        ForceDataset::new(kept, format!("{} (filtered)", self.label))
    }

    /// Add a constant absolute instrumental error in quadrature to every
    /// point's statistical error.
    pub fn with_systematic_error(&self, sigma_sys: f64) -> Result<Self> {
        if !(sigma_sys >= 0.0) {
            return Err(CasimirError::Data(format!(
                "systematic error must be >= 0, got {sigma_sys}"
            )));
        }
        let points = self
            .points
            .iter()
            .map(|p| ForcePoint {
                sigma: (p.sigma * p.sigma + sigma_sys * sigma_sys).sqrt(),
                ..*p
            })
            .collect();
        ForceDataset::new(points, format!("{} (+sigma_sys)", self.label))
    }
}

/// Result of the two-parameter weighted least-squares fit.
#[derive(Debug, Clone, Copy)]
pub struct FitResult {
    /// Fitted patch-voltage scale (V). Carries the sign of the fitted
    /// V_rms^2: negative values mean the unconstrained optimum had
    /// beta1 < 0 (see `negative_v_rms_squared`).
    pub v_rms: f64,
    /// Fitted constant force offset (N).
    pub a: f64,
    pub chi2: f64,
    /// Degrees of freedom, N - 2.
    pub nu: usize,
    pub chi2_red: f64,
    /// Probability of exceeding the observed chi-squared.
    pub q: f64,
    /// 2x2 covariance of (beta1 = V_rms^2, beta2 = a).
    pub covariance: [[f64; 2]; 2],
    /// Set when the unconstrained optimum had V_rms^2 < 0; the fit is
    /// reported as-is rather than clamped.
    pub negative_v_rms_squared: bool,
}

/// Total modelled force F_C(d) - pi eps0 R V_rms^2 / d - a.
pub fn total_force_model(
    casimir: ForceValue,
    d: Separation,
    v_rms: f64,
    a: f64,
    radius: f64,
) -> ForceValue {
    let patch = PI * EPS0 * radius * v_rms * v_rms / d.meters();
    ForceValue::from_newtons(casimir.newtons() - patch - a)
}

/// Exact weighted least-squares fit of (V_rms^2, a) given the Casimir
/// force F_C evaluated at each dataset separation (newtons, aligned with
/// the dataset order).
pub fn fit_two_param(data: &ForceDataset, casimir_curve: &[f64], radius: f64) -> Result<FitResult> {
    let n = data.len();
    if casimir_curve.len() != n {
        return Err(CasimirError::Config(format!(
            "casimir curve has {} entries but the dataset has {n} points",
            casimir_curve.len()
        )));
    }
    if !(radius > 0.0) {
        return Err(CasimirError::Config(format!(
            "radius must be positive, got {radius}"
        )));
    }

    // design: y_i = F_i - F_C(d_i) = x1_i beta1 + x2_i beta2 + noise,
    // x1 = -pi eps0 R / d, x2 = -1, weights 1/sigma^2
    let mut s11 = 0.0;
    let mut s12 = 0.0;
    let mut s22 = 0.0;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for (p, fc) in data.points().iter().zip(casimir_curve) {
        let w = 1.0 / (p.sigma * p.sigma);
        let x1 = -PI * EPS0 * radius / p.d.meters();
        let x2 = -1.0;
        let y = p.force.newtons() - fc;
        s11 += w * x1 * x1;
        s12 += w * x1 * x2;
        s22 += w * x2 * x2;
        b1 += w * x1 * y;
        b2 += w * x2 * y;
    }
    let det = s11 * s22 - s12 * s12;
    // det / (s11 s22) = 1 - rho^2 for the weighted column correlation rho;
    // near-collinear 1/d and constant columns cannot be separated
    if !(det > 1e-12 * s11 * s22) || !det.is_finite() {
        return Err(CasimirError::DegenerateFit(
            "normal equations are singular (separations too degenerate to separate 1/d from a constant)"
                .into(),
        ));
    }
    let beta1 = (b1 * s22 - b2 * s12) / det;
    let beta2 = (s11 * b2 - s12 * b1) / det;
    let covariance = [
        [s22 / det, -s12 / det],
        [-s12 / det, s11 / det],
    ];

    let mut chi2 = 0.0;
    for (p, fc) in data.points().iter().zip(casimir_curve) {
        let x1 = -PI * EPS0 * radius / p.d.meters();
        let resid = p.force.newtons() - fc - x1 * beta1 + beta2;
        chi2 += (resid / p.sigma) * (resid / p.sigma);
    }
    let nu = n - 2;
    let q = chi2_tail_probability(chi2, nu)?;
    let negative = beta1 < 0.0;
    Ok(FitResult {
        v_rms: if negative {
            -(-beta1).sqrt()
        } else {
            beta1.sqrt()
        },
        a: beta2,
        chi2,
        nu,
        chi2_red: chi2 / nu as f64,
        q,
        covariance,
        negative_v_rms_squared: negative,
    })
}

/// Probability of obtaining a larger chi-squared than observed:
/// the regularized upper incomplete gamma Q(nu/2, chi2/2).
pub fn chi2_tail_probability(chi2: f64, nu: usize) -> Result<f64> {
    if !(chi2 >= 0.0) || !chi2.is_finite() {
        return Err(CasimirError::Domain(format!(
            "chi2 must be >= 0 and finite, got {chi2}"
        )));
    }
    if nu < 1 {
        return Err(CasimirError::Domain("nu must be >= 1".into()));
    }
    Ok(gamma_q(nu as f64 / 2.0, chi2 / 2.0))
}

/// Per-point relative errors sigma_i / |F_i| as percentages; `None` flags
/// points with F = 0 where the ratio is undefined.
pub fn relative_errors(data: &ForceDataset) -> Vec<Option<f64>> {
    data.points()
        .iter()
        .map(|p| {
            let f = p.force.newtons().abs();
            if f == 0.0 {
                None
            } else {
                Some(100.0 * p.sigma / f)
            }
        })
        .collect()
}
