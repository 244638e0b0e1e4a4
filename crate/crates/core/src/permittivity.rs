//! Dielectric permittivity models evaluated on the imaginary frequency axis.
//!
//! Every model yields a real epsilon(i xi) > 1 for xi > 0. The xi -> 0
//! behaviour differs qualitatively between models (finite, 1/xi, 1/xi^2)
//! and is what separates the dissipative and dissipationless low-frequency
//! extrapolations in the thermal force; it is exposed explicitly through
//! [`ZeroFrequencyBehavior`] so the zero Matsubara term can be built without
//! evaluating at xi = 0.

use std::path::Path;

use crate::constants::EV_TO_RAD_PER_S;
use crate::error::{CasimirError, Result};
use crate::quad;

/// Conventional Au plasma frequency (eV) used by the `au` preset.
pub const AU_OMEGA_P_EV: f64 = 9.0;
/// Conventional Au relaxation parameter (eV) used by the `au` preset.
pub const AU_GAMMA_EV: f64 = 0.035;

/// One Lorentz oscillator of a core-electron absorption band.
/// `g` in rad^2/s^2, `omega` and `gamma` in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub g: f64,
    pub omega: f64,
    pub gamma: f64,
}

/// Core (bound-charge) permittivity of a dielectric, tabulated against
/// imaginary frequency. Evaluation interpolates linearly in ln(xi) and
/// clamps to the end rows outside the tabulated range.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticPermittivityTable {
    rows: Vec<(f64, f64)>,
}

impl StaticPermittivityTable {
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(CasimirError::Config(
                "static permittivity table needs at least one row".into(),
            ));
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(CasimirError::Config(
                    "static permittivity table frequencies must be strictly increasing".into(),
                ));
            }
        }
        for &(xi, eps) in &rows {
            if !(xi > 0.0) || !(eps >= 1.0) || !eps.is_finite() {
                return Err(CasimirError::Config(format!(
                    "static permittivity rows need xi > 0 and eps >= 1, got ({xi}, {eps})"
                )));
            }
        }
        Ok(StaticPermittivityTable { rows })
    }

    /// Constant core permittivity (a one-row table).
    pub fn constant(eps: f64) -> Result<Self> {
        Self::new(vec![(1.0, eps)])
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let rows = &self.rows;
        if xi <= rows[0].0 {
            return rows[0].1;
        }
        if xi >= rows[rows.len() - 1].0 {
            return rows[rows.len() - 1].1;
        }
        let idx = rows.partition_point(|&(x, _)| x < xi);
        let (x0, e0) = rows[idx - 1];
        let (x1, e1) = rows[idx];
        let t = (xi.ln() - x0.ln()) / (x1.ln() - x0.ln());
        e0 + t * (e1 - e0)
    }

    /// Static (xi -> 0) value of the core permittivity.
    pub fn static_value(&self) -> f64 {
        self.rows[0].1
    }
}

/// Tabulated Im epsilon(omega) along the real frequency axis,
/// strictly increasing in omega (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalDataTable {
    rows: Vec<(f64, f64)>,
}

impl OpticalDataTable {
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(CasimirError::Data(
                "optical data table needs at least 2 rows".into(),
            ));
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(CasimirError::Data(
                    "optical data frequencies must be strictly increasing".into(),
                ));
            }
        }
        for &(omega, im_eps) in &rows {
            if !(omega > 0.0) || !(im_eps >= 0.0) || !im_eps.is_finite() {
                return Err(CasimirError::Data(format!(
                    "optical data rows need omega > 0 and Im eps >= 0, got ({omega}, {im_eps})"
                )));
            }
        }
        Ok(OpticalDataTable { rows })
    }

    /// Load from CSV with header `omega_ev,im_eps`; `#` starts a comment.
    pub fn load_csv<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(path)?;
        let headers = reader.headers()?.clone();
        if headers.len() < 2 || &headers[0] != "omega_ev" || &headers[1] != "im_eps" {
            return Err(CasimirError::Data(format!(
                "optical data CSV must have header omega_ev,im_eps, got {headers:?}"
            )));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let omega_ev: f64 = record[0]
                .parse()
                .map_err(|e| CasimirError::Data(format!("bad omega_ev value: {e}")))?;
            let im_eps: f64 = record[1]
                .parse()
                .map_err(|e| CasimirError::Data(format!("bad im_eps value: {e}")))?;
            rows.push((omega_ev * EV_TO_RAD_PER_S, im_eps));
        }
        Self::new(rows)
    }

    pub fn omega_min(&self) -> f64 {
        self.rows[0].0
    }

    pub fn omega_max(&self) -> f64 {
        self.rows[self.rows.len() - 1].0
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    fn interpolate(&self, omega: f64) -> f64 {
        let rows = &self.rows;
        let idx = rows.partition_point(|&(x, _)| x < omega);
        if idx == 0 {
            return rows[0].1;
        }
        if idx == rows.len() {
            return rows[rows.len() - 1].1;
        }
        let (x0, y0) = rows[idx - 1];
        let (x1, y1) = rows[idx];
        y0 + (omega - x0) / (x1 - x0) * (y1 - y0)
    }
}

/// Low-frequency extrapolation of tabulated optical data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtrapolationTail {
    Drude { omega_p: f64, gamma: f64 },
    Plasma { omega_p: f64 },
}

/// Dielectric response models along the imaginary frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    /// Dissipative free-electron response: eps = 1 + wp^2 / (xi (xi + gamma)).
    Drude { omega_p: f64, gamma: f64 },
    /// Dissipationless free-electron response: eps = 1 + wp^2 / xi^2.
    Plasma { omega_p: f64 },
    /// Plasma response plus Lorentz oscillators for core-electron bands.
    GeneralizedPlasma {
        omega_p: f64,
        oscillators: Vec<Oscillator>,
    },
    /// Dielectric with a tabulated bound-charge core and optional
    /// dc-conductivity contribution 4 pi sigma0 / xi.
    DielectricCore {
        table: StaticPermittivityTable,
        include_dc: bool,
        sigma0: f64,
    },
    /// Kramers-Kronig transform of tabulated absorption data with a
    /// Drude or plasma low-frequency tail.
    TabulatedOptical {
        data: OpticalDataTable,
        extrapolation: ExtrapolationTail,
        /// Relative tolerance of the transform quadrature.
        rel_tol: f64,
    },
}

/// Classification of epsilon(i xi) as xi -> 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroFrequencyBehavior {
    /// eps tends to a finite static value.
    Finite(f64),
    /// eps ~ coefficient / xi.
    InverseXi(f64),
    /// eps ~ coefficient / xi^2.
    InverseXiSquared(f64),
}

impl PermittivityModel {
    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        if !(omega_p > 0.0) {
            return Err(CasimirError::Config(format!(
                "plasma frequency must be positive, got {omega_p}"
            )));
        }
        if !(gamma > 0.0) {
            return Err(CasimirError::Config(format!(
                "Drude relaxation must be positive (use the plasma model for gamma = 0), got {gamma}"
            )));
        }
        Ok(PermittivityModel::Drude { omega_p, gamma })
    }

    pub fn plasma(omega_p: f64) -> Result<Self> {
        if !(omega_p > 0.0) {
            return Err(CasimirError::Config(format!(
                "plasma frequency must be positive, got {omega_p}"
            )));
        }
        Ok(PermittivityModel::Plasma { omega_p })
    }

    pub fn generalized_plasma(omega_p: f64, oscillators: Vec<Oscillator>) -> Result<Self> {
        if !(omega_p > 0.0) {
            return Err(CasimirError::Config(format!(
                "plasma frequency must be positive, got {omega_p}"
            )));
        }
        for (j, o) in oscillators.iter().enumerate() {
            if o.g < 0.0 || o.omega < 0.0 || o.gamma < 0.0 {
                return Err(CasimirError::Config(format!(
                    "oscillator {j} parameters must be >= 0, got {o:?}"
                )));
            }
        }
        Ok(PermittivityModel::GeneralizedPlasma {
            omega_p,
            oscillators,
        })
    }

    pub fn dielectric_core(
        table: StaticPermittivityTable,
        include_dc: bool,
        sigma0: f64,
    ) -> Result<Self> {
        if include_dc && !(sigma0 > 0.0) {
            return Err(CasimirError::Config(format!(
                "dc conductivity prefactor must be positive when include_dc is set, got {sigma0}"
            )));
        }
        Ok(PermittivityModel::DielectricCore {
            table,
            include_dc,
            sigma0,
        })
    }

    pub fn tabulated_optical(
        data: OpticalDataTable,
        extrapolation: ExtrapolationTail,
        rel_tol: f64,
    ) -> Result<Self> {
        match extrapolation {
            ExtrapolationTail::Drude { omega_p, gamma } => {
                if !(omega_p > 0.0) || !(gamma > 0.0) {
                    return Err(CasimirError::Config(
                        "Drude tail needs omega_p > 0 and gamma > 0".into(),
                    ));
                }
            }
            ExtrapolationTail::Plasma { omega_p } => {
                if !(omega_p > 0.0) {
                    return Err(CasimirError::Config("plasma tail needs omega_p > 0".into()));
                }
            }
        }
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(CasimirError::Config(format!(
                "transform tolerance must be in (0, 1e-2], got {rel_tol}"
            )));
        }
        Ok(PermittivityModel::TabulatedOptical {
            data,
            extrapolation,
            rel_tol,
        })
    }

    /// Conventional Au parameters, Drude extrapolation.
    pub fn au_drude() -> Self {
        PermittivityModel::drude(
            AU_OMEGA_P_EV * EV_TO_RAD_PER_S,
            AU_GAMMA_EV * EV_TO_RAD_PER_S,
        )
        .expect("Au preset parameters are valid")
    }

    /// Conventional Au parameters, plasma extrapolation.
    pub fn au_plasma() -> Self {
        PermittivityModel::plasma(AU_OMEGA_P_EV * EV_TO_RAD_PER_S)
            .expect("Au preset parameters are valid")
    }

    /// epsilon(i xi) for xi > 0.
    pub fn eval(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(CasimirError::Domain(format!(
                "permittivity evaluation needs xi > 0, got {xi}"
            )));
        }
        Ok(match self {
            PermittivityModel::Drude { omega_p, gamma } => {
                1.0 + omega_p * omega_p / (xi * (xi + gamma))
            }
            PermittivityModel::Plasma { omega_p } => 1.0 + omega_p * omega_p / (xi * xi),
            PermittivityModel::GeneralizedPlasma {
                omega_p,
                oscillators,
            } => {
                let mut eps = 1.0 + omega_p * omega_p / (xi * xi);
                for o in oscillators {
                    eps += o.g / (o.omega * o.omega + xi * xi + o.gamma * xi);
                }
                eps
            }
            PermittivityModel::DielectricCore {
                table,
                include_dc,
                sigma0,
            } => {
                let core = table.eval(xi);
                if *include_dc {
                    core + 4.0 * std::f64::consts::PI * sigma0 / xi
                } else {
                    core
                }
            }
            PermittivityModel::TabulatedOptical {
                data,
                extrapolation,
                rel_tol,
            } => kramers_kronig_imaginary_axis(data, *extrapolation, xi, *rel_tol)?,
        })
    }

    /// How epsilon(i xi) behaves as xi -> 0.
    pub fn zero_frequency_behavior(&self) -> ZeroFrequencyBehavior {
        match self {
            PermittivityModel::Drude { omega_p, gamma } => {
                ZeroFrequencyBehavior::InverseXi(omega_p * omega_p / gamma)
            }
            PermittivityModel::Plasma { omega_p }
            | PermittivityModel::GeneralizedPlasma { omega_p, .. } => {
                ZeroFrequencyBehavior::InverseXiSquared(omega_p * omega_p)
            }
            PermittivityModel::DielectricCore {
                table,
                include_dc,
                sigma0,
            } => {
                if *include_dc {
                    ZeroFrequencyBehavior::InverseXi(4.0 * std::f64::consts::PI * sigma0)
                } else {
                    ZeroFrequencyBehavior::Finite(table.static_value())
                }
            }
            PermittivityModel::TabulatedOptical { extrapolation, .. } => match extrapolation {
                ExtrapolationTail::Drude { omega_p, gamma } => {
                    ZeroFrequencyBehavior::InverseXi(omega_p * omega_p / gamma)
                }
                ExtrapolationTail::Plasma { omega_p } => {
                    ZeroFrequencyBehavior::InverseXiSquared(omega_p * omega_p)
                }
            },
        }
    }
}

/// epsilon(i xi) = 1 + (2/pi) int_0^inf omega Im eps(omega) / (omega^2 + xi^2) d omega.
///
/// Below the table's lowest frequency Im eps is supplied by the
/// extrapolation tail; above the highest frequency it is taken as zero.
/// A plasma tail contributes its exact transform omega_p^2 / xi^2
/// analytically (its absorption is concentrated at zero frequency).
pub fn kramers_kronig_imaginary_axis(
    table: &OpticalDataTable,
    extrapolation: ExtrapolationTail,
    xi: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(CasimirError::Domain(format!(
            "transform needs xi > 0, got {xi}"
        )));
    }
    let two_over_pi = std::f64::consts::FRAC_2_PI;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut budget_hit = false;

    let omega_min = table.omega_min();
    let tail_analytic = match extrapolation {
        ExtrapolationTail::Plasma { omega_p } => omega_p * omega_p / (xi * xi),
        ExtrapolationTail::Drude { omega_p, gamma } => {
            // integrand wp^2 gamma / ((w^2+gamma^2)(w^2+xi^2)) over [0, omega_min],
            // split at the two natural scales when they fall inside
            let f = |w: f64| {
                omega_p * omega_p * gamma / ((w * w + gamma * gamma) * (w * w + xi * xi))
            };
            let mut cuts = vec![0.0];
            for scale in [gamma.min(xi), gamma.max(xi)] {
                if scale > 0.0 && scale < omega_min {
                    cuts.push(scale);
                }
            }
            cuts.push(omega_min);
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            cuts.dedup();
            let mut tail = 0.0;
            for pair in cuts.windows(2) {
                let r = quad::adaptive(&f, pair[0], pair[1], rel_tol * 0.1, 0.0, 2_000);
                tail += r.value;
                err += two_over_pi * r.abs_error;
                if r.abs_error > rel_tol * 0.5 * r.value.abs().max(1e-300) {
                    budget_hit = true;
                }
            }
            two_over_pi * tail
        }
    };
    value += tail_analytic;

    // tabulated region: linear interpolation between breakpoints, panels
    // split at the breakpoints and at omega = xi when it falls inside
    let rows = table.rows();
    for pair in rows.windows(2) {
        let (w0, w1) = (pair[0].0, pair[1].0);
        let f = |w: f64| w * table.interpolate(w) / (w * w + xi * xi);
        let mut segs = vec![w0];
        if xi > w0 && xi < w1 {
            segs.push(xi);
        }
        segs.push(w1);
        for s in segs.windows(2) {
            let r = quad::adaptive(&f, s[0], s[1], rel_tol * 0.1, 0.0, 2_000);
            value += two_over_pi * r.value;
            err += two_over_pi * r.abs_error;
            if r.abs_error > rel_tol * 0.5 * r.value.abs().max(1e-300) && r.evals >= 2_000 * 30 {
                budget_hit = true;
            }
        }
    }

    let eps = 1.0 + value;
    if budget_hit && err > rel_tol * value.abs() {
        return Err(CasimirError::Convergence {
            context: "Kramers-Kronig transform".into(),
            achieved: eps,
            error_bound: err,
        });
    }
    Ok(eps)
}
