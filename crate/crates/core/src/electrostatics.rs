//! Electrostatic forces in the lens-plate configuration: the large-patch
//! term, the applied/residual-voltage force, and the admissible patch-size
//! window.
//!
//! Patches smaller than the separation contribute an exponentially small
//! force and are treated as exactly zero here; only the large-patch
//! 1/d law is modelled.

use crate::constants::EPS0;
use crate::error::{CasimirError, Result};
use crate::units::{ForceValue, Separation};

use std::f64::consts::PI;

/// Voltages entering the electrostatic force model (all in volts).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectrostaticParams {
    /// Applied voltage between lens and plate.
    pub v: f64,
    /// Residual potential difference, nearly separation-independent.
    pub v_m: f64,
    /// rms scale of the patch-voltage fluctuations.
    pub v_rms: f64,
}

impl ElectrostaticParams {
    pub fn new(v: f64, v_m: f64, v_rms: f64) -> Result<Self> {
        if !(v_rms >= 0.0) || !v.is_finite() || !v_m.is_finite() {
            return Err(CasimirError::Config(format!(
                "electrostatic params need finite voltages and v_rms >= 0, got v={v}, v_m={v_m}, v_rms={v_rms}"
            )));
        }
        Ok(ElectrostaticParams { v, v_m, v_rms })
    }
}

/// Admissible size window d << lambda << sqrt(R d) for large patches.
#[derive(Debug, Clone, Copy)]
pub struct PatchScaleReport {
    /// Effective interaction radius sqrt(R d) (m).
    pub r_eff: f64,
    /// Lower admissible patch size, the separation itself (m).
    pub lambda_lo: f64,
    /// Upper admissible patch size, r_eff (m).
    pub lambda_hi: f64,
    /// Geometric midpoint of the window (m).
    pub lambda_geo: f64,
}

/// Large-patch electrostatic force: -pi eps0 R V_rms^2 / d.
pub fn patch_force(radius: f64, v_rms: f64, d: Separation) -> Result<ForceValue> {
    if !(radius > 0.0) {
        return Err(CasimirError::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    Ok(ForceValue::from_newtons(
        -PI * EPS0 * radius * v_rms * v_rms / d.meters(),
    ))
}

/// Total electrostatic force under an applied voltage V:
/// -pi eps0 R [ (V - V_m)^2 / d + V_rms^2 / d ].
pub fn applied_voltage_force(
    radius: f64,
    params: &ElectrostaticParams,
    d: Separation,
) -> Result<ForceValue> {
    if !(radius > 0.0) {
        return Err(CasimirError::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let dv = params.v - params.v_m;
    Ok(ForceValue::from_newtons(
        -PI * EPS0 * radius * (dv * dv + params.v_rms * params.v_rms) / d.meters(),
    ))
}

/// The window of patch sizes whose force follows the large-patch law.
pub fn patch_scale_window(radius: f64, d: Separation) -> Result<PatchScaleReport> {
    let dm = d.meters();
    if !(radius > dm) {
        return Err(CasimirError::Regime(format!(
            "patch-size window needs R > d, got R = {radius} m, d = {dm} m"
        )));
    }
    let r_eff = (radius * dm).sqrt();
    Ok(PatchScaleReport {
        r_eff,
        lambda_lo: dm,
        lambda_hi: r_eff,
        lambda_geo: (dm * r_eff).sqrt(),
    })
}
