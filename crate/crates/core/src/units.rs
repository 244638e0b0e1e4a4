//! Unit-carrying value types and boundary conversions.
//!
//! Internals are strictly SI. The constructors below are the only places
//! where micrometres, nanometres, millivolts, piconewtons or electronvolts
//! enter or leave the crate.

use crate::constants::EV_TO_RAD_PER_S;
use crate::error::{CasimirError, Result};

/// Surface-to-surface distance, stored in metres.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Separation(f64);

impl Separation {
    pub fn from_m(d: f64) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(CasimirError::Domain(format!(
                "separation must be positive and finite, got {d} m"
            )));
        }
        Ok(Separation(d))
    }

    pub fn from_um(d_um: f64) -> Result<Self> {
        Self::from_m(d_um * 1e-6)
    }

    pub fn from_nm(d_nm: f64) -> Result<Self> {
        Self::from_m(d_nm * 1e-9)
    }

    pub fn meters(self) -> f64 {
        self.0
    }

    pub fn micrometers(self) -> f64 {
        self.0 * 1e6
    }
}

/// Absolute temperature in kelvin. T = 0 selects the zero-temperature
/// integral formulation of the Lifshitz formula.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn from_kelvin(t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(CasimirError::Domain(format!(
                "temperature must be >= 0 K and finite, got {t} K"
            )));
        }
        Ok(Temperature(t))
    }

    pub fn zero() -> Self {
        Temperature(0.0)
    }

    pub fn kelvin(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// A force in newtons. Attractive forces are negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ForceValue(f64);

impl ForceValue {
    pub fn from_newtons(f: f64) -> Self {
        ForceValue(f)
    }

    pub fn from_piconewtons(f_pn: f64) -> Self {
        ForceValue(f_pn * 1e-12)
    }

    pub fn newtons(self) -> f64 {
        self.0
    }

    pub fn piconewtons(self) -> f64 {
        self.0 * 1e12
    }

    pub fn is_attractive(self) -> bool {
        self.0 < 0.0
    }
}

/// Photon energy in eV to angular frequency in rad/s.
pub fn energy_ev_to_angular_frequency(e_ev: f64) -> Result<f64> {
    if !(e_ev >= 0.0) || !e_ev.is_finite() {
        return Err(CasimirError::Domain(format!(
            "energy must be >= 0 eV and finite, got {e_ev}"
        )));
    }
    Ok(e_ev * EV_TO_RAD_PER_S)
}

/// Millivolts to volts.
pub fn mv_to_v(v_mv: f64) -> f64 {
    v_mv * 1e-3
}

/// Centimetres to metres.
pub fn cm_to_m(x_cm: f64) -> f64 {
    x_cm * 1e-2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_conversion_matches_hand_evaluation() {
        assert_eq!(energy_ev_to_angular_frequency(0.0).unwrap(), 0.0);
        let one_ev = energy_ev_to_angular_frequency(1.0).unwrap();
        assert!((one_ev - 1.519_267_448_809_510_5e15).abs() / one_ev < 1e-10);
        let nine = energy_ev_to_angular_frequency(9.0).unwrap();
        assert_eq!(nine, 9.0 * one_ev);
    }

    #[test]
    fn negative_energy_rejected() {
        assert!(energy_ev_to_angular_frequency(-1.0).is_err());
        assert!(energy_ev_to_angular_frequency(f64::NAN).is_err());
    }

    #[test]
    fn separation_validation() {
        assert!(Separation::from_m(0.0).is_err());
        assert!(Separation::from_m(-1e-6).is_err());
        assert!(Separation::from_um(1.0).unwrap().meters() == 1e-6);
        let d = Separation::from_nm(700.0).unwrap().meters();
        assert!((d - 7e-7).abs() / 7e-7 < 1e-15);
    }

    #[test]
    fn round_trip_conversions_tight() {
        // um <-> m, pN <-> N, mV <-> V round trips are exact to 1e-12 relative.
        for &x in &[0.7, 1.0, 3.33, 7.29, 162.0] {
            let d = Separation::from_um(x).unwrap();
            assert!((d.micrometers() - x).abs() / x < 1e-12);
            let f = ForceValue::from_piconewtons(-x);
            assert!((f.piconewtons() + x).abs() / x < 1e-12);
            assert!((mv_to_v(x) * 1e3 - x).abs() / x < 1e-12);
        }
    }

    #[test]
    fn temperature_zero_is_allowed_and_flagged() {
        let t = Temperature::from_kelvin(0.0).unwrap();
        assert!(t.is_zero());
        assert!(Temperature::from_kelvin(-1.0).is_err());
    }
}
