//! Thermal Casimir forces between metal and dielectric bodies.
//!
//! The crate computes the free energy, pressure and entropy of two parallel
//! plates from dielectric permittivity models evaluated along the imaginary
//! frequency axis (Matsubara representation of the Lifshitz formula), maps
//! them to sphere(lens)-plate forces through perfect and
//! imperfection-corrected proximity-force approximations, models the
//! electrostatic forces of large surface patches and applied voltages, and
//! fits measured force-distance curves with an exact two-parameter weighted
//! least-squares procedure plus chi-squared tail statistics.

pub mod constants;
pub mod electrostatics;
pub mod error;
pub mod fitstats;
pub mod geometry;
pub mod lifshitz;
pub mod permittivity;
pub mod quad;
pub mod special;
pub mod units;

pub use error::{CasimirError, Result};
pub use units::{ForceValue, Separation, Temperature};
