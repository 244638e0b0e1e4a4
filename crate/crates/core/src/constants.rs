//! Physical constants in SI units.
//!
//! Values from CODATA 2018 recommended values. Everything downstream
//! computes in SI; unit conversion happens only at the I/O boundaries.

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;

/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;

/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_8128e-12;

/// Elementary charge (C); 1 eV in joules.
pub const EV: f64 = 1.602_176_634e-19;

/// Riemann zeta(3), used in the closed-form large-separation asymptotics.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Conversion factor from photon energy in eV to angular frequency in rad/s,
/// omega = E / hbar.
pub const EV_TO_RAD_PER_S: f64 = EV / HBAR;
