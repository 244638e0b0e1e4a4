//! Free energy, pressure and entropy of two parallel plates from the
//! Matsubara representation of the Lifshitz formula.
//!
//! Geometry-independent kernels: everything here is per unit plate area.
//! The k-integral of every Matsubara term is taken over the dimensionless
//! variable y = 2 q d, which normalizes the exponential decay uniformly
//! across separations; the term then reads
//!
//!   K_F(xi) = int_{y_xi}^inf y [ln(1 - r_TM^2 e^-y) + ln(1 - r_TE^2 e^-y)] dy
//!
//! with y_xi = 2 xi d / c, and the free energy per area is
//! kT/(8 pi d^2) Sigma' K_F(xi_l). The zero Matsubara term is built from the
//! model's xi -> 0 classification, never by evaluating epsilon at xi = 0:
//! perfectly reflecting TM gives the closed form -zeta(3), partially
//! reflecting interfaces give trilogarithms, and the TE term survives only
//! for models whose epsilon diverges as 1/xi^2.
//!
//! The pressure has its own kernel (y^2-weighted) rather than a numerical
//! derivative of the free energy, which would lose precision to
//! cancellation. T = 0 replaces the Matsubara sum by a continuous
//! frequency integral.

use rayon::prelude::*;

use crate::constants::{C, HBAR, K_B, ZETA3};
use crate::error::{CasimirError, Result};
use crate::permittivity::{PermittivityModel, ZeroFrequencyBehavior};
use crate::quad;
use crate::special::li3;
use crate::units::{ForceValue, Separation, Temperature};

/// Numerical-control bundle for one free-energy or pressure evaluation.
#[derive(Debug, Clone, Copy)]
pub struct LifshitzQuery {
    pub d: Separation,
    pub temperature: Temperature,
    pub rel_tol: f64,
    pub max_matsubara_terms: usize,
}

impl LifshitzQuery {
    pub fn new(d: Separation, temperature: Temperature) -> Self {
        LifshitzQuery {
            d,
            temperature,
            rel_tol: 1e-7,
            max_matsubara_terms: 1_000_000,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(CasimirError::Config(format!(
                "rel_tol must be in (0, 1e-2], got {rel_tol}"
            )));
        }
        self.rel_tol = rel_tol;
        Ok(self)
    }

    pub fn with_max_matsubara_terms(mut self, max: usize) -> Result<Self> {
        if max < 10 {
            return Err(CasimirError::Config(format!(
                "max_matsubara_terms must be >= 10, got {max}"
            )));
        }
        self.max_matsubara_terms = max;
        Ok(self)
    }
}

/// Free energy per unit plate area (J/m^2); negative means attraction.
#[derive(Debug, Clone, Copy)]
pub struct FreeEnergyPerArea {
    pub value: f64,
    pub est_error: f64,
}

/// Matsubara frequencies xi_l = 2 pi k_B T l / hbar for l = 1..=count.
/// The l = 0 term is handled separately inside the sums with half weight.
pub fn matsubara_frequencies(temperature: Temperature, count: usize) -> Result<Vec<f64>> {
    if temperature.is_zero() {
        return Err(CasimirError::Domain(
            "T = 0 has no discrete Matsubara spectrum; use the zero-temperature integral".into(),
        ));
    }
    if count < 1 {
        return Err(CasimirError::Domain("count must be >= 1".into()));
    }
    let xi1 = 2.0 * std::f64::consts::PI * K_B * temperature.kelvin() / HBAR;
    Ok((1..=count).map(|l| xi1 * l as f64).collect())
}

/// Fresnel reflection coefficients on the imaginary frequency axis for a
/// vacuum / epsilon interface: returns (r_TM, r_TE).
pub fn reflection_coefficients(eps: f64, k: f64, xi: f64) -> Result<(f64, f64)> {
    if !(eps >= 1.0) || !eps.is_finite() {
        return Err(CasimirError::Domain(format!(
            "reflection needs eps >= 1, got {eps}"
        )));
    }
    if k < 0.0 || xi < 0.0 || (k == 0.0 && xi == 0.0) {
        return Err(CasimirError::Domain(
            "reflection needs k >= 0, xi >= 0, not both zero".into(),
        ));
    }
    let xi_c2 = (xi / C) * (xi / C);
    let q = (k * k + xi_c2).sqrt();
    let k1 = (k * k + eps * xi_c2).sqrt();
    let r_tm = (eps * q - k1) / (eps * q + k1);
    let r_te = (q - k1) / (q + k1);
    Ok((r_tm, r_te))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    FreeEnergy,
    Pressure,
}

/// Dimensionless k-integral of one Matsubara term with xi > 0.
fn term_kernel(eps: f64, xi: f64, d: f64, kernel: Kernel, rel_tol: f64) -> quad::QuadResult {
    let y_xi = 2.0 * xi * d / C;
    let a = (eps - 1.0) * (xi / C) * (xi / C); // k1^2 - q^2, in 1/m^2
    let inv_2d = 1.0 / (2.0 * d);
    let f = move |y: f64| {
        let q = y * inv_2d;
        let k1 = (q * q + a).sqrt();
        let r_tm = (eps * q - k1) / (eps * q + k1);
        let r_te = (q - k1) / (q + k1);
        let e = (-y).exp();
        match kernel {
            Kernel::FreeEnergy => {
                y * ((-r_tm * r_tm * e).ln_1p() + (-r_te * r_te * e).ln_1p())
            }
            Kernel::Pressure => {
                let t1 = r_tm * r_tm * e;
                let t2 = r_te * r_te * e;
                y * y * (t1 / (1.0 - t1) + t2 / (1.0 - t2))
            }
        }
    };
    quad::integrate_decaying(&f, y_xi, 2.0, rel_tol, 4_000)
}

/// Zero-frequency Matsubara term from the model's xi -> 0 classification.
///
/// TM: a diverging epsilon reflects perfectly, giving the closed forms
/// -zeta(3) (free energy) and 2 zeta(3) (pressure); a finite static epsilon
/// gives the trilogarithm of the squared static reflection coefficient.
/// TE: only a 1/xi^2 divergence (plasma-like) leaves a nonzero reflection,
/// evaluated by quadrature; 1/xi (Drude-like) and finite models give zero.
fn zero_mode_kernel(
    behavior: ZeroFrequencyBehavior,
    d: f64,
    kernel: Kernel,
    rel_tol: f64,
) -> quad::QuadResult {
    let tm = match behavior {
        ZeroFrequencyBehavior::Finite(eps0) => {
            let r2 = ((eps0 - 1.0) / (eps0 + 1.0)).powi(2);
            match kernel {
                Kernel::FreeEnergy => -li3(r2),
                Kernel::Pressure => 2.0 * li3(r2),
            }
        }
        _ => match kernel {
            Kernel::FreeEnergy => -ZETA3,
            Kernel::Pressure => 2.0 * ZETA3,
        },
    };
    let te = match behavior {
        ZeroFrequencyBehavior::InverseXiSquared(c0) => {
            let a0 = c0 / (C * C);
            let inv_2d = 1.0 / (2.0 * d);
            let f = move |y: f64| {
                let q = y * inv_2d;
                let k1 = (q * q + a0).sqrt();
                let r = (q - k1) / (q + k1);
                let e = (-y).exp();
                match kernel {
                    Kernel::FreeEnergy => y * (-r * r * e).ln_1p(),
                    Kernel::Pressure => {
                        let t = r * r * e;
                        y * y * (t / (1.0 - t))
                    }
                }
            };
            quad::integrate_decaying(&f, 0.0, 2.0, rel_tol, 4_000)
        }
        _ => quad::QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evals: 0,
        },
    };
    quad::QuadResult {
        value: tm + te.value,
        abs_error: te.abs_error,
        evals: te.evals,
    }
}

/// Matsubara sum Sigma'_l K(xi_l) including the half-weight l = 0 term.
/// Returns (sum, error bound incl. the geometric tail estimate).
fn matsubara_sum(
    model: &PermittivityModel,
    d: f64,
    t_kelvin: f64,
    kernel: Kernel,
    rel_tol: f64,
    max_terms: usize,
) -> Result<(f64, f64)> {
    const CHUNK: usize = 16;
    let xi1 = 2.0 * std::f64::consts::PI * K_B * t_kelvin / HBAR;
    let inner_tol = rel_tol * 0.125;

    let zero = zero_mode_kernel(model.zero_frequency_behavior(), d, kernel, inner_tol);
    let mut sum = 0.5 * zero.value;
    let mut comp = 0.0; // Kahan compensation
    let mut err = 0.5 * zero.abs_error;

    let mut l_start = 1usize;
    let mut prev_block_last: Option<f64> = None;
    loop {
        let block: Vec<quad::QuadResult> = (l_start..l_start + CHUNK)
            .into_par_iter()
            .map(|l| -> Result<quad::QuadResult> {
                let xi = xi1 * l as f64;
                let eps = model.eval(xi)?;
                Ok(term_kernel(eps, xi, d, kernel, inner_tol))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut last = 0.0;
        for r in &block {
            // compensated accumulation keeps long low-temperature sums exact
            let y = r.value - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            err += r.abs_error;
            last = r.value.abs();
        }
        let l_last = l_start + CHUNK - 1;
        let y_last = 2.0 * xi1 * l_last as f64 * d / C;
        // per-term decay measured across one block; at low temperature the
        // ratio is close to 1 and the geometric tail last * rho / (1 - rho)
        // is many times the last term, so the stop test must bound the tail
        // itself, not the term
        let tail = if last == 0.0 {
            // terms have underflown entirely
            Some(0.0)
        } else {
            prev_block_last
                .filter(|&p| p > 0.0 && last < p)
                .map(|p| {
                    let rho = (last / p).powf(1.0 / CHUNK as f64).clamp(1e-30, 0.9999);
                    last * rho / (1.0 - rho)
                })
        };
        if let Some(tail) = tail {
            if tail < 0.25 * rel_tol * sum.abs() && y_last > 10.0 {
                err += tail;
                return Ok((sum, err));
            }
        }
        prev_block_last = if last > 0.0 { Some(last) } else { prev_block_last };
        l_start += CHUNK;
        if l_start > max_terms {
            let tail = tail.unwrap_or(last * 1e4);
            return Err(CasimirError::Convergence {
                context: format!("Matsubara sum truncated at {max_terms} terms"),
                achieved: sum,
                error_bound: err + tail,
            });
        }
    }
}

/// Continuous-frequency integral int_0^inf K(xi(x)) dx over x = 2 xi d / c,
/// replacing the Matsubara sum at T = 0.
fn zero_temperature_integral(
    model: &PermittivityModel,
    d: f64,
    kernel: Kernel,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let inner_tol = rel_tol * 0.1;
    let xi_of_x = C / (2.0 * d);
    // inner kernel failures (possible for tabulated models) surface as NaN
    // and are rejected after integration
    let f = |x: f64| {
        let xi = (x * xi_of_x).max(f64::MIN_POSITIVE);
        match model.eval(xi) {
            Ok(eps) => term_kernel(eps, xi, d, kernel, inner_tol).value,
            Err(_) => f64::NAN,
        }
    };
    let r = quad::integrate_decaying(&f, 0.0, 0.5, rel_tol * 0.5, 4_000);
    if !r.value.is_finite() {
        return Err(CasimirError::Convergence {
            context: "zero-temperature frequency integral".into(),
            achieved: r.value,
            error_bound: f64::INFINITY,
        });
    }
    Ok((r.value, r.abs_error + inner_tol * r.value.abs()))
}

/// Casimir free energy per unit area between parallel plates.
pub fn free_energy_per_area(
    model: &PermittivityModel,
    query: &LifshitzQuery,
) -> Result<FreeEnergyPerArea> {
    validate_query(query)?;
    let d = query.d.meters();
    let t = query.temperature.kelvin();
    let (value, est_error) = if query.temperature.is_zero() {
        let (k, e) = zero_temperature_integral(model, d, Kernel::FreeEnergy, query.rel_tol)?;
        let pref = HBAR * C / (32.0 * std::f64::consts::PI.powi(2) * d.powi(3));
        (pref * k, pref * e)
    } else {
        let (k, e) = matsubara_sum(
            model,
            d,
            t,
            Kernel::FreeEnergy,
            query.rel_tol,
            query.max_matsubara_terms,
        )?;
        let pref = K_B * t / (8.0 * std::f64::consts::PI * d * d);
        (pref * k, pref * e)
    };
    Ok(FreeEnergyPerArea { value, est_error })
}

/// Casimir pressure between parallel plates (Pa, negative = attractive),
/// computed from its own Matsubara kernel.
pub fn casimir_pressure(model: &PermittivityModel, query: &LifshitzQuery) -> Result<f64> {
    validate_query(query)?;
    let d = query.d.meters();
    let t = query.temperature.kelvin();
    if query.temperature.is_zero() {
        let (k, _) = zero_temperature_integral(model, d, Kernel::Pressure, query.rel_tol)?;
        Ok(-HBAR * C / (32.0 * std::f64::consts::PI.powi(2) * d.powi(4)) * k)
    } else {
        let (k, _) = matsubara_sum(
            model,
            d,
            t,
            Kernel::Pressure,
            query.rel_tol,
            query.max_matsubara_terms,
        )?;
        Ok(-K_B * t / (8.0 * std::f64::consts::PI * d.powi(3)) * k)
    }
}

/// Entropy per unit plate area S = -dF/dT by central difference, with both
/// free-energy evaluations at tolerance rel_tol / 10.
pub fn entropy_per_area(
    model: &PermittivityModel,
    d: Separation,
    temperature: Temperature,
    dt: f64,
    rel_tol: f64,
) -> Result<f64> {
    let t = temperature.kelvin();
    if !(dt > 0.0 && t > dt) {
        return Err(CasimirError::Domain(format!(
            "entropy needs T > dT > 0, got T = {t}, dT = {dt}"
        )));
    }
    let tight = (rel_tol * 0.1).min(1e-2);
    let hi = LifshitzQuery::new(d, Temperature::from_kelvin(t + dt)?).with_rel_tol(tight)?;
    let lo = LifshitzQuery::new(d, Temperature::from_kelvin(t - dt)?).with_rel_tol(tight)?;
    let f_hi = free_energy_per_area(model, &hi)?;
    let f_lo = free_energy_per_area(model, &lo)?;
    Ok(-(f_hi.value - f_lo.value) / (2.0 * dt))
}

/// Low-frequency extrapolation choice for the closed-form asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    Drude,
    Plasma,
}

/// Classical large-separation sphere-plate force:
/// -zeta(3) R k_B T / (8 d^2) in the Drude approach, twice that for plasma.
pub fn asymptotic_force(
    approach: Approach,
    radius: f64,
    d: Separation,
    temperature: Temperature,
) -> Result<ForceValue> {
    if !(radius > 0.0) {
        return Err(CasimirError::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if temperature.is_zero() {
        return Err(CasimirError::Domain(
            "the classical asymptote needs T > 0".into(),
        ));
    }
    let denom = match approach {
        Approach::Drude => 8.0,
        Approach::Plasma => 4.0,
    };
    let dm = d.meters();
    Ok(ForceValue::from_newtons(
        -ZETA3 * radius * K_B * temperature.kelvin() / (denom * dm * dm),
    ))
}

fn validate_query(query: &LifshitzQuery) -> Result<()> {
    if !(query.rel_tol > 0.0 && query.rel_tol <= 1e-2) {
        return Err(CasimirError::Config(format!(
            "rel_tol must be in (0, 1e-2], got {}",
            query.rel_tol
        )));
    }
    if query.max_matsubara_terms < 10 {
        return Err(CasimirError::Config(
            "max_matsubara_terms must be >= 10".into(),
        ));
    }
    Ok(())
}

/// The l = 0 transverse-electric contribution to the free energy per area.
/// Zero for Drude-like models, strictly negative for plasma-like ones; this
/// single term is what doubles the classical force at large separation.
pub fn zero_mode_te_free_energy(
    model: &PermittivityModel,
    d: Separation,
    temperature: Temperature,
) -> Result<f64> {
    if temperature.is_zero() {
        return Err(CasimirError::Domain(
            "the zero Matsubara mode needs T > 0".into(),
        ));
    }
    let dm = d.meters();
    let te = match model.zero_frequency_behavior() {
        ZeroFrequencyBehavior::InverseXiSquared(c0) => {
            let a0 = c0 / (C * C);
            let inv_2d = 1.0 / (2.0 * dm);
            let f = move |y: f64| {
                let q = y * inv_2d;
                let k1 = (q * q + a0).sqrt();
                let r = (q - k1) / (q + k1);
                y * (-r * r * (-y).exp()).ln_1p()
            };
            quad::integrate_decaying(&f, 0.0, 2.0, 1e-10, 4_000).value
        }
        _ => 0.0,
    };
    let pref = K_B * temperature.kelvin() / (8.0 * std::f64::consts::PI * dm * dm);
    Ok(0.5 * pref * te)
}
