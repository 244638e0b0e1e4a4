//! Sphere(lens)-plate forces from plate-plate free energy via the
//! proximity-force approximation, including the surface-imperfection
//! correction and the imperfection search that makes one permittivity
//! model mimic another.

use std::path::Path;

use crate::error::{CasimirError, Result};
use crate::lifshitz::{free_energy_per_area, LifshitzQuery};
use crate::permittivity::PermittivityModel;
use crate::units::{ForceValue, Separation, Temperature};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Spherical lens of curvature radius R (m). The proximity-force mapping
/// assumes R >> d; callers should treat R/d < 100 as outside the intended
/// regime.
#[derive(Debug, Clone, Copy)]
pub struct SphereGeometry {
    pub radius: f64,
    pub radius_uncertainty: Option<f64>,
}

impl SphereGeometry {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(CasimirError::Config(format!(
                "lens radius must be positive, got {radius}"
            )));
        }
        Ok(SphereGeometry {
            radius,
            radius_uncertainty: None,
        })
    }

    pub fn with_uncertainty(mut self, sigma: f64) -> Self {
        self.radius_uncertainty = Some(sigma);
        self
    }

    fn check_regime(&self, d: Separation) -> Result<()> {
        if self.radius <= d.meters() {
            return Err(CasimirError::Regime(format!(
                "proximity-force mapping needs R > d, got R = {} m, d = {} m",
                self.radius,
                d.meters()
            )));
        }
        Ok(())
    }
}

/// A bubble or pit near the point of closest approach: a local patch of
/// curvature radius `r1` at the nominal separation, with the surrounding
/// lens surface displaced by `d_offset` (negative for a protrusion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Imperfection {
    pub r1: f64,
    pub d_offset: f64,
}

impl Imperfection {
    pub fn new(r1: f64, d_offset: f64) -> Result<Self> {
        if !(r1 >= 0.0) || !r1.is_finite() || !d_offset.is_finite() {
            return Err(CasimirError::Config(format!(
                "imperfection needs r1 >= 0 and finite offsets, got ({r1}, {d_offset})"
            )));
        }
        Ok(Imperfection { r1, d_offset })
    }
}

/// One patch of an explicit lens partition: curvature-radius weight
/// `r_weight` at separation offset `d_offset`. Weights of a full partition
/// must sum to the lens radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePatch {
    pub r_weight: f64,
    pub d_offset: f64,
}

/// Simple proximity-force approximation: F = 2 pi R F(d, T).
pub fn pfa_force(
    geom: &SphereGeometry,
    model: &PermittivityModel,
    d: Separation,
    temperature: Temperature,
    rel_tol: f64,
) -> Result<ForceValue> {
    geom.check_regime(d)?;
    let q = LifshitzQuery::new(d, temperature).with_rel_tol(rel_tol)?;
    let f = free_energy_per_area(model, &q)?;
    Ok(ForceValue::from_newtons(TWO_PI * geom.radius * f.value))
}

/// Imperfection-corrected proximity-force approximation for a single
/// bubble/pit: F = 2 pi (R - R1) F(d + D, T) + 2 pi R1 F(d, T).
pub fn pfa_force_imperfect(
    geom: &SphereGeometry,
    imp: &Imperfection,
    model: &PermittivityModel,
    d: Separation,
    temperature: Temperature,
    rel_tol: f64,
) -> Result<ForceValue> {
    if imp.r1 > geom.radius {
        return Err(CasimirError::Config(format!(
            "imperfection patch radius {} exceeds lens radius {}",
            imp.r1, geom.radius
        )));
    }
    let patches = [
        SurfacePatch {
            r_weight: imp.r1,
            d_offset: 0.0,
        },
        SurfacePatch {
            r_weight: geom.radius - imp.r1,
            d_offset: imp.d_offset,
        },
    ];
    pfa_force_patches(geom, &patches, model, d, temperature, rel_tol)
}

/// General additive-patch proximity force: F = Sigma_i 2 pi R_i F(d + D_i, T).
/// The curvature-radius weights must partition the lens (Sigma R_i = R).
pub fn pfa_force_patches(
    geom: &SphereGeometry,
    patches: &[SurfacePatch],
    model: &PermittivityModel,
    d: Separation,
    temperature: Temperature,
    rel_tol: f64,
) -> Result<ForceValue> {
    geom.check_regime(d)?;
    let total: f64 = patches.iter().map(|p| p.r_weight).sum();
    if (total - geom.radius).abs() > 1e-9 * geom.radius {
        return Err(CasimirError::Config(format!(
            "patch weights sum to {} m but the lens radius is {} m",
            total, geom.radius
        )));
    }
    let mut force = 0.0;
    for p in patches {
        if p.r_weight == 0.0 {
            continue;
        }
        let d_eff = d.meters() + p.d_offset;
        if !(d_eff > 0.0) {
            return Err(CasimirError::Domain(format!(
                "patch offset {} m closes the gap at separation {} m",
                p.d_offset,
                d.meters()
            )));
        }
        let q = LifshitzQuery::new(Separation::from_m(d_eff)?, temperature)
            .with_rel_tol(rel_tol)?;
        let f = free_energy_per_area(model, &q)?;
        force += TWO_PI * p.r_weight * f.value;
    }
    Ok(ForceValue::from_newtons(force))
}

/// Load an explicit patch partition from CSV with header `r1_cm,d_offset_um`.
pub fn load_patches_csv<P: AsRef<Path>>(path: P) -> Result<Vec<SurfacePatch>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.len() < 2 || &headers[0] != "r1_cm" || &headers[1] != "d_offset_um" {
        return Err(CasimirError::Data(format!(
            "imperfection CSV must have header r1_cm,d_offset_um, got {headers:?}"
        )));
    }
    let mut patches = Vec::new();
    for record in reader.records() {
        let record = record?;
        let r1_cm: f64 = record[0]
            .parse()
            .map_err(|e| CasimirError::Data(format!("bad r1_cm value: {e}")))?;
        let off_um: f64 = record[1]
            .parse()
            .map_err(|e| CasimirError::Data(format!("bad d_offset_um value: {e}")))?;
        if !(r1_cm >= 0.0) {
            return Err(CasimirError::Data(format!(
                "patch weight must be >= 0 cm, got {r1_cm}"
            )));
        }
        patches.push(SurfacePatch {
            r_weight: r1_cm * 1e-2,
            d_offset: off_um * 1e-6,
        });
    }
    if patches.is_empty() {
        return Err(CasimirError::Data("imperfection CSV has no rows".into()));
    }
    Ok(patches)
}

/// Search controls for [`find_masquerade`].
#[derive(Debug, Clone, Copy)]
pub struct MasqueradeOptions {
    /// Range of R1/R explored (coarse grid plus refinement).
    pub r1_frac_range: (f64, f64),
    /// Range of the surrounding-surface offset D (m).
    pub d_offset_range: (f64, f64),
    /// Coarse grid resolution per axis.
    pub coarse: usize,
    /// Tolerance of the free-energy evaluations behind the search.
    pub rel_tol: f64,
}

impl Default for MasqueradeOptions {
    fn default() -> Self {
        MasqueradeOptions {
            r1_frac_range: (0.5, 0.999),
            d_offset_range: (-1e-6, 1e-6),
            coarse: 60,
            rel_tol: 1e-6,
        }
    }
}

/// Outcome of the imperfection search.
#[derive(Debug, Clone, Copy)]
pub struct MasqueradeResult {
    pub imperfection: Imperfection,
    /// Largest |F_candidate - F_target| / |F_target| over the grid,
    /// evaluated with direct Lifshitz computations at the optimum.
    pub max_rel_deviation: f64,
    pub sum_sq_rel_deviation: f64,
}

/// Natural cubic spline through (x, y); x strictly increasing.
struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>, // second derivatives
}

impl CubicSpline {
    fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            let mut sub = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut sup = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            diag[0] = 1.0;
            diag[n - 1] = 1.0;
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                sub[i] = h0 / 6.0;
                diag[i] = (h0 + h1) / 3.0;
                sup[i] = h1 / 6.0;
                rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
            }
            // Thomas algorithm
            for i in 1..n {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[n - 1] = rhs[n - 1] / diag[n - 1];
            for i in (0..n - 1).rev() {
                m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
            }
        }
        CubicSpline { x, y, m }
    }

    fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        let i = self
            .x
            .partition_point(|&v| v < xq)
            .clamp(1, n - 1);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let h = x1 - x0;
        let a = (x1 - xq) / h;
        let b = (xq - x0) / h;
        a * self.y[i - 1]
            + b * self.y[i]
            + ((a * a * a - a) * self.m[i - 1] + (b * b * b - b) * self.m[i]) * h * h / 6.0
    }
}

/// Fast per-candidate force surrogate: free energy tabulated on a log grid
/// and interpolated by a cubic spline in (ln d, ln(-F)).
struct FreeEnergySurrogate {
    spline: CubicSpline,
    d_min: f64,
    d_max: f64,
}

impl FreeEnergySurrogate {
    fn build(
        model: &PermittivityModel,
        d_min: f64,
        d_max: f64,
        temperature: Temperature,
        rel_tol: f64,
    ) -> Result<Self> {
        let n = 160;
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        let log_lo = d_min.ln();
        let log_hi = d_max.ln();
        for i in 0..n {
            let ld = log_lo + (log_hi - log_lo) * i as f64 / (n - 1) as f64;
            let d = Separation::from_m(ld.exp())?;
            let q = LifshitzQuery::new(d, temperature).with_rel_tol(rel_tol)?;
            let f = free_energy_per_area(model, &q)?;
            xs.push(ld);
            ys.push((-f.value).ln());
        }
        Ok(FreeEnergySurrogate {
            spline: CubicSpline::new(xs, ys),
            d_min,
            d_max,
        })
    }

    fn free_energy(&self, d: f64) -> f64 {
        debug_assert!(d >= self.d_min * 0.999 && d <= self.d_max * 1.001);
        -self.spline.eval(d.ln()).exp()
    }
}

/// Find the single-bubble imperfection that makes `candidate` (evaluated
/// through the imperfection-corrected proximity force) best reproduce the
/// perfect-lens `targets` curve, by coarse grid search followed by
/// golden-section coordinate refinement of the summed squared relative
/// deviation.
///
/// Errors with [`CasimirError::NoMasquerade`] when even the best parameters
/// leave a maximum relative deviation of 50% or more.
pub fn find_masquerade(
    geom: &SphereGeometry,
    targets: &[(Separation, ForceValue)],
    candidate: &PermittivityModel,
    temperature: Temperature,
    opts: &MasqueradeOptions,
) -> Result<MasqueradeResult> {
    if targets.len() < 2 {
        return Err(CasimirError::Config(
            "masquerade search needs at least 2 target points".into(),
        ));
    }
    let d_lo = targets
        .iter()
        .map(|(d, _)| d.meters())
        .fold(f64::INFINITY, f64::min);
    let d_hi = targets
        .iter()
        .map(|(d, _)| d.meters())
        .fold(0.0f64, f64::max);
    let (off_lo, off_hi) = opts.d_offset_range;
    // offsets that would close the gap at the smallest separation are
    // skipped during the search rather than rejected up front
    let min_gap = 0.05 * d_lo;
    let surr_lo = (d_lo + off_lo).max(min_gap).min(d_lo);
    let surr_hi = d_hi + off_hi.max(0.0);
    let surrogate =
        FreeEnergySurrogate::build(candidate, surr_lo * 0.95, surr_hi * 1.05, temperature, opts.rel_tol)?;

    let r = geom.radius;
    let objective = |r1_frac: f64, d_off: f64| -> f64 {
        let r1 = r1_frac * r;
        let mut sum_sq = 0.0;
        for (d, f_target) in targets {
            let dm = d.meters();
            let d_eff = dm + d_off;
            if d_eff < min_gap {
                return f64::INFINITY;
            }
            let f_cand = TWO_PI * (r - r1) * surrogate.free_energy(d_eff)
                + TWO_PI * r1 * surrogate.free_energy(dm);
            let rel = (f_cand - f_target.newtons()) / f_target.newtons();
            sum_sq += rel * rel;
        }
        sum_sq
    };

    // coarse scan
    let n = opts.coarse.max(2);
    let (fr_lo, fr_hi) = opts.r1_frac_range;
    let mut best = (f64::INFINITY, fr_lo, 0.0);
    for i in 0..n {
        let fr = fr_lo + (fr_hi - fr_lo) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let off = off_lo + (off_hi - off_lo) * j as f64 / (n - 1) as f64;
            let s = objective(fr, off);
            if s < best.0 {
                best = (s, fr, off);
            }
        }
    }

    // golden-section coordinate descent around the coarse optimum
    let golden = |f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64| -> f64 {
        const PHI: f64 = 0.618_033_988_749_894_8;
        let mut c = b - PHI * (b - a);
        let mut d = a + PHI * (b - a);
        let mut fc = f(c);
        let mut fd = f(d);
        for _ in 0..60 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - PHI * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + PHI * (b - a);
                fd = f(d);
            }
        }
        0.5 * (a + b)
    };
    let cell_fr = (fr_hi - fr_lo) / (n - 1) as f64;
    let cell_off = (off_hi - off_lo) / (n - 1) as f64;
    let (mut fr, mut off) = (best.1, best.2);
    for _ in 0..3 {
        let off_now = off;
        fr = golden(
            &|x| objective(x, off_now),
            (fr - cell_fr).max(fr_lo),
            (fr + cell_fr).min(fr_hi),
        );
        let fr_now = fr;
        off = golden(
            &|x| objective(fr_now, x),
            (off - cell_off).max(off_lo),
            (off + cell_off).min(off_hi),
        );
    }
    let sum_sq = objective(fr, off);
    let (fr, off, sum_sq) = if sum_sq.is_finite() && sum_sq <= best.0 {
        (fr, off, sum_sq)
    } else {
        (best.1, best.2, best.0)
    };

    // report the achieved deviation from direct evaluations, not the surrogate
    let imp = Imperfection::new(fr * r, off)?;
    let mut max_dev = 0.0f64;
    for (d, f_target) in targets {
        let f_cand = pfa_force_imperfect(geom, &imp, candidate, *d, temperature, opts.rel_tol)?;
        let rel = ((f_cand.newtons() - f_target.newtons()) / f_target.newtons()).abs();
        max_dev = max_dev.max(rel);
    }
    let result = MasqueradeResult {
        imperfection: imp,
        max_rel_deviation: max_dev,
        sum_sq_rel_deviation: sum_sq,
    };
    if max_dev >= 0.5 {
        return Err(CasimirError::NoMasquerade {
            best_deviation: max_dev,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn au_drude() -> PermittivityModel {
        PermittivityModel::au_drude()
    }

    fn t300() -> Temperature {
        Temperature::from_kelvin(300.0).unwrap()
    }

    #[test]
    fn force_is_linear_in_radius() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g1 = SphereGeometry::new(0.156).unwrap();
        let g2 = SphereGeometry::new(0.312).unwrap();
        let f1 = pfa_force(&g1, &model, d, t300(), 1e-7).unwrap();
        let f2 = pfa_force(&g2, &model, d, t300(), 1e-7).unwrap();
        assert!(f1.newtons() < 0.0);
        assert!((f2.newtons() / f1.newtons() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn plasma_force_near_doubled_asymptote_at_seven_microns() {
        use crate::constants::{K_B, ZETA3};
        let model = PermittivityModel::au_plasma();
        let d = Separation::from_um(7.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let f = pfa_force(&g, &model, d, t300(), 1e-8).unwrap();
        let asym = -2.0 * ZETA3 * 0.156 * K_B * 300.0 / (8.0 * 7e-6 * 7e-6);
        assert!(
            ((f.newtons() - asym) / asym).abs() < 0.05,
            "force = {}, asym = {asym}",
            f.newtons()
        );
    }

    #[test]
    fn zero_offset_reduces_to_simple_pfa() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let simple = pfa_force(&g, &model, d, t300(), 1e-8).unwrap();
        let imp = Imperfection::new(0.05, 0.0).unwrap();
        let corrected = pfa_force_imperfect(&g, &imp, &model, d, t300(), 1e-8).unwrap();
        assert!(
            ((corrected.newtons() - simple.newtons()) / simple.newtons()).abs() < 1e-7,
            "corrected = {}, simple = {}",
            corrected.newtons(),
            simple.newtons()
        );
    }

    #[test]
    fn full_coverage_patch_reduces_to_simple_pfa() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let simple = pfa_force(&g, &model, d, t300(), 1e-8).unwrap();
        let imp = Imperfection::new(0.156, 0.5e-6).unwrap();
        let corrected = pfa_force_imperfect(&g, &imp, &model, d, t300(), 1e-8).unwrap();
        assert!(((corrected.newtons() - simple.newtons()) / simple.newtons()).abs() < 1e-7);
    }

    #[test]
    fn vanishing_patch_shifts_whole_lens() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let simple = pfa_force(&g, &model, d, t300(), 1e-8).unwrap();
        let imp = Imperfection::new(0.0, 0.5e-6).unwrap();
        let shifted = pfa_force_imperfect(&g, &imp, &model, d, t300(), 1e-8).unwrap();
        let direct = pfa_force(
            &g,
            &model,
            Separation::from_um(1.5).unwrap(),
            t300(),
            1e-8,
        )
        .unwrap();
        assert!(((shifted.newtons() - direct.newtons()) / direct.newtons()).abs() < 1e-7);
        // moving area farther away weakens attraction
        assert!(shifted.newtons().abs() < simple.newtons().abs());
    }

    #[test]
    fn positive_offsets_never_strengthen() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let simple = pfa_force(&g, &model, d, t300(), 1e-7).unwrap();
        for (r1_frac, off_um) in [(0.3, 0.2), (0.7, 1.0), (0.9, 0.05)] {
            let imp = Imperfection::new(r1_frac * 0.156, off_um * 1e-6).unwrap();
            let f = pfa_force_imperfect(&g, &imp, &model, d, t300(), 1e-7).unwrap();
            assert!(f.newtons().abs() <= simple.newtons().abs() * (1.0 + 1e-9));
        }
    }

    #[test]
    fn continuity_at_zero_offset() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let imp0 = Imperfection::new(0.08, 0.0).unwrap();
        let f0 = pfa_force_imperfect(&g, &imp0, &model, d, t300(), 1e-8).unwrap();
        let imp_eps = Imperfection::new(0.08, 1e-10).unwrap();
        let f_eps = pfa_force_imperfect(&g, &imp_eps, &model, d, t300(), 1e-8).unwrap();
        assert!(((f_eps.newtons() - f0.newtons()) / f0.newtons()).abs() < 1e-3);
    }

    #[test]
    fn patch_partition_must_sum_to_radius() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let bad = [
            SurfacePatch {
                r_weight: 0.05,
                d_offset: 0.0,
            },
            SurfacePatch {
                r_weight: 0.05,
                d_offset: 1e-7,
            },
        ];
        assert!(matches!(
            pfa_force_patches(&g, &bad, &model, d, t300(), 1e-7),
            Err(CasimirError::Config(_))
        ));
    }

    #[test]
    fn gap_closing_offset_rejected() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let imp = Imperfection::new(0.05, -1.5e-6).unwrap();
        assert!(matches!(
            pfa_force_imperfect(&g, &imp, &model, d, t300(), 1e-7),
            Err(CasimirError::Domain(_))
        ));
    }

    #[test]
    fn patch_list_is_additive() {
        let model = au_drude();
        let d = Separation::from_um(1.0).unwrap();
        let g = SphereGeometry::new(0.156).unwrap();
        let parts = [
            SurfacePatch {
                r_weight: 0.1,
                d_offset: 0.0,
            },
            SurfacePatch {
                r_weight: 0.04,
                d_offset: 2e-7,
            },
            SurfacePatch {
                r_weight: 0.016,
                d_offset: 5e-7,
            },
        ];
        let whole = pfa_force_patches(&g, &parts, &model, d, t300(), 1e-8)
            .unwrap()
            .newtons();
        let mut by_hand = 0.0;
        for p in &parts {
            let dd = Separation::from_m(d.meters() + p.d_offset).unwrap();
            let q = LifshitzQuery::new(dd, t300()).with_rel_tol(1e-8).unwrap();
            by_hand += TWO_PI * p.r_weight * free_energy_per_area(&model, &q).unwrap().value;
        }
        assert!(((whole - by_hand) / by_hand).abs() < 1e-12);
    }

    #[test]
    fn regime_check_rejects_radius_below_separation() {
        let model = au_drude();
        let g = SphereGeometry::new(1e-7).unwrap();
        let d = Separation::from_um(1.0).unwrap();
        assert!(matches!(
            pfa_force(&g, &model, d, t300(), 1e-7),
            Err(CasimirError::Regime(_))
        ));
    }

    #[test]
    fn masquerade_identity_recovers_zero_deviation() {
        // target generated by the same model with a perfect lens: the
        // optimizer must land on a configuration equivalent to D = 0
        let model = au_drude();
        let g = SphereGeometry::new(0.156).unwrap();
        let mut targets = Vec::new();
        for i in 0..8 {
            let d = Separation::from_um(0.8 + 0.25 * i as f64).unwrap();
            let f = pfa_force(&g, &model, d, t300(), 1e-8).unwrap();
            targets.push((d, f));
        }
        let opts = MasqueradeOptions {
            coarse: 24,
            ..MasqueradeOptions::default()
        };
        let res = find_masquerade(&g, &targets, &model, t300(), &opts).unwrap();
        assert!(
            res.max_rel_deviation < 5e-3,
            "identity masquerade deviation = {}",
            res.max_rel_deviation
        );
    }

    #[test]
    fn patches_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("imps.csv");
        std::fs::write(&path, "# partition\nr1_cm,d_offset_um\n10.0,0.0\n5.6,0.4\n").unwrap();
        let ps = load_patches_csv(&path).unwrap();
        assert_eq!(ps.len(), 2);
        assert!((ps[0].r_weight - 0.1).abs() < 1e-12);
        assert!((ps[1].d_offset - 4e-7).abs() < 1e-15);
        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "a,b\n1,2\n").unwrap();
        assert!(load_patches_csv(&bad).is_err());
    }
}
