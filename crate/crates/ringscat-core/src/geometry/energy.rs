//! Weak and dominant energy conditions for the extended stress-energy.
//!
//! The negative stress-energy splits as
//! `−T̃ = 𝔔(F dt² − F⁻¹dr² + r²dω²) − 𝔇(W dt + dz)²`, so timelike vectors see
//! a non-negative energy exactly where `m²𝔇 ≤ 𝔔`.

use rand::Rng;

use super::tensors::{inverse_metric_closed_form, metric, stress_tensors};
use super::{HorizonStructure, SpacetimeParams, SpacetimePoint};
use crate::error::CoreError;
use crate::linalg::{bilinear5, matvec5, Mat5};

/// `𝔔(r) = (Q²/2r⁴)(1 − q²/(2m²))`.
pub fn mathfrak_q(p: &SpacetimeParams, r: f64) -> f64 {
    let r2 = r * r;
    p.charge * p.charge / (2.0 * r2 * r2) * (1.0 - p.q * p.q / (2.0 * p.m * p.m))
}

/// `𝔇(r) = Λ/m² + 3q²Q²/(4m⁴r⁴)`.
pub fn mathfrak_d(p: &SpacetimeParams, r: f64) -> f64 {
    let m2 = p.m * p.m;
    let s = p.s();
    let r2 = r * r;
    p.lambda / m2 + 3.0 * s * s / (4.0 * m2 * m2 * r2 * r2)
}

/// `𝔔(r) − m²𝔇(r) = (Q²/2r⁴)(1 − 2q²/m²) − Λ`; non-negative exactly where
/// every timelike vector sees non-negative energy.
pub fn local_energy_margin(p: &SpacetimeParams, r: f64) -> f64 {
    mathfrak_q(p, r) - p.m * p.m * mathfrak_d(p, r)
}

/// Result of [`dominant_energy_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominantEnergyReport {
    /// `m²𝔇 ≤ 𝔔` on all of `[r_-, r_+]`.
    pub holds: bool,
    /// Minimum of `𝔔 − m²𝔇` over `[r_-, r_+]`.
    pub margin: f64,
    /// The equivalent bound `(Q²/2r_+⁴)(1 − 2q²/m²)` on `Λ`.
    pub lambda_bound: f64,
}

/// Evaluates the dominant energy condition across the outer block. The
/// margin is monotone in `r`, so its minimum sits at one of the horizons.
pub fn dominant_energy_check(p: &SpacetimeParams, h: &HorizonStructure) -> DominantEnergyReport {
    let a = local_energy_margin(p, h.r_minus);
    let b = local_energy_margin(p, h.r_plus);
    let margin = a.min(b);
    let rp2 = h.r_plus * h.r_plus;
    let lambda_bound =
        p.charge * p.charge / (2.0 * rp2 * rp2) * (1.0 - 2.0 * p.q * p.q / (p.m * p.m));
    DominantEnergyReport { holds: margin >= 0.0, margin, lambda_bound }
}

/// Worst cases seen by [`energy_condition_sample`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergySampleStats {
    pub n_samples: usize,
    /// Minimum of `−T̃(X,X)` over timelike samples normalised by `√F X^t ≥ 1.01`.
    pub min_neg_t_xx: f64,
    /// The sample attaining `min_neg_t_xx`.
    pub worst_vector: [f64; 5],
    /// Minimum of `g̃(Y,Y)/|Y|²_e` over causal future-pointing samples, with
    /// `Y = −T̃^μ_ν X^ν` and `|·|_e` the orthonormal-frame Euclidean norm.
    pub min_flux_causality: f64,
    /// Minimum of `Y^t/|Y|_e` over the same samples.
    pub min_flux_time: f64,
    /// Samples whose flux is spacelike or past-pointing beyond round-off.
    pub flux_violations: usize,
}

fn orthonormal_norm2(p: &SpacetimeParams, pt: &SpacetimePoint, y: &[f64; 5]) -> f64 {
    let f = p.f(pt.r);
    let eta = p.w(pt.r) * y[0] + y[1];
    let st = pt.theta.sin();
    f * y[0] * y[0] + eta * eta / (p.m * p.m) + y[2] * y[2] / f
        + pt.r * pt.r * (y[3] * y[3] + st * st * y[4] * y[4])
}

/// Draws a vector with `√F X^t = lambda` and orthonormal spatial part of
/// length at most one, then maps it to coordinate components. With
/// `lambda ≥ 1` the result is causal and future-pointing.
fn draw_vector<R: Rng + ?Sized>(p: &SpacetimeParams, pt: &SpacetimePoint, lambda: f64, rng: &mut R) -> [f64; 5] {
    let f = p.f(pt.r);
    let mut e = [0.0f64; 4];
    loop {
        for c in e.iter_mut() {
            *c = 2.0 * rng.random::<f64>() - 1.0;
        }
        let n2: f64 = e.iter().map(|c| c * c).sum();
        if n2 <= 1.0 && n2 > 1e-300 {
            break;
        }
    }
    let xt = lambda / f.sqrt();
    let eta = p.m * e[0];
    let st = pt.theta.sin();
    [xt, eta - p.w(pt.r) * xt, e[1] * f.sqrt(), e[2] / pt.r, e[3] / (pt.r * st)]
}

/// Samples random timelike and causal future-pointing vectors at `pt` and
/// records the weak-energy minimum and the worst flux causality.
pub fn energy_condition_sample<R: Rng + ?Sized>(
    p: &SpacetimeParams,
    pt: &SpacetimePoint,
    n_samples: usize,
    rng: &mut R,
) -> Result<EnergySampleStats, CoreError> {
    let f = p.f(pt.r);
    if !(f > 0.0) || !(pt.theta > 0.0 && pt.theta < core::f64::consts::PI) {
        return Err(CoreError::SamplerExhausted);
    }
    let g: Mat5 = metric(p, pt.r, pt.theta);
    let gi = inverse_metric_closed_form(p, pt.r, pt.theta);
    let (tm, tf) = stress_tensors(p, pt.r, pt.theta);
    let mut neg_t: Mat5 = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            neg_t[i][j] = -(tm[i][j] + tf[i][j]);
        }
    }
    let mut stats = EnergySampleStats {
        n_samples,
        min_neg_t_xx: f64::INFINITY,
        worst_vector: [0.0; 5],
        min_flux_causality: f64::INFINITY,
        min_flux_time: f64::INFINITY,
        flux_violations: 0,
    };
    for k in 0..n_samples {
        let lambda = if k % 2 == 0 { 1.01 } else { 1.01 + 4.0 * rng.random::<f64>() };
        let x = draw_vector(p, pt, lambda, rng);
        let e = bilinear5(&neg_t, &x, &x);
        if e < stats.min_neg_t_xx {
            stats.min_neg_t_xx = e;
            stats.worst_vector = x;
        }
        // Causal sample: every fourth one is exactly null.
        let lc = if k % 4 == 0 { 1.0 } else { lambda };
        let xc = draw_vector(p, pt, lc, rng);
        let lowered = matvec5(&neg_t, &xc);
        let y = matvec5(&gi, &lowered);
        let n2 = orthonormal_norm2(p, pt, &y);
        if n2 > 0.0 {
            let c = bilinear5(&g, &y, &y) / n2;
            let t = y[0] * f.sqrt() / n2.sqrt();
            stats.min_flux_causality = stats.min_flux_causality.min(c);
            stats.min_flux_time = stats.min_flux_time.min(t);
            if c < -1e-10 || t < -1e-10 {
                stats.flux_violations += 1;
            }
        } else {
            stats.min_flux_causality = stats.min_flux_causality.min(0.0);
            stats.min_flux_time = stats.min_flux_time.min(0.0);
        }
    }
    Ok(stats)
}

/// A timelike vector with negative energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecWitness {
    pub r: f64,
    /// Components with `X^t = 1`.
    pub x: [f64; 5],
    pub g_xx: f64,
    pub neg_t_xx: f64,
    /// `ε` in `X = ∂_t − W(1+ε)∂_z`; `None` when `W = 0`.
    pub epsilon: Option<f64>,
}

/// Builds the witness `X = ∂_t − W(1+ε)∂_z` at radius `r`. With `η = −Wε`,
/// `g̃(X,X) = F − η²/m²` and `−T̃(X,X) = 𝔔F − 𝔇η²`, so any `η²` strictly
/// between `F𝔔/𝔇` and `Fm²` gives a timelike vector with negative energy.
/// The midpoint is used. Returns `None` when `m²𝔇 ≤ 𝔔` (no violation exists)
/// or `F ≤ 0`.
pub fn dec_witness(p: &SpacetimeParams, r: f64) -> Option<DecWitness> {
    let f = p.f(r);
    let qq = mathfrak_q(p, r);
    let dd = mathfrak_d(p, r);
    let m2 = p.m * p.m;
    if !(f > 0.0) || !(m2 * dd > qq) {
        return None;
    }
    let eta2 = 0.5 * f * (qq / dd + m2);
    let w = p.w(r);
    let eta = if w >= 0.0 { -eta2.sqrt() } else { eta2.sqrt() };
    let x = [1.0, eta - w, 0.0, 0.0, 0.0];
    let theta = core::f64::consts::FRAC_PI_2;
    let g: Mat5 = metric(p, r, theta);
    let (tm, tf) = stress_tensors(p, r, theta);
    let neg_t_xx = -(bilinear5(&tm, &x, &x) + bilinear5(&tf, &x, &x));
    let epsilon = if w != 0.0 { Some(-eta / w) } else { None };
    Some(DecWitness { r, x, g_xx: bilinear5(&g, &x, &x), neg_t_xx, epsilon })
}
