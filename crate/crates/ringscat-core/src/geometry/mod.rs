//! Parameter validation, the horizon function and its roots, the extended
//! metric with its curvature and stress-energy tensors, and the energy
//! condition checkers.
//!
//! The horizon function uses the `Q²/(2r²)` convention:
//! `F(r) = 1 − 2M/r + Q²/(2r²) − Λr²/3`. Plugging the textbook
//! Reissner-Nordström `Q²/r²` into any routine here gives wrong roots.

mod energy;
mod fluid;
mod tensors;

use alloc::vec::Vec;
use core::fmt;


use crate::dual::Scalar;
use crate::error::{CoreError, DyadoringCase};

pub use energy::{
    dec_witness, dominant_energy_check, energy_condition_sample, local_energy_margin,
    mathfrak_d, mathfrak_q, DecWitness, DominantEnergyReport, EnergySampleStats,
};
pub use fluid::{fluid_fields, pressure, FluidFields};
pub use tensors::{
    christoffel_closed_form, christoffel_finite_difference, einstein_residual,
    einstein_residual_finite_difference, einstein_residual_with, inverse_metric_closed_form, metric,
    metric_determinant, ricci_closed_form, ricci_finite_difference, ricci_from_christoffels,
    scalar_curvature_closed_form, stress_tensors, tensors_at, Christoffel, EinsteinResidual,
    TensorBundle,
};

/// Physical constants of the background and of the Klein-Gordon field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacetimeParams {
    /// Black-hole mass `M`.
    pub mass: f64,
    /// Black-hole charge `Q`.
    pub charge: f64,
    /// Cosmological constant `Λ`.
    pub lambda: f64,
    /// Field charge `q`.
    pub q: f64,
    /// Field mass `m`.
    pub m: f64,
}

impl SpacetimeParams {
    pub const fn new(mass: f64, charge: f64, lambda: f64, q: f64, m: f64) -> Self {
        SpacetimeParams { mass, charge, lambda, q, m }
    }

    /// Charge product `s = qQ`.
    pub fn s(&self) -> f64 {
        self.q * self.charge
    }

    /// `Δ = 9M² − 4Q²`.
    pub fn delta(&self) -> f64 {
        9.0 * self.mass * self.mass - 4.0 * self.charge * self.charge
    }

    /// Open window `(max{0, 6(M−√Δ)/(3M−√Δ)³}, 6(M+√Δ)/(3M+√Δ)³)` for `Λ`,
    /// or `None` when `Δ ≤ 0`.
    pub fn lambda_window(&self) -> Option<(f64, f64)> {
        let d = self.delta();
        if !(d > 0.0) {
            return None;
        }
        let sd = d.sqrt();
        let m = self.mass;
        let lo_den = 3.0 * m - sd;
        let lo = if lo_den > 0.0 {
            6.0 * (m - sd) / (lo_den * lo_den * lo_den)
        } else {
            f64::NEG_INFINITY
        };
        let hi_den = 3.0 * m + sd;
        let hi = 6.0 * (m + sd) / (hi_den * hi_den * hi_den);
        Some((lo.max(0.0), hi))
    }

    /// Horizon function `F(r)`, generic so that dual numbers differentiate it.
    pub fn f<S: Scalar>(&self, r: S) -> S {
        let m = self.mass;
        let q2 = self.charge * self.charge;
        S::cst(1.0) - S::cst(2.0 * m) / r + S::cst(0.5 * q2) / (r * r)
            - (r * r).scale(self.lambda / 3.0)
    }

    /// `F′(r) = 2M/r² − Q²/r³ − 2Λr/3`.
    pub fn df<S: Scalar>(&self, r: S) -> S {
        let q2 = self.charge * self.charge;
        S::cst(2.0 * self.mass) / (r * r) - S::cst(q2) / (r * r * r)
            - r.scale(2.0 * self.lambda / 3.0)
    }

    /// `F″(r) = −4M/r³ + 3Q²/r⁴ − 2Λ/3`.
    pub fn d2f<S: Scalar>(&self, r: S) -> S {
        let q2 = self.charge * self.charge;
        let r2 = r * r;
        S::cst(-4.0 * self.mass) / (r2 * r) + S::cst(3.0 * q2) / (r2 * r2)
            - S::cst(2.0 * self.lambda / 3.0)
    }

    /// `W(r) = sV(r) = s/r`.
    pub fn w<S: Scalar>(&self, r: S) -> S {
        S::cst(self.s()) / r
    }

    /// `W′(r) = −s/r²`.
    pub fn dw<S: Scalar>(&self, r: S) -> S {
        S::cst(-self.s()) / (r * r)
    }

    /// `W″(r) = 2s/r³`.
    pub fn d2w<S: Scalar>(&self, r: S) -> S {
        S::cst(2.0 * self.s()) / (r * r * r)
    }

    /// `r²F(r) = r² − 2Mr + Q²/2 − Λr⁴/3`, a polynomial without the pole at 0.
    pub fn r2f(&self, r: f64) -> f64 {
        let r2 = r * r;
        r2 - 2.0 * self.mass * r + 0.5 * self.charge * self.charge - self.lambda * r2 * r2 / 3.0
    }

    fn dr2f(&self, r: f64) -> f64 {
        2.0 * r - 2.0 * self.mass - 4.0 * self.lambda * r * r * r / 3.0
    }

    /// `r³F′(r) = 2Mr − Q² − 2Λr⁴/3` with the charge replaced by `q2_eff`.
    fn r3df(&self, r: f64, q2_eff: f64) -> f64 {
        let r2 = r * r;
        2.0 * self.mass * r - q2_eff - 2.0 * self.lambda * r2 * r2 / 3.0
    }
}

/// One inequality of the parameter constraints, with both sides evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub name: &'static str,
    pub lhs: f64,
    pub relation: &'static str,
    pub rhs: f64,
}

/// Result of [`validate_params`]: empty when every constraint holds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, name: &str) -> bool {
        self.violations.iter().any(|v| v.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: required {} {} {}", v.name, v.lhs, v.relation, v.rhs)?;
        }
        Ok(())
    }
}

/// Checks every constraint on the parameters and reports each violated
/// inequality with both sides evaluated. Never fails.
pub fn validate_params(p: &SpacetimeParams) -> ValidationReport {
    let mut v = Vec::new();
    let mut push = |name, lhs, relation, rhs| v.push(Violation { name, lhs, relation, rhs });
    let finite = [p.mass, p.charge, p.lambda, p.q, p.m].iter().all(|x| x.is_finite());
    if !finite {
        push("finite_parameters", f64::NAN, "finite", 0.0);
        return ValidationReport { violations: v };
    }
    if !(p.mass > 0.0) {
        push("mass_positive", p.mass, ">", 0.0);
    }
    if p.charge == 0.0 {
        push("charge_nonzero", p.charge, "!=", 0.0);
    }
    if !(p.lambda > 0.0) {
        push("lambda_positive", p.lambda, ">", 0.0);
    }
    if !(p.m > 0.0) {
        push("field_mass_positive", p.m, ">", 0.0);
    }
    let d = p.delta();
    if !(d > 0.0) {
        push("delta_positive", d, ">", 0.0);
    } else if let Some((lo, hi)) = p.lambda_window() {
        if !(p.lambda > lo) {
            push("lambda_lower_bound", p.lambda, ">", lo);
        }
        if !(p.lambda < hi) {
            push("lambda_upper_bound", p.lambda, "<", hi);
        }
    }
    let nine = 9.0 * p.lambda * p.mass * p.mass;
    if !(nine < 1.0) {
        push("nine_lambda_m2_below_one", nine, "<", 1.0);
    }
    ValidationReport { violations: v }
}

/// `F`, `F′`, `F″` at one radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonValues {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

/// Evaluates the horizon function and its first two derivatives analytically.
pub fn horizon_function(p: &SpacetimeParams, r: f64) -> HorizonValues {
    HorizonValues { f: p.f(r), df: p.df(r), d2f: p.d2f(r) }
}

/// Shifted horizon function `𝐅 = F − s²V²/m²`.
pub fn shifted_horizon_function(p: &SpacetimeParams, r: f64) -> f64 {
    let s = p.s();
    p.f(r) - s * s / (p.m * p.m * r * r)
}

/// Labels for the four roots of `F`, in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    Negative = 0,
    Cauchy = 1,
    Event = 2,
    Cosmological = 3,
}

/// The four roots of `F`, surface gravities and horizon potentials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonStructure {
    pub params: SpacetimeParams,
    pub r_n: f64,
    pub r_c: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    /// `κ_α = F′(r_α)/2` in root order `(n, c, −, +)`.
    pub kappa: [f64; 4],
    /// `V_α = 1/r_α` in root order.
    pub potential: [f64; 4],
    /// Maximiser of `F` on `(r_-, r_+)`; the default reference radius.
    pub f_max_radius: f64,
    /// Local minimiser of `F` on `(r_c, r_-)`.
    pub f_min_radius: f64,
}

impl HorizonStructure {
    pub fn roots(&self) -> [f64; 4] {
        [self.r_n, self.r_c, self.r_minus, self.r_plus]
    }

    pub fn root(&self, which: Root) -> f64 {
        self.roots()[which as usize]
    }

    pub fn kappa_minus(&self) -> f64 {
        self.kappa[2]
    }

    pub fn kappa_plus(&self) -> f64 {
        self.kappa[3]
    }

    pub fn v_minus(&self) -> f64 {
        self.potential[2]
    }

    pub fn v_plus(&self) -> f64 {
        self.potential[3]
    }

    /// `F(r) = (Λ/3r²)(r−r_n)(r−r_c)(r−r_-)(r_+−r)`.
    pub fn factorized_f(&self, r: f64) -> f64 {
        self.f_from_offsets(r, r - self.r_minus, self.r_plus - r)
    }

    /// Factorised `F` with the two outer-block offsets supplied separately.
    /// Near a horizon the offset is known far more accurately than `r` itself,
    /// so this keeps full relative accuracy where the direct form cancels.
    pub fn f_from_offsets(&self, r: f64, d_minus: f64, d_plus: f64) -> f64 {
        self.params.lambda / (3.0 * r * r) * (r - self.r_n) * (r - self.r_c) * d_minus * d_plus
    }

    /// Relative gap `(r_+ − r_-)/(r_+ + r_-)`; tends to 0 in the extremal limit.
    pub fn extremal_gap(&self) -> f64 {
        (self.r_plus - self.r_minus) / (self.r_plus + self.r_minus)
    }

    pub fn contains(&self, r: f64) -> bool {
        r > self.r_minus && r < self.r_plus
    }
}

/// The surface-gravity closed form as printed: `(3r − 3M − 2Λr²)/(3r²)`.
/// Kept only to quantify its disagreement with `F′(r_α)/2`.
pub fn kappa_printed_form(p: &SpacetimeParams, r: f64) -> f64 {
    (3.0 * r - 3.0 * p.mass - 2.0 * p.lambda * r * r) / (3.0 * r * r)
}

/// The dimensionally consistent closed form `(3r − 3M − 2Λr³)/(3r²)`, which
/// equals `F′(r)/2` at every root of `F`.
pub fn kappa_root_form(p: &SpacetimeParams, r: f64) -> f64 {
    (3.0 * r - 3.0 * p.mass - 2.0 * p.lambda * r * r * r) / (3.0 * r * r)
}

fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= tol * mid.abs().max(1.0) || mid == lo || mid == hi {
            return mid;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Critical radius of `r³F′` with effective charge squared `q2_eff`: the point
/// `r* = (3M/4Λ)^{1/3}` where `2Mr − q2_eff − 2Λr⁴/3` peaks.
fn r3df_peak(p: &SpacetimeParams) -> f64 {
    (3.0 * p.mass / (4.0 * p.lambda)).cbrt()
}

/// Locates the four roots by scanning `r²F` on log-spaced samples augmented
/// with the two critical radii of `F`, then bisection to 1e−13 and two Newton
/// polishing steps.
pub fn horizon_structure(p: &SpacetimeParams) -> Result<HorizonStructure, CoreError> {
    let report = validate_params(p);
    if !report.is_ok() {
        return Err(CoreError::InvalidParams(report));
    }
    let q2 = p.charge * p.charge;
    let big_r = 20.0 * p.mass.max(1.0 / p.lambda.sqrt());
    let r_star = r3df_peak(p);
    let crit_ok = p.r3df(r_star, q2) > 0.0;
    let (r_a, r_b) = if crit_ok {
        let a = bisect(|r| p.r3df(r, q2), 0.0, r_star, 1e-15);
        let b = bisect(|r| p.r3df(r, q2), r_star, big_r, 1e-15);
        (a, b)
    } else {
        (f64::NAN, f64::NAN)
    };

    let n = 4000usize;
    let mut samples: Vec<f64> = Vec::with_capacity(2 * n + 8);
    for k in 0..=n {
        // from -R up to -R·1e-9, then R·1e-9 up to R
        let e = -9.0 * (k as f64) / (n as f64);
        samples.push(-big_r * 10f64.powf(e));
    }
    for k in 0..=n {
        let e = -9.0 * ((n - k) as f64) / (n as f64);
        samples.push(big_r * 10f64.powf(e));
    }
    if crit_ok {
        samples.push(r_a);
        samples.push(r_b);
    }
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p.r2f(a), p.r2f(b));
        if fa == 0.0 {
            brackets.push((a, a));
        } else if (fa > 0.0) != (fb > 0.0) && fb != 0.0 {
            brackets.push((a, b));
        }
    }
    if brackets.len() != 4 {
        return Err(CoreError::BracketingFailure { found: brackets.len() });
    }
    let mut roots = [0.0; 4];
    for (i, &(a, b)) in brackets.iter().enumerate() {
        let mut r = if a == b { a } else { bisect(|x| p.r2f(x), a, b, 1e-13) };
        for _ in 0..2 {
            let d = p.dr2f(r);
            if d != 0.0 {
                let next = r - p.r2f(r) / d;
                if next >= a.min(b) && next <= a.max(b) {
                    r = next;
                }
            }
        }
        roots[i] = r;
    }
    if !(roots[0] < 0.0 && roots[1] > 0.0) {
        return Err(CoreError::BracketingFailure { found: brackets.len() });
    }
    let kappa = roots.map(|r| 0.5 * p.df(r));
    let potential = roots.map(|r| 1.0 / r);
    Ok(HorizonStructure {
        params: *p,
        r_n: roots[0],
        r_c: roots[1],
        r_minus: roots[2],
        r_plus: roots[3],
        kappa,
        potential,
        f_max_radius: r_b,
        f_min_radius: r_a,
    })
}

/// The radius in `(r_-, r_+)` where `r²F` peaks, and the threshold
/// `sup_{(r_-, r_+)} m r F^{1/2}` above which the dyadorings cover the block.
pub fn dyadoring_threshold(p: &SpacetimeParams, h: &HorizonStructure) -> (f64, f64) {
    let peak = bisect(|r| p.dr2f(r), h.r_minus, h.r_plus, 1e-15);
    (peak, p.m * p.r2f(peak).max(0.0).sqrt())
}

/// Roots `r_- < r_1 < r_2 < r_+` of the shifted horizon function, bounding
/// the two dyadorings where `∂_t` is spacelike.
pub fn dyadoring_roots(p: &SpacetimeParams, h: &HorizonStructure) -> Result<(f64, f64), CoreError> {
    let (peak, threshold) = dyadoring_threshold(p, h);
    let s = p.s();
    if s == 0.0 {
        return Err(CoreError::NoDyadoring { case: DyadoringCase::Degenerate, threshold });
    }
    if s.abs() >= threshold {
        return Err(CoreError::NoDyadoring { case: DyadoringCase::Covering, threshold });
    }
    let shift = s * s / (p.m * p.m);
    let g = |r: f64| p.r2f(r) - shift;
    let r1 = bisect(g, h.r_minus, peak, 1e-15);
    let r2 = bisect(g, peak, h.r_plus, 1e-15);
    Ok((r1, r2))
}

/// A point of the extended spacetime in Boyer-Lindquist coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub z: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SpacetimePoint {
    pub const fn new(t: f64, z: f64, r: f64, theta: f64, phi: f64) -> Self {
        SpacetimePoint { t, z, r, theta, phi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::REFERENCE_PARAMS;

    #[test]
    fn reference_params_are_valid() {
        assert!(validate_params(&REFERENCE_PARAMS).is_ok());
    }

    #[test]
    fn charge_above_mass_bound_violates_delta() {
        let p = SpacetimeParams::new(1.0, 2.0, 0.05, 0.05, 1.0);
        let rep = validate_params(&p);
        assert!(rep.violated("delta_positive"));
    }

    #[test]
    fn roots_ordered_and_kappa_signs() {
        let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
        assert!(h.r_n < 0.0 && 0.0 < h.r_c && h.r_c < h.r_minus && h.r_minus < h.r_plus);
        assert!(h.kappa[0] > 0.0 && h.kappa[1] < 0.0 && h.kappa[2] > 0.0 && h.kappa[3] < 0.0);
        assert!(h.f_max_radius > h.r_minus && h.f_max_radius < h.r_plus);
    }

    #[test]
    fn dyadorings_inside_block() {
        let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
        let (r1, r2) = dyadoring_roots(&REFERENCE_PARAMS, &h).unwrap();
        assert!(h.r_minus < r1 && r1 < r2 && r2 < h.r_plus);
        assert!(shifted_horizon_function(&REFERENCE_PARAMS, r1).abs() < 1e-12);
        assert!(shifted_horizon_function(&REFERENCE_PARAMS, r2).abs() < 1e-12);
    }
}
