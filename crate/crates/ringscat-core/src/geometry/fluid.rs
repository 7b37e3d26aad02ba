//! The charged-dust fluid sourced by the Kaluza-Klein reduction.

use super::SpacetimeParams;
use crate::geometry::tensors::{christoffel_closed_form, inverse_metric_closed_form, metric};
use crate::linalg::{bilinear5, matvec5, Mat5};

/// Fluid quantities at one radius, plus the residuals of its balance laws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluidFields {
    /// Energy density `ρ = Λ + (Q²/2r⁴)(1 + q²/m²)`.
    pub rho: f64,
    /// Pressure `P = −(q²Q²/4m²r²)(Λ + Q²(1+q²/m²)/(6r⁴))`.
    pub pressure: f64,
    /// Velocity covector `u = (1/m)(W dt + dz)`.
    pub u: [f64; 5],
    /// Velocity vector `v = g̃⁻¹u`, which is `−m∂_z`.
    pub velocity: [f64; 5],
    /// `g̃(v, v)`, which is `−1`.
    pub velocity_norm: f64,
    /// Radial force density `ρFWW′/(2m²)`.
    pub radial_force: f64,
    /// Closed-form `dP/dr = −ρWW′/(2m²)`.
    pub dp_dr: f64,
    /// `dP/dr` from a Richardson-extrapolated central difference of `P`.
    pub dp_dr_numeric: f64,
    /// Static Euler balance `ρFWW′/(2m²) + F·dP/dr` using the numerical
    /// derivative of `P`.
    pub euler_residual: f64,
    /// Largest component of the covariant divergence `∇_b(ρ v^a v^b)`.
    pub momentum_divergence: f64,
    /// Covariant divergence `∇_a(ρ v^a)`.
    pub mass_divergence: f64,
}

/// `P(r)`.
pub fn pressure(p: &SpacetimeParams, r: f64) -> f64 {
    let s = p.s();
    let m2 = p.m * p.m;
    let q2 = p.charge * p.charge;
    let r2 = r * r;
    -(s * s / (4.0 * m2 * r2)) * (p.lambda + q2 * (1.0 + p.q * p.q / m2) / (6.0 * r2 * r2))
}

fn density(p: &SpacetimeParams, r: f64) -> f64 {
    let r2 = r * r;
    p.lambda + p.charge * p.charge / (2.0 * r2 * r2) * (1.0 + p.q * p.q / (p.m * p.m))
}

fn dp_numeric(p: &SpacetimeParams, r: f64) -> f64 {
    let d = |h: f64| {
        (-pressure(p, r + 2.0 * h) + 8.0 * pressure(p, r + h) - 8.0 * pressure(p, r - h)
            + pressure(p, r - 2.0 * h))
            / (12.0 * h)
    };
    let h = 1e-3 * r;
    (16.0 * d(0.5 * h) - d(h)) / 15.0
}

/// Fluid fields at radius `r`. The quantities do not depend on the angles;
/// divergences are evaluated on the equator.
pub fn fluid_fields(p: &SpacetimeParams, r: f64) -> FluidFields {
    let theta = core::f64::consts::FRAC_PI_2;
    let rho = density(p, r);
    let w = p.w(r);
    let dw = p.dw(r);
    let f = p.f(r);
    let m2 = p.m * p.m;
    let u = [w / p.m, 1.0 / p.m, 0.0, 0.0, 0.0];
    let gi = inverse_metric_closed_form(p, r, theta);
    let g: Mat5 = metric(p, r, theta);
    let velocity = matvec5(&gi, &u);
    let velocity_norm = bilinear5(&g, &velocity, &velocity);
    let radial_force = rho * f * w * dw / (2.0 * m2);
    let dp_dr = -rho * w * dw / (2.0 * m2);
    let dp_dr_numeric = dp_numeric(p, r);
    let euler_residual = radial_force + f * dp_dr_numeric;

    // The fluid is static and z-independent, so every partial derivative of
    // ρv^a v^b and ρv^a vanishes; only connection terms remain.
    let gamma: [[[f64; 5]; 5]; 5] = christoffel_closed_form(p, r, theta);
    let mut momentum_divergence: f64 = 0.0;
    for a in 0..5 {
        let mut acc = 0.0;
        for b in 0..5 {
            for c in 0..5 {
                acc += gamma[a][b][c] * rho * velocity[c] * velocity[b]
                    + gamma[b][b][c] * rho * velocity[a] * velocity[c];
            }
        }
        momentum_divergence = momentum_divergence.max(acc.abs());
    }
    let mut mass_divergence = 0.0;
    for a in 0..5 {
        for c in 0..5 {
            mass_divergence += gamma[a][a][c] * rho * velocity[c];
        }
    }
    FluidFields {
        rho,
        pressure: pressure(p, r),
        u,
        velocity,
        velocity_norm,
        radial_force,
        dp_dr,
        dp_dr_numeric,
        euler_residual,
        momentum_divergence,
        mass_divergence,
    }
}
