//! Principal null geodesics, the modified curves `γ_±` and the maps that
//! identify the Cauchy surface with the four horizons.
//!
//! Only the family with Killing constant `g̃(γ̇, ∂_z) = 0` is built. Along it
//! `dt/dr = ±1/F` and `dz/dr = ∓sV/F`, so in closed form an outgoing path
//! satisfies `t − T(r)` and `z − Z(r)` constant, an incoming one `t + T(r)`
//! and `z + Z(r)` constant.

use alloc::vec::Vec;


use crate::coords::{RadialPoint, TortoiseMap};
use crate::error::CoreError;
use crate::geometry::{SpacetimeParams, SpacetimePoint};

/// Which curve a [`NullPath`] follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Incoming principal null geodesic, `dr/dt = −F`.
    In,
    /// Outgoing principal null geodesic, `dr/dt = F`.
    Out,
    /// `γ_+`: `(ṫ, ż, ṙ) = (1, s(V − 2V_-), F)`.
    Plus,
    /// `γ_-`: `(ṫ, ż, ṙ) = (1, s(V − 2V_+), −F)`.
    Minus,
}

/// One sample along a path with its invariant log.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSample {
    /// Curve parameter: the tortoise coordinate for in/out paths, `t` for `γ_±`.
    pub param: f64,
    pub point: SpacetimePoint,
    pub radial: RadialPoint,
    /// `g̃(γ̇, γ̇)` for the `t`-parametrised tangent.
    pub null_invariant: f64,
    /// `g̃(γ̇, ∂_z)` for the `t`-parametrised tangent.
    pub z_orthogonality: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullPath {
    pub kind: PathKind,
    pub samples: Vec<PathSample>,
}

impl NullPath {
    pub fn max_null_invariant(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.null_invariant.abs()))
    }

    pub fn max_z_orthogonality(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.z_orthogonality.abs()))
    }
}

/// `g̃(γ̇,γ̇)` and `g̃(γ̇,∂_z)` for `γ̇ = (1, ż, ṙ, 0, 0)`, with `F` evaluated
/// from the horizon offsets.
fn invariants(map: &TortoiseMap, radial: &RadialPoint, zdot: f64, rdot: f64) -> (f64, f64) {
    let p = &map.h.params;
    let f = map.f_at(radial);
    let w = p.s() / radial.r;
    let im2 = 1.0 / (p.m * p.m);
    let g00 = f - w * w * im2;
    let g01 = -w * im2;
    let g11 = -im2;
    let g22 = -1.0 / f;
    let null = g00 + 2.0 * g01 * zdot + g11 * zdot * zdot + g22 * rdot * rdot;
    let orth = g01 + g11 * zdot;
    (null, orth)
}

/// Samples a principal null geodesic from `start` to `target_r` in closed
/// form. Samples are uniform in the tortoise coordinate, which resolves the
/// approach to either horizon.
pub fn integrate_principal(
    map: &TortoiseMap,
    start: &SpacetimePoint,
    kind: PathKind,
    target_r: f64,
    n_samples: usize,
) -> Result<NullPath, CoreError> {
    let start_radial = map.point(start.r)?;
    let target = map.point(target_r)?;
    integrate_principal_from(map, start, &start_radial, kind, map.x_at(&target), n_samples)
}

/// As [`integrate_principal`], with the start offset and the target given in
/// the tortoise coordinate, so that targets within `1e−12` of a horizon are
/// representable.
pub fn integrate_principal_from(
    map: &TortoiseMap,
    start: &SpacetimePoint,
    start_radial: &RadialPoint,
    kind: PathKind,
    target_x: f64,
    n_samples: usize,
) -> Result<NullPath, CoreError> {
    let sign = match kind {
        PathKind::Out => 1.0,
        PathKind::In => -1.0,
        _ => return Err(CoreError::InvalidMode("principal paths are In or Out")),
    };
    let s = map.h.params.s();
    let x0 = map.x_at(start_radial);
    let y0 = map.y_at(start_radial);
    let n = n_samples.max(2);
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let x = x0 + (target_x - x0) * (k as f64) / ((n - 1) as f64);
        let radial = if k == 0 { *start_radial } else { map.invert_tortoise(x) };
        let dx = map.x_at(&radial) - x0;
        let dz = -s * (map.y_at(&radial) - y0);
        let point = SpacetimePoint {
            t: start.t + sign * dx,
            z: start.z + sign * dz,
            r: radial.r,
            theta: start.theta,
            phi: start.phi,
        };
        let f = map.f_at(&radial);
        let (null, orth) = invariants(map, &radial, -s / radial.r, sign * f);
        samples.push(PathSample { param: x, point, radial, null_invariant: null, z_orthogonality: orth });
    }
    Ok(NullPath { kind, samples })
}

/// Classic RK4 on `dt/dr = ±1/F`, `dz/dr = ∓sV/F` with fixed step `h` in `r`,
/// using `F` from its defining expression. Returns `(r, t, z)` at every step.
pub fn integrate_principal_rk4(
    p: &SpacetimeParams,
    start: &SpacetimePoint,
    kind: PathKind,
    target_r: f64,
    h: f64,
) -> Result<Vec<(f64, f64, f64)>, CoreError> {
    let sign = match kind {
        PathKind::Out => 1.0,
        PathKind::In => -1.0,
        _ => return Err(CoreError::InvalidMode("principal paths are In or Out")),
    };
    let s = p.s();
    let rhs = |r: f64| {
        let f: f64 = p.f(r);
        (sign / f, -sign * s / (r * f))
    };
    let span = target_r - start.r;
    let steps = ((span.abs() / h).ceil() as usize).max(1);
    let dr = span / steps as f64;
    let (mut r, mut t, mut z) = (start.r, start.t, start.z);
    let mut out = Vec::with_capacity(steps + 1);
    out.push((r, t, z));
    for _ in 0..steps {
        let k1 = rhs(r);
        let k2 = rhs(r + 0.5 * dr);
        let k4 = rhs(r + dr);
        t += dr / 6.0 * (k1.0 + 4.0 * k2.0 + k4.0);
        z += dr / 6.0 * (k1.1 + 4.0 * k2.1 + k4.1);
        r += dr;
        out.push((r, t, z));
    }
    Ok(out)
}

/// The four horizons of the outer block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Horizon {
    /// Future event horizon `𝓗^+`, coordinates `(t⋆, z⋆)`.
    FutureEvent,
    /// Past event horizon `𝓗^−`, coordinates `(⋆t, ⋆z)`.
    PastEvent,
    /// Future cosmological horizon `𝓘^+`, coordinates `(⋆t, ⋆z)`.
    FutureCosmological,
    /// Past cosmological horizon `𝓘^−`, coordinates `(t⋆, z⋆)`.
    PastCosmological,
}

impl Horizon {
    /// `+1` when the horizon is reached along incoming geodesics, so that
    /// the adapted coordinates are `t + T` and `z + Z`; `−1` otherwise.
    fn sign(self) -> f64 {
        match self {
            Horizon::FutureEvent | Horizon::PastCosmological => 1.0,
            Horizon::PastEvent | Horizon::FutureCosmological => -1.0,
        }
    }
}

/// A point of one horizon in its adapted star coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonPoint {
    pub horizon: Horizon,
    /// `t⋆ = t + T` or `⋆t = t − T`.
    pub time: f64,
    /// `z⋆ = z + Z` or `⋆z = z − Z`.
    pub circle: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Sends a point of the outer block to the horizon point reached along the
/// principal null geodesic through it.
pub fn endpoint_map(
    map: &TortoiseMap,
    point: &SpacetimePoint,
    radial: &RadialPoint,
    horizon: Horizon,
) -> HorizonPoint {
    let sgn = horizon.sign();
    let x = map.x_at(radial);
    let zs = -map.h.params.s() * map.y_at(radial);
    HorizonPoint {
        horizon,
        time: point.t + sgn * x,
        circle: point.z + sgn * zs,
        theta: point.theta,
        phi: point.phi,
    }
}

/// Inverse of [`endpoint_map`] restricted to the Cauchy surface `{t = 0}`.
pub fn endpoint_inverse(map: &TortoiseMap, hp: &HorizonPoint) -> (SpacetimePoint, RadialPoint) {
    let sgn = hp.horizon.sign();
    let x = sgn * hp.time;
    let radial = map.invert_tortoise(x);
    let zs = -map.h.params.s() * map.y_at(&radial);
    let point = SpacetimePoint {
        t: 0.0,
        z: hp.circle - sgn * zs,
        r: radial.r,
        theta: hp.theta,
        phi: hp.phi,
    };
    (point, radial)
}

/// Samples `γ_+` (`sign = +1`) or `γ_-` (`sign = −1`) for `t ∈ [0, duration]`
/// from the closed forms `x(t) = x₀ ± t` and
/// `z(t) = z₀ + s∫_0^t (V − 2V_∓)`.
pub fn integrate_curve_gamma(
    map: &TortoiseMap,
    start: &SpacetimePoint,
    start_radial: &RadialPoint,
    sign: i8,
    duration: f64,
    n_samples: usize,
) -> Result<NullPath, CoreError> {
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(CoreError::OutOfDomain { value: duration, lower: 0.0, upper: f64::INFINITY });
    }
    let h = &map.h;
    let s = h.params.s();
    let (kind, sgn, v_shift) = if sign >= 0 {
        (PathKind::Plus, 1.0, 2.0 * h.v_minus())
    } else {
        (PathKind::Minus, -1.0, 2.0 * h.v_plus())
    };
    let x0 = map.x_at(start_radial);
    let y0 = map.y_at(start_radial);
    let n = n_samples.max(2);
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let t = duration * (k as f64) / ((n - 1) as f64);
        let x = x0 + sgn * t;
        let radial = if k == 0 { *start_radial } else { map.invert_tortoise(x) };
        if radial.d_minus <= 0.0 || radial.d_plus <= 0.0 {
            return Err(CoreError::OutOfDomain { value: radial.r, lower: h.r_minus, upper: h.r_plus });
        }
        // ∫_0^t V(x₀ ± τ) dτ = ±(Y(x) − Y(x₀)).
        let int_v = sgn * (map.y_at(&radial) - y0);
        let z = start.z + s * (int_v - v_shift * t);
        let point = SpacetimePoint { t: start.t + t, z, r: radial.r, theta: start.theta, phi: start.phi };
        let f = map.f_at(&radial);
        let zdot = s * (1.0 / radial.r - v_shift);
        let (null, orth) = invariants(map, &radial, zdot, sgn * f);
        samples.push(PathSample { param: t, point, radial, null_invariant: null, z_orthogonality: orth });
    }
    Ok(NullPath { kind, samples })
}
