//! Tortoise and star coordinates, their inverses, phase integrals and the
//! Kruskal charts at the event and cosmological horizons.
//!
//! With `x = T(r)` and `x = 0` at the reference radius `𝔯`:
//! `T(r) = Σ_α (1/2κ_α) ln|(r−r_α)/(𝔯−r_α)|` and `Z(r) = −s Y(r)` with
//! `Y(r) = Σ_α (1/2r_ακ_α) ln|(𝔯/r)(r−r_α)/(𝔯−r_α)|`, so that `dT/dr = 1/F`
//! and `dY/dr = V/F`.
//!
//! Near a horizon `r` itself cannot resolve `r − r_±` below `1e−16 r`, so every
//! radial location is carried as a [`RadialPoint`] holding both horizon
//! offsets, each with full relative accuracy.


use crate::error::CoreError;
use crate::geometry::{HorizonStructure, SpacetimePoint};

/// A radius in the outer block together with its distances to both horizons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialPoint {
    pub r: f64,
    /// `r − r_-`.
    pub d_minus: f64,
    /// `r_+ − r`.
    pub d_plus: f64,
}

/// Closed-form tortoise map for one spacetime and reference radius.
#[derive(Clone, Debug, PartialEq)]
pub struct TortoiseMap {
    pub h: HorizonStructure,
    pub reference_radius: f64,
    /// `1/(2κ_α)` in root order `(n, c, −, +)`.
    pub inv_two_kappa: [f64; 4],
    /// `1/(2r_ακ_α)` in root order.
    pub inv_two_r_kappa: [f64; 4],
    log_ref: [f64; 4],
    /// Asymptotic constants `C_-`, `C_+` with `r − r_- ≈ C_-e^{2κ_-x}` and
    /// `r_+ − r ≈ C_+e^{2κ_+x}`.
    pub c_minus: f64,
    pub c_plus: f64,
    /// `|x|` beyond which the asymptotic expansion seeds the inversion.
    pub switch_threshold: f64,
}

#[derive(Clone, Copy)]
enum Side {
    Minus,
    Plus,
}

impl TortoiseMap {
    /// Map with the default reference radius, the maximiser of `F` on the
    /// outer block.
    pub fn new(h: &HorizonStructure) -> Self {
        Self::with_reference(h, h.f_max_radius).expect("F maximiser lies in the outer block")
    }

    pub fn with_reference(h: &HorizonStructure, reference_radius: f64) -> Result<Self, CoreError> {
        if !h.contains(reference_radius) {
            return Err(CoreError::OutOfDomain {
                value: reference_radius,
                lower: h.r_minus,
                upper: h.r_plus,
            });
        }
        let roots = h.roots();
        let inv_two_kappa = h.kappa.map(|k| 0.5 / k);
        let inv_two_r_kappa: [f64; 4] = core::array::from_fn(|a| 0.5 / (roots[a] * h.kappa[a]));
        let log_ref = roots.map(|ra| (reference_radius - ra).abs().ln());
        let asym = |a: usize| {
            let mut c = (reference_radius - roots[a]).abs();
            for b in 0..4 {
                if b != a {
                    let ratio = ((reference_radius - roots[b]) / (roots[a] - roots[b])).abs();
                    c *= ratio.powf(h.kappa[a] / h.kappa[b]);
                }
            }
            c
        };
        let switch_threshold = 25.0 / (2.0 * h.kappa_minus()).min(2.0 * h.kappa_plus().abs());
        Ok(TortoiseMap {
            h: *h,
            reference_radius,
            inv_two_kappa,
            inv_two_r_kappa,
            log_ref,
            c_minus: asym(2),
            c_plus: asym(3),
            switch_threshold,
        })
    }

    /// Builds a [`RadialPoint`] from a radius, computing offsets by subtraction.
    pub fn point(&self, r: f64) -> Result<RadialPoint, CoreError> {
        if !self.h.contains(r) {
            return Err(CoreError::OutOfDomain { value: r, lower: self.h.r_minus, upper: self.h.r_plus });
        }
        Ok(RadialPoint { r, d_minus: r - self.h.r_minus, d_plus: self.h.r_plus - r })
    }

    fn log_dists(&self, pt: &RadialPoint) -> [f64; 4] {
        [
            (pt.r - self.h.r_n).ln(),
            (pt.r - self.h.r_c).ln(),
            pt.d_minus.ln(),
            pt.d_plus.ln(),
        ]
    }

    /// `T` at a radial point.
    pub fn x_at(&self, pt: &RadialPoint) -> f64 {
        let l = self.log_dists(pt);
        let mut x = 0.0;
        for a in 0..4 {
            x += self.inv_two_kappa[a] * (l[a] - self.log_ref[a]);
        }
        x
    }

    /// `Y = −Z/s` at a radial point; `Y(r(x)) = ∫_0^x V`.
    pub fn y_at(&self, pt: &RadialPoint) -> f64 {
        let l = self.log_dists(pt);
        let lr = (self.reference_radius / pt.r).ln();
        let mut y = 0.0;
        for a in 0..4 {
            y += self.inv_two_r_kappa[a] * (lr + l[a] - self.log_ref[a]);
        }
        y
    }

    /// `F` at a radial point, from the factorised form.
    pub fn f_at(&self, pt: &RadialPoint) -> f64 {
        self.h.f_from_offsets(pt.r, pt.d_minus, pt.d_plus)
    }

    /// Tortoise coordinate `x = T(r)`.
    pub fn tortoise_x(&self, r: f64) -> Result<f64, CoreError> {
        Ok(self.x_at(&self.point(r)?))
    }

    /// Star shift `Z(r) = −sY(r)`.
    pub fn z_shift(&self, r: f64) -> Result<f64, CoreError> {
        Ok(-self.h.params.s() * self.y_at(&self.point(r)?))
    }

    fn point_at_log_offset(&self, side: Side, y: f64) -> RadialPoint {
        let d = y.exp();
        let width = self.h.r_plus - self.h.r_minus;
        match side {
            Side::Minus => RadialPoint { r: self.h.r_minus + d, d_minus: d, d_plus: width - d },
            Side::Plus => RadialPoint { r: self.h.r_plus - d, d_minus: width - d, d_plus: d },
        }
    }

    /// Leading-order offset `C_± e^{2κ_± x}` from the nearer horizon.
    pub fn asymptotic_offset(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.c_minus * (2.0 * self.h.kappa_minus() * x).exp()
        } else {
            self.c_plus * (2.0 * self.h.kappa_plus() * x).exp()
        }
    }

    /// Inverse tortoise map. Total on ℝ: far beyond the horizons the offset
    /// underflows to zero and the point sits on the horizon.
    pub fn invert_tortoise(&self, x: f64) -> RadialPoint {
        if x == 0.0 {
            let r = self.reference_radius;
            return RadialPoint { r, d_minus: r - self.h.r_minus, d_plus: self.h.r_plus - r };
        }
        let (side, sign, y_hi) = if x < 0.0 {
            (Side::Minus, 1.0, (self.reference_radius - self.h.r_minus).ln())
        } else {
            (Side::Plus, -1.0, (self.h.r_plus - self.reference_radius).ln())
        };
        // g(y) = sign·(T − x) is increasing in y and non-negative at y_hi.
        let g = |y: f64| {
            let pt = self.point_at_log_offset(side, y);
            let val = sign * (self.x_at(&pt) - x);
            let dd = match side {
                Side::Minus => pt.d_minus,
                Side::Plus => pt.d_plus,
            };
            (val, dd / self.f_at(&pt))
        };
        let seed = self.asymptotic_offset(x).ln();
        let mut lo = (seed - 5.0).min(y_hi - 1.0);
        let mut steps = 0;
        while g(lo).0 > 0.0 && steps < 200 {
            lo -= 10.0;
            steps += 1;
        }
        if lo < -745.0 {
            return self.point_at_log_offset(side, f64::NEG_INFINITY);
        }
        let mut hi = y_hi;
        let mut y = if x.abs() > self.switch_threshold { seed.clamp(lo, hi) } else { 0.5 * (lo + hi) };
        for _ in 0..200 {
            let (val, der) = g(y);
            if val == 0.0 {
                break;
            }
            if val > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let mut next = y - val / der;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (next - y).abs() <= 4.0 * f64::EPSILON * y.abs().max(1.0) {
                y = next;
                break;
            }
            y = next;
        }
        self.point_at_log_offset(side, y)
    }

    /// `∫_{x1}^{x2} (V − v_ref) dx`, exact from the closed-form table.
    pub fn phase_integral(&self, x1: f64, x2: f64, v_ref: f64) -> f64 {
        if x1 == x2 {
            return 0.0;
        }
        let y1 = self.y_at(&self.invert_tortoise(x1));
        let y2 = self.y_at(&self.invert_tortoise(x2));
        (y2 - y1) - v_ref * (x2 - x1)
    }
}

/// Which horizon a Kruskal chart regularises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KruskalHorizon {
    Event,
    Cosmological,
}

/// Kruskal-Boyer-Lindquist coordinates near one horizon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KruskalChart {
    pub horizon: KruskalHorizon,
    /// `u = e^{−κ ⋆t}` with `κ = κ_-` or `κ_+`.
    pub u: f64,
    /// `v = e^{κ t⋆}`.
    pub v: f64,
    /// `z + sV_∓ t` reduced to `[0, 2π)`.
    pub z_sharp: f64,
    /// Number of `2π` turns removed from `z_sharp`.
    pub winding: i64,
    /// `G = (r − r_-)e^{−2κ_-T}` (event) or `(r_+ − r)e^{−2κ_+T}` (cosmological).
    pub g: f64,
    /// The same factor from the product `|𝔯−r_α| Π_{β≠α} |(𝔯−r_β)/(r−r_β)|^{κ_α/κ_β}`.
    pub g_product: f64,
    /// Horizon offset `r − r_-` or `r_+ − r`.
    pub offset: f64,
}

/// Evaluates the Kruskal chart at `point`, taking the radial location from
/// `radial` so that the horizon offset keeps full accuracy.
pub fn kruskal_chart(
    map: &TortoiseMap,
    point: &SpacetimePoint,
    radial: &RadialPoint,
    horizon: KruskalHorizon,
) -> Result<KruskalChart, CoreError> {
    let h = &map.h;
    let (idx, kappa, v_h, offset) = match horizon {
        KruskalHorizon::Event => (2usize, h.kappa_minus(), h.v_minus(), radial.d_minus),
        KruskalHorizon::Cosmological => (3usize, h.kappa_plus(), h.v_plus(), radial.d_plus),
    };
    let x = map.x_at(radial);
    let t_star = point.t + x;
    let star_t = point.t - x;
    let limit = 700.0;
    if (kappa * star_t).abs() > limit || (kappa * t_star).abs() > limit {
        return Err(CoreError::ChartOverflow { max_abs_t: (limit / kappa.abs() - x.abs()).max(0.0) });
    }
    let u = (-kappa * star_t).exp();
    let v = (kappa * t_star).exp();
    let g = offset * (-2.0 * kappa * x).exp();
    let roots = h.roots();
    let mut g_product = (map.reference_radius - roots[idx]).abs();
    for b in 0..4 {
        if b != idx {
            let ratio = ((map.reference_radius - roots[b]) / (radial.r - roots[b])).abs();
            g_product *= ratio.powf(kappa / h.kappa[b]);
        }
    }
    let tau = core::f64::consts::TAU;
    let raw = point.z + h.params.s() * v_h * point.t;
    let winding = (raw / tau).floor();
    let mut z_sharp = raw - winding * tau;
    if z_sharp >= tau {
        z_sharp -= tau;
    }
    Ok(KruskalChart { horizon, u, v, z_sharp, winding: winding as i64, g, g_product, offset })
}
