//! Radial lattice in the tortoise coordinate, per-mode coefficients, the
//! cutoff partition and initial-data sampling.
//!
//! All potentials are gauged: `Ṽ = V − V_+`, so `Ṽ → 0` at the cosmological
//! end and `Ṽ → V_- − V_+` at the event-horizon end.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::coords::{RadialPoint, TortoiseMap};
use crate::dynamics::profiles::{ProfileFrame, Side};
use crate::error::CoreError;
use crate::geometry::SpacetimeParams;

/// Uniform lattice in `x` with cached radial quantities.
#[derive(Clone, Debug)]
pub struct RadialGrid {
    pub map: TortoiseMap,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub dx: f64,
    pub x: Vec<f64>,
    pub radial: Vec<RadialPoint>,
    pub r: Vec<f64>,
    /// `F(r(x))` from the factorised form.
    pub f: Vec<f64>,
    /// `F′(r(x))`.
    pub df: Vec<f64>,
    /// Ungauged `V = 1/r`.
    pub v: Vec<f64>,
    /// Gauged `Ṽ = V − V_+`.
    pub v_gauged: Vec<f64>,
    /// `∫_0^x V`, exact from the closed-form table.
    pub v_integral: Vec<f64>,
    /// Trapezoid weights.
    pub weights: Vec<f64>,
}

impl RadialGrid {
    pub fn params(&self) -> &SpacetimeParams {
        &self.map.h.params
    }

    /// Gauged event-horizon potential `V_- − V_+`.
    pub fn v_minus_gauged(&self) -> f64 {
        self.map.h.v_minus() - self.map.h.v_plus()
    }

    /// `∫_0^{x_i} Ṽ`.
    pub fn v_gauged_integral(&self, i: usize) -> f64 {
        self.v_integral[i] - self.map.h.v_plus() * self.x[i]
    }

    /// Index of the node nearest to `x`, clamped to the lattice.
    pub fn index_of(&self, x: f64) -> usize {
        let k = ((x - self.x_min) / self.dx).round();
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Builds the lattice `x_i = x_min + i·dx`, `dx = (x_max − x_min)/(n − 1)`.
pub fn build_grid(map: &TortoiseMap, x_min: f64, x_max: f64, n: usize) -> Result<RadialGrid, CoreError> {
    if n < 2 {
        return Err(CoreError::InvalidGrid("at least two nodes are required"));
    }
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(CoreError::InvalidGrid("x_min must be finite and below x_max"));
    }
    let dx = (x_max - x_min) / (n - 1) as f64;
    let p = map.h.params;
    let v_plus = map.h.v_plus();
    let mut g = RadialGrid {
        map: map.clone(),
        x_min,
        x_max,
        n,
        dx,
        x: Vec::with_capacity(n),
        radial: Vec::with_capacity(n),
        r: Vec::with_capacity(n),
        f: Vec::with_capacity(n),
        df: Vec::with_capacity(n),
        v: Vec::with_capacity(n),
        v_gauged: Vec::with_capacity(n),
        v_integral: Vec::with_capacity(n),
        weights: Vec::with_capacity(n),
    };
    for i in 0..n {
        let x = if i + 1 == n { x_max } else { x_min + dx * i as f64 };
        let rp = map.invert_tortoise(x);
        let f = map.f_at(&rp);
        if i > 0 && i + 1 < n && !(f > 0.0) {
            return Err(CoreError::InvalidGrid("F underflows at an interior node; shrink the x range"));
        }
        g.x.push(x);
        g.radial.push(rp);
        g.r.push(rp.r);
        g.f.push(f);
        g.df.push(p.df(rp.r));
        g.v.push(1.0 / rp.r);
        g.v_gauged.push(1.0 / rp.r - v_plus);
        g.v_integral.push(map.y_at(&rp));
        g.weights.push(if i == 0 || i + 1 == n { 0.5 * dx } else { dx });
    }
    Ok(g)
}

/// A joint spherical-harmonic and circle-Fourier sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub ell: u32,
    pub zmode: i32,
}

impl ModeIndex {
    /// `𝐳 = 0` is the uncharged massless wave case and is rejected.
    pub fn new(ell: u32, zmode: i32) -> Result<Self, CoreError> {
        if zmode == 0 {
            return Err(CoreError::InvalidMode("circle mode number must be nonzero"));
        }
        Ok(ModeIndex { ell, zmode })
    }
}

/// Per-mode coefficient arrays.
#[derive(Clone, Debug)]
pub struct ModePotentials {
    pub mode: ModeIndex,
    /// `s𝐳`.
    pub s_z: f64,
    /// `F(ℓ(ℓ+1)/r² + F′/r + m²𝐳²)`, the potential of `h₀`.
    pub pot0: Vec<f64>,
    /// `F(ℓ(ℓ+1)/r² + m²𝐳²)`, the potential of the separable `h₀`.
    pub pot0_separable: Vec<f64>,
    /// `k = s𝐳Ṽ`.
    pub k: Vec<f64>,
    /// `k²`.
    pub k2: Vec<f64>,
    /// `r²`, the weight of the conjugated energy form.
    pub r2: Vec<f64>,
    /// `s𝐳(V_- − V_+)`, the constant `k` at the event-horizon end.
    pub k_minus_inf: f64,
    /// `s𝐳(V_+ − V_+) = 0`, the constant `k` at the cosmological end.
    pub k_plus_inf: f64,
}

pub fn mode_potentials(grid: &RadialGrid, mode: ModeIndex) -> ModePotentials {
    let p = grid.params();
    let z = mode.zmode as f64;
    let s_z = p.s() * z;
    let l = mode.ell as f64;
    let lz = l * (l + 1.0);
    let m2z2 = p.m * p.m * z * z;
    let n = grid.n;
    let mut pot0 = Vec::with_capacity(n);
    let mut pot0_separable = Vec::with_capacity(n);
    let mut k = Vec::with_capacity(n);
    let mut k2 = Vec::with_capacity(n);
    let mut r2 = Vec::with_capacity(n);
    for i in 0..n {
        let r = grid.r[i];
        let f = grid.f[i];
        pot0.push(f * (lz / (r * r) + grid.df[i] / r + m2z2));
        pot0_separable.push(f * (lz / (r * r) + m2z2));
        let ki = s_z * grid.v_gauged[i];
        k.push(ki);
        k2.push(ki * ki);
        r2.push(r * r);
    }
    ModePotentials {
        mode,
        s_z,
        pot0,
        pot0_separable,
        k,
        k2,
        r2,
        k_minus_inf: s_z * grid.v_minus_gauged(),
        k_plus_inf: 0.0,
    }
}

/// Smooth partition of unity `i_-² + i_+² = 1` with `i_-` supported in
/// `(−∞, 1]`, `i_+` in `[−1, ∞)`, and inner cutoffs `j_±` with `i_±j_± = j_±`,
/// `i_±j_∓ = 0`.
#[derive(Clone, Debug)]
pub struct CutoffFamily {
    pub i_minus: Vec<f64>,
    pub i_plus: Vec<f64>,
    pub j_minus: Vec<f64>,
    pub j_plus: Vec<f64>,
}

/// `exp(−1/t)` for `t > 0`, zero otherwise.
fn psi(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step from 0 at `a` to 1 at `b`.
pub fn smooth_step(x: f64, a: f64, b: f64) -> f64 {
    let t = (x - a) / (b - a);
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let u = psi(t);
        u / (u + psi(1.0 - t))
    }
}

pub fn build_cutoffs(grid: &RadialGrid, transition_width: f64) -> Result<CutoffFamily, CoreError> {
    if !(transition_width > 0.0 && transition_width <= 2.0) {
        return Err(CoreError::InvalidGrid("cutoff transition width must lie in (0, 2]"));
    }
    let half_pi = core::f64::consts::FRAC_PI_2;
    let mut fam = CutoffFamily {
        i_minus: Vec::with_capacity(grid.n),
        i_plus: Vec::with_capacity(grid.n),
        j_minus: Vec::with_capacity(grid.n),
        j_plus: Vec::with_capacity(grid.n),
    };
    for &x in &grid.x {
        let sigma = smooth_step(x, -1.0, 1.0);
        let (s, c) = (half_pi * sigma).sin_cos();
        // Exact zeros and ones outside the transition keep the identities exact.
        let (im, ip) = if sigma == 0.0 {
            (1.0, 0.0)
        } else if sigma == 1.0 {
            (0.0, 1.0)
        } else {
            (c, s)
        };
        fam.i_minus.push(im);
        fam.i_plus.push(ip);
        fam.j_minus.push(1.0 - smooth_step(x, -1.0 - transition_width, -1.0));
        fam.j_plus.push(smooth_step(x, 1.0, 1.0 + transition_width));
    }
    Ok(fam)
}

/// The pair `(u, −i∂_t u)` of one mode on the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeState {
    pub time: f64,
    pub u0: Vec<Complex64>,
    pub u1: Vec<Complex64>,
}

impl ModeState {
    pub fn zeros(n: usize) -> Self {
        ModeState { time: 0.0, u0: alloc::vec![Complex64::new(0.0, 0.0); n], u1: alloc::vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn len(&self) -> usize {
        self.u0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u0.is_empty()
    }

    /// `a·self + b·other`, keeping `self.time`.
    pub fn combine(&self, a: Complex64, other: &ModeState, b: Complex64) -> ModeState {
        ModeState {
            time: self.time,
            u0: self.u0.iter().zip(&other.u0).map(|(x, y)| x * a + y * b).collect(),
            u1: self.u1.iter().zip(&other.u1).map(|(x, y)| x * a + y * b).collect(),
        }
    }

    pub fn scaled(&self, a: Complex64) -> ModeState {
        ModeState { time: self.time, u0: self.u0.iter().map(|x| x * a).collect(), u1: self.u1.iter().map(|x| x * a).collect() }
    }

    pub fn sub(&self, other: &ModeState) -> ModeState {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    pub fn multiply_pointwise(&self, w: &[f64]) -> ModeState {
        ModeState {
            time: self.time,
            u0: self.u0.iter().zip(w).map(|(x, c)| x * c).collect(),
            u1: self.u1.iter().zip(w).map(|(x, c)| x * c).collect(),
        }
    }

    pub fn is_finite(&self) -> Option<usize> {
        self.u0
            .iter()
            .zip(&self.u1)
            .position(|(a, b)| !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()))
    }
}

/// Spatial shape of a sampled profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProfileShape {
    /// `exp(−(x−c)²/(2w²))`.
    Gaussian { center: f64, width: f64 },
    /// `e·exp(−1/(1−y²))` with `y = (x−c)/h`, supported in `[c−h, c+h]`.
    Bump { center: f64, half_width: f64 },
    Zero,
}

/// How `u1` is built from `u0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataRelation {
    /// `u1 = 0`.
    Free,
    /// `u1 = iL_𝓗 u0 = −i∂_x u0 + s𝐳Ṽu0`, moving toward the event horizon.
    Incoming,
    /// `u1 = iL_𝓘 u0 = i∂_x u0 + s𝐳Ṽu0`, moving toward the cosmological horizon.
    Outgoing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSpec {
    pub shape: ProfileShape,
    pub amplitude: f64,
    /// Carrier wavenumber: the profile is multiplied by `e^{i·momentum·x}`.
    pub momentum: f64,
    pub relation: DataRelation,
}

/// Result of [`sample_initial_data`].
#[derive(Clone, Debug)]
pub struct SampledData {
    pub state: ModeState,
    /// Support bounds when the shape is compactly supported.
    pub support: Option<(f64, f64)>,
}

/// Samples a profile on the lattice. `u1` is built with the discrete
/// `L_𝓗` and `L_𝓘` of the profile frames, so incoming data are exact
/// eigenvectors of the discrete event-horizon profile generator.
pub fn sample_initial_data(
    grid: &RadialGrid,
    pots: &ModePotentials,
    spec: &ProfileSpec,
) -> Result<SampledData, CoreError> {
    let n = grid.n;
    let mut u0 = Vec::with_capacity(n);
    let mut support = None;
    for &x in &grid.x {
        let env = match spec.shape {
            ProfileShape::Gaussian { center, width } => {
                let y = (x - center) / width;
                (-0.5 * y * y).exp()
            }
            ProfileShape::Bump { center, half_width } => {
                support = Some((center - half_width, center + half_width));
                let y = (x - center) / half_width;
                if y.abs() < 1.0 {
                    (1.0 - 1.0 / (1.0 - y * y)).exp()
                } else {
                    0.0
                }
            }
            ProfileShape::Zero => 0.0,
        };
        u0.push(Complex64::from_polar(spec.amplitude * env, spec.momentum * x));
    }
    let peak = u0.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let margin = 10.min(n / 2);
    let mut edge: f64 = 0.0;
    for i in (0..margin).chain(n - margin..n) {
        edge = edge.max(u0[i].norm());
    }
    if peak > 0.0 && edge > 1e-14 * peak.max(1.0) {
        return Err(CoreError::SupportOverflow { margin_value: edge });
    }
    let u1 = match spec.relation {
        DataRelation::Free => alloc::vec![Complex64::new(0.0, 0.0); n],
        DataRelation::Incoming => {
            let frame = ProfileFrame::new(grid, pots, Side::Horizon);
            frame.l_in(&u0).iter().map(|v| v * Complex64::new(0.0, 1.0)).collect()
        }
        DataRelation::Outgoing => {
            let frame = ProfileFrame::new(grid, pots, Side::Cosmological);
            frame.l_out(&u0).iter().map(|v| v * Complex64::new(0.0, 1.0)).collect()
        }
    };
    Ok(SampledData { state: ModeState { time: 0.0, u0, u1 }, support })
}
