//! Geometric profile dynamics at one horizon: the `Ψ` transforms, exact
//! transport, the in/out decomposition and the projection onto the class
//! where that decomposition closes.
//!
//! Both horizons share one structure. With a phase `θ` and a constant `a`,
//! put `D = e^{−iθ}∂_x e^{iθ}`, `L_in = −D − ia` and `L_out = D − ia`:
//! - event horizon: `θ = s𝐳∫_0^x(Ṽ − V_-)`, `a = s𝐳V_-`, so `L_in = L_𝓗`
//!   and `L_out = L_+`;
//! - cosmological horizon: `θ = −s𝐳∫_0^x(Ṽ − V_+)`, `a = s𝐳V_+ = 0`, so
//!   `L_in = L_-` and `L_out = L_𝓘`.
//!
//! `Ψ = (1/√2)[[1, 1], [iL_in, iL_out]]` turns the profile Hamiltonian into
//! `i·diag(L_in, L_out)`; `e^{−tL_in}` moves data left and `e^{−tL_out}` moves
//! it right, each a pure shift in the tilde frame `ũ = e^{iθ}u`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::stencil::{compact_derivative, cumulative_left, cumulative_right, norm2, shift, simpson_totals};
use crate::error::CoreError;
use crate::gridmodes::{ModePotentials, ModeState, RadialGrid};

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// Which horizon a profile frame is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Event horizon `𝓗`, reached at `x → −∞`.
    Horizon,
    /// Cosmological horizon `𝓘`, reached at `x → +∞`.
    Cosmological,
}

/// Phase and constant defining `D`, `L_in`, `L_out` on one lattice.
#[derive(Clone, Debug)]
pub struct ProfileFrame {
    pub side: Side,
    /// `θ(x_i)`.
    pub theta: Vec<f64>,
    /// `e^{iθ(x_i)}`.
    pub phase: Vec<Complex64>,
    /// `a = s𝐳V_-` (event) or `s𝐳V_+ = 0` (cosmological), gauged.
    pub a: f64,
    pub dx: f64,
    /// Node coordinates, kept for support diagnostics.
    pub x: Vec<f64>,
}

/// Result of [`ProfileFrame::decompose`].
#[derive(Clone, Debug)]
pub struct InOutSplit {
    pub incoming: ModeState,
    pub outgoing: ModeState,
    pub l_defect: f64,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl ProfileFrame {
    pub fn new(grid: &RadialGrid, pots: &ModePotentials, side: Side) -> Self {
        let h = &grid.map.h;
        let s_z = pots.s_z;
        let (theta, a): (Vec<f64>, f64) = match side {
            Side::Horizon => (
                (0..grid.n).map(|i| s_z * (grid.v_integral[i] - h.v_minus() * grid.x[i])).collect(),
                pots.k_minus_inf,
            ),
            Side::Cosmological => (
                (0..grid.n).map(|i| -s_z * (grid.v_integral[i] - h.v_plus() * grid.x[i])).collect(),
                pots.k_plus_inf,
            ),
        };
        let phase = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        ProfileFrame { side, theta, phase, a, dx: grid.dx, x: grid.x.clone() }
    }

    pub fn to_tilde(&self, u: &[Complex64]) -> Vec<Complex64> {
        u.iter().zip(&self.phase).map(|(v, p)| v * p).collect()
    }

    pub fn from_tilde(&self, u: &[Complex64]) -> Vec<Complex64> {
        u.iter().zip(&self.phase).map(|(v, p)| v * p.conj()).collect()
    }

    /// `Dφ = e^{−iθ}Dc(e^{iθ}φ)`.
    pub fn d(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.from_tilde(&compact_derivative(&self.to_tilde(f), self.dx))
    }

    /// `D⁻¹g` vanishing at the left end.
    pub fn d_inv_left(&self, g: &[Complex64]) -> Vec<Complex64> {
        self.from_tilde(&cumulative_left(&self.to_tilde(g), self.dx))
    }

    /// `D⁻¹g` vanishing at the right end.
    pub fn d_inv_right(&self, g: &[Complex64]) -> Vec<Complex64> {
        let r = cumulative_right(&self.to_tilde(g), self.dx);
        self.from_tilde(&r.iter().map(|v| -v).collect::<Vec<_>>())
    }

    /// `L_in φ = −Dφ − iaφ`.
    pub fn l_in(&self, f: &[Complex64]) -> Vec<Complex64> {
        let ia = Complex64::new(0.0, self.a);
        self.d(f).iter().zip(f).map(|(d, v)| -d - ia * v).collect()
    }

    /// `L_out φ = Dφ − iaφ`.
    pub fn l_out(&self, f: &[Complex64]) -> Vec<Complex64> {
        let ia = Complex64::new(0.0, self.a);
        self.d(f).iter().zip(f).map(|(d, v)| d - ia * v).collect()
    }

    /// `‖Dφ‖²`, the `Ḣ¹` norm of a profile.
    pub fn h1_norm2(&self, f: &[Complex64]) -> f64 {
        norm2(&compact_derivative(&self.to_tilde(f), self.dx), self.dx)
    }

    /// Profile energy `‖Du0‖² + ‖u1 − au0‖²`.
    pub fn energy(&self, u: &ModeState) -> f64 {
        let g: Vec<Complex64> = u.u1.iter().zip(&u.u0).map(|(b, a)| b - a * self.a).collect();
        self.h1_norm2(&u.u0) + norm2(&g, self.dx)
    }

    /// `Ψ(φ_in, φ_out)`.
    pub fn psi(&self, phi_in: &[Complex64], phi_out: &[Complex64]) -> ModeState {
        let i = Complex64::new(0.0, 1.0);
        let li = self.l_in(phi_in);
        let lo = self.l_out(phi_out);
        ModeState {
            time: 0.0,
            u0: phi_in.iter().zip(phi_out).map(|(a, b)| (a + b) * FRAC_1_SQRT_2).collect(),
            u1: li.iter().zip(&lo).map(|(a, b)| i * (a + b) * FRAC_1_SQRT_2).collect(),
        }
    }

    /// `Ψ⁻¹u = (1/√2)(u0 + iD⁻¹g, u0 − iD⁻¹g)` with `g = u1 − au0` and the
    /// antiderivative anchored at the left end.
    pub fn psi_inverse(&self, u: &ModeState) -> (Vec<Complex64>, Vec<Complex64>) {
        let i = Complex64::new(0.0, 1.0);
        let g: Vec<Complex64> = u.u1.iter().zip(&u.u0).map(|(b, a)| b - a * self.a).collect();
        let dg = self.d_inv_left(&g);
        let phi_in = u.u0.iter().zip(&dg).map(|(a, b)| (a + i * b) * FRAC_1_SQRT_2).collect();
        let phi_out = u.u0.iter().zip(&dg).map(|(a, b)| (a - i * b) * FRAC_1_SQRT_2).collect();
        (phi_in, phi_out)
    }

    /// `e^{−tL_in}φ`: in the tilde frame `φ̃(x) ↦ e^{iat}φ̃(x + t)`.
    pub fn transport_in(&self, f: &[Complex64], t: f64) -> Vec<Complex64> {
        let rot = Complex64::from_polar(1.0, self.a * t);
        let moved = shift(&self.to_tilde(f), t, self.dx);
        self.from_tilde(&moved.iter().map(|v| v * rot).collect::<Vec<_>>())
    }

    /// `e^{−tL_out}φ`: in the tilde frame `φ̃(x) ↦ e^{iat}φ̃(x − t)`.
    pub fn transport_out(&self, f: &[Complex64], t: f64) -> Vec<Complex64> {
        let rot = Complex64::from_polar(1.0, self.a * t);
        let moved = shift(&self.to_tilde(f), -t, self.dx);
        self.from_tilde(&moved.iter().map(|v| v * rot).collect::<Vec<_>>())
    }

    /// Exact geometric-profile evolution `e^{itḢ}` by `t` (any sign).
    pub fn evolve(&self, u: &ModeState, t: f64) -> ModeState {
        let (a, b) = self.psi_inverse(u);
        let mut out = self.psi(&self.transport_in(&a, t), &self.transport_out(&b, t));
        out.time = u.time + t;
        out
    }

    /// Largest of the two sublattice totals of `∫e^{iθ}(u1 − au0)`: the
    /// residual that must vanish for the in/out decomposition to close.
    pub fn l_defect(&self, u: &ModeState) -> f64 {
        let g: Vec<Complex64> = u.u1.iter().zip(&u.u0).map(|(b, a)| b - a * self.a).collect();
        let (e, o) = simpson_totals(&self.to_tilde(&g), self.dx);
        e.norm().max(o.norm())
    }

    /// Splits `u` into a left-moving part supported in `(−∞, R₂]` and a
    /// right-moving part supported in `[R₁, ∞)` when `u` lives in `[R₁, R₂]`.
    pub fn decompose(&self, u: &ModeState, tol: f64) -> Result<InOutSplit, CoreError> {
        let defect = self.l_defect(u);
        if defect > tol {
            return Err(CoreError::NotInLClass { defect, tol });
        }
        let i = Complex64::new(0.0, 1.0);
        let a = self.a;
        let u0t = self.to_tilde(&u.u0);
        let g: Vec<Complex64> = u.u1.iter().zip(&u.u0).map(|(b, c)| b - c * a).collect();
        let gt = self.to_tilde(&g);
        let d0 = compact_derivative(&u0t, self.dx);
        let right = cumulative_right(&gt, self.dx);
        let left = cumulative_left(&gt, self.dx);
        let n = u0t.len();
        let mut in0 = Vec::with_capacity(n);
        let mut in1 = Vec::with_capacity(n);
        let mut out0 = Vec::with_capacity(n);
        let mut out1 = Vec::with_capacity(n);
        for k in 0..n {
            let a_in = (u0t[k] - i * right[k]) * 0.5;
            let a_out = (u0t[k] - i * left[k]) * 0.5;
            in0.push(a_in);
            in1.push(-i * d0[k] * 0.5 + gt[k] * 0.5 + a_in * a);
            out0.push(a_out);
            out1.push(i * d0[k] * 0.5 + gt[k] * 0.5 + a_out * a);
        }
        Ok(InOutSplit {
            incoming: ModeState { time: u.time, u0: self.from_tilde(&in0), u1: self.from_tilde(&in1) },
            outgoing: ModeState { time: u.time, u0: self.from_tilde(&out0), u1: self.from_tilde(&out1) },
            l_defect: defect,
        })
    }

    /// Subtracts the decomposition defect from `u1` through a bump of width
    /// `2·spread` centred at `center`, normalised to unit discrete integral.
    /// The `u1` change has `L²` norm proportional to `spread^{−1/2}`.
    ///
    /// Both sublattice totals are cancelled: the correction is `αb + βb̂`
    /// with `b̂_k = (−1)^k b_k`, whose parity-dependent totals make the 2×2
    /// system well conditioned. `β` is of the size of the sublattice
    /// mismatch, far below the smooth part.
    pub fn project_to_l(&self, u: &ModeState, center: f64, spread: f64) -> ModeState {
        let g: Vec<Complex64> = u.u1.iter().zip(&u.u0).map(|(b, a)| b - a * self.a).collect();
        let (e, o) = simpson_totals(&self.to_tilde(&g), self.dx);
        let bump: Vec<Complex64> = self
            .x
            .iter()
            .map(|&x| {
                let y = (x - center) / spread;
                if y.abs() < 1.0 {
                    Complex64::new((1.0 - 1.0 / (1.0 - y * y)).exp() / spread, 0.0)
                } else {
                    czero()
                }
            })
            .collect();
        let alt: Vec<Complex64> = bump.iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b } else { -b }).collect();
        let (be, bo) = simpson_totals(&bump, self.dx);
        let (ae, ao) = simpson_totals(&alt, self.dx);
        let det = be * ao - ae * bo;
        let alpha = (e * ao - ae * o) / det;
        let beta = (be * o - e * bo) / det;
        let corr: Vec<Complex64> = bump.iter().zip(&alt).map(|(b, a)| b * alpha + a * beta).collect();
        let corr = self.from_tilde(&corr);
        ModeState {
            time: u.time,
            u0: u.u0.clone(),
            u1: u.u1.iter().zip(&corr).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Support bounds `[first, last]` of the nodes where `|u0|` or `|u1|`
/// exceeds `threshold`, or `None` for an (effectively) zero state.
pub fn support_bounds(x: &[f64], u: &ModeState, threshold: f64) -> Option<(f64, f64)> {
    let mut first = None;
    let mut last = None;
    for k in 0..u.u0.len() {
        if u.u0[k].norm() > threshold || u.u1[k].norm() > threshold {
            if first.is_none() {
                first = Some(x[k]);
            }
            last = Some(x[k]);
        }
    }
    first.zip(last)
}

/// Support edges before and after a geometric-profile evolution of the
/// two halves of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HuygensReport {
    pub t: f64,
    /// Upper edge of the incoming support before and after.
    pub in_upper: (f64, f64),
    /// Lower edge of the outgoing support before and after.
    pub out_lower: (f64, f64),
    /// `|in_upper.1 − (in_upper.0 − t)|` and the analogue for the outgoing
    /// edge, in units of `dx`.
    pub in_shift_error_cells: f64,
    pub out_shift_error_cells: f64,
}

/// Evolves both halves of `split` by `t` and measures how far their support
/// edges moved.
pub fn huygens_check(frame: &ProfileFrame, split: &InOutSplit, t: f64, threshold: f64) -> HuygensReport {
    let x = &frame.x;
    let in_before = support_bounds(x, &split.incoming, threshold).map(|b| b.1).unwrap_or(f64::NAN);
    let out_before = support_bounds(x, &split.outgoing, threshold).map(|b| b.0).unwrap_or(f64::NAN);
    let ev_in = frame.evolve(&split.incoming, t);
    let ev_out = frame.evolve(&split.outgoing, t);
    let in_after = support_bounds(x, &ev_in, threshold).map(|b| b.1).unwrap_or(f64::NAN);
    let out_after = support_bounds(x, &ev_out, threshold).map(|b| b.0).unwrap_or(f64::NAN);
    HuygensReport {
        t,
        in_upper: (in_before, in_after),
        out_lower: (out_before, out_after),
        in_shift_error_cells: (in_after - (in_before - t)).abs() / frame.dx,
        out_shift_error_cells: (out_after - (out_before + t)).abs() / frame.dx,
    }
}
