//! Energy functionals of a mode state.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::stencil::{central_d1, central_d2, compact_derivative, norm2};
use crate::gridmodes::{ModePotentials, ModeState, RadialGrid};

/// `Re⟨(−D2 + pot)u, u⟩` with the symmetric 4th-order `D2`.
pub fn quadratic_form(u: &[Complex64], pot: &[f64], dx: f64) -> f64 {
    let d2 = central_d2(u, dx);
    let mut acc = 0.0;
    for i in 0..u.len() {
        acc += (-(d2[i] * u[i].conj())).re + pot[i] * u[i].norm_sqr();
    }
    acc * dx
}

/// `‖u1 − μu0‖²` with a pointwise `μ`.
fn shifted_norm2(u: &ModeState, mu: impl Fn(usize) -> f64, dx: f64) -> f64 {
    let g: Vec<Complex64> = (0..u.u0.len()).map(|i| u.u1[i] - u.u0[i] * mu(i)).collect();
    norm2(&g, dx)
}

/// Homogeneous energy `⟨h₀u0,u0⟩ + ‖u1 − ku0‖²`.
pub fn homogeneous(grid: &RadialGrid, pots: &ModePotentials, u: &ModeState) -> f64 {
    quadratic_form(&u.u0, &pots.pot0, grid.dx) + shifted_norm2(u, |i| pots.k[i], grid.dx)
}

/// Inhomogeneous energy: homogeneous plus `‖u0‖²`.
pub fn inhomogeneous(grid: &RadialGrid, pots: &ModePotentials, u: &ModeState) -> f64 {
    homogeneous(grid, pots, u) + norm2(&u.u0, grid.dx)
}

/// Conserved indefinite energy `⟨(h₀ − (k − μ)²)u0,u0⟩ + ‖u1 − μu0‖²`.
pub fn conserved(grid: &RadialGrid, pots: &ModePotentials, u: &ModeState, mu: f64) -> f64 {
    let pot: Vec<f64> = (0..grid.n).map(|i| pots.pot0[i] - (pots.k[i] - mu) * (pots.k[i] - mu)).collect();
    quadratic_form(&u.u0, &pot, grid.dx) + shifted_norm2(u, |_| mu, grid.dx)
}

/// Homogeneous energy with `⟨h₀u0,u0⟩` in the manifestly non-negative form
/// `∫ r²|∂_x(u0/r)|² + F(ℓ(ℓ+1)/r² + m²𝐳²)|u0|²`.
pub fn homogeneous_conjugated(grid: &RadialGrid, pots: &ModePotentials, u: &ModeState) -> f64 {
    let w: Vec<Complex64> = (0..grid.n).map(|i| u.u0[i] / grid.r[i]).collect();
    let dw = central_d1(&w, grid.dx);
    let mut acc = 0.0;
    for i in 0..grid.n {
        acc += pots.r2[i] * dw[i].norm_sqr() + pots.pot0_separable[i] * u.u0[i].norm_sqr();
    }
    acc * grid.dx + shifted_norm2(u, |i| pots.k[i], grid.dx)
}

/// Energy of a separable comparison dynamics, conserved by it:
/// `⟨h₀^sep u0,u0⟩ + ‖u1 − k_c u0‖²` with constant `k_c`.
pub fn separable(grid: &RadialGrid, pots: &ModePotentials, u: &ModeState, k_c: f64) -> f64 {
    quadratic_form(&u.u0, &pots.pot0_separable, grid.dx) + shifted_norm2(u, |_| k_c, grid.dx)
}

/// Energy of the asymptotic profile dynamics: `‖∂_x u0‖² + ‖u1 − k_c u0‖²`,
/// with the compact derivative that the Kirchhoff formula propagates.
pub fn asymptotic_profile(grid: &RadialGrid, u: &ModeState, k_c: f64) -> f64 {
    norm2(&compact_derivative(&u.u0, grid.dx), grid.dx) + shifted_norm2(u, |_| k_c, grid.dx)
}

/// All energies of a state gathered in one record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    pub homogeneous: f64,
    pub homogeneous_conjugated: f64,
    pub inhomogeneous: f64,
    /// `⟨·|·⟩_μ` at `μ = 0`.
    pub conserved_zero: f64,
    /// `⟨·|·⟩_μ` at `μ = s𝐳V_-`.
    pub conserved_event: f64,
    /// Geometric profile energies at the event and cosmological horizons.
    pub profile_horizon: f64,
    pub profile_cosmological: f64,
}
