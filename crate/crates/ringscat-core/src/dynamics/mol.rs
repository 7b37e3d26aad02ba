//! Method-of-lines solver for `−i∂_t(u0, u1) = (u1, hu0 + 2ku1)` with
//! `h = −e^{−iθ}∂²e^{iθ} + pot`.
//!
//! Interior nodes use the 4th-order central second derivative. The two
//! nodes at each edge follow the one-way equation of the locally constant
//! coefficient problem, `∂_t w = ±e^{−iθ}∂_x(e^{iθ}w) + iσk_edge w`, with a
//! 4th-order one-sided derivative, so waves leave the lattice instead of
//! reflecting. `σ = ±1` selects forward or backward time.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::stencil::{central_d2_into, one_sided_left, one_sided_right};
use crate::error::CoreError;
use crate::gridmodes::ModeState;

/// Stability bound on `dt/dx` enforced by [`MolSystem::advance`].
pub const CFL_LIMIT: f64 = 1.0;

/// Coefficients of one method-of-lines system.
#[derive(Clone, Debug)]
pub struct MolSystem {
    pub dx: f64,
    /// `e^{iθ}`, or `None` for `θ = 0`.
    pub phase: Option<Vec<Complex64>>,
    /// Multiplicative part of `h`, including `−k²`.
    pub pot: Vec<f64>,
    pub k: Vec<f64>,
}

struct Work {
    a0: Vec<Complex64>,
    a1: Vec<Complex64>,
    k0: [Vec<Complex64>; 4],
    k1: [Vec<Complex64>; 4],
    tmp: Vec<Complex64>,
    tmp2: Vec<Complex64>,
}

impl MolSystem {
    fn rhs(&self, sigma: f64, u0: &[Complex64], u1: &[Complex64], d0: &mut [Complex64], d1: &mut [Complex64], tmp: &mut [Complex64], tmp2: &mut [Complex64]) {
        let n = u0.len();
        let is = Complex64::new(0.0, sigma);
        match &self.phase {
            None => central_d2_into(u0, self.dx, tmp2),
            Some(ph) => {
                for i in 0..n {
                    tmp[i] = u0[i] * ph[i];
                }
                central_d2_into(tmp, self.dx, tmp2);
                for i in 0..n {
                    tmp2[i] *= ph[i].conj();
                }
            }
        }
        for i in 2..n - 2 {
            d0[i] = is * u1[i];
            let hu = -tmp2[i] + u0[i] * self.pot[i];
            d1[i] = is * (hu + u1[i] * (2.0 * self.k[i]));
        }
        for (w, dw) in [(u0, &mut *d0), (u1, &mut *d1)] {
            let (kl, kr) = (self.k[0], self.k[n - 1]);
            match &self.phase {
                None => {
                    for j in 0..2 {
                        dw[j] = one_sided_left(w, j, self.dx) + is * kl * w[j];
                        dw[n - 1 - j] = -one_sided_right(w, j, self.dx) + is * kr * w[n - 1 - j];
                    }
                }
                Some(ph) => {
                    let wl: [Complex64; 5] = core::array::from_fn(|m| w[m] * ph[m]);
                    let wr: [Complex64; 5] = core::array::from_fn(|m| w[n - 5 + m] * ph[n - 5 + m]);
                    for j in 0..2 {
                        dw[j] = one_sided_left(&wl, j, self.dx) * ph[j].conj() + is * kl * w[j];
                        dw[n - 1 - j] =
                            -one_sided_right(&wr, j, self.dx) * ph[n - 1 - j].conj() + is * kr * w[n - 1 - j];
                    }
                }
            }
        }
    }

    fn work(n: usize) -> Work {
        let z = || vec![Complex64::new(0.0, 0.0); n];
        Work { a0: z(), a1: z(), k0: [z(), z(), z(), z()], k1: [z(), z(), z(), z()], tmp: z(), tmp2: z() }
    }

    fn step(&self, sigma: f64, dt: f64, s: &mut ModeState, w: &mut Work) {
        let n = s.u0.len();
        let coef = [0.5 * dt, 0.5 * dt, dt];
        {
            let (k0, k1) = (&mut w.k0[0], &mut w.k1[0]);
            self.rhs(sigma, &s.u0, &s.u1, k0, k1, &mut w.tmp, &mut w.tmp2);
        }
        for stage in 1..4 {
            let c = coef[stage - 1];
            for i in 0..n {
                w.a0[i] = s.u0[i] + w.k0[stage - 1][i] * c;
                w.a1[i] = s.u1[i] + w.k1[stage - 1][i] * c;
            }
            let (k0s, k1s) = (&mut w.k0[stage], &mut w.k1[stage]);
            self.rhs(sigma, &w.a0, &w.a1, k0s, k1s, &mut w.tmp, &mut w.tmp2);
        }
        let c6 = dt / 6.0;
        for i in 0..n {
            s.u0[i] += (w.k0[0][i] + (w.k0[1][i] + w.k0[2][i]) * 2.0 + w.k0[3][i]) * c6;
            s.u1[i] += (w.k1[0][i] + (w.k1[1][i] + w.k1[2][i]) * 2.0 + w.k1[3][i]) * c6;
        }
    }

    /// Advances `state` by `duration` (forward when `duration > 0`, backward
    /// otherwise) with the largest uniform step not exceeding `cfl·dx`.
    pub fn advance(&self, state: &mut ModeState, duration: f64, cfl: f64) -> Result<(), CoreError> {
        if !(cfl > 0.0 && cfl <= CFL_LIMIT) {
            return Err(CoreError::CflViolation { cfl, limit: CFL_LIMIT });
        }
        if state.u0.len() < 8 {
            return Err(CoreError::InvalidGrid("method of lines needs at least 8 nodes"));
        }
        if duration == 0.0 {
            return Ok(());
        }
        let sigma = duration.signum();
        let span = duration.abs();
        let steps = (span / (cfl * self.dx) - 1e-9).ceil().max(1.0) as usize;
        let dt = span / steps as f64;
        let mut w = Self::work(state.u0.len());
        let t0 = state.time;
        for k in 0..steps {
            self.step(sigma, dt, state, &mut w);
            if k % 256 == 255 || k + 1 == steps {
                if let Some(node) = state.is_finite() {
                    return Err(CoreError::NonFinite { node, time: t0 + sigma * dt * (k + 1) as f64 });
                }
            }
        }
        state.time = t0 + duration;
        Ok(())
    }
}
