//! Mode evolution for the full Hamiltonian and the comparison dynamics,
//! energy functionals, the `Ψ` transforms and the in/out decomposition.
//!
//! A state `(u0, u1)` is the pair `(u, −i∂_t u)`; every generator has the
//! form `Ḣ = [[0, 1], [h, 2k]]`.

pub mod energy;
pub mod mol;
pub mod profiles;
pub mod stencil;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::gridmodes::{ModeIndex, ModePotentials, ModeState, RadialGrid};
pub use energy::EnergyReport;
pub use mol::MolSystem;
pub use profiles::{huygens_check, support_bounds, HuygensReport, InOutSplit, ProfileFrame, Side};

/// Which generator drives an evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvolutionKind {
    Full,
    /// Potentials frozen at their event-horizon limits.
    SeparableMinus,
    /// Potentials frozen at their cosmological limits.
    SeparablePlus,
    /// `h_- = −∂² − s²V_-²𝐳²`, `k = s𝐳V_-`, solved by d'Alembert's formula.
    ProfileAsymptoticH,
    /// `h_+ = −∂²`, `k = 0` in the gauge `V_+ = 0`.
    ProfileAsymptoticI,
    ProfileGeometricH,
    ProfileGeometricI,
}

impl EvolutionKind {
    pub const ALL: [EvolutionKind; 7] = [
        EvolutionKind::Full,
        EvolutionKind::SeparableMinus,
        EvolutionKind::SeparablePlus,
        EvolutionKind::ProfileAsymptoticH,
        EvolutionKind::ProfileAsymptoticI,
        EvolutionKind::ProfileGeometricH,
        EvolutionKind::ProfileGeometricI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvolutionKind::Full => "full",
            EvolutionKind::SeparableMinus => "separable_minus",
            EvolutionKind::SeparablePlus => "separable_plus",
            EvolutionKind::ProfileAsymptoticH => "profile_asymptotic_H",
            EvolutionKind::ProfileAsymptoticI => "profile_asymptotic_I",
            EvolutionKind::ProfileGeometricH => "profile_geometric_H",
            EvolutionKind::ProfileGeometricI => "profile_geometric_I",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// Everything needed to evolve one mode on one lattice.
#[derive(Clone, Debug)]
pub struct ModeSystem<'g> {
    pub grid: &'g RadialGrid,
    pub pots: ModePotentials,
    pub frame_h: ProfileFrame,
    pub frame_i: ProfileFrame,
    pub cfl: f64,
    full: MolSystem,
}

impl<'g> ModeSystem<'g> {
    pub fn new(grid: &'g RadialGrid, mode: ModeIndex, cfl: f64) -> Self {
        let pots = crate::gridmodes::mode_potentials(grid, mode);
        let frame_h = ProfileFrame::new(grid, &pots, Side::Horizon);
        let frame_i = ProfileFrame::new(grid, &pots, Side::Cosmological);
        let full = MolSystem {
            dx: grid.dx,
            phase: None,
            pot: (0..grid.n).map(|i| pots.pot0[i] - pots.k2[i]).collect(),
            k: pots.k.clone(),
        };
        ModeSystem { grid, pots, frame_h, frame_i, cfl, full }
    }

    pub fn frame(&self, side: Side) -> &ProfileFrame {
        match side {
            Side::Horizon => &self.frame_h,
            Side::Cosmological => &self.frame_i,
        }
    }

    /// Method-of-lines discretisation of `kind`, used as an independent
    /// route against the exact transport of the profile kinds.
    pub fn mol_system(&self, kind: EvolutionKind) -> MolSystem {
        let n = self.grid.n;
        let constant = |pot: Vec<f64>, k: f64| MolSystem { dx: self.grid.dx, phase: None, pot, k: alloc::vec![k; n] };
        match kind {
            EvolutionKind::Full => self.full.clone(),
            EvolutionKind::SeparableMinus | EvolutionKind::SeparablePlus => {
                let kc = self.separable_k(kind);
                constant(self.pots.pot0_separable.iter().map(|p| p - kc * kc).collect(), kc)
            }
            EvolutionKind::ProfileAsymptoticH => {
                let kc = self.pots.k_minus_inf;
                constant(alloc::vec![-kc * kc; n], kc)
            }
            EvolutionKind::ProfileAsymptoticI => {
                let kc = self.pots.k_plus_inf;
                constant(alloc::vec![-kc * kc; n], kc)
            }
            EvolutionKind::ProfileGeometricH | EvolutionKind::ProfileGeometricI => {
                let fr = if kind == EvolutionKind::ProfileGeometricH { &self.frame_h } else { &self.frame_i };
                MolSystem { dx: self.grid.dx, phase: Some(fr.phase.clone()), pot: alloc::vec![-fr.a * fr.a; n], k: alloc::vec![fr.a; n] }
            }
        }
    }

    fn separable_k(&self, kind: EvolutionKind) -> f64 {
        if kind == EvolutionKind::SeparableMinus {
            self.pots.k_minus_inf
        } else {
            self.pots.k_plus_inf
        }
    }

    /// `e^{itḢ_kind}` applied to `state` (backward for `t < 0`).
    pub fn evolve(&self, kind: EvolutionKind, state: &ModeState, t: f64) -> Result<ModeState, CoreError> {
        match kind {
            EvolutionKind::Full => {
                let mut s = state.clone();
                self.full.advance(&mut s, t, self.cfl)?;
                Ok(s)
            }
            EvolutionKind::SeparableMinus | EvolutionKind::SeparablePlus => {
                let mut s = state.clone();
                self.mol_system(kind).advance(&mut s, t, self.cfl)?;
                Ok(s)
            }
            EvolutionKind::ProfileAsymptoticH => Ok(self.dalembert(state, t, self.pots.k_minus_inf)),
            EvolutionKind::ProfileAsymptoticI => Ok(self.dalembert(state, t, self.pots.k_plus_inf)),
            EvolutionKind::ProfileGeometricH => Ok(self.frame_h.evolve(state, t)),
            EvolutionKind::ProfileGeometricI => Ok(self.frame_i.evolve(state, t)),
        }
    }

    /// Kirchhoff formula for `(∂_t − ik)²u = ∂²u`: with `w = e^{−ikt}u` and
    /// `v = i(u1 − ku0)`, `w = ½(u0(x+t) + u0(x−t)) + ½∫_{x−t}^{x+t} v`.
    fn dalembert(&self, state: &ModeState, t: f64, k: f64) -> ModeState {
        use stencil::{compact_derivative, cumulative_left, shift};
        let dx = self.grid.dx;
        let i = Complex64::new(0.0, 1.0);
        let v: Vec<Complex64> = state.u1.iter().zip(&state.u0).map(|(b, a)| i * (b - a * k)).collect();
        let cum = cumulative_left(&v, dx);
        let d0 = compact_derivative(&state.u0, dx);
        let (up, um) = (shift(&state.u0, t, dx), shift(&state.u0, -t, dx));
        let (cp, cm) = (shift(&cum, t, dx), shift(&cum, -t, dx));
        let (dp, dm) = (shift(&d0, t, dx), shift(&d0, -t, dx));
        let (vp, vm) = (shift(&v, t, dx), shift(&v, -t, dx));
        let rot = Complex64::from_polar(1.0, k * t);
        let n = state.u0.len();
        let mut out = ModeState::zeros(n);
        for j in 0..n {
            let w = (up[j] + um[j]) * 0.5 + (cp[j] - cm[j]) * 0.5;
            let wt = (dp[j] - dm[j]) * 0.5 + (vp[j] + vm[j]) * 0.5;
            let u = rot * w;
            out.u0[j] = u;
            out.u1[j] = u * k - i * rot * wt;
        }
        out.time = state.time + t;
        out
    }

    /// Every energy functional of `u`.
    pub fn energies(&self, u: &ModeState) -> EnergyReport {
        EnergyReport {
            homogeneous: energy::homogeneous(self.grid, &self.pots, u),
            homogeneous_conjugated: energy::homogeneous_conjugated(self.grid, &self.pots, u),
            inhomogeneous: energy::inhomogeneous(self.grid, &self.pots, u),
            conserved_zero: energy::conserved(self.grid, &self.pots, u, 0.0),
            conserved_event: energy::conserved(self.grid, &self.pots, u, self.pots.k_minus_inf),
            profile_horizon: self.frame_h.energy(u),
            profile_cosmological: self.frame_i.energy(u),
        }
    }

    /// The energy that `kind` conserves.
    pub fn kind_energy(&self, kind: EvolutionKind, u: &ModeState) -> f64 {
        match kind {
            EvolutionKind::Full => energy::conserved(self.grid, &self.pots, u, 0.0),
            EvolutionKind::SeparableMinus | EvolutionKind::SeparablePlus => {
                energy::separable(self.grid, &self.pots, u, self.separable_k(kind))
            }
            EvolutionKind::ProfileAsymptoticH => energy::asymptotic_profile(self.grid, u, self.pots.k_minus_inf),
            EvolutionKind::ProfileAsymptoticI => energy::asymptotic_profile(self.grid, u, self.pots.k_plus_inf),
            EvolutionKind::ProfileGeometricH => self.frame_h.energy(u),
            EvolutionKind::ProfileGeometricI => self.frame_i.energy(u),
        }
    }
}
