//! Finite-time wave operators by Cook's method, full wave operators built
//! from the two horizon profiles, horizon traces read at edge probes, and
//! the Goursat reconstruction.
//!
//! Every operator is a limit `t → ∞` of a finite-time expression. The
//! protocol advances in checkpoints of width `Δ`, records the energy norm of
//! the increment between consecutive checkpoints, and stops once that
//! increment stays below `tol` for `consecutive` checkpoints in a row. Past
//! operators run the same code with time reversed.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dynamics::energy;
use crate::dynamics::{EvolutionKind, ModeSystem, Side};
use crate::error::CoreError;
use crate::gridmodes::{CutoffFamily, ModeState};

const SQRT_2: f64 = core::f64::consts::SQRT_2;

/// Future (`t → +∞`) or past (`t → −∞`) asymptotics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimeDirection {
    Future,
    Past,
}

impl TimeDirection {
    pub fn sign(self) -> f64 {
        match self {
            TimeDirection::Future => 1.0,
            TimeDirection::Past => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TimeDirection::Future => "future",
            TimeDirection::Past => "past",
        }
    }
}

/// Checkpoint schedule and stopping rule of the finite-time protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CookProtocol {
    /// Spacing `Δ` of the checkpoints.
    pub checkpoint: f64,
    pub t_max: f64,
    /// Relative increment below which a checkpoint counts as converged.
    pub tol: f64,
    /// Converged checkpoints needed in a row.
    pub consecutive: usize,
    /// Increments below this relative size are excluded from the rate fit.
    pub fit_floor: f64,
    /// Relative amplitude in the outer 2% of the lattice that signals a
    /// comparison solution running off the domain.
    pub edge_tol: f64,
}

impl Default for CookProtocol {
    fn default() -> Self {
        CookProtocol { checkpoint: 5.0, t_max: 80.0, tol: 1e-6, consecutive: 3, fit_floor: 1e-9, edge_tol: 1e-6 }
    }
}

/// Outcome of one wave-operator run.
#[derive(Clone, Debug)]
pub struct ScatteringResult {
    pub limit_state: ModeState,
    /// `(t_k, relative increment)` per checkpoint.
    pub history: Vec<(f64, f64)>,
    /// Exponential decay rate of the increments after the transient.
    pub fitted_rate: Option<f64>,
    pub converged: bool,
    /// Time of the last checkpoint.
    pub t_final: f64,
}

/// Output of the inverse full wave operator: one profile per horizon.
#[derive(Clone, Debug)]
pub struct ProfilePair {
    pub horizon: Vec<Complex64>,
    pub cosmological: Vec<Complex64>,
    pub history: Vec<(f64, f64)>,
    pub fitted_rate: Option<f64>,
    pub converged: bool,
    pub t_final: f64,
}

/// Field values recorded at the edge probes and expressed in horizon
/// coordinates. `xi[j]` sits at `t⋆ = x_L + j·dt` and `zeta[j]` at
/// `⋆t = j·dt − x_R`.
#[derive(Clone, Debug)]
pub struct HorizonTrace {
    pub direction: TimeDirection,
    pub xi: Vec<Complex64>,
    pub zeta: Vec<Complex64>,
    pub dt: f64,
    pub probe_x: (f64, f64),
    pub probe_nodes: (usize, usize),
    /// `‖Dφ_𝓗‖² + ‖Eφ_𝓘‖²` of the pulled-back profiles.
    pub horizon_energy: f64,
}

impl HorizonTrace {
    pub fn t_star(&self, j: usize) -> f64 {
        self.probe_x.0 + j as f64 * self.dt
    }

    pub fn star_t(&self, j: usize) -> f64 {
        j as f64 * self.dt - self.probe_x.1
    }
}

/// One row of [`boundedness_series`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergySample {
    pub t: f64,
    /// `‖u(t)‖_Ė / ‖u(0)‖_Ė`.
    pub ratio: f64,
    /// `⟨u(t)|u(t)⟩_μ` at `μ = s𝐳V_-`.
    pub conserved: f64,
    pub homogeneous: f64,
}

/// Summary of a boundedness run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundednessSummary {
    pub sup_ratio: f64,
    /// Relative drift of the conserved energy over the run.
    pub conserved_drift: f64,
    /// Largest `|‖u(t)‖²_Ė − ‖u(0)‖²_Ė| / ‖u(0)‖²_Ė`.
    pub homogeneous_excursion: f64,
    /// The sup over the second half of the window does not exceed the sup
    /// over the first half by more than 1%.
    pub plateau: bool,
}

fn norm_e(sys: &ModeSystem<'_>, u: &ModeState) -> f64 {
    energy::homogeneous(sys.grid, &sys.pots, u).max(0.0).sqrt()
}

/// Least-squares slope of `−ln(increment)` against `t` over the decreasing
/// run that follows the largest increment.
pub fn fit_decay_rate(history: &[(f64, f64)], floor: f64) -> Option<f64> {
    let peak = history
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, &(_, v))| match best {
            Some((_, b)) if b >= v => best,
            _ => Some((i, v)),
        })?
        .0;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut last = f64::INFINITY;
    for &(t, v) in &history[peak..] {
        if !(v > floor && v < last) {
            break;
        }
        pts.push((t, v.ln()));
        last = v;
    }
    // Drop the peak itself: it is still inside the transient.
    if pts.len() > 3 {
        pts.remove(0);
    }
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ml = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - ml)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum();
    Some(-sxy / sxx)
}

/// Wave-operator machinery for one mode on one lattice.
pub struct Scatterer<'s, 'g> {
    pub sys: &'s ModeSystem<'g>,
    pub cutoffs: CutoffFamily,
    pub protocol: CookProtocol,
}

/// Which comparison family a kind belongs to and at which horizon.
fn kind_side(kind: EvolutionKind) -> Result<Side, CoreError> {
    match kind {
        EvolutionKind::SeparableMinus | EvolutionKind::ProfileAsymptoticH | EvolutionKind::ProfileGeometricH => {
            Ok(Side::Horizon)
        }
        EvolutionKind::SeparablePlus | EvolutionKind::ProfileAsymptoticI | EvolutionKind::ProfileGeometricI => {
            Ok(Side::Cosmological)
        }
        EvolutionKind::Full => Err(CoreError::InvalidMode("the full dynamics has no wave operator against itself")),
    }
}

impl<'s, 'g> Scatterer<'s, 'g> {
    pub fn new(sys: &'s ModeSystem<'g>, cutoffs: CutoffFamily, protocol: CookProtocol) -> Self {
        Scatterer { sys, cutoffs, protocol }
    }

    fn outer_cutoff(&self, side: Side) -> &[f64] {
        match side {
            Side::Horizon => &self.cutoffs.i_minus,
            Side::Cosmological => &self.cutoffs.i_plus,
        }
    }

    fn inner_cutoff(&self, side: Side) -> &[f64] {
        match side {
            Side::Horizon => &self.cutoffs.j_minus,
            Side::Cosmological => &self.cutoffs.j_plus,
        }
    }

    fn checkpoints(&self) -> usize {
        (self.protocol.t_max / self.protocol.checkpoint - 1e-9).ceil().max(1.0) as usize
    }

    /// Fraction of the peak amplitude found in the outer 2% of the lattice.
    fn edge_fraction(&self, u: &ModeState) -> f64 {
        let n = u.len();
        let band = (n / 50).max(4);
        let amp = |i: usize| u.u0[i].norm().max(u.u1[i].norm());
        let peak = (0..n).map(amp).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        (0..band).chain(n - band..n).map(amp).fold(0.0, f64::max) / peak
    }

    fn full(&self, u: &ModeState, t: f64) -> Result<ModeState, CoreError> {
        self.sys.evolve(EvolutionKind::Full, u, t)
    }

    /// Shared loop of the direct operators: `make(t)` is the cut-off
    /// comparison solution at checkpoint `t`, pulled back to `Σ₀` by the
    /// full dynamics.
    fn direct_protocol(
        &self,
        dir: TimeDirection,
        scale: f64,
        mut make: impl FnMut(f64) -> Result<ModeState, CoreError>,
    ) -> Result<ScatteringResult, CoreError> {
        let sigma = dir.sign();
        let p = self.protocol;
        let mut prev = make(0.0)?;
        let mut history = Vec::new();
        let mut below = 0;
        let mut t = 0.0;
        let mut converged = false;
        for k in 1..=self.checkpoints() {
            let tk = (k as f64 * p.checkpoint).min(p.t_max);
            let next = make(tk)?;
            let back = self.full(&next, -sigma * (tk - t))?;
            let inc = if scale > 0.0 { norm_e(self.sys, &back.sub(&prev)) / scale } else { 0.0 };
            history.push((tk, inc));
            t = tk;
            prev = next;
            if inc < p.tol {
                below += 1;
                if below >= p.consecutive {
                    converged = true;
                    break;
                }
            } else {
                below = 0;
                let edge = self.edge_fraction(&prev);
                if edge > p.edge_tol {
                    return Err(CoreError::DomainTooSmall { edge_fraction: edge });
                }
            }
        }
        let mut limit = self.full(&prev, -sigma * t)?;
        limit.time = 0.0;
        Ok(ScatteringResult {
            limit_state: limit,
            fitted_rate: fit_decay_rate(&history, p.fit_floor),
            history,
            converged,
            t_final: t,
        })
    }

    /// `lim e^{−itḢ} i_∓ e^{itḢ_kind} u` (future) or its time reflection.
    pub fn wave_operator_direct(
        &self,
        kind: EvolutionKind,
        dir: TimeDirection,
        data: &ModeState,
    ) -> Result<ScatteringResult, CoreError> {
        let side = kind_side(kind)?;
        let sigma = dir.sign();
        let cut = self.outer_cutoff(side).to_vec();
        let scale = norm_e(self.sys, data);
        let mut cmp = data.clone();
        cmp.time = 0.0;
        let mut cmp_t = 0.0;
        self.direct_protocol(dir, scale, |t| {
            if t > cmp_t {
                cmp = self.sys.evolve(kind, &cmp, sigma * (t - cmp_t))?;
                cmp_t = t;
            }
            Ok(cmp.multiply_pointwise(&cut))
        })
    }

    /// `lim e^{−itḢ_kind} j_∓ e^{itḢ} u` (future) or its time reflection.
    pub fn wave_operator_inverse(
        &self,
        kind: EvolutionKind,
        dir: TimeDirection,
        data: &ModeState,
    ) -> Result<ScatteringResult, CoreError> {
        let side = kind_side(kind)?;
        let sigma = dir.sign();
        let p = self.protocol;
        let cut = self.inner_cutoff(side);
        let scale = norm_e(self.sys, data);
        let mut full = data.clone();
        full.time = 0.0;
        let mut prev = full.multiply_pointwise(cut);
        let mut history = Vec::new();
        let (mut below, mut t, mut converged) = (0, 0.0, false);
        for k in 1..=self.checkpoints() {
            let tk = (k as f64 * p.checkpoint).min(p.t_max);
            full = self.full(&full, sigma * (tk - t))?;
            t = tk;
            let mut next = self.sys.evolve(kind, &full.multiply_pointwise(cut), -sigma * tk)?;
            next.time = 0.0;
            let d = next.sub(&prev);
            let inc = if scale > 0.0 { self.sys.kind_energy(kind, &d).max(0.0).sqrt() / scale } else { 0.0 };
            history.push((tk, inc));
            prev = next;
            if inc < p.tol {
                below += 1;
                if below >= p.consecutive {
                    converged = true;
                    break;
                }
            } else {
                below = 0;
            }
        }
        Ok(ScatteringResult {
            limit_state: prev,
            fitted_rate: fit_decay_rate(&history, p.fit_floor),
            history,
            converged,
            t_final: t,
        })
    }

    /// Free transport of a horizon profile: the component of `e^{iσtḢ_side}`
    /// that moves toward `side` as `σt → ∞`.
    pub fn transport_profile(&self, side: Side, dir: TimeDirection, phi: &[Complex64], t: f64) -> Vec<Complex64> {
        let fr = self.sys.frame(side);
        let st = dir.sign() * t;
        match (side, dir) {
            (Side::Horizon, TimeDirection::Future) | (Side::Cosmological, TimeDirection::Past) => {
                fr.transport_in(phi, st)
            }
            _ => fr.transport_out(phi, st),
        }
    }

    /// `√2·Ψ_side` applied to `φ` placed in the component that reaches `side`.
    pub fn embed_profile(&self, side: Side, dir: TimeDirection, phi: &[Complex64]) -> ModeState {
        let fr = self.sys.frame(side);
        let zero = vec![Complex64::new(0.0, 0.0); phi.len()];
        let into_in = matches!((side, dir), (Side::Horizon, TimeDirection::Future) | (Side::Cosmological, TimeDirection::Past));
        let s = if into_in { fr.psi(phi, &zero) } else { fr.psi(&zero, phi) };
        s.scaled(Complex64::new(SQRT_2, 0.0))
    }

    /// Full wave operator `W(φ_𝓗, φ_𝓘) = lim √2 e^{−itḢ}[i_-Ψ_𝓗(…) + i_+Ψ_𝓘(…)]`.
    pub fn full_wave_operator(
        &self,
        dir: TimeDirection,
        phi_h: &[Complex64],
        phi_i: &[Complex64],
    ) -> Result<ScatteringResult, CoreError> {
        let fh = self.sys.frame(Side::Horizon);
        let fi = self.sys.frame(Side::Cosmological);
        let scale = (fh.h1_norm2(phi_h) + fi.h1_norm2(phi_i)).sqrt() * SQRT_2;
        let im = self.cutoffs.i_minus.clone();
        let ip = self.cutoffs.i_plus.clone();
        self.direct_protocol(dir, scale, |t| {
            let a = self.embed_profile(Side::Horizon, dir, &self.transport_profile(Side::Horizon, dir, phi_h, t));
            let b = self.embed_profile(Side::Cosmological, dir, &self.transport_profile(Side::Cosmological, dir, phi_i, t));
            let mut s = a.multiply_pointwise(&im);
            let b = b.multiply_pointwise(&ip);
            for k in 0..s.len() {
                s.u0[k] += b.u0[k];
                s.u1[k] += b.u1[k];
            }
            Ok(s)
        })
    }

    /// Full inverse wave operator
    /// `Ω u = lim (e^{tL}(j_-e^{itḢ}u)₀, e^{tL}(j_+e^{itḢ}u)₀)`.
    pub fn full_inverse_wave_operator(&self, dir: TimeDirection, data: &ModeState) -> Result<ProfilePair, CoreError> {
        let sigma = dir.sign();
        let p = self.protocol;
        let fh = self.sys.frame(Side::Horizon);
        let fi = self.sys.frame(Side::Cosmological);
        let scale = norm_e(self.sys, data);
        let pull = |u: &ModeState, t: f64| -> (Vec<Complex64>, Vec<Complex64>) {
            let h = u.multiply_pointwise(&self.cutoffs.j_minus).u0;
            let c = u.multiply_pointwise(&self.cutoffs.j_plus).u0;
            (
                self.transport_profile(Side::Horizon, dir, &h, -t),
                self.transport_profile(Side::Cosmological, dir, &c, -t),
            )
        };
        let mut full = data.clone();
        full.time = 0.0;
        let mut prev = pull(&full, 0.0);
        let mut history = Vec::new();
        let (mut below, mut t, mut converged) = (0, 0.0, false);
        for k in 1..=self.checkpoints() {
            let tk = (k as f64 * p.checkpoint).min(p.t_max);
            full = self.full(&full, sigma * (tk - t))?;
            t = tk;
            let next = pull(&full, tk);
            let dh: Vec<Complex64> = next.0.iter().zip(&prev.0).map(|(a, b)| a - b).collect();
            let di: Vec<Complex64> = next.1.iter().zip(&prev.1).map(|(a, b)| a - b).collect();
            // ‖√2Ψ(φ)‖_Ė = √2‖φ‖_Ḣ¹ puts the increment on the scale of ‖u‖_Ė.
            let inc = if scale > 0.0 { SQRT_2 * (fh.h1_norm2(&dh) + fi.h1_norm2(&di)).sqrt() / scale } else { 0.0 };
            history.push((tk, inc));
            prev = next;
            if inc < p.tol {
                below += 1;
                if below >= p.consecutive {
                    converged = true;
                    break;
                }
            } else {
                below = 0;
            }
        }
        Ok(ProfilePair {
            horizon: prev.0,
            cosmological: prev.1,
            fitted_rate: fit_decay_rate(&history, p.fit_floor),
            history,
            converged,
            t_final: t,
        })
    }

    /// `Υ(u) = ‖u1 − iL u0‖ / ‖u‖_Ė` for the generator of the component
    /// that reaches `side`; zero exactly on `Ψ`-images of that component.
    pub fn range_defect(&self, side: Side, dir: TimeDirection, u: &ModeState) -> f64 {
        let fr = self.sys.frame(side);
        let into_in = matches!((side, dir), (Side::Horizon, TimeDirection::Future) | (Side::Cosmological, TimeDirection::Past));
        let l = if into_in { fr.l_in(&u.u0) } else { fr.l_out(&u.u0) };
        let i = Complex64::new(0.0, 1.0);
        let g: Vec<Complex64> = u.u1.iter().zip(&l).map(|(a, b)| a - i * b).collect();
        let scale = norm_e(self.sys, u);
        if scale == 0.0 {
            return 0.0;
        }
        (g.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.sys.grid.dx).sqrt() / scale
    }

    /// Probe nodes `(x_L, x_R)` at `margin` cells from each edge.
    pub fn probe_nodes(&self, margin: usize) -> Result<(usize, usize), CoreError> {
        let n = self.sys.grid.n;
        if 2 * margin + 8 > n {
            return Err(CoreError::InvalidGrid("probe margin leaves no interior"));
        }
        Ok((margin, n - 1 - margin))
    }

    /// `e^{is𝐳∫_0^{x_i}Ṽ}` at node `i`, with the gauged `Ṽ = V − V_+`.
    fn y_phase(&self, i: usize) -> Complex64 {
        let g = self.sys.grid;
        Complex64::from_polar(1.0, self.sys.pots.s_z * (g.v_integral[i] - g.map.h.v_plus() * g.x[i]))
    }

    /// Horizon traces `𝒰(φ_𝓗, φ_𝓘)` of a pair of profiles.
    pub fn profiles_to_trace(
        &self,
        dir: TimeDirection,
        phi_h: &[Complex64],
        phi_i: &[Complex64],
        margin: usize,
    ) -> Result<HorizonTrace, CoreError> {
        let (il, ir) = self.probe_nodes(margin)?;
        let n = self.sys.grid.n;
        let xi: Vec<Complex64> = (il..n).map(|k| self.y_phase(k) * phi_h[k]).collect();
        let zeta: Vec<Complex64> = (0..=ir).rev().map(|k| self.y_phase(k).conj() * phi_i[k]).collect();
        Ok(self.finish_trace(dir, xi, zeta, il, ir))
    }

    fn finish_trace(&self, dir: TimeDirection, xi: Vec<Complex64>, zeta: Vec<Complex64>, il: usize, ir: usize) -> HorizonTrace {
        let g = self.sys.grid;
        let mut tr = HorizonTrace {
            direction: dir,
            xi,
            zeta,
            dt: g.dx,
            probe_x: (g.x[il], g.x[ir]),
            probe_nodes: (il, ir),
            horizon_energy: 0.0,
        };
        let (h, c) = self.trace_to_profiles(&tr);
        tr.horizon_energy = self.sys.frame(Side::Horizon).h1_norm2(&h) + self.sys.frame(Side::Cosmological).h1_norm2(&c);
        tr
    }

    /// `𝒰⁻¹`: profiles on the lattice whose traces are `(ξ, ζ)`; nodes the
    /// trace does not reach are set to zero.
    pub fn trace_to_profiles(&self, tr: &HorizonTrace) -> (Vec<Complex64>, Vec<Complex64>) {
        let n = self.sys.grid.n;
        let (il, ir) = tr.probe_nodes;
        let mut h = vec![Complex64::new(0.0, 0.0); n];
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (j, v) in tr.xi.iter().enumerate() {
            if il + j < n {
                h[il + j] = self.y_phase(il + j).conj() * v;
            }
        }
        for (j, v) in tr.zeta.iter().enumerate() {
            if j <= ir {
                c[ir - j] = self.y_phase(ir - j) * v;
            }
        }
        (h, c)
    }

    /// Records the full solution at the two probes every `dx` of time up to
    /// `t_record` and converts the samples into horizon traces.
    ///
    /// The residual amplitude over the final 5% of the record, relative to
    /// the recorded peak, must be below `underrun_tol`.
    pub fn trace_by_probes(
        &self,
        dir: TimeDirection,
        data: &ModeState,
        t_record: f64,
        margin: usize,
        underrun_tol: f64,
    ) -> Result<HorizonTrace, CoreError> {
        let sigma = dir.sign();
        let (il, ir) = self.probe_nodes(margin)?;
        let g = self.sys.grid;
        let fh = self.sys.frame(Side::Horizon);
        let fi = self.sys.frame(Side::Cosmological);
        let steps = ((t_record / g.dx) + 1e-9).floor() as usize;
        let n = g.n;
        let lim_h = (n - il).min(steps + 1);
        let lim_i = (ir + 1).min(steps + 1);
        let mut raw_h = Vec::with_capacity(steps + 1);
        let mut raw_i = Vec::with_capacity(steps + 1);
        let mol = self.sys.mol_system(EvolutionKind::Full);
        let mut u = data.clone();
        u.time = 0.0;
        for j in 0..=steps {
            if j > 0 {
                mol.advance(&mut u, sigma * g.dx, self.sys.cfl)?;
            }
            raw_h.push(u.u0[il]);
            raw_i.push(u.u0[ir]);
        }
        let peak = raw_h.iter().chain(&raw_i).fold(0.0f64, |m, z| m.max(z.norm()));
        let tail = (steps + 1) / 20;
        let resid = raw_h[steps + 1 - tail.max(1)..]
            .iter()
            .chain(&raw_i[steps + 1 - tail.max(1)..])
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if peak > 0.0 && resid > underrun_tol * peak {
            return Err(CoreError::ProbeUnderrun { residual: resid / peak });
        }
        // φ(y) = e^{−iθ(y)}·e^{−iσat}·e^{iθ(x_probe)}·u0(σt, x_probe): the
        // inverse transport of the probe sample, with y = x_L + t or x_R − t.
        let mut xi = Vec::with_capacity(lim_h);
        for (j, v) in raw_h.iter().enumerate().take(lim_h) {
            let t = j as f64 * g.dx;
            let k = il + j;
            let phi = fh.phase[k].conj() * Complex64::from_polar(1.0, -sigma * fh.a * t) * fh.phase[il] * v;
            xi.push(self.y_phase(k) * phi);
        }
        let mut zeta = Vec::with_capacity(lim_i);
        for (j, v) in raw_i.iter().enumerate().take(lim_i) {
            let t = j as f64 * g.dx;
            let k = ir - j;
            let phi = fi.phase[k].conj() * Complex64::from_polar(1.0, -sigma * fi.a * t) * fi.phase[ir] * v;
            zeta.push(self.y_phase(k).conj() * phi);
        }
        Ok(self.finish_trace(dir, xi, zeta, il, ir))
    }

    /// `𝒰Ω u`: the traces predicted by the inverse full wave operator.
    pub fn trace_by_operator(&self, dir: TimeDirection, data: &ModeState, margin: usize) -> Result<(HorizonTrace, ProfilePair), CoreError> {
        let pair = self.full_inverse_wave_operator(dir, data)?;
        let tr = self.profiles_to_trace(dir, &pair.horizon, &pair.cosmological, margin)?;
        Ok((tr, pair))
    }

    /// Horizon energy of the difference of two traces on the same probes,
    /// restricted to the samples both carry.
    pub fn trace_distance(&self, a: &HorizonTrace, b: &HorizonTrace) -> f64 {
        let m_h = a.xi.len().min(b.xi.len());
        let m_i = a.zeta.len().min(b.zeta.len());
        let d = HorizonTrace {
            direction: a.direction,
            xi: (0..m_h).map(|j| a.xi[j] - b.xi[j]).collect(),
            zeta: (0..m_i).map(|j| a.zeta[j] - b.zeta[j]).collect(),
            dt: a.dt,
            probe_x: a.probe_x,
            probe_nodes: a.probe_nodes,
            horizon_energy: 0.0,
        };
        let (h, c) = self.trace_to_profiles(&d);
        self.sys.frame(Side::Horizon).h1_norm2(&h) + self.sys.frame(Side::Cosmological).h1_norm2(&c)
    }

    /// Goursat data to Cauchy data: `𝕎 ∘ 𝒰⁻¹`.
    pub fn goursat_solve(&self, tr: &HorizonTrace) -> Result<ScatteringResult, CoreError> {
        let (h, c) = self.trace_to_profiles(tr);
        self.full_wave_operator(tr.direction, &h, &c)
    }
}

/// Energy time series of the full evolution of `data`, sampled every
/// `sample_every` up to `t_max`.
pub fn boundedness_series(
    sys: &ModeSystem<'_>,
    data: &ModeState,
    t_max: f64,
    sample_every: f64,
) -> Result<(Vec<EnergySample>, BoundednessSummary), CoreError> {
    let e0 = energy::homogeneous(sys.grid, &sys.pots, data);
    let c0 = energy::conserved(sys.grid, &sys.pots, data, sys.pots.k_minus_inf);
    let mol = sys.mol_system(EvolutionKind::Full);
    let mut u = data.clone();
    u.time = 0.0;
    let mut rows = vec![EnergySample { t: 0.0, ratio: 1.0, conserved: c0, homogeneous: e0 }];
    let count = (t_max / sample_every - 1e-9).ceil().max(1.0) as usize;
    let mut t = 0.0;
    for k in 1..=count {
        let tk = (k as f64 * sample_every).min(t_max);
        mol.advance(&mut u, tk - t, sys.cfl)?;
        t = tk;
        let e = energy::homogeneous(sys.grid, &sys.pots, &u);
        let c = energy::conserved(sys.grid, &sys.pots, &u, sys.pots.k_minus_inf);
        let ratio = if e0 > 0.0 { (e.max(0.0) / e0).sqrt() } else { 0.0 };
        rows.push(EnergySample { t, ratio, conserved: c, homogeneous: e });
    }
    let half = rows.len() / 2;
    let sup = |r: &[EnergySample]| r.iter().map(|s| s.ratio).fold(0.0, f64::max);
    let sup_ratio = sup(&rows);
    let first = sup(&rows[..=half]);
    let second = sup(&rows[half..]);
    let scale = |x: f64| if x != 0.0 { x.abs() } else { 1.0 };
    let summary = BoundednessSummary {
        sup_ratio,
        conserved_drift: rows.iter().map(|s| (s.conserved - c0).abs()).fold(0.0, f64::max) / scale(c0),
        homogeneous_excursion: rows.iter().map(|s| (s.homogeneous - e0).abs()).fold(0.0, f64::max) / scale(e0),
        plateau: second <= first * 1.01,
    };
    Ok((rows, summary))
}
