//! `evolve`: one mode under one dynamics, with the energy time series.

use ringscat_core::dynamics::{energy, EvolutionKind};

use super::Background;
use crate::config::RunConfig;
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

/// Drift bound on the energy each dynamics conserves.
pub fn drift_tolerance(kind: EvolutionKind) -> f64 {
    match kind {
        EvolutionKind::Full => 1e-6,
        EvolutionKind::SeparableMinus | EvolutionKind::SeparablePlus => 1e-7,
        _ => 1e-10,
    }
}

pub fn run(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let kind = cfg.evolution.kind()?;
    let sys = bg.system(cfg)?;
    let u0 = bg.initial_state(&sys, &cfg.initial_data)?;
    let ev = &cfg.evolution;
    if !(ev.checkpoint_every > 0.0) || !(ev.t_target >= 0.0) {
        return Err(CliError::Config("evolution: checkpoint_every must be positive and t_target non-negative".into()));
    }
    let mut s = Summary::new("evolve");
    let grid = &bg.grid;
    let row = |t: f64, u: &ringscat_core::gridmodes::ModeState| {
        let e = sys.energies(u);
        vec![
            t,
            e.homogeneous,
            e.homogeneous_conjugated,
            e.inhomogeneous,
            e.conserved_zero,
            e.conserved_event,
            e.profile_horizon,
            e.profile_cosmological,
            sys.kind_energy(kind, u),
        ]
    };
    let mut rows = vec![row(0.0, &u0)];
    out.write_state("state_initial.csv", grid, &u0)?;
    let mut u = u0.clone();
    let mut t = 0.0;
    while t < ev.t_target - 1e-12 {
        let next = (t + ev.checkpoint_every).min(ev.t_target);
        u = sys.evolve(kind, &u, next - t).context("evolving")?;
        t = next;
        rows.push(row(t, &u));
    }
    out.write_state("state_final.csv", grid, &u)?;
    out.write_csv(
        "energies.csv",
        &[
            "t",
            "homogeneous",
            "homogeneous_conjugated",
            "inhomogeneous",
            "conserved_mu_0",
            "conserved_mu_szV_minus_gauged",
            "profile_energy_H",
            "profile_energy_I",
            "kind_energy",
        ],
        &rows,
    )?;
    let drift = |col: usize| {
        let e0 = rows[0][col];
        let scale = if e0 != 0.0 { e0.abs() } else { 1.0 };
        rows.iter().map(|r| (r[col] - e0).abs()).fold(0.0, f64::max) / scale
    };
    s.push(Check::below(format!("{}_energy_drift", kind.name()), drift(8), drift_tolerance(kind)));
    if kind == EvolutionKind::Full {
        s.push(Check::below("conserved_mu_0_drift", drift(4), 1e-6));
        s.push(Check::below("conserved_mu_event_drift", drift(5), 1e-6));
        if sys.pots.s_z == 0.0 {
            s.push(Check::below("homogeneous_drift_uncharged", drift(1), 1e-7));
        } else {
            s.measure("homogeneous_excursion", drift(1));
        }
    }
    let e = energy::homogeneous(grid, &sys.pots, &u0);
    let ec = energy::homogeneous_conjugated(grid, &sys.pots, &u0);
    s.measure("homogeneous_two_forms_rel_difference", (e - ec).abs() / e.abs().max(f64::MIN_POSITIVE));
    s.measure("t_final", t);
    Ok(s)
}
