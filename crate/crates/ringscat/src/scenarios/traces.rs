//! `trace` and `goursat`: horizon traces from edge probes and from the
//! inverse full wave operator, and the Goursat reconstruction.

use ringscat_core::dynamics::energy;
use ringscat_core::gridmodes::ModeState;
use ringscat_core::scattering::{HorizonTrace, Scatterer};

use super::Background;
use crate::config::RunConfig;
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

fn write_trace(out: &OutputDir, tr: &HorizonTrace, suffix: &str) -> Result<(), CliError> {
    let xi: Vec<Vec<f64>> = tr.xi.iter().enumerate().map(|(j, v)| vec![tr.t_star(j), v.re, v.im]).collect();
    let zeta: Vec<Vec<f64>> = tr.zeta.iter().enumerate().map(|(j, v)| vec![tr.star_t(j), v.re, v.im]).collect();
    out.write_csv(&format!("xi{suffix}.csv"), &["t_star", "re", "im"], &xi)?;
    out.write_csv(&format!("zeta{suffix}.csv"), &["star_t", "re", "im"], &zeta)
}

fn probe_trace(sc: &Scatterer<'_, '_>, cfg: &RunConfig, data: &ModeState) -> Result<HorizonTrace, CliError> {
    let s = &cfg.scattering;
    sc.trace_by_probes(s.direction()?, data, s.t_record, s.probe_margin, s.underrun_tol).context("recording probe traces")
}

/// Two-sided energy control constant: `max(E_±/E_u, E_u/E_±)` with `E_±`
/// the horizon energy of the traces and `E_u` the Cauchy energy.
fn control_constant(trace_energy: f64, data_energy: f64) -> f64 {
    let r = trace_energy / data_energy;
    r.max(1.0 / r)
}

pub fn run_trace(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let sys = bg.system(cfg)?;
    let sc = bg.scatterer(&sys, cfg)?;
    let data = bg.initial_state(&sys, &cfg.initial_data)?;
    let dir = cfg.scattering.direction()?;
    let mut s = Summary::new("trace");
    let probe = probe_trace(&sc, cfg, &data)?;
    let (op, _) = sc.trace_by_operator(dir, &data, cfg.scattering.probe_margin).context("operator traces")?;
    write_trace(out, &probe, "")?;
    write_trace(out, &op, "_operator")?;
    let rel = (sc.trace_distance(&probe, &op) / probe.horizon_energy).sqrt();
    s.push(Check::below("probe_vs_operator_rel_error", rel, 1e-2));
    let e_u = energy::homogeneous(&bg.grid, &sys.pots, &data);
    s.measure("horizon_energy_probe", probe.horizon_energy);
    s.measure("horizon_energy_operator", op.horizon_energy);
    s.measure("cauchy_energy", e_u);
    s.measure("control_constant", control_constant(probe.horizon_energy, e_u));
    s.measure("probe_x_left", probe.probe_x.0);
    s.measure("probe_x_right", probe.probe_x.1);
    Ok(s)
}

pub fn run_goursat(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let sys = bg.system(cfg)?;
    let sc = bg.scatterer(&sys, cfg)?;
    let data = bg.initial_state(&sys, &cfg.initial_data)?;
    let mut s = Summary::new("goursat");
    let tr = probe_trace(&sc, cfg, &data)?;
    write_trace(out, &tr, "")?;
    let solved = sc.goursat_solve(&tr).context("solving the Goursat problem")?;
    out.write_state("goursat_state.csv", &bg.grid, &solved.limit_state)?;
    let tr2 = probe_trace(&sc, cfg, &solved.limit_state)?;
    let e_u = energy::homogeneous(&bg.grid, &sys.pots, &data);
    let trace_rt = (sc.trace_distance(&tr, &tr2) / tr.horizon_energy).sqrt();
    let state_rt = (energy::homogeneous(&bg.grid, &sys.pots, &solved.limit_state.sub(&data)) / e_u).max(0.0).sqrt();
    s.push(Check::below("trace_goursat_trace_rel_error", trace_rt, 2e-2));
    s.push(Check::below("goursat_trace_state_rel_error", state_rt, 2e-2));
    let c_fine = control_constant(tr.horizon_energy, e_u);

    // One 2× coarsening with the same interval: nodes n' = (n + 1)/2.
    let mut coarse_grid = cfg.grid;
    coarse_grid.n = cfg.grid.n.div_ceil(2);
    let bg2 = Background::new(bg.params, &coarse_grid)?;
    let sys2 = bg2.system(cfg)?;
    let sc2 = bg2.scatterer(&sys2, cfg)?;
    let data2 = bg2.initial_state(&sys2, &cfg.initial_data)?;
    let tr_c = probe_trace(&sc2, cfg, &data2)?;
    let c_coarse = control_constant(tr_c.horizon_energy, energy::homogeneous(&bg2.grid, &sys2.pots, &data2));
    s.measure("control_constant_fine", c_fine);
    s.measure("control_constant_coarse", c_coarse);
    s.push(Check::below("control_constant_refinement_rel_change", ((c_fine - c_coarse) / c_fine).abs(), 0.10));
    s.measure("cauchy_energy", e_u);
    s.measure("horizon_energy", tr.horizon_energy);
    Ok(s)
}
