//! `scatter`: direct and inverse wave operators of one comparison dynamics
//! and the round trips of the full wave operators.

use serde::Serialize;

use ringscat_core::dynamics::{energy, EvolutionKind, Side};
use ringscat_core::gridmodes::ModeState;
use ringscat_core::scattering::{ScatteringResult, TimeDirection};
use ringscat_core::Complex64;

use super::Background;
use crate::config::{RelationName, RunConfig};
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

#[derive(Serialize)]
struct History<'a> {
    operator: &'a str,
    kind: &'a str,
    side: &'a str,
    converged: bool,
    t_final: f64,
    fitted_rate: Option<f64>,
    expected_rate: f64,
    history: &'a [(f64, f64)],
}

fn is_h_side(kind: EvolutionKind) -> bool {
    matches!(kind, EvolutionKind::SeparableMinus | EvolutionKind::ProfileAsymptoticH | EvolutionKind::ProfileGeometricH)
}

fn diff_h1(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn run(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let kind = cfg.scattering.kind()?;
    let dir = cfg.scattering.direction()?;
    let sys = bg.system(cfg)?;
    let sc = bg.scatterer(&sys, cfg)?;
    let data = bg.initial_state(&sys, &cfg.initial_data)?;
    let h = &bg.horizons;
    let expected = if is_h_side(kind) { 2.0 * h.kappa_minus() } else { 2.0 * h.kappa_plus().abs() };
    let mut s = Summary::new("scatter");

    // The comparison dynamics only carries the component that reaches its
    // horizon in the chosen direction: incoming for 𝓗⁺ and 𝓘⁻, outgoing for
    // 𝓗⁻ and 𝓘⁺. Its round trip is posed on data of that relation.
    let mut side_data = cfg.initial_data;
    side_data.relation = match (is_h_side(kind), dir) {
        (true, TimeDirection::Future) | (false, TimeDirection::Past) => RelationName::Incoming,
        _ => RelationName::Outgoing,
    };
    let mut side_state = bg.initial_state(&sys, &side_data)?;
    if matches!(kind, EvolutionKind::ProfileGeometricH | EvolutionKind::ProfileGeometricI) {
        // Pure component in the frame of the comparison dynamics itself.
        let fr = sys.frame(if is_h_side(kind) { Side::Horizon } else { Side::Cosmological });
        let phi: Vec<Complex64> = side_state.u0.iter().map(|v| v * std::f64::consts::SQRT_2).collect();
        let zero = vec![Complex64::new(0.0, 0.0); phi.len()];
        side_state = match side_data.relation {
            RelationName::Incoming => fr.psi(&phi, &zero),
            _ => fr.psi(&zero, &phi),
        };
    }
    let direct = sc.wave_operator_direct(kind, dir, &side_state).context("direct wave operator")?;
    let inverse = sc.wave_operator_inverse(kind, dir, &direct.limit_state).context("inverse wave operator")?;
    let write = |name: &str, op: &str, r: &ScatteringResult| {
        out.write_json(
            name,
            &History {
                operator: op,
                kind: kind.name(),
                side: dir.name(),
                converged: r.converged,
                t_final: r.t_final,
                fitted_rate: r.fitted_rate,
                expected_rate: expected,
                history: &r.history,
            },
        )
    };
    write("history_direct.json", "direct", &direct)?;
    write("history_inverse.json", "inverse", &inverse)?;
    out.write_state("wave_operator_direct.csv", &bg.grid, &direct.limit_state)?;

    let rate = direct.fitted_rate.unwrap_or(f64::NAN);
    s.push(Check::below("direct_rate_rel_error", ((rate - expected) / expected).abs(), 0.25));
    s.measure("direct_fitted_rate", rate);
    s.measure("expected_rate", expected);
    let scale = sys.kind_energy(kind, &side_state).max(0.0).sqrt();
    let rt = sys.kind_energy(kind, &inverse.limit_state.sub(&side_state)).max(0.0).sqrt() / scale.max(f64::MIN_POSITIVE);
    s.push(Check::below("inverse_after_direct_rel_error", rt, 1e-3));
    if matches!(kind, EvolutionKind::ProfileGeometricH | EvolutionKind::ProfileGeometricI) {
        let side = if is_h_side(kind) { Side::Horizon } else { Side::Cosmological };
        s.push(Check::below("range_defect", sc.range_defect(side, dir, &inverse.limit_state), 1e-3));
    }

    // Full wave operators in both orders.
    let fh = sys.frame(Side::Horizon);
    let fi = sys.frame(Side::Cosmological);
    let pair = sc.full_inverse_wave_operator(dir, &data).context("full inverse wave operator")?;
    let back = sc.full_wave_operator(dir, &pair.horizon, &pair.cosmological).context("full wave operator")?;
    let e_rel = |a: &ModeState, b: &ModeState| {
        (energy::homogeneous(&bg.grid, &sys.pots, &a.sub(b)) / energy::homogeneous(&bg.grid, &sys.pots, b)).max(0.0).sqrt()
    };
    s.push(Check::below("full_W_after_Omega_rel_error", e_rel(&back.limit_state, &data), 1e-3));
    let pair2 = sc.full_inverse_wave_operator(dir, &back.limit_state).context("full inverse wave operator")?;
    let num = fh.h1_norm2(&diff_h1(&pair2.horizon, &pair.horizon)) + fi.h1_norm2(&diff_h1(&pair2.cosmological, &pair.cosmological));
    let den = fh.h1_norm2(&pair.horizon) + fi.h1_norm2(&pair.cosmological);
    s.push(Check::below("full_Omega_after_W_rel_error", (num / den).sqrt(), 1e-3));
    s.measure("profile_norm_H", fh.h1_norm2(&pair.horizon).sqrt());
    s.measure("profile_norm_I", fi.h1_norm2(&pair.cosmological).sqrt());
    let rows: Vec<Vec<f64>> = (0..bg.grid.n)
        .map(|i| vec![bg.grid.x[i], pair.horizon[i].re, pair.horizon[i].im, pair.cosmological[i].re, pair.cosmological[i].im])
        .collect();
    out.write_csv("profiles.csv", &["x", "re_phi_H", "im_phi_H", "re_phi_I", "im_phi_I"], &rows)?;
    Ok(s)
}
