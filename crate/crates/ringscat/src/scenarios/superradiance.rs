//! `superradiance-scan`: energy series of the full evolution for several
//! field charges, contrasting the homogeneous energy with the conserved
//! energy `⟨·|·⟩_{s𝐳V_-}`.

use rayon::prelude::*;

use ringscat_core::scattering::{boundedness_series, BoundednessSummary, EnergySample};
use ringscat_core::SpacetimeParams;

use super::Background;
use crate::config::RunConfig;
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

struct ScanRow {
    q: f64,
    s: f64,
    samples: Vec<EnergySample>,
    summary: BoundednessSummary,
}

fn scan_one(base: &Background, cfg: &RunConfig, q: f64) -> Result<ScanRow, CliError> {
    let params = SpacetimeParams { q, ..base.params };
    let bg = Background::new(params, &cfg.grid)?;
    let sys = bg.system(cfg)?;
    let data = bg.initial_state(&sys, &cfg.initial_data)?;
    let sr = &cfg.superradiance;
    let (samples, summary) =
        boundedness_series(&sys, &data, sr.t_max, sr.sample_every).context("superradiance evolution")?;
    Ok(ScanRow { q, s: params.s(), samples, summary })
}

pub fn run(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let rows: Vec<ScanRow> =
        cfg.superradiance.q_values.par_iter().map(|&q| scan_one(bg, cfg, q)).collect::<Result<_, _>>()?;
    let mut s = Summary::new("superradiance-scan");
    let mut table = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        let series: Vec<Vec<f64>> =
            row.samples.iter().map(|e| vec![e.t, e.ratio, e.homogeneous, e.conserved]).collect();
        out.write_csv(
            &format!("series_{k}.csv"),
            &["t", "energy_ratio_ungauged_V", "homogeneous_energy", "conserved_energy_mu_szV_minus"],
            &series,
        )?;
        table.push(vec![
            row.q,
            row.s,
            row.summary.sup_ratio,
            row.summary.homogeneous_excursion,
            row.summary.conserved_drift,
            if row.summary.plateau { 1.0 } else { 0.0 },
        ]);
        s.push(Check::below(format!("conserved_drift_q{k}"), row.summary.conserved_drift, 1e-6));
        s.measure(format!("homogeneous_excursion_q{k}"), row.summary.homogeneous_excursion);
        s.measure(format!("sup_ratio_q{k}"), row.summary.sup_ratio);
    }
    out.write_csv("scan.csv", &["q", "s", "sup_ratio", "homogeneous_excursion", "conserved_drift", "plateau"], &table)?;

    let zero = rows.iter().find(|r| r.s == 0.0);
    let charged = rows.iter().filter(|r| r.s != 0.0).map(|r| r.summary.homogeneous_excursion).fold(0.0, f64::max);
    match zero {
        Some(z) => {
            let drift = z.summary.homogeneous_excursion;
            s.push(Check::below("uncharged_homogeneous_drift", drift, 1e-7));
            if rows.iter().any(|r| r.s != 0.0) {
                s.push(Check::above("charged_excursion_over_uncharged_drift", charged / drift.max(f64::MIN_POSITIVE), 100.0));
            }
        }
        None => s.measure("charged_max_excursion", charged),
    }
    Ok(s)
}
