//! Scenario orchestration: every scenario builds its objects from the
//! resolved configuration, writes its series, and returns a [`Summary`].

pub mod evolve;
pub mod geodesics;
pub mod geometry;
pub mod scatter;
pub mod superradiance;
pub mod traces;

use serde::Serialize;

use ringscat_core::coords::TortoiseMap;
use ringscat_core::dynamics::ModeSystem;
use ringscat_core::geometry::{horizon_structure, validate_params};
use ringscat_core::gridmodes::{build_cutoffs, build_grid, sample_initial_data, ModeIndex, ModeState, RadialGrid};
use ringscat_core::scattering::Scatterer;
use ringscat_core::{CoreError, HorizonStructure, SpacetimeParams};

use crate::config::{GridSection, InitialDataSection, RunConfig};
use crate::error::{CliError, Context};
use crate::output::{grid_hash, OutputDir, Summary};

pub const SCENARIOS: [&str; 7] =
    ["verify-geometry", "evolve", "scatter", "trace", "goursat", "superradiance-scan", "geodesics"];

/// Horizon data, tortoise map and lattice shared by the scenarios.
pub struct Background {
    pub params: SpacetimeParams,
    pub horizons: HorizonStructure,
    pub map: TortoiseMap,
    pub grid: RadialGrid,
}

impl Background {
    pub fn new(params: SpacetimeParams, grid: &GridSection) -> Result<Self, CliError> {
        let report = validate_params(&params);
        if !report.is_ok() {
            return Err(CliError::Core { context: "validating [spacetime]", source: CoreError::InvalidParams(report) });
        }
        let horizons = horizon_structure(&params).context("locating the horizons")?;
        let map = match grid.reference_radius {
            Some(r) => TortoiseMap::with_reference(&horizons, r).context("grid.reference_radius")?,
            None => TortoiseMap::new(&horizons),
        };
        let lattice = build_grid(&map, grid.x_min, grid.x_max, grid.n).context("building the lattice")?;
        Ok(Background { params, horizons, map, grid: lattice })
    }

    pub fn mode(&self, data: &InitialDataSection, grid: &GridSection) -> Result<ModeIndex, CliError> {
        if data.ell > grid.ell_max {
            return Err(CliError::Config(format!(
                "initial_data.ell: {} exceeds grid.ell_max = {}",
                data.ell, grid.ell_max
            )));
        }
        ModeIndex::new(data.ell, data.zmode).context("initial_data.zmode")
    }

    pub fn system(&self, cfg: &RunConfig) -> Result<ModeSystem<'_>, CliError> {
        let mode = self.mode(&cfg.initial_data, &cfg.grid)?;
        if !(cfg.evolution.cfl > 0.0 && cfg.evolution.cfl <= ringscat_core::dynamics::mol::CFL_LIMIT) {
            return Err(CliError::Core {
                context: "evolution.cfl",
                source: CoreError::CflViolation { cfl: cfg.evolution.cfl, limit: ringscat_core::dynamics::mol::CFL_LIMIT },
            });
        }
        Ok(ModeSystem::new(&self.grid, mode, cfg.evolution.cfl))
    }

    pub fn initial_state(&self, sys: &ModeSystem<'_>, data: &InitialDataSection) -> Result<ModeState, CliError> {
        Ok(sample_initial_data(&self.grid, &sys.pots, &data.profile()).context("sampling [initial_data]")?.state)
    }

    pub fn scatterer<'s, 'g>(&'g self, sys: &'s ModeSystem<'g>, cfg: &RunConfig) -> Result<Scatterer<'s, 'g>, CliError> {
        let cut = build_cutoffs(&self.grid, cfg.grid.cutoff_width).context("grid.cutoff_width")?;
        Ok(Scatterer::new(sys, cut, cfg.scattering.protocol()))
    }
}

#[derive(Serialize)]
struct HorizonEcho {
    r_n: f64,
    r_c: f64,
    r_minus: f64,
    r_plus: f64,
    kappa: [f64; 4],
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    scenario: &'a str,
    seed: u64,
    config: &'a RunConfig,
    reference_radius: f64,
    grid_hash: String,
    grid_dx: f64,
    horizons: HorizonEcho,
}

/// Runs `scenario`, writing `manifest.json`, the scenario series and
/// `summary.json` into `out`.
pub fn run(scenario: &str, cfg: &RunConfig, out: &OutputDir, seed: u64) -> Result<Summary, CliError> {
    if !SCENARIOS.contains(&scenario) {
        return Err(CliError::UnknownScenario(scenario.to_string()));
    }
    let bg = Background::new(cfg.spacetime.params(), &cfg.grid)?;
    let h = &bg.horizons;
    out.write_json(
        "manifest.json",
        &Manifest {
            tool: "ringscat",
            version: env!("CARGO_PKG_VERSION"),
            scenario,
            seed,
            config: cfg,
            reference_radius: bg.map.reference_radius,
            grid_hash: grid_hash(&bg.grid),
            grid_dx: bg.grid.dx,
            horizons: HorizonEcho { r_n: h.r_n, r_c: h.r_c, r_minus: h.r_minus, r_plus: h.r_plus, kappa: h.kappa },
        },
    )?;
    let summary = match scenario {
        "verify-geometry" => geometry::run(&bg, cfg, out, seed)?,
        "evolve" => evolve::run(&bg, cfg, out)?,
        "scatter" => scatter::run(&bg, cfg, out)?,
        "trace" => traces::run_trace(&bg, cfg, out)?,
        "goursat" => traces::run_goursat(&bg, cfg, out)?,
        "superradiance-scan" => superradiance::run(&bg, cfg, out)?,
        "geodesics" => geodesics::run(&bg, cfg, out)?,
        _ => unreachable!("scenario list checked above"),
    };
    out.write_json("summary.json", &summary)?;
    Ok(summary)
}
