//! Run configuration: TOML (primary) or JSON, unknown keys rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use ringscat_core::dynamics::EvolutionKind;
use ringscat_core::gridmodes::{DataRelation, ProfileShape, ProfileSpec};
use ringscat_core::scattering::{CookProtocol, TimeDirection};
use ringscat_core::SpacetimeParams;

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Scenario named in the file; the command line takes precedence.
    pub scenario: Option<String>,
    pub output_dir: Option<String>,
    pub seed: Option<u64>,
    pub spacetime: SpacetimeSection,
    pub grid: GridSection,
    pub initial_data: InitialDataSection,
    pub evolution: EvolutionSection,
    pub scattering: ScatteringSection,
    pub geometry: GeometrySection,
    pub geodesics: GeodesicsSection,
    pub superradiance: SuperradianceSection,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpacetimeSection {
    #[serde(rename = "M")]
    pub mass: f64,
    #[serde(rename = "Q")]
    pub charge: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub q: f64,
    pub m: f64,
}

impl Default for SpacetimeSection {
    fn default() -> Self {
        let p = ringscat_core::REFERENCE_PARAMS;
        SpacetimeSection { mass: p.mass, charge: p.charge, lambda: p.lambda, q: p.q, m: p.m }
    }
}

impl SpacetimeSection {
    pub fn params(&self) -> SpacetimeParams {
        SpacetimeParams::new(self.mass, self.charge, self.lambda, self.q, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    /// Largest harmonic degree `ℓ₀` a run may use.
    pub ell_max: u32,
    /// Width of the transition of the inner cutoffs `j_±`.
    pub cutoff_width: f64,
    /// Reference radius `𝔯` of the tortoise normalisation; defaults to the
    /// maximum of `F`.
    pub reference_radius: Option<f64>,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection { x_min: -60.0, x_max: 60.0, n: 8192, ell_max: 4, cutoff_width: 1.0, reference_radius: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    Gaussian,
    Bump,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationName {
    Free,
    Incoming,
    Outgoing,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialDataSection {
    pub ell: u32,
    pub zmode: i32,
    pub shape: ShapeName,
    pub center: f64,
    /// Gaussian standard deviation, or half-width of the bump.
    pub width: f64,
    pub amplitude: f64,
    pub momentum: f64,
    pub relation: RelationName,
}

impl Default for InitialDataSection {
    fn default() -> Self {
        InitialDataSection {
            ell: 1,
            zmode: 1,
            shape: ShapeName::Gaussian,
            center: 0.0,
            width: 3.0,
            amplitude: 1.0,
            momentum: 2.0,
            relation: RelationName::Free,
        }
    }
}

impl InitialDataSection {
    pub fn profile(&self) -> ProfileSpec {
        let shape = match self.shape {
            ShapeName::Gaussian => ProfileShape::Gaussian { center: self.center, width: self.width },
            ShapeName::Bump => ProfileShape::Bump { center: self.center, half_width: self.width },
            ShapeName::Zero => ProfileShape::Zero,
        };
        let relation = match self.relation {
            RelationName::Free => DataRelation::Free,
            RelationName::Incoming => DataRelation::Incoming,
            RelationName::Outgoing => DataRelation::Outgoing,
        };
        ProfileSpec { shape, amplitude: self.amplitude, momentum: self.momentum, relation }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolutionSection {
    pub kind: String,
    pub t_target: f64,
    pub cfl: f64,
    pub checkpoint_every: f64,
}

impl Default for EvolutionSection {
    fn default() -> Self {
        EvolutionSection { kind: "full".into(), t_target: 50.0, cfl: 0.25, checkpoint_every: 5.0 }
    }
}

impl EvolutionSection {
    pub fn kind(&self) -> Result<EvolutionKind, CliError> {
        EvolutionKind::from_name(&self.kind)
            .ok_or_else(|| CliError::Config(format!("evolution.kind: unknown kind `{}`", self.kind)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScatteringSection {
    /// Comparison dynamics of the direct and inverse operators.
    pub kind: String,
    /// `future` or `past`.
    pub side: String,
    #[serde(rename = "T_max")]
    pub t_max: f64,
    pub tol: f64,
    /// Distance of the probes from the lattice edges, in cells.
    pub probe_margin: usize,
    pub checkpoint: f64,
    /// Length of the probe record.
    pub t_record: f64,
    /// Largest residual probe amplitude, relative to the peak, at the end
    /// of the record.
    pub underrun_tol: f64,
}

impl Default for ScatteringSection {
    fn default() -> Self {
        ScatteringSection {
            kind: "profile_geometric_H".into(),
            side: "future".into(),
            t_max: 80.0,
            tol: 1e-6,
            probe_margin: 10,
            checkpoint: 5.0,
            t_record: 150.0,
            underrun_tol: 1e-3,
        }
    }
}

impl ScatteringSection {
    pub fn kind(&self) -> Result<EvolutionKind, CliError> {
        EvolutionKind::from_name(&self.kind)
            .ok_or_else(|| CliError::Config(format!("scattering.kind: unknown kind `{}`", self.kind)))
    }

    pub fn direction(&self) -> Result<TimeDirection, CliError> {
        match self.side.as_str() {
            "future" => Ok(TimeDirection::Future),
            "past" => Ok(TimeDirection::Past),
            other => Err(CliError::Config(format!("scattering.side: expected `future` or `past`, got `{other}`"))),
        }
    }

    pub fn protocol(&self) -> CookProtocol {
        CookProtocol { checkpoint: self.checkpoint, t_max: self.t_max, tol: self.tol, ..CookProtocol::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometrySection {
    /// Random points for the curvature checks.
    pub points: usize,
    /// Random vectors for the energy-condition sampler.
    pub energy_samples: usize,
    /// Radii in the horizon-factorisation sweep.
    pub sweep: usize,
}

impl Default for GeometrySection {
    fn default() -> Self {
        GeometrySection { points: 200, energy_samples: 100_000, sweep: 1000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeodesicsSection {
    pub start_r: f64,
    /// Paths end this far from the horizons, measured in `r`.
    pub horizon_gap: f64,
    pub samples: usize,
    pub rk4_step: f64,
    /// Duration of the `γ_±` curves.
    pub gamma_duration: f64,
}

impl Default for GeodesicsSection {
    fn default() -> Self {
        GeodesicsSection { start_r: 4.0, horizon_gap: 1e-6, samples: 400, rk4_step: 2e-4, gamma_duration: 40.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuperradianceSection {
    /// Field charges `q`; `s = qQ`.
    pub q_values: Vec<f64>,
    #[serde(rename = "T_max")]
    pub t_max: f64,
    pub sample_every: f64,
}

impl Default for SuperradianceSection {
    fn default() -> Self {
        SuperradianceSection { q_values: vec![0.0, 0.05, 0.1, 0.2], t_max: 40.0, sample_every: 1.0 }
    }
}

impl RunConfig {
    /// Parses TOML, or JSON when the path ends in `.json`. Errors carry the
    /// offending key path.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let de = toml::Deserializer::new(text);
        serde_path_to_error::deserialize(de).map_err(|e| CliError::Config(format!("{}: {}", e.path(), e.inner().message())))
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(&mut de).map_err(|e| CliError::Config(format!("{}: {}", e.path(), e.inner())))
    }
}
