//! Error type shared by every module of the core crate.

use crate::geometry::ValidationReport;

/// Why `dyadoring_roots` could not return two interior roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyadoringCase {
    /// `s = 0`: the shifted horizon function equals `F`, the would-be roots
    /// collapse onto `r_-` and `r_+`.
    Degenerate,
    /// `|s| ≥ sup m r F^{1/2}`: the two dyadorings cover the whole outer block.
    Covering,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("invalid spacetime parameters: {0}")]
    InvalidParams(ValidationReport),
    #[error("root bracketing failed: found {found} sign changes of F, expected 4")]
    BracketingFailure { found: usize },
    #[error("no dyadoring pair ({case:?}); threshold sup m r F^(1/2) = {threshold}")]
    NoDyadoring { case: DyadoringCase, threshold: f64 },
    #[error("Boyer-Lindquist chart degenerates at r = {r} (F = 0)")]
    DegenerateChart { r: f64 },
    #[error("value {value} outside the open interval ({lower}, {upper})")]
    OutOfDomain { value: f64, lower: f64, upper: f64 },
    #[error("Kruskal chart overflow: |t| must stay below {max_abs_t}")]
    ChartOverflow { max_abs_t: f64 },
    #[error("could not generate timelike samples at this point")]
    SamplerExhausted,
    #[error("profile does not vanish near the grid edge (max |u| in margin = {margin_value})")]
    SupportOverflow { margin_value: f64 },
    #[error("invalid mode: {0}")]
    InvalidMode(&'static str),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("CFL number {cfl} exceeds the stability limit {limit}")]
    CflViolation { cfl: f64, limit: f64 },
    #[error("non-finite value at node {node}, time {time}")]
    NonFinite { node: usize, time: f64 },
    #[error("state is not in the L-class: defect {defect} > tolerance {tol}")]
    NotInLClass { defect: f64, tol: f64 },
    #[error("Cook iteration not converged by t = {t}: last increment {last_increment}")]
    NotConverged { t: f64, last_increment: f64 },
    #[error("solution reached the grid edge before convergence (edge energy fraction {edge_fraction})")]
    DomainTooSmall { edge_fraction: f64 },
    #[error("probe signal has not decayed by the end of the record (residual {residual})")]
    ProbeUnderrun { residual: f64 },
}
