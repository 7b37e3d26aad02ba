//! Acceptance run: one line per criterion with the measured values and the
//! pinned tolerances. Exits non-zero if any criterion fails.
//!
//! A criterion that cannot be met as stated is reported as UNATTAINABLE
//! next to its attainable parts, with the measured alternative.

use std::process::ExitCode;
use std::time::Instant;

use ringscat_core::Complex64;

use ringscat::config::RunConfig;
use ringscat::output::{OutputDir, Summary};
use ringscat::scenarios;
use ringscat_core::coords::TortoiseMap;
use ringscat_core::dynamics::{huygens_check, support_bounds, EvolutionKind, ModeSystem, Side};
use ringscat_core::geometry::{dominant_energy_check, horizon_structure, validate_params};
use ringscat_core::gridmodes::{
    build_grid, sample_initial_data, DataRelation, ModeIndex, ModeState, ProfileShape, ProfileSpec, RadialGrid,
};
use ringscat_core::{SpacetimeParams, REFERENCE_PARAMS};

// Tolerances, one block per criterion.
const C1_CLOSED: f64 = 1e-8;
const C1_FD: f64 = 1e-6;
const C1_SCALAR: f64 = 1e-10;
const C1_DET: f64 = 1e-12;
const C1_SECONDS: f64 = 5.0;
const C2_ROOTS: f64 = 1e-10;
const C2_FACTOR: f64 = 1e-10;
const C2_KAPPA: f64 = 1e-9;
const C3_MIN_SAMPLE: f64 = -1e-12;
const C3_SECONDS: f64 = 10.0;
const C4_NULL: f64 = 1e-9;
const C4_ORTH: f64 = 1e-12;
const C4_RK4: f64 = 1e-8;
const C5_ROUND_TRIP: f64 = 1e-10;
const C5_DECAY: f64 = 1e-2;
const C5_KRUSKAL: f64 = 1e-10;
const C6_FULL: f64 = 1e-6;
const C6_SEPARABLE: f64 = 1e-7;
const C6_PROFILE: f64 = 1e-10;
const C7_TRANSPORT_ORDER: f64 = 2.0;
const C7_FULL_ORDER: f64 = 4.0;
const C7_FULL_ORDER_BAND: f64 = 0.25;
const C8_PSI: f64 = 1e-8;
const C8_DECOMP: f64 = 1e-10;
const C8_HUYGENS_CELLS: f64 = 1.0;
const C8_SLOPE_REL: f64 = 0.15;
const C9_RATE_REL: f64 = 0.25;
const C9_ROUND_TRIP: f64 = 1e-3;
const C10_PROBE: f64 = 1e-2;
const C10_GOURSAT: f64 = 2e-2;
const C10_CONSTANT_REL: f64 = 0.10;
const C11_UNCHARGED: f64 = 1e-7;
const C11_CONTRAST: f64 = 100.0;
const C11_CONSERVED: f64 = 1e-6;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: &str, title: &str, pass: bool, detail: String) {
        if !pass {
            self.failures += 1;
        }
        println!("[{}] {id:>3} {title}: {detail}", if pass { "PASS" } else { "FAIL" });
    }

    fn unattainable(&mut self, id: &str, title: &str, detail: String) {
        println!("[UNATTAINABLE] {id:>3} {title}: {detail}");
    }
}

fn config(name: &str) -> RunConfig {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/").to_string() + name;
    RunConfig::load(std::path::Path::new(&path)).unwrap()
}

fn run(scenario: &str, cfg: &RunConfig) -> Summary {
    scenarios::run(scenario, cfg, &OutputDir::discard(), cfg.seed.unwrap_or(0))
        .unwrap_or_else(|e| panic!("{scenario}: {e}"))
}

fn value(s: &Summary, name: &str) -> f64 {
    if let Some(c) = s.check(name) {
        return c.value;
    }
    s.measurements.iter().find(|(n, _)| n == name).map(|(_, v)| *v).unwrap_or_else(|| panic!("{name} missing"))
}

fn criteria_1_2(r: &mut Report) -> Summary {
    let cfg = config("verify-geometry.toml");
    let t0 = Instant::now();
    let s = run("verify-geometry", &cfg);
    let secs = t0.elapsed().as_secs_f64();
    let (c, fd, sc, det) = (
        value(&s, "einstein_residual_closed_form"),
        value(&s, "einstein_residual_finite_difference"),
        value(&s, "scalar_curvature_error"),
        value(&s, "determinant_plus_r4_sin2_over_m2"),
    );
    r.line(
        "1",
        "Einstein-Maxwell verification",
        c < C1_CLOSED && fd < C1_FD && sc < C1_SCALAR && det < C1_DET && secs < C1_SECONDS,
        format!(
            "closed {c:.2e}<{C1_CLOSED:.0e}, finite-difference {fd:.2e}<{C1_FD:.0e}, scalar {sc:.2e}<{C1_SCALAR:.0e}, \
             det=+r^4sin^2/m^2 {det:.2e}<{C1_DET:.0e}, {secs:.2}s<{C1_SECONDS}s"
        ),
    );
    r.unattainable(
        "1",
        "det g = -r^4 sin^2(theta)/m^2 as printed",
        format!(
            "relative error {:.2e} for the minus sign; a (+,-,-,-,-) metric in five dimensions has a positive determinant",
            value(&s, "determinant_minus_r4_sin2_over_m2_rel_error")
        ),
    );

    let (roots, fac, pattern, kappa) = (
        value(&s, "horizon_function_at_roots"),
        value(&s, "factorization_rel_error"),
        value(&s, "kappa_sign_pattern"),
        value(&s, "kappa_vs_numeric_derivative"),
    );
    r.line(
        "2",
        "Horizon structure",
        roots < C2_ROOTS && fac < C2_FACTOR && pattern == 1.0 && kappa < C2_KAPPA,
        format!(
            "|F(r_a)| {roots:.2e}<{C2_ROOTS:.0e}, factorisation {fac:.2e}<{C2_FACTOR:.0e}, sign pattern (+,-,+,-) {}, \
             kappa {kappa:.2e}<{C2_KAPPA:.0e}",
            pattern == 1.0
        ),
    );
    s
}

fn criterion_5(r: &mut Report, s: &Summary) {
    let (round, decay, kr) = (
        value(s, "tortoise_round_trip"),
        value(s, "near_horizon_decay_rel_error"),
        value(s, "kruskal_identity_rel_error"),
    );
    r.line(
        "5",
        "Coordinates",
        round < C5_ROUND_TRIP && decay < C5_DECAY && kr < C5_KRUSKAL,
        format!(
            "round trip {round:.2e}<{C5_ROUND_TRIP:.0e}, decay at |x|=40 {decay:.2e}<{C5_DECAY:.0e}, \
             Kruskal {kr:.2e}<{C5_KRUSKAL:.0e}"
        ),
    );
}

fn criterion_3(r: &mut Report) {
    let t0 = Instant::now();
    let reference = run("verify-geometry", &config("verify-geometry.toml"));
    let witness = value(&reference, "dec_witness_timelike_negative") == 1.0;
    let mut low = config("verify-geometry.toml");
    low.spacetime.lambda = 0.001;
    let low_s = run("verify-geometry", &low);
    let pointwise = value(&low_s, "dec_pointwise_min_sample");
    let secs = t0.elapsed().as_secs_f64();
    r.line(
        "3",
        "Dominant energy condition",
        witness && pointwise >= C3_MIN_SAMPLE && secs < C3_SECONDS,
        format!(
            "witness X=dt-W(1+eps)dz timelike with -T(X,X)<0 at the reference set: {witness}; \
             10^5 samples where the local margin is >= 0 (Lambda=0.001, r={:.3}): min {pointwise:.2e}>={C3_MIN_SAMPLE:.0e}; \
             {secs:.2}s<{C3_SECONDS}s",
            value(&low_s, "dec_pointwise_r")
        ),
    );
    // The global bound Lambda < Q^2(1-2q^2/m^2)/(2r_+^4) against every valid set on a grid.
    let (mut valid, mut holds) = (0usize, 0usize);
    for i in 1..=30 {
        for j in 1..=40 {
            for q in [0.0, 0.05, 0.3] {
                let p = SpacetimeParams { mass: 1.0, charge: 1.4 * i as f64 / 31.0, lambda: 0.11 * j as f64 / 41.0, q, m: 1.0 };
                if validate_params(&p).is_ok() {
                    if let Ok(h) = horizon_structure(&p) {
                        valid += 1;
                        holds += usize::from(dominant_energy_check(&p, &h).holds);
                    }
                }
            }
        }
    }
    r.unattainable(
        "3",
        "sampling branch 'when the Lambda-bound holds'",
        format!("the bound holds for {holds} of {valid} valid parameter sets; pointwise sampling above replaces it"),
    );
}

fn criterion_4(r: &mut Report) {
    let s = run("geodesics", &config("geodesics.toml"));
    let (null, orth, rk4) =
        (value(&s, "principal_null_invariant"), value(&s, "principal_z_orthogonality"), value(&s, "closed_form_vs_rk4"));
    r.line(
        "4",
        "Geodesics",
        null < C4_NULL && orth < C4_ORTH && rk4 < C4_RK4,
        format!("null {null:.2e}<{C4_NULL:.0e}, dz-orthogonality {orth:.2e}<{C4_ORTH:.0e} to 1e-6 of both horizons, RK4 {rk4:.2e}<{C4_RK4:.0e}"),
    );
}

fn criterion_6(r: &mut Report) {
    let base = config("evolve.toml");
    let mut worst_full = 0.0f64;
    for ell in 0..=2 {
        let mut cfg = base.clone();
        cfg.initial_data.ell = ell;
        let s = run("evolve", &cfg);
        worst_full = worst_full.max(value(&s, "conserved_mu_0_drift")).max(value(&s, "conserved_mu_event_drift"));
    }
    let drift = |kind: &str| {
        let mut cfg = base.clone();
        cfg.evolution.kind = kind.into();
        value(&run("evolve", &cfg), &format!("{kind}_energy_drift"))
    };
    let sep = drift("separable_minus").max(drift("separable_plus"));
    let prof = drift("profile_geometric_H").max(drift("profile_geometric_I"));
    r.line(
        "6",
        "Conservation",
        worst_full < C6_FULL && sep < C6_SEPARABLE && prof < C6_PROFILE,
        format!(
            "full <.|.>_0 and <.|.>_(szV-) for l=0,1,2 {worst_full:.2e}<{C6_FULL:.0e}, separable {sep:.2e}<{C6_SEPARABLE:.0e}, \
             geometric profiles {prof:.2e}<{C6_PROFILE:.0e} (n={}, t=50)",
            base.grid.n
        ),
    );
}

fn reference_map() -> TortoiseMap {
    TortoiseMap::new(&horizon_structure(&REFERENCE_PARAMS).unwrap())
}

fn smooth_data(g: &RadialGrid, sys: &ModeSystem<'_>) -> ModeState {
    let spec = ProfileSpec {
        shape: ProfileShape::Gaussian { center: 0.0, width: 1.5 },
        amplitude: 1.0,
        momentum: 0.5,
        relation: DataRelation::Free,
    };
    sample_initial_data(g, &sys.pots, &spec).unwrap().state
}

fn orders(e: &[f64]) -> Vec<f64> {
    e.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

fn criterion_7(r: &mut Report) {
    let map = reference_map();
    let sizes = [1025usize, 2049, 4097, 8193, 16385];
    let mut transport = [Vec::new(), Vec::new(), Vec::new()];
    let kinds = [EvolutionKind::ProfileAsymptoticH, EvolutionKind::ProfileGeometricH, EvolutionKind::ProfileGeometricI];
    let mut full: Vec<Vec<Complex64>> = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        let g = build_grid(&map, -30.0, 30.0, n).unwrap();
        let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
        let u = smooth_data(&g, &sys);
        if k < 4 {
            for (slot, &kind) in transport.iter_mut().zip(&kinds) {
                let exact = sys.evolve(kind, &u, 8.0).unwrap();
                let mut mol = u.clone();
                sys.mol_system(kind).advance(&mut mol, 8.0, 0.25).unwrap();
                slot.push(exact.u0.iter().zip(&mol.u0).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
            }
        }
        full.push(sys.evolve(EvolutionKind::Full, &u, 8.0).unwrap().u0);
    }
    let min_transport = transport.iter().flat_map(|e| orders(e)).fold(f64::INFINITY, f64::min);
    let diffs: Vec<f64> = full
        .windows(2)
        .map(|w| (0..w[0].len()).map(|i| (w[0][i] - w[1][2 * i]).norm()).fold(0.0, f64::max))
        .collect();
    let full_orders = orders(&diffs);
    let worst_full = full_orders.iter().map(|o| (o - C7_FULL_ORDER).abs()).fold(0.0, f64::max);
    r.line(
        "7",
        "Oracle equivalence",
        min_transport >= C7_TRANSPORT_ORDER && worst_full < C7_FULL_ORDER_BAND,
        format!(
            "exact transport vs RK4 MOL, min order over three refinements {min_transport:.3}>={C7_TRANSPORT_ORDER}; \
             full self-convergence orders {full_orders:.3?}, max |order-{C7_FULL_ORDER}| {worst_full:.3}<{C7_FULL_ORDER_BAND}"
        ),
    );
}

fn bump(x: &[f64], center: f64, half: f64, k: f64) -> Vec<Complex64> {
    x.iter()
        .map(|&xi| {
            let y = (xi - center) / half;
            if y.abs() < 1.0 {
                Complex64::from_polar((1.0 - 1.0 / (1.0 - y * y)).exp(), k * xi)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn criterion_8(r: &mut Report) {
    let g = build_grid(&reference_map(), -40.0, 40.0, 4001).unwrap();
    let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
    let raw = ModeState { time: 0.0, u0: bump(&g.x, -1.0, 5.0, 0.7), u1: bump(&g.x, 1.0, 4.0, -0.4) };
    let (mut iso, mut inv, mut rec, mut cells) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut supports = true;
    for side in [Side::Horizon, Side::Cosmological] {
        let fr = sys.frame(side);
        let a = bump(&g.x, -3.0, 4.0, 1.1);
        let b = bump(&g.x, 5.0, 3.0, -0.6);
        let u = fr.psi(&a, &b);
        let rhs = fr.h1_norm2(&a) + fr.h1_norm2(&b);
        iso = iso.max((fr.energy(&u) - rhs).abs() / rhs);
        let (a2, b2) = fr.psi_inverse(&u);
        let scale = a.iter().chain(&b).map(|p| p.norm()).fold(0.0, f64::max);
        inv = inv.max(a.iter().zip(&a2).chain(b.iter().zip(&b2)).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max) / scale);

        let v = fr.project_to_l(&raw, 0.0, 2.0);
        let split = fr.decompose(&v, 1e-12).unwrap();
        let sum = split.incoming.combine(Complex64::new(1.0, 0.0), &split.outgoing, Complex64::new(1.0, 0.0));
        let num: f64 = sum.u0.iter().zip(&v.u0).chain(sum.u1.iter().zip(&v.u1)).map(|(p, q)| (p - q).norm_sqr()).sum();
        let den: f64 = v.u0.iter().chain(&v.u1).map(|p| p.norm_sqr()).sum();
        rec = rec.max((num / den).sqrt());
        let (lo, hi) = support_bounds(&g.x, &v, 0.0).unwrap();
        let in_hi = support_bounds(&g.x, &split.incoming, 1e-12).unwrap().1;
        let out_lo = support_bounds(&g.x, &split.outgoing, 1e-12).unwrap().0;
        supports &= in_hi <= hi + g.dx && out_lo >= lo - g.dx;
        for t in [3.0, 7.3, 12.0] {
            let h = huygens_check(fr, &split, t, 1e-10);
            cells = cells.max(h.in_shift_error_cells).max(h.out_shift_error_cells);
        }
    }
    let fr = sys.frame(Side::Horizon);
    let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&sp| (sp.ln(), fr.energy(&fr.project_to_l(&raw, 0.0, sp).sub(&raw)).sqrt().ln()))
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let slope_rel = (slope + 0.5).abs() / 0.5;
    r.line(
        "8",
        "Structure operators",
        iso < C8_PSI && inv < C8_PSI && rec < C8_DECOMP && supports && cells <= C8_HUYGENS_CELLS && slope_rel < C8_SLOPE_REL,
        format!(
            "Psi isometry {iso:.2e}, Psi Psi^-1 {inv:.2e} (<{C8_PSI:.0e}); decomposition {rec:.2e}<{C8_DECOMP:.0e}, \
             support inclusions {supports}; Huygens {cells:.2} cells<={C8_HUYGENS_CELLS}; \
             projection slope {slope:.4} vs -1/2 ({:.1}%<{:.0}%)",
            100.0 * slope_rel,
            100.0 * C8_SLOPE_REL
        ),
    );
}

fn criterion_9(r: &mut Report) {
    let base = config("scatter.toml");
    let h_side = run("scatter", &base);
    let mut past = base.clone();
    past.scattering.kind = "profile_geometric_I".into();
    past.scattering.side = "past".into();
    let i_side = run("scatter", &past);
    let rate_h = value(&h_side, "direct_rate_rel_error");
    let rate_i = value(&i_side, "direct_rate_rel_error");
    let om_w = value(&h_side, "inverse_after_direct_rel_error").max(value(&i_side, "inverse_after_direct_rel_error"));
    let full = [&h_side, &i_side]
        .iter()
        .map(|s| value(s, "full_W_after_Omega_rel_error").max(value(s, "full_Omega_after_W_rel_error")))
        .fold(0.0, f64::max);
    r.line(
        "9",
        "Scattering",
        rate_h < C9_RATE_REL && rate_i < C9_RATE_REL && om_w < C9_ROUND_TRIP && full < C9_ROUND_TRIP,
        format!(
            "H-side rate {:.4} vs 2kappa_- (off {:.1}%), I-side rate {:.4} vs 2|kappa_+| (off {:.1}%), limit {:.0}%; \
             Omega W on H-/I-side data {om_w:.2e}, full round trips future and past {full:.2e} (<{C9_ROUND_TRIP:.0e}, T=80)",
            value(&h_side, "direct_fitted_rate"),
            100.0 * rate_h,
            value(&i_side, "direct_fitted_rate"),
            100.0 * rate_i,
            100.0 * C9_RATE_REL
        ),
    );
}

fn criterion_10(r: &mut Report) {
    let t = run("trace", &config("trace.toml"));
    let g = run("goursat", &config("goursat.toml"));
    let probe = value(&t, "probe_vs_operator_rel_error");
    let rt = value(&g, "trace_goursat_trace_rel_error");
    let st = value(&g, "goursat_trace_state_rel_error");
    let (cf, cc) = (value(&g, "control_constant_fine"), value(&g, "control_constant_coarse"));
    let change = value(&g, "control_constant_refinement_rel_change");
    r.line(
        "10",
        "Traces and Goursat",
        probe < C10_PROBE && rt < C10_GOURSAT && st < C10_GOURSAT && change < C10_CONSTANT_REL,
        format!(
            "probe vs operator {probe:.2e}<{C10_PROBE:.0e}; trace-goursat-trace {rt:.2e}, goursat-trace-state {st:.2e} (<{C10_GOURSAT:.0e}); \
             C={cf:.5} fine, {cc:.5} coarse, change {:.2e}%<{:.0}%",
            100.0 * change,
            100.0 * C10_CONSTANT_REL
        ),
    );
}

fn criterion_11(r: &mut Report) {
    let s = run("superradiance-scan", &config("superradiance-scan.toml"));
    let drift = value(&s, "uncharged_homogeneous_drift");
    let contrast = value(&s, "charged_excursion_over_uncharged_drift");
    let conserved = (0..4).map(|k| value(&s, &format!("conserved_drift_q{k}"))).fold(0.0, f64::max);
    r.line(
        "11",
        "Superradiance contrast",
        drift < C11_UNCHARGED && contrast > C11_CONTRAST && conserved < C11_CONSERVED,
        format!(
            "s=0 |E(t)-E(0)|/E(0) {drift:.2e}<{C11_UNCHARGED:.0e}; charged excursion / that drift {contrast:.2e}>{C11_CONTRAST}; \
             <.|.>_(szV-) drift {conserved:.2e}<{C11_CONSERVED:.0e}"
        ),
    );
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from the harness are not supported;
    // a listing request gets an empty list.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut r = Report { failures: 0 };
    let start = Instant::now();
    let geometry = criteria_1_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r, &geometry);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    criterion_11(&mut r);
    println!("acceptance: {} failure(s), {:.0}s", r.failures, start.elapsed().as_secs_f64());
    if r.failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
