//! `geodesics`: principal null paths to both horizons, their RK4
//! cross-check, and the curves `γ_±`.

use ringscat_core::coords::RadialPoint;
use ringscat_core::geodesics::{
    integrate_curve_gamma, integrate_principal_from, integrate_principal_rk4, NullPath, PathKind,
};
use ringscat_core::SpacetimePoint;

use super::Background;
use crate::config::RunConfig;
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

fn path_rows(path: &NullPath) -> Vec<Vec<f64>> {
    path.samples
        .iter()
        .map(|s| {
            vec![s.param, s.point.t, s.point.z, s.point.r, s.radial.d_minus, s.radial.d_plus, s.null_invariant, s.z_orthogonality]
        })
        .collect()
}

const PATH_HEADER: [&str; 8] = ["param", "t", "z", "r", "r_minus_r_m", "r_p_minus_r", "null_invariant", "z_orthogonality"];

/// Slope of `−ln(distance)` against `t` over the last quarter of a curve.
fn tail_rate(path: &NullPath, dist: impl Fn(&RadialPoint) -> f64) -> f64 {
    let n = path.samples.len();
    let a = &path.samples[3 * (n - 1) / 4];
    let b = &path.samples[n - 1];
    -(dist(&b.radial).ln() - dist(&a.radial).ln()) / (b.param - a.param)
}

pub fn run(bg: &Background, cfg: &RunConfig, out: &OutputDir) -> Result<Summary, CliError> {
    let g = &cfg.geodesics;
    let h = &bg.horizons;
    let map = &bg.map;
    let mut s = Summary::new("geodesics");
    let start_radial = map.point(g.start_r).context("geodesics.start_r")?;
    let start = SpacetimePoint { t: 0.0, z: 0.0, r: g.start_r, theta: std::f64::consts::FRAC_PI_2, phi: 0.0 };
    let width = h.r_plus - h.r_minus;
    if !(g.horizon_gap > 0.0 && g.horizon_gap < 0.5 * width) {
        return Err(CliError::Config(format!("geodesics.horizon_gap: {} outside (0, {})", g.horizon_gap, 0.5 * width)));
    }

    let ends = [
        (PathKind::In, "in", RadialPoint { r: h.r_minus + g.horizon_gap, d_minus: g.horizon_gap, d_plus: width - g.horizon_gap }),
        (PathKind::Out, "out", RadialPoint { r: h.r_plus - g.horizon_gap, d_minus: width - g.horizon_gap, d_plus: g.horizon_gap }),
    ];
    let mut null_max = 0.0f64;
    let mut orth_max = 0.0f64;
    for (kind, name, end) in ends {
        let path = integrate_principal_from(map, &start, &start_radial, kind, map.x_at(&end), g.samples)
            .context("principal null path")?;
        null_max = null_max.max(path.max_null_invariant());
        orth_max = orth_max.max(path.max_z_orthogonality());
        out.write_csv(&format!("path_{name}.csv"), &PATH_HEADER, &path_rows(&path))?;
    }
    s.push(Check::below("principal_null_invariant", null_max, 1e-9));
    s.push(Check::below("principal_z_orthogonality", orth_max, 1e-12));

    // RK4 in r becomes stiff at the horizons; compare on [r_- + w/4, r_+ − w/4].
    let sz = bg.params.s();
    let mut rk4_err = 0.0f64;
    for (kind, target) in [(PathKind::In, h.r_minus + 0.25 * width), (PathKind::Out, h.r_plus - 0.25 * width)] {
        let steps = integrate_principal_rk4(&bg.params, &start, kind, target, g.rk4_step).context("RK4 path")?;
        let sign = if kind == PathKind::Out { 1.0 } else { -1.0 };
        let x0 = map.x_at(&start_radial);
        let y0 = map.y_at(&start_radial);
        for &(r, t, z) in &steps {
            let rp = map.point(r).context("RK4 path radius")?;
            let tc = sign * (map.x_at(&rp) - x0);
            let zc = -sign * sz * (map.y_at(&rp) - y0);
            rk4_err = rk4_err.max((t - tc).abs()).max((z - zc).abs());
        }
    }
    s.push(Check::below("closed_form_vs_rk4", rk4_err, 1e-8));

    let mut gamma_null = 0.0f64;
    for (sign, name) in [(1i8, "gamma_plus"), (-1i8, "gamma_minus")] {
        let path = integrate_curve_gamma(map, &start, &start_radial, sign, g.gamma_duration, g.samples)
            .context("curve γ")?;
        gamma_null = gamma_null.max(path.max_null_invariant());
        out.write_csv(&format!("{name}.csv"), &PATH_HEADER, &path_rows(&path))?;
        let (rate, expected) = if sign > 0 {
            (tail_rate(&path, |p| p.d_plus), 2.0 * h.kappa_plus().abs())
        } else {
            (tail_rate(&path, |p| p.d_minus), 2.0 * h.kappa_minus())
        };
        s.measure(format!("{name}_decay_rate"), rate);
        s.push(Check::below(format!("{name}_decay_rate_rel_error"), ((rate - expected) / expected).abs(), 1e-2));
    }
    s.measure("gamma_max_null_invariant", gamma_null);
    Ok(s)
}
