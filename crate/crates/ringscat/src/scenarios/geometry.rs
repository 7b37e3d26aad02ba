//! `verify-geometry`: curvature, horizons, energy condition and the
//! tortoise and Kruskal coordinates of the configured spacetime.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ringscat_core::coords::{kruskal_chart, KruskalHorizon};
use ringscat_core::geometry::{
    dec_witness, dominant_energy_check, einstein_residual, einstein_residual_finite_difference, energy_condition_sample,
    fluid_fields, local_energy_margin, metric_determinant, scalar_curvature_closed_form, tensors_at,
};
use ringscat_core::SpacetimePoint;

use super::Background;
use crate::config::RunConfig;
use crate::error::{CliError, Context};
use crate::output::{Check, OutputDir, Summary};

/// Five-point central derivative of `F`.
fn numeric_df(bg: &Background, r: f64) -> f64 {
    let h = 1e-3 * r.abs().max(1e-3);
    let f = |x: f64| bg.params.f(x);
    (-f(r + 2.0 * h) + 8.0 * f(r + h) - 8.0 * f(r - h) + f(r - 2.0 * h)) / (12.0 * h)
}

pub fn run(bg: &Background, cfg: &RunConfig, out: &OutputDir, seed: u64) -> Result<Summary, CliError> {
    let p = &bg.params;
    let h = &bg.horizons;
    let g = cfg.geometry;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Summary::new("verify-geometry");

    // Curvature at random points of the outer block.
    let mut rows = Vec::with_capacity(g.points);
    let (mut res_c, mut res_fd, mut scal, mut det_rel, mut det_printed) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..g.points {
        let r = h.r_minus + (h.r_plus - h.r_minus) * (0.001 + 0.998 * rng.random::<f64>());
        let theta = 0.05 + (std::f64::consts::PI - 0.1) * rng.random::<f64>();
        let pt = SpacetimePoint::new(
            10.0 * rng.random::<f64>(),
            std::f64::consts::TAU * rng.random::<f64>(),
            r,
            theta,
            std::f64::consts::TAU * rng.random::<f64>(),
        );
        let c = einstein_residual(p, &pt).context("closed-form curvature")?.max_abs;
        let fd = einstein_residual_finite_difference(p, &pt).context("finite-difference curvature")?.max_abs;
        let bundle = tensors_at(p, &pt).context("tensor bundle")?;
        let sc = (bundle.contracted_scalar_curvature() - scalar_curvature_closed_form(p, r)).abs();
        let (num, closed) = metric_determinant(p, &pt);
        let dr = (num - closed).abs() / closed.abs();
        let dp = (num + closed).abs() / closed.abs();
        res_c = res_c.max(c);
        res_fd = res_fd.max(fd);
        scal = scal.max(sc);
        det_rel = det_rel.max(dr);
        det_printed = det_printed.max(dp);
        rows.push(vec![r, theta, c, fd, sc, dr]);
    }
    out.write_csv(
        "curvature_points.csv",
        &["r", "theta", "einstein_residual_closed", "einstein_residual_fd", "scalar_curvature_error", "det_rel_error"],
        &rows,
    )?;
    s.push(Check::below("einstein_residual_closed_form", res_c, 1e-8));
    s.push(Check::below("einstein_residual_finite_difference", res_fd, 1e-6));
    s.push(Check::below("scalar_curvature_error", scal, 1e-10));
    s.push(Check::below("determinant_plus_r4_sin2_over_m2", det_rel, 1e-12));
    s.measure("determinant_minus_r4_sin2_over_m2_rel_error", det_printed);

    // Horizons.
    let roots = h.roots();
    let f_at_roots = roots.iter().map(|&r| p.f(r).abs()).fold(0.0, f64::max);
    s.push(Check::below("horizon_function_at_roots", f_at_roots, 1e-10));
    let mut fac = 0.0f64;
    for k in 1..=g.sweep {
        let r = h.r_minus + (h.r_plus - h.r_minus) * k as f64 / (g.sweep + 1) as f64;
        let direct = p.f(r);
        fac = fac.max((h.factorized_f(r) - direct).abs() / direct.abs());
    }
    s.push(Check::below("factorization_rel_error", fac, 1e-10));
    let pattern = h.kappa[0] > 0.0 && h.kappa[1] < 0.0 && h.kappa[2] > 0.0 && h.kappa[3] < 0.0;
    s.push(Check::holds("kappa_sign_pattern", pattern));
    let kappa_err = (0..4)
        .map(|a| (h.kappa[a] - 0.5 * numeric_df(bg, roots[a])).abs() / h.kappa[a].abs())
        .fold(0.0, f64::max);
    s.push(Check::below("kappa_vs_numeric_derivative", kappa_err, 1e-9));
    out.write_csv(
        "horizons.csv",
        &["index", "r", "F", "kappa"],
        &(0..4).map(|a| vec![a as f64, roots[a], p.f(roots[a]), h.kappa[a]]).collect::<Vec<_>>(),
    )?;

    // Dominant energy condition.
    let dec = dominant_energy_check(p, h);
    s.measure("dec_margin", dec.margin);
    s.measure("dec_lambda_bound", dec.lambda_bound);
    let radii: Vec<f64> = (1..=10).map(|k| h.r_minus + (h.r_plus - h.r_minus) * k as f64 / 11.0).collect();
    if dec.holds {
        let per = g.energy_samples.div_ceil(radii.len());
        let mut worst = f64::INFINITY;
        for &r in &radii {
            let pt = SpacetimePoint::new(0.0, 0.0, r, 1.0, 0.0);
            let st = energy_condition_sample(p, &pt, per, &mut rng).context("energy sampler")?;
            worst = worst.min(st.min_neg_t_xx).min(st.min_flux_causality);
        }
        s.push(Check::at_least("dec_min_sample", worst, -1e-12));
    } else {
        let witness = radii.iter().find_map(|&r| dec_witness(p, r));
        match witness {
            Some(w) => {
                s.push(Check::holds("dec_witness_timelike_negative", w.g_xx > 0.0 && w.neg_t_xx < 0.0));
                s.measure("dec_witness_r", w.r);
                s.measure("dec_witness_neg_t_xx", w.neg_t_xx);
            }
            None => s.push(Check::holds("dec_witness_found", false)),
        }
        // Wherever the local margin is non-negative the sampler must agree.
        // The margin decreases in r and vanishes at (Q²(1 − 2q²/m²)/2Λ)^{1/4}.
        let zero = (p.charge * p.charge * (1.0 - 2.0 * p.q * p.q / (p.m * p.m)) / (2.0 * p.lambda)).powf(0.25);
        let candidate = 0.5 * (h.r_minus + zero.min(h.r_plus));
        let inside = zero.is_finite() && zero > h.r_minus && local_energy_margin(p, candidate) >= 0.0;
        if let Some(r) = inside.then_some(candidate) {
            s.measure("dec_pointwise_r", r);
            let pt = SpacetimePoint::new(0.0, 0.0, r, 1.0, 0.0);
            let st = energy_condition_sample(p, &pt, g.energy_samples, &mut rng).context("energy sampler")?;
            s.push(Check::at_least("dec_pointwise_min_sample", st.min_neg_t_xx.min(st.min_flux_causality), -1e-12));
        }
    }
    let fluid = (1..=20)
        .map(|k| fluid_fields(p, h.r_minus + (h.r_plus - h.r_minus) * k as f64 / 21.0).euler_residual.abs())
        .fold(0.0, f64::max);
    s.measure("fluid_euler_residual", fluid);

    // Coordinates.
    let map = &bg.map;
    let mut round = 0.0f64;
    for k in 0..=1200 {
        let x = -60.0 + 0.1 * k as f64;
        round = round.max((map.x_at(&map.invert_tortoise(x)) - x).abs());
    }
    s.push(Check::below("tortoise_round_trip", round, 1e-10));
    let decay = [-40.0, 40.0]
        .iter()
        .map(|&x| {
            let pt = map.invert_tortoise(x);
            let d = if x < 0.0 { pt.d_minus } else { pt.d_plus };
            (d / map.asymptotic_offset(x) - 1.0).abs()
        })
        .fold(0.0, f64::max);
    s.push(Check::below("near_horizon_decay_rel_error", decay, 1e-2));
    let mut kr = 0.0f64;
    for &(x, hor) in &[(-30.0, KruskalHorizon::Event), (-5.0, KruskalHorizon::Event), (5.0, KruskalHorizon::Cosmological), (30.0, KruskalHorizon::Cosmological)] {
        let rp = map.invert_tortoise(x);
        let pt = SpacetimePoint::new(1.5, 0.3, rp.r, 1.0, 0.0);
        let c = kruskal_chart(map, &pt, &rp, hor).context("Kruskal chart")?;
        kr = kr.max((c.u * c.v * c.g_product - c.offset).abs() / c.offset);
    }
    s.push(Check::below("kruskal_identity_rel_error", kr, 1e-10));
    Ok(s)
}
