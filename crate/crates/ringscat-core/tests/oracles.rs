//! Independent oracles for the horizon structure, the tortoise map and the
//! metric determinant, with frozen reference values.

use num_complex::Complex64;

use ringscat_core::coords::{kruskal_chart, KruskalHorizon, TortoiseMap};
use ringscat_core::geometry::metric;
use ringscat_core::geometry::{horizon_structure, metric_determinant};
use ringscat_core::{SpacetimeParams, SpacetimePoint, REFERENCE_PARAMS};

/// All roots of `Σ c_k z^k` (leading coefficient last) by Durand-Kerner.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * 3.0).collect();
    for _ in 0..2000 {
        let prev = roots.clone();
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
        }
        let moved = roots.iter().zip(&prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if moved < 1e-15 {
            break;
        }
    }
    roots
}

/// Real roots of `r²F(r) = −Λr⁴/3 + r² − 2Mr + Q²/2`, ascending.
fn quartic_roots(p: &SpacetimeParams) -> Vec<f64> {
    let c = [0.5 * p.charge * p.charge, -2.0 * p.mass, 1.0, 0.0, -p.lambda / 3.0];
    let mut r: Vec<f64> = durand_kerner(&c).iter().filter(|z| z.im.abs() < 1e-9).map(|z| z.re).collect();
    r.sort_by(f64::total_cmp);
    r
}

/// Adaptive Simpson quadrature.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

#[test]
fn horizons_match_independent_quartic_roots() {
    let p = REFERENCE_PARAMS;
    let h = horizon_structure(&p).unwrap();
    let oracle = quartic_roots(&p);
    assert_eq!(oracle.len(), 4);
    for (a, b) in h.roots().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-12 * b.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn reference_horizons_frozen() {
    let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
    assert!((h.r_minus - 2.093117957006161).abs() < 1e-13);
    assert!((h.r_plus - 6.447330698749342).abs() < 1e-13);
    assert!((2.0 * h.kappa_minus() - 0.35946922613381743).abs() < 1e-13);
    assert!((2.0 * h.kappa_plus().abs() - 0.16772999913479364).abs() < 1e-13);
}

#[test]
fn kappa_is_half_the_slope_at_each_root() {
    let p = REFERENCE_PARAMS;
    let h = horizon_structure(&p).unwrap();
    let f = |r: f64| -> f64 { p.f(r) };
    let signs = [1.0, -1.0, 1.0, -1.0];
    for ((r, k), s) in h.roots().iter().zip(h.kappa).zip(signs) {
        let e = 1e-3 * r.abs();
        let d = (-f(r + 2.0 * e) + 8.0 * f(r + e) - 8.0 * f(r - e) + f(r - 2.0 * e)) / (12.0 * e);
        assert!((k - 0.5 * d).abs() < 1e-9 * k.abs().max(1.0), "{k} vs {}", 0.5 * d);
        assert_eq!(k.signum(), s);
    }
}

#[test]
fn tortoise_coordinate_matches_quadrature() {
    let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
    let map = TortoiseMap::new(&h);
    let p = REFERENCE_PARAMS;
    let r0 = map.reference_radius;
    for r in [2.2, 3.0, 4.5, 6.0, 6.4] {
        let pt = map.point(r).unwrap();
        let x = simpson(&|s| 1.0 / p.f(s), r0, r, 1e-13);
        let y = simpson(&|s| 1.0 / (s * p.f(s)), r0, r, 1e-13);
        assert!((map.x_at(&pt) - x).abs() < 1e-9, "T({r}): {} vs {x}", map.x_at(&pt));
        assert!((map.y_at(&pt) - y).abs() < 1e-9, "Y({r}): {} vs {y}", map.y_at(&pt));
    }
}

#[test]
fn determinant_is_positive_block_product() {
    let p = REFERENCE_PARAMS;
    for (r, th) in [(2.5, 0.3), (4.0, 1.2), (6.2, 2.9)] {
        let g = metric(&p, r, th);
        let block = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let oracle = block * g[2][2] * g[3][3] * g[4][4];
        let (num, closed) = metric_determinant(&p, &SpacetimePoint::new(0.0, 0.0, r, th, 0.0));
        assert!(oracle > 0.0);
        assert!((num - oracle).abs() < 1e-12 * oracle);
        assert!((closed - oracle).abs() < 1e-12 * oracle);
    }
}

#[test]
fn kruskal_product_recovers_horizon_offset() {
    let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
    let map = TortoiseMap::new(&h);
    for (x, side) in [(-30.0, KruskalHorizon::Event), (25.0, KruskalHorizon::Cosmological)] {
        let pt = map.invert_tortoise(x);
        let c = kruskal_chart(&map, &SpacetimePoint::new(1.5, 0.4, pt.r, 1.0, 0.0), &pt, side).unwrap();
        assert!((c.u * c.v * c.g_product - c.offset).abs() < 1e-10 * c.offset);
        assert!((c.g - c.g_product).abs() < 1e-10 * c.g);
    }
}
