//! Property tests of the structural invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use ringscat_core::coords::TortoiseMap;
use ringscat_core::dynamics::stencil::shift;
use ringscat_core::dynamics::{energy, EvolutionKind, ModeSystem, Side};
use ringscat_core::geodesics::{integrate_principal, PathKind};
use ringscat_core::geometry::{horizon_structure, validate_params};
use ringscat_core::gridmodes::{build_grid, ModeIndex, ModeState, RadialGrid};
use ringscat_core::{SpacetimeParams, SpacetimePoint, REFERENCE_PARAMS};

fn small_grid() -> RadialGrid {
    let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
    build_grid(&TortoiseMap::new(&h), -20.0, 20.0, 801).unwrap()
}

fn gaussian(x: &[f64], c: f64, w: f64, k: f64, amp: Complex64) -> Vec<Complex64> {
    x.iter().map(|&xi| amp * Complex64::from_polar((-(xi - c) * (xi - c) / (2.0 * w * w)).exp(), k * xi)).collect()
}

fn state(g: &RadialGrid, c: f64, w: f64, k: f64) -> ModeState {
    ModeState {
        time: 0.0,
        u0: gaussian(&g.x, c, w, k, Complex64::new(1.0, 0.2)),
        u1: gaussian(&g.x, -c, 0.8 * w, -k, Complex64::new(0.3, -0.5)),
    }
}

fn max_rel(a: &ModeState, b: &ModeState) -> f64 {
    let d = a.u0.iter().zip(&b.u0).chain(a.u1.iter().zip(&b.u1)).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let s = b.u0.iter().chain(&b.u1).map(|p| p.norm()).fold(0.0, f64::max);
    d / s
}

/// Valid parameter sets near the reference one.
fn params() -> impl Strategy<Value = SpacetimeParams> {
    (0.8..1.2f64, 0.2..0.6f64, 0.02..0.07f64, 0.0..0.3f64)
        .prop_map(|(m, q, l, fq)| SpacetimeParams::new(m, q, l, fq, 1.0))
        .prop_filter("valid", |p| validate_params(p).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tortoise_round_trip(p in params(), x in -60.0..60.0f64) {
        let h = horizon_structure(&p).unwrap();
        let map = TortoiseMap::new(&h);
        let pt = map.invert_tortoise(x);
        prop_assert!((map.x_at(&pt) - x).abs() < 1e-10);
    }

    #[test]
    fn factorised_horizon_function_agrees(p in params(), t in 0.01..0.99f64) {
        let h = horizon_structure(&p).unwrap();
        let r = h.r_minus + t * (h.r_plus - h.r_minus);
        let direct: f64 = p.f(r);
        prop_assert!((h.factorized_f(r) - direct).abs() < 1e-10 * direct.abs().max(1e-3));
    }

    #[test]
    fn kappa_sign_pattern(p in params()) {
        let h = horizon_structure(&p).unwrap();
        prop_assert!(h.kappa[0] > 0.0 && h.kappa[1] < 0.0 && h.kappa[2] > 0.0 && h.kappa[3] < 0.0);
    }

    #[test]
    fn principal_paths_stay_null(p in params(), t in 0.1..0.9f64, outgoing in any::<bool>()) {
        let h = horizon_structure(&p).unwrap();
        let map = TortoiseMap::new(&h);
        let r0 = h.r_minus + t * (h.r_plus - h.r_minus);
        let start = SpacetimePoint::new(0.0, 0.0, r0, 1.0, 0.0);
        let (kind, target) = if outgoing { (PathKind::Out, h.r_plus - 1e-6) } else { (PathKind::In, h.r_minus + 1e-6) };
        let path = integrate_principal(&map, &start, kind, target, 50).unwrap();
        prop_assert!(path.max_null_invariant() < 1e-9);
        prop_assert!(path.max_z_orthogonality() < 1e-12);
    }

    #[test]
    fn integer_shifts_are_exact_and_invertible(k in -40i32..40, c in -5.0..5.0f64) {
        let g = small_grid();
        let f = gaussian(&g.x, c, 1.5, 0.7, Complex64::new(1.0, 0.0));
        let s = shift(&f, k as f64 * g.dx, g.dx);
        for i in 0..g.n as i64 {
            let j = (i + k as i64).clamp(0, g.n as i64 - 1) as usize;
            prop_assert_eq!(s[i as usize], f[j]);
        }
    }

    #[test]
    fn fractional_shift_round_trip(sft in -3.0..3.0f64, c in -5.0..5.0f64) {
        let g = small_grid();
        let f = gaussian(&g.x, c, 1.5, 0.7, Complex64::new(1.0, 0.0));
        let back = shift(&shift(&f, sft, g.dx), -sft, g.dx);
        let err = f.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn psi_inverse_is_a_left_inverse(c in -4.0..4.0f64, w in 1.0..2.0f64, k in -1.0..1.0f64) {
        let g = small_grid();
        let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
        for side in [Side::Horizon, Side::Cosmological] {
            let fr = sys.frame(side);
            let a = gaussian(&g.x, c, w, k, Complex64::new(1.0, 0.0));
            let b = gaussian(&g.x, -c, w, -k, Complex64::new(0.0, 1.0));
            let (a2, b2) = fr.psi_inverse(&fr.psi(&a, &b));
            let err = a.iter().zip(&a2).chain(b.iter().zip(&b2)).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-8, "{err}");
        }
    }

    #[test]
    fn evolutions_commute_with_global_phase(alpha in 0.0..6.0f64, t in -3.0..3.0f64) {
        let g = small_grid();
        let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
        let u = state(&g, 1.0, 2.0, 0.5);
        let rot = Complex64::from_polar(1.0, alpha);
        for kind in EvolutionKind::ALL {
            let a = sys.evolve(kind, &u.scaled(rot), t).unwrap();
            let b = sys.evolve(kind, &u, t).unwrap().scaled(rot);
            prop_assert!(max_rel(&a, &b) < 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn evolutions_are_linear(t in 0.5..3.0f64, c in -3.0..3.0f64) {
        let g = small_grid();
        let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
        let u = state(&g, c, 2.0, 0.5);
        let v = state(&g, -c, 1.5, -0.3);
        let (a, b) = (Complex64::new(0.7, -0.2), Complex64::new(-0.4, 1.1));
        for kind in EvolutionKind::ALL {
            let lhs = sys.evolve(kind, &u.combine(a, &v, b), t).unwrap();
            let rhs = sys.evolve(kind, &u, t).unwrap().combine(a, &sys.evolve(kind, &v, t).unwrap(), b);
            prop_assert!(max_rel(&lhs, &rhs) < 1e-11, "{kind:?}");
        }
    }

    #[test]
    fn full_dynamics_conserves_its_energies(c in -2.0..2.0f64, k in -1.0..1.0f64) {
        let g = small_grid();
        let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
        let u = state(&g, c, 1.5, k);
        let v = sys.evolve(EvolutionKind::Full, &u, 4.0).unwrap();
        for mu in [0.0, sys.pots.k_minus_inf] {
            let e0 = energy::conserved(&g, &sys.pots, &u, mu);
            let e1 = energy::conserved(&g, &sys.pots, &v, mu);
            prop_assert!((e1 - e0).abs() < 1e-8 * e0.abs(), "{e0} {e1}");
        }
    }
}
