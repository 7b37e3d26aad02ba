//! Ψ transforms, the in/out decomposition, Huygens shifts and the
//! projection onto the decomposable class.

use num_complex::Complex64;

use ringscat_core::coords::TortoiseMap;
use ringscat_core::dynamics::{huygens_check, support_bounds, ModeSystem, Side};
use ringscat_core::geometry::horizon_structure;
use ringscat_core::gridmodes::{build_grid, ModeIndex, ModeState, RadialGrid};
use ringscat_core::REFERENCE_PARAMS;

fn grid(n: usize) -> RadialGrid {
    let h = horizon_structure(&REFERENCE_PARAMS).unwrap();
    build_grid(&TortoiseMap::new(&h), -40.0, 40.0, n).unwrap()
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

fn rel_diff(a: &ModeState, b: &ModeState) -> f64 {
    let num: f64 = a.u0.iter().zip(&b.u0).chain(a.u1.iter().zip(&b.u1)).map(|(p, q)| (p - q).norm_sqr()).sum();
    let den: f64 = b.u0.iter().chain(&b.u1).map(|p| p.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Compactly supported state in [−6, 6] with nonzero decomposition defect.
fn compact_state(g: &RadialGrid) -> ModeState {
    ModeState { time: 0.0, u0: bump(&g.x, -1.0, 5.0, 0.7), u1: bump(&g.x, 1.0, 4.0, -0.4) }
}

pub fn psi_errors(g: &RadialGrid) -> (f64, f64) {
    let sys = ModeSystem::new(g, ModeIndex::new(1, 1).unwrap(), 0.25);
    let mut worst_iso = 0.0f64;
    let mut worst_inv = 0.0f64;
    for side in [Side::Horizon, Side::Cosmological] {
        let fr = sys.frame(side);
        let a = bump(&g.x, -3.0, 4.0, 1.1);
        let b = bump(&g.x, 5.0, 3.0, -0.6);
        let u = fr.psi(&a, &b);
        let lhs = fr.energy(&u);
        let rhs = fr.h1_norm2(&a) + fr.h1_norm2(&b);
        worst_iso = worst_iso.max((lhs - rhs).abs() / rhs);
        let (a2, b2) = fr.psi_inverse(&u);
        let err: f64 = a.iter().zip(&a2).chain(b.iter().zip(&b2)).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        let scale = a.iter().chain(&b).map(|p| p.norm()).fold(0.0, f64::max);
        worst_inv = worst_inv.max(err / scale);
    }
    (worst_iso, worst_inv)
}

#[test]
fn psi_is_an_isometry_and_inverts() {
    let g = grid(4001);
    let (iso, inv) = psi_errors(&g);
    println!("psi isometry {iso:e} inverse {inv:e}");
    assert!(iso < 1e-8, "{iso}");
    assert!(inv < 1e-8, "{inv}");
}

#[test]
fn decomposition_reconstructs_with_support_inclusions() {
    let g = grid(4001);
    let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
    for side in [Side::Horizon, Side::Cosmological] {
        let fr = sys.frame(side);
        let raw = compact_state(&g);
        assert!(fr.decompose(&raw, 1e-12).is_err());
        let u = fr.project_to_l(&raw, 0.0, 2.0);
        let split = fr.decompose(&u, 1e-12).unwrap();
        let sum = split.incoming.combine(Complex64::new(1.0, 0.0), &split.outgoing, Complex64::new(1.0, 0.0));
        let rec = rel_diff(&sum, &u);
        // Exact support of the data, round-off threshold for the pieces.
        let (lo, hi) = support_bounds(&g.x, &u, 0.0).unwrap();
        let (_, in_hi) = support_bounds(&g.x, &split.incoming, 1e-12).unwrap();
        let (out_lo, _) = support_bounds(&g.x, &split.outgoing, 1e-12).unwrap();
        println!("{side:?} rec {rec:e} support [{lo}, {hi}] in<= {in_hi} out>= {out_lo}");
        assert!(rec < 1e-10, "{rec}");
        assert!(in_hi <= hi + g.dx, "{in_hi} > {hi}");
        assert!(out_lo >= lo - g.dx, "{out_lo} < {lo}");
    }
}

#[test]
fn huygens_edges_move_exactly() {
    let g = grid(4001);
    let sys = ModeSystem::new(&g, ModeIndex::new(1, 1).unwrap(), 0.25);
    for side in [Side::Horizon, Side::Cosmological] {
        let fr = sys.frame(side);
        let u = fr.project_to_l(&compact_state(&g), 0.0, 2.0);
        let split = fr.decompose(&u, 1e-12).unwrap();
        for t in [3.0, 7.3, 12.0] {
            let rep = huygens_check(fr, &split, t, 1e-10);
            println!("{side:?} t={t} {:.3} {:.3}", rep.in_shift_error_cells, rep.out_shift_error_cells);
            assert!(rep.in_shift_error_cells <= 1.0 + 1e-9, "{rep:?}");
            assert!(rep.out_shift_error_cells <= 1.0 + 1e-9, "{rep:?}");
        }
    }
}

/// Exponent `p` in `distance ≈ C·spread^p` from a least-squares fit.
pub fn projection_slope(g: &RadialGrid) -> f64 {
    let sys = ModeSystem::new(g, ModeIndex::new(1, 1).unwrap(), 0.25);
    let fr = sys.frame(Side::Horizon);
    let raw = compact_state(g);
    let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&spread| {
            let p = fr.project_to_l(&raw, 0.0, spread);
            let d = fr.energy(&p.sub(&raw)).sqrt();
            (f64::ln(spread), d.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[test]
fn projection_distance_decays_like_inverse_square_root() {
    let g = grid(4001);
    let slope = projection_slope(&g);
    println!("projection slope {slope}");
    assert!((slope + 0.5).abs() < 0.15 * 0.5, "{slope}");
}
