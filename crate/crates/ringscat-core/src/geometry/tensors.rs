//! Metric, Christoffel symbols, Ricci tensor and stress-energy of the
//! extended 5D spacetime. Index order is `(t, z, r, θ, φ)`.

use core::array;


use super::{SpacetimeParams, SpacetimePoint};
use crate::dual::{Dual, Scalar};
use crate::error::CoreError;
use crate::linalg::{det5, inverse5, max_abs5, Mat5, ZERO5};

/// `Γ[a][b][c] = Γ^a_{bc}`.
pub type Christoffel = [[[f64; 5]; 5]; 5];

/// Every tensor at one point, from closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorBundle {
    pub metric: Mat5,
    pub inverse_metric: Mat5,
    pub christoffel: Christoffel,
    pub ricci: Mat5,
    pub scalar_curvature: f64,
    pub t_maxwell: Mat5,
    pub t_fluid: Mat5,
}

impl TensorBundle {
    /// Total stress-energy `T̃ = T̃_Maxwell + T̃_fluid`.
    pub fn stress(&self) -> Mat5 {
        let mut t = ZERO5;
        for i in 0..5 {
            for j in 0..5 {
                t[i][j] = self.t_maxwell[i][j] + self.t_fluid[i][j];
            }
        }
        t
    }

    /// `g^{bc} R_bc`, the contraction of the stored Ricci tensor.
    pub fn contracted_scalar_curvature(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                s += self.inverse_metric[i][j] * self.ricci[i][j];
            }
        }
        s
    }
}

/// `Ric − ½R̃g̃ − Λg̃ + T̃` with its largest entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EinsteinResidual {
    pub matrix: Mat5,
    pub max_abs: f64,
}

fn check_point(p: &SpacetimeParams, pt: &SpacetimePoint) -> Result<(), CoreError> {
    if !(pt.r > 0.0) || !pt.r.is_finite() {
        return Err(CoreError::OutOfDomain { value: pt.r, lower: 0.0, upper: f64::INFINITY });
    }
    if !(pt.theta > 0.0 && pt.theta < core::f64::consts::PI) {
        return Err(CoreError::OutOfDomain {
            value: pt.theta,
            lower: 0.0,
            upper: core::f64::consts::PI,
        });
    }
    let f = p.f(pt.r);
    if f == 0.0 || !f.is_finite() {
        return Err(CoreError::DegenerateChart { r: pt.r });
    }
    Ok(())
}

/// Lower-index metric, generic over the scalar type.
pub fn metric<S: Scalar>(p: &SpacetimeParams, r: S, theta: S) -> [[S; 5]; 5] {
    let z = S::cst(0.0);
    let mut g = [[z; 5]; 5];
    let f = p.f(r);
    let w = p.w(r);
    let im2 = 1.0 / (p.m * p.m);
    let st = theta.sine();
    g[0][0] = f - (w * w).scale(im2);
    g[0][1] = w.scale(-im2);
    g[1][0] = g[0][1];
    g[1][1] = S::cst(-im2);
    g[2][2] = S::cst(-1.0) / f;
    g[3][3] = -(r * r);
    g[4][4] = -(r * r * st * st);
    g
}

/// Closed-form inverse metric.
pub fn inverse_metric_closed_form(p: &SpacetimeParams, r: f64, theta: f64) -> Mat5 {
    let mut gi = ZERO5;
    let f = p.f(r);
    let w = p.w(r);
    let st = theta.sin();
    gi[0][0] = 1.0 / f;
    gi[0][1] = -w / f;
    gi[1][0] = gi[0][1];
    gi[1][1] = -p.m * p.m + w * w / f;
    gi[2][2] = -f;
    gi[3][3] = -1.0 / (r * r);
    gi[4][4] = -1.0 / (r * r * st * st);
    gi
}

/// Numerical determinant of the metric and the closed form `r⁴sin²θ/m²`.
/// The determinant of a 5×5 matrix with signature `(+,−,−,−,−)` is positive.
pub fn metric_determinant(p: &SpacetimeParams, pt: &SpacetimePoint) -> (f64, f64) {
    let g: Mat5 = metric(p, pt.r, pt.theta);
    let st = pt.theta.sin();
    let r2 = pt.r * pt.r;
    (det5(&g), r2 * r2 * st * st / (p.m * p.m))
}

/// Closed-form Christoffel symbols, generic so that dual numbers give their
/// exact radial and polar derivatives.
pub fn christoffel_closed_form<S: Scalar>(p: &SpacetimeParams, r: S, theta: S) -> [[[S; 5]; 5]; 5] {
    let z = S::cst(0.0);
    let mut g = [[[z; 5]; 5]; 5];
    let f = p.f(r);
    let df = p.df(r);
    let w = p.w(r);
    let dw = p.dw(r);
    let m2 = p.m * p.m;
    let two_m2_f = f.scale(2.0 * m2);
    let st = theta.sine();
    let ct = theta.cosine();
    let mut set = |a: usize, b: usize, c: usize, v: S| {
        g[a][b][c] = v;
        g[a][c][b] = v;
    };
    set(0, 0, 2, (df.scale(m2) - w * dw) / two_m2_f);
    set(0, 1, 2, -dw / two_m2_f);
    set(1, 0, 2, ((f * dw - df * w).scale(m2) + w * w * dw) / two_m2_f);
    set(1, 1, 2, w * dw / two_m2_f);
    set(2, 0, 0, f * (df.scale(m2) - (w * dw).scale(2.0)) / S::cst(2.0 * m2));
    set(2, 0, 1, -(f * dw) / S::cst(2.0 * m2));
    set(2, 2, 2, -df / f.scale(2.0));
    set(2, 3, 3, -(r * f));
    set(2, 4, 4, -(r * f * st * st));
    set(3, 2, 3, S::cst(1.0) / r);
    set(3, 4, 4, -(st * ct));
    set(4, 2, 4, S::cst(1.0) / r);
    set(4, 3, 4, ct / st);
    g
}

/// `R_bc = ∂_aΓ^a_bc − ∂_cΓ^a_ab + Γ^a_adΓ^d_bc − Γ^a_cdΓ^d_ab`, given
/// `dgamma[k] = ∂_k Γ`.
fn ricci_from_gamma(gamma: &Christoffel, dgamma: &[Christoffel; 5]) -> Mat5 {
    let mut ric = ZERO5;
    for b in 0..5 {
        for c in 0..5 {
            let mut v = 0.0;
            for a in 0..5 {
                v += dgamma[a][a][b][c] - dgamma[c][a][a][b];
                for d in 0..5 {
                    v += gamma[a][a][d] * gamma[d][b][c] - gamma[a][c][d] * gamma[d][a][b];
                }
            }
            ric[b][c] = v;
        }
    }
    ric
}

/// Ricci tensor contracted from the closed-form Christoffel symbols, with
/// their derivatives computed exactly by forward-mode differentiation.
pub fn ricci_from_christoffels(p: &SpacetimeParams, r: f64, theta: f64) -> Mat5 {
    let gr = christoffel_closed_form(p, Dual::var(r), Dual::constant(theta));
    let gt = christoffel_closed_form(p, Dual::constant(r), Dual::var(theta));
    let gamma: Christoffel = array::from_fn(|a| array::from_fn(|b| array::from_fn(|c| gr[a][b][c].v)));
    let mut dgamma = [[[[0.0; 5]; 5]; 5]; 5];
    dgamma[2] = array::from_fn(|a| array::from_fn(|b| array::from_fn(|c| gr[a][b][c].d)));
    dgamma[3] = array::from_fn(|a| array::from_fn(|b| array::from_fn(|c| gt[a][b][c].d)));
    ricci_from_gamma(&gamma, &dgamma)
}

/// Ricci tensor in the printed component form.
pub fn ricci_closed_form(p: &SpacetimeParams, r: f64, theta: f64) -> Mat5 {
    let mut ric = ZERO5;
    let f = p.f(r);
    let df = p.df(r);
    let d2f = p.d2f(r);
    let w = p.w(r);
    let dw = p.dw(r);
    let d2w = p.d2w(r);
    let m2 = p.m * p.m;
    let m4 = m2 * m2;
    let st = theta.sin();
    ric[0][0] = f * (2.0 * df + r * d2f) / (2.0 * r)
        - (2.0 * f * w * dw / (m2 * r) + f * w * d2w / m2 + f * dw * dw / (2.0 * m2)
            + w * w * dw * dw / (2.0 * m4));
    ric[0][1] = -(f * dw / (m2 * r) + f * d2w / (2.0 * m2) + w * dw * dw / (2.0 * m4));
    ric[1][0] = ric[0][1];
    ric[1][1] = -dw * dw / (2.0 * m4);
    ric[2][2] = -(2.0 * df + r * d2f) / (2.0 * r * f) + dw * dw / (2.0 * m2 * f);
    ric[3][3] = 1.0 - f - r * df;
    ric[4][4] = (1.0 - f - r * df) * st * st;
    ric
}

/// `R̃ = −4Λ − q²Q²/(2m²r⁴)`.
pub fn scalar_curvature_closed_form(p: &SpacetimeParams, r: f64) -> f64 {
    let s = p.s();
    let r2 = r * r;
    -4.0 * p.lambda - s * s / (2.0 * p.m * p.m * r2 * r2)
}

/// Maxwell and fluid stress-energy tensors, in that order.
pub fn stress_tensors(p: &SpacetimeParams, r: f64, theta: f64) -> (Mat5, Mat5) {
    let f = p.f(r);
    let w = p.w(r);
    let m2 = p.m * p.m;
    let st = theta.sin();
    let qq = super::mathfrak_q(p, r);
    let mut tm = ZERO5;
    tm[0][0] = qq * (-f - w * w / m2);
    tm[0][1] = -qq * w / m2;
    tm[1][0] = tm[0][1];
    tm[1][1] = -qq / m2;
    tm[2][2] = qq / f;
    tm[3][3] = -qq * r * r;
    tm[4][4] = -qq * r * r * st * st;
    let ff = super::fluid_fields(p, r);
    let u = ff.u;
    let tf: Mat5 = array::from_fn(|i| array::from_fn(|j| ff.rho * u[i] * u[j]));
    (tm, tf)
}

/// Every closed-form tensor at `pt`.
pub fn tensors_at(p: &SpacetimeParams, pt: &SpacetimePoint) -> Result<TensorBundle, CoreError> {
    check_point(p, pt)?;
    let (t_maxwell, t_fluid) = stress_tensors(p, pt.r, pt.theta);
    Ok(TensorBundle {
        metric: metric(p, pt.r, pt.theta),
        inverse_metric: inverse_metric_closed_form(p, pt.r, pt.theta),
        christoffel: christoffel_closed_form(p, pt.r, pt.theta),
        ricci: ricci_closed_form(p, pt.r, pt.theta),
        scalar_curvature: scalar_curvature_closed_form(p, pt.r),
        t_maxwell,
        t_fluid,
    })
}

fn assemble_residual(ric: &Mat5, scal: f64, g: &Mat5, lambda: f64, t: &Mat5) -> EinsteinResidual {
    let matrix: Mat5 =
        array::from_fn(|i| array::from_fn(|j| ric[i][j] - 0.5 * scal * g[i][j] - lambda * g[i][j] + t[i][j]));
    EinsteinResidual { max_abs: max_abs5(&matrix), matrix }
}

/// Residual of the extended Einstein equations with the Ricci tensor
/// contracted from the closed-form Christoffel symbols.
pub fn einstein_residual(p: &SpacetimeParams, pt: &SpacetimePoint) -> Result<EinsteinResidual, CoreError> {
    einstein_residual_with(p, p, pt)
}

/// As [`einstein_residual`], with the stress-energy evaluated from
/// `stress_params` instead of `p`. Used to confirm that the residual detects
/// a mismatched source.
pub fn einstein_residual_with(
    p: &SpacetimeParams,
    stress_params: &SpacetimeParams,
    pt: &SpacetimePoint,
) -> Result<EinsteinResidual, CoreError> {
    check_point(p, pt)?;
    let g: Mat5 = metric(p, pt.r, pt.theta);
    let ric = ricci_from_christoffels(p, pt.r, pt.theta);
    let scal = scalar_curvature_closed_form(p, pt.r);
    let (tm, tf) = stress_tensors(stress_params, pt.r, pt.theta);
    let t: Mat5 = array::from_fn(|i| array::from_fn(|j| tm[i][j] + tf[i][j]));
    Ok(assemble_residual(&ric, scal, &g, p.lambda, &t))
}

const FD_REL_STEP: f64 = 1e-4;
/// Largest r-step as a fraction of `|F/F′|`, the distance scale to the
/// nearest horizon.
const FD_HORIZON_FRACTION: f64 = 0.03;
const FD_THETA_STEP: f64 = 1e-3;

fn fd_radial_step(p: &SpacetimeParams, r: f64) -> f64 {
    let f: f64 = p.f(r);
    let df: f64 = p.df(r);
    let scale = if df != 0.0 { (f / df).abs() } else { f64::INFINITY };
    (FD_REL_STEP * r).min(FD_HORIZON_FRACTION * scale)
}

fn flatten25(m: &Mat5) -> [f64; 25] {
    array::from_fn(|k| m[k / 5][k % 5])
}

fn flatten125(c: &Christoffel) -> [f64; 125] {
    array::from_fn(|k| c[k / 25][(k / 5) % 5][k % 5])
}

fn unflatten25(v: &[f64; 25]) -> Mat5 {
    array::from_fn(|i| array::from_fn(|j| v[5 * i + j]))
}

fn unflatten125(v: &[f64; 125]) -> Christoffel {
    array::from_fn(|a| array::from_fn(|b| array::from_fn(|c| v[25 * a + 5 * b + c])))
}

/// 4th-order central difference of a vector-valued function.
fn central4<const N: usize, G: Fn(f64) -> [f64; N]>(g: &G, x: f64, h: f64) -> [f64; N] {
    let (p2, p1, m1, m2) = (g(x + 2.0 * h), g(x + h), g(x - h), g(x - 2.0 * h));
    array::from_fn(|k| (-p2[k] + 8.0 * p1[k] - 8.0 * m1[k] + m2[k]) / (12.0 * h))
}

/// One Richardson step on the 4th-order stencil: `(16 D(h/2) − D(h))/15`.
fn richardson4<const N: usize, G: Fn(f64) -> [f64; N]>(g: &G, x: f64, h: f64) -> [f64; N] {
    let coarse = central4(g, x, h);
    let fine = central4(g, x, 0.5 * h);
    array::from_fn(|k| (16.0 * fine[k] - coarse[k]) / 15.0)
}

/// Christoffel symbols from finite differences of the metric and a numerical
/// inverse. Independent of every closed form except the metric itself.
pub fn christoffel_finite_difference(p: &SpacetimeParams, r: f64, theta: f64) -> Christoffel {
    let g: Mat5 = metric(p, r, theta);
    let gi = inverse5(&g).unwrap_or(ZERO5);
    let mut dg = [ZERO5; 5];
    dg[2] = unflatten25(&richardson4(&|x| flatten25(&metric(p, x, theta)), r, fd_radial_step(p, r)));
    dg[3] = unflatten25(&richardson4(&|y| flatten25(&metric(p, r, y)), theta, FD_THETA_STEP));
    array::from_fn(|a| {
        array::from_fn(|b| {
            array::from_fn(|c| {
                let mut v = 0.0;
                for d in 0..5 {
                    v += gi[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
                }
                0.5 * v
            })
        })
    })
}

/// Ricci tensor from nested finite differences of the metric.
pub fn ricci_finite_difference(p: &SpacetimeParams, r: f64, theta: f64) -> Mat5 {
    let gamma = christoffel_finite_difference(p, r, theta);
    let mut dgamma = [[[[0.0; 5]; 5]; 5]; 5];
    dgamma[2] = unflatten125(&richardson4(
        &|x| flatten125(&christoffel_finite_difference(p, x, theta)),
        r,
        fd_radial_step(p, r),
    ));
    dgamma[3] = unflatten125(&richardson4(
        &|y| flatten125(&christoffel_finite_difference(p, r, y)),
        theta,
        FD_THETA_STEP,
    ));
    ricci_from_gamma(&gamma, &dgamma)
}

/// Einstein residual with the Ricci tensor and scalar curvature both from
/// the finite-difference path and a numerical inverse metric.
pub fn einstein_residual_finite_difference(
    p: &SpacetimeParams,
    pt: &SpacetimePoint,
) -> Result<EinsteinResidual, CoreError> {
    check_point(p, pt)?;
    let g: Mat5 = metric(p, pt.r, pt.theta);
    let gi = inverse5(&g).ok_or(CoreError::DegenerateChart { r: pt.r })?;
    let ric = ricci_finite_difference(p, pt.r, pt.theta);
    let mut scal = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            scal += gi[i][j] * ric[i][j];
        }
    }
    let (tm, tf) = stress_tensors(p, pt.r, pt.theta);
    let t: Mat5 = array::from_fn(|i| array::from_fn(|j| tm[i][j] + tf[i][j]));
    Ok(assemble_residual(&ric, scal, &g, p.lambda, &t))
}
