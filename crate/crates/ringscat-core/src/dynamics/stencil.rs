//! Finite-difference operators on a uniform lattice.
//!
//! The compact derivative `Dc` is the 4th-order Padé scheme
//! `g_{i−1} + 4g_i + g_{i+1} = (3/dx)(f_{i+1} − f_{i−1})` closed by
//! `g_0 = g_{n−1} = 0`. Rearranged, each interior row is Simpson's rule on
//! `[x_{i−1}, x_{i+1}]`, so the Simpson recurrences [`cumulative_left`] and
//! [`cumulative_right`] invert `Dc` exactly on lattice functions that vanish
//! near the edges.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Compact 4th-order derivative with zero closure rows.
pub fn compact_derivative(f: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut g = vec![Complex64::new(0.0, 0.0); n];
    if n < 3 {
        return g;
    }
    let m = n - 2;
    let scale = 3.0 / dx;
    // Thomas algorithm for the constant (1, 4, 1) tridiagonal system.
    let mut cp = vec![0.0f64; m];
    let mut dp = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..m {
        let i = j + 1;
        let rhs = (f[i + 1] - f[i - 1]) * scale;
        if j == 0 {
            cp[0] = 0.25;
            dp[0] = rhs / 4.0;
        } else {
            let denom = 4.0 - cp[j - 1];
            cp[j] = 1.0 / denom;
            dp[j] = (rhs - dp[j - 1]) / denom;
        }
    }
    g[m] = dp[m - 1];
    for j in (0..m - 1).rev() {
        g[j + 1] = dp[j] - g[j + 2] * cp[j];
    }
    g
}

/// Simpson recurrence `∫_{−∞}^x g` with `f_0 = f_1 = 0`.
pub fn cumulative_left(g: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = g.len();
    let mut f = vec![Complex64::new(0.0, 0.0); n];
    let w = dx / 3.0;
    for i in 1..n.saturating_sub(1) {
        f[i + 1] = f[i - 1] + (g[i - 1] + g[i] * 4.0 + g[i + 1]) * w;
    }
    f
}

/// Simpson recurrence `∫_x^{∞} g` with `f_{n−1} = f_{n−2} = 0`.
pub fn cumulative_right(g: &[Complex64], dx: f64) -> Vec<Complex64> {
    let n = g.len();
    let mut f = vec![Complex64::new(0.0, 0.0); n];
    let w = dx / 3.0;
    if n < 3 {
        return f;
    }
    for i in (1..n - 1).rev() {
        f[i - 1] = f[i + 1] + (g[i - 1] + g[i] * 4.0 + g[i + 1]) * w;
    }
    f
}

/// Totals of the Simpson recurrence on the two parity sublattices: the last
/// two entries of [`cumulative_left`].
pub fn simpson_totals(g: &[Complex64], dx: f64) -> (Complex64, Complex64) {
    let f = cumulative_left(g, dx);
    let n = f.len();
    if n < 2 {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    (f[n - 1], f[n - 2])
}

#[inline]
fn at(f: &[Complex64], i: isize) -> Complex64 {
    if i < 0 || i as usize >= f.len() {
        Complex64::new(0.0, 0.0)
    } else {
        f[i as usize]
    }
}

/// 4th-order central first derivative, zero extension beyond the lattice.
pub fn central_d1(f: &[Complex64], dx: f64) -> Vec<Complex64> {
    let c = 1.0 / (12.0 * dx);
    (0..f.len() as isize)
        .map(|i| (at(f, i - 2) - at(f, i - 1) * 8.0 + at(f, i + 1) * 8.0 - at(f, i + 2)) * c)
        .collect()
}

/// 4th-order central second derivative, zero extension beyond the lattice.
/// The matrix is symmetric, so `−D2` is a non-negative Hermitian form on
/// compactly supported data.
pub fn central_d2(f: &[Complex64], dx: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); f.len()];
    central_d2_into(f, dx, &mut out);
    out
}

pub fn central_d2_into(f: &[Complex64], dx: f64, out: &mut [Complex64]) {
    let c = 1.0 / (12.0 * dx * dx);
    let n = f.len();
    for i in 0..n {
        let ii = i as isize;
        let v = if i >= 2 && i + 2 < n {
            -f[i - 2] + f[i - 1] * 16.0 - f[i] * 30.0 + f[i + 1] * 16.0 - f[i + 2]
        } else {
            -at(f, ii - 2) + at(f, ii - 1) * 16.0 - f[i] * 30.0 + at(f, ii + 1) * 16.0 - at(f, ii + 2)
        };
        out[i] = v * c;
    }
}

/// 4th-order one-sided first derivative at node `i ∈ {0, 1}` looking right.
pub fn one_sided_left(f: &[Complex64], i: usize, dx: f64) -> Complex64 {
    let c = 1.0 / (12.0 * dx);
    match i {
        0 => (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * c,
        _ => (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * c,
    }
}

/// 4th-order one-sided first derivative at node `n−1−j`, `j ∈ {0, 1}`,
/// looking left.
pub fn one_sided_right(f: &[Complex64], j: usize, dx: f64) -> Complex64 {
    let n = f.len();
    let c = 1.0 / (12.0 * dx);
    let g = |k: usize| f[n - 1 - k];
    match j {
        0 => (g(0) * 25.0 - g(1) * 48.0 + g(2) * 36.0 - g(3) * 16.0 + g(4) * 3.0) * c,
        _ => (g(0) * 3.0 + g(1) * 10.0 - g(2) * 18.0 + g(3) * 6.0 - g(4)) * c,
    }
}

/// `Σ dx·|f|²`.
pub fn norm2(f: &[Complex64], dx: f64) -> f64 {
    f.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx
}

/// `Σ dx·f·conj(g)`.
pub fn inner(f: &[Complex64], g: &[Complex64], dx: f64) -> Complex64 {
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum::<Complex64>() * dx
}

/// Points in the interpolation stencil of [`shift`].
pub const SHIFT_STENCIL: usize = 8;

/// Shifts lattice data: `out(x_i) = f(x_i + shift)`, 8-point Lagrange
/// interpolation between nodes and constant extension beyond the ends.
/// Integer multiples of `dx` are exact copies.
pub fn shift(f: &[Complex64], shift: f64, dx: f64) -> Vec<Complex64> {
    let n = f.len();
    let s = shift / dx;
    let k = libm_floor(s + 0.5);
    let frac = s - k;
    let get = |i: isize| -> Complex64 {
        if n == 0 {
            Complex64::new(0.0, 0.0)
        } else if i < 0 {
            f[0]
        } else if i as usize >= n {
            f[n - 1]
        } else {
            f[i as usize]
        }
    };
    let ki = k as isize;
    if frac.abs() < 1e-12 {
        return (0..n as isize).map(|i| get(i + ki)).collect();
    }
    // Stencil offsets −3..=4 around base = floor(s); t ∈ (0, 1).
    let base = libm_floor(s);
    let t = s - base;
    let bi = base as isize;
    let lo = -(SHIFT_STENCIL as isize) / 2 + 1;
    let mut w = [0.0; SHIFT_STENCIL];
    for (a, wa) in w.iter_mut().enumerate() {
        let xa = (lo + a as isize) as f64;
        let mut prod = 1.0;
        for b in 0..SHIFT_STENCIL {
            if b != a {
                let xb = (lo + b as isize) as f64;
                prod *= (t - xb) / (xa - xb);
            }
        }
        *wa = prod;
    }
    (0..n as isize)
        .map(|i| {
            let j = i + bi + lo;
            w.iter().enumerate().map(|(a, &wa)| get(j + a as isize) * wa).sum()
        })
        .collect()
}

fn libm_floor(x: f64) -> f64 {
    num_traits::Float::floor(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(n: usize, dx: f64) -> Vec<Complex64> {
        (0..n)
            .map(|i| {
                let x = (i as f64 - n as f64 / 2.0) * dx;
                let y = x / 3.0;
                if y.abs() < 1.0 {
                    Complex64::new(num_traits::Float::exp(-1.0 / (1.0 - y * y)), 0.3 * y)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect()
    }

    #[test]
    fn simpson_inverts_compact_derivative() {
        let dx = 0.05;
        let f = bump(400, dx);
        let g = compact_derivative(&f, dx);
        let back = cumulative_left(&g, dx);
        let err = f.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
        let back_r = cumulative_right(&g, dx);
        let err_r = f.iter().zip(&back_r).map(|(a, b)| (a + b).norm()).fold(0.0, f64::max);
        assert!(err_r < 1e-12, "{err_r}");
    }

    #[test]
    fn compact_derivative_inverts_simpson() {
        let dx = 0.05;
        let g = bump(400, dx);
        let f = cumulative_left(&g, dx);
        let back = compact_derivative(&f, dx);
        let err = g.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn integer_shift_is_a_copy() {
        let dx = 0.1;
        let f = bump(100, dx);
        let s = shift(&f, 3.0 * dx, dx);
        assert_eq!(s[10], f[13]);
        assert_eq!(s[99], f[99]);
    }
}
