//! Small dense linear algebra for 5×5 tensors and a tridiagonal solver.

use num_complex::Complex64;

pub type Mat5 = [[f64; 5]; 5];

pub const ZERO5: Mat5 = [[0.0; 5]; 5];

pub fn identity5() -> Mat5 {
    let mut m = ZERO5;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matmul5(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut c = ZERO5;
    for i in 0..5 {
        for j in 0..5 {
            let mut acc = 0.0;
            for k in 0..5 {
                acc += a[i][k] * b[k][j];
            }
            c[i][j] = acc;
        }
    }
    c
}

pub fn matvec5(a: &Mat5, x: &[f64; 5]) -> [f64; 5] {
    let mut y = [0.0; 5];
    for i in 0..5 {
        for k in 0..5 {
            y[i] += a[i][k] * x[k];
        }
    }
    y
}

/// `xᵀ A y`.
pub fn bilinear5(a: &Mat5, x: &[f64; 5], y: &[f64; 5]) -> f64 {
    let ay = matvec5(a, y);
    (0..5).map(|i| x[i] * ay[i]).sum()
}

pub fn add5(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut c = *a;
    for i in 0..5 {
        for j in 0..5 {
            c[i][j] += b[i][j];
        }
    }
    c
}

pub fn scale5(a: &Mat5, k: f64) -> Mat5 {
    let mut c = *a;
    for row in c.iter_mut() {
        for v in row.iter_mut() {
            *v *= k;
        }
    }
    c
}

pub fn max_abs5(a: &Mat5) -> f64 {
    a.iter().flatten().fold(0.0, |m: f64, v| m.max(v.abs()))
}

pub fn max_abs_diff5(a: &Mat5, b: &Mat5) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// Determinant by LU factorisation with partial pivoting.
pub fn det5(a: &Mat5) -> f64 {
    let mut m = *a;
    let mut det = 1.0;
    for col in 0..5 {
        let mut piv = col;
        for row in col + 1..5 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..5 {
            let f = m[row][col] / m[col][col];
            for k in col..5 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
/// Returns `None` for a numerically singular matrix.
pub fn inverse5(a: &Mat5) -> Option<Mat5> {
    let mut m = *a;
    let mut inv = identity5();
    for col in 0..5 {
        let mut piv = col;
        for row in col + 1..5 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col] == 0.0 || !m[piv][col].is_finite() {
            return None;
        }
        m.swap(piv, col);
        inv.swap(piv, col);
        let d = 1.0 / m[col][col];
        for k in 0..5 {
            m[col][k] *= d;
            inv[col][k] *= d;
        }
        for row in 0..5 {
            if row != col {
                let f = m[row][col];
                if f != 0.0 {
                    for k in 0..5 {
                        m[row][k] -= f * m[col][k];
                        inv[row][k] -= f * inv[col][k];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Solves `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i` (Thomas algorithm).
/// `a[0]` and `c[n-1]` are ignored. The system must be diagonally dominant.
pub fn solve_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &mut [Complex64]) {
    let n = d.len();
    if n == 0 {
        return;
    }
    let mut cp = alloc::vec![0.0; n];
    let mut denom = b[0];
    cp[0] = c[0] / denom;
    d[0] /= denom;
    for i in 1..n {
        denom = b[i] - a[i] * cp[i - 1];
        cp[i] = if i + 1 < n { c[i] / denom } else { 0.0 };
        let prev = d[i - 1];
        d[i] = (d[i] - prev * a[i]) / denom;
    }
    for i in (0..n - 1).rev() {
        let next = d[i + 1];
        d[i] -= next * cp[i];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let mut a = ZERO5;
        for i in 0..5 {
            for j in 0..5 {
                a[i][j] = 1.0 / (1.0 + i as f64 + j as f64) + if i == j { 2.0 } else { 0.0 };
            }
        }
        let inv = inverse5(&a).unwrap();
        assert!(max_abs_diff5(&matmul5(&a, &inv), &identity5()) < 1e-13);
    }

    #[test]
    fn det_of_diagonal_with_swap() {
        let mut a = ZERO5;
        a[0][1] = 2.0;
        a[1][0] = 3.0;
        a[2][2] = 1.0;
        a[3][3] = -1.0;
        a[4][4] = 5.0;
        assert!((det5(&a) - 30.0).abs() < 1e-12);
    }

    #[test]
    fn tridiagonal_solves() {
        let n = 7;
        let a = alloc::vec![1.0; n];
        let b = alloc::vec![4.0; n];
        let c = alloc::vec![1.0; n];
        let x: alloc::vec::Vec<Complex64> =
            (0..n).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let mut d: alloc::vec::Vec<Complex64> = (0..n)
            .map(|i| {
                let mut v = x[i] * b[i];
                if i > 0 {
                    v += x[i - 1] * a[i];
                }
                if i + 1 < n {
                    v += x[i + 1] * c[i];
                }
                v
            })
            .collect();
        solve_tridiagonal(&a, &b, &c, &mut d);
        for i in 0..n {
            assert!((d[i] - x[i]).norm() < 1e-13);
        }
    }
}
