//! Forward-mode dual numbers.
//!
//! The curvature closed forms are written once, generically over [`Scalar`],
//! and evaluated with [`Dual`] arguments to obtain their exact first
//! derivatives. This gives an analytic Christoffel-to-Ricci path that does not
//! rely on finite differences.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Float;

/// Minimal field-like scalar needed by the closed-form expressions.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(self) -> f64;
    fn sine(self) -> Self;
    fn cosine(self) -> Self;

    fn scale(self, k: f64) -> Self {
        self * Self::cst(k)
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn sine(self) -> Self {
        Float::sin(self)
    }
    fn cosine(self) -> Self {
        Float::cos(self)
    }
}

/// A value together with its derivative along one seed direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    /// Independent variable: derivative seed 1.
    pub fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }

    pub fn constant(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let inv = 1.0 / o.v;
        Dual { v: self.v * inv, d: (self.d * o.v - self.v * o.d) * inv * inv }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

impl Scalar for Dual {
    fn cst(v: f64) -> Self {
        Dual::constant(v)
    }
    fn value(self) -> f64 {
        self.v
    }
    fn sine(self) -> Self {
        Dual { v: Float::sin(self.v), d: self.d * Float::cos(self.v) }
    }
    fn cosine(self) -> Self {
        Dual { v: Float::cos(self.v), d: -self.d * Float::sin(self.v) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_rule() {
        let x = Dual::var(2.0);
        let y = (x * x + Dual::cst(1.0)) / x;
        assert!((y.v - 2.5).abs() < 1e-15);
        // d/dx (x + 1/x) = 1 - 1/x²
        assert!((y.d - 0.75).abs() < 1e-15);
    }

    #[test]
    fn trig_chain() {
        let x = Dual::var(0.3);
        let y = Scalar::sine(x) * Scalar::cosine(x);
        assert!((y.d - Float::cos(0.6)).abs() < 1e-15);
    }
}
