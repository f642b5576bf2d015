//! The transform parameter m = (a, b; c, d) ∈ SL(2, ℝ) with b ≠ 0.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted |ad - bc - 1|.
pub const DETERMINANT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SLMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl SLMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidMatrix("entries must be finite".into()));
        }
        if b == 0.0 {
            return Err(Error::InvalidMatrix("b must be nonzero".into()));
        }
        let det = a * d - b * c;
        if det != 1.0 && (det - 1.0).abs() > DETERMINANT_TOLERANCE {
            return Err(Error::InvalidMatrix(format!("determinant is {det}, expected 1")));
        }
        Ok(SLMatrix { a, b, c, d })
    }

    /// (cos φ, sin φ; -sin φ, cos φ).
    pub fn rotation(phi: f64) -> Result<Self> {
        let (s, c) = phi.sin_cos();
        SLMatrix::new(c, s, -s, c)
    }

    /// (0, 1; -1, 0): the chirp-free case.
    pub fn hankel() -> Self {
        SLMatrix { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// (d, -b; -c, a).
    pub fn inverse(&self) -> Self {
        SLMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// (d/b, a/b): the output-side and input-side chirp rates of the kernel.
    pub fn chirp_rates(&self) -> (f64, f64) {
        (self.d / self.b, self.a / self.b)
    }

    pub fn compose(&self, other: &SLMatrix) -> [[f64; 2]; 2] {
        [
            [self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d],
            [self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d],
        ]
    }
}

impl fmt::Display for SLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(SLMatrix::hankel().inverse(), SLMatrix::new(0.0, -1.0, 1.0, 0.0).unwrap());
        let phi = 0.7;
        let r = SLMatrix::rotation(phi).unwrap();
        assert_eq!(r.inverse(), SLMatrix { a: phi.cos(), b: -phi.sin(), c: phi.sin(), d: phi.cos() });
    }

    #[test]
    fn chirp_rate_examples() {
        assert_eq!(SLMatrix::hankel().chirp_rates(), (0.0, 0.0));
        let m = SLMatrix::new(1.0, 2.0, 0.5, 2.0).unwrap();
        assert_eq!(m.chirp_rates(), (1.0, 0.5));
        let phi = 1.1;
        let (db, ab) = SLMatrix::rotation(phi).unwrap().chirp_rates();
        assert!((db - 1.0 / phi.tan()).abs() < 1e-15 && (ab - 1.0 / phi.tan()).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(SLMatrix::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(SLMatrix::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SLMatrix::new(f64::NAN, 1.0, -1.0, 0.0).is_err());
        assert!(SLMatrix::rotation(0.0).is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_involutive_and_inverts(a in -3.0f64..3.0, b in 0.2f64..3.0, c in -3.0f64..3.0, neg in any::<bool>()) {
            let b = if neg { -b } else { b };
            let d = (1.0 + b * c) / a.max(0.1);
            let a = a.max(0.1);
            if let Ok(m) = SLMatrix::new(a, b, c, d) {
                prop_assert_eq!(m.inverse().inverse(), m);
                let p = m.compose(&m.inverse());
                prop_assert!((p[0][0] - 1.0).abs() < 1e-12 && p[0][1].abs() < 1e-12);
                prop_assert!(p[1][0].abs() < 1e-12 && (p[1][1] - 1.0).abs() < 1e-12);
                let (db, ab) = m.chirp_rates();
                let (idb, iab) = m.inverse().chirp_rates();
                prop_assert_eq!(idb, -ab);
                prop_assert_eq!(iab, -db);
            }
        }
    }
}
