use std::ops::Mul;

use num_complex::Complex64;

use super::{BoundaryPoint, HPoint, Point};
use crate::error::{domain, Result};

/// An orientation preserving isometry `z ↦ (az + b)/(cz + d)` of the upper
/// half-plane, stored with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds the map from arbitrary real coefficients with positive
    /// determinant, rescaling them so that the determinant is one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return domain(format!("determinant {det} is not positive"));
        }
        let k = det.sqrt().recip();
        Ok(MoebiusMap { a: a * k, b: b * k, c: c * k, d: d * k })
    }

    /// The parabolic translation `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        MoebiusMap { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// The dilation `z ↦ λz` for `λ > 0`.
    pub fn dilation(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0, 0.0, 1.0)
    }

    /// The inversion `z ↦ −1/z`.
    pub fn inversion() -> Self {
        MoebiusMap { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Derivative `1/(cx + d)^2` at a finite boundary point.
    pub fn derivative_at(&self, x: f64) -> f64 {
        let den = self.c * x + self.d;
        1.0 / (den * den)
    }

    pub fn apply_interior(&self, z: HPoint) -> HPoint {
        let num = Complex64::new(self.a * z.x + self.b, self.a * z.y);
        let den = Complex64::new(self.c * z.x + self.d, self.c * z.y);
        let w = num / den;
        // Im(gz) = Im(z)/|cz + d|^2 keeps the result strictly positive.
        HPoint { x: w.re, y: z.y / den.norm_sqr() }
    }

    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Interior(z) => Point::Interior(self.apply_interior(z)),
            Point::Boundary(b) => Point::Boundary(self.apply_boundary(b)),
        }
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, rhs: MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}
