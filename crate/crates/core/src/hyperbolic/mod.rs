//! Upper half-plane geometry: points, Möbius maps, geodesics, distances,
//! horoballs and shadows.
//!
//! Everything is computed in the half-plane model. Statements about the
//! disc are transported through [`cayley`], which sends the disc origin to
//! `i` and the boundary point `1` to `∞`.

mod horoball;
mod moebius;

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub use horoball::{entry_exit_points, penetration_depth, shadow, Horoball, Penetration, Shadow};
pub use moebius::MoebiusMap;

/// Tolerance used to decide that two geometric quantities coincide.
pub const GEOMETRY_EPS: f64 = 1e-12;

/// A point `x + iy` of the upper half-plane, `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    /// The base point `i`, image of the disc origin.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return domain(format!("({x}, {y}) is not in the upper half-plane"));
        }
        Ok(HPoint { x, y })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// A point of `ℝ ∪ {∞}`. Finite values are ordered as reals and `∞` is
/// larger than all of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }
}

impl PartialOrd for BoundaryPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.partial_cmp(b),
            (BoundaryPoint::Finite(_), BoundaryPoint::Infinity) => Some(Ordering::Less),
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(_)) => Some(Ordering::Greater),
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// Either an interior point or a boundary point; the argument type of
/// [`cross_ratio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Interior(HPoint),
    Boundary(BoundaryPoint),
}

impl Point {
    fn as_complex(self) -> Option<Complex64> {
        match self {
            Point::Interior(z) => Some(z.to_complex()),
            Point::Boundary(BoundaryPoint::Finite(x)) => Some(Complex64::new(x, 0.0)),
            Point::Boundary(BoundaryPoint::Infinity) => None,
        }
    }
}

impl From<HPoint> for Point {
    fn from(z: HPoint) -> Self {
        Point::Interior(z)
    }
}

impl From<BoundaryPoint> for Point {
    fn from(p: BoundaryPoint) -> Self {
        Point::Boundary(p)
    }
}

/// An oriented geodesic from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    start: BoundaryPoint,
    end: BoundaryPoint,
}

impl Geodesic {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Result<Self> {
        let same = match (start, end) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a == b,
            _ => false,
        };
        if same {
            return domain("geodesic endpoints coincide");
        }
        if let (Some(a), Some(b)) = (start.finite(), end.finite()) {
            if !a.is_finite() || !b.is_finite() {
                return domain("geodesic endpoints must be real or the symbol ∞");
            }
        }
        Ok(Geodesic { start, end })
    }

    /// Shorthand for a geodesic with two finite endpoints.
    pub fn between(start: f64, end: f64) -> Result<Self> {
        Self::new(BoundaryPoint::Finite(start), BoundaryPoint::Finite(end))
    }

    pub fn start(&self) -> BoundaryPoint {
        self.start
    }

    pub fn end(&self) -> BoundaryPoint {
        self.end
    }

    pub fn reversed(&self) -> Self {
        Geodesic { start: self.end, end: self.start }
    }

    pub fn is_vertical(&self) -> bool {
        self.start.is_infinite() || self.end.is_infinite()
    }

    /// An isometry carrying this geodesic onto the imaginary axis, with
    /// `start ↦ 0` and `end ↦ ∞`.
    pub fn straightening_map(&self) -> MoebiusMap {
        match (self.start, self.end) {
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(e)) => {
                MoebiusMap { a: 0.0, b: -1.0, c: 1.0, d: -e }
            }
            (BoundaryPoint::Finite(s), BoundaryPoint::Infinity) => MoebiusMap::translation(-s),
            (BoundaryPoint::Finite(s), BoundaryPoint::Finite(e)) => {
                let m =
                    if s < e { MoebiusMap::new(1.0, -s, -1.0, e) } else { MoebiusMap::new(1.0, -s, 1.0, -e) };
                m.expect("distinct endpoints give a positive determinant")
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!(),
        }
    }

    /// Whether `z` lies on the trace of the geodesic, up to `tol`.
    pub fn contains(&self, z: HPoint, tol: f64) -> bool {
        let w = self.straightening_map().apply_interior(z);
        w.x.abs() <= tol * w.y.max(1.0)
    }
}

/// The cross-ratio `[x, y, z, t] = (x−y)(z−t) / ((y−z)(t−x))`.
///
/// A single argument may be `∞`; the two factors containing it cancel.
/// The value is complex in general and real when all four points lie on a
/// common geodesic or on the boundary.
pub fn cross_ratio(x: Point, y: Point, z: Point, t: Point) -> Result<Complex64> {
    let pts = [x, y, z, t];
    let coords: Vec<Option<Complex64>> = pts.iter().map(|p| p.as_complex()).collect();
    let infinite = coords.iter().filter(|c| c.is_none()).count();
    if infinite > 1 {
        return domain("cross-ratio with more than one point at infinity");
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if let (Some(a), Some(b)) = (coords[i], coords[j]) {
                if (a - b).norm() == 0.0 {
                    return domain("cross-ratio of coincident points");
                }
            }
        }
    }
    let c = |k: usize| coords[k].unwrap_or_default();
    let (x, y, z, t) = (c(0), c(1), c(2), c(3));
    let value = match coords.iter().position(|c| c.is_none()) {
        None => (x - y) * (z - t) / ((y - z) * (t - x)),
        Some(0) => -(z - t) / (y - z),
        Some(1) => -(z - t) / (t - x),
        Some(2) => -(x - y) / (t - x),
        Some(_) => -(x - y) / (y - z),
    };
    Ok(value)
}

/// Hyperbolic distance from the closed form
/// `cosh d = 1 + |z − w|² / (2 Im z Im w)`, evaluated as
/// `2 asinh(|z − w| / (2 √(Im z Im w)))` to keep precision for close points.
pub fn hyp_distance(z: HPoint, w: HPoint) -> f64 {
    let chord = (z.to_complex() - w.to_complex()).norm();
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

/// The geodesic through `z` and `w`, oriented so that travelling from `z`
/// to `w` runs from its start to its end.
pub fn geodesic_through(z: HPoint, w: HPoint) -> Result<Geodesic> {
    if z == w {
        return domain("geodesic through a single point is not unique");
    }
    if z.x == w.x {
        let foot = BoundaryPoint::Finite(z.x);
        return if z.y < w.y {
            Geodesic::new(foot, BoundaryPoint::Infinity)
        } else {
            Geodesic::new(BoundaryPoint::Infinity, foot)
        };
    }
    let center = (w.x * w.x + w.y * w.y - z.x * z.x - z.y * z.y) / (2.0 * (w.x - z.x));
    let radius = (z.x - center).hypot(z.y);
    if z.x < w.x {
        Geodesic::between(center - radius, center + radius)
    } else {
        Geodesic::between(center + radius, center - radius)
    }
}

/// Distance as the logarithm of the cross-ratio `[w, ξ, z, η]`, where
/// `ξ → η` is the geodesic through `z` and `w` oriented from `z` to `w`.
pub fn distance_via_crossratio(z: HPoint, w: HPoint) -> Result<f64> {
    let g = geodesic_through(z, w)?;
    let cr = cross_ratio(w.into(), g.start().into(), z.into(), g.end().into())?;
    Ok(cr.re.ln())
}

/// The circle centre `c` of the geodesic from `i` to `n − 1/2` and the
/// distance `d(i, i + 2c)`, computed as
/// `log((1 + (n − 1/2)²) / (1 + (2c − (n − 1/2))²))`.
pub fn lemma_geodesic_constants(n: u64) -> Result<(f64, f64)> {
    if n < 2 {
        return domain(format!("n = {n} must be at least 2"));
    }
    let nf = n as f64;
    let c = (4.0 * nf * nf - 4.0 * nf - 3.0) / (4.0 * (2.0 * nf - 1.0));
    let h = nf - 0.5;
    let offset = 2.0 * c - h;
    let dist = ((1.0 + h * h) / (1.0 + offset * offset)).ln();
    Ok((c, dist))
}

/// Cayley transform `z ↦ i(1 + z)/(1 − z)` from the closed unit disc to the
/// closed upper half-plane (`0 ↦ i`, `1 ↦ ∞`).
pub fn cayley(z: Complex64) -> Result<Point> {
    let r = z.norm();
    if r > 1.0 + GEOMETRY_EPS {
        return domain(format!("{z} lies outside the closed unit disc"));
    }
    let one = Complex64::new(1.0, 0.0);
    if (one - z).norm() <= GEOMETRY_EPS {
        return Ok(Point::Boundary(BoundaryPoint::Infinity));
    }
    let w = Complex64::i() * (one + z) / (one - z);
    if r >= 1.0 - GEOMETRY_EPS {
        Ok(Point::Boundary(BoundaryPoint::Finite(w.re)))
    } else {
        Ok(Point::Interior(HPoint { x: w.re, y: w.im.max(f64::MIN_POSITIVE) }))
    }
}

/// Inverse Cayley transform `w ↦ (w − i)/(w + i)`.
pub fn inverse_cayley(p: Point) -> Complex64 {
    match p.as_complex() {
        None => Complex64::new(1.0, 0.0),
        Some(w) => (w - Complex64::i()) / (w + Complex64::i()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn cross_ratio_on_imaginary_axis() {
        let v = cross_ratio(
            hp(0.0, 2.0).into(),
            BoundaryPoint::Finite(0.0).into(),
            hp(0.0, 1.0).into(),
            BoundaryPoint::Infinity.into(),
        )
        .unwrap();
        assert!((v.re - 2.0).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn cross_ratio_limit_at_infinity() {
        let b = |x| Point::Boundary(BoundaryPoint::Finite(x));
        let v = cross_ratio(b(3.0), b(0.0), b(1.0), BoundaryPoint::Infinity.into()).unwrap();
        assert_eq!(v.re, 3.0);
    }

    #[test]
    fn cross_ratio_rejects_degenerate() {
        let b = |x| Point::Boundary(BoundaryPoint::Finite(x));
        assert!(cross_ratio(b(1.0), b(1.0), b(2.0), b(3.0)).is_err());
        let inf = Point::Boundary(BoundaryPoint::Infinity);
        assert!(cross_ratio(inf, b(1.0), inf, b(3.0)).is_err());
    }

    #[test]
    fn vertical_distance() {
        assert!((hyp_distance(HPoint::I, hp(0.0, 2.0)) - 2f64.ln()).abs() < 1e-15);
        assert!((distance_via_crossratio(HPoint::I, hp(0.0, 2.0)).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn horizontal_distance_matches_arccosh() {
        let d = hyp_distance(HPoint::I, hp(1.0, 1.0));
        assert!((d - 1.5f64.acosh()).abs() < 1e-14);
        assert!((d - 0.962_424).abs() < 1e-6);
        let d2 = distance_via_crossratio(HPoint::I, hp(1.0, 1.0)).unwrap();
        assert!((d - d2).abs() < 1e-12);
    }

    #[test]
    fn offset_point_distance() {
        let w = hp(5.0 / 6.0, 1.0);
        assert!((hyp_distance(HPoint::I, w) - (9.0f64 / 4.0).ln()).abs() < 1e-14);
        assert!((distance_via_crossratio(HPoint::I, w).unwrap() - (9.0f64 / 4.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn geodesic_through_vertical_and_reversed() {
        let g = geodesic_through(HPoint::I, hp(0.0, 2.0)).unwrap();
        assert_eq!(g.start(), BoundaryPoint::Finite(0.0));
        assert_eq!(g.end(), BoundaryPoint::Infinity);
        let r = geodesic_through(hp(0.0, 2.0), HPoint::I).unwrap();
        assert_eq!(r, g.reversed());
        assert!(geodesic_through(HPoint::I, HPoint::I).is_err());
    }

    #[test]
    fn geodesic_through_semicircle() {
        let g = geodesic_through(HPoint::I, hp(5.0 / 6.0, 1.0)).unwrap();
        let c: f64 = 5.0 / 12.0;
        let r = (1.0 + c * c).sqrt();
        assert!((g.start().finite().unwrap() - (c - r)).abs() < 1e-14);
        assert!((g.end().finite().unwrap() - (c + r)).abs() < 1e-14);
        assert!(g.contains(HPoint::I, 1e-12));
    }

    #[test]
    fn geodesic_constants_at_two() {
        let (c, d) = lemma_geodesic_constants(2).unwrap();
        assert!((c - 5.0 / 12.0).abs() < 1e-15);
        assert!((d - (9.0f64 / 4.0).ln()).abs() < 1e-15);
        let off = 2.0 * c - 1.5;
        assert!((off + 2.0 / 3.0).abs() < 1e-15);
        let v = 1.0 + off * off;
        assert!((1.0..=5.0).contains(&v) && (v - 13.0 / 9.0).abs() < 1e-15);
        // The closed form agrees with the metric itself.
        assert!((hyp_distance(HPoint::I, hp(2.0 * c, 1.0)) - d).abs() < 1e-12);
        assert!(lemma_geodesic_constants(1).is_err());
    }

    #[test]
    fn distance_sandwich_at_ten() {
        let (_, d) = lemma_geodesic_constants(10).unwrap();
        assert!(d <= 100f64.ln() && d >= 100f64.ln() - 10f64.ln());
    }

    #[test]
    fn cayley_fixed_values() {
        assert_eq!(cayley(Complex64::new(0.0, 0.0)).unwrap(), Point::Interior(HPoint::I));
        assert_eq!(cayley(Complex64::new(1.0, 0.0)).unwrap(), Point::Boundary(BoundaryPoint::Infinity));
        let back = cayley(inverse_cayley(HPoint::I.into())).unwrap();
        assert_eq!(back, Point::Interior(HPoint::I));
        assert!(cayley(Complex64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn boundary_order_puts_infinity_last() {
        assert!(BoundaryPoint::Finite(1e300) < BoundaryPoint::Infinity);
        assert!(BoundaryPoint::Finite(-1.0) < BoundaryPoint::Finite(0.0));
    }
}
