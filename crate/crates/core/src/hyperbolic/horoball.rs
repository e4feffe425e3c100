use num_complex::Complex64;

use super::{cayley, BoundaryPoint, Geodesic, HPoint, MoebiusMap, Point, GEOMETRY_EPS};
use crate::error::{domain, Result};

/// A horoball: a Euclidean disc tangent to `ℝ` at a finite base point, or
/// the half-plane above a horizontal line when the base is `∞`.
///
/// `size` is the Euclidean diameter for a finite base and the height of the
/// bounding line for the base `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horoball {
    base: BoundaryPoint,
    size: f64,
}

impl Horoball {
    pub fn new(base: BoundaryPoint, size: f64) -> Result<Self> {
        if !(size > 0.0) || !size.is_finite() {
            return domain(format!("horoball size {size} must be positive"));
        }
        Ok(Horoball { base, size })
    }

    pub fn at(base: f64, diameter: f64) -> Result<Self> {
        Self::new(BoundaryPoint::Finite(base), diameter)
    }

    pub fn at_infinity(height: f64) -> Result<Self> {
        Self::new(BoundaryPoint::Infinity, height)
    }

    pub fn base(&self) -> BoundaryPoint {
        self.base
    }

    pub fn size(&self) -> f64 {
        self.size
    }

    /// The Euclidean apex of a horoball with finite base.
    pub fn top(&self) -> Option<HPoint> {
        self.base.finite().map(|x| HPoint { x, y: self.size })
    }

    /// Membership in the closed horoball, with relative slack `tol`.
    pub fn contains(&self, z: HPoint, tol: f64) -> bool {
        match self.base {
            BoundaryPoint::Infinity => z.y >= self.size * (1.0 - tol),
            BoundaryPoint::Finite(x0) => {
                let dx = z.x - x0;
                dx * dx + z.y * z.y <= self.size * z.y * (1.0 + tol)
            }
        }
    }

    /// Membership in the open horoball, shrunk by relative slack `tol`.
    pub fn contains_strictly(&self, z: HPoint, tol: f64) -> bool {
        match self.base {
            BoundaryPoint::Infinity => z.y > self.size * (1.0 + tol),
            BoundaryPoint::Finite(x0) => {
                let dx = z.x - x0;
                dx * dx + z.y * z.y < self.size * z.y * (1.0 - tol)
            }
        }
    }

    /// Image of the horoball under an isometry.
    pub fn image(&self, m: &MoebiusMap) -> Horoball {
        let base = m.apply_boundary(self.base);
        let size = match (self.base, base) {
            (BoundaryPoint::Finite(x0), BoundaryPoint::Finite(_)) => {
                let den = m.c * x0 + m.d;
                self.size / (den * den)
            }
            (BoundaryPoint::Finite(_), BoundaryPoint::Infinity) => 1.0 / (m.c * m.c * self.size),
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(_)) => 1.0 / (m.c * m.c * self.size),
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => self.size * m.a * m.a,
        };
        Horoball { base, size }
    }

    /// An isometry sending the base point to `∞`, together with the height
    /// of the image horoball.
    fn normalizer(&self) -> (MoebiusMap, f64) {
        match self.base {
            BoundaryPoint::Infinity => (MoebiusMap::IDENTITY, self.size),
            BoundaryPoint::Finite(x0) => (MoebiusMap { a: 0.0, b: -1.0, c: 1.0, d: -x0 }, 1.0 / self.size),
        }
    }
}

/// How a geodesic meets a horoball.
///
/// The formal depth `log(max height of the geodesic / height of the
/// horoball)` is computed after moving the base point to `∞`. It is the
/// penetration depth when positive; zero is tangency and negative values
/// mean the geodesic misses the horoball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Penetration {
    Enters(f64),
    Tangent,
    Misses(f64),
}

impl Penetration {
    fn classify(formal: f64) -> Self {
        if formal.abs() <= GEOMETRY_EPS {
            Penetration::Tangent
        } else if formal > 0.0 {
            Penetration::Enters(formal)
        } else {
            Penetration::Misses(formal)
        }
    }

    pub fn formal(&self) -> f64 {
        match *self {
            Penetration::Enters(d) | Penetration::Misses(d) => d,
            Penetration::Tangent => 0.0,
        }
    }

    pub fn depth(&self) -> Option<f64> {
        match *self {
            Penetration::Enters(d) => Some(d),
            _ => None,
        }
    }

    pub fn enters(&self) -> bool {
        matches!(self, Penetration::Enters(_))
    }
}

/// Depth of the excursion of `g` into `h`: the largest distance from a
/// point of the geodesic inside `h` to the boundary of `h`.
///
/// For a finite base `x₀` with diameter `D` and endpoints `α`, `β` this is
/// `log(D |α − β| / (2 |α − x₀| |β − x₀|))`; for the base `∞` at height `h`
/// it is `log(|α − β| / (2h))`.
pub fn penetration_depth(h: &Horoball, g: &Geodesic) -> Result<Penetration> {
    let ends_in_cusp = || domain("geodesic ends at the base point of the horoball");
    let formal = match h.base {
        BoundaryPoint::Infinity => match (g.start().finite(), g.end().finite()) {
            (Some(a), Some(b)) => ((a - b).abs() / (2.0 * h.size)).ln(),
            _ => return ends_in_cusp(),
        },
        BoundaryPoint::Finite(x0) => match (g.start().finite(), g.end().finite()) {
            (Some(a), Some(b)) => {
                if a == x0 || b == x0 {
                    return ends_in_cusp();
                }
                (h.size * (a - b).abs() / (2.0 * (a - x0).abs() * (b - x0).abs())).ln()
            }
            (Some(a), None) | (None, Some(a)) => {
                if a == x0 {
                    return ends_in_cusp();
                }
                (h.size / (2.0 * (a - x0).abs())).ln()
            }
            (None, None) => unreachable!("geodesic endpoints are distinct"),
        },
    };
    Ok(Penetration::classify(formal))
}

/// The points where `g` enters and leaves `h`, in the order met along `g`.
pub fn entry_exit_points(h: &Horoball, g: &Geodesic) -> Result<(HPoint, HPoint)> {
    let pen = penetration_depth(h, g)?;
    if !pen.enters() {
        return domain("geodesic does not enter the open horoball");
    }
    let (t, height) = h.normalizer();
    let a = t.apply_boundary(g.start()).finite().expect("start is not the base point");
    let b = t.apply_boundary(g.end()).finite().expect("end is not the base point");
    let mid = 0.5 * (a + b);
    let radius = 0.5 * (a - b).abs();
    let half = ((radius - height) * (radius + height)).sqrt();
    let (first, second) = if a < b { (mid - half, mid + half) } else { (mid + half, mid - half) };
    let back = t.inverse();
    Ok((
        back.apply_interior(HPoint { x: first, y: height }),
        back.apply_interior(HPoint { x: second, y: height }),
    ))
}

/// An arc of `ℝ ∪ {∞}` running in the positive direction from `start` to
/// `end`, passing through `∞` when `start > end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shadow {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

impl Shadow {
    pub fn contains_infinity(&self) -> bool {
        match (self.start.finite(), self.end.finite()) {
            (Some(s), Some(e)) => s > e,
            _ => true,
        }
    }

    /// Euclidean length, infinite when the arc passes through `∞`.
    pub fn length(&self) -> f64 {
        match (self.start.finite(), self.end.finite()) {
            (Some(s), Some(e)) if s <= e => e - s,
            _ => f64::INFINITY,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match (self.start.finite(), self.end.finite()) {
            (Some(s), Some(e)) if s <= e => (s..=e).contains(&x),
            (Some(s), Some(e)) => x >= s || x <= e,
            (Some(s), None) => x >= s,
            (None, Some(e)) => x <= e,
            (None, None) => true,
        }
    }
}

fn circumcircle(p: [Complex64; 3]) -> (Complex64, f64) {
    let [a, b, c] = p;
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    let center = Complex64::new(ux, uy);
    (center, (a - center).norm())
}

/// The set of boundary points `ξ` such that the geodesic ray from
/// `viewpoint` to `ξ` meets the closed horoball `h`.
///
/// The viewpoint may lie on the horocycle but not strictly inside it.
pub fn shadow(h: &Horoball, viewpoint: HPoint) -> Result<Shadow> {
    if h.contains_strictly(viewpoint, 1e-9) {
        return domain("viewpoint lies inside the horoball");
    }
    // Move the viewpoint to i, then to the disc origin, where rays are radii.
    let to_i = MoebiusMap::new(1.0, -viewpoint.x, 0.0, viewpoint.y)?;
    let hb = h.image(&to_i);
    let pts: [Complex64; 3] = match hb.base {
        BoundaryPoint::Finite(x0) => {
            let d = hb.size;
            [Complex64::new(x0, 0.0), Complex64::new(x0, d), Complex64::new(x0 + 0.5 * d, 0.5 * d)]
        }
        BoundaryPoint::Infinity => {
            let y = hb.size;
            [Complex64::new(0.0, y), Complex64::new(1.0, y), Complex64::new(-1.0, y)]
        }
    };
    let disc = pts.map(to_disc);
    let (center, radius) = circumcircle(disc);
    let dist = center.norm();
    let half = (radius / dist).min(1.0).asin();
    let theta = center.arg();
    let back = to_i.inverse();
    let end_at = |angle: f64| -> Result<BoundaryPoint> {
        let p = cayley(Complex64::from_polar(1.0, angle))?;
        let b = match p {
            Point::Boundary(b) => b,
            Point::Interior(z) => BoundaryPoint::Finite(z.x),
        };
        Ok(back.apply_boundary(b))
    };
    Ok(Shadow { start: end_at(theta - half)?, end: end_at(theta + half)? })
}

fn to_disc(w: Complex64) -> Complex64 {
    (w - Complex64::i()) / (w + Complex64::i())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::hyp_distance;

    fn ford0() -> Horoball {
        Horoball::at(0.0, 1.0).unwrap()
    }

    #[test]
    fn tangent_at_i() {
        let g = Geodesic::between(-1.0, 1.0).unwrap();
        assert_eq!(penetration_depth(&ford0(), &g).unwrap(), Penetration::Tangent);
        assert!(entry_exit_points(&ford0(), &g).is_err());
    }

    #[test]
    fn depth_log_two_matches_inverted_frame() {
        let g = Geodesic::between(-0.5, 0.5).unwrap();
        let d = penetration_depth(&ford0(), &g).unwrap().depth().unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-15);
        // Oracle: z ↦ −1/z sends the ball to Im ≥ 1 and the geodesic to (2, −2).
        let inv = MoebiusMap::inversion();
        let a = inv.apply_boundary(g.start()).finite().unwrap();
        let b = inv.apply_boundary(g.end()).finite().unwrap();
        let oracle = ((a - b).abs() / 2.0 / 1.0).ln();
        assert!((d - oracle).abs() < 1e-15);
    }

    #[test]
    fn disjoint_configuration_misses() {
        let g = Geodesic::between(-2.0, 2.0).unwrap();
        let p = penetration_depth(&ford0(), &g).unwrap();
        assert!(matches!(p, Penetration::Misses(d) if d < 0.0));
    }

    #[test]
    fn endpoint_at_base_is_an_error() {
        let g = Geodesic::between(0.0, 2.0).unwrap();
        assert!(penetration_depth(&ford0(), &g).is_err());
        let v = Geodesic::new(BoundaryPoint::Finite(1.0), BoundaryPoint::Infinity).unwrap();
        assert!(penetration_depth(&Horoball::at_infinity(1.0).unwrap(), &v).is_err());
    }

    #[test]
    fn entry_exit_symmetric_and_chord() {
        let g = Geodesic::between(-0.5, 0.5).unwrap();
        let (p, q) = entry_exit_points(&ford0(), &g).unwrap();
        assert!((p.x + q.x).abs() < 1e-14 && (p.y - q.y).abs() < 1e-14);
        assert!(p.x < 0.0, "oriented from −1/2 to 1/2");
        for z in [p, q] {
            assert!(g.contains(z, 1e-12));
            assert!((z.x * z.x + z.y * z.y - z.y).abs() < 1e-14);
        }
        // The chord through an excursion of depth d has length 2 arccosh(e^d).
        let chord = hyp_distance(p, q);
        assert!((chord - 2.0 * 2f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn vertical_geodesic_excursion() {
        let g = Geodesic::new(BoundaryPoint::Finite(0.2), BoundaryPoint::Infinity).unwrap();
        let d = penetration_depth(&ford0(), &g).unwrap().depth().unwrap();
        assert!((d - (1.0f64 / 0.4).ln()).abs() < 1e-14);
        let (p, q) = entry_exit_points(&ford0(), &g).unwrap();
        assert!(p.y < q.y && (p.x - 0.2).abs() < 1e-14);
    }

    #[test]
    fn shadow_of_ford_circle_at_zero() {
        let s = shadow(&ford0(), HPoint::I).unwrap();
        assert!((s.start.finite().unwrap() + 1.0).abs() < 1e-12);
        assert!((s.end.finite().unwrap() - 1.0).abs() < 1e-12);
        assert!((s.length() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn shadow_of_ford_circle_at_half() {
        let h = Horoball::at(0.5, 0.25).unwrap();
        let s = shadow(&h, HPoint::I).unwrap();
        assert!(s.contains(0.5));
        let top = h.top().unwrap();
        let ratio = s.length() / (-hyp_distance(HPoint::I, top)).exp();
        assert!(ratio > 0.5 && ratio < 4.0, "ratio {ratio}");
    }

    #[test]
    fn shadow_shrinks_with_diameter() {
        let mut prev = f64::INFINITY;
        for k in 1..8 {
            let d = 0.5f64.powi(k);
            let s = shadow(&Horoball::at(0.3, d).unwrap(), HPoint::I).unwrap();
            assert!(s.length() < prev);
            prev = s.length();
        }
    }

    #[test]
    fn shadow_rejects_interior_viewpoint() {
        assert!(shadow(&ford0(), HPoint::new(0.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn image_of_ford_circles_under_integer_map() {
        // z ↦ z/(z + 1) sends ∞ ↦ 1 and the line Im = 1 to the Ford circle at 1/1.
        let m = MoebiusMap::new(1.0, 0.0, 1.0, 1.0).unwrap();
        let img = Horoball::at_infinity(1.0).unwrap().image(&m);
        assert_eq!(img.base(), BoundaryPoint::Finite(1.0));
        assert!((img.size() - 1.0).abs() < 1e-15);
        let img2 = Horoball::at(0.0, 1.0).unwrap().image(&m);
        assert!((img2.base().finite().unwrap() - 0.0).abs() < 1e-15 && (img2.size() - 1.0).abs() < 1e-15);
    }
}
