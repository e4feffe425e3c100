use num_integer::Integer;

use crate::error::{domain, Result};
use crate::hyperbolic::Horoball;

/// The Ford circle at `p/q` in lowest terms: diameter `1/q²`.
pub fn ford_circle(p: i64, q: i64) -> Result<Horoball> {
    if q < 1 {
        return domain(format!("denominator {q} must be positive"));
    }
    if p.gcd(&q) != 1 {
        return domain(format!("{p}/{q} is not in lowest terms"));
    }
    let qf = q as f64;
    Horoball::at(p as f64 / qf, 1.0 / (qf * qf))
}

/// The standard horoball at `∞`: everything above the line through `i`.
pub fn ford_circle_at_infinity() -> Horoball {
    Horoball::at_infinity(1.0).expect("unit height is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{BoundaryPoint, HPoint};

    #[test]
    fn half_and_zero() {
        let h = ford_circle(1, 2).unwrap();
        assert_eq!(h.base(), BoundaryPoint::Finite(0.5));
        assert_eq!(h.size(), 0.25);
        let z = ford_circle(0, 1).unwrap();
        assert_eq!((z.base(), z.size()), (BoundaryPoint::Finite(0.0), 1.0));
        assert!(ford_circle(2, 4).is_err());
        assert!(ford_circle(1, 0).is_err());
    }

    #[test]
    fn cusp_at_infinity_touches_i() {
        let h = ford_circle_at_infinity();
        assert!(h.contains(HPoint::I, 0.0) && !h.contains_strictly(HPoint::I, 0.0));
    }

    #[test]
    fn ford_circles_are_disjoint_or_tangent() {
        let mut circles = Vec::new();
        for q in 1..=50i64 {
            for p in 0..=q {
                if p.gcd(&q) == 1 {
                    circles.push((p as f64 / q as f64, 0.5 / (q * q) as f64));
                }
            }
        }
        for (i, &(x1, r1)) in circles.iter().enumerate() {
            for &(x2, r2) in &circles[i + 1..] {
                // Squared centre distance minus squared radius sum is (x1−x2)² − 4 r1 r2 ≥ 0.
                let gap = (x1 - x2).powi(2) - 4.0 * r1 * r2;
                assert!(gap >= -1e-15, "overlap at {x1} and {x2}");
            }
        }
    }
}
