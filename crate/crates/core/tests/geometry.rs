use cusplab::cusp::ford_circle;
use cusplab::hyperbolic::{
    cayley, cross_ratio, distance_via_crossratio, entry_exit_points, hyp_distance, inverse_cayley,
    lemma_geodesic_constants, penetration_depth, BoundaryPoint, Geodesic, HPoint, MoebiusMap, Point,
};
use num_integer::Integer;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn point() -> impl Strategy<Value = HPoint> {
    (-5.0..5.0f64, 0.05..5.0f64).prop_map(|(x, y)| HPoint::new(x, y).unwrap())
}

/// `SL(2, ℝ)` elements with entries of moderate size.
fn isometry() -> impl Strategy<Value = MoebiusMap> {
    (0.3..3.0f64, any::<bool>(), -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, neg, b, c)| {
        let a = if neg { -a } else { a };
        MoebiusMap::new(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

/// Integer matrices of determinant one, as products of `T^k` and `S`.
fn unimodular() -> impl Strategy<Value = MoebiusMap> {
    prop::collection::vec(-3i32..=3, 1..5).prop_map(|ks| {
        ks.into_iter().fold(MoebiusMap::IDENTITY, |m, k| {
            m * MoebiusMap::translation(k as f64) * MoebiusMap::inversion()
        })
    })
}

/// Reduced fractions `p/q` in `[0, 1)`.
fn reduced() -> impl Strategy<Value = (i64, i64)> {
    (1i64..12).prop_flat_map(|q| (0..q, Just(q))).prop_map(|(p, q)| {
        let g = p.gcd(&q);
        (p / g, q / g)
    })
}

fn image(m: &MoebiusMap, g: &Geodesic) -> Geodesic {
    Geodesic::new(m.apply_boundary(g.start()), m.apply_boundary(g.end())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn distance_is_isometry_invariant(g in isometry(), z in point(), w in point()) {
        let before = hyp_distance(z, w);
        let after = hyp_distance(g.apply_interior(z), g.apply_interior(w));
        prop_assert!(close(before, after, 1e-9), "{before} vs {after}");
    }

    #[test]
    fn cross_ratio_is_isometry_invariant(
        g in isometry(), p in point(), q in point(), r in point(), s in point()
    ) {
        let pts = [p, q, r, s].map(Point::Interior);
        let moved = pts.map(|x| g.apply(x));
        let a = cross_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
        let b = cross_ratio(moved[0], moved[1], moved[2], moved[3]).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn boundary_cross_ratio_is_real_and_invariant(
        g in isometry(), xs in prop::array::uniform4(-10.0..10.0f64)
    ) {
        let mut xs = xs;
        xs.sort_by(f64::total_cmp);
        prop_assume!(xs.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let pts = xs.map(|x| Point::Boundary(BoundaryPoint::Finite(x)));
        let a = cross_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
        let moved = pts.map(|x| g.apply(x));
        let b = cross_ratio(moved[0], moved[1], moved[2], moved[3]).unwrap();
        prop_assert_eq!(a.im, 0.0);
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn distance_routes_agree(z in point(), w in point()) {
        prop_assume!(hyp_distance(z, w) > 1e-6);
        let direct = hyp_distance(z, w);
        let via = distance_via_crossratio(z, w).unwrap();
        prop_assert!(close(direct, via, 1e-9), "{direct} vs {via}");
    }

    #[test]
    fn cayley_round_trip(z in point()) {
        let disc = inverse_cayley(Point::Interior(z));
        let Point::Interior(back) = cayley(disc).unwrap() else {
            panic!("interior point left the half-plane");
        };
        prop_assert!((back.x - z.x).abs() < 1e-9 && (back.y - z.y).abs() < 1e-9);
    }

    #[test]
    fn cayley_origin_distance(z in point()) {
        // In the disc model d(0, u) = 2 atanh |u|.
        let u = inverse_cayley(Point::Interior(z)).norm();
        let i = HPoint::new(0.0, 1.0).unwrap();
        prop_assert!(close(2.0 * u.atanh(), hyp_distance(i, z), 1e-9));
    }

    #[test]
    fn depth_invariant_under_integer_maps(
        m in unimodular(), (p, q) in reduced(), xi in 0.01..0.99f64
    ) {
        let h = ford_circle(p, q).unwrap();
        let g = Geodesic::between(-1.0 / xi, xi).unwrap();
        let moved = image(&m, &g);
        let before = penetration_depth(&h, &g).unwrap().formal();
        let after = penetration_depth(&h.image(&m), &moved).unwrap().formal();
        prop_assert!(close(before, after, 1e-9), "{before} vs {after}");
    }

    #[test]
    fn chord_inside_a_ford_circle(q in 2i64..30, xi_off in -0.4..0.4f64) {
        let h = ford_circle(1, q).unwrap();
        let base = 1.0 / q as f64;
        let xi = base + xi_off / (q * q) as f64;
        let g = Geodesic::between(-1.0 / xi, xi).unwrap();
        if let Some(depth) = penetration_depth(&h, &g).unwrap().depth() {
            let (a, b) = entry_exit_points(&h, &g).unwrap();
            let chord = hyp_distance(a, b);
            prop_assert!(close(chord, 2.0 * depth.exp().acosh(), 1e-9));
            prop_assert!(chord >= 2.0 * depth - 1e-9);
        }
    }
}

#[test]
fn distance_sandwich_full_range() {
    let ten = 10f64.ln();
    for n in 2..=10_000u64 {
        let (_, d) = lemma_geodesic_constants(n).unwrap();
        let log_n2 = 2.0 * (n as f64).ln();
        assert!(d <= log_n2 && d >= log_n2 - ten, "n = {n}: d = {d}");
    }
}

#[test]
fn ford_circles_disjoint_or_tangent() {
    let mut circles = Vec::new();
    for q in 1..=50i64 {
        for p in 0..=q {
            if p.gcd(&q) == 1 {
                circles.push((p as f64 / q as f64, 0.5 / (q * q) as f64));
            }
        }
    }
    for (k, &(x1, r1)) in circles.iter().enumerate() {
        for &(x2, r2) in &circles[k + 1..] {
            let centres = (x1 - x2).hypot(r1 - r2);
            assert!(centres >= (r1 + r2) * (1.0 - 1e-12), "{x1} and {x2} overlap");
        }
    }
}
