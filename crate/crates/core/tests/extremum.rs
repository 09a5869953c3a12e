use std::f64::consts::PI;

use equisplit::optimizer::{sector_extremum_solve, segment_extremum_solve};
use proptest::prelude::*;

const AREAS: [f64; 4] = [
    0.216_506_350_946_109_66,
    0.144_337_567_297_406_44,
    PI / 6.0,
    1.0,
];

#[test]
fn sector_examples() {
    for a in AREAS {
        let s = sector_extremum_solve(a).unwrap();
        let r = (6.0 * a / PI).sqrt();
        for v in [s.a, s.b, s.r] {
            assert!((v - r).abs() < 1e-10, "A = {a}: {v} vs {r}");
        }
        assert!((s.length - (2.0 * a * PI / 3.0).sqrt()).abs() < 1e-10);
        // The multiplier is minus the curvature.
        assert!((s.lambda + 1.0 / r).abs() < 1e-8);
    }
}

#[test]
fn segment_examples() {
    for a in AREAS {
        let s = segment_extremum_solve(a).unwrap();
        let r = (2.0 * a / PI).sqrt();
        assert!(
            (s.r - r).abs() < 1e-10 && (s.d - r).abs() < 1e-10,
            "A = {a}"
        );
        assert!((s.length - PI * r).abs() < 1e-10);
        assert!((s.lambda + 1.0 / r).abs() < 1e-8);
    }
}

#[test]
fn frozen_areas_are_the_triangle_fractions() {
    assert!((AREAS[0] - 3f64.sqrt() / 8.0).abs() < 1e-16);
    assert!((AREAS[1] - 3f64.sqrt() / 12.0).abs() < 1e-16);
}

#[test]
fn invalid_areas() {
    for a in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(sector_extremum_solve(a).is_err());
        assert!(segment_extremum_solve(a).is_err());
    }
}

proptest! {
    #[test]
    fn solutions_scale_with_sqrt_area(a in 1e-3f64..50.0) {
        let s = sector_extremum_solve(a).unwrap();
        let g = segment_extremum_solve(a).unwrap();
        prop_assert!((s.r * s.r - 6.0 * a / PI).abs() < 1e-9 * a.max(1.0));
        prop_assert!((g.r * g.r - 2.0 * a / PI).abs() < 1e-9 * a.max(1.0));
        prop_assert!(s.residual < 1e-12 * a.max(1.0) && g.residual < 1e-12 * a.max(1.0));
    }
}
