use std::f64::consts::PI;

use equisplit::closed_form::{
    annulus_family, asymptotic_bracket, circle_isoperimetric_length, conjecture_table,
    exact_infimum, lower_bound, polygon_area, sector_minimum, simplex_distance_sum, BoundsReport,
    SimplexSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn lower_bound_is_monotone_in_m(m in 1usize..500, n in 3usize..30) {
        prop_assert!(lower_bound(m + 1, n).unwrap() >= lower_bound(m, n).unwrap());
        prop_assert!(lower_bound(m, n).unwrap() >= 0.0);
    }

    #[test]
    fn bracket_is_ordered(n in 3usize..200) {
        let b = asymptotic_bracket(n).unwrap();
        prop_assert!(b.lower_const < b.upper_const);
        // The bound divided by sqrt(m) approaches the lower constant.
        let m = 1_000_000usize;
        let ratio = lower_bound(m, n).unwrap() / (m as f64).sqrt();
        prop_assert!(ratio <= b.lower_const && b.lower_const - ratio < n as f64 / 1000.0);
    }

    #[test]
    fn reports_are_consistent(m in 1usize..12, n in 3usize..12) {
        prop_assert!(BoundsReport::new(m, n).unwrap().is_consistent());
    }

    #[test]
    fn sector_beats_circle(a in 1e-4f64..10.0) {
        // A corner of angle pi/3 holds a sixth of a disc of area 6A.
        let s = sector_minimum(a).unwrap();
        prop_assert!((s.length - circle_isoperimetric_length(a).unwrap() / 6f64.sqrt()).abs() < 1e-12 * s.length.max(1.0));
        prop_assert!((PI / 6.0 * s.radius * s.radius - a).abs() < 1e-12 * a.max(1.0));
    }
}

#[test]
fn exact_values_exceed_bounds() {
    for (m, n) in [(2, 3), (3, 3)] {
        assert!(exact_infimum(m, n).unwrap().unwrap() > lower_bound(m, n).unwrap());
    }
    for c in conjecture_table(3..=20) {
        assert!(c.value >= lower_bound(c.m, c.n).unwrap(), "{c:?}");
        assert!(!c.proven);
    }
}

#[test]
fn annulus_square_value() {
    // Frozen from a high-precision evaluation of the family formula at n = 4.
    let v = annulus_family(4).unwrap();
    assert!((v - 2.523_943_317_9).abs() < 1e-9);
}

#[test]
fn polygon_area_examples() {
    assert!((polygon_area(4).unwrap() - 1.0).abs() < 1e-15);
    assert!((polygon_area(3).unwrap() - 3f64.sqrt() / 4.0).abs() < 1e-15);
    assert!((polygon_area(6).unwrap() - 1.5 * 3f64.sqrt()).abs() < 1e-14);
}

/// Regular simplex with edge `rho` as scaled basis vectors in R^(n+1); the
/// distance to the facet opposite vertex i is computed by projecting onto the
/// in-hyperplane facet normal.
fn facet_distance_sum(w: &[f64], rho: f64) -> f64 {
    let k = w.len();
    let s = rho / 2f64.sqrt();
    let p: Vec<f64> = w.iter().map(|wi| wi * s).collect();
    (0..k)
        .map(|i| {
            // Any point of the facet: centroid of the other vertices.
            let q: Vec<f64> = (0..k)
                .map(|j| if j == i { 0.0 } else { s / (k - 1) as f64 })
                .collect();
            let u: Vec<f64> = (0..k)
                .map(|j| if j == i { 1.0 } else { 0.0 } - 1.0 / k as f64)
                .collect();
            let un = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            (0..k).map(|j| u[j] * (p[j] - q[j])).sum::<f64>().abs() / un
        })
        .sum()
}

#[test]
fn simplex_identity_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in 1..=6 {
        for rho in [0.5, 1.0, 2.5] {
            let expect = simplex_distance_sum(&SimplexSpec::new(dim, rho).unwrap());
            for _ in 0..200 {
                let mut w: Vec<f64> = (0..=dim)
                    .map(|_| -rng.gen_range(1e-12f64..1.0).ln())
                    .collect();
                let t: f64 = w.iter().sum();
                w.iter_mut().for_each(|x| *x /= t);
                let got = facet_distance_sum(&w, rho);
                assert!(
                    (got - expect).abs() < 1e-12 * rho.max(1.0),
                    "dim {dim} rho {rho}: {got} vs {expect}"
                );
            }
        }
    }
}

#[test]
fn bad_arguments() {
    assert!(lower_bound(0, 3).is_err());
    assert!(lower_bound(2, 2).is_err());
    assert!(sector_minimum(0.0).is_err());
    assert!(sector_minimum(f64::NAN).is_err());
    assert!(SimplexSpec::new(0, 1.0).is_err());
    assert!(SimplexSpec::new(2, -1.0).is_err());
}
