mod common;

use hamcycle::cycles::{cycle_weight, enumerate_cycles, total_weight};
use hamcycle::extremal::ratio;
use hamcycle::geometry::{midpoint, normalize, random_config, regular_polygon, squared_distance, Point};
use hamcycle::rng::{derive_seed, SplitMix64};
use hamcycle::{Configuration, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -100.0f64..100.0
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), dim)
}

fn small_int_point(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..1000, dim)
}

fn rat(v: &[i64]) -> Point<BigRational> {
    Point::new(v.iter().map(|&x| common::q(x, 7)).collect()).unwrap()
}

proptest! {
    #[test]
    fn squared_distance_symmetric_and_matches_oracle((a, b) in (2usize..=3).prop_flat_map(|d| (point(d), point(d)))) {
        let (pa, pb) = (Point::new(a.clone()).unwrap(), Point::new(b.clone()).unwrap());
        let ab = squared_distance(&pa, &pb).unwrap();
        prop_assert_eq!(ab, squared_distance(&pb, &pa).unwrap());
        prop_assert!(ab >= 0.0);
        prop_assert!(common::rel_err(ab, common::dist2(&a, &b)) <= 1e-15 || ab == 0.0);
    }

    #[test]
    fn exact_scaling_and_translation((a, b, t) in (2usize..=3).prop_flat_map(|d| (small_int_point(d), small_int_point(d), small_int_point(d))), k in -50i64..50) {
        let (pa, pb) = (rat(&a), rat(&b));
        let base = squared_distance(&pa, &pb).unwrap();
        let scaled = |v: &[i64]| rat(&v.iter().map(|x| x * k).collect::<Vec<_>>());
        let shifted = |v: &[i64]| rat(&v.iter().zip(&t).map(|(x, y)| x + y).collect::<Vec<_>>());
        prop_assert_eq!(squared_distance(&scaled(&a), &scaled(&b)).unwrap(), base.clone() * common::q(k * k, 1));
        prop_assert_eq!(squared_distance(&shifted(&a), &shifted(&b)).unwrap(), base);
    }

    #[test]
    fn midpoint_is_equidistant((a, b) in (2usize..=3).prop_flat_map(|d| (small_int_point(d), small_int_point(d)))) {
        let (pa, pb) = (rat(&a), rat(&b));
        let m = midpoint(&pa, &pb).unwrap();
        let ab = squared_distance(&pa, &pb).unwrap();
        prop_assert_eq!(squared_distance(&pa, &m).unwrap(), ab.clone() / common::q(4, 1));
        prop_assert_eq!(squared_distance(&m, &pb).unwrap(), ab / common::q(4, 1));
    }

    #[test]
    fn ratio_is_similarity_invariant(seed: u64, n in 4usize..=6, s in 0.01f64..100.0, angle in 0.0f64..std::f64::consts::TAU, shift in point(2)) {
        let c = random_config::<f64>(seed, n, 2).unwrap();
        let (sin, cos) = angle.sin_cos();
        let moved = c.map_points(|p| {
            let (x, y) = (p.coords()[0], p.coords()[1]);
            vec![s * (cos * x - sin * y) + shift[0], s * (sin * x + cos * y) + shift[1]]
        }).unwrap();
        for cy in enumerate_cycles(n).unwrap() {
            let (r0, r1) = (ratio(&c, &cy).unwrap(), ratio(&moved, &cy).unwrap());
            prop_assert!((r0 - r1).abs() <= 1e-9, "{} vs {}", r0, r1);
        }
    }

    #[test]
    fn normalized_configuration_has_unit_weight_and_zero_centroid(seed: u64, n in 3usize..=8, dim in 2usize..=3) {
        let c = normalize(&random_config::<f64>(seed, n, dim).unwrap()).unwrap();
        prop_assert!((total_weight(&c) - 1.0).abs() <= 1e-12);
        for k in 0..dim {
            let mean: f64 = c.points().iter().map(|p| p.coords()[k]).sum::<f64>() / n as f64;
            prop_assert!(mean.abs() <= 1e-12);
        }
    }

    #[test]
    fn float_and_rational_configs_are_the_same_points(seed: u64, n in 3usize..=6, dim in 2usize..=3) {
        let f = random_config::<f64>(seed, n, dim).unwrap();
        let r = random_config::<BigRational>(seed, n, dim).unwrap();
        for (pf, pr) in f.points().iter().zip(r.points()) {
            for (x, y) in pf.coords().iter().zip(pr.coords()) {
                prop_assert_eq!(*x, y.to_f64());
                prop_assert_eq!(BigRational::from_float(*x).unwrap(), y.clone());
            }
        }
    }
}

#[test]
fn total_weight_of_regular_polygon() {
    // Σ over pairs of |P_i P_j|² = n Σ|P_i|² − |Σ P_i|² = n² r² for a centered polygon.
    for n in 3..=10 {
        let c = regular_polygon(n, 2.0).unwrap();
        assert!((total_weight(&c) - (n * n) as f64 * 4.0).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn random_config_follows_the_generator_contract() {
    let c = random_config::<f64>(42, 3, 2).unwrap();
    let mut g = SplitMix64::new(42);
    for p in c.points() {
        for &x in p.coords() {
            assert_eq!(x, (g.next_u64() >> 11) as f64 * 2f64.powi(-53));
        }
    }
    assert_eq!(derive_seed(42, 3), SplitMix64::new(45).next_u64());
}

#[test]
fn rejects_bad_shapes() {
    assert!(Point::new(vec![1.0]).is_err());
    assert!(Point::new(vec![1.0, 2.0, 3.0, 4.0]).is_err());
    assert!(Point::new(vec![f64::NAN, 0.0]).is_err());
    assert!(Configuration::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).is_err());
    assert!(Configuration::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.0, 0.0]]).is_err());
    let zero = Configuration::from_rows(vec![vec![1.0, 1.0]; 4]).unwrap();
    assert!(matches!(normalize(&zero), Err(hamcycle::Error::Degenerate(_))));
}

#[test]
fn square_cycle_weights() {
    let c = Configuration::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let ws: Vec<f64> = enumerate_cycles(4).unwrap().iter().map(|cy| cycle_weight(&c, cy).unwrap()).collect();
    assert_eq!(ws, vec![4.0, 6.0, 6.0]);
}
