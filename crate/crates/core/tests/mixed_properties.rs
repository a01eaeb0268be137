use mixvol::body::{self, random_body, BodyKind, BodySpec};
use mixvol::geom::{HyperplaneBasis, Point, UnitVector};
use mixvol::harmonics;
use mixvol::mixed::{self, mixed_volume, BodyArgs};
use mixvol::quadrature::QuadratureScheme;
use mixvol::rng;
use proptest::prelude::*;
use rand::Rng;

fn polytope(dim: usize, size: usize, seed: u64) -> BodySpec {
    random_body(BodyKind::Polytope, dim, size, seed).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn additive_in_each_slot_planar(seed in any::<u64>()) {
        let (k, k2, l) = (polytope(2, 6, seed), polytope(2, 5, seed ^ 1), polytope(2, 7, seed ^ 2));
        let sum = body::minkowski_sum(&k, &k2).unwrap();
        let lhs = mixed::mixed_volume_of(&[&sum, &l]).unwrap();
        let rhs = mixed::mixed_volume_of(&[&k, &l]).unwrap() + mixed::mixed_volume_of(&[&k2, &l]).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9));
        let swapped = mixed::mixed_volume_of(&[&l, &sum]).unwrap();
        prop_assert!(close(lhs, swapped, 1e-12));
    }

    #[test]
    fn translation_invariant(dim in 2usize..=3, seed in any::<u64>()) {
        let k = polytope(dim, 6, seed);
        let l = random_body(BodyKind::Zonotope, dim, 3, seed ^ 1).unwrap();
        let t: Point = (0..dim).map(|i| 0.5 - 0.4 * i as f64).collect();
        let items = |a: &BodySpec| BodyArgs::new(dim, vec![(a.clone(), 1), (l.clone(), dim - 1)]).unwrap();
        let v = mixed_volume(&items(&k)).unwrap();
        let w = mixed_volume(&items(&k.translated(&t).unwrap())).unwrap();
        prop_assert!((v - w).abs() <= 1e-10 * v.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn additive_in_each_slot_spatial(seed in any::<u64>()) {
        let (k, k2, l) = (polytope(3, 6, seed), polytope(3, 5, seed ^ 1), polytope(3, 6, seed ^ 2));
        let sum = body::minkowski_sum(&k, &k2).unwrap();
        let v = |a: &BodySpec| mixed_volume(&BodyArgs::new(3, vec![(a.clone(), 1), (l.clone(), 2)]).unwrap()).unwrap();
        prop_assert!(close(v(&sum), v(&k) + v(&k2), 1e-9));
    }

    #[test]
    fn monotone_under_inclusion(dim in 2usize..=3, seed in any::<u64>()) {
        let k = polytope(dim, 6, seed);
        let mut r = rng::rng(seed ^ 9);
        let mut pts: Vec<Point> = k.to_polytope().unwrap().vertices().to_vec();
        for _ in 0..3 {
            pts.push((0..dim).map(|_| r.random_range(-1.5..1.5)).collect());
        }
        let bigger = BodySpec::polytope(&pts, dim).unwrap();
        let q = QuadratureScheme::default_for(dim).unwrap();
        // Inclusion certified by support dominance on the nodes.
        prop_assert!(q.nodes().iter().all(|u| k.support_raw(u) <= bigger.support_raw(u) + 1e-12));
        let rest = random_body(BodyKind::Zonotope, dim, 3, seed ^ 4).unwrap();
        let v = |a: &BodySpec| mixed_volume(&BodyArgs::new(dim, vec![(a.clone(), 1), (rest.clone(), dim - 1)]).unwrap()).unwrap();
        prop_assert!(v(&k) <= v(&bigger) + 1e-10);
    }

    #[test]
    fn symmetral_keeps_mean_width_above_shadow(seed in any::<u64>()) {
        let k = polytope(3, 8, seed);
        let mut r = rng::rng(seed ^ 7);
        let u = UnitVector::new((0..3).map(|_| r.random_range(-1.0..1.0)).collect()).unwrap();
        let q = QuadratureScheme::default_for(3).unwrap();
        let m = q.mean_support(&k).unwrap();
        let sym = mixed::symmetral(&k, &u).unwrap();
        let m_sym = q.mean_support(&sym).unwrap();
        let basis = HyperplaneBasis::new(&u);
        let flat = body::embed_with(&body::project_with(&k, &basis).unwrap(), &basis).unwrap();
        let m_flat = q.mean_support(&flat).unwrap();
        prop_assert!((m - m_sym).abs() <= 2e-3 * m);
        prop_assert!(m_sym >= m_flat * (1.0 - 2e-3));
    }

    #[test]
    fn planar_bodies_lose_the_reduction_constant(seed in any::<u64>()) {
        let p = polytope(2, 7, seed);
        let mut r = rng::rng(seed ^ 11);
        let u = UnitVector::new((0..3).map(|_| r.random_range(-1.0..1.0)).collect()).unwrap();
        let basis = HyperplaneBasis::new(&u);
        let flat = body::embed_with(&p, &basis).unwrap();
        let q3 = QuadratureScheme::default_for(3).unwrap();
        let lhs = q3.mean_support(&flat).unwrap();
        let c = harmonics::constants(3).unwrap().ratio * harmonics::reduction_constant(2, 3).unwrap();
        let rhs = c * p.mean_support().unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-3 * rhs, "{} vs {}", lhs, rhs);
    }
}

#[test]
fn reduction_constant_is_three_pi_over_eight_times_two_thirds() {
    let c = harmonics::constants(3).unwrap().ratio * harmonics::reduction_constant(2, 3).unwrap();
    assert!((c - std::f64::consts::PI / 4.0).abs() < 1e-15);
}
