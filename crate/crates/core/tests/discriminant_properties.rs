use mixvol::discriminant::{md_incl_excl, md_perm, thm1_check, MatArgs, DEFAULT_EQUALITY_TOL};
use mixvol::matrix::{random_matrix, random_psd_with, rank_psd, Matrix, SymMatrix};
use mixvol::rng;
use proptest::prelude::*;
use rand::Rng;

fn psd_tuple(n: usize, count: usize, seed: u64) -> Vec<SymMatrix> {
    let mut r = rng::rng(seed);
    (0..count)
        .map(|_| {
            let rank = r.random_range(1..=n);
            random_psd_with(n, rank, &mut r).unwrap()
        })
        .collect()
}

fn md(ms: &[&SymMatrix]) -> f64 {
    md_perm(&MatArgs::from_list(ms).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_psd_has_requested_rank(n in 1usize..=6, seed in any::<u64>(), k in 0usize..6) {
        let rank = 1 + k % n;
        let m = random_psd_with(n, rank, &mut rng::rng(seed)).unwrap();
        let norm = m.as_matrix().frobenius_norm();
        prop_assert!(m.eigenvalues().iter().all(|&v| v >= -1e-9 * norm));
        prop_assert_eq!(rank_psd(&m, 1e-9).unwrap(), rank);
        prop_assert!(m.det() >= -1e-12);
    }

    #[test]
    fn algorithms_agree_and_are_nonnegative(n in 2usize..=6, seed in any::<u64>()) {
        let ms = psd_tuple(n, n, seed);
        let refs: Vec<&SymMatrix> = ms.iter().collect();
        let args = MatArgs::from_list(&refs).unwrap();
        let p = md_perm(&args).unwrap();
        let q = md_incl_excl(&args).unwrap();
        prop_assert!((p - q).abs() <= 1e-9 * (1.0 + p.abs()));
        prop_assert!(p >= -1e-10);
    }

    #[test]
    fn symmetric_under_permutation(n in 2usize..=5, seed in any::<u64>(), rot in 1usize..5) {
        let ms = psd_tuple(n, n, seed);
        let refs: Vec<&SymMatrix> = ms.iter().collect();
        let mut shuffled = refs.clone();
        shuffled.rotate_left(rot % n);
        shuffled.swap(0, n - 1);
        prop_assert!(rel(md(&refs), md(&shuffled)) <= 1e-12);
    }

    #[test]
    fn multilinear_in_first_slot(n in 2usize..=5, seed in any::<u64>(), a in 0.0f64..3.0, b in 0.0f64..3.0) {
        let ms = psd_tuple(n, n + 1, seed);
        let (x, y) = (&ms[0], &ms[1]);
        let rest: Vec<&SymMatrix> = ms[2..].iter().take(n - 1).collect();
        let combo = x.scale(a).add(&y.scale(b));
        let with = |first: &SymMatrix| {
            let mut list = vec![first];
            list.extend(rest.iter().copied());
            md(&list)
        };
        let lhs = with(&combo);
        let rhs = a * with(x) + b * with(y);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs().max(rhs.abs())));
    }

    #[test]
    fn transformation_rule(n in 2usize..=5, seed in any::<u64>()) {
        let ms = psd_tuple(n, n, seed);
        let b = random_matrix(n, &mut rng::rng(seed ^ 0x5eed));
        let det_b = b.det();
        prop_assume!(det_b.abs() > 1e-3);
        let refs: Vec<&SymMatrix> = ms.iter().collect();
        let plain = md(&refs);
        let args = ms
            .iter()
            .fold(MatArgs::new(n), |acc, m| acc.with_matrix(b.mul(m.as_matrix()), 1));
        let moved = md_perm(&args).unwrap();
        // Absolute floor for values that cancel down from the size of the inputs.
        let floor = 1e-12 * det_b.abs() * plain_scale(&ms);
        prop_assert!((moved - det_b * plain).abs() <= 1e-9 * (det_b * plain).abs() + floor);
    }

    #[test]
    fn gap_identity_for_invertible_a3(n in 2usize..=6, seed in any::<u64>()) {
        let mut r = rng::rng(seed);
        let a1 = random_psd_with(n, r.random_range(1..=n), &mut r).unwrap();
        let a2 = random_psd_with(n, r.random_range(1..=n), &mut r).unwrap();
        let a3 = random_psd_with(n, n, &mut r).unwrap();
        let rep = thm1_check(&a1, &a2, &a3, DEFAULT_EQUALITY_TOL).unwrap();
        prop_assert!(rep.gap >= -1e-9 * rep.scale);
        if let Some(relative) = rep.trace_identity_relative {
            prop_assert!(relative <= 1e-8, "relative residual {}", relative);
        }
    }
}

/// Product of Frobenius norms, a size proxy for cancellation-prone values.
fn plain_scale(ms: &[SymMatrix]) -> f64 {
    ms.iter().map(|m| m.as_matrix().frobenius_norm()).product()
}

#[test]
fn non_symmetric_arguments_reduce_to_determinant() {
    let b = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
    let args = MatArgs::new(2).with_matrix(b.clone(), 2);
    assert!((md_perm(&args).unwrap() - b.det()).abs() < 1e-12);
    assert!((md_incl_excl(&args).unwrap() - b.det()).abs() < 1e-12);
}
