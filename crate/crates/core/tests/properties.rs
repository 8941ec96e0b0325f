use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bergman_os::exterior::{basis, Multivector};
use bergman_os::lattice::LatticeSubgroup;
use bergman_os::matroid::Matroid;
use bergman_os::random::random_linear_matroid;
use bergman_os::report::Status;
use bergman_os::verify::{verify_theorem_affine, verify_theorem_projective};

/// A homogeneous multivector of the given degree with small coefficients.
fn multivector(n: usize, degree: usize) -> impl Strategy<Value = Multivector> {
    let monos = basis(n, degree);
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |coeffs| {
        let mut x = Multivector::zero(n, degree);
        for (mono, c) in monos.iter().zip(coeffs) {
            x.add_term(*mono, BigInt::from(c));
        }
        x
    })
}

fn two_multivectors() -> impl Strategy<Value = (Multivector, Multivector)> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, p)| (Just(n), Just(p), 1..=n - p))
        .prop_flat_map(|(n, p, q)| (multivector(n, p), multivector(n, q)))
}

fn int_rows(max_dim: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_dim).prop_flat_map(|d| {
        (
            Just(d),
            prop::collection::vec(prop::collection::vec(-6i64..=6, d), 0..=d + 2),
        )
    })
}

fn matroid_from_seed(seed: u64, rows: usize, elements: usize) -> Matroid {
    random_linear_matroid(&mut ChaCha8Rng::seed_from_u64(seed), rows, elements)
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(x in (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |k| multivector(n, k)))) {
        prop_assert!(x.boundary().boundary().is_zero());
    }

    #[test]
    fn leibniz_rule((a, b) in two_multivectors()) {
        let left = a.wedge(&b).unwrap().boundary();
        let sign = BigInt::from(if a.degree() % 2 == 0 { 1 } else { -1 });
        let right = a
            .boundary()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&b.boundary()).unwrap().scale(&sign))
            .unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn graded_commutativity((a, b) in two_multivectors()) {
        let sign = BigInt::from(if a.degree() * b.degree() % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
    }

    #[test]
    fn wedge_top_is_adjoint_to_boundary(
        (x, y) in (1usize..=6)
            .prop_flat_map(|n| (Just(n), 0..n))
            .prop_flat_map(|(n, k)| (multivector(n, k), multivector(n, k + 1)))
    ) {
        prop_assert_eq!(x.wedge_top().pairing(&y).unwrap(), x.pairing(&y.boundary()).unwrap());
    }

    #[test]
    fn double_annihilator_is_saturation((d, rows) in int_rows(6)) {
        let l = LatticeSubgroup::span_i64(d, &rows);
        let sat = l.saturate();
        prop_assert_eq!(l.annihilator().annihilator(), sat.clone());
        prop_assert!(l.is_subgroup_of(&sat).unwrap());
        prop_assert_eq!(l.rank(), sat.rank());
        prop_assert_eq!(l.quotient_torsion().is_empty(), l == sat);
    }

    #[test]
    fn hnf_is_invariant_under_unimodular_moves(
        (d, rows) in int_rows(5),
        moves in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), -3i64..=3), 0..8),
    ) {
        let original = LatticeSubgroup::span_i64(d, &rows);
        let mut shuffled = rows.clone();
        if shuffled.len() >= 2 {
            for (i, j, c) in moves {
                let (i, j) = (i.index(shuffled.len()), j.index(shuffled.len()));
                if i == j {
                    shuffled[i].iter_mut().for_each(|x| *x = -*x);
                } else {
                    let src = shuffled[j].clone();
                    shuffled[i].iter_mut().zip(src).for_each(|(x, y)| *x += c * y);
                    shuffled.swap(i, j);
                }
            }
        }
        let moved = LatticeSubgroup::span_i64(d, &shuffled);
        prop_assert_eq!(moved.basis(), original.basis());
    }

    #[test]
    fn intersection_and_sum_bound_ranks((d, a) in int_rows(5), seed in any::<u64>()) {
        let b: Vec<Vec<i64>> = a.iter().enumerate()
            .map(|(i, r)| r.iter().map(|x| x * (1 + (seed as i64 + i as i64).rem_euclid(3))).collect())
            .collect();
        let la = LatticeSubgroup::span_i64(d, &a);
        let lb = LatticeSubgroup::span_i64(d, &b);
        let meet = la.intersect(&lb).unwrap();
        let join = la.sum(&lb).unwrap();
        prop_assert!(meet.is_subgroup_of(&la).unwrap() && meet.is_subgroup_of(&lb).unwrap());
        prop_assert!(la.is_subgroup_of(&join).unwrap() && lb.is_subgroup_of(&join).unwrap());
        prop_assert_eq!(meet.rank() + join.rank(), la.rank() + lb.rank());
    }

    #[test]
    fn matroid_rank_axioms(seed in any::<u64>(), rows in 1usize..=4, elements in 1usize..=7) {
        let m = matroid_from_seed(seed, rows, elements);
        let full = m.ground_mask();
        for a in 0..=full {
            prop_assert!(m.rank_mask(a) <= a.count_ones() as usize);
            let closure = m.closure_mask(a);
            prop_assert_eq!(m.closure_mask(closure), closure);
            prop_assert_eq!(m.rank_mask(closure), m.rank_mask(a));
            for i in 0..elements {
                let b = a | (1 << i);
                prop_assert!(m.rank_mask(b) <= m.rank_mask(a) + 1);
                prop_assert!(m.rank_mask(a) <= m.rank_mask(b));
            }
        }
        for c in m.circuits() {
            let mask: u64 = c.iter().map(|i| 1u64 << i).sum();
            prop_assert_eq!(m.rank_mask(mask), c.len() - 1);
        }
        let flats = m.all_flats();
        prop_assert!(flats.iter().all(|f| m.is_flat_mask(f.mask())));
    }

    #[test]
    fn circuits_determine_the_matroid(seed in any::<u64>(), rows in 1usize..=3, elements in 1usize..=6) {
        let m = matroid_from_seed(seed, rows, elements);
        let rebuilt = Matroid::from_circuits(elements, m.circuits()).unwrap();
        prop_assert_eq!(rebuilt, m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem_holds_on_random_linear_matroids(seed in any::<u64>(), rows in 1usize..=4, elements in 1usize..=6) {
        let m = matroid_from_seed(seed, rows, elements);
        for check in [verify_theorem_affine(&m), verify_theorem_projective(&m)] {
            prop_assert_eq!(check.status, Status::Pass, "{}: {} {:?}", check.check_id, check.details, check.witness);
        }
    }
}
