use proptest::prelude::*;

use seidel::colored::{aut_order, are_equivalent, canonical_form};
use seidel::generator::{
    Composite, Interval, LambdaMaxAtMost, LambdaMinAtLeast, NoPrune, Prune, QuadMultiplicity, RankCap,
};
use seidel::linalg::{charpoly_eval_interp, charpoly_fl, rank};
use seidel::matrix::{SeidelMatrix, SignedPermutation};
use seidel::s6;
use seidel::spectral;
use seidel::three_ev::{self, all_feasible};

fn seidel(lo: usize, hi: usize) -> impl Strategy<Value = SeidelMatrix> {
    (lo..=hi).prop_flat_map(|n| {
        // bit k is the k-th entry above the diagonal, column by column
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| SeidelMatrix::from_fn(n, |i, j| bits[j * (j - 1) / 2 + i]).unwrap())
    })
}

/// A matrix together with a signed permutation of the same order.
fn with_action(lo: usize, hi: usize) -> impl Strategy<Value = (SeidelMatrix, SignedPermutation)> {
    seidel(lo, hi).prop_flat_map(|s| {
        let n = s.order();
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(s), perm, any::<u64>()).prop_map(move |(s, p, f)| {
            let flips = if n == 64 { f } else { f & ((1 << n) - 1) };
            (s, SignedPermutation::new(p, flips).unwrap())
        })
    })
}

/// Prunes checked for heredity and for the consistency of their plans.
fn shipped_prunes() -> Vec<Box<dyn Prune>> {
    vec![
        Box::new(NoPrune),
        Box::new(LambdaMinAtLeast(-3)),
        Box::new(LambdaMinAtLeast(-5)),
        Box::new(LambdaMaxAtMost(3)),
        Box::new(LambdaMaxAtMost(5)),
        Box::new(RankCap { root: -3, cap: 5 }),
        Box::new(RankCap { root: -5, cap: 6 }),
        Box::new(RankCap { root: 1, cap: 4 }),
        Box::new(Interval { lo_times_100: -450, hi_times_100: 450 }),
        Box::new(QuadMultiplicity { p: 0, q: -5, order: 10, mult: 5 }),
        Box::new(Composite(vec![Box::new(RankCap { root: -3, cap: 6 }), Box::new(LambdaMinAtLeast(-3))])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn s6_round_trip(s in seidel(1, 62)) {
        let bytes = s6::encode(&s).unwrap();
        prop_assert!(bytes.iter().all(|&b| (63..=126).contains(&b)));
        prop_assert_eq!(s6::decode(&bytes).unwrap(), s);
    }

    #[test]
    fn canonical_form_is_an_invariant((s, g) in with_action(1, 16)) {
        let t = s.apply(&g).unwrap();
        prop_assert_eq!(canonical_form(&s), canonical_form(&t));
        prop_assert!(are_equivalent(&s, &t).unwrap());
        prop_assert_eq!(aut_order(&s), aut_order(&t));
    }

    #[test]
    fn canonical_form_is_equivalent(s in seidel(1, 20)) {
        let c = canonical_form(&s);
        prop_assert_eq!(spectral::charpoly(&c), spectral::charpoly(&s));
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn negation_and_switching_preserve_class_data(s in seidel(2, 14), set in any::<u64>()) {
        let t = s.switched(set & ((1 << s.order()) - 1));
        prop_assert_eq!(canonical_form(&t), canonical_form(&s));
        let neg = s.negated();
        prop_assert_eq!(aut_order(&neg), aut_order(&s));
    }

    #[test]
    fn charpoly_routes_agree(s in seidel(1, 18), shift in -3i64..=3) {
        let a = s.to_int_matrix(shift);
        prop_assert_eq!(charpoly_fl(&a), charpoly_eval_interp(&a));
    }

    #[test]
    fn multiplicity_matches_rank(s in seidel(2, 14), r in -5i64..=5) {
        let via_rank = s.order() - rank(&s.to_int_matrix(-r));
        prop_assert_eq!(spectral::multiplicity_int(&s, r), via_rank);
    }

    #[test]
    fn gershgorin(s in seidel(1, 24)) {
        let n = s.order() as i64;
        // every eigenvalue lies in [−(n−1), n−1]
        prop_assert!(spectral::in_interval_open(&s, -100 * (n - 1) - 1, 100 * (n - 1) + 1));
        prop_assert_eq!(s.to_int_matrix(0).trace(), 0);
    }

    #[test]
    fn prunes_are_hereditary(s in seidel(2, 9)) {
        for p in shipped_prunes() {
            if p.accepts(&s) {
                for i in 0..s.order() {
                    prop_assert!(p.accepts(&s.deleted(i).unwrap()), "{:?} on deleting {} from\n{}", p, i, s);
                }
            }
        }
    }

    #[test]
    fn plans_select_exactly_the_accepted_children(s in seidel(2, 8)) {
        let n = s.order();
        for p in shipped_prunes() {
            if !p.accepts(&s) {
                continue;
            }
            // a border and its negation give switching-equivalent children;
            // plans list the one with bit 0 clear
            let half: Vec<u64> = (0..1u64 << (n - 1)).map(|m| m << 1).collect();
            let want: Vec<u64> = half.iter().copied().filter(|&m| p.accepts(&s.extended(m).unwrap())).collect();
            let plan = p.plan(&s);
            let masks = plan.masks.unwrap_or(half);
            let got: Vec<u64> = masks
                .into_iter()
                .filter(|&m| {
                    let c = s.extended(m).unwrap();
                    plan.residual.iter().all(|r| r.accepts(&c))
                })
                .collect();
            prop_assert_eq!(got, want, "{:?}", p);
        }
    }

    #[test]
    fn even_degree_switching(s in seidel(1, 15)) {
        prop_assume!(s.order() % 2 == 1);
        let g = three_ev::even_degree_graph(&s).unwrap();
        prop_assert!(g.degrees().iter().all(|d| d % 2 == 0));
        prop_assert!(are_equivalent(&SeidelMatrix::from_ambient(&g), &s).unwrap());
    }

    #[test]
    fn k_construction_spectrum(a in 2usize..=5, b in 3usize..=6) {
        let k = SeidelMatrix::k_construction(a, b).unwrap();
        let (a, b) = (a as i64, b as i64);
        prop_assert_eq!(spectral::multiplicity_int(&k, a * (b - 2) + 1), 1);
        prop_assert_eq!(spectral::multiplicity_int(&k, 1 - 2 * a), (b - 1) as usize);
        prop_assert_eq!(spectral::multiplicity_int(&k, 1), (b * (a - 1)) as usize);
        prop_assert_eq!(spectral::distinct_eigenvalue_count(&k), 3);
        prop_assert!(three_ev::has_regular_switching_graph(&k).unwrap());
    }
}

#[test]
fn feasible_spectra_satisfy_trace_identities() {
    for n in 3..=40 {
        let all = all_feasible(n);
        for f in &all {
            let terms = f.spec().terms();
            let size: usize = terms.iter().map(|t| t.0.degree() * t.1).sum();
            let tr: i128 = terms.iter().map(|t| t.0.root_sum() * t.1 as i128).sum();
            let tr2: i128 = terms.iter().map(|t| t.0.root_square_sum() * t.1 as i128).sum();
            assert_eq!(size, n, "{f}");
            assert_eq!(tr, 0, "{f}");
            assert_eq!(tr2, (n * (n - 1)) as i128, "{f}");
            assert!(three_ev::necessary_conditions(terms).unwrap().all(), "{f}");
            assert!(all.iter().any(|g| g.spec() == f.negated().spec()), "{f} without its negation");
        }
    }
}

#[test]
fn negated_spectra_have_equal_counts() {
    for n in 3..=12 {
        for f in all_feasible(n).into_iter().filter(|f| f.is_normalized()) {
            let a = three_ev::search_spectrum(&f, Default::default()).unwrap();
            let b = three_ev::search_spectrum(&f.negated(), Default::default()).unwrap();
            assert_eq!(a.len(), b.len(), "{f}");
            for s in &a {
                assert!(b.iter().any(|t| are_equivalent(&s.negated(), t).unwrap()));
            }
        }
    }
}
