//! Randomized laws over the whole construction surface: abelian
//! arithmetic, family solutions, congruence closures, quotients, and
//! the block structure of the square-carrier solutions.

use proptest::prelude::*;
use ybe::a2::JFamily;
use ybe::abelian::AbGroup;
use ybe::asym::{mod6_counterexample_brace, theorem_example_brace};
use ybe::brace::{is_ideal, socle};
use ybe::solution::{
    is_indecomposable, is_simple_oracle, principal_congruence, quotient_solution, verify_rows,
};

fn arb_abgroup() -> impl Strategy<Value = AbGroup> {
    proptest::collection::vec(2u32..=9, 1..=3)
        .prop_filter("keep the order manageable", |m| m.iter().product::<u32>() <= 200)
        .prop_map(|m| AbGroup::new(m).expect("moduli are in range"))
}

/// A random symmetric family over a group of order at most 6:
/// free choices on the negation classes, mirrored to the rest.
fn arb_family() -> impl Strategy<Value = JFamily> {
    prop_oneof![Just("2"), Just("3"), Just("4"), Just("5"), Just("6"), Just("2,2")]
        .prop_map(|m| AbGroup::parse(m).expect("fixed moduli"))
        .prop_flat_map(|g| {
            let n = g.order();
            (Just(g), proptest::collection::vec(0..n, n))
        })
        .prop_map(|(g, raw)| {
            let j: Vec<usize> = (0..g.order())
                .map(|a| {
                    let neg_a = g.index_of(&g.neg(&g.elem_at(a)));
                    raw[a.min(neg_a)]
                })
                .collect();
            JFamily::from_indices(g, &j).expect("mirrored arrays are symmetric")
        })
}

proptest! {
    #[test]
    fn negation_cancels_in_every_group(g in arb_abgroup()) {
        for i in 0..g.order() {
            let e = g.elem_at(i);
            prop_assert_eq!(g.add(&e, &g.neg(&e)), g.zero());
            prop_assert_eq!(g.index_of(&g.elem_at(i)), i);
        }
    }

    #[test]
    fn subgroup_closure_is_idempotent_and_lagrange(
        g in arb_abgroup(),
        picks in proptest::collection::vec(0usize..10_000, 0..3),
    ) {
        let gens: Vec<_> = picks.iter().map(|&p| g.elem_at(p % g.order())).collect();
        let closed = g.subgroup_closure(&gens);
        prop_assert_eq!(g.order() % closed.len(), 0);
        let again = g.subgroup_closure(&closed.iter().map(|&i| g.elem_at(i)).collect::<Vec<_>>());
        prop_assert_eq!(closed, again);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_solutions_always_verify(jf in arb_family()) {
        let s = jf.build_solution().expect("group is nontrivial");
        prop_assert!(s.verify().ok());
        prop_assert!(verify_rows(&s.sigma_rows()).expect("well-formed").ok());
    }

    #[test]
    fn single_entry_corruption_is_always_caught(
        jf in arb_family(),
        row in 0usize..10_000,
        col in 0usize..10_000,
        bump in 1usize..10_000,
    ) {
        let s = jf.build_solution().expect("group is nontrivial");
        let n = s.n();
        let mut rows = s.sigma_rows();
        let (r, c) = (row % n, col % n);
        rows[r][c] = (rows[r][c] + 1 + bump % (n - 1)) % n;
        let caught = match verify_rows(&rows) {
            Err(_) => true,
            Ok(rep) => !rep.ok() && rep.witness.is_some(),
        };
        prop_assert!(caught, "mutation at ({r}, {c}) slipped through");
    }

    #[test]
    fn simple_solutions_are_indecomposable_and_irretractable(jf in arb_family()) {
        let s = jf.build_solution().expect("group is nontrivial");
        if is_simple_oracle(&s) {
            prop_assert!(is_indecomposable(&s));
            prop_assert!(s.is_irretractable());
        }
    }

    /// First coordinates of images depend only on first coordinates of
    /// inputs, for every generator; block-preserving permutations form
    /// a group, so this extends to the whole generated group.
    #[test]
    fn sigma_maps_first_coordinate_blocks_to_blocks(
        jf in arb_family(),
        x in 0usize..10_000,
    ) {
        let s = jf.build_solution().expect("group is nontrivial");
        let m = jf.group().order();
        let x = x % s.n();
        for a1 in 0..m {
            let first = s.sigma(x, a1 * m) / m;
            for a2 in 1..m {
                prop_assert_eq!(s.sigma(x, a1 * m + a2) / m, first);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn principal_quotients_verify_and_commute(
        jf in arb_family(),
        x in 0usize..10_000,
        y in 0usize..10_000,
    ) {
        let s = jf.build_solution().expect("group is nontrivial");
        let n = s.n();
        let cong = principal_congruence(&s, x % n, y % n);
        let (q, class_map) = quotient_solution(&s, &cong).expect("closure is a congruence");
        prop_assert!(q.verify().ok());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(class_map[s.sigma(u, v)], q.sigma(class_map[u], class_map[v]));
                prop_assert_eq!(class_map[s.gamma(u, v)], q.gamma(class_map[u], class_map[v]));
            }
        }
    }

    /// The worklist closure equals a naive iterate-to-fixpoint
    /// computation of the same congruence, so the result cannot depend
    /// on processing order.
    #[test]
    fn worklist_closure_matches_naive_fixpoint(
        jf in arb_family(),
        x in 0usize..10_000,
        y in 0usize..10_000,
    ) {
        let s = jf.build_solution().expect("group is nontrivial");
        let n = s.n();
        let (x, y) = (x % n, y % n);
        let fast = principal_congruence(&s, x, y);

        let mut label: Vec<usize> = (0..n).collect();
        let relabel = |label: &mut Vec<usize>, a: usize, b: usize| {
            let (from, to) = (label[a].max(label[b]), label[a].min(label[b]));
            if from != to {
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
                return true;
            }
            false
        };
        relabel(&mut label, x, y);
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if label[a] != label[b] {
                        continue;
                    }
                    for v in 0..n {
                        changed |= relabel(&mut label, s.sigma(a, v), s.sigma(b, v));
                        changed |= relabel(&mut label, s.sigma(v, a), s.sigma(v, b));
                        changed |= relabel(&mut label, s.gamma(a, v), s.gamma(b, v));
                        changed |= relabel(&mut label, s.gamma(v, a), s.gamma(v, b));
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(fast.same(a, b), label[a] == label[b]);
            }
        }
    }
}

#[test]
fn socles_of_the_constructed_braces_are_ideals() {
    let small = theorem_example_brace(&[2, 3]).expect("valid primes");
    is_ideal(&small, &socle(&small)).expect("socle closure");
    let big = mod6_counterexample_brace(2, 3).expect("valid primes");
    is_ideal(&big, &socle(&big)).expect("socle closure");
}

#[test]
fn trivial_socle_makes_all_sigma_rows_distinct() {
    use ybe::brace::associated_solution;
    let b = theorem_example_brace(&[2, 3]).expect("valid primes");
    assert_eq!(socle(&b).len(), 1);
    let s = associated_solution(&b).expect("valid brace");
    let rows = s.sigma_rows();
    for i in 0..rows.len() {
        for k in i + 1..rows.len() {
            assert_ne!(rows[i], rows[k], "sigma rows {i} and {k} coincide");
        }
    }
}
