#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use prefagent_core::formula::OrderKind;
use prefagent_core::pgraph::{characteristic, extract_graph};
use prefagent_core::{Assignment, PriorityGraph, WorldSet};
use proptest::prelude::*;

fn worlds(n_atoms: usize) -> Vec<Assignment> {
    sig(n_atoms).all_assignments().unwrap()
}

fn subset(n: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn strict_part_is_a_strict_order(m in (1usize..=7).prop_flat_map(arb_matrix)) {
        let o = to_preorder(&m);
        let s = o.strict_part();
        let n = m.len();
        prop_assert!(s.is_irreflexive());
        prop_assert!(s.transitivity_violation().is_none());
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(s.contains(a, b), m[a][b] && !m[b][a]);
            }
        }
    }

    #[test]
    fn min_set_matches_definition(
        (m, keep) in (1usize..=7).prop_flat_map(|n| (arb_matrix(n), subset(n)))
    ) {
        let o = to_preorder(&m);
        let n = m.len();
        let s = WorldSet::from_indices(n, (0..n).filter(|&w| keep[w]));
        let got = o.min_set(&s);
        for w in 0..n {
            let expected = keep[w] && !(0..n).any(|v| keep[v] && m[v][w] && !m[w][v]);
            prop_assert_eq!(got.contains(w), expected);
        }
        prop_assert!(got.is_subset(&s));
        prop_assert_eq!(got.is_empty(), s.is_empty());
    }

    #[test]
    fn restriction_is_a_preorder_on_the_kept_worlds(
        (m, keep) in (1usize..=7).prop_flat_map(|n| (arb_matrix(n), subset(n)))
    ) {
        let n = m.len();
        let s = WorldSet::from_indices(n, (0..n).filter(|&w| keep[w]));
        let r = to_preorder(&m).restrict(&s);
        prop_assert!(r.validate().is_ok());
        let kept: Vec<usize> = s.iter().collect();
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                prop_assert_eq!(r.le(i, j), m[a][b]);
            }
        }
    }

    #[test]
    fn induced_order_matches_definition(g in arb_graph(3, 4)) {
        let ws = worlds(3);
        let got = g.induced_order(&sig(3), &ws).unwrap();
        let expected = oracle_induced(&g, &sig(3), &ws);
        prop_assert!(Oracle::is_preorder(&expected));
        prop_assert!(got.validate().is_ok());
        prop_assert_eq!(matrix(&got), expected);
    }

    #[test]
    fn extraction_round_trips(m in arb_model(3, true), k in prop_oneof![Just(OrderKind::Plausibility), Just(OrderKind::Desirability)]) {
        let pm = m.preference_model(k);
        let g = extract_graph(&pm).unwrap();
        prop_assert!(g.edges().is_empty());
        let back = g.induced_order(&pm.signature, &pm.assignments).unwrap();
        prop_assert_eq!(matrix(&back), matrix(m.order(k)));
    }

    #[test]
    fn lowest_priority_node_only_refines(g in arb_graph(3, 3), extra in arb_prop(3, 2)) {
        prop_assume!(!g.nodes().contains(&extra));
        let ws = worlds(3);
        let n = g.len();
        let mut nodes = g.nodes().to_vec();
        nodes.push(extra);
        let mut edges = g.edges();
        edges.extend((0..n).map(|i| (i, n)));
        let bigger = PriorityGraph::new(nodes, &edges).unwrap();
        let before = matrix(&g.induced_order(&sig(3), &ws).unwrap());
        let after = matrix(&bigger.induced_order(&sig(3), &ws).unwrap());
        for a in 0..ws.len() {
            for b in 0..ws.len() {
                prop_assert!(!after[a][b] || before[a][b]);
            }
        }
    }

    #[test]
    fn unranked_node_adds_no_strict_pairs_among_agreeing_worlds(g in arb_graph(3, 3), extra in arb_prop(3, 2)) {
        prop_assume!(!g.nodes().contains(&extra));
        let ws = worlds(3);
        let mut nodes = g.nodes().to_vec();
        nodes.push(extra.clone());
        let bigger = PriorityGraph::new(nodes, &g.edges()).unwrap();
        let before = to_preorder(&matrix(&g.induced_order(&sig(3), &ws).unwrap()));
        let after = bigger.induced_order(&sig(3), &ws).unwrap();
        for a in 0..ws.len() {
            for b in 0..ws.len() {
                let agree = sig(3).satisfies(ws[a], &extra).unwrap() == sig(3).satisfies(ws[b], &extra).unwrap();
                if agree && after.lt(a, b) {
                    prop_assert!(before.lt(a, b));
                }
            }
        }
    }
}

#[test]
fn characteristic_formula_pins_one_valuation() {
    let s = sig(3);
    for a in s.all_assignments().unwrap() {
        let chi = characteristic(&s, a);
        for b in s.all_assignments().unwrap() {
            assert_eq!(s.satisfies(b, &chi).unwrap(), a == b);
        }
    }
}

#[test]
fn empty_graph_induces_the_total_order() {
    let ws = worlds(2);
    let o = PriorityGraph::empty().induced_order(&sig(2), &ws).unwrap();
    assert!(matrix(&o).iter().flatten().all(|&b| b));
}
