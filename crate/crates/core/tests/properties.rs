use std::collections::BTreeMap;

use itertools::Itertools;
use obdd_lab::bounds::{combined_width_exact, combined_width_of_order};
use obdd_lab::cnf::{Assignment, Clause, Cnf, Literal, Var};
use obdd_lab::decomposition::{min_fill, validate, Provenance, VariableOrder};
use obdd_lab::matching::{cut_matching, matching_width_exact, permutation_matching_width};
use obdd_lab::obdd::{count_subfunctions, Obdd};
use obdd_lab::{Caps, Graph};
use proptest::prelude::*;
use proptest::sample::SizeRange;

fn var(slot: usize) -> Var {
    Var::from_slot(slot)
}

fn vars(n: usize) -> Vec<Var> {
    (0..n).map(var).collect()
}

/// Clauses of width 1 to 3 over `n` variables, one literal per variable.
fn cnf_strategy(max_vars: usize, clauses: impl Into<SizeRange>) -> impl Strategy<Value = Cnf> {
    let clauses = clauses.into();
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (0..n, any::<bool>());
        prop::collection::vec(prop::collection::vec(lit, 1..=3), clauses.clone()).prop_map(move |raw| {
            let clauses = raw
                .into_iter()
                .map(|lits| {
                    let by_var: BTreeMap<usize, bool> = lits.into_iter().collect();
                    Clause::new(by_var.into_iter().map(|(s, p)| Literal::new(var(s), p))).unwrap()
                })
                .collect();
            Cnf::new(n, clauses).unwrap()
        })
    })
}

fn graph_strategy(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A CNF with a permutation of its variables.
fn cnf_and_order(max_vars: usize) -> impl Strategy<Value = (Cnf, VariableOrder)> {
    cnf_strategy(max_vars, 0..8).prop_flat_map(|f| {
        let n = f.num_vars();
        (Just(f), Just(vars(n)).prop_shuffle()).prop_map(|(f, o)| (f, VariableOrder::new(o, Provenance::Explicit)))
    })
}

/// Partial assignment: `None` leaves the variable free.
fn partial_strategy(n: usize) -> impl Strategy<Value = Vec<Option<bool>>> {
    prop::collection::vec(prop::option::of(any::<bool>()), n)
}

fn to_assignment(values: &[Option<bool>]) -> Assignment {
    Assignment::from_pairs(values.iter().enumerate().filter_map(|(i, v)| v.map(|b| (var(i), b)))).unwrap()
}

fn table(f: &Cnf) -> Vec<bool> {
    f.truth_table(&vars(f.num_vars())).unwrap().bits().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn restriction_composes(
        (f, a, b) in cnf_strategy(7, 0..8).prop_flat_map(|f| {
            let n = f.num_vars();
            (Just(f), partial_strategy(n), partial_strategy(n))
        })
    ) {
        // Make the two assignments disjoint.
        let b: Vec<Option<bool>> = b.iter().zip(&a).map(|(y, x)| if x.is_some() { None } else { *y }).collect();
        let (sa, sb) = (to_assignment(&a), to_assignment(&b));
        let stepwise = f.restrict(&sa).unwrap().restrict(&sb).unwrap();
        let at_once = f.restrict(&sa.union(&sb).unwrap()).unwrap();
        prop_assert_eq!(table(&stepwise), table(&at_once));
    }

    #[test]
    fn total_restriction_is_evaluation((f, bits) in cnf_strategy(7, 0..8).prop_flat_map(|f| {
        let n = f.num_vars();
        (Just(f), prop::collection::vec(any::<bool>(), n))
    })) {
        let a = Assignment::from_pairs(bits.iter().enumerate().map(|(i, &b)| (var(i), b))).unwrap();
        let g = f.restrict(&a).unwrap();
        let value = f.evaluate(&a).unwrap();
        prop_assert_eq!(g.is_true(), value);
        prop_assert_eq!(g.has_empty_clause(), !value);
    }

    #[test]
    fn restriction_table_is_a_slice((f, free, index) in cnf_strategy(7, 0..8).prop_flat_map(|f| {
        let n = f.num_vars();
        (Just(f), 0..=n, any::<u64>())
    })) {
        let n = f.num_vars();
        let all = vars(n);
        let bound = &all[free..];
        let index = index & ((1u64 << bound.len()) - 1);
        let s = Assignment::from_index(bound, index);
        let restricted = f.restrict(&s).unwrap().truth_table(&all[..free]).unwrap();
        let full = f.truth_table(&all).unwrap();
        prop_assert_eq!(restricted, full.slice((index as usize) << free, free));
    }

    #[test]
    fn compiled_diagram_agrees_with_formula((f, order) in cnf_and_order(7)) {
        let d = Obdd::compile(&f, &order).unwrap();
        let u = Obdd::compile_uniform(&f, &order).unwrap();
        let all = vars(f.num_vars());
        for i in 0..1u64 << all.len() {
            let a = Assignment::from_index(&all, i);
            let expected = f.evaluate(&a).unwrap();
            prop_assert_eq!(d.evaluate(&a).unwrap(), expected);
            prop_assert_eq!(u.evaluate(&a).unwrap(), expected);
        }
        prop_assert!(u.reduced().equivalent(&d).unwrap());
    }

    #[test]
    fn equivalent_formulas_share_a_diagram((f, order, extra) in cnf_and_order(6).prop_flat_map(|(f, o)| {
        let n = f.num_vars();
        (Just(f), Just(o), (0..n, any::<bool>()))
    })) {
        // Reorder clauses, repeat one, and add a clause subsumed by an existing one.
        let mut clauses: Vec<Clause> = f.clauses().iter().rev().cloned().collect();
        if let Some(c) = f.clauses().first() {
            clauses.push(c.clone());
            if !c.contains_var(var(extra.0)) {
                let mut lits = c.literals().to_vec();
                lits.push(Literal::new(var(extra.0), extra.1));
                clauses.push(Clause::new(lits).unwrap());
            }
        }
        let g = Cnf::new(f.num_vars(), clauses).unwrap();
        let d = Obdd::compile(&f, &order).unwrap();
        let e = Obdd::compile(&g, &order).unwrap();
        prop_assert!(d.equivalent(&e).unwrap());
        prop_assert_eq!(d.total_count(), e.total_count());
        prop_assert_eq!(d.layer_sizes(), e.layer_sizes());
    }

    #[test]
    fn entailment_matches_truth_table((f, order, partial) in cnf_and_order(7).prop_flat_map(|(f, o)| {
        let n = f.num_vars();
        (Just(f), Just(o), partial_strategy(n))
    })) {
        let s = to_assignment(&partial);
        let d = Obdd::compile(&f, &order).unwrap();
        let all = vars(f.num_vars());
        let full = f.truth_table(&all).unwrap();
        let oracle = (0..full.len()).any(|i| {
            full.get(i) && partial.iter().enumerate().all(|(j, v)| v.is_none_or(|b| (i >> j & 1 == 1) == b))
        });
        prop_assert_eq!(d.clausal_entailment(&s).unwrap(), oracle);
    }

    #[test]
    fn layers_bounded_by_subfunction_counts((f, order) in cnf_and_order(7)) {
        let caps = Caps::default();
        let d = Obdd::compile(&f, &order).unwrap();
        let u = Obdd::compile_uniform(&f, &order).unwrap();
        let n = f.num_vars();
        let counts: Vec<usize> = (0..=n).map(|i| count_subfunctions(&f, &order, i, &caps).unwrap()).collect();
        for (i, (&reduced, &uniform)) in d.layer_sizes().iter().zip(&u.layer_sizes()).enumerate() {
            prop_assert!(reduced <= counts[i]);
            prop_assert_eq!(uniform, counts[i]);
        }
        prop_assert!(d.total_count() >= *counts.iter().max().unwrap());
    }

    #[test]
    fn cut_matching_is_symmetric((g, mask) in graph_strategy(10).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })) {
        let inside: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask[v]).collect();
        let outside: Vec<usize> = (0..g.vertex_count()).filter(|&v| !mask[v]).collect();
        let a = cut_matching(&g, &inside).unwrap();
        let b = cut_matching(&g, &outside).unwrap();
        prop_assert_eq!(a.size, b.size);
        prop_assert_eq!(a.matching.len(), a.size);
        for &(u, w) in &a.matching {
            prop_assert!(g.has_edge(u, w) && mask[u] && !mask[w]);
        }
    }

    #[test]
    fn matching_width_monotone_under_subgraphs((g, drop) in graph_strategy(10).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), 0..n)
    })) {
        let caps = Caps::default();
        let mw = matching_width_exact(&g, &caps).unwrap().value;
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != drop).collect();
        let induced = g.induced_subgraph(&keep);
        prop_assert!(matching_width_exact(&induced, &caps).unwrap().value <= mw);
        if let Some(&(u, v)) = g.edges().first() {
            let fewer: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&e| e != (u, v)).collect();
            let h = Graph::from_edges(g.vertex_count(), &fewer).unwrap();
            prop_assert!(matching_width_exact(&h, &caps).unwrap().value <= mw);
        }
    }

    #[test]
    fn decomposition_mutations_are_rejected((g, victim) in graph_strategy(8).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), 0..n)
    })) {
        let td = min_fill(&g);
        let width = validate(&g, &td).unwrap();
        prop_assert_eq!(width + 1, td.bags.iter().map(Vec::len).max().unwrap());

        let mut missing = td.clone();
        for bag in &mut missing.bags {
            bag.retain(|&v| v != victim);
        }
        prop_assert!(validate(&g, &missing).is_err());

        let mut foreign = td.clone();
        foreign.bags[0].push(g.vertex_count());
        prop_assert!(validate(&g, &foreign).is_err());

        if td.tree.edge_count() > 0 {
            let edges: Vec<(usize, usize)> = td.tree.edges()[1..].to_vec();
            let mut cut = td.clone();
            cut.tree = Graph::from_edges(td.bags.len(), &edges).unwrap();
            prop_assert!(validate(&g, &cut).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn matching_width_dp_matches_brute_force(g in graph_strategy(8)) {
        let n = g.vertex_count();
        let brute = (0..n)
            .permutations(n)
            .map(|p| permutation_matching_width(&g, &p).unwrap())
            .min()
            .unwrap();
        let exact = matching_width_exact(&g, &Caps::default()).unwrap();
        prop_assert_eq!(exact.value, brute);
        prop_assert_eq!(permutation_matching_width(&g, &exact.witness_order).unwrap(), brute);
    }

    #[test]
    fn combined_width_dp_matches_brute_force(f in cnf_strategy(8, 0..10)) {
        let n = f.num_vars();
        let brute = vars(n)
            .into_iter()
            .permutations(n)
            .map(|p| combined_width_of_order(&f, &VariableOrder::new(p, Provenance::Explicit)).unwrap())
            .min()
            .unwrap();
        let exact = combined_width_exact(&f, &Caps::default()).unwrap();
        prop_assert_eq!(exact.value, brute);
        prop_assert_eq!(combined_width_of_order(&f, &exact.witness_order).unwrap(), brute);
    }
}
