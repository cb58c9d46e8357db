use serde::{Deserialize, Serialize};

use super::{BoundReport, Repro};
use crate::caps::Caps;
use crate::cnf::{Cnf, Var};
use crate::decomposition::{
    first_bag_of_vars, min_fill, ordering_respecting_f, tree_to_path, validate, PathDecomposition, PathEnd,
    VariableOrder,
};
use crate::error::Result;
use crate::obdd::{count_subfunctions, Obdd};

/// Above this many variables the per-prefix subfunction count by explicit
/// enumeration is skipped; the uniform layer sizes still give the count.
pub const INDEPENDENT_COUNT_LIMIT: usize = 16;

/// Clause classes for the prefix ending at a variable `X` with first bag
/// `q`: clauses only in bags before `q`, clauses in bag `q`, clauses only
/// in bags after `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixPartition {
    pub prefix: Vec<Var>,
    pub bag: usize,
    pub past: Vec<usize>,
    pub current: Vec<usize>,
    pub future: Vec<usize>,
    /// Clauses landing in more than one class; empty for a valid decomposition.
    pub overlapping: Vec<usize>,
    /// `|current|`.
    pub t1: usize,
    /// Prefix variables occurring in `future` clauses.
    pub t2: usize,
}

/// Partition of the clauses of `f` for the first `len ≥ 1` variables of
/// `order`, relative to the incidence-graph path decomposition `pd`.
pub fn prefix_partition(f: &Cnf, pd: &PathDecomposition, order: &VariableOrder, len: usize) -> PrefixPartition {
    let n = f.num_vars();
    let first = first_bag_of_vars(pd, n);
    let prefix = order.order[..len].to_vec();
    let q = first[prefix[len - 1].slot()];
    let (mut past, mut current, mut future, mut overlapping) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for j in 0..f.num_clauses() {
        let vertex = n + j;
        let mut before = false;
        let mut at = false;
        let mut after = false;
        for (i, bag) in pd.bags.iter().enumerate() {
            if bag.binary_search(&vertex).is_ok() {
                match i.cmp(&q) {
                    std::cmp::Ordering::Less => before = true,
                    std::cmp::Ordering::Equal => at = true,
                    std::cmp::Ordering::Greater => after = true,
                }
            }
        }
        let classes = usize::from(before && !at) + usize::from(at) + usize::from(after && !at);
        if classes != 1 {
            overlapping.push(j);
        }
        if at {
            current.push(j);
        } else if before {
            past.push(j);
        }
        if after && !at {
            future.push(j);
        }
    }
    let future_vars: std::collections::BTreeSet<Var> = future.iter().flat_map(|&j| f.clauses()[j].vars()).collect();
    let t2 = prefix.iter().filter(|v| future_vars.contains(v)).count();
    PrefixPartition {
        prefix,
        bag: q,
        t1: current.len(),
        t2,
        past,
        current,
        future,
        overlapping,
    }
}

/// Compiles `f` under the order respecting a path decomposition of its
/// incidence graph and checks the per-layer bound `1 + 2^{p+1}` and the
/// total bound `(1 + 2^{p+1})·n + 2`.
///
/// Without `pd`, min-fill on the incidence graph followed by
/// [`tree_to_path`] supplies one.
pub fn verify_upper_bound(
    instance: &str,
    f: &Cnf,
    pd: Option<&PathDecomposition>,
    end: PathEnd,
    caps: &Caps,
    seed: u64,
) -> Result<BoundReport> {
    let mut report = BoundReport::new(instance, "upper", Repro::new(seed, *caps));
    let inc = f.incidence_graph();
    let pd = match pd {
        Some(pd) => pd.clone(),
        None => tree_to_path(&min_fill(&inc.graph), &inc.graph)?,
    };
    // Enumerate bags from the chosen end so that bag indices below match f.
    let pd = match end {
        PathEnd::First => pd,
        PathEnd::Last => PathDecomposition::new(pd.bags.into_iter().rev().collect()),
    };
    let p = validate(&inc.graph, &pd)?;
    let order = ordering_respecting_f(&pd, &inc, PathEnd::First)?;
    let n = f.num_vars();
    let layer_bound = 1 + (1usize << (p + 1));
    let total_bound = layer_bound * n + 2;
    report.params.p = Some(p);
    report.params.n = Some(n);
    report.params.m = Some(f.num_clauses());

    let uniform = Obdd::compile_with_caps(f, &order, caps, true)?;
    let reduced = uniform.reduced();
    let layers = uniform.layer_sizes();
    report.measure("order", order.order.iter().map(|v| v.index()).collect::<Vec<_>>());
    report.measure("layer_sizes", layers.clone());
    report.measure("layer_bound", layer_bound);
    report.measure("uniform_total", uniform.total_count());
    report.measure("reduced_total", reduced.total_count());
    report.measure("reduced_internal", reduced.internal_count());
    report.measure("total_bound", total_bound);

    let worst = layers.iter().copied().max().unwrap_or(0);
    report.check(
        "layers within 1+2^(p+1)",
        worst <= layer_bound,
        format!("largest layer {worst}, bound {layer_bound}"),
    );
    report.check(
        "uniform size within (1+2^(p+1))n+2",
        uniform.total_count() <= total_bound,
        format!("{} <= {total_bound}", uniform.total_count()),
    );
    report.check(
        "reduced no larger than uniform",
        reduced.total_count() <= uniform.total_count(),
        format!("{} <= {}", reduced.total_count(), uniform.total_count()),
    );

    let mut partition_ok = true;
    let mut t_ok = true;
    let mut decided_ok = true;
    let mut counts = Vec::with_capacity(n);
    let positions = order.positions();
    for len in 1..=n {
        let part = prefix_partition(f, &pd, &order, len);
        partition_ok &= part.overlapping.is_empty();
        t_ok &= part.t1 + part.t2 <= p + 1;
        decided_ok &= part
            .past
            .iter()
            .all(|&j| f.clauses()[j].vars().all(|v| positions[v.slot()] < len));
        if n <= INDEPENDENT_COUNT_LIMIT {
            counts.push(count_subfunctions(f, &order, len, caps)?);
        }
    }
    report.check("FP, FC, FF partition the clauses", partition_ok, "every prefix");
    report.check("t1 + t2 <= p + 1", t_ok, "every prefix");
    report.check("FP clauses decided by the prefix", decided_ok, "every prefix");
    if n <= INDEPENDENT_COUNT_LIMIT {
        let worst = counts.iter().copied().max().unwrap_or(1);
        report.check(
            "subfunction count within 1+2^(p+1)",
            worst <= layer_bound,
            format!("largest count {worst}, bound {layer_bound}"),
        );
        // Level `len` of the uniform diagram holds the subfunctions of the
        // length-`len` prefix; the full prefix leaves only the terminals.
        let matches = layers.iter().skip(1).zip(&counts).all(|(a, b)| a == b)
            && counts.last().is_none_or(|&c| c == uniform.terminal_count());
        report.check(
            "uniform layers equal subfunction counts",
            matches,
            format!("{counts:?}"),
        );
        report.measure("subfunction_counts", counts);
    } else {
        report.warn(format!(
            "{n} variables: per-prefix enumeration skipped, uniform layer sizes used as counts"
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{explicit_cliquetree_decomposition, incidence_from_primal};
    use crate::graph::clique_tree_cnf;

    #[test]
    fn fig1_natural_decomposition() {
        let f = Cnf::from_dimacs_clauses(4, &[&[1, 2], &[3, 4]]).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 4], vec![2, 3, 5]]);
        let r = verify_upper_bound("fig1", &f, Some(&pd), PathEnd::First, &Caps::default(), 0).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.params.p, Some(2));
        assert_eq!(r.measured["layer_bound"], 9);
    }

    #[test]
    fn single_wide_clause() {
        let f = Cnf::from_dimacs_clauses(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap();
        let pd = PathDecomposition::new((0..6).map(|v| vec![v, 6]).collect());
        let r = verify_upper_bound("clause", &f, Some(&pd), PathEnd::First, &Caps::default(), 0).unwrap();
        assert!(r.pass());
        assert_eq!(r.measured["layer_bound"], 5);
    }

    #[test]
    fn f11_through_tree_to_path() {
        let (_, gc) = clique_tree_cnf(1, 1);
        let td = incidence_from_primal(&explicit_cliquetree_decomposition(1, 1), &gc.cnf).unwrap();
        let inc = gc.cnf.incidence_graph();
        let pd = tree_to_path(&td, &inc.graph).unwrap();
        for end in [PathEnd::First, PathEnd::Last] {
            let r = verify_upper_bound("F11", &gc.cnf, Some(&pd), end, &Caps::default(), 0).unwrap();
            assert!(r.pass(), "{r:?}");
        }
        let r = verify_upper_bound("F11", &gc.cnf, None, PathEnd::First, &Caps::default(), 0).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn partition_of_fig1() {
        let f = Cnf::from_dimacs_clauses(4, &[&[1, 2], &[3, 4]]).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 4], vec![2, 3, 5]]);
        let o = VariableOrder::natural(4);
        let part = prefix_partition(&f, &pd, &o, 3);
        assert_eq!(
            (part.past.clone(), part.current.clone(), part.future.clone()),
            (vec![0], vec![1], vec![])
        );
        assert_eq!((part.t1, part.t2), (1, 0));
        let part = prefix_partition(&f, &pd, &o, 1);
        assert_eq!((part.current.clone(), part.future.clone()), (vec![0], vec![1]));
    }
}
