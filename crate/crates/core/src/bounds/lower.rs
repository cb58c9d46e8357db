use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BoundReport, Repro};
use crate::caps::Caps;
use crate::cnf::Var;
use crate::decomposition::{
    explicit_cliquetree_decomposition, incidence_from_primal, min_fill, ordering_respecting_f, tree_to_path, PathEnd,
    Provenance, VariableOrder,
};
use crate::error::Result;
use crate::graph::{clique_tree_cnf, GraphCnf};
use crate::matching::matching_width_exact;
use crate::obdd::{fooling_set, min_obdd_size_exact, verify_fooling_set, Obdd};

/// Random orders sampled per instance in per-order mode.
pub const DEFAULT_RANDOM_ORDERS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMode {
    Exact,
    PerOrder,
}

/// `⌈2^{rk/2}⌉`.
fn required_size(r: usize, k: usize) -> usize {
    let rk = r * k;
    if rk.is_multiple_of(2) {
        1 << (rk / 2)
    } else {
        (2f64.powf(rk as f64 / 2.0)).ceil() as usize
    }
}

/// `random` seeded random orders followed by the orders respecting the
/// path decompositions obtained from the explicit clique-tree
/// decomposition and from min-fill, read from both ends.
pub fn per_order_orders(gc: &GraphCnf, r: usize, k: usize, random: usize, seed: u64) -> Result<Vec<VariableOrder>> {
    let n = gc.cnf.num_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders = Vec::with_capacity(random + 4);
    for _ in 0..random {
        let mut o: Vec<Var> = (0..n).map(Var::from_slot).collect();
        o.shuffle(&mut rng);
        orders.push(VariableOrder::new(o, Provenance::Explicit));
    }
    let inc = gc.cnf.incidence_graph();
    let explicit = incidence_from_primal(&explicit_cliquetree_decomposition(r, k), &gc.cnf)?;
    let heuristic = min_fill(&inc.graph);
    for td in [explicit, heuristic] {
        let pd = tree_to_path(&td, &inc.graph)?;
        for end in [PathEnd::First, PathEnd::Last] {
            let o = ordering_respecting_f(&pd, &inc, end)?;
            if !orders.contains(&o) {
                orders.push(o);
            }
        }
    }
    Ok(orders)
}

/// Lower bound `2^{rk/2}` for `F_{r,k}`.
///
/// Exact mode compares the minimum OBDD size over all orders with
/// `⌈2^{rk/2}⌉` and with `2^{mw}`. Per-order mode builds the fooling set
/// of every order from [`per_order_orders`], checks that its restrictions
/// are pairwise distinct and that the compiled diagram has at least `2^t`
/// internal nodes.
pub fn verify_lower_bound(
    r: usize,
    k: usize,
    mode: LowerMode,
    random: usize,
    caps: &Caps,
    seed: u64,
) -> Result<BoundReport> {
    let (ct, gc) = clique_tree_cnf(r, k);
    let f = &gc.cnf;
    let mut report = BoundReport::new(format!("F_{{{r},{k}}}"), "lower", Repro::new(seed, *caps));
    report.params.r = Some(r);
    report.params.k = Some(k);
    report.params.n = Some(f.num_vars());
    report.params.m = Some(f.num_clauses());
    let required = required_size(r, k);
    let half = (r * k).div_ceil(2);
    report.measure("required_internal", required);
    report.measure("rk_half_ceil", half);

    match mode {
        LowerMode::Exact => {
            report.measure("mode", "exact");
            let min = min_obdd_size_exact(f, caps)?;
            report.measure("min_internal", min.internal);
            report.measure("min_size", min.size);
            report.measure(
                "best_order",
                min.best_order.order.iter().map(|v| v.index()).collect::<Vec<_>>(),
            );
            report.check(
                "min internal >= 2^(rk/2)",
                min.internal >= required,
                format!("{} >= {required}", min.internal),
            );
            let witness = Obdd::compile_with_caps(f, &min.best_order, caps, false)?;
            report.check(
                "witness order attains the minimum",
                witness.internal_count() == min.internal,
                format!("{} == {}", witness.internal_count(), min.internal),
            );
            if ct.graph.vertex_count() <= caps.subset_dp {
                let mw = matching_width_exact(&ct.graph, caps)?.value;
                report.measure("mw", mw);
                report.check("mw >= ceil(rk/2)", mw >= half, format!("{mw} >= {half}"));
                if mw >= 1 {
                    report.check(
                        "min internal >= 2^mw",
                        min.internal >= 1 << mw,
                        format!("{} >= {}", min.internal, 1usize << mw),
                    );
                }
            }
        }
        LowerMode::PerOrder => {
            report.measure("mode", "per-order");
            let orders = per_order_orders(&gc, r, k, random, seed)?;
            let total = orders.len();
            let (mut distinct, mut big_enough, mut t_ok) = (0, 0, 0);
            let mut failures = Vec::new();
            let mut smallest_t = usize::MAX;
            for (i, o) in orders.iter().enumerate() {
                let fs = fooling_set(&gc, &ct.graph, o, caps)?;
                let t = fs.t();
                smallest_t = smallest_t.min(t);
                let ok = verify_fooling_set(&fs, f, caps)?;
                let d = Obdd::compile_with_caps(f, o, caps, false)?;
                let size_ok = t == 0 || d.internal_count() >= 1 << t;
                distinct += usize::from(ok);
                big_enough += usize::from(size_ok);
                t_ok += usize::from(t >= half);
                if !(ok && size_ok && t >= half) {
                    failures.push(format!(
                        "order #{i} ({:?}): t={t}, internal={}",
                        o.provenance,
                        d.internal_count()
                    ));
                }
            }
            report.measure("orders", total);
            report.measure("smallest_t", if total == 0 { 0 } else { smallest_t });
            report.check(
                "fooling restrictions pairwise distinct",
                distinct == total,
                format!("{distinct}/{total} orders"),
            );
            report.check(
                "internal >= 2^t",
                big_enough == total,
                format!("{big_enough}/{total} orders"),
            );
            report.check("t >= ceil(rk/2)", t_ok == total, format!("{t_ok}/{total} orders"));
            for f in failures {
                report.warn(f);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_sizes() {
        assert_eq!(required_size(1, 1), 2);
        assert_eq!(required_size(2, 1), 2);
        assert_eq!(required_size(2, 2), 4);
        assert_eq!(required_size(3, 1), 3);
        assert_eq!(required_size(0, 5), 1);
    }

    #[test]
    fn exact_f11() {
        let r = verify_lower_bound(1, 1, LowerMode::Exact, 0, &Caps::default(), 0).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn per_order_f11() {
        let r = verify_lower_bound(1, 1, LowerMode::PerOrder, 20, &Caps::default(), 5).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.measured["orders"].as_u64().unwrap() >= 21);
    }

    #[test]
    fn exact_refuses_above_cap() {
        let caps = Caps {
            exact_order: 4,
            ..Caps::default()
        };
        assert!(verify_lower_bound(1, 1, LowerMode::Exact, 0, &caps, 0).is_err());
    }
}
