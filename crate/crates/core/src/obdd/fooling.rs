use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Obdd, ObddError};
use crate::caps::Caps;
use crate::cnf::{Assignment, Cnf, Var};
use crate::decomposition::VariableOrder;
use crate::graph::{Graph, GraphCnf};
use crate::matching::worst_prefix;

/// `2^t` assignments to a prefix `SF_1` of a variable order of `CNF(G)`
/// that differ only on `X_{u_1} .. X_{u_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoolingSet {
    pub prefix: Vec<Var>,
    pub assignments: Vec<Assignment>,
    /// Matching edges `(u_i, v_i)` with `u_i` inside the vertex prefix.
    pub matching: Vec<(usize, usize)>,
}

impl FoolingSet {
    pub fn t(&self) -> usize {
        self.matching.len()
    }
}

/// Builds the fooling set for `order`.
///
/// The vertex variables of `order` induce a vertex order; its shortest
/// prefix attaining the order's matching width `t` yields a matching
/// `{u_i, v_i}`. The prefix `SF_1` of `order` ends at the last vertex
/// variable of that prefix. In every assignment `X_{u_i}` carries bit `i`,
/// the `X_{u_i,v_i}` inside `SF_1` are false and everything else is true.
pub fn fooling_set(gc: &GraphCnf, g: &Graph, order: &VariableOrder, caps: &Caps) -> Result<FoolingSet, ObddError> {
    let n = gc.cnf.num_vars();
    if !order.is_permutation_of(n) {
        return Err(ObddError::NotAPermutation { expected: n });
    }
    let vertex_order: Vec<usize> = order.order.iter().filter_map(|&v| gc.vertex_of_var(v)).collect();
    let cut = worst_prefix(g, &vertex_order)?;
    let t = cut.size;
    if t > caps.oracle {
        return Err(ObddError::CapExceeded {
            vars: t,
            cap: caps.oracle,
        });
    }
    let end = match cut.prefix.len() {
        0 => 0,
        len => {
            let last = gc.vertex_var[vertex_order[len - 1]];
            order
                .order
                .iter()
                .position(|&v| v == last)
                .expect("vertex variable in order")
                + 1
        }
    };
    let prefix = order.order[..end].to_vec();
    let u_vars: Vec<Var> = cut.matching.iter().map(|&(u, _)| gc.vertex_var[u]).collect();
    let matched_edges: Vec<Var> = cut
        .matching
        .iter()
        .map(|&(u, v)| gc.edge_var_of(u, v).expect("matching edge"))
        .collect();

    let mut assignments = Vec::with_capacity(1 << t);
    for bits in 0..1u64 << t {
        let mut a = Assignment::new();
        for &var in &prefix {
            let value = if let Some(i) = u_vars.iter().position(|&u| u == var) {
                bits >> i & 1 == 1
            } else {
                !matched_edges.contains(&var)
            };
            a.bind(var, value)?;
        }
        assignments.push(a);
    }
    Ok(FoolingSet {
        prefix,
        assignments,
        matching: cut.matching,
    })
}

/// True when the restrictions of `f` by the assignments are pairwise
/// distinct functions.
///
/// Compares truth tables over the free variables when they fit the oracle
/// cap, and canonical reduced diagrams under the natural order otherwise.
pub fn verify_fooling_set(fs: &FoolingSet, f: &Cnf, caps: &Caps) -> Result<bool, ObddError> {
    let residual: Vec<Var> = f.vars().filter(|v| !fs.prefix.contains(v)).collect();
    if residual.len() <= caps.oracle {
        let mut seen = HashSet::new();
        for a in &fs.assignments {
            if !seen.insert(f.restrict(a)?.truth_table_with_cap(&residual, caps.oracle)?) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let order = VariableOrder::natural(f.num_vars());
    let mut seen = HashSet::new();
    for a in &fs.assignments {
        let d = Obdd::compile_with_caps(&f.restrict(a)?, &order, caps, false)?;
        if !seen.insert(d.signature()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::Provenance;
    use crate::graph::{clique_tree, clique_tree_cnf, cnf_of_graph, path_graph};
    use crate::obdd::Obdd;

    #[test]
    fn k2_fooling_set() {
        let g = Graph::complete(2);
        let gc = cnf_of_graph(&g);
        let caps = Caps::default();
        let fs = fooling_set(&gc, &g, &VariableOrder::natural(3), &caps).unwrap();
        assert_eq!(fs.t(), 1);
        assert_eq!(fs.assignments.len(), 2);
        assert_eq!(fs.prefix, vec![Var::from_slot(0)]);
        assert!(verify_fooling_set(&fs, &gc.cnf, &caps).unwrap());
    }

    #[test]
    fn path10_alternating_order() {
        let g = path_graph(10);
        let gc = cnf_of_graph(&g);
        let mut order: Vec<Var> = [0, 2, 4, 6, 8, 1, 3, 5, 7, 9]
            .iter()
            .map(|&v| gc.vertex_var[v])
            .collect();
        order.extend(gc.edge_var.iter().copied());
        let o = VariableOrder::new(order, Provenance::Explicit);
        let caps = Caps::default();
        let fs = fooling_set(&gc, &g, &o, &caps).unwrap();
        assert_eq!(fs.t(), 5);
        assert_eq!(fs.assignments.len(), 32);
        assert!(verify_fooling_set(&fs, &gc.cnf, &caps).unwrap());
    }

    #[test]
    fn clique_tree_orders() {
        let caps = Caps::default();
        let ct = clique_tree(1, 1);
        let gc = cnf_of_graph(&ct.graph);
        let mut o = VariableOrder::natural(5);
        o.order.reverse();
        let fs = fooling_set(&gc, &ct.graph, &o, &caps).unwrap();
        assert_eq!(fs.assignments.len(), 2);

        let (ct, gc) = clique_tree_cnf(1, 2);
        let o = VariableOrder::natural(gc.cnf.num_vars());
        let fs = fooling_set(&gc, &ct.graph, &o, &caps).unwrap();
        assert!(verify_fooling_set(&fs, &gc.cnf, &caps).unwrap());
        let d = Obdd::compile(&gc.cnf, &o).unwrap();
        assert!(d.internal_count() >= fs.assignments.len());
    }

    #[test]
    fn duplicated_assignment_is_rejected() {
        let g = Graph::complete(2);
        let gc = cnf_of_graph(&g);
        let caps = Caps::default();
        let mut fs = fooling_set(&gc, &g, &VariableOrder::natural(3), &caps).unwrap();
        fs.assignments[1] = fs.assignments[0].clone();
        assert!(!verify_fooling_set(&fs, &gc.cnf, &caps).unwrap());
    }

    #[test]
    fn diagram_comparison_agrees_with_truth_tables() {
        let (ct, gc) = clique_tree_cnf(2, 1);
        let small = Caps {
            oracle: 2,
            ..Caps::default()
        };
        let n = gc.cnf.num_vars();
        let mut orders = vec![VariableOrder::natural(n)];
        let mut rev = VariableOrder::natural(n);
        rev.order.reverse();
        orders.push(rev);
        for o in &orders {
            let mut fs = fooling_set(&gc, &ct.graph, o, &Caps::default()).unwrap();
            let by_table = verify_fooling_set(&fs, &gc.cnf, &Caps::default()).unwrap();
            assert!(by_table);
            assert_eq!(verify_fooling_set(&fs, &gc.cnf, &small).unwrap(), by_table);
            fs.assignments[1] = fs.assignments[0].clone();
            assert!(!verify_fooling_set(&fs, &gc.cnf, &small).unwrap());
        }
    }
}
