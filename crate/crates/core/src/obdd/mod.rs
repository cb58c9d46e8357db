//! Ordered binary decision diagrams compiled from CNFs.

mod fooling;
mod subfunctions;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::Caps;
use crate::cnf::{Assignment, Cnf, CnfError, Var};
use crate::decomposition::VariableOrder;
use crate::matching::MatchingError;

pub use fooling::{fooling_set, verify_fooling_set, FoolingSet};
pub use subfunctions::{count_subfunctions, min_obdd_size_exact, MinSize};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObddError {
    #[error("order is not a permutation of the {expected} variables")]
    NotAPermutation { expected: usize },
    #[error("diagrams use different variable orders")]
    OrderMismatch,
    #[error("variable {0} is not tested by the diagram")]
    UnknownVariable(Var),
    #[error("variable {0} is tested but unassigned")]
    Unbound(Var),
    #[error("{vars} variables exceed the cap of {cap}")]
    CapExceeded { vars: usize, cap: usize },
    #[error("compilation exceeded the cap of {cap} nodes")]
    NodeLimit { cap: usize },
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

pub type NodeId = usize;

/// Id of the false terminal.
pub const FALSE: NodeId = 0;
/// Id of the true terminal.
pub const TRUE: NodeId = 1;

/// An internal node testing `order[level]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub level: usize,
    pub low: NodeId,
    pub high: NodeId,
}

/// An OBDD over a fixed order. Ids `0` and `1` are the terminals.
#[derive(Clone, Debug)]
pub struct Obdd {
    order: VariableOrder,
    labels: Vec<String>,
    nodes: Vec<Node>,
    root: NodeId,
    uniform: bool,
}

/// Nodes visited from the root and the assignment `A(P)` read off their
/// edges; the last node contributes no binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputationPath {
    pub nodes: Vec<NodeId>,
    pub assignment: Assignment,
}

struct Builder {
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeId>,
    reduce: bool,
    limit: usize,
}

impl Builder {
    fn new(levels: usize, reduce: bool, limit: usize) -> Builder {
        let terminal = Node {
            level: levels,
            low: 0,
            high: 0,
        };
        Builder {
            nodes: vec![
                terminal,
                Node {
                    high: 1,
                    low: 1,
                    ..terminal
                },
            ],
            unique: HashMap::new(),
            reduce,
            limit,
        }
    }

    fn mk(&mut self, level: usize, low: NodeId, high: NodeId) -> Result<NodeId, ObddError> {
        if self.reduce && low == high {
            return Ok(low);
        }
        let node = Node { level, low, high };
        if let Some(&id) = self.unique.get(&node) {
            return Ok(id);
        }
        if self.nodes.len() >= self.limit + 2 {
            return Err(ObddError::NodeLimit { cap: self.limit });
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.unique.insert(node, id);
        Ok(id)
    }

    /// Disjunction of `(level, positive)` literals, tested top-down.
    fn clause(&mut self, lits: &[(usize, bool)]) -> Result<NodeId, ObddError> {
        let mut acc = FALSE;
        for &(level, positive) in lits.iter().rev() {
            acc = if positive {
                self.mk(level, acc, TRUE)?
            } else {
                self.mk(level, TRUE, acc)?
            };
        }
        Ok(acc)
    }

    fn and(
        &mut self,
        a: NodeId,
        b: NodeId,
        cache: &mut HashMap<(NodeId, NodeId), NodeId>,
    ) -> Result<NodeId, ObddError> {
        if a == FALSE || b == FALSE {
            return Ok(FALSE);
        }
        if a == TRUE || a == b {
            return Ok(b);
        }
        if b == TRUE {
            return Ok(a);
        }
        let key = (a.min(b), a.max(b));
        if let Some(&id) = cache.get(&key) {
            return Ok(id);
        }
        let (na, nb) = (self.nodes[a], self.nodes[b]);
        let top = na.level.min(nb.level);
        let (a0, a1) = if na.level == top { (na.low, na.high) } else { (a, a) };
        let (b0, b1) = if nb.level == top { (nb.low, nb.high) } else { (b, b) };
        let low = self.and(a0, b0, cache)?;
        let high = self.and(a1, b1, cache)?;
        let id = self.mk(top, low, high)?;
        cache.insert(key, id);
        Ok(id)
    }

    /// Copies the nodes reachable from `root` into `into`.
    fn copy_reachable(&self, root: NodeId, into: &mut Builder) -> Result<NodeId, ObddError> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        let mut ids = Vec::new();
        while let Some(id) = stack.pop() {
            if id <= TRUE || std::mem::replace(&mut seen[id], true) {
                continue;
            }
            ids.push(id);
            stack.push(self.nodes[id].low);
            stack.push(self.nodes[id].high);
        }
        ids.sort_by_key(|&id| std::cmp::Reverse(self.nodes[id].level));
        let mut map: HashMap<NodeId, NodeId> = HashMap::from([(FALSE, FALSE), (TRUE, TRUE)]);
        for id in ids {
            let n = self.nodes[id];
            let copy = into.mk(n.level, map[&n.low], map[&n.high])?;
            map.insert(id, copy);
        }
        Ok(map[&root])
    }
}

impl Obdd {
    /// Reduced OBDD of `f` under `order`.
    pub fn compile(f: &Cnf, order: &VariableOrder) -> Result<Obdd, ObddError> {
        Obdd::build(f, order, &Caps::default(), true)
    }

    /// OBDD in which every root-to-terminal path tests all variables.
    pub fn compile_uniform(f: &Cnf, order: &VariableOrder) -> Result<Obdd, ObddError> {
        Obdd::build(f, order, &Caps::default(), false)
    }

    pub fn compile_with_caps(f: &Cnf, order: &VariableOrder, caps: &Caps, uniform: bool) -> Result<Obdd, ObddError> {
        Obdd::build(f, order, caps, !uniform)
    }

    /// Conjoins one diagram per clause, deepest clauses first. Hash-consing
    /// keeps every intermediate result reduced, so the outcome is the
    /// canonical diagram of `f` under `order`.
    fn build(f: &Cnf, order: &VariableOrder, caps: &Caps, reduce: bool) -> Result<Obdd, ObddError> {
        let n = f.num_vars();
        if !order.is_permutation_of(n) {
            return Err(ObddError::NotAPermutation { expected: n });
        }
        let position = order.positions();
        let mut clauses: Vec<Vec<(usize, bool)>> = f
            .clauses()
            .iter()
            .map(|c| {
                let mut lits: Vec<(usize, bool)> = c
                    .literals()
                    .iter()
                    .map(|l| (position[l.var().slot()], l.is_positive()))
                    .collect();
                lits.sort_unstable();
                lits
            })
            .collect();
        clauses.sort_by_key(|c| std::cmp::Reverse(c.first().map_or(n, |&(level, _)| level)));

        let mut b = Builder::new(n, true, caps.obdd_nodes);
        let mut root = TRUE;
        let mut cache = HashMap::new();
        for lits in &clauses {
            let c = b.clause(lits)?;
            cache.clear();
            root = b.and(root, c, &mut cache)?;
            if root == FALSE {
                break;
            }
        }
        let mut compact = Builder::new(n, true, caps.obdd_nodes);
        let root = b.copy_reachable(root, &mut compact)?;
        let reduced = Obdd {
            order: order.clone(),
            labels: order.order.iter().map(|&v| f.name(v)).collect(),
            nodes: compact.nodes,
            root,
            uniform: false,
        };
        if reduce {
            Ok(reduced)
        } else {
            reduced.quasi_reduced(caps.obdd_nodes)
        }
    }

    /// The same function with every level tested on every path: level `i`
    /// holds one node per distinct subfunction after the first `i` variables.
    fn quasi_reduced(&self, limit: usize) -> Result<Obdd, ObddError> {
        let n = self.order.len();
        let mut b = Builder::new(n, false, limit);
        let mut memo: HashMap<(NodeId, usize), NodeId> = HashMap::new();
        // Explicit stack: (function, level, children ready).
        let mut stack = vec![(self.root, 0, false)];
        while let Some((id, level, ready)) = stack.pop() {
            if level == n || memo.contains_key(&(id, level)) {
                continue;
            }
            let node = self.nodes[id];
            let (low, high) = if node.level == level {
                (node.low, node.high)
            } else {
                (id, id)
            };
            let child = |c: NodeId, memo: &HashMap<(NodeId, usize), NodeId>| {
                if level + 1 == n {
                    Some(c)
                } else {
                    memo.get(&(c, level + 1)).copied()
                }
            };
            if ready {
                let (l, h) = (
                    child(low, &memo).expect("child built"),
                    child(high, &memo).expect("child built"),
                );
                let id_new = b.mk(level, l, h)?;
                memo.insert((id, level), id_new);
            } else {
                stack.push((id, level, true));
                stack.push((low, level + 1, false));
                stack.push((high, level + 1, false));
            }
        }
        let root = if n == 0 { self.root } else { memo[&(self.root, 0)] };
        Ok(Obdd {
            order: self.order.clone(),
            labels: self.labels.clone(),
            nodes: b.nodes,
            root,
            uniform: true,
        })
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn is_terminal(&self, id: NodeId) -> bool {
        id <= TRUE
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    /// Variable tested at `id`; `None` for terminals.
    pub fn var_of(&self, id: NodeId) -> Option<Var> {
        (!self.is_terminal(id)).then(|| self.order.order[self.nodes[id].level])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id], true) {
                continue;
            }
            if !self.is_terminal(id) {
                stack.push(self.nodes[id].low);
                stack.push(self.nodes[id].high);
            }
        }
        seen
    }

    /// Internal nodes, grouped by level.
    pub fn layers(&self) -> Vec<Vec<NodeId>> {
        let seen = self.reachable();
        let mut layers = vec![Vec::new(); self.order.len()];
        for id in 2..self.nodes.len() {
            if seen[id] {
                layers[self.nodes[id].level].push(id);
            }
        }
        layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers().iter().map(Vec::len).collect()
    }

    pub fn internal_count(&self) -> usize {
        self.reachable()[2..].iter().filter(|&&s| s).count()
    }

    pub fn terminal_count(&self) -> usize {
        let seen = self.reachable();
        usize::from(seen[FALSE]) + usize::from(seen[TRUE])
    }

    /// Internal nodes plus reachable terminals.
    pub fn total_count(&self) -> usize {
        self.internal_count() + self.terminal_count()
    }

    fn level_of(&self, var: Var) -> Option<usize> {
        self.order.order.iter().position(|&v| v == var)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, ObddError> {
        let path = self.path(a)?;
        let last = *path.nodes.last().expect("path has a node");
        match self.var_of(last) {
            None => Ok(last == TRUE),
            Some(var) => Err(ObddError::Unbound(var)),
        }
    }

    /// Follows `a` from the root until a terminal or an unbound variable.
    pub fn path(&self, a: &Assignment) -> Result<ComputationPath, ObddError> {
        for var in a.vars() {
            if self.level_of(var).is_none() {
                return Err(ObddError::UnknownVariable(var));
            }
        }
        let mut nodes = vec![self.root];
        let mut assignment = Assignment::new();
        let mut id = self.root;
        while let Some(var) = self.var_of(id) {
            let Some(value) = a.get(var) else { break };
            assignment.bind(var, value)?;
            id = if value { self.nodes[id].high } else { self.nodes[id].low };
            nodes.push(id);
        }
        Ok(ComputationPath { nodes, assignment })
    }

    /// Whether some total extension of `partial` is accepted.
    pub fn clausal_entailment(&self, partial: &Assignment) -> Result<bool, ObddError> {
        let mut fixed: Vec<Option<bool>> = vec![None; self.order.len()];
        for (var, value) in partial.iter() {
            let level = self.level_of(var).ok_or(ObddError::UnknownVariable(var))?;
            fixed[level] = Some(value);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if id == TRUE {
                return Ok(true);
            }
            if id == FALSE || std::mem::replace(&mut seen[id], true) {
                continue;
            }
            let node = self.nodes[id];
            match fixed[node.level] {
                Some(true) => stack.push(node.high),
                Some(false) => stack.push(node.low),
                None => {
                    stack.push(node.low);
                    stack.push(node.high);
                }
            }
        }
        Ok(false)
    }

    /// The reduced diagram of the same function.
    pub fn reduced(&self) -> Obdd {
        if !self.uniform {
            return self.clone();
        }
        let mut b = Builder::new(self.order.len(), true, usize::MAX - 2);
        let mut map: Vec<NodeId> = (0..self.nodes.len()).collect();
        let mut ids: Vec<NodeId> = (2..self.nodes.len()).collect();
        ids.sort_by_key(|&id| std::cmp::Reverse(self.nodes[id].level));
        for id in ids {
            let n = self.nodes[id];
            map[id] = b.mk(n.level, map[n.low], map[n.high]).expect("no limit");
        }
        Obdd {
            order: self.order.clone(),
            labels: self.labels.clone(),
            nodes: b.nodes,
            root: map[self.root],
            uniform: false,
        }
    }

    /// Nodes of the reduced form renumbered in depth-first order from the
    /// root: equal for two diagrams over the same order exactly when they
    /// represent the same function.
    pub(crate) fn signature(&self) -> Vec<(usize, NodeId, NodeId)> {
        let d = self.reduced();
        let mut index: HashMap<NodeId, NodeId> = HashMap::from([(FALSE, FALSE), (TRUE, TRUE)]);
        let mut out = Vec::new();
        // Post-order so children are numbered before their parent.
        let mut stack = vec![(d.root, false)];
        while let Some((id, ready)) = stack.pop() {
            if index.contains_key(&id) {
                continue;
            }
            let n = d.nodes[id];
            if ready {
                out.push((n.level, index[&n.low], index[&n.high]));
                index.insert(id, out.len() + 1);
            } else {
                stack.push((id, true));
                stack.push((n.high, false));
                stack.push((n.low, false));
            }
        }
        out.push((usize::MAX, index[&d.root], index[&d.root]));
        out
    }

    /// Isomorphism of the reduced forms.
    pub fn equivalent(&self, other: &Obdd) -> Result<bool, ObddError> {
        if self.order.order != other.order.order {
            return Err(ObddError::OrderMismatch);
        }
        let (a, b) = (self.reduced(), other.reduced());
        let mut pairing: HashMap<NodeId, NodeId> = HashMap::new();
        let mut stack = vec![(a.root, b.root)];
        while let Some((x, y)) = stack.pop() {
            match pairing.get(&x) {
                Some(&z) if z == y => continue,
                Some(_) => return Ok(false),
                None => {}
            }
            pairing.insert(x, y);
            if a.is_terminal(x) || b.is_terminal(y) {
                if x != y {
                    return Ok(false);
                }
                continue;
            }
            let (nx, ny) = (a.nodes[x], b.nodes[y]);
            if nx.level != ny.level {
                return Ok(false);
            }
            stack.push((nx.low, ny.low));
            stack.push((nx.high, ny.high));
        }
        Ok(true)
    }

    /// Graphviz rendering: solid high edges, dashed low edges.
    pub fn to_dot(&self, name: &str) -> String {
        let seen = self.reachable();
        let mut out = format!("digraph \"{name}\" {{\n");
        for (id, label) in [(FALSE, "0"), (TRUE, "1")] {
            if seen[id] {
                let _ = writeln!(out, "  n{id} [shape=box, label=\"{label}\"];");
            }
        }
        for layer in self.layers() {
            if layer.is_empty() {
                continue;
            }
            out.push_str("  { rank=same;");
            for &id in &layer {
                let _ = write!(out, " n{id};");
            }
            out.push_str(" }\n");
            for id in layer {
                let n = self.nodes[id];
                let _ = writeln!(out, "  n{id} [shape=circle, label=\"{}\"];", self.labels[n.level]);
                let _ = writeln!(out, "  n{id} -> n{} [style=solid];", n.high);
                let _ = writeln!(out, "  n{id} -> n{} [style=dashed];", n.low);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> ObddJson {
        let seen = self.reachable();
        let nodes = (2..self.nodes.len())
            .filter(|&id| seen[id])
            .map(|id| {
                let n = self.nodes[id];
                NodeJson {
                    id,
                    var: self.order.order[n.level].index(),
                    low: n.low,
                    high: n.high,
                }
            })
            .collect();
        ObddJson {
            order: self.order.order.iter().map(|v| v.index()).collect(),
            uniform: self.uniform,
            root: self.root,
            internal: self.internal_count(),
            total: self.total_count(),
            layer_sizes: self.layer_sizes(),
            nodes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: NodeId,
    pub var: u32,
    pub low: NodeId,
    pub high: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObddJson {
    pub order: Vec<u32>,
    pub uniform: bool,
    pub root: NodeId,
    pub internal: usize,
    pub total: usize,
    pub layer_sizes: Vec<usize>,
    pub nodes: Vec<NodeJson>,
}
