//! Tree and path decompositions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Cnf, IncidenceGraph, Var};
use crate::graph::{clique_tree_cnf, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("{bags} bags for {nodes} tree nodes")]
    BagCountMismatch { bags: usize, nodes: usize },
    #[error("bag of node {node} references unknown vertex {vertex}")]
    UnknownVertex { node: usize, vertex: usize },
    #[error("union rule violated: vertex {vertex} is in no bag")]
    UncoveredVertex { vertex: usize },
    #[error("containment rule violated: edge {{{u}, {v}}} is in no bag")]
    UncoveredEdge { u: usize, v: usize },
    #[error("connectedness rule violated: vertex {vertex} occurs in disconnected nodes {nodes:?}")]
    Disconnected { vertex: usize, nodes: Vec<usize> },
    #[error("variable {0} is in no bag of the path decomposition")]
    UncoveredVariable(Var),
}

/// Bags indexed by tree node; each bag is sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<usize>>,
}

/// Bags `B(v_1) .. B(v_r)` along a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

/// Common view of tree and path decompositions for validation.
pub trait Decomposition {
    fn bags(&self) -> &[Vec<usize>];
    fn tree_edges(&self) -> Vec<(usize, usize)>;

    fn width(&self) -> usize {
        self.bags().iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

impl Decomposition for TreeDecomposition {
    fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.tree.edges().to_vec()
    }
}

impl Decomposition for PathDecomposition {
    fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    fn tree_edges(&self) -> Vec<(usize, usize)> {
        (1..self.bags.len()).map(|i| (i - 1, i)).collect()
    }
}

fn normalize(bag: impl IntoIterator<Item = usize>) -> Vec<usize> {
    bag.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<Vec<usize>>) -> TreeDecomposition {
        TreeDecomposition {
            tree,
            bags: bags.into_iter().map(normalize).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Graphviz rendering with bag contents as node labels.
    pub fn to_dot(&self, g: &Graph, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n  node [shape=box];\n");
        for (t, bag) in self.bags.iter().enumerate() {
            let labels: Vec<String> = bag.iter().map(|&v| g.label(v)).collect();
            let _ = writeln!(out, "  {t} [label=\"{{{}}}\"];", labels.join(", "));
        }
        for &(a, b) in self.tree.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            nodes: (0..self.bags.len()).collect(),
            edges: self.tree.edges().to_vec(),
            bags: self.bags.clone(),
            width: self.width(),
        }
    }
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> PathDecomposition {
        PathDecomposition {
            bags: bags.into_iter().map(normalize).collect(),
        }
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        let edges = self.tree_edges();
        let tree = Graph::from_edges(self.bags.len(), &edges).expect("path edges");
        TreeDecomposition {
            tree,
            bags: self.bags.clone(),
        }
    }

    pub fn to_json(&self) -> DecompositionJson {
        self.to_tree().to_json()
    }
}

/// Serialized form shared by tree and path decompositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
    pub width: usize,
}

impl DecompositionJson {
    pub fn into_tree(self) -> Result<TreeDecomposition, DecompositionError> {
        let tree = Graph::from_edges(self.nodes.len(), &self.edges).map_err(|_| DecompositionError::NotATree)?;
        Ok(TreeDecomposition::new(tree, self.bags))
    }
}

/// Checks union, containment and connectedness; returns the width.
pub fn validate(g: &Graph, d: &impl Decomposition) -> Result<usize, DecompositionError> {
    let bags = d.bags();
    let edges = d.tree_edges();
    let tree = Graph::from_edges(bags.len(), &edges).map_err(|_| DecompositionError::NotATree)?;
    if !bags.is_empty() && !tree.is_tree() {
        return Err(DecompositionError::NotATree);
    }

    let n = g.vertex_count();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionError::UnknownVertex { node: t, vertex: v });
            }
            occurrences[v].push(t);
        }
    }
    if let Some(vertex) = occurrences.iter().position(Vec::is_empty) {
        return Err(DecompositionError::UncoveredVertex { vertex });
    }
    for &(u, v) in g.edges() {
        let covered = occurrences[u].iter().any(|t| bags[*t].binary_search(&v).is_ok());
        if !covered {
            return Err(DecompositionError::UncoveredEdge { u, v });
        }
    }
    let mut keep = vec![false; bags.len()];
    for (vertex, nodes) in occurrences.iter().enumerate() {
        for &t in nodes {
            keep[t] = true;
        }
        if tree.components_within(&keep).len() != 1 {
            return Err(DecompositionError::Disconnected {
                vertex,
                nodes: nodes.clone(),
            });
        }
        for &t in nodes {
            keep[t] = false;
        }
    }
    Ok(d.width())
}

/// Min-fill elimination heuristic, ties broken by lowest vertex index.
///
/// One bag per eliminated vertex; bags contained in their parent bag are
/// contracted away.
pub fn min_fill(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition::new(Graph::new(0), Vec::new());
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut eliminated = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);

    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| !eliminated[v]) {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !adj[a].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if best.is_none_or(|(f, _)| fill < f) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.expect("vertex left");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        eliminated[v] = true;
        let mut bag = nbrs;
        bag.push(v);
        bags.push(normalize(bag));
        order.push(v);
    }

    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Parent of bag i: the bag of its earliest-eliminated later neighbour.
    let mut parent: Vec<Option<usize>> = (0..n)
        .map(|i| {
            bags[i]
                .iter()
                .filter(|&&u| u != order[i])
                .map(|&u| position[u])
                .min()
                .or(if i + 1 < n { Some(i + 1) } else { None })
        })
        .collect();

    let mut removed = vec![false; n];
    for i in 0..n {
        if let Some(p) = parent[i] {
            if bags[i].iter().all(|v| bags[p].binary_search(v).is_ok()) {
                removed[i] = true;
                for q in parent.iter_mut() {
                    if *q == Some(i) {
                        *q = Some(p);
                    }
                }
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (j, &i) in kept.iter().enumerate() {
        new_id[i] = j;
    }
    let mut tree = Graph::new(kept.len());
    for &i in &kept {
        if let Some(p) = parent[i] {
            tree.add_edge(new_id[i], new_id[p]).expect("tree edge");
        }
    }
    TreeDecomposition::new(tree, kept.iter().map(|&i| bags[i].clone()).collect())
}

/// Decomposition of the primal graph of `F_{r,k}` following the clique tree.
///
/// Node `t < |T_r|` holds the clique of `t` and of its parent; every edge
/// `e = {a, b}` of `CT_{r,k}` gets a leaf `{X_e, X_a, X_b}` attached to the
/// node that owns `e`. Vertex ids are variable slots of [`clique_tree_cnf`].
pub fn explicit_cliquetree_decomposition(r: usize, k: usize) -> TreeDecomposition {
    let (ct, gc) = clique_tree_cnf(r, k);
    let nodes = ct.meta.clique_of_node.len();
    let edge_count = ct.graph.edge_count();
    let mut tree = Graph::new(nodes + edge_count);
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(nodes + edge_count);
    for t in 0..nodes {
        let mut bag: Vec<usize> = ct.meta.clique_of_node[t]
            .iter()
            .map(|&v| gc.vertex_var[v].slot())
            .collect();
        if t > 0 {
            let parent = (t - 1) / 2;
            bag.extend(ct.meta.clique_of_node[parent].iter().map(|&v| gc.vertex_var[v].slot()));
            tree.add_edge(parent, t).expect("skeleton edge");
        }
        bags.push(bag);
    }
    for (e, &(a, b)) in ct.graph.edges().iter().enumerate() {
        // The owner is the deeper node: both ends lie in its bag.
        let owner = ct.meta.node_of_vertex[a].max(ct.meta.node_of_vertex[b]);
        tree.add_edge(owner, nodes + e).expect("leaf edge");
        bags.push(vec![
            gc.edge_var[e].slot(),
            gc.vertex_var[a].slot(),
            gc.vertex_var[b].slot(),
        ]);
    }
    TreeDecomposition::new(tree, bags)
}

/// Turns a primal-graph decomposition of `f` into one of its incidence graph.
///
/// Every clause gets a new leaf holding the clause and its variables,
/// attached to the first bag that contains all of them.
pub fn incidence_from_primal(td: &TreeDecomposition, f: &Cnf) -> Result<TreeDecomposition, DecompositionError> {
    let n = f.num_vars();
    let base = td.node_count();
    let mut tree = Graph::new(base + f.num_clauses());
    for &(a, b) in td.tree.edges() {
        tree.add_edge(a, b).expect("copied edge");
    }
    let mut bags = td.bags.clone();
    for (j, clause) in f.clauses().iter().enumerate() {
        let vars: Vec<usize> = clause.vars().map(Var::slot).collect();
        let host = td
            .bags
            .iter()
            .position(|bag| vars.iter().all(|v| bag.binary_search(v).is_ok()));
        match host {
            Some(t) => tree.add_edge(t, base + j).expect("leaf edge"),
            None if vars.is_empty() && base + j > 0 => tree.add_edge(0, base + j).expect("leaf edge"),
            None if vars.is_empty() => {}
            // A valid decomposition keeps every clique inside one bag.
            None => return Err(uncovered_pair(td, &vars)),
        }
        let mut bag = vars;
        bag.push(n + j);
        bags.push(bag);
    }
    Ok(TreeDecomposition::new(tree, bags))
}

fn uncovered_pair(td: &TreeDecomposition, vars: &[usize]) -> DecompositionError {
    for (i, &u) in vars.iter().enumerate() {
        if !td.bags.iter().any(|b| b.binary_search(&u).is_ok()) {
            return DecompositionError::UncoveredVertex { vertex: u };
        }
        for &v in &vars[i + 1..] {
            let together = td
                .bags
                .iter()
                .any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok());
            if !together {
                return DecompositionError::UncoveredEdge {
                    u: u.min(v),
                    v: u.max(v),
                };
            }
        }
    }
    DecompositionError::NotATree
}

/// Converts a tree decomposition into a path decomposition by centroid
/// splitting: the centroid's bag is added to every bag of each remaining
/// component's recursive solution and the solutions are concatenated.
///
/// Sub-trees that are already paths are laid out directly. The resulting
/// width is at most `(w+1)(⌊log2 t⌋+1) − 1` for `t` tree nodes.
pub fn tree_to_path(td: &TreeDecomposition, g: &Graph) -> Result<PathDecomposition, DecompositionError> {
    validate(g, td)?;
    let nodes: Vec<usize> = (0..td.node_count()).collect();
    let mut bags = lay_out(td, &nodes);
    // Drop bags contained in a neighbour; this keeps all three rules.
    let mut i = 0;
    while bags.len() > 1 && i < bags.len() {
        let subset_of = |j: usize| bags[i].is_subset(&bags[j]);
        let redundant = (i > 0 && subset_of(i - 1)) || (i + 1 < bags.len() && subset_of(i + 1));
        if redundant {
            bags.remove(i);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    Ok(PathDecomposition::new(
        bags.into_iter().map(|b| b.into_iter().collect()).collect(),
    ))
}

fn lay_out(td: &TreeDecomposition, nodes: &[usize]) -> Vec<BTreeSet<usize>> {
    let total = td.node_count();
    let mut inside = vec![false; total];
    for &t in nodes {
        inside[t] = true;
    }
    let degree = |t: usize| td.tree.neighbors(t).iter().filter(|&&s| inside[s]).count();

    if nodes.iter().all(|&t| degree(t) <= 2) {
        let start = nodes.iter().copied().find(|&t| degree(t) <= 1).unwrap_or(nodes[0]);
        let mut out = Vec::with_capacity(nodes.len());
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            out.push(td.bags[cur].iter().copied().collect());
            let next = td.tree.neighbors(cur).iter().copied().find(|&s| inside[s] && s != prev);
            match next {
                Some(s) => {
                    prev = cur;
                    cur = s;
                }
                None => break,
            }
        }
        return out;
    }

    let mut best: Option<(usize, usize)> = None;
    for &c in nodes {
        inside[c] = false;
        let largest = td
            .tree
            .components_within(&inside)
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        inside[c] = true;
        if best.is_none_or(|(size, _)| largest < size) {
            best = Some((largest, c));
        }
    }
    let (_, centroid) = best.expect("nonempty sub-tree");
    inside[centroid] = false;
    let components = td.tree.components_within(&inside);
    let centre_bag = &td.bags[centroid];
    let mut out = Vec::new();
    for comp in components {
        for mut bag in lay_out(td, &comp) {
            bag.extend(centre_bag.iter().copied());
            out.push(bag);
        }
    }
    if out.is_empty() {
        out.push(centre_bag.iter().copied().collect());
    }
    out
}

/// Where a [`VariableOrder`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    RespectingF,
    Explicit,
    Enumerated,
}

/// A permutation of the variables of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableOrder {
    pub order: Vec<Var>,
    pub provenance: Provenance,
}

impl VariableOrder {
    pub fn new(order: Vec<Var>, provenance: Provenance) -> VariableOrder {
        VariableOrder { order, provenance }
    }

    /// `x1, x2, .., xn`.
    pub fn natural(n: usize) -> VariableOrder {
        VariableOrder::new((0..n).map(Var::from_slot).collect(), Provenance::Explicit)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True when the order is a permutation of `1..=n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.order.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for v in &self.order {
            if v.slot() >= n || std::mem::replace(&mut seen[v.slot()], true) {
                return false;
            }
        }
        true
    }

    /// Position of every variable, indexed by slot.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.order.len()];
        for (i, v) in self.order.iter().enumerate() {
            if v.slot() < pos.len() {
                pos[v.slot()] = i;
            }
        }
        pos
    }
}

/// Which end of the path the bag enumeration starts from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathEnd {
    /// Bag-list order as stored.
    #[default]
    First,
    Last,
}

/// Variables sorted by the first bag that contains them, ties by index.
/// Clause vertices are ignored.
pub fn ordering_respecting_f(
    pd: &PathDecomposition,
    inc: &IncidenceGraph,
    end: PathEnd,
) -> Result<VariableOrder, DecompositionError> {
    let mut first = vec![usize::MAX; inc.num_vars];
    let count = pd.bags.len();
    for (j, bag) in pd.bags.iter().enumerate() {
        let index = match end {
            PathEnd::First => j,
            PathEnd::Last => count - 1 - j,
        };
        for &v in bag {
            if v < inc.num_vars {
                first[v] = first[v].min(index);
            }
        }
    }
    if let Some(slot) = first.iter().position(|&f| f == usize::MAX) {
        return Err(DecompositionError::UncoveredVariable(Var::from_slot(slot)));
    }
    let mut order: Vec<Var> = (0..inc.num_vars).map(Var::from_slot).collect();
    order.sort_by_key(|v| (first[v.slot()], v.index()));
    Ok(VariableOrder::new(order, Provenance::RespectingF))
}

/// Index of the first bag (in stored order) containing each variable.
pub fn first_bag_of_vars(pd: &PathDecomposition, num_vars: usize) -> Vec<usize> {
    let mut first = vec![usize::MAX; num_vars];
    for (j, bag) in pd.bags.iter().enumerate() {
        for &v in bag.iter().filter(|&&v| v < num_vars) {
            first[v] = first[v].min(j);
        }
    }
    first
}
