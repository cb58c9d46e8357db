//! Simple undirected graphs and the instance generators built on them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Clause, Cnf, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Undirected graph on vertices `0..n` without loops or parallel edges.
///
/// Edges keep their insertion order, which fixes the variable numbering of
/// [`cnf_of_graph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.vertex_count(), "one label per vertex");
        self.labels = Some(labels);
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let count = self.vertex_count();
        for vertex in [u, v] {
            if vertex >= count {
                return Err(GraphError::VertexOutOfRange { vertex, count });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let pos = self.adjacency[u].binary_search(&v).unwrap_err();
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Neighbours in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Connected components of the subgraph induced by `keep`.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if !keep[start] || seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&vec![true; self.vertex_count()]).len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(vertices.len());
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
                g.add_edge(a, b).expect("induced edge");
            }
        }
        if self.labels.is_some() {
            g.set_labels(vertices.iter().map(|&v| self.label(v)).collect());
        }
        g
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.label(v));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Edge-list text: `n m` header, then one `u v` line per edge, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses the edge-list format of [`Graph::to_edge_list`]. Lines starting
    /// with `c` or `#` are comments.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| GraphError::Parse {
                    line,
                    message: format!("expected two integers, got `{l}`"),
                })?;
            match nums.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(GraphError::Parse {
                    line,
                    message: format!("expected two integers, got `{l}`"),
                }),
            }
        };
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut g = Graph::new(n);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u == 0 || v == 0 {
                return Err(GraphError::Parse {
                    line,
                    message: "vertices are 1-based".into(),
                });
            }
            g.add_edge(u - 1, v - 1)?;
        }
        if g.edge_count() != m {
            return Err(GraphError::Parse {
                line: 0,
                message: format!("header declares {m} edges but {} were read", g.edge_count()),
            });
        }
        Ok(g)
    }
}

/// Complete binary tree of height `r`: vertex 0 is the root, children of
/// `i` are `2i+1` and `2i+2`.
pub fn complete_binary_tree(r: usize) -> Graph {
    let n = (1usize << (r + 1)) - 1;
    let mut g = Graph::new(n);
    for child in 1..n {
        g.add_edge((child - 1) / 2, child).expect("tree edge");
    }
    g
}

/// Path `v1 - v2 - ... - vn` (vertex `i` is labelled `v{i+1}`).
pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i).expect("path edge");
    }
    g.set_labels((1..=n).map(|i| format!("v{i}")).collect());
    g
}

/// Bookkeeping of a clique blow-up of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTreeMeta {
    /// Height `r` when the skeleton is the complete binary tree `T_r`.
    pub height: Option<usize>,
    /// Smallest clique size.
    pub k: usize,
    pub skeleton: Graph,
    pub node_of_vertex: Vec<usize>,
    pub clique_of_node: Vec<Vec<usize>>,
}

/// A tree whose nodes were replaced by cliques, adjacent cliques fully joined.
#[derive(Clone, Debug)]
pub struct CliqueTree {
    pub graph: Graph,
    pub meta: CliqueTreeMeta,
}

/// `CT_{r,k}`: `T_r` with every node blown up into a `k`-clique.
///
/// Vertices are numbered node by node in BFS order of `T_r`, so node `t`
/// owns vertices `t*k .. (t+1)*k`.
pub fn clique_tree(r: usize, k: usize) -> CliqueTree {
    assert!(k >= 1, "clique size must be positive");
    let tree = complete_binary_tree(r);
    let sizes = vec![k; tree.vertex_count()];
    let mut ct = clique_blowup(&tree, &sizes);
    ct.meta.height = Some(r);
    ct
}

/// Blows every node `t` of `skeleton` up into a clique of `sizes[t]`
/// vertices; cliques of adjacent nodes become mutually adjacent.
///
/// Edge insertion order: for each node in index order, its clique edges,
/// then the join with every lower-indexed neighbour.
pub fn clique_blowup(skeleton: &Graph, sizes: &[usize]) -> CliqueTree {
    assert_eq!(sizes.len(), skeleton.vertex_count());
    let mut clique_of_node = Vec::with_capacity(sizes.len());
    let mut node_of_vertex = Vec::new();
    for (t, &size) in sizes.iter().enumerate() {
        let start = node_of_vertex.len();
        clique_of_node.push((start..start + size).collect::<Vec<_>>());
        node_of_vertex.extend(std::iter::repeat_n(t, size));
    }
    let mut g = Graph::new(node_of_vertex.len());
    let mut labels = Vec::with_capacity(node_of_vertex.len());
    for (t, clique) in clique_of_node.iter().enumerate() {
        for i in 0..clique.len() {
            labels.push(format!("{t}.{i}"));
        }
    }
    g.set_labels(labels);
    for t in 0..sizes.len() {
        let clique = &clique_of_node[t];
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                g.add_edge(a, b).expect("clique edge");
            }
        }
        for &s in skeleton.neighbors(t).iter().filter(|&&s| s < t) {
            for &a in &clique_of_node[s] {
                for &b in clique {
                    g.add_edge(a, b).expect("join edge");
                }
            }
        }
    }
    CliqueTree {
        graph: g,
        meta: CliqueTreeMeta {
            height: None,
            k: sizes.iter().copied().min().unwrap_or(0),
            skeleton: skeleton.clone(),
            node_of_vertex,
            clique_of_node,
        },
    }
}

impl CliqueTree {
    /// Graphviz rendering with one cluster per skeleton node.
    pub fn to_dot(&self, name: &str) -> String {
        let g = &self.graph;
        let mut out = format!("graph \"{name}\" {{\n  compound=true;\n");
        for (t, clique) in self.meta.clique_of_node.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{t} {{\n    label=\"{t}\";\n    style=rounded;");
            for &v in clique {
                let _ = writeln!(out, "    {v} [label=\"{}\"];", g.label(v));
            }
            out.push_str("  }\n");
        }
        for &(u, v) in g.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// `CNF(G)` together with the vertex/edge to variable maps.
#[derive(Clone, Debug)]
pub struct GraphCnf {
    pub cnf: Cnf,
    /// `X_u` for every vertex `u`.
    pub vertex_var: Vec<Var>,
    /// `X_{u,v}` for every edge, parallel to `Graph::edges`.
    pub edge_var: Vec<Var>,
    edge_index: BTreeMap<(usize, usize), usize>,
}

impl GraphCnf {
    pub fn edge_var_of(&self, u: usize, v: usize) -> Option<Var> {
        self.edge_index.get(&(u.min(v), u.max(v))).map(|&e| self.edge_var[e])
    }

    /// The vertex whose `X_u` is `var`, if any.
    pub fn vertex_of_var(&self, var: Var) -> Option<usize> {
        (var.slot() < self.vertex_var.len()).then(|| var.slot())
    }
}

/// One variable per vertex (`1..=|V|`), one per edge (`|V|+1..`), and one
/// clause `(X_u ∨ X_{u,v} ∨ X_v)` per edge.
pub fn cnf_of_graph(g: &Graph) -> GraphCnf {
    let n = g.vertex_count();
    let vertex_var: Vec<Var> = (0..n).map(Var::from_slot).collect();
    let edge_var: Vec<Var> = (0..g.edge_count()).map(|e| Var::from_slot(n + e)).collect();
    let mut names = BTreeMap::new();
    for (u, &var) in vertex_var.iter().enumerate() {
        names.insert(var, format!("X_{}", g.label(u)));
    }
    let mut clauses = Vec::with_capacity(g.edge_count());
    let mut edge_index = BTreeMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        names.insert(edge_var[e], format!("X_{{{},{}}}", g.label(u), g.label(v)));
        edge_index.insert((u, v), e);
        clauses.push(
            Clause::new([
                vertex_var[u].positive(),
                edge_var[e].positive(),
                vertex_var[v].positive(),
            ])
            .expect("distinct variables"),
        );
    }
    let cnf = Cnf::new(n + g.edge_count(), clauses)
        .expect("variables in range")
        .with_names(names);
    GraphCnf {
        cnf,
        vertex_var,
        edge_var,
        edge_index,
    }
}

/// `F_{r,k} = CNF(CT_{r,k})`.
pub fn clique_tree_cnf(r: usize, k: usize) -> (CliqueTree, GraphCnf) {
    let ct = clique_tree(r, k);
    let gc = cnf_of_graph(&ct.graph);
    (ct, gc)
}

fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Closed-form `|V(CT_{r,k})|`.
pub fn clique_tree_vertex_count(r: usize, k: usize) -> usize {
    ((1usize << (r + 1)) - 1) * k
}

/// Closed-form `|E(CT_{r,k})|`: clique edges plus a `k×k` join per tree edge.
pub fn clique_tree_edge_count(r: usize, k: usize) -> usize {
    let nodes = (1usize << (r + 1)) - 1;
    nodes * binomial2(k) + (nodes - 1) * k * k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_trees() {
        assert_eq!(complete_binary_tree(0).vertex_count(), 1);
        let t1 = complete_binary_tree(1);
        assert_eq!((t1.vertex_count(), t1.edge_count()), (3, 2));
        assert_eq!(t1.degree(0), 2);
        let t2 = complete_binary_tree(2);
        assert_eq!((t2.vertex_count(), t2.edge_count()), (7, 6));
        assert!(t2.is_tree());
    }

    #[test]
    fn clique_tree_counts() {
        let ct = clique_tree(2, 3);
        assert_eq!((ct.graph.vertex_count(), ct.graph.edge_count()), (21, 75));
        let ct = clique_tree(1, 2);
        assert_eq!((ct.graph.vertex_count(), ct.graph.edge_count()), (6, 11));
        for r in 0..=4 {
            for k in 1..=4 {
                let ct = clique_tree(r, k);
                assert_eq!(ct.graph.vertex_count(), clique_tree_vertex_count(r, k));
                assert_eq!(ct.graph.edge_count(), clique_tree_edge_count(r, k));
                assert_eq!(ct.meta.clique_of_node.len(), (1 << (r + 1)) - 1);
                assert!(ct.meta.clique_of_node.iter().all(|c| c.len() == k));
            }
        }
    }

    #[test]
    fn clique_tree_with_k1_is_the_binary_tree() {
        for r in 0..4 {
            let ct = clique_tree(r, 1);
            assert_eq!(ct.graph.edge_set(), complete_binary_tree(r).edge_set());
        }
    }

    #[test]
    fn adjacent_cliques_form_2k_clique() {
        let ct = clique_tree(2, 3);
        let mut members = ct.meta.clique_of_node[0].clone();
        members.extend(&ct.meta.clique_of_node[1]);
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                assert!(ct.graph.has_edge(a, b));
            }
        }
    }

    #[test]
    fn cnf_of_graph_counts() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let gc = cnf_of_graph(&k2);
        assert_eq!((gc.cnf.num_vars(), gc.cnf.num_clauses()), (3, 1));
        assert_eq!(gc.cnf.name(gc.edge_var[0]), "X_{0,1}");

        let gc = cnf_of_graph(&complete_binary_tree(1));
        assert_eq!((gc.cnf.num_vars(), gc.cnf.num_clauses()), (5, 2));

        let (_, gc) = clique_tree_cnf(2, 3);
        assert_eq!((gc.cnf.num_vars(), gc.cnf.num_clauses()), (96, 75));
    }

    #[test]
    fn primal_graph_of_cnf_of_graph_adds_edge_vertices() {
        let g = clique_tree(1, 2).graph;
        let gc = cnf_of_graph(&g);
        let primal = gc.cnf.primal_graph();
        let mut expected = BTreeSet::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let ve = gc.edge_var[e].slot();
            expected.insert((u, v));
            expected.insert((u.min(ve), u.max(ve)));
            expected.insert((v.min(ve), v.max(ve)));
        }
        assert_eq!(primal.edge_set(), expected);
    }

    #[test]
    fn paths() {
        assert_eq!(path_graph(1).edge_count(), 0);
        assert_eq!(path_graph(2).edge_set(), BTreeSet::from([(0, 1)]));
        let p10 = path_graph(10);
        assert_eq!(p10.edge_count(), 9);
        assert_eq!(p10.label(9), "v10");
    }

    #[test]
    fn graph_rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.add_edge(2, 0), Err(GraphError::DuplicateEdge(0, 2)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, count: 3 })
        );
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = clique_tree(1, 2).graph;
        let text = g.to_edge_list();
        let back = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(back.edge_set(), g.edge_set());
        assert!(Graph::parse_edge_list("2 1\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("2 2\n1 2\n").is_err());
    }

    #[test]
    fn clustered_dot_groups_cliques() {
        let dot = clique_tree(1, 2).to_dot("ct");
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 11);
    }
}
