//! Cut matchings and matching width.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::Caps;
use crate::graph::{clique_tree, CliqueTree, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("{vertices} vertices exceed the subset-DP cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("not a permutation of the {0} vertices")]
    NotAPermutation(usize),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no crossing matching of size {k}: maximum is {found}")]
    NoKMatching { k: usize, found: usize },
}

/// A maximum matching among the edges leaving `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub prefix: Vec<usize>,
    /// Edges as `(inside, outside)`.
    pub matching: Vec<(usize, usize)>,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingWidthReport {
    pub value: usize,
    pub witness_order: Vec<usize>,
    pub per_prefix: CutReport,
}

fn membership(n: usize, s: &[usize]) -> Result<Vec<bool>, MatchingError> {
    let mut inside = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(MatchingError::VertexOutOfRange { vertex: v, count: n });
        }
        inside[v] = true;
    }
    Ok(inside)
}

fn augment(g: &Graph, u: usize, inside: &[bool], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
    for &w in g.neighbors(u) {
        if inside[w] || seen[w] {
            continue;
        }
        seen[w] = true;
        if mate[w].is_none_or(|x| augment(g, x, inside, seen, mate)) {
            mate[w] = Some(u);
            return true;
        }
    }
    false
}

/// Maximum matching between `s` and the rest of `g`, by augmenting paths
/// scanned in vertex order.
pub fn cut_matching(g: &Graph, s: &[usize]) -> Result<CutReport, MatchingError> {
    let n = g.vertex_count();
    let inside = membership(n, s)?;
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for u in (0..n).filter(|&u| inside[u]) {
        let mut seen = vec![false; n];
        augment(g, u, &inside, &mut seen, &mut mate);
    }
    let mut matching: Vec<(usize, usize)> = (0..n).filter_map(|w| mate[w].map(|u| (u, w))).collect();
    matching.sort_unstable();
    let mut prefix: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    prefix.dedup();
    Ok(CutReport {
        prefix,
        size: matching.len(),
        matching,
    })
}

/// Neighbourhood bitmasks; requires at most 64 vertices.
pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u64> {
    assert!(g.vertex_count() <= 64, "mask form needs at most 64 vertices");
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Size of a maximum matching across the cut `s` given as a bitmask.
pub(crate) fn cut_matching_size_mask(adj: &[u64], s: u64) -> usize {
    fn try_kuhn(adj: &[u64], u: usize, s: u64, seen: &mut u64, mate: &mut [u8]) -> bool {
        let mut cand = adj[u] & !s & !*seen;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *seen |= 1 << w;
            let m = mate[w];
            if m == u8::MAX || try_kuhn(adj, m as usize, s, seen, mate) {
                mate[w] = u as u8;
                return true;
            }
        }
        false
    }
    let mut mate = [u8::MAX; 64];
    let mut size = 0;
    let mut rest = s;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[u] & !s == 0 {
            continue;
        }
        let mut seen = 0u64;
        if try_kuhn(adj, u, s, &mut seen, &mut mate) {
            size += 1;
        }
    }
    size
}

fn check_permutation(n: usize, perm: &[usize]) -> Result<(), MatchingError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(MatchingError::NotAPermutation(n));
    }
    for &v in perm {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(MatchingError::NotAPermutation(n));
        }
    }
    Ok(())
}

/// Shortest prefix of `perm` whose cut matching is the largest over all
/// prefixes, with that matching.
pub fn worst_prefix(g: &Graph, perm: &[usize]) -> Result<CutReport, MatchingError> {
    let n = g.vertex_count();
    check_permutation(n, perm)?;
    let mut best = cut_matching(g, &[])?;
    for len in 1..=n {
        let report = cut_matching(g, &perm[..len])?;
        if report.size > best.size {
            best = report;
        }
    }
    Ok(best)
}

/// Largest cut matching over all prefixes of `perm`.
pub fn permutation_matching_width(g: &Graph, perm: &[usize]) -> Result<usize, MatchingError> {
    let n = g.vertex_count();
    check_permutation(n, perm)?;
    if n <= 64 {
        let adj = adjacency_masks(g);
        let mut s = 0u64;
        let mut best = 0;
        for &v in perm {
            s |= 1 << v;
            best = best.max(cut_matching_size_mask(&adj, s));
        }
        Ok(best)
    } else {
        Ok(worst_prefix(g, perm)?.size)
    }
}

/// `min` over orders of `max` over prefixes of `cost(prefix set)`.
///
/// Returns the value and an order attaining it; ties in the backtrack pick
/// the lowest element as the last one.
pub fn subset_minmax(n: usize, cost: impl Fn(u64) -> usize) -> (usize, Vec<usize>) {
    assert!(n < 32, "subset DP limited to 31 elements");
    let full = (1u64 << n) - 1;
    let mut best = vec![0u16; 1 << n];
    best[0] = cost(0) as u16;
    for s in 1..=full {
        let mut m = u16::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            m = m.min(best[(s & !(1 << v)) as usize]);
        }
        best[s as usize] = m.max(cost(s) as u16);
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        let mut choice = (u16::MAX, 0);
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let b = best[(s & !(1 << v)) as usize];
            if b < choice.0 {
                choice = (b, v);
            }
        }
        order.push(choice.1 as usize);
        s &= !(1 << choice.1);
    }
    order.reverse();
    (best[full as usize] as usize, order)
}

/// Exact matching width by dynamic programming over vertex subsets.
pub fn matching_width_exact(g: &Graph, caps: &Caps) -> Result<MatchingWidthReport, MatchingError> {
    let n = g.vertex_count();
    if n > caps.subset_dp || n >= 32 {
        return Err(MatchingError::CapExceeded {
            vertices: n,
            cap: caps.subset_dp.min(31),
        });
    }
    let adj = adjacency_masks(g);
    let (value, witness_order) = subset_minmax(n, |s| cut_matching_size_mask(&adj, s));
    let per_prefix = worst_prefix(g, &witness_order)?;
    debug_assert_eq!(per_prefix.size, value);
    Ok(MatchingWidthReport {
        value,
        witness_order,
        per_prefix,
    })
}

/// A crossing matching of size at least `k` for the colouring `white`.
///
/// Checks the hypotheses first: at least two tree nodes, every clique of
/// size at least `k`, and both colour classes of size at least `k`.
pub fn kmatching_witness(ct: &CliqueTree, white: &[usize], k: usize) -> Result<CutReport, MatchingError> {
    let n = ct.graph.vertex_count();
    let nodes = ct.meta.clique_of_node.len();
    if nodes < 2 {
        return Err(MatchingError::Precondition(format!("tree has {nodes} node(s)")));
    }
    if k == 0 {
        return Err(MatchingError::Precondition("k must be positive".into()));
    }
    if let Some(small) = ct.meta.clique_of_node.iter().find(|c| c.len() < k) {
        return Err(MatchingError::Precondition(format!(
            "clique of size {} < {k}",
            small.len()
        )));
    }
    let inside = membership(n, white)?;
    let whites = inside.iter().filter(|&&w| w).count();
    if whites < k || n - whites < k {
        return Err(MatchingError::Precondition(format!(
            "colour classes of sizes {whites} and {} must both be at least {k}",
            n - whites
        )));
    }
    let report = cut_matching(&ct.graph, white)?;
    if report.size < k {
        return Err(MatchingError::NoKMatching { k, found: report.size });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CltreemtMode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CltreemtReport {
    pub r: usize,
    pub k: usize,
    pub mode: CltreemtMode,
    /// `rk/2`, possibly fractional.
    pub bound: f64,
    /// `⌈rk/2⌉`, the integral bound actually asserted.
    pub required: usize,
    /// Exact `mw`, or the smallest sampled permutation width.
    pub value: usize,
    pub witness_order: Vec<usize>,
    pub permutations_checked: usize,
    pub pass: bool,
}

/// Hand-picked vertex orders of `CT_{r,k}`: breadth-first, its reverse,
/// depth-first pre- and post-order over the tree with cliques kept
/// together, and round-robin over clique positions.
pub fn structured_orders(ct: &CliqueTree) -> Vec<Vec<usize>> {
    let n = ct.graph.vertex_count();
    let cliques = &ct.meta.clique_of_node;
    let skeleton = &ct.meta.skeleton;
    let bfs: Vec<usize> = (0..n).collect();
    let mut rev = bfs.clone();
    rev.reverse();

    fn dfs(t: usize, parent: Option<usize>, sk: &Graph, pre: &mut Vec<usize>, post: &mut Vec<usize>) {
        pre.push(t);
        for &c in sk.neighbors(t) {
            if Some(c) != parent {
                dfs(c, Some(t), sk, pre, post);
            }
        }
        post.push(t);
    }
    let (mut pre, mut post) = (Vec::new(), Vec::new());
    if skeleton.vertex_count() > 0 {
        dfs(0, None, skeleton, &mut pre, &mut post);
    }
    let expand = |nodes: &[usize]| -> Vec<usize> { nodes.iter().flat_map(|&t| cliques[t].iter().copied()).collect() };

    let width = cliques.iter().map(Vec::len).max().unwrap_or(0);
    let mut round_robin = Vec::with_capacity(n);
    for i in 0..width {
        for c in cliques {
            if let Some(&v) = c.get(i) {
                round_robin.push(v);
            }
        }
    }
    vec![bfs, rev, expand(&pre), expand(&post), round_robin]
}

/// Checks `mw(CT_{r,k}) ≥ ⌈rk/2⌉`: exactly when the graph fits the
/// subset-DP cap, otherwise over `samples` seeded random permutations
/// plus [`structured_orders`].
pub fn verify_cltreemt(
    r: usize,
    k: usize,
    caps: &Caps,
    seed: u64,
    samples: usize,
) -> Result<CltreemtReport, MatchingError> {
    let ct = clique_tree(r, k);
    let required = (r * k).div_ceil(2);
    let n = ct.graph.vertex_count();
    let bound = (r * k) as f64 / 2.0;
    if n <= caps.subset_dp && n < 32 {
        let mw = matching_width_exact(&ct.graph, caps)?;
        return Ok(CltreemtReport {
            r,
            k,
            mode: CltreemtMode::Exact,
            bound,
            required,
            value: mw.value,
            witness_order: mw.witness_order,
            permutations_checked: 0,
            pass: mw.value >= required,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders = structured_orders(&ct);
    for _ in 0..samples {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        orders.push(p);
    }
    let mut worst: Option<(usize, Vec<usize>)> = None;
    for p in &orders {
        let w = permutation_matching_width(&ct.graph, p)?;
        if worst.as_ref().is_none_or(|(v, _)| w < *v) {
            worst = Some((w, p.clone()));
        }
    }
    let (value, witness_order) = worst.unwrap_or((0, Vec::new()));
    Ok(CltreemtReport {
        r,
        k,
        mode: CltreemtMode::Sampled,
        bound,
        required,
        value,
        witness_order,
        permutations_checked: orders.len(),
        pass: value >= required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_blowup, path_graph};

    fn p10() -> Graph {
        path_graph(10)
    }

    #[test]
    fn path_cuts() {
        let g = p10();
        assert_eq!(cut_matching(&g, &[0, 1, 2, 3, 4]).unwrap().size, 1);
        let alt = cut_matching(&g, &[0, 2, 4, 6, 8]).unwrap();
        assert_eq!(alt.size, 5);
        for &(u, w) in &alt.matching {
            assert!(g.has_edge(u, w) && u % 2 == 0 && w % 2 == 1);
        }
        assert_eq!(cut_matching(&g, &[]).unwrap().size, 0);
    }

    #[test]
    fn path_permutations() {
        let g = p10();
        let natural: Vec<usize> = (0..10).collect();
        assert_eq!(permutation_matching_width(&g, &natural), Ok(1));
        let alt = [0, 2, 4, 6, 8, 1, 3, 5, 7, 9];
        assert_eq!(permutation_matching_width(&g, &alt), Ok(5));
        let k2 = Graph::complete(2);
        assert_eq!(permutation_matching_width(&k2, &[1, 0]), Ok(1));
        assert_eq!(
            permutation_matching_width(&g, &[0, 0, 1, 2, 3, 4, 5, 6, 7, 8]),
            Err(MatchingError::NotAPermutation(10))
        );
    }

    #[test]
    fn exact_widths() {
        let caps = Caps::default();
        let r = matching_width_exact(&p10(), &caps).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(permutation_matching_width(&p10(), &r.witness_order), Ok(1));
        assert_eq!(matching_width_exact(&Graph::complete(2), &caps).unwrap().value, 1);
        assert_eq!(matching_width_exact(&clique_tree(1, 1).graph, &caps).unwrap().value, 1);
        assert_eq!(matching_width_exact(&Graph::new(0), &caps).unwrap().value, 0);
    }

    #[test]
    fn exact_refuses_above_cap() {
        let caps = Caps {
            subset_dp: 5,
            ..Caps::default()
        };
        assert_eq!(
            matching_width_exact(&p10(), &caps).unwrap_err(),
            MatchingError::CapExceeded { vertices: 10, cap: 5 }
        );
    }

    #[test]
    fn mask_and_list_matchings_agree() {
        let ct = clique_tree(2, 2);
        let adj = adjacency_masks(&ct.graph);
        for s in (0u64..1 << 14).step_by(37) {
            let set: Vec<usize> = (0..14).filter(|v| s >> v & 1 == 1).collect();
            assert_eq!(
                cut_matching_size_mask(&adj, s),
                cut_matching(&ct.graph, &set).unwrap().size
            );
        }
    }

    #[test]
    fn kmatching_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let k2 = clique_blowup(&edge, &[1, 1]);
        assert_eq!(kmatching_witness(&k2, &[0], 1).unwrap().matching, vec![(0, 1)]);

        let join = clique_blowup(&edge, &[2, 2]);
        assert_eq!(kmatching_witness(&join, &[0, 1], 2).unwrap().size, 2);

        let ct = clique_tree(1, 2);
        for a in 0..6 {
            for b in a + 1..6 {
                assert!(kmatching_witness(&ct, &[a, b], 2).unwrap().size >= 2);
            }
        }
    }

    #[test]
    fn kmatching_preconditions() {
        let single = clique_tree(0, 3);
        assert!(matches!(
            kmatching_witness(&single, &[0], 1),
            Err(MatchingError::Precondition(_))
        ));
        let ct = clique_tree(1, 2);
        assert!(matches!(
            kmatching_witness(&ct, &[0], 2),
            Err(MatchingError::Precondition(_))
        ));
        assert!(matches!(
            kmatching_witness(&ct, &[0, 1], 3),
            Err(MatchingError::Precondition(_))
        ));
    }

    #[test]
    fn cltreemt_small() {
        let caps = Caps::default();
        let rep = verify_cltreemt(1, 1, &caps, 7, 0).unwrap();
        assert_eq!(
            (rep.mode, rep.value, rep.required, rep.pass),
            (CltreemtMode::Exact, 1, 1, true)
        );
        let rep = verify_cltreemt(2, 2, &caps, 7, 0).unwrap();
        assert!(rep.pass && rep.value >= 2);
    }

    #[test]
    fn cltreemt_sampled() {
        let rep = verify_cltreemt(3, 2, &Caps::default(), 11, 1000).unwrap();
        assert_eq!(rep.mode, CltreemtMode::Sampled);
        assert!(rep.permutations_checked >= 1000);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn structured_orders_are_permutations() {
        let ct = clique_tree(2, 3);
        for o in structured_orders(&ct) {
            assert!(check_permutation(21, &o).is_ok());
        }
    }
}
