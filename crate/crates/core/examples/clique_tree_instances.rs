//! Generate `F_{r,k}` for small parameters and compare the counts with the closed forms.

use obdd_lab::graph::{clique_tree_cnf, clique_tree_edge_count, clique_tree_vertex_count};

pub fn run() -> obdd_lab::Result<()> {
    println!("{:>2} {:>2} {:>6} {:>6} {:>8}", "r", "k", "|V|", "|E|", "clauses");
    for r in 0..=3 {
        for k in 1..=3 {
            let (ct, gc) = clique_tree_cnf(r, k);
            assert_eq!(ct.graph.vertex_count(), clique_tree_vertex_count(r, k));
            assert_eq!(ct.graph.edge_count(), clique_tree_edge_count(r, k));
            println!(
                "{r:>2} {k:>2} {:>6} {:>6} {:>8}",
                ct.graph.vertex_count(),
                ct.graph.edge_count(),
                gc.cnf.num_clauses()
            );
        }
    }
    let (ct, _) = clique_tree_cnf(1, 2);
    print!("{}", ct.to_dot("CT_1_2"));
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
