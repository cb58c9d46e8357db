//! Tree and path decompositions of a small graph, of `CNF(G)`'s incidence
//! graph, and the variable order respecting the path decomposition.

use obdd_lab::decomposition::{
    incidence_from_primal, min_fill, ordering_respecting_f, tree_to_path, validate, PathEnd,
};
use obdd_lab::graph::cnf_of_graph;
use obdd_lab::Graph;

pub fn run() -> obdd_lab::Result<()> {
    // A 5-cycle with one chord: treewidth 2.
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])?;
    let td = min_fill(&g);
    println!("min-fill width on G: {}", validate(&g, &td)?);
    print!("{}", td.to_dot(&g, "G"));

    let gc = cnf_of_graph(&g);
    let f = &gc.cnf;
    let inc = f.incidence_graph();
    let primal = f.primal_graph();
    let primal_td = min_fill(&primal);
    let inc_td = incidence_from_primal(&primal_td, f)?;
    println!(
        "primal width {}, incidence width {}",
        validate(&primal, &primal_td)?,
        validate(&inc.graph, &inc_td)?
    );

    let pd = tree_to_path(&inc_td, &inc.graph)?;
    println!(
        "path decomposition of width {} with {} bags",
        validate(&inc.graph, &pd)?,
        pd.bags.len()
    );
    for end in [PathEnd::First, PathEnd::Last] {
        let o = ordering_respecting_f(&pd, &inc, end)?;
        let names: Vec<String> = o.order.iter().map(|&v| f.name(v)).collect();
        println!("{end:?}: {}", names.join(" "));
    }
    println!("{}", serde_json::to_string(&pd.to_json())?);
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
