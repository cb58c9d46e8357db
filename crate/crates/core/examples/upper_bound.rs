//! Layer-by-layer check of the `1 + 2^{p+1}` bound for orders respecting a
//! path decomposition of the incidence graph.

use obdd_lab::bounds::verify_upper_bound;
use obdd_lab::cnf::random_kcnf;
use obdd_lab::decomposition::{explicit_cliquetree_decomposition, incidence_from_primal, tree_to_path, PathEnd};
use obdd_lab::graph::{clique_tree_cnf, cnf_of_graph, path_graph};
use obdd_lab::Caps;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    let seed = 1;
    let mut reports = Vec::new();

    let (_, gc) = clique_tree_cnf(2, 1);
    let inc = gc.cnf.incidence_graph();
    let td = incidence_from_primal(&explicit_cliquetree_decomposition(2, 1), &gc.cnf)?;
    let pd = tree_to_path(&td, &inc.graph)?;
    reports.push(verify_upper_bound(
        "F_{2,1} explicit",
        &gc.cnf,
        Some(&pd),
        PathEnd::First,
        &caps,
        seed,
    )?);
    reports.push(verify_upper_bound(
        "F_{2,1} min-fill",
        &gc.cnf,
        None,
        PathEnd::Last,
        &caps,
        seed,
    )?);
    reports.push(verify_upper_bound(
        "CNF(P_6)",
        &cnf_of_graph(&path_graph(6)).cnf,
        None,
        PathEnd::First,
        &caps,
        seed,
    )?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    reports.push(verify_upper_bound(
        "random 3-CNF",
        &random_kcnf(10, 12, 3, &mut rng),
        None,
        PathEnd::First,
        &caps,
        seed,
    )?);

    for rep in &reports {
        println!(
            "{}: p = {}, layers {}, bound {}, pass {}",
            rep.instance,
            rep.params.p.unwrap_or(0),
            rep.measured["layer_sizes"],
            rep.measured["layer_bound"],
            rep.pass()
        );
    }
    obdd_lab::bounds::write_csv(&reports, std::io::stdout())?;
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
