//! Cut matchings, matching width of permutations and exact matching width.

use obdd_lab::graph::{clique_tree, path_graph};
use obdd_lab::matching::{cut_matching, matching_width_exact, permutation_matching_width, verify_cltreemt};
use obdd_lab::Caps;

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    let p10 = path_graph(10);
    let natural: Vec<usize> = (0..10).collect();
    let alternating = [0, 2, 4, 6, 8, 1, 3, 5, 7, 9];
    println!(
        "mw of natural order on P10: {}",
        permutation_matching_width(&p10, &natural)?
    );
    println!(
        "mw of alternating order on P10: {}",
        permutation_matching_width(&p10, &alternating)?
    );
    let cut = cut_matching(&p10, &alternating[..5])?;
    println!("matching across the even/odd cut: {:?}", cut.matching);
    println!("mw(P10) = {}", matching_width_exact(&p10, &caps)?.value);

    for (r, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let ct = clique_tree(r, k);
        let rep = verify_cltreemt(r, k, &caps, 0, 1000)?;
        println!(
            "CT_{{{r},{k}}}: {} vertices, mw = {} (at least {} required, {:?})",
            ct.graph.vertex_count(),
            rep.value,
            rep.required,
            rep.mode
        );
    }
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
