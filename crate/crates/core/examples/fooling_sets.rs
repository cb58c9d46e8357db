//! Fooling sets of `F_{2,1}` under a few orders and the OBDD sizes they force.

use obdd_lab::decomposition::VariableOrder;
use obdd_lab::graph::clique_tree_cnf;
use obdd_lab::obdd::{fooling_set, verify_fooling_set};
use obdd_lab::{Caps, Obdd};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    let (ct, gc) = clique_tree_cnf(2, 1);
    let f = &gc.cnf;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut orders = vec![VariableOrder::natural(f.num_vars())];
    for _ in 0..4 {
        let mut o = VariableOrder::natural(f.num_vars());
        o.order.shuffle(&mut rng);
        orders.push(o);
    }
    for o in &orders {
        let fs = fooling_set(&gc, &ct.graph, o, &caps)?;
        let distinct = verify_fooling_set(&fs, f, &caps)?;
        let d = Obdd::compile_with_caps(f, o, &caps, false)?;
        println!(
            "t = {}, |SF_1| = {}, restrictions distinct: {distinct}, internal nodes {} >= {}",
            fs.t(),
            fs.prefix.len(),
            d.internal_count(),
            1usize << fs.t()
        );
    }
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
