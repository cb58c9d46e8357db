//! Every example runs to completion.

#[allow(dead_code)]
#[path = "../examples/dimacs_roundtrip.rs"]
mod dimacs_roundtrip;

#[test]
fn example_dimacs_roundtrip() {
    dimacs_roundtrip::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/clique_tree_instances.rs"]
mod clique_tree_instances;

#[test]
fn example_clique_tree_instances() {
    clique_tree_instances::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/decompositions.rs"]
mod decompositions;

#[test]
fn example_decompositions() {
    decompositions::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/matching_width.rs"]
mod matching_width;

#[test]
fn example_matching_width() {
    matching_width::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/compile_obdd.rs"]
mod compile_obdd;

#[test]
fn example_compile_obdd() {
    compile_obdd::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/fooling_sets.rs"]
mod fooling_sets;

#[test]
fn example_fooling_sets() {
    fooling_sets::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/upper_bound.rs"]
mod upper_bound;

#[test]
fn example_upper_bound() {
    upper_bound::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/lower_bound.rs"]
mod lower_bound;

#[test]
fn example_lower_bound() {
    lower_bound::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/combined_width.rs"]
mod combined_width;

#[test]
fn example_combined_width() {
    combined_width::run().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/bookkeeping.rs"]
mod bookkeeping;

#[test]
fn example_bookkeeping() {
    bookkeeping::run().unwrap();
}
