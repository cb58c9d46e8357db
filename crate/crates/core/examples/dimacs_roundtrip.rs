//! Parse a DIMACS formula, restrict it, print its truth table and write it back.

use obdd_lab::cnf::{parse_dimacs, Assignment, Cnf, Var};

const TEXT: &str = "c two independent clauses\np cnf 4 2\n1 2 0\n3 4 0\n";

pub fn run() -> obdd_lab::Result<()> {
    let f = parse_dimacs(TEXT)?;
    println!("{} variables, {} clauses", f.num_vars(), f.num_clauses());

    let x = |i| Var::new(i).expect("positive index");
    let s = Assignment::from_pairs([(x(1), false)])?;
    let g = f.restrict(&s)?;
    println!("after x1 = 0:\n{}", g.to_dimacs());

    let all: Vec<Var> = f.vars().collect();
    let table = f.truth_table(&all)?;
    println!("{} of {} assignments satisfy f", table.count_ones(), table.len());

    let back: Cnf = parse_dimacs(&f.to_dimacs())?;
    assert_eq!(back.clauses(), f.clauses());
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
