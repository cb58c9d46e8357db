//! Combined width of `F_1 ∧ F_2`, where one variable meets many clauses
//! and one clause meets many variables.

use obdd_lab::bounds::{combined_width_exact, combined_width_of_order};
use obdd_lab::decomposition::VariableOrder;
use obdd_lab::{Caps, Cnf};

/// `F_1 = ∧ (x ∨ y_i)` over `m` variables `y_i`, and `F_2` a single clause
/// over `m` fresh variables.
fn f1_and_f2(m: usize) -> obdd_lab::Result<Cnf> {
    let mut clauses: Vec<Vec<i64>> = (0..m).map(|i| vec![1, 2 + i as i64]).collect();
    clauses.push((0..m).map(|i| (2 + m + i) as i64).collect());
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    Ok(Cnf::from_dimacs_clauses(1 + 2 * m, &refs)?)
}

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    for m in 1..=4 {
        let f = f1_and_f2(m)?;
        let cw = combined_width_exact(&f, &caps)?;
        let natural = combined_width_of_order(&f, &VariableOrder::natural(f.num_vars()))?;
        println!("m = {m}: combined width {} (natural order {natural})", cw.value);
    }
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
