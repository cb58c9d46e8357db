//! Compile a CNF under two orders, follow a computation path and answer
//! clausal entailment queries.

use obdd_lab::cnf::{Assignment, Var};
use obdd_lab::decomposition::{Provenance, VariableOrder};
use obdd_lab::{Cnf, Obdd};

pub fn run() -> obdd_lab::Result<()> {
    let f = Cnf::from_dimacs_clauses(4, &[&[1, 2], &[3, 4]])?;
    let x = |i| Var::new(i).expect("positive index");

    let good = VariableOrder::natural(4);
    let bad = VariableOrder::new(vec![x(1), x(3), x(2), x(4)], Provenance::Explicit);
    let d = Obdd::compile(&f, &good)?;
    let e = Obdd::compile(&f, &bad)?;
    println!(
        "x1 x2 x3 x4: {} internal nodes, layers {:?}",
        d.internal_count(),
        d.layer_sizes()
    );
    println!(
        "x1 x3 x2 x4: {} internal nodes, layers {:?}",
        e.internal_count(),
        e.layer_sizes()
    );
    let vars: Vec<Var> = f.vars().collect();
    for i in 0..1u64 << 4 {
        let a = Assignment::from_index(&vars, i);
        assert_eq!(d.evaluate(&a)?, e.evaluate(&a)?);
    }
    assert!(d.equivalent(&Obdd::compile(&f, &good)?)?);

    let a = Assignment::from_pairs([(x(1), false), (x(2), true), (x(3), false), (x(4), false)])?;
    let path = d.path(&a)?;
    println!(
        "path {:?} reads {}, f = {}",
        path.nodes,
        path.assignment,
        d.evaluate(&a)?
    );

    let partial = Assignment::from_pairs([(x(1), false), (x(2), false)])?;
    println!("x1 = x2 = 0 extends to a model: {}", d.clausal_entailment(&partial)?);

    let u = Obdd::compile_uniform(&f, &good)?;
    println!("uniform layers {:?}", u.layer_sizes());
    print!("{}", d.to_dot("fig1"));
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}
