//! CNF instance families, path-decomposition variable orders and OBDD size
//! experiments.
//!
//! The crate builds the clique-tree formulas `F_{r,k} = CNF(CT_{r,k})`,
//! compiles CNFs into reduced OBDDs under orders derived from path
//! decompositions of the incidence graph, and checks upper and lower size
//! bounds on concrete instances:
//!
//! - [`cnf`]: formulas, DIMACS, restriction, truth tables
//! - [`graph`]: graphs, `T_r`, `CT_{r,k}`, `CNF(G)`
//! - [`decomposition`]: tree/path decompositions and orders respecting them
//! - [`matching`]: cut matchings and exact matching width
//! - [`obdd`]: compilation, subfunction counts, fooling sets
//! - [`bounds`]: experiment harness and reports
//!
//! ```
//! use obdd_lab::cnf::Cnf;
//! use obdd_lab::decomposition::VariableOrder;
//! use obdd_lab::obdd::Obdd;
//!
//! let f = Cnf::from_dimacs_clauses(4, &[&[1, 2], &[3, 4]]).unwrap();
//! let d = Obdd::compile(&f, &VariableOrder::natural(4)).unwrap();
//! assert_eq!(d.internal_count(), 4);
//! ```
//!
//! See `examples/` for one runnable program per capability.

pub mod bounds;
pub mod caps;
pub mod cli;
pub mod cnf;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod matching;
pub mod obdd;

pub use caps::Caps;
pub use cnf::{Assignment, Clause, Cnf, Literal, TruthTable, Var};
pub use decomposition::{PathDecomposition, TreeDecomposition, VariableOrder};
pub use error::{Error, Result};
pub use graph::Graph;
pub use obdd::Obdd;
