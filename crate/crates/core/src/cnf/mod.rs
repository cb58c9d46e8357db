//! CNF formulas over dense integer variables.
//!
//! Variables are numbered `1..=num_vars`. A clause is a set of literals that
//! never contains a variable in both polarities. The canonical constant
//! formulas are: `true` = no clauses, `false` = exactly one empty clause.

mod dimacs;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::DEFAULT_ORACLE_CAP;
use crate::graph::Graph;

pub use dimacs::{parse_dimacs, read_dimacs};
pub use table::TruthTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header: `{0}`")]
    MalformedHeader(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("variable {var} out of range 1..={num_vars}")]
    VarOutOfRange { var: i64, num_vars: usize },
    #[error("clause contains both {var} and its negation")]
    ComplementaryPair { var: Var },
    #[error("variable {0} is bound twice")]
    DuplicateBinding(Var),
    #[error("variable {0} is not a variable of the formula")]
    UnknownVariable(Var),
    #[error("assignment does not bind {0}")]
    PartialAssignment(Var),
    #[error("variable {0} occurs in the formula but not in the table domain")]
    OutsideDomain(Var),
    #[error("{vars} variables exceed the truth-table cap of {cap}")]
    OracleCapExceeded { vars: usize, cap: usize },
}

/// A propositional variable, identified by its 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(u32);

impl Var {
    /// `None` for index 0.
    pub fn new(index: u32) -> Option<Var> {
        (index > 0).then_some(Var(index))
    }

    /// Variable with 0-based position `slot`.
    pub fn from_slot(slot: usize) -> Var {
        Var(slot as u32 + 1)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// 0-based position, used for vertex ids and array indexing.
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable with a polarity. Serialized as a signed DIMACS integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    pub fn from_dimacs(value: i64) -> Option<Literal> {
        let index = u32::try_from(value.unsigned_abs()).ok()?;
        Var::new(index).map(|var| Literal::new(var, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let index = i64::from(self.var.0);
        if self.positive {
            index
        } else {
            -index
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Literal {
        Literal::new(self.var, !self.positive)
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn holds_under(self, value: bool) -> bool {
        value == self.positive
    }
}

impl From<Literal> for i64 {
    fn from(lit: Literal) -> i64 {
        lit.to_dimacs()
    }
}

impl TryFrom<i64> for Literal {
    type Error = String;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        Literal::from_dimacs(value).ok_or_else(|| format!("invalid literal {value}"))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "¬{}", self.var)
        }
    }
}

/// A disjunction of literals, kept in insertion order without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// Repeated literals are merged; complementary pairs are rejected.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Clause, CnfError> {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if out.contains(&lit) {
                continue;
            }
            if out.contains(&lit.negated()) {
                return Err(CnfError::ComplementaryPair { var: lit.var });
            }
            out.push(lit);
        }
        Ok(Clause(out))
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.0.iter().any(|l| l.var == var)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// A CNF over the variables `1..=num_vars`, with optional display names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    names: BTreeMap<Var, String>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Cnf, CnfError> {
        for clause in &clauses {
            for var in clause.vars() {
                if var.slot() >= num_vars {
                    return Err(CnfError::VarOutOfRange {
                        var: i64::from(var.index()),
                        num_vars,
                    });
                }
            }
        }
        Ok(Cnf {
            num_vars,
            clauses,
            names: BTreeMap::new(),
        })
    }

    /// Builds from DIMACS-style integer clauses.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Cnf, CnfError> {
        let mut parsed = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let mut lits = Vec::with_capacity(clause.len());
            for &value in clause.iter() {
                let lit = Literal::from_dimacs(value)
                    .filter(|l| l.var.slot() < num_vars)
                    .ok_or(CnfError::VarOutOfRange { var: value, num_vars })?;
                lits.push(lit);
            }
            parsed.push(Clause::new(lits)?);
        }
        Cnf::new(num_vars, parsed)
    }

    /// Canonical constant true: no clauses.
    pub fn constant_true(num_vars: usize) -> Cnf {
        Cnf {
            num_vars,
            clauses: Vec::new(),
            names: BTreeMap::new(),
        }
    }

    /// Canonical constant false: one empty clause.
    pub fn constant_false(num_vars: usize) -> Cnf {
        Cnf {
            num_vars,
            clauses: vec![Clause::empty()],
            names: BTreeMap::new(),
        }
    }

    pub fn with_names(mut self, names: BTreeMap<Var, String>) -> Cnf {
        self.names = names;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn names(&self) -> &BTreeMap<Var, String> {
        &self.names
    }

    /// Display name of `var`, falling back to `x<i>`.
    pub fn name(&self, var: Var) -> String {
        self.names.get(&var).cloned().unwrap_or_else(|| var.to_string())
    }

    /// All declared variables, `1..=num_vars`.
    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.num_vars).map(Var::from_slot)
    }

    /// Variables that occur in at least one clause.
    pub fn occurring_vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn is_true(&self) -> bool {
        self.clauses.is_empty()
    }

    /// True when some clause is empty, which makes the formula unsatisfiable.
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Subfunction `F_S`: satisfied clauses dropped, falsified literals removed.
    ///
    /// The variable index space is kept; bound variables simply no longer
    /// occur. Constant results are returned in canonical form.
    pub fn restrict(&self, s: &Assignment) -> Result<Cnf, CnfError> {
        for var in s.vars() {
            if var.slot() >= self.num_vars {
                return Err(CnfError::UnknownVariable(var));
            }
        }
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for clause in &self.clauses {
            let mut kept = Vec::with_capacity(clause.len());
            let mut satisfied = false;
            for &lit in clause.literals() {
                match s.get(lit.var) {
                    Some(value) if lit.holds_under(value) => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => kept.push(lit),
                }
            }
            if satisfied {
                continue;
            }
            if kept.is_empty() {
                return Ok(Cnf::constant_false(self.num_vars).with_names(self.names.clone()));
            }
            clauses.push(Clause(kept));
        }
        Ok(Cnf {
            num_vars: self.num_vars,
            clauses,
            names: self.names.clone(),
        })
    }

    /// Value under an assignment binding every occurring variable.
    pub fn evaluate(&self, a: &Assignment) -> Result<bool, CnfError> {
        let mut result = true;
        for clause in &self.clauses {
            let mut sat = false;
            for &lit in clause.literals() {
                let value = a.get(lit.var).ok_or(CnfError::PartialAssignment(lit.var))?;
                sat |= lit.holds_under(value);
            }
            result &= sat;
        }
        Ok(result)
    }

    /// Truth table over `over` with the default oracle cap.
    pub fn truth_table(&self, over: &[Var]) -> Result<TruthTable, CnfError> {
        self.truth_table_with_cap(over, DEFAULT_ORACLE_CAP)
    }

    /// Bit `i` is the value under the assignment where `over[j]` takes bit `j` of `i`.
    pub fn truth_table_with_cap(&self, over: &[Var], cap: usize) -> Result<TruthTable, CnfError> {
        if over.len() > cap {
            return Err(CnfError::OracleCapExceeded { vars: over.len(), cap });
        }
        let mut position = vec![usize::MAX; self.num_vars];
        for (j, var) in over.iter().enumerate() {
            if var.slot() < self.num_vars {
                position[var.slot()] = j;
            }
        }
        let mut table = TruthTable::constant(over.len(), true);
        let mut clause_cols = Vec::new();
        for clause in &self.clauses {
            let mut cols = Vec::with_capacity(clause.len());
            for &lit in clause.literals() {
                let pos = position[lit.var.slot()];
                if pos == usize::MAX {
                    return Err(CnfError::OutsideDomain(lit.var));
                }
                cols.push((pos, lit.positive));
            }
            clause_cols.push(cols);
        }
        table.retain_where(|word| {
            let mut acc = !0u64;
            for cols in &clause_cols {
                let mut c = 0u64;
                for &(pos, positive) in cols {
                    let col = TruthTable::variable_word(pos, word);
                    c |= if positive { col } else { !col };
                }
                acc &= c;
            }
            acc
        });
        Ok(table)
    }

    /// DIMACS text: header line, then one zero-terminated clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause.literals() {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Variables are vertices `slot`; edge when two variables share a clause.
    pub fn primal_graph(&self) -> Graph {
        let mut g = Graph::new(self.num_vars);
        g.set_labels(self.vars().map(|v| self.name(v)).collect());
        for clause in &self.clauses {
            let lits = clause.literals();
            for (i, a) in lits.iter().enumerate() {
                for b in &lits[i + 1..] {
                    let (u, v) = (a.var.slot(), b.var.slot());
                    if !g.has_edge(u, v) {
                        g.add_edge(u, v).expect("distinct in-range vertices");
                    }
                }
            }
        }
        g
    }

    /// Bipartite variable/clause graph: variable vertices first, then clauses.
    pub fn incidence_graph(&self) -> IncidenceGraph {
        let n = self.num_vars;
        let mut g = Graph::new(n + self.clauses.len());
        let mut labels: Vec<String> = self.vars().map(|v| self.name(v)).collect();
        labels.extend((1..=self.clauses.len()).map(|j| format!("C{j}")));
        g.set_labels(labels);
        for (j, clause) in self.clauses.iter().enumerate() {
            for var in clause.vars() {
                g.add_edge(var.slot(), n + j).expect("bipartite edge");
            }
        }
        IncidenceGraph {
            graph: g,
            num_vars: n,
            num_clauses: self.clauses.len(),
        }
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "{clause}")?;
        }
        Ok(())
    }
}

/// Which side of the incidence bipartition a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexTag {
    Variable(Var),
    Clause(usize),
}

/// Incidence graph with the vertex numbering made explicit.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl IncidenceGraph {
    pub fn var_vertex(&self, var: Var) -> usize {
        var.slot()
    }

    pub fn clause_vertex(&self, clause: usize) -> usize {
        self.num_vars + clause
    }

    pub fn tag(&self, vertex: usize) -> VertexTag {
        if vertex < self.num_vars {
            VertexTag::Variable(Var::from_slot(vertex))
        } else {
            VertexTag::Clause(vertex - self.num_vars)
        }
    }
}

/// A partial or total truth assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Result<Assignment, CnfError> {
        let mut a = Assignment::new();
        for (var, value) in pairs {
            a.bind(var, value)?;
        }
        Ok(a)
    }

    /// Set of literals view; complementary pairs are rejected.
    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Result<Assignment, CnfError> {
        Assignment::from_pairs(lits.into_iter().map(|l| (l.var, l.positive)))
    }

    /// Decodes `index` over `over`: `over[j]` takes bit `j`.
    pub fn from_index(over: &[Var], index: u64) -> Assignment {
        Assignment(
            over.iter()
                .enumerate()
                .map(|(j, &v)| (v, (index >> j) & 1 == 1))
                .collect(),
        )
    }

    pub fn bind(&mut self, var: Var, value: bool) -> Result<(), CnfError> {
        if self.0.contains_key(&var) {
            return Err(CnfError::DuplicateBinding(var));
        }
        self.0.insert(var, value);
        Ok(())
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }

    pub fn literals(&self) -> Vec<Literal> {
        self.iter().map(|(v, b)| Literal::new(v, b)).collect()
    }

    /// Union of two assignments over disjoint variable sets.
    pub fn union(&self, other: &Assignment) -> Result<Assignment, CnfError> {
        let mut out = self.clone();
        for (var, value) in other.iter() {
            out.bind(var, value)?;
        }
        Ok(out)
    }

    /// Restriction to the variables accepted by `keep`.
    pub fn project(&self, keep: impl Fn(Var) -> bool) -> Assignment {
        Assignment(self.0.iter().filter(|(&v, _)| keep(v)).map(|(&v, &b)| (v, b)).collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, lit) in self.literals().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, "}}")
    }
}

/// Uniformly random k-CNF without repeated variables inside a clause.
pub fn random_kcnf<R: Rng + ?Sized>(num_vars: usize, num_clauses: usize, width: usize, rng: &mut R) -> Cnf {
    let width = width.min(num_vars);
    let slots: Vec<usize> = (0..num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let lits = slots
                .choose_multiple(rng, width)
                .map(|&s| Literal::new(Var::from_slot(s), rng.gen_bool(0.5)));
            Clause::new(lits).expect("distinct variables")
        })
        .collect();
    Cnf::new(num_vars, clauses).expect("variables in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i).unwrap()
    }

    fn fig1() -> Cnf {
        Cnf::from_dimacs_clauses(4, &[&[1, 2], &[3, 4]]).unwrap()
    }

    fn assign(pairs: &[(u32, bool)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|&(i, b)| (v(i), b))).unwrap()
    }

    #[test]
    fn restrict_unit_simplification() {
        let r = fig1().restrict(&assign(&[(1, false)])).unwrap();
        assert_eq!(
            r.clauses(),
            Cnf::from_dimacs_clauses(4, &[&[2], &[3, 4]]).unwrap().clauses()
        );
    }

    #[test]
    fn restrict_drops_satisfied_clause() {
        let r = fig1().restrict(&assign(&[(1, true)])).unwrap();
        assert_eq!(r.clauses(), Cnf::from_dimacs_clauses(4, &[&[3, 4]]).unwrap().clauses());
    }

    #[test]
    fn restrict_to_canonical_false() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let r = f.restrict(&assign(&[(1, false), (2, false)])).unwrap();
        assert_eq!(r, Cnf::constant_false(2));
        let t = f.restrict(&assign(&[(2, true)])).unwrap();
        assert_eq!(t, Cnf::constant_true(2));
    }

    #[test]
    fn restrict_rejects_foreign_variable() {
        let err = fig1().restrict(&assign(&[(5, true)])).unwrap_err();
        assert_eq!(err, CnfError::UnknownVariable(v(5)));
    }

    #[test]
    fn evaluate_examples() {
        let f = fig1();
        assert!(f
            .evaluate(&assign(&[(1, true), (2, false), (3, true), (4, false)]))
            .unwrap());
        assert!(!f
            .evaluate(&assign(&[(1, false), (2, false), (3, true), (4, true)]))
            .unwrap());
        assert!(Cnf::constant_true(0).evaluate(&Assignment::new()).unwrap());
        assert_eq!(
            f.evaluate(&assign(&[(1, true)])).unwrap_err(),
            CnfError::PartialAssignment(v(2))
        );
    }

    #[test]
    fn truth_table_examples() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let t = f.truth_table(&[v(1), v(2)]).unwrap();
        assert_eq!(t.bits().collect::<Vec<_>>(), vec![false, true, true, true]);

        let t = Cnf::constant_false(1).truth_table(&[v(1)]).unwrap();
        assert_eq!(t.bits().collect::<Vec<_>>(), vec![false, false]);

        let over: Vec<Var> = (1..=4).map(v).collect();
        assert_eq!(fig1().truth_table(&over).unwrap().count_ones(), 9);
    }

    #[test]
    fn truth_table_wide_matches_pointwise_evaluation() {
        // 8 variables spans several words and exercises the high-variable columns.
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        let f = random_kcnf(8, 14, 3, &mut rng);
        let over: Vec<Var> = f.vars().collect();
        let t = f.truth_table(&over).unwrap();
        for i in 0..256u64 {
            let a = Assignment::from_index(&over, i);
            assert_eq!(t.get(i as usize), f.evaluate(&a).unwrap(), "index {i}");
        }
    }

    #[test]
    fn truth_table_cap_and_domain() {
        let f = fig1();
        let over: Vec<Var> = (1..=4).map(v).collect();
        assert_eq!(
            f.truth_table_with_cap(&over, 3).unwrap_err(),
            CnfError::OracleCapExceeded { vars: 4, cap: 3 }
        );
        assert_eq!(f.truth_table(&over[..3]).unwrap_err(), CnfError::OutsideDomain(v(4)));
    }

    #[test]
    fn primal_graph_examples() {
        let g = fig1().primal_graph();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 3));

        let k2 = Cnf::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap().primal_graph();
        assert_eq!(k2.edge_count(), 3);

        let empty = Cnf::constant_true(3).primal_graph();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (3, 0));
    }

    #[test]
    fn incidence_graph_examples() {
        let inc = fig1().incidence_graph();
        assert_eq!(inc.graph.vertex_count(), 6);
        assert_eq!(inc.graph.degree(inc.clause_vertex(0)), 2);
        assert_eq!(inc.graph.degree(inc.clause_vertex(1)), 2);
        assert_eq!(inc.tag(4), VertexTag::Clause(0));
        assert_eq!(inc.tag(0), VertexTag::Variable(v(1)));

        let star = Cnf::from_dimacs_clauses(5, &[&[1, 2, 3, 4, 5]])
            .unwrap()
            .incidence_graph();
        assert_eq!(star.graph.degree(star.clause_vertex(0)), 5);
        assert_eq!(star.graph.edge_count(), 5);
    }

    #[test]
    fn clause_rejects_complementary_pair() {
        let err = Clause::new([v(1).positive(), v(1).negative()]).unwrap_err();
        assert_eq!(err, CnfError::ComplementaryPair { var: v(1) });
        assert_eq!(Clause::new([v(1).positive(), v(1).positive()]).unwrap().len(), 1);
    }

    #[test]
    fn assignment_rejects_double_binding() {
        let err = Assignment::from_pairs([(v(1), true), (v(1), false)]).unwrap_err();
        assert_eq!(err, CnfError::DuplicateBinding(v(1)));
    }

    #[test]
    fn json_keeps_names() {
        let mut names = BTreeMap::new();
        names.insert(v(1), "X_u".to_string());
        let f = Cnf::from_dimacs_clauses(2, &[&[1, -2]]).unwrap().with_names(names);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num_vars":2,"clauses":[[1,-2]],"names":{"1":"X_u"}}"#);
        let back: Cnf = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
