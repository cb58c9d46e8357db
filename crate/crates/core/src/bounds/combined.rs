use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cnf::{Cnf, Var};
use crate::decomposition::{Provenance, VariableOrder};
use crate::error::{Error, Result};
use crate::matching::subset_minmax;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinedWidth {
    pub value: usize,
    pub witness_order: VariableOrder,
}

fn clause_masks(f: &Cnf) -> Vec<u64> {
    f.clauses()
        .iter()
        .map(|c| c.vars().fold(0u64, |m, v| m | 1 << v.slot()))
        .collect()
}

/// `min(cut, path)` for the prefix set `s`: `cut` counts clauses with
/// variables on both sides, `path` counts prefix variables in such clauses.
fn index(clauses: &[u64], s: u64) -> usize {
    let mut cut = 0;
    let mut touched = 0u64;
    for &c in clauses {
        if c & s != 0 && c & !s != 0 {
            cut += 1;
            touched |= c & s;
        }
    }
    cut.min(touched.count_ones() as usize)
}

/// Combined width of a single order: the largest index over its prefixes.
pub fn combined_width_of_order(f: &Cnf, order: &VariableOrder) -> Result<usize> {
    let n = f.num_vars();
    if !order.is_permutation_of(n) || n > 64 {
        return Err(Error::InvalidParameter(format!(
            "order is not a permutation of {n} variables"
        )));
    }
    let clauses = clause_masks(f);
    let mut s = 0u64;
    let mut best = 0;
    for v in &order.order {
        s |= 1 << v.slot();
        best = best.max(index(&clauses, s));
    }
    Ok(best)
}

/// Minimum combined width over all orders, by subset DP.
pub fn combined_width_exact(f: &Cnf, caps: &Caps) -> Result<CombinedWidth> {
    let n = f.num_vars();
    if n > caps.subset_dp || n >= 32 {
        return Err(Error::InvalidParameter(format!(
            "{n} variables exceed the subset-DP cap of {}",
            caps.subset_dp.min(31)
        )));
    }
    let clauses = clause_masks(f);
    let (value, order) = subset_minmax(n, |s| index(&clauses, s));
    Ok(CombinedWidth {
        value,
        witness_order: VariableOrder::new(order.into_iter().map(Var::from_slot).collect(), Provenance::Enumerated),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(x ∨ x_i)` for `i ≤ m` and `(y_1 ∨ .. ∨ y_m)`; `x` is variable 1.
    fn f1_and_f2(m: usize) -> Cnf {
        let mut clauses: Vec<Vec<i64>> = (0..m).map(|i| vec![1, 2 + i as i64]).collect();
        clauses.push((0..m).map(|i| (2 + m + i) as i64).collect());
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        Cnf::from_dimacs_clauses(1 + 2 * m, &refs).unwrap()
    }

    #[test]
    fn paper_example_has_width_one() {
        let f = f1_and_f2(4);
        assert_eq!(combined_width_of_order(&f, &VariableOrder::natural(9)).unwrap(), 1);
        let cw = combined_width_exact(&f, &Caps::default()).unwrap();
        assert_eq!(cw.value, 1);
        assert_eq!(combined_width_of_order(&f, &cw.witness_order).unwrap(), 1);
    }

    #[test]
    fn small_cases() {
        let clause = Cnf::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(combined_width_exact(&clause, &Caps::default()).unwrap().value, 1);
        assert_eq!(
            combined_width_exact(&Cnf::constant_true(0), &Caps::default())
                .unwrap()
                .value,
            0
        );
        assert_eq!(
            combined_width_exact(&Cnf::constant_true(3), &Caps::default())
                .unwrap()
                .value,
            0
        );
    }
}
