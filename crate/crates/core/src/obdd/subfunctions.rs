use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::ObddError;
use crate::caps::Caps;
use crate::cnf::{Assignment, Cnf, TruthTable, Var};
use crate::decomposition::{Provenance, VariableOrder};

/// Number of distinct subfunctions `F_S` over all assignments `S` to the
/// first `prefix_len` variables of `order`.
///
/// Enumerates the `2^prefix_len` restrictions and compares their truth
/// tables over the remaining variables.
pub fn count_subfunctions(f: &Cnf, order: &VariableOrder, prefix_len: usize, caps: &Caps) -> Result<usize, ObddError> {
    let n = f.num_vars();
    if !order.is_permutation_of(n) || prefix_len > n {
        return Err(ObddError::NotAPermutation { expected: n });
    }
    let (prefix, residual) = order.order.split_at(prefix_len);
    if prefix_len > caps.oracle {
        return Err(ObddError::CapExceeded {
            vars: prefix_len,
            cap: caps.oracle,
        });
    }
    let mut seen: HashSet<TruthTable> = HashSet::new();
    for idx in 0..1u64 << prefix_len {
        let g = f.restrict(&Assignment::from_index(prefix, idx))?;
        seen.insert(g.truth_table_with_cap(residual, caps.oracle)?);
    }
    Ok(seen.len())
}

/// Smallest reduced OBDD over all variable orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinSize {
    /// Internal nodes plus terminals.
    pub size: usize,
    pub internal: usize,
    pub best_order: VariableOrder,
}

/// Exact minimum OBDD size by dynamic programming over the set of
/// variables tested above the current level.
///
/// For a set `S`, the nodes labelled `x` directly below `S` are the
/// distinct subfunctions after fixing `S` that depend on `x`.
pub fn min_obdd_size_exact(f: &Cnf, caps: &Caps) -> Result<MinSize, ObddError> {
    let n = f.num_vars();
    if n > caps.exact_order || n >= 32 {
        return Err(ObddError::CapExceeded {
            vars: n,
            cap: caps.exact_order.min(31),
        });
    }
    let all: Vec<Var> = (0..n).map(Var::from_slot).collect();
    let table = f.truth_table(&all)?;
    let terminals = if table.constant_value().is_some() { 1 } else { 2 };

    let full = (1u64 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    let mut choice = vec![u8::MAX; 1 << n];
    best[0] = 0;
    // Distinct residual tables per subset of the current level; table
    // positions follow the residual variables in slot order.
    let mut level: HashMap<u64, Vec<TruthTable>> = HashMap::from([(0, vec![table])]);
    for _ in 0..n {
        let mut next: HashMap<u64, Vec<TruthTable>> = HashMap::new();
        let mut subsets: Vec<u64> = level.keys().copied().collect();
        subsets.sort_unstable();
        for s in subsets {
            let tables = &level[&s];
            let residual: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 0).collect();
            for (pos, &x) in residual.iter().enumerate() {
                let cost = tables.iter().filter(|t| t.depends_on(pos)).count();
                let t = s | 1 << x;
                let candidate = best[s as usize] + cost;
                if candidate < best[t as usize] {
                    best[t as usize] = candidate;
                    choice[t as usize] = x as u8;
                }
                // Build each successor's tables from its lowest-missing parent only.
                let lowest_in_t = t.trailing_zeros() as usize;
                let parent_via_lowest = t & !(1 << lowest_in_t);
                if parent_via_lowest != s {
                    continue;
                }
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for g in tables {
                    for value in [false, true] {
                        let c = g.cofactor(pos, value);
                        if seen.insert(c.clone()) {
                            out.push(c);
                        }
                    }
                }
                next.insert(t, out);
            }
        }
        level = next;
    }

    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let x = choice[s as usize] as usize;
        order.push(Var::from_slot(x));
        s &= !(1 << x);
    }
    order.reverse();
    let internal = best[full as usize];
    Ok(MinSize {
        size: internal + terminals,
        internal,
        best_order: VariableOrder::new(order, Provenance::Enumerated),
    })
}
