//! Exact deterministic decision-tree depth.

use std::collections::HashMap;

use crate::error::Result;
use crate::table::{check_cap, TruthTable};

/// Largest arity accepted by the exact solver.
pub const DT_CAP: usize = 15;

/// `DT(f)`, memoized on subfunction tables.
///
/// Subfunctions reached by different restriction orders are the same table,
/// so they share one memo entry.
pub fn decision_tree_depth(f: &TruthTable) -> Result<usize> {
    check_cap("decision tree depth", f.arity(), DT_CAP)?;
    let mut memo = HashMap::new();
    Ok(depth(f, &mut memo))
}

fn depth(f: &TruthTable, memo: &mut HashMap<TruthTable, usize>) -> usize {
    if f.is_constant() {
        return 0;
    }
    if let Some(&d) = memo.get(f) {
        return d;
    }
    let mut best = usize::MAX;
    for var in 1..=f.arity() {
        // Querying an irrelevant variable never beats skipping it.
        if !f.depends_on(var).expect("var in range") {
            continue;
        }
        let low = f.restrict_var(var, false).expect("var in range");
        let d_low = depth(&low, memo);
        if d_low + 1 >= best {
            continue;
        }
        let high = f.restrict_var(var, true).expect("var in range");
        let d_high = depth(&high, memo);
        best = best.min(1 + d_low.max(d_high));
        if best == 1 {
            break;
        }
    }
    memo.insert(f.clone(), best);
    best
}
