//! An unsatisfiable parity-band family with controlled pathwidth.
//!
//! The width-`w` member over `n` variables constrains every window of
//! `w + 1` consecutive variables to the parity of the alternating
//! assignment `x_i = (i-1) mod 2`, pins the first `w` variables to that
//! assignment, and pins the last variable to its opposite. The window
//! system propagates the alternation forward from the pinned prefix, so the
//! formula is unsatisfiable, while every pin is a pair of binary clauses
//! (never a unit), so nothing propagates before the first decision. The
//! primal graph is the band of cliques `{x_i..x_{i+w}}` with pathwidth
//! exactly `w`; the generator ships the bag sequence `{x_i, …, x_{i+w}}`.

use std::collections::BTreeSet;

use crate::cnf::{Clause, CnfFormula, Lit, Var};
use crate::structure::PathDecomposition;

fn alternation(i: u32) -> bool {
    (i - 1) % 2 == 1
}

/// All CNF clauses of `x_a ⊕ … ⊕ x_b = parity` (2^w clauses of width w+1):
/// one clause per sign pattern with the wrong parity, negated.
fn window_clauses(clauses: &mut Vec<Clause>, vars: &[Var], parity: bool) {
    let k = vars.len();
    for mask in 0u32..1 << k {
        // the assignment where bit j of mask gives x_{vars[j]}
        let ones = mask.count_ones() % 2 == 1;
        if ones != parity {
            // forbid this assignment
            let lits: Vec<Lit> = vars
                .iter()
                .enumerate()
                .map(|(j, &v)| Lit::new(v, mask >> j & 1 == 0))
                .collect();
            clauses.push(Clause::new(lits));
        }
    }
}

/// Forces `lit` true without a unit clause, via the pair
/// `(lit ∨ helper)` ∧ `(lit ∨ ¬helper)`.
fn pin(clauses: &mut Vec<Clause>, lit: Lit, helper: Var) {
    clauses.push(Clause::new(vec![lit, Lit::positive(helper)]));
    clauses.push(Clause::new(vec![lit, Lit::negative(helper)]));
}

/// Builds the width-`w` band over `n ≥ w + 2` variables together with its
/// width-`w` path decomposition.
pub fn build_xor_band(n: u32, width: u32) -> (CnfFormula, PathDecomposition) {
    assert!(width >= 1 && n >= width + 2, "need n ≥ width + 2");
    let mut clauses = Vec::new();

    for i in 1..=n - width {
        let vars: Vec<Var> = (i..=i + width).map(Var).collect();
        let parity =
            vars.iter().fold(false, |acc, v| acc ^ alternation(v.0));
        window_clauses(&mut clauses, &vars, parity);
    }
    for i in 1..=width {
        pin(&mut clauses, Lit::new(Var(i), alternation(i)), Var(i + 1));
    }
    pin(&mut clauses, Lit::new(Var(n), !alternation(n)), Var(n - 1));

    let bags: Vec<BTreeSet<u32>> = (1..=n - width).map(|i| (i..=i + width).collect()).collect();
    (CnfFormula::from_clauses(n, clauses), PathDecomposition::new(bags))
}
