//! Dual function encodings: `F⁺(T⁺, X)` asserting `f(X)` and `F⁻(T⁻, X)`
//! asserting `¬f(X)` over disjoint fresh auxiliaries, so the conjunction is
//! unsatisfiable and `f` itself is the unique interpolant over `X`.

use std::collections::BTreeSet;

use crate::cnf::{Clause, CnfFormula, Lit, Var};
use crate::oracles::TruthTable;
use crate::resolution::VarPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    /// `x_1 ⊕ … ⊕ x_n` over `n` inputs.
    Parity,
    /// `⋀ (x_i ↔ z_i)` over `2n` inputs (x bits then z bits).
    Eq,
}

impl FunctionKind {
    pub fn arity(self, n: usize) -> usize {
        match self {
            FunctionKind::Parity => n,
            FunctionKind::Eq => 2 * n,
        }
    }

    /// Semantic value on a packed input (bit `i` of `input` is input `i+1`).
    pub fn value(self, n: usize, input: u32) -> bool {
        match self {
            FunctionKind::Parity => (input & ((1 << n) - 1)).count_ones() % 2 == 1,
            FunctionKind::Eq => {
                let x = input & ((1 << n) - 1);
                let z = (input >> n) & ((1 << n) - 1);
                x == z
            }
        }
    }

    pub fn truth_table(self, n: usize) -> TruthTable {
        TruthTable::from_fn(self.arity(n), |input| self.value(n, input))
    }
}

/// The combined encoding `F⁺ ∧ F⁻` with its variable partition
/// `before = T⁺, after = T⁻, shared = X`.
#[derive(Debug, Clone)]
pub struct FunctionEncoding {
    pub formula: CnfFormula,
    pub partition: VarPartition,
    /// Input variables, in input order.
    pub inputs: Vec<Var>,
}

/// Encodes `f` positively and negatively with fresh auxiliary chains.
/// Variables: inputs `1..=arity`, then the T⁺ chain, then the T⁻ chain.
pub fn build_function_encoding(kind: FunctionKind, n: usize) -> FunctionEncoding {
    assert!(n >= 1);
    let arity = kind.arity(n) as u32;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut next = arity;

    let encode_side = |clauses: &mut Vec<Clause>, next: &mut u32, positive: bool| -> Vec<Var> {
        let mut aux = Vec::new();
        let mut fresh = || {
            *next += 1;
            Var(*next)
        };
        let out = match kind {
            FunctionKind::Parity => {
                // t_1 ↔ x_1, t_i ↔ t_{i-1} ⊕ x_i
                let mut t = fresh();
                aux.push(t);
                buf_clauses(clauses, t, Var(1));
                for i in 2..=n as u32 {
                    let nt = fresh();
                    aux.push(nt);
                    xor_clauses(clauses, nt, t, Var(i));
                    t = nt;
                }
                t
            }
            FunctionKind::Eq => {
                // e_i ↔ (x_i ↔ z_i), a_1 ↔ e_1, a_i ↔ a_{i-1} ∧ e_i
                let mut es = Vec::new();
                for i in 1..=n as u32 {
                    let e = fresh();
                    aux.push(e);
                    xnor_clauses(clauses, e, Var(i), Var(i + n as u32));
                    es.push(e);
                }
                let mut a = es[0];
                for &e in &es[1..] {
                    let na = fresh();
                    aux.push(na);
                    and_clauses(clauses, na, a, e);
                    a = na;
                }
                a
            }
        };
        clauses.push(Clause::new(vec![Lit::new(out, positive)]));
        aux
    };

    let t_plus = encode_side(&mut clauses, &mut next, true);
    let t_minus = encode_side(&mut clauses, &mut next, false);

    let formula = CnfFormula::from_clauses(next, clauses);
    let inputs: Vec<Var> = (1..=arity).map(Var).collect();
    let partition = VarPartition::new(
        t_plus.into_iter().collect(),
        t_minus.into_iter().collect(),
        inputs.iter().copied().collect::<BTreeSet<_>>(),
    );
    FunctionEncoding { formula, partition, inputs }
}

fn buf_clauses(clauses: &mut Vec<Clause>, out: Var, a: Var) {
    let (o, a) = (Lit::positive(out), Lit::positive(a));
    clauses.push(Clause::new(vec![!o, a]));
    clauses.push(Clause::new(vec![o, !a]));
}

fn xor_clauses(clauses: &mut Vec<Clause>, out: Var, a: Var, b: Var) {
    let (o, a, b) = (Lit::positive(out), Lit::positive(a), Lit::positive(b));
    clauses.push(Clause::new(vec![!o, a, b]));
    clauses.push(Clause::new(vec![!o, !a, !b]));
    clauses.push(Clause::new(vec![o, !a, b]));
    clauses.push(Clause::new(vec![o, a, !b]));
}

fn xnor_clauses(clauses: &mut Vec<Clause>, out: Var, a: Var, b: Var) {
    let (o, a, b) = (Lit::positive(out), Lit::positive(a), Lit::positive(b));
    clauses.push(Clause::new(vec![!o, !a, b]));
    clauses.push(Clause::new(vec![!o, a, !b]));
    clauses.push(Clause::new(vec![o, a, b]));
    clauses.push(Clause::new(vec![o, !a, !b]));
}

fn and_clauses(clauses: &mut Vec<Clause>, out: Var, a: Var, b: Var) {
    let (o, a, b) = (Lit::positive(out), Lit::positive(a), Lit::positive(b));
    clauses.push(Clause::new(vec![!o, a]));
    clauses.push(Clause::new(vec![!o, b]));
    clauses.push(Clause::new(vec![o, !a, !b]));
}

/// Evaluates a CNF whose variables all lie in `inputs` on a packed input
/// point, producing the semantic truth table over those inputs.
pub fn semantic_truth_table(f: &CnfFormula, inputs: &[Var]) -> TruthTable {
    let arity = inputs.len();
    TruthTable::from_fn(arity, |point| {
        let mut values = vec![false; f.num_vars() as usize + 1];
        for (i, v) in inputs.iter().enumerate() {
            values[v.index()] = point >> i & 1 == 1;
        }
        f.eval(&values)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_sat;

    fn side_formula(enc: &FunctionEncoding, positive: bool) -> CnfFormula {
        let aux = if positive { &enc.partition.before } else { &enc.partition.after };
        let clauses: Vec<Clause> = enc
            .formula
            .clauses()
            .iter()
            .filter(|c| c.vars().any(|v| aux.contains(&v)))
            .cloned()
            .collect();
        CnfFormula::from_clauses(enc.formula.num_vars(), clauses)
    }

    fn assert_valid_encoding(kind: FunctionKind, n: usize) {
        let enc = build_function_encoding(kind, n);
        enc.partition.validate(&enc.formula).unwrap();
        assert!(!brute_sat(&enc.formula).unwrap().is_sat(), "combined encoding must be UNSAT");
        let plus = side_formula(&enc, true);
        let minus = side_formula(&enc, false);
        // exactly one side satisfiable under every input assignment
        for point in 0..1u32 << enc.inputs.len() {
            let fix = |f: &CnfFormula| {
                let mut q = f.clone();
                for (i, v) in enc.inputs.iter().enumerate() {
                    q.add_clause(Clause::new(vec![Lit::new(*v, point >> i & 1 == 1)]));
                }
                brute_sat(&q).unwrap().is_sat()
            };
            let value = kind.value(n, point);
            assert_eq!(fix(&plus), value, "F+ at point {point:b}");
            assert_eq!(fix(&minus), !value, "F- at point {point:b}");
        }
    }

    #[test]
    fn parity_encodings_are_valid() {
        assert_valid_encoding(FunctionKind::Parity, 1);
        assert_valid_encoding(FunctionKind::Parity, 2);
        assert_valid_encoding(FunctionKind::Parity, 3);
    }

    #[test]
    fn eq_encodings_are_valid() {
        assert_valid_encoding(FunctionKind::Eq, 1);
        assert_valid_encoding(FunctionKind::Eq, 2);
    }

    #[test]
    fn parity_n1_sides_assert_the_input() {
        // F⁺ forces x1 true, F⁻ forces it false
        let enc = build_function_encoding(FunctionKind::Parity, 1);
        let plus = side_formula(&enc, true);
        let mut q = plus.clone();
        q.add_clause(Clause::from_dimacs(&[-1]));
        assert!(!brute_sat(&q).unwrap().is_sat());
        let minus = side_formula(&enc, false);
        let mut q = minus.clone();
        q.add_clause(Clause::from_dimacs(&[1]));
        assert!(!brute_sat(&q).unwrap().is_sat());
    }
}
