//! Tree-shaped arithmetic miters: two expression trees over shared bit-vector
//! leaves, compiled to ripple adders and shift-and-add multipliers, with a
//! disequality comparator asserting that the outputs differ. Node widths are
//! computed bottom-up so no overflow occurs (+ adds a bit, × doubles).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, CnfFormula, Lit, Var};
use crate::resolution::VarPartition;

use super::circuit::{encode_circuit, Netlist, Wire};

/// A binary expression tree with named bit-vector leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeExpr {
    Leaf(String),
    Add(Box<TreeExpr>, Box<TreeExpr>),
    Mul(Box<TreeExpr>, Box<TreeExpr>),
}

impl TreeExpr {
    pub fn leaves(&self) -> BTreeSet<String> {
        match self {
            TreeExpr::Leaf(name) => [name.clone()].into(),
            TreeExpr::Add(l, r) | TreeExpr::Mul(l, r) => {
                let mut s = l.leaves();
                s.extend(r.leaves());
                s
            }
        }
    }
}

impl fmt::Display for TreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeExpr::Leaf(n) => write!(f, "{n}"),
            TreeExpr::Add(l, r) => write!(f, "({l}+{r})"),
            TreeExpr::Mul(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprParseError {
    #[error("unexpected character `{0}` in expression")]
    UnexpectedChar(char),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("dangling input after expression: `{0}`")]
    TrailingInput(String),
}

/// Parses `a*(b+c)`-style expressions; `*` and `·` both multiply, and `+`
/// binds looser than `*`. Leaf names are alphanumeric words.
pub fn parse_expr(text: &str) -> Result<TreeExpr, ExprParseError> {
    struct P<'a> {
        chars: std::iter::Peekable<std::str::Chars<'a>>,
    }
    impl P<'_> {
        fn skip_ws(&mut self) {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.chars.next();
            }
        }
        fn expr(&mut self) -> Result<TreeExpr, ExprParseError> {
            let mut acc = self.term()?;
            loop {
                self.skip_ws();
                if matches!(self.chars.peek(), Some('+')) {
                    self.chars.next();
                    acc = TreeExpr::Add(Box::new(acc), Box::new(self.term()?));
                } else {
                    return Ok(acc);
                }
            }
        }
        fn term(&mut self) -> Result<TreeExpr, ExprParseError> {
            let mut acc = self.factor()?;
            loop {
                self.skip_ws();
                if matches!(self.chars.peek(), Some('*') | Some('·')) {
                    self.chars.next();
                    acc = TreeExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                } else {
                    return Ok(acc);
                }
            }
        }
        fn factor(&mut self) -> Result<TreeExpr, ExprParseError> {
            self.skip_ws();
            match self.chars.peek() {
                Some('(') => {
                    self.chars.next();
                    let inner = self.expr()?;
                    self.skip_ws();
                    match self.chars.next() {
                        Some(')') => Ok(inner),
                        Some(c) => Err(ExprParseError::UnexpectedChar(c)),
                        None => Err(ExprParseError::UnexpectedEnd),
                    }
                }
                Some(c) if c.is_alphanumeric() || *c == '_' => {
                    let mut name = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_alphanumeric() || *c == '_') {
                        name.push(self.chars.next().unwrap());
                    }
                    Ok(TreeExpr::Leaf(name))
                }
                Some(&c) => Err(ExprParseError::UnexpectedChar(c)),
                None => Err(ExprParseError::UnexpectedEnd),
            }
        }
    }
    let mut p = P { chars: text.chars().peekable() };
    let e = p.expr()?;
    p.skip_ws();
    if let Some(&c) = p.chars.peek() {
        return Err(ExprParseError::TrailingInput(c.to_string()));
    }
    Ok(e)
}

/// One internal node of a compiled tree.
#[derive(Debug, Clone)]
pub struct NodeInfo {
    /// 1 or 2, for the first or second tree.
    pub tree: u8,
    /// Prefix-order index of the node within its tree.
    pub index: usize,
    /// `'+'` or `'*'`.
    pub label: char,
    pub expr: String,
    pub output: Vec<Wire>,
    /// All wires created while compiling the subtree (gate outputs,
    /// including the node's own output bits).
    pub subtree_wires: Vec<Wire>,
    /// Leaf names occurring in the subtree.
    pub leaves: BTreeSet<String>,
}

/// A compiled miter: the CNF, the netlist pair (as one shared netlist), the
/// shared leaf inputs, and the per-node bookkeeping.
#[derive(Debug, Clone)]
pub struct TreeMiter {
    pub formula: CnfFormula,
    pub netlist: Netlist,
    pub inputs: BTreeMap<String, Vec<Wire>>,
    pub nodes: Vec<NodeInfo>,
    pub outputs: (Vec<Wire>, Vec<Wire>),
}

fn compile(
    nl: &mut Netlist,
    expr: &TreeExpr,
    tree: u8,
    n: usize,
    inputs: &BTreeMap<String, Vec<Wire>>,
    nodes: &mut Vec<NodeInfo>,
) -> Vec<Wire> {
    match expr {
        TreeExpr::Leaf(name) => inputs[name].clone(),
        TreeExpr::Add(l, r) | TreeExpr::Mul(l, r) => {
            let index = nodes.iter().filter(|ni| ni.tree == tree).count();
            nodes.push(NodeInfo {
                tree,
                index,
                label: if matches!(expr, TreeExpr::Add(..)) { '+' } else { '*' },
                expr: expr.to_string(),
                output: Vec::new(),
                subtree_wires: Vec::new(),
                leaves: expr.leaves(),
            });
            let slot = nodes.len() - 1;
            let start = nl.num_wires();
            let lw = compile(nl, l, tree, n, inputs, nodes);
            let rw = compile(nl, r, tree, n, inputs, nodes);
            let out = match expr {
                TreeExpr::Add(..) => add_words(nl, &lw, &rw),
                TreeExpr::Mul(..) => mul_words(nl, &lw, &rw),
                TreeExpr::Leaf(_) => unreachable!(),
            };
            let end = nl.num_wires();
            nodes[slot].output = out.clone();
            nodes[slot].subtree_wires = (start + 1..=end).collect();
            out
        }
    }
}

/// Addition with the bottom-up width rule: output width `max + 1`.
fn add_words(nl: &mut Netlist, a: &[Wire], b: &[Wire]) -> Vec<Wire> {
    let width = a.len().max(b.len());
    let pad = |nl: &mut Netlist, w: &[Wire], width: usize| -> Vec<Wire> {
        let mut v = w.to_vec();
        while v.len() < width {
            let z = nl.const0();
            v.push(z);
        }
        v
    };
    let ap = pad(nl, a, width);
    let bp = pad(nl, b, width);
    let (mut sum, carry) = nl.ripple_add(&ap, &bp);
    sum.push(carry);
    sum
}

/// Shift-and-add array multiplier: output width `|a| + |b|`. Row `j` of
/// partial products is added into the accumulator window starting at bit
/// `j`; the topmost carry is always zero by the width rule and is dropped.
fn mul_words(nl: &mut Netlist, a: &[Wire], b: &[Wire]) -> Vec<Wire> {
    let width = a.len() + b.len();
    let mut acc: Vec<Wire> = Vec::with_capacity(width);
    for &ai in a {
        acc.push(nl.and(ai, b[0]));
    }
    while acc.len() < width {
        acc.push(nl.const0());
    }
    for (j, &bj) in b.iter().enumerate().skip(1) {
        let mut carry = nl.const0();
        for (i, &ai) in a.iter().enumerate() {
            let pp = nl.and(ai, bj);
            let (s, c) = nl.full_adder(acc[j + i], pp, carry);
            acc[j + i] = s;
            carry = c;
        }
        for slot in acc.iter_mut().skip(j + a.len()) {
            let (s, c) = nl.half_adder(*slot, carry);
            *slot = s;
            carry = c;
        }
    }
    acc
}

/// Builds the miter of `t1` and `t2` over shared `n`-bit leaves: both trees
/// are compiled against the same inputs, every output bit pair feeds a
/// disequality comparator, and the single output-differs assertion is added.
pub fn build_tree_miter(t1: &TreeExpr, t2: &TreeExpr, n: usize) -> TreeMiter {
    assert!(n >= 1);
    let mut leaves = t1.leaves();
    leaves.extend(t2.leaves());

    let mut nl = Netlist::new();
    let mut inputs = BTreeMap::new();
    for name in &leaves {
        inputs.insert(name.clone(), nl.input_group(name, n));
    }

    let mut nodes = Vec::new();
    nl.begin_stage("tree1");
    let mut out1 = compile(&mut nl, t1, 1, n, &inputs, &mut nodes);
    nl.begin_stage("tree2");
    let mut out2 = compile(&mut nl, t2, 2, n, &inputs, &mut nodes);

    nl.begin_stage("comparator");
    let width = out1.len().max(out2.len());
    while out1.len() < width {
        let z = nl.const0();
        out1.push(z);
    }
    while out2.len() < width {
        let z = nl.const0();
        out2.push(z);
    }
    let diffs: Vec<Wire> = out1.iter().zip(&out2).map(|(&x, &y)| nl.xor(x, y)).collect();
    let ne = nl.or_many(&diffs);
    nl.set_group("out1", out1.clone());
    nl.set_group("out2", out2.clone());

    let mut formula = encode_circuit(&nl);
    formula.add_clause(Clause::new(vec![Lit::positive(Var(ne))]));
    TreeMiter { formula, netlist: nl, inputs, nodes, outputs: (out1, out2) }
}

impl TreeMiter {
    pub fn input_wires(&self) -> Vec<Wire> {
        self.inputs.values().flatten().copied().collect()
    }

    pub fn find_node(&self, tree: u8, index: usize) -> Option<&NodeInfo> {
        self.nodes.iter().find(|ni| ni.tree == tree && ni.index == index)
    }

    /// Variable partition induced by an internal node `v`: `after` holds the
    /// circuit variables strictly inside `v`'s subtree, `shared` holds `v`'s
    /// output bits plus the leaf inputs of the subtree, and `before` is
    /// everything else. Validates the split-formula condition.
    pub fn partition_at_node(&self, node: &NodeInfo) -> Result<VarPartition, crate::resolution::PartitionError> {
        let output: BTreeSet<Wire> = node.output.iter().copied().collect();
        let mut shared: BTreeSet<Var> = node.output.iter().map(|&w| Var(w)).collect();
        for name in &node.leaves {
            shared.extend(self.inputs[name].iter().map(|&w| Var(w)));
        }
        let after: BTreeSet<Var> = node
            .subtree_wires
            .iter()
            .filter(|w| !output.contains(w))
            .map(|&w| Var(w))
            .collect();
        let mut before: BTreeSet<Var> = BTreeSet::new();
        for v in self.formula.occurring_vars() {
            if !shared.contains(&v) && !after.contains(&v) {
                before.insert(v);
            }
        }
        let vp = VarPartition::new(before, after, shared);
        vp.validate(&self.formula)?;
        Ok(vp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::circuit::exhaustive_miter_unsat;
    use crate::oracles::brute_sat;

    fn expr(s: &str) -> TreeExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn parser_handles_precedence_and_parens() {
        assert_eq!(expr("x*y").to_string(), "(x*y)");
        assert_eq!(expr("x·(w+y+z)").to_string(), "(x*((w+y)+z))");
        assert_eq!(expr("x*w + (x*y + x*z)").to_string(), "((x*w)+((x*y)+(x*z)))");
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("(x").is_err());
    }

    #[test]
    fn commutativity_miter_one_bit_unsat() {
        let m = build_tree_miter(&expr("x*y"), &expr("y*x"), 1);
        assert!(!brute_sat(&m.formula).unwrap().is_sat());
    }

    #[test]
    fn addition_commutativity_two_bits_unsat() {
        let m = build_tree_miter(&expr("x+y"), &expr("y+x"), 2);
        let last = m.formula.clauses().last().unwrap().clone();
        assert!(exhaustive_miter_unsat(&m.netlist, &[last], &m.input_wires()));
    }

    #[test]
    fn distributivity_instance_unsat() {
        let m = build_tree_miter(&expr("x*(w+y+z)"), &expr("x*w+(x*y+x*z)"), 1);
        let last = m.formula.clauses().last().unwrap().clone();
        assert!(exhaustive_miter_unsat(&m.netlist, &[last], &m.input_wires()));
    }

    #[test]
    fn inequivalent_trees_are_sat() {
        let m = build_tree_miter(&expr("x*y"), &expr("x+y"), 1);
        assert!(brute_sat(&m.formula).unwrap().is_sat());
    }

    #[test]
    fn partition_at_node_satisfies_split_condition() {
        let m = build_tree_miter(&expr("x*y"), &expr("y*x"), 1);
        let node = m.find_node(1, 0).unwrap().clone();
        let vp = m.partition_at_node(&node).unwrap();
        assert!(!vp.after.is_empty() || node.subtree_wires.len() == node.output.len());
        assert!(vp.shared.iter().count() >= 2);
    }

    #[test]
    fn figure_style_partition_classes_reported() {
        // at the + node of x*y + x*z inside the distributivity instance
        let m = build_tree_miter(&expr("x*(w+y+z)"), &expr("x*w+(x*y+x*z)"), 1);
        let plus = m
            .nodes
            .iter()
            .find(|ni| ni.tree == 2 && ni.label == '+' && ni.expr.contains("(x*y)+(x*z)"))
            .unwrap()
            .clone();
        let vp = m.partition_at_node(&plus).unwrap();
        assert!(!vp.before.is_empty() && !vp.after.is_empty() && !vp.shared.is_empty());
    }
}
