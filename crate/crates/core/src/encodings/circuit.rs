//! Gate-level netlists and their Tseitin encoding to CNF.
//!
//! Wires are CNF variables: wire id `w` encodes as variable `w`, so the
//! wire→variable map is the identity (total and injective by construction).
//! Gates are single-output; adders are composed from these primitives.

use std::collections::BTreeMap;

use crate::cnf::{Clause, CnfFormula, Lit, Var};

pub type Wire = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    And,
    Or,
    Xor,
    /// Equality (XNOR).
    Eq,
    Not,
    Buf,
    /// `output = inputs[0] ? inputs[1] : inputs[2]`, encoded with the
    /// 4-clause form (the two redundant clauses are omitted so a MUX
    /// contributes exactly 1 variable and 4 clauses).
    Mux,
    Const0,
    Const1,
}

#[derive(Debug, Clone)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: Vec<Wire>,
    pub output: Wire,
    pub stage: usize,
}

impl Gate {
    pub fn num_clauses(&self) -> usize {
        match self.kind {
            GateKind::And | GateKind::Or => 3,
            GateKind::Xor | GateKind::Eq | GateKind::Mux => 4,
            GateKind::Not | GateKind::Buf => 2,
            GateKind::Const0 | GateKind::Const1 => 1,
        }
    }
}

/// A combinational netlist with named wire groups and per-gate stage tags.
#[derive(Debug, Clone, Default)]
pub struct Netlist {
    num_wires: u32,
    gates: Vec<Gate>,
    driven: Vec<bool>,
    groups: BTreeMap<String, Vec<Wire>>,
    stages: Vec<String>,
    current_stage: usize,
}

impl Netlist {
    pub fn new() -> Netlist {
        Netlist {
            num_wires: 0,
            gates: Vec::new(),
            driven: vec![false],
            groups: BTreeMap::new(),
            stages: vec!["input".to_string()],
            current_stage: 0,
        }
    }

    /// Switches the stage tag for subsequently added gates.
    pub fn begin_stage(&mut self, name: &str) {
        if let Some(idx) = self.stages.iter().position(|s| s == name) {
            self.current_stage = idx;
        } else {
            self.stages.push(name.to_string());
            self.current_stage = self.stages.len() - 1;
        }
    }

    pub fn num_wires(&self) -> u32 {
        self.num_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn stage_name(&self, idx: usize) -> &str {
        &self.stages[idx]
    }

    /// Allocates an undriven input wire.
    pub fn input(&mut self) -> Wire {
        self.num_wires += 1;
        self.driven.push(false);
        self.num_wires
    }

    /// Allocates a vector of input wires and registers it as a group.
    pub fn input_group(&mut self, name: &str, width: usize) -> Vec<Wire> {
        let wires: Vec<Wire> = (0..width).map(|_| self.input()).collect();
        self.set_group(name, wires.clone());
        wires
    }

    pub fn set_group(&mut self, name: &str, wires: Vec<Wire>) {
        debug_assert!(wires.iter().all(|&w| w >= 1 && w <= self.num_wires));
        self.groups.insert(name.to_string(), wires);
    }

    pub fn group(&self, name: &str) -> Option<&[Wire]> {
        self.groups.get(name).map(|v| v.as_slice())
    }

    pub fn groups(&self) -> &BTreeMap<String, Vec<Wire>> {
        &self.groups
    }

    fn gate(&mut self, kind: GateKind, inputs: Vec<Wire>) -> Wire {
        for &w in &inputs {
            assert!(w >= 1 && w <= self.num_wires, "wire {w} used before definition");
        }
        self.num_wires += 1;
        self.driven.push(true);
        let output = self.num_wires;
        self.gates.push(Gate { kind, inputs, output, stage: self.current_stage });
        output
    }

    pub fn and(&mut self, a: Wire, b: Wire) -> Wire {
        self.gate(GateKind::And, vec![a, b])
    }

    pub fn or(&mut self, a: Wire, b: Wire) -> Wire {
        self.gate(GateKind::Or, vec![a, b])
    }

    pub fn xor(&mut self, a: Wire, b: Wire) -> Wire {
        self.gate(GateKind::Xor, vec![a, b])
    }

    pub fn eq(&mut self, a: Wire, b: Wire) -> Wire {
        self.gate(GateKind::Eq, vec![a, b])
    }

    pub fn not(&mut self, a: Wire) -> Wire {
        self.gate(GateKind::Not, vec![a])
    }

    pub fn buf(&mut self, a: Wire) -> Wire {
        self.gate(GateKind::Buf, vec![a])
    }

    /// 2-input multiplexer: `sel ? a : b`.
    pub fn mux(&mut self, sel: Wire, a: Wire, b: Wire) -> Wire {
        self.gate(GateKind::Mux, vec![sel, a, b])
    }

    /// Drives a previously allocated (still undriven) wire with a gate.
    /// Used when a wire's id must exist before its defining logic, e.g. so
    /// an early clause can mention it.
    pub fn drive(&mut self, kind: GateKind, inputs: Vec<Wire>, output: Wire) {
        for &w in &inputs {
            assert!(w >= 1 && w <= self.num_wires, "wire {w} used before definition");
        }
        assert!(
            output >= 1 && output <= self.num_wires && !self.driven[output as usize],
            "wire {output} already driven"
        );
        self.driven[output as usize] = true;
        self.gates.push(Gate { kind, inputs, output, stage: self.current_stage });
    }

    pub fn const0(&mut self) -> Wire {
        self.gate(GateKind::Const0, vec![])
    }

    pub fn const1(&mut self) -> Wire {
        self.gate(GateKind::Const1, vec![])
    }

    /// Chained OR over a non-empty wire list.
    pub fn or_many(&mut self, wires: &[Wire]) -> Wire {
        assert!(!wires.is_empty());
        let mut acc = wires[0];
        for &w in &wires[1..] {
            acc = self.or(acc, w);
        }
        acc
    }

    /// Chained AND over a non-empty wire list.
    pub fn and_many(&mut self, wires: &[Wire]) -> Wire {
        assert!(!wires.is_empty());
        let mut acc = wires[0];
        for &w in &wires[1..] {
            acc = self.and(acc, w);
        }
        acc
    }

    /// Half adder: `(sum, carry)`.
    pub fn half_adder(&mut self, a: Wire, b: Wire) -> (Wire, Wire) {
        (self.xor(a, b), self.and(a, b))
    }

    /// Full adder composed of two half adders and an OR: `(sum, carry_out)`.
    pub fn full_adder(&mut self, a: Wire, b: Wire, cin: Wire) -> (Wire, Wire) {
        let (s1, c1) = self.half_adder(a, b);
        let (sum, c2) = self.half_adder(s1, cin);
        let cout = self.or(c1, c2);
        (sum, cout)
    }

    /// Ripple-carry addition of two little-endian words of equal width;
    /// returns `(sum bits, carry_out)`.
    pub fn ripple_add(&mut self, a: &[Wire], b: &[Wire]) -> (Vec<Wire>, Wire) {
        assert_eq!(a.len(), b.len());
        let mut carry = self.const0();
        let mut sum = Vec::with_capacity(a.len());
        for (&x, &y) in a.iter().zip(b) {
            let (s, c) = self.full_adder(x, y, carry);
            sum.push(s);
            carry = c;
        }
        (sum, carry)
    }

    /// Evaluates the netlist gate by gate. `inputs` must cover all undriven
    /// wires; returns values indexed by wire id (index 0 unused).
    pub fn simulate(&self, inputs: &BTreeMap<Wire, bool>) -> Vec<bool> {
        let mut values = vec![false; self.num_wires as usize + 1];
        let mut known = vec![false; self.num_wires as usize + 1];
        for (&w, &v) in inputs {
            values[w as usize] = v;
            known[w as usize] = true;
        }
        for (w, &driven) in self.driven.iter().enumerate().skip(1) {
            if !driven {
                assert!(known[w], "input wire {w} not supplied");
            }
        }
        for g in &self.gates {
            let inv: Vec<bool> = g.inputs.iter().map(|&w| values[w as usize]).collect();
            let out = match g.kind {
                GateKind::And => inv[0] && inv[1],
                GateKind::Or => inv[0] || inv[1],
                GateKind::Xor => inv[0] ^ inv[1],
                GateKind::Eq => inv[0] == inv[1],
                GateKind::Not => !inv[0],
                GateKind::Buf => inv[0],
                GateKind::Mux => {
                    if inv[0] {
                        inv[1]
                    } else {
                        inv[2]
                    }
                }
                GateKind::Const0 => false,
                GateKind::Const1 => true,
            };
            values[g.output as usize] = out;
            known[g.output as usize] = true;
        }
        values
    }

    /// Per-stage `(name, variables, clauses)` accounting of the encoding.
    pub fn stage_counts(&self) -> Vec<(String, usize, usize)> {
        let mut counts: Vec<(usize, usize)> = vec![(0, 0); self.stages.len()];
        for g in &self.gates {
            counts[g.stage].0 += 1;
            counts[g.stage].1 += g.num_clauses();
        }
        self.stages
            .iter()
            .cloned()
            .zip(counts)
            .map(|(name, (vars, clauses))| (name, vars, clauses))
            .filter(|(_, vars, _)| *vars > 0)
            .collect()
    }

    /// Wire-map file: one `<group>[<bit>] = <var>` line per group bit.
    pub fn wire_map(&self) -> String {
        let mut out = String::new();
        for (name, wires) in &self.groups {
            for (i, w) in wires.iter().enumerate() {
                out.push_str(&format!("{name}[{i}] = {w}\n"));
            }
        }
        out
    }
}

/// Appends the Tseitin clauses of one gate to `clauses`.
pub fn gate_clauses(g: &Gate, clauses: &mut Vec<Clause>) {
    let out = Lit::positive(Var(g.output));
    let lit = |w: Wire| Lit::positive(Var(w));
    match g.kind {
        GateKind::And => {
            let (a, b) = (lit(g.inputs[0]), lit(g.inputs[1]));
            clauses.push(Clause::new(vec![!out, a]));
            clauses.push(Clause::new(vec![!out, b]));
            clauses.push(Clause::new(vec![out, !a, !b]));
        }
        GateKind::Or => {
            let (a, b) = (lit(g.inputs[0]), lit(g.inputs[1]));
            clauses.push(Clause::new(vec![out, !a]));
            clauses.push(Clause::new(vec![out, !b]));
            clauses.push(Clause::new(vec![!out, a, b]));
        }
        GateKind::Xor => {
            let (a, b) = (lit(g.inputs[0]), lit(g.inputs[1]));
            clauses.push(Clause::new(vec![!out, a, b]));
            clauses.push(Clause::new(vec![!out, !a, !b]));
            clauses.push(Clause::new(vec![out, !a, b]));
            clauses.push(Clause::new(vec![out, a, !b]));
        }
        GateKind::Eq => {
            let (a, b) = (lit(g.inputs[0]), lit(g.inputs[1]));
            clauses.push(Clause::new(vec![!out, !a, b]));
            clauses.push(Clause::new(vec![!out, a, !b]));
            clauses.push(Clause::new(vec![out, a, b]));
            clauses.push(Clause::new(vec![out, !a, !b]));
        }
        GateKind::Not => {
            let a = lit(g.inputs[0]);
            clauses.push(Clause::new(vec![!out, !a]));
            clauses.push(Clause::new(vec![out, a]));
        }
        GateKind::Buf => {
            let a = lit(g.inputs[0]);
            clauses.push(Clause::new(vec![!out, a]));
            clauses.push(Clause::new(vec![out, !a]));
        }
        GateKind::Mux => {
            let (s, a, b) = (lit(g.inputs[0]), lit(g.inputs[1]), lit(g.inputs[2]));
            clauses.push(Clause::new(vec![!s, !a, out]));
            clauses.push(Clause::new(vec![!s, a, !out]));
            clauses.push(Clause::new(vec![s, !b, out]));
            clauses.push(Clause::new(vec![s, b, !out]));
        }
        GateKind::Const0 => clauses.push(Clause::new(vec![!out])),
        GateKind::Const1 => clauses.push(Clause::new(vec![out])),
    }
}

/// Tseitin-encodes the netlist; the wire→variable map is the identity.
pub fn encode_circuit(nl: &Netlist) -> CnfFormula {
    let mut clauses = Vec::new();
    for g in nl.gates() {
        gate_clauses(g, &mut clauses);
    }
    CnfFormula::from_clauses(nl.num_wires(), clauses)
}

/// Exhaustively checks that the netlist encoding plus `extra` clauses is
/// unsatisfiable by simulating every input assignment; sound because every
/// Tseitin auxiliary is functionally determined by the inputs. Only feasible
/// for small input counts.
pub fn exhaustive_miter_unsat(nl: &Netlist, extra: &[Clause], input_wires: &[Wire]) -> bool {
    assert!(input_wires.len() <= 24, "too many inputs for exhaustive simulation");
    for mask in 0u64..(1u64 << input_wires.len()) {
        let assignment: BTreeMap<Wire, bool> =
            input_wires.iter().enumerate().map(|(i, &w)| (w, mask >> i & 1 == 1)).collect();
        let values = nl.simulate(&assignment);
        let satisfied = extra
            .iter()
            .all(|c| c.literals().iter().any(|l| l.satisfied_by(values[l.var().index()])));
        if satisfied {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_sat;

    #[test]
    fn single_and_gate_counts() {
        let mut nl = Netlist::new();
        let a = nl.input();
        let b = nl.input();
        nl.begin_stage("and");
        nl.and(a, b);
        let f = encode_circuit(&nl);
        assert_eq!(f.num_clauses(), 3);
        assert_eq!(nl.stage_counts(), vec![("and".to_string(), 1, 3)]);
    }

    #[test]
    fn single_mux_is_one_var_four_clauses() {
        let mut nl = Netlist::new();
        let s = nl.input();
        let a = nl.input();
        let b = nl.input();
        nl.begin_stage("mux");
        nl.mux(s, a, b);
        let f = encode_circuit(&nl);
        assert_eq!(f.num_clauses(), 4);
        assert_eq!(f.num_vars(), 4);
    }

    #[test]
    fn three_bit_equality_layer_counts() {
        let mut nl = Netlist::new();
        let a = nl.input_group("a", 3);
        let b = nl.input_group("b", 3);
        nl.begin_stage("eq");
        for i in 0..3 {
            nl.eq(a[i], b[i]);
        }
        let f = encode_circuit(&nl);
        assert_eq!(f.num_clauses(), 12);
        assert_eq!(nl.stage_counts(), vec![("eq".to_string(), 3, 12)]);
    }

    #[test]
    fn gate_encodings_match_simulation() {
        let mut nl = Netlist::new();
        let a = nl.input();
        let b = nl.input();
        nl.begin_stage("all");
        let outs = [
            nl.and(a, b),
            nl.or(a, b),
            nl.xor(a, b),
            nl.eq(a, b),
            nl.not(a),
            nl.buf(b),
            nl.mux(a, b, b),
        ];
        let f = encode_circuit(&nl);
        for mask in 0..4u32 {
            let inputs: BTreeMap<Wire, bool> =
                [(a, mask & 1 == 1), (b, mask & 2 == 2)].into_iter().collect();
            let vals = nl.simulate(&inputs);
            assert!(f.eval(&vals));
        }
        // flipping any single gate output must falsify the encoding
        let inputs: BTreeMap<Wire, bool> = [(a, true), (b, false)].into_iter().collect();
        let mut vals = nl.simulate(&inputs);
        for &o in &outs {
            vals[o as usize] = !vals[o as usize];
            assert!(!f.eval(&vals));
            vals[o as usize] = !vals[o as usize];
        }
    }

    #[test]
    fn ripple_add_matches_arithmetic() {
        let mut nl = Netlist::new();
        let a = nl.input_group("a", 3);
        let b = nl.input_group("b", 3);
        nl.begin_stage("add");
        let (sum, carry) = nl.ripple_add(&a, &b);
        for x in 0..8u32 {
            for y in 0..8u32 {
                let mut inputs = BTreeMap::new();
                for i in 0..3 {
                    inputs.insert(a[i], x >> i & 1 == 1);
                    inputs.insert(b[i], y >> i & 1 == 1);
                }
                let vals = nl.simulate(&inputs);
                let mut got = 0u32;
                for (i, &w) in sum.iter().enumerate() {
                    got |= (vals[w as usize] as u32) << i;
                }
                got |= (vals[carry as usize] as u32) << 3;
                assert_eq!(got, x + y);
            }
        }
    }

    #[test]
    fn encoding_agrees_with_oracle_on_forced_output() {
        let mut nl = Netlist::new();
        let a = nl.input();
        let b = nl.input();
        nl.begin_stage("x");
        let x = nl.xor(a, b);
        let mut f = encode_circuit(&nl);
        f.add_clause(Clause::new(vec![Lit::positive(Var(x))]));
        assert!(brute_sat(&f).unwrap().is_sat());
    }
}
