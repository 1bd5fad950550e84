//! The floating-point addition commutativity miter and its staged proofdoor
//! descriptor.
//!
//! Two copies of the adder pipeline run over shared operands with swapped
//! ports, error variables compare the final outputs bit by bit, and a single
//! wide clause asserts that some output bit differs. The descriptor chunks
//! the CNF into per-bit pipeline cells and chains interpolants that carry,
//! across each cut, the equalities of the live left/right wire pairs plus a
//! few comparator facts and the progressively shortened disagreement clause.
//!
//! Construction discipline that keeps the chunking well-behaved:
//!
//! - every wire is consumed by at most one later cell (fan-out is split with
//!   buffer copies emitted inside the first consumer's cell), so assembled
//!   refutations resolve each wire only where it is consumed and respect all
//!   cutting partial orders;
//! - signals feeding many cells (the selection control, carries, shift
//!   selects) are threaded cell to cell through buffers;
//! - interpolant clauses only mention wires still alive past their cut, and
//!   every clause declares a constant-size support in the previous
//!   interpolant (repeated clauses support themselves).

use std::collections::{BTreeSet, HashMap};

use crate::cnf::{Clause, ClauseId, CnfFormula, Lit, Var};
use crate::proofdoor::{GraphMode, PdParams, ProofdoorDescriptor};
use crate::structure::{heuristic_path_decomposition, verify_path_decomposition};

use super::circuit::{gate_clauses, GateKind, Netlist, Wire};

/// A left/right wire pair for one logical signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Pair {
    l: Wire,
    r: Wire,
}

impl Pair {
    fn eq_clauses(self) -> Vec<Clause> {
        let (l, r) = (Lit::positive(Var(self.l)), Lit::positive(Var(self.r)));
        vec![Clause::new(vec![!l, r]), Clause::new(vec![l, !r])]
    }
}

/// `cond_l ∨ cond_r ∨ (x ↔ y)` as two clauses.
fn cond_eq(cond: Pair, x: Wire, y: Wire) -> Vec<Clause> {
    let (cl, cr) = (Lit::positive(Var(cond.l)), Lit::positive(Var(cond.r)));
    let (x, y) = (Lit::positive(Var(x)), Lit::positive(Var(y)));
    vec![Clause::new(vec![cl, cr, !x, y]), Clause::new(vec![cl, cr, x, !y])]
}

#[derive(Debug, Clone)]
struct Item {
    name: String,
    clauses: Vec<Clause>,
}

enum Edit {
    Add { name: String, clauses: Vec<Clause>, supports: Vec<String> },
    Drop { name: String },
}

/// Emits the paired netlist cell by cell, maintaining the chunk partition
/// and the interpolant chain with per-clause supports.
struct MiterBuilder {
    nl: Netlist,
    clauses: Vec<Clause>,
    clauses_done: usize,
    gates_done: usize,
    chunks: Vec<Vec<ClauseId>>,
    items: Vec<Item>,
    index: HashMap<String, usize>,
    prev_pos: HashMap<String, Vec<usize>>,
    interpolants: Vec<Vec<Clause>>,
    supports: Vec<Vec<Vec<usize>>>,
    edits: Vec<Edit>,
    producer_cell: HashMap<Wire, usize>,
    consumer_cells: HashMap<Wire, BTreeSet<usize>>,
}

impl MiterBuilder {
    fn new(nl: Netlist) -> MiterBuilder {
        MiterBuilder {
            nl,
            clauses: Vec::new(),
            clauses_done: 0,
            gates_done: 0,
            chunks: Vec::new(),
            items: Vec::new(),
            index: HashMap::new(),
            prev_pos: HashMap::new(),
            interpolants: Vec::new(),
            supports: Vec::new(),
            edits: Vec::new(),
            producer_cell: HashMap::new(),
            consumer_cells: HashMap::new(),
        }
    }

    fn add(&mut self, name: impl Into<String>, clauses: Vec<Clause>, supports: &[&str]) {
        self.edits.push(Edit::Add {
            name: name.into(),
            clauses,
            supports: supports.iter().map(|s| s.to_string()).collect(),
        });
    }

    fn add_pair(&mut self, name: impl Into<String>, pair: Pair, supports: &[&str]) {
        self.add(name, pair.eq_clauses(), supports);
    }

    fn drop_item(&mut self, name: impl Into<String>) {
        self.edits.push(Edit::Drop { name: name.into() });
    }

    fn raw_clause(&mut self, clause: Clause) {
        let cell = self.chunks.len();
        for v in clause.vars() {
            if self.producer_cell.get(&v.0) != Some(&cell) {
                self.consumer_cells.entry(v.0).or_default().insert(cell);
            }
        }
        self.clauses.push(clause);
    }

    /// Encodes the gates emitted since the last boundary, closes the chunk,
    /// and (unless this is the final chunk) materializes the next
    /// interpolant from the pending edits.
    fn end_cell(&mut self, last: bool) {
        let cell = self.chunks.len();
        for g in &self.nl.gates()[self.gates_done..] {
            let mut gc = Vec::new();
            gate_clauses(g, &mut gc);
            self.clauses.extend(gc);
            self.producer_cell.insert(g.output, cell);
            for &w in &g.inputs {
                if self.producer_cell.get(&w) != Some(&cell) {
                    self.consumer_cells.entry(w).or_default().insert(cell);
                }
            }
        }
        self.gates_done = self.nl.gates().len();
        let ids: Vec<ClauseId> =
            (self.clauses_done as u32 + 1..=self.clauses.len() as u32).collect();
        assert!(!ids.is_empty(), "cell {cell} emitted no clauses");
        self.clauses_done = self.clauses.len();
        self.chunks.push(ids);

        if last {
            assert!(self.edits.is_empty(), "final cell must not edit the interpolant");
            return;
        }
        let first_cell = self.interpolants.is_empty();

        let mut supports_of: HashMap<String, Vec<String>> = HashMap::new();
        for edit in std::mem::take(&mut self.edits) {
            match edit {
                Edit::Drop { name } => {
                    let idx = self
                        .index
                        .remove(&name)
                        .unwrap_or_else(|| panic!("dropping unknown item {name}"));
                    self.items.remove(idx);
                    for v in self.index.values_mut() {
                        if *v > idx {
                            *v -= 1;
                        }
                    }
                }
                Edit::Add { name, clauses, supports } => {
                    supports_of.insert(name.clone(), supports);
                    if let Some(&idx) = self.index.get(&name) {
                        self.items[idx].clauses = clauses;
                    } else {
                        self.index.insert(name.clone(), self.items.len());
                        self.items.push(Item { name, clauses });
                    }
                }
            }
        }

        let interp: Vec<Clause> =
            self.items.iter().flat_map(|it| it.clauses.iter().cloned()).collect();

        if !first_cell {
            let mut rows: Vec<Vec<usize>> = Vec::with_capacity(interp.len());
            for it in &self.items {
                let row: Vec<usize> = match supports_of.get(&it.name) {
                    None => self
                        .prev_pos
                        .get(&it.name)
                        .unwrap_or_else(|| panic!("item {} missing from previous cut", it.name))
                        .clone(),
                    Some(names) => {
                        let mut row = Vec::new();
                        for nm in names {
                            let pos = self.prev_pos.get(nm).unwrap_or_else(|| {
                                panic!("support {nm} of {} not in previous cut", it.name)
                            });
                            row.extend(pos.iter().copied());
                        }
                        row.sort_unstable();
                        row.dedup();
                        row
                    }
                };
                for _ in 0..it.clauses.len() {
                    rows.push(row.clone());
                }
            }
            self.supports.push(rows);
        }

        self.prev_pos.clear();
        let mut at = 0usize;
        for it in &self.items {
            self.prev_pos.insert(it.name.clone(), (at..at + it.clauses.len()).collect());
            at += it.clauses.len();
        }
        self.interpolants.push(interp);
    }

    fn multi_consumer_wires(&self) -> Vec<Wire> {
        let mut out: Vec<Wire> = self
            .consumer_cells
            .iter()
            .filter(|(_, cells)| cells.len() > 1)
            .map(|(&w, _)| w)
            .collect();
        out.sort_unstable();
        out
    }
}

/// The finished miter: formula, netlist, descriptor, and test handles.
#[derive(Debug, Clone)]
pub struct FpMiter {
    pub formula: CnfFormula,
    pub netlist: Netlist,
    pub descriptor: ProofdoorDescriptor,
    pub input_wires: Vec<Wire>,
    /// The single wide disagreement clause (also present in the formula).
    pub disagreement: Clause,
    pub error_mantissa: Vec<Wire>,
    pub error_exponent: Vec<Wire>,
}

struct Side {
    p1e: Vec<Wire>,
    p1m: Vec<Wire>,
    p2e: Vec<Wire>,
    p2m: Vec<Wire>,
}

/// Builds `add(a,b)` against `add(b,a)` over shared operands, the error
/// layer, the disagreement clause, and the per-cell proofdoor descriptor
/// (chunks, interpolants with supports, and bipartite chunk decompositions).
pub fn build_fp_comm_miter(n: u32, m: u32) -> FpMiter {
    assert!(n >= 1 && m >= 1);
    let n = n as usize;
    let m = m as usize;

    let mut nl = Netlist::new();
    let e_a = nl.input_group("E_a", m);
    let m_a = nl.input_group("M_a", n);
    let e_b = nl.input_group("E_b", m);
    let m_b = nl.input_group("M_b", n);
    let input_wires: Vec<Wire> = e_a.iter().chain(&m_a).chain(&e_b).chain(&m_b).copied().collect();

    // error variables allocated up front so the wide disagreement clause can
    // live in the first final-shift chunk; their XOR definitions are driven
    // later in their own cells
    let err_m = nl.input_group("e_M", n);
    let err_e = nl.input_group("e_E", m);
    let disagreement = Clause::new(
        err_m.iter().chain(&err_e).map(|&w| Lit::positive(Var(w))).collect(),
    );

    let sides = [
        Side { p1e: e_a.clone(), p1m: m_a.clone(), p2e: e_b.clone(), p2m: m_b.clone() },
        Side { p1e: e_b.clone(), p1m: m_b.clone(), p2e: e_a.clone(), p2m: m_a.clone() },
    ];

    let mut b = MiterBuilder::new(nl);
    let pl = |w: Wire| Lit::positive(Var(w));

    // ---- exponent comparators, top bit down --------------------------------
    let mut p = Pair::default();
    let mut gtacc = Pair::default();
    let mut sel_e1 = vec![Pair::default(); m];
    let mut sel_e2 = vec![Pair::default(); m];
    for i in (0..m).rev() {
        let first = i == m - 1;
        b.nl.begin_stage("cmp_exponent");
        let mut new_p = [0; 2];
        let mut new_gt = [0; 2];
        let mut cp1 = [0; 2];
        let mut cp2 = [0; 2];
        for (s, side) in sides.iter().enumerate() {
            let p_in = if first { b.nl.const1() } else { [p.l, p.r][s] };
            let eq_i = b.nl.eq(side.p1e[i], side.p2e[i]);
            let nb = b.nl.not(side.p2e[i]);
            let t = b.nl.and(p_in, side.p1e[i]);
            let gt_i = b.nl.and(t, nb);
            let na = b.nl.not(side.p1e[i]);
            let t2 = b.nl.and(p_in, side.p2e[i]);
            let _lt_i = b.nl.and(t2, na);
            new_gt[s] = if first { gt_i } else { b.nl.or(gt_i, [gtacc.l, gtacc.r][s]) };
            new_p[s] = b.nl.and(p_in, eq_i);
            cp1[s] = b.nl.buf(side.p1e[i]);
            cp2[s] = b.nl.buf(side.p2e[i]);
        }
        p = Pair { l: new_p[0], r: new_p[1] };
        gtacc = Pair { l: new_gt[0], r: new_gt[1] };
        sel_e1[i] = Pair { l: cp1[0], r: cp1[1] };
        sel_e2[i] = Pair { l: cp2[0], r: cp2[1] };

        // L's port-1 copy and R's port-2 copy buffer the same operand
        b.add_pair(format!("ieE1_{i}"), Pair { l: cp1[0], r: cp2[1] }, &[]);
        b.add_pair(format!("ieE2_{i}"), Pair { l: cp2[0], r: cp1[1] }, &[]);
        fn sup<'a>(first: bool, names: &[&'a str]) -> Vec<&'a str> {
            if first { Vec::new() } else { names.to_vec() }
        }
        b.add_pair("pE", p, &sup(first, &["pE"]));
        let (gl, gr) = (pl(gtacc.l), pl(gtacc.r));
        let (plt, prt) = (pl(p.l), pl(p.r));
        b.add("j1E", vec![Clause::new(vec![!gl, !gr])], &sup(first, &["j1E", "j2LE", "j2RE", "pE"]));
        b.add("j2LE", vec![Clause::new(vec![!gl, !plt])], &sup(first, &["j2LE"]));
        b.add("j2RE", vec![Clause::new(vec![!gr, !prt])], &sup(first, &["j2RE"]));
        b.add("j3LE", vec![Clause::new(vec![gl, gr, plt])], &sup(first, &["j3LE", "j3RE"]));
        b.add("j3RE", vec![Clause::new(vec![gl, gr, prt])], &sup(first, &["j3LE", "j3RE"]));
        b.add(format!("ceE_{i}"), cond_eq(gtacc, cp1[0], cp2[0]), &sup(first, &["j3LE", "j3RE"]));
        for t in i + 1..m {
            let name = format!("ceE_{t}");
            b.add(name.clone(), cond_eq(gtacc, sel_e1[t].l, sel_e2[t].l), &[&name]);
        }
        b.end_cell(false);
    }
    let eq_agg = p;
    let gt = gtacc;

    // ---- mantissa comparators ----------------------------------------------
    let mut mp = Pair::default();
    let mut mgtacc = Pair::default();
    let mut sel_m1 = vec![Pair::default(); n];
    let mut sel_m2 = vec![Pair::default(); n];
    for j in (0..n).rev() {
        let first = j == n - 1;
        let last = j == 0;
        b.nl.begin_stage("cmp_mantissa");
        let mut new_p = [0; 2];
        let mut new_gt = [0; 2];
        let mut cp1 = [0; 2];
        let mut cp2 = [0; 2];
        for (s, side) in sides.iter().enumerate() {
            let p_in = if first { b.nl.const1() } else { [mp.l, mp.r][s] };
            let eq_j = b.nl.eq(side.p1m[j], side.p2m[j]);
            let nb = b.nl.not(side.p2m[j]);
            let t = b.nl.and(p_in, side.p1m[j]);
            let gt_j = b.nl.and(t, nb);
            new_gt[s] = if first { gt_j } else { b.nl.or(gt_j, [mgtacc.l, mgtacc.r][s]) };
            if !last {
                new_p[s] = b.nl.and(p_in, eq_j);
            }
            cp1[s] = b.nl.buf(side.p1m[j]);
            cp2[s] = b.nl.buf(side.p2m[j]);
        }
        mgtacc = Pair { l: new_gt[0], r: new_gt[1] };
        sel_m1[j] = Pair { l: cp1[0], r: cp1[1] };
        sel_m2[j] = Pair { l: cp2[0], r: cp2[1] };

        b.add_pair(format!("ieM1_{j}"), Pair { l: cp1[0], r: cp2[1] }, &[]);
        b.add_pair(format!("ieM2_{j}"), Pair { l: cp2[0], r: cp1[1] }, &[]);
        fn sup<'a>(first: bool, names: &[&'a str]) -> Vec<&'a str> {
            if first { Vec::new() } else { names.to_vec() }
        }
        let (gl, gr) = (pl(mgtacc.l), pl(mgtacc.r));
        b.add("j1M", vec![Clause::new(vec![!gl, !gr])], &sup(first, &["j1M", "j2LM", "j2RM", "pM"]));
        b.add(format!("ceM_{j}"), cond_eq(mgtacc, cp1[0], cp2[0]), &sup(first, &["j3LM", "j3RM"]));
        for t in j + 1..n {
            let name = format!("ceM_{t}");
            b.add(name.clone(), cond_eq(mgtacc, sel_m1[t].l, sel_m2[t].l), &[&name]);
        }
        if !last {
            mp = Pair { l: new_p[0], r: new_p[1] };
            let (mpl, mpr) = (pl(mp.l), pl(mp.r));
            b.add_pair("pM", mp, &sup(first, &["pM"]));
            b.add("j2LM", vec![Clause::new(vec![!gl, !mpl])], &sup(first, &["j2LM"]));
            b.add("j2RM", vec![Clause::new(vec![!gr, !mpr])], &sup(first, &["j2RM"]));
            b.add("j3LM", vec![Clause::new(vec![gl, gr, mpl])], &sup(first, &["j3LM", "j3RM"]));
            b.add("j3RM", vec![Clause::new(vec![gl, gr, mpr])], &sup(first, &["j3LM", "j3RM"]));
        } else if n > 1 {
            for it in ["pM", "j2LM", "j2RM", "j3LM", "j3RM"] {
                b.drop_item(it);
            }
        }
        b.end_cell(false);
    }
    let mgt = mgtacc;

    // ---- selection control ---------------------------------------------------
    b.nl.begin_stage("select_ctl");
    let tl = b.nl.and(eq_agg.l, mgt.l);
    let sl_w = b.nl.or(gt.l, tl);
    let tr = b.nl.and(eq_agg.r, mgt.r);
    let sr_w = b.nl.or(gt.r, tr);
    let mut sel = Pair { l: sl_w, r: sr_w };
    {
        let (sl, sr) = (pl(sel.l), pl(sel.r));
        b.add("selx", vec![Clause::new(vec![!sl, !sr])], &["j1E", "j2LE", "j2RE", "pE", "j1M"]);
        for i in 0..m {
            let name = format!("ceE_{i}");
            b.add(name.clone(), cond_eq(sel, sel_e1[i].l, sel_e2[i].l), &[&name]);
        }
        for j in 0..n {
            let name = format!("ceM_{j}");
            b.add(name.clone(), cond_eq(sel, sel_m1[j].l, sel_m2[j].l), &[&name, "j3LE", "j3RE"]);
        }
        for it in ["j1E", "j2LE", "j2RE", "pE", "j3LE", "j3RE", "j1M"] {
            b.drop_item(it);
        }
    }
    b.end_cell(false);

    // ---- selection multiplexers ----------------------------------------------
    let mut e_large = vec![Pair::default(); m];
    let mut e_small = vec![Pair::default(); m];
    let mut m_large = vec![Pair::default(); n];
    let mut m_small = vec![Pair::default(); n];
    for cellno in 0..m + n {
        let is_exp = cellno < m;
        let i = if is_exp { cellno } else { cellno - m };
        b.nl.begin_stage(if is_exp { "select_exp" } else { "select_man" });
        let (c1, c2) = if is_exp { (sel_e1[i], sel_e2[i]) } else { (sel_m1[i], sel_m2[i]) };
        let lg = Pair { l: b.nl.mux(sel.l, c1.l, c2.l), r: b.nl.mux(sel.r, c1.r, c2.r) };
        let sm = Pair { l: b.nl.mux(sel.l, c2.l, c1.l), r: b.nl.mux(sel.r, c2.r, c1.r) };

        let (ce, ie1, ie2, lg_name, sm_name) = if is_exp {
            (
                format!("ceE_{i}"),
                format!("ieE1_{i}"),
                format!("ieE2_{i}"),
                format!("eqElg_{i}"),
                format!("eqEsm_{i}"),
            )
        } else {
            (
                format!("ceM_{i}"),
                format!("ieM1_{i}"),
                format!("ieM2_{i}"),
                format!("eqMlg_{i}"),
                format!("eqMsm_{i}"),
            )
        };
        b.add_pair(lg_name, lg, &["selx", &ce, &ie1, &ie2]);
        b.add_pair(sm_name, sm, &["selx", &ce, &ie1, &ie2]);
        for it in [ce, ie1, ie2] {
            b.drop_item(it);
        }
        if is_exp {
            e_large[i] = lg;
            e_small[i] = sm;
        } else {
            m_large[i] = lg;
            m_small[i] = sm;
        }

        if cellno + 1 < m + n {
            b.nl.begin_stage("thread");
            sel = Pair { l: b.nl.buf(sel.l), r: b.nl.buf(sel.r) };
            let (sl, sr) = (pl(sel.l), pl(sel.r));
            let _ = (sl, sr);
            b.add("selx", vec![Clause::new(vec![!pl(sel.l), !pl(sel.r)])], &["selx"]);
            if is_exp {
                for t in i + 1..m {
                    let name = format!("ceE_{t}");
                    b.add(name.clone(), cond_eq(sel, sel_e1[t].l, sel_e2[t].l), &[&name]);
                }
            }
            let m_from = if is_exp { 0 } else { i + 1 };
            for t in m_from..n {
                let name = format!("ceM_{t}");
                b.add(name.clone(), cond_eq(sel, sel_m1[t].l, sel_m2[t].l), &[&name]);
            }
        } else {
            b.drop_item("selx");
        }
        b.end_cell(false);
    }

    // ---- exponent difference, LSB first ---------------------------------------
    let mut diff = vec![Pair::default(); m];
    let mut el_a7 = vec![Pair::default(); m];
    let mut borrow = Pair::default();
    for i in 0..m {
        b.nl.begin_stage("exp_diff");
        let mut d = [0; 2];
        let mut bout = [0; 2];
        let mut cpy = [0; 2];
        for s in 0..2 {
            let el = [e_large[i].l, e_large[i].r][s];
            let es = [e_small[i].l, e_small[i].r][s];
            let b_in = if i == 0 { b.nl.const0() } else { [borrow.l, borrow.r][s] };
            let x = b.nl.xor(el, es);
            d[s] = b.nl.xor(x, b_in);
            if i + 1 < m {
                let na = b.nl.not(el);
                let t1 = b.nl.and(na, es);
                let nx = b.nl.not(x);
                let t2 = b.nl.and(b_in, nx);
                bout[s] = b.nl.or(t1, t2);
            }
            cpy[s] = b.nl.buf(el);
        }
        diff[i] = Pair { l: d[0], r: d[1] };
        el_a7[i] = Pair { l: cpy[0], r: cpy[1] };

        let elg = format!("eqElg_{i}");
        let esm = format!("eqEsm_{i}");
        let mut sup: Vec<&str> = vec![&elg, &esm];
        if i > 0 {
            sup.push("eqBorE");
        }
        b.add_pair(format!("eqDiff_{i}"), diff[i], &sup);
        b.add_pair(format!("eqElA7_{i}"), el_a7[i], &[&elg]);
        if i + 1 < m {
            borrow = Pair { l: bout[0], r: bout[1] };
            b.add_pair("eqBorE", borrow, &sup.clone());
        } else if m > 1 {
            b.drop_item("eqBorE");
        }
        b.drop_item(elg);
        b.drop_item(esm);
        b.end_cell(false);
    }

    // ---- alignment initialization ----------------------------------------------
    let lanes = n + 2;
    let mut w: Vec<Pair> = Vec::with_capacity(lanes);
    let mut sticky;
    {
        b.nl.begin_stage("align_grs");
        let w0 = Pair { l: b.nl.const0(), r: b.nl.const0() };
        let w1 = Pair { l: b.nl.const0(), r: b.nl.const0() };
        sticky = Pair { l: b.nl.const0(), r: b.nl.const0() };
        w.push(w0);
        w.push(w1);
        for j in 0..n {
            w.push(m_small[j]);
        }
        b.add_pair("eqW0_0", w0, &[]);
        b.add_pair("eqW0_1", w1, &[]);
        for j in 0..n {
            let msm = format!("eqMsm_{j}");
            b.add_pair(format!("eqW0_{}", j + 2), w[j + 2], &[&msm]);
            b.drop_item(msm);
        }
        b.add_pair("eqStk", sticky, &[]);
        b.end_cell(false);
    }

    // ---- barrel shifter stages ---------------------------------------------------
    for j in 0..m {
        let shift = 1usize << j.min(20);
        let out_count = shift.min(lanes);
        let mut dsel = diff[j];
        let mut dname = format!("eqDiff_{j}");
        let mut copies: HashMap<usize, Pair> = HashMap::new();
        let mut stks: HashMap<usize, Pair> = HashMap::new();
        let mut next_w = vec![Pair::default(); lanes];

        for i in (0..lanes).rev() {
            let core = i >= 2;
            b.nl.begin_stage(if core { "align_core" } else { "align_grs" });
            let needs_copy = i >= shift;
            let needs_stk = i < out_count;
            let mut out = [0; 2];
            let mut nd = [0; 2];
            let mut wc = [0; 2];
            let mut ws = [0; 2];
            for s in 0..2 {
                let cur = [w[i].l, w[i].r][s];
                let src = if i + shift < lanes {
                    [copies[&(i + shift)].l, copies[&(i + shift)].r][s]
                } else {
                    b.nl.const0()
                };
                let dw = [dsel.l, dsel.r][s];
                out[s] = b.nl.mux(dw, src, cur);
                if needs_copy {
                    wc[s] = b.nl.buf(cur);
                }
                if needs_stk {
                    ws[s] = b.nl.buf(cur);
                }
                nd[s] = b.nl.buf(dw);
            }
            next_w[i] = Pair { l: out[0], r: out[1] };
            let lane_name = format!("eqW{j}_{i}");
            let mut sup: Vec<String> = vec![dname.clone(), lane_name.clone()];
            if i + shift < lanes {
                sup.push(format!("eqWC{j}_{}", i + shift));
            }
            let sup_refs: Vec<&str> = sup.iter().map(|s| s.as_str()).collect();
            b.add_pair(format!("eqW{}_{i}", j + 1), next_w[i], &sup_refs);
            if needs_copy {
                let pair = Pair { l: wc[0], r: wc[1] };
                copies.insert(i, pair);
                b.add_pair(format!("eqWC{j}_{i}"), pair, &[&lane_name]);
            }
            if needs_stk {
                let pair = Pair { l: ws[0], r: ws[1] };
                stks.insert(i, pair);
                b.add_pair(format!("eqWS{j}_{i}"), pair, &[&lane_name]);
            }
            b.drop_item(lane_name);
            if i + shift < lanes {
                b.drop_item(format!("eqWC{j}_{}", i + shift));
            }
            let old_d = dname.clone();
            dsel = Pair { l: nd[0], r: nd[1] };
            dname = format!("eqDs{j}_{i}");
            b.add_pair(dname.clone(), dsel, &[&old_d]);
            b.drop_item(old_d);
            b.end_cell(false);
        }

        // sticky OR accumulation, then the sticky update
        let mut acc = stks[&0];
        let mut acc_name = format!("eqWS{j}_0");
        for t in 1..out_count {
            b.nl.begin_stage("align_grs");
            acc = Pair { l: b.nl.or(acc.l, stks[&t].l), r: b.nl.or(acc.r, stks[&t].r) };
            let stk_name = format!("eqWS{j}_{t}");
            let next_name = format!("eqOr{j}_{t}");
            b.add_pair(next_name.clone(), acc, &[&acc_name, &stk_name]);
            b.drop_item(acc_name);
            b.drop_item(stk_name);
            acc_name = next_name;
            b.end_cell(false);
        }
        b.nl.begin_stage("align_grs");
        let sor = Pair { l: b.nl.or(sticky.l, acc.l), r: b.nl.or(sticky.r, acc.r) };
        sticky = Pair { l: b.nl.mux(dsel.l, sor.l, sticky.l), r: b.nl.mux(dsel.r, sor.r, sticky.r) };
        b.add_pair("eqStk", sticky, &["eqStk", &acc_name, &dname]);
        b.drop_item(acc_name);
        b.drop_item(dname);
        b.end_cell(false);

        w = next_w;
    }
    let aligned: Vec<Pair> = w[2..].to_vec();
    let w_guard = w[1];
    let w_round = w[0];
    let final_lane = |i: usize| format!("eqW{m}_{i}");

    // ---- significand addition ----------------------------------------------------
    let mut carry = Pair::default();
    let mut sigma = vec![Pair::default(); n];
    for i in 0..n {
        b.nl.begin_stage("significand_add");
        let mut sum = [0; 2];
        let mut cout = [0; 2];
        for s in 0..2 {
            let a = [m_large[i].l, m_large[i].r][s];
            let bb = [aligned[i].l, aligned[i].r][s];
            let cin = if i == 0 { b.nl.const0() } else { [carry.l, carry.r][s] };
            let (su, co) = b.nl.full_adder(a, bb, cin);
            sum[s] = su;
            cout[s] = co;
        }
        sigma[i] = Pair { l: sum[0], r: sum[1] };
        let mlg = format!("eqMlg_{i}");
        let lane = final_lane(i + 2);
        let mut sup: Vec<&str> = vec![&mlg, &lane];
        if i > 0 {
            sup.push("eqCsig");
        }
        b.add_pair(format!("eqSig_{i}"), sigma[i], &sup);
        carry = Pair { l: cout[0], r: cout[1] };
        b.add_pair("eqCsig", carry, &sup.clone());
        b.drop_item(mlg);
        b.drop_item(lane);
        b.end_cell(false);
    }

    // ---- normalization, MSB first --------------------------------------------------
    let mut sigma_norm = vec![Pair::default(); n];
    let mut sig_cpy = vec![Pair::default(); n];
    let mut sig0_g = Pair::default();
    for i in (0..n).rev() {
        b.nl.begin_stage("normalize");
        let mut out = [0; 2];
        let mut cp = [0; 2];
        let mut cnext = [0; 2];
        for s in 0..2 {
            let c = [carry.l, carry.r][s];
            let shifted = if i == n - 1 { b.nl.const1() } else { [sig_cpy[i + 1].l, sig_cpy[i + 1].r][s] };
            let cur = [sigma[i].l, sigma[i].r][s];
            out[s] = b.nl.mux(c, shifted, cur);
            cp[s] = b.nl.buf(cur);
            cnext[s] = b.nl.buf(c);
        }
        sigma_norm[i] = Pair { l: out[0], r: out[1] };
        sig_cpy[i] = Pair { l: cp[0], r: cp[1] };
        let sig_name = format!("eqSig_{i}");
        let mut sup: Vec<&str> = vec!["eqCsig", &sig_name];
        let cpy_above = format!("eqSigC_{}", i + 1);
        if i < n - 1 {
            sup.push(&cpy_above);
        }
        b.add_pair(format!("eqSign_{i}"), sigma_norm[i], &sup);
        if i > 0 {
            b.add_pair(format!("eqSigC_{i}"), sig_cpy[i], &[&sig_name]);
        } else {
            sig0_g = sig_cpy[0];
        }
        carry = Pair { l: cnext[0], r: cnext[1] };
        b.add_pair("eqCsig", carry, &["eqCsig"]);
        b.drop_item(sig_name);
        if i < n - 1 {
            b.drop_item(cpy_above);
        }
        b.end_cell(false);
    }

    // ---- guard/round/sticky update ----------------------------------------------
    // the carry thread continues through this cell toward the exponent update
    b.nl.begin_stage("normalize_grs");
    let mut rn = Pair::default();
    let mut sn = Pair::default();
    let mut cnext = [0; 2];
    for s in 0..2 {
        let c = [carry.l, carry.r][s];
        let g = [w_guard.l, w_guard.r][s];
        let r = [w_round.l, w_round.r][s];
        let st = [sticky.l, sticky.r][s];
        let s0 = [sig0_g.l, sig0_g.r][s];
        let _gn = b.nl.mux(c, s0, g);
        let rn_w = b.nl.mux(c, g, r);
        let rs = b.nl.or(r, st);
        let sn_w = b.nl.mux(c, rs, st);
        cnext[s] = b.nl.buf(c);
        if s == 0 {
            rn.l = rn_w;
            sn.l = sn_w;
        } else {
            rn.r = rn_w;
            sn.r = sn_w;
        }
    }
    {
        let g1 = final_lane(1);
        let g0 = final_lane(0);
        b.add_pair("eqRn", rn, &["eqCsig", &g1, &g0]);
        b.add_pair("eqSn", sn, &["eqCsig", &g0, "eqStk"]);
        carry = Pair { l: cnext[0], r: cnext[1] };
        b.add_pair("eqCsig", carry, &["eqCsig"]);
        b.drop_item(g1);
        b.drop_item(g0);
        b.drop_item("eqStk");
    }
    b.end_cell(false);

    // ---- rounding increment --------------------------------------------------------
    // consumes Σ_norm[0] and re-emits it as a copy for the rounding adder
    b.nl.begin_stage("round");
    let sor_inc = Pair { l: b.nl.or(sigma_norm[0].l, sn.l), r: b.nl.or(sigma_norm[0].r, sn.r) };
    let inc = Pair { l: b.nl.and(rn.l, sor_inc.l), r: b.nl.and(rn.r, sor_inc.r) };
    let sn0_cpy = Pair { l: b.nl.buf(sigma_norm[0].l), r: b.nl.buf(sigma_norm[0].r) };
    b.add_pair("eqKk", inc, &["eqRn", "eqSn", "eqSign_0"]);
    b.add_pair("eqSign_0", sn0_cpy, &["eqSign_0"]);
    sigma_norm[0] = sn0_cpy;
    for it in ["eqRn", "eqSn"] {
        b.drop_item(it);
    }
    b.end_cell(false);

    // ---- rounded significand ---------------------------------------------------------
    let mut kk = inc;
    let mut sigma_rnd = vec![Pair::default(); n];
    for i in 0..n {
        b.nl.begin_stage("round_add");
        let mut sum = [0; 2];
        let mut knext = [0; 2];
        for s in 0..2 {
            let a = [sigma_norm[i].l, sigma_norm[i].r][s];
            let k = [kk.l, kk.r][s];
            sum[s] = b.nl.xor(a, k);
            knext[s] = b.nl.and(a, k);
        }
        sigma_rnd[i] = Pair { l: sum[0], r: sum[1] };
        let sn_name = format!("eqSign_{i}");
        let sup: Vec<&str> = vec![&sn_name, "eqKk"];
        b.add_pair(format!("eqSrnd_{i}"), sigma_rnd[i], &sup);
        kk = Pair { l: knext[0], r: knext[1] };
        b.add_pair("eqKk", kk, &sup.clone());
        b.drop_item(sn_name);
        b.end_cell(false);
    }

    // ---- exponent update -----------------------------------------------------------
    // carry-in is the tail of the significand-carry thread
    let mut e_out = vec![Pair::default(); m];
    let mut kexp = carry;
    for i in 0..m {
        b.nl.begin_stage("exp_update");
        let mut sum = [0; 2];
        let mut knext = [0; 2];
        for s in 0..2 {
            let a = [el_a7[i].l, el_a7[i].r][s];
            let k = [kexp.l, kexp.r][s];
            sum[s] = b.nl.xor(a, k);
            if i + 1 < m {
                knext[s] = b.nl.and(a, k);
            }
        }
        e_out[i] = Pair { l: sum[0], r: sum[1] };
        let el_name = format!("eqElA7_{i}");
        let k_name = if i == 0 { "eqCsig" } else { "eqKexp" };
        b.add_pair(format!("eqEout_{i}"), e_out[i], &[&el_name, k_name]);
        if i + 1 < m {
            let new_k = Pair { l: knext[0], r: knext[1] };
            b.add_pair("eqKexp", new_k, &[&el_name, k_name]);
            kexp = new_k;
        } else if m > 1 {
            b.drop_item("eqKexp");
        }
        if i == 0 {
            b.drop_item("eqCsig");
        }
        b.drop_item(el_name);
        b.end_cell(false);
    }

    // ---- final shift with the error layer and the disagreement clause -------------
    // the rounding-carry thread continues through these cells toward the
    // final exponent adder
    let mut kfin = kk;
    let mut srnd_cpy = vec![Pair::default(); n];
    let mut sigma_final = vec![Pair::default(); n];
    for i in (0..n).rev() {
        b.nl.begin_stage("final_shift");
        let mut out = [0; 2];
        let mut cp = [0; 2];
        let mut knext = [0; 2];
        for s in 0..2 {
            let k = [kfin.l, kfin.r][s];
            let shifted =
                if i == n - 1 { b.nl.const1() } else { [srnd_cpy[i + 1].l, srnd_cpy[i + 1].r][s] };
            let cur = [sigma_rnd[i].l, sigma_rnd[i].r][s];
            out[s] = b.nl.mux(k, shifted, cur);
            if i > 0 {
                cp[s] = b.nl.buf(cur);
            }
            knext[s] = b.nl.buf(k);
        }
        sigma_final[i] = Pair { l: out[0], r: out[1] };
        b.nl.begin_stage("error_layer");
        b.nl.drive(GateKind::Xor, vec![out[0], out[1]], err_m[i]);

        let srnd_name = format!("eqSrnd_{i}");
        let cpy_above = format!("eqSrC_{}", i + 1);
        let short: Vec<Lit> =
            err_m[..i].iter().chain(&err_e).map(|&w| Lit::positive(Var(w))).collect();
        if i == n - 1 {
            b.raw_clause(disagreement.clone());
            b.add("short", vec![Clause::new(short)], &["eqKk", &srnd_name]);
        } else {
            b.add("short", vec![Clause::new(short)], &["short", "eqKk", &srnd_name, &cpy_above]);
        }
        if i > 0 {
            srnd_cpy[i] = Pair { l: cp[0], r: cp[1] };
            b.add_pair(format!("eqSrC_{i}"), srnd_cpy[i], &[&srnd_name]);
        }
        kfin = Pair { l: knext[0], r: knext[1] };
        b.add_pair("eqKk", kfin, &["eqKk"]);
        b.drop_item(srnd_name);
        if i < n - 1 {
            b.drop_item(cpy_above);
        }
        b.end_cell(false);
    }

    // ---- final exponent with the error layer ---------------------------------------
    let mut kke = kfin;
    let mut e_final = vec![Pair::default(); m];
    for i in 0..m {
        let last = i == m - 1;
        b.nl.begin_stage("exp_final");
        let mut out = [0; 2];
        let mut knext = [0; 2];
        for s in 0..2 {
            let a = [e_out[i].l, e_out[i].r][s];
            let k = [kke.l, kke.r][s];
            out[s] = b.nl.xor(a, k);
            if !last {
                knext[s] = b.nl.and(a, k);
            }
        }
        e_final[i] = Pair { l: out[0], r: out[1] };
        b.nl.begin_stage("error_layer");
        b.nl.drive(GateKind::Xor, vec![out[0], out[1]], err_e[i]);

        if last {
            b.end_cell(true);
        } else {
            let eout_name = format!("eqEout_{i}");
            let k_name = if i == 0 { "eqKk".to_string() } else { "eqKkE".to_string() };
            let short: Vec<Lit> = err_e[i + 1..].iter().map(|&w| Lit::positive(Var(w))).collect();
            b.add("short", vec![Clause::new(short)], &["short", &eout_name, &k_name]);
            let new_k = Pair { l: knext[0], r: knext[1] };
            b.add_pair("eqKkE", new_k, &[&eout_name, &k_name]);
            kke = new_k;
            b.drop_item(eout_name);
            if i == 0 {
                b.drop_item("eqKk");
            }
            b.end_cell(false);
        }
    }

    debug_assert!(
        b.multi_consumer_wires().is_empty(),
        "wires consumed by multiple cells: {:?}",
        b.multi_consumer_wires()
    );

    // group registration for the wire map
    let collect = |pairs: &[Pair], left: bool| -> Vec<Wire> {
        pairs.iter().map(|p| if left { p.l } else { p.r }).collect()
    };
    b.nl.set_group("L.Sigma_final", collect(&sigma_final, true));
    b.nl.set_group("R.Sigma_final", collect(&sigma_final, false));
    b.nl.set_group("L.E_final", collect(&e_final, true));
    b.nl.set_group("R.E_final", collect(&e_final, false));

    let formula = CnfFormula::from_clauses(b.nl.num_wires(), b.clauses.clone());

    // per-chunk bipartite decompositions and measured parameters
    let descriptor_proto = ProofdoorDescriptor {
        chunks: b.chunks.clone(),
        interpolants: b.interpolants.clone(),
        supports: b.supports.clone(),
        params: PdParams { c: 0, w: 0, s: 0 },
        decompositions: None,
        decomposition_graph: GraphMode::Bipartite,
    };
    let mut decs = Vec::with_capacity(b.chunks.len());
    let mut max_w = 0usize;
    for chunk in 0..b.chunks.len() {
        let g = descriptor_proto.chunk_graph(&formula, chunk, GraphMode::Bipartite);
        let dec = heuristic_path_decomposition(&g);
        let width = verify_path_decomposition(&g, &dec).expect("heuristic decomposition valid");
        max_w = max_w.max(width);
        decs.push(dec);
    }
    let max_c = b.interpolants.iter().map(|i| i.len()).max().unwrap_or(0);
    let max_sup = b
        .supports
        .iter()
        .flat_map(|rows| rows.iter().map(|r| r.len()))
        .max()
        .unwrap_or(0);
    let last_len = b.interpolants.last().map(|i| i.len()).unwrap_or(0);
    let descriptor = ProofdoorDescriptor {
        params: PdParams { c: max_c, w: max_w, s: max_sup.max(last_len) },
        decompositions: Some(decs),
        ..descriptor_proto
    };

    FpMiter {
        formula,
        netlist: b.nl,
        descriptor,
        input_wires,
        disagreement,
        error_mantissa: err_m,
        error_exponent: err_e,
    }
}
