//! Critical-strip proofdoor descriptors for the multiplication
//! commutativity miter `x·y` vs `y·x`.
//!
//! The miter consists of two shift-and-add array multipliers over the shared
//! inputs, per-column output-difference variables `e_j`, and a single wide
//! clause asserting that some output column differs. Chunks follow output
//! columns (every cell lands in the column of its sum output, so strip
//! windows overlap only through the carry wires), and interpolants shorten
//! the disagreement clause column by column while keeping a window of `Δ`
//! freshly derived unit clauses.
//!
//! Three interpolant forms are attempted in order, and the first one that
//! passes full SAT verification is returned:
//!
//! - `Verbatim`: the window clause keeps the disagreement literals from
//!   `e_{j-Δ}` upward (its leading literal overlaps the negated units);
//! - `ShiftedWindow`: the window clause keeps `e_{j+1} ∨ … ∨ e_{2n-1}`;
//! - `CarryAugmented`: the shifted form plus equality clauses pairing the
//!   two multipliers' column-crossing carry wires (the bitwise derivation of
//!   `¬e_j` needs the carry state, which no set of pure `e`-clauses can
//!   supply; the pairing is found by exhaustive simulation and every clause
//!   is still SAT-verified rather than assumed).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::cnf::{Clause, ClauseId, CnfFormula, Lit, Var};
use crate::proofdoor::{
    verify_proofdoor, GraphMode, PdParams, ProofdoorDescriptor, VerificationReport,
};
use crate::structure::heuristic_path_decomposition;

use super::circuit::{encode_circuit, Netlist, Wire};

/// Which interpolant form the returned descriptor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripForm {
    Verbatim,
    ShiftedWindow,
    CarryAugmented,
}

#[derive(Debug, Clone)]
pub struct MultStripMiter {
    pub formula: CnfFormula,
    pub netlist: Netlist,
    pub descriptor: ProofdoorDescriptor,
    pub form: StripForm,
    pub report: VerificationReport,
    pub input_wires: Vec<Wire>,
}

#[derive(Debug, Error)]
pub enum StripError {
    #[error("no interpolant form passed verification; last failure: {0}")]
    NoVerifiedForm(String),
    #[error("verification could not complete: {0}")]
    Verify(String),
}

struct MultNet {
    out: Vec<Wire>,
    /// column of each gate-output wire created for this multiplier
    column: HashMap<Wire, usize>,
}

/// Shift-and-add multiplier with per-column bookkeeping: partial product
/// `a_i·b_j` lands in column `i+j`, every adder cell lands in the column of
/// its sum output, and carries cross into the next column.
fn multiplier(nl: &mut Netlist, a: &[Wire], b: &[Wire]) -> MultNet {
    let width = a.len() + b.len();
    let mut column: HashMap<Wire, usize> = HashMap::new();
    let tag = |w: Wire, c: usize, column: &mut HashMap<Wire, usize>| {
        column.insert(w, c);
    };

    let mut acc: Vec<Wire> = Vec::with_capacity(width);
    for (i, &ai) in a.iter().enumerate() {
        let pp = nl.and(ai, b[0]);
        tag(pp, i, &mut column);
        acc.push(pp);
    }
    while acc.len() < width {
        let z = nl.const0();
        tag(z, acc.len(), &mut column);
        acc.push(z);
    }
    for (j, &bj) in b.iter().enumerate().skip(1) {
        let mut carry = nl.const0();
        tag(carry, j, &mut column);
        for (i, &ai) in a.iter().enumerate() {
            let col = j + i;
            let pp = nl.and(ai, bj);
            tag(pp, col, &mut column);
            let (s1, c1) = (nl.xor(acc[col], pp), nl.and(acc[col], pp));
            let (sum, c2) = (nl.xor(s1, carry), nl.and(s1, carry));
            let cout = nl.or(c1, c2);
            for w in [s1, c1, sum, c2, cout] {
                tag(w, col, &mut column);
            }
            acc[col] = sum;
            carry = cout;
        }
        for col in j + a.len()..width {
            let (sum, cout) = (nl.xor(acc[col], carry), nl.and(acc[col], carry));
            tag(sum, col, &mut column);
            tag(cout, col, &mut column);
            acc[col] = sum;
            carry = cout;
        }
    }
    MultNet { out: acc, column }
}

/// Builds the strip descriptor, trying the interpolant forms in order until
/// one passes verification.
pub fn build_mult_strip_descriptor(n: u32, delta: u32) -> Result<MultStripMiter, StripError> {
    assert!(n >= 1 && delta >= 1);
    let n = n as usize;
    let delta = delta as usize;
    let cols = 2 * n;

    let mut nl = Netlist::new();
    let x = nl.input_group("x", n);
    let y = nl.input_group("y", n);
    let input_wires: Vec<Wire> = x.iter().chain(&y).copied().collect();

    nl.begin_stage("mult1");
    let m1 = multiplier(&mut nl, &x, &y);
    nl.begin_stage("mult2");
    let m2 = multiplier(&mut nl, &y, &x);
    nl.begin_stage("errors");
    let errs: Vec<Wire> = (0..cols).map(|j| nl.xor(m1.out[j], m2.out[j])).collect();
    nl.set_group("e", errs.clone());
    nl.set_group("out1", m1.out.clone());
    nl.set_group("out2", m2.out.clone());

    let mut column: HashMap<Wire, usize> = HashMap::new();
    column.extend(m1.column.iter().map(|(&w, &c)| (w, c)));
    column.extend(m2.column.iter().map(|(&w, &c)| (w, c)));
    for (j, &e) in errs.iter().enumerate() {
        column.insert(e, j);
    }

    let mut formula = encode_circuit(&nl);
    let wide = Clause::new(errs.iter().map(|&w| Lit::positive(Var(w))).collect());
    formula.add_clause(wide.clone());
    let wide_id = formula.num_clauses() as ClauseId;

    // chunk per column: each clause joins the column of its gate output;
    // the wide clause joins column 0
    let k = if delta >= cols { 1 } else { cols };
    let mut chunks: Vec<Vec<ClauseId>> = vec![Vec::new(); k];
    {
        let mut clause_idx = 0u32;
        for g in nl.gates() {
            let col = *column.get(&g.output).unwrap_or(&0);
            let chunk = if k == 1 { 0 } else { col };
            for _ in 0..g.num_clauses() {
                clause_idx += 1;
                chunks[chunk].push(clause_idx);
            }
        }
        let wide_chunk = 0;
        chunks[wide_chunk].push(wide_id);
    }

    // crossing carries per cut: wires produced in a column ≤ j with a
    // consumer gate in a column > j, classified by multiplier and paired by
    // identical truth tables over the inputs
    let tables = wire_tables(&nl, &input_wires);
    let consumers: HashMap<Wire, BTreeSet<usize>> = {
        let mut map: HashMap<Wire, BTreeSet<usize>> = HashMap::new();
        for g in nl.gates() {
            let col = *column.get(&g.output).unwrap_or(&0);
            for &w in &g.inputs {
                map.entry(w).or_default().insert(col);
            }
        }
        map
    };
    let crossing_at = |j: usize, of: &MultNet| -> Vec<Wire> {
        let mut out: Vec<Wire> = of
            .column
            .iter()
            .filter(|(&w, &c)| {
                c <= j && consumers.get(&w).is_some_and(|cs| cs.iter().any(|&cc| cc > j))
            })
            .map(|(&w, _)| w)
            .collect();
        out.sort_unstable();
        out
    };

    let try_form = |form: StripForm| -> ProofdoorDescriptor {
        let mut interpolants: Vec<Vec<Clause>> = Vec::new();
        let mut supports: Vec<Vec<Vec<usize>>> = Vec::new();
        // item positions of the previous interpolant, by name
        let mut prev_pos: HashMap<String, Vec<usize>> = HashMap::new();

        for j in 0..k.saturating_sub(1) {
            let mut clauses: Vec<Clause> = Vec::new();
            let mut rows: Vec<Vec<usize>> = Vec::new();
            let mut pos: HashMap<String, Vec<usize>> = HashMap::new();
            let push = |name: String,
                            cls: Vec<Clause>,
                            sup_names: &[String],
                            clauses: &mut Vec<Clause>,
                            rows: &mut Vec<Vec<usize>>,
                            pos: &mut HashMap<String, Vec<usize>>| {
                let mut row: Vec<usize> = Vec::new();
                for s in sup_names {
                    if let Some(p) = prev_pos.get(s) {
                        row.extend(p.iter().copied());
                    }
                }
                row.sort_unstable();
                row.dedup();
                let start = clauses.len();
                for c in cls {
                    clauses.push(c);
                    rows.push(row.clone());
                }
                pos.insert(name, (start..clauses.len()).collect());
            };

            // carry equalities (augmented form only)
            let carry_sup: Vec<String> = prev_pos
                .keys()
                .filter(|k| k.starts_with("carry"))
                .cloned()
                .collect();
            let mut carry_names: Vec<String> = Vec::new();
            if form == StripForm::CarryAugmented {
                let c1 = crossing_at(j, &m1);
                let mut c2 = crossing_at(j, &m2);
                for &w1 in &c1 {
                    if let Some(p) = c2.iter().position(|&w2| tables[&w1] == tables[&w2]) {
                        let w2 = c2.remove(p);
                        let name = format!("carry_{w1}_{w2}");
                        let (a, bb) = (Lit::positive(Var(w1)), Lit::positive(Var(w2)));
                        push(
                            name.clone(),
                            vec![Clause::new(vec![!a, bb]), Clause::new(vec![a, !bb])],
                            &carry_sup,
                            &mut clauses,
                            &mut rows,
                            &mut pos,
                        );
                        carry_names.push(name);
                    }
                }
            }

            // window of negated-difference units
            let window_from = (j + 1).saturating_sub(delta);
            for t in window_from..=j {
                let name = format!("ne_{t}");
                let sup: Vec<String> = if t == j {
                    let mut s = carry_sup.clone();
                    s.extend(carry_names.iter().cloned());
                    s
                } else {
                    vec![name.clone()]
                };
                push(
                    name,
                    vec![Clause::new(vec![Lit::negative(Var(errs[t]))])],
                    &sup,
                    &mut clauses,
                    &mut rows,
                    &mut pos,
                );
            }

            // the (shortened) disagreement clause
            let tail: Vec<Lit> = match form {
                StripForm::Verbatim => {
                    let from = j.saturating_sub(delta);
                    errs[from..].iter().map(|&w| Lit::positive(Var(w))).collect()
                }
                _ => errs[j + 1..].iter().map(|&w| Lit::positive(Var(w))).collect(),
            };
            let mut sup: Vec<String> = vec!["short".to_string()];
            sup.extend(carry_sup.iter().cloned());
            sup.extend(carry_names.iter().cloned());
            push("short".to_string(), vec![Clause::new(tail)], &sup, &mut clauses, &mut rows, &mut pos);

            if j > 0 {
                supports.push(rows);
            }
            interpolants.push(clauses);
            prev_pos = pos;
        }

        let measured_c = interpolants.iter().map(|i| i.len()).max().unwrap_or(0);
        let measured_s = supports
            .iter()
            .flat_map(|rows| rows.iter().map(|r| r.len()))
            .max()
            .unwrap_or(0)
            .max(interpolants.last().map(|i| i.len()).unwrap_or(0));

        let proto = ProofdoorDescriptor {
            chunks: chunks.clone(),
            interpolants,
            supports,
            params: PdParams { c: measured_c.max(1), w: 0, s: measured_s.max(1) },
            decompositions: None,
            decomposition_graph: GraphMode::Bipartite,
        };
        let mut decs = Vec::new();
        let mut max_w = 0;
        for chunk in 0..proto.chunks.len() {
            let g = proto.chunk_graph(&formula, chunk, GraphMode::Bipartite);
            let dec = heuristic_path_decomposition(&g);
            max_w = max_w.max(dec.width());
            decs.push(dec);
        }
        ProofdoorDescriptor {
            params: PdParams { w: max_w, ..proto.params },
            decompositions: Some(decs),
            ..proto
        }
    };

    let mut last_failure = String::new();
    for form in [StripForm::Verbatim, StripForm::ShiftedWindow, StripForm::CarryAugmented] {
        let descriptor = try_form(form);
        match verify_proofdoor(&formula, &descriptor, GraphMode::Bipartite) {
            Ok(report) if report.passed() => {
                return Ok(MultStripMiter {
                    formula,
                    netlist: nl,
                    descriptor,
                    form,
                    report,
                    input_wires,
                });
            }
            Ok(report) => {
                let failed: Vec<String> = report
                    .conditions
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                last_failure = format!("{form:?}: {}", failed.join("; "));
            }
            Err(crate::proofdoor::VerifyError::Descriptor(e)) => {
                last_failure = format!("{form:?}: {e}");
            }
            Err(e) => return Err(StripError::Verify(e.to_string())),
        }
    }
    Err(StripError::NoVerifiedForm(last_failure))
}

/// Truth table of every wire over the given inputs, by exhaustive simulation.
fn wire_tables(nl: &Netlist, inputs: &[Wire]) -> HashMap<Wire, Vec<bool>> {
    let points = 1usize << inputs.len();
    let mut tables: HashMap<Wire, Vec<bool>> = HashMap::new();
    for mask in 0..points {
        let assignment: BTreeMap<Wire, bool> =
            inputs.iter().enumerate().map(|(i, &w)| (w, mask >> i & 1 == 1)).collect();
        let values = nl.simulate(&assignment);
        for w in 1..=nl.num_wires() {
            tables.entry(w).or_insert_with(|| Vec::with_capacity(points)).push(values[w as usize]);
        }
    }
    tables
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::circuit::exhaustive_miter_unsat;

    #[test]
    fn strip_descriptor_n2_delta1_passes_verification() {
        let strip = build_mult_strip_descriptor(2, 1).unwrap();
        assert!(strip.report.passed());
        assert!(exhaustive_miter_unsat(
            &strip.netlist,
            &[strip.formula.clauses().last().unwrap().clone()],
            &strip.input_wires
        ));
    }

    #[test]
    fn big_delta_degenerates_to_single_chunk() {
        let strip = build_mult_strip_descriptor(2, 4).unwrap();
        assert_eq!(strip.descriptor.num_chunks(), 1);
        assert!(strip.report.passed());
    }

    #[test]
    fn window_units_bounded_by_delta() {
        let strip = build_mult_strip_descriptor(2, 1).unwrap();
        for interp in &strip.descriptor.interpolants {
            let window = interp
                .iter()
                .filter(|c| c.len() == 1 && !c.literals()[0].is_positive())
                .count();
            assert!(window <= 1, "window must keep at most Δ negated-difference units");
        }
    }
}
