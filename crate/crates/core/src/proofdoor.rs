//! Proofdoor descriptors: a chunking of an unsatisfiable formula's clauses
//! together with a chain of CNF interpolants and per-clause support sets.
//! This module verifies the descriptor conditions with SAT calls, emits the
//! induced cutting partial orders, and assembles a full resolution
//! refutation chunk by chunk.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cachesat::{refute_ordered, PremiseClause, RefuteError};
use crate::cdcl::decide_unsat;
use crate::cnf::{Clause, ClauseId, CnfFormula, Lit, Var};
use crate::resolution::ResolutionProof;
use crate::structure::{
    heuristic_path_decomposition, verify_path_decomposition, Graph, PartialOrder,
    PathDecomposition,
};

/// Which incidence graph chunk widths are certified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    #[default]
    Primal,
    Bipartite,
}

impl std::fmt::Display for GraphMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphMode::Primal => write!(f, "primal"),
            GraphMode::Bipartite => write!(f, "bipartite"),
        }
    }
}

/// Declared proofdoor parameters: at most `c` clauses per interpolant, chunk
/// pathwidth at most `w`, supports (and the final interpolant) of size at
/// most `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdParams {
    pub c: usize,
    pub w: usize,
    pub s: usize,
}

/// A proofdoor descriptor: chunks `A_1..A_k` partitioning the clause ids,
/// interpolants `I_1..I_{k-1}`, and for each clause of `I_j` (j ≥ 2) a
/// support set of indices into `I_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofdoorDescriptor {
    pub chunks: Vec<Vec<ClauseId>>,
    pub interpolants: Vec<Vec<Clause>>,
    /// `supports[j-2][t]`: indices into `interpolants[j-2]` supporting clause
    /// `t` of `interpolants[j-1]`.
    pub supports: Vec<Vec<Vec<usize>>>,
    pub params: PdParams,
    /// Optional per-chunk path decompositions certifying condition 4.
    pub decompositions: Option<Vec<PathDecomposition>>,
    /// Graph the shipped decompositions are built over.
    pub decomposition_graph: GraphMode,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("chunks do not partition the clause ids: {0}")]
    NotAPartition(String),
    #[error("descriptor needs {expected} interpolants for {k} chunks, found {found}")]
    InterpolantCount { k: usize, expected: usize, found: usize },
    #[error("descriptor needs {expected} support tables, found {found}")]
    SupportTableCount { expected: usize, found: usize },
    #[error("support table {table} has {found} rows but the interpolant has {expected} clauses")]
    SupportRowCount { table: usize, expected: usize, found: usize },
    #[error("support index {index} out of range for interpolant {interpolant}")]
    SupportIndexRange { interpolant: usize, index: usize },
    #[error("interpolant {0} mentions a variable above num_vars")]
    InterpolantVarRange(usize),
    #[error("interpolant {interpolant} clause {clause} violates the variable-scope invariant")]
    InterpolantScope { interpolant: usize, clause: usize },
    #[error("descriptor ships {found} decompositions for {expected} chunks")]
    DecompositionCount { expected: usize, found: usize },
    #[error("cutting partial order {index}: before and after overlap on {var}")]
    OverlappingOrder { index: usize, var: Var },
}

impl ProofdoorDescriptor {
    pub fn num_chunks(&self) -> usize {
        self.chunks.len()
    }

    /// Structural validation: chunk partition, table shapes, index ranges,
    /// and the interpolant variable-scope invariant
    /// `vars(I_j) ⊆ vars(A_j..A_k) ∩ vars(A_1..A_j ∪ I_{j-1})`.
    /// Runs before any SAT call.
    pub fn validate(&self, f: &CnfFormula) -> Result<(), DescriptorError> {
        let k = self.chunks.len();
        let mut seen = vec![false; f.num_clauses() + 1];
        for chunk in &self.chunks {
            for &id in chunk {
                if id == 0 || id as usize > f.num_clauses() {
                    return Err(DescriptorError::NotAPartition(format!("id {id} out of range")));
                }
                if seen[id as usize] {
                    return Err(DescriptorError::NotAPartition(format!("id {id} repeated")));
                }
                seen[id as usize] = true;
            }
        }
        if let Some(missing) = (1..=f.num_clauses()).find(|&i| !seen[i]) {
            return Err(DescriptorError::NotAPartition(format!("id {missing} unassigned")));
        }

        let expected_interps = k.saturating_sub(1);
        if self.interpolants.len() != expected_interps {
            return Err(DescriptorError::InterpolantCount {
                k,
                expected: expected_interps,
                found: self.interpolants.len(),
            });
        }
        let expected_tables = expected_interps.saturating_sub(1);
        if self.supports.len() != expected_tables {
            return Err(DescriptorError::SupportTableCount {
                expected: expected_tables,
                found: self.supports.len(),
            });
        }
        for (t, table) in self.supports.iter().enumerate() {
            let rows = self.interpolants[t + 1].len();
            if table.len() != rows {
                return Err(DescriptorError::SupportRowCount {
                    table: t,
                    expected: rows,
                    found: table.len(),
                });
            }
            for row in table {
                for &idx in row {
                    if idx >= self.interpolants[t].len() {
                        return Err(DescriptorError::SupportIndexRange {
                            interpolant: t + 2,
                            index: idx,
                        });
                    }
                }
            }
        }

        let chunk_vars = self.chunk_vars(f);
        let mut suffix_vars: Vec<BTreeSet<Var>> = vec![BTreeSet::new(); k + 1];
        for j in (0..k).rev() {
            suffix_vars[j] = suffix_vars[j + 1].union(&chunk_vars[j]).copied().collect();
        }
        let mut prefix: BTreeSet<Var> = BTreeSet::new();
        for (j, interp) in self.interpolants.iter().enumerate() {
            prefix.extend(chunk_vars[j].iter().copied());
            for (t, c) in interp.iter().enumerate() {
                if c.max_var() > f.num_vars() {
                    return Err(DescriptorError::InterpolantVarRange(j + 1));
                }
                for v in c.vars() {
                    if !suffix_vars[j].contains(&v) || !prefix.contains(&v) {
                        return Err(DescriptorError::InterpolantScope {
                            interpolant: j + 1,
                            clause: t,
                        });
                    }
                }
            }
            prefix.extend(interp.iter().flat_map(|c| c.vars()));
        }

        if let Some(decs) = &self.decompositions {
            if decs.len() != k {
                return Err(DescriptorError::DecompositionCount { expected: k, found: decs.len() });
            }
        }
        Ok(())
    }

    fn chunk_vars(&self, f: &CnfFormula) -> Vec<BTreeSet<Var>> {
        self.chunks
            .iter()
            .map(|chunk| chunk.iter().flat_map(|&id| f.clause(id).vars()).collect())
            .collect()
    }

    /// `X_i`: variables of chunk `A_i` absent from every later chunk.
    pub fn x_sets(&self, f: &CnfFormula) -> Vec<BTreeSet<Var>> {
        let k = self.chunks.len();
        let chunk_vars = self.chunk_vars(f);
        let mut later: Vec<BTreeSet<Var>> = vec![BTreeSet::new(); k + 1];
        for j in (0..k).rev() {
            later[j] = later[j + 1].union(&chunk_vars[j]).copied().collect();
        }
        (0..k)
            .map(|j| chunk_vars[j].iter().filter(|v| !later[j + 1].contains(v)).copied().collect())
            .collect()
    }

    /// `Z_i`: variables of interpolant `I_i`.
    pub fn z_sets(&self) -> Vec<BTreeSet<Var>> {
        self.interpolants
            .iter()
            .map(|interp| interp.iter().flat_map(|c| c.vars()).collect())
            .collect()
    }

    /// The chunk's subformula graph in the requested mode. In bipartite mode
    /// the clause vertex for global clause id `id` is `num_vars + id`.
    pub fn chunk_graph(&self, f: &CnfFormula, chunk: usize, mode: GraphMode) -> Graph {
        let mut g = Graph::new();
        for &id in &self.chunks[chunk] {
            let vars: Vec<Var> = f.clause(id).vars().collect();
            for v in &vars {
                g.add_vertex(v.0);
            }
            match mode {
                GraphMode::Primal => {
                    for i in 0..vars.len() {
                        for j in i + 1..vars.len() {
                            g.add_edge(vars[i].0, vars[j].0);
                        }
                    }
                }
                GraphMode::Bipartite => {
                    let cv = f.num_vars() + id;
                    g.add_vertex(cv);
                    for v in &vars {
                        g.add_edge(v.0, cv);
                    }
                }
            }
        }
        g
    }
}

/// One verified descriptor condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_proofdoor`]: per-condition verdicts plus measured
/// constants.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub conditions: Vec<ConditionReport>,
    pub measured_c: usize,
    pub measured_s: usize,
    pub measured_w: usize,
    /// True when every chunk width was certified by a shipped, verified
    /// decomposition (otherwise the heuristic upper bound was used).
    pub width_certified: bool,
    pub sat_calls: u64,
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("SAT call exhausted its budget while checking {0}")]
    SolverBudget(String),
}

fn entailment_query(
    f: &CnfFormula,
    chunk: &[ClauseId],
    support: &[&Clause],
    target: &Clause,
) -> CnfFormula {
    let mut q = CnfFormula::new(f.num_vars());
    for &id in chunk {
        q.add_clause(f.clause(id).clone());
    }
    for c in support {
        q.add_clause((*c).clone());
    }
    for &l in target.literals() {
        q.add_clause(Clause::new(vec![!l]));
    }
    q
}

/// Verifies the proofdoor conditions for `d` against `f`:
///
/// 1. every interpolant has at most `c` clauses;
/// 2. `A_j ∧ S(C) ⊨ C` for every clause `C` of every `I_j`, with
///    `|S(C)| ≤ s` (`S(C) = ∅` for `j = 1`), established by SAT calls;
/// 3. the final interpolant has at most `s` clauses;
/// 4. every chunk's incidence pathwidth is at most `w`, certified by the
///    shipped decomposition or bounded from above by the heuristic;
///
/// plus chain termination: `I_{k-1} ∧ A_k` is unsatisfiable (for `k = 1`,
/// `A_1` alone must be unsatisfiable).
pub fn verify_proofdoor(
    f: &CnfFormula,
    d: &ProofdoorDescriptor,
    graph_mode: GraphMode,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    d.validate(f)?;
    let k = d.num_chunks();
    let mut conditions = Vec::new();
    let mut sat_calls = 0u64;

    let measured_c = d.interpolants.iter().map(|i| i.len()).max().unwrap_or(0);
    conditions.push(ConditionReport {
        name: "interpolant-size",
        passed: measured_c <= d.params.c,
        detail: format!("max |I_j| = {measured_c}, c = {}", d.params.c),
    });

    let mut measured_s = 0usize;
    let mut cond2_pass = true;
    let mut cond2_detail = String::from("all interpolant clauses entailed");
    'cond2: for (j, interp) in d.interpolants.iter().enumerate() {
        for (t, target) in interp.iter().enumerate() {
            let support: Vec<&Clause> = if j == 0 {
                Vec::new()
            } else {
                d.supports[j - 1][t].iter().map(|&idx| &d.interpolants[j - 1][idx]).collect()
            };
            measured_s = measured_s.max(support.len());
            if support.len() > d.params.s {
                cond2_pass = false;
                cond2_detail = format!(
                    "support of I_{} clause {} has {} > s clauses",
                    j + 1,
                    t,
                    support.len()
                );
                break 'cond2;
            }
            let query = entailment_query(f, &d.chunks[j], &support, target);
            sat_calls += 1;
            let unsat = decide_unsat(&query)
                .ok_or_else(|| VerifyError::SolverBudget(format!("I_{} clause {t}", j + 1)))?;
            if !unsat {
                cond2_pass = false;
                cond2_detail =
                    format!("A_{} ∧ S(C) does not entail clause {} ({})", j + 1, t, target);
                break 'cond2;
            }
        }
    }
    conditions.push(ConditionReport {
        name: "support-entailment",
        passed: cond2_pass,
        detail: cond2_detail,
    });

    let final_size = d.interpolants.last().map(|i| i.len()).unwrap_or(0);
    measured_s = measured_s.max(final_size);
    conditions.push(ConditionReport {
        name: "final-interpolant-size",
        passed: final_size <= d.params.s,
        detail: format!("|I_(k-1)| = {final_size}, s = {}", d.params.s),
    });

    let mut measured_w = 0usize;
    let mut width_certified = true;
    let mut cond4_pass = true;
    let mut cond4_detail = String::from("all chunk widths within bound");
    for j in 0..k {
        let g = d.chunk_graph(f, j, graph_mode);
        let width = match d.decompositions.as_ref().map(|decs| &decs[j]) {
            Some(dec) => match verify_path_decomposition(&g, dec) {
                Ok(w) => w,
                Err(viol) => {
                    cond4_pass = false;
                    cond4_detail = format!("chunk {} decomposition invalid: {viol}", j + 1);
                    break;
                }
            },
            None => {
                width_certified = false;
                let dec = heuristic_path_decomposition(&g);
                verify_path_decomposition(&g, &dec).expect("heuristic decomposition is valid")
            }
        };
        measured_w = measured_w.max(width);
        if width > d.params.w {
            cond4_pass = false;
            cond4_detail = format!("chunk {} width {} exceeds w = {}", j + 1, width, d.params.w);
            break;
        }
    }
    conditions.push(ConditionReport {
        name: "chunk-width",
        passed: cond4_pass,
        detail: cond4_detail,
    });

    let mut term = CnfFormula::new(f.num_vars());
    for &id in &d.chunks[k - 1] {
        term.add_clause(f.clause(id).clone());
    }
    if let Some(last) = d.interpolants.last() {
        for c in last {
            term.add_clause(c.clone());
        }
    }
    sat_calls += 1;
    let term_unsat =
        decide_unsat(&term).ok_or_else(|| VerifyError::SolverBudget("chain termination".into()))?;
    conditions.push(ConditionReport {
        name: "chain-termination",
        passed: term_unsat,
        detail: if term_unsat {
            "final chunk refuted under the last interpolant".into()
        } else {
            "I_(k-1) ∧ A_k is satisfiable".into()
        },
    });

    Ok(VerificationReport {
        conditions,
        measured_c,
        measured_s,
        measured_w,
        width_certified,
        sat_calls,
        wall_time: start.elapsed(),
    })
}

/// The cutting partial orders of the decomposition:
/// `(X_1 ∪ … ∪ X_i) ≺ (X_{i+1} ∪ … ∪ X_k ∪ Z_i ∪ … ∪ Z_{k-1})` for
/// `i ∈ {1, …, k−1}`, with `X_i` the chunk-private variables and `Z_i` the
/// variables of `I_i`.
pub fn cutting_partial_orders(
    f: &CnfFormula,
    d: &ProofdoorDescriptor,
) -> Result<Vec<PartialOrder>, DescriptorError> {
    let x = d.x_sets(f);
    let z = d.z_sets();
    let k = d.num_chunks();
    let mut orders = Vec::new();
    for i in 1..k {
        let mut before: BTreeSet<Var> = BTreeSet::new();
        for xs in &x[..i] {
            before.extend(xs.iter().copied());
        }
        let mut after: BTreeSet<Var> = BTreeSet::new();
        for xs in &x[i..] {
            after.extend(xs.iter().copied());
        }
        for zs in &z[i - 1..] {
            after.extend(zs.iter().copied());
        }
        if let Some(v) = before.intersection(&after).next() {
            return Err(DescriptorError::OverlappingOrder { index: i, var: *v });
        }
        orders.push(PartialOrder::new(before, after));
    }
    Ok(orders)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssembleError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("clause {clause} of interpolant {interpolant} is not derivable from its chunk and supports")]
    Underivable { interpolant: usize, clause: usize },
    #[error("final chunk is satisfiable under the last interpolant")]
    FinalChunkSatisfiable,
    #[error("premise contains a tautological clause (interpolant {interpolant}, clause {clause})")]
    Tautological { interpolant: usize, clause: usize },
}

/// Assembles a resolution refutation of `f` along the descriptor: each
/// interpolant clause `C` is derived by refuting `(A_j ∧ S(C)) ↾ ¬C` with
/// the ordered branching-tree refuter and lifting the α-falsified literals
/// back in; clauses repeated from the previous interpolant are reused as
/// resolution-free copies; finally `A_k` is refuted under the derived
/// `I_{k-1}`. Each derived clause subsumes its interpolant clause, and no
/// clause is used before its supports are derived.
pub fn assemble_refutation(
    f: &CnfFormula,
    d: &ProofdoorDescriptor,
) -> Result<ResolutionProof, AssembleError> {
    d.validate(f)?;
    let k = d.num_chunks();
    let mut proof = ResolutionProof::new(f.num_clauses() as u32);

    // (proof ref, derived clause) per clause of the previous interpolant
    let mut previous: Vec<(u32, Clause)> = Vec::new();

    for j in 0..k.saturating_sub(1) {
        let mut already: HashMap<Clause, (u32, Clause)> =
            previous.iter().map(|(r, c)| (c.clone(), (*r, c.clone()))).collect();
        let mut current: Vec<(u32, Clause)> = Vec::with_capacity(d.interpolants[j].len());

        for (t, target) in d.interpolants[j].iter().enumerate() {
            if let Some(hit) = already.get(target) {
                current.push(hit.clone());
                continue;
            }
            let support: Vec<(u32, Clause)> = if j == 0 {
                Vec::new()
            } else {
                d.supports[j - 1][t].iter().map(|&idx| previous[idx].clone()).collect()
            };
            let derived =
                derive_one(f, &d.chunks[j], &support, target, &mut proof).map_err(|e| match e {
                    RefuteError::Satisfiable => {
                        AssembleError::Underivable { interpolant: j + 1, clause: t }
                    }
                    RefuteError::TautologicalPremise => {
                        AssembleError::Tautological { interpolant: j + 1, clause: t }
                    }
                    RefuteError::OrderMissingVar(_) => unreachable!("order covers premise vars"),
                })?;
            already.insert(target.clone(), derived.clone());
            current.push(derived);
        }
        previous = current;
    }

    derive_one(f, &d.chunks[k - 1], &previous, &Clause::empty(), &mut proof).map_err(
        |e| match e {
            RefuteError::Satisfiable => AssembleError::FinalChunkSatisfiable,
            RefuteError::TautologicalPremise => {
                AssembleError::Tautological { interpolant: k, clause: 0 }
            }
            RefuteError::OrderMissingVar(_) => unreachable!("order covers premise vars"),
        },
    )?;
    Ok(proof)
}

/// Derives (a subsumer of) `target` from the chunk clauses plus derived
/// support clauses: restricts the premise under `¬target`, refutes the
/// restriction with the branching-tree refuter, and lifts the local proof by
/// replaying every step on the unrestricted clauses.
fn derive_one(
    f: &CnfFormula,
    chunk: &[ClauseId],
    support: &[(u32, Clause)],
    target: &Clause,
    proof: &mut ResolutionProof,
) -> Result<(u32, Clause), RefuteError> {
    let mut full: Vec<(u32, Clause)> = Vec::with_capacity(chunk.len() + support.len());
    for &id in chunk {
        full.push((id, f.clause(id).clone()));
    }
    full.extend(support.iter().cloned());

    let alpha: Vec<Lit> = target.literals().iter().map(|&l| !l).collect();
    let value_of = |v: Var| alpha.iter().find(|l| l.var() == v).map(|l| l.is_positive());

    let mut premise: Vec<PremiseClause> = Vec::new();
    let mut premise_full: Vec<(u32, Clause)> = Vec::new();
    'clause: for (ref_id, clause) in &full {
        let mut kept = Vec::with_capacity(clause.len());
        for &l in clause.literals() {
            match value_of(l.var()) {
                Some(v) if l.satisfied_by(v) => continue 'clause,
                Some(_) => {}
                None => kept.push(l),
            }
        }
        premise.push(PremiseClause {
            clause: Clause::new(kept),
            ref_id: premise_full.len() as u32 + 1,
        });
        premise_full.push((*ref_id, clause.clone()));
    }

    // Refute over an irredundant sub-premise so the proof resolves only the
    // wires the contradiction genuinely needs (a refutation over the whole
    // chunk would also branch sibling wires that live past this cut, which
    // can break the cutting partial orders). First shrink to the clauses a
    // full refutation actually uses, then greedily drop the rest.
    let try_refute = |active: &[usize]| -> Result<(ResolutionProof, u32), RefuteError> {
        let sub: Vec<PremiseClause> = active
            .iter()
            .enumerate()
            .map(|(local, &idx)| PremiseClause {
                clause: premise[idx].clause.clone(),
                ref_id: local as u32 + 1,
            })
            .collect();
        let order: Vec<Var> = {
            let mut vars: BTreeSet<Var> = BTreeSet::new();
            for pc in &sub {
                vars.extend(pc.clause.vars());
            }
            vars.into_iter().collect()
        };
        let mut local = ResolutionProof::new(sub.len() as u32);
        let root = refute_ordered(&sub, &order, &mut local)?;
        Ok((local, root))
    };
    let used_inputs = |local: &ResolutionProof, root: u32, active: &[usize]| -> Vec<usize> {
        let mut seen_inputs = BTreeSet::new();
        let mut stack = vec![root];
        let mut seen_steps = BTreeSet::new();
        while let Some(id) = stack.pop() {
            if id <= local.num_inputs {
                seen_inputs.insert(active[(id - 1) as usize]);
            } else if seen_steps.insert(id) {
                let s = local.step_by_id(id).unwrap();
                stack.push(s.left);
                stack.push(s.right);
            }
        }
        seen_inputs.into_iter().collect()
    };

    let mut active: Vec<usize> = (0..premise.len()).collect();
    let (mut local, mut local_root) = try_refute(&active)?;
    loop {
        let used = used_inputs(&local, local_root, &active);
        if used.len() == active.len() {
            break;
        }
        active = used;
        let (l, r) = try_refute(&active).expect("unsat core stays unsatisfiable");
        local = l;
        local_root = r;
    }
    let mut at = 0;
    while at < active.len() {
        let mut candidate = active.clone();
        candidate.remove(at);
        match try_refute(&candidate) {
            Ok((l, r)) => {
                active = used_inputs(&l, r, &candidate);
                local = l;
                local_root = r;
                if active.len() < candidate.len() {
                    let (l2, r2) = try_refute(&active).expect("unsat core stays unsatisfiable");
                    local = l2;
                    local_root = r2;
                }
                at = 0;
            }
            Err(_) => at += 1,
        }
    }

    let mut map: HashMap<u32, (u32, Clause)> = HashMap::new();
    for (local_id, &idx) in active.iter().enumerate() {
        map.insert(local_id as u32 + 1, premise_full[idx].clone());
    }
    for step in &local.steps {
        let (gl, cl) = map[&step.left].clone();
        let (gr, cr) = map[&step.right].clone();
        let clause = crate::cnf::resolve(&cl, &cr, step.pivot)
            .expect("lifted antecedents resolve on the same pivot");
        let id = proof.push_step(gl, gr, step.pivot, clause.clone());
        map.insert(step.id, (id, clause));
    }
    let (root_ref, root_clause) = map[&local_root].clone();
    debug_assert!(
        root_clause.literals().iter().all(|l| target.contains(*l)),
        "derived clause must subsume the target"
    );
    Ok((root_ref, root_clause))
}

/// JSON wire form of a descriptor (interpolant clauses as DIMACS literal
/// arrays, decompositions as bag arrays per chunk).
#[derive(Serialize, Deserialize)]
struct DescriptorFile {
    chunks: Vec<Vec<u32>>,
    interpolants: Vec<Vec<Vec<i32>>>,
    supports: Vec<Vec<Vec<usize>>>,
    params: PdParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decompositions: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default)]
    decomposition_graph: GraphMode,
}

pub fn descriptor_to_json(d: &ProofdoorDescriptor) -> String {
    let file = DescriptorFile {
        chunks: d.chunks.clone(),
        interpolants: d
            .interpolants
            .iter()
            .map(|i| {
                i.iter().map(|c| c.literals().iter().map(|l| l.to_dimacs()).collect()).collect()
            })
            .collect(),
        supports: d.supports.clone(),
        params: d.params,
        decompositions: d.decompositions.as_ref().map(|decs| {
            decs.iter()
                .map(|dec| dec.bags.iter().map(|b| b.iter().copied().collect()).collect())
                .collect()
        }),
        decomposition_graph: d.decomposition_graph,
    };
    serde_json::to_string_pretty(&file).expect("descriptor serializes")
}

pub fn descriptor_from_json(text: &str) -> Result<ProofdoorDescriptor, String> {
    let file: DescriptorFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    Ok(ProofdoorDescriptor {
        chunks: file.chunks,
        interpolants: file
            .interpolants
            .into_iter()
            .map(|i| i.into_iter().map(|lits| Clause::from_dimacs(&lits)).collect())
            .collect(),
        supports: file.supports,
        params: file.params,
        decompositions: file.decompositions.map(|decs| {
            decs.into_iter()
                .map(|dec| {
                    PathDecomposition::new(
                        dec.into_iter().map(|b| b.into_iter().collect()).collect(),
                    )
                })
                .collect()
        }),
        decomposition_graph: file.decomposition_graph,
    })
}
