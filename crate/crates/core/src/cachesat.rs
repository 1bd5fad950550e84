//! A DPLL-style solver that branches along a fixed variable order and caches
//! distinct consistent subformulas (DCSFs), plus an ordered branching-tree
//! refuter that exports resolution proofs.

use std::collections::HashMap;

use thiserror::Error;

use crate::cnf::{unit_propagate, Assignment, Clause, CnfFormula, Lit, PropStatus, Var};
use crate::resolution::ResolutionProof;
use crate::structure::VarOrder;

/// Canonical encoding of a residual subformula: the multiset of
/// non-satisfied restricted clauses over the unassigned variables, sorted.
/// Two partial assignments with syntactically identical residuals yield
/// equal keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DcsfKey {
    clauses: Vec<Clause>,
}

impl DcsfKey {
    fn from_residual(f: &CnfFormula, alpha: &Assignment) -> Option<DcsfKey> {
        let mut clauses = Vec::new();
        'clause: for c in f.clauses() {
            let mut kept = Vec::with_capacity(c.len());
            for &l in c.literals() {
                match alpha.lit_value(l) {
                    Some(true) => continue 'clause,
                    Some(false) => {}
                    None => kept.push(l),
                }
            }
            if kept.is_empty() {
                return None; // falsified clause; callers catch this via BCP
            }
            clauses.push(Clause::new(kept));
        }
        clauses.sort();
        Some(DcsfKey { clauses })
    }

    pub fn is_satisfied(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Rebuilds the residual as a standalone formula (for cache replay).
    pub fn to_formula(&self, num_vars: u32) -> CnfFormula {
        CnfFormula::from_clauses(num_vars, self.clauses.clone())
    }

    /// Compact canonical rendering, used in traces.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        parts.join(" | ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
}

/// Per-node outcome recorded in the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeOutcome {
    /// BCP falsified a clause at this node.
    Conflict,
    /// The residual was empty: all clauses satisfied.
    SatisfiedLeaf,
    /// The residual was found in the cache with this verdict.
    CacheHit(SolveStatus),
    /// The node was expanded and fully explored.
    Explored(SolveStatus),
}

/// Per-node trace record: the residual key, the branching variable (absent
/// for leaves and cache hits), and the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub key: Option<DcsfKey>,
    pub decision: Option<Var>,
    pub outcome: NodeOutcome,
}

#[derive(Debug, Clone)]
pub struct CacheSatResult {
    pub status: SolveStatus,
    /// Total assignment indexed by variable, present when satisfiable.
    pub model: Option<Vec<bool>>,
    /// Cache entries created by full exploration (equals the final cache
    /// size). Empty (satisfied) residuals are never cached; they are counted
    /// separately in `satisfied_leaves` since the counting argument leaves
    /// their status open.
    pub dcsf_count: usize,
    pub satisfied_leaves: u64,
    pub cache_hits: u64,
    pub decisions: u64,
    pub trace: Vec<TraceNode>,
    /// The cache in insertion order, for replay-style audits.
    pub cache: Vec<(DcsfKey, SolveStatus)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CacheSatError {
    #[error("variable order does not cover variable {0}")]
    OrderMissingVar(Var),
}

struct CacheSat<'a> {
    f: &'a CnfFormula,
    order: &'a [Var],
    use_cache: bool,
    cache: HashMap<DcsfKey, SolveStatus>,
    cache_order: Vec<(DcsfKey, SolveStatus)>,
    alpha: Assignment,
    decisions: u64,
    cache_hits: u64,
    satisfied_leaves: u64,
    trace: Vec<TraceNode>,
    model: Option<Vec<bool>>,
}

impl CacheSat<'_> {
    /// Explores the node reached by the current assignment; `next` is the
    /// first order position not yet branched. Returns the node's verdict.
    fn node(&mut self, next: usize) -> SolveStatus {
        let mark = self.alpha.len();
        let prop = unit_propagate(self.f, &mut self.alpha);
        if let PropStatus::Conflict(_) = prop.status {
            self.trace.push(TraceNode { key: None, decision: None, outcome: NodeOutcome::Conflict });
            self.alpha.truncate(mark);
            return SolveStatus::Unsat;
        }

        let key = DcsfKey::from_residual(self.f, &self.alpha)
            .expect("falsified clause must be caught by propagation");
        if key.is_satisfied() {
            self.satisfied_leaves += 1;
            let mut model = vec![false; self.f.num_vars() as usize + 1];
            for (v, b) in self.alpha.assigned() {
                model[v.index()] = b;
            }
            debug_assert!(self.f.eval(&model));
            self.model = Some(model);
            self.trace.push(TraceNode {
                key: Some(key),
                decision: None,
                outcome: NodeOutcome::SatisfiedLeaf,
            });
            self.alpha.truncate(mark);
            return SolveStatus::Sat;
        }

        if self.use_cache {
            if let Some(&verdict) = self.cache.get(&key) {
                self.cache_hits += 1;
                self.trace.push(TraceNode {
                    key: Some(key),
                    decision: None,
                    outcome: NodeOutcome::CacheHit(verdict),
                });
                self.alpha.truncate(mark);
                return verdict;
            }
        }

        // Branch on the next unassigned variable of the order, value 0 then 1.
        let mut pos = next;
        while pos < self.order.len() && self.alpha.is_assigned(self.order[pos]) {
            pos += 1;
        }
        assert!(pos < self.order.len(), "non-empty residual with all order variables assigned");
        let v = self.order[pos];

        let mut verdict = SolveStatus::Unsat;
        for value in [false, true] {
            self.decisions += 1;
            let sub_mark = self.alpha.len();
            self.alpha.assign(Lit::new(v, value), 0);
            let sub = self.node(pos + 1);
            self.alpha.truncate(sub_mark);
            if sub == SolveStatus::Sat {
                verdict = SolveStatus::Sat;
                break;
            }
        }

        if self.use_cache {
            self.cache.insert(key.clone(), verdict);
            self.cache_order.push((key.clone(), verdict));
        }
        self.trace.push(TraceNode {
            key: Some(key),
            decision: Some(v),
            outcome: NodeOutcome::Explored(verdict),
        });
        self.alpha.truncate(mark);
        verdict
    }
}

/// Solves `f` by DPLL over the fixed order `pi` (value 0 then 1), caching
/// residual subformulas: a cache hit returns the stored verdict without
/// expansion. The fully explored residuals stored in the cache are the
/// solver's DCSFs.
pub fn solve_cachesat(f: &CnfFormula, pi: &VarOrder) -> Result<CacheSatResult, CacheSatError> {
    solve_cachesat_with(f, pi, true)
}

/// [`solve_cachesat`] with the cache optionally disabled (for replay audits).
pub fn solve_cachesat_with(
    f: &CnfFormula,
    pi: &VarOrder,
    use_cache: bool,
) -> Result<CacheSatResult, CacheSatError> {
    let covered = pi.positions(f.num_vars());
    for v in f.occurring_vars() {
        if covered[v.index()].is_none() {
            return Err(CacheSatError::OrderMissingVar(v));
        }
    }
    let mut solver = CacheSat {
        f,
        order: &pi.vars,
        use_cache,
        cache: HashMap::new(),
        cache_order: Vec::new(),
        alpha: Assignment::new(f.num_vars()),
        decisions: 0,
        cache_hits: 0,
        satisfied_leaves: 0,
        trace: Vec::new(),
        model: None,
    };
    let status = if f.contains_empty_clause() { SolveStatus::Unsat } else { solver.node(0) };
    Ok(CacheSatResult {
        status,
        model: solver.model,
        dcsf_count: solver.cache_order.len(),
        satisfied_leaves: solver.satisfied_leaves,
        cache_hits: solver.cache_hits,
        decisions: solver.decisions,
        trace: solver.trace,
        cache: solver.cache_order,
    })
}

/// A premise clause for the ordered refuter: the clause, plus the id it
/// carries in the caller's numbering (a formula clause id or a proof step id).
#[derive(Debug, Clone)]
pub struct PremiseClause {
    pub clause: Clause,
    pub ref_id: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RefuteError {
    #[error("premise is satisfiable")]
    Satisfiable,
    #[error("branching order does not cover variable {0}")]
    OrderMissingVar(Var),
    #[error("premise contains a tautological clause")]
    TautologicalPremise,
}

/// Refutes an unsatisfiable premise by a plain 2-way branching tree over
/// `order` (no propagation: variables are branched strictly in order, a node
/// is a leaf once some premise clause is fully falsified), converting the
/// tree to resolution steps appended to `proof`. Identical residuals at the
/// same depth share one sub-derivation. Returns the id deriving ⊥.
///
/// Along every leaf-to-root path of the produced DAG the pivots appear in
/// reverse `order`, so a suitable order yields refutations respecting
/// two-layer partial orders.
pub fn refute_ordered(
    premise: &[PremiseClause],
    order: &[Var],
    proof: &mut ResolutionProof,
) -> Result<u32, RefuteError> {
    for pc in premise {
        if pc.clause.is_tautology() {
            return Err(RefuteError::TautologicalPremise);
        }
        for v in pc.clause.vars() {
            if !order.contains(&v) {
                return Err(RefuteError::OrderMissingVar(v));
            }
        }
    }
    if let Some(pc) = premise.iter().find(|pc| pc.clause.is_empty()) {
        return Ok(pc.ref_id);
    }

    struct Ctx<'a> {
        premise: &'a [PremiseClause],
        order: &'a [Var],
        proof: &'a mut ResolutionProof,
        values: HashMap<Var, bool>,
        // (depth, residual) → (ref id, clause) of the shared sub-derivation
        cache: HashMap<(usize, Vec<(u32, Vec<Lit>)>), (u32, Clause)>,
    }

    impl Ctx<'_> {
        /// Returns `(id, clause)` deriving a clause falsified by the current
        /// assignment, or None if the subtree is satisfiable.
        fn refute(&mut self, depth: usize) -> Option<(u32, Clause)> {
            let mut residual: Vec<(u32, Vec<Lit>)> = Vec::new();
            let mut all_satisfied = true;
            for (i, pc) in self.premise.iter().enumerate() {
                let mut surviving = Vec::new();
                let mut satisfied = false;
                for &l in pc.clause.literals() {
                    match self.values.get(&l.var()) {
                        Some(&v) if l.satisfied_by(v) => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => surviving.push(l),
                    }
                }
                if satisfied {
                    continue;
                }
                all_satisfied = false;
                if surviving.is_empty() {
                    return Some((pc.ref_id, pc.clause.clone()));
                }
                residual.push((i as u32, surviving));
            }
            if all_satisfied {
                return None;
            }

            let key = (depth, residual);
            if let Some(hit) = self.cache.get(&key) {
                return Some(hit.clone());
            }

            assert!(depth < self.order.len(), "open residual with exhausted order");
            let v = self.order[depth];
            if self.values.contains_key(&v) {
                return self.refute(depth + 1);
            }

            self.values.insert(v, false);
            let neg = self.refute(depth + 1);
            self.values.remove(&v);
            let (neg_id, neg_clause) = neg?;
            // The false branch may not have depended on v at all; its clause
            // then already refutes this node.
            if !neg_clause.contains(Lit::positive(v)) {
                self.cache.insert(key, (neg_id, neg_clause.clone()));
                return Some((neg_id, neg_clause));
            }

            self.values.insert(v, true);
            let pos = self.refute(depth + 1);
            self.values.remove(&v);
            let (pos_id, pos_clause) = pos?;
            if !pos_clause.contains(Lit::negative(v)) {
                self.cache.insert(key, (pos_id, pos_clause.clone()));
                return Some((pos_id, pos_clause));
            }

            let clause = crate::cnf::resolve(&neg_clause, &pos_clause, v)
                .expect("branch clauses resolve on the branching variable");
            let id = self.proof.push_step(neg_id, pos_id, v, clause.clone());
            let out = (id, clause);
            self.cache.insert(key, out.clone());
            Some(out)
        }
    }

    let mut ctx = Ctx { premise, order, proof, values: HashMap::new(), cache: HashMap::new() };
    match ctx.refute(0) {
        Some((id, clause)) => {
            debug_assert!(
                clause.is_empty(),
                "derivation under the empty assignment must produce the empty clause"
            );
            Ok(id)
        }
        None => Err(RefuteError::Satisfiable),
    }
}

/// Refutes a whole formula with [`refute_ordered`], producing a standalone
/// proof whose inputs are the formula's clauses.
pub fn refute_formula_ordered(
    f: &CnfFormula,
    order: &[Var],
) -> Result<ResolutionProof, RefuteError> {
    let premise: Vec<PremiseClause> =
        f.iter().map(|(id, c)| PremiseClause { clause: c.clone(), ref_id: id }).collect();
    let mut proof = ResolutionProof::new(f.num_clauses() as u32);
    refute_ordered(&premise, order, &mut proof)?;
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_sat, BruteSatResult};
    use crate::resolution::check_refutation;
    use crate::structure::VarOrder;

    #[test]
    fn immediate_contradiction() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let r = solve_cachesat(&f, &VarOrder::identity(1)).unwrap();
        assert_eq!(r.status, SolveStatus::Unsat);
        assert!(r.dcsf_count <= 2);
    }

    #[test]
    fn deterministic_search_order_forces_model() {
        // branching x1 = 0 first, the clause then propagates x2 = 1
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let r = solve_cachesat(&f, &VarOrder::identity(2)).unwrap();
        assert_eq!(r.status, SolveStatus::Sat);
        let model = r.model.unwrap();
        assert_eq!((model[1], model[2]), (false, true));
    }

    #[test]
    fn agrees_with_oracle_and_traces_deterministically() {
        let formulas = [
            CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[-1, 3], &[-3, -2], &[2]]),
            CnfFormula::from_dimacs_clauses(3, &[&[1], &[-1, 2], &[-2, 3], &[-3, -1]]),
            CnfFormula::from_dimacs_clauses(4, &[&[1, 2], &[3, 4], &[-1, -3], &[-2, -4], &[-1, -4]]),
        ];
        for f in &formulas {
            let pi = VarOrder::identity(f.num_vars());
            let a = solve_cachesat(f, &pi).unwrap();
            let b = brute_sat(f).unwrap();
            assert_eq!(a.status == SolveStatus::Sat, b.is_sat());
            let again = solve_cachesat(f, &pi).unwrap();
            assert_eq!(a.trace, again.trace);
            assert_eq!(a.dcsf_count, again.dcsf_count);
        }
    }

    #[test]
    fn cached_unsat_residuals_replay_unsat() {
        let f = CnfFormula::from_dimacs_clauses(
            3,
            &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3], &[2, 3], &[-2, -3]],
        );
        let pi = VarOrder::identity(3);
        let r = solve_cachesat(&f, &pi).unwrap();
        assert_eq!(r.status, SolveStatus::Unsat);
        assert!(r.dcsf_count > 0);
        for (key, verdict) in &r.cache {
            if *verdict == SolveStatus::Unsat {
                let residual = key.to_formula(f.num_vars());
                let replay = solve_cachesat_with(&residual, &pi, false).unwrap();
                assert_eq!(replay.status, SolveStatus::Unsat);
                match brute_sat(&residual).unwrap() {
                    BruteSatResult::Unsat => {}
                    BruteSatResult::Sat(_) => panic!("cached UNSAT residual is satisfiable"),
                }
            }
        }
    }

    #[test]
    fn order_must_cover_formula() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let pi = VarOrder::new(vec![Var(1)]);
        assert_eq!(
            solve_cachesat(&f, &pi).unwrap_err(),
            CacheSatError::OrderMissingVar(Var(2))
        );
    }

    #[test]
    fn tree_refuter_produces_checkable_proof() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]);
        let proof = refute_formula_ordered(&f, &[Var(1), Var(2)]).unwrap();
        check_refutation(&f, &proof).unwrap();
    }

    #[test]
    fn tree_refuter_paths_follow_reverse_order() {
        use crate::structure::PartialOrder;
        // with after-variables branched first and before-variables last,
        // before-pivots come first along every path
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3]]);
        let proof = refute_formula_ordered(&f, &[Var(2), Var(3), Var(1)]).unwrap();
        check_refutation(&f, &proof).unwrap();
        let po = PartialOrder::new([Var(1)].into(), [Var(2), Var(3)].into());
        assert_eq!(crate::resolution::check_partial_order(&proof, &po), Ok(()));
    }

    #[test]
    fn tree_refuter_detects_sat() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let r = refute_formula_ordered(&f, &[Var(1), Var(2)]);
        assert!(matches!(r, Err(RefuteError::Satisfiable)));
    }
}
