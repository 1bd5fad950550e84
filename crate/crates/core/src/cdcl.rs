//! A CDCL engine locked to a restricted configuration: fixed decision order,
//! DECISION learning, restart after every conflict, value selection 0 then 1,
//! no clause deletion, naive BCP. Every learned clause carries a trivial
//! resolution derivation, so UNSAT runs export checkable refutations.
//!
//! Also implements the guided clause-derivation routine: decide the negation
//! of a target clause first, then follow the order, until the clause is
//! absorbed by the learned database.

use thiserror::Error;

use crate::cnf::{
    absorbs, resolve, unit_propagate, Assignment, Clause, ClauseId, CnfFormula, Lit, PropStatus,
    Var,
};
use crate::resolution::ResolutionProof;
use crate::structure::VarOrder;

/// Solver configuration. Learning scheme (DECISION), restart policy (after
/// every conflict), deletion policy (none) and propagation (naive BCP) are
/// fixed; only the order, an optional scripted decision prefix, and the
/// conflict budget vary.
#[derive(Debug, Clone)]
pub struct CdclConfig {
    pub order: VarOrder,
    /// Literals decided first after every restart (skipping assigned vars).
    pub decision_prefix: Vec<Lit>,
    pub conflict_budget: u64,
}

impl CdclConfig {
    pub fn new(order: VarOrder) -> CdclConfig {
        CdclConfig { order, decision_prefix: Vec::new(), conflict_budget: 1_000_000 }
    }

    pub fn with_budget(mut self, budget: u64) -> CdclConfig {
        self.conflict_budget = budget;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdclStatus {
    Sat,
    Unsat,
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct CdclResult {
    pub status: CdclStatus,
    /// Total assignment indexed by variable, present when satisfiable.
    pub model: Option<Vec<bool>>,
    pub conflicts: u64,
    pub restarts: u64,
    pub decisions: u64,
    /// Learned clauses in learning order (never deleted).
    pub learned: Vec<Clause>,
    /// Proof id deriving each learned clause (parallel to `learned`).
    pub learned_refs: Vec<u32>,
    /// Resolution derivations of all learned clauses; a refutation when the
    /// status is UNSAT.
    pub proof: ResolutionProof,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdclError {
    #[error("decision order does not cover variable {0}")]
    OrderMissingVar(Var),
}

/// Working state shared by the solver and the guided derivation routine:
/// the growing clause database (inputs then learned, never deleted) and the
/// proof under construction.
struct Engine {
    db: CnfFormula,
    /// Proof reference per database clause id.
    refs: Vec<u32>,
    proof: ResolutionProof,
    conflicts: u64,
    decisions: u64,
    restarts: u64,
    learned: Vec<Clause>,
    learned_refs: Vec<u32>,
}

impl Engine {
    fn new(f: &CnfFormula, num_vars: u32) -> Engine {
        let mut db = CnfFormula::new(num_vars);
        let mut refs = Vec::with_capacity(f.num_clauses());
        for (id, c) in f.iter() {
            db.add_clause(c.clone());
            refs.push(id);
        }
        Engine {
            db,
            refs,
            proof: ResolutionProof::new(f.num_clauses() as u32),
            conflicts: 0,
            decisions: 0,
            restarts: 0,
            learned: Vec::new(),
            learned_refs: Vec::new(),
        }
    }

    fn ref_of(&self, db_id: ClauseId) -> u32 {
        self.refs[(db_id - 1) as usize]
    }

    /// Runs naive BCP over the database, tracking antecedents; returns the
    /// falsified clause id on conflict.
    fn propagate(
        &self,
        alpha: &mut Assignment,
        antecedent: &mut [Option<ClauseId>],
    ) -> Option<ClauseId> {
        let prop = unit_propagate(&self.db, alpha);
        for (lit, cid) in &prop.implied {
            antecedent[lit.var().index()] = Some(*cid);
        }
        match prop.status {
            PropStatus::Conflict(cid) => Some(cid),
            PropStatus::Stable => None,
        }
    }

    /// DECISION-scheme conflict analysis: resolves the falsified clause
    /// against antecedents in reverse assignment order until only decision
    /// literals remain. Emits the trivial-resolution chain into the proof
    /// and returns the learned clause with its proof reference.
    fn analyze(
        &mut self,
        conflict: ClauseId,
        alpha: &Assignment,
        antecedent: &[Option<ClauseId>],
    ) -> (Clause, u32) {
        let mut clause = self.db.clause(conflict).clone();
        let mut cur_ref = self.ref_of(conflict);
        for &lit in alpha.trail().iter().rev() {
            if !clause.contains(!lit) {
                continue;
            }
            let Some(ante) = antecedent[lit.var().index()] else {
                continue; // decision literal: its negation stays in the clause
            };
            let ante_clause = self.db.clause(ante).clone();
            let resolvent = resolve(&clause, &ante_clause, lit.var())
                .expect("antecedent resolves on its implied literal");
            cur_ref = self.proof.push_step(cur_ref, self.ref_of(ante), lit.var(), resolvent.clone());
            clause = resolvent;
        }
        (clause, cur_ref)
    }

    fn learn(&mut self, clause: Clause, proof_ref: u32) {
        self.db.add_clause(clause.clone());
        self.refs.push(proof_ref);
        self.learned.push(clause);
        self.learned_refs.push(proof_ref);
    }
}

fn check_order_covers(f: &CnfFormula, order: &VarOrder, extra: &[Var]) -> Result<(), CdclError> {
    let pos = order.positions(f.num_vars());
    for v in f.occurring_vars() {
        if pos[v.index()].is_none() && !extra.contains(&v) {
            return Err(CdclError::OrderMissingVar(v));
        }
    }
    Ok(())
}

/// Solves `f` with the restricted CDCL configuration. On UNSAT the result's
/// proof is a checkable refutation; on SAT it contains derivations of all
/// clauses learned along the way.
pub fn solve_cdcl(f: &CnfFormula, cfg: &CdclConfig) -> Result<CdclResult, CdclError> {
    check_order_covers(f, &cfg.order, &[])?;
    let num_vars = f.num_vars();
    let mut engine = Engine::new(f, num_vars);

    let finish = |engine: Engine, status: CdclStatus, model: Option<Vec<bool>>| CdclResult {
        status,
        model,
        conflicts: engine.conflicts,
        restarts: engine.restarts,
        decisions: engine.decisions,
        learned: engine.learned,
        learned_refs: engine.learned_refs,
        proof: engine.proof,
    };

    'restart: loop {
        engine.restarts += 1;
        let mut alpha = Assignment::new(num_vars);
        let mut antecedent: Vec<Option<ClauseId>> = vec![None; num_vars as usize + 1];

        if let Some(cid) = engine.propagate(&mut alpha, &mut antecedent) {
            engine.conflicts += 1;
            let (clause, proof_ref) = engine.analyze(cid, &alpha, &antecedent);
            debug_assert!(clause.is_empty(), "level-0 conflicts analyze to the empty clause");
            engine.learn(clause, proof_ref);
            return Ok(finish(engine, CdclStatus::Unsat, None));
        }

        let mut level = 0u32;
        loop {
            let decision = cfg
                .decision_prefix
                .iter()
                .copied()
                .find(|l| !alpha.is_assigned(l.var()))
                .or_else(|| {
                    cfg.order
                        .vars
                        .iter()
                        .copied()
                        .find(|v| !alpha.is_assigned(*v))
                        .map(Lit::negative)
                });
            let Some(dec) = decision else {
                let mut model = vec![false; num_vars as usize + 1];
                for (v, b) in alpha.assigned() {
                    model[v.index()] = b;
                }
                debug_assert!(f.eval(&model));
                return Ok(finish(engine, CdclStatus::Sat, Some(model)));
            };

            level += 1;
            engine.decisions += 1;
            alpha.assign(dec, level);
            if let Some(cid) = engine.propagate(&mut alpha, &mut antecedent) {
                engine.conflicts += 1;
                let (clause, proof_ref) = engine.analyze(cid, &alpha, &antecedent);
                let empty = clause.is_empty();
                engine.learn(clause, proof_ref);
                if empty {
                    return Ok(finish(engine, CdclStatus::Unsat, None));
                }
                if engine.conflicts >= cfg.conflict_budget {
                    return Ok(finish(engine, CdclStatus::BudgetExceeded, None));
                }
                continue 'restart;
            }
        }
    }
}

/// Decides satisfiability with the restricted engine over the query's
/// occurring variables, cross-checked against the exhaustive oracle on small
/// inputs. Returns `None` when the conflict budget runs out.
pub fn decide_unsat(f: &CnfFormula) -> Option<bool> {
    let order = VarOrder::new(f.occurring_vars());
    let res = solve_cdcl(f, &CdclConfig::new(order)).expect("order covers occurring vars");
    let unsat = match res.status {
        CdclStatus::Unsat => true,
        CdclStatus::Sat => false,
        CdclStatus::BudgetExceeded => return None,
    };
    if f.num_vars() <= 20 {
        if let Ok(b) = crate::oracles::brute_sat(f) {
            debug_assert_eq!(!b.is_sat(), unsat, "CDCL disagrees with exhaustive oracle");
        }
    }
    Some(unsat)
}

/// Outcome of the guided derivation of a target clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeriveOutcome {
    /// The clause was absorbed before any conflict; nothing was learned.
    Absorbed,
    /// The guided run blocked the assignment ¬c, learning `learned` along
    /// the way (typically leaving the clause absorbed by the database).
    Derived { learned: Vec<Clause>, conflicts: u64 },
    /// The conflict budget ran out, or a model of `f ∧ db ∧ ¬c` was found
    /// (which refutes the entailment precondition).
    BudgetExceeded { learned: Vec<Clause>, conflicts: u64, found_countermodel: bool },
}

/// Guided derivation: repeatedly restarts, decides the literals of `¬c`
/// first and then follows `pi`, learning a DECISION clause from every
/// conflict, until `f ∪ db ∪ learned` absorbs `c` (or BCP forces a literal
/// of `c` true while asserting `¬c`, which blocks the assignment for good).
pub fn derive_clause(
    f: &CnfFormula,
    db: &[Clause],
    c: &Clause,
    pi: &VarOrder,
    budget: u64,
) -> Result<DeriveOutcome, CdclError> {
    assert!(!c.is_empty() && !c.is_tautology(), "derive_clause: target must be nonempty, non-tautological");
    let num_vars = f.num_vars().max(c.max_var()).max(
        db.iter().map(|cl| cl.max_var()).max().unwrap_or(0),
    );
    let mut base = CnfFormula::new(num_vars);
    for cl in f.clauses().iter().chain(db.iter()) {
        base.add_clause(cl.clone());
    }
    let c_vars: Vec<Var> = c.vars().collect();
    check_order_covers(&base, pi, &c_vars)?;

    let mut engine = Engine::new(&base, num_vars);

    loop {
        if absorbs(&engine.db, c) {
            return Ok(if engine.learned.is_empty() && engine.conflicts == 0 {
                DeriveOutcome::Absorbed
            } else {
                DeriveOutcome::Derived { learned: engine.learned, conflicts: engine.conflicts }
            });
        }

        engine.restarts += 1;
        let mut alpha = Assignment::new(num_vars);
        let mut antecedent: Vec<Option<ClauseId>> = vec![None; num_vars as usize + 1];
        let mut level = 0u32;
        let mut conflicted = false;
        let mut blocked = false;

        if engine.propagate(&mut alpha, &mut antecedent).is_some() {
            // database itself is contradictory; it entails everything
            return Ok(DeriveOutcome::Derived {
                learned: engine.learned,
                conflicts: engine.conflicts,
            });
        }

        // Phase 1: assert ¬c literal by literal.
        for &lit in c.literals() {
            let nl = !lit;
            match alpha.lit_value(nl) {
                Some(true) => continue,
                Some(false) => {
                    // BCP forced a literal of c true: ¬c cannot be completed
                    blocked = true;
                    break;
                }
                None => {}
            }
            level += 1;
            engine.decisions += 1;
            alpha.assign(nl, level);
            if let Some(cid) = engine.propagate(&mut alpha, &mut antecedent) {
                engine.conflicts += 1;
                let (clause, proof_ref) = engine.analyze(cid, &alpha, &antecedent);
                engine.learn(clause, proof_ref);
                conflicted = true;
                break;
            }
        }
        if blocked {
            return Ok(DeriveOutcome::Derived {
                learned: engine.learned,
                conflicts: engine.conflicts,
            });
        }
        if conflicted {
            if engine.conflicts >= budget {
                return Ok(DeriveOutcome::BudgetExceeded {
                    learned: engine.learned,
                    conflicts: engine.conflicts,
                    found_countermodel: false,
                });
            }
            continue;
        }

        // Phase 2: follow the order on the remaining variables.
        loop {
            let Some(v) = pi.vars.iter().copied().find(|v| !alpha.is_assigned(*v)) else {
                // completed assignment: f ∧ db ∧ ¬c is satisfiable
                return Ok(DeriveOutcome::BudgetExceeded {
                    learned: engine.learned,
                    conflicts: engine.conflicts,
                    found_countermodel: true,
                });
            };
            level += 1;
            engine.decisions += 1;
            alpha.assign(Lit::negative(v), level);
            if let Some(cid) = engine.propagate(&mut alpha, &mut antecedent) {
                engine.conflicts += 1;
                let (clause, proof_ref) = engine.analyze(cid, &alpha, &antecedent);
                engine.learn(clause, proof_ref);
                if engine.conflicts >= budget {
                    return Ok(DeriveOutcome::BudgetExceeded {
                        learned: engine.learned,
                        conflicts: engine.conflicts,
                        found_countermodel: false,
                    });
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_sat;
    use crate::resolution::{check_refutation, check_resolution_proof};

    fn clause(codes: &[i32]) -> Clause {
        Clause::from_dimacs(codes)
    }

    #[test]
    fn level_zero_conflict_is_unsat() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let r = solve_cdcl(&f, &CdclConfig::new(VarOrder::identity(1))).unwrap();
        assert_eq!(r.status, CdclStatus::Unsat);
        assert_eq!(r.decisions, 0);
        assert_eq!(r.conflicts, 1);
        check_refutation(&f, &r.proof).unwrap();
    }

    #[test]
    fn complete_two_var_formula() {
        // With naive BCP after each decision, deciding x1=0 immediately
        // propagates x2 from (x1∨x2) and falsifies (x1∨¬x2), so the first
        // conflict has the single decision ancestor x1 and learns (x1); the
        // second restart conflicts at level 0. Two conflicts in total.
        let f =
            CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]);
        let r = solve_cdcl(&f, &CdclConfig::new(VarOrder::identity(2))).unwrap();
        assert_eq!(r.status, CdclStatus::Unsat);
        assert_eq!(r.conflicts, 2);
        assert_eq!(r.learned[0], clause(&[1]));
        check_refutation(&f, &r.proof).unwrap();
    }

    #[test]
    fn sat_run_exports_valid_derivations() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[-1, 3], &[-3, 2]]);
        let r = solve_cdcl(&f, &CdclConfig::new(VarOrder::identity(3))).unwrap();
        assert_eq!(r.status, CdclStatus::Sat);
        let model = r.model.unwrap();
        assert!(f.eval(&model));
        check_resolution_proof(&f, &r.proof).unwrap();
    }

    #[test]
    fn learned_clauses_are_entailed() {
        let f = CnfFormula::from_dimacs_clauses(
            3,
            &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3], &[2, 3], &[-2, -3]],
        );
        let r = solve_cdcl(&f, &CdclConfig::new(VarOrder::identity(3))).unwrap();
        assert_eq!(r.status, CdclStatus::Unsat);
        check_refutation(&f, &r.proof).unwrap();
        // entailment check per learned clause: f ∧ ¬C must be UNSAT
        for c in &r.learned {
            if c.is_empty() {
                continue;
            }
            let mut q = f.clone();
            for &l in c.literals() {
                q.add_clause(Clause::new(vec![!l]));
            }
            assert!(!brute_sat(&q).unwrap().is_sat(), "learned clause {c} not entailed");
        }
    }

    #[test]
    fn budget_exceeded_reported() {
        let f = CnfFormula::from_dimacs_clauses(
            3,
            &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3], &[2, 3], &[-2, -3]],
        );
        let cfg = CdclConfig::new(VarOrder::identity(3)).with_budget(1);
        let r = solve_cdcl(&f, &cfg).unwrap();
        assert_eq!(r.status, CdclStatus::BudgetExceeded);
        assert_eq!(r.conflicts, 1);
    }

    #[test]
    fn determinism() {
        let f = CnfFormula::from_dimacs_clauses(
            4,
            &[&[1, 2], &[-2, 3], &[-3, 4], &[-4, -1], &[1, -3], &[2, 4]],
        );
        let cfg = CdclConfig::new(VarOrder::identity(4));
        let a = solve_cdcl(&f, &cfg).unwrap();
        let b = solve_cdcl(&f, &cfg).unwrap();
        assert_eq!(a.status, b.status);
        assert_eq!(a.conflicts, b.conflicts);
        assert_eq!(a.learned, b.learned);
    }

    #[test]
    fn derive_clause_immediate_absorption() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        let out = derive_clause(&f, &[], &clause(&[1]), &VarOrder::identity(1), 100).unwrap();
        assert_eq!(out, DeriveOutcome::Absorbed);
    }

    #[test]
    fn derive_clause_absorbed_by_propagation() {
        // asserting ¬x1 propagates x3 then x2; asserting ¬x2 propagates ¬x3 then x1
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 3], &[-3, 2]]);
        let out = derive_clause(&f, &[], &clause(&[1, 2]), &VarOrder::identity(3), 100).unwrap();
        assert_eq!(out, DeriveOutcome::Absorbed);
    }

    #[test]
    fn derive_clause_learns_then_absorbs() {
        // deciding ¬a then propagating conflicts; the DECISION clause is (a)
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2]]);
        let pi = VarOrder::new(vec![Var(2)]);
        let out = derive_clause(&f, &[], &clause(&[1]), &pi, 100).unwrap();
        match out {
            DeriveOutcome::Derived { learned, conflicts } => {
                assert_eq!(conflicts, 1);
                assert_eq!(learned, vec![clause(&[1])]);
                let mut g = f.clone();
                for c in &learned {
                    g.add_clause(c.clone());
                }
                assert!(absorbs(&g, &clause(&[1])));
            }
            other => panic!("expected Derived, got {other:?}"),
        }
    }

    #[test]
    fn derive_clause_detects_non_entailment() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let out = derive_clause(&f, &[], &clause(&[1]), &VarOrder::identity(2), 100).unwrap();
        match out {
            DeriveOutcome::BudgetExceeded { found_countermodel, .. } => {
                assert!(found_countermodel)
            }
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }
}
