//! Resolution proof DAGs: the RES trace format, proof checking, partial-order
//! compliance, restriction lifting, and boundary-clause interpolant
//! extraction.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::cdcl;
use crate::cnf::{resolve, Clause, CnfFormula, Restriction, Var};
use crate::structure::PartialOrder;

/// One resolution step. Ids `1..=num_inputs` refer to the formula's clauses;
/// step ids continue from `num_inputs + 1` and are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStep {
    pub id: u32,
    pub left: u32,
    pub right: u32,
    pub pivot: Var,
    pub clause: Clause,
}

/// A resolution derivation over an input formula. Input clauses are implicit
/// (ids `1..=num_inputs` in DIMACS order); a refutation contains a step
/// deriving the empty clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionProof {
    pub num_inputs: u32,
    pub steps: Vec<ResolutionStep>,
}

impl ResolutionProof {
    pub fn new(num_inputs: u32) -> ResolutionProof {
        ResolutionProof { num_inputs, steps: Vec::new() }
    }

    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    /// Total proof size: inputs plus derived lines.
    pub fn size(&self) -> usize {
        self.num_inputs as usize + self.steps.len()
    }

    /// Appends a step with the next contiguous id and returns that id.
    pub fn push_step(&mut self, left: u32, right: u32, pivot: Var, clause: Clause) -> u32 {
        let id = self.next_id();
        self.steps.push(ResolutionStep { id, left, right, pivot, clause });
        id
    }

    pub fn next_id(&self) -> u32 {
        self.steps.last().map(|s| s.id + 1).unwrap_or(self.num_inputs + 1)
    }

    /// Id of the first step deriving ⊥, if any.
    pub fn root(&self) -> Option<u32> {
        self.steps.iter().find(|s| s.clause.is_empty()).map(|s| s.id)
    }

    pub fn is_refutation(&self) -> bool {
        self.root().is_some()
    }

    pub fn step_by_id(&self, id: u32) -> Option<&ResolutionStep> {
        if id <= self.num_inputs {
            return None;
        }
        self.steps.binary_search_by_key(&id, |s| s.id).ok().map(|i| &self.steps[i])
    }

    /// The clause with the given id, resolving inputs against `f`.
    pub fn clause_of<'a>(&'a self, f: &'a CnfFormula, id: u32) -> &'a Clause {
        if id <= self.num_inputs {
            f.clause(id)
        } else {
            &self.step_by_id(id).expect("unknown proof id").clause
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("proof declares {proof} input clauses but formula has {formula}")]
    InputCountMismatch { proof: u32, formula: usize },
    #[error("step {id}: ids must be strictly increasing and above the input range")]
    NonIncreasingId { id: u32 },
    #[error("step {id}: dangling antecedent {antecedent}")]
    DanglingAntecedent { id: u32, antecedent: u32 },
    #[error("step {id}: antecedents do not resolve on pivot {pivot}")]
    BadPivot { id: u32, pivot: Var },
    #[error("step {id}: stated clause differs from the resolvent")]
    ResolventMismatch { id: u32 },
    #[error("proof derives no empty clause")]
    NotARefutation,
}

/// Checks every step of `p` against `f`: antecedents must exist and precede
/// the step, and each stated clause must equal the resolvent on the stated
/// pivot. Accepts derivations; use [`check_refutation`] to additionally
/// require ⊥.
pub fn check_resolution_proof(f: &CnfFormula, p: &ResolutionProof) -> Result<(), ProofError> {
    if p.num_inputs as usize != f.num_clauses() {
        return Err(ProofError::InputCountMismatch {
            proof: p.num_inputs,
            formula: f.num_clauses(),
        });
    }
    let mut known: HashMap<u32, &Clause> = HashMap::new();
    let mut prev = p.num_inputs;
    for step in &p.steps {
        if step.id <= prev {
            return Err(ProofError::NonIncreasingId { id: step.id });
        }
        prev = step.id;
        let lookup = |ante: u32| -> Result<&Clause, ProofError> {
            if ante == 0 || ante >= step.id {
                return Err(ProofError::DanglingAntecedent { id: step.id, antecedent: ante });
            }
            if ante <= p.num_inputs {
                Ok(f.clause(ante))
            } else {
                known
                    .get(&ante)
                    .copied()
                    .ok_or(ProofError::DanglingAntecedent { id: step.id, antecedent: ante })
            }
        };
        let left = lookup(step.left)?;
        let right = lookup(step.right)?;
        let resolvent = resolve(left, right, step.pivot)
            .map_err(|_| ProofError::BadPivot { id: step.id, pivot: step.pivot })?;
        if resolvent != step.clause {
            return Err(ProofError::ResolventMismatch { id: step.id });
        }
        known.insert(step.id, &step.clause);
    }
    Ok(())
}

/// [`check_resolution_proof`] plus the requirement that the proof derives ⊥.
pub fn check_refutation(f: &CnfFormula, p: &ResolutionProof) -> Result<(), ProofError> {
    check_resolution_proof(f, p)?;
    if !p.is_refutation() {
        return Err(ProofError::NotARefutation);
    }
    Ok(())
}

/// A rejected partial-order check: some leaf-to-root path resolves
/// `after_var` (∈ after) strictly before `before_var` (∈ before).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderViolation {
    pub after_var: Var,
    pub before_var: Var,
    /// Ids along one witness leaf-to-root path.
    pub path: Vec<u32>,
}

/// Compact bitset over variable ids.
#[derive(Clone)]
struct VarBitSet {
    words: Vec<u64>,
}

impl VarBitSet {
    fn new(num_vars: u32) -> VarBitSet {
        VarBitSet { words: vec![0; num_vars as usize / 64 + 1] }
    }
    #[inline]
    fn insert(&mut self, v: Var) {
        self.words[v.index() / 64] |= 1 << (v.index() % 64);
    }
    fn union_with(&mut self, other: &VarBitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
    fn intersects(&self, other: &VarBitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
}

/// Checks that no leaf-to-root path of `p` resolves a variable of `po.after`
/// before a variable of `po.before`.
///
/// Implemented without path enumeration: per-step downstream-pivot sets are
/// computed in reverse topological order (union over consumers plus the
/// consumer's pivot, restricted to the cone of the root). A step with pivot
/// in `after` whose downstream set meets `before` witnesses a violating
/// path, which is reconstructed for the report. For two-layer orders this is
/// equivalent to the path condition.
pub fn check_partial_order(p: &ResolutionProof, po: &PartialOrder) -> Result<(), OrderViolation> {
    if p.steps.is_empty() || po.before.is_empty() || po.after.is_empty() {
        return Ok(());
    }
    let num_vars = p
        .steps
        .iter()
        .map(|s| s.pivot.0.max(s.clause.max_var()))
        .max()
        .unwrap_or(0)
        .max(po.before.iter().chain(po.after.iter()).map(|v| v.0).max().unwrap_or(0));

    let mut before_set = VarBitSet::new(num_vars);
    for &v in &po.before {
        before_set.insert(v);
    }

    let index_of: HashMap<u32, usize> =
        p.steps.iter().enumerate().map(|(i, s)| (s.id, i)).collect();

    // Cone of the root (all steps if the proof derives no empty clause).
    let mut in_cone = vec![false; p.steps.len()];
    match p.root() {
        Some(root) => {
            let mut stack = vec![root];
            while let Some(id) = stack.pop() {
                if id <= p.num_inputs {
                    continue;
                }
                let i = index_of[&id];
                if in_cone[i] {
                    continue;
                }
                in_cone[i] = true;
                stack.push(p.steps[i].left);
                stack.push(p.steps[i].right);
            }
        }
        None => in_cone.iter_mut().for_each(|b| *b = true),
    }

    // Downstream pivot sets, in descending id order (consumers come later).
    let mut down: Vec<VarBitSet> =
        (0..p.steps.len()).map(|_| VarBitSet::new(num_vars)).collect();
    for i in (0..p.steps.len()).rev() {
        if !in_cone[i] {
            continue;
        }
        let mut flow = down[i].clone();
        flow.insert(p.steps[i].pivot);
        for ante in [p.steps[i].left, p.steps[i].right] {
            if ante > p.num_inputs {
                let j = index_of[&ante];
                if in_cone[j] {
                    down[j].union_with(&flow);
                }
            }
        }
    }

    let violating = p
        .steps
        .iter()
        .enumerate()
        .find(|(i, s)| in_cone[*i] && po.after.contains(&s.pivot) && down[*i].intersects(&before_set));
    let Some((vi, vstep)) = violating else {
        return Ok(());
    };

    // Witness path: input leaf → … → vstep → … → before-pivot step → … end.
    let consumers_of = |id: u32| -> Vec<usize> {
        p.steps
            .iter()
            .enumerate()
            .filter(|(j, s)| in_cone[*j] && (s.left == id || s.right == id))
            .map(|(j, _)| j)
            .collect()
    };

    let mut path = Vec::new();
    let mut cur = vstep.left;
    while cur > p.num_inputs {
        path.push(cur);
        cur = p.steps[index_of[&cur]].left;
    }
    path.push(cur);
    path.reverse();
    path.push(vstep.id);

    let mut cur_idx = vi;
    let mut before_var = None;
    loop {
        let step = &p.steps[cur_idx];
        if before_var.is_none() && po.before.contains(&step.pivot) {
            before_var = Some(step.pivot);
        }
        let next = consumers_of(step.id).into_iter().find(|&j| {
            before_var.is_some()
                || po.before.contains(&p.steps[j].pivot)
                || down[j].intersects(&before_set)
        });
        match next {
            Some(j) => {
                path.push(p.steps[j].id);
                cur_idx = j;
            }
            None => break,
        }
    }

    Err(OrderViolation {
        after_var: vstep.pivot,
        before_var: before_var.unwrap_or_else(|| *po.before.iter().next().unwrap()),
        path,
    })
}

/// Variable partition of a split formula `A(before, shared) ∧ B(after, shared)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarPartition {
    pub before: BTreeSet<Var>,
    pub after: BTreeSet<Var>,
    pub shared: BTreeSet<Var>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition sets are not pairwise disjoint (variable {0})")]
    NotDisjoint(Var),
    #[error("variable {0} occurs in the formula but not in the partition")]
    NotCovering(Var),
    #[error("clause {0} contains both a before- and an after-variable")]
    SplitViolated(u32),
}

impl VarPartition {
    pub fn new(before: BTreeSet<Var>, after: BTreeSet<Var>, shared: BTreeSet<Var>) -> VarPartition {
        VarPartition { before, after, shared }
    }

    /// Checks disjointness, coverage of occurring variables, and the
    /// split-formula condition against `f`.
    pub fn validate(&self, f: &CnfFormula) -> Result<(), PartitionError> {
        if let Some(v) = self.before.intersection(&self.after).next() {
            return Err(PartitionError::NotDisjoint(*v));
        }
        if let Some(v) = self.before.intersection(&self.shared).next() {
            return Err(PartitionError::NotDisjoint(*v));
        }
        if let Some(v) = self.after.intersection(&self.shared).next() {
            return Err(PartitionError::NotDisjoint(*v));
        }
        for v in f.occurring_vars() {
            if !self.before.contains(&v) && !self.after.contains(&v) && !self.shared.contains(&v) {
                return Err(PartitionError::NotCovering(v));
            }
        }
        for (id, c) in f.iter() {
            let has_before = c.vars().any(|v| self.before.contains(&v));
            let has_after = c.vars().any(|v| self.after.contains(&v));
            if has_before && has_after {
                return Err(PartitionError::SplitViolated(id));
            }
        }
        Ok(())
    }

    /// `before <ids> 0` / `after <ids> 0` / `shared <ids> 0` lines.
    pub fn to_file_format(&self) -> String {
        let fmt = |tag: &str, s: &BTreeSet<Var>| {
            let ids: Vec<String> = s.iter().map(|v| v.0.to_string()).collect();
            if ids.is_empty() {
                format!("{tag} 0\n")
            } else {
                format!("{tag} {} 0\n", ids.join(" "))
            }
        };
        format!(
            "{}{}{}",
            fmt("before", &self.before),
            fmt("after", &self.after),
            fmt("shared", &self.shared)
        )
    }

    pub fn from_file_format(text: &str) -> Result<VarPartition, String> {
        let mut sets: BTreeMap<&str, BTreeSet<Var>> = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap();
            if !matches!(tag, "before" | "after" | "shared") {
                return Err(format!("unknown partition line tag {tag}"));
            }
            let set = sets.entry(tag).or_default();
            for tok in toks {
                let v: u32 = tok.parse().map_err(|_| format!("bad variable id {tok}"))?;
                if v == 0 {
                    break;
                }
                set.insert(Var(v));
            }
        }
        for tag in ["before", "after", "shared"] {
            sets.entry(tag).or_default();
        }
        Ok(VarPartition {
            before: sets.remove("before").unwrap(),
            after: sets.remove("after").unwrap(),
            shared: sets.remove("shared").unwrap(),
        })
    }
}

/// Splits `f`'s clause ids into the A side (clauses touching
/// before-variables) and the B side (clauses touching after-variables;
/// clauses over shared variables only also land here).
pub fn split_by_partition(
    f: &CnfFormula,
    vp: &VarPartition,
) -> Result<(Vec<u32>, Vec<u32>), PartitionError> {
    vp.validate(f)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (id, c) in f.iter() {
        if c.vars().any(|v| vp.before.contains(&v)) {
            a.push(id);
        } else {
            b.push(id);
        }
    }
    Ok((a, b))
}

fn subformula(f: &CnfFormula, ids: &[u32]) -> CnfFormula {
    CnfFormula::from_clauses(f.num_vars(), ids.iter().map(|&i| f.clause(i).clone()).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpolantError {
    #[error("partition invalid: {0}")]
    Partition(#[from] PartitionError),
    #[error("proof is not a refutation")]
    NotARefutation,
    #[error("extracted clause ({0}) mentions non-shared variables (precondition violated)")]
    ScopeViolation(String),
    #[error("clause ({0}) of the candidate is not implied by the A side")]
    NotImpliedByA(String),
    #[error("candidate is consistent with the B side")]
    ConsistentWithB,
    #[error("SAT call exhausted its budget")]
    SolverBudget,
}

/// Decides unsatisfiability for interpolant verification with the restricted
/// CDCL engine (exhaustive-oracle cross-check on small inputs).
fn is_unsat(f: &CnfFormula) -> Result<bool, InterpolantError> {
    cdcl::decide_unsat(f).ok_or(InterpolantError::SolverBudget)
}

/// Verifies that `i` is an interpolant from `a` to `b` over `shared`:
/// `a ∧ ¬C` must be unsatisfiable for every clause `C ∈ i`, and `i ∧ b`
/// must be unsatisfiable.
pub fn verify_interpolant(
    a: &CnfFormula,
    b: &CnfFormula,
    i: &CnfFormula,
    shared: &BTreeSet<Var>,
) -> Result<(), InterpolantError> {
    for c in i.clauses() {
        if let Some(v) = c.vars().find(|v| !shared.contains(v)) {
            let _ = v;
            return Err(InterpolantError::ScopeViolation(c.to_string()));
        }
    }
    let num_vars = a.num_vars().max(b.num_vars()).max(i.num_vars());
    for c in i.clauses() {
        let mut query = CnfFormula::new(num_vars);
        for cl in a.clauses() {
            query.add_clause(cl.clone());
        }
        for &l in c.literals() {
            query.add_clause(Clause::new(vec![!l]));
        }
        if !is_unsat(&query)? {
            return Err(InterpolantError::NotImpliedByA(c.to_string()));
        }
    }
    let mut query = CnfFormula::new(num_vars);
    for cl in i.clauses().iter().chain(b.clauses()) {
        query.add_clause(cl.clone());
    }
    if !is_unsat(&query)? {
        return Err(InterpolantError::ConsistentWithB);
    }
    Ok(())
}

/// Extracts a CNF interpolant from a refutation of the split formula
/// `A ∧ B` respecting `before ≺ (after ∪ shared)`.
///
/// The interpolant is the boundary cut of the proof DAG: every step whose
/// pivot lies in `before` and that feeds a step resolving outside `before`
/// (or is the root), together with every A-side input clause consumed
/// directly by a step resolving outside `before`. The result is verified
/// with [`verify_interpolant`] before being returned.
pub fn extract_interpolant(
    f: &CnfFormula,
    p: &ResolutionProof,
    vp: &VarPartition,
) -> Result<CnfFormula, InterpolantError> {
    let (a_ids, b_ids) = split_by_partition(f, vp)?;
    let root = p.root().ok_or(InterpolantError::NotARefutation)?;

    let index_of: HashMap<u32, usize> =
        p.steps.iter().enumerate().map(|(i, s)| (s.id, i)).collect();
    let mut in_cone = vec![false; p.steps.len()];
    let mut inputs_in_cone: BTreeSet<u32> = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if id <= p.num_inputs {
            inputs_in_cone.insert(id);
            continue;
        }
        let i = index_of[&id];
        if in_cone[i] {
            continue;
        }
        in_cone[i] = true;
        stack.push(p.steps[i].left);
        stack.push(p.steps[i].right);
    }

    let consumed_outside_before = |id: u32| {
        p.steps.iter().enumerate().any(|(j, s)| {
            in_cone[j] && (s.left == id || s.right == id) && !vp.before.contains(&s.pivot)
        })
    };

    let a_set: BTreeSet<u32> = a_ids.iter().copied().collect();
    let mut cut: Vec<Clause> = Vec::new();
    for (i, step) in p.steps.iter().enumerate() {
        if !in_cone[i] || !vp.before.contains(&step.pivot) {
            continue;
        }
        if step.id == root || consumed_outside_before(step.id) {
            cut.push(step.clause.clone());
        }
    }
    for &id in &inputs_in_cone {
        if a_set.contains(&id) && consumed_outside_before(id) {
            cut.push(f.clause(id).clone());
        }
    }

    cut.sort();
    cut.dedup();
    let interpolant = CnfFormula::from_clauses(f.num_vars(), cut);

    for c in interpolant.clauses() {
        if c.vars().any(|v| !vp.shared.contains(&v)) {
            return Err(InterpolantError::ScopeViolation(c.to_string()));
        }
    }
    let a_formula = subformula(f, &a_ids);
    let b_formula = subformula(f, &b_ids);
    verify_interpolant(&a_formula, &b_formula, &interpolant, &vp.shared)?;
    Ok(interpolant)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("proof has {proof} inputs but the restriction produced {restriction} clauses")]
    ProvenanceMismatch { proof: u32, restriction: usize },
    #[error("restriction provenance refers outside the original formula")]
    BadProvenance,
    #[error("lifted step {0} failed to resolve")]
    LiftedResolveFailed(u32),
}

/// Lifts a proof over `restrict(f, α)` back to a derivation from `f`:
/// α-falsified literals re-enter every line via the restriction's provenance
/// map. A refutation of the restriction lifts to a derivation of a clause
/// contained in `¬α`.
pub fn lift_restriction(
    p: &ResolutionProof,
    r: &Restriction,
    f: &CnfFormula,
) -> Result<ResolutionProof, LiftError> {
    if p.num_inputs as usize != r.formula.num_clauses() {
        return Err(LiftError::ProvenanceMismatch {
            proof: p.num_inputs,
            restriction: r.formula.num_clauses(),
        });
    }
    if r.provenance.iter().any(|&id| id == 0 || id as usize > f.num_clauses()) {
        return Err(LiftError::BadProvenance);
    }

    let mut lifted = ResolutionProof::new(f.num_clauses() as u32);
    // old id → (new id, lifted clause)
    let mut map: HashMap<u32, (u32, Clause)> = HashMap::new();
    for (old, &orig) in r.provenance.iter().enumerate() {
        map.insert(old as u32 + 1, (orig, f.clause(orig).clone()));
    }
    for step in &p.steps {
        let (nl, cl) =
            map.get(&step.left).ok_or(LiftError::LiftedResolveFailed(step.id))?.clone();
        let (nr, cr) =
            map.get(&step.right).ok_or(LiftError::LiftedResolveFailed(step.id))?.clone();
        let clause =
            resolve(&cl, &cr, step.pivot).map_err(|_| LiftError::LiftedResolveFailed(step.id))?;
        let id = lifted.push_step(nl, nr, step.pivot, clause.clone());
        map.insert(step.id, (id, clause));
    }
    Ok(lifted)
}

/// Serializes to the RES trace format: header `p res <num_inputs> <num_steps>`
/// then one `<id> <left> <right> <pivot> <lit …> 0` line per step. The empty
/// clause is a step line whose literal list is just `0`.
pub fn emit_res(p: &ResolutionProof) -> String {
    let mut out = format!("p res {} {}\n", p.num_inputs, p.steps.len());
    for s in &p.steps {
        out.push_str(&format!("{} {} {} {}", s.id, s.left, s.right, s.pivot.0));
        for l in s.clause.literals() {
            out.push_str(&format!(" {l}"));
        }
        out.push_str(" 0\n");
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResParseError {
    #[error("line {0}: malformed RES header")]
    MalformedHeader(usize),
    #[error("missing `p res` header")]
    MissingHeader,
    #[error("line {0}: malformed step")]
    MalformedStep(usize),
    #[error("step count mismatch: declared {declared}, found {found}")]
    StepCountMismatch { declared: usize, found: usize },
}

pub fn parse_res(text: &str) -> Result<ResolutionProof, ResParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_num = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "res" {
                return Err(ResParseError::MalformedHeader(line_num));
            }
            let inputs =
                parts[2].parse().map_err(|_| ResParseError::MalformedHeader(line_num))?;
            let count =
                parts[3].parse().map_err(|_| ResParseError::MalformedHeader(line_num))?;
            header = Some((inputs, count));
            continue;
        }
        if header.is_none() {
            return Err(ResParseError::MissingHeader);
        }
        let toks: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ResParseError::MalformedStep(line_num))?;
        if toks.len() < 5 || *toks.last().unwrap() != 0 {
            return Err(ResParseError::MalformedStep(line_num));
        }
        let (id, left, right, pivot) = (toks[0], toks[1], toks[2], toks[3]);
        if id <= 0 || left <= 0 || right <= 0 || pivot <= 0 {
            return Err(ResParseError::MalformedStep(line_num));
        }
        let lits: Vec<i32> = toks[4..toks.len() - 1].iter().map(|&t| t as i32).collect();
        if lits.contains(&0) {
            return Err(ResParseError::MalformedStep(line_num));
        }
        steps.push(ResolutionStep {
            id: id as u32,
            left: left as u32,
            right: right as u32,
            pivot: Var(pivot as u32),
            clause: Clause::from_dimacs(&lits),
        });
    }
    let (num_inputs, declared) = header.ok_or(ResParseError::MissingHeader)?;
    if steps.len() != declared {
        return Err(ResParseError::StepCountMismatch { declared, found: steps.len() });
    }
    Ok(ResolutionProof { num_inputs, steps })
}
