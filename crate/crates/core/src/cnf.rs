//! CNF formulas: literals, clauses, DIMACS I/O, restriction, naive unit
//! propagation, the resolution rule, and clause absorption.

use std::fmt;

use thiserror::Error;

/// A propositional variable. Ids are 1-based and mirror DIMACS exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal, stored as a non-zero DIMACS-coded integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    /// Builds a literal from a variable and a polarity.
    pub fn new(var: Var, positive: bool) -> Lit {
        debug_assert!(var.0 >= 1);
        if positive {
            Lit(var.0 as i32)
        } else {
            Lit(-(var.0 as i32))
        }
    }

    pub fn positive(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn negative(var: Var) -> Lit {
        Lit::new(var, false)
    }

    /// Parses a DIMACS-coded literal; `code` must be non-zero.
    pub fn from_dimacs(code: i32) -> Lit {
        debug_assert!(code != 0);
        Lit(code)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    #[inline]
    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    /// True iff the literal evaluates to true when its variable is `value`.
    #[inline]
    pub fn satisfied_by(self, value: bool) -> bool {
        self.is_positive() == value
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sort key used for clause canonicalization: by variable id, negative
/// literal before positive.
#[inline]
fn lit_key(l: &Lit) -> (u32, bool) {
    (l.var().0, l.is_positive())
}

/// A clause: a canonicalized (sorted, deduplicated) disjunction of literals.
///
/// The empty clause denotes ⊥. A clause containing both polarities of a
/// variable is kept and flagged tautological by [`Clause::is_tautology`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(mut lits: Vec<Lit>) -> Clause {
        lits.sort_by_key(lit_key);
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn from_dimacs(codes: &[i32]) -> Clause {
        Clause::new(codes.iter().map(|&c| Lit::from_dimacs(c)).collect())
    }

    #[inline]
    pub fn literals(&self) -> &[Lit] {
        &self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search_by_key(&lit_key(&lit), lit_key).is_ok()
    }

    /// True iff the clause contains some variable in both polarities.
    pub fn is_tautology(&self) -> bool {
        self.lits.windows(2).any(|w| w[0].var() == w[1].var())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var().0).max().unwrap_or(0)
    }

    /// Evaluates the clause under a total assignment indexed by variable.
    pub fn eval(&self, values: &[bool]) -> bool {
        self.lits.iter().any(|l| l.satisfied_by(values[l.var().index()]))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        if self.lits.is_empty() {
            write!(f, "⊥")?;
        }
        Ok(())
    }
}

/// 1-based id of a clause inside a [`CnfFormula`] (or a solver's working
/// database, where learned clauses extend the numbering).
pub type ClauseId = u32;

/// A CNF formula: a variable-count upper bound and an ordered clause list.
///
/// Clause ids are 1-based, contiguous, and never reused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> CnfFormula {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    pub fn from_clauses(num_vars: u32, clauses: Vec<Clause>) -> CnfFormula {
        let f = CnfFormula { num_vars, clauses };
        debug_assert!(f.clauses.iter().all(|c| c.max_var() <= f.num_vars));
        f
    }

    /// Convenience constructor from DIMACS-coded literal lists.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::from_clauses(
            num_vars,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
    }

    pub fn add_clause(&mut self, clause: Clause) -> ClauseId {
        debug_assert!(clause.max_var() <= self.num_vars);
        self.clauses.push(clause);
        self.clauses.len() as ClauseId
    }

    #[inline]
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    #[inline]
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// The clause with the given 1-based id.
    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[(id - 1) as usize]
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Iterates `(id, clause)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &Clause)> {
        self.clauses.iter().enumerate().map(|(i, c)| (i as ClauseId + 1, c))
    }

    pub fn contains_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Variables that actually occur in some clause, ascending.
    pub fn occurring_vars(&self) -> Vec<Var> {
        let mut seen = vec![false; self.num_vars as usize + 1];
        for c in &self.clauses {
            for v in c.vars() {
                seen[v.index()] = true;
            }
        }
        (1..=self.num_vars).filter(|&v| seen[v as usize]).map(Var).collect()
    }

    /// Multiset clause equality after canonicalization, plus equal `num_vars`.
    pub fn semantically_equal(&self, other: &CnfFormula) -> bool {
        if self.num_vars != other.num_vars {
            return false;
        }
        let mut a = self.clauses.clone();
        let mut b = other.clauses.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Evaluates the formula under a total assignment indexed by variable.
    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.eval(values))
    }
}

/// A partial assignment with decision-level tags. Level 0 is the propagation
/// root.
#[derive(Debug, Clone)]
pub struct Assignment {
    values: Vec<Option<bool>>,
    levels: Vec<u32>,
    trail: Vec<Lit>,
}

impl Assignment {
    pub fn new(num_vars: u32) -> Assignment {
        Assignment {
            values: vec![None; num_vars as usize + 1],
            levels: vec![0; num_vars as usize + 1],
            trail: Vec::new(),
        }
    }

    #[inline]
    pub fn value(&self, var: Var) -> Option<bool> {
        self.values[var.index()]
    }

    /// The truth value of `lit` under the assignment, if its var is assigned.
    #[inline]
    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.value(lit.var()).map(|v| lit.satisfied_by(v))
    }

    #[inline]
    pub fn is_assigned(&self, var: Var) -> bool {
        self.values[var.index()].is_some()
    }

    #[inline]
    pub fn level(&self, var: Var) -> u32 {
        self.levels[var.index()]
    }

    /// Asserts `lit` true at `level`. The variable must be unassigned.
    pub fn assign(&mut self, lit: Lit, level: u32) {
        let idx = lit.var().index();
        debug_assert!(self.values[idx].is_none(), "variable assigned twice");
        self.values[idx] = Some(lit.is_positive());
        self.levels[idx] = level;
        self.trail.push(lit);
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    pub fn len(&self) -> usize {
        self.trail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trail.is_empty()
    }

    /// Highest level currently present on the trail.
    pub fn current_level(&self) -> u32 {
        self.trail.iter().map(|l| self.level(l.var())).max().unwrap_or(0)
    }

    /// Pops trail entries until only `keep` remain.
    pub fn truncate(&mut self, keep: usize) {
        while self.trail.len() > keep {
            let lit = self.trail.pop().unwrap();
            self.values[lit.var().index()] = None;
            self.levels[lit.var().index()] = 0;
        }
    }

    /// The assigned literals, as a map-like list `(var, value)`.
    pub fn assigned(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.trail.iter().map(|l| (l.var(), l.is_positive()))
    }
}

/// Errors raised by [`parse_dimacs`]. Each carries the offending line number.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: malformed literal `{token}`")]
    MalformedLiteral { line: usize, token: String },
    #[error("line {line}: literal {lit} out of range (num_vars = {num_vars})")]
    LiteralOutOfRange { line: usize, lit: i32, num_vars: u32 },
    #[error("line {line}: clause not terminated by 0")]
    MissingTerminatingZero { line: usize },
    #[error("clause count mismatch: header declares {declared}, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

/// Parses DIMACS CNF text: comment lines `c …`, one `p cnf <vars> <clauses>`
/// header, then zero-terminated clauses. Clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last_open_line = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line_num = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: line_num });
            }
            let mut it = line.split_whitespace();
            let p = it.next();
            let kind = it.next();
            let vars = it.next().and_then(|t| t.parse::<u32>().ok());
            let nclauses = it.next().and_then(|t| t.parse::<usize>().ok());
            match (p, kind, vars, nclauses, it.next()) {
                (Some("p"), Some("cnf"), Some(v), Some(c), None) => {
                    header = Some((v, c));
                }
                _ => return Err(DimacsError::MalformedHeader { line: line_num }),
            }
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in line.split_whitespace() {
            let code: i32 = token
                .parse()
                .map_err(|_| DimacsError::MalformedLiteral { line: line_num, token: token.to_string() })?;
            if code == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current)));
            } else {
                if code.unsigned_abs() > num_vars {
                    return Err(DimacsError::LiteralOutOfRange {
                        line: line_num,
                        lit: code,
                        num_vars,
                    });
                }
                current.push(Lit::from_dimacs(code));
                last_open_line = line_num;
            }
        }
    }

    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminatingZero { line: last_open_line });
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch { declared, found: clauses.len() });
    }
    Ok(CnfFormula::from_clauses(num_vars, clauses))
}

/// Emits DIMACS text; `parse_dimacs(emit_dimacs(f))` reproduces `f` exactly
/// (clauses are stored canonically, so the round trip is literal).
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.num_clauses()));
    for c in f.clauses() {
        for l in c.literals() {
            out.push_str(&format!("{l} "));
        }
        out.push_str("0\n");
    }
    out
}

/// Result of restricting a formula under a partial assignment.
///
/// `provenance[i]` is the original clause id of output clause `i + 1`; the
/// assignment is retained so proofs over the restriction can be lifted back.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub formula: CnfFormula,
    pub provenance: Vec<ClauseId>,
    pub assignment: Vec<Lit>,
}

/// Restricts `f` under `α`: satisfied clauses are removed, falsified literals
/// are removed from the remaining clauses (a fully falsified clause becomes ⊥).
pub fn restrict(f: &CnfFormula, alpha: &Assignment) -> Restriction {
    let mut clauses = Vec::new();
    let mut provenance = Vec::new();
    'clause: for (id, c) in f.iter() {
        let mut kept = Vec::with_capacity(c.len());
        for &l in c.literals() {
            match alpha.lit_value(l) {
                Some(true) => continue 'clause,
                Some(false) => {}
                None => kept.push(l),
            }
        }
        clauses.push(Clause::new(kept));
        provenance.push(id);
    }
    Restriction {
        formula: CnfFormula::from_clauses(f.num_vars(), clauses),
        provenance,
        assignment: alpha.trail().to_vec(),
    }
}

/// Outcome status of unit propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropStatus {
    Stable,
    /// Propagation falsified the clause with this id.
    Conflict(ClauseId),
}

/// Result of [`unit_propagate`]: the fixpoint status plus the implication
/// edges (antecedent clause per implied literal) accumulated so far.
#[derive(Debug, Clone)]
pub struct Propagation {
    pub status: PropStatus,
    pub implied: Vec<(Lit, ClauseId)>,
}

/// Naive boolean constraint propagation: repeated full clause scans until
/// fixpoint, no watched-literal indexing. Implied literals are assigned at
/// the current highest decision level of `alpha`.
pub fn unit_propagate(f: &CnfFormula, alpha: &mut Assignment) -> Propagation {
    let level = alpha.current_level();
    let mut implied = Vec::new();
    loop {
        let mut changed = false;
        for (id, clause) in f.iter() {
            let mut unassigned: Option<Lit> = None;
            let mut num_unassigned = 0usize;
            let mut satisfied = false;
            for &l in clause.literals() {
                match alpha.lit_value(l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        num_unassigned += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match num_unassigned {
                0 => return Propagation { status: PropStatus::Conflict(id), implied },
                1 => {
                    let l = unassigned.unwrap();
                    alpha.assign(l, level);
                    implied.push((l, id));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Propagation { status: PropStatus::Stable, implied };
        }
    }
}

/// Error from [`resolve`]: the pivot must occur positively in exactly one
/// antecedent and negatively in the other.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("pivot {0} does not occur with opposite polarities in the antecedents")]
    BadPivot(Var),
}

/// The resolution rule: resolves `a` and `b` on `pivot`, returning the
/// canonicalized resolvent. Tautological resolvents are returned (flagged by
/// [`Clause::is_tautology`]), not rejected.
pub fn resolve(a: &Clause, b: &Clause, pivot: Var) -> Result<Clause, ResolveError> {
    let pos = Lit::positive(pivot);
    let neg = Lit::negative(pivot);
    let (with_pos, with_neg) = if a.contains(pos) && b.contains(neg) {
        (a, b)
    } else if b.contains(pos) && a.contains(neg) {
        (b, a)
    } else {
        return Err(ResolveError::BadPivot(pivot));
    };
    if with_pos.contains(neg) || with_neg.contains(pos) {
        return Err(ResolveError::BadPivot(pivot));
    }
    let mut lits: Vec<Lit> = Vec::with_capacity(with_pos.len() + with_neg.len() - 2);
    lits.extend(with_pos.literals().iter().copied().filter(|&l| l != pos));
    lits.extend(with_neg.literals().iter().copied().filter(|&l| l != neg));
    Ok(Clause::new(lits))
}

/// Clause absorption: `f` absorbs `c` iff for every literal `l ∈ c`,
/// asserting the negations of the other literals and running unit
/// propagation either forces `l` true or yields a conflict (a conflict is a
/// strictly stronger entailment witness and counts as absorbed).
///
/// `c` must be nonempty and non-tautological.
pub fn absorbs(f: &CnfFormula, c: &Clause) -> bool {
    assert!(!c.is_empty() && !c.is_tautology(), "absorbs: clause must be nonempty and non-tautological");
    for &l in c.literals() {
        let mut alpha = Assignment::new(f.num_vars());
        for &other in c.literals() {
            if other != l {
                alpha.assign(!other, 0);
            }
        }
        match unit_propagate(f, &mut alpha).status {
            PropStatus::Conflict(_) => continue,
            PropStatus::Stable => {
                if alpha.lit_value(l) != Some(true) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(codes: &[i32]) -> Clause {
        Clause::from_dimacs(codes)
    }

    #[test]
    fn parse_basic() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(f.clause(1), &clause(&[1, 2]));
        assert_eq!(f.clause(2), &clause(&[-1]));
    }

    #[test]
    fn parse_empty_clause() {
        let f = parse_dimacs("p cnf 1 1\n0\n").unwrap();
        assert!(f.clause(1).is_empty());
        assert!(f.contains_empty_clause());
    }

    #[test]
    fn parse_clause_count_mismatch() {
        let err = parse_dimacs("p cnf 2 2\n1 2 0\n").unwrap_err();
        assert_eq!(err, DimacsError::ClauseCountMismatch { declared: 2, found: 1 });
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_dimacs("c hi\np cnf x 1\n"),
            Err(DimacsError::MalformedHeader { line: 2 })
        );
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(DimacsError::LiteralOutOfRange { line: 2, lit: 3, num_vars: 2 })
        );
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(DimacsError::MissingTerminatingZero { line: 2 })
        );
        assert_eq!(parse_dimacs("1 0\n"), Err(DimacsError::MissingHeader));
    }

    #[test]
    fn emit_matches_spec_format() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1]]);
        assert_eq!(emit_dimacs(&f), "p cnf 2 2\n1 2 0\n-1 0\n");
        let empty = CnfFormula::new(3);
        assert_eq!(emit_dimacs(&empty), "p cnf 3 0\n");
        let bot = CnfFormula::from_dimacs_clauses(1, &[&[]]);
        assert!(emit_dimacs(&bot).contains("0\n"));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, -2, 3], &[], &[-4], &[2, 4]]);
        let g = parse_dimacs(&emit_dimacs(&f)).unwrap();
        assert!(f.semantically_equal(&g));
        assert_eq!(f, g);
    }

    #[test]
    fn canonicalization_sorts_and_dedups() {
        let c = clause(&[2, 1, 2, -3]);
        assert_eq!(c, clause(&[1, 2, -3]));
        assert!(!c.is_tautology());
        assert!(clause(&[1, -1, 2]).is_tautology());
    }

    #[test]
    fn restrict_examples() {
        // {(x1∨x2),(¬x1∨x3)} under x1↦1 → {(x3)}
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[-1, 3]]);
        let mut a = Assignment::new(3);
        a.assign(Lit::from_dimacs(1), 0);
        let r = restrict(&f, &a);
        assert_eq!(r.formula.num_clauses(), 1);
        assert_eq!(r.formula.clause(1), &clause(&[3]));
        assert_eq!(r.provenance, vec![2]);

        // {(x1)} under x1↦0 → {⊥}
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        let mut a = Assignment::new(1);
        a.assign(Lit::from_dimacs(-1), 0);
        let r = restrict(&f, &a);
        assert!(r.formula.clause(1).is_empty());

        // untouched clause is unchanged
        let f = CnfFormula::from_dimacs_clauses(3, &[&[2, 3]]);
        let mut a = Assignment::new(3);
        a.assign(Lit::from_dimacs(1), 0);
        let r = restrict(&f, &a);
        assert_eq!(r.formula.clause(1), &clause(&[2, 3]));
    }

    #[test]
    fn propagate_chains_units() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1, 2]]);
        let mut a = Assignment::new(2);
        let p = unit_propagate(&f, &mut a);
        assert_eq!(p.status, PropStatus::Stable);
        assert_eq!(a.lit_value(Lit::from_dimacs(1)), Some(true));
        assert_eq!(a.lit_value(Lit::from_dimacs(2)), Some(true));
        assert_eq!(p.implied.len(), 2);
    }

    #[test]
    fn propagate_detects_conflict() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let mut a = Assignment::new(1);
        let p = unit_propagate(&f, &mut a);
        assert_eq!(p.status, PropStatus::Conflict(2));
    }

    #[test]
    fn propagate_no_units_is_stable() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let mut a = Assignment::new(2);
        let p = unit_propagate(&f, &mut a);
        assert_eq!(p.status, PropStatus::Stable);
        assert!(a.is_empty());
    }

    #[test]
    fn resolve_examples() {
        let r = resolve(&clause(&[1, 2]), &clause(&[-1, 3]), Var(1)).unwrap();
        assert_eq!(r, clause(&[2, 3]));
        let r = resolve(&clause(&[1]), &clause(&[-1]), Var(1)).unwrap();
        assert!(r.is_empty());
        let r = resolve(&clause(&[1, 2]), &clause(&[-1, -2]), Var(1)).unwrap();
        assert_eq!(r, clause(&[2, -2]));
        assert!(r.is_tautology());
        assert!(resolve(&clause(&[1, 2]), &clause(&[1, 3]), Var(1)).is_err());
        assert!(resolve(&clause(&[2]), &clause(&[-1]), Var(1)).is_err());
    }

    #[test]
    fn absorbs_examples() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        assert!(absorbs(&f, &clause(&[1, 2])));

        let f = CnfFormula::new(1);
        assert!(!absorbs(&f, &clause(&[1])));

        // setting x1=0 propagates x3 then x2; setting x2=0 propagates ¬x3 then x1
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 3], &[-3, 2]]);
        assert!(absorbs(&f, &clause(&[1, 2])));
    }

    #[test]
    fn absorbs_conflict_counts_as_absorbed() {
        // asserting ¬x2 conflicts outright: stronger witness, still absorbed
        let f = CnfFormula::from_dimacs_clauses(2, &[&[2], &[-2, 1]]);
        assert!(absorbs(&f, &clause(&[1, 2])));
    }
}
