//! Independent brute-force ground truth: exhaustive SAT, exact minimal DNF
//! size, and exact pathwidth. Every budget overrun is a hard error, never a
//! silent approximation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cnf::CnfFormula;
use crate::structure::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute_sat budget exceeded: {0} variables (max {MAX_BRUTE_SAT_VARS})")]
    SatBudget(u32),
    #[error("min_dnf_size budget exceeded: arity {0} (max {MAX_DNF_ARITY})")]
    DnfBudget(usize),
    #[error("brute_pathwidth budget exceeded: {0} vertices (max {MAX_PATHWIDTH_VERTICES})")]
    PathwidthBudget(usize),
}

pub const MAX_BRUTE_SAT_VARS: u32 = 26;
pub const MAX_DNF_ARITY: usize = 8;
pub const MAX_PATHWIDTH_VERTICES: usize = 12;

/// Exhaustive SAT result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteSatResult {
    /// A satisfying total assignment, indexed by variable (`model[0]` unused).
    Sat(Vec<bool>),
    Unsat,
}

impl BruteSatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, BruteSatResult::Sat(_))
    }
}

/// Enumerates all assignments of the variables that occur in `f`.
/// Authoritative for `f.num_vars() ≤ 26`.
pub fn brute_sat(f: &CnfFormula) -> Result<BruteSatResult, OracleError> {
    if f.num_vars() > MAX_BRUTE_SAT_VARS {
        return Err(OracleError::SatBudget(f.num_vars()));
    }
    if f.contains_empty_clause() {
        return Ok(BruteSatResult::Unsat);
    }
    let vars = f.occurring_vars();
    let n = vars.len();
    let mut values = vec![false; f.num_vars() as usize + 1];
    for mask in 0u64..(1u64 << n) {
        for (i, v) in vars.iter().enumerate() {
            values[v.index()] = mask >> i & 1 == 1;
        }
        if f.eval(&values) {
            return Ok(BruteSatResult::Sat(values));
        }
    }
    Ok(BruteSatResult::Unsat)
}

/// A truth table over `arity ≤ 16` inputs; bit `i` of `bits` is the output on
/// the assignment whose j-th input is bit j of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, bits: Vec<bool>) -> TruthTable {
        assert!(arity <= 16, "truth table arity must be ≤ 16");
        assert_eq!(bits.len(), 1 << arity, "bit length must match arity");
        TruthTable { arity, bits }
    }

    pub fn from_fn(arity: usize, f: impl Fn(u32) -> bool) -> TruthTable {
        TruthTable::new(arity, (0..1u32 << arity).map(f).collect())
    }

    /// Parses a hex bit string, most significant nibble first.
    pub fn from_hex(arity: usize, hex: &str) -> Result<TruthTable, String> {
        let want_bits = 1usize << arity;
        let want_nibbles = want_bits.div_ceil(4);
        let hex = hex.trim();
        if hex.len() != want_nibbles {
            return Err(format!("expected {want_nibbles} hex digits for arity {arity}, got {}", hex.len()));
        }
        let mut bits = vec![false; want_bits];
        for (i, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| format!("bad hex digit {ch}"))?;
            for b in 0..4 {
                let idx = i * 4 + b;
                if idx < want_bits {
                    bits[idx] = nibble >> b & 1 == 1;
                }
            }
        }
        Ok(TruthTable::new(arity, bits))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self, input: u32) -> bool {
        self.bits[input as usize]
    }

    pub fn ones(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.arity).filter(|&i| self.bits[i as usize])
    }

    pub fn is_constant_true(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_constant_false(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }
}

/// A term (cube) over the table inputs: `mask` selects the mentioned
/// variables, `value` their required polarities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Cube {
    mask: u32,
    value: u32,
}

impl Cube {
    fn covers(&self, point: u32) -> bool {
        point & self.mask == self.value
    }
}

/// Exact minimum number of terms over all DNFs computing `t`, via prime
/// implicant generation (Quine–McCluskey) followed by exact set cover.
pub fn min_dnf_size(t: &TruthTable) -> Result<usize, OracleError> {
    if t.arity() > MAX_DNF_ARITY {
        return Err(OracleError::DnfBudget(t.arity()));
    }
    if t.is_constant_false() {
        return Ok(0);
    }
    if t.is_constant_true() {
        return Ok(1); // the empty term
    }

    let full_mask = (1u32 << t.arity()) - 1;
    // Quine–McCluskey merging: start from minterms, repeatedly drop variables.
    let mut level: Vec<Cube> = t.ones().map(|p| Cube { mask: full_mask, value: p }).collect();
    let mut primes: Vec<Cube> = Vec::new();
    while !level.is_empty() {
        let mut merged_flags = vec![false; level.len()];
        let mut next: Vec<Cube> = Vec::new();
        for i in 0..level.len() {
            for j in i + 1..level.len() {
                let (a, b) = (level[i], level[j]);
                if a.mask != b.mask {
                    continue;
                }
                let diff = a.value ^ b.value;
                if diff.count_ones() == 1 {
                    merged_flags[i] = true;
                    merged_flags[j] = true;
                    next.push(Cube { mask: a.mask & !diff, value: a.value & !diff });
                }
            }
        }
        for (i, cube) in level.iter().enumerate() {
            if !merged_flags[i] {
                primes.push(*cube);
            }
        }
        next.sort();
        next.dedup();
        level = next;
    }

    // Exact minimum cover of the on-set by prime implicants, branch and bound.
    let minterms: Vec<u32> = t.ones().collect();
    let coverage: Vec<Vec<usize>> = minterms
        .iter()
        .map(|&m| {
            primes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.covers(m))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let prime_sets: Vec<Vec<usize>> = primes
        .iter()
        .map(|c| {
            minterms
                .iter()
                .enumerate()
                .filter(|(_, &m)| c.covers(m))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut best = primes.len().min(minterms.len());
    let mut covered = vec![false; minterms.len()];
    fn search(
        covered: &mut Vec<bool>,
        used: usize,
        best: &mut usize,
        coverage: &[Vec<usize>],
        prime_sets: &[Vec<usize>],
    ) {
        if used >= *best {
            return;
        }
        // pick the uncovered minterm with the fewest candidate primes
        let mut pick: Option<usize> = None;
        let mut pick_count = usize::MAX;
        for (i, &c) in covered.iter().enumerate() {
            if !c && coverage[i].len() < pick_count {
                pick_count = coverage[i].len();
                pick = Some(i);
            }
        }
        let Some(target) = pick else {
            *best = used;
            return;
        };
        for &p in &coverage[target] {
            let newly: Vec<usize> =
                prime_sets[p].iter().copied().filter(|&m| !covered[m]).collect();
            for &m in &newly {
                covered[m] = true;
            }
            search(covered, used + 1, best, coverage, prime_sets);
            for &m in &newly {
                covered[m] = false;
            }
        }
    }
    search(&mut covered, 0, &mut best, &coverage, &prime_sets);
    Ok(best)
}

/// Exact pathwidth via the vertex separation number: subset DP
/// `dp[S] = min over v ∈ S of max(dp[S∖v], boundary(S))` with
/// `boundary(S) = |{u ∈ S : u has a neighbor outside S}|`.
pub fn brute_pathwidth(g: &Graph) -> Result<usize, OracleError> {
    let verts: Vec<u32> = g.vertices().collect();
    let n = verts.len();
    if n > MAX_PATHWIDTH_VERTICES {
        return Err(OracleError::PathwidthBudget(n));
    }
    if n == 0 {
        return Ok(0);
    }
    let index: BTreeMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbr_masks: Vec<u32> = verts
        .iter()
        .map(|&v| g.neighbors(v).fold(0u32, |m, w| m | 1 << index[&w]))
        .collect();

    let full = (1u32 << n) - 1;
    let boundary = |s: u32| -> u32 {
        let mut b = 0;
        for i in 0..n {
            if s >> i & 1 == 1 && nbr_masks[i] & !s != 0 {
                b += 1;
            }
        }
        b
    };

    let mut dp = vec![u32::MAX; (full as usize) + 1];
    dp[0] = 0;
    for s in 1..=full {
        let bnd = boundary(s);
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = dp[(s & !(1 << i)) as usize];
            best = best.min(prev.max(bnd));
        }
        dp[s as usize] = best;
    }
    Ok(dp[full as usize] as usize)
}
