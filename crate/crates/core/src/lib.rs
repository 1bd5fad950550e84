//! A laboratory for structured SAT solving and proof analysis.
//!
//! The crate is organized around a plain CNF representation ([`cnf`]) and
//! builds up to:
//!
//! - structural analysis of formulas: incidence graphs and path
//!   decompositions ([`structure`]),
//! - a caching DPLL solver with residual-subformula accounting
//!   ([`cachesat`]),
//! - a deliberately restricted CDCL engine (fixed decision order, DECISION
//!   learning, restart after every conflict, naive propagation) that exports
//!   checkable resolution derivations ([`cdcl`]),
//! - resolution proofs, partial-order compliance checking, restriction
//!   lifting and interpolant extraction ([`resolution`]),
//! - proofdoor descriptors: chunked clause partitions with interpolant
//!   chains, their verification and end-to-end refutation assembly
//!   ([`proofdoor`]),
//! - generators for circuit miters and function encodings ([`encodings`]),
//! - exhaustive ground-truth oracles for small instances ([`oracles`]).

pub mod cachesat;
pub mod cdcl;
pub mod cnf;
pub mod encodings;
pub mod oracles;
pub mod proofdoor;
pub mod resolution;
pub mod structure;
