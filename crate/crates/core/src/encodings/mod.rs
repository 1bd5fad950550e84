//! Circuit-to-CNF encodings and formula generators: the gate library, the
//! staged floating-point adder and its commutativity miter, tree-shaped
//! arithmetic miters, function encodings, multiplier strip descriptors, and
//! the parity-band solver benchmark family.

pub mod circuit;
pub mod fp_adder;
pub mod fp_miter;
pub mod functions;
pub mod mult_strips;
pub mod tree_expr;
pub mod xor_family;
