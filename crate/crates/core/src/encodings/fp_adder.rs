//! A staged gate-level adder for positive normalized floating-point inputs
//! `(E, M)` with `m` exponent and `n` mantissa bits, round-to-nearest
//! ties-to-even: exponent comparison, operand selection, exponent
//! difference, barrel-shifter alignment with guard/round/sticky bits,
//! significand addition, overflow normalization, rounding, and the final
//! conditional shift with exponent update.
//!
//! Selection is tie-broken lexicographically: the operand with the larger
//! exponent wins, and on equal exponents the larger mantissa wins. The
//! selected pair is therefore a symmetric function of the two operands,
//! which keeps every internal wire of `add(a,b)` and `add(b,a)` equal when
//! the two circuits are mitered. The adder's final outputs are unchanged by
//! the tie-break (on equal exponents no alignment shift happens and the sum
//! is symmetric).

use std::collections::BTreeMap;

use super::circuit::{Netlist, Wire};

/// All stage outputs of the reference pipeline on one input pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpRefTrace {
    pub sel: bool,
    pub e_large: u64,
    pub e_small: u64,
    pub m_large: u64,
    pub m_small: u64,
    pub diff: u64,
    pub m_small_aligned: u64,
    pub guard: bool,
    pub round: bool,
    pub sticky: bool,
    pub sigma: u64,
    pub carry: bool,
    pub sigma_norm: u64,
    pub r_norm: bool,
    pub s_norm: bool,
    pub e_out: u64,
    pub inc: bool,
    pub sigma_rnd: u64,
    pub kappa: bool,
    pub sigma_final: u64,
    pub e_final: u64,
}

/// Integer reference model of the pipeline; the netlist must agree with it
/// wire group by wire group.
pub fn fp_add_reference(n: u32, m: u32, ea: u64, ma: u64, eb: u64, mb: u64) -> FpRefTrace {
    assert!(n >= 1 && m >= 1 && n + m <= 30);
    let emask = (1u64 << m) - 1;
    let nmask = (1u64 << n) - 1;
    assert!(ea <= emask && eb <= emask && ma <= nmask && mb <= nmask);

    let sel = ea > eb || (ea == eb && ma > mb);
    let (e_large, m_large, e_small, m_small) =
        if sel { (ea, ma, eb, mb) } else { (eb, mb, ea, ma) };
    let diff = (e_large - e_small) & emask;

    // alignment word: [round, guard, mantissa], plus a sticky accumulator
    let lanes = n + 2;
    let mut w = m_small << 2;
    let mut sticky = false;
    for j in 0..m {
        if diff >> j & 1 == 1 {
            let shift = 1u64 << j;
            if shift >= lanes as u64 {
                sticky |= w != 0;
                w = 0;
            } else {
                sticky |= w & ((1 << shift) - 1) != 0;
                w >>= shift;
            }
        }
    }
    let m_small_aligned = w >> 2;
    let guard = w >> 1 & 1 == 1;
    let round = w & 1 == 1;

    let sum = m_large + m_small_aligned;
    let sigma = sum & nmask;
    let carry = sum >> n & 1 == 1;

    let (sigma_norm, r_norm, s_norm) = if carry {
        (sigma >> 1 | 1 << (n - 1), guard, round || sticky)
    } else {
        (sigma, round, sticky)
    };
    let e_out = (e_large + carry as u64) & emask;

    let inc = r_norm && (sigma_norm & 1 == 1 || s_norm);
    let rnd = sigma_norm + inc as u64;
    let sigma_rnd = rnd & nmask;
    let kappa = rnd >> n & 1 == 1;

    let sigma_final = if kappa { sigma_rnd >> 1 | 1 << (n - 1) } else { sigma_rnd };
    let e_final = (e_out + kappa as u64) & emask;

    FpRefTrace {
        sel,
        e_large,
        e_small,
        m_large,
        m_small,
        diff,
        m_small_aligned,
        guard,
        round,
        sticky,
        sigma,
        carry,
        sigma_norm,
        r_norm,
        s_norm,
        e_out,
        inc,
        sigma_rnd,
        kappa,
        sigma_final,
        e_final,
    }
}

/// One side's wire handles, used by tests and by the miter construction.
#[derive(Debug, Clone)]
pub struct FpAdderWires {
    pub e_a: Vec<Wire>,
    pub m_a: Vec<Wire>,
    pub e_b: Vec<Wire>,
    pub m_b: Vec<Wire>,
    pub gt: Wire,
    pub lt: Wire,
    pub eq_agg: Wire,
    pub mgt: Wire,
    pub sel: Wire,
    pub e_large: Vec<Wire>,
    pub e_small: Vec<Wire>,
    pub m_large: Vec<Wire>,
    pub m_small: Vec<Wire>,
    pub diff: Vec<Wire>,
    pub m_small_aligned: Vec<Wire>,
    pub guard: Wire,
    pub round: Wire,
    pub sticky: Wire,
    pub sigma: Vec<Wire>,
    pub carry: Wire,
    pub sigma_norm: Vec<Wire>,
    pub r_norm: Wire,
    pub s_norm: Wire,
    pub e_out: Vec<Wire>,
    pub inc: Wire,
    pub sigma_rnd: Vec<Wire>,
    pub kappa: Wire,
    pub sigma_final: Vec<Wire>,
    pub e_final: Vec<Wire>,
}

/// The exponent (or mantissa) magnitude comparator: bitwise equalities, the
/// prefix-equal chain `p` from the top bit down, strict greater/less bits
/// gated by `p`, and chained aggregates. Returns `(gt, lt, all_equal_chain)`
/// where the last element is the `p` value below bit 0 (the full-equality
/// aggregate) if `with_eq` is set.
fn comparator(
    nl: &mut Netlist,
    a: &[Wire],
    b: &[Wire],
    with_lt: bool,
    with_eq: bool,
) -> (Wire, Option<Wire>, Option<Wire>) {
    let m = a.len();
    let eqs: Vec<Wire> = (0..m).map(|i| nl.eq(a[i], b[i])).collect();
    let mut p = nl.const1();
    let mut gt_acc: Option<Wire> = None;
    let mut lt_acc: Option<Wire> = None;
    for i in (0..m).rev() {
        let nb = nl.not(b[i]);
        let t = nl.and(p, a[i]);
        let gt_i = nl.and(t, nb);
        gt_acc = Some(match gt_acc {
            None => gt_i,
            Some(acc) => nl.or(gt_i, acc),
        });
        if with_lt {
            let na = nl.not(a[i]);
            let t2 = nl.and(p, b[i]);
            let lt_i = nl.and(t2, na);
            lt_acc = Some(match lt_acc {
                None => lt_i,
                Some(acc) => nl.or(lt_i, acc),
            });
        }
        p = nl.and(p, eqs[i]);
    }
    (gt_acc.unwrap(), lt_acc, with_eq.then_some(p))
}

/// Borrow subtractor `a - b` over equal widths; the final borrow is dropped
/// (callers guarantee `a ≥ b`).
fn subtract(nl: &mut Netlist, a: &[Wire], b: &[Wire]) -> Vec<Wire> {
    let mut borrow = nl.const0();
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let x = nl.xor(a[i], b[i]);
        out.push(nl.xor(x, borrow));
        if i + 1 < a.len() {
            let na = nl.not(a[i]);
            let t1 = nl.and(na, b[i]);
            let nx = nl.not(x);
            let t2 = nl.and(borrow, nx);
            borrow = nl.or(t1, t2);
        }
    }
    out
}

/// Half-adder incrementer `a + cin`; returns `(sum, carry_out)`.
fn increment(nl: &mut Netlist, a: &[Wire], cin: Wire) -> (Vec<Wire>, Wire) {
    let mut carry = cin;
    let mut out = Vec::with_capacity(a.len());
    for &bit in a {
        out.push(nl.xor(bit, carry));
        carry = nl.and(bit, carry);
    }
    (out, carry)
}

/// Builds one adder into `nl` with the group name prefix `tag` (empty for a
/// standalone adder). Inputs are taken as given wire vectors so a miter can
/// feed both sides from shared operands.
pub fn build_fp_adder_on(
    nl: &mut Netlist,
    n: u32,
    m: u32,
    tag: &str,
    e_a: Vec<Wire>,
    m_a: Vec<Wire>,
    e_b: Vec<Wire>,
    m_b: Vec<Wire>,
) -> FpAdderWires {
    let n = n as usize;
    let m = m as usize;
    let stage = |s: &str| if tag.is_empty() { s.to_string() } else { format!("{tag}.{s}") };

    // exponent comparator: the bitwise equality layer is its own stage
    nl.begin_stage(&stage("cmp_eq"));
    let eqs: Vec<Wire> = (0..m).map(|i| nl.eq(e_a[i], e_b[i])).collect();
    nl.begin_stage(&stage("cmp_chain"));
    let mut p = nl.const1();
    let mut gt_acc: Option<Wire> = None;
    let mut lt_acc: Option<Wire> = None;
    for i in (0..m).rev() {
        let nb = nl.not(e_b[i]);
        let t = nl.and(p, e_a[i]);
        let gt_i = nl.and(t, nb);
        gt_acc = Some(match gt_acc {
            None => gt_i,
            Some(acc) => nl.or(gt_i, acc),
        });
        let na = nl.not(e_a[i]);
        let t2 = nl.and(p, e_b[i]);
        let lt_i = nl.and(t2, na);
        lt_acc = Some(match lt_acc {
            None => lt_i,
            Some(acc) => nl.or(lt_i, acc),
        });
        p = nl.and(p, eqs[i]);
    }
    let gt = gt_acc.unwrap();
    let lt = lt_acc.unwrap();
    let eq_agg = p;

    // mantissa tie-break comparator (greater-than side only)
    nl.begin_stage(&stage("cmp_mantissa"));
    let (mgt, _, _) = comparator(nl, &m_a, &m_b, false, false);

    nl.begin_stage(&stage("select_ctl"));
    let t_sel = nl.and(eq_agg, mgt);
    let sel = nl.or(gt, t_sel);

    nl.begin_stage(&stage("select_exp"));
    let e_large: Vec<Wire> = (0..m).map(|i| nl.mux(sel, e_a[i], e_b[i])).collect();
    let e_small: Vec<Wire> = (0..m).map(|i| nl.mux(sel, e_b[i], e_a[i])).collect();

    nl.begin_stage(&stage("select_man"));
    let m_large: Vec<Wire> = (0..n).map(|j| nl.mux(sel, m_a[j], m_b[j])).collect();
    let m_small: Vec<Wire> = (0..n).map(|j| nl.mux(sel, m_b[j], m_a[j])).collect();

    nl.begin_stage(&stage("exp_diff"));
    let diff = subtract(nl, &e_large, &e_small);

    // barrel shifter over the word [round, guard, mantissa] plus a sticky
    // accumulator; stage j shifts by 2^j when diff_j is set
    let lanes = n + 2;
    let mut w: Vec<Wire> = Vec::with_capacity(lanes);
    nl.begin_stage(&stage("align_grs"));
    let z0 = nl.const0();
    let z1 = nl.const0();
    w.push(z0);
    w.push(z1);
    w.extend(m_small.iter().copied());
    let mut sticky = nl.const0();
    for j in 0..m {
        let shift = 1usize << j.min(30);
        nl.begin_stage(&stage("align_grs"));
        let zero = nl.const0();
        let out_count = shift.min(lanes);
        let shifted_out: Vec<Wire> = w[..out_count].to_vec();
        let t = nl.or_many(&shifted_out);
        let s_or = nl.or(sticky, t);
        sticky = nl.mux(diff[j], s_or, sticky);
        let mut next = Vec::with_capacity(lanes);
        for i in 0..lanes {
            let src = if i + shift < lanes { w[i + shift] } else { zero };
            let core = i >= 2;
            nl.begin_stage(&stage(if core { "align_core" } else { "align_grs" }));
            next.push(nl.mux(diff[j], src, w[i]));
        }
        w = next;
    }
    let m_small_aligned: Vec<Wire> = w[2..].to_vec();
    let guard = w[1];
    let round = w[0];

    nl.begin_stage(&stage("significand_add"));
    let (sigma, carry) = nl.ripple_add(&m_large, &m_small_aligned);

    nl.begin_stage(&stage("normalize_const"));
    let one = nl.const1();
    nl.begin_stage(&stage("normalize"));
    let mut sigma_norm = vec![0; n];
    for i in 0..n {
        let shifted = if i == n - 1 { one } else { sigma[i + 1] };
        sigma_norm[i] = nl.mux(carry, shifted, sigma[i]);
    }
    nl.begin_stage(&stage("normalize_grs"));
    let _g_norm = nl.mux(carry, sigma[0], guard);
    let r_norm = nl.mux(carry, guard, round);
    let rs = nl.or(round, sticky);
    let s_norm = nl.mux(carry, rs, sticky);

    nl.begin_stage(&stage("exp_update"));
    let (e_out, _) = increment(nl, &e_large, carry);

    nl.begin_stage(&stage("round"));
    let sor = nl.or(sigma_norm[0], s_norm);
    let inc = nl.and(r_norm, sor);

    nl.begin_stage(&stage("round_add"));
    let (sigma_rnd, kappa) = increment(nl, &sigma_norm, inc);

    nl.begin_stage(&stage("final_const"));
    let one2 = nl.const1();
    nl.begin_stage(&stage("final_shift"));
    let mut sigma_final = vec![0; n];
    for i in 0..n {
        let shifted = if i == n - 1 { one2 } else { sigma_rnd[i + 1] };
        sigma_final[i] = nl.mux(kappa, shifted, sigma_rnd[i]);
    }

    nl.begin_stage(&stage("exp_final"));
    let (e_final, _) = increment(nl, &e_out, kappa);

    let group = |nl: &mut Netlist, name: &str, wires: &[Wire]| {
        let full = if tag.is_empty() { name.to_string() } else { format!("{tag}.{name}") };
        nl.set_group(&full, wires.to_vec());
    };
    group(nl, "E_large", &e_large);
    group(nl, "E_small", &e_small);
    group(nl, "M_large", &m_large);
    group(nl, "M_small", &m_small);
    group(nl, "Diff", &diff);
    group(nl, "M_small_aligned", &m_small_aligned);
    group(nl, "GRS", &[guard, round, sticky]);
    group(nl, "Sigma", &sigma);
    group(nl, "Sigma_norm", &sigma_norm);
    group(nl, "E_out", &e_out);
    group(nl, "Sigma_rnd", &sigma_rnd);
    group(nl, "Sigma_final", &sigma_final);
    group(nl, "E_final", &e_final);
    group(nl, "cmp", &[gt, lt, eq_agg, mgt, sel]);

    FpAdderWires {
        e_a,
        m_a,
        e_b,
        m_b,
        gt,
        lt,
        eq_agg,
        mgt,
        sel,
        e_large,
        e_small,
        m_large,
        m_small,
        diff,
        m_small_aligned,
        guard,
        round,
        sticky,
        sigma,
        carry,
        sigma_norm,
        r_norm,
        s_norm,
        e_out,
        inc,
        sigma_rnd,
        kappa,
        sigma_final,
        e_final,
    }
}

/// A standalone adder netlist with fresh operand inputs.
pub fn encode_fp_adder(n: u32, m: u32) -> (Netlist, FpAdderWires) {
    assert!(n >= 1 && m >= 1);
    let mut nl = Netlist::new();
    let e_a = nl.input_group("E_a", m as usize);
    let m_a = nl.input_group("M_a", n as usize);
    let e_b = nl.input_group("E_b", m as usize);
    let m_b = nl.input_group("M_b", n as usize);
    let wires = build_fp_adder_on(&mut nl, n, m, "", e_a, m_a, e_b, m_b);
    (nl, wires)
}

/// Packs operand values into a simulation input map.
pub fn operand_inputs(
    wires: &FpAdderWires,
    ea: u64,
    ma: u64,
    eb: u64,
    mb: u64,
) -> BTreeMap<Wire, bool> {
    let mut map = BTreeMap::new();
    let set = |map: &mut BTreeMap<Wire, bool>, bits: &[Wire], value: u64| {
        for (i, &w) in bits.iter().enumerate() {
            map.insert(w, value >> i & 1 == 1);
        }
    };
    set(&mut map, &wires.e_a, ea);
    set(&mut map, &wires.m_a, ma);
    set(&mut map, &wires.e_b, eb);
    set(&mut map, &wires.m_b, mb);
    map
}

pub fn word_value(values: &[bool], bits: &[Wire]) -> u64 {
    bits.iter().enumerate().fold(0u64, |acc, (i, &w)| acc | (values[w as usize] as u64) << i)
}
