//! Cross-engine agreement on a mixed corpus: the exhaustive oracle, the
//! caching solver, and the restricted CDCL engine must report the same
//! status, and every UNSAT CDCL run must export a checkable refutation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proofdoor_core::cachesat::{solve_cachesat, SolveStatus};
use proofdoor_core::cdcl::{solve_cdcl, CdclConfig, CdclStatus};
use proofdoor_core::cnf::{Clause, CnfFormula, Lit, Var};
use proofdoor_core::encodings::fp_miter::build_fp_comm_miter;
use proofdoor_core::encodings::functions::{build_function_encoding, FunctionKind};
use proofdoor_core::encodings::mult_strips::build_mult_strip_descriptor;
use proofdoor_core::encodings::tree_expr::{build_tree_miter, parse_expr};
use proofdoor_core::encodings::xor_family::build_xor_band;
use proofdoor_core::oracles::brute_sat;
use proofdoor_core::resolution::{check_refutation, check_resolution_proof};
use proofdoor_core::structure::VarOrder;

fn random_3cnf(rng: &mut ChaCha8Rng, n: u32, m: usize) -> CnfFormula {
    let mut f = CnfFormula::new(n);
    for _ in 0..m {
        let mut lits = Vec::new();
        while lits.len() < 3 {
            let v = Var(rng.gen_range(1..=n));
            if lits.iter().all(|l: &Lit| l.var() != v) {
                lits.push(Lit::new(v, rng.gen_bool(0.5)));
            }
        }
        f.add_clause(Clause::new(lits));
    }
    f
}

/// Checks status agreement across all three engines and validates the CDCL
/// proof; returns the agreed status.
fn check_agreement(f: &CnfFormula, with_brute: bool) -> bool {
    let order = VarOrder::identity(f.num_vars());
    let cache = solve_cachesat(f, &order).unwrap();
    let cdcl = solve_cdcl(f, &CdclConfig::new(order)).unwrap();
    let sat = cache.status == SolveStatus::Sat;
    match cdcl.status {
        CdclStatus::Sat => assert!(sat, "CDCL SAT but caching solver UNSAT"),
        CdclStatus::Unsat => {
            assert!(!sat, "CDCL UNSAT but caching solver SAT");
            check_refutation(f, &cdcl.proof).expect("exported refutation must check");
        }
        CdclStatus::BudgetExceeded => panic!("budget exceeded on corpus formula"),
    }
    check_resolution_proof(f, &cdcl.proof).expect("learned-clause derivations must check");
    if with_brute {
        assert_eq!(brute_sat(f).unwrap().is_sat(), sat, "exhaustive oracle disagrees");
    }
    sat
}

#[test]
fn corpus_of_200_small_formulas_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x70d5);
    let mut total = 0usize;
    let mut unsat = 0usize;

    // random 3-CNFs across the phase transition
    for round in 0..200 {
        let n = 5 + (round % 8) as u32; // 5..=12 variables
        let m = (n as f64 * (3.4 + (round % 5) as f64 * 0.45)) as usize;
        let f = random_3cnf(&mut rng, n, m);
        if !check_agreement(&f, true) {
            unsat += 1;
        }
        total += 1;
    }

    // generator outputs at minimum sizes that fit the exhaustive budget
    let mut specials: Vec<CnfFormula> = Vec::new();
    for n in 1..=3 {
        specials.push(build_function_encoding(FunctionKind::Parity, n).formula);
    }
    for n in 1..=2 {
        specials.push(build_function_encoding(FunctionKind::Eq, n).formula);
    }
    for w in 1..=3 {
        specials.push(build_xor_band(w + 3, w).0);
    }
    let x = parse_expr("x*y").unwrap();
    let y = parse_expr("y*x").unwrap();
    specials.push(build_tree_miter(&x, &y, 1).formula);
    let a = parse_expr("x+y").unwrap();
    let b = parse_expr("y+x").unwrap();
    specials.push(build_tree_miter(&a, &b, 1).formula);
    for f in &specials {
        assert!(f.num_vars() <= 26, "special formula exceeds the oracle budget");
        if !check_agreement(f, true) {
            unsat += 1;
        }
        total += 1;
    }

    assert!(total >= 200, "corpus too small: {total}");
    assert!(unsat > 10, "corpus should contain a healthy unsatisfiable share");
    assert!(total - unsat > 10, "corpus should contain a healthy satisfiable share");
}

#[test]
fn larger_generator_outputs_agree_without_brute() {
    // these exceed the exhaustive budget; the two solvers must still agree
    let miter = build_fp_comm_miter(1, 1);
    assert!(!check_agreement(&miter.formula, false));
    let strips = build_mult_strip_descriptor(2, 1).unwrap();
    assert!(!check_agreement(&strips.formula, false));
    let a = parse_expr("x+y").unwrap();
    let b = parse_expr("y+x").unwrap();
    assert!(!check_agreement(&build_tree_miter(&a, &b, 2).formula, false));
}
