//! Semantic soundness of the CNF primitives, checked against exhaustive
//! enumeration on randomized small instances: restriction preserves the
//! models over the untouched variables, propagated literals are entailed,
//! resolvents are consequences, and absorption implies entailment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proofdoor_core::cnf::{
    absorbs, resolve, restrict, unit_propagate, Assignment, Clause, CnfFormula, Lit, Var,
};
use proofdoor_core::oracles::brute_sat;

fn random_formula(rng: &mut ChaCha8Rng, n: u32, m: usize, max_width: usize) -> CnfFormula {
    let mut f = CnfFormula::new(n);
    for _ in 0..m {
        let width = rng.gen_range(1..=max_width.min(n as usize));
        let mut lits = Vec::new();
        while lits.len() < width {
            let v = Var(rng.gen_range(1..=n));
            if lits.iter().all(|l: &Lit| l.var() != v) {
                lits.push(Lit::new(v, rng.gen_bool(0.5)));
            }
        }
        f.add_clause(Clause::new(lits));
    }
    f
}

fn all_assignments(n: u32) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |mask| {
        let mut v = vec![false; n as usize + 1];
        for i in 1..=n {
            v[i as usize] = mask >> (i - 1) & 1 == 1;
        }
        v
    })
}

#[test]
fn restriction_preserves_models_of_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(3..=12);
        let f = random_formula(&mut rng, n, m, 3);
        let mut alpha = Assignment::new(n);
        for v in 1..=n {
            if rng.gen_bool(0.4) {
                alpha.assign(Lit::new(Var(v), rng.gen_bool(0.5)), 0);
            }
        }
        let restricted = restrict(&f, &alpha);
        for tau in all_assignments(n) {
            let consistent =
                alpha.assigned().all(|(v, b)| tau[v.index()] == b);
            if consistent {
                assert_eq!(
                    f.eval(&tau),
                    restricted.formula.eval(&tau),
                    "restriction must agree with the original on extensions of α"
                );
            }
        }
    }
}

#[test]
fn propagated_literals_are_entailed() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(3..=14);
        let f = random_formula(&mut rng, n, m, 3);
        let mut alpha = Assignment::new(n);
        if rng.gen_bool(0.5) {
            alpha.assign(Lit::new(Var(rng.gen_range(1..=n)), rng.gen_bool(0.5)), 0);
        }
        let seed: Vec<Lit> = alpha.trail().to_vec();
        let prop = unit_propagate(&f, &mut alpha);
        for (lit, _) in &prop.implied {
            // f ∧ seed ∧ ¬lit must be unsatisfiable
            let mut q = f.clone();
            for &l in &seed {
                q.add_clause(Clause::new(vec![l]));
            }
            q.add_clause(Clause::new(vec![!*lit]));
            assert!(!brute_sat(&q).unwrap().is_sat(), "implied literal {lit} not entailed");
        }
    }
}

#[test]
fn resolvents_are_consequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut tried = 0;
    while tried < 60 {
        let n = rng.gen_range(2..=7);
        let f = random_formula(&mut rng, n, 2, 3);
        let (a, b) = (&f.clauses()[0], &f.clauses()[1]);
        let pivot = match a
            .literals()
            .iter()
            .find(|l| b.contains(!**l))
            .map(|l| l.var())
        {
            Some(p) => p,
            None => continue,
        };
        let Ok(resolvent) = resolve(a, b, pivot) else { continue };
        tried += 1;
        for tau in all_assignments(n) {
            if a.eval(&tau) && b.eval(&tau) {
                assert!(
                    resolvent.is_tautology() || resolvent.eval(&tau),
                    "resolvent must hold wherever both antecedents hold"
                );
            }
        }
    }
}

#[test]
fn absorption_implies_entailment() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut absorbed_seen = 0;
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range(2..=10);
        let f = random_formula(&mut rng, n, m, 3);
        let c = {
            let width = rng.gen_range(1..=2);
            let mut lits = Vec::new();
            while lits.len() < width {
                let v = Var(rng.gen_range(1..=n));
                if lits.iter().all(|l: &Lit| l.var() != v) {
                    lits.push(Lit::new(v, rng.gen_bool(0.5)));
                }
            }
            Clause::new(lits)
        };
        if absorbs(&f, &c) {
            absorbed_seen += 1;
            let mut q = f.clone();
            for &l in c.literals() {
                q.add_clause(Clause::new(vec![!l]));
            }
            assert!(!brute_sat(&q).unwrap().is_sat(), "absorbed clause {c} not entailed");
        }
    }
    assert!(absorbed_seen > 5, "sampling produced too few absorbed clauses");
}
