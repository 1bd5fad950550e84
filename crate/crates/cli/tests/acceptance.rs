//! Acceptance suite: every criterion runs end to end, through the CLI
//! binary wherever a subcommand covers it, and prints one pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proofdoor_core::cachesat::{refute_formula_ordered, solve_cachesat, SolveStatus};
use proofdoor_core::cdcl::{derive_clause, solve_cdcl, CdclConfig, CdclStatus, DeriveOutcome};
use proofdoor_core::cnf::{absorbs, emit_dimacs, Clause, CnfFormula, Lit, Var};
use proofdoor_core::encodings::fp_miter::build_fp_comm_miter;
use proofdoor_core::encodings::functions::{
    build_function_encoding, semantic_truth_table, FunctionKind,
};
use proofdoor_core::encodings::tree_expr::{build_tree_miter, parse_expr};
use proofdoor_core::encodings::xor_family::build_xor_band;
use proofdoor_core::oracles::{brute_sat, TruthTable};
use proofdoor_core::proofdoor::cutting_partial_orders;
use proofdoor_core::resolution::{check_refutation, emit_res, parse_res, ResolutionProof};
use proofdoor_core::structure::VarOrder;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_proofdoor"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.code() == Some(0),
        "`proofdoor {}` exited {:?}\nstdout:\n{}\nstderr:\n{}",
        args.join(" "),
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    out
}

fn run_code(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("missing {key}= in:\n{stdout}"))
        .to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn criterion_01_fp_miter_pipeline_and_02_parameter_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let mut measured: Vec<(u32, usize, usize, usize)> = Vec::new();

    for nm in [2u32, 3, 4] {
        let size = nm.to_string();
        let cnf = dir.join(format!("fp{nm}.cnf"));
        let desc = dir.join(format!("fp{nm}.json"));
        let proof = dir.join(format!("fp{nm}.res"));
        run_ok(&[
            "gen",
            "fp-miter",
            "--mantissa",
            &size,
            "--exponent",
            &size,
            "--cnf",
            path_str(&cnf),
            "--descriptor",
            path_str(&desc),
        ]);
        let verify = run_ok(&[
            "verify-proofdoor",
            "--graph",
            "bipartite",
            path_str(&cnf),
            path_str(&desc),
        ]);
        let vout = stdout_of(&verify);
        assert_eq!(field(&vout, "passed"), "true");
        measured.push((
            nm,
            field(&vout, "measured_c").parse().unwrap(),
            field(&vout, "measured_w").parse().unwrap(),
            field(&vout, "measured_s").parse().unwrap(),
        ));

        run_ok(&["assemble-refutation", path_str(&cnf), path_str(&desc), "--out", path_str(&proof)]);
        let check = run_ok(&["check-proof", path_str(&cnf), path_str(&proof)]);
        assert_eq!(field(&stdout_of(&check), "refutation"), "true");

        // every cutting partial order must accept the assembled proof
        let miter = build_fp_comm_miter(nm, nm);
        let orders = cutting_partial_orders(&miter.formula, &miter.descriptor).unwrap();
        for (i, po) in orders.iter().enumerate() {
            let po_path = write(dir, &format!("fp{nm}_po{i}.txt"), &po.to_file_format());
            let out = run_ok(&[
                "check-proof",
                "--partial-order",
                path_str(&po_path),
                path_str(&cnf),
                path_str(&proof),
            ]);
            assert_eq!(field(&stdout_of(&out), "partial_order"), "accepted", "order {i} at {nm}");
        }
    }
    println!("criterion 1 (fp miter pipeline at sizes 2,3,4): PASS");

    let ratios: Vec<f64> =
        measured.iter().map(|&(nm, c, _, _)| c as f64 / (2 * nm) as f64).collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
    assert!(hi / lo <= 2.0, "interpolant count ratios {ratios:?} not within a factor 2");
    assert!(measured.iter().all(|&(_, _, w, _)| w == measured[0].2), "width varies: {measured:?}");
    assert!(measured.iter().all(|&(_, _, _, s)| s == measured[0].3), "support varies: {measured:?}");
    println!("criterion 2 (c linear in m+n, w and s constant): PASS");
}

#[test]
fn criterion_03_cachesat_bound_and_04_cdcl_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let mut k_fit: Option<f64> = None;
    for width in 1u32..=3 {
        for n in (width + 2).max(4)..=12 {
            let cnf = dir.join(format!("xor_{width}_{n}.cnf"));
            let ord = dir.join(format!("xor_{width}_{n}.ord"));
            run_ok(&[
                "gen",
                "xor-family",
                "--n",
                &n.to_string(),
                "--width",
                &width.to_string(),
                "--cnf",
                path_str(&cnf),
                "--order",
                path_str(&ord),
            ]);
            let cache = run_ok(&[
                "solve",
                "--engine",
                "cachesat",
                "--order",
                path_str(&ord),
                path_str(&cnf),
            ]);
            let cout = stdout_of(&cache);
            assert_eq!(field(&cout, "status"), "UNSAT");
            let dcsf: u64 = field(&cout, "dcsf_count").parse().unwrap();

            let bound_scale = n as f64 * f64::exp2(3.0 * width as f64);
            let ratio = dcsf as f64 / bound_scale;
            match &mut k_fit {
                None => k_fit = Some(ratio.max(1e-9)),
                Some(k) => assert!(
                    ratio <= *k,
                    "dcsf {dcsf} at (w={width}, n={n}) breaks the fitted constant"
                ),
            }

            let run = run_ok(&[
                "solve",
                "--engine",
                "cdcl",
                "--order",
                path_str(&ord),
                path_str(&cnf),
            ]);
            let rout = stdout_of(&run);
            assert_eq!(field(&rout, "status"), "UNSAT");
            let conflicts: u64 = field(&rout, "conflicts").parse().unwrap();
            assert!(
                conflicts <= 10 * dcsf * dcsf,
                "(w={width}, n={n}): conflicts {conflicts} > 10·{dcsf}²"
            );
        }
    }
    println!("criterion 3 (dcsf ≤ K·n·2^(3w), K fit at the smallest size): PASS");
    println!("criterion 4 (conflicts ≤ 10·dcsf² on the shared order): PASS");
}

#[test]
fn criterion_05_solver_correctness_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut total = 0usize;
    let mut check = |f: &CnfFormula, with_brute: bool| {
        let order = VarOrder::identity(f.num_vars());
        let cache = solve_cachesat(f, &order).unwrap();
        let run = solve_cdcl(f, &CdclConfig::new(order)).unwrap();
        let sat = cache.status == SolveStatus::Sat;
        match run.status {
            CdclStatus::Sat => assert!(sat),
            CdclStatus::Unsat => {
                assert!(!sat);
                check_refutation(f, &run.proof).unwrap();
            }
            CdclStatus::BudgetExceeded => panic!("budget exceeded"),
        }
        if with_brute {
            assert_eq!(brute_sat(f).unwrap().is_sat(), sat);
        }
        total += 1;
    };

    for round in 0..200 {
        let n = 5 + (round % 8) as u32;
        let m = (n as f64 * (3.4 + (round % 5) as f64 * 0.45)) as usize;
        let mut f = CnfFormula::new(n);
        for _ in 0..m {
            let mut lits: Vec<Lit> = Vec::new();
            while lits.len() < 3 {
                let v = Var(rng.gen_range(1..=n));
                if lits.iter().all(|l| l.var() != v) {
                    lits.push(Lit::new(v, rng.gen_bool(0.5)));
                }
            }
            f.add_clause(Clause::new(lits));
        }
        check(&f, true);
    }
    for n in 1..=3 {
        check(&build_function_encoding(FunctionKind::Parity, n).formula, true);
    }
    for n in 1..=2 {
        check(&build_function_encoding(FunctionKind::Eq, n).formula, true);
    }
    for w in 1..=3u32 {
        check(&build_xor_band(w + 3, w).0, true);
    }
    let t1 = parse_expr("x*y").unwrap();
    let t2 = parse_expr("y*x").unwrap();
    check(&build_tree_miter(&t1, &t2, 1).formula, true);
    check(&build_fp_comm_miter(1, 1).formula, false);
    assert!(total >= 200);
    println!("criterion 5 (three-engine agreement on {total} formulas, proofs checked): PASS");
}

#[test]
fn criterion_06_parity_interpolants() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    for n in [2usize, 3] {
        let enc = build_function_encoding(FunctionKind::Parity, n);
        let f = &enc.formula;
        // ordered refutation: before-variables branched last so every path
        // resolves them first
        let mut order: Vec<Var> = f
            .occurring_vars()
            .into_iter()
            .filter(|v| !enc.partition.before.contains(v))
            .collect();
        order.extend(enc.partition.before.iter().copied());
        let proof = refute_formula_ordered(f, &order).unwrap();

        let cnf = write(dir, &format!("par{n}.cnf"), &emit_dimacs(f));
        let res = write(dir, &format!("par{n}.res"), &emit_res(&proof));
        let vp = write(dir, &format!("par{n}.vp"), &enc.partition.to_file_format());
        let out_path = dir.join(format!("par{n}.itp"));
        let out = run_ok(&[
            "extract-interpolant",
            "--partition",
            path_str(&vp),
            "--out",
            path_str(&out_path),
            path_str(&cnf),
            path_str(&res),
        ]);
        let sout = stdout_of(&out);
        assert_eq!(field(&sout, "accepted"), "true");
        let clauses: usize = field(&sout, "clauses").parse().unwrap();
        assert!(clauses <= proof.size(), "interpolant larger than the proof");

        let interpolant =
            proofdoor_core::cnf::parse_dimacs(&std::fs::read_to_string(&out_path).unwrap())
                .unwrap();
        let got = semantic_truth_table(&interpolant, &enc.inputs);
        assert_eq!(got, FunctionKind::Parity.truth_table(n));
    }
    println!("criterion 6 (parity interpolants verify and match the function): PASS");
}

#[test]
fn criterion_07_absorption_of_fp_interpolants() {
    let miter = build_fp_comm_miter(2, 2);
    let f = &miter.formula;
    let order = VarOrder::identity(f.num_vars());
    let budget = 10 * (f.num_clauses() as u64).pow(2);
    let mut db: Vec<Clause> = Vec::new();
    let mut spent = 0u64;
    for interp in &miter.descriptor.interpolants {
        for clause in interp {
            if db.contains(clause) {
                continue;
            }
            match derive_clause(f, &db, clause, &order, budget - spent).unwrap() {
                DeriveOutcome::Absorbed => {}
                DeriveOutcome::Derived { learned, conflicts } => {
                    spent += conflicts;
                    db.extend(learned);
                }
                DeriveOutcome::BudgetExceeded { .. } => panic!("budget exceeded"),
            }
            db.push(clause.clone());
            let mut working = CnfFormula::new(f.num_vars());
            for c in f.clauses().iter().chain(db.iter()) {
                working.add_clause(c.clone());
            }
            assert!(absorbs(&working, clause), "{clause} not absorbed");
        }
    }
    assert!(spent <= budget);
    println!(
        "criterion 7 (every fp(2,2) interpolant clause absorbed, {spent} ≤ {budget} conflicts): PASS"
    );
}

fn table_hex(t: &TruthTable) -> String {
    let bits = 1usize << t.arity();
    let nibbles = bits.div_ceil(4);
    let mut out = String::new();
    for i in (0..nibbles).rev() {
        let mut nibble = 0u32;
        for b in 0..4 {
            let idx = i * 4 + b;
            if idx < bits && t.value(idx as u32) {
                nibble |= 1 << b;
            }
        }
        out.push(char::from_digit(nibble, 16).unwrap());
    }
    out
}

#[test]
fn criterion_08_dnf_lower_bounds() {
    let eq = |n: usize| {
        TruthTable::from_fn(2 * n, move |input| {
            input & ((1 << n) - 1) == input >> n
        })
    };
    for n in 1..=3usize {
        let hex = table_hex(&eq(n));
        let out = run_ok(&["oracle", "min-dnf", "--arity", &(2 * n).to_string(), &hex]);
        let terms: usize = field(&stdout_of(&out), "terms").parse().unwrap();
        assert_eq!(terms, 1 << n, "EQ_{n} needs exactly 2^{n} terms");
    }
    for n in 1..=2usize {
        let mult = TruthTable::from_fn(4 * n, move |input| {
            let x = (input & ((1 << n) - 1)) as u64;
            let y = (input >> n & ((1 << n) - 1)) as u64;
            let z = (input >> (2 * n)) as u64;
            x * y == z
        });
        let hex = table_hex(&mult);
        let out = run_ok(&["oracle", "min-dnf", "--arity", &(4 * n).to_string(), &hex]);
        let terms: usize = field(&stdout_of(&out), "terms").parse().unwrap();
        assert!(terms >= 1 << n, "Mult-Graph({n}) needs ≥ 2^{n} terms, got {terms}");
    }
    println!("criterion 8 (min DNF: EQ_n = 2^n for n ≤ 3, Mult-Graph ≥ 2^n for n ≤ 2): PASS");
}

#[test]
fn criterion_09_partial_order_checker_soundness() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();

    // violating proof: resolve z (var 2) before x (var 1) under {x} ≺ {z}
    let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1]]);
    let mut bad = ResolutionProof::new(3);
    let s = bad.push_step(1, 2, Var(2), Clause::from_dimacs(&[1]));
    bad.push_step(s, 3, Var(1), Clause::empty());
    let cnf = write(dir, "po.cnf", &emit_dimacs(&f));
    let badp = write(dir, "bad.res", &emit_res(&bad));
    let po = write(dir, "po.txt", "x 1 0\ny 2 0\n");
    let (code, stdout) = run_code(&[
        "check-proof",
        "--partial-order",
        path_str(&po),
        path_str(&cnf),
        path_str(&badp),
    ]);
    assert_eq!(code, 1, "violating proof must exit 1");
    assert!(stdout.contains("violation.path="), "witness path must be printed:\n{stdout}");

    // compliant variant: resolve x before z
    let g = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1, 2], &[-2]]);
    let mut good = ResolutionProof::new(3);
    let s = good.push_step(1, 2, Var(1), Clause::from_dimacs(&[2]));
    good.push_step(s, 3, Var(2), Clause::empty());
    let gcnf = write(dir, "po_good.cnf", &emit_dimacs(&g));
    let goodp = write(dir, "good.res", &emit_res(&good));
    let out = run_ok(&[
        "check-proof",
        "--partial-order",
        path_str(&po),
        path_str(&gcnf),
        path_str(&goodp),
    ]);
    assert_eq!(field(&stdout_of(&out), "partial_order"), "accepted");
    println!("criterion 9 (order checker rejects with a witness, accepts the compliant proof): PASS");
}

#[test]
fn criterion_10_stage_size_accounting() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let cnf = dir.join("fp33.cnf");
    let desc = dir.join("fp33.json");
    let out = run_ok(&[
        "gen",
        "fp-miter",
        "--mantissa",
        "3",
        "--exponent",
        "3",
        "--cnf",
        path_str(&cnf),
        "--descriptor",
        path_str(&desc),
    ]);
    let sout = stdout_of(&out);
    let (n, m) = (3usize, 3usize);
    let cases = [
        ("cmp_eq", m, 4 * m),
        ("select_exp", 2 * m, 8 * m),
        ("select_man", 2 * n, 8 * n),
        ("align_core", n * m, 4 * n * m),
        ("normalize", n, 4 * n),
        ("final_shift", n, 4 * n),
    ];
    for (stage, vars, clauses) in cases {
        assert_eq!(field(&sout, &format!("stage.{stage}.vars")), vars.to_string(), "{stage}");
        assert_eq!(
            field(&sout, &format!("stage.{stage}.clauses")),
            clauses.to_string(),
            "{stage}"
        );
    }
    println!("criterion 10 (per-stage variable/clause counts bit-exact at (3,3)): PASS");
}

#[test]
fn exit_code_table() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    // exit 3: oracle budget on a 30-variable formula
    let lits: Vec<String> = (1..=30).map(|i| i.to_string()).collect();
    let big = write(dir, "big.cnf", &format!("p cnf 30 1\n{} 0\n", lits.join(" ")));
    let (code, _) = run_code(&["solve", "--engine", "brute", path_str(&big)]);
    assert_eq!(code, 3);
    // exit 2: usage error
    let (code, _) = run_code(&["solve", "--engine", "nonsense", path_str(&big)]);
    assert_eq!(code, 2);
    // exit 2: unreadable input
    let (code, _) = run_code(&["solve", "--engine", "brute", "/nonexistent.cnf"]);
    assert_eq!(code, 2);
    println!("exit-code table (0/1/2/3): PASS");
}

#[test]
fn round_trips_through_the_cli_artifacts() {
    // descriptor and proof files written by one invocation are readable by
    // the next; the RES parser round-trips the assembled refutation
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let cnf = dir.join("fp.cnf");
    let desc = dir.join("fp.json");
    let proof_path = dir.join("fp.res");
    run_ok(&[
        "gen", "fp-miter", "--mantissa", "2", "--exponent", "2", "--cnf", path_str(&cnf),
        "--descriptor", path_str(&desc),
    ]);
    run_ok(&["assemble-refutation", path_str(&cnf), path_str(&desc), "--out", path_str(&proof_path)]);
    let text = std::fs::read_to_string(&proof_path).unwrap();
    let proof = parse_res(&text).unwrap();
    assert_eq!(emit_res(&proof), text);
    let wanted: BTreeSet<u32> = proof.steps.iter().map(|s| s.id).collect();
    assert_eq!(wanted.len(), proof.num_steps());
}
