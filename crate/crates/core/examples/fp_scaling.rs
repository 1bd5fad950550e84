//! Verifies, assembles, and order-checks the commutativity-miter family
//! at sizes 2..4, printing the measured descriptor parameters.

use proofdoor_core::encodings::fp_miter::build_fp_comm_miter;
use proofdoor_core::proofdoor::{assemble_refutation, cutting_partial_orders, verify_proofdoor, GraphMode};
use proofdoor_core::resolution::{check_partial_order, check_refutation};

fn main() {
    for nm in [2u32, 3, 4] {
        let t0 = std::time::Instant::now();
        let miter = build_fp_comm_miter(nm, nm);
        let report = verify_proofdoor(&miter.formula, &miter.descriptor, GraphMode::Bipartite).unwrap();
        let proof = assemble_refutation(&miter.formula, &miter.descriptor).unwrap();
        check_refutation(&miter.formula, &proof).unwrap();
        let orders = cutting_partial_orders(&miter.formula, &miter.descriptor).unwrap();
        let bad = orders.iter().filter(|po| check_partial_order(&proof, po).is_err()).count();
        println!(
            "(n,m)=({nm},{nm}) vars={} clauses={} chunks={} | c={} w={} s={} | verified={} | proof steps={} orders={} violations={} | {:?}",
            miter.formula.num_vars(), miter.formula.num_clauses(), miter.descriptor.num_chunks(),
            report.measured_c, report.measured_w, report.measured_s,
            report.passed(), proof.num_steps(), orders.len(), bad, t0.elapsed()
        );
    }
}
