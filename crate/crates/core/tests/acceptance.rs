//! The acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test -p transition-lab --test acceptance -- --nocapture`
//! to see every line, or through the command-line driver's `suite` command.

use transition_lab::acceptance::{run_criterion, CriterionOutcome};

fn criterion(id: usize) -> CriterionOutcome {
    let c = run_criterion(id, 0);
    println!(
        "criterion {:2} [{}] {} — {}",
        c.id,
        if c.passed { "PASS" } else { "FAIL" },
        c.title,
        c.detail
    );
    c
}

macro_rules! criterion_test {
    ($name:ident, $id:expr) => {
        #[test]
        fn $name() {
            let c = criterion($id);
            assert!(c.passed, "criterion {} failed: {}", c.id, c.detail);
        }
    };
}

criterion_test!(criterion_01_golden_tables, 1);
criterion_test!(criterion_02_euclidean_zoom_limit, 2);
criterion_test!(criterion_03_reflection_transition, 3);
criterion_test!(criterion_04_half_pipe_limit, 4);
criterion_test!(criterion_05_quadrilateral_metrics, 5);
criterion_test!(criterion_06_minkowski_dictionary, 6);
criterion_test!(criterion_07_puncture_singularity, 7);
criterion_test!(criterion_08_22_wall_family, 8);
criterion_test!(criterion_09_cone_angles, 9);
criterion_test!(criterion_10_surface_limit_rate, 10);
criterion_test!(criterion_11_edge_distance_curve, 11);
