//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line (run with `-- --nocapture` to see them). Every
//! tolerance is exact; measured wall times are printed for the criteria
//! that carry runtime targets.

use std::time::Instant;

use num_bigint::BigUint;
use toric::labeling::factorial;
use toric::ops::{promotion, toggle, toric_promotion};
use toric::orbit::{census, CensusReport};
use toric::verify::{
    report_json, verify_cpro_order, verify_forest_theorem, verify_fs_structure,
    verify_operator_identities, zeta_survey, DEFAULT_SEED,
};
use toric::{Caps, Graph, GraphFamily, IdentityScope, Labeling, OperatorSpec, VerificationScope};

fn path(n: usize) -> Graph {
    Graph::generate(GraphFamily::Path, n).unwrap()
}

fn max_threads() -> usize {
    std::thread::available_parallelism().map_or(4, |p| p.get())
}

#[test]
fn acceptance_01_path5_worked_example() {
    let g = path(5);
    let start = Labeling::parse("45123", 5).unwrap();

    // The four consecutive toggles, one at a time.
    let chain: Vec<String> = [(1, 2), (2, 3), (3, 4), (4, 5)]
        .iter()
        .scan(start.clone(), |state, &(i, j)| {
            *state = toggle(&g, state, i, j).unwrap();
            Some(state.word())
        })
        .collect();
    assert_eq!(chain, vec!["45123", "45123", "35124", "34125"]);

    let promoted = promotion(&g, &start);
    assert_eq!(promoted.word(), "34125");
    assert_eq!(toggle(&g, &promoted, 5, 1).unwrap().word(), "34521");
    assert_eq!(toric_promotion(&g, &start).unwrap().word(), "34521");

    println!("acceptance 01 path:5 worked example: PASS");
}

#[test]
fn acceptance_02_path7_promotion_order() {
    let caps = Caps::default();
    let started = Instant::now();
    let report = census(&path(7), &OperatorSpec::Promotion, &caps, 1).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(report.labelings, 5040);
    let covered: u64 = report.orbit_sizes.iter().map(|(s, c)| s * c).sum();
    assert_eq!(covered, 5040);
    assert_eq!(
        report.order,
        BigUint::parse_bytes(b"3224590642072800", 10).unwrap()
    );

    println!(
        "acceptance 02 path:7 promotion order 3224590642072800: PASS ({:.3}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_03_tree_orbit_sizes() {
    let caps = Caps::default();
    let scope = VerificationScope::trees(7, DEFAULT_SEED);
    let started = Instant::now();
    let report = verify_forest_theorem(&scope, &caps, 1).unwrap();
    let elapsed = started.elapsed();

    // Exhaustive through n = 6 (1 + 3 + 16 + 125 + 1296 trees), 200 seeded
    // random trees at n = 7, full labeling censuses everywhere.
    assert_eq!(report.graphs_checked, 1 + 3 + 16 + 125 + 1296 + 200);
    let exhaustive: u64 = (2..=6u64).map(|n| n.pow((n - 2) as u32) * factorial(n as usize)).sum();
    assert_eq!(report.labelings_checked, exhaustive + 200 * factorial(7));
    assert!(report.pass, "tree orbit sizes: {report}");

    println!(
        "acceptance 03 tree orbit sizes are n-1 (n = 2..=6 exhaustive, 200 random n = 7): PASS ({:.3}s single-threaded)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_04_forest_orbit_formula() {
    let caps = Caps::default();
    let scope = VerificationScope::forests(5, DEFAULT_SEED);
    let started = Instant::now();
    let report = verify_forest_theorem(&scope, &caps, 1).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(report.graphs_checked, 2 + 7 + 38 + 291);
    assert!(report.pass, "forest orbit formula: {report}");

    println!(
        "acceptance 04 forest orbit sizes match (n-1)*t/gcd(t,n) (all forests n <= 5): PASS ({:.3}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_05_tree_power_identities() {
    let caps = Caps::default();
    let scope = VerificationScope::trees(7, DEFAULT_SEED);
    let forest_report = verify_forest_theorem(&scope, &caps, max_threads()).unwrap();

    let divisibility = forest_report
        .verdicts
        .iter()
        .find(|v| v.name == "orbit-size-divisibility")
        .unwrap();
    assert!(divisibility.pass, "{:?}", divisibility.counterexample);
    let power = forest_report
        .verdicts
        .iter()
        .find(|v| v.name == "toric-power-identity")
        .unwrap();
    assert!(power.pass, "{:?}", power.counterexample);

    let cpro_report = verify_cpro_order(&scope, &caps, max_threads()).unwrap();
    assert!(cpro_report.pass, "cpro orbits: {cpro_report}");

    println!(
        "acceptance 05 tree power identities (toric power fixes all, sizes divide by n-1, cpro orbits have size n): PASS"
    );
}

#[test]
fn acceptance_06_operator_identities() {
    let caps = Caps::default();
    let scope = IdentityScope::default();
    let started = Instant::now();
    let report = verify_operator_identities(&scope, &caps).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(report.verdicts.len(), 7);
    assert!(report.pass, "operator identities: {report}");

    println!(
        "acceptance 06 operator identities (shift relation, power factoring, slides, commutation): PASS ({:.3}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_07_flip_class_and_component_structure() {
    let caps = Caps::default();
    let started = Instant::now();
    let report = verify_fs_structure(5, 5, &caps, 1).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(report.connected_graphs, 1 + 1 + 4 + 38 + 728);
    assert_eq!(report.forests, 1 + 2 + 7 + 38 + 291);
    assert!(report.pass, "structure sweep: {report}");

    println!(
        "acceptance 07 flip classes split into nu double-flip classes; components match extension sets and chain under the shift: PASS ({:.3}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_08_zeta_order_survey() {
    let caps = Caps::default();
    let started = Instant::now();
    let report = zeta_survey(4, 8, &caps, max_threads()).unwrap();
    let elapsed = started.elapsed();

    let expected_rows: usize = (4..=8).map(|n| n / 2).sum();
    assert_eq!(report.rows.len(), expected_rows);
    for row in &report.rows {
        if row.h == 1 {
            assert!(
                row.matches && row.computed_order == (row.n - 1).to_string(),
                "h = 1 row must equal n - 1: {row:?}"
            );
        }
        println!(
            "  zeta order n={} h={}: computed {} expected {} match {}",
            row.n, row.h, row.computed_order, row.expected_order, row.matches
        );
    }
    assert!(report.pass);

    println!(
        "acceptance 08 zeta order survey (paths n = 4..=8, all rows reported, h = 1 exact; all match: {}): PASS ({:.3}s)",
        report.all_match,
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_09_threaded_determinism() {
    let caps = Caps::default();
    let threads = max_threads();

    // Census report for the promotion order run.
    let single = census(&path(7), &OperatorSpec::Promotion, &caps, 1).unwrap();
    let many = census(&path(7), &OperatorSpec::Promotion, &caps, threads).unwrap();
    let single_json =
        CensusReport::new("path:7".into(), "pro".into(), &single, Vec::new(), DEFAULT_SEED)
            .to_json();
    let many_json =
        CensusReport::new("path:7".into(), "pro".into(), &many, Vec::new(), DEFAULT_SEED).to_json();
    assert_eq!(single_json, many_json);

    // Tree orbit-size report.
    let scope = VerificationScope::trees(7, DEFAULT_SEED);
    let single_json = report_json(&verify_forest_theorem(&scope, &caps, 1).unwrap());
    let many_json = report_json(&verify_forest_theorem(&scope, &caps, threads).unwrap());
    assert_eq!(single_json, many_json);

    // Structure sweep report.
    let single_json = report_json(&verify_fs_structure(5, 5, &caps, 1).unwrap());
    let many_json = report_json(&verify_fs_structure(5, 5, &caps, threads).unwrap());
    assert_eq!(single_json, many_json);

    println!(
        "acceptance 09 byte-identical JSON reports with 1 and {threads} threads: PASS"
    );
}
