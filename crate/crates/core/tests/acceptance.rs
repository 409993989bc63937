//! One test per acceptance criterion. Each prints a single PASS or FAIL line
//! straight to stdout, so the verdicts show up even when output is captured.
//!
//! A criterion may fail only through the claims listed in `KNOWN_FAILURES`;
//! anything else failing, or a listed claim passing, fails the test.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;

use octgroup::catalog::{verify_all, Catalog, ClaimResult, ClaimStatus, ReferenceData, VerificationReport};

/// Claims that cannot pass as printed: the listed A generates 384 elements,
/// the listed delta generates 1344, and two listed tensor sums have the wrong
/// dimension.
const KNOWN_FAILURES: [&str; 6] = [
    "orders.2^3.S4",
    "orders.PSL2(7)-second",
    "tensor.2^3.PSL2(7).7_2x8.L72",
    "tensor.2^3.PSL2(7).8x8.L81",
    "tensor.2^3:PSL2(7).7_2x8.L72",
    "tensor.2^3:PSL2(7).8x8.L81",
];

fn report() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| verify_all(&Catalog::new(ReferenceData::embedded()), None))
}

fn claims(prefixes: &[&str]) -> Vec<&'static ClaimResult> {
    report().claims.iter().filter(|c| prefixes.iter().any(|p| c.claim_id.starts_with(p))).collect()
}

fn claim(id: &str) -> &'static ClaimResult {
    report().claims.iter().find(|c| c.claim_id == id).unwrap_or_else(|| panic!("no claim {id}"))
}

fn criterion(n: u32, title: &str, selected: &[&ClaimResult]) {
    assert!(!selected.is_empty(), "criterion {n} selects no claims");
    let failed: Vec<&str> =
        selected.iter().filter(|c| c.status == ClaimStatus::Fail).map(|c| c.claim_id.as_str()).collect();
    let flagged = selected.iter().filter(|c| c.status == ClaimStatus::Flagged).count();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {n:>2} {verdict} {title}: {} claims, {flagged} flagged", selected.len());
    if !failed.is_empty() {
        line.push_str(&format!(", failing {}", failed.join(", ")));
    }
    writeln!(std::io::stdout().lock(), "{line}").unwrap();

    let known: BTreeSet<&str> = KNOWN_FAILURES.into_iter().collect();
    let unexpected: Vec<&&ClaimResult> =
        selected.iter().filter(|c| c.status == ClaimStatus::Fail && !known.contains(c.claim_id.as_str())).collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:#?}");
    for c in selected.iter().filter(|c| known.contains(c.claim_id.as_str())) {
        assert_eq!(c.status, ClaimStatus::Fail, "{} now passes; update KNOWN_FAILURES", c.claim_id);
    }
}

#[test]
fn criterion_01_group_orders() {
    let selected = claims(&["orders."]);
    assert!(claim("orders.2^3.S4").computed.contains("got 384"));
    assert!(claim("orders.PSL2(7)-second").computed.contains("got 1344"));
    criterion(1, "group orders", &selected);
}

#[test]
fn criterion_02_classes() {
    let selected = claims(&["classes."]);
    for name in ["7:3", "2^3:7:3", "2^3.PSL2(7)", "2^3:PSL2(7)", "4.S4:2", "4:S4:2", "2^3.S4", "2^3:S4", "2^3.S4-pairs"]
    {
        assert_eq!(claim(&format!("classes.{name}")).status, ClaimStatus::Pass, "{name}");
    }
    criterion(2, "class counts and sizes", &selected);
}

#[test]
fn criterion_03_character_tables() {
    let selected = claims(&["chartab."]);
    for id in ["chartab.2^3.S4.2.C2", "chartab.2^3:S4.2.C2", "chartab.PSL2(7).size.C5", "chartab.PSL2(7).size.C6"] {
        let c = claim(id);
        assert_eq!(c.status, ClaimStatus::Flagged, "{id}");
        assert!(!c.computed.is_empty());
    }
    criterion(3, "character tables", &selected);
}

#[test]
fn criterion_04_shared_table() {
    assert!(claim("shared.order8").computed.contains("336 and 0"));
    criterion(4, "shared table, distinct groups", &claims(&["shared."]));
}

#[test]
fn criterion_05_extension_type() {
    criterion(5, "extension type", &claims(&["complement."]));
}

#[test]
fn criterion_06_two_psl2() {
    let mut selected = claims(&["psl2.", "relations.delta", "orders.PSL2(7)-second"]);
    selected.extend(claims(&["classes.PSL2(7)"]));
    criterion(6, "two PSL2(7) subgroups", &selected);
}

#[test]
fn criterion_07_octonion_automorphisms() {
    criterion(7, "octonion automorphisms", &claims(&["automorphism."]));
}

#[test]
fn criterion_08_tensor_products() {
    let selected = claims(&["tensor."]);
    assert_eq!(claim("tensor.2^3.PSL2(7).3_1x7_2.L41").status, ClaimStatus::Flagged);
    criterion(8, "tensor products", &selected);
}

#[test]
fn criterion_09_branchings() {
    assert_eq!(claim("branch.7:3.natural").computed, "1 + 3_1 + 3_2");
    criterion(9, "branching rules", &claims(&["branch."]));
}

#[test]
fn criterion_10_quaternion_construction() {
    criterion(10, "quaternion construction", &claims(&["quaternion.", "orders.pair_group", "classes.2^3.S4-pairs"]));
}

#[test]
fn criterion_11_properties() {
    criterion(11, "property suites", &claims(&["properties.", "relations."]));
}
