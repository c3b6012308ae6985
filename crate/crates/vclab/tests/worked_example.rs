#[test]
fn worked_example_end_to_end() {
    let start = std::time::Instant::now();
    let report = vclab::dihedral::run_worked_example().unwrap();
    println!("report: {report:#?}");
    println!("elapsed: {:?}", start.elapsed());
    assert!(!report.condition_holds);
    assert!(report.typed_witness_hits_rhs);
    assert!(report.translated_witness_hits_rhs);
    assert_eq!(report.assignments_scanned, 810_000);
    assert!(report.unsolvable_in_h);
    assert!(report.case_split_consistent);
    assert_eq!(report.retraction, "ABSENT");
    assert!(report.inverse_variant_rejected);
    assert!(report.doubling_identity);
    assert!(report.unique_factorization);
}
