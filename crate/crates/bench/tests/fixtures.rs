use cubefree_bench::scattered_set;

#[test]
fn scattered_sets_are_deterministic() {
    assert_eq!(scattered_set(40, 0.5, 7), scattered_set(40, 0.5, 7));
    assert_ne!(scattered_set(40, 0.5, 7), scattered_set(40, 0.5, 8));
}

#[test]
fn density_extremes() {
    assert!(scattered_set(50, 0.0, 1).len() <= 1);
    assert_eq!(scattered_set(50, 1.0, 1).len(), 50);
    let half = scattered_set(1000, 0.5, 3).len();
    assert!((400..600).contains(&half), "{half}");
}
