use oc_core::experiments::{batch_gap_study, generate, Aggregates, Family, ShapeKind, ShapeSpec};
use oc_core::rng::SplitMix64;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn rng_reference_stream() {
    let mut r = SplitMix64::new(1234567);
    assert_eq!(r.next_u64(), 6457827717110365317);
    assert_eq!(r.next_u64(), 3203168211198807973);
}

#[test]
fn studies_do_not_depend_on_thread_count() {
    for (kind, family) in [
        (ShapeKind::Quadrilateral, Family::Ellipse),
        (ShapeKind::Triangle, Family::Iso),
        (ShapeKind::Parallelogram, Family::Rect),
    ] {
        let spec = ShapeSpec::new(kind, 11, 24);
        let a = in_pool(1, || batch_gap_study(&spec, family).unwrap());
        let b = in_pool(3, || batch_gap_study(&spec, family).unwrap());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_eq!(a.summary_json(), b.summary_json());
    }
}

#[test]
fn aggregates_recompute_exactly() {
    let spec = ShapeSpec::new(ShapeKind::Triangle, 3, 60);
    for family in [Family::Rect, Family::Right, Family::Ellipse] {
        let s = batch_gap_study(&spec, family).unwrap();
        assert_eq!(Aggregates::from_records(&s.records, family), s.aggregates);
        assert_eq!(s.aggregates.histogram.len(), 90);
        assert_eq!(s.aggregates.histogram.iter().sum::<usize>(), 60 - s.aggregates.failures);
        let max = s.records.iter().filter_map(|r| r.gap_degrees).fold(0.0, f64::max);
        assert_eq!(max, s.aggregates.max_gap);
    }
    let s = batch_gap_study(&ShapeSpec::new(ShapeKind::Triangle, 3, 10), Family::Iso).unwrap();
    assert_eq!(s.aggregates.histogram.len(), 180);
}

#[test]
fn ellipse_study_reports_auxiliary_gaps() {
    let t = batch_gap_study(&ShapeSpec::new(ShapeKind::Triangle, 1, 10), Family::Ellipse).unwrap();
    assert!(t.records.iter().all(|r| r.gap_vs_longest_side.is_some() && r.gap_vs_diameter.is_none()));
    let q = batch_gap_study(&ShapeSpec::new(ShapeKind::Quadrilateral, 1, 10), Family::Ellipse).unwrap();
    assert!(q.records.iter().all(|r| r.gap_vs_diameter.is_some() && r.gap_vs_longest_side.is_none()));
    assert!(q.aggregates.max_center_distance.is_some());
}

#[test]
fn generation_is_prefix_stable() {
    let short = generate(&ShapeSpec::new(ShapeKind::ConvexNgon(9), 5, 10)).unwrap();
    let long = generate(&ShapeSpec::new(ShapeKind::ConvexNgon(9), 5, 30)).unwrap();
    assert_eq!(short[..], long[..10]);
}
