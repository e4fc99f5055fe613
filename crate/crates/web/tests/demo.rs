use weakspin::calibration::DEFAULT_DEVIATION_TOLERANCE;
use weakspin_web::demo::{detector_profiles, limit_scan, weak_curves};

#[test]
fn curves_cover_full_turn() {
    let c = weak_curves(2.9, 361).unwrap();
    assert_eq!(c.phi.len(), 361);
    assert_eq!(c.im[0], 0.0);
    assert!((c.re[0] - 1.45f64.tan()).abs() < 1e-12);
    assert!(weak_curves(2.9, 1).is_err());
}

#[test]
fn profiles_at_table_values() {
    let p = detector_profiles(2.9, 0.0, 0.37, 1717.0, 0.5, 2048).unwrap();
    assert_eq!(p.z_um.len(), 2048);
    assert!((p.displacement_um - 17.1).abs() < 0.3);
    assert!((p.mean_first_order_um + p.displacement_um).abs() < 0.05);
    assert!(p.mean_exact_um.abs() < p.mean_first_order_um.abs());
    // densities in 1/µm integrate to the post-selection probability
    let dz = p.z_um[1] - p.z_um[0];
    let w: f64 = p.first_order.iter().sum::<f64>() * dz;
    assert!((w - p.post_selection_probability).abs() / p.post_selection_probability < 1e-3);
    assert!(detector_profiles(2.9, 0.0, 0.37, -1.0, 0.5, 2048).is_err());
}

#[test]
fn scan_reports_crossover() {
    let s = limit_scan(2.9, DEFAULT_DEVIATION_TOLERANCE).unwrap();
    assert_eq!(s.limits.len(), 150);
    assert!((s.max_limit - 0.37).abs() < 1e-9);
    assert!(s.exact_um.iter().all(|v| *v > 0.0));
    assert!(limit_scan(2.9, 1e-9).unwrap().max_limit.is_nan());
}
