use fdeg_browser::demo;

#[test]
fn curve_hits_known_value() {
    // m=2, d=2, t=2, a=1 has degree 52/3 at q = 3
    let c = demo::degree_curve(2, 2, 2, 1, 2.0, 4.0, 3).unwrap();
    assert_eq!(c[2], 3.0);
    assert!((c[3] - 52.0 / 3.0).abs() < 1e-12);
}

#[test]
fn mu_curve_is_even_in_y() {
    let n = 40;
    let c = demo::mu_unitary(2, 2, 1, 2, 3.0, n).unwrap();
    for k in 1..n as usize {
        let (a, b) = (c[2 * k + 1], c[2 * (n as usize - k) + 1]);
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "k={k}");
    }
}

#[test]
fn contour_d3_reports_every_level() {
    let v = demo::contour_terms(1, 3, 1, 0, 2.0, 32).unwrap();
    assert_eq!(v.len(), 6);
    assert!(v.iter().all(|x| x.is_finite()));
}

#[test]
fn errors_are_messages() {
    let e = demo::degree_text(1, 0, 1, 0).unwrap_err();
    assert!(e.contains("d must be >= 1"), "{e}");
}
