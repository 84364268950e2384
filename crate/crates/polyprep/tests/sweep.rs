use polyprep::circuit::{compute_metrics, export_circuit, import_circuit};
use polyprep::linear::build_u_linear;
use polyprep::sweep::{doubling, fit_log2, scaling_sweep, SweepTarget, CSV_HEADER};

#[test]
fn depth_is_logarithmic() {
    let s = scaling_sweep(&[4, 8, 16, 32, 64], SweepTarget::Depth).unwrap();
    assert!(s.fit.r_squared >= 0.99, "{:?}", s.fit);
    assert!(s.fit.alpha > 0.0);
    assert!(s.rows.windows(2).all(|w| w[0].depth < w[1].depth));
}

#[test]
fn size_per_qubit_is_bounded() {
    let s = scaling_sweep(&doubling(4, 128), SweepTarget::Size).unwrap();
    for r in &s.rows {
        let ratio = r.size as f64 / r.n as f64;
        assert!((15.0..=50.0).contains(&ratio), "n={} ratio={ratio}", r.n);
    }
    for r in &s.rows {
        assert_eq!(r.ancillae, 2 * r.n + 4);
    }
}

#[test]
fn success_column_converges() {
    let s = scaling_sweep(&(1..=16).collect::<Vec<_>>(), SweepTarget::SuccessProb).unwrap();
    let at12 = s.rows.iter().find(|r| r.n == 12).unwrap();
    assert!((at12.success - 0.3957).abs() <= 5e-4);
    assert!(s.rows.iter().all(|r| r.p_n >= 1.0 / 6.0));
    assert!((s.rows[0].p_n - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn csv_layout() {
    let s = scaling_sweep(&[2, 3], SweepTarget::Depth).unwrap();
    let csv = s.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,"));
    assert_eq!(lines[2].split(',').count(), 6);
}

#[test]
fn fit_recovers_exact_line() {
    let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&n: &f64| (n, 3.0 * n.log2() + 1.0))
        .collect();
    let f = fit_log2(&pts);
    assert!((f.alpha - 3.0).abs() < 1e-12 && (f.beta - 1.0).abs() < 1e-12);
    assert!((f.r_squared - 1.0).abs() < 1e-12);
}

#[test]
fn rejects_unsorted() {
    assert!(scaling_sweep(&[8, 4], SweepTarget::Depth).is_err());
    assert!(scaling_sweep(&[], SweepTarget::Depth).is_err());
    assert_eq!(doubling(4, 64), vec![4, 8, 16, 32, 64]);
}

#[test]
fn columns_recomputable_from_json() {
    let s = scaling_sweep(&[3, 6, 12], SweepTarget::Depth).unwrap();
    for r in &s.rows {
        let text = export_circuit(&build_u_linear(r.n).unwrap().circuit);
        let m = compute_metrics(&import_circuit(&text).unwrap());
        assert_eq!(
            (m.depth, m.size, m.ancilla_count),
            (r.depth, r.size, r.ancillae)
        );
    }
}
