use nalgebra::DMatrix;
use num_complex::Complex64;
use polyprep::circuit::{compute_metrics, Control, Role};
use polyprep::linear::{
    beta_amplitudes, build_prepare, build_select, build_u_aff, build_u_linear, compute_pn,
    compute_success_prob, l_n_diagonal, pauli_sum_diagonal, LinearLayout,
};
use polyprep::sim::{
    extract_block, extract_block_fast, extract_column_fixed_system, extract_diagonal, inner,
    StateVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_diag(block: &DMatrix<Complex64>, want: &[f64], tol: f64) {
    for i in 0..want.len() {
        for j in 0..want.len() {
            let w = if i == j { want[i] } else { 0.0 };
            assert!(
                (block[(i, j)] - Complex64::new(w, 0.0)).norm() <= tol,
                "({i},{j}) {} vs {w}",
                block[(i, j)]
            );
        }
    }
}

#[test]
fn pauli_identity_up_to_sixteen() {
    for n in 1..=16 {
        let lhs = pauli_sum_diagonal(n);
        for (l, p) in l_n_diagonal(n).iter().zip(lhs) {
            assert!((1.0 - 2.0 * l - p).abs() <= 1e-14);
        }
        assert_eq!(l_n_diagonal(n).last().copied(), Some(1.0));
    }
}

#[test]
fn u_aff_small_blocks() {
    assert_diag(
        &extract_block(&build_u_aff(1).unwrap()).unwrap(),
        &[1.0, 1.0 / 3.0],
        1e-12,
    );
    assert_diag(
        &extract_block(&build_u_aff(2).unwrap()).unwrap(),
        &[1.0, 11.0 / 15.0, 7.0 / 15.0, 1.0 / 5.0],
        1e-12,
    );
    let want: Vec<f64> = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]
        .iter()
        .map(|x| 0.4 * x)
        .collect();
    assert_diag(
        &extract_block(&build_u_linear(2).unwrap()).unwrap(),
        &want,
        1e-12,
    );
}

#[test]
fn blocks_up_to_five() {
    for n in 1..=5 {
        let p = compute_pn(n);
        let l = l_n_diagonal(n);
        let aff: Vec<f64> = l.iter().map(|x| 1.0 - 2.0 * p * x).collect();
        assert_diag(
            &extract_block(&build_u_aff(n).unwrap()).unwrap(),
            &aff,
            1e-10,
        );
        let lin: Vec<f64> = l.iter().map(|x| p * x).collect();
        assert_diag(
            &extract_block(&build_u_linear(n).unwrap()).unwrap(),
            &lin,
            1e-10,
        );
    }
}

#[test]
fn single_run_diagonal_matches_columns() {
    for n in [2usize, 4] {
        for enc in [build_u_aff(n).unwrap(), build_u_linear(n).unwrap()] {
            let slow = extract_block(&enc).unwrap();
            let fast = extract_diagonal(&enc).unwrap().expect("system-diagonal");
            for (i, v) in fast.iter().enumerate() {
                assert!((v - slow[(i, i)]).norm() < 1e-12);
            }
        }
    }
    let n = 6;
    let p = compute_pn(n);
    let l = l_n_diagonal(n);
    let lin: Vec<f64> = l.iter().map(|x| p * x).collect();
    assert_diag(
        &extract_block_fast(&build_u_linear(n).unwrap()).unwrap(),
        &lin,
        1e-10,
    );
}

#[test]
fn spot_columns_at_seven_and_eight() {
    for n in [3usize, 7, 8] {
        let p = compute_pn(n);
        let l = l_n_diagonal(n);
        let cols: Vec<usize> = if n == 3 {
            (0..8).collect()
        } else {
            vec![1, 90, (1 << n) - 1]
        };
        for (enc, lin) in [
            (build_u_aff(n).unwrap(), false),
            (build_u_linear(n).unwrap(), true),
        ] {
            for &j in &cols {
                let col = extract_column_fixed_system(&enc, j)
                    .unwrap()
                    .expect("reducible");
                let w = if lin { p * l[j] } else { 1.0 - 2.0 * p * l[j] };
                for (i, v) in col.iter().enumerate() {
                    let want = if i == j { w } else { 0.0 };
                    assert!(
                        (v - Complex64::new(want, 0.0)).norm() <= 1e-10,
                        "n={n} col={j} row={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn prepare_flag_branch() {
    for n in 1..=10 {
        let c = build_prepare(n).unwrap();
        let mut s = StateVector::zero(c.width()).unwrap();
        s.apply_circuit(&c).unwrap();
        let flag = c.layout.get(Role::Flag)[0];
        let control = c.layout.get(Role::Control).to_vec();
        let scratch = c.layout.get(Role::Scratch).to_vec();
        assert!((s.probability(&[flag], &[true]) - compute_pn(n)).abs() <= 1e-10);
        assert!(s.probability(&scratch, &[false, false]) > 1.0 - 1e-12);
        let (post, _) = s.postselect(&[flag], &[true]).unwrap();
        let beta = beta_amplitudes(n);
        let amps = post.amplitudes();
        let w = c.width();
        for (idx, a) in amps.iter().enumerate() {
            let ctrl: usize = control.iter().map(|&q| idx >> (w - 1 - q) & 1).sum();
            let onehot_k = control.iter().position(|&q| idx >> (w - 1 - q) & 1 == 1);
            let want = if idx >> (w - 1 - flag) & 1 == 1 && ctrl == 1 && idx & 0b11 == 0 {
                beta[onehot_k.unwrap()]
            } else {
                0.0
            };
            assert!(
                (a - Complex64::new(want, 0.0)).norm() <= 1e-10,
                "n={n} idx={idx:b}"
            );
        }
        let (rest, _) = s.postselect(&[flag], &[false]).unwrap();
        for (idx, a) in rest.amplitudes().iter().enumerate() {
            let ctrl: usize = control.iter().map(|&q| idx >> (w - 1 - q) & 1).sum();
            if ctrl == 1 {
                assert!(a.norm() <= 1e-12);
            }
        }
    }
}

#[test]
fn select_actions() {
    let n = 3;
    let c = build_select(n).unwrap();
    let w = c.width();
    let sys = c.layout.get(Role::System).to_vec();
    for flag in [false, true] {
        for k in 0..n {
            for x in 0..1usize << n {
                let mut idx = 0usize;
                if flag {
                    idx |= 1 << (w - 1);
                }
                idx |= 1 << (w - 2 - k);
                for (j, &q) in sys.iter().enumerate() {
                    if x >> (n - 1 - j) & 1 == 1 {
                        idx |= 1 << (w - 1 - q);
                    }
                }
                let mut s = StateVector::basis(w, idx).unwrap();
                s.apply_circuit(&c).unwrap();
                let sign = if flag && x >> (n - 1 - k) & 1 == 1 {
                    -1.0
                } else {
                    1.0
                };
                assert!((s.amplitudes()[idx] - Complex64::new(sign, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn u_aff_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        let c = build_u_aff(n).unwrap().circuit;
        let w = c.width();
        let amps: Vec<Complex64> = (0..1usize << w)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let s0 =
            StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();
        let mut s = s0.clone();
        s.apply_circuit(&c).unwrap();
        s.apply_circuit(&c).unwrap();
        assert!((inner(s0.amplitudes(), s.amplitudes()).re - 1.0).abs() < 1e-10);
    }
}

#[test]
fn pivot_control_matches_generic_control() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        let lay = LinearLayout::new(n, true);
        let aff = polyprep::linear::u_aff_circuit(
            &lay,
            &polyprep::linear::prepare_circuit(&lay).unwrap(),
        )
        .unwrap();
        let a = Control::on(0);
        let fast = aff.controlled_pivots(a).unwrap();
        let slow = aff.controlled(a).unwrap();
        let w = lay.width;
        let copy_mask: usize = lay.copy.iter().map(|&q| 1usize << (w - 1 - q)).sum();
        for _ in 0..3 {
            let amps: Vec<Complex64> = (0..1usize << w)
                .map(|i| {
                    if i & copy_mask != 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                    }
                })
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let s0 =
                StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();
            let mut s1 = s0.clone();
            s1.apply_circuit(&fast).unwrap();
            let mut s2 = s0;
            s2.apply_circuit(&slow).unwrap();
            let d: f64 = s1
                .amplitudes()
                .iter()
                .zip(s2.amplitudes())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum();
            assert!(d.sqrt() < 1e-10, "n={n} d={d}");
        }
    }
}

#[test]
fn overlap_analytics() {
    for n in 1..=64 {
        assert!(compute_pn(n) >= 1.0 / 6.0);
    }
    assert!((compute_pn(64) - 0.4194).abs() < 1e-4);
    for n in 12..=30 {
        assert!((compute_success_prob(n) - 0.3957).abs() <= 5e-4);
    }
}

#[test]
fn linear_overhead_is_constant() {
    let diffs: Vec<isize> = (1..=24)
        .map(|n| {
            let a = compute_metrics(&build_u_aff(n).unwrap().circuit).depth as isize;
            let l = compute_metrics(&build_u_linear(n).unwrap().circuit).depth as isize;
            l - a
        })
        .collect();
    assert!(diffs.iter().all(|d| (0..=4).contains(d)), "{diffs:?}");
}

mod analytics {
    use polyprep::circuit::compute_metrics;
    use polyprep::linear::*;

    #[test]
    fn small_overlaps() {
        assert!((compute_pn(1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((compute_pn(2) - 2.0 / 5.0).abs() < 1e-15);
    }

    #[test]
    fn pn_matches_overlap_sum() {
        for n in 1..=12 {
            let theta = alpha_angles(n);
            let amp1: Vec<f64> = theta.iter().map(|t| (t / 2.0).sin()).collect();
            let amp0: Vec<f64> = theta.iter().map(|t| (t / 2.0).cos()).collect();
            let mut sum = 0.0;
            for k in 0..n {
                let mut a = 1.0;
                for j in 0..n {
                    a *= if j == k { amp1[j] } else { amp0[j] };
                }
                sum += a * a;
            }
            assert!((sum - compute_pn(n)).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn success_prob_matches_direct_sum() {
        for n in 1..=10 {
            let p = compute_pn(n);
            let direct: f64 = l_n_diagonal(n)
                .iter()
                .map(|l| (1.0 - 2.0 * p * l).powi(2))
                .sum::<f64>()
                / (1u64 << n) as f64;
            assert!((direct - compute_success_prob(n)).abs() < 1e-13);
        }
    }

    #[test]
    fn first_amplitude_pair() {
        let t = alpha_angles(1)[0];
        assert!(((t / 2.0).cos() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(((t / 2.0).sin() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn alpha_layer_is_one_layer() {
        for n in 1..=12 {
            let m = compute_metrics(&build_alpha_layer(n).unwrap());
            assert_eq!((m.depth, m.size), (1, n));
        }
    }

    #[test]
    fn layout_order() {
        let lay = LinearLayout::new(3, true);
        assert_eq!(lay.a, Some(0));
        assert_eq!(lay.flag, 1);
        assert_eq!(lay.control, vec![2, 3, 4]);
        assert_eq!(lay.copy, vec![5, 6, 7]);
        assert_eq!(lay.scratch, vec![8, 9]);
        assert_eq!(lay.system, vec![10, 11, 12]);
        assert_eq!(lay.width, 13);
        assert_eq!(LinearLayout::new(3, false).width, 12);
    }
}
