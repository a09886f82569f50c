//! Structural properties of the SMO trainer: KKT conditions, dual balance,
//! oracle agreement on hand-picked problems, and invariance to sample
//! storage order.

mod common;

use trialkit::rng::CounterRng;
use trialkit::svm::{train_linear_svm, SvmParams};

fn random_instance(rng: &mut CounterRng, max_n: usize, k: usize) -> (Vec<f64>, Vec<f64>) {
    let n = 10 + rng.next_index(max_n - 9);
    let separation = 0.3 + 1.5 * rng.next_unit();
    common::blob_instance(rng, n, k, separation)
}

#[test]
fn kkt_conditions_hold_on_random_instances() {
    let mut rng = CounterRng::substream(811, 0);
    for trial in 0..25 {
        let k = 1 + rng.next_index(8);
        let (x, y) = random_instance(&mut rng, 200, k);
        let params = SvmParams::default();
        let model = train_linear_svm(&x, k, &y, &params).unwrap();
        assert!(
            model.convergence.converged,
            "instance {trial} did not converge: {:?}",
            model.convergence
        );
        // balance
        let balance: f64 = model.alphas.iter().zip(&y).map(|(a, yi)| a * yi).sum();
        assert!(
            balance.abs() <= 1e-6 * params.c * y.len() as f64,
            "instance {trial}: balance {balance}"
        );
        // boxed duals
        for (i, &a) in model.alphas.iter().enumerate() {
            assert!(
                (-1e-12..=params.c + 1e-12).contains(&a),
                "instance {trial}: alpha[{i}] = {a} out of box"
            );
        }
        // per-sample KKT at tol
        for i in 0..y.len() {
            let f = model.decision_value(&x[i * k..(i + 1) * k]).unwrap();
            let r = y[i] * f - 1.0;
            let a = model.alphas[i];
            if a <= params.alpha_eps {
                assert!(
                    r >= -params.tol,
                    "instance {trial}: zero-dual sample {i} has margin {r}"
                );
            } else if a >= params.c - params.alpha_eps {
                assert!(
                    r <= params.tol,
                    "instance {trial}: bound sample {i} has margin {r}"
                );
            } else {
                assert!(
                    r.abs() <= params.tol,
                    "instance {trial}: free sample {i} off margin by {r}"
                );
            }
        }
    }
}

#[test]
fn weights_match_dual_expansion() {
    let mut rng = CounterRng::substream(812, 0);
    let (x, y) = random_instance(&mut rng, 80, 4);
    let model = train_linear_svm(&x, 4, &y, &SvmParams::default()).unwrap();
    let mut expansion = [0.0; 4];
    for i in 0..y.len() {
        for (d, acc) in expansion.iter_mut().enumerate() {
            *acc += model.alphas[i] * y[i] * x[i * 4 + d];
        }
    }
    for (d, value) in expansion.iter().enumerate() {
        assert!(
            (value - model.weights[d]).abs() < 1e-9,
            "w[{d}] {} vs expansion {value}",
            model.weights[d],
        );
    }
}

#[test]
fn agrees_with_projected_gradient_on_spot_checks() {
    // A couple of fixed problems, one separable and one with violators.
    let cases: Vec<(Vec<f64>, usize, Vec<f64>, f64)> = vec![
        (
            vec![-2.0, -1.5, 1.5, 2.0],
            1,
            vec![-1.0, -1.0, 1.0, 1.0],
            1.0,
        ),
        (
            vec![
                0.1, 0.3, -0.4, 0.9, 0.7, -0.2, -0.6, 0.2, -0.9, -0.1, 0.5, -0.8,
            ],
            2,
            vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0],
            2.0,
        ),
    ];
    for (x, k, y, c) in cases {
        let params = SvmParams {
            tol: 1e-9,
            ..SvmParams::with_c(c)
        };
        let model = train_linear_svm(&x, k, &y, &params).unwrap();
        let oracle = common::pg_solve_dual(&x, k, &y, c);
        let smo_obj = common::pg_dual_objective(&model.alphas, &x, k, &y);
        let pg_obj = common::pg_dual_objective(&oracle, &x, k, &y);
        assert!(
            (smo_obj - pg_obj).abs() < 1e-6,
            "objective mismatch: smo {smo_obj} vs pg {pg_obj}"
        );
        let pg_support: Vec<usize> = (0..y.len())
            .filter(|&i| oracle[i] > params.alpha_eps)
            .collect();
        assert_eq!(model.support_indices(), pg_support.as_slice());
    }
}

#[test]
fn support_subset_retraining_reproduces_model() {
    let mut rng = CounterRng::substream(813, 0);
    let (x, y) = common::blob_instance(&mut rng, 120, 6, 0.8);
    let params = SvmParams {
        tol: 1e-6,
        ..SvmParams::default()
    };
    let full = train_linear_svm(&x, 6, &y, &params).unwrap();
    let support = full.support_indices();
    let mut sub_x = Vec::new();
    let mut sub_y = Vec::new();
    for &i in support {
        sub_x.extend_from_slice(&x[i * 6..(i + 1) * 6]);
        sub_y.push(y[i]);
    }
    let sub = train_linear_svm(&sub_x, 6, &sub_y, &params).unwrap();
    let scale = full
        .weights
        .iter()
        .chain(std::iter::once(&full.bias))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    for d in 0..6 {
        assert!(
            (full.weights[d] - sub.weights[d]).abs() <= 1e-4 * scale,
            "w[{d}]: {} vs {}",
            full.weights[d],
            sub.weights[d]
        );
    }
    assert!(
        (full.bias - sub.bias).abs() <= 1e-4 * scale,
        "bias: {} vs {}",
        full.bias,
        sub.bias
    );
}

#[test]
fn storage_order_does_not_change_the_solution() {
    let mut rng = CounterRng::substream(814, 0);
    let k = 3;
    let (x, y) = common::blob_instance(&mut rng, 40, k, 0.6);
    let n = y.len();
    let params = SvmParams::default();
    let base = train_linear_svm(&x, k, &y, &params).unwrap();

    // deterministic permutation: reverse order
    let perm: Vec<usize> = (0..n).rev().collect();
    let mut px = Vec::with_capacity(x.len());
    let mut py = Vec::with_capacity(n);
    for &src in &perm {
        px.extend_from_slice(&x[src * k..(src + 1) * k]);
        py.push(y[src]);
    }
    let permuted = train_linear_svm(&px, k, &py, &params).unwrap();

    for d in 0..k {
        assert!(
            (base.weights[d] - permuted.weights[d]).abs() < 1e-8,
            "w[{d}] changed under permutation"
        );
    }
    assert!((base.bias - permuted.bias).abs() < 1e-8, "bias changed");
    // support sets agree as sets of original samples
    let mut mapped: Vec<usize> = permuted
        .support_indices()
        .iter()
        .map(|&stored| perm[stored])
        .collect();
    mapped.sort_unstable();
    assert_eq!(base.support_indices(), mapped.as_slice());
}

#[test]
fn duplicated_rows_do_not_break_oracle_agreement() {
    // base row plus two exact copies on the positive side
    let x = vec![
        -1.2, 0.4, //
        -0.9, -0.3, //
        0.8, 0.5, //
        0.8, 0.5, //
        0.8, 0.5, //
        1.4, -0.6,
    ];
    let y = vec![-1.0, -1.0, 1.0, 1.0, 1.0, 1.0];
    let params = SvmParams {
        tol: 1e-9,
        ..SvmParams::default()
    };
    let model = train_linear_svm(&x, 2, &y, &params).unwrap();
    let oracle = common::pg_solve_dual(&x, 2, &y, 1.0);
    let smo_obj = common::pg_dual_objective(&model.alphas, &x, 2, &y);
    let pg_obj = common::pg_dual_objective(&oracle, &x, 2, &y);
    assert!((smo_obj - pg_obj).abs() < 1e-6);
    assert!((model.alphas[2] - model.alphas[3]).abs() < 1e-12);
    assert!((model.alphas[3] - model.alphas[4]).abs() < 1e-12);
    let pg_support: Vec<usize> = (0..6).filter(|&i| oracle[i] > params.alpha_eps).collect();
    assert_eq!(model.support_indices(), pg_support.as_slice());
}
