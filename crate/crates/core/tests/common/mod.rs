//! Shared test support: an independent projected-gradient solver for the
//! SVM dual (the reference the SMO implementation is checked against),
//! deterministic instance generators, and scratch-file helpers.

#![allow(dead_code)]

use std::path::PathBuf;

use trialkit::rng::CounterRng;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projected-gradient solver for
/// `min 1/2 a'Qa - 1'a  s.t.  0 <= a <= c,  y'a = 0`
/// with `Q_ij = y_i y_j <x_i, x_j>`.
///
/// Accelerated (FISTA-style) projected gradient with step 1/L and adaptive
/// restart; plain steps alone crawl along the nearly flat valleys that
/// near-duplicate samples create. Runs until the fixed-point residual
/// `|P(a - grad/L) - a|` drops below 1e-13, which leaves the iterate within
/// about 1e-10 of the optimum on these small instances. Built independently
/// of the SMO code path.
pub fn pg_solve_dual(x: &[f64], n_features: usize, y: &[f64], c: f64) -> Vec<f64> {
    let n = y.len();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            q[i * n + j] = y[i]
                * y[j]
                * dot(
                    &x[i * n_features..(i + 1) * n_features],
                    &x[j * n_features..(j + 1) * n_features],
                );
        }
    }
    let lipschitz = (0..n)
        .map(|i| q[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let step = 1.0 / lipschitz;
    let gradient = |a: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let mut g = -1.0;
                for j in 0..n {
                    g += q[i * n + j] * a[j];
                }
                g
            })
            .collect()
    };
    let objective = |a: &[f64]| -> f64 {
        let mut quad = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad += a[i] * q[i * n + j] * a[j];
            }
        }
        0.5 * quad - a.iter().sum::<f64>()
    };
    let pg_step = |a: &[f64]| -> Vec<f64> {
        let g = gradient(a);
        let proposal: Vec<f64> = a.iter().zip(&g).map(|(ai, gi)| ai - step * gi).collect();
        project_box_hyperplane(&proposal, y, c)
    };

    let mut current = vec![0.0; n];
    let mut previous = current.clone();
    let mut extrapolated = current.clone();
    let mut momentum = 1.0f64;
    let mut last_objective = f64::INFINITY;
    for _ in 0..500_000 {
        let mut next = pg_step(&extrapolated);
        let mut obj = objective(&next);
        if obj > last_objective {
            // restart: kill the momentum and step from the last iterate
            momentum = 1.0;
            next = pg_step(&current);
            obj = objective(&next);
        }
        let momentum_next = 0.5 * (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt());
        let beta = (momentum - 1.0) / momentum_next;
        extrapolated = next
            .iter()
            .zip(&current)
            .map(|(xn, xc)| xn + beta * (xn - xc))
            .collect();
        previous.copy_from_slice(&current);
        current.copy_from_slice(&next);
        momentum = momentum_next;
        last_objective = obj;

        let polished = pg_step(&current);
        let residual = polished
            .iter()
            .zip(&current)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if residual < 1e-13 {
            return polished;
        }
    }
    current
}

/// Exact Euclidean projection onto `{0 <= a <= c} ∩ {y'a = 0}` by bisection
/// on the multiplier of the equality constraint.
fn project_box_hyperplane(v: &[f64], y: &[f64], c: f64) -> Vec<f64> {
    let balance = |lambda: f64| -> f64 {
        v.iter()
            .zip(y)
            .map(|(vi, yi)| yi * (vi - lambda * yi).clamp(0.0, c))
            .sum()
    };
    let bound = v.iter().fold(0.0f64, |m, x| m.max(x.abs())) + c + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..128 {
        let mid = 0.5 * (lo + hi);
        if balance(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    v.iter()
        .zip(y)
        .map(|(vi, yi)| (vi - lambda * yi).clamp(0.0, c))
        .collect()
}

/// Dual objective computed from the oracle's own Q form.
pub fn pg_dual_objective(alpha: &[f64], x: &[f64], n_features: usize, y: &[f64]) -> f64 {
    let n = y.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += alpha[i]
                * alpha[j]
                * y[i]
                * y[j]
                * dot(
                    &x[i * n_features..(i + 1) * n_features],
                    &x[j * n_features..(j + 1) * n_features],
                );
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

/// One training problem for the oracle-equivalence checks.
#[derive(Debug, Clone)]
pub struct SvmInstance {
    pub x: Vec<f64>,
    pub n_features: usize,
    pub y: Vec<f64>,
    pub c: f64,
    pub kind: &'static str,
}

/// Deterministic family covering separable, soft-margin, and duplicated
/// instances for n = 2..=12, K = 1..=3, and three C values: 297 problems.
///
/// Coordinates sit on a small integer grid plus a tiny jitter. The jitter
/// breaks nongeneric margin coincidences (which would make the support set
/// ambiguous) while exact row copies keep duplicate handling honest.
pub fn small_instance_family() -> Vec<SvmInstance> {
    let mut out = Vec::new();
    let mut rng = CounterRng::substream(20_240_817, 0);
    for n_features in 1..=3usize {
        for n in 2..=12usize {
            for (kind_idx, kind) in ["separable", "soft", "duplicated"].iter().enumerate() {
                for c in [0.5, 1.0, 10.0] {
                    out.push(make_instance(&mut rng, n, n_features, kind_idx, kind, c));
                }
            }
        }
    }
    out
}

fn make_instance(
    rng: &mut CounterRng,
    n: usize,
    k: usize,
    kind_idx: usize,
    kind: &'static str,
    c: f64,
) -> SvmInstance {
    // Class sizes stay within a 1:2 ratio, and the first sample of each
    // class is anchored at its outermost grid cell. A tiny class engulfed
    // by the other one drives the optimal weight to zero, where the dual
    // optimum degenerates into a flat face with no canonical support set
    // to compare against.
    let n_pos = if n < 3 {
        1
    } else {
        let lo = n.div_ceil(3);
        lo + rng.next_index(2 * n / 3 - lo + 1)
    };
    let y: Vec<f64> = (0..n).map(|i| if i < n_pos { 1.0 } else { -1.0 }).collect();
    let jitter = |rng: &mut CounterRng| 1e-3 * (rng.next_unit() - 0.5);
    let soft_coord = |rng: &mut CounterRng, label: f64, anchored: bool| {
        let cell = if anchored {
            2.0
        } else {
            rng.next_index(5) as f64 - 2.0
        };
        label * (1.0 + 0.6 * cell) + jitter(rng)
    };
    let mut x = Vec::with_capacity(n * k);
    match kind_idx {
        // well separated blobs around +2 / -2 in every dimension
        0 => {
            for &label in &y {
                for _ in 0..k {
                    let base = 1.0 + rng.next_index(3) as f64;
                    x.push(label * base + jitter(rng));
                }
            }
        }
        // overlapping classes with a clear margin direction
        1 => {
            for (i, &label) in y.iter().enumerate() {
                let anchored = i == 0 || i == n_pos;
                for _ in 0..k {
                    x.push(soft_coord(rng, label, anchored));
                }
            }
        }
        // soft-style base rows with exact duplicates appended
        _ => {
            let base_rows = n.div_ceil(2);
            let base_pos = base_rows.div_ceil(2);
            let mut ys = Vec::with_capacity(n);
            for i in 0..base_rows {
                let label = if i < base_pos { 1.0 } else { -1.0 };
                let anchored = i == 0 || i == base_pos;
                for _ in 0..k {
                    x.push(soft_coord(rng, label, anchored));
                }
                ys.push(label);
            }
            for _ in base_rows..n {
                let src = rng.next_index(base_rows);
                for d in 0..k {
                    x.push(x[src * k + d]);
                }
                ys.push(ys[src]);
            }
            // a one-row base duplicates into a single class; flip the last
            // copy to keep both classes present
            if ys.iter().all(|&v| v == ys[0]) {
                let last = ys.len() - 1;
                ys[last] = -ys[0];
                for d in 0..k {
                    x[last * k + d] = soft_coord(rng, ys[last], true);
                }
            }
            return SvmInstance {
                x,
                n_features: k,
                y: ys,
                c,
                kind,
            };
        }
    }
    SvmInstance {
        x,
        n_features: k,
        y,
        c,
        kind,
    }
}

/// Two Gaussian blobs with adjustable overlap, for larger randomized
/// problems (n up to a few hundred).
pub fn blob_instance(
    rng: &mut CounterRng,
    n: usize,
    n_features: usize,
    separation: f64,
) -> (Vec<f64>, Vec<f64>) {
    let n_pos = n / 2;
    let mut x = Vec::with_capacity(n * n_features);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let label = if i < n_pos { 1.0 } else { -1.0 };
        y.push(label);
        for _ in 0..n_features {
            x.push(label * separation + gaussian(rng));
        }
    }
    (x, y)
}

pub fn gaussian(rng: &mut CounterRng) -> f64 {
    let u1 = rng.next_unit();
    let u2 = rng.next_unit();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Fresh scratch directory under the system temp dir.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trialkit-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

/// Path of the compiled CLI binary.
pub fn trialkit_bin() -> &'static str {
    env!("CARGO_BIN_EXE_trialkit")
}
