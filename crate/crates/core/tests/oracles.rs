use rand_distr::{Distribution, StandardNormal};

use sbmds::evaluation::{classical_mds, mean_mse, simulate_dataset, NoiseKind, SimSpec};
use sbmds::rng::from_seed;
use sbmds::samplers::{log_prior_locations, log_prior_sigma2, PriorSpec, Trace, TraceSample};
use sbmds::{grad_log_likelihood, CouplingScheme, DissimMatrix, LatentConfig};

fn fixture_x() -> LatentConfig {
    LatentConfig::from_rows(&[
        vec![0.59, 0.71],
        vec![-0.11, -0.45],
        vec![0.61, -1.82],
        vec![0.63, -0.28],
        vec![-0.28, -0.92],
    ])
    .unwrap()
}

// Gradient rows for 1..4 bands and 1..4 landmarks as printed, with
// observations equal to the latent distances and sigma^2 = 0.25. The
// second coordinate of x1 is printed with the opposite sign throughout.
const BANDED: [[[f64; 2]; 5]; 4] = [
    [[-0.010, 0.017], [0.014, 0.011], [-0.003, 0.013], [-0.054, -0.045], [0.054, 0.038]],
    [[-0.010, 0.018], [0.275, 0.074], [-0.026, 0.036], [-0.315, -0.108], [0.077, 0.015]],
    [[-0.005, 0.134], [0.071, -0.468], [-0.026, 0.036], [-0.321, 0.009], [0.281, 0.557]],
    [[-0.006, 0.135], [0.071, -0.468], [-0.026, 0.036], [-0.321, 0.009], [0.281, 0.558]],
];
const LANDMARK: [[[f64; 2]; 5]; 4] = [
    [[-0.006, 0.135], [0.010, 0.017], [0.000, 0.000], [-0.005, 0.117], [0.000, 0.000]],
    [[-0.006, 0.135], [0.071, -0.468], [-0.003, 0.006], [-0.266, 0.054], [0.204, 0.543]],
    [[-0.006, 0.135], [0.071, -0.468], [-0.026, 0.036], [-0.266, 0.047], [0.227, 0.519]],
    [[-0.006, 0.135], [0.071, -0.468], [-0.026, 0.036], [-0.321, 0.009], [0.281, 0.558]],
];

#[test]
fn five_object_gradient_fixture() {
    let x = fixture_x();
    let delta = x.pairwise_distances();
    let mut worst: f64 = 0.0;
    for k in 1..=4 {
        for (scheme, printed) in [
            (CouplingScheme::Banded(k), &BANDED[k - 1]),
            (CouplingScheme::Landmark(k), &LANDMARK[k - 1]),
        ] {
            let g = grad_log_likelihood(&delta, &x, 0.25, scheme).unwrap();
            for n in 0..5 {
                for d in 0..2 {
                    let (ours, theirs) = (g.row(n)[d], printed[n][d]);
                    worst = worst.max((ours.abs() - theirs.abs()).abs());
                }
            }
        }
    }
    assert!(worst < 0.015, "worst magnitude deviation {worst}");
}

#[test]
fn five_object_complete_schemes_agree() {
    let x = fixture_x();
    let delta = x.pairwise_distances();
    let full = grad_log_likelihood(&delta, &x, 0.25, CouplingScheme::Full).unwrap();
    let b = grad_log_likelihood(&delta, &x, 0.25, CouplingScheme::Banded(4)).unwrap();
    let l = grad_log_likelihood(&delta, &x, 0.25, CouplingScheme::Landmark(4)).unwrap();
    assert_eq!(full.as_slice(), b.as_slice());
    assert_eq!(full.as_slice(), l.as_slice());
    // Rows of a full gradient sum to zero by antisymmetry.
    for d in 0..2 {
        let s: f64 = (0..5).map(|n| full.row(n)[d]).sum();
        assert!(s.abs() < 1e-14);
    }
}

/// Cyclic Jacobi eigenvalue iteration for a small symmetric matrix.
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

fn oracle_mds(delta: &DissimMatrix, dim: usize) -> Vec<Vec<f64>> {
    let n = delta.n_objects();
    let sq: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| delta.get(i, j).powi(2)).collect()).collect();
    let row_mean: Vec<f64> = sq.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand)).collect())
        .collect();
    let (vals, vecs) = jacobi_eigen(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    (0..n)
        .map(|i| order[..dim].iter().map(|&k| vecs[i][k] * vals[k].max(0.0).sqrt()).collect())
        .collect()
}

#[test]
fn classical_mds_matches_jacobi_oracle() {
    let mut rng = from_seed(31);
    let x = LatentConfig::new(10, 3, (0..30).map(|_| StandardNormal.sample(&mut rng)).collect()).unwrap();
    let delta = x.pairwise_distances();
    let ours = classical_mds(&delta, 3).unwrap();
    let oracle = oracle_mds(&delta, 3);
    for i in 0..10 {
        for j in 0..10 {
            let d_oracle = (0..3).map(|k| (oracle[i][k] - oracle[j][k]).powi(2)).sum::<f64>().sqrt();
            assert!((ours.distance(i, j) - d_oracle).abs() < 1e-8);
        }
    }
}

#[test]
fn prior_closed_forms() {
    let x = LatentConfig::zeros(4, 3).unwrap();
    let p = PriorSpec::standard(3);
    let per_row = -1.5 * (2.0 * std::f64::consts::PI).ln();
    assert!((log_prior_locations(&x, &p).unwrap() - 4.0 * per_row).abs() < 1e-12);
    // IG(1, 1) density at 1 is exp(-1).
    assert!((log_prior_sigma2(1.0, &p) + 1.0).abs() < 1e-12);
    // IG(a, b) at s: a ln b - lnGamma(a) - (a + 1) ln s - b / s.
    let q = PriorSpec { location_prior_cov_diag: vec![1.0; 3], sigma2_prior_shape: 3.0, sigma2_prior_rate: 2.0 };
    let expected = 3.0 * 2f64.ln() - 2f64.ln() - 4.0 * 0.5f64.ln() - 4.0;
    assert!((log_prior_sigma2(0.5, &q) - expected).abs() < 1e-12);
}

#[test]
fn subsampled_mse_matches_all_pairs_at_scale() {
    let data = simulate_dataset(&SimSpec {
        n_objects: 10_000,
        true_dim: 2,
        sigma_true: 0.2,
        noise_kind: NoiseKind::TruncatedNormal,
        seed: 5,
    })
    .unwrap();
    let mut rng = from_seed(6);
    let x: Vec<f64> = data
        .locations
        .as_slice()
        .iter()
        .map(|v| v + 0.05 * Distribution::<f64>::sample(&StandardNormal, &mut rng))
        .collect();
    let trace = Trace {
        n_objects: 10_000,
        dim: 2,
        samples: vec![TraceSample { iteration: 1, sigma2: 0.04, x: x.clone() }],
        meta: None,
    };
    let full = mean_mse(&trace, &data.true_distances, usize::MAX, &mut rng).unwrap();
    let sub = mean_mse(&trace, &data.true_distances, 1000, &mut rng).unwrap();
    // Standard error of a 1000-pair mean from the spread of per-pair errors.
    let cfg = LatentConfig::new(10_000, 2, x).unwrap();
    let (mut s1, mut s2, mut m) = (0.0, 0.0, 0.0);
    for i in (0..10_000).step_by(7) {
        for j in (i + 1..10_000).step_by(13) {
            let e = (cfg.distance(i, j) - data.true_distances.get(i, j)).powi(2);
            s1 += e;
            s2 += e * e;
            m += 1.0;
        }
    }
    let var = s2 / m - (s1 / m).powi(2);
    let se = (var / 1000.0).sqrt();
    assert!((sub - full).abs() < 3.0 * se, "sub {sub} full {full} se {se}");
}
