//! Structure-level checks run through an independent linear-algebra stack:
//! generator eigenvalues against the model spectrum, loss of
//! diagonalizability at criticality, the canonical congruence, and
//! randomized cross-route agreement.

use nalgebra::{Complex, DMatrix, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotmode_core::linalg::CMat4;
use rotmode_core::model::ModelParams;
use rotmode_core::normal_modes::decompose;
use rotmode_core::observables::{vacuum_occupation, vacuum_occupation_direct};
use rotmode_core::oracle::{evolve_moments, generator};
use rotmode_core::propagator::Propagator;

fn p(w1: f64, w2: f64, w: f64) -> ModelParams<f64> {
    ModelParams::new(w1, w2, w).unwrap()
}

/// Embeds a complex 4x4 matrix as the real 8x8 [[Re, -Im], [Im, Re]];
/// its eigenvalues are those of the complex matrix plus their conjugates.
fn realify(h: &CMat4<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(8, 8, |i, j| {
        let z = h.m[i % 4][j % 4];
        match (i < 4, j < 4) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// All eight eigenvalues of the realified generator.
fn generator_eigenvalues(params: &ModelParams<f64>) -> Vec<Complex<f64>> {
    realify(&generator(params).h)
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect()
}

fn assert_spectra_match(computed: &[Complex<f64>], predicted: &[Complex<f64>], tol: f64) {
    for c in computed {
        let d = predicted
            .iter()
            .map(|q| (c - q).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d <= tol, "eigenvalue {c} is {d:e} from the predicted set");
    }
    for q in predicted {
        let d = computed
            .iter()
            .map(|c| (c - q).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d <= tol, "predicted {q} is {d:e} from the computed set");
    }
}

#[test]
fn stable_generator_eigenvalues_match_the_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = vec![p(1.0, 0.5, 0.49), p(1.0, 0.5, 0.15), p(1.0, 0.5, 1.5)];
    for k in 0..40 {
        let w2 = rng.random_range(0.2..0.95);
        let w = if k % 2 == 0 {
            rng.random_range(0.01..0.95 * w2)
        } else {
            rng.random_range(1.05..2.5)
        };
        cases.push(p(1.0, w2, w));
    }
    for params in cases {
        let s = params.spectrum();
        let (wp, wm) = (s.omega_plus_sq.sqrt(), s.omega_minus_sq.sqrt());
        let predicted: Vec<Complex<f64>> = [wp, -wp, wm, -wm]
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect();
        assert_spectra_match(&generator_eigenvalues(&params), &predicted, 1e-9);
    }
}

#[test]
fn unstable_generator_eigenvalues_are_an_imaginary_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases = vec![p(1.0, 0.5, 0.75)];
    for _ in 0..20 {
        let w2 = rng.random_range(0.2..0.9);
        cases.push(p(1.0, w2, rng.random_range(1.02 * w2..0.98)));
    }
    for params in cases {
        let s = params.spectrum();
        assert!(s.omega_minus_sq < 0.0);
        let wp = s.omega_plus_sq.sqrt();
        let g = (-s.omega_minus_sq).sqrt();
        let predicted = [
            Complex::new(wp, 0.0),
            Complex::new(-wp, 0.0),
            Complex::new(0.0, g),
            Complex::new(0.0, -g),
        ];
        assert_spectra_match(&generator_eigenvalues(&params), &predicted, 1e-9);
    }
}

/// Condition number of the eigenvector matrix assembled from per-eigenvalue
/// null vectors of (H - mu I).
fn eigenvector_condition(params: &ModelParams<f64>) -> f64 {
    let h = generator(params).h;
    let hc = Matrix4::from_fn(|i, j| h.m[i][j]);
    // the realification doubles each eigenvalue; greedy nearest-neighbor
    // pairing recovers one representative per double without relying on a
    // sort order that roundoff in the tiny components could scramble
    let mut vals = generator_eigenvalues(params);
    let mut reps = Vec::with_capacity(4);
    while !vals.is_empty() {
        let a = vals.swap_remove(0);
        let k = vals
            .iter()
            .enumerate()
            .min_by(|x, y| (a - *x.1).norm().total_cmp(&(a - *y.1).norm()))
            .map(|(k, _)| k)
            .unwrap();
        let b = vals.swap_remove(k);
        reps.push((a + b) * 0.5);
    }
    let mut pmat = Matrix4::zeros();
    for (col, &mu) in reps.iter().enumerate() {
        let a = hc - Matrix4::identity() * mu;
        let svd = a.svd(false, true);
        let vt = svd.v_t.unwrap();
        for row in 0..4 {
            pmat[(row, col)] = vt[(3, row)].conj();
        }
    }
    let sv = pmat.svd(false, false).singular_values;
    sv[0] / sv[3]
}

#[test]
fn generator_becomes_defective_at_criticality() {
    // away from the border the eigenvector basis is well conditioned; the
    // condition number diverges as the inverse square root of the distance
    // and is limited only by roundoff at the border itself
    assert!(eigenvector_condition(&p(1.0, 0.5, 0.49)) < 50.0);
    let c6 = eigenvector_condition(&p(1.0, 0.5, 0.5 + 1e-6));
    let c10 = eigenvector_condition(&p(1.0, 0.5, 0.5 + 1e-10));
    let ratio = c10 / c6;
    assert!(
        (30.0..300.0).contains(&ratio),
        "conditioning grew {c6:.3e} -> {c10:.3e} (ratio {ratio:.1})"
    );
    let at_border = eigenvector_condition(&p(1.0, 0.5, 0.5));
    assert!(
        at_border > 1e6,
        "condition number at the border is {at_border:.3e}"
    );
}

#[test]
fn eigenvector_condition_number_at_tolerance_distance() {
    // The inverse-square-root divergence reaches 1e6 only about 1e-13 from
    // the border; at offset 1e-8 the measured condition number is ~5e3.
    // This records the stricter claim and fails honestly; the divergence
    // itself is covered by generator_becomes_defective_at_criticality.
    let cond = eigenvector_condition(&p(1.0, 0.5, 0.5 + 1e-8));
    assert!(
        cond > 1e6,
        "condition number at offset 1e-8 is {cond:.3e}"
    );
}

#[test]
fn congruence_reconstructs_the_quadratic_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = vec![
        p(1.0, 0.5, 0.49),
        p(1.0, 0.5, 0.75),
        p(1.0, 0.5, 1.5),
        p(1.0, 0.5, 0.5),
        p(1.0, 1.0, 0.7),
    ];
    for _ in 0..60 {
        cases.push(p(
            1.0,
            rng.random_range(0.15..1.0),
            rng.random_range(0.01..2.5),
        ));
    }
    for params in cases {
        let d = decompose(&params).unwrap();
        let (w1, w2, w) = (params.omega1(), params.omega2(), params.omega());
        // quadratic form of the Hamiltonian in (Q1, Q2, P1, P2)
        let mut s = [[0.0f64; 4]; 4];
        s[0][0] = w1 * w1;
        s[1][1] = w2 * w2;
        s[2][2] = 1.0;
        s[3][3] = 1.0;
        s[0][3] = -w;
        s[3][0] = -w;
        s[1][2] = w;
        s[2][1] = w;
        // transformation to the decoupled variables
        let c = 1.0 / (1.0 + d.eta * d.gamma);
        let mut t = [[0.0f64; 4]; 4];
        t[0][0] = c;
        t[0][3] = -d.eta * c;
        t[1][1] = c;
        t[1][2] = -d.eta * c;
        t[2][2] = 1.0;
        t[2][1] = d.gamma;
        t[3][3] = 1.0;
        t[3][0] = d.gamma;
        let dm = [d.beta1, d.beta2, d.alpha1, d.alpha2];
        let mut reconstructed = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += t[k][i] * dm[k] * t[k][j];
                }
                reconstructed[i][j] = acc;
            }
        }
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((reconstructed[i][j] - s[i][j]).abs());
            }
        }
        assert!(
            worst <= 1e-10,
            "congruence defect {worst:e} at {params:?}"
        );
    }
}

#[test]
fn isotropic_total_occupation_is_conserved() {
    let params = ModelParams::isotropic(0.8, 0.3).unwrap();
    let a1 = num_complex::Complex::new(1.2, -0.3);
    let a2 = num_complex::Complex::new(-0.7, 0.5);
    let total = |t: f64| -> f64 {
        let m = evolve_moments(&params, a1, a2, t).unwrap();
        (m.second.m[2][0].re - 0.5) + (m.second.m[3][1].re - 0.5)
    };
    let reference = total(0.0);
    assert!((reference - (a1.norm_sqr() + a2.norm_sqr())).abs() <= 1e-12);
    for &t in &[2.5, 7.9, 14.2, 21.0] {
        let drift = (total(t) - reference).abs();
        assert!(
            drift <= 1e-9 * reference.max(1.0),
            "total occupation drifted by {drift:e} at t = {t}"
        );
    }
}

#[test]
fn occupation_grows_with_the_square_of_the_anisotropy() {
    // symmetric split keeps the mean frequency fixed while the gap shrinks
    let deltas = [0.05, 0.025, 0.0125, 0.00625];
    let peaks: Vec<f64> = deltas
        .iter()
        .map(|&d| {
            let params = p(1.0 + d / 2.0, 1.0 - d / 2.0, 0.2);
            let mut peak = 0.0f64;
            for k in 0..2048 {
                let t = 60.0 * k as f64 / 2047.0;
                let n = vacuum_occupation(&Propagator::at(&params, t), 1).unwrap();
                peak = peak.max(n);
            }
            peak
        })
        .collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 1..deltas.len() {
        num += (peaks[i] / peaks[i - 1]).ln();
        den += (deltas[i] / deltas[i - 1]).ln();
    }
    let slope = num / den;
    assert!(
        (slope - 2.0).abs() <= 0.05,
        "fitted anisotropy exponent {slope} (peaks {peaks:?})"
    );
}

#[test]
fn occupation_routes_agree_on_random_stable_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in 0..200 {
        let w2 = rng.random_range(0.3..0.95);
        let w = if k % 2 == 0 {
            rng.random_range(0.02..0.9 * w2)
        } else {
            rng.random_range(1.1..2.5)
        };
        let params = p(1.0, w2, w);
        let t = rng.random_range(0.0..100.0);
        let j = 1 + k % 2;
        let via_blocks = vacuum_occupation(&Propagator::at(&params, t), j).unwrap();
        let direct = vacuum_occupation_direct(&params, j, t).unwrap();
        assert!(
            (via_blocks - direct).abs() <= 1e-10,
            "routes differ at {params:?}, t = {t}, j = {j}: {via_blocks} vs {direct}"
        );
    }
}
