//! Cross-module invariants: unitarity and completeness of the
//! constructed bases, the analytic derivative rule behind the
//! complement vectors, and the behaviour of negativity under local
//! unitaries and on separable mixtures.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jcwitness::basis::{
    build_basis, complement_vectors, determinant, head_vector, su_constraint, unitary_of,
    BasisParams,
};
use jcwitness::linalg::{dagger, hermitian_eigen, kron, matmul, negativity, DensityMatrix, Ket};

type CMat = ndarray::Array2<Complex64>;

fn random_params(n: usize, rng: &mut ChaCha8Rng) -> BasisParams<f64> {
    let flat: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-7.0..7.0)).collect();
    BasisParams::from_flat(n, &flat).unwrap()
}

fn random_ket(dim: usize, rng: &mut ChaCha8Rng) -> Ket<f64> {
    Ket::new(
        (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .normalize()
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn basis_unitarity_and_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in 2..=8 {
        for _ in 0..20 {
            let params = random_params(n, &mut rng);
            let u = unitary_of(&params).unwrap();
            let gram = matmul(&dagger(&u), &u);
            let dev = max_abs(&(&gram - &CMat::eye(n)));
            assert!(dev < 1e-10, "n={n} gram deviation {dev}");

            let vectors = build_basis(&params).unwrap();
            let mut sum = CMat::zeros((n, n));
            for v in &vectors {
                sum = sum + v.projector();
            }
            let dev = max_abs(&(&sum - &CMat::eye(n)));
            assert!(dev < 1e-10, "n={n} completeness deviation {dev}");

            let det = determinant(&u);
            assert!(
                (det.norm() - 1.0).abs() < 1e-10,
                "n={n} |det|={}",
                det.norm()
            );
        }
    }
}

#[test]
fn su_constraint_gives_unit_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for n in 2..=6 {
        for _ in 0..10 {
            let params = random_params(n, &mut rng);
            let special = su_constraint(&params).unwrap();
            let det = determinant(&unitary_of(&special).unwrap());
            assert!(
                (det - Complex64::new(1.0, 0.0)).norm() < 1e-10,
                "n={n} det={det}"
            );
        }
    }
}

/// The complement vectors are ∂/∂θ_k of the head vector, evaluated with
/// the lower angles pinned to π/2 after differentiation; central finite
/// differences of that restricted head must reproduce them.
#[test]
fn complement_vectors_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let step = 1e-6;
    for d in 2..=6 {
        for _ in 0..10 {
            let theta: Vec<f64> = (0..d - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let phi: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let working: Vec<Ket<f64>> = (0..d).map(|i| Ket::basis_state(d, i)).collect();
            let comps = complement_vectors(&working, &theta, &phi).unwrap();
            assert_eq!(comps.len(), d - 1);
            for k in 1..d {
                // Pin θ_1..θ_{k-1} to π/2 first, then difference in θ_k.
                let restricted = |tk: f64| {
                    let mut th = theta.clone();
                    for t in th.iter_mut().take(k - 1) {
                        *t = std::f64::consts::FRAC_PI_2;
                    }
                    th[k - 1] = tk;
                    head_vector(&working, &th, &phi).unwrap()
                };
                let plus = restricted(theta[k - 1] + step);
                let minus = restricted(theta[k - 1] - step);
                for j in 0..d {
                    let fd = (plus.amp(j) - minus.amp(j)) / Complex64::new(2.0 * step, 0.0);
                    let dev = (fd - comps[k - 1].amp(j)).norm();
                    assert!(dev < 1e-6, "d={d} k={k} j={j} dev={dev}");
                }
            }
        }
    }
}

#[test]
fn negativity_invariant_under_local_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for &(na, nb) in &[(2usize, 2usize), (2, 3)] {
        for _ in 0..20 {
            let psi = random_ket(na * nb, &mut rng);
            let rho = DensityMatrix::from_pure(&psi, na, nb).unwrap();
            let n0 = negativity(&rho).unwrap();

            let ua = unitary_of(&random_params(na, &mut rng)).unwrap();
            let ub = unitary_of(&random_params(nb, &mut rng)).unwrap();
            let u = kron(&ua, &ub);
            let rotated = matmul(&matmul(&u, rho.mat()), &dagger(&u));
            let rho2 = DensityMatrix::new(na, nb, rotated).unwrap();
            let n1 = negativity(&rho2).unwrap();
            assert!((n0 - n1).abs() < 1e-9, "na={na} nb={nb} n0={n0} n1={n1}");
        }
    }
}

#[test]
fn negativity_vanishes_on_separable_mixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for &(na, nb) in &[(2usize, 2usize), (2, 3)] {
        for _ in 0..20 {
            let terms = rng.gen_range(2..6);
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let parts: Vec<(f64, DensityMatrix<f64>)> = weights
                .into_iter()
                .map(|w| {
                    let product = random_ket(na, &mut rng).tensor(&random_ket(nb, &mut rng));
                    (w, DensityMatrix::from_pure(&product, na, nb).unwrap())
                })
                .collect();
            let rho = DensityMatrix::mix(&parts).unwrap();
            let n = negativity(&rho).unwrap();
            assert!(n.abs() < 1e-9, "separable mixture gave negativity {n}");
        }
    }
}

#[test]
fn eigensolver_recovers_planted_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for n in 2..=6 {
        for _ in 0..10 {
            let u = unitary_of(&random_params(n, &mut rng)).unwrap();
            let mut planted: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let mut d = CMat::zeros((n, n));
            for (i, &lam) in planted.iter().enumerate() {
                d[(i, i)] = Complex64::new(lam, 0.0);
            }
            let m = matmul(&matmul(&u, &d), &dagger(&u));
            let (vals, vecs) = hermitian_eigen(&m).unwrap();
            planted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut sorted = vals.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in planted.iter().zip(sorted.iter()) {
                assert!((a - b).abs() < 1e-9, "planted {a} recovered {b}");
            }
            // Residual of the returned eigenpairs.
            for (j, lam) in vals.iter().enumerate() {
                for i in 0..n {
                    let mut mv = Complex64::new(0.0, 0.0);
                    for l in 0..n {
                        mv += m[(i, l)] * vecs[(l, j)];
                    }
                    let dev = (mv - vecs[(i, j)] * lam).norm();
                    assert!(dev < 1e-9, "eigenpair residual {dev}");
                }
            }
        }
    }
}
