//! The `verify` subcommand: self-contained numerical checks of the
//! library invariants, printed one line per suite with final counts.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jcwitness::basis::{build_basis, complement_vectors, head_vector, unitary_of, BasisParams};
use jcwitness::detect::{
    case1_fidelity, case1_witness_state, case2_fidelity, case2_witness_state, maximize_fidelity,
    OptimizerSettings, WitnessCase,
};
use jcwitness::jcmodel::{
    case1_negativity_closed, case1_state, case1_state_embedded, case2_negativity_closed,
    case2_state, master_equation_series, rabi,
};
use jcwitness::linalg::{dagger, fidelity_pure, matmul, negativity, DensityMatrix, Ket};
use jcwitness::witness::{expectation, witness_of};
use jcwitness::JCConfig64;

type CMat = ndarray::Array2<Complex64>;

fn config(g: f64, delta: f64, gamma: f64, lambda: f64) -> JCConfig64 {
    JCConfig64 {
        g,
        omega_a: 1.0 + delta,
        omega_f: 1.0,
        gamma,
        lambda,
    }
}

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

fn basis_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for n in 2..=6 {
        for _ in 0..20 {
            let params = random_params(n, &mut rng);
            let u = unitary_of(&params).map_err(|e| e.to_string())?;
            let gram = matmul(&dagger(&u), &u);
            let mut sum = CMat::zeros((n, n));
            for v in build_basis(&params).map_err(|e| e.to_string())? {
                sum = sum + v.projector();
            }
            let eye = CMat::eye(n);
            let dev_u = (&gram - &eye).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let dev_c = (&sum - &eye).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if dev_u > 1e-10 || dev_c > 1e-10 {
                return Err(format!("n={n}: unitarity {dev_u}, completeness {dev_c}"));
            }
        }
    }
    Ok(())
}

fn complement_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    let step = 1e-6;
    for d in 2..=4usize {
        for _ in 0..10 {
            let theta: Vec<f64> = (0..d - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let phi: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let working: Vec<Ket<f64>> = (0..d).map(|i| Ket::basis_state(d, i)).collect();
            let comps = complement_vectors(&working, &theta, &phi).map_err(|e| e.to_string())?;
            for k in 1..d {
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
                    if dev > 1e-6 {
                        return Err(format!("d={d} k={k} j={j}: deviation {dev}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn negativity_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..40 {
        let n = rng.gen_range(0..3);
        let c = config(
            rng.gen_range(0.2..2.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(0.0..0.5),
            0.0,
        );
        let t = rng.gen_range(0.0..8.0);
        let closed = case1_negativity_closed(n, t, &c);
        let eig = negativity(&case1_state(n, t, &c).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if (closed - eig).abs() > 1e-9 {
            return Err(format!("case 1: closed {closed} vs eigen {eig}"));
        }
    }
    for _ in 0..40 {
        let n = rng.gen_range(1..3);
        let c = config(
            rng.gen_range(0.2..2.0),
            rng.gen_range(-5.0..5.0),
            0.0,
            rng.gen_range(0.0..1.0),
        );
        let t = rng.gen_range(0.0..8.0);
        let closed = case2_negativity_closed(n, t, &c).map_err(|e| e.to_string())?;
        let eig = negativity(&case2_state(n, t, &c).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if (closed - eig).abs() > 1e-9 {
            return Err(format!("case 2: closed {closed} vs eigen {eig}"));
        }
    }
    Ok(())
}

fn series_suite() -> Result<(), String> {
    for &t in &[0.5, 2.0] {
        for &gamma in &[0.0, 0.3] {
            for &delta in &[0.0, 5.0] {
                let c = config(1.0, delta, gamma, 0.0);
                let series = master_equation_series(1, t, &c, 3, 60).map_err(|e| e.to_string())?;
                let closed = case1_state_embedded(1, t, &c, 3).map_err(|e| e.to_string())?;
                let dev = (series.mat() - closed.mat())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                if dev > 1e-8 {
                    return Err(format!("t={t} γ={gamma} Δ={delta}: deviation {dev}"));
                }
            }
        }
    }
    Ok(())
}

fn witness_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(304);
    let p1: Vec<f64> = (0..8).map(|_| rng.gen_range(-6.0..6.0)).collect();
    let p2: Vec<f64> = (0..13).map(|_| rng.gen_range(-6.0..6.0)).collect();
    let witnesses = [
        (
            witness_of(&case1_witness_state(&p1).map_err(|e| e.to_string())?, 2, 2)
                .map_err(|e| e.to_string())?,
            2usize,
            2usize,
        ),
        (
            witness_of(&case2_witness_state(&p2).map_err(|e| e.to_string())?, 2, 3)
                .map_err(|e| e.to_string())?,
            2,
            3,
        ),
    ];
    for (w, na, nb) in &witnesses {
        for _ in 0..500 {
            let sigma = random_ket(*na, &mut rng).tensor(&random_ket(*nb, &mut rng));
            let rho = DensityMatrix::from_pure(&sigma, *na, *nb).map_err(|e| e.to_string())?;
            let val = expectation(w, &rho).map_err(|e| e.to_string())?;
            if val < -1e-9 {
                return Err(format!("product-state expectation {val}"));
            }
        }
        let own =
            DensityMatrix::from_pure(w.projector_state(), *na, *nb).map_err(|e| e.to_string())?;
        let val = expectation(w, &own).map_err(|e| e.to_string())?;
        if (val - (w.k() - 1.0)).abs() > 1e-12 {
            return Err(format!(
                "own-state expectation {val} vs k-1 {}",
                w.k() - 1.0
            ));
        }
    }
    Ok(())
}

fn fidelity_suite() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(305);
    let c1 = config(1.0, 1.0, 0.3, 0.0);
    for _ in 0..20 {
        let params: Vec<f64> = (0..8).map(|_| rng.gen_range(-6.0..6.0)).collect();
        let t = rng.gen_range(0.0..6.0);
        let closed = case1_fidelity(&params, 1, t, &c1).map_err(|e| e.to_string())?;
        let psi = case1_witness_state(&params).map_err(|e| e.to_string())?;
        let rho = case1_state(1, t, &c1).map_err(|e| e.to_string())?;
        let generic = fidelity_pure(&psi, &rho).map_err(|e| e.to_string())?;
        if (closed - generic).abs() > 1e-10 {
            return Err(format!("case 1: closed {closed} vs generic {generic}"));
        }
    }
    for _ in 0..20 {
        let c2 = config(1.0, 5.0, 0.0, rng.gen_range(0.0..1.0));
        let params: Vec<f64> = (0..13).map(|_| rng.gen_range(-6.0..6.0)).collect();
        let t = rng.gen_range(0.0..6.0);
        let closed = case2_fidelity(&params, 1, t, &c2).map_err(|e| e.to_string())?;
        let psi = case2_witness_state(&params).map_err(|e| e.to_string())?;
        let rho = case2_state(1, t, &c2).map_err(|e| e.to_string())?;
        let generic = fidelity_pure(&psi, &rho).map_err(|e| e.to_string())?;
        if (closed - generic).abs() > 1e-10 {
            return Err(format!("case 2: closed {closed} vs generic {generic}"));
        }
    }
    Ok(())
}

fn detection_suite() -> Result<(), String> {
    let opt = OptimizerSettings::default();
    let c = config(1.0, 1.0, 0.3, 0.0);
    let rep = maximize_fidelity(WitnessCase::Case1, 1, 0.0, &c, &opt).map_err(|e| e.to_string())?;
    if rep.detected || (rep.max_fidelity - 0.5).abs() > 1e-6 {
        return Err(format!(
            "t=0 product state reported fidelity {}",
            rep.max_fidelity
        ));
    }
    let res = config(1.0, 0.0, 0.0, 0.0);
    let t = std::f64::consts::FRAC_PI_4 / rabi(1, &res);
    let rep = maximize_fidelity(WitnessCase::Case1, 1, t, &res, &opt).map_err(|e| e.to_string())?;
    if !rep.detected || rep.max_fidelity < 1.0 - 1e-6 {
        return Err(format!(
            "resonant quarter-period point gave fidelity {}",
            rep.max_fidelity
        ));
    }
    Ok(())
}

type Suite = (&'static str, fn() -> Result<(), String>);

/// Run every suite, print one line each plus final counts; true iff all pass.
pub fn run_all() -> bool {
    let suites: [Suite; 7] = [
        ("basis unitarity & completeness", basis_suite),
        ("complement derivative rule", complement_suite),
        ("negativity closed forms", negativity_suite),
        ("master-equation series oracle", series_suite),
        ("witness soundness", witness_suite),
        ("fidelity closed forms", fidelity_suite),
        ("detection fixtures", detection_suite),
    ];
    let mut passed = 0usize;
    let mut failed = 0usize;
    for (name, suite) in suites {
        match suite() {
            Ok(()) => {
                println!("suite {name}: pass");
                passed += 1;
            }
            Err(e) => {
                println!("suite {name}: FAIL ({e})");
                failed += 1;
            }
        }
    }
    println!("{passed} passed, {failed} failed");
    failed == 0
}
