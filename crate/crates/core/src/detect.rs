//! Closed-form witness fidelities for the two JC cases, multi-start
//! fidelity maximization, and the detection verdict `F_max > k`.
//!
//! The witness family is the Bell-form state
//! `|Ψ^{[2]}⟩ = (|Φ'^{(0)}⟩|Φ^{(0)}⟩ + |Φ'^{(1)}⟩|Φ^{(1)}⟩)/√2` with the
//! primed (atom) basis two-dimensional and the field basis two- or
//! three-dimensional depending on the case, so `k = 1/2` always.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::{build_basis, BasisParams};
use crate::error::{Error, Result};
use crate::jcmodel::{
    case1_coefficients, case1_negativity_closed, case2_coefficients, case2_negativity_closed,
    JCConfig,
};
use crate::linalg::Ket;
use crate::optim::{minimize, NelderMeadOptions};
use crate::scalar::{cis, Scalar};

/// Which JC scenario the witness family targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// Dephased excited-atom case; field basis on `{|n⟩, |n+1⟩}` (8 params).
    Case1,
    /// Mixed-atom unitary case; field basis on `{|n-1⟩, |n⟩, |n+1⟩}` (13 params).
    Case2,
}

impl WitnessCase {
    pub fn param_count(&self) -> usize {
        match self {
            WitnessCase::Case1 => 8,
            WitnessCase::Case2 => 13,
        }
    }

    /// Indices of the parameter vector that are angles (start box `[0, π]`);
    /// the rest are phases (start box `[0, 2π]`).
    fn angle_indices(&self) -> &'static [usize] {
        match self {
            WitnessCase::Case1 => &[0, 4],
            WitnessCase::Case2 => &[0, 1, 2, 9],
        }
    }
}

/// Detection threshold guard band around `k = 1/2`.
pub const DETECTION_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct OptimizerSettings<T: Scalar> {
    pub restarts: usize,
    pub seed: u64,
    pub nm: NelderMeadOptions<T>,
}

impl<T: Scalar> Default for OptimizerSettings<T> {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 1,
            nm: NelderMeadOptions::default(),
        }
    }
}

/// Outcome of maximizing the witness fidelity at one point in time.
#[derive(Debug, Clone)]
pub struct DetectionReport<T: Scalar> {
    pub time: T,
    pub negativity: T,
    pub max_fidelity: T,
    pub k: T,
    pub detected: bool,
    pub argmax_params: Vec<T>,
    pub optimizer_evals: u64,
    pub seed: u64,
    /// False when no restart reached the simplex convergence criterion;
    /// the best value found is still reported.
    pub converged: bool,
}

/// Case-1 parameter layout: `[θ₁, φ₀, φ₁, ξ₀, θ₁', φ₀', φ₁', ξ₀']`,
/// field basis first, atom basis second.
pub fn case1_fidelity<T: Scalar>(params: &[T], n: u32, t: T, cfg: &JCConfig<T>) -> Result<T> {
    if params.len() != 8 {
        return Err(Error::ParamCount(format!(
            "case 1 takes 8 parameters, got {}",
            params.len()
        )));
    }
    let (t1, p0, p1, x0) = (params[0], params[1], params[2], params[3]);
    let (t1p, p0p, p1p, x0p) = (params[4], params[5], params[6], params[7]);
    let co = case1_coefficients(n, t, cfg);
    let half = T::of(0.5);

    let cross = cis(x0 + x0p);
    let y1 = Complex::new(t1.cos() * t1p.cos(), T::zero())
        + cross * Complex::new(t1.sin() * t1p.sin(), T::zero());
    let y2 = Complex::new(t1.sin() * t1p.sin(), T::zero())
        + cross * Complex::new(t1.cos() * t1p.cos(), T::zero());
    let phase = cis(p1 - p0 + p1p - p0p);
    let f = half * (y1.norm_sqr() * co.excited_pop + y2.norm_sqr() * co.ground_pop)
        + (y1.conj() * y2 * phase * co.coherence).re;
    Ok(f)
}

/// Case-2 parameter layout:
/// `[θ₁, θ₂, η₁, ξ₀, ξ₁, φ₀, φ₁, φ₂, ζ₀, θ₁', φ₀', φ₁', ξ₀']`.
pub fn case2_fidelity<T: Scalar>(params: &[T], n: u32, t: T, cfg: &JCConfig<T>) -> Result<T> {
    if params.len() != 13 {
        return Err(Error::ParamCount(format!(
            "case 2 takes 13 parameters, got {}",
            params.len()
        )));
    }
    let (t1, t2, eta) = (params[0], params[1], params[2]);
    let (x0, x1) = (params[3], params[4]);
    let (p0, p1, p2) = (params[5], params[6], params[7]);
    let (t1p, p0p, p1p, x0p) = (params[9], params[10], params[11], params[12]);
    let co = case2_coefficients(n, t, cfg)?;
    let half = T::of(0.5);
    let lam = cfg.lambda;
    let mu = T::one() - cfg.lambda;

    let r = |x: T| Complex::new(x, T::zero());
    let cross = cis(x0 + x0p);
    // Inner bracket shared by X2 and X3 (and its sibling in X4).
    let mid = r(eta.cos() * t1.cos() * t2.cos()) * cis(x0) - r(eta.sin() * t2.sin()) * cis(x1);
    let mid4 = r(eta.cos() * t1.cos() * t2.sin()) * cis(x0) + r(eta.sin() * t2.cos()) * cis(x1);

    let x1c = r(t1.cos() * t1p.cos()) + cross * r(eta.cos() * t1.sin() * t1p.sin());
    let x2c = r(t1.sin() * t2.cos() * t1p.sin()) + mid * r(t1p.cos()) * cis(x0p);
    let x3c = r(t1.sin() * t2.cos() * t1p.cos()) - mid * r(t1p.sin()) * cis(x0p);
    let x4c = r(t1.sin() * t2.sin() * t1p.sin()) + mid4 * r(t1p.cos()) * cis(x0p);

    let branch_g = half * (x1c.norm_sqr() * co.a.norm_sqr() + x2c.norm_sqr() * co.b.norm_sqr())
        + (x1c.conj() * x2c * cis(p1 - p0 + p1p - p0p) * co.a * co.b.conj()).re;
    let branch_e = half * (x3c.norm_sqr() * co.c.norm_sqr() + x4c.norm_sqr() * co.d.norm_sqr())
        + (x3c.conj() * x4c * cis(p2 - p1 + p1p - p0p) * co.c * co.d.conj()).re;
    Ok(lam * branch_g + mu * branch_e)
}

/// The Bell-form witness state for Case 1 on the 2⊗2 block (atom ⊗ field).
pub fn case1_witness_state<T: Scalar>(params: &[T]) -> Result<Ket<T>> {
    if params.len() != 8 {
        return Err(Error::ParamCount(format!(
            "case 1 takes 8 parameters, got {}",
            params.len()
        )));
    }
    let field = two_dim_basis(params[0], params[1], params[2], params[3])?;
    let atom = two_dim_basis(params[4], params[5], params[6], params[7])?;
    bell_form(&atom, &field)
}

/// The Bell-form witness state for Case 2 on the 2⊗3 block (atom ⊗ field).
pub fn case2_witness_state<T: Scalar>(params: &[T]) -> Result<Ket<T>> {
    if params.len() != 13 {
        return Err(Error::ParamCount(format!(
            "case 2 takes 13 parameters, got {}",
            params.len()
        )));
    }
    let field_params = BasisParams::new(
        3,
        vec![vec![params[0], params[1]], vec![params[2]], vec![]],
        vec![
            vec![params[5], params[6], params[7]],
            vec![params[3], params[4]],
            vec![params[8]],
        ],
    )?;
    let field = build_basis(&field_params)?;
    let atom = two_dim_basis(params[9], params[10], params[11], params[12])?;
    bell_form(&atom, &field)
}

fn two_dim_basis<T: Scalar>(t1: T, p0: T, p1: T, x0: T) -> Result<Vec<Ket<T>>> {
    let params = BasisParams::new(2, vec![vec![t1], vec![]], vec![vec![p0, p1], vec![x0]])?;
    build_basis(&params)
}

fn bell_form<T: Scalar>(atom: &[Ket<T>], field: &[Ket<T>]) -> Result<Ket<T>> {
    let r = Complex::new(T::one() / T::of(2.0).sqrt(), T::zero());
    Ok(atom[0]
        .tensor(&field[0])
        .add(&atom[1].tensor(&field[1]))
        .scale(r))
}

fn objective<T: Scalar>(
    case: WitnessCase,
    n: u32,
    t: T,
    cfg: &JCConfig<T>,
) -> impl Fn(&[T]) -> T + '_ {
    move |params: &[T]| {
        let f = match case {
            WitnessCase::Case1 => case1_fidelity(params, n, t, cfg),
            WitnessCase::Case2 => case2_fidelity(params, n, t, cfg),
        };
        // Layout is fixed by the caller; errors cannot occur here.
        -f.unwrap()
    }
}

/// Maximize the witness fidelity over all basis parameters with a seeded
/// multi-start Nelder-Mead search over the box (angles `[0, π]`, phases
/// `[0, 2π]`).
pub fn maximize_fidelity<T: Scalar>(
    case: WitnessCase,
    n: u32,
    t: T,
    cfg: &JCConfig<T>,
    opt: &OptimizerSettings<T>,
) -> Result<DetectionReport<T>> {
    let dim = case.param_count();
    let angle_idx = case.angle_indices();
    let negativity = match case {
        WitnessCase::Case1 => case1_negativity_closed(n, t, cfg),
        WitnessCase::Case2 => case2_negativity_closed(n, t, cfg)?,
    };
    // Validate the layout once so the objective cannot fail later.
    match case {
        WitnessCase::Case1 => case1_fidelity(&vec![T::zero(); dim], n, t, cfg)?,
        WitnessCase::Case2 => case2_fidelity(&vec![T::zero(); dim], n, t, cfg)?,
    };

    let f = objective(case, n, t, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut best_x = vec![T::zero(); dim];
    let mut best_v = T::infinity();
    let mut evals: u64 = 0;
    let mut any_converged = false;
    for _ in 0..opt.restarts.max(1) {
        let start: Vec<T> = (0..dim)
            .map(|i| {
                let hi = if angle_idx.contains(&i) {
                    std::f64::consts::PI
                } else {
                    std::f64::consts::TAU
                };
                T::of(rng.gen_range(0.0..hi))
            })
            .collect();
        let res = minimize(&f, &start, &opt.nm);
        evals += res.evals;
        any_converged = any_converged || res.converged;
        if res.value < best_v {
            best_v = res.value;
            best_x = res.x;
        }
    }

    let max_fidelity = -best_v;
    let k = T::of(0.5);
    Ok(DetectionReport {
        time: t,
        negativity,
        max_fidelity,
        k,
        detected: max_fidelity > k + T::of(DETECTION_GUARD),
        argmax_params: best_x,
        optimizer_evals: evals,
        seed: opt.seed,
        converged: any_converged,
    })
}

/// One detection report per grid time, each carrying the matching
/// closed-form negativity.
pub fn sweep<T: Scalar>(
    case: WitnessCase,
    n: u32,
    cfg: &JCConfig<T>,
    times: &[T],
    opt: &OptimizerSettings<T>,
) -> Result<Vec<DetectionReport<T>>> {
    if times.is_empty() {
        return Err(Error::InvalidState("empty time grid".into()));
    }
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidState("time grid must be ascending".into()));
        }
    }
    times
        .iter()
        .map(|&t| maximize_fidelity(case, n, t, cfg, opt))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jcmodel::{case1_state, case2_state};
    use crate::linalg::fidelity_pure;
    fn cfg(g: f64, delta: f64, gamma: f64, lambda: f64) -> JCConfig<f64> {
        JCConfig {
            g,
            omega_a: 1.0 + delta,
            omega_f: 1.0,
            gamma,
            lambda,
        }
    }

    #[test]
    fn case1_fidelity_matches_generic_path() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let params: Vec<f64> = (0..8).map(|_| rng.gen_range(-6.0..6.0)).collect();
            let t = rng.gen_range(0.0..6.0);
            let closed = case1_fidelity(&params, 1, t, &c).unwrap();
            let psi = case1_witness_state(&params).unwrap();
            let rho = case1_state(1, t, &c).unwrap();
            let generic = fidelity_pure(&psi, &rho).unwrap();
            assert!(
                (closed - generic).abs() < 1e-10,
                "closed={closed} generic={generic}"
            );
        }
    }

    #[test]
    fn case2_fidelity_matches_generic_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for lam in [0.0, 0.2, 0.7] {
            let c = cfg(1.0, 5.0, 0.0, lam);
            for _ in 0..30 {
                let params: Vec<f64> = (0..13).map(|_| rng.gen_range(-6.0..6.0)).collect();
                let t = rng.gen_range(0.0..6.0);
                let closed = case2_fidelity(&params, 1, t, &c).unwrap();
                let psi = case2_witness_state(&params).unwrap();
                let rho = case2_state(1, t, &c).unwrap();
                let generic = fidelity_pure(&psi, &rho).unwrap();
                assert!(
                    (closed - generic).abs() < 1e-10,
                    "lam={lam} closed={closed} generic={generic}"
                );
            }
        }
    }

    #[test]
    fn case1_zero_params_boundary() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let f = case1_fidelity(&[0.0; 8], 1, 0.0, &c).unwrap();
        assert!((f - 0.5).abs() < 1e-14);
    }

    #[test]
    fn case2_lambda_zero_only_second_branch() {
        let c0 = cfg(1.0, 5.0, 0.0, 0.0);
        let c1 = cfg(1.0, 5.0, 0.0, 1.0);
        let params: Vec<f64> = (0..13).map(|i| 0.3 * i as f64).collect();
        let f0 = case2_fidelity(&params, 1, 1.2, &c0).unwrap();
        let f1 = case2_fidelity(&params, 1, 1.2, &c1).unwrap();
        let cmix = cfg(1.0, 5.0, 0.0, 0.25);
        let fmix = case2_fidelity(&params, 1, 1.2, &cmix).unwrap();
        assert!((fmix - (0.25 * f1 + 0.75 * f0)).abs() < 1e-12);
    }

    #[test]
    fn case2_reduces_to_case1_form_when_eta_theta2_zero() {
        // With η = θ₂ = 0 the field basis freezes its third direction and
        // X₁/X₃ act on the {|n-1>, |n>} block like the case-1 Y's.
        let c = cfg(1.0, 2.0, 0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..10 {
            let t1 = rng.gen_range(0.0..3.0);
            let x0 = rng.gen_range(0.0..6.0);
            let p0 = rng.gen_range(0.0..6.0);
            let p1 = rng.gen_range(0.0..6.0);
            let t1p = rng.gen_range(0.0..3.0);
            let p0p = rng.gen_range(0.0..6.0);
            let p1p = rng.gen_range(0.0..6.0);
            let x0p = rng.gen_range(0.0..6.0);
            let t = rng.gen_range(0.0..4.0);
            // λ=1 selects the branch on {|n-1>, |n>}; compare against the
            // case-1 closed form evaluated with the matching coefficients.
            let params2 = [t1, 0.0, 0.0, x0, 0.0, p0, p1, 0.0, 0.0, t1p, p0p, p1p, x0p];
            let f2 = case2_fidelity(&params2, 1, t, &c).unwrap();
            let co = case2_coefficients(1, t, &c).unwrap();
            let y1 = num_complex::Complex64::new(t1.cos() * t1p.cos(), 0.0)
                + num_complex::Complex64::from_polar(t1.sin() * t1p.sin(), x0 + x0p);
            let y2 = num_complex::Complex64::new(t1.sin() * t1p.sin(), 0.0)
                + num_complex::Complex64::from_polar(t1.cos() * t1p.cos(), x0 + x0p);
            let phase = num_complex::Complex64::from_polar(1.0, p1 - p0 + p1p - p0p);
            let expect = 0.5 * (y1.norm_sqr() * co.a.norm_sqr() + y2.norm_sqr() * co.b.norm_sqr())
                + (y1.conj() * y2 * phase * co.a * co.b.conj()).re;
            assert!((f2 - expect).abs() < 1e-12, "f2={f2} expect={expect}");
        }
    }

    #[test]
    fn global_phase_invariance() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let base: Vec<f64> = vec![0.7, 0.2, 1.1, 0.5, 1.3, 0.9, 2.2, 0.4];
        let f0 = case1_fidelity(&base, 1, 1.5, &c).unwrap();
        let mut shifted = base.clone();
        // Common shift of both field phases φ₀, φ₁.
        shifted[1] += 1.234;
        shifted[2] += 1.234;
        let f1 = case1_fidelity(&shifted, 1, 1.5, &c).unwrap();
        assert!((f0 - f1).abs() < 1e-12);
        // Common shift of both atom phases φ₀', φ₁'.
        let mut shifted = base;
        shifted[5] -= 2.5;
        shifted[6] -= 2.5;
        let f2 = case1_fidelity(&shifted, 1, 1.5, &c).unwrap();
        assert!((f0 - f2).abs() < 1e-12);
    }

    #[test]
    fn maximize_reaches_one_on_maximally_entangled_pure_state() {
        let c = cfg(1.0, 0.0, 0.0, 0.0);
        let t = std::f64::consts::FRAC_PI_4 / crate::jcmodel::rabi(1, &c);
        let rep =
            maximize_fidelity(WitnessCase::Case1, 1, t, &c, &OptimizerSettings::default()).unwrap();
        assert!(rep.max_fidelity >= 1.0 - 1e-6, "got {}", rep.max_fidelity);
        assert!(rep.max_fidelity <= 1.0 + 1e-9);
        assert!(rep.detected);
    }

    #[test]
    fn maximize_boundary_half_at_time_zero() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let rep = maximize_fidelity(
            WitnessCase::Case1,
            1,
            0.0,
            &c,
            &OptimizerSettings::default(),
        )
        .unwrap();
        assert!((rep.max_fidelity - 0.5).abs() < 1e-6);
        assert!(!rep.detected);
    }

    #[test]
    fn maximize_monotone_in_restarts() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let mut prev = 0.0;
        for restarts in [1, 4, 16] {
            let rep = maximize_fidelity(
                WitnessCase::Case1,
                1,
                0.8,
                &c,
                &OptimizerSettings {
                    restarts,
                    seed: 5,
                    nm: NelderMeadOptions::default(),
                },
            )
            .unwrap();
            assert!(rep.max_fidelity >= prev - 1e-15);
            prev = rep.max_fidelity;
        }
    }

    #[test]
    fn sweep_validates_grid() {
        let c = cfg(1.0, 1.0, 0.3, 0.0);
        let opt = OptimizerSettings::default();
        assert!(sweep(WitnessCase::Case1, 1, &c, &[], &opt).is_err());
        assert!(sweep(WitnessCase::Case1, 1, &c, &[1.0, 0.5], &opt).is_err());
    }
}
