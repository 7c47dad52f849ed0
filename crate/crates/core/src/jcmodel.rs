//! Jaynes-Cummings dynamics in closed form, plus a truncated-series
//! master-equation oracle for the dephasing case.
//!
//! Case 1: atom starts excited, field in a number state, evolution under
//! phase decoherence. The state stays in the span of `|e,n⟩` and `|g,n+1⟩`
//! and is written on the minimal 2⊗2 block.
//!
//! Case 2: atom starts in a diagonal mixture of `|g⟩` and `|e⟩`, field in
//! `|n⟩`, unitary evolution. The field support is `{|n-1⟩, |n⟩, |n+1⟩}`,
//! giving a 2⊗3 block.
//!
//! Composite ordering is atom (slow) ⊗ field (fast) throughout.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{dagger, matmul, CMat, DensityMatrix};
use crate::scalar::{cis, Scalar};

/// Physical parameters of the atom-field system.
#[derive(Debug, Clone, Copy)]
pub struct JCConfig<T: Scalar> {
    /// Atom-field coupling constant.
    pub g: T,
    /// Atomic transition frequency.
    pub omega_a: T,
    /// Field frequency.
    pub omega_f: T,
    /// Phase decoherence coefficient, ≥ 0.
    pub gamma: T,
    /// Atomic ground-state weight λ of the Case-2 initial mixture.
    pub lambda: T,
}

impl<T: Scalar> JCConfig<T> {
    /// Detuning `Δ = ω_A − ω_F`, always derived.
    pub fn delta(&self) -> T {
        self.omega_a - self.omega_f
    }
}

/// Generalized Rabi frequency `Ω_n = √(Δ²/4 + g²(n+1))`.
pub fn rabi<T: Scalar>(n: u32, cfg: &JCConfig<T>) -> T {
    let d = cfg.delta();
    (d * d / T::of(4.0) + cfg.g * cfg.g * T::of(n as f64 + 1.0)).sqrt()
}

/// Populations and coherence of the Case-1 dephased state.
#[derive(Debug, Clone, Copy)]
pub struct Case1Coefficients<T: Scalar> {
    /// Population of `|e,n⟩`.
    pub excited_pop: T,
    /// Population of `|g,n+1⟩`.
    pub ground_pop: T,
    /// Coherence between `|e,n⟩` and `|g,n+1⟩`.
    pub coherence: Complex<T>,
}

pub fn case1_coefficients<T: Scalar>(n: u32, t: T, cfg: &JCConfig<T>) -> Case1Coefficients<T> {
    let omega = rabi(n, cfg);
    let omega2 = omega * omega;
    let d = cfg.delta();
    let d2w2 = d * d / (T::of(2.0) * omega2);
    let two = T::of(2.0);
    let four = T::of(4.0);
    let damp = (-two * cfg.gamma * t * omega2).exp();
    let cos2 = (two * omega * t).cos();
    let sin2 = (two * omega * t).sin();

    let excited_pop = (two + d2w2 + (two - d2w2) * cos2 * damp) / four;
    let ground_pop =
        cfg.g * cfg.g * T::of(n as f64 + 1.0) / omega2 * (two - two * cos2 * damp) / four;
    let pref = cfg.g * T::of(n as f64 + 1.0).sqrt() / (four * omega);
    let coherence = Complex::new(
        pref * (d / omega) * (T::one() - cos2 * damp),
        pref * two * sin2 * damp,
    );
    Case1Coefficients {
        excited_pop,
        ground_pop,
        coherence,
    }
}

/// Case-1 state on the minimal 2⊗2 block, atom ⊗ `{|n⟩, |n+1⟩}`.
pub fn case1_state<T: Scalar>(n: u32, t: T, cfg: &JCConfig<T>) -> Result<DensityMatrix<T>> {
    let co = case1_coefficients(n, t, cfg);
    let z = Complex::new(T::zero(), T::zero());
    let mut m: CMat<T> = Array2::from_elem((4, 4), z);
    // Block basis: |e,n> = 0, |e,n+1> = 1, |g,n> = 2, |g,n+1> = 3.
    m[(0, 0)] = Complex::new(co.excited_pop, T::zero());
    m[(0, 3)] = co.coherence;
    m[(3, 0)] = co.coherence.conj();
    m[(3, 3)] = Complex::new(co.ground_pop, T::zero());
    DensityMatrix::new(2, 2, m)
}

/// Closed-form negativity of the Case-1 state: the modulus of its single
/// coherence, `|G_n|`.
pub fn case1_negativity_closed<T: Scalar>(n: u32, t: T, cfg: &JCConfig<T>) -> T {
    let omega = rabi(n, cfg);
    let omega2 = omega * omega;
    let d = cfg.delta();
    let two = T::of(2.0);
    let four = T::of(4.0);
    let damp = (-two * cfg.gamma * t * omega2).exp();
    let cos2 = (two * omega * t).cos();
    let sin2 = (two * omega * t).sin();
    let a = (d * d / omega2) * (T::one() - damp * cos2) * (T::one() - damp * cos2);
    let b = four * damp * damp * sin2 * sin2;
    cfg.g * T::of(n as f64 + 1.0).sqrt() / (four * omega) * (a + b).sqrt()
}

/// Amplitudes of the two Case-2 pure branches.
///
/// `a`, `b` are the `|e,n-1⟩` / `|g,n⟩` amplitudes of the branch started in
/// `|g,n⟩` (Rabi frequency Ω_{n-1}); `c`, `d` are the `|e,n⟩` / `|g,n+1⟩`
/// amplitudes of the branch started in `|e,n⟩` (Rabi frequency Ω_n).
#[derive(Debug, Clone, Copy)]
pub struct Case2Coefficients<T: Scalar> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

pub fn case2_coefficients<T: Scalar>(
    n: u32,
    t: T,
    cfg: &JCConfig<T>,
) -> Result<Case2Coefficients<T>> {
    if n == 0 {
        return Err(Error::InvalidState(
            "case 2 requires photon number n >= 1".into(),
        ));
    }
    let half = T::of(0.5);
    let d = cfg.delta();
    let om_lo = rabi(n - 1, cfg);
    let om_hi = rabi(n, cfg);
    let i = Complex::new(T::zero(), T::one());

    let ph_lo = cis(-(cfg.omega_f * (T::of(n as f64) - half) * t));
    let ph_hi = cis(-(cfg.omega_f * (T::of(n as f64) + half) * t));

    let a = -i
        * ph_lo
        * Complex::new(
            cfg.g * T::of(n as f64).sqrt() / om_lo * (om_lo * t).sin(),
            T::zero(),
        );
    let b = ph_lo
        * Complex::new(
            (om_lo * t).cos(),
            d / (T::of(2.0) * om_lo) * (om_lo * t).sin(),
        );
    let c = ph_hi
        * Complex::new(
            (om_hi * t).cos(),
            -(d / (T::of(2.0) * om_hi)) * (om_hi * t).sin(),
        );
    let dd = -i
        * ph_hi
        * Complex::new(
            cfg.g * T::of(n as f64 + 1.0).sqrt() / om_hi * (om_hi * t).sin(),
            T::zero(),
        );
    Ok(Case2Coefficients { a, b, c, d: dd })
}

/// Case-2 state on the 2⊗3 block, atom ⊗ `{|n-1⟩, |n⟩, |n+1⟩}`.
pub fn case2_state<T: Scalar>(n: u32, t: T, cfg: &JCConfig<T>) -> Result<DensityMatrix<T>> {
    let co = case2_coefficients(n, t, cfg)?;
    let lam = Complex::new(cfg.lambda, T::zero());
    let mu = Complex::new(T::one() - cfg.lambda, T::zero());
    let z = Complex::new(T::zero(), T::zero());
    let mut m: CMat<T> = Array2::from_elem((6, 6), z);
    // Block basis: atom {e, g} x field {n-1, n, n+1}.
    let (e_nm1, e_n, g_n, g_np1) = (0, 1, 4, 5);
    m[(e_nm1, e_nm1)] = lam * co.a.norm_sqr().into_c();
    m[(e_nm1, g_n)] = lam * co.a * co.b.conj();
    m[(g_n, e_nm1)] = lam * co.b * co.a.conj();
    m[(g_n, g_n)] = lam * co.b.norm_sqr().into_c();
    m[(e_n, e_n)] = mu * co.c.norm_sqr().into_c();
    m[(e_n, g_np1)] = mu * co.c * co.d.conj();
    m[(g_np1, e_n)] = mu * co.d * co.c.conj();
    m[(g_np1, g_np1)] = mu * co.d.norm_sqr().into_c();
    DensityMatrix::new(2, 3, m)
}

trait IntoC<T: Scalar> {
    fn into_c(self) -> Complex<T>;
}

impl<T: Scalar> IntoC<T> for T {
    fn into_c(self) -> Complex<T> {
        Complex::new(self, T::zero())
    }
}

/// Closed-form negativity of the Case-2 state.
pub fn case2_negativity_closed<T: Scalar>(n: u32, t: T, cfg: &JCConfig<T>) -> Result<T> {
    let co = case2_coefficients(n, t, cfg)?;
    let lam = cfg.lambda;
    let mu = T::one() - cfg.lambda;
    let half = T::of(0.5);
    let four = T::of(4.0);
    let b2 = co.b.norm_sqr();
    let c2 = co.c.norm_sqr();
    let a2 = co.a.norm_sqr();
    let d2 = co.d.norm_sqr();
    let term1 = half * ((lam * lam * b2 * b2 + four * mu * mu * c2 * d2).sqrt() - lam * b2);
    let term2 = half * ((mu * mu * c2 * c2 + four * lam * lam * a2 * b2).sqrt() - mu * c2);
    Ok(term1 + term2)
}

/// JC Hamiltonian on a truncated Fock space of dimension `fock_cut`,
/// atom ⊗ field ordering, ħ = 1.
pub fn jc_hamiltonian<T: Scalar>(cfg: &JCConfig<T>, fock_cut: usize) -> CMat<T> {
    let dim = 2 * fock_cut;
    let z = Complex::new(T::zero(), T::zero());
    let mut h: CMat<T> = Array2::from_elem((dim, dim), z);
    let half = T::of(0.5);
    // Atom index 0 = |e>, 1 = |g>; field index = photon number.
    for s in 0..2 {
        let sz = if s == 0 { half } else { -half };
        for m in 0..fock_cut {
            let idx = s * fock_cut + m;
            h[(idx, idx)] = (cfg.omega_a * sz + cfg.omega_f * T::of(m as f64)).into_c();
        }
    }
    // g (σ₊ a + σ₋ a†): couples |g, m+1> <-> |e, m> with strength g√(m+1).
    for m in 0..fock_cut.saturating_sub(1) {
        let e_m = m;
        let g_m1 = fock_cut + m + 1;
        let v = (cfg.g * T::of(m as f64 + 1.0).sqrt()).into_c();
        h[(e_m, g_m1)] = v;
        h[(g_m1, e_m)] = v;
    }
    h
}

/// Truncated series solution of the dephasing master equation,
/// `ρ(t) = Σ_k (γt)^k/k! M^k ρ(0) M†^k` with
/// `M^k = H^k e^{-iHt} e^{-γtH²/2}`, starting from `|e⟩⟨e| ⊗ |n⟩⟨n|`.
///
/// Serves as the independent oracle for [`case1_state`]. The returned state
/// lives on the full `2 * fock_cut` window.
pub fn master_equation_series<T: Scalar>(
    n: u32,
    t: T,
    cfg: &JCConfig<T>,
    fock_cut: usize,
    k_max: usize,
) -> Result<DensityMatrix<T>> {
    if fock_cut < n as usize + 2 {
        return Err(Error::DimensionMismatch(format!(
            "fock_cut {fock_cut} must be at least n+2 = {}",
            n + 2
        )));
    }
    if cfg.gamma < T::zero() {
        return Err(Error::InvalidState("gamma must be nonnegative".into()));
    }
    let dim = 2 * fock_cut;
    let h = jc_hamiltonian(cfg, fock_cut);
    let (vals, vecs) = crate::linalg::hermitian_eigen(&h)?;

    // M^0 = e^{-iHt} e^{-γtH²/2} via the eigendecomposition of H.
    let z = Complex::new(T::zero(), T::zero());
    let half = T::of(0.5);
    let mut diag: CMat<T> = Array2::from_elem((dim, dim), z);
    for (i, &lam) in vals.iter().enumerate() {
        diag[(i, i)] = cis(-lam * t) * (-cfg.gamma * t * lam * lam * half).exp().into_c();
    }
    let m0 = matmul(&matmul(&vecs, &diag), &dagger(&vecs));

    // Initial state |e><e| ⊗ |n><n|.
    let mut rho0: CMat<T> = Array2::from_elem((dim, dim), z);
    rho0[(n as usize, n as usize)] = T::one().into_c();

    // Propagated zeroth term, then multiply by H on both sides each step.
    let mut term = matmul(&matmul(&m0, &rho0), &dagger(&m0));
    let mut acc = term.clone();
    let gt = cfg.gamma * t;
    let mut factor = T::one();
    let mut last_contrib = T::zero();
    for k in 1..=k_max {
        term = matmul(&matmul(&h, &term), &h);
        factor = factor * gt / T::of(k as f64);
        if factor == T::zero() {
            last_contrib = T::zero();
            break;
        }
        let fc = factor.into_c();
        let mut contrib = T::zero();
        for i in 0..dim {
            for j in 0..dim {
                let add = term[(i, j)] * fc;
                acc[(i, j)] += add;
                contrib = contrib.max(add.norm());
            }
        }
        last_contrib = contrib;
        if contrib < T::of(1e-10) {
            break;
        }
    }
    if last_contrib > T::of(1e-10) {
        return Err(Error::SeriesNotConverged(
            last_contrib.to_f64().unwrap_or(f64::NAN),
        ));
    }
    // Terms can fall under the cutoff individually while the tail still
    // carries weight; the trace deficit catches that.
    let deficit = (crate::linalg::trace(&acc).re - T::one()).abs();
    if deficit > T::of(1e-8) {
        return Err(Error::SeriesNotConverged(
            deficit.to_f64().unwrap_or(f64::NAN),
        ));
    }
    DensityMatrix::new(2, fock_cut, acc)
}

/// Embed the Case-1 2⊗2 block state into the `2 * fock_cut` window used by
/// the series oracle.
pub fn case1_state_embedded<T: Scalar>(
    n: u32,
    t: T,
    cfg: &JCConfig<T>,
    fock_cut: usize,
) -> Result<DensityMatrix<T>> {
    if fock_cut < n as usize + 2 {
        return Err(Error::DimensionMismatch(format!(
            "fock_cut {fock_cut} must be at least n+2 = {}",
            n + 2
        )));
    }
    let co = case1_coefficients(n, t, cfg);
    let dim = 2 * fock_cut;
    let z = Complex::new(T::zero(), T::zero());
    let mut m: CMat<T> = Array2::from_elem((dim, dim), z);
    let e_n = n as usize;
    let g_np1 = fock_cut + n as usize + 1;
    m[(e_n, e_n)] = co.excited_pop.into_c();
    m[(e_n, g_np1)] = co.coherence;
    m[(g_np1, e_n)] = co.coherence.conj();
    m[(g_np1, g_np1)] = co.ground_pop.into_c();
    DensityMatrix::new(2, fock_cut, m)
}
