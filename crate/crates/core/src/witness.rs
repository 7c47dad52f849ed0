//! Schmidt machinery and projector-based witness operators.
//!
//! The witness built from a pure state |Ψ⟩ is `W = k 1 − |Ψ⟩⟨Ψ|` with `k`
//! the squared maximal Schmidt coefficient of |Ψ⟩, so `Tr(Wσ) ≥ 0` on all
//! separable σ while `Tr(W |Ψ⟩⟨Ψ|) = k − 1 < 0` whenever |Ψ⟩ is entangled.

use ndarray::Array2;
use num_complex::Complex;

use crate::basis::{build_basis, BasisParams};
use crate::error::{Error, Result};
use crate::linalg::{fidelity_pure, hermitian_eigen, CMat, DensityMatrix, Ket};
use crate::scalar::Scalar;

/// Schmidt coefficients below this are truncated from the reported rank.
pub const RANK_TRUNCATION: f64 = 1e-12;

/// Result of a Schmidt decomposition: `ψ = Σ c_i |u_i⟩|v_i⟩` with the
/// coefficients nonnegative and descending.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition<T: Scalar> {
    pub coefficients: Vec<T>,
    pub left: Vec<Ket<T>>,
    pub right: Vec<Ket<T>>,
}

impl<T: Scalar> SchmidtDecomposition<T> {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }
}

/// Decompose a normalized bipartite pure state via the eigendecomposition
/// of its reduced density matrix on subsystem A.
pub fn schmidt_decompose<T: Scalar>(
    psi: &Ket<T>,
    n_a: usize,
    n_b: usize,
) -> Result<SchmidtDecomposition<T>> {
    if psi.dim() != n_a * n_b {
        return Err(Error::DimensionMismatch(format!(
            "ket dim {} != {n_a}*{n_b}",
            psi.dim()
        )));
    }
    // Amplitude matrix M with ψ_{ij} = M[i][j], subsystem A slow.
    let m: CMat<T> = Array2::from_shape_fn((n_a, n_b), |(i, j)| psi.amp(i * n_b + j));
    let rho_a: CMat<T> = Array2::from_shape_fn((n_a, n_a), |(i, k)| {
        (0..n_b)
            .map(|j| m[(i, j)] * m[(k, j)].conj())
            .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x)
    });
    let (vals, vecs) = hermitian_eigen(&rho_a)?;

    let mut coefficients = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    // Ascending eigenvalues; walk from the top.
    for idx in (0..n_a).rev() {
        let lambda = vals[idx].max(T::zero());
        let c = lambda.sqrt();
        if c < T::of(RANK_TRUNCATION) {
            continue;
        }
        let u = Ket::from_array(vecs.column(idx).to_owned());
        // v = M† u / c
        let v_amps: Vec<Complex<T>> = (0..n_b)
            .map(|j| {
                (0..n_a)
                    .map(|i| m[(i, j)].conj() * u.amp(i))
                    .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x)
                    .conj()
                    / Complex::new(c, T::zero())
            })
            .collect();
        coefficients.push(c);
        left.push(u);
        right.push(Ket::new(v_amps));
    }
    Ok(SchmidtDecomposition {
        coefficients,
        left,
        right,
    })
}

/// A pure state in Schmidt form over two parametrized bases.
#[derive(Debug, Clone)]
pub struct SchmidtForm<T: Scalar> {
    n_a: usize,
    n_b: usize,
    alphas: Vec<T>,
    basis_a: BasisParams<T>,
    basis_b: BasisParams<T>,
}

impl<T: Scalar> SchmidtForm<T> {
    /// `alphas` has `rank - 1` entries; the induced Schmidt coefficients are
    /// the hyperspherical chain `(cos α₁, sin α₁ cos α₂, ..., Π sin α_i)`.
    pub fn new(
        n_a: usize,
        n_b: usize,
        alphas: Vec<T>,
        basis_a: BasisParams<T>,
        basis_b: BasisParams<T>,
    ) -> Result<Self> {
        let rank = alphas.len() + 1;
        if rank > n_a.min(n_b) {
            return Err(Error::DimensionMismatch(format!(
                "Schmidt rank {rank} exceeds min({n_a},{n_b})"
            )));
        }
        if basis_a.n() != n_a || basis_b.n() != n_b {
            return Err(Error::DimensionMismatch(format!(
                "basis dims {}/{} do not match subsystem dims {n_a}/{n_b}",
                basis_a.n(),
                basis_b.n()
            )));
        }
        Ok(Self {
            n_a,
            n_b,
            alphas,
            basis_a,
            basis_b,
        })
    }

    pub fn rank(&self) -> usize {
        self.alphas.len() + 1
    }

    /// Hyperspherical coefficients induced by the α angles.
    pub fn coefficients(&self) -> Vec<T> {
        hyperspherical(&self.alphas)
    }
}

/// The chain `(cos α₁, sin α₁ cos α₂, ..., Π sin α_i)`; squares sum to 1.
pub fn hyperspherical<T: Scalar>(alphas: &[T]) -> Vec<T> {
    let rank = alphas.len() + 1;
    let mut out = Vec::with_capacity(rank);
    let mut sin_run = T::one();
    for (i, &a) in alphas.iter().enumerate() {
        out.push(sin_run * a.cos());
        sin_run *= a.sin();
        if i == alphas.len() - 1 {
            out.push(sin_run);
        }
    }
    if alphas.is_empty() {
        out.push(T::one());
    }
    out
}

/// Materialize `Σ_m c_m |Φ^{(m)}⟩|Φ'^{(m)}⟩` as a ket on the composite space.
pub fn schmidt_state<T: Scalar>(form: &SchmidtForm<T>) -> Result<Ket<T>> {
    let basis_a = build_basis(&form.basis_a)?;
    let basis_b = build_basis(&form.basis_b)?;
    let coeffs = form.coefficients();
    let dim = form.n_a * form.n_b;
    let mut out = Ket::new(vec![Complex::new(T::zero(), T::zero()); dim]);
    for (m, &c) in coeffs.iter().enumerate() {
        let term = basis_a[m]
            .tensor(&basis_b[m])
            .scale(Complex::new(c, T::zero()));
        out = out.add(&term);
    }
    Ok(out)
}

/// Two-qubit witness constant `k = (1 + √(1 − C²))/2` from the concurrence
/// `C = 2|a₀₀a₁₁ − a₀₁a₁₀|`.
pub fn k_two_qubit<T: Scalar>(psi: &Ket<T>) -> Result<T> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state required, got dim {}",
            psi.dim()
        )));
    }
    let c = concurrence_two_qubit(psi);
    // Near C = 1 the square root turns ulp-level rounding in C into
    // O(sqrt(eps)) noise in k; snap that band to the maximally
    // entangled value 1/2.
    if c >= T::one() - T::epsilon() * T::of(16.0) {
        return Ok(T::of(0.5));
    }
    let under = (T::one() - c * c).max(T::zero());
    Ok((T::one() + under.sqrt()) / T::of(2.0))
}

/// Pure-state concurrence `2|a₀₀a₁₁ − a₀₁a₁₀|`.
pub fn concurrence_two_qubit<T: Scalar>(psi: &Ket<T>) -> T {
    let det = psi.amp(0) * psi.amp(3) - psi.amp(1) * psi.amp(2);
    T::of(2.0) * det.norm()
}

/// Witness constant for arbitrary dimensions: the squared maximal Schmidt
/// coefficient of `psi`.
pub fn k_general<T: Scalar>(psi: &Ket<T>, n_a: usize, n_b: usize) -> Result<T> {
    let dec = schmidt_decompose(psi, n_a, n_b)?;
    let cmax = dec
        .coefficients
        .first()
        .copied()
        .ok_or_else(|| Error::InvalidState("zero state has no Schmidt coefficients".into()))?;
    Ok(cmax * cmax)
}

/// Projector-based entanglement witness `W = k 1 − |ψ⟩⟨ψ|`.
#[derive(Debug, Clone)]
pub struct WitnessOperator<T: Scalar> {
    k: T,
    projector_state: Ket<T>,
    n_a: usize,
    n_b: usize,
}

impl<T: Scalar> WitnessOperator<T> {
    pub fn k(&self) -> T {
        self.k
    }

    pub fn projector_state(&self) -> &Ket<T> {
        &self.projector_state
    }
}

/// Build the witness for a normalized pure state. A rank-1 (product) input
/// yields `k = 1`, an operator that never reports detection.
pub fn witness_of<T: Scalar>(psi: &Ket<T>, n_a: usize, n_b: usize) -> Result<WitnessOperator<T>> {
    let k = k_general(psi, n_a, n_b)?;
    Ok(WitnessOperator {
        k,
        projector_state: psi.clone(),
        n_a,
        n_b,
    })
}

/// Expectation `Tr(Wρ) = k − ⟨ψ|ρ|ψ⟩`; a negative value certifies
/// entanglement of `rho`.
pub fn expectation<T: Scalar>(w: &WitnessOperator<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if rho.dim_a() != w.n_a || rho.dim_b() != w.n_b {
        return Err(Error::DimensionMismatch(format!(
            "witness on {}x{} applied to {}x{} state",
            w.n_a,
            w.n_b,
            rho.dim_a(),
            rho.dim_b()
        )));
    }
    Ok(w.k - fidelity_pure(&w.projector_state, rho)?)
}
