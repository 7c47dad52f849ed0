//! Dense complex linear algebra for small bipartite systems: tensor
//! products, partial transpose, Hermitian eigenvalues (cyclic Jacobi),
//! negativity, and pure-state fidelity.

use ndarray::{Array1, Array2};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type CVec<T> = Array1<Complex<T>>;
pub type CMat<T> = Array2<Complex<T>>;

/// Tolerances shared by every module, in the sense of absolute deviations.
pub mod tol {
    /// Hermiticity check on density matrices and eigensolver inputs.
    pub const HERMITICITY: f64 = 1e-10;
    /// Unit-trace / unit-norm checks.
    pub const NORMALIZATION: f64 = 1e-10;
    /// Eigenvalue residuals and derived quantities.
    pub const EIGEN_RESIDUAL: f64 = 1e-9;
    /// Norm check for kets explicitly marked normalized.
    pub const KET_NORM: f64 = 1e-12;
    /// Allowed negative eigenvalue on physical density matrices.
    pub const PSD_FLOOR: f64 = 1e-10;
}

/// Which tensor factor of a bipartite operator an operation acts on.
///
/// The composite index convention is row-major with subsystem A slow:
/// basis state `|i⟩_A |j⟩_B` sits at index `i * dim_b + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// A complex state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T: Scalar> {
    amps: CVec<T>,
}

impl<T: Scalar> Ket<T> {
    pub fn new(amps: Vec<Complex<T>>) -> Self {
        Self {
            amps: Array1::from(amps),
        }
    }

    pub fn from_array(amps: CVec<T>) -> Self {
        Self { amps }
    }

    /// Computational basis state `|i⟩` in dimension `dim`.
    pub fn basis_state(dim: usize, i: usize) -> Self {
        let mut amps = Array1::zeros(dim);
        amps[i] = Complex::new(T::one(), T::zero());
        Self { amps }
    }

    /// Construct and verify unit norm within `tol::KET_NORM`.
    pub fn normalized(amps: Vec<Complex<T>>) -> Result<Self> {
        let ket = Self::new(amps);
        let dev = (ket.norm_sqr() - T::one()).abs();
        if dev > T::of(tol::KET_NORM) {
            return Err(Error::InvalidState(format!(
                "ket squared norm deviates from 1 by {dev}"
            )));
        }
        Ok(ket)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &CVec<T> {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex<T> {
        self.amps[i]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        Self {
            amps: self.amps.mapv(|a| a / n),
        }
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x)
    }

    /// Kronecker product; `self` is the slow (first) factor.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Array1::zeros(self.dim() * other.dim());
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * other.dim() + j] = *a * *b;
            }
        }
        Self { amps }
    }

    /// Outer product `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> CMat<T> {
        let d = self.dim();
        Array2::from_shape_fn((d, d), |(i, j)| self.amps[i] * self.amps[j].conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            amps: self.amps.mapv(|a| a * c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            amps: &self.amps + &other.amps,
        }
    }
}

/// A bipartite density matrix with explicit subsystem dimensions.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Scalar> {
    dim_a: usize,
    dim_b: usize,
    mat: CMat<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validate Hermiticity, unit trace, and positivity before wrapping.
    pub fn new(dim_a: usize, dim_b: usize, mat: CMat<T>) -> Result<Self> {
        let d = dim_a * dim_b;
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "declared dims {dim_a}x{dim_b} but matrix is {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let herm = hermiticity_deviation(&mat);
        if herm > T::of(tol::HERMITICITY) {
            return Err(Error::NotHermitian(herm.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = trace(&mat);
        if (tr.re - T::one()).abs() > T::of(tol::NORMALIZATION) {
            return Err(Error::InvalidState(format!("trace {} != 1", tr.re)));
        }
        let eigs = hermitian_eigenvalues_unchecked(&mat)?;
        if eigs[0] < -T::of(tol::PSD_FLOOR) {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {}",
                eigs[0]
            )));
        }
        Ok(Self { dim_a, dim_b, mat })
    }

    pub fn from_pure(psi: &Ket<T>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if psi.dim() != dim_a * dim_b {
            return Err(Error::DimensionMismatch(format!(
                "ket dim {} != {dim_a}*{dim_b}",
                psi.dim()
            )));
        }
        Self::new(dim_a, dim_b, psi.projector())
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let d = dim_a * dim_b;
        let w = Complex::new(T::one() / T::of(d as f64), T::zero());
        let mat = CMat::<T>::eye(d).mapv(|x| x * w);
        Self { dim_a, dim_b, mat }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn mat(&self) -> &CMat<T> {
        &self.mat
    }

    /// Kronecker product; the two operands become the A/B split of the result.
    pub fn tensor(&self, other: &Self) -> Self {
        DensityMatrix {
            dim_a: self.dim(),
            dim_b: other.dim(),
            mat: kron(&self.mat, &other.mat),
        }
    }

    /// Convex mixture `Σ w_i ρ_i`; weights must sum to 1.
    pub fn mix(parts: &[(T, DensityMatrix<T>)]) -> Result<Self> {
        let (dim_a, dim_b) = match parts.first() {
            Some((_, r)) => (r.dim_a, r.dim_b),
            None => return Err(Error::InvalidState("empty mixture".into())),
        };
        let d = dim_a * dim_b;
        let mut mat: CMat<T> = Array2::zeros((d, d));
        for (w, r) in parts {
            let wc = Complex::new(*w, T::zero());
            mat = mat + r.mat.mapv(|x| x * wc);
        }
        Self::new(dim_a, dim_b, mat)
    }

    /// Reduced state of subsystem A (trace over B).
    pub fn reduce_a(&self) -> CMat<T> {
        let (na, nb) = (self.dim_a, self.dim_b);
        Array2::from_shape_fn((na, na), |(i, k)| {
            (0..nb)
                .map(|j| self.mat[(i * nb + j, k * nb + j)])
                .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x)
        })
    }
}

pub fn trace<T: Scalar>(m: &CMat<T>) -> Complex<T> {
    m.diag()
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + *x)
}

pub fn hermiticity_deviation<T: Scalar>(m: &CMat<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

pub fn kron<T: Scalar>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    Array2::from_shape_fn((ra * rb, ca * cb), |(i, j)| {
        a[(i / rb, j / cb)] * b[(i % rb, j % cb)]
    })
}

pub fn matmul<T: Scalar>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    let (n, k) = a.dim();
    let m = b.ncols();
    let mut out: CMat<T> = Array2::zeros((n, m));
    for i in 0..n {
        for l in 0..k {
            let ail = a[(i, l)];
            if ail.norm_sqr() == T::zero() {
                continue;
            }
            for j in 0..m {
                out[(i, j)] += ail * b[(l, j)];
            }
        }
    }
    out
}

pub fn dagger<T: Scalar>(m: &CMat<T>) -> CMat<T> {
    Array2::from_shape_fn((m.ncols(), m.nrows()), |(i, j)| m[(j, i)].conj())
}

/// Block-index transpose on one tensor factor.
///
/// Output is Hermitian with unit trace but not necessarily positive; a
/// negative eigenvalue certifies entanglement of the input.
pub fn partial_transpose<T: Scalar>(rho: &DensityMatrix<T>, part: Subsystem) -> CMat<T> {
    let (na, nb) = (rho.dim_a(), rho.dim_b());
    let d = na * nb;
    let m = rho.mat();
    Array2::from_shape_fn((d, d), |(r, c)| {
        let (i, j) = (r / nb, r % nb);
        let (k, l) = (c / nb, c % nb);
        match part {
            Subsystem::First => m[(k * nb + j, i * nb + l)],
            Subsystem::Second => m[(i * nb + l, k * nb + j)],
        }
    })
}

fn offdiag_frob<T: Scalar>(a: &CMat<T>) -> T {
    let mut s = T::zero();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues ascending and the unitary whose columns are the
/// matching eigenvectors. No Hermiticity check; see [`hermitian_eigen`].
fn jacobi_eigen<T: Scalar>(m: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v: CMat<T> = CMat::eye(n);
    let scale = a.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
    if scale == T::zero() {
        return Ok((vec![T::zero(); n], v));
    }
    let stop = scale * T::epsilon() * T::of(n as f64);

    const MAX_SWEEPS: usize = 60;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if offdiag_frob(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let babs = b.norm();
                if babs <= scale * T::epsilon() {
                    continue;
                }
                // Phase that makes the pivot real, then a real Jacobi angle.
                let omega = b / Complex::new(babs, T::zero());
                let tau = (a[(q, q)].re - a[(p, p)].re) / (T::of(2.0) * babs);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let sw = Complex::new(s, T::zero()) * omega;

                // A <- J† A J with the rotation in the (p,q) plane.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * sw.conj();
                    a[(i, q)] = aip * sw + aiq * c;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * sw;
                    a[(q, j)] = apj * sw.conj() + aqj * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sw.conj();
                    v[(i, q)] = vip * sw + viq * c;
                }
            }
        }
    }
    if !converged && offdiag_frob(&a) > stop {
        return Err(Error::EigNotConverged(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let vals: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let vecs = Array2::from_shape_fn((n, n), |(i, j)| v[(i, order[j])]);
    Ok((vals, vecs))
}

fn hermitian_eigenvalues_unchecked<T: Scalar>(m: &CMat<T>) -> Result<Vec<T>> {
    jacobi_eigen(m).map(|(vals, _)| vals)
}

/// Eigenvalues of a Hermitian matrix, ascending. Errors on inputs that
/// deviate from Hermiticity by more than `tol::HERMITICITY`.
pub fn hermitian_eigenvalues<T: Scalar>(m: &CMat<T>) -> Result<Vec<T>> {
    let dev = hermiticity_deviation(m);
    if dev > T::of(tol::HERMITICITY) {
        return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
    }
    hermitian_eigenvalues_unchecked(m)
}

/// Full eigendecomposition of a Hermitian matrix: `(values, vectors)` with
/// values ascending and vectors as columns.
pub fn hermitian_eigen<T: Scalar>(m: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    let dev = hermiticity_deviation(m);
    if dev > T::of(tol::HERMITICITY) {
        return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
    }
    jacobi_eigen(m)
}

/// Negativity `(‖ρ^{T_A}‖₁ − 1)/2`, computed as the absolute sum of negative
/// eigenvalues of the partial transpose. Zero for all separable inputs.
pub fn negativity<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let pt = partial_transpose(rho, Subsystem::First);
    let eigs = hermitian_eigenvalues_unchecked(&pt)?;
    Ok(eigs
        .into_iter()
        .filter(|&e| e < T::zero())
        .fold(T::zero(), |acc, e| acc - e))
}

/// Fidelity `⟨ψ|ρ|ψ⟩` of a pure state against a density matrix, clamped
/// to `[0, 1]`.
pub fn fidelity_pure<T: Scalar>(psi: &Ket<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ket dim {} vs density dim {}",
            psi.dim(),
            rho.dim()
        )));
    }
    let mut f = Complex::new(T::zero(), T::zero());
    for i in 0..psi.dim() {
        for j in 0..psi.dim() {
            f += psi.amp(i).conj() * rho.mat()[(i, j)] * psi.amp(j);
        }
    }
    Ok(f.re.max(T::zero()).min(T::one()))
}
