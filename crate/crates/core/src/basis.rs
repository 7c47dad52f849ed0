//! Fully parametrized orthonormal bases of C^n.
//!
//! A basis of dimension `n` is built level by level: at level `m` a
//! hyperspherical head vector is formed over the working basis left by the
//! previous level, and the next working basis is the set of derivative
//! complement vectors of that head. Level 0 starts from the computational
//! basis. The construction uses `n(n-1)/2` angles and `n(n+1)/2` phases,
//! the dimension of U(n).

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMat, Ket};
use crate::scalar::{cis, Scalar};

/// Angles and phases of the recursive basis construction.
///
/// `angles[m]` holds the `n-m-1` angles of level `m`; `phases[m]` holds its
/// `n-m` phases. Any real values are accepted; they enter only through
/// sines, cosines, and unit phases.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisParams<T: Scalar> {
    n: usize,
    angles: Vec<Vec<T>>,
    phases: Vec<Vec<T>>,
}

impl<T: Scalar> BasisParams<T> {
    pub fn new(n: usize, angles: Vec<Vec<T>>, phases: Vec<Vec<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParamCount("dimension must be >= 1".into()));
        }
        if angles.len() != n || phases.len() != n {
            return Err(Error::ParamCount(format!(
                "expected {n} levels, got {} angle rows and {} phase rows",
                angles.len(),
                phases.len()
            )));
        }
        for m in 0..n {
            if angles[m].len() != n - m - 1 {
                return Err(Error::ParamCount(format!(
                    "level {m}: expected {} angles, got {}",
                    n - m - 1,
                    angles[m].len()
                )));
            }
            if phases[m].len() != n - m {
                return Err(Error::ParamCount(format!(
                    "level {m}: expected {} phases, got {}",
                    n - m,
                    phases[m].len()
                )));
            }
        }
        Ok(Self { n, angles, phases })
    }

    /// All angles and phases zero.
    pub fn identity(n: usize) -> Self {
        let angles = (0..n).map(|m| vec![T::zero(); n - m - 1]).collect();
        let phases = (0..n).map(|m| vec![T::zero(); n - m]).collect();
        Self { n, angles, phases }
    }

    /// Rebuild from a flat slice laid out level by level, angles of a level
    /// first, then its phases: `[θ^{(0)}.., φ^{(0)}.., θ^{(1)}.., φ^{(1)}.., ...]`.
    pub fn from_flat(n: usize, flat: &[T]) -> Result<Self> {
        if flat.len() != n * n {
            return Err(Error::ParamCount(format!(
                "expected {} parameters for n={n}, got {}",
                n * n,
                flat.len()
            )));
        }
        let mut angles = Vec::with_capacity(n);
        let mut phases = Vec::with_capacity(n);
        let mut pos = 0;
        for m in 0..n {
            let na = n - m - 1;
            angles.push(flat[pos..pos + na].to_vec());
            pos += na;
            let np = n - m;
            phases.push(flat[pos..pos + np].to_vec());
            pos += np;
        }
        Ok(Self { n, angles, phases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[Vec<T>] {
        &self.angles
    }

    pub fn phases(&self) -> &[Vec<T>] {
        &self.phases
    }

    pub fn angle_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn phase_count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Angles and phases reduced mod 2π into `[0, 2π)`.
    pub fn canonicalize(&self) -> Self {
        let tau = T::TAU();
        let wrap = |x: &T| {
            let r = *x % tau;
            if r < T::zero() {
                r + tau
            } else {
                r
            }
        };
        Self {
            n: self.n,
            angles: self
                .angles
                .iter()
                .map(|l| l.iter().map(wrap).collect())
                .collect(),
            phases: self
                .phases
                .iter()
                .map(|l| l.iter().map(wrap).collect())
                .collect(),
        }
    }
}

fn check_counts<T: Scalar>(d: usize, theta: &[T], phi: &[T]) -> Result<()> {
    if d == 0 {
        return Err(Error::ParamCount("level basis must be nonempty".into()));
    }
    if theta.len() != d - 1 || phi.len() != d {
        return Err(Error::ParamCount(format!(
            "level of dimension {d} needs {} angles and {d} phases, got {} and {}",
            d - 1,
            theta.len(),
            phi.len()
        )));
    }
    Ok(())
}

/// Hyperspherical head vector over an orthonormal working basis.
///
/// Coefficient of basis vector `j` is
/// `e^{iφ_j} cos θ_{j+1} Π_{l<=j} sin θ_l` for `j < d-1` and
/// `e^{iφ_{d-1}} Π_l sin θ_l` for the last one; unit norm by construction.
pub fn head_vector<T: Scalar>(level_basis: &[Ket<T>], theta: &[T], phi: &[T]) -> Result<Ket<T>> {
    let d = level_basis.len();
    check_counts(d, theta, phi)?;
    let dim = level_basis[0].dim();
    let mut out = Ket::new(vec![Complex::new(T::zero(), T::zero()); dim]);
    let mut sin_run = T::one();
    for j in 0..d {
        let mag = if j < d - 1 {
            sin_run * theta[j].cos()
        } else {
            sin_run
        };
        out = out.add(&level_basis[j].scale(cis(phi[j]) * Complex::new(mag, T::zero())));
        if j < d - 1 {
            sin_run *= theta[j].sin();
        }
    }
    Ok(out)
}

/// Derivative complement vectors of the head at this level.
///
/// The `k`-th vector (`k = 1..d-1`) is the θ_k derivative of the head with
/// θ_1..θ_{k-1} set to π/2 after differentiation, in closed form. Each is
/// unit norm, orthogonal to the head and to all earlier complements.
pub fn complement_vectors<T: Scalar>(
    level_basis: &[Ket<T>],
    theta: &[T],
    phi: &[T],
) -> Result<Vec<Ket<T>>> {
    let d = level_basis.len();
    check_counts(d, theta, phi)?;
    if d < 2 {
        return Err(Error::ParamCount(
            "complement vectors need level dimension >= 2".into(),
        ));
    }
    let dim = level_basis[0].dim();
    let mut out = Vec::with_capacity(d - 1);
    for k in 1..d {
        let mut vec = Ket::new(vec![Complex::new(T::zero(), T::zero()); dim]);
        for j in (k - 1)..d {
            let mag = if j == k - 1 {
                -theta[k - 1].sin()
            } else {
                // cos θ_k times the sine run from θ_{k+1} up to θ_j,
                // capped by cos θ_{j+1} except on the last entry.
                let mut m = theta[k - 1].cos();
                for l in (k + 1)..=j {
                    m *= theta[l - 1].sin();
                }
                if j < d - 1 {
                    m *= theta[j].cos();
                }
                m
            };
            vec = vec.add(&level_basis[j].scale(cis(phi[j]) * Complex::new(mag, T::zero())));
        }
        out.push(vec);
    }
    Ok(out)
}

/// Build the full orthonormal basis `(|Φ^{(0)}⟩, ..., |Φ^{(n-1)}⟩)`.
pub fn build_basis<T: Scalar>(params: &BasisParams<T>) -> Result<Vec<Ket<T>>> {
    let n = params.n();
    let mut working: Vec<Ket<T>> = (0..n).map(|i| Ket::basis_state(n, i)).collect();
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let theta = &params.angles()[m];
        let phi = &params.phases()[m];
        out.push(head_vector(&working, theta, phi)?);
        if m + 1 < n {
            working = complement_vectors(&working, theta, phi)?;
        }
    }
    Ok(out)
}

/// The unitary whose row `m` holds the coefficients of `|Φ^{(m)}⟩` in the
/// computational basis.
pub fn unitary_of<T: Scalar>(params: &BasisParams<T>) -> Result<CMat<T>> {
    let basis = build_basis(params)?;
    let n = params.n();
    Ok(Array2::from_shape_fn((n, n), |(m, i)| basis[m].amp(i)))
}

/// Determinant of a small complex matrix by Gaussian elimination with
/// partial pivoting.
pub fn determinant<T: Scalar>(m: &CMat<T>) -> Complex<T> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut det = Complex::new(T::one(), T::zero());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[(i, col)]
                    .norm_sqr()
                    .partial_cmp(&a[(j, col)].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if a[(pivot, col)].norm_sqr() == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            det = -det;
        }
        det *= a[(col, col)];
        for i in (col + 1)..n {
            let f = a[(i, col)] / a[(col, col)];
            for j in col..n {
                let sub = f * a[(col, j)];
                a[(i, j)] -= sub;
            }
        }
    }
    det
}

/// Shift the top phase of the last level so `det U = 1`.
///
/// That phase multiplies only `|Φ^{(n-1)}⟩`, so subtracting the determinant
/// phase from it rotates the determinant to 1 without touching any other
/// basis vector.
pub fn su_constraint<T: Scalar>(params: &BasisParams<T>) -> Result<BasisParams<T>> {
    let u = unitary_of(params)?;
    let det = determinant(&u);
    let delta = det.im.atan2(det.re);
    let mut adjusted = params.clone();
    let last = adjusted.n - 1;
    adjusted.phases[last][0] -= delta;
    Ok(adjusted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dagger;
    use crate::linalg::matmul;
    use num_complex::Complex64 as C64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_params(n: usize, rng: &mut impl Rng) -> BasisParams<f64> {
        let flat: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-6.0..6.0)).collect();
        BasisParams::from_flat(n, &flat).unwrap()
    }

    /// Eq.-(13)-style pair for n=2, written out independently.
    fn closed_form_n2(t1: f64, p0: f64, p1: f64, x0: f64) -> [[C64; 2]; 2] {
        let e = |x: f64| C64::new(0.0, x).exp();
        [
            [t1.cos() * e(p0), t1.sin() * e(p1)],
            [-t1.sin() * e(p0 + x0), t1.cos() * e(p1 + x0)],
        ]
    }

    /// Closed-form triple for n=3 with aliases η, ξ, ζ.
    #[allow(clippy::too_many_arguments)]
    fn closed_form_n3(
        t1: f64,
        t2: f64,
        e1: f64,
        p0: f64,
        p1: f64,
        p2: f64,
        x0: f64,
        x1: f64,
        z0: f64,
    ) -> [[C64; 3]; 3] {
        let e = |x: f64| C64::new(0.0, x).exp();
        [
            [
                t1.cos() * e(p0),
                t1.sin() * t2.cos() * e(p1),
                t1.sin() * t2.sin() * e(p2),
            ],
            [
                -e1.cos() * t1.sin() * e(p0 + x0),
                e1.cos() * t1.cos() * t2.cos() * e(x0 + p1) - e1.sin() * t2.sin() * e(x1 + p1),
                e1.cos() * t1.cos() * t2.sin() * e(x0 + p2) + e1.sin() * t2.cos() * e(x1 + p2),
            ],
            [
                e1.sin() * t1.sin() * e(z0 + p0 + x0),
                -(e1.sin() * t1.cos() * t2.cos() * e(z0 + x0 + p1)
                    + e1.cos() * t2.sin() * e(z0 + x1 + p1)),
                -e1.sin() * t1.cos() * t2.sin() * e(z0 + x0 + p2)
                    + e1.cos() * t2.cos() * e(z0 + x1 + p2),
            ],
        ]
    }

    #[test]
    fn param_counts_enforced() {
        assert!(BasisParams::new(2, vec![vec![0.0]], vec![vec![0.0; 2], vec![0.0]]).is_err());
        assert!(BasisParams::<f64>::from_flat(3, &[0.0; 8]).is_err());
        let p = BasisParams::<f64>::identity(4);
        assert_eq!(p.angle_count(), 6);
        assert_eq!(p.phase_count(), 10);
    }

    #[test]
    fn head_vector_single_level() {
        let b = vec![Ket::<f64>::basis_state(1, 0)];
        let h = head_vector(&b, &[], &[0.7]).unwrap();
        assert!((h.amp(0) - C64::new(0.0, 0.7).exp()).norm() < 1e-15);
    }

    #[test]
    fn head_vector_two_level() {
        let b = vec![Ket::<f64>::basis_state(2, 0), Ket::basis_state(2, 1)];
        let (t1, p0, p1) = (0.4, 1.1, -0.6);
        let h = head_vector(&b, &[t1], &[p0, p1]).unwrap();
        assert!((h.amp(0) - t1.cos() * C64::new(0.0, p0).exp()).norm() < 1e-15);
        assert!((h.amp(1) - t1.sin() * C64::new(0.0, p1).exp()).norm() < 1e-15);
    }

    #[test]
    fn complement_all_right_angles() {
        // With every θ = π/2 the k-th complement collapses to a single entry.
        let d = 5;
        let b: Vec<Ket<f64>> = (0..d).map(|i| Ket::basis_state(d, i)).collect();
        let theta = vec![std::f64::consts::FRAC_PI_2; d - 1];
        let phi = vec![0.3; d];
        let comps = complement_vectors(&b, &theta, &phi).unwrap();
        for (k, comp) in comps.iter().enumerate() {
            for j in 0..d {
                let expect = if j == k {
                    -C64::new(0.0, 0.3).exp()
                } else {
                    C64::new(0.0, 0.0)
                };
                assert!((comp.amp(j) - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn n2_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (t1, p0, p1, x0) = (
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
            );
            let params =
                BasisParams::new(2, vec![vec![t1], vec![]], vec![vec![p0, p1], vec![x0]]).unwrap();
            let basis = build_basis(&params).unwrap();
            let expect = closed_form_n2(t1, p0, p1, x0);
            for (m, row) in expect.iter().enumerate() {
                for (i, &e) in row.iter().enumerate() {
                    assert!((basis[m].amp(i) - e).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn n3_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let v: Vec<f64> = (0..9).map(|_| rng.gen_range(-6.0..6.0)).collect();
            let (t1, t2, e1, p0, p1, p2, x0, x1, z0) =
                (v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]);
            let params = BasisParams::new(
                3,
                vec![vec![t1, t2], vec![e1], vec![]],
                vec![vec![p0, p1, p2], vec![x0, x1], vec![z0]],
            )
            .unwrap();
            let basis = build_basis(&params).unwrap();
            let expect = closed_form_n3(t1, t2, e1, p0, p1, p2, x0, x1, z0);
            for (m, row) in expect.iter().enumerate() {
                for (i, &e) in row.iter().enumerate() {
                    assert!(
                        (basis[m].amp(i) - e).norm() < 1e-12,
                        "mismatch at ({m},{i})"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_params_give_signed_permutation() {
        for n in 2..=5 {
            let u = unitary_of(&BasisParams::<f64>::identity(n)).unwrap();
            for i in 0..n {
                let mut nonzero = 0;
                for j in 0..n {
                    let a = u[(i, j)].norm();
                    if a > 1e-12 {
                        nonzero += 1;
                        assert!((a - 1.0).abs() < 1e-12);
                        assert!(u[(i, j)].im.abs() < 1e-12);
                    }
                }
                assert_eq!(nonzero, 1);
            }
            assert!((determinant(&u).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitarity_random_n5() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = unitary_of(&random_params(5, &mut rng)).unwrap();
        let prod = matmul(&dagger(&u), &u);
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - C64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn determinant_phase_n2() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let (t1, p0, p1, x0) = (
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            );
            let params =
                BasisParams::new(2, vec![vec![t1], vec![]], vec![vec![p0, p1], vec![x0]]).unwrap();
            let det = determinant(&unitary_of(&params).unwrap());
            let expect = C64::new(0.0, p0 + p1 + x0).exp();
            assert!((det - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_phase_is_sum_of_all_phases() {
        // Empirical phase-sum law: the determinant phase is the sum of every
        // phase parameter, including each level's φ_0.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for _ in 0..10 {
                let params = random_params(n, &mut rng);
                let det = determinant(&unitary_of(&params).unwrap());
                let sum: f64 = params.phases().iter().flatten().sum();
                assert!((det - C64::new(0.0, sum).exp()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn su_constraint_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let params = random_params(4, &mut rng);
            let adjusted = su_constraint(&params).unwrap();
            let det = determinant(&unitary_of(&adjusted).unwrap());
            assert!((det - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn su_constraint_idempotent_on_special_params() {
        let params = su_constraint(&BasisParams::<f64>::identity(3)).unwrap();
        let again = su_constraint(&params).unwrap();
        for m in 0..3 {
            for (a, b) in params.phases()[m].iter().zip(again.phases()[m].iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn canonicalize_wraps_mod_tau() {
        let params = BasisParams::new(
            2,
            vec![vec![-1.0], vec![]],
            vec![vec![7.0, -0.5], vec![13.0]],
        )
        .unwrap();
        let c = params.canonicalize();
        for level in c.angles().iter().chain(c.phases().iter()) {
            for &x in level {
                assert!((0.0..std::f64::consts::TAU).contains(&x));
            }
        }
    }
}
