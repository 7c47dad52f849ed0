//! Derivative-free simplex minimization (Nelder-Mead).

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions<T: Scalar> {
    pub max_iters: usize,
    /// Convergence tolerance on the simplex diameter.
    pub diameter_tol: T,
    /// Edge length of the initial simplex.
    pub initial_step: T,
}

impl<T: Scalar> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self {
            max_iters: 4000,
            diameter_tol: T::of(1e-9),
            initial_step: T::of(0.25),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult<T: Scalar> {
    pub x: Vec<T>,
    pub value: T,
    pub evals: u64,
    pub converged: bool,
}

fn diameter<T: Scalar>(simplex: &[Vec<T>]) -> T {
    let best = &simplex[0];
    let mut d = T::zero();
    for v in simplex.iter().skip(1) {
        for (a, b) in v.iter().zip(best.iter()) {
            let diff = (*a - *b).abs();
            if diff > d {
                d = diff;
            }
        }
    }
    d
}

/// Minimize `f` from `x0` with the standard reflection/expansion/contraction
/// coefficients (1, 2, 1/2, 1/2).
pub fn minimize<T: Scalar, F: FnMut(&[T]) -> T>(
    mut f: F,
    x0: &[T],
    opts: &NelderMeadOptions<T>,
) -> NelderMeadResult<T> {
    let dim = x0.len();
    let mut evals: u64 = 0;
    let mut eval = |x: &[T], evals: &mut u64| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<T> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let half = T::of(0.5);
    let two = T::of(2.0);
    let mut converged = false;
    for _ in 0..opts.max_iters {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if diameter(&simplex) < opts.diameter_tol {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![T::zero(); dim];
        for v in simplex.iter().take(dim) {
            for (c, x) in centroid.iter_mut().zip(v.iter()) {
                *c += *x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= T::of(dim as f64);
        }

        let worst = simplex[dim].clone();
        let reflect: Vec<T> = centroid
            .iter()
            .zip(worst.iter())
            .map(|(c, w)| *c + (*c - *w))
            .collect();
        let fr = eval(&reflect, &mut evals);

        if fr < values[0] {
            let expand: Vec<T> = centroid
                .iter()
                .zip(worst.iter())
                .map(|(c, w)| *c + two * (*c - *w))
                .collect();
            let fe = eval(&expand, &mut evals);
            if fe < fr {
                simplex[dim] = expand;
                values[dim] = fe;
            } else {
                simplex[dim] = reflect;
                values[dim] = fr;
            }
        } else if fr < values[dim - 1] {
            simplex[dim] = reflect;
            values[dim] = fr;
        } else {
            let (base, fbase) = if fr < values[dim] {
                (reflect.clone(), fr)
            } else {
                (worst.clone(), values[dim])
            };
            let contract: Vec<T> = centroid
                .iter()
                .zip(base.iter())
                .map(|(c, b)| *c + half * (*b - *c))
                .collect();
            let fc = eval(&contract, &mut evals);
            if fc < fbase {
                simplex[dim] = contract;
                values[dim] = fc;
            } else {
                // Shrink toward the best vertex.
                for i in 1..=dim {
                    let shrunk: Vec<T> = simplex[0]
                        .iter()
                        .zip(simplex[i].iter())
                        .map(|(b, v)| *b + half * (*v - *b))
                        .collect();
                    values[i] = eval(&shrunk, &mut evals);
                    simplex[i] = shrunk;
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if values[i] < values[best] {
            best = i;
        }
    }
    NelderMeadResult {
        x: simplex[best].clone(),
        value: values[best],
        evals,
        converged,
    }
}
