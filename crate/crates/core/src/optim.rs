//! Deterministic Nelder–Mead simplex minimizer.
//!
//! Used by the GARCH and GPD maximum-likelihood fits. Both run in transformed
//! unconstrained coordinates, so no bound handling is needed here. The
//! implementation is the textbook simplex with fixed coefficients
//! (reflect 1, expand 2, contract 1/2, shrink 1/2), a fixed axis-aligned
//! initial simplex, and a stable ordering — repeated runs on identical inputs
//! are bit-identical, which the fitting contracts require. Objectives may
//! return NaN or ±∞ for infeasible points; both sort as worst.

use crate::scalar::Scalar;

/// Simplex settings. The defaults match the fitting contracts elsewhere in
/// the crate: 1e−8 absolute tolerance on the objective spread, 10,000
/// iterations, initial step 0.25 per coordinate.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions<F> {
    /// Convergence tolerance on |f(worst) − f(best)|.
    pub tolerance: F,
    /// Maximum iterations before giving up (best-so-far is still returned).
    pub max_iterations: usize,
    /// Displacement along each axis for the initial simplex.
    pub initial_step: F,
}

impl<F: Scalar> Default for SimplexOptions<F> {
    fn default() -> Self {
        SimplexOptions {
            tolerance: F::cst(1e-8),
            max_iterations: 10_000,
            initial_step: F::cst(0.25),
        }
    }
}

/// Outcome of a simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult<F> {
    /// Best point found.
    pub x: Vec<F>,
    /// Objective value at `x`.
    pub value: F,
    /// Iterations consumed.
    pub iterations: usize,
    /// Whether the spread tolerance was met within the iteration budget.
    pub converged: bool,
}

/// Minimizes `f` from `x0`. Dimension is `x0.len()`.
pub fn minimize<F, Obj>(f: Obj, x0: &[F], opts: &SimplexOptions<F>) -> SimplexResult<F>
where
    F: Scalar,
    Obj: Fn(&[F]) -> F,
{
    let dim = x0.len();
    assert!(dim >= 1, "objective must have at least one coordinate");

    // worst-case ordering key: NaN and +inf both lose to any finite value
    let key = |v: F| if v.is_nan() { F::infinity() } else { v };

    let mut simplex: Vec<(Vec<F>, F)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] = v[i] + opts.initial_step;
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iterations {
        // stable sort keeps insertion order on ties → deterministic
        simplex.sort_by(|a, b| {
            key(a.1)
                .partial_cmp(&key(b.1))
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if (key(worst) - key(best)).abs() < opts.tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        // centroid of all but the worst vertex
        let mut centroid = vec![F::zero(); dim];
        for (v, _) in simplex.iter().take(dim) {
            for (c, &vi) in centroid.iter_mut().zip(v) {
                *c = *c + vi;
            }
        }
        let inv_n = F::one() / F::of_usize(dim);
        for c in centroid.iter_mut() {
            *c = *c * inv_n;
        }

        let worst_x = simplex[dim].0.clone();
        let blend = |a: F, b: F| -> Vec<F> {
            centroid
                .iter()
                .zip(&worst_x)
                .map(|(&c, &w)| a * c + b * w)
                .collect()
        };

        let two = F::cst(2.0);
        let half = F::cst(0.5);

        let reflected = blend(two, -F::one());
        let fr = f(&reflected);

        if key(fr) < key(simplex[0].1) {
            // try to expand past the reflection
            let expanded = blend(F::cst(3.0), -two);
            let fe = f(&expanded);
            simplex[dim] = if key(fe) < key(fr) {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if key(fr) < key(simplex[dim - 1].1) {
            simplex[dim] = (reflected, fr);
            continue;
        }

        // contraction: outside if the reflection improved on the worst,
        // inside otherwise
        let contracted = if key(fr) < key(simplex[dim].1) {
            blend(F::cst(1.5), -half)
        } else {
            blend(half, half)
        };
        let fc = f(&contracted);
        if key(fc) < key(simplex[dim].1).min(key(fr)) {
            simplex[dim] = (contracted, fc);
            continue;
        }

        // shrink toward the best vertex
        let best_x = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            for (vi, &bi) in entry.0.iter_mut().zip(&best_x) {
                *vi = bi + half * (*vi - bi);
            }
            entry.1 = f(&entry.0);
        }
    }

    simplex.sort_by(|a, b| {
        key(a.1)
            .partial_cmp(&key(b.1))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let (x, value) = simplex.swap_remove(0);
    SimplexResult {
        x,
        value,
        iterations,
        converged,
    }
}
