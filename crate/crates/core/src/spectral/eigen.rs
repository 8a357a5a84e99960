use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{COEFF_SEED, MAX_ATTEMPTS};
use crate::error::{Error, Result};
use crate::numerics::{cluster, Matrix, Mode, Scalar, Tolerance};
use crate::scheme::SchemeParameters;

/// Powers of two stay exactly representable (and well separated) in a double
/// only up to this class count; larger schemes start with random coefficients.
const POWER_OF_TWO_LIMIT: usize = 24;

enum Attempt<T> {
    Done(T),
    Collision,
}

/// The rows `(P_{i,0}, ..., P_{i,d})` of the first eigenmatrix, one per
/// character, in no particular order.
pub(super) fn character_rows<S: Scalar>(
    params: &SchemeParameters,
    tol: &Tolerance,
) -> Result<Vec<Vec<S>>> {
    let dim = params.d() + 1;
    let b: Vec<Matrix<S>> = (0..dim).map(|i| params.intersection_matrix(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(COEFF_SEED);
    let use_powers = params.d() <= POWER_OF_TWO_LIMIT;

    for attempt in 0..MAX_ATTEMPTS {
        let coeffs: Vec<i64> = if attempt == 0 && use_powers {
            (0..dim)
                .map(|i| if i == 0 { 0 } else { 1i64 << (i - 1) })
                .collect()
        } else {
            let hi = 64 * dim as i64;
            (0..dim)
                .map(|i| if i == 0 { 0 } else { rng.random_range(1..=hi) })
                .collect()
        };
        let m = coeffs
            .iter()
            .zip(&b)
            .fold(Matrix::<S>::zeros(dim, dim), |acc, (&c, bi)| {
                if c == 0 {
                    acc
                } else {
                    acc.add(&bi.scale(&S::from_i64(c)))
                }
            });
        let sym = symmetrized(&m, &params.k);
        let outcome = match S::MODE {
            Mode::Exact => exact_rows(&m, &sym, tol)?,
            Mode::Approx => approx_rows(&sym, &params.k, tol)?,
        };
        if let Attempt::Done(rows) = outcome {
            return Ok(rows);
        }
    }
    Err(Error::ClusterAmbiguity {
        attempts: MAX_ATTEMPTS,
    })
}

/// `D M D^{-1}` with `D = diag(sqrt k)`, which is symmetric because
/// `k_h p^h_{i,j} = k_j p^j_{i,h}`.
fn symmetrized<S: Scalar>(m: &Matrix<S>, k: &[u64]) -> DMatrix<f64> {
    let dim = k.len();
    let sk: Vec<f64> = k.iter().map(|&v| (v as f64).sqrt()).collect();
    let raw = DMatrix::from_fn(dim, dim, |h, j| sk[h] * m[(h, j)].to_f64() / sk[j]);
    // Average out rounding asymmetry before the symmetric solver.
    (&raw + raw.transpose()) * 0.5
}

fn exact_rows<S: Scalar>(
    m: &Matrix<S>,
    sym: &DMatrix<f64>,
    tol: &Tolerance,
) -> Result<Attempt<Vec<Vec<S>>>> {
    let dim = m.rows();
    let seeds = sym.clone().symmetric_eigenvalues();
    let mut residual = m.characteristic_polynomial(tol);
    let mut roots: Vec<S> = Vec::with_capacity(dim);

    // The characteristic polynomial is monic with integer coefficients, so its
    // rational roots are integers; the numeric eigenvalues locate them.
    for &approx in seeds.iter() {
        let centre = approx.round() as i64;
        let window = 1 + (approx.abs() * 1e-12) as i64;
        for t in centre - window..=centre + window {
            let root = S::from_i64(t);
            if roots.contains(&root) {
                continue;
            }
            let (quot, rem) = residual.div_linear(&root);
            if !rem.is_zero() {
                continue;
            }
            if quot.div_linear(&root).1.is_zero() {
                return Ok(Attempt::Collision);
            }
            residual = quot;
            roots.push(root);
        }
    }
    if residual.degree().unwrap_or(0) > 0 {
        return Err(Error::IrrationalSpectrum {
            residual: residual.to_string(),
        });
    }
    debug_assert_eq!(roots.len(), dim);

    roots
        .iter()
        .map(|theta| {
            let shifted = m.sub(&Matrix::identity(dim).scale(theta)).transpose();
            let ns = shifted.null_space(tol);
            match ns.as_slice() {
                [v] if !v[0].is_zero() => {
                    let v0 = v[0].clone();
                    Ok(v.iter().map(|x| x.clone() / v0.clone()).collect())
                }
                _ => Err(Error::Inconsistent(format!(
                    "eigenvalue {} does not have a one-dimensional left eigenspace with nonzero A_0 component",
                    theta.render()
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Attempt::Done)
}

fn approx_rows<S: Scalar>(
    sym: &DMatrix<f64>,
    k: &[u64],
    tol: &Tolerance,
) -> Result<Attempt<Vec<Vec<S>>>> {
    let dim = k.len();
    let eig = sym.clone().symmetric_eigen();
    let values: Vec<S> = eig.eigenvalues.iter().map(|&v| S::from_f64(v)).collect();
    if cluster(&values, tol).len() != dim {
        return Ok(Attempt::Collision);
    }
    let mut sorted: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    sorted.sort_by(f64::total_cmp);
    if sorted
        .windows(2)
        .any(|w| w[1] - w[0] < 10.0 * tol.eps_cluster())
    {
        return Ok(Attempt::Collision);
    }
    let sk: Vec<f64> = k.iter().map(|&v| (v as f64).sqrt()).collect();
    (0..dim)
        .map(|c| {
            let w = eig.eigenvectors.column(c);
            let v: Vec<f64> = (0..dim).map(|h| sk[h] * w[h]).collect();
            if v[0].abs() < 1e-12 {
                return Err(Error::Inconsistent(
                    "eigenvector with vanishing A_0 component".into(),
                ));
            }
            Ok(v.iter().map(|x| S::from_f64(x / v[0])).collect())
        })
        .collect::<Result<Vec<_>>>()
        .map(Attempt::Done)
}
