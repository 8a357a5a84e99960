//! Eigenmatrices and Krein parameters recomputed from materialised `n x n`
//! idempotents. Independent of the closed formulas used by the fast path and
//! meant for cross-checking on small schemes.

use super::SpectralData;
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Scalar, Tensor3, Tolerance};
use crate::scheme::AssociationScheme;

/// Largest `n` for which idempotents are materialised.
pub const MATERIALIZE_LIMIT: usize = 64;

/// `E_j = n^{-1} sum_i Q_{i,j} A_i` as an `n x n` matrix.
pub fn idempotent_matrix<S: Scalar>(
    s: &AssociationScheme,
    sp: &SpectralData<S>,
    j: usize,
) -> Matrix<S> {
    let e = sp.e_coeffs();
    s.materialize(e.row(j))
}

/// Residuals of the idempotent identities and the three parameter sets
/// recovered from a list of matrices `E_0, ..., E_d`.
#[derive(Clone, Debug)]
pub struct DirectSpectrum<S> {
    pub p: Matrix<S>,
    pub q: Matrix<S>,
    pub krein: Tensor3<S>,
    /// `max |E_i E_j - delta_ij E_i|`.
    pub orthogonality_residual: f64,
    /// `max |sum_i E_i - I|`.
    pub resolution_residual: f64,
}

impl<S: Scalar> DirectSpectrum<S> {
    /// Uses `A_j E_i = P_{i,j} E_i`, the entries of `E_j` on each relation, and
    /// `q^h_{i,j} = n tr((E_i o E_j) E_h) / tr E_h`.
    pub fn from_idempotents(
        s: &AssociationScheme,
        e: &[Matrix<S>],
        tol: &Tolerance,
    ) -> Result<Self> {
        let n = s.n();
        let dim = s.d() + 1;
        if n > MATERIALIZE_LIMIT {
            return Err(Error::TooLarge {
                what: "n (materialised idempotents)",
                value: n,
                bound: MATERIALIZE_LIMIT,
            });
        }
        if e.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "expected {dim} idempotents, got {}",
                e.len()
            )));
        }
        let rel = s.relations();
        let nn = S::from_usize(n);

        let mut orth: f64 = 0.0;
        let zero = Matrix::<S>::zeros(n, n);
        for i in 0..dim {
            for j in 0..dim {
                let prod = e[i].mul(&e[j]);
                let target = if i == j { &e[i] } else { &zero };
                orth = orth.max(prod.max_abs_diff(target));
            }
        }
        let sum = e.iter().skip(1).fold(e[0].clone(), |acc, m| acc.add(m));
        let resolution = sum.max_abs_diff(&Matrix::identity(n));

        let traces: Vec<S> = e.iter().map(Matrix::trace).collect();
        if let Some(i) = traces.iter().position(|t| t.is_zero_tol(tol)) {
            return Err(Error::Inconsistent(format!(
                "idempotent {i} has zero trace"
            )));
        }

        // tr(A_j E_i) = sum of E_i over the pairs of R_j (E_i symmetric).
        let mut rel_sums = Matrix::<S>::zeros(dim, dim);
        for x in 0..n {
            for y in 0..n {
                let j = rel.get(x, y);
                for i in 0..dim {
                    let v = rel_sums[(i, j)].clone() + e[i][(x, y)].clone();
                    rel_sums[(i, j)] = v;
                }
            }
        }
        let p = Matrix::from_fn(dim, dim, |i, j| {
            rel_sums[(i, j)].clone() / traces[i].clone()
        });

        let mut rep = vec![None; dim];
        for x in 0..n {
            for y in 0..n {
                rep[rel.get(x, y)].get_or_insert((x, y));
            }
        }
        let q = Matrix::from_fn(dim, dim, |i, j| {
            let (x, y) = rep[i].expect("relation occurs");
            nn.clone() * e[j][(x, y)].clone()
        });
        for x in 0..n {
            for y in 0..n {
                let i = rel.get(x, y);
                for j in 0..dim {
                    let expected = q[(i, j)].clone() / nn.clone();
                    if !e[j][(x, y)].eq_tol(&expected, tol) {
                        return Err(Error::Inconsistent(format!(
                            "E_{j} is not constant on relation {i} at ({x},{y})"
                        )));
                    }
                }
            }
        }

        let products: Vec<Vec<Matrix<S>>> = (0..dim)
            .map(|i| (0..dim).map(|j| e[i].hadamard(&e[j])).collect())
            .collect();
        let krein = Tensor3::from_fn(dim, |h, i, j| {
            let tr = products[i][j]
                .hadamard(&e[h])
                .to_rows()
                .into_iter()
                .flatten()
                .fold(S::zero(), |a, b| a + b);
            nn.clone() * tr / traces[h].clone()
        });

        Ok(DirectSpectrum {
            p,
            q,
            krein,
            orthogonality_residual: orth,
            resolution_residual: resolution,
        })
    }

    /// Materialises the idempotents of `sp` (in its ordering) and recomputes.
    pub fn of(s: &AssociationScheme, sp: &SpectralData<S>, tol: &Tolerance) -> Result<Self> {
        let e: Vec<Matrix<S>> = (0..=sp.d()).map(|j| idempotent_matrix(s, sp, j)).collect();
        Self::from_idempotents(s, &e, tol)
    }
}
