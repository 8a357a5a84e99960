//! Primitive idempotents, eigenmatrices and Krein parameters.
//!
//! The decomposition never touches `n x n` matrices: it works in the regular
//! representation of the Bose-Mesner algebra, where multiplication by `A_i`
//! is the `(d+1) x (d+1)` intersection matrix `B_i`. A generic combination
//! `M = sum c_i B_i` has `d+1` simple eigenvalues, and its left eigenvector for
//! the eigenvalue belonging to the character `A_j -> P_{i,j}` is exactly row
//! `i` of the first eigenmatrix (normalised so that `P_{i,0} = 1`).

pub mod direct;
mod eigen;

pub use direct::{idempotent_matrix, DirectSpectrum};

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Matrix, Mode, Scalar, Tensor3, Tolerance};
use crate::scheme::{AssociationScheme, SchemeParameters};

/// Largest class count accepted by [`decompose`].
pub const MAX_DECOMPOSE_CLASSES: usize = 127;

/// Attempts at drawing generic coefficients before giving up.
pub const MAX_ATTEMPTS: usize = 16;

/// Seed for the coefficient re-draws after the first attempt.
const COEFF_SEED: u64 = 0x5eed_b05e_6e57_0001;

pub const ORDERING_CONVENTION: &str =
    "E_0 = J/n; E_1..E_d sorted by the row (P_i1, ..., P_id) in descending lexicographic order";

/// Eigenmatrices and idempotents of a scheme with respect to one ordering of
/// its primitive idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData<S> {
    n: usize,
    p: Matrix<S>,
    q: Matrix<S>,
    m: Vec<S>,
}

impl<S: Scalar> SpectralData<S> {
    /// Derives `Q` and the multiplicities from `P` and the valencies, using
    /// `m_j = n / sum_i P_{j,i}^2 / k_i` and `Q_{i,j} = m_j P_{j,i} / k_i`.
    pub fn from_first_eigenmatrix(n: usize, k: &[u64], p: Matrix<S>) -> Result<Self> {
        let dim = k.len();
        if p.rows() != dim || p.cols() != dim {
            return Err(Error::Inconsistent(format!(
                "first eigenmatrix is {}x{}, expected {dim}x{dim}",
                p.rows(),
                p.cols()
            )));
        }
        let ks: Vec<S> = k.iter().map(|&v| S::from_i64(v as i64)).collect();
        let nn = S::from_usize(n);
        let m: Vec<S> = (0..dim)
            .map(|j| {
                let norm = (0..dim).fold(S::zero(), |acc, i| {
                    acc + p[(j, i)].clone() * p[(j, i)].clone() / ks[i].clone()
                });
                if norm.is_zero() {
                    Err(Error::Inconsistent(format!("row {j} of P is zero")))
                } else {
                    Ok(nn.clone() / norm)
                }
            })
            .collect::<Result<_>>()?;
        let q = Matrix::from_fn(dim, dim, |i, j| {
            m[j].clone() * p[(j, i)].clone() / ks[i].clone()
        });
        Ok(SpectralData { n, p, q, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.m.len() - 1
    }

    /// First eigenmatrix: `A_j = sum_i P_{i,j} E_i`.
    pub fn p(&self) -> &Matrix<S> {
        &self.p
    }

    /// Second eigenmatrix: `E_j = n^{-1} sum_i Q_{i,j} A_i`.
    pub fn q(&self) -> &Matrix<S> {
        &self.q
    }

    /// Multiplicities `m_j = rank E_j`.
    pub fn m(&self) -> &[S] {
        &self.m
    }

    /// Row `j` holds the coefficients of `E_j` in the basis `{A_i}`.
    pub fn e_coeffs(&self) -> Matrix<S> {
        let nn = S::from_usize(self.n);
        Matrix::from_fn(self.d() + 1, self.d() + 1, |j, i| {
            self.q[(i, j)].clone() / nn.clone()
        })
    }

    /// Data with respect to the ordering `E'_i = E_{sigma(i)}`.
    pub(crate) fn permuted(&self, sigma: &[usize]) -> Self {
        SpectralData {
            n: self.n,
            p: self.p.select_rows(sigma),
            q: self.q.select_cols(sigma),
            m: sigma.iter().map(|&s| self.m[s].clone()).collect(),
        }
    }

    /// Checks the identities every decomposition must satisfy:
    /// `PQ = QP = nI`, `P_{0,j} = k_j`, `Q_{0,j} = m_j`, `Q_{i,0} = 1`, `sum m_j = n`.
    pub fn check_identities(&self, k: &[u64], tol: &Tolerance) -> Result<()> {
        let dim = self.d() + 1;
        let n_id = Matrix::<S>::identity(dim).scale(&S::from_usize(self.n));
        if let Some((i, j)) = self.p.mul(&self.q).first_mismatch(&n_id, tol) {
            return Err(Error::Inconsistent(format!("(PQ)_({i},{j}) != n delta")));
        }
        if let Some((i, j)) = self.q.mul(&self.p).first_mismatch(&n_id, tol) {
            return Err(Error::Inconsistent(format!("(QP)_({i},{j}) != n delta")));
        }
        for (j, &kj) in k.iter().enumerate().take(dim) {
            if !self.p[(0, j)].eq_tol(&S::from_i64(kj as i64), tol) {
                return Err(Error::Inconsistent(format!("P_(0,{j}) != k_{j}")));
            }
            if !self.q[(0, j)].eq_tol(&self.m[j], tol) {
                return Err(Error::Inconsistent(format!("Q_(0,{j}) != m_{j}")));
            }
            if !self.q[(j, 0)].eq_tol(&S::one(), tol) {
                return Err(Error::Inconsistent(format!("Q_({j},0) != 1")));
            }
        }
        let total = self.m.iter().fold(S::zero(), |a, b| a + b.clone());
        if !total.eq_tol(&S::from_usize(self.n), tol) {
            return Err(Error::Inconsistent("multiplicities do not sum to n".into()));
        }
        Ok(())
    }
}

/// Krein parameters `q^h_{i,j}` with respect to one ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinTensor<S> {
    pub q: Tensor3<S>,
}

impl<S: Scalar> KreinTensor<S> {
    pub fn get(&self, h: usize, i: usize, j: usize) -> &S {
        self.q.get(h, i, j)
    }

    pub fn d(&self) -> usize {
        self.q.dim() - 1
    }

    /// `q'^h_{i,j} = q^{sigma(h)}_{sigma(i), sigma(j)}`.
    pub(crate) fn permuted(&self, sigma: &[usize]) -> Self {
        KreinTensor {
            q: Tensor3::from_fn(self.q.dim(), |h, i, j| {
                self.q.get(sigma[h], sigma[i], sigma[j]).clone()
            }),
        }
    }
}

/// Computes the primitive idempotents in the canonical ordering
/// (see [`ORDERING_CONVENTION`]).
pub fn decompose<S: Scalar>(
    s: &AssociationScheme,
    params: &SchemeParameters,
    tol: &Tolerance,
) -> Result<SpectralData<S>> {
    let d = params.d();
    if d > MAX_DECOMPOSE_CLASSES {
        return Err(Error::TooLarge {
            what: "class count d",
            value: d,
            bound: MAX_DECOMPOSE_CLASSES,
        });
    }
    let rows = eigen::character_rows::<S>(params, tol)?;
    let dim = d + 1;

    let k_row: Vec<S> = params.k.iter().map(|&v| S::from_i64(v as i64)).collect();
    let trivial = rows
        .iter()
        .position(|r| r.iter().zip(&k_row).all(|(a, b)| a.eq_tol(b, tol)))
        .ok_or_else(|| Error::Inconsistent("no eigenvector matches the valencies".into()))?;

    let mut order: Vec<usize> = (0..dim).filter(|&i| i != trivial).collect();
    order.sort_by(|&a, &b| {
        for (x, y) in rows[b][1..].iter().zip(&rows[a][1..]) {
            match x.cmp_tol(y, tol) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    });
    order.insert(0, trivial);

    let p = Matrix::from_fn(dim, dim, |i, j| rows[order[i]][j].clone());
    let sp = SpectralData::from_first_eigenmatrix(s.n(), &params.k, p)?;
    sp.check_identities(&params.k, tol)?;
    if S::MODE == Mode::Exact {
        if let Some(j) = sp.m.iter().position(|m| m.as_integer(tol).is_none()) {
            return Err(Error::Inconsistent(format!(
                "multiplicity m_{j} is not an integer"
            )));
        }
    }
    Ok(sp)
}

/// `q^h_{i,j} = (m_i m_j / n) sum_r P_{i,r} P_{j,r} P_{h,r} / k_r^2`.
pub fn krein_parameters<S: Scalar>(
    sp: &SpectralData<S>,
    params: &SchemeParameters,
    tol: &Tolerance,
) -> Result<KreinTensor<S>> {
    let dim = sp.d() + 1;
    let nn = S::from_usize(sp.n);
    let inv_k2: Vec<S> = params
        .k
        .iter()
        .map(|&k| S::one() / S::from_i64((k * k) as i64))
        .collect();
    let p = &sp.p;
    let mut q = Tensor3::filled(dim, S::zero());
    for h in 0..dim {
        for i in 0..dim {
            for j in i..dim {
                let sum = (0..dim).fold(S::zero(), |acc, r| {
                    acc + p[(i, r)].clone()
                        * p[(j, r)].clone()
                        * p[(h, r)].clone()
                        * inv_k2[r].clone()
                });
                let v = sp.m[i].clone() * sp.m[j].clone() / nn.clone() * sum;
                q.set(h, i, j, v.clone());
                q.set(h, j, i, v);
            }
        }
    }
    let eps = S::from_f64(tol.eps_eq());
    if let Some((h, i, j)) = q
        .indices()
        .find(|&(h, i, j)| *q.get(h, i, j) < -eps.clone())
    {
        return Err(Error::KreinViolation {
            h,
            i,
            j,
            value: q.get(h, i, j).render(),
        });
    }
    Ok(KreinTensor { q })
}

/// Outcome of reconstructing the intersection numbers from `Q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReconstructionAudit {
    pub ok: bool,
    pub first_mismatch: Option<(usize, usize, usize)>,
    pub max_residual: f64,
}

/// `p^h_{i,j} = (k_i k_j / n) sum_r Q_{i,r} Q_{j,r} Q_{h,r} / m_r^2`, compared
/// against the counted intersection numbers.
pub fn verify_p_from_q<S: Scalar>(
    sp: &SpectralData<S>,
    params: &SchemeParameters,
    tol: &Tolerance,
) -> ReconstructionAudit {
    let dim = sp.d() + 1;
    let nn = S::from_usize(sp.n);
    let inv_m2: Vec<S> =
        sp.m.iter()
            .map(|m| S::one() / (m.clone() * m.clone()))
            .collect();
    let q = &sp.q;
    let mut audit = ReconstructionAudit {
        ok: true,
        first_mismatch: None,
        max_residual: 0.0,
    };
    for h in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let sum = (0..dim).fold(S::zero(), |acc, r| {
                    acc + q[(i, r)].clone()
                        * q[(j, r)].clone()
                        * q[(h, r)].clone()
                        * inv_m2[r].clone()
                });
                let ki = S::from_i64(params.k[i] as i64);
                let kj = S::from_i64(params.k[j] as i64);
                let v = ki * kj / nn.clone() * sum;
                let counted = S::from_i64(params.p(h, i, j) as i64);
                let res = (v.clone() - counted.clone()).abs().to_f64();
                audit.max_residual = audit.max_residual.max(res);
                if !v.eq_tol(&counted, tol) && audit.first_mismatch.is_none() {
                    audit.ok = false;
                    audit.first_mismatch = Some((h, i, j));
                }
            }
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use crate::scheme::{verify_scheme, RelationIndexMatrix};

    fn scheme(rows: &[&[u64]], d: usize) -> AssociationScheme {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        verify_scheme(RelationIndexMatrix::from_rows(&rows, d).unwrap()).unwrap()
    }

    #[test]
    fn two_point_scheme_is_hadamard() {
        let s = scheme(&[&[0, 1], &[1, 0]], 1);
        let tol = Tolerance::exact();
        let sp = decompose::<Rational>(&s, s.params(), &tol).unwrap();
        let h = Matrix::from_i64_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(sp.p(), &h);
        assert_eq!(sp.q(), &h);
        assert!(verify_p_from_q(&sp, s.params(), &tol).ok);
        let kt = krein_parameters(&sp, s.params(), &tol).unwrap();
        assert_eq!(kt.get(0, 1, 1), &sp.m()[1]);
    }

    #[test]
    fn e_coeffs_rows_sum_to_identity() {
        let s = scheme(
            &[&[0, 1, 2, 3], &[1, 0, 3, 2], &[2, 3, 0, 1], &[3, 2, 1, 0]],
            3,
        );
        let sp = decompose::<Rational>(&s, s.params(), &Tolerance::exact()).unwrap();
        let e = sp.e_coeffs();
        for i in 0..4 {
            let col: Rational = (0..4).map(|j| e[(j, i)].clone()).sum();
            let expect = if i == 0 {
                Rational::from_i64(1)
            } else {
                Rational::from_i64(0)
            };
            assert_eq!(col, expect);
        }
        // E_0 = J / n
        assert!(e.row(0).iter().all(|v| *v == Rational::from_ratio(1, 4)));
    }

    #[test]
    fn approx_mode_agrees_with_exact_on_rational_schemes() {
        let s = scheme(
            &[&[0, 1, 2, 3], &[1, 0, 3, 2], &[2, 3, 0, 1], &[3, 2, 1, 0]],
            3,
        );
        let exact = decompose::<Rational>(&s, s.params(), &Tolerance::exact()).unwrap();
        let approx = decompose::<f64>(&s, s.params(), &Tolerance::default_approx()).unwrap();
        let as_f64 = exact.p().map(|v| v.to_f64());
        assert!(approx.p().max_abs_diff(&as_f64) < 1e-9);
    }
}
