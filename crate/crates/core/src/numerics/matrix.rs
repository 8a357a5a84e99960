use std::ops::{Index, IndexMut};

use super::poly::Polynomial;
use super::scalar::{Mode, Scalar, Tolerance};

/// Dense row-major matrix over a [`Scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)].clone()
                * other[(i % other.rows, j % other.cols)].clone()
        })
    }

    pub fn is_symmetric(&self, tol: &Tolerance) -> bool {
        self.first_mismatch(&self.transpose(), tol).is_none()
    }

    /// Lexicographically first `(i, j)` where the two matrices differ beyond tolerance.
    pub fn first_mismatch(&self, other: &Self, tol: &Tolerance) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !self[(i, j)].eq_tol(&other[(i, j)], tol))
    }

    pub fn eq_tol(&self, other: &Self, tol: &Tolerance) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.first_mismatch(other, tol).is_none()
    }

    /// `max |a_ij - b_ij|` as a double (exactly 0 for equal rational matrices).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64())
            .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn select_rows(&self, perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), self.cols, |i, j| self[(perm[i], j)].clone())
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn select_cols(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, perm.len(), |i, j| self[(i, perm[j])].clone())
    }

    fn pivot_row(&self, col: usize, from: usize, tol: &Tolerance) -> Option<usize> {
        match S::MODE {
            Mode::Exact => (from..self.rows).find(|&r| !self[(r, col)].is_zero()),
            Mode::Approx => (from..self.rows)
                .filter(|&r| !self[(r, col)].is_zero_tol(tol))
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .abs()
                        .partial_cmp(&self[(b, col)].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(b.cmp(&a))
                }),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, tol: &Tolerance) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(c, r, tol) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = S::one() / self[(r, c)].clone();
            for j in 0..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        self.clone().rref(tol).len()
    }

    /// A basis of the right null space `{v : A v = 0}`.
    pub fn null_space(&self, tol: &Tolerance) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self, tol: &Tolerance) -> S {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..self.cols {
            let Some(p) = m.pivot_row(c, c, tol) else {
                return S::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..self.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..self.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan; `None` if singular.
    pub fn inverse(&self, tol: &Tolerance) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Characteristic polynomial `det(x I - A)`, via reduction to upper
    /// Hessenberg form followed by the Hessenberg determinant recurrence.
    pub fn characteristic_polynomial(&self, tol: &Tolerance) -> Polynomial<S> {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = h.pivot_row(j, j + 1, tol) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + j + 1);
                }
            }
            let piv = h[(j + 1, j)].clone();
            for i in j + 2..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let f = h[(i, j)].clone() / piv.clone();
                for c in 0..n {
                    let v = h[(i, c)].clone() - f.clone() * h[(j + 1, c)].clone();
                    h[(i, c)] = v;
                }
                for r in 0..n {
                    let v = h[(r, j + 1)].clone() + f.clone() * h[(r, i)].clone();
                    h[(r, j + 1)] = v;
                }
            }
        }
        // polys[k] = charpoly of the leading k x k block.
        let mut polys: Vec<Polynomial<S>> = vec![Polynomial::one()];
        for k in 1..=n {
            let diag = Polynomial::new(vec![-h[(k - 1, k - 1)].clone(), S::one()]);
            let mut pk = diag.mul(&polys[k - 1]);
            let mut prod = S::one();
            for i in 1..k {
                prod = prod * h[(k - i, k - i - 1)].clone();
                let coeff = h[(k - i - 1, k - 1)].clone() * prod.clone();
                pk = pk.sub(&polys[k - i - 1].scale(&coeff));
            }
            polys.push(pk);
        }
        polys.pop().expect("nonempty")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::Rational;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn leibniz_det(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        (0..n)
            .permutations(n)
            .map(|p| {
                let inversions = (0..n)
                    .tuple_combinations()
                    .filter(|&(a, b)| p[a] > p[b])
                    .count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                (0..n).fold(Rational::from_i64(sign), |acc, i| {
                    acc * m[(i, p[i])].clone()
                })
            })
            .fold(Rational::from_i64(0), |a, b| a + b)
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..5, n * n)
                .prop_map(move |v| Matrix::from_fn(n, n, |i, j| Rational::from_i64(v[i * n + j])))
        })
    }

    proptest! {
        #[test]
        fn charpoly_matches_leibniz(m in small_matrix(), t in -5i64..6) {
            let tol = Tolerance::exact();
            let n = m.rows();
            let shifted = Matrix::<Rational>::identity(n)
                .scale(&Rational::from_i64(t))
                .sub(&m);
            let cp = m.characteristic_polynomial(&tol);
            prop_assert_eq!(cp.degree(), Some(n));
            prop_assert_eq!(cp.eval(&Rational::from_i64(t)), leibniz_det(&shifted));
        }

        #[test]
        fn determinant_matches_leibniz(m in small_matrix()) {
            prop_assert_eq!(m.determinant(&Tolerance::exact()), leibniz_det(&m));
        }
    }

    #[test]
    fn inverse_and_null_space() {
        let tol = Tolerance::exact();
        let a = Matrix::<Rational>::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse(&tol).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let s = Matrix::<Rational>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse(&tol).is_none());
        let ns = s.null_space(&tol);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Rational::from_i64(-2), Rational::from_i64(1)]);
    }

    #[test]
    fn kronecker_of_swaps() {
        let x = Matrix::<Rational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let k = x.kronecker(&x);
        let expected =
            Matrix::from_i64_rows(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(k, expected);
    }

    #[test]
    fn approx_charpoly_of_symmetric() {
        let tol = Tolerance::default_approx();
        let a = Matrix::<f64>::from_i64_rows(&[&[2, 1], &[1, 2]]);
        let cp = a.characteristic_polynomial(&tol);
        // x^2 - 4x + 3
        assert!((cp.coeffs()[0] - 3.0).abs() < 1e-12);
        assert!((cp.coeffs()[1] + 4.0).abs() < 1e-12);
    }
}
