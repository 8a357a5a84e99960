//! Symmetric association schemes given by their relation-index matrix.
//!
//! A scheme on `n` points with `d` classes is stored as one `n x n` array whose
//! `(x, y)` entry is the index `i` of the relation `R_i` containing `(x, y)`.
//! Associate matrices are materialised only on request.

mod scm;

pub use scm::{parse_scm, read_scm, write_scm};

use crate::error::{Error, Result, Violation};
use crate::numerics::{Matrix, Scalar, Tensor3};

/// Largest `n` for which axiom (iv) is checked on every ordered pair.
pub const EXHAUSTIVE_VERIFY_LIMIT: usize = 512;

/// Rows checked (in full) when `n` exceeds [`EXHAUSTIVE_VERIFY_LIMIT`].
const SAMPLED_ROWS: usize = 64;

/// The relation-index matrix `r` with `r[x][y] = i` iff `(x, y)` lies in `R_i`.
///
/// Construction checks the structural axioms (partition, diagonal relation,
/// symmetry, nonempty relations) but not the regularity axiom; see
/// [`verify_scheme`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationIndexMatrix {
    n: usize,
    d: usize,
    r: Vec<u32>,
}

impl RelationIndexMatrix {
    pub fn new(n: usize, d: usize, entries: Vec<u64>) -> Result<Self, Violation> {
        if n == 0 || entries.len() != n * n {
            return Err(Violation::Shape {
                rows: entries.len().checked_div(n).unwrap_or(0),
                n,
            });
        }
        let mut r = Vec::with_capacity(n * n);
        for (idx, &v) in entries.iter().enumerate() {
            if v > d as u64 {
                return Err(Violation::OutOfRange {
                    x: idx / n,
                    y: idx % n,
                    value: v,
                    d,
                });
            }
            r.push(v as u32);
        }
        let rel = RelationIndexMatrix { n, d, r };
        rel.check_structure()?;
        Ok(rel)
    }

    pub fn from_rows(rows: &[Vec<u64>], d: usize) -> Result<Self, Violation> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Violation::Shape { rows: bad.len(), n });
        }
        Self::new(n, d, rows.concat())
    }

    /// Builds `r[x][y] = f(x, y)`; used by fixture generators.
    pub fn from_fn(
        n: usize,
        d: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, Violation> {
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n) as u64).collect();
        Self::new(n, d, entries)
    }

    fn check_structure(&self) -> Result<(), Violation> {
        let n = self.n;
        let mut seen = vec![false; self.d + 1];
        for x in 0..n {
            for y in 0..n {
                let v = self.get(x, y);
                seen[v] = true;
                if x == y && v != 0 {
                    return Err(Violation::NonzeroDiagonal { x, value: v });
                }
                if x != y && v == 0 {
                    return Err(Violation::ZeroOffDiagonal { x, y });
                }
                let w = self.get(y, x);
                if v != w {
                    return Err(Violation::Asymmetric { x, y, xy: v, yx: w });
                }
            }
        }
        if let Some(index) = seen.iter().position(|s| !s) {
            return Err(Violation::MissingRelation { index });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.r[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.r[x * self.n..(x + 1) * self.n]
    }
}

/// Intersection numbers `p^h_{i,j}` and valencies `k_i = p^0_{i,i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeParameters {
    pub p: Tensor3<u64>,
    pub k: Vec<u64>,
}

impl SchemeParameters {
    pub fn d(&self) -> usize {
        self.k.len() - 1
    }

    pub fn p(&self, h: usize, i: usize, j: usize) -> u64 {
        *self.p.get(h, i, j)
    }

    /// The `(d+1) x (d+1)` intersection matrix `B_i` with `(B_i)_{h,j} = p^h_{i,j}`,
    /// i.e. the matrix of multiplication by `A_i` in the basis `{A_j}`.
    pub fn intersection_matrix<S: Scalar>(&self, i: usize) -> Matrix<S> {
        let dim = self.d() + 1;
        Matrix::from_fn(dim, dim, |h, j| S::from_i64(self.p(h, i, j) as i64))
    }

    pub fn p_as<S: Scalar>(&self) -> Tensor3<S> {
        Tensor3::from_fn(self.d() + 1, |h, i, j| S::from_i64(self.p(h, i, j) as i64))
    }
}

/// A relation-index matrix that satisfies every scheme axiom.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociationScheme {
    relations: RelationIndexMatrix,
    params: SchemeParameters,
    exhaustively_verified: bool,
}

impl AssociationScheme {
    pub fn relations(&self) -> &RelationIndexMatrix {
        &self.relations
    }

    pub fn n(&self) -> usize {
        self.relations.n
    }

    pub fn d(&self) -> usize {
        self.relations.d
    }

    /// Whether axiom (iv) was checked on every pair rather than a row sample.
    pub fn exhaustively_verified(&self) -> bool {
        self.exhaustively_verified
    }

    pub fn params(&self) -> &SchemeParameters {
        &self.params
    }

    /// The 0/1 indicator matrix `A_i` of relation `R_i`.
    pub fn associate_matrix<S: Scalar>(&self, i: usize) -> Result<Matrix<S>> {
        if i > self.d() {
            return Err(Error::InvalidArgument(format!(
                "relation index {i} out of range 0..={}",
                self.d()
            )));
        }
        let n = self.n();
        Ok(Matrix::from_fn(n, n, |x, y| {
            if self.relations.get(x, y) == i {
                S::one()
            } else {
                S::zero()
            }
        }))
    }

    /// `sum_i coeffs[i] A_i` as an `n x n` matrix.
    pub fn materialize<S: Scalar>(&self, coeffs: &[S]) -> Matrix<S> {
        assert_eq!(coeffs.len(), self.d() + 1);
        let n = self.n();
        Matrix::from_fn(n, n, |x, y| coeffs[self.relations.get(x, y)].clone())
    }
}

/// Checks the regularity axiom and computes the intersection numbers.
///
/// For every ordered pair `(x, y)` the multiset of `(r[x][z], r[z][y])` over all
/// `z` must depend only on `r[x][y]`. The first pair (in row-major order) that
/// disagrees with the representative of its relation is reported together with
/// the lexicographically first `(i, j)` whose count differs.
pub fn verify_scheme(rel: RelationIndexMatrix) -> Result<AssociationScheme> {
    let n = rel.n;
    let d = rel.d;
    let dim = d + 1;
    let code = |x: usize, y: usize, z: usize| rel.get(x, z) * dim + rel.get(z, y);

    // Representative pair for each relation: first occurrence in row-major order.
    let mut rep: Vec<Option<(usize, usize)>> = vec![None; dim];
    for x in 0..n {
        for y in 0..n {
            let h = rel.get(x, y);
            if rep[h].is_none() {
                rep[h] = Some((x, y));
            }
        }
    }
    let rep: Vec<(usize, usize)> = rep
        .into_iter()
        .map(|r| r.expect("all relations occur"))
        .collect();

    let mut p = Tensor3::filled(dim, 0u64);
    let rep_codes: Vec<Vec<usize>> = rep
        .iter()
        .enumerate()
        .map(|(h, &(x, y))| {
            let codes: Vec<usize> = (0..n).map(|z| code(x, y, z)).collect();
            for &c in &codes {
                let (i, j) = (c / dim, c % dim);
                let v = *p.get(h, i, j);
                p.set(h, i, j, v + 1);
            }
            codes
        })
        .collect();

    let exhaustive = n <= EXHAUSTIVE_VERIFY_LIMIT;
    let rows: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        let step = n.div_ceil(SAMPLED_ROWS);
        (0..n).step_by(step).collect()
    };

    let mut counts = vec![0i64; dim * dim];
    for &x in &rows {
        for y in 0..n {
            let h = rel.get(x, y);
            if (x, y) == rep[h] {
                continue;
            }
            for z in 0..n {
                counts[code(x, y, z)] += 1;
            }
            for &c in &rep_codes[h] {
                counts[c] -= 1;
            }
            let mut first_bad: Option<usize> = None;
            for z in 0..n {
                let c = code(x, y, z);
                if counts[c] != 0 && first_bad.is_none_or(|b| c < b) {
                    first_bad = Some(c);
                }
            }
            for &c in &rep_codes[h] {
                if counts[c] != 0 && first_bad.is_none_or(|b| c < b) {
                    first_bad = Some(c);
                }
            }
            if let Some(c) = first_bad {
                let (i, j) = (c / dim, c % dim);
                let count_at =
                    |(a, b): (usize, usize)| (0..n).filter(|&z| code(a, b, z) == c).count();
                return Err(Violation::NotRegular {
                    h,
                    i,
                    j,
                    first: rep[h],
                    first_count: count_at(rep[h]),
                    second: (x, y),
                    second_count: count_at((x, y)),
                }
                .into());
            }
            for z in 0..n {
                counts[code(x, y, z)] = 0;
            }
        }
    }

    let k = (0..dim).map(|i| *p.get(0, i, i)).collect();
    Ok(AssociationScheme {
        relations: rel,
        params: SchemeParameters { p, k },
        exhaustively_verified: exhaustive,
    })
}

/// The intersection numbers of a verified scheme.
pub fn intersection_numbers(s: &AssociationScheme) -> SchemeParameters {
    s.params.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Rational, Tolerance};

    fn rel(rows: &[&[u64]], d: usize) -> Result<RelationIndexMatrix, Violation> {
        RelationIndexMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), d)
    }

    fn x2() -> RelationIndexMatrix {
        rel(
            &[&[0, 1, 2, 3], &[1, 0, 3, 2], &[2, 3, 0, 1], &[3, 2, 1, 0]],
            3,
        )
        .unwrap()
    }

    #[test]
    fn two_point_scheme() {
        let s = verify_scheme(rel(&[&[0, 1], &[1, 0]], 1).unwrap()).unwrap();
        assert_eq!(s.d(), 1);
        assert_eq!(s.params().k, vec![1, 1]);
        assert_eq!(s.params().p(1, 1, 0), 1);
        assert_eq!(s.params().p(0, 1, 1), 1);
        let a1 = s.associate_matrix::<Rational>(1).unwrap();
        assert_eq!(a1, Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn group_scheme_of_order_four() {
        let s = verify_scheme(x2()).unwrap();
        assert_eq!(s.params().k, vec![1, 1, 1, 1]);
        for (h, i, j) in s.params().p.indices() {
            assert_eq!(s.params().p(h, i, j), u64::from(i ^ j == h));
        }
        let a11 = s.associate_matrix::<Rational>(3).unwrap();
        let expected =
            Matrix::from_i64_rows(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(a11, expected);
        assert_eq!(
            s.associate_matrix::<Rational>(0).unwrap(),
            Matrix::identity(4)
        );
        assert!(s.associate_matrix::<Rational>(4).is_err());
    }

    #[test]
    fn flipped_entry_breaks_regularity() {
        // (0,1) and (1,0) moved from R_1 to R_2.
        let r = rel(
            &[&[0, 2, 2, 3], &[2, 0, 3, 2], &[2, 3, 0, 1], &[3, 2, 1, 0]],
            3,
        )
        .unwrap();
        match verify_scheme(r) {
            Err(Error::Axiom(Violation::NotRegular {
                h,
                first_count,
                second_count,
                ..
            })) => {
                assert!(h <= 3);
                assert_ne!(first_count, second_count);
            }
            other => panic!("expected regularity violation, got {other:?}"),
        }
    }

    #[test]
    fn structural_violations_carry_coordinates() {
        assert_eq!(
            rel(&[&[0, 1], &[2, 0]], 2).unwrap_err(),
            Violation::Asymmetric {
                x: 0,
                y: 1,
                xy: 1,
                yx: 2
            }
        );
        assert_eq!(
            rel(&[&[1, 1], &[1, 0]], 1).unwrap_err(),
            Violation::NonzeroDiagonal { x: 0, value: 1 }
        );
        assert_eq!(
            rel(&[&[0, 1], &[1, 0]], 2).unwrap_err(),
            Violation::MissingRelation { index: 2 }
        );
        assert_eq!(
            rel(&[&[0, 0], &[0, 0]], 0).unwrap_err(),
            Violation::ZeroOffDiagonal { x: 0, y: 1 }
        );
        assert!(matches!(
            rel(&[&[0, 5], &[5, 0]], 1).unwrap_err(),
            Violation::OutOfRange {
                x: 0,
                y: 1,
                value: 5,
                d: 1
            }
        ));
    }

    #[test]
    fn associate_matrices_multiply_by_intersection_numbers() {
        let s = verify_scheme(x2()).unwrap();
        let tol = Tolerance::exact();
        let a: Vec<Matrix<Rational>> = (0..4).map(|i| s.associate_matrix(i).unwrap()).collect();
        let sum = a.iter().skip(1).fold(a[0].clone(), |acc, m| acc.add(m));
        assert_eq!(sum, Matrix::from_fn(4, 4, |_, _| Rational::from_i64(1)));
        for i in 0..4 {
            for j in 0..4 {
                let lhs = a[i].mul(&a[j]);
                let rhs = (0..4).fold(Matrix::zeros(4, 4), |acc, h| {
                    acc.add(&a[h].scale(&Rational::from_i64(s.params().p(h, i, j) as i64)))
                });
                assert!(lhs.eq_tol(&rhs, &tol));
            }
        }
    }
}
