//! The group scheme of `G = Z_2^m`: relations `R_x = {(y, y + x)}`, characters
//! `(-1)^<x,y>`, and the orderings of its idempotents induced by bijections of `G`.
//!
//! Elements of `G` are bit strings `x_1 x_2 ... x_m` encoded big-endian, so
//! `x_1` is the most significant bit and the integer order is the
//! lexicographic order `00 < 01 < 10 < 11`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{
    is_formally_self_dual, is_numerically_self_dual, reorder, OrderingPermutation,
};
use crate::error::{Error, Result};
use crate::numerics::{Matrix, Scalar, Tolerance};
use crate::scheme::{verify_scheme, AssociationScheme, RelationIndexMatrix};
use crate::spectral::{decompose, krein_parameters, KreinTensor, SpectralData};

pub const MAX_M: usize = 10;
/// Largest `m` for which `GL(m, 2)` is enumerated in full.
pub const MAX_ENUMERATION_M: usize = 4;

/// An element of `Z_2^m` in the big-endian encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    bits: u32,
    m: usize,
}

impl GroupElement {
    pub fn new(bits: u32, m: usize) -> Self {
        debug_assert!(m <= MAX_M && (bits as u64) < (1u64 << m));
        GroupElement { bits, m }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Coordinate `x_i`, `1 <= i <= m`.
    pub fn coord(self, i: usize) -> u32 {
        (self.bits >> (self.m - i)) & 1
    }

    /// Group addition, coordinatewise mod 2.
    pub fn plus(self, other: Self) -> Self {
        GroupElement::new(self.bits ^ other.bits, self.m)
    }

    /// The basis vector `e_i` (1 in coordinate `i`).
    pub fn basis(i: usize, m: usize) -> Self {
        GroupElement::new(1 << (m - i), m)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.m)
    }
}

/// `<x, y> = sum_i x_i y_i` over `GF(2)`.
pub fn inner(x: u32, y: u32) -> u32 {
    (x & y).count_ones() & 1
}

/// An `m x m` matrix over `GF(2)`; row `i` is stored as an `m`-bit mask in the
/// same big-endian convention as [`GroupElement`], so `S x` has coordinate
/// `i` equal to `<row_i, x>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2Matrix {
    m: usize,
    rows: Vec<u32>,
}

impl Gf2Matrix {
    pub fn from_row_masks(m: usize, rows: Vec<u32>) -> Result<Self> {
        if m == 0 || m > MAX_M || rows.len() != m || rows.iter().any(|&r| r >> m != 0) {
            return Err(Error::InvalidArgument(format!(
                "not an {m}x{m} GF(2) matrix: {rows:?}"
            )));
        }
        Ok(Gf2Matrix { m, rows })
    }

    pub fn identity(m: usize) -> Self {
        Gf2Matrix {
            m,
            rows: (1..=m).map(|i| 1 << (m - i)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `S_{i,j}` with 1-based indices, as in `sigma(e_j) = sum_i S_{i,j} e_i`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        (self.rows[i - 1] >> (self.m - j)) & 1
    }

    pub fn transpose(&self) -> Self {
        let m = self.m;
        let rows = (1..=m)
            .map(|i| (1..=m).fold(0, |acc, j| (acc << 1) | self.entry(j, i)))
            .collect();
        Gf2Matrix { m, rows }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for bit in (0..self.m).rev() {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.m
    }

    /// `S x`.
    pub fn apply(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .fold(0, |acc, &row| (acc << 1) | inner(row, x))
    }
}

impl FromStr for Gf2Matrix {
    type Err = Error;

    /// Rows as comma-separated bit strings, e.g. `10,11`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let m = parts.len();
        let rows = parts
            .iter()
            .map(|p| {
                if p.len() != m || !p.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::InvalidArgument(format!(
                        "row `{p}` is not a {m}-bit string"
                    )));
                }
                Ok(u32::from_str_radix(p, 2).expect("checked bits"))
            })
            .collect::<Result<Vec<_>>>()?;
        Gf2Matrix::from_row_masks(m, rows)
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{:0width$b}", r, width = self.m))
            .collect();
        write!(f, "{}", rows.join(","))
    }
}

fn check_m(m: usize, bound: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if m > bound {
        return Err(Error::TooLarge {
            what: "m",
            value: m,
            bound,
        });
    }
    Ok(())
}

/// `X^(m)`: `r[y][z]` is the encoding of `y + z`.
pub fn build_group_scheme(m: usize) -> Result<AssociationScheme> {
    check_m(m, MAX_M)?;
    let n = 1usize << m;
    let rel = RelationIndexMatrix::from_fn(n, n - 1, |y, z| y ^ z)?;
    verify_scheme(rel)
}

/// `A^(m)_x = A^(1)_{x_1} (x) ... (x) A^(1)_{x_m}`.
pub fn kronecker_associate_matrix<S: Scalar>(m: usize, x: u32) -> Matrix<S> {
    let e = GroupElement::new(x, m);
    let id = Matrix::<S>::identity(2);
    let swap = Matrix::<S>::from_i64_rows(&[&[0, 1], &[1, 0]]);
    (1..=m).fold(Matrix::identity(1), |acc, i| {
        acc.kronecker(if e.coord(i) == 1 { &swap } else { &id })
    })
}

/// `P_{x,y} = Q_{x,y} = (-1)^<x,y>`.
pub fn closed_form_eigenmatrix<S: Scalar>(m: usize) -> Result<Matrix<S>> {
    check_m(m, MAX_M)?;
    let n = 1usize << m;
    Ok(Matrix::from_fn(n, n, |x, y| {
        if inner(x as u32, y as u32) == 0 {
            S::one()
        } else {
            -S::one()
        }
    }))
}

/// All of `GL(m, 2)`, ordered lexicographically by row bits.
pub fn enumerate_linear_bijections(m: usize) -> Result<Vec<Gf2Matrix>> {
    check_m(m, MAX_ENUMERATION_M)?;
    let mask = (1u32 << m) - 1;
    let total = 1u64 << (m * m);
    Ok((0..total)
        .map(|code| {
            let rows = (0..m)
                .map(|i| ((code >> ((m - 1 - i) * m)) as u32) & mask)
                .collect();
            Gf2Matrix { m, rows }
        })
        .filter(Gf2Matrix::is_invertible)
        .collect())
}

/// `count` random invertible matrices, for `m` beyond full enumeration.
pub fn sample_linear_bijections(m: usize, count: usize, seed: u64) -> Result<Vec<Gf2Matrix>> {
    check_m(m, MAX_M)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rows = (0..m).map(|_| rng.random_range(0..1u32 << m)).collect();
        let s = Gf2Matrix { m, rows };
        if s.is_invertible() {
            out.push(s);
        }
    }
    Ok(out)
}

/// The permutation `x -> S x` of the encoded elements.
pub fn sigma_from_matrix(s: &Gf2Matrix) -> Result<OrderingPermutation> {
    if !s.is_invertible() {
        return Err(Error::InvalidArgument(format!(
            "GF(2) matrix {s} is singular"
        )));
    }
    OrderingPermutation::new((0..1u32 << s.m).map(|x| s.apply(x) as usize).collect())
}

/// `sigma(x + y) = sigma(x) + sigma(y)` for all pairs.
pub fn is_additive(sigma: &[usize]) -> bool {
    let n = sigma.len();
    (0..n).all(|x| (0..n).all(|y| sigma[x ^ y] == sigma[x] ^ sigma[y]))
}

/// `<sigma(x), y> = <x, sigma(y)>` for all pairs.
pub fn is_self_adjoint(sigma: &[usize]) -> bool {
    let n = sigma.len();
    (0..n).all(|x| {
        (0..n).all(|y| inner(sigma[x] as u32, y as u32) == inner(x as u32, sigma[y] as u32))
    })
}

/// The matrix of an additive bijection: column `j` is `sigma(e_j)`.
pub fn matrix_of_linear_map(sigma: &[usize], m: usize) -> Result<Gf2Matrix> {
    if sigma.len() != 1 << m || !is_additive(sigma) {
        return Err(Error::InvalidArgument(
            "map is not Z_2-linear on Z_2^m".into(),
        ));
    }
    let cols: Vec<u32> = (1..=m)
        .map(|j| sigma[GroupElement::basis(j, m).bits as usize] as u32)
        .collect();
    let rows = (1..=m)
        .map(|i| {
            cols.iter()
                .fold(0, |acc, &c| (acc << 1) | GroupElement::new(c, m).coord(i))
        })
        .collect();
    Gf2Matrix::from_row_masks(m, rows)
}

/// Seeded Fisher-Yates permutations of the nonzero elements that are not
/// additive. For `m <= 2` every bijection fixing 0 is linear, so the list is empty.
pub fn random_nonlinear_permutations(
    m: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<OrderingPermutation>> {
    check_m(m, MAX_M)?;
    if m <= 2 {
        return Ok(Vec::new());
    }
    let n = 1usize << m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut rest: Vec<usize> = (1..n).collect();
        rest.shuffle(&mut rng);
        let mut sigma = Vec::with_capacity(n);
        sigma.push(0);
        sigma.extend(rest);
        if !is_additive(&sigma) {
            out.push(OrderingPermutation::new(sigma)?);
        }
    }
    Ok(out)
}

/// The group scheme with its spectral data indexed by characters:
/// `E_x = n^{-1} sum_y (-1)^<x,y> A_y`.
pub struct GroupSchemeContext<S> {
    pub m: usize,
    pub scheme: AssociationScheme,
    pub spectral: SpectralData<S>,
    pub krein: KreinTensor<S>,
    /// Maps character index to the index in the canonical decomposition.
    pub alignment: OrderingPermutation,
}

impl<S: Scalar> GroupSchemeContext<S> {
    pub fn new(m: usize, tol: &Tolerance) -> Result<Self> {
        let scheme = build_group_scheme(m)?;
        let params = scheme.params();
        let sp = decompose::<S>(&scheme, params, tol)?;
        let kt = krein_parameters(&sp, params, tol)?;
        let (spectral, krein, alignment) = align_to_characters(&sp, &kt, m, tol)?;
        Ok(GroupSchemeContext {
            m,
            scheme,
            spectral,
            krein,
            alignment,
        })
    }
}

/// Reorders decomposed data so that row `x` of `P` is the character `(-1)^<x,.>`.
pub fn align_to_characters<S: Scalar>(
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    m: usize,
    tol: &Tolerance,
) -> Result<(SpectralData<S>, KreinTensor<S>, OrderingPermutation)> {
    let h = closed_form_eigenmatrix::<S>(m)?;
    let n = 1usize << m;
    if sp.d() + 1 != n {
        return Err(Error::InvalidArgument(
            "spectral data is not for X^(m)".into(),
        ));
    }
    let sigma = (0..n)
        .map(|x| {
            (0..n)
                .find(|&i| (0..n).all(|y| sp.p()[(i, y)].eq_tol(&h[(x, y)], tol)))
                .ok_or_else(|| Error::Inconsistent(format!("no idempotent matches character {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let sigma = OrderingPermutation::new(sigma)?;
    let (a, b) = reorder(sp, kt, &sigma)?;
    Ok((a, b, sigma))
}

/// Outcome of checking "linear bijections give numerically self-dual
/// orderings, non-linear ones do not".
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearityReport {
    pub m: usize,
    pub linear_total: usize,
    pub linear_nsd: usize,
    pub nonlinear_sampled: usize,
    pub nonlinear_nsd: usize,
    /// Orderings on which the equivalence fails (must be empty).
    pub counterexamples: Vec<OrderingPermutation>,
}

impl LinearityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn verify_linear_iff_nsd<S: Scalar>(
    ctx: &GroupSchemeContext<S>,
    trials_nonlinear: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<LinearityReport> {
    let params = ctx.scheme.params();
    let linear = enumerate_linear_bijections(ctx.m)?;
    let mut report = LinearityReport {
        m: ctx.m,
        linear_total: linear.len(),
        linear_nsd: 0,
        nonlinear_sampled: 0,
        nonlinear_nsd: 0,
        counterexamples: Vec::new(),
    };
    for s in &linear {
        let sigma = sigma_from_matrix(s)?;
        if is_numerically_self_dual(params, &ctx.krein, &sigma, tol)?.0 {
            report.linear_nsd += 1;
        } else {
            report.counterexamples.push(sigma);
        }
    }
    let nonlinear = random_nonlinear_permutations(ctx.m, trials_nonlinear, seed)?;
    report.nonlinear_sampled = nonlinear.len();
    for sigma in nonlinear {
        if is_numerically_self_dual(params, &ctx.krein, &sigma, tol)?.0 {
            report.nonlinear_nsd += 1;
            report.counterexamples.push(sigma);
        }
    }
    Ok(report)
}

/// Outcome of checking "formally self-dual iff `S` is symmetric" over `GL(m, 2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub m: usize,
    pub linear_total: usize,
    pub symmetric: usize,
    pub fsd: usize,
    pub fsd_and_symmetric: usize,
    /// Matrices where formal self-duality and symmetry disagree (must be empty).
    pub disagreements: Vec<String>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn verify_symmetric_iff_fsd<S: Scalar>(
    ctx: &GroupSchemeContext<S>,
    tol: &Tolerance,
) -> Result<SymmetryReport> {
    let linear = enumerate_linear_bijections(ctx.m)?;
    let mut report = SymmetryReport {
        m: ctx.m,
        linear_total: linear.len(),
        symmetric: 0,
        fsd: 0,
        fsd_and_symmetric: 0,
        disagreements: Vec::new(),
    };
    for s in &linear {
        let sigma = sigma_from_matrix(s)?;
        let fsd = is_formally_self_dual(&ctx.spectral, &sigma, tol)?.0;
        let sym = s.is_symmetric();
        report.symmetric += usize::from(sym);
        report.fsd += usize::from(fsd);
        report.fsd_and_symmetric += usize::from(fsd && sym);
        if fsd != sym {
            report.disagreements.push(s.to_string());
        }
    }
    Ok(report)
}

/// One linear bijection with the eigenmatrices of its ordering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearOrdering {
    #[serde(rename = "S")]
    pub s: String,
    pub symmetric: bool,
    pub sigma: OrderingPermutation,
    /// `sigma(x)` for `x` in lexicographic order, as bit strings.
    pub images: Vec<String>,
    pub first_eigenmatrix: Vec<Vec<String>>,
    pub second_eigenmatrix: Vec<Vec<String>>,
    pub fsd: bool,
    pub nsd: bool,
}

/// The `gl2-classify` report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gl2Classification {
    pub m: usize,
    pub mode: &'static str,
    pub linear_total: usize,
    pub symmetric: usize,
    pub fsd: usize,
    pub nsd: usize,
    pub nonlinear_sampled: usize,
    pub nonlinear_nsd: usize,
    pub fsd_iff_symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<LinearOrdering>>,
}

/// Largest `m` for which per-matrix eigenmatrices are included in the report.
pub const DETAIL_LIMIT_M: usize = 3;

pub fn classify_linear_orderings<S: Scalar>(
    ctx: &GroupSchemeContext<S>,
    trials_nonlinear: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Gl2Classification> {
    let linearity = verify_linear_iff_nsd(ctx, trials_nonlinear, seed, tol)?;
    let symmetry = verify_symmetric_iff_fsd(ctx, tol)?;
    let entries = if ctx.m <= DETAIL_LIMIT_M {
        let render = |mat: &Matrix<S>| -> Vec<Vec<String>> {
            mat.to_rows()
                .iter()
                .map(|r| r.iter().map(Scalar::render).collect())
                .collect()
        };
        let params = ctx.scheme.params();
        let list = enumerate_linear_bijections(ctx.m)?
            .iter()
            .map(|s| {
                let sigma = sigma_from_matrix(s)?;
                let (sp, _) = reorder(&ctx.spectral, &ctx.krein, &sigma)?;
                Ok(LinearOrdering {
                    s: s.to_string(),
                    symmetric: s.is_symmetric(),
                    images: sigma
                        .as_slice()
                        .iter()
                        .map(|&x| GroupElement::new(x as u32, ctx.m).to_string())
                        .collect(),
                    first_eigenmatrix: render(sp.p()),
                    second_eigenmatrix: render(sp.q()),
                    fsd: is_formally_self_dual(&ctx.spectral, &sigma, tol)?.0,
                    nsd: is_numerically_self_dual(params, &ctx.krein, &sigma, tol)?.0,
                    sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(list)
    } else {
        None
    };
    Ok(Gl2Classification {
        m: ctx.m,
        mode: S::MODE.as_str(),
        linear_total: linearity.linear_total,
        symmetric: symmetry.symmetric,
        fsd: symmetry.fsd,
        nsd: linearity.linear_nsd,
        nonlinear_sampled: linearity.nonlinear_sampled,
        nonlinear_nsd: linearity.nonlinear_nsd,
        fsd_iff_symmetric: symmetry.holds(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use itertools::Itertools;

    #[test]
    fn encoding_is_big_endian() {
        let x = GroupElement::new(0b10, 2);
        assert_eq!((x.coord(1), x.coord(2)), (1, 0));
        assert_eq!(x.to_string(), "10");
        assert_eq!(GroupElement::basis(1, 2).bits(), 0b10);
    }

    #[test]
    fn inner_product_is_symmetric_bilinear_orthonormal() {
        for m in 1..=3usize {
            let n = 1u32 << m;
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(inner(x, y), inner(y, x));
                    for z in 0..n {
                        assert_eq!(inner(x ^ z, y), inner(x, y) ^ inner(z, y));
                    }
                }
            }
            for i in 1..=m {
                for j in 1..=m {
                    let (ei, ej) = (GroupElement::basis(i, m), GroupElement::basis(j, m));
                    assert_eq!(inner(ei.bits(), ej.bits()), u32::from(i == j));
                }
            }
        }
    }

    #[test]
    fn gf2_parse_and_apply() {
        let s: Gf2Matrix = "01,10".parse().unwrap();
        assert_eq!(s.entry(1, 2), 1);
        assert_eq!(s.entry(2, 2), 0);
        assert!(s.is_symmetric());
        assert_eq!(sigma_from_matrix(&s).unwrap().as_slice(), &[0, 2, 1, 3]);
        let t: Gf2Matrix = "10,11".parse().unwrap();
        assert!(!t.is_symmetric());
        assert_eq!(sigma_from_matrix(&t).unwrap().as_slice(), &[0, 1, 3, 2]);
        assert_eq!(
            sigma_from_matrix(&Gf2Matrix::identity(3)).unwrap(),
            OrderingPermutation::identity(7)
        );
        assert!(sigma_from_matrix(&"11,11".parse().unwrap()).is_err());
        assert!("1,11".parse::<Gf2Matrix>().is_err());
        assert!("12,11".parse::<Gf2Matrix>().is_err());
    }

    #[test]
    fn matrix_round_trips_through_its_permutation() {
        for s in enumerate_linear_bijections(3).unwrap() {
            let sigma = sigma_from_matrix(&s).unwrap();
            assert_eq!(matrix_of_linear_map(sigma.as_slice(), 3).unwrap(), s);
        }
    }

    #[test]
    fn gl_counts() {
        let g1 = enumerate_linear_bijections(1).unwrap();
        assert_eq!(g1, vec![Gf2Matrix::identity(1)]);
        let g2 = enumerate_linear_bijections(2).unwrap();
        assert_eq!(g2.len(), 6);
        assert_eq!(g2.iter().filter(|s| s.is_symmetric()).count(), 4);
        assert!(g2.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_linear_bijections(5).is_err());
    }

    #[test]
    fn every_bijection_of_z2_squared_fixing_zero_is_linear() {
        let all = (1..4usize).permutations(3).map(|p| [vec![0], p].concat());
        assert!(all.clone().all(|s| is_additive(&s)));
        assert_eq!(all.count(), 6);
        assert!(random_nonlinear_permutations(2, 100, 7).unwrap().is_empty());
    }

    #[test]
    fn self_adjoint_maps_are_linear_with_symmetric_matrix() {
        // Exhaust every bijection of G for m = 2 (not only those fixing 0).
        for sigma in (0..4usize).permutations(4) {
            if is_self_adjoint(&sigma) {
                assert!(is_additive(&sigma));
                assert!(matrix_of_linear_map(&sigma, 2).unwrap().is_symmetric());
            }
        }
        for s in enumerate_linear_bijections(3).unwrap() {
            let sigma = sigma_from_matrix(&s).unwrap();
            assert_eq!(is_self_adjoint(sigma.as_slice()), s.is_symmetric());
        }
    }

    #[test]
    fn kronecker_construction_matches_relations() {
        for m in 1..=4 {
            let s = build_group_scheme(m).unwrap();
            for x in 0..1u32 << m {
                let a = s.associate_matrix::<Rational>(x as usize).unwrap();
                assert_eq!(
                    a,
                    kronecker_associate_matrix::<Rational>(m, x),
                    "m={m} x={x}"
                );
            }
        }
    }

    #[test]
    fn closed_form_is_hadamard() {
        for m in 1..=4 {
            let h = closed_form_eigenmatrix::<Rational>(m).unwrap();
            let n = 1i64 << m;
            assert!(h.is_symmetric(&Tolerance::exact()));
            assert_eq!(
                h.mul(&h),
                Matrix::identity(n as usize).scale(&Rational::from_i64(n))
            );
        }
        let h2 = closed_form_eigenmatrix::<Rational>(2).unwrap();
        assert_eq!(h2[(3, 3)], Rational::from_i64(1));
    }

    #[test]
    fn nonlinear_samples_are_seeded() {
        let a = random_nonlinear_permutations(3, 5, 42).unwrap();
        let b = random_nonlinear_permutations(3, 5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| !is_additive(s.as_slice())));
    }
}
