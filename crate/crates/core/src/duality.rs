//! Formal (`P = Q`) and numerical (`p^h_{i,j} = q^h_{i,j}`) self-duality with
//! respect to an ordering of the primitive idempotents.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Scalar, Tolerance};
use crate::scheme::SchemeParameters;
use crate::spectral::{KreinTensor, SpectralData};

/// Largest class count for which all `d!` orderings are enumerated.
pub const MAX_ENUMERATION_CLASSES: usize = 8;

/// A permutation `sigma` of `{0, ..., d}` fixing 0. The reordered idempotents
/// are `E'_i = E_{sigma(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct OrderingPermutation(Vec<usize>);

impl OrderingPermutation {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        if sigma.first() != Some(&0) {
            return Err(Error::InvalidArgument(format!(
                "ordering {sigma:?} must fix 0"
            )));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument(format!(
                    "ordering {sigma:?} is not a permutation of 0..={}",
                    sigma.len() - 1
                )));
            }
        }
        Ok(OrderingPermutation(sigma))
    }

    pub fn identity(d: usize) -> Self {
        OrderingPermutation((0..=d).collect())
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        OrderingPermutation(inv)
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        OrderingPermutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// All orderings of `{0..=d}` fixing 0, in lexicographic order.
    pub fn all(d: usize) -> impl Iterator<Item = Self> {
        (1..=d).permutations(d).map(move |rest| {
            let mut v = Vec::with_capacity(d + 1);
            v.push(0);
            v.extend(rest);
            OrderingPermutation(v)
        })
    }

    fn check_len(&self, d: usize) -> Result<()> {
        if self.d() != d {
            return Err(Error::InvalidArgument(format!(
                "ordering has {} entries but the scheme has {} idempotents",
                self.0.len(),
                d + 1
            )));
        }
        Ok(())
    }
}

impl FromStr for OrderingPermutation {
    type Err = Error;

    /// Comma-separated indices, e.g. `0,2,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let sigma = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidArgument(format!("bad ordering entry `{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sigma)
    }
}

impl fmt::Display for OrderingPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

/// Self-duality of one ordering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub ordering: OrderingPermutation,
    pub formally_self_dual: bool,
    pub numerically_self_dual: bool,
    /// First `(i, j)` with `P'_{i,j} != Q'_{i,j}`.
    pub first_p_q_mismatch: Option<(usize, usize)>,
    /// First `(h, i, j)` with `p^h_{i,j} != q'^h_{i,j}`.
    pub first_pq_mismatch: Option<(usize, usize, usize)>,
}

/// `P'_{i,j} = P_{sigma(i),j}`, `Q'_{i,j} = Q_{i,sigma(j)}` and
/// `q'^h_{i,j} = q^{sigma(h)}_{sigma(i),sigma(j)}`.
pub fn reorder<S: Scalar>(
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    sigma: &OrderingPermutation,
) -> Result<(SpectralData<S>, KreinTensor<S>)> {
    sigma.check_len(sp.d())?;
    Ok((sp.permuted(sigma.as_slice()), kt.permuted(sigma.as_slice())))
}

/// Whether `P' = Q'` after reordering by `sigma`; on failure, the first
/// mismatching entry.
pub fn is_formally_self_dual<S: Scalar>(
    sp: &SpectralData<S>,
    sigma: &OrderingPermutation,
    tol: &Tolerance,
) -> Result<(bool, Option<(usize, usize)>)> {
    sigma.check_len(sp.d())?;
    let dim = sp.d() + 1;
    let (p, q) = (sp.p(), sp.q());
    let mismatch = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .find(|&(i, j)| !p[(sigma.apply(i), j)].eq_tol(&q[(i, sigma.apply(j))], tol));
    Ok((mismatch.is_none(), mismatch))
}

pub type TripleMismatch = Option<(usize, usize, usize)>;

/// Whether `p^h_{i,j} = q'^h_{i,j}` for all triples after reordering by `sigma`.
pub fn is_numerically_self_dual<S: Scalar>(
    params: &SchemeParameters,
    kt: &KreinTensor<S>,
    sigma: &OrderingPermutation,
    tol: &Tolerance,
) -> Result<(bool, TripleMismatch)> {
    sigma.check_len(kt.d())?;
    let mismatch = params.p.indices().find(|&(h, i, j)| {
        let q = kt.get(sigma.apply(h), sigma.apply(i), sigma.apply(j));
        !q.eq_tol(&S::from_i64(params.p(h, i, j) as i64), tol)
    });
    Ok((mismatch.is_none(), mismatch))
}

pub fn evaluate_ordering<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    sigma: &OrderingPermutation,
    tol: &Tolerance,
) -> Result<DualityReport> {
    let (fsd, pq) = is_formally_self_dual(sp, sigma, tol)?;
    let (nsd, pqt) = is_numerically_self_dual(params, kt, sigma, tol)?;
    Ok(DualityReport {
        ordering: sigma.clone(),
        formally_self_dual: fsd,
        numerically_self_dual: nsd,
        first_p_q_mismatch: pq,
        first_pq_mismatch: pqt,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationSummary {
    pub orderings: usize,
    pub fsd: usize,
    pub nsd: usize,
    pub nsd_not_fsd: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub summary: ClassificationSummary,
    pub reports: Vec<DualityReport>,
}

/// Evaluates every ordering fixing 0 (`d!` of them), sorted by `sigma`.
pub fn classify_all_orderings<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
) -> Result<Classification> {
    let d = sp.d();
    if d > MAX_ENUMERATION_CLASSES {
        return Err(Error::TooLarge {
            what: "class count d for ordering enumeration",
            value: d,
            bound: MAX_ENUMERATION_CLASSES,
        });
    }
    let reports = OrderingPermutation::all(d)
        .map(|sigma| evaluate_ordering(params, sp, kt, &sigma, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = ClassificationSummary {
        orderings: reports.len(),
        ..Default::default()
    };
    for r in &reports {
        summary.fsd += usize::from(r.formally_self_dual);
        summary.nsd += usize::from(r.numerically_self_dual);
        summary.nsd_not_fsd += usize::from(r.numerically_self_dual && !r.formally_self_dual);
    }
    Ok(Classification { summary, reports })
}
