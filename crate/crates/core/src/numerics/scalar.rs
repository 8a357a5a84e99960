use std::cmp::Ordering;
use std::fmt::Debug;
use std::str::FromStr;

use num::{BigInt, BigRational, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "approx" => Ok(Mode::Approx),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode `{other}` (expected exact|approx)"
            ))),
        }
    }
}

/// Equality and clustering thresholds. Both are zero in exact mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    eps_eq: f64,
    eps_cluster: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS_EQ: f64 = 1e-9;
    pub const DEFAULT_EPS_CLUSTER: f64 = 1e-6;

    pub fn exact() -> Self {
        Tolerance {
            eps_eq: 0.0,
            eps_cluster: 0.0,
        }
    }

    pub fn approx(eps_eq: f64, eps_cluster: f64) -> Result<Self> {
        if !(eps_eq >= 0.0 && eps_eq <= eps_cluster && eps_cluster.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerances must satisfy 0 <= eps_eq <= eps_cluster (got {eps_eq}, {eps_cluster})"
            )));
        }
        Ok(Tolerance {
            eps_eq,
            eps_cluster,
        })
    }

    pub fn default_approx() -> Self {
        Tolerance {
            eps_eq: Self::DEFAULT_EPS_EQ,
            eps_cluster: Self::DEFAULT_EPS_CLUSTER,
        }
    }

    /// The default tolerance for `mode`.
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Self::exact(),
            Mode::Approx => Self::default_approx(),
        }
    }

    pub fn eps_eq(&self) -> f64 {
        self.eps_eq
    }

    pub fn eps_cluster(&self) -> f64 {
        self.eps_cluster
    }
}

/// A real number type that every computation in the crate is generic over.
///
/// `Rational` gives exact, bit-reproducible results; `f64` compares with the
/// tolerances in [`Tolerance`]. Since a computation is monomorphised for one
/// of them, modes can never mix inside a single run.
pub trait Scalar: Num + Signed + Clone + Debug + PartialOrd + Send + Sync + 'static {
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    /// Lossless for rationals (every finite double is a dyadic rational).
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact equality, or `|a - b| <= eps_eq`.
    fn eq_tol(&self, other: &Self, tol: &Tolerance) -> bool;

    fn is_zero_tol(&self, tol: &Tolerance) -> bool {
        self.eq_tol(&Self::zero(), tol)
    }

    /// Total order that treats values within `eps_eq` as equal.
    fn cmp_tol(&self, other: &Self, tol: &Tolerance) -> Ordering {
        if self.eq_tol(other, tol) {
            Ordering::Equal
        } else if self < other {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Closest integer, if the value is one (within tolerance).
    fn as_integer(&self, tol: &Tolerance) -> Option<BigInt>;

    /// String form used in reports: `a/b` (or `a`) for rationals, decimal for floats.
    fn render(&self) -> String;

    fn parse_scalar(s: &str) -> Option<Self>;
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn eq_tol(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }

    fn as_integer(&self, _tol: &Tolerance) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        Rational::from_str_radix(s.trim(), 10).ok()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Approx;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn eq_tol(&self, other: &Self, tol: &Tolerance) -> bool {
        (self - other).abs() <= tol.eps_eq
    }

    fn as_integer(&self, tol: &Tolerance) -> Option<BigInt> {
        let r = self.round();
        ((self - r).abs() <= tol.eps_eq && r.is_finite()).then(|| BigInt::from(r as i64))
    }

    fn render(&self) -> String {
        // Shortest representation that round-trips.
        let v = if *self == 0.0 { 0.0 } else { *self };
        format!("{v:?}")
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

/// `a == b` in exact mode, `|a - b| <= eps_eq` in approximate mode.
pub fn scalar_eq<S: Scalar>(a: &S, b: &S, tol: &Tolerance) -> bool {
    a.eq_tol(b, tol)
}

/// One group of [`cluster`]: a representative value and the input indices it covers.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster<S> {
    pub representative: S,
    pub members: Vec<usize>,
}

/// Partitions `values` into groups of equal (exact) or nearby (approximate) values.
///
/// In approximate mode the values are sorted and split greedily so that every
/// member of a group lies within `eps_cluster` of the group's smallest member;
/// the representative is the group mean. Groups are returned in order of their
/// smallest member index.
pub fn cluster<S: Scalar>(values: &[S], tol: &Tolerance) -> Vec<Cluster<S>> {
    let mut groups: Vec<Cluster<S>> = Vec::new();
    match S::MODE {
        Mode::Exact => {
            for (i, v) in values.iter().enumerate() {
                match groups.iter_mut().find(|g| &g.representative == v) {
                    Some(g) => g.members.push(i),
                    None => groups.push(Cluster {
                        representative: v.clone(),
                        members: vec![i],
                    }),
                }
            }
        }
        Mode::Approx => {
            let mut order: Vec<usize> = (0..values.len()).collect();
            order.sort_by(|&a, &b| {
                values[a]
                    .partial_cmp(&values[b])
                    .unwrap_or(Ordering::Equal)
                    .then(a.cmp(&b))
            });
            let eps = S::from_f64(tol.eps_cluster());
            let mut start: Option<S> = None;
            for i in order {
                let v = &values[i];
                let open = match &start {
                    Some(s) => v.clone() - s.clone() <= eps,
                    None => false,
                };
                if open {
                    groups.last_mut().expect("open group").members.push(i);
                } else {
                    start = Some(v.clone());
                    groups.push(Cluster {
                        representative: S::zero(),
                        members: vec![i],
                    });
                }
            }
            for g in &mut groups {
                let sum = g
                    .members
                    .iter()
                    .fold(S::zero(), |acc, &i| acc + values[i].clone());
                g.representative = sum / S::from_usize(g.members.len());
                g.members.sort_unstable();
            }
            groups.sort_by_key(|g| g.members[0]);
        }
    }
    groups
}

/// Convenience constructor for rationals in tests and fixtures.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_equality_uses_reduced_fractions() {
        let tol = Tolerance::exact();
        assert!(scalar_eq(&rat(1, 2), &rat(2, 4), &tol));
        assert!(!scalar_eq(&rat(1, 3), &rat(1, 4), &tol));
    }

    #[test]
    fn approx_equality_within_eps() {
        let tol = Tolerance::approx(1e-9, 1e-6).unwrap();
        assert!(scalar_eq(&1.0, &(1.0 + 1e-12), &tol));
        assert!(!scalar_eq(&1.0, &(1.0 + 1e-6), &tol));
    }

    #[test]
    fn tolerance_invariants() {
        assert!(Tolerance::approx(1e-6, 1e-9).is_err());
        assert!(Tolerance::approx(-1.0, 1.0).is_err());
        let e = Tolerance::exact();
        assert_eq!((e.eps_eq(), e.eps_cluster()), (0.0, 0.0));
    }

    #[test]
    fn exact_cluster() {
        let vals: Vec<Rational> = [3, 1, 1, -3]
            .iter()
            .map(|&v| Rational::from_i64(v))
            .collect();
        let c = cluster(&vals, &Tolerance::exact());
        let members: Vec<_> = c.iter().map(|g| g.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(c[1].representative, Rational::from_i64(1));
    }

    #[test]
    fn approx_cluster() {
        let vals = [2.000_000_000_1, 2.0, -1.0];
        let c = cluster(&vals, &Tolerance::default_approx());
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].members, vec![0, 1]);
        assert!((c[0].representative - 2.0).abs() < 1e-9);
        assert_eq!(c[1].members, vec![2]);
    }

    #[test]
    fn rendering() {
        assert_eq!(rat(-3, 6).render(), "-1/2");
        assert_eq!(rat(4, 2).render(), "2");
        assert_eq!(Rational::parse_scalar("-1/2"), Some(rat(-1, 2)));
        assert_eq!((-0.0f64).render(), "0.0");
        assert_eq!(f64::parse_scalar(&0.1f64.render()), Some(0.1));
    }
}
