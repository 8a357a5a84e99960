//! Generators for the standard fixture families.

use std::fmt;

use crate::error::{Error, Result};
use crate::group_scheme::{build_group_scheme, MAX_M};
use crate::scheme::{verify_scheme, AssociationScheme, RelationIndexMatrix};

/// Largest number of points a generated fixture may have.
pub const MAX_FIXTURE_POINTS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureSpec {
    /// The group scheme of `Z_2^m`.
    BinaryGroup { m: usize },
    /// Words of length `n` over `q` symbols, related by Hamming distance.
    Hamming { n: usize, q: usize },
    /// The `n`-gon, related by circular distance.
    Cycle { n: usize },
}

impl FixtureSpec {
    /// Checks the family constraints.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match *self {
            FixtureSpec::BinaryGroup { m } if !(1..=MAX_M).contains(&m) => {
                bad(format!("binary-group needs 1 <= m <= {MAX_M}, got {m}"))
            }
            FixtureSpec::Hamming { n, q } if n < 1 || q < 2 => {
                bad(format!("hamming needs n >= 1 and q >= 2, got n={n} q={q}"))
            }
            FixtureSpec::Hamming { n, q } => {
                let points = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
                if points > MAX_FIXTURE_POINTS as u128 {
                    return Err(Error::TooLarge {
                        what: "hamming point count q^n",
                        value: usize::try_from(points).unwrap_or(usize::MAX),
                        bound: MAX_FIXTURE_POINTS,
                    });
                }
                Ok(())
            }
            FixtureSpec::Cycle { n } if n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            FixtureSpec::Cycle { n } if n > MAX_FIXTURE_POINTS => Err(Error::TooLarge {
                what: "cycle length",
                value: n,
                bound: MAX_FIXTURE_POINTS,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSpec::BinaryGroup { m } => write!(f, "binary-group m={m}"),
            FixtureSpec::Hamming { n, q } => write!(f, "hamming n={n} q={q}"),
            FixtureSpec::Cycle { n } => write!(f, "cycle n={n}"),
        }
    }
}

fn hamming_relations(n: usize, q: usize) -> Result<RelationIndexMatrix> {
    let points = q.pow(n as u32);
    let digits = |mut x: usize| {
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(x % q);
            x /= q;
        }
        out
    };
    let words: Vec<Vec<usize>> = (0..points).map(digits).collect();
    Ok(RelationIndexMatrix::from_fn(points, n, |x, y| {
        words[x]
            .iter()
            .zip(&words[y])
            .filter(|(a, b)| a != b)
            .count()
    })?)
}

fn cycle_relations(n: usize) -> Result<RelationIndexMatrix> {
    Ok(RelationIndexMatrix::from_fn(n, n / 2, |x, y| {
        let diff = x.abs_diff(y);
        diff.min(n - diff)
    })?)
}

/// Builds and verifies the scheme described by `spec`.
pub fn generate_fixture(spec: FixtureSpec) -> Result<AssociationScheme> {
    spec.validate()?;
    match spec {
        FixtureSpec::BinaryGroup { m } => build_group_scheme(m),
        FixtureSpec::Hamming { n, q } => verify_scheme(hamming_relations(n, q)?),
        FixtureSpec::Cycle { n } => verify_scheme(cycle_relations(n)?),
    }
}

/// The fixtures exercised by the structural acceptance checks.
pub fn standard_fixtures() -> Vec<FixtureSpec> {
    let mut out: Vec<FixtureSpec> = (1..=4).map(|m| FixtureSpec::BinaryGroup { m }).collect();
    out.extend((1..=4).map(|n| FixtureSpec::Hamming { n, q: 2 }));
    out.extend([5, 6, 7].map(|n| FixtureSpec::Cycle { n }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_3_2() {
        let s = generate_fixture(FixtureSpec::Hamming { n: 3, q: 2 }).unwrap();
        assert_eq!((s.n(), s.d()), (8, 3));
        assert_eq!(s.params().k, vec![1, 3, 3, 1]);
    }

    #[test]
    fn ternary_hamming_valencies() {
        let s = generate_fixture(FixtureSpec::Hamming { n: 2, q: 3 }).unwrap();
        assert_eq!(s.params().k, vec![1, 4, 4]);
    }

    #[test]
    fn cycles() {
        let s = generate_fixture(FixtureSpec::Cycle { n: 5 }).unwrap();
        assert_eq!((s.n(), s.d()), (5, 2));
        assert_eq!(s.params().k, vec![1, 2, 2]);
        let s = generate_fixture(FixtureSpec::Cycle { n: 6 }).unwrap();
        assert_eq!(s.params().k, vec![1, 2, 2, 1]);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate_fixture(FixtureSpec::Cycle { n: 2 }).is_err());
        assert!(generate_fixture(FixtureSpec::Hamming { n: 2, q: 1 }).is_err());
        assert!(generate_fixture(FixtureSpec::BinaryGroup { m: 0 }).is_err());
        assert!(matches!(
            generate_fixture(FixtureSpec::Hamming { n: 20, q: 2 }),
            Err(Error::TooLarge { .. })
        ));
    }
}
