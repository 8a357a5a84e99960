//! JSON reports produced by the command-line tool.

use serde::Serialize;

use crate::duality::{
    classify_all_orderings, evaluate_ordering, ClassificationSummary, DualityReport,
    OrderingPermutation,
};
use crate::error::Result;
use crate::numerics::{Matrix, Scalar, Tolerance};
use crate::poly::{
    build_polynomials, check_askey_wilson, check_p_from_polynomials, check_q_from_polynomials,
    is_p_polynomial, is_q_polynomial_ordering, verify_nsd_iff_fsd, TridiagonalParams, Which,
};
use crate::scheme::AssociationScheme;
use crate::spectral::{
    decompose, krein_parameters, KreinTensor, SpectralData, ORDERING_CONVENTION,
};

/// Largest class count for which `analyze` enumerates every ordering.
pub const ANALYZE_ENUMERATION_LIMIT: usize = 7;

pub fn render_matrix<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::render).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualitySummary {
    /// The identity ordering, as decomposed.
    pub identity: DualityReport,
    /// Counts over all orderings fixing 0; omitted for large `d`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_orderings: Option<ClassificationSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolynomialSummary {
    pub p_polynomial: bool,
    pub p_witness: Option<(usize, usize, usize)>,
    pub q_polynomial_ordering: bool,
    pub q_witness: Option<(usize, usize, usize)>,
    pub q_ambiguous: usize,
    /// `None` when the scheme is not P-polynomial or the ordering is not
    /// Q-polynomial.
    pub aw_max_residual: Option<String>,
    pub p_from_polynomials: Option<bool>,
    pub q_from_polynomials: Option<bool>,
}

/// Everything `analyze` computes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub mode: &'static str,
    pub ordering_convention: &'static str,
    pub n: usize,
    pub d: usize,
    pub exhaustively_verified: bool,
    pub k: Vec<u64>,
    pub m: Vec<String>,
    #[serde(rename = "P")]
    pub big_p: Vec<Vec<String>>,
    #[serde(rename = "Q")]
    pub big_q: Vec<Vec<String>>,
    pub p: Vec<Vec<Vec<u64>>>,
    pub q: Vec<Vec<Vec<String>>>,
    pub duality: DualitySummary,
    pub polynomial: PolynomialSummary,
}

fn polynomial_summary<S: Scalar>(
    s: &AssociationScheme,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
) -> Result<PolynomialSummary> {
    let params = s.params();
    let pc = is_p_polynomial(params);
    let qc = is_q_polynomial_ordering(kt, tol);
    let tp = TridiagonalParams::new(params, sp, kt);
    let p_from_polynomials = if pc.holds {
        Some(
            check_p_from_polynomials(sp, params, &build_polynomials(&tp, Which::Plain)?, tol).holds,
        )
    } else {
        None
    };
    let q_from_polynomials = if qc.holds {
        Some(check_q_from_polynomials(sp, &build_polynomials(&tp, Which::Starred)?, tol).holds)
    } else {
        None
    };
    let aw_max_residual = if pc.holds && qc.holds {
        Some(
            check_askey_wilson(params, sp, kt, tol)?
                .max_residual
                .render(),
        )
    } else {
        None
    };
    Ok(PolynomialSummary {
        p_polynomial: pc.holds,
        p_witness: pc.witness,
        q_polynomial_ordering: qc.holds,
        q_witness: qc.witness,
        q_ambiguous: qc.ambiguous.len(),
        aw_max_residual,
        p_from_polynomials,
        q_from_polynomials,
    })
}

/// Runs the whole pipeline on a verified scheme.
pub fn run_analyze<S: Scalar>(s: &AssociationScheme, tol: &Tolerance) -> Result<AnalysisReport> {
    let params = s.params();
    let sp = decompose::<S>(s, params, tol)?;
    let kt = krein_parameters(&sp, params, tol)?;
    let d = s.d();
    let identity = evaluate_ordering(params, &sp, &kt, &OrderingPermutation::identity(d), tol)?;
    let all_orderings = if d <= ANALYZE_ENUMERATION_LIMIT {
        Some(classify_all_orderings(params, &sp, &kt, tol)?.summary)
    } else {
        None
    };
    Ok(AnalysisReport {
        mode: S::MODE.as_str(),
        ordering_convention: ORDERING_CONVENTION,
        n: s.n(),
        d,
        exhaustively_verified: s.exhaustively_verified(),
        k: params.k.clone(),
        m: sp.m().iter().map(Scalar::render).collect(),
        big_p: render_matrix(sp.p()),
        big_q: render_matrix(sp.q()),
        p: params.p.to_nested(|&v| v),
        q: kt.q.to_nested(Scalar::render),
        duality: DualitySummary {
            identity,
            all_orderings,
        },
        polynomial: polynomial_summary(s, &sp, &kt, tol)?,
    })
}

/// The `poly-check` report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyCheckReport {
    pub mode: &'static str,
    pub p_polynomial: bool,
    pub q_polynomial_ordering: bool,
    pub aw_max_residual: Option<String>,
    /// `None` when the scheme is not P-polynomial.
    pub main2_verified: Option<bool>,
    pub orderings_checked: usize,
    pub q_polynomial_orderings: usize,
    pub exceptions: Vec<OrderingPermutation>,
}

pub fn run_poly_check<S: Scalar>(
    s: &AssociationScheme,
    tol: &Tolerance,
) -> Result<PolyCheckReport> {
    let params = s.params();
    let sp = decompose::<S>(s, params, tol)?;
    let kt = krein_parameters(&sp, params, tol)?;
    let summary = polynomial_summary(s, &sp, &kt, tol)?;
    let mut out = PolyCheckReport {
        mode: S::MODE.as_str(),
        p_polynomial: summary.p_polynomial,
        q_polynomial_ordering: summary.q_polynomial_ordering,
        aw_max_residual: summary.aw_max_residual,
        main2_verified: None,
        orderings_checked: 0,
        q_polynomial_orderings: 0,
        exceptions: Vec::new(),
    };
    if summary.p_polynomial {
        let rep = verify_nsd_iff_fsd(params, &sp, &kt, tol)?;
        out.main2_verified = Some(rep.holds());
        out.orderings_checked = rep.orderings_checked;
        out.q_polynomial_orderings = rep.q_polynomial_orderings;
        out.exceptions = rep.exceptions;
        out.exceptions.extend(rep.q_polynomial_exceptions);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{generate_fixture, FixtureSpec};
    use crate::numerics::Rational;

    #[test]
    fn hamming_report() {
        let s = generate_fixture(FixtureSpec::Hamming { n: 3, q: 2 }).unwrap();
        let r = run_analyze::<Rational>(&s, &Tolerance::exact()).unwrap();
        assert!(r.polynomial.p_polynomial);
        assert_eq!(r.polynomial.aw_max_residual.as_deref(), Some("0"));
        assert_eq!(r.big_p[1], ["1", "1", "-1", "-1"]);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["P", "Q", "k", "m", "p", "q", "mode", "ordering_convention"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn poly_check_on_hamming_4() {
        let s = generate_fixture(FixtureSpec::Hamming { n: 4, q: 2 }).unwrap();
        let r = run_poly_check::<Rational>(&s, &Tolerance::exact()).unwrap();
        assert_eq!(r.main2_verified, Some(true));
        assert_eq!(r.orderings_checked, 24);
    }
}
