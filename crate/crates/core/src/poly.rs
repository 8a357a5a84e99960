//! P-polynomial schemes, Q-polynomial orderings, the polynomials `u_i`, `u*_i`
//! defined by the three-term recurrence, and Askey-Wilson duality.

use serde::Serialize;

use crate::duality::{evaluate_ordering, reorder, OrderingPermutation, MAX_ENUMERATION_CLASSES};
use crate::error::{Error, Result};
use crate::numerics::{Mode, Polynomial, Scalar, Tolerance};
use crate::scheme::SchemeParameters;
use crate::spectral::{KreinTensor, SpectralData};

/// How a tensor entry compares with zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Zeroness {
    Zero,
    Nonzero,
    Ambiguous,
}

/// Result of the triangle-condition test on `p` or `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleCheck {
    pub holds: bool,
    /// First triple violating either condition.
    pub witness: Option<(usize, usize, usize)>,
    /// Approximate mode only: entries too close to zero to classify.
    pub ambiguous: Vec<(usize, usize, usize)>,
}

fn triangle_check(dim: usize, zeroness: impl Fn(usize, usize, usize) -> Zeroness) -> TriangleCheck {
    let mut witness = None;
    let mut ambiguous = Vec::new();
    for h in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let z = zeroness(h, i, j);
                if z == Zeroness::Ambiguous {
                    ambiguous.push((h, i, j));
                    continue;
                }
                let exceeds = h > i + j || i > h + j || j > h + i;
                let equals = h == i + j || i == h + j || j == h + i;
                let bad = (exceeds && z != Zeroness::Zero) || (equals && z == Zeroness::Zero);
                if bad && witness.is_none() {
                    witness = Some((h, i, j));
                }
            }
        }
    }
    TriangleCheck {
        holds: witness.is_none() && ambiguous.is_empty(),
        witness,
        ambiguous,
    }
}

/// Tests both triangle conditions on the intersection numbers, with the
/// relations in their given order.
pub fn is_p_polynomial(params: &SchemeParameters) -> TriangleCheck {
    triangle_check(params.d() + 1, |h, i, j| {
        if params.p(h, i, j) == 0 {
            Zeroness::Zero
        } else {
            Zeroness::Nonzero
        }
    })
}

/// Tests both triangle conditions on the Krein parameters. In approximate
/// mode `|q| <= eps_eq` counts as zero and `eps_eq < |q| < 100 eps_eq` is
/// reported as ambiguous.
pub fn is_q_polynomial_ordering<S: Scalar>(kt: &KreinTensor<S>, tol: &Tolerance) -> TriangleCheck {
    triangle_check(kt.d() + 1, |h, i, j| {
        let v = kt.get(h, i, j);
        match S::MODE {
            Mode::Exact => {
                if v.is_zero() {
                    Zeroness::Zero
                } else {
                    Zeroness::Nonzero
                }
            }
            Mode::Approx => {
                let a = v.to_f64().abs();
                if a <= tol.eps_eq() {
                    Zeroness::Zero
                } else if a < 100.0 * tol.eps_eq() {
                    Zeroness::Ambiguous
                } else {
                    Zeroness::Nonzero
                }
            }
        }
    })
}

/// Coefficients of the three-term recurrence. `c[0]` and `b[d]` are unused
/// and stored as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence<S> {
    pub c: Vec<S>,
    pub a: Vec<S>,
    pub b: Vec<S>,
    /// `k_1` (plain) or `m_1` (starred).
    pub lead: S,
}

impl<S: Scalar> Recurrence<S> {
    fn from_tensor(d: usize, lead: S, t: impl Fn(usize, usize, usize) -> S) -> Self {
        Recurrence {
            c: (0..=d)
                .map(|i| if i == 0 { S::zero() } else { t(i, 1, i - 1) })
                .collect(),
            a: (0..=d).map(|i| t(i, 1, i)).collect(),
            b: (0..=d)
                .map(|i| if i == d { S::zero() } else { t(i, 1, i + 1) })
                .collect(),
            lead,
        }
    }

    pub fn d(&self) -> usize {
        self.a.len() - 1
    }
}

/// `c_i, a_i, b_i` from `p^i_{1,.}`, the starred versions from `q^i_{1,.}`,
/// `theta_i = P_{i,1}` and `theta*_i = Q_{i,1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalParams<S> {
    pub plain: Recurrence<S>,
    pub starred: Recurrence<S>,
    pub theta: Vec<S>,
    pub theta_star: Vec<S>,
}

impl<S: Scalar> TridiagonalParams<S> {
    pub fn new(params: &SchemeParameters, sp: &SpectralData<S>, kt: &KreinTensor<S>) -> Self {
        let d = params.d();
        assert!(d >= 1);
        TridiagonalParams {
            plain: Recurrence::from_tensor(d, S::from_i64(params.k[1] as i64), |h, i, j| {
                S::from_i64(params.p(h, i, j) as i64)
            }),
            starred: Recurrence::from_tensor(d, sp.m()[1].clone(), |h, i, j| {
                kt.get(h, i, j).clone()
            }),
            theta: (0..=d).map(|i| sp.p()[(i, 1)].clone()).collect(),
            theta_star: (0..=d).map(|i| sp.q()[(i, 1)].clone()).collect(),
        }
    }
}

/// `u_0, ..., u_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSequence<S> {
    pub u: Vec<Polynomial<S>>,
}

impl<S: Scalar> PolynomialSequence<S> {
    pub fn eval(&self, i: usize, x: &S) -> S {
        self.u[i].eval(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Plain,
    Starred,
}

/// `u_0 = 1`, `u_1 = lambda / k_1`, and
/// `u_{i+1} = ((lambda - a_i) u_i - c_i u_{i-1}) / b_i` for `1 <= i <= d-1`.
pub fn build_polynomials<S: Scalar>(
    tp: &TridiagonalParams<S>,
    which: Which,
) -> Result<PolynomialSequence<S>> {
    let rec = match which {
        Which::Plain => &tp.plain,
        Which::Starred => &tp.starred,
    };
    let d = rec.d();
    if rec.lead.is_zero() {
        return Err(Error::Refused(
            "leading valency/multiplicity is zero".into(),
        ));
    }
    let lambda = Polynomial::<S>::identity();
    let mut u = vec![
        Polynomial::one(),
        lambda.scale(&(S::one() / rec.lead.clone())),
    ];
    for i in 1..d {
        if rec.b[i].is_zero() {
            let what = match which {
                Which::Plain => "not P-polynomial: b",
                Which::Starred => "not a Q-polynomial ordering: b*",
            };
            return Err(Error::Refused(format!("{what}_{i} = 0")));
        }
        let shifted = lambda.sub(&Polynomial::constant(rec.a[i].clone()));
        let next = shifted
            .mul(&u[i])
            .sub(&u[i - 1].scale(&rec.c[i]))
            .scale(&(S::one() / rec.b[i].clone()));
        u.push(next);
    }
    u.truncate(d + 1);
    Ok(PolynomialSequence { u })
}

/// Agreement of an eigenmatrix with its polynomial expression.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryCheck {
    pub holds: bool,
    pub first_mismatch: Option<(usize, usize)>,
    pub max_residual: f64,
}

fn check_entries<S: Scalar>(
    dim: usize,
    tol: &Tolerance,
    lhs: impl Fn(usize, usize) -> S,
    rhs: impl Fn(usize, usize) -> S,
) -> EntryCheck {
    let mut out = EntryCheck {
        holds: true,
        first_mismatch: None,
        max_residual: 0.0,
    };
    for i in 0..dim {
        for j in 0..dim {
            let (l, r) = (lhs(i, j), rhs(i, j));
            out.max_residual = out.max_residual.max((l.clone() - r.clone()).abs().to_f64());
            if !l.eq_tol(&r, tol) && out.first_mismatch.is_none() {
                out.holds = false;
                out.first_mismatch = Some((i, j));
            }
        }
    }
    out
}

/// `P_{i,j} = k_j u_j(theta_i)`.
pub fn check_p_from_polynomials<S: Scalar>(
    sp: &SpectralData<S>,
    params: &SchemeParameters,
    u: &PolynomialSequence<S>,
    tol: &Tolerance,
) -> EntryCheck {
    check_entries(
        sp.d() + 1,
        tol,
        |i, j| sp.p()[(i, j)].clone(),
        |i, j| S::from_i64(params.k[j] as i64) * u.eval(j, &sp.p()[(i, 1)]),
    )
}

/// `Q_{i,j} = m_j u*_j(theta*_i)`.
pub fn check_q_from_polynomials<S: Scalar>(
    sp: &SpectralData<S>,
    ustar: &PolynomialSequence<S>,
    tol: &Tolerance,
) -> EntryCheck {
    check_entries(
        sp.d() + 1,
        tol,
        |i, j| sp.q()[(i, j)].clone(),
        |i, j| sp.m()[j].clone() * ustar.eval(j, &sp.q()[(i, 1)]),
    )
}

/// Askey-Wilson duality `u_i(theta_j) = u*_j(theta*_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AskeyWilson<S> {
    pub max_residual: S,
    pub first_mismatch: Option<(usize, usize)>,
}

/// Requires the scheme to be P-polynomial and the ordering Q-polynomial.
pub fn check_askey_wilson<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
) -> Result<AskeyWilson<S>> {
    let pcheck = is_p_polynomial(params);
    if !pcheck.holds {
        return Err(Error::Refused(format!(
            "scheme is not P-polynomial (witness {:?})",
            pcheck.witness
        )));
    }
    let qcheck = is_q_polynomial_ordering(kt, tol);
    if !qcheck.holds {
        return Err(Error::Refused(format!(
            "ordering is not Q-polynomial (witness {:?}, ambiguous {})",
            qcheck.witness,
            qcheck.ambiguous.len()
        )));
    }
    let tp = TridiagonalParams::new(params, sp, kt);
    let u = build_polynomials(&tp, Which::Plain)?;
    let ustar = build_polynomials(&tp, Which::Starred)?;
    let dim = params.d() + 1;
    let mut max = S::zero();
    let mut first = None;
    for i in 0..dim {
        for j in 0..dim {
            let l = u.eval(i, &tp.theta[j]);
            let r = ustar.eval(j, &tp.theta_star[i]);
            let diff = (l.clone() - r.clone()).abs();
            if diff > max {
                max = diff;
            }
            if !l.eq_tol(&r, tol) && first.is_none() {
                first = Some((i, j));
            }
        }
    }
    Ok(AskeyWilson {
        max_residual: max,
        first_mismatch: first,
    })
}

/// Biconditional "numerically self-dual iff formally self-dual" over orderings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiconditionalReport {
    pub orderings_checked: usize,
    pub nsd: usize,
    pub fsd: usize,
    /// Orderings where exactly one of the two properties holds.
    pub exceptions: Vec<OrderingPermutation>,
    /// How many orderings are Q-polynomial; the Q-polynomial variant of the
    /// biconditional is checked on those.
    pub q_polynomial_orderings: usize,
    pub q_polynomial_exceptions: Vec<OrderingPermutation>,
}

impl BiconditionalReport {
    pub fn holds(&self) -> bool {
        self.exceptions.is_empty() && self.q_polynomial_exceptions.is_empty()
    }
}

fn biconditional<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
    all_orderings: bool,
) -> Result<BiconditionalReport> {
    let d = sp.d();
    if d > MAX_ENUMERATION_CLASSES {
        return Err(Error::TooLarge {
            what: "class count d for ordering enumeration",
            value: d,
            bound: MAX_ENUMERATION_CLASSES,
        });
    }
    let mut rep = BiconditionalReport {
        orderings_checked: 0,
        nsd: 0,
        fsd: 0,
        exceptions: Vec::new(),
        q_polynomial_orderings: 0,
        q_polynomial_exceptions: Vec::new(),
    };
    for sigma in OrderingPermutation::all(d) {
        let r = evaluate_ordering(params, sp, kt, &sigma, tol)?;
        let (_, kt_sigma) = reorder(sp, kt, &sigma)?;
        let qpoly = is_q_polynomial_ordering(&kt_sigma, tol).holds;
        let broken = r.formally_self_dual != r.numerically_self_dual;
        if all_orderings {
            rep.orderings_checked += 1;
            rep.nsd += usize::from(r.numerically_self_dual);
            rep.fsd += usize::from(r.formally_self_dual);
            if broken {
                rep.exceptions.push(sigma.clone());
            }
        }
        if qpoly {
            rep.q_polynomial_orderings += 1;
            if broken {
                rep.q_polynomial_exceptions.push(sigma);
            }
        }
    }
    Ok(rep)
}

/// For a P-polynomial scheme: over every ordering fixing 0, numerically
/// self-dual iff formally self-dual; also the Q-polynomial variant.
pub fn verify_nsd_iff_fsd<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
) -> Result<BiconditionalReport> {
    let check = is_p_polynomial(params);
    if !check.holds {
        return Err(Error::Refused(format!(
            "scheme is not P-polynomial (witness {:?})",
            check.witness
        )));
    }
    biconditional(params, sp, kt, tol, true)
}

/// For any scheme: over the Q-polynomial orderings, numerically self-dual iff
/// formally self-dual. Only the `q_polynomial_*` fields are populated.
pub fn verify_nsd_iff_fsd_q_polynomial<S: Scalar>(
    params: &SchemeParameters,
    sp: &SpectralData<S>,
    kt: &KreinTensor<S>,
    tol: &Tolerance,
) -> Result<BiconditionalReport> {
    biconditional(params, sp, kt, tol, false)
}
