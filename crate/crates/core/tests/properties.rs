use proptest::prelude::*;

use assoc_scheme::duality::{classify_all_orderings, reorder, OrderingPermutation};
use assoc_scheme::fixtures::{generate_fixture, standard_fixtures, FixtureSpec};
use assoc_scheme::numerics::{cluster, Matrix, Rational, Scalar, Tolerance};
use assoc_scheme::poly::{
    build_polynomials, check_p_from_polynomials, check_q_from_polynomials, is_p_polynomial,
    is_q_polynomial_ordering, TridiagonalParams, Which,
};
use assoc_scheme::scheme::{
    parse_scm, verify_scheme, write_scm, AssociationScheme, RelationIndexMatrix,
};
use assoc_scheme::spectral::{decompose, krein_parameters, KreinTensor, SpectralData};

fn exact_fixtures() -> Vec<(FixtureSpec, AssociationScheme)> {
    standard_fixtures()
        .into_iter()
        .filter(|s| !matches!(s, FixtureSpec::Cycle { n: 5 } | FixtureSpec::Cycle { n: 7 }))
        .map(|s| (s, generate_fixture(s).unwrap()))
        .collect()
}

fn exact_spectral(s: &AssociationScheme) -> (SpectralData<Rational>, KreinTensor<Rational>) {
    let tol = Tolerance::exact();
    let sp = decompose::<Rational>(s, s.params(), &tol).unwrap();
    let kt = krein_parameters(&sp, s.params(), &tol).unwrap();
    (sp, kt)
}

/// Scans sorted triples: a triangle fails when the largest index exceeds the
/// sum of the other two, and is tight when it equals it.
fn brute_force_triangle(dim: usize, zero: impl Fn(usize, usize, usize) -> bool) -> bool {
    for h in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let mut t = [h, i, j];
                t.sort_unstable();
                let (small, large) = (t[0] + t[1], t[2]);
                if large > small && !zero(h, i, j) {
                    return false;
                }
                if large == small && zero(h, i, j) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn associate_matrices_multiply_by_intersection_numbers() {
    for (spec, s) in exact_fixtures() {
        if s.n() > 64 {
            continue;
        }
        let a: Vec<Matrix<Rational>> = (0..=s.d())
            .map(|i| s.associate_matrix(i).unwrap())
            .collect();
        for i in 0..=s.d() {
            for j in 0..=s.d() {
                let expected = (0..=s.d()).fold(Matrix::zeros(s.n(), s.n()), |acc, h| {
                    acc.add(&a[h].scale(&Rational::from_i64(s.params().p(h, i, j) as i64)))
                });
                assert_eq!(a[i].mul(&a[j]), expected, "{spec}: A_{i} A_{j}");
            }
        }
    }
}

#[test]
fn formal_self_duality_implies_numerical() {
    let tol = Tolerance::exact();
    for (spec, s) in exact_fixtures() {
        if s.d() > 7 {
            continue;
        }
        let (sp, kt) = exact_spectral(&s);
        let c = classify_all_orderings(s.params(), &sp, &kt, &tol).unwrap();
        for r in &c.reports {
            assert!(
                !r.formally_self_dual || r.numerically_self_dual,
                "{spec}: {}",
                r.ordering
            );
        }
    }
}

#[test]
fn triangle_conditions_match_brute_force() {
    let tol = Tolerance::exact();
    for (spec, s) in exact_fixtures() {
        let params = s.params();
        let dim = s.d() + 1;
        assert_eq!(
            is_p_polynomial(params).holds,
            brute_force_triangle(dim, |h, i, j| params.p(h, i, j) == 0),
            "{spec}"
        );
        let (_, kt) = exact_spectral(&s);
        assert_eq!(
            is_q_polynomial_ordering(&kt, &tol).holds,
            brute_force_triangle(dim, |h, i, j| *kt.get(h, i, j) == Rational::from_i64(0)),
            "{spec}"
        );
    }
    let approx = Tolerance::default_approx();
    for n in [5, 7] {
        let s = generate_fixture(FixtureSpec::Cycle { n }).unwrap();
        assert!(is_p_polynomial(s.params()).holds);
        let sp = decompose::<f64>(&s, s.params(), &approx).unwrap();
        let kt = krein_parameters(&sp, s.params(), &approx).unwrap();
        let check = is_q_polynomial_ordering(&kt, &approx);
        assert!(check.ambiguous.is_empty());
        assert_eq!(
            check.holds,
            brute_force_triangle(n / 2 + 1, |h, i, j| kt.get(h, i, j).abs() <= 1e-9)
        );
    }
}

#[test]
fn polynomial_identities_on_p_polynomial_fixtures() {
    let tol = Tolerance::exact();
    for (spec, s) in exact_fixtures() {
        let params = s.params();
        if !is_p_polynomial(params).holds {
            continue;
        }
        let (sp, kt) = exact_spectral(&s);
        let tp = TridiagonalParams::new(params, &sp, &kt);
        for i in 0..tp.theta.len() {
            for j in 0..i {
                assert_ne!(tp.theta[i], tp.theta[j], "{spec}: theta_{i} = theta_{j}");
            }
        }
        let u = build_polynomials(&tp, Which::Plain).unwrap();
        for j in 0..=s.d() {
            assert_eq!(
                u.eval(j, &tp.theta[0]),
                Rational::from_i64(1),
                "{spec}: u_{j}(theta_0)"
            );
        }
        assert!(
            check_p_from_polynomials(&sp, params, &u, &tol).holds,
            "{spec}"
        );
        if is_q_polynomial_ordering(&kt, &tol).holds {
            let ustar = build_polynomials(&tp, Which::Starred).unwrap();
            assert!(check_q_from_polynomials(&sp, &ustar, &tol).holds, "{spec}");
        }
    }
}

fn hamming4() -> (
    AssociationScheme,
    SpectralData<Rational>,
    KreinTensor<Rational>,
) {
    let s = generate_fixture(FixtureSpec::Hamming { n: 4, q: 2 }).unwrap();
    let (sp, kt) = exact_spectral(&s);
    (s, sp, kt)
}

fn ordering(d: usize) -> impl Strategy<Value = OrderingPermutation> {
    Just((1..=d).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|mut v| {
            v.insert(0, 0);
            OrderingPermutation::new(v).unwrap()
        })
}

fn relabelled(s: &AssociationScheme, perm: &[usize]) -> RelationIndexMatrix {
    let rel = s.relations();
    RelationIndexMatrix::from_fn(rel.n(), rel.d(), |x, y| rel.get(perm[x], perm[y])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reorderings_compose(sigma in ordering(4), tau in ordering(4)) {
        let (_, sp, kt) = hamming4();
        let (sp1, kt1) = reorder(&sp, &kt, &sigma).unwrap();
        let (sp2, kt2) = reorder(&sp1, &kt1, &tau).unwrap();
        let (sp3, kt3) = reorder(&sp, &kt, &sigma.compose(&tau)).unwrap();
        prop_assert_eq!(sp2.p(), sp3.p());
        prop_assert_eq!(sp2.q(), sp3.q());
        prop_assert_eq!(kt2.q, kt3.q);
    }

    #[test]
    fn relabelling_points_preserves_parameters(perm in Just((0..16).collect::<Vec<usize>>()).prop_shuffle()) {
        let (s, sp, _) = hamming4();
        let t = verify_scheme(relabelled(&s, &perm)).unwrap();
        prop_assert_eq!(&t.params().p, &s.params().p);
        let sp2 = decompose::<Rational>(&t, t.params(), &Tolerance::exact()).unwrap();
        prop_assert_eq!(sp2.p(), sp.p());
    }

    #[test]
    fn scm_round_trip(perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(), m in 1usize..=3) {
        let s = generate_fixture(FixtureSpec::BinaryGroup { m }).unwrap();
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < s.n()).collect();
        let rel = relabelled(&s, &perm);
        let text = write_scm(&rel);
        let back = parse_scm(&text).unwrap();
        prop_assert_eq!(&back, &rel);
        prop_assert_eq!(write_scm(&back), text);
    }

    #[test]
    fn clusters_partition_the_input(values in proptest::collection::vec(-5i32..5, 0..20)) {
        let xs: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
        let groups = cluster(&xs, &Tolerance::default_approx());
        let mut seen: Vec<usize> = groups.iter().flat_map(|g| g.members.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..xs.len()).collect::<Vec<_>>());
        for g in &groups {
            prop_assert!(g.members.iter().all(|&i| xs[i] == xs[g.members[0]]));
        }
    }
}
