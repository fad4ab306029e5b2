use proptest::prelude::*;
use tropcram::assignment::det_smax;
use tropcram::geometry::{
    general_position, hyperplane_through, meet_hyperplanes, normalize_point, sign_transform,
    Hyperplane, Sign, SignPattern,
};
use tropcram::linalg::{det, permanent};
use tropcram::solvers::{homogeneous_solve, SolveOptions};
use tropcram::{Error, Matrix, MaxPlus, SMax, Symmetric, T2};

fn smax(s: &str) -> SMax {
    s.parse().unwrap()
}

fn svec(items: &[&str]) -> Vec<SMax> {
    items.iter().map(|s| smax(s)).collect()
}

fn t2(v: &[i64]) -> Vec<T2> {
    v.iter().map(|&x| T2::single(x)).collect()
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

/// Patterns, up to global sign, whose transformed hyperplanes contain the
/// point built from the permanents of the parameter moduli.
fn meet_by_search(hs: &[Hyperplane<SMax>]) -> Vec<(SignPattern, Vec<MaxPlus>)> {
    let n = hs.len() + 1;
    let p = Matrix::from_rows(hs.iter().map(|h| h.params().to_vec()).collect()).unwrap();
    let modulus = p.modulus();
    let point: Vec<MaxPlus> = (0..n)
        .map(|k| permanent(&modulus.without_column(k), 9).unwrap())
        .collect();
    let embedded: Vec<SMax> = point.iter().map(SMax::iota).collect();
    SignPattern::all(n)
        .into_iter()
        .filter(|eps| eps.0[0] == Sign::Plus)
        .filter(|eps| {
            hs.iter()
                .all(|h| sign_transform(h, eps).unwrap().contains(&embedded).unwrap())
        })
        .map(|eps| (eps, normalize_point(&point)))
        .collect()
}

#[test]
fn t2_membership() {
    let h = Hyperplane::new(t2(&[0, 0, 0])).unwrap();
    assert!(h.contains(&t2(&[0, 0, -1])).unwrap());
    assert!(!h.contains(&t2(&[1, 0, 0])).unwrap());
    assert!(matches!(h.contains(&t2(&[0, 0])), Err(Error::Dimension(_))));
}

#[test]
fn smax_membership() {
    let h = Hyperplane::new(svec(&["p(0)", "n(0)"])).unwrap();
    assert!(h.contains(&svec(&["p(3)", "p(3)"])).unwrap());
    assert!(!h.contains(&svec(&["p(3)", "p(2)"])).unwrap());
}

#[test]
fn general_position_examples() {
    let id = Matrix::from_rows(vec![
        svec(&["p(0)", "z"]),
        svec(&["z", "p(0)"]),
        svec(&["p(0)", "p(0)"]),
    ])
    .unwrap();
    assert!(general_position(&id, 9).unwrap());
    let equal = Matrix::from_rows(vec![
        svec(&["p(1)", "p(1)"]),
        svec(&["p(2)", "p(2)"]),
        svec(&["p(0)", "p(0)"]),
    ])
    .unwrap();
    assert!(!general_position(&equal, 9).unwrap());
    assert!(matches!(
        hyperplane_through(&equal, &opts()),
        Err(Error::NotGeneralPosition(_))
    ));
}

#[test]
fn through_one_point_in_the_plane() {
    let v = Matrix::from_rows(vec![svec(&["p(0)"]), svec(&["p(0)"])]).unwrap();
    let through = hyperplane_through(&v, &opts()).unwrap();
    let a = through.hyperplane.params();
    assert_eq!(a[0].modulus(), a[1].modulus());
    assert_eq!(a[0], a[1].negate());
    assert!(through.unique);
}

#[test]
fn t2_through_two_points() {
    let v = Matrix::from_rows(vec![t2(&[0, 0]), t2(&[0, -1]), t2(&[-1, 0])]).unwrap();
    let through = hyperplane_through(&v, &opts()).unwrap();
    let moduli: Vec<MaxPlus> = through
        .hyperplane
        .params()
        .iter()
        .map(T2::modulus)
        .collect();
    let rows = |i: usize| -> Vec<usize> { (0..3).filter(|&r| r != i).collect() };
    let oracle: Vec<MaxPlus> = (0..3)
        .map(|i| permanent(&v.modulus().select(&rows(i), &[0, 1]), 9).unwrap())
        .collect();
    assert_eq!(moduli, oracle);
    for j in 0..2 {
        assert!(through.hyperplane.contains(&v.column(j)).unwrap());
    }
}

#[test]
fn figure_transform_round_trip() {
    // x₁ = max(x₂, x₃) becomes x₂ = max(x₁, x₃).
    let h = Hyperplane::new(svec(&["p(0)", "n(0)", "n(0)"])).unwrap();
    let eps = SignPattern(vec![Sign::Minus, Sign::Minus, Sign::Plus]);
    let g = sign_transform(&h, &eps).unwrap();
    assert_eq!(g.params(), &svec(&["n(0)", "p(0)", "n(0)"])[..]);
    assert!(g.contains(&svec(&["p(1)", "p(4)", "p(4)"])).unwrap());
    assert!(g.contains(&svec(&["p(4)", "p(4)", "p(1)"])).unwrap());
    assert!(!g.contains(&svec(&["p(4)", "p(1)", "p(1)"])).unwrap());
    assert_eq!(sign_transform(&g, &eps).unwrap(), h);
    let plus = SignPattern(vec![Sign::Plus; 3]);
    assert_eq!(sign_transform(&h, &plus).unwrap(), h);
}

#[test]
fn meet_in_the_plane() {
    let h = Hyperplane::new(svec(&["p(0)", "n(0)"])).unwrap();
    let meet = meet_hyperplanes(&[h], &opts()).unwrap();
    assert_eq!(meet.pattern, SignPattern(vec![Sign::Plus, Sign::Plus]));
    assert_eq!(meet.point, vec![MaxPlus::int(0), MaxPlus::int(0)]);
}

#[test]
fn degenerate_meet_is_rejected() {
    let h = Hyperplane::new(svec(&["p(0)", "p(0)", "p(0)"])).unwrap();
    assert!(matches!(
        meet_hyperplanes(&[h.clone(), h], &opts()),
        Err(Error::NotGeneralPosition(_))
    ));
}

fn thin_smax() -> impl Strategy<Value = SMax> {
    (any::<bool>(), -6i64..6).prop_map(|(neg, m)| if neg { SMax::minus(m) } else { SMax::plus(m) })
}

fn thin_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<SMax>> {
    proptest::collection::vec(thin_smax(), rows * cols)
        .prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

fn points() -> impl Strategy<Value = Matrix<SMax>> {
    (2usize..=5).prop_flat_map(|n| thin_matrix(n, n - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn through_contains_its_points(v in points()) {
        prop_assume!(general_position(&v, 9).unwrap());
        let through = hyperplane_through(&v, &opts()).unwrap();
        prop_assert!(through.unique);
        for j in 0..v.cols() {
            prop_assert!(through.hyperplane.contains(&v.column(j)).unwrap());
        }
    }

    #[test]
    fn membership_matches_signed_form(a in proptest::collection::vec(thin_smax(), 4), x in proptest::collection::vec(thin_smax(), 4)) {
        let h = Hyperplane::new(a).unwrap();
        let eps = SignPattern::of(&x);
        let moduli: Vec<SMax> = x.iter().map(|v| SMax::iota(&v.modulus())).collect();
        prop_assert_eq!(
            h.contains(&x).unwrap(),
            sign_transform(&h, &eps).unwrap().contains(&moduli).unwrap()
        );
    }

    #[test]
    fn common_hyperplane_iff_balanced_det(v in (2usize..=4).prop_flat_map(|n| thin_matrix(n, n))) {
        let d = det_smax(&v).unwrap();
        prop_assert_eq!(&d, &det(&v, 9).unwrap());
        let report = homogeneous_solve(&v.transpose(), &opts()).unwrap();
        prop_assert_eq!(report.solution.is_some(), d.is_balanced());
        if let Some(a) = report.solution {
            let h = Hyperplane::new(a).unwrap();
            for j in 0..v.cols() {
                prop_assert!(h.contains(&v.column(j)).unwrap());
            }
        }
    }

    #[test]
    fn meet_matches_pattern_search(p in thin_matrix(2, 3)) {
        let hs: Vec<Hyperplane<SMax>> = (0..2).map(|i| Hyperplane::new(p.row(i).to_vec()).unwrap()).collect();
        prop_assume!(general_position(&p.transpose(), 9).unwrap());
        let meet = meet_hyperplanes(&hs, &opts()).unwrap();
        prop_assert!(meet.unique);
        let found = meet_by_search(&hs);
        prop_assert_eq!(found, vec![(meet.pattern.clone(), meet.point.clone())]);
        let swapped = meet_hyperplanes(&[hs[1].clone(), hs[0].clone()], &opts()).unwrap();
        prop_assert_eq!(swapped.pattern, meet.pattern);
        prop_assert_eq!(swapped.point, meet.point);
    }
}
