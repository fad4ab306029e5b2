use tropcram::linalg::permanent;
use tropcram::matrix::{balances, modulus_vector};
use tropcram::semiring::Semiring;
use tropcram::solvers::{
    cramer_permanents_jacobi, cramer_permanents_rectangular, cramer_solve, gauss_seidel_solve,
    homogeneous_hat, homogeneous_solve, jacobi_decompose, jacobi_solve, ChoicePolicy, DiagonalSign,
    SolveOptions, Status,
};
use tropcram::{Matrix, MaxPlus, SMax, Symmetric, T2};

fn smax(s: &str) -> SMax {
    s.parse().unwrap()
}

fn vector(items: &[&str]) -> Vec<SMax> {
    items.iter().map(|s| smax(s)).collect()
}

fn matrix(rows: &[&[&str]]) -> Matrix<SMax> {
    Matrix::from_rows(rows.iter().map(|r| vector(r)).collect()).unwrap()
}

fn example() -> (Matrix<SMax>, Vec<SMax>) {
    let a = matrix(&[
        &["p(5)", "n(0)", "p(3)"],
        &["p(1)", "p(3)", "n(1)"],
        &["p(3)", "n(2)", "b(1)"],
    ]);
    (a, vector(&["n(1)", "b(4)", "p(0)"]))
}

fn with(policy: ChoicePolicy, diagonal_sign: DiagonalSign) -> SolveOptions {
    SolveOptions {
        policy,
        diagonal_sign,
        ..SolveOptions::default()
    }
}

fn ints(v: &[i64]) -> Vec<MaxPlus> {
    v.iter().map(|&x| MaxPlus::int(x)).collect()
}

#[test]
fn example_decomposition() {
    let (a, _) = example();
    let dec = jacobi_decompose(&a, &SolveOptions::default()).unwrap();
    assert_eq!(dec.source, vec![0, 1, 2]);
    assert_eq!(dec.d, vector(&["p(5)", "p(3)", "p(1)"]));
    let n = matrix(&[
        &["z", "n(0)", "p(3)"],
        &["p(1)", "z", "n(1)"],
        &["p(3)", "n(2)", "n(1)"],
    ]);
    assert_eq!(dec.n, n);
    assert_eq!(dec.recompose(), a);
    let alt = jacobi_decompose(
        &a,
        &with(ChoicePolicy::PreferPositive, DiagonalSign::Negative),
    )
    .unwrap();
    assert_eq!(alt.d[2], smax("n(1)"));
    assert_eq!(*alt.n.get(2, 2), smax("p(1)"));
}

#[test]
fn example_jacobi_iterates() {
    let (a, b) = example();
    let report = jacobi_solve(&a, &b, &SolveOptions::default()).unwrap();
    let expected = [
        vector(&["z", "z", "z"]),
        vector(&["n(-4)", "p(1)", "p(-1)"]),
        vector(&["n(-3)", "p(1)", "p(2)"]),
        vector(&["n(0)", "p(1)", "p(2)"]),
    ];
    assert_eq!(report.trace, expected);
    assert_eq!(report.iterations(), 3);
    let x = report.solution.unwrap();
    assert!(balances(&a.mul_vec(&x).unwrap(), &b));
    assert_eq!(modulus_vector(&x), ints(&[0, 1, 2]));
}

#[test]
fn example_alternate_solutions() {
    let (a, b) = example();
    let cases = [
        (
            ChoicePolicy::PreferNegative,
            DiagonalSign::Positive,
            ["p(0)", "n(1)", "n(2)"],
        ),
        (
            ChoicePolicy::PreferPositive,
            DiagonalSign::Negative,
            ["p(0)", "p(1)", "n(2)"],
        ),
        (
            ChoicePolicy::PreferNegative,
            DiagonalSign::Negative,
            ["n(0)", "n(1)", "p(2)"],
        ),
    ];
    for (policy, sign, limit) in cases {
        let x = jacobi_solve(&a, &b, &with(policy, sign))
            .unwrap()
            .solution
            .unwrap();
        assert_eq!(x, vector(&limit), "{policy:?} {sign:?}");
        assert!(balances(&a.mul_vec(&x).unwrap(), &b));
    }
}

#[test]
fn example_gauss_seidel_two_sweeps() {
    let (a, b) = example();
    let report = gauss_seidel_solve(&a, &b, &SolveOptions::default()).unwrap();
    assert_eq!(report.iterations(), 2);
    assert_eq!(report.trace[1], vector(&["n(-4)", "p(1)", "p(2)"]));
    assert_eq!(report.solution.unwrap(), vector(&["n(0)", "p(1)", "p(2)"]));
}

#[test]
fn example_cramer_report() {
    let (a, b) = example();
    let report = cramer_solve(&a, &b, &SolveOptions::default()).unwrap();
    assert_eq!(report.det, Some(smax("b(9)")));
    assert_eq!(report.status, Some(Status::BalancedDeterminant));
    assert_eq!(report.all_solutions_modulus, Some(ints(&[0, 1, 2])));
    assert_eq!(
        report.cramer.as_ref().map(|c| modulus_vector(c)),
        Some(ints(&[9, 10, 11]))
    );
    let x = report.solution.unwrap();
    assert!(balances(&a.mul_vec(&x).unwrap(), &b));
}

#[test]
fn example_cramer_permanents() {
    let (a, b) = example();
    let got = cramer_permanents_jacobi(&a.modulus(), &modulus_vector(&b)).unwrap();
    assert_eq!(got, ints(&[9, 10, 11]));
}

#[test]
fn identity_and_permutation_permanents() {
    let b = ints(&[3, -1, 7]);
    let id: Matrix<MaxPlus> = Matrix::identity(3);
    assert_eq!(cramer_permanents_jacobi(&id, &b).unwrap(), b);
    let p: Matrix<MaxPlus> = Matrix::permutation(&[2, 0, 1]);
    let got = cramer_permanents_jacobi(&p, &b).unwrap();
    // x = P⁻¹ b solves P x = b.
    assert_eq!(got, ints(&[-1, 7, 3]));
}

#[test]
fn rectangular_permanents_match_minors() {
    let c = Matrix::from_rows(vec![ints(&[5, 0, 3]), ints(&[1, 3, 1])]).unwrap();
    let got = cramer_permanents_rectangular(&c).unwrap();
    let expected: Vec<MaxPlus> = (0..3)
        .map(|k| permanent(&c.without_column(k), 9).unwrap())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn identity_and_diagonal_systems() {
    let id: Matrix<SMax> = Matrix::identity(3);
    let b = vector(&["p(1)", "n(2)", "p(0)"]);
    let j = jacobi_solve(&id, &b, &SolveOptions::default()).unwrap();
    assert_eq!(j.iterations(), 1);
    assert_eq!(j.solution.as_deref(), Some(&b[..]));
    let d = matrix(&[&["p(2)", "z"], &["z", "n(1)"]]);
    let rhs = vector(&["p(3)", "p(4)"]);
    let jac = jacobi_solve(&d, &rhs, &SolveOptions::default()).unwrap();
    let gs = gauss_seidel_solve(&d, &rhs, &SolveOptions::default()).unwrap();
    assert_eq!(jac.trace, gs.trace);
}

#[test]
fn seeded_policy_is_reproducible() {
    let (a, b) = example();
    let run = |seed| {
        jacobi_solve(
            &a,
            &b,
            &with(ChoicePolicy::Seeded(seed), DiagonalSign::Positive),
        )
        .unwrap()
    };
    for seed in 0..8 {
        let x = run(seed);
        assert_eq!(x, run(seed));
        assert!(balances(
            &a.mul_vec(x.solution.as_ref().unwrap()).unwrap(),
            &b
        ));
    }
}

#[test]
fn structurally_singular_system() {
    let a = matrix(&[&["p(1)", "z"], &["p(2)", "z"]]);
    let b = vector(&["p(0)", "p(0)"]);
    let report = cramer_solve(&a, &b, &SolveOptions::default()).unwrap();
    assert_eq!(report.status, Some(Status::StructurallySingular));
    assert!(report.solution.is_none());
}

#[test]
fn thin_determinant_gives_unique_solution() {
    let a = matrix(&[&["p(2)", "p(0)"], &["n(1)", "p(3)"]]);
    let b = vector(&["p(4)", "n(1)"]);
    let report = cramer_solve(&a, &b, &SolveOptions::default()).unwrap();
    assert_eq!(report.status, Some(Status::Unique));
    let x = report.solution.unwrap();
    assert!(x.iter().all(SMax::is_thin));
    assert!(balances(&a.mul_vec(&x).unwrap(), &b));
}

#[test]
fn homogeneous_two_by_two_tie() {
    let a = matrix(&[&["p(0)", "p(0)"], &["p(0)", "p(0)"]]);
    let report = homogeneous_solve(&a, &SolveOptions::default()).unwrap();
    assert_eq!(report.det, Some(smax("b(0)")));
    let x = report.solution.unwrap();
    assert!(x.iter().all(SMax::is_thin) && x.iter().any(|v| !v.is_zero()));
    assert!(a.mul_vec(&x).unwrap().iter().all(SMax::is_balanced));
}

#[test]
fn homogeneous_thin_determinant_has_no_certificate() {
    let a = matrix(&[&["p(0)", "z"], &["z", "p(0)"]]);
    let report = homogeneous_solve(&a, &SolveOptions::default()).unwrap();
    assert_eq!(report.status, Some(Status::NoThinCertificate));
    assert!(report.solution.is_none());
}

#[test]
fn homogeneous_zero_column_gives_unit_vector() {
    let a = matrix(&[
        &["p(1)", "z", "p(2)"],
        &["n(3)", "z", "p(0)"],
        &["p(0)", "z", "b(4)"],
    ]);
    let report = homogeneous_solve(&a, &SolveOptions::default()).unwrap();
    assert_eq!(report.status, Some(Status::StructurallySingular));
    assert_eq!(report.solution.unwrap(), vector(&["z", "p(0)", "z"]));
}

#[test]
fn homogeneous_hat_one_row() {
    let a = matrix(&[&["p(2)", "p(5)"]]);
    let hat = homogeneous_hat(&a, &SolveOptions::default()).unwrap();
    assert_eq!(hat.hat, vector(&["n(5)", "p(2)"]));
    assert!(hat.hat_is_thin);
    assert!(a.mul_vec(&hat.hat).unwrap()[0].is_balanced());
    assert!(a.mul_vec(&hat.solution).unwrap()[0].is_balanced());
    assert_eq!(modulus_vector(&hat.solution), modulus_vector(&hat.hat));
}

#[test]
fn t2_hat_solution_is_the_embedded_modulus() {
    let a: Matrix<T2> = Matrix::from_rows(vec![
        vec![T2::single(1), T2::single(0), T2::double(2)],
        vec![T2::single(0), T2::single(3), T2::single(1)],
    ])
    .unwrap();
    let hat = homogeneous_hat(&a, &SolveOptions::default()).unwrap();
    let embedded: Vec<T2> = hat.hat.iter().map(|h| T2::iota(&h.modulus())).collect();
    assert_eq!(hat.solution, embedded);
    assert!(a.mul_vec(&embedded).unwrap().iter().all(T2::is_balanced));
}

#[test]
fn phase_rejected_by_homogeneous_solver() {
    let a: Matrix<tropcram::PhaseExt> = Matrix::identity(2);
    let err = homogeneous_solve(&a, &SolveOptions::default()).unwrap_err();
    assert!(err.to_string().contains("homogeneous"), "{err}");
}

mod random {
    use proptest::prelude::*;
    use tropcram::linalg::det;
    use tropcram::matrix::{balances, is_thin_vector};
    use tropcram::solvers::{cramer_solve, homogeneous_solve, SolveOptions, Status};
    use tropcram::{Matrix, SMax, Semiring, Symmetric};

    fn thin() -> impl Strategy<Value = SMax> + Clone {
        prop_oneof![
            1 => Just(SMax::Zero),
            4 => (-4i64..=4).prop_map(SMax::plus),
            4 => (-4i64..=4).prop_map(SMax::minus),
        ]
    }

    fn system() -> impl Strategy<Value = (Matrix<SMax>, Vec<SMax>)> {
        (1usize..=5).prop_flat_map(|n| {
            (
                proptest::collection::vec(thin(), n * n)
                    .prop_map(move |d| Matrix::new(n, n, d).unwrap()),
                proptest::collection::vec(thin(), n),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn thin_determinant_gives_a_balancing_solution((a, b) in system()) {
            let d = det(&a, 9).unwrap();
            prop_assume!(d.is_thin() && !d.is_zero());
            let report = cramer_solve(&a, &b, &SolveOptions::default()).unwrap();
            let expected = if is_thin_vector(report.cramer.as_ref().unwrap()) {
                Status::Unique
            } else {
                Status::ExistsNonUnique
            };
            prop_assert_eq!(report.status, Some(expected));
            let x = report.solution.unwrap();
            prop_assert!(is_thin_vector(&x));
            prop_assert!(balances(&a.mul_vec(&x).unwrap(), &b));
        }

        #[test]
        fn homogeneous_solution_exists_iff_det_balanced((a, _) in system()) {
            let d = det(&a, 9).unwrap();
            let report = homogeneous_solve(&a, &SolveOptions::default()).unwrap();
            prop_assert_eq!(report.solution.is_some(), d.is_balanced());
            if let Some(x) = report.solution {
                prop_assert!(is_thin_vector(&x) && x.iter().any(|v| !v.is_zero()));
                prop_assert!(a.mul_vec(&x).unwrap().iter().all(SMax::is_balanced));
            }
        }
    }
}
