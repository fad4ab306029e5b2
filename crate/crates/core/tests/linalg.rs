use proptest::prelude::*;
use tropcram::assignment::{det_smax, det_t2};
use tropcram::linalg::{
    adjugate, butkovic_normal_form, det, kleene_star, optimal_value, permanent, yoeli_adjugate,
};
use tropcram::semiring::descriptor::by_name;
use tropcram::{Matrix, MaxPlus, SMax, Semiring, Symmetric, T2};

const BOUND: usize = 9;

fn smax_entry() -> impl Strategy<Value = SMax> + Clone {
    prop_oneof![
        1 => Just(SMax::zero()),
        1 => (-3i64..=3).prop_map(SMax::balanced),
        4 => (-3i64..=3).prop_map(SMax::plus),
        4 => (-3i64..=3).prop_map(SMax::minus),
    ]
}

fn t2_entry() -> impl Strategy<Value = T2> + Clone {
    prop_oneof![
        1 => Just(T2::zero()),
        1 => (-3i64..=3).prop_map(T2::double),
        4 => (-3i64..=3).prop_map(T2::single),
    ]
}

fn square<T: Clone + std::fmt::Debug>(
    entry: impl Strategy<Value = T> + Clone,
    max: usize,
) -> impl Strategy<Value = Matrix<T>> {
    (1usize..=max).prop_flat_map(move |n| {
        proptest::collection::vec(entry.clone(), n * n)
            .prop_map(move |d| Matrix::new(n, n, d).unwrap())
    })
}

/// A monomial matrix: a permutation with thin nonzero weights.
fn monomial(n: usize) -> impl Strategy<Value = Matrix<SMax>> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        proptest::collection::vec((any::<bool>(), -4i64..=4), n),
    )
        .prop_map(move |(perm, w)| {
            Matrix::from_fn(n, n, |i, j| {
                if perm[i] == j {
                    let (neg, m) = w[i];
                    if neg {
                        SMax::minus(m)
                    } else {
                        SMax::plus(m)
                    }
                } else {
                    SMax::zero()
                }
            })
        })
}

fn with_monomial() -> impl Strategy<Value = (Matrix<SMax>, Matrix<SMax>)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(smax_entry(), n * n)
                .prop_map(move |d| Matrix::new(n, n, d).unwrap()),
            monomial(n),
        )
    })
}

/// Unit diagonal, every circuit at most the unit.
fn normalized() -> impl Strategy<Value = Matrix<MaxPlus>> {
    (1usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(-6i64..=6, n),
            proptest::collection::vec(
                prop_oneof![1 => Just(None), 4 => (0i64..=4).prop_map(Some)],
                n * n,
            ),
        )
            .prop_map(move |(p, w)| {
                Matrix::from_fn(n, n, |i, j| match (i == j, w[i * n + j]) {
                    (true, _) => MaxPlus::one(),
                    (false, None) => MaxPlus::bottom(),
                    (false, Some(w)) => MaxPlus::int(p[i] - p[j] - w),
                })
            })
    })
}

fn maxplus_square() -> impl Strategy<Value = Matrix<MaxPlus>> {
    square(
        prop_oneof![1 => Just(MaxPlus::bottom()), 5 => (-9i64..=9).prop_map(MaxPlus::int)],
        6,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn det_smax_matches_expansion(a in square(smax_entry(), 6)) {
        prop_assert_eq!(det_smax(&a).unwrap(), det(&a, BOUND).unwrap());
    }

    #[test]
    fn det_t2_matches_expansion(a in square(t2_entry(), 6)) {
        prop_assert_eq!(det_t2(&a).unwrap(), det(&a, BOUND).unwrap());
    }

    #[test]
    fn det_multiplies_with_a_monomial((a, m) in with_monomial()) {
        let left = det(&m.mul(&a).unwrap(), BOUND).unwrap();
        prop_assert_eq!(left, det(&m, BOUND).unwrap().mul(&det(&a, BOUND).unwrap()));
        let right = det(&a.mul(&m).unwrap(), BOUND).unwrap();
        prop_assert_eq!(right, det(&a, BOUND).unwrap().mul(&det(&m, BOUND).unwrap()));
    }

    #[test]
    fn adjugate_reverses_monomial_products((a, m) in with_monomial()) {
        let adj = |x: &Matrix<SMax>| adjugate(x, BOUND).unwrap();
        prop_assert_eq!(adj(&a.mul(&m).unwrap()), adj(&m).mul(&adj(&a)).unwrap());
        prop_assert_eq!(adj(&m.mul(&a).unwrap()), adj(&a).mul(&adj(&m)).unwrap());
    }

    #[test]
    fn yoeli_adjugate_is_the_cofactor_matrix(a in normalized()) {
        let n = a.rows();
        let star = yoeli_adjugate(&a).unwrap();
        let cofactors = Matrix::from_fn(n, n, |i, j| permanent(&a.minor(j, i), BOUND).unwrap());
        prop_assert_eq!(&star, &cofactors);
        prop_assert_eq!(star, kleene_star(&a).unwrap());
    }

    #[test]
    fn normal_form_rescales_the_matrix(c in maxplus_square()) {
        let per = permanent(&c, BOUND).unwrap();
        prop_assert_eq!(optimal_value(&c).unwrap(), per.clone());
        let Ok(nf) = butkovic_normal_form(&c) else {
            prop_assert!(per.is_bottom());
            return Ok(());
        };
        prop_assert!(nf.scaling.is_feasible(&c));
        prop_assert_eq!(MaxPlus::finite(nf.scaling.value()), per);
        let rebuilt = nf.permutation().mul(&nf.row_scale()).unwrap()
            .mul(&c).unwrap()
            .mul(&nf.col_scale()).unwrap();
        prop_assert_eq!(&rebuilt, &nf.normalized);
        let b = &nf.normalized;
        for i in 0..b.rows() {
            prop_assert_eq!(b.get(i, i), &MaxPlus::one());
            for j in 0..b.cols() {
                prop_assert!(*b.get(i, j) <= MaxPlus::one());
            }
        }
    }

    #[test]
    fn descriptor_agrees_with_typed_laws(x in smax_entry(), y in smax_entry()) {
        let d = by_name("smax").unwrap();
        let (vx, vy) = ((d.parse)(&x.to_string()).unwrap(), (d.parse)(&y.to_string()).unwrap());
        prop_assert_eq!((d.format)(&(d.add)(&vx, &vy)), x.add(&y).to_string());
        prop_assert_eq!((d.format)(&(d.mul)(&vx, &vy)), x.mul(&y).to_string());
        prop_assert_eq!((d.format)(&(d.negate)(&vx)), x.negate().to_string());
        prop_assert_eq!((d.is_thin)(&vx), x.is_thin());
        prop_assert_eq!((d.is_balanced)(&vx), x.is_balanced());
        prop_assert_eq!((d.natural_le)(&vx, &vy), x.natural_le(&y));
        prop_assert_eq!((d.modulus)(&vx), x.modulus());
    }

    #[test]
    fn t2_descriptor_agrees_with_typed_laws(x in t2_entry(), y in t2_entry()) {
        let d = by_name("t2").unwrap();
        let (vx, vy) = ((d.parse)(&x.to_string()).unwrap(), (d.parse)(&y.to_string()).unwrap());
        prop_assert_eq!((d.format)(&(d.add)(&vx, &vy)), x.add(&y).to_string());
        prop_assert_eq!((d.format)(&(d.mul)(&vx, &vy)), x.mul(&y).to_string());
        prop_assert_eq!((d.is_balanced)(&vx), x.is_balanced());
    }
}
