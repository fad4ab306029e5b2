use tropcram::semiring::axioms::{check_axioms, Mode, Property};
use tropcram::semiring::descriptor::{by_name, registry};

const BUDGET: usize = 5_000_000;

#[test]
fn reports_match_declared_classification() {
    for d in registry() {
        let mode = if d.is_finite() {
            Mode::Exhaustive
        } else {
            Mode::Sampled
        };
        let r = check_axioms(&d, mode, BUDGET).unwrap();
        println!("{r}\n");
        assert!(!r.incomplete, "{}", d.name);
        for p in [
            Property::SemiringLaws,
            Property::Symmetry,
            Property::ThinSet,
            Property::UnitSymmetry,
            Property::NaturalOrder,
            Property::ZeroModulus,
        ] {
            assert!(r.holds(p), "{} {p}: {:?}", d.name, r.outcome(p));
        }
        assert_eq!(r.classification(), d.class, "{}", d.name);
    }
}

#[test]
fn finite_bases_pass_the_elimination_properties() {
    for name in ["bool4", "n2"] {
        let r = check_axioms(&by_name(name).unwrap(), Mode::Exhaustive, BUDGET).unwrap();
        for p in [
            Property::ThinBalanceCancels,
            Property::ThinProducts,
            Property::SystemTransitivity,
            Property::ThinExact,
            Property::ThinGeneration,
        ] {
            assert!(r.holds(p), "{name} {p}");
        }
        assert!(r.classification().strong_elimination);
    }
}

#[test]
fn idempotency() {
    let idem = |name| {
        let d = by_name(name).unwrap();
        let mode = if d.is_finite() {
            Mode::Exhaustive
        } else {
            Mode::Sampled
        };
        check_axioms(&d, mode, BUDGET)
            .unwrap()
            .holds(Property::Idempotent)
    };
    assert!(idem("bool4"));
    assert!(idem("phi"));
    assert!(!idem("n2"));
}

#[test]
fn phase_fails_exactly_the_expected_properties() {
    let r = check_axioms(&by_name("phi").unwrap(), Mode::Sampled, BUDGET).unwrap();
    assert!(r.witness(Property::ThinExact).unwrap().contains("sec:"));
    for p in [
        Property::BalanceTransitivity,
        Property::ThinBalanceCancels,
        Property::ThinProducts,
        Property::ThinGeneration,
    ] {
        assert!(r.holds(p), "{p}");
    }
    let r = check_axioms(&by_name("phase").unwrap(), Mode::Sampled, BUDGET).unwrap();
    for p in [Property::InvertibleThin, Property::BalancedSumSplit] {
        assert!(r.witness(p).is_some(), "{p}");
    }
    // Half-planes are identified with the plane, so a line plus any cone
    // of the same modulus stays balanced.
    assert!(r.holds(Property::BalancedAbsorbs));
    assert!(r.holds(Property::ZeroModulus));
    assert!(!r.classification().homogeneous);
    for p in [
        Property::OrderWitness,
        Property::FiniteChains,
        Property::OrderEqual,
        Property::BalanceInverse,
    ] {
        assert!(r.holds(p), "{p}");
    }
}

#[test]
fn exhaustive_mode_rejects_infinite_carriers() {
    assert!(check_axioms(&by_name("smax").unwrap(), Mode::Exhaustive, BUDGET).is_err());
}

#[test]
fn small_budget_is_reported_incomplete() {
    let r = check_axioms(&by_name("bool4").unwrap(), Mode::Exhaustive, 100).unwrap();
    assert!(r.incomplete);
    assert!(r
        .results
        .iter()
        .any(|x| x.outcome == tropcram::semiring::axioms::Outcome::Unfinished));
}
