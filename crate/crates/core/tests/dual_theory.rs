use fixedbitset::FixedBitSet;
use poscomp::dual::{
    agreement_set, check_axioms, density_check, equalizer_presentation, principal_expansion,
    separating_family, AlgebraInstance, AxiomConfig, MultOp, Status, TopReading, ValuedMap,
};
use poscomp::enumerate::{labeled_posets_up_to, subsets};
use poscomp::{FinPoset, Rat01};

fn v(n: i64, d: i64) -> Rat01 {
    Rat01::new(n, d).unwrap()
}

#[test]
fn unit_interval_satisfies_every_axiom() {
    let a = AlgebraInstance::unit_interval(4, MultOp::Lukasiewicz);
    let report = check_axioms(&a, a.carrier(), &AxiomConfig::default()).unwrap();
    assert_eq!(report.results.len(), 18);
    assert!(report.all_pass());
}

#[test]
fn truncated_sum_as_multiplication_is_rejected() {
    let a = AlgebraInstance::unit_interval(4, MultOp::TruncatedSum);
    let report = check_axioms(&a, a.carrier(), &AxiomConfig::default()).unwrap();
    let unit = report.get("x⊛⊤ = x").unwrap();
    assert_eq!(unit.status, Status::Fail);
    assert!(unit.witness.is_some());
}

#[test]
fn verbatim_top_reading_fails_below_top() {
    let a = AlgebraInstance::unit_interval(2, MultOp::Lukasiewicz);
    let config = AxiomConfig {
        top: TopReading::Verbatim,
        ..AxiomConfig::default()
    };
    let report = check_axioms(&a, a.carrier(), &config).unwrap();
    let top = report.get("⊤ ≤ x").unwrap();
    assert_eq!(top.status, Status::Fail);
    assert!(top.witness.is_some());
}

#[test]
fn principal_expansion_reproduces_every_grid_map() {
    for x in labeled_posets_up_to(3) {
        for psi in AlgebraInstance::grid_cx(&x, 3, MultOp::Lukasiewicz).carrier() {
            assert_eq!(&principal_expansion(psi), psi);
        }
    }
}

#[test]
fn density_closed_form_is_exact() {
    let x = FinPoset::new(&["a", "b"], &[("a", "b")]).unwrap();
    let gens: Vec<ValuedMap> = (0..2)
        .map(|i| ValuedMap::indicator(&x, &x.up(i)).unwrap())
        .collect();
    let target = ValuedMap::new(&x, vec![v(1, 4), v(3, 4)]).unwrap();
    let report = density_check(&x, &gens, &[target], &Rat01::zero(), 0, 4).unwrap();
    assert!(report.precondition_holds);
    assert!(report.items.iter().all(|i| i.within_epsilon));
}

#[test]
fn equalizer_presentation_recovers_each_subset() {
    for x in labeled_posets_up_to(3) {
        for a in subsets(x.len()) {
            let pairs = equalizer_presentation(&x, &a).unwrap();
            assert_eq!(agreement_set(&x, &pairs), a);
        }
    }
}

#[test]
fn separating_family_agrees_on_a_and_is_constant_on_b() {
    // a < b < c with A = {a, c}, B = {b}
    let x = FinPoset::chain(3);
    let mut a = FixedBitSet::with_capacity(3);
    a.insert(0);
    a.insert(2);
    let mut b = FixedBitSet::with_capacity(3);
    b.insert(1);
    let us = [v(0, 1), v(1, 3), v(1, 1)];
    let fam = separating_family(&x, &a, &b, &us).unwrap();
    assert_eq!(fam.len(), 3);
    for (f, u) in fam.iter().zip(&us) {
        assert_eq!(f.at(0), &Rat01::zero());
        assert_eq!(f.at(2), &Rat01::one());
        assert_eq!(f.at(1), u);
    }
}

#[test]
fn non_monotone_values_are_rejected() {
    let x = FinPoset::chain(2);
    assert!(ValuedMap::new(&x, vec![v(1, 1), v(0, 1)]).is_err());
}
