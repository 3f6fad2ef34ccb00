//! Randomized invariants beyond the core acceptance suites: symmetry
//! actions, grading laws, ordering totality, reduction soundness, and
//! classification equivariance.

mod common;

use proptest::prelude::*;

use ncalg::freealg::{frac, int, Monomial, Permutation, Polynomial};
use ncalg::linalg::span_membership;
use ncalg::noa::{
    classify, exchange_presentation, preset, rescale_presentation, ClassificationLabel, Family,
};
use ncalg::ordering::{DeglexOrder, GeneratorOrder};
use ncalg::rewrite::ReductionSystem;

use common::{all_words, arb_monomial, arb_polynomial, arb_scalar};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Index transpositions act as ring homomorphisms commuting with the
    /// adjoint, and applying one twice is the identity.
    #[test]
    fn transpositions_act_as_ring_symmetries(
        p in arb_polynomial(2, 5, 4),
        q in arb_polynomial(2, 5, 4),
    ) {
        let sigma = Permutation::transposition(2, 1, 2);
        prop_assert_eq!(
            p.mul(&q).apply_permutation(&sigma),
            p.apply_permutation(&sigma).mul(&q.apply_permutation(&sigma))
        );
        prop_assert_eq!(
            p.add(&q).apply_permutation(&sigma),
            p.apply_permutation(&sigma).add(&q.apply_permutation(&sigma))
        );
        prop_assert_eq!(
            p.adjoint().apply_permutation(&sigma),
            p.apply_permutation(&sigma).adjoint()
        );
        prop_assert_eq!(p.apply_permutation(&sigma).apply_permutation(&sigma), p);
    }

    /// Grade components re-sum to the input and are eigenvectors of every
    /// index-counting derivation.
    #[test]
    fn grade_components_partition_and_diagonalize(p in arb_polynomial(2, 5, 4)) {
        let parts = p.grade_decompose(2);
        let mut total = Polynomial::zero();
        for (grade, component) in &parts {
            total = total.add(component);
            prop_assert_eq!(component.homogeneous_grade(2), Some(grade.clone()));
            for i in 1..=2u32 {
                let scaled = component.scale(&int(grade.0[(i - 1) as usize]));
                prop_assert_eq!(component.number_derivation(i), scaled);
            }
        }
        prop_assert_eq!(total, p);
    }

    /// Deglex puts shorter words first and is total: distinct words of
    /// equal degree compare strictly.
    #[test]
    fn deglex_is_total_and_degree_first(
        m in arb_monomial(2, 5),
        m2 in arb_monomial(2, 5),
    ) {
        use std::cmp::Ordering;
        let ord = DeglexOrder::new(GeneratorOrder::creations_first(2));
        match m.degree().cmp(&m2.degree()) {
            Ordering::Less => prop_assert_eq!(ord.compare(&m, &m2), Ordering::Less),
            Ordering::Greater => prop_assert_eq!(ord.compare(&m, &m2), Ordering::Greater),
            Ordering::Equal => {
                prop_assert_eq!(ord.compare(&m, &m2) == Ordering::Equal, m == m2);
            }
        }
    }

    /// What reduction removes is always a combination of two-sided
    /// multiples of the presentation's generators.
    #[test]
    fn reduction_only_subtracts_ideal_members(p in arb_polynomial(1, 4, 3)) {
        let (system, products) = weyl_products();
        let reduced = system.normal_form(&p).expect("terminates");
        let difference = p.sub(&reduced);
        if !difference.is_zero() {
            let index = ncalg::linalg::MonomialIndex::degree_window(1, 4);
            let v = index.vectorize(&difference).expect("degree preserved");
            let membership = span_membership(&products, &v).expect("consistent dimensions");
            prop_assert!(membership.member);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Rescaling the generators never changes the family a presentation
    /// classifies into, and the two matrix families trade places under
    /// the kind exchange.
    #[test]
    fn classification_ignores_rescaling(
        family_pick in 0usize..8,
        lambda in arb_scalar(),
        mu in arb_scalar(),
    ) {
        let family = Family::ALL[family_pick];
        let constant = if family.is_q_family() { frac(1, 3) } else { int(1) };
        let presentation = preset(family, 2, &constant).expect("valid preset").presentation;
        let scaled = rescale_presentation(&presentation, &lambda, &mu);
        prop_assert!(
            same_family(&classify(&scaled), family),
            "family {} lost under rescaling by ({}, {})", family, lambda, mu
        );
        let exchanged = classify(&exchange_presentation(&presentation));
        let expected_after_exchange = match family {
            Family::Matrix => Family::MatrixDual,
            Family::MatrixDual => Family::Matrix,
            other => other,
        };
        prop_assert!(
            same_family(&exchanged, expected_after_exchange),
            "kind exchange sent {} to {}", family, exchanged
        );
    }
}

/// The single-index Weyl system together with the window-4 vectors of all
/// two-sided generator multiples.
fn weyl_products() -> (ReductionSystem, Vec<Vec<ncalg::freealg::Scalar>>) {
    let a = ncalg::freealg::GeneratorSymbol::destruction(1);
    let c = ncalg::freealg::GeneratorSymbol::creation(1);
    let generator = Polynomial::monomial(Monomial::from_symbols([a, c]))
        .sub(&Polynomial::monomial(Monomial::from_symbols([c, a])))
        .sub(&Polynomial::one());
    let ord = DeglexOrder::new(GeneratorOrder::creations_first(1));
    let system = ReductionSystem::from_presentation(
        std::slice::from_ref(&generator),
        ord,
        true,
    )
    .expect("orientable");
    let index = ncalg::linalg::MonomialIndex::degree_window(1, 4);
    let mut products = Vec::new();
    for x in all_words(1, 2) {
        for y in all_words(1, 2) {
            if x.degree() + 2 + y.degree() > 4 {
                continue;
            }
            let product = Polynomial::monomial(x.clone())
                .mul(&generator)
                .mul(&Polynomial::monomial(y));
            products.push(index.vectorize(&product).expect("inside window"));
        }
    }
    (system, products)
}

fn same_family(label: &ClassificationLabel, family: Family) -> bool {
    matches!(
        (label, family),
        (ClassificationLabel::Boson(_), Family::Boson)
            | (ClassificationLabel::PseudoBoson(_), Family::PseudoBoson)
            | (ClassificationLabel::Fermion(_), Family::Fermion)
            | (ClassificationLabel::PseudoFermion(_), Family::PseudoFermion)
            | (ClassificationLabel::Matrix(_), Family::Matrix)
            | (ClassificationLabel::MatrixDual(_), Family::MatrixDual)
            | (ClassificationLabel::QBoson(_), Family::QBoson)
            | (ClassificationLabel::PseudoQBoson(_), Family::PseudoQBoson)
    )
}

/// Completing an eagerly collapsing system only ever adds rules whose
/// polynomials already lie in the presented ideal (checked by exact
/// linear algebra in a small degree window).
#[test]
fn completion_adds_only_ideal_members() {
    let a = ncalg::freealg::GeneratorSymbol::destruction(1);
    let c = ncalg::freealg::GeneratorSymbol::creation(1);
    let generator = Polynomial::monomial(Monomial::from_symbols([a, a]))
        .sub(&Polynomial::monomial(Monomial::from_symbols([c])));
    let ord = DeglexOrder::new(GeneratorOrder::creations_first(1));
    let system = ReductionSystem::from_presentation(
        std::slice::from_ref(&generator),
        ord,
        true,
    )
    .expect("orientable");
    let outcome = system.buchberger_complete(4, 16).expect("terminates");
    assert!(outcome.complete);
    assert!(!outcome.added.is_empty());
    let window = 6;
    let index = ncalg::linalg::MonomialIndex::degree_window(1, window);
    let mut products = Vec::new();
    for x in all_words(1, window - 2) {
        for y in all_words(1, window - 2) {
            if x.degree() + 2 + y.degree() > window {
                continue;
            }
            let product = Polynomial::monomial(x.clone())
                .mul(&generator)
                .mul(&Polynomial::monomial(y));
            products.push(index.vectorize(&product).expect("inside window"));
        }
    }
    for rule in &outcome.added {
        let v = index
            .vectorize(&rule.polynomial())
            .expect("added rules stay inside the degree bound");
        let membership = span_membership(&products, &v).expect("consistent dimensions");
        assert!(membership.member, "added rule {} -> {} left the ideal", rule.lhs, rule.rhs);
    }
}
