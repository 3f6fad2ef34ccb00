//! Shared strategies, oracles, and randomized suites used by the
//! acceptance and property test targets.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ncalg::freealg::{frac, int, GeneratorSymbol, Monomial, Polynomial, Scalar};
use ncalg::linalg::MonomialIndex;
use ncalg::noa::{preset, Family};
use ncalg::ordering::{DeglexOrder, GeneratorOrder};
use ncalg::rewrite::{ReductionStrategy, ReductionSystem};

/// Uniform symbol over `a_1..a_n`, `A_1..A_n`.
pub fn arb_symbol(n: u32) -> impl Strategy<Value = GeneratorSymbol> {
    (1..=n, any::<bool>()).prop_map(|(i, creation)| {
        if creation {
            GeneratorSymbol::creation(i)
        } else {
            GeneratorSymbol::destruction(i)
        }
    })
}

/// Random word of length at most `max_len`.
pub fn arb_monomial(n: u32, max_len: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(arb_symbol(n), 0..=max_len).prop_map(Monomial::from_symbols)
}

/// Small nonzero rational.
pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    ((-12i64..=12).prop_filter("nonzero", |v| *v != 0), 1i64..=8)
        .prop_map(|(num, den)| frac(num, den))
}

/// Random polynomial with up to `max_terms` terms of degree up to `max_len`.
pub fn arb_polynomial(n: u32, max_len: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_monomial(n, max_len), arb_scalar()), 0..=max_terms)
        .prop_map(Polynomial::from_terms)
}

/// Drive `test` through `cases` random inputs, panicking with the shrunk
/// counterexample on failure.
pub fn run_suite<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    if let Err(failure) = runner.run(&strategy, test) {
        panic!("randomized suite failed: {failure}");
    }
}

// ---------------------------------------------------------------------------
// The seven randomized suites behind the property-suite acceptance criterion.
// ---------------------------------------------------------------------------

/// Associativity, distributivity, and the unit law on random triples.
pub fn ring_axiom_suite(cases: u32) {
    let triple = (
        arb_polynomial(2, 4, 3),
        arb_polynomial(2, 4, 3),
        arb_polynomial(2, 4, 3),
    );
    run_suite(cases, triple, |(p, q, r)| {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        let one = Polynomial::one();
        prop_assert_eq!(one.mul(&p), p.clone());
        prop_assert_eq!(p.mul(&one), p);
        Ok(())
    });
}

/// The adjoint is an additive anti-involution.
pub fn adjoint_suite(cases: u32) {
    let pair = (arb_polynomial(2, 5, 4), arb_polynomial(2, 5, 4));
    run_suite(cases, pair, |(p, q)| {
        prop_assert_eq!(p.mul(&q).adjoint(), q.adjoint().mul(&p.adjoint()));
        prop_assert_eq!(p.add(&q).adjoint(), p.adjoint().add(&q.adjoint()));
        prop_assert_eq!(p.adjoint().adjoint(), p);
        Ok(())
    });
}

/// The index-counting derivations satisfy the Leibniz rule.
pub fn leibniz_suite(cases: u32) {
    let input = (arb_polynomial(2, 4, 3), arb_polynomial(2, 4, 3), 1u32..=2);
    run_suite(cases, input, |(p, q, i)| {
        let whole = p.mul(&q).number_derivation(i);
        let split = p
            .number_derivation(i)
            .mul(&q)
            .add(&p.mul(&q.number_derivation(i)));
        prop_assert_eq!(whole, split);
        Ok(())
    });
}

/// Deglex comparison is compatible with two-sided concatenation, total,
/// and antisymmetric.
pub fn deglex_monoid_suite(cases: u32) {
    let ord = DeglexOrder::new(GeneratorOrder::creations_first(2));
    let input = (
        arb_monomial(2, 4),
        arb_monomial(2, 4),
        arb_monomial(2, 3),
        arb_monomial(2, 3),
    );
    run_suite(cases, input, move |(m, m2, left, right)| {
        use std::cmp::Ordering;
        let forward = ord.compare(&m, &m2);
        let backward = ord.compare(&m2, &m);
        prop_assert_eq!(forward, backward.reverse());
        if forward == Ordering::Equal {
            prop_assert_eq!(&m, &m2);
        } else {
            let (small, large) = if forward == Ordering::Less { (&m, &m2) } else { (&m2, &m) };
            let padded_small = left.concat(small).concat(&right);
            let padded_large = left.concat(large).concat(&right);
            prop_assert_eq!(ord.compare(&padded_small, &padded_large), Ordering::Less);
        }
        Ok(())
    });
}

/// Normal forms of confluent systems agree between the deterministic
/// strategy and randomized target/site/rule choices.
pub fn nf_determinism_suite(cases: u32) {
    let boson = preset(Family::Boson, 1, &int(1)).expect("valid preset").system;
    let fermion = preset(Family::Fermion, 2, &int(1)).expect("valid preset").system;
    let input = (
        arb_polynomial(1, 6, 3),
        arb_polynomial(2, 6, 3),
        any::<u64>(),
    );
    run_suite(cases, input, move |(single, double, seed)| {
        let budget = 1_000_000;
        let strategy = ReductionStrategy::Randomized { seed };
        let expected = boson
            .normal_form_with(&single, ReductionStrategy::Deterministic, budget)
            .expect("terminates");
        let randomized = boson
            .normal_form_with(&single, strategy, budget)
            .expect("terminates");
        prop_assert_eq!(expected, randomized);
        let expected = fermion
            .normal_form_with(&double, ReductionStrategy::Deterministic, budget)
            .expect("terminates");
        let randomized = fermion
            .normal_form_with(&double, strategy, budget)
            .expect("terminates");
        prop_assert_eq!(expected, randomized);
        Ok(())
    });
}

/// Reduction under a system whose rules preserve the grade sends each
/// grade component to the same grade (or to zero).
pub fn grade_preservation_suite(cases: u32) {
    let fermion = preset(Family::Fermion, 2, &int(1)).expect("valid preset").system;
    run_suite(cases, arb_polynomial(2, 6, 4), move |p| {
        for (grade, component) in p.grade_decompose(2) {
            let reduced = fermion.normal_form(&component).expect("terminates");
            if !reduced.is_zero() {
                prop_assert_eq!(reduced.homogeneous_grade(2), Some(grade));
            }
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// Diamond-lemma dimension identity fixtures.
// ---------------------------------------------------------------------------

/// One system at one degree bound: the monomial window, a reduced row
/// basis (with pivot columns) for the span of `x·g·y` products inside the
/// window, and the irreducible monomials.
pub struct DimensionFixture {
    pub system: ReductionSystem,
    pub index: MonomialIndex,
    pub ideal_rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub irreducible: usize,
}

impl DimensionFixture {
    fn build(n: usize, generators: &[Polynomial], system: &ReductionSystem, degree: usize) -> Self {
        let index = MonomialIndex::degree_window(n, degree);
        let mut vectors = Vec::new();
        let margin = degree.saturating_sub(2);
        let words = all_words(n, margin);
        for g in generators {
            for x in &words {
                for y in &words {
                    if x.degree() + 2 + y.degree() > degree {
                        continue;
                    }
                    let product = Polynomial::monomial(x.clone())
                        .mul(g)
                        .mul(&Polynomial::monomial(y.clone()));
                    vectors.push(index.vectorize(&product).expect("inside the window"));
                }
            }
        }
        let (ideal_rows, pivots) = reduced_rows(vectors, index.len());
        let irreducible = system.irreducible_basis(degree).monomials.len();
        DimensionFixture {
            system: system.clone(),
            index,
            ideal_rows,
            pivots,
            irreducible,
        }
    }

    /// dim(ideal ∩ window) + #irreducibles = dim(window).
    pub fn identity_holds(&self) -> bool {
        self.ideal_rows.len() + self.irreducible == self.index.len()
    }

    /// Exact membership of `v` in the row span, by eliminating against
    /// the reduced rows.
    pub fn in_ideal_span(&self, v: &[Scalar]) -> bool {
        let mut residue = v.to_vec();
        for (row, &col) in self.ideal_rows.iter().zip(&self.pivots) {
            if residue[col].is_zero() {
                continue;
            }
            let factor = residue[col].clone();
            for (slot, entry) in residue.iter_mut().zip(row) {
                *slot -= entry * &factor;
            }
        }
        residue.iter().all(Scalar::is_zero)
    }
}

/// All words over the `2n` letters with length at most `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Monomial> {
    let mut letters = Vec::new();
    for i in 1..=n as u32 {
        letters.push(GeneratorSymbol::creation(i));
        letters.push(GeneratorSymbol::destruction(i));
    }
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in &letters {
                let extended = w.concat(&Monomial::generator(s));
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Row-reduce `vectors`, returning the nonzero reduced rows and their
/// pivot columns.
fn reduced_rows(vectors: Vec<Vec<Scalar>>, width: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut matrix = ncalg::linalg::RationalMatrix::from_rows(vectors);
    let pivots = matrix.rref();
    let rows = (0..pivots.len()).map(|i| matrix.row(i).to_vec()).collect();
    debug_assert_eq!(width, matrix.cols());
    (rows, pivots)
}

/// The Clifford single-index system: squares vanish and the mixed pair
/// sums to the unit.
pub fn clifford_presentation() -> Vec<Polynomial> {
    let a = GeneratorSymbol::destruction(1);
    let c = GeneratorSymbol::creation(1);
    let word = |s: &[GeneratorSymbol]| Polynomial::monomial(Monomial::from_symbols(s.iter().copied()));
    vec![
        word(&[a, a]),
        word(&[c, c]),
        word(&[a, c]).add(&word(&[c, a])).sub(&Polynomial::one()),
    ]
}

pub fn clifford_system() -> ReductionSystem {
    let ord = DeglexOrder::new(GeneratorOrder::creations_first(1));
    ReductionSystem::from_presentation(&clifford_presentation(), ord, true)
        .expect("orientable quadratic presentation")
}

fn clifford_fixtures() -> &'static Vec<DimensionFixture> {
    static FIXTURES: OnceLock<Vec<DimensionFixture>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        let generators = clifford_presentation();
        let system = clifford_system();
        (0..=3)
            .map(|d| DimensionFixture::build(1, &generators, &system, d))
            .collect()
    })
}

fn matrix_fixtures() -> &'static Vec<DimensionFixture> {
    static FIXTURES: OnceLock<Vec<DimensionFixture>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        let built = preset(Family::Matrix, 2, &int(1)).expect("valid preset");
        (0..=3)
            .map(|d| {
                DimensionFixture::build(2, &built.presentation.generators, &built.system, d)
            })
            .collect()
    })
}

/// Irreducibles + ideal slice fill the whole degree window, and random
/// polynomials split as (irreducible normal form) + (ideal member).
pub fn dimension_identity_suite(cases: u32) {
    let input = (0usize..=3, any::<bool>()).prop_flat_map(|(degree, use_matrix)| {
        let n = if use_matrix { 2 } else { 1 };
        (
            Just(degree),
            Just(use_matrix),
            arb_polynomial(n, degree, 3),
        )
    });
    run_suite(cases, input, |(degree, use_matrix, p)| {
        let fixture = if use_matrix {
            &matrix_fixtures()[degree]
        } else {
            &clifford_fixtures()[degree]
        };
        prop_assert!(
            fixture.identity_holds(),
            "dimension identity fails at degree {} (ideal {} + irreducible {} != window {})",
            degree,
            fixture.ideal_rows.len(),
            fixture.irreducible,
            fixture.index.len()
        );
        let reduced = fixture.system.normal_form(&p).expect("terminates");
        for (m, _) in reduced.terms() {
            prop_assert!(!fixture.system.is_reducible(m));
        }
        prop_assert_eq!(
            fixture.system.normal_form(&reduced).expect("terminates"),
            reduced.clone()
        );
        let difference = p.sub(&reduced);
        let vector = fixture
            .index
            .vectorize(&difference)
            .expect("reduction cannot raise the degree");
        prop_assert!(fixture.in_ideal_span(&vector));
        Ok(())
    });
}
