//! Analysis of quadratically presented creation/destruction algebras:
//! stability properties of the presented ideal, canonical quadratic forms,
//! symmetric-orbit spans, standard-form labeling, number-operator solving,
//! and classification against the known families.

mod classify;
mod presets;
mod solve;
mod standard_form;

pub use classify::{classify, ClassificationLabel};
pub use presets::{preset, Family, PresetPresentation};
pub use solve::{
    number_operator_solve, zero_grade_basis, NOASolution, NumberOperatorOutcome,
};
pub use standard_form::{
    standard_form, standard_form_with, Part11, Part1m1, Part20, StandardFormLabel, ZeroFormTag,
};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::freealg::{GeneratorSymbol, Monomial, Permutation, Polynomial, Scalar, SymbolKind};
use crate::linalg::{self, LinalgError, MonomialIndex};
use crate::rewrite::{ReductionSystem, RewriteError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NoaError {
    #[error("presentation has a generator of degree above two")]
    NotQuadratic,
    #[error("a grade component of a generator leaves the presentation span; the ideal is not graded")]
    NotGraded,
    #[error("the balanced slice matches no standard form: {detail}")]
    NotStandardizable { detail: String },
    #[error("bad constant for family {family}: {detail}")]
    BadConstant { family: String, detail: String },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A presented ideal: the window size `n`, quadratic (or lower degree)
/// generators, and an optional family constant.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: usize,
    pub generators: Vec<Polynomial>,
    pub h: Option<Scalar>,
}

impl Presentation {
    /// Zero generators are dropped; they present nothing.
    pub fn new(n: usize, generators: Vec<Polynomial>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Presentation { n, generators, h: None }
    }

    pub fn with_constant(mut self, h: Scalar) -> Self {
        self.h = Some(h);
        self
    }

    pub fn max_degree(&self) -> usize {
        self.generators
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    fn quadratic_index(&self) -> Result<MonomialIndex, NoaError> {
        if self.max_degree() > 2 {
            return Err(NoaError::NotQuadratic);
        }
        Ok(MonomialIndex::degree_window(self.n, 2))
    }

    /// Generator coordinates in the degree-two window.
    fn generator_vectors(&self, index: &MonomialIndex) -> Vec<Vec<Scalar>> {
        self.generators
            .iter()
            .map(|g| index.vectorize(g).expect("degree checked quadratic"))
            .collect()
    }
}

/// Status of the properness check for the presented ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdealPropriety {
    Holds,
    Fails,
    UndeterminedAtBound,
}

impl fmt::Display for IdealPropriety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            IdealPropriety::Holds => "holds",
            IdealPropriety::Fails => "fails",
            IdealPropriety::UndeterminedAtBound => "undetermined-at-bound",
        };
        write!(f, "{text}")
    }
}

/// Outcome of the bounded number-operator search.
#[derive(Clone, Debug)]
pub enum NumberOperatorStatus {
    Found(Vec<NOASolution>),
    NoneAtBound,
    NotRun,
}

/// The four headline properties of a presented ideal, plus free-form
/// notes about how each verdict was reached.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    /// The ideal is neither everything nor the augmentation ideal.
    pub p0: IdealPropriety,
    /// Stability under the adjoint.
    pub p1: bool,
    /// Stability under index permutations.
    pub p2: bool,
    /// Existence of number operators, searched up to a degree bound.
    pub p3: NumberOperatorStatus,
    pub notes: Vec<String>,
}

/// Whether the adjoint maps every generator back into the linear span of
/// the generators. For quadratic presentations the degree-two slice of
/// the ideal is exactly that span, so this certifies adjoint stability of
/// the whole ideal.
pub fn check_j_stable(p: &Presentation) -> bool {
    stable_under(p, |g| g.adjoint())
}

/// Whether every adjacent index transposition maps the generator span
/// into itself; those transpositions generate the full symmetric group.
pub fn check_symmetric(p: &Presentation) -> bool {
    (1..p.n as u32).all(|i| {
        let sigma = Permutation::transposition(p.n, i, i + 1);
        stable_under(p, |g| g.apply_permutation(&sigma))
    })
}

fn stable_under(p: &Presentation, image: impl Fn(&Polynomial) -> Polynomial) -> bool {
    let degree = p.max_degree();
    let index = MonomialIndex::degree_window(p.n, degree);
    let vectors = p.generator_vectors(&index);
    p.generators.iter().all(|g| {
        let v = index.vectorize(&image(g)).expect("image preserves degree");
        linalg::span_membership(&vectors, &v)
            .map(|r| r.member)
            .unwrap_or(false)
    })
}

/// The shape classes quadratic generators fall into after grade
/// splitting.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum QuadraticForm {
    /// `a_i²`
    SquareDestruction,
    /// `a⁺_i²`
    SquareCreation,
    /// `α·a_ia_j + β·a_ja_i`, `i ≠ j`
    DestructionPair,
    /// `α·a⁺_ia⁺_j + β·a⁺_ja⁺_i`, `i ≠ j`
    CreationPair,
    /// `α·a_ia⁺_j + β·a⁺_ja_i`, `i ≠ j`
    MixedPair,
    /// `Σα_i a_ia⁺_i + Σβ_i a⁺_ia_i − λ`
    Balanced,
    /// `a_i`
    LinearDestruction,
    /// `a⁺_i`
    LinearCreation,
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            QuadraticForm::SquareDestruction => "destruction-square",
            QuadraticForm::SquareCreation => "creation-square",
            QuadraticForm::DestructionPair => "destruction-pair",
            QuadraticForm::CreationPair => "creation-pair",
            QuadraticForm::MixedPair => "mixed-pair",
            QuadraticForm::Balanced => "balanced",
            QuadraticForm::LinearDestruction => "linear-destruction",
            QuadraticForm::LinearCreation => "linear-creation",
        };
        write!(f, "{text}")
    }
}

/// A canonical generator produced by [`grade_normalize`], tagged with its
/// shape class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaggedGenerator {
    pub form: QuadraticForm,
    pub polynomial: Polynomial,
}

/// Split every generator into grade-homogeneous components and return a
/// canonical basis of each graded piece, tagged by shape.
///
/// The degree-two span of the output equals that of the input; if a
/// component of some generator escapes the input span the presented ideal
/// was not graded and the split would change it, which is reported as an
/// error rather than silently accepted.
pub fn grade_normalize(p: &Presentation) -> Result<Vec<TaggedGenerator>, NoaError> {
    let index = p.quadratic_index()?;
    let vectors = p.generator_vectors(&index);
    let mut by_grade: std::collections::BTreeMap<crate::freealg::GradeVector, Vec<Vec<Scalar>>> =
        std::collections::BTreeMap::new();
    for g in &p.generators {
        for (grade, component) in g.grade_decompose(p.n) {
            let v = index.vectorize(&component).expect("component stays quadratic");
            let membership = linalg::span_membership(&vectors, &v)?;
            if !membership.member {
                return Err(NoaError::NotGraded);
            }
            by_grade.entry(grade).or_default().push(v);
        }
    }
    let mut out = Vec::new();
    for (_, members) in by_grade {
        for basis_vector in linalg::span_basis(&members) {
            let polynomial = index.devectorize(&basis_vector);
            out.push(TaggedGenerator { form: shape_of(&polynomial), polynomial });
        }
    }
    Ok(out)
}

/// The shape class of a grade-homogeneous polynomial of degree at most
/// two. Grade homogeneity forces each class; see the variants of
/// [`QuadraticForm`].
fn shape_of(p: &Polynomial) -> QuadraticForm {
    let (m, _) = &p.terms()[0];
    match m.degree() {
        1 => match m.symbols()[0].kind {
            SymbolKind::Destruction => QuadraticForm::LinearDestruction,
            SymbolKind::Creation => QuadraticForm::LinearCreation,
        },
        0 => QuadraticForm::Balanced,
        _ => {
            let s = m.symbols();
            let kinds = (s[0].kind, s[1].kind);
            match kinds {
                (SymbolKind::Destruction, SymbolKind::Destruction) => {
                    if s[0].index == s[1].index {
                        QuadraticForm::SquareDestruction
                    } else {
                        QuadraticForm::DestructionPair
                    }
                }
                (SymbolKind::Creation, SymbolKind::Creation) => {
                    if s[0].index == s[1].index {
                        QuadraticForm::SquareCreation
                    } else {
                        QuadraticForm::CreationPair
                    }
                }
                _ => {
                    if s[0].index == s[1].index {
                        QuadraticForm::Balanced
                    } else {
                        QuadraticForm::MixedPair
                    }
                }
            }
        }
    }
}

/// An exact basis of the linear span of the orbit of `x` under all index
/// permutations, grown by applying adjacent transpositions until the span
/// stops increasing.
pub fn orbit_span(x: &Polynomial, n: usize) -> Vec<Polynomial> {
    if x.is_zero() {
        return Vec::new();
    }
    // First close the support monomial set under the transpositions, to
    // fix a coordinate space; then saturate the linear span inside it.
    let mut monomials: Vec<Monomial> = x.terms().iter().map(|(m, _)| m.clone()).collect();
    let mut frontier = monomials.clone();
    while let Some(m) = frontier.pop() {
        for i in 1..n as u32 {
            let sigma = Permutation::transposition(n, i, i + 1);
            let image = m.apply_permutation(&sigma);
            if !monomials.contains(&image) {
                monomials.push(image.clone());
                frontier.push(image);
            }
        }
    }
    monomials.sort_by(|a, b| a.canonical_cmp(b));
    let index = MonomialIndex::from_monomials(monomials);
    let mut basis = vec![index.vectorize(x).expect("support indexed")];
    let mut poly_frontier = vec![x.clone()];
    while let Some(p) = poly_frontier.pop() {
        for i in 1..n as u32 {
            let sigma = Permutation::transposition(n, i, i + 1);
            let image = p.apply_permutation(&sigma);
            let v = index.vectorize(&image).expect("closed under permutations");
            let member = linalg::span_membership(&basis, &v)
                .map(|r| r.member)
                .unwrap_or(true);
            if !member {
                basis.push(v);
                poly_frontier.push(image);
            }
        }
    }
    linalg::span_basis(&basis)
        .into_iter()
        .map(|v| index.devectorize(&v))
        .collect()
}

/// The kind-exchange automorphism: every `a_i` becomes `a⁺_i` and back,
/// word order unchanged.
pub fn exchange_kinds(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let word = m.symbols().iter().map(|s| s.flipped());
                (Monomial::from_symbols(word), c.clone())
            })
            .collect(),
    )
}

/// The rescaling automorphism `a_i ↦ λ·a_i`, `a⁺_i ↦ μ·a⁺_i`, requiring
/// `λμ ≠ 0`.
pub fn rescale(p: &Polynomial, lambda: &Scalar, mu: &Scalar) -> Polynomial {
    assert!(
        !lambda.is_zero() && !mu.is_zero(),
        "rescaling requires nonzero factors"
    );
    Polynomial::from_terms(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut factor = c.clone();
                for s in m.symbols() {
                    factor *= match s.kind {
                        SymbolKind::Destruction => lambda,
                        SymbolKind::Creation => mu,
                    };
                }
                (m.clone(), factor)
            })
            .collect(),
    )
}

/// Apply [`exchange_kinds`] to every generator.
pub fn exchange_presentation(p: &Presentation) -> Presentation {
    Presentation {
        n: p.n,
        generators: p.generators.iter().map(exchange_kinds).collect(),
        h: p.h.clone(),
    }
}

/// Apply [`rescale`] to every generator.
pub fn rescale_presentation(p: &Presentation, lambda: &Scalar, mu: &Scalar) -> Presentation {
    Presentation {
        n: p.n,
        generators: p.generators.iter().map(|g| rescale(g, lambda, mu)).collect(),
        h: p.h.clone(),
    }
}

/// Assemble the full property report for a presentation, using `system`
/// when its confluence has been decided and searching for number
/// operators up to `solve_bound` (skipped when `None`).
pub fn property_report(
    p: &Presentation,
    system: &ReductionSystem,
    confluent: bool,
    solve_bound: Option<usize>,
) -> Result<PropertyReport, NoaError> {
    let mut notes = Vec::new();
    let p0 = if !confluent {
        notes.push("system not confluent; ideal properness undetermined".to_string());
        IdealPropriety::UndeterminedAtBound
    } else {
        // With no scalar left side, 1 is irreducible, so the ideal is
        // proper; it equals the span of all positive-degree words exactly
        // when every single generator letter reduces to zero.
        let all_letters_vanish = (1..=p.n as u32)
            .flat_map(|i| {
                [GeneratorSymbol::destruction(i), GeneratorSymbol::creation(i)]
            })
            .map(|s| system.normal_form(&Polynomial::generator(s)))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .all(Polynomial::is_zero);
        if all_letters_vanish {
            notes.push("every generator letter lies in the ideal".to_string());
            IdealPropriety::Fails
        } else {
            IdealPropriety::Holds
        }
    };
    let p1 = check_j_stable(p);
    let p2 = check_symmetric(p);
    let p3 = match solve_bound {
        None => NumberOperatorStatus::NotRun,
        Some(_) if !confluent => {
            notes.push("number operators not searched without confluence".to_string());
            NumberOperatorStatus::NotRun
        }
        Some(bound) => {
            let mut solutions = Vec::new();
            let mut all_found = true;
            for i in 1..=p.n as u32 {
                let outcome = number_operator_solve(system, i, bound)?;
                match outcome.solution(i) {
                    Some(solution) => solutions.push(solution),
                    None => {
                        all_found = false;
                        notes.push(format!(
                            "no number operator at index {i} within degree {bound}"
                        ));
                        break;
                    }
                }
            }
            if all_found {
                NumberOperatorStatus::Found(solutions)
            } else {
                NumberOperatorStatus::NoneAtBound
            }
        }
    };
    Ok(PropertyReport { p0, p1, p2, p3, notes })
}
