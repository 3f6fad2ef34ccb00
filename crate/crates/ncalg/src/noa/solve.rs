//! Bounded linear search for number operators: zero-graded combinations
//! of irreducible monomials whose commutator with each letter counts
//! that letter's index.

use std::collections::HashSet;

use num_traits::Zero;

use crate::freealg::{int, GeneratorSymbol, Monomial, Polynomial, Scalar, SymbolKind};
use crate::linalg::{solve_affine, AffineSolutionSpace, MonomialIndex, RationalMatrix};
use crate::rewrite::ReductionSystem;

use super::NoaError;

/// Irreducible monomials of degree at most `degree_bound` whose grade
/// vanishes at every index (as many creations as destructions per
/// index), in ascending order.
pub fn zero_grade_basis(system: &ReductionSystem, degree_bound: usize) -> Vec<Monomial> {
    let n = system.n();
    system
        .irreducible_basis(degree_bound)
        .monomials
        .into_iter()
        .filter(|m| m.grade_vector(n).is_zero())
        .collect()
}

/// A number operator for one index: the distinguished solution together
/// with a basis of the directions it can be shifted in without breaking
/// the defining equations.
#[derive(Clone, Debug, PartialEq)]
pub struct NOASolution {
    pub index: u32,
    pub operator: Polynomial,
    pub free_directions: Vec<Polynomial>,
}

/// Result of the bounded solve: the affine solution set over the
/// zero-grade ansatz basis. `certified` stays true as long as every
/// coefficient constraint lived inside the degree window `bound + 1`;
/// degree-nonincreasing rules can never push one past it, so a `false`
/// here flags an exotic orientation whose verdict is only heuristic.
#[derive(Clone, Debug)]
pub struct NumberOperatorOutcome {
    pub solutions: AffineSolutionSpace,
    pub basis: Vec<Monomial>,
    pub certified: bool,
}

impl NumberOperatorOutcome {
    /// Repackage the affine solution set as polynomials, labelled with
    /// the index the solve ran for; `None` when no solution exists at
    /// this bound.
    pub fn solution(&self, index: u32) -> Option<NOASolution> {
        match &self.solutions {
            AffineSolutionSpace::Empty => None,
            AffineSolutionSpace::Solutions { particular, homogeneous_basis } => {
                let coords = MonomialIndex::from_monomials(self.basis.clone());
                Some(NOASolution {
                    index,
                    operator: coords.devectorize(particular),
                    free_directions: homogeneous_basis
                        .iter()
                        .map(|v| coords.devectorize(v))
                        .collect(),
                })
            }
        }
    }
}

/// Search for an element `N` of the zero-grade span satisfying, in
/// normal form, `[N, a_j] + δ_{ij}·a_j = 0` and
/// `[N, a⁺_j] − δ_{ij}·a⁺_j = 0` for every index `j`, with the ansatz
/// drawn from the irreducible zero-grade monomials of degree at most
/// `degree_bound`.
pub fn number_operator_solve(
    system: &ReductionSystem,
    index: u32,
    degree_bound: usize,
) -> Result<NumberOperatorOutcome, NoaError> {
    let n = system.n();
    assert!(degree_bound >= 2, "ansatz degree bound must be at least 2");
    assert!(
        (1..=n as u32).contains(&index),
        "index {index} out of range for n = {n}"
    );
    let basis = zero_grade_basis(system, degree_bound);
    let ansatz: Vec<Polynomial> = basis.iter().map(|m| Polynomial::monomial(m.clone())).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut certified = true;

    for j in 1..=n as u32 {
        for letter in [GeneratorSymbol::destruction(j), GeneratorSymbol::creation(j)] {
            let ell = Polynomial::generator(letter);
            let brackets: Vec<Polynomial> = ansatz
                .iter()
                .map(|m| system.normal_form(&m.mul(&ell).sub(&ell.mul(m))))
                .collect::<Result<_, _>>()?;
            // Only the solve index carries an inhomogeneous term: `+a_i`
            // on the destruction side, `−a⁺_i` on the creation side.
            let forcing = if j == index {
                let sign = match letter.kind {
                    SymbolKind::Destruction => int(1),
                    SymbolKind::Creation => int(-1),
                };
                system.normal_form(&ell)?.scale(&sign)
            } else {
                Polynomial::zero()
            };
            let mut support: Vec<Monomial> = Vec::new();
            let mut seen: HashSet<Monomial> = HashSet::new();
            for p in brackets.iter().chain(std::iter::once(&forcing)) {
                for (m, _) in p.terms() {
                    if seen.insert(m.clone()) {
                        support.push(m.clone());
                    }
                }
            }
            support.sort_by(|x, y| y.canonical_cmp(x));
            for r in support {
                // Matching coefficients is only sound inside the window
                // where the ansatz times a letter can land.
                if r.degree() > degree_bound + 1 {
                    certified = false;
                    continue;
                }
                rows.push(brackets.iter().map(|p| p.coeff(&r)).collect());
                rhs.push(-forcing.coeff(&r));
            }
        }
    }

    let solutions = if rows.is_empty() {
        // No coefficient constraints at all: the whole ansatz span
        // solves the equations.
        AffineSolutionSpace::Solutions {
            particular: vec![Scalar::zero(); basis.len()],
            homogeneous_basis: (0..basis.len())
                .map(|k| {
                    let mut e = vec![Scalar::zero(); basis.len()];
                    e[k] = int(1);
                    e
                })
                .collect(),
        }
    } else {
        solve_affine(&RationalMatrix::from_rows(rows), &rhs)?
    };
    Ok(NumberOperatorOutcome { solutions, basis, certified })
}
