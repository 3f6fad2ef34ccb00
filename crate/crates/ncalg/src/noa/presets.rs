//! Built-in constructors for the eight families of creation/destruction
//! algebras, each emitting both the defining generator set and the
//! confluent reduction system that rewrites onto its irreducible basis.

use std::fmt;

use num_traits::Zero;

use crate::freealg::{int, GeneratorSymbol, Monomial, Polynomial, Scalar};
use crate::ordering::DeglexOrder;
use crate::rewrite::{Reduction, ReductionSystem};

use super::{NoaError, Presentation};

/// The eight families. The four h-families come in a plain and a
/// "pseudo" variant that flips the sign of every off-diagonal relation;
/// the q-families deform the diagonal relation by a parameter `q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Boson,
    PseudoBoson,
    Fermion,
    PseudoFermion,
    Matrix,
    MatrixDual,
    QBoson,
    PseudoQBoson,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Boson,
        Family::PseudoBoson,
        Family::Fermion,
        Family::PseudoFermion,
        Family::Matrix,
        Family::MatrixDual,
        Family::QBoson,
        Family::PseudoQBoson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Boson => "boson",
            Family::PseudoBoson => "pseudo_boson",
            Family::Fermion => "fermion",
            Family::PseudoFermion => "pseudo_fermion",
            Family::Matrix => "matrix",
            Family::MatrixDual => "matrix_dual",
            Family::QBoson => "qboson",
            Family::PseudoQBoson => "pseudo_qboson",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Whether the family constant is a deformation parameter `q`
    /// (excluded values ±1) rather than a diagonal constant `h`
    /// (excluded value 0).
    pub fn is_q_family(self) -> bool {
        matches!(self, Family::QBoson | Family::PseudoQBoson)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A family's defining generators together with its confluent reduction
/// system (whose deglex order is part of the system).
#[derive(Clone, Debug)]
pub struct PresetPresentation {
    pub presentation: Presentation,
    pub system: ReductionSystem,
}

fn d(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::destruction(i as u32)
}

fn c(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::creation(i as u32)
}

fn word(symbols: [GeneratorSymbol; 2]) -> Monomial {
    Monomial::from_symbols(symbols)
}

fn poly(m: Monomial) -> Polynomial {
    Polynomial::monomial(m)
}

/// Build the named family at window size `n` with the given constant
/// (`h ≠ 0` for the four h-families and the two matrix families,
/// `q ∉ {−1, 1}` for the q-families).
pub fn preset(family: Family, n: usize, constant: &Scalar) -> Result<PresetPresentation, NoaError> {
    assert!(n >= 1, "window size must be at least 1");
    if family.is_q_family() {
        if constant == &int(1) || constant == &int(-1) {
            return Err(NoaError::BadConstant {
                family: family.name().to_string(),
                detail: "the deformation parameter must avoid 1 and -1".to_string(),
            });
        }
    } else if constant.is_zero() {
        return Err(NoaError::BadConstant {
            family: family.name().to_string(),
            detail: "the diagonal constant must be nonzero".to_string(),
        });
    }

    let mut generators = Vec::new();
    let mut rules = Vec::new();
    // Off-diagonal sign: +1 for the anticommuting (fermion/pseudo-boson
    // style) variants, −1 for the commuting ones; the matrix families
    // instead impose every off-diagonal product separately.
    match family {
        Family::Fermion | Family::PseudoFermion => {
            let sign = if family == Family::Fermion { 1 } else { -1 };
            push_squares(n, &mut generators, &mut rules);
            push_same_kind_pairs(n, sign, &mut generators, &mut rules);
            push_mixed_pairs(n, sign, &mut generators, &mut rules);
            // a_i a⁺_i + a⁺_i a_i − h, oriented as a_i a⁺_i → h − a⁺_i a_i.
            for i in 1..=n {
                let lhs = word([d(i), c(i)]);
                let flip = poly(word([c(i), d(i)]));
                generators.push(poly(lhs.clone()).add(&flip).sub(&Polynomial::constant(constant.clone())));
                rules.push(Reduction {
                    lhs,
                    rhs: Polynomial::constant(constant.clone()).sub(&flip),
                });
            }
        }
        Family::Boson | Family::PseudoBoson => {
            let sign = if family == Family::Boson { -1 } else { 1 };
            push_same_kind_pairs(n, sign, &mut generators, &mut rules);
            push_mixed_pairs(n, sign, &mut generators, &mut rules);
            // a_i a⁺_i − a⁺_i a_i − h, oriented as a_i a⁺_i → a⁺_i a_i + h.
            for i in 1..=n {
                let lhs = word([d(i), c(i)]);
                let flip = poly(word([c(i), d(i)]));
                generators.push(poly(lhs.clone()).sub(&flip).sub(&Polynomial::constant(constant.clone())));
                rules.push(Reduction {
                    lhs,
                    rhs: flip.add(&Polynomial::constant(constant.clone())),
                });
            }
        }
        Family::QBoson | Family::PseudoQBoson => {
            let sign = if family == Family::QBoson { -1 } else { 1 };
            push_same_kind_pairs(n, sign, &mut generators, &mut rules);
            push_mixed_pairs(n, sign, &mut generators, &mut rules);
            // a_i a⁺_i − q·a⁺_i a_i − 1, oriented as a_i a⁺_i → q·a⁺_i a_i + 1.
            for i in 1..=n {
                let lhs = word([d(i), c(i)]);
                let flip = poly(word([c(i), d(i)]));
                generators.push(
                    poly(lhs.clone()).sub(&flip.scale(constant)).sub(&Polynomial::one()),
                );
                rules.push(Reduction { lhs, rhs: flip.scale(constant).add(&Polynomial::one()) });
            }
        }
        Family::Matrix => {
            push_all_same_kind_products(n, &mut generators, &mut rules);
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        let m = word([d(i), c(j)]);
                        generators.push(poly(m.clone()));
                        rules.push(Reduction { lhs: m, rhs: Polynomial::zero() });
                    }
                }
            }
            // a_i a⁺_i + Σ_k a⁺_k a_k − h, oriented as
            // a_i a⁺_i → h − Σ_k a⁺_k a_k.
            let trace: Polynomial = (1..=n)
                .map(|k| poly(word([c(k), d(k)])))
                .fold(Polynomial::zero(), |acc, t| acc.add(&t));
            for i in 1..=n {
                let lhs = word([d(i), c(i)]);
                generators.push(poly(lhs.clone()).add(&trace).sub(&Polynomial::constant(constant.clone())));
                rules.push(Reduction {
                    lhs,
                    rhs: Polynomial::constant(constant.clone()).sub(&trace),
                });
            }
        }
        Family::MatrixDual => {
            push_all_same_kind_products(n, &mut generators, &mut rules);
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        let m = word([c(i), d(j)]);
                        generators.push(poly(m.clone()));
                        rules.push(Reduction { lhs: m, rhs: Polynomial::zero() });
                    }
                }
            }
            // a⁺_i a_i + Σ_k a_k a⁺_k − h, oriented (under the reversed
            // ranking) as a⁺_i a_i → h − Σ_k a_k a⁺_k.
            let trace: Polynomial = (1..=n)
                .map(|k| poly(word([d(k), c(k)])))
                .fold(Polynomial::zero(), |acc, t| acc.add(&t));
            for i in 1..=n {
                let lhs = word([c(i), d(i)]);
                generators.push(poly(lhs.clone()).add(&trace).sub(&Polynomial::constant(constant.clone())));
                rules.push(Reduction {
                    lhs,
                    rhs: Polynomial::constant(constant.clone()).sub(&trace),
                });
            }
        }
    }

    // The dual matrix family rewrites toward words with creations on the
    // right, so its witnessing order ranks destructions below creations;
    // every other family uses the default ranking.
    let ord = if family == Family::MatrixDual {
        DeglexOrder::new(crate::ordering::GeneratorOrder::destructions_first(n))
    } else {
        DeglexOrder::creations_first(n)
    };
    let system = ReductionSystem::new(rules, ord)?;
    let presentation = Presentation::new(n, generators).with_constant(constant.clone());
    Ok(PresetPresentation { presentation, system })
}

/// `a_i², a⁺_i²` as generators and `a_i² → 0, a⁺_i² → 0` as rules.
fn push_squares(n: usize, generators: &mut Vec<Polynomial>, rules: &mut Vec<Reduction>) {
    for i in 1..=n {
        for s in [d(i), c(i)] {
            let m = word([s, s]);
            generators.push(poly(m.clone()));
            rules.push(Reduction { lhs: m, rhs: Polynomial::zero() });
        }
    }
}

/// `a_ia_j + sign·a_ja_i` (and the creation copies) for `i < j`, with the
/// rules `a_ja_i → −sign·a_ia_j` orienting the larger word leftward.
fn push_same_kind_pairs(
    n: usize,
    sign: i64,
    generators: &mut Vec<Polynomial>,
    rules: &mut Vec<Reduction>,
) {
    for i in 1..=n {
        for j in (i + 1)..=n {
            for (x, y) in [(d(i), d(j)), (c(i), c(j))] {
                generators.push(poly(word([x, y])).add(&poly(word([y, x])).scale(&int(sign))));
                rules.push(Reduction {
                    lhs: word([y, x]),
                    rhs: poly(word([x, y])).scale(&int(-sign)),
                });
            }
        }
    }
}

/// `a_ia⁺_j + sign·a⁺_ja_i` for `i ≠ j`, with the rules
/// `a_ia⁺_j → −sign·a⁺_ja_i` moving creations leftward.
fn push_mixed_pairs(
    n: usize,
    sign: i64,
    generators: &mut Vec<Polynomial>,
    rules: &mut Vec<Reduction>,
) {
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                generators
                    .push(poly(word([d(i), c(j)])).add(&poly(word([c(j), d(i)])).scale(&int(sign))));
                rules.push(Reduction {
                    lhs: word([d(i), c(j)]),
                    rhs: poly(word([c(j), d(i)])).scale(&int(-sign)),
                });
            }
        }
    }
}

/// Every same-kind product `a_ia_j` and `a⁺_ia⁺_j` (including squares)
/// as a generator and a rule sending it to zero.
fn push_all_same_kind_products(
    n: usize,
    generators: &mut Vec<Polynomial>,
    rules: &mut Vec<Reduction>,
) {
    for i in 1..=n {
        for j in 1..=n {
            for (x, y) in [(d(i), d(j)), (c(i), c(j))] {
                let m = word([x, y]);
                generators.push(poly(m.clone()));
                rules.push(Reduction { lhs: m, rhs: Polynomial::zero() });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::frac;

    fn contains(p: &Presentation, g: &Polynomial) -> bool {
        p.generators.iter().any(|x| x == g)
    }

    #[test]
    fn matrix_preset_lists_every_product_and_the_trace_relation() {
        let preset = preset(Family::Matrix, 2, &int(1)).unwrap();
        let p = &preset.presentation;
        // 2n² same-kind products, n(n−1) mixed products, n diagonal sums.
        assert_eq!(p.generators.len(), 8 + 2 + 2);
        assert!(contains(p, &poly(word([d(1), d(2)]))));
        assert!(contains(p, &poly(word([d(1), d(1)]))));
        assert!(contains(p, &poly(word([d(1), c(2)]))));
        let trace = poly(word([c(1), d(1)])).add(&poly(word([c(2), d(2)])));
        assert!(contains(p, &poly(word([d(1), c(1)])).add(&trace).sub(&Polynomial::one())));
    }

    #[test]
    fn single_index_boson_is_the_canonical_commutator() {
        let preset = preset(Family::Boson, 1, &int(1)).unwrap();
        let p = &preset.presentation;
        assert_eq!(p.generators.len(), 1);
        let expected = poly(word([d(1), c(1)]))
            .sub(&poly(word([c(1), d(1)])))
            .sub(&Polynomial::one());
        assert!(contains(p, &expected));
    }

    #[test]
    fn pseudo_fermion_flips_the_pair_signs() {
        let preset = preset(Family::PseudoFermion, 2, &int(1)).unwrap();
        let p = &preset.presentation;
        // Squares (4), same-kind pairs (2), mixed pairs (2), diagonal (2).
        assert_eq!(p.generators.len(), 10);
        assert!(contains(p, &poly(word([d(1), d(2)])).sub(&poly(word([d(2), d(1)])))));
        assert!(contains(p, &poly(word([d(1), c(2)])).sub(&poly(word([c(2), d(1)])))));
        let diagonal = poly(word([d(1), c(1)]))
            .add(&poly(word([c(1), d(1)])))
            .sub(&Polynomial::one());
        assert!(contains(p, &diagonal));
    }

    #[test]
    fn zero_diagonal_constant_is_rejected() {
        for family in [Family::Fermion, Family::Boson, Family::Matrix] {
            assert!(matches!(
                preset(family, 2, &int(0)),
                Err(NoaError::BadConstant { .. })
            ));
        }
    }

    #[test]
    fn unit_deformation_parameters_are_rejected_but_zero_is_allowed() {
        assert!(matches!(
            preset(Family::QBoson, 1, &int(1)),
            Err(NoaError::BadConstant { .. })
        ));
        assert!(matches!(
            preset(Family::PseudoQBoson, 2, &int(-1)),
            Err(NoaError::BadConstant { .. })
        ));
        assert!(preset(Family::QBoson, 1, &int(0)).is_ok());
    }

    #[test]
    fn every_preset_system_is_confluent() {
        for family in Family::ALL {
            let constant = if family.is_q_family() { frac(1, 2) } else { int(1) };
            for n in 1..=2 {
                let preset = preset(family, n, &constant).unwrap();
                let report = preset.system.confluence().unwrap();
                assert!(report.confluent, "{family} at n = {n} must be confluent");
            }
        }
    }

    #[test]
    fn preset_rules_rewrite_the_defining_generators_to_zero() {
        for family in Family::ALL {
            let constant = if family.is_q_family() { frac(1, 3) } else { int(2) };
            let preset = preset(family, 2, &constant).unwrap();
            for g in &preset.presentation.generators {
                let nf = preset.system.normal_form(g).unwrap();
                assert!(nf.is_zero(), "{family} generator {g} must rewrite to zero");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for family in Family::ALL {
            assert_eq!(Family::parse(family.name()), Some(family));
        }
        assert_eq!(Family::parse("unknown"), None);
    }
}
