//! Degree-lexicographic orderings on words, built from a total ranking of
//! the generator symbols.
//!
//! Every ordering here compares by total degree first and breaks ties
//! lexicographically using the generator ranking, so the order is total,
//! compatible with concatenation on both sides, and has no infinite
//! strictly descending chains.

use std::cmp::Ordering as CmpOrdering;
use std::collections::HashMap;

use thiserror::Error;

use crate::freealg::{GeneratorSymbol, Monomial, Polynomial, Scalar, SymbolKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("generator ranking is not a permutation of the {expected} symbols for n = {n}: {detail}")]
    InvalidGeneratorOrder { n: usize, expected: usize, detail: String },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
}

/// A total ranking of the `2n` generator symbols, listed smallest first.
#[derive(Clone, Debug)]
pub struct GeneratorOrder {
    ranking: Vec<GeneratorSymbol>,
    rank: HashMap<GeneratorSymbol, usize>,
    n: usize,
}

impl GeneratorOrder {
    /// Build from an explicit listing, smallest symbol first. The listing
    /// must contain both kinds at every index `1..=n` exactly once, where
    /// `n` is half its length.
    pub fn new(ranking: Vec<GeneratorSymbol>) -> Result<Self, OrderError> {
        let n = ranking.len() / 2;
        let expected = 2 * n;
        let mut rank = HashMap::with_capacity(ranking.len());
        if ranking.len() % 2 != 0 {
            return Err(OrderError::InvalidGeneratorOrder {
                n,
                expected,
                detail: format!("odd number of symbols ({})", ranking.len()),
            });
        }
        for (r, &s) in ranking.iter().enumerate() {
            if s.index == 0 || s.index as usize > n {
                return Err(OrderError::InvalidGeneratorOrder {
                    n,
                    expected,
                    detail: format!("symbol {s} is out of range"),
                });
            }
            if rank.insert(s, r).is_some() {
                return Err(OrderError::InvalidGeneratorOrder {
                    n,
                    expected,
                    detail: format!("symbol {s} listed twice"),
                });
            }
        }
        Ok(GeneratorOrder { ranking, rank, n })
    }

    /// The default ranking `A1 < A2 < ... < An < a1 < ... < an`: all
    /// creations first, then all destructions, each by ascending index.
    pub fn creations_first(n: usize) -> Self {
        let ranking: Vec<GeneratorSymbol> = (1..=n as u32)
            .map(GeneratorSymbol::creation)
            .chain((1..=n as u32).map(GeneratorSymbol::destruction))
            .collect();
        GeneratorOrder::new(ranking).expect("constructed ranking is complete")
    }

    /// The mirrored ranking `a1 < ... < an < A1 < ... < An`.
    pub fn destructions_first(n: usize) -> Self {
        let ranking: Vec<GeneratorSymbol> = (1..=n as u32)
            .map(GeneratorSymbol::destruction)
            .chain((1..=n as u32).map(GeneratorSymbol::creation))
            .collect();
        GeneratorOrder::new(ranking).expect("constructed ranking is complete")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Symbols smallest first.
    pub fn ranking(&self) -> &[GeneratorSymbol] {
        &self.ranking
    }

    /// Position of `s` in the ranking (0 = smallest).
    ///
    /// # Panics
    /// Panics if `s` is not one of the ranked symbols.
    pub fn rank(&self, s: GeneratorSymbol) -> usize {
        match self.rank.get(&s) {
            Some(&r) => r,
            None => panic!("symbol {s} is not ranked (n = {})", self.n),
        }
    }

    pub fn contains(&self, s: GeneratorSymbol) -> bool {
        self.rank.contains_key(&s)
    }
}

/// The degree-lexicographic word order induced by a generator ranking.
#[derive(Clone, Debug)]
pub struct DeglexOrder {
    base: GeneratorOrder,
}

impl DeglexOrder {
    pub fn new(base: GeneratorOrder) -> Self {
        DeglexOrder { base }
    }

    /// Deglex over the default creations-first ranking.
    pub fn creations_first(n: usize) -> Self {
        DeglexOrder::new(GeneratorOrder::creations_first(n))
    }

    pub fn base(&self) -> &GeneratorOrder {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Compare two words: degree first, then left-to-right by symbol rank.
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> CmpOrdering {
        m1.degree().cmp(&m2.degree()).then_with(|| {
            for (s1, s2) in m1.symbols().iter().zip(m2.symbols()) {
                let c = self.base.rank(*s1).cmp(&self.base.rank(*s2));
                if c != CmpOrdering::Equal {
                    return c;
                }
            }
            CmpOrdering::Equal
        })
    }

    /// The larger of two words.
    pub fn max<'a>(&self, m1: &'a Monomial, m2: &'a Monomial) -> &'a Monomial {
        if self.compare(m1, m2) == CmpOrdering::Less {
            m2
        } else {
            m1
        }
    }

    /// Leading monomial and coefficient of a nonzero polynomial.
    pub fn leading_data(&self, p: &Polynomial) -> Result<LeadingData, OrderError> {
        let mut best: Option<(&Monomial, &Scalar)> = None;
        for (m, c) in p.terms() {
            best = match best {
                None => Some((m, c)),
                Some((bm, bc)) => {
                    if self.compare(m, bm) == CmpOrdering::Greater {
                        Some((m, c))
                    } else {
                        Some((bm, bc))
                    }
                }
            };
        }
        let (m, c) = best.ok_or(OrderError::ZeroPolynomial)?;
        Ok(LeadingData { monomial: m.clone(), coefficient: c.clone() })
    }
}

/// Leading monomial and coefficient of a polynomial under some deglex
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub monomial: Monomial,
    pub coefficient: Scalar,
}

impl LeadingData {
    /// The leading term as a polynomial.
    pub fn term(&self) -> Polynomial {
        Polynomial::term(self.monomial.clone(), self.coefficient.clone())
    }
}

/// Render a ranking as `A1 < a1 < ...`, the same syntax the presentation
/// DSL accepts.
pub fn format_ranking(order: &GeneratorOrder) -> String {
    order
        .ranking()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" < ")
}

/// Parse a ranking like `A1 < A2 < a1 < a2`.
pub fn parse_ranking(text: &str) -> Result<GeneratorOrder, OrderError> {
    let mut symbols = Vec::new();
    for piece in text.split('<') {
        let piece = piece.trim();
        let (kind, rest) = match piece.chars().next() {
            Some('a') => (SymbolKind::Destruction, &piece[1..]),
            Some('A') => (SymbolKind::Creation, &piece[1..]),
            _ => {
                return Err(OrderError::InvalidGeneratorOrder {
                    n: 0,
                    expected: 0,
                    detail: format!("unrecognized symbol {piece:?}"),
                })
            }
        };
        let index: u32 = rest.parse().map_err(|_| OrderError::InvalidGeneratorOrder {
            n: 0,
            expected: 0,
            detail: format!("unrecognized symbol {piece:?}"),
        })?;
        symbols.push(GeneratorSymbol { kind, index });
    }
    GeneratorOrder::new(symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, Monomial, Polynomial};

    fn m(text: &[(&str, u32)]) -> Monomial {
        Monomial::from_symbols(text.iter().map(|&(k, i)| match k {
            "a" => GeneratorSymbol::destruction(i),
            _ => GeneratorSymbol::creation(i),
        }))
    }

    #[test]
    fn creation_ranks_below_destruction_by_default() {
        let ord = DeglexOrder::creations_first(1);
        let lower = m(&[("A", 1), ("a", 1)]);
        let upper = m(&[("a", 1), ("A", 1)]);
        assert_eq!(ord.compare(&lower, &upper), CmpOrdering::Less);
    }

    #[test]
    fn degree_dominates() {
        let ord = DeglexOrder::creations_first(1);
        assert_eq!(
            ord.compare(&Monomial::one(), &m(&[("A", 1)])),
            CmpOrdering::Less
        );
    }

    #[test]
    fn compare_is_reflexive_equal() {
        let ord = DeglexOrder::creations_first(2);
        let w = m(&[("a", 2), ("A", 1), ("a", 1)]);
        assert_eq!(ord.compare(&w, &w), CmpOrdering::Equal);
    }

    #[test]
    fn leading_term_of_commutation_relator() {
        // a1*A1 + A1*a1 - 1 with A1 < a1: the leading monomial is a1*A1.
        let ord = DeglexOrder::creations_first(1);
        let p = Polynomial::from_terms(vec![
            (m(&[("a", 1), ("A", 1)]), int(1)),
            (m(&[("A", 1), ("a", 1)]), int(1)),
            (Monomial::one(), int(-1)),
        ]);
        let lead = ord.leading_data(&p).unwrap();
        assert_eq!(lead.monomial, m(&[("a", 1), ("A", 1)]));
        assert_eq!(lead.coefficient, int(1));
    }

    #[test]
    fn leading_term_of_scaled_generator() {
        let ord = DeglexOrder::creations_first(1);
        let p = Polynomial::generator(GeneratorSymbol::creation(1)).scale(&int(3));
        let lead = ord.leading_data(&p).unwrap();
        assert_eq!(lead.monomial, m(&[("A", 1)]));
        assert_eq!(lead.coefficient, int(3));
    }

    #[test]
    fn zero_polynomial_has_no_leading_term() {
        let ord = DeglexOrder::creations_first(1);
        assert_eq!(
            ord.leading_data(&Polynomial::zero()),
            Err(OrderError::ZeroPolynomial)
        );
    }

    #[test]
    fn ranking_round_trips_through_text() {
        let ord = GeneratorOrder::creations_first(2);
        let text = format_ranking(&ord);
        assert_eq!(text, "A1 < A2 < a1 < a2");
        let parsed = parse_ranking(&text).unwrap();
        assert_eq!(parsed.ranking(), ord.ranking());
    }

    #[test]
    fn rejects_incomplete_rankings() {
        assert!(parse_ranking("A1 < a1 < a2").is_err());
        assert!(parse_ranking("A1 < A1 < a1 < a2").is_err());
        assert!(parse_ranking("A1 < b2").is_err());
    }

    #[test]
    fn destructions_first_mirrors_default() {
        let ord = DeglexOrder::new(GeneratorOrder::destructions_first(1));
        let lower = m(&[("a", 1), ("A", 1)]);
        let upper = m(&[("A", 1), ("a", 1)]);
        assert_eq!(ord.compare(&lower, &upper), CmpOrdering::Less);
    }
}
