//! Exact arithmetic in the free associative algebra on `2n` generators
//! `a_1..a_n` (destruction) and `A_1..A_n` (creation), over arbitrary
//! precision rationals.
//!
//! Monomials are immutable shared words; polynomials keep a canonical
//! sorted term list with no zero coefficients, so equality, hashing and
//! iteration order are all deterministic. On top of the ring structure the
//! module provides the grade-reversing adjoint (reverse each word and swap
//! creation with destruction), the index-permutation action, the per-index
//! grading by creation count minus destruction count, and the derivations
//! that scale each monomial by its grade component.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient type: arbitrary-precision rational in lowest terms.
pub type Scalar = BigRational;

/// Shorthand for an integer scalar.
pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// Shorthand for a rational scalar `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a decimal integer literal of any size into a scalar.
pub fn integer_scalar(digits: &str) -> Option<Scalar> {
    digits.parse::<BigInt>().ok().map(Scalar::from_integer)
}

/// Whether a generator destroys or creates.
///
/// The derived order puts every creation symbol before every destruction
/// symbol; combined with the index order this is exactly the default
/// generator ranking `A1 < A2 < ... < An < a1 < ... < an`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SymbolKind {
    Creation,
    Destruction,
}

/// One generator: a kind plus a 1-based index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorSymbol {
    pub kind: SymbolKind,
    pub index: u32,
}

impl GeneratorSymbol {
    /// The destruction generator `a<index>`.
    pub fn destruction(index: u32) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        GeneratorSymbol { kind: SymbolKind::Destruction, index }
    }

    /// The creation generator `A<index>`.
    pub fn creation(index: u32) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        GeneratorSymbol { kind: SymbolKind::Creation, index }
    }

    /// Same index, opposite kind.
    pub fn flipped(self) -> Self {
        let kind = match self.kind {
            SymbolKind::Creation => SymbolKind::Destruction,
            SymbolKind::Destruction => SymbolKind::Creation,
        };
        GeneratorSymbol { kind, index: self.index }
    }

    /// Contribution of this symbol to the grade at its own index:
    /// `+1` for creation, `-1` for destruction.
    pub fn grade_sign(self) -> i64 {
        match self.kind {
            SymbolKind::Creation => 1,
            SymbolKind::Destruction => -1,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Creation => write!(f, "A{}", self.index),
            SymbolKind::Destruction => write!(f, "a{}", self.index),
        }
    }
}

/// A word in the free monoid on the generators. The empty word is the
/// multiplicative unit.
///
/// The backing storage is shared, so cloning a monomial never copies the
/// word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    word: Arc<[GeneratorSymbol]>,
}

impl Monomial {
    /// The empty word.
    pub fn one() -> Self {
        static UNIT: OnceLock<Monomial> = OnceLock::new();
        UNIT.get_or_init(|| Monomial { word: Arc::from(&[][..]) }).clone()
    }

    /// A single-symbol word.
    pub fn generator(symbol: GeneratorSymbol) -> Self {
        Monomial { word: Arc::from(&[symbol][..]) }
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = GeneratorSymbol>) -> Self {
        let word: Vec<GeneratorSymbol> = symbols.into_iter().collect();
        Monomial { word: Arc::from(word) }
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.word
    }

    /// Word length.
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut word = Vec::with_capacity(self.degree() + other.degree());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Monomial { word: Arc::from(word) }
    }

    /// The subword `self[start..end]`.
    pub fn subword(&self, start: usize, end: usize) -> Monomial {
        Monomial { word: Arc::from(&self.word[start..end]) }
    }

    /// Every position at which `factor` occurs as a contiguous subword,
    /// in left-to-right order. The empty factor matches nowhere.
    pub fn factor_positions(&self, factor: &Monomial) -> Vec<usize> {
        let f = factor.symbols();
        if f.is_empty() || f.len() > self.degree() {
            return Vec::new();
        }
        (0..=self.degree() - f.len())
            .filter(|&i| &self.word[i..i + f.len()] == f)
            .collect()
    }

    /// Whether `factor` occurs as a contiguous subword.
    pub fn contains_factor(&self, factor: &Monomial) -> bool {
        let f = factor.symbols();
        if f.is_empty() || f.len() > self.degree() {
            return false;
        }
        (0..=self.degree() - f.len()).any(|i| &self.word[i..i + f.len()] == f)
    }

    /// Reverse the word and flip every symbol's kind. This is the
    /// monomial-level action of the adjoint.
    pub fn adjoint(&self) -> Monomial {
        let word: Vec<GeneratorSymbol> =
            self.word.iter().rev().map(|s| s.flipped()).collect();
        Monomial { word: Arc::from(word) }
    }

    /// Re-index every symbol through `sigma`, preserving kinds.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Monomial {
        let word: Vec<GeneratorSymbol> = self
            .word
            .iter()
            .map(|s| GeneratorSymbol { kind: s.kind, index: sigma.image(s.index) })
            .collect();
        Monomial { word: Arc::from(word) }
    }

    /// Creation count minus destruction count at index `i` (1-based).
    pub fn i_number(&self, i: u32) -> i64 {
        self.word
            .iter()
            .filter(|s| s.index == i)
            .map(|s| s.grade_sign())
            .sum()
    }

    /// The full grade vector over indices `1..=n`.
    pub fn grade_vector(&self, n: usize) -> GradeVector {
        let mut grades = vec![0i64; n];
        for s in self.word.iter() {
            let slot = (s.index - 1) as usize;
            assert!(slot < n, "symbol index {} out of range for n = {}", s.index, n);
            grades[slot] += s.grade_sign();
        }
        GradeVector(grades)
    }

    /// Degree-then-lexicographic comparison in the default generator
    /// ranking. This is the storage order for polynomial terms; ordering
    /// relative to other generator rankings lives elsewhere.
    pub fn canonical_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for s in self.word.iter() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

/// A permutation of `{1, .., n}` stored as its one-line image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Build from the image list `images[i-1] = sigma(i)`.
    ///
    /// # Panics
    /// Panics if the list is not a bijection of `{1, .., n}`.
    pub fn new(images: Vec<u32>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            assert!(
                img >= 1 && img as usize <= n && !std::mem::replace(&mut seen[(img - 1) as usize], true),
                "not a permutation of 1..={n}: {images:?}"
            );
        }
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u32).collect() }
    }

    /// The transposition exchanging `i` and `j` inside `{1, .., n}`.
    pub fn transposition(n: usize, i: u32, j: u32) -> Self {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.swap((i - 1) as usize, (j - 1) as usize);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }
}

/// Per-index grade: entry `i-1` is the creation-minus-destruction count
/// for index `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GradeVector(pub Vec<i64>);

impl GradeVector {
    pub fn zero(n: usize) -> Self {
        GradeVector(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&g| g == 0)
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// An element of the free algebra: a finite rational combination of
/// monomials.
///
/// Terms are stored sorted by [`Monomial::canonical_cmp`], largest first,
/// with no zero coefficients, so two polynomials are equal exactly when
/// their term lists are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    /// The single monomial `m` with coefficient 1.
    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// A single generator as a polynomial.
    pub fn generator(symbol: GeneratorSymbol) -> Self {
        Polynomial::monomial(Monomial::generator(symbol))
    }

    /// Canonicalize an arbitrary term list: sort, merge duplicates, drop
    /// zeros.
    pub fn from_terms(terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.canonical_cmp(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    /// Terms in storage order (canonically largest first).
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Largest degree in the support, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        // Merge two already-sorted term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.canonical_cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.concat(mb), ca * cb));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// The adjoint: reverse every word, swap creation and destruction,
    /// keep coefficients. An anti-automorphism of order two.
    pub fn adjoint(&self) -> Polynomial {
        Polynomial::from_terms(
            self.terms.iter().map(|(m, c)| (m.adjoint(), c.clone())).collect(),
        )
    }

    /// Re-index all symbols through `sigma`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.apply_permutation(sigma), c.clone()))
                .collect(),
        )
    }

    /// Split into grade-homogeneous components over indices `1..=n`.
    /// Summing the components gives back the polynomial; no component is
    /// zero.
    pub fn grade_decompose(&self, n: usize) -> BTreeMap<GradeVector, Polynomial> {
        let mut parts: BTreeMap<GradeVector, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.grade_vector(n))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(g, terms)| (g, Polynomial::from_terms(terms)))
            .collect()
    }

    /// If every term has the same grade vector, that vector.
    pub fn homogeneous_grade(&self, n: usize) -> Option<GradeVector> {
        let mut it = self.terms.iter();
        let first = it.next()?.0.grade_vector(n);
        it.all(|(m, _)| m.grade_vector(n) == first).then_some(first)
    }

    /// The derivation scaling each monomial by its grade at index `i`:
    /// `m ↦ n_i(m)·m`, extended linearly. Satisfies the Leibniz rule.
    pub fn number_derivation(&self, i: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c * int(m.i_number(i))))
                .collect(),
        )
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Polynomial) -> Polynomial {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> Polynomial {
        Polynomial::generator(GeneratorSymbol::destruction(i))
    }

    fn cr(i: u32) -> Polynomial {
        Polynomial::generator(GeneratorSymbol::creation(i))
    }

    fn word(text: &[(&str, u32)]) -> Monomial {
        Monomial::from_symbols(text.iter().map(|&(k, i)| match k {
            "a" => GeneratorSymbol::destruction(i),
            _ => GeneratorSymbol::creation(i),
        }))
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = a(1);
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn product_concatenates_words() {
        let p = a(1).mul(&cr(1));
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, word(&[("a", 1), ("A", 1)]));
        assert_eq!(p.terms()[0].1, int(1));
    }

    #[test]
    fn left_distribution_over_sum() {
        let p = a(1).add(&cr(1));
        let q = p.mul(&a(1));
        assert_eq!(
            q,
            Polynomial::from_terms(vec![
                (word(&[("a", 1), ("a", 1)]), int(1)),
                (word(&[("A", 1), ("a", 1)]), int(1)),
            ])
        );
    }

    #[test]
    fn adjoint_reverses_and_flips() {
        let p = Polynomial::monomial(word(&[("a", 1), ("A", 2)]));
        assert_eq!(p.adjoint(), Polynomial::monomial(word(&[("a", 2), ("A", 1)])));
    }

    #[test]
    fn adjoint_is_an_involution() {
        let p = a(1).mul(&cr(2)).add(&cr(1).scale(&frac(3, 2))).sub(&Polynomial::one());
        assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn adjoint_fixes_symmetric_relator() {
        // a1*A1 + A1*a1 - 1 is its own adjoint.
        let p = a(1)
            .mul(&cr(1))
            .add(&cr(1).mul(&a(1)))
            .sub(&Polynomial::one());
        assert_eq!(p.adjoint(), p);
    }

    #[test]
    fn transposition_swaps_indices() {
        let sigma = Permutation::transposition(2, 1, 2);
        let p = Polynomial::monomial(word(&[("a", 1), ("A", 2)]));
        assert_eq!(
            p.apply_permutation(&sigma),
            Polynomial::monomial(word(&[("a", 2), ("A", 1)]))
        );
        assert_eq!(p.apply_permutation(&sigma).apply_permutation(&sigma), p);
        assert_eq!(p.apply_permutation(&Permutation::identity(2)), p);
    }

    #[test]
    fn grade_vector_counts_signed_occurrences() {
        assert!(word(&[("A", 1), ("a", 1)]).grade_vector(1).is_zero());
        let g = word(&[("A", 1), ("A", 1), ("a", 2)]).grade_vector(2);
        assert_eq!(g, GradeVector(vec![2, -1]));
        assert!(Monomial::one().grade_vector(3).is_zero());
    }

    #[test]
    fn grade_decompose_partitions_terms() {
        let p = a(1).mul(&a(1)).add(&a(1).mul(&cr(1)));
        let parts = p.grade_decompose(1);
        assert_eq!(parts.len(), 2);
        assert!(parts.contains_key(&GradeVector(vec![-2])));
        assert!(parts.contains_key(&GradeVector(vec![0])));
        let sum = parts
            .values()
            .fold(Polynomial::zero(), |acc, q| acc.add(q));
        assert_eq!(sum, p);
    }

    #[test]
    fn number_derivation_scales_by_grade() {
        assert_eq!(a(1).number_derivation(1), a(1).neg());
        assert!(cr(1).mul(&a(1)).number_derivation(1).is_zero());
        let p = cr(2).mul(&cr(2));
        assert_eq!(p.number_derivation(2), p.scale(&int(2)));
    }

    #[test]
    fn derivations_at_distinct_indices_commute() {
        let p = a(1).mul(&cr(2)).add(&cr(1).mul(&a(2)).scale(&frac(-1, 3)));
        assert_eq!(
            p.number_derivation(1).number_derivation(2),
            p.number_derivation(2).number_derivation(1)
        );
    }

    #[test]
    fn factor_positions_finds_overlapping_occurrences() {
        let m = word(&[("a", 1), ("a", 1), ("a", 1)]);
        let f = word(&[("a", 1), ("a", 1)]);
        assert_eq!(m.factor_positions(&f), vec![0, 1]);
        assert!(m.contains_factor(&f));
        assert!(!m.contains_factor(&word(&[("A", 1)])));
    }

    #[test]
    fn display_renders_signed_terms() {
        let p = cr(1)
            .mul(&a(1))
            .scale(&int(2))
            .sub(&Polynomial::constant(frac(1, 2)));
        assert_eq!(p.to_string(), "2*A1*a1 - 1/2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
    }

    #[test]
    fn from_terms_merges_and_purges() {
        let m = word(&[("a", 1)]);
        let p = Polynomial::from_terms(vec![
            (m.clone(), int(2)),
            (m.clone(), int(-2)),
            (Monomial::one(), int(5)),
        ]);
        assert_eq!(p, Polynomial::constant(int(5)));
    }
}
