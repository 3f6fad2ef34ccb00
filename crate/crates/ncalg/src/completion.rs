//! Topological number-operator machinery: the filtration by trailing
//! destruction degree, bounded separation/continuity certificates for
//! its completion, a degree-by-degree series solver for number
//! operators that only exist as infinite sums, and exact truncated Fock
//! representations for the built-in families.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::freealg::{int, GeneratorSymbol, Monomial, Polynomial, Scalar, SymbolKind};
use crate::linalg::{
    self, AffineSolutionSpace, LinalgError, MonomialIndex, RationalMatrix,
};
use crate::noa::{preset, ClassificationLabel, Family, NoaError};
use crate::rewrite::{ReductionSystem, RewriteError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompletionError {
    #[error("zero-grade irreducibles do not stratify by trailing destructions: {detail}")]
    StratificationFailure { detail: String },
    #[error("no Fock module construction for {label}")]
    UnsupportedFamily { label: String },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Noa(#[from] NoaError),
}

/// Number of destruction symbols at the end of the word.
fn trailing_destructions(m: &Monomial) -> usize {
    m.symbols()
        .iter()
        .rev()
        .take_while(|s| s.kind == SymbolKind::Destruction)
        .count()
}

/// Whether the word is a block of creations followed by a block of
/// destructions (no destruction ever precedes a creation).
fn is_block_word(m: &Monomial) -> bool {
    trailing_destructions(m) == m.symbols().iter().filter(|s| s.kind == SymbolKind::Destruction).count()
}

/// Position of a normal form in the trailing-destruction filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationDegree {
    Finite(usize),
    /// Zero lies in every filtration level.
    Infinite,
}

impl PartialOrd for FiltrationDegree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiltrationDegree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use FiltrationDegree::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDegree::Finite(k) => write!(f, "{k}"),
            FiltrationDegree::Infinite => write!(f, "infinite"),
        }
    }
}

/// Largest `k` such that every support monomial of the normal form of
/// `p` ends in at least `k` destruction symbols.
pub fn filtration_degree(
    system: &ReductionSystem,
    p: &Polynomial,
) -> Result<FiltrationDegree, CompletionError> {
    let nf = system.normal_form(p)?;
    Ok(match nf.terms().iter().map(|(m, _)| trailing_destructions(m)).min() {
        None => FiltrationDegree::Infinite,
        Some(k) => FiltrationDegree::Finite(k),
    })
}

/// One entry of the continuity certificate: the least shift `N` such
/// that, within the degree window, multiplying the level-`N` part of the
/// filtration by the creation generator stays at level `target_level`;
/// `counterexample` holds a witness monomial when no shift up to the cap
/// worked.
#[derive(Clone, Debug)]
pub struct H2Entry {
    pub creation_index: u32,
    pub target_level: usize,
    pub least_shift: Option<usize>,
    pub counterexample: Option<Monomial>,
}

/// Bounded certificates for the two completion hypotheses: separation
/// (no nonzero low-degree element survives arbitrarily deep in the
/// filtration) and continuity of right multiplication by creation
/// generators.
#[derive(Clone, Debug)]
pub struct HCertificates {
    pub degree_bound: usize,
    pub h1_passed: bool,
    /// Basis of the offending subspace when separation fails: nonzero
    /// elements of degree at most the bound lying below every
    /// filtration level examined.
    pub h1_witnesses: Vec<Polynomial>,
    pub h2_entries: Vec<H2Entry>,
}

impl HCertificates {
    pub fn h2_passed(&self) -> bool {
        self.h2_entries.iter().all(|e| e.least_shift.is_some())
    }
}

/// Irreducible pure-destruction words of the exact length `k`.
fn irreducible_destruction_words(system: &ReductionSystem, k: usize) -> Vec<Monomial> {
    system
        .irreducible_basis(k)
        .monomials
        .into_iter()
        .filter(|m| m.degree() == k && m.symbols().iter().all(|s| s.kind == SymbolKind::Destruction))
        .collect()
}

/// Spanning set for the image of filtration level `k` in the quotient,
/// windowed so that the left factor's degree plus `k` stays within
/// `window`: normal forms of u·w with u irreducible and w an irreducible
/// destruction word of length `k`.
fn filtration_span(
    system: &ReductionSystem,
    k: usize,
    window: usize,
) -> Result<Vec<Polynomial>, CompletionError> {
    let words = irreducible_destruction_words(system, k);
    if words.is_empty() {
        return Ok(Vec::new());
    }
    let left = system.irreducible_basis(window.saturating_sub(k)).monomials;
    let mut out = Vec::new();
    for u in &left {
        for w in &words {
            let product = Polynomial::monomial(u.concat(w));
            let nf = system.normal_form(&product)?;
            if !nf.is_zero() {
                out.push(nf);
            }
        }
    }
    Ok(out)
}

/// Check the two completion hypotheses up to `degree_bound`.
///
/// Separation is certified by computing a windowed spanning set of
/// filtration level `bound + 1` and intersecting it with the span of
/// monomials of degree at most `bound`: since the filtration is
/// decreasing, anything in that intersection lies in every level.  The
/// continuity entries search, for each creation generator and each
/// target level, the least shift `N ≤ bound + 1` such that every
/// windowed product from level `N` times the generator normal-forms
/// with all support at trailing depth ≥ target.  Membership is tested
/// against monomial trailing depth, a safe under-approximation of the
/// filtration level.
pub fn h_certificates(
    system: &ReductionSystem,
    degree_bound: usize,
) -> Result<HCertificates, CompletionError> {
    let window = 2 * degree_bound + 2;
    let deep = filtration_span(system, degree_bound + 1, window)?;
    let (h1_passed, h1_witnesses) = if deep.is_empty() {
        (true, Vec::new())
    } else {
        let mut monomials = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for p in &deep {
            for (m, _) in p.terms() {
                if seen.insert(m.clone()) {
                    monomials.push(m.clone());
                }
            }
        }
        monomials.sort_by(|a, b| a.canonical_cmp(b));
        let index = MonomialIndex::from_monomials(monomials);
        let vectors: Vec<Vec<Scalar>> =
            deep.iter().map(|p| index.vectorize(p).expect("support is indexed")).collect();
        let high: Vec<usize> = (0..index.len())
            .filter(|&i| index.monomials()[i].degree() > degree_bound)
            .collect();
        let witnesses: Vec<Polynomial> = linalg::span_vanishing_at(&vectors, &high)
            .into_iter()
            .map(|v| index.devectorize(&v))
            .filter(|p| !p.is_zero())
            .collect();
        (witnesses.is_empty(), witnesses)
    };

    let n = system.n();
    let mut h2_entries = Vec::new();
    for i in 1..=n as u32 {
        let b = Polynomial::generator(GeneratorSymbol::creation(i));
        for target in 1..=degree_bound {
            let mut least = None;
            let mut counterexample = None;
            for shift in target..=degree_bound + 1 {
                let mut bad = None;
                'products: for p in filtration_span(system, shift, window)? {
                    let pushed = system.normal_form(&p.mul(&b))?;
                    for (m, _) in pushed.terms() {
                        if trailing_destructions(m) < target {
                            bad = Some(m.clone());
                            break 'products;
                        }
                    }
                }
                match bad {
                    None => {
                        least = Some(shift);
                        break;
                    }
                    Some(m) => counterexample = Some(m),
                }
            }
            h2_entries.push(H2Entry {
                creation_index: i,
                target_level: target,
                least_shift: least,
                counterexample: if least.is_some() { None } else { counterexample },
            });
        }
    }

    Ok(HCertificates { degree_bound, h1_passed, h1_witnesses, h2_entries })
}

/// A series element organized by trailing destruction degree: component
/// `k` is a combination of zero-grade irreducible block words with
/// exactly `k` destructions.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredElement {
    pub components: Vec<Polynomial>,
    pub truncation_level: usize,
}

impl FilteredElement {
    /// Drop the strata above `level`.
    pub fn truncate(&self, level: usize) -> FilteredElement {
        assert!(level <= self.truncation_level, "cannot extend by truncation");
        FilteredElement {
            components: self.components[..=level].to_vec(),
            truncation_level: level,
        }
    }

    /// Sum of all retained strata, as an ordinary polynomial.
    pub fn polynomial(&self) -> Polynomial {
        self.components.iter().fold(Polynomial::zero(), |acc, c| acc.add(c))
    }

    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k]
    }
}

/// Result of the stratified series solve.
#[derive(Clone, Debug)]
pub enum SeriesOutcome {
    Solved {
        element: FilteredElement,
        /// Directions the solution can be shifted in, stratified the
        /// same way; the additive constant always appears here.
        free_directions: Vec<FilteredElement>,
    },
    /// The affine system for the strata up to `level` is inconsistent.
    EmptyAtLevel { level: usize },
}

/// Solve the number-operator equations degree-by-degree in the
/// filtration: at step `k` the ansatz runs over the zero-grade strata
/// `0..=k` and the equations are imposed on every component of trailing
/// depth at most `k`, which is exactly solving modulo filtration level
/// `k+1`.  Requires every zero-grade irreducible of degree ≤ 2K to be a
/// creation block followed by a destruction block.
pub fn series_number_operator_solve(
    system: &ReductionSystem,
    index: u32,
    truncation: usize,
) -> Result<SeriesOutcome, CompletionError> {
    let n = system.n();
    assert!(
        (1..=n as u32).contains(&index),
        "index {index} out of range for n = {n}"
    );
    let mut strata: Vec<Vec<Monomial>> = vec![Vec::new(); truncation + 1];
    for m in crate::noa::zero_grade_basis(system, 2 * truncation) {
        if !is_block_word(&m) {
            return Err(CompletionError::StratificationFailure {
                detail: format!("irreducible {m} mixes destructions into the creation block"),
            });
        }
        let k = trailing_destructions(&m);
        if k <= truncation {
            strata[k].push(m);
        }
    }

    // Brackets with every letter, computed once per ansatz monomial.
    let letters: Vec<(SymbolKind, Polynomial, Polynomial)> = (1..=n as u32)
        .flat_map(|j| {
            [GeneratorSymbol::destruction(j), GeneratorSymbol::creation(j)].map(|s| {
                let ell = Polynomial::generator(s);
                let forcing = if j == index {
                    let sign = match s.kind {
                        SymbolKind::Destruction => int(1),
                        SymbolKind::Creation => int(-1),
                    };
                    ell.scale(&sign)
                } else {
                    Polynomial::zero()
                };
                (s.kind, ell, forcing)
            })
        })
        .collect();

    let flat: Vec<(usize, Monomial)> = strata
        .iter()
        .enumerate()
        .flat_map(|(k, ms)| ms.iter().map(move |m| (k, m.clone())))
        .collect();
    let brackets: Vec<Vec<Polynomial>> = flat
        .iter()
        .map(|(_, m)| {
            let t = Polynomial::monomial(m.clone());
            letters
                .iter()
                .map(|(_, ell, _)| system.normal_form(&t.mul(ell).sub(&ell.mul(&t))))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, RewriteError>>()?;
    let forcings: Vec<Polynomial> = letters
        .iter()
        .map(|(_, _, f)| system.normal_form(f))
        .collect::<Result<_, _>>()?;

    let mut particular = vec![Scalar::zero(); flat.len()];
    let mut homogeneous: Vec<Vec<Scalar>> = Vec::new();
    for level in 0..=truncation {
        let unknowns: Vec<usize> =
            (0..flat.len()).filter(|&t| flat[t].0 <= level).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for (e, forcing) in forcings.iter().enumerate() {
            // Bracketing a depth-m stratum with a destruction letter
            // stays at depth ≥ m, so those equations are complete up to
            // the current level; bracketing with a creation letter can
            // drop one depth, so the level-k component still awaits the
            // absent stratum k+1 and only depths ≤ k−1 are imposed.
            let cutoff = match letters[e].0 {
                SymbolKind::Destruction => level,
                SymbolKind::Creation => match level.checked_sub(1) {
                    Some(c) => c,
                    None => continue,
                },
            };
            let mut support = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for &t in &unknowns {
                for (m, _) in brackets[t][e].terms() {
                    if trailing_destructions(m) <= cutoff && seen.insert(m.clone()) {
                        support.push(m.clone());
                    }
                }
            }
            for (m, _) in forcing.terms() {
                if trailing_destructions(m) <= cutoff && seen.insert(m.clone()) {
                    support.push(m.clone());
                }
            }
            support.sort_by(|a, b| a.canonical_cmp(b));
            for r in support {
                rows.push(unknowns.iter().map(|&t| brackets[t][e].coeff(&r)).collect());
                rhs.push(-forcing.coeff(&r));
            }
        }
        let solved = if rows.is_empty() {
            AffineSolutionSpace::Solutions {
                particular: vec![Scalar::zero(); unknowns.len()],
                homogeneous_basis: (0..unknowns.len())
                    .map(|t| {
                        let mut e = vec![Scalar::zero(); unknowns.len()];
                        e[t] = int(1);
                        e
                    })
                    .collect(),
            }
        } else {
            linalg::solve_affine(&RationalMatrix::from_rows(rows), &rhs)?
        };
        match solved {
            AffineSolutionSpace::Empty => return Ok(SeriesOutcome::EmptyAtLevel { level }),
            AffineSolutionSpace::Solutions { particular: p, homogeneous_basis } => {
                // Later levels re-derive the earlier strata; the final
                // level's answer subsumes them (stratum-wise uniqueness
                // up to the free directions).
                particular = vec![Scalar::zero(); flat.len()];
                for (slot, &t) in unknowns.iter().enumerate() {
                    particular[t] = p[slot].clone();
                }
                homogeneous = homogeneous_basis
                    .into_iter()
                    .map(|h| {
                        let mut full = vec![Scalar::zero(); flat.len()];
                        for (slot, &t) in unknowns.iter().enumerate() {
                            full[t] = h[slot].clone();
                        }
                        full
                    })
                    .collect();
            }
        }
    }

    let stratify = |coeffs: &[Scalar]| -> FilteredElement {
        let mut components = vec![Polynomial::zero(); truncation + 1];
        for (t, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let (k, ref m) = flat[t];
                components[k] =
                    components[k].add(&Polynomial::term(m.clone(), c.clone()));
            }
        }
        FilteredElement { components, truncation_level: truncation }
    };
    Ok(SeriesOutcome::Solved {
        element: stratify(&particular),
        free_directions: homogeneous.iter().map(|h| stratify(h)).collect(),
    })
}

/// A normal-ordered occupation state of the truncated Fock module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockState {
    pub occupation: Vec<u32>,
}

impl FockState {
    pub fn vacuum(n: usize) -> Self {
        FockState { occupation: vec![0; n] }
    }

    pub fn total(&self) -> u32 {
        self.occupation.iter().sum()
    }

    /// The representing word a⁺₁^{m₁}···a⁺ₙ^{mₙ}.
    pub fn creation_word(&self) -> Monomial {
        Monomial::from_symbols(self.occupation.iter().enumerate().flat_map(|(slot, &m)| {
            std::iter::repeat(GeneratorSymbol::creation(slot as u32 + 1)).take(m as usize)
        }))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.occupation.iter().map(|m| m.to_string()).collect();
        write!(f, "|{}⟩", body.join(" "))
    }
}

fn family_of(label: &ClassificationLabel) -> Result<(Family, Scalar), CompletionError> {
    let unsupported = || CompletionError::UnsupportedFamily { label: label.to_string() };
    match label {
        ClassificationLabel::Boson(h) => Ok((Family::Boson, h.clone())),
        ClassificationLabel::PseudoBoson(h) => Ok((Family::PseudoBoson, h.clone())),
        ClassificationLabel::Fermion(h) => Ok((Family::Fermion, h.clone())),
        ClassificationLabel::PseudoFermion(h) => Ok((Family::PseudoFermion, h.clone())),
        ClassificationLabel::QBoson(q) => Ok((Family::QBoson, q.clone())),
        ClassificationLabel::PseudoQBoson(q) => Ok((Family::PseudoQBoson, q.clone())),
        ClassificationLabel::Matrix(h) => Ok((Family::Matrix, h.clone())),
        ClassificationLabel::MatrixDual(_) | ClassificationLabel::Unknown => Err(unsupported()),
    }
}

fn occupation_cap(family: Family, level: usize) -> u32 {
    match family {
        Family::Fermion | Family::PseudoFermion => 1,
        _ => level as u32,
    }
}

fn total_cap(family: Family, level: usize) -> u32 {
    match family {
        Family::Matrix => 1.min(level as u32),
        _ => level as u32,
    }
}

/// All occupation states of total degree at most `level`, ordered by
/// total degree and then with earlier indices filled first.
pub fn fock_basis(
    label: &ClassificationLabel,
    n: usize,
    level: usize,
) -> Result<Vec<FockState>, CompletionError> {
    let (family, _) = family_of(label)?;
    let per = occupation_cap(family, level);
    let cap = total_cap(family, level);
    let mut states = Vec::new();
    let mut current = vec![0u32; n];
    for total in 0..=cap {
        enumerate_states(&mut current, 0, total, per, &mut states);
    }
    Ok(states)
}

fn enumerate_states(
    current: &mut Vec<u32>,
    slot: usize,
    remaining: u32,
    per: u32,
    out: &mut Vec<FockState>,
) {
    if slot == current.len() {
        if remaining == 0 {
            out.push(FockState { occupation: current.clone() });
        }
        return;
    }
    // Highest occupation first, so |1 0⟩ precedes |0 1⟩ at equal total.
    for m in (0..=remaining.min(per)).rev() {
        current[slot] = m;
        enumerate_states(current, slot + 1, remaining - m, per, out);
        current[slot] = 0;
    }
}

/// The left action of an algebra element on the truncated Fock basis.
/// Row `i` holds the coordinates of the image of state `i`; a row is
/// masked when part of the image escaped the truncation level, in which
/// case its entries are not trustworthy.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    matrix: RationalMatrix,
    mask: Vec<bool>,
}

impl OperatorMatrix {
    pub fn identity(dim: usize) -> Self {
        OperatorMatrix { matrix: RationalMatrix::identity(dim), mask: vec![false; dim] }
    }

    pub fn zero(dim: usize) -> Self {
        OperatorMatrix { matrix: RationalMatrix::zeros(dim, dim), mask: vec![false; dim] }
    }

    pub fn dim(&self) -> usize {
        self.mask.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.entry(i, j)
    }

    pub fn is_masked(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn masked_rows(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.mask[i]).collect()
    }

    pub fn add(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim(), other.dim());
        let mut matrix = RationalMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                *matrix.entry_mut(i, j) = self.entry(i, j) + other.entry(i, j);
            }
        }
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| a | b).collect();
        OperatorMatrix { matrix, mask }
    }

    pub fn scale(&self, c: &Scalar) -> OperatorMatrix {
        let mut matrix = RationalMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                *matrix.entry_mut(i, j) = self.entry(i, j) * c;
            }
        }
        OperatorMatrix { matrix, mask: self.mask.clone() }
    }

    pub fn sub(&self, other: &OperatorMatrix) -> OperatorMatrix {
        self.add(&other.scale(&int(-1)))
    }

    /// Matrix of the composite action `u ↦ x·(y·u)` where `self`
    /// represents `x` and `other` represents `y` (so `other` acts
    /// first); this is exactly the action of the product `x·y`.  A row
    /// is masked if `other`'s row was, or if its image touches a masked
    /// row of `self`.
    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim(), other.dim());
        let matrix = other.matrix.mul(&self.matrix).expect("square matrices of equal size");
        let mask = (0..self.dim())
            .map(|i| {
                other.mask[i]
                    || (0..self.dim()).any(|j| self.mask[j] && !other.entry(i, j).is_zero())
            })
            .collect();
        OperatorMatrix { matrix, mask }
    }

    pub fn commutator(&self, other: &OperatorMatrix) -> OperatorMatrix {
        self.compose(other).sub(&other.compose(self))
    }

    /// Whether every row unmasked in both matrices is identical.
    pub fn agrees_with(&self, other: &OperatorMatrix) -> bool {
        assert_eq!(self.dim(), other.dim());
        (0..self.dim()).all(|i| {
            self.mask[i]
                || other.mask[i]
                || (0..self.dim()).all(|j| self.entry(i, j) == other.entry(i, j))
        })
    }

    /// Plain dense text: one row per line with exact rational entries,
    /// and a trailing comment listing any masked rows.
    pub fn to_dense_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            let row: Vec<String> =
                (0..self.dim()).map(|j| self.entry(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        let masked = self.masked_rows();
        if !masked.is_empty() {
            let list: Vec<String> = masked.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("# masked rows: {}\n", list.join(" ")));
        }
        out
    }

    /// Evaluate a noncommutative polynomial at letter matrices: index
    /// `i-1` of each slice holds the matrix of the corresponding
    /// generator.
    pub fn evaluate(
        x: &Polynomial,
        destruction: &[OperatorMatrix],
        creation: &[OperatorMatrix],
        dim: usize,
    ) -> OperatorMatrix {
        let mut acc = OperatorMatrix::zero(dim);
        for (word, c) in x.terms() {
            let mut factor = OperatorMatrix::identity(dim);
            for s in word.symbols() {
                let slot = (s.index - 1) as usize;
                let letter = match s.kind {
                    SymbolKind::Destruction => &destruction[slot],
                    SymbolKind::Creation => &creation[slot],
                };
                factor = factor.compose(letter);
            }
            acc = acc.add(&factor.scale(c));
        }
        acc
    }
}

/// Shared core of the representation: normal-form `x·(creation word)`
/// and read coordinates in the Fock basis, masking rows that overflow.
fn action_matrix(
    system: &ReductionSystem,
    states: &[FockState],
    positions: &HashMap<Vec<u32>, usize>,
    level: usize,
    x: &Polynomial,
) -> Result<OperatorMatrix, CompletionError> {
    let n = system.n();
    let dim = states.len();
    let mut matrix = RationalMatrix::zeros(dim, dim);
    let mut mask = vec![false; dim];
    for (row, state) in states.iter().enumerate() {
        let word = Polynomial::monomial(state.creation_word());
        let image = system.normal_form(&x.mul(&word))?;
        for (m, c) in image.terms() {
            if m.symbols().iter().any(|s| s.kind == SymbolKind::Destruction) {
                // The class of any word reaching into the destruction
                // block is zero in the quotient module.
                debug_assert!(trailing_destructions(m) > 0);
                continue;
            }
            if m.degree() > level {
                mask[row] = true;
                continue;
            }
            let mut occupation = vec![0u32; n];
            for s in m.symbols() {
                occupation[(s.index - 1) as usize] += 1;
            }
            let col = positions
                .get(&occupation)
                .copied()
                .expect("irreducible creation word within the level is a basis state");
            *matrix.entry_mut(row, col) = c.clone();
        }
    }
    Ok(OperatorMatrix { matrix, mask })
}

/// Matrix of the left action of `x` on the level-`level` Fock basis of
/// the family.
pub fn operator_matrix(
    label: &ClassificationLabel,
    n: usize,
    level: usize,
    x: &Polynomial,
) -> Result<OperatorMatrix, CompletionError> {
    let (family, constant) = family_of(label)?;
    let built = preset(family, n, &constant)?;
    let states = fock_basis(label, n, level)?;
    let positions: HashMap<Vec<u32>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.occupation.clone(), i))
        .collect();
    action_matrix(&built.system, &states, &positions, level, x)
}

/// Everything `verify_relations` checked, with the number matrices kept
/// for further inspection.
#[derive(Clone, Debug)]
pub struct RepresentationReport {
    pub states: Vec<FockState>,
    pub number_matrices: Vec<OperatorMatrix>,
    pub failures: Vec<String>,
}

impl RepresentationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Build the letter and number-operator matrices on the truncated Fock
/// module and check, on rows unmasked on both sides: every defining
/// relation as a matrix identity, the number equations, commutation of
/// the number operators among themselves, annihilation of the vacuum,
/// and integer occupation eigenvalues.
pub fn verify_relations(
    label: &ClassificationLabel,
    n: usize,
    level: usize,
) -> Result<RepresentationReport, CompletionError> {
    let (family, constant) = family_of(label)?;
    let built = preset(family, n, &constant)?;
    let system = &built.system;
    let states = fock_basis(label, n, level)?;
    let positions: HashMap<Vec<u32>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.occupation.clone(), i))
        .collect();
    let dim = states.len();
    let mut failures = Vec::new();

    let mut destruction = Vec::new();
    let mut creation = Vec::new();
    for i in 1..=n as u32 {
        destruction.push(action_matrix(
            system,
            &states,
            &positions,
            level,
            &Polynomial::generator(GeneratorSymbol::destruction(i)),
        )?);
        creation.push(action_matrix(
            system,
            &states,
            &positions,
            level,
            &Polynomial::generator(GeneratorSymbol::creation(i)),
        )?);
    }

    for (g_at, g) in built.presentation.generators.iter().enumerate() {
        let evaluated = OperatorMatrix::evaluate(g, &destruction, &creation, dim);
        if !evaluated.agrees_with(&OperatorMatrix::zero(dim)) {
            failures.push(format!("defining relation {g_at} is violated on an unmasked row"));
        }
    }

    // The number operators: a stratified series for the deformed
    // families (strata beyond the level cannot act on the basis), a
    // plain bounded polynomial solve otherwise.
    let mut numbers = Vec::new();
    for i in 1..=n as u32 {
        let operator = if family.is_q_family() {
            match series_number_operator_solve(system, i, level.max(2))? {
                SeriesOutcome::Solved { element, .. } => element.polynomial(),
                SeriesOutcome::EmptyAtLevel { level } => {
                    failures.push(format!(
                        "series for the index-{i} number operator is empty at stratum {level}"
                    ));
                    continue;
                }
            }
        } else {
            match crate::noa::number_operator_solve(system, i, 4)?.solution(i) {
                Some(solution) => solution.operator,
                None => {
                    failures.push(format!("no number operator for index {i} at degree 4"));
                    continue;
                }
            }
        };
        numbers.push(action_matrix(system, &states, &positions, level, &operator)?);
    }

    if numbers.len() == n {
        for (i, number) in numbers.iter().enumerate() {
            for j in 0..n {
                let da = number.commutator(&destruction[j]);
                let expect_d = if i == j {
                    destruction[j].scale(&int(-1))
                } else {
                    OperatorMatrix::zero(dim)
                };
                if !da.agrees_with(&expect_d) {
                    failures.push(format!(
                        "number equation for destruction index {} against operator {} fails",
                        j + 1,
                        i + 1
                    ));
                }
                let dc = number.commutator(&creation[j]);
                let expect_c = if i == j {
                    creation[j].clone()
                } else {
                    OperatorMatrix::zero(dim)
                };
                if !dc.agrees_with(&expect_c) {
                    failures.push(format!(
                        "number equation for creation index {} against operator {} fails",
                        j + 1,
                        i + 1
                    ));
                }
            }
            for other in &numbers[i + 1..] {
                if !number.commutator(other).agrees_with(&OperatorMatrix::zero(dim)) {
                    failures.push("number operators fail to commute on an unmasked row".to_string());
                }
            }
        }
        for (slot, number) in numbers.iter().enumerate() {
            // Diagonal action with integer occupation eigenvalues; the
            // vacuum row in particular must vanish.
            for (row, state) in states.iter().enumerate() {
                if number.is_masked(row) {
                    continue;
                }
                for col in 0..dim {
                    let expected = if row == col {
                        Scalar::from_integer(state.occupation[slot].into())
                    } else {
                        Scalar::zero()
                    };
                    if *number.entry(row, col) != expected {
                        failures.push(format!(
                            "operator {} does not count occupation on state {state}",
                            slot + 1
                        ));
                        break;
                    }
                }
            }
        }
    }

    Ok(RepresentationReport { states, number_matrices: numbers, failures })
}
