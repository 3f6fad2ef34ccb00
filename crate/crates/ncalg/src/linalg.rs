//! Dense exact linear algebra over the rationals: reduced row echelon
//! form, affine solution spaces, and span computations (membership,
//! canonical bases, intersections, coordinate slices).
//!
//! Everything is plain rational Gaussian elimination with first-nonzero
//! pivoting, so results are exact and deterministic. Matrices here are
//! small: rows and columns are indexed by monomials of bounded degree or
//! by ansatz coefficients.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::{GeneratorSymbol, Monomial, Polynomial, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A dense rational matrix in row-major storage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Scalar::one();
        }
        m
    }

    /// Build from a list of rows.
    ///
    /// # Panics
    /// Panics if the rows have inconsistent lengths.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(height * width);
        for row in rows {
            assert_eq!(row.len(), width, "ragged rows");
            entries.extend(row);
        }
        RationalMatrix { rows: height, cols: width, entries }
    }

    /// Build from a list of columns.
    pub fn from_columns(cols: Vec<Vec<Scalar>>, height: usize) -> Self {
        let width = cols.len();
        let mut m = RationalMatrix::zeros(height, width);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), height, "column of wrong height");
            for (i, v) in col.into_iter().enumerate() {
                *m.entry_mut(i, j) = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.entry(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let r = rhs.entry(k, j);
                    if !r.is_zero() {
                        *out.entry_mut(i, j) += lik * r;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect())
    }

    pub fn scale(&self, c: &Scalar) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        self.add(&rhs.scale(&-Scalar::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// In-place reduced row echelon form. Returns the pivot columns in
    /// order. Pivot choice is the first row with a nonzero entry in the
    /// current column, scanning columns left to right.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) =
                (pivot_row..self.rows).find(|&r| !self.entry(r, col).is_zero())
            else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = {
                let p = self.entry(pivot_row, col).clone();
                Scalar::one() / p
            };
            for j in col..self.cols {
                let v = self.entry(pivot_row, j) * &inv;
                *self.entry_mut(pivot_row, j) = v;
            }
            for r in 0..self.rows {
                if r == pivot_row || self.entry(r, col).is_zero() {
                    continue;
                }
                let factor = self.entry(r, col).clone();
                for j in col..self.cols {
                    let delta = self.entry(pivot_row, j) * &factor;
                    *self.entry_mut(r, j) -= delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.cols {
            self.entries.swap(i * self.cols + col, j * self.cols + col);
        }
    }
}

/// The solution set of `A·x = b`: either empty or an affine subspace
/// described by one particular solution and a basis of the kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AffineSolutionSpace {
    Empty,
    Solutions { particular: Vec<Scalar>, homogeneous_basis: Vec<Vec<Scalar>> },
}

impl AffineSolutionSpace {
    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSolutionSpace::Empty)
    }
}

/// Solve `A·x = b` exactly.
pub fn solve_affine(a: &RationalMatrix, b: &[Scalar]) -> Result<AffineSolutionSpace, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    // Augment with b, reduce, and read the solutions off the echelon form.
    let mut aug = RationalMatrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            *aug.entry_mut(i, j) = a.entry(i, j).clone();
        }
        *aug.entry_mut(i, a.cols()) = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&a.cols()) {
        return Ok(AffineSolutionSpace::Empty);
    }
    let mut particular = vec![Scalar::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug.entry(row, a.cols()).clone();
    }
    let homogeneous_basis = kernel_from_rref(&aug, &pivots, a.cols());
    Ok(AffineSolutionSpace::Solutions { particular, homogeneous_basis })
}

/// A basis for the kernel of `A`.
pub fn kernel_basis(a: &RationalMatrix) -> Vec<Vec<Scalar>> {
    let mut reduced = a.clone();
    let pivots = reduced.rref();
    kernel_from_rref(&reduced, &pivots, a.cols())
}

/// Read a kernel basis off a reduced matrix, considering only the first
/// `cols` columns (lets the same routine serve plain and augmented
/// matrices). One basis vector per free column, with a 1 in the free slot.
fn kernel_from_rref(reduced: &RationalMatrix, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &col) in pivots.iter().enumerate() {
            if col < cols {
                v[col] = -reduced.entry(row, free).clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Outcome of a span-membership test; `coordinates` expresses `v` in the
/// given spanning vectors when membership holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanMembership {
    pub member: bool,
    pub coordinates: Option<Vec<Scalar>>,
}

/// Decide whether `v` lies in the span of `vectors`, with an exact
/// coordinate witness when it does.
pub fn span_membership(vectors: &[Vec<Scalar>], v: &[Scalar]) -> Result<SpanMembership, LinalgError> {
    for w in vectors {
        if w.len() != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: v.len(), found: w.len() });
        }
    }
    let a = RationalMatrix::from_columns(vectors.to_vec(), v.len());
    match solve_affine(&a, v)? {
        AffineSolutionSpace::Empty => Ok(SpanMembership { member: false, coordinates: None }),
        AffineSolutionSpace::Solutions { particular, .. } => {
            Ok(SpanMembership { member: true, coordinates: Some(particular) })
        }
    }
}

/// A canonical basis (reduced echelon rows, zero rows dropped) for the
/// span of the given vectors.
pub fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = RationalMatrix::from_rows(vectors.to_vec());
    let pivots = m.rref();
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

pub fn span_dimension(vectors: &[Vec<Scalar>]) -> usize {
    span_basis(vectors).len()
}

/// A canonical basis for `span(u) ∩ span(v)`.
pub fn span_intersection(u: &[Vec<Scalar>], v: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let dim = u[0].len();
    // A combination Σx_i u_i lies in span(v) exactly when (x, y) is in the
    // kernel of [U | -V] for some y.
    let mut cols: Vec<Vec<Scalar>> = u.to_vec();
    cols.extend(v.iter().map(|w| w.iter().map(|e| -e).collect()));
    let a = RationalMatrix::from_columns(cols, dim);
    let mut members = Vec::new();
    for k in kernel_basis(&a) {
        let mut vec = vec![Scalar::zero(); dim];
        for (i, x) in k[..u.len()].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (slot, e) in vec.iter_mut().zip(&u[i]) {
                *slot += x * e;
            }
        }
        members.push(vec);
    }
    span_basis(&members)
}

/// A canonical basis for the subspace of `span(vectors)` whose listed
/// coordinates all vanish.
pub fn span_vanishing_at(vectors: &[Vec<Scalar>], coords: &[usize]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // Kernel of the (coords × vectors) evaluation matrix gives the
    // combinations that vanish on every listed coordinate.
    let a = RationalMatrix::from_rows(
        coords
            .iter()
            .map(|&c| vectors.iter().map(|w| w[c].clone()).collect())
            .collect(),
    );
    let kernel = if coords.is_empty() {
        RationalMatrix::identity(vectors.len())
            .entries
            .chunks(vectors.len())
            .map(|r| r.to_vec())
            .collect()
    } else {
        kernel_basis(&a)
    };
    let dim = vectors[0].len();
    let mut members = Vec::new();
    for k in kernel {
        let mut vec = vec![Scalar::zero(); dim];
        for (i, x) in k.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (slot, e) in vec.iter_mut().zip(&vectors[i]) {
                *slot += x * e;
            }
        }
        members.push(vec);
    }
    span_basis(&members)
}

/// A fixed list of monomials serving as coordinates, so polynomials can be
/// moved into and out of vector space computations.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    positions: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn from_monomials(monomials: Vec<Monomial>) -> Self {
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex { monomials, positions }
    }

    /// Every word of degree at most `max_degree` over the `2n` generators,
    /// in ascending canonical order.
    pub fn degree_window(n: usize, max_degree: usize) -> Self {
        let alphabet: Vec<GeneratorSymbol> = (1..=n as u32)
            .map(GeneratorSymbol::creation)
            .chain((1..=n as u32).map(GeneratorSymbol::destruction))
            .collect();
        let mut monomials = vec![Monomial::one()];
        let mut layer = vec![Monomial::one()];
        for _ in 0..max_degree {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for word in &layer {
                for &s in &alphabet {
                    next.push(Monomial::from_symbols(
                        word.symbols().iter().copied().chain(std::iter::once(s)),
                    ));
                }
            }
            monomials.extend(next.iter().cloned());
            layer = next;
        }
        monomials.sort_by(|a, b| a.canonical_cmp(b));
        MonomialIndex::from_monomials(monomials)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.positions.get(m).copied()
    }

    /// Coordinates of `p`, or `None` if its support leaves the index.
    pub fn vectorize(&self, p: &Polynomial) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn devectorize(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.monomials[i].clone(), c.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{frac, int};

    fn v(items: &[i64]) -> Vec<Scalar> {
        items.iter().map(|&k| int(k)).collect()
    }

    #[test]
    fn solves_one_by_one() {
        let a = RationalMatrix::from_rows(vec![v(&[1])]);
        match solve_affine(&a, &v(&[2])).unwrap() {
            AffineSolutionSpace::Solutions { particular, homogeneous_basis } => {
                assert_eq!(particular, v(&[2]));
                assert!(homogeneous_basis.is_empty());
            }
            AffineSolutionSpace::Empty => panic!("expected a solution"),
        }
    }

    #[test]
    fn detects_inconsistency() {
        let a = RationalMatrix::from_rows(vec![v(&[0])]);
        assert_eq!(solve_affine(&a, &v(&[1])).unwrap(), AffineSolutionSpace::Empty);
    }

    #[test]
    fn reports_kernel_of_underdetermined_system() {
        let a = RationalMatrix::from_rows(vec![v(&[1, 1])]);
        match solve_affine(&a, &v(&[0])).unwrap() {
            AffineSolutionSpace::Solutions { particular, homogeneous_basis } => {
                assert_eq!(particular, v(&[0, 0]));
                assert_eq!(homogeneous_basis, vec![v(&[-1, 1])]);
            }
            AffineSolutionSpace::Empty => panic!("expected solutions"),
        }
    }

    #[test]
    fn solutions_satisfy_system_exactly() {
        let a = RationalMatrix::from_rows(vec![v(&[2, 4, -2]), v(&[1, 2, 0]), v(&[3, 6, -2])]);
        let b = v(&[2, 3, 5]);
        match solve_affine(&a, &b).unwrap() {
            AffineSolutionSpace::Solutions { particular, homogeneous_basis } => {
                assert_eq!(a.apply(&particular).unwrap(), b);
                for k in &homogeneous_basis {
                    assert!(a.apply(k).unwrap().iter().all(Zero::is_zero));
                }
                assert_eq!(homogeneous_basis.len(), 1);
            }
            AffineSolutionSpace::Empty => panic!("expected solutions"),
        }
    }

    #[test]
    fn membership_with_witness() {
        let result = span_membership(&[v(&[1, 0])], &v(&[2, 0])).unwrap();
        assert!(result.member);
        assert_eq!(result.coordinates, Some(v(&[2])));
        let miss = span_membership(&[v(&[1, 0])], &v(&[0, 1])).unwrap();
        assert!(!miss.member);
        assert_eq!(miss.coordinates, None);
    }

    #[test]
    fn empty_span_contains_only_zero() {
        let result = span_membership(&[], &v(&[0, 0])).unwrap();
        assert!(result.member);
        assert_eq!(result.coordinates, Some(Vec::new()));
        assert!(!span_membership(&[], &v(&[1, 0])).unwrap().member);
    }

    #[test]
    fn rref_normalizes_entries() {
        let mut m = RationalMatrix::from_rows(vec![
            vec![int(2), int(4)],
            vec![int(1), int(3)],
        ]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m, RationalMatrix::identity(2));
    }

    #[test]
    fn fractions_stay_reduced() {
        let mut m = RationalMatrix::from_rows(vec![
            vec![frac(2, 3), frac(4, 9)],
            vec![frac(1, 6), frac(5, 9)],
        ]);
        m.rref();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.entry(i, j);
                assert!(e.denom() > &num_bigint::BigInt::from(0));
                // Scalar::new reduces on construction, so a reduced value
                // round-trips to itself.
                assert_eq!(e, &Scalar::new(e.numer().clone(), e.denom().clone()));
            }
        }
    }

    #[test]
    fn intersection_of_planes() {
        let u = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let w = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let meet = span_intersection(&u, &w);
        assert_eq!(meet, vec![v(&[0, 1, 0])]);
        assert!(span_intersection(&u, &[]).is_empty());
    }

    #[test]
    fn vanishing_slice_of_span() {
        let u = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        // Combinations with coordinate 0 equal to zero: multiples of (0,1,1).
        let sliced = span_vanishing_at(&u, &[0]);
        assert_eq!(sliced, vec![v(&[0, 1, 1])]);
        // No constraint keeps the whole span.
        assert_eq!(span_vanishing_at(&u, &[]).len(), 2);
    }

    #[test]
    fn degree_window_enumerates_all_short_words() {
        let index = MonomialIndex::degree_window(2, 2);
        // 1 + 4 + 16 words of degree 0, 1, 2.
        assert_eq!(index.len(), 21);
        let p = Polynomial::generator(GeneratorSymbol::creation(2))
            .mul(&Polynomial::generator(GeneratorSymbol::destruction(1)))
            .sub(&Polynomial::one());
        let v = index.vectorize(&p).unwrap();
        assert_eq!(index.devectorize(&v), p);
        let too_big = Polynomial::generator(GeneratorSymbol::creation(1))
            .mul(&Polynomial::generator(GeneratorSymbol::creation(1)))
            .mul(&Polynomial::generator(GeneratorSymbol::creation(1)));
        assert!(index.vectorize(&too_big).is_none());
    }

    #[test]
    fn matrix_products_compose() {
        let a = RationalMatrix::from_rows(vec![v(&[1, 2]), v(&[0, 1])]);
        let b = RationalMatrix::from_rows(vec![v(&[1, 0]), v(&[3, 1])]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, RationalMatrix::from_rows(vec![v(&[7, 2]), v(&[3, 1])]));
        assert!(a.sub(&a).unwrap().is_zero());
        assert!(a.mul(&RationalMatrix::zeros(3, 1)).is_err());
    }
}
