//! Decomposition of a quadratic presentation's degree-two span into the
//! four grade slices, and pattern matching of the balanced slice against
//! the catalog of standard forms.
//!
//! Writing `AA_i = a_i·a⁺_i` and `BB_i = a⁺_i·a_i`, the standard forms
//! are shapes such as `{AA_i − λ}` or `{AA_i + β₁BB_i + β₂Σ_{j≠i}BB_j − λ}`,
//! each carrying a handful of exact rational constants. Matching a shape
//! means solving for those constants so that every shape generator lies
//! in the slice, then verifying the spans agree.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::freealg::{frac, int, GeneratorSymbol, Monomial, Polynomial, Scalar};
use crate::linalg::{self, AffineSolutionSpace, MonomialIndex, RationalMatrix};

use super::{NoaError, Presentation};

/// Shape of the square slice `I₂ ∩ span{a_i², a⁺_i²}`: present in full or
/// not at all.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Part20 {
    Full,
    Empty,
}

impl fmt::Display for Part20 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part20::Full => write!(f, "(2,0)"),
            Part20::Empty => write!(f, "empty"),
        }
    }
}

/// Shape of the same-kind pair slice `I₂ ∩ span{a_ia_j, a⁺_ia⁺_j | i≠j}`:
/// all anticommutators, all commutators, every product separately, or
/// nothing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Part11 {
    /// `{a_ia_j + a_ja_i, a⁺_ia⁺_j + a⁺_ja⁺_i | i < j}`
    A,
    /// `{a_ia_j − a_ja_i, a⁺_ia⁺_j − a⁺_ja⁺_i | i < j}`
    B,
    /// every `a_ia_j` and `a⁺_ia⁺_j` with `i ≠ j` separately
    C,
    Empty,
}

impl fmt::Display for Part11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part11::A => write!(f, "(1,1)_a"),
            Part11::B => write!(f, "(1,1)_b"),
            Part11::C => write!(f, "(1,1)_c"),
            Part11::Empty => write!(f, "empty"),
        }
    }
}

/// Shape of the mixed pair slice `I₂ ∩ span{a_ia⁺_j, a⁺_ia_j | i≠j}`:
/// one two-term combination per ordered pair, the full slice, or nothing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Part1m1 {
    /// `{r·a_ia⁺_j + s·a⁺_ja_i | i ≠ j}`, normalized to `r = 1` when
    /// `r ≠ 0` and to `(0, 1)` otherwise.
    A { r: Scalar, s: Scalar },
    /// every `a_ia⁺_j` and `a⁺_ia_j` with `i ≠ j` separately
    B,
    Empty,
}

impl fmt::Display for Part1m1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part1m1::A { r, s } => write!(f, "(1,-1)_a(r={r}, s={s})"),
            Part1m1::B => write!(f, "(1,-1)_b"),
            Part1m1::Empty => write!(f, "empty"),
        }
    }
}

/// A catalog tag for the balanced slice, with its exact constants.
/// `AA_i` abbreviates `a_ia⁺_i` and `BB_i` abbreviates `a⁺_ia_i`;
/// `u` in a tag name reads as set union.
#[derive(Clone, PartialEq, Debug)]
pub enum ZeroFormTag {
    /// `{AA_i − λ | i}`
    A2 { lambda: Scalar },
    /// `{AA_i − λ | i} ∪ {BB_i − BB_1 | i ≥ 2}`
    A2uB1 { lambda: Scalar },
    /// `{AA_i − λ, BB_i − λ | i}` — the same constant on both halves
    A2uB2 { lambda: Scalar },
    /// `{AA_i − λ | i} ∪ {ΣBB_j − μ}`
    A2uD { lambda: Scalar, mu: Scalar },
    /// `{AA_i + β·ΣBB_j − λ | i}`, `β ≠ 0`
    A3 { beta: Scalar, lambda: Scalar },
    /// `{AA_i − AA_1 | i ≥ 2} ∪ {ΣBB_j − μ}`
    A1uD { mu: Scalar },
    /// `{ΣAA_j − λ}`
    C { lambda: Scalar },
    /// `{ΣAA_j − λ, ΣBB_j − μ}`
    CuD { lambda: Scalar, mu: Scalar },
    /// `{AA_i + β₁BB_i + β₂Σ_{j≠i}BB_j − λ | i}`, `β₁ ≠ β₂`,
    /// `β₁ + (n−1)β₂ ≠ 0` (no constraint at n = 1, where β₂ is 0)
    E2 { beta1: Scalar, beta2: Scalar, lambda: Scalar },
    /// `E2` at the degenerate ratio `β₂ = β₁/(1−n)`, `β₁ ≠ 0`
    E2Prime { beta1: Scalar, lambda: Scalar },
    /// `{ΣAA_j − λ, ΣBB_j − μ} ∪ {AA_i + βBB_i − ν | i ≥ 2}`, `β ≠ 0`,
    /// with the symmetry condition `nν = λ + βμ`
    E1uCuD { beta: Scalar, lambda: Scalar, mu: Scalar, nu: Scalar },
    /// `{ΣAA_j + β·ΣBB_j − λ}`, `β ≠ 0`
    F { beta: Scalar, lambda: Scalar },
    /// `{AA_i − AA_1, BB_i − BB_1 | i ≥ 2} ∪ {AA_1 + βBB_1 − λ}`, `β ≠ 0`
    A1uB1uF { beta: Scalar, lambda: Scalar },
    /// `{BB_i − μ | i}`
    B2 { mu: Scalar },
    /// `{AA_i − AA_1 | i ≥ 2} ∪ {BB_i − μ | i}`
    A1uB2 { mu: Scalar },
    /// `{BB_i − μ | i} ∪ {ΣAA_j − λ}`
    B2uC { mu: Scalar, lambda: Scalar },
    /// `{ΣBB_j − μ}`
    D { mu: Scalar },
    /// `{BB_i + α·ΣAA_j − μ | i}`, `α ≠ 0`
    B3 { alpha: Scalar, mu: Scalar },
    /// `{BB_i − BB_1 | i ≥ 2} ∪ {ΣAA_j − λ}`
    B1uC { lambda: Scalar },
    /// mirror of `E2Prime`: `{BB_i + α₁AA_i + (α₁/(1−n))Σ_{j≠i}AA_j − μ}`,
    /// `α₁ ≠ 0`
    E2Second { alpha1: Scalar, mu: Scalar },
    /// window form `{AA_i + βBB_i − λ | i}` (no sums survive in the
    /// window catalog)
    E { beta: Scalar, lambda: Scalar },
    /// window form `{AA_i − AA_1, BB_i − BB_1 | i ≥ 2} ∪ {AA_1 + βBB_1 − λ}`
    A1uB1uE { beta: Scalar, lambda: Scalar },
}

impl fmt::Display for ZeroFormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroFormTag::A2 { lambda } => write!(f, "A2(lambda={lambda})"),
            ZeroFormTag::A2uB1 { lambda } => write!(f, "A2uB1(lambda={lambda})"),
            ZeroFormTag::A2uB2 { lambda } => write!(f, "A2uB2(lambda={lambda})"),
            ZeroFormTag::A2uD { lambda, mu } => write!(f, "A2uD(lambda={lambda}, mu={mu})"),
            ZeroFormTag::A3 { beta, lambda } => write!(f, "A3(beta={beta}, lambda={lambda})"),
            ZeroFormTag::A1uD { mu } => write!(f, "A1uD(mu={mu})"),
            ZeroFormTag::C { lambda } => write!(f, "C(lambda={lambda})"),
            ZeroFormTag::CuD { lambda, mu } => write!(f, "CuD(lambda={lambda}, mu={mu})"),
            ZeroFormTag::E2 { beta1, beta2, lambda } => {
                write!(f, "E2(beta1={beta1}, beta2={beta2}, lambda={lambda})")
            }
            ZeroFormTag::E2Prime { beta1, lambda } => {
                write!(f, "E2'(beta1={beta1}, lambda={lambda})")
            }
            ZeroFormTag::E1uCuD { beta, lambda, mu, nu } => {
                write!(f, "E1uCuD(beta={beta}, lambda={lambda}, mu={mu}, nu={nu})")
            }
            ZeroFormTag::F { beta, lambda } => write!(f, "F(beta={beta}, lambda={lambda})"),
            ZeroFormTag::A1uB1uF { beta, lambda } => {
                write!(f, "A1uB1uF(beta={beta}, lambda={lambda})")
            }
            ZeroFormTag::B2 { mu } => write!(f, "B2(mu={mu})"),
            ZeroFormTag::A1uB2 { mu } => write!(f, "A1uB2(mu={mu})"),
            ZeroFormTag::B2uC { mu, lambda } => write!(f, "B2uC(mu={mu}, lambda={lambda})"),
            ZeroFormTag::D { mu } => write!(f, "D(mu={mu})"),
            ZeroFormTag::B3 { alpha, mu } => write!(f, "B3(alpha={alpha}, mu={mu})"),
            ZeroFormTag::B1uC { lambda } => write!(f, "B1uC(lambda={lambda})"),
            ZeroFormTag::E2Second { alpha1, mu } => {
                write!(f, "E2''(alpha1={alpha1}, mu={mu})")
            }
            ZeroFormTag::E { beta, lambda } => write!(f, "E(beta={beta}, lambda={lambda})"),
            ZeroFormTag::A1uB1uE { beta, lambda } => {
                write!(f, "A1uB1uE(beta={beta}, lambda={lambda})")
            }
        }
    }
}

/// The slice-by-slice label of a quadratic presentation. The balanced
/// slice may match several catalog tags; the first entry is the primary
/// one, in catalog order.
#[derive(Clone, PartialEq, Debug)]
pub struct StandardFormLabel {
    pub part_20: Part20,
    pub part_11: Part11,
    pub part_1m1: Part1m1,
    pub part_00: Vec<ZeroFormTag>,
}

impl fmt::Display for StandardFormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.part_00.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "(2,0): {} | (1,1): {} | (1,-1): {} | (0,0): {}",
            self.part_20,
            self.part_11,
            self.part_1m1,
            tags.join(", ")
        )
    }
}

/// Label a quadratic presentation against the finite-window catalog.
pub fn standard_form(p: &Presentation) -> Result<StandardFormLabel, NoaError> {
    standard_form_with(p, false)
}

/// Label a quadratic presentation; with `window_mode` the balanced slice
/// is matched against the window catalog instead, whose sum forms are
/// suppressed.
pub fn standard_form_with(
    p: &Presentation,
    window_mode: bool,
) -> Result<StandardFormLabel, NoaError> {
    if p.max_degree() > 2 {
        return Err(NoaError::NotQuadratic);
    }
    let n = p.n;
    let index = MonomialIndex::degree_window(n, 2);
    let vectors: Vec<Vec<Scalar>> = p
        .generators
        .iter()
        .map(|g| index.vectorize(g).expect("degree checked quadratic"))
        .collect();

    let slice_20 = slice(&vectors, &index, &square_monomials(n));
    let slice_11 = slice(&vectors, &index, &same_kind_monomials(n));
    let slice_1m1 = slice(&vectors, &index, &mixed_monomials(n));
    let slice_00 = slice(&vectors, &index, &balanced_monomials(n));

    let total = linalg::span_dimension(&vectors);
    let covered = slice_20.len() + slice_11.len() + slice_1m1.len() + slice_00.len();
    if total != covered {
        return Err(NoaError::NotStandardizable {
            detail: format!(
                "the generator span has dimension {total} but decomposes into slices of total dimension {covered}"
            ),
        });
    }

    let part_20 = match_part_20(&slice_20, n)?;
    let part_11 = match_part_11(&slice_11, n, &index)?;
    let part_1m1 = match_part_1m1(&slice_1m1, n, &index)?;
    let part_00 = match_part_00(&slice_00, n, &index, window_mode)?;
    Ok(StandardFormLabel { part_20, part_11, part_1m1, part_00 })
}

fn d(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::destruction(i as u32)
}

fn c(i: usize) -> GeneratorSymbol {
    GeneratorSymbol::creation(i as u32)
}

fn pair(x: GeneratorSymbol, y: GeneratorSymbol) -> Monomial {
    Monomial::from_symbols([x, y])
}

fn square_monomials(n: usize) -> Vec<Monomial> {
    (1..=n).flat_map(|i| [pair(d(i), d(i)), pair(c(i), c(i))]).collect()
}

fn same_kind_monomials(n: usize) -> Vec<Monomial> {
    ordered_pairs(n)
        .flat_map(|(i, j)| [pair(d(i), d(j)), pair(c(i), c(j))])
        .collect()
}

fn mixed_monomials(n: usize) -> Vec<Monomial> {
    ordered_pairs(n)
        .flat_map(|(i, j)| [pair(d(i), c(j)), pair(c(i), d(j))])
        .collect()
}

fn balanced_monomials(n: usize) -> Vec<Monomial> {
    (1..=n)
        .flat_map(|i| [pair(d(i), c(i)), pair(c(i), d(i))])
        .chain([Monomial::one()])
        .collect()
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// The part of `span(vectors)` supported on the given monomials.
fn slice(vectors: &[Vec<Scalar>], index: &MonomialIndex, support: &[Monomial]) -> Vec<Vec<Scalar>> {
    let inside: HashSet<usize> = support
        .iter()
        .map(|m| index.position(m).expect("support lies in the window"))
        .collect();
    let complement: Vec<usize> = (0..index.len()).filter(|k| !inside.contains(k)).collect();
    linalg::span_vanishing_at(vectors, &complement)
}

fn in_span(slice: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    linalg::span_membership(slice, v).map(|r| r.member).unwrap_or(false)
}

fn match_part_20(slice: &[Vec<Scalar>], n: usize) -> Result<Part20, NoaError> {
    match slice.len() {
        0 => Ok(Part20::Empty),
        dim if dim == 2 * n => Ok(Part20::Full),
        dim => Err(NoaError::NotStandardizable {
            detail: format!("the square slice has dimension {dim}, expected 0 or {}", 2 * n),
        }),
    }
}

fn match_part_11(
    slice: &[Vec<Scalar>],
    n: usize,
    index: &MonomialIndex,
) -> Result<Part11, NoaError> {
    let dim = slice.len();
    if dim == 0 {
        return Ok(Part11::Empty);
    }
    if dim == 2 * n * (n - 1) {
        return Ok(Part11::C);
    }
    if dim == n * (n - 1) {
        for sign in [1i64, -1] {
            let matched = (1..=n).all(|i| {
                (i + 1..=n).all(|j| {
                    [(d(i), d(j)), (c(i), c(j))].into_iter().all(|(x, y)| {
                        let mut v = vec![Scalar::zero(); index.len()];
                        v[index.position(&pair(x, y)).unwrap()] = Scalar::one();
                        v[index.position(&pair(y, x)).unwrap()] = int(sign);
                        in_span(slice, &v)
                    })
                })
            });
            if matched {
                return Ok(if sign == 1 { Part11::A } else { Part11::B });
            }
        }
    }
    Err(NoaError::NotStandardizable {
        detail: format!("the same-kind pair slice of dimension {dim} matches no catalog shape"),
    })
}

fn match_part_1m1(
    slice: &[Vec<Scalar>],
    n: usize,
    index: &MonomialIndex,
) -> Result<Part1m1, NoaError> {
    let dim = slice.len();
    if dim == 0 {
        return Ok(Part1m1::Empty);
    }
    if dim == 2 * n * (n - 1) {
        return Ok(Part1m1::B);
    }
    if dim == n * (n - 1) {
        // Read the (r, s) ratio off the ordered pair (1, 2), then verify
        // the whole slice is built from that ratio.
        let p1 = index.position(&pair(d(1), c(2))).unwrap();
        let p2 = index.position(&pair(c(2), d(1))).unwrap();
        let complement: Vec<usize> =
            (0..index.len()).filter(|&k| k != p1 && k != p2).collect();
        let pair_space = linalg::span_vanishing_at(slice, &complement);
        if pair_space.len() == 1 {
            let (r, s) = normalize_ratio(pair_space[0][p1].clone(), pair_space[0][p2].clone());
            let matched = ordered_pairs(n).all(|(i, j)| {
                let mut v = vec![Scalar::zero(); index.len()];
                v[index.position(&pair(d(i), c(j))).unwrap()] = r.clone();
                v[index.position(&pair(c(j), d(i))).unwrap()] = s.clone();
                in_span(slice, &v)
            });
            if matched {
                return Ok(Part1m1::A { r, s });
            }
        }
    }
    Err(NoaError::NotStandardizable {
        detail: format!("the mixed pair slice of dimension {dim} matches no catalog shape"),
    })
}

fn normalize_ratio(r: Scalar, s: Scalar) -> (Scalar, Scalar) {
    if r.is_zero() {
        (Scalar::zero(), Scalar::one())
    } else {
        (Scalar::one(), s / r)
    }
}

// --- balanced-slice catalog -------------------------------------------------
//
// The balanced slice lives on the reduced coordinates
// `AA_1, .., AA_n, BB_1, .., BB_n, 1` (in that order). Each catalog shape
// is a list of generators that are affine in the shape's parameters, so
// matching reduces to an exact affine solve followed by a span check.

fn match_part_00(
    slice: &[Vec<Scalar>],
    n: usize,
    index: &MonomialIndex,
    window_mode: bool,
) -> Result<Vec<ZeroFormTag>, NoaError> {
    if slice.is_empty() {
        return Err(NoaError::NotStandardizable {
            detail: "the balanced slice is empty".to_string(),
        });
    }
    let coords: Vec<usize> = (1..=n)
        .map(|i| index.position(&pair(d(i), c(i))).unwrap())
        .chain((1..=n).map(|i| index.position(&pair(c(i), d(i))).unwrap()))
        .chain([index.position(&Monomial::one()).unwrap()])
        .collect();
    let rows: Vec<Vec<Scalar>> = slice
        .iter()
        .map(|v| coords.iter().map(|&k| v[k].clone()).collect())
        .collect();
    let basis = linalg::span_basis(&rows);

    type Tagger = fn(&[Vec<Scalar>], usize) -> Option<ZeroFormTag>;
    let catalog: &[Tagger] = if window_mode {
        &[tag_a2, tag_a2_b1, tag_a2_b2, tag_window_e, tag_window_a1b1e, tag_b2, tag_a1_b2]
    } else {
        &[
            tag_a2, tag_a2_b1, tag_a2_b2, tag_a2_d, tag_a3, tag_a1_d, tag_c, tag_c_d, tag_e2,
            tag_e2_prime, tag_e1_c_d, tag_f, tag_a1_b1_f, tag_b2, tag_a1_b2, tag_b2_c, tag_d,
            tag_b3, tag_b1_c, tag_e2_second,
        ]
    };
    let tags: Vec<ZeroFormTag> = catalog.iter().filter_map(|t| t(&basis, n)).collect();
    if tags.is_empty() {
        let shown: Vec<String> =
            basis.iter().map(|v| reduced_polynomial(v, n).to_string()).collect();
        return Err(NoaError::NotStandardizable {
            detail: format!(
                "the balanced slice matches no catalog form; its basis is [{}]",
                shown.join(", ")
            ),
        });
    }
    Ok(tags)
}

/// Rebuild a balanced-slice vector as a polynomial, for error reporting.
fn reduced_polynomial(v: &[Scalar], n: usize) -> Polynomial {
    let mut terms = Vec::new();
    for i in 1..=n {
        terms.push((pair(d(i), c(i)), v[aa(i)].clone()));
        terms.push((pair(c(i), d(i)), v[bb(n, i)].clone()));
    }
    terms.push((Monomial::one(), v[konst(n)].clone()));
    Polynomial::from_terms(terms)
}

fn aa(i: usize) -> usize {
    i - 1
}

fn bb(n: usize, i: usize) -> usize {
    n + i - 1
}

fn konst(n: usize) -> usize {
    2 * n
}

fn zv(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); 2 * n + 1]
}

/// A vector with the given `(slot, integer value)` entries set.
fn ev(n: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = zv(n);
    for &(slot, value) in entries {
        v[slot] = int(value);
    }
    v
}

fn sum_aa(n: usize) -> Vec<Scalar> {
    let mut v = zv(n);
    for i in 1..=n {
        v[aa(i)] = Scalar::one();
    }
    v
}

fn sum_bb(n: usize) -> Vec<Scalar> {
    let mut v = zv(n);
    for i in 1..=n {
        v[bb(n, i)] = Scalar::one();
    }
    v
}

fn neg_const(n: usize) -> Vec<Scalar> {
    ev(n, &[(konst(n), -1)])
}

/// One shape generator: a fixed base vector plus one direction vector per
/// shape parameter.
struct ShapeRow {
    base: Vec<Scalar>,
    directions: Vec<Vec<Scalar>>,
}

/// Solve for parameters putting every shape generator inside the span of
/// `basis` (reduced echelon rows), and verify that the concrete
/// generators then span the same space. Returns the parameter values.
fn shape_match(basis: &[Vec<Scalar>], rows: &[ShapeRow]) -> Option<Vec<Scalar>> {
    if basis.len() != rows.len() {
        return None;
    }
    let width = basis[0].len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|e| !e.is_zero()).expect("basis rows are nonzero"))
        .collect();
    // Residual of v against the echelon basis; zero exactly on members.
    let residual = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in basis.iter().zip(&pivots) {
            let factor = out[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (slot, e) in out.iter_mut().zip(row.iter()) {
                *slot -= &factor * e;
            }
        }
        out
    };
    let param_count = rows[0].directions.len();
    let mut mat = Vec::new();
    let mut rhs = Vec::new();
    for row in rows {
        debug_assert_eq!(row.directions.len(), param_count);
        let rb = residual(&row.base);
        let rds: Vec<Vec<Scalar>> = row.directions.iter().map(|dir| residual(dir)).collect();
        for k in 0..width {
            if rb[k].is_zero() && rds.iter().all(|dir| dir[k].is_zero()) {
                continue;
            }
            mat.push(rds.iter().map(|dir| dir[k].clone()).collect());
            rhs.push(-rb[k].clone());
        }
    }
    let theta = if mat.is_empty() {
        vec![Scalar::zero(); param_count]
    } else {
        match linalg::solve_affine(&RationalMatrix::from_rows(mat), &rhs).ok()? {
            AffineSolutionSpace::Empty => return None,
            AffineSolutionSpace::Solutions { particular, .. } => particular,
        }
    };
    let concrete: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| {
            let mut v = row.base.clone();
            for (coeff, dir) in theta.iter().zip(&row.directions) {
                if coeff.is_zero() {
                    continue;
                }
                for (slot, e) in v.iter_mut().zip(dir) {
                    *slot += coeff * e;
                }
            }
            v
        })
        .collect();
    if linalg::span_dimension(&concrete) != rows.len() {
        return None;
    }
    Some(theta)
}

fn tag_a2(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow { base: ev(n, &[(aa(i), 1)]), directions: vec![neg_const(n)] })
        .collect();
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A2 { lambda: theta[0].clone() })
}

fn tag_b2(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow { base: ev(n, &[(bb(n, i), 1)]), directions: vec![neg_const(n)] })
        .collect();
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::B2 { mu: theta[0].clone() })
}

fn tag_a2_b1(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow { base: ev(n, &[(aa(i), 1)]), directions: vec![neg_const(n)] })
        .collect();
    rows.extend((2..=n).map(|i| ShapeRow {
        base: ev(n, &[(bb(n, i), 1), (bb(n, 1), -1)]),
        directions: vec![zv(n)],
    }));
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A2uB1 { lambda: theta[0].clone() })
}

fn tag_a1_b2(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (2..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1), (aa(1), -1)]),
            directions: vec![zv(n)],
        })
        .collect();
    rows.extend((1..=n).map(|i| ShapeRow {
        base: ev(n, &[(bb(n, i), 1)]),
        directions: vec![neg_const(n)],
    }));
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A1uB2 { mu: theta[0].clone() })
}

fn tag_a2_b2(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow { base: ev(n, &[(aa(i), 1)]), directions: vec![neg_const(n)] })
        .chain((1..=n).map(|i| ShapeRow {
            base: ev(n, &[(bb(n, i), 1)]),
            directions: vec![neg_const(n)],
        }))
        .collect();
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A2uB2 { lambda: theta[0].clone() })
}

fn tag_a2_d(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1)]),
            directions: vec![neg_const(n), zv(n)],
        })
        .collect();
    rows.push(ShapeRow { base: sum_bb(n), directions: vec![zv(n), neg_const(n)] });
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A2uD { lambda: theta[0].clone(), mu: theta[1].clone() })
}

fn tag_b2_c(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(bb(n, i), 1)]),
            directions: vec![neg_const(n), zv(n)],
        })
        .collect();
    rows.push(ShapeRow { base: sum_aa(n), directions: vec![zv(n), neg_const(n)] });
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::B2uC { mu: theta[0].clone(), lambda: theta[1].clone() })
}

fn tag_a3(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1)]),
            directions: vec![sum_bb(n), neg_const(n)],
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::A3 { beta: theta[0].clone(), lambda: theta[1].clone() })
}

fn tag_b3(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(bb(n, i), 1)]),
            directions: vec![sum_aa(n), neg_const(n)],
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::B3 { alpha: theta[0].clone(), mu: theta[1].clone() })
}

fn tag_a1_d(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (2..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1), (aa(1), -1)]),
            directions: vec![zv(n)],
        })
        .collect();
    rows.push(ShapeRow { base: sum_bb(n), directions: vec![neg_const(n)] });
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::A1uD { mu: theta[0].clone() })
}

fn tag_b1_c(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows: Vec<ShapeRow> = (2..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(bb(n, i), 1), (bb(n, 1), -1)]),
            directions: vec![zv(n)],
        })
        .collect();
    rows.push(ShapeRow { base: sum_aa(n), directions: vec![neg_const(n)] });
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::B1uC { lambda: theta[0].clone() })
}

fn tag_c(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let rows = vec![ShapeRow { base: sum_aa(n), directions: vec![neg_const(n)] }];
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::C { lambda: theta[0].clone() })
}

fn tag_d(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let rows = vec![ShapeRow { base: sum_bb(n), directions: vec![neg_const(n)] }];
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::D { mu: theta[0].clone() })
}

fn tag_c_d(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let rows = vec![
        ShapeRow { base: sum_aa(n), directions: vec![neg_const(n), zv(n)] },
        ShapeRow { base: sum_bb(n), directions: vec![zv(n), neg_const(n)] },
    ];
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::CuD { lambda: theta[0].clone(), mu: theta[1].clone() })
}

fn tag_e2(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| {
            let mut off_diagonal = sum_bb(n);
            off_diagonal[bb(n, i)] = Scalar::zero();
            ShapeRow {
                base: ev(n, &[(aa(i), 1)]),
                directions: vec![ev(n, &[(bb(n, i), 1)]), off_diagonal, neg_const(n)],
            }
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    if n >= 2 {
        let (beta1, beta2) = (&theta[0], &theta[1]);
        if beta1 == beta2 {
            return None;
        }
        if (beta1 + int(n as i64 - 1) * beta2).is_zero() {
            return None;
        }
    }
    Some(ZeroFormTag::E2 {
        beta1: theta[0].clone(),
        beta2: theta[1].clone(),
        lambda: theta[2].clone(),
    })
}

fn tag_e2_prime(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let off_ratio = frac(1, 1 - n as i64);
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| {
            let mut dir = zv(n);
            for j in 1..=n {
                dir[bb(n, j)] = if j == i { Scalar::one() } else { off_ratio.clone() };
            }
            ShapeRow { base: ev(n, &[(aa(i), 1)]), directions: vec![dir, neg_const(n)] }
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::E2Prime { beta1: theta[0].clone(), lambda: theta[1].clone() })
}

fn tag_e2_second(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let off_ratio = frac(1, 1 - n as i64);
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| {
            let mut dir = zv(n);
            for j in 1..=n {
                dir[aa(j)] = if j == i { Scalar::one() } else { off_ratio.clone() };
            }
            ShapeRow { base: ev(n, &[(bb(n, i), 1)]), directions: vec![dir, neg_const(n)] }
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::E2Second { alpha1: theta[0].clone(), mu: theta[1].clone() })
}

fn tag_e1_c_d(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let mut rows = vec![
        ShapeRow { base: sum_aa(n), directions: vec![zv(n), neg_const(n), zv(n), zv(n)] },
        ShapeRow { base: sum_bb(n), directions: vec![zv(n), zv(n), neg_const(n), zv(n)] },
    ];
    rows.extend((2..=n).map(|i| ShapeRow {
        base: ev(n, &[(aa(i), 1)]),
        directions: vec![ev(n, &[(bb(n, i), 1)]), zv(n), zv(n), neg_const(n)],
    }));
    let theta = shape_match(basis, &rows)?;
    let (beta, lambda, mu, nu) = (&theta[0], &theta[1], &theta[2], &theta[3]);
    if beta.is_zero() {
        return None;
    }
    // Symmetry across the indices forces the diagonal constant.
    if int(n as i64) * nu != lambda + beta * mu {
        return None;
    }
    Some(ZeroFormTag::E1uCuD {
        beta: theta[0].clone(),
        lambda: theta[1].clone(),
        mu: theta[2].clone(),
        nu: theta[3].clone(),
    })
}

fn tag_f(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let rows = vec![ShapeRow { base: sum_aa(n), directions: vec![sum_bb(n), neg_const(n)] }];
    let theta = shape_match(basis, &rows)?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::F { beta: theta[0].clone(), lambda: theta[1].clone() })
}

fn a1_b1_diagonal_rows(n: usize) -> Vec<ShapeRow> {
    let mut rows: Vec<ShapeRow> = (2..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1), (aa(1), -1)]),
            directions: vec![zv(n), zv(n)],
        })
        .collect();
    rows.extend((2..=n).map(|i| ShapeRow {
        base: ev(n, &[(bb(n, i), 1), (bb(n, 1), -1)]),
        directions: vec![zv(n), zv(n)],
    }));
    rows.push(ShapeRow {
        base: ev(n, &[(aa(1), 1)]),
        directions: vec![ev(n, &[(bb(n, 1), 1)]), neg_const(n)],
    });
    rows
}

fn tag_a1_b1_f(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let theta = shape_match(basis, &a1_b1_diagonal_rows(n))?;
    if theta[0].is_zero() {
        return None;
    }
    Some(ZeroFormTag::A1uB1uF { beta: theta[0].clone(), lambda: theta[1].clone() })
}

fn tag_window_e(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    let rows: Vec<ShapeRow> = (1..=n)
        .map(|i| ShapeRow {
            base: ev(n, &[(aa(i), 1)]),
            directions: vec![ev(n, &[(bb(n, i), 1)]), neg_const(n)],
        })
        .collect();
    let theta = shape_match(basis, &rows)?;
    Some(ZeroFormTag::E { beta: theta[0].clone(), lambda: theta[1].clone() })
}

fn tag_window_a1b1e(basis: &[Vec<Scalar>], n: usize) -> Option<ZeroFormTag> {
    if n < 2 {
        return None;
    }
    let theta = shape_match(basis, &a1_b1_diagonal_rows(n))?;
    Some(ZeroFormTag::A1uB1uE { beta: theta[0].clone(), lambda: theta[1].clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noa::{preset, Family};

    fn dd(i: u32) -> Polynomial {
        Polynomial::generator(GeneratorSymbol::destruction(i))
    }

    fn cc(i: u32) -> Polynomial {
        Polynomial::generator(GeneratorSymbol::creation(i))
    }

    fn aabb(i: u32) -> (Polynomial, Polynomial) {
        (dd(i).mul(&cc(i)), cc(i).mul(&dd(i)))
    }

    #[test]
    fn fermion_label_has_anticommutator_slices() {
        let p = preset(Family::Fermion, 2, &int(1)).unwrap().presentation;
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Full);
        assert_eq!(label.part_11, Part11::A);
        assert_eq!(label.part_1m1, Part1m1::A { r: int(1), s: int(1) });
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::E2 { beta1: int(1), beta2: int(0), lambda: int(1) }]
        );
    }

    #[test]
    fn boson_label_has_commutator_slices() {
        let p = preset(Family::Boson, 2, &int(1)).unwrap().presentation;
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Empty);
        assert_eq!(label.part_11, Part11::B);
        assert_eq!(label.part_1m1, Part1m1::A { r: int(1), s: int(-1) });
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::E2 { beta1: int(-1), beta2: int(0), lambda: int(1) }]
        );
    }

    #[test]
    fn diagonal_products_give_the_a2_tag() {
        let (aa1, _) = aabb(1);
        let (aa2, _) = aabb(2);
        let p = Presentation::new(
            2,
            vec![aa1.sub(&Polynomial::one()), aa2.sub(&Polynomial::one())],
        );
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Empty);
        assert_eq!(label.part_11, Part11::Empty);
        assert_eq!(label.part_1m1, Part1m1::Empty);
        assert_eq!(label.part_00, vec![ZeroFormTag::A2 { lambda: int(1) }]);
    }

    #[test]
    fn matrix_label_carries_the_a3_tag() {
        let p = preset(Family::Matrix, 2, &int(1)).unwrap().presentation;
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Full);
        assert_eq!(label.part_11, Part11::C);
        assert_eq!(label.part_1m1, Part1m1::A { r: int(1), s: int(0) });
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::A3 { beta: int(1), lambda: int(1) }]
        );
    }

    #[test]
    fn matrix_dual_label_mirrors_matrix() {
        let p = preset(Family::MatrixDual, 2, &int(1)).unwrap().presentation;
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Full);
        assert_eq!(label.part_11, Part11::C);
        assert_eq!(label.part_1m1, Part1m1::A { r: int(0), s: int(1) });
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::B3 { alpha: int(1), mu: int(1) }]
        );
    }

    #[test]
    fn same_constant_couples_the_a2_b2_union() {
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let shared = Presentation::new(
            2,
            vec![
                aa1.sub(&Polynomial::one()),
                aa2.sub(&Polynomial::one()),
                bb1.sub(&Polynomial::one()),
                bb2.sub(&Polynomial::one()),
            ],
        );
        let label = standard_form(&shared).unwrap();
        assert_eq!(label.part_00, vec![ZeroFormTag::A2uB2 { lambda: int(1) }]);

        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let differing = Presentation::new(
            2,
            vec![
                aa1.sub(&Polynomial::one()),
                aa2.sub(&Polynomial::one()),
                bb1.sub(&Polynomial::constant(int(2))),
                bb2.sub(&Polynomial::constant(int(2))),
            ],
        );
        assert!(matches!(
            standard_form(&differing),
            Err(NoaError::NotStandardizable { .. })
        ));
    }

    #[test]
    fn sum_relations_give_the_c_d_tags() {
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let p = Presentation::new(
            2,
            vec![
                aa1.add(&aa2).sub(&Polynomial::constant(int(3))),
                bb1.add(&bb2).sub(&Polynomial::constant(int(5))),
            ],
        );
        let label = standard_form(&p).unwrap();
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::CuD { lambda: int(3), mu: int(5) }]
        );
    }

    #[test]
    fn diagonal_mixture_gives_the_shared_ratio_tag() {
        // AA_i + 2·BB_i − 3 for both indices.
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let p = Presentation::new(
            2,
            vec![
                aa1.add(&bb1.scale(&int(2))).sub(&Polynomial::constant(int(3))),
                aa2.add(&bb2.scale(&int(2))).sub(&Polynomial::constant(int(3))),
            ],
        );
        let finite = standard_form(&p).unwrap();
        assert_eq!(
            finite.part_00,
            vec![ZeroFormTag::E2 { beta1: int(2), beta2: int(0), lambda: int(3) }]
        );
        let windowed = standard_form_with(&p, true).unwrap();
        assert_eq!(
            windowed.part_00,
            vec![ZeroFormTag::E { beta: int(2), lambda: int(3) }]
        );
    }

    #[test]
    fn window_mode_reports_both_a2_and_the_e_family() {
        let (aa1, _) = aabb(1);
        let (aa2, _) = aabb(2);
        let p = Presentation::new(
            2,
            vec![aa1.sub(&Polynomial::one()), aa2.sub(&Polynomial::one())],
        );
        let label = standard_form_with(&p, true).unwrap();
        assert_eq!(
            label.part_00,
            vec![
                ZeroFormTag::A2 { lambda: int(1) },
                ZeroFormTag::E { beta: int(0), lambda: int(1) },
            ]
        );
    }

    #[test]
    fn difference_relations_give_the_union_with_f() {
        // AA_2 − AA_1, BB_2 − BB_1, AA_1 + BB_1 − 1.
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let p = Presentation::new(
            2,
            vec![
                aa2.sub(&aa1),
                bb2.sub(&bb1),
                aa1.add(&bb1).sub(&Polynomial::one()),
            ],
        );
        let finite = standard_form(&p).unwrap();
        assert_eq!(
            finite.part_00,
            vec![ZeroFormTag::A1uB1uF { beta: int(1), lambda: int(1) }]
        );
        let windowed = standard_form_with(&p, true).unwrap();
        assert_eq!(
            windowed.part_00,
            vec![ZeroFormTag::A1uB1uE { beta: int(1), lambda: int(1) }]
        );
    }

    #[test]
    fn sum_plus_diagonal_relations_match_the_three_part_union() {
        // ΣAA − 3, ΣBB − 1, AA_2 + BB_2 − 2 (the diagonal constant is
        // (3 + 1·1)/2 = 2, as symmetry requires).
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let p = Presentation::new(
            2,
            vec![
                aa1.add(&aa2).sub(&Polynomial::constant(int(3))),
                bb1.add(&bb2).sub(&Polynomial::one()),
                aa2.add(&bb2).sub(&Polynomial::constant(int(2))),
            ],
        );
        let label = standard_form(&p).unwrap();
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::E1uCuD { beta: int(1), lambda: int(3), mu: int(1), nu: int(2) }]
        );
    }

    #[test]
    fn degenerate_off_diagonal_ratio_matches_the_prime_form() {
        // n = 2: AA_i + 2·BB_i − 2·BB_j − 5, the β₂ = −β₁ degeneracy.
        let (aa1, bb1) = aabb(1);
        let (aa2, bb2) = aabb(2);
        let five = Polynomial::constant(int(5));
        let p = Presentation::new(
            2,
            vec![
                aa1.add(&bb1.scale(&int(2))).sub(&bb2.scale(&int(2))).sub(&five),
                aa2.add(&bb2.scale(&int(2))).sub(&bb1.scale(&int(2))).sub(&five),
            ],
        );
        let label = standard_form(&p).unwrap();
        assert_eq!(
            label.part_00,
            vec![ZeroFormTag::E2Prime { beta1: int(2), lambda: int(5) }]
        );
    }

    #[test]
    fn lone_square_is_not_standardizable() {
        let p = Presentation::new(2, vec![dd(1).mul(&dd(1))]);
        assert!(matches!(
            standard_form(&p),
            Err(NoaError::NotStandardizable { .. })
        ));
    }

    #[test]
    fn cross_slice_generator_fails_the_decomposition_check() {
        let mixed = dd(1).mul(&dd(2)).add(&dd(1).mul(&cc(1)));
        let p = Presentation::new(2, vec![mixed]);
        assert!(matches!(
            standard_form(&p),
            Err(NoaError::NotStandardizable { .. })
        ));
    }

    #[test]
    fn cubic_input_is_rejected() {
        let p = Presentation::new(1, vec![dd(1).mul(&dd(1)).mul(&dd(1))]);
        assert_eq!(standard_form(&p).unwrap_err(), NoaError::NotQuadratic);
    }

    #[test]
    fn single_index_weyl_matches_the_e2_family() {
        // At n = 1 the catalog degenerates and several tags cover the
        // same one-dimensional slice; the E2 reading must be among them.
        let (aa1, bb1) = aabb(1);
        let p = Presentation::new(1, vec![aa1.sub(&bb1).sub(&Polynomial::one())]);
        let label = standard_form(&p).unwrap();
        assert_eq!(label.part_20, Part20::Empty);
        assert!(label
            .part_00
            .contains(&ZeroFormTag::E2 { beta1: int(-1), beta2: int(0), lambda: int(1) }));
        assert!(label
            .part_00
            .contains(&ZeroFormTag::A3 { beta: int(-1), lambda: int(1) }));
    }
}
