//! Recognition of the eight built-in families from a presentation's
//! standard-form label: each family leaves a distinctive fingerprint
//! across the four balanced slices, with the family constant recoverable
//! from the diagonal tag.

use std::fmt;

use num_traits::Zero;

use crate::freealg::{int, Scalar};

use super::standard_form::{standard_form, Part11, Part1m1, Part20, StandardFormLabel, ZeroFormTag};
use super::Presentation;

/// Verdict of `classify`: one of the built-in families with its constant
/// recovered, or `Unknown` when no fingerprint matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationLabel {
    Fermion(Scalar),
    PseudoFermion(Scalar),
    Boson(Scalar),
    PseudoBoson(Scalar),
    Matrix(Scalar),
    MatrixDual(Scalar),
    QBoson(Scalar),
    PseudoQBoson(Scalar),
    Unknown,
}

impl fmt::Display for ClassificationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationLabel::Fermion(h) => write!(f, "fermion(h={h})"),
            ClassificationLabel::PseudoFermion(h) => write!(f, "pseudo_fermion(h={h})"),
            ClassificationLabel::Boson(h) => write!(f, "boson(h={h})"),
            ClassificationLabel::PseudoBoson(h) => write!(f, "pseudo_boson(h={h})"),
            ClassificationLabel::Matrix(h) => write!(f, "matrix(h={h})"),
            ClassificationLabel::MatrixDual(h) => write!(f, "matrix_dual(h={h})"),
            ClassificationLabel::QBoson(q) => write!(f, "qboson(q={q})"),
            ClassificationLabel::PseudoQBoson(q) => write!(f, "pseudo_qboson(q={q})"),
            ClassificationLabel::Unknown => write!(f, "unknown"),
        }
    }
}

/// Match a presentation against the families. Classification never
/// fails: anything outside the recognizable territory (wrong degree,
/// ungradeable, unmatched slices, degenerate constants) is `Unknown`.
pub fn classify(p: &Presentation) -> ClassificationLabel {
    match standard_form(p) {
        Ok(label) => fingerprint(&label, p.n),
        Err(_) => ClassificationLabel::Unknown,
    }
}

fn fingerprint(label: &StandardFormLabel, n: usize) -> ClassificationLabel {
    let full = label.part_20 == Part20::Full;
    let empty = label.part_20 == Part20::Empty;
    // At a single index there are no distinct pairs, so the pair slices
    // are vacuously empty and carry no evidence either way.
    let same_kind = |want: Part11| {
        label.part_11 == want || (n == 1 && label.part_11 == Part11::Empty)
    };
    let mixed = |want_r: i64, want_s: i64| match &label.part_1m1 {
        Part1m1::A { r, s } => *r == int(want_r) && *s == int(want_s),
        Part1m1::Empty => n == 1,
        _ => false,
    };

    // Diagonal tags with the constant they carry. The q-families read
    // their parameter off the diagonal ratio instead.
    let e2_diagonal = |beta1_want: i64| {
        label.part_00.iter().find_map(|t| match t {
            ZeroFormTag::E2 { beta1, beta2, lambda }
                if *beta1 == int(beta1_want) && beta2.is_zero() && !lambda.is_zero() =>
            {
                Some(lambda.clone())
            }
            _ => None,
        })
    };
    let e2_deformed = || {
        label.part_00.iter().find_map(|t| match t {
            ZeroFormTag::E2 { beta1, beta2, lambda }
                if beta2.is_zero()
                    && !lambda.is_zero()
                    && !beta1.is_zero()
                    && *beta1 != int(1)
                    && *beta1 != int(-1) =>
            {
                Some(-beta1.clone())
            }
            _ => None,
        })
    };
    let a2_diagonal = || {
        label.part_00.iter().find_map(|t| match t {
            ZeroFormTag::A2 { lambda } if !lambda.is_zero() => Some(lambda.clone()),
            _ => None,
        })
    };
    let a3_unit = || {
        label.part_00.iter().find_map(|t| match t {
            ZeroFormTag::A3 { beta, lambda } if *beta == int(1) && !lambda.is_zero() => {
                Some(lambda.clone())
            }
            _ => None,
        })
    };
    let b3_unit = || {
        label.part_00.iter().find_map(|t| match t {
            ZeroFormTag::B3 { alpha, mu } if *alpha == int(1) && !mu.is_zero() => {
                Some(mu.clone())
            }
            _ => None,
        })
    };

    if full && same_kind(Part11::A) && mixed(1, 1) {
        if let Some(h) = e2_diagonal(1) {
            return ClassificationLabel::Fermion(h);
        }
    }
    if full && same_kind(Part11::B) && mixed(1, -1) {
        if let Some(h) = e2_diagonal(1) {
            return ClassificationLabel::PseudoFermion(h);
        }
    }
    if empty && same_kind(Part11::B) && mixed(1, -1) {
        if let Some(h) = e2_diagonal(-1) {
            return ClassificationLabel::Boson(h);
        }
    }
    if empty && same_kind(Part11::A) && mixed(1, 1) {
        if let Some(h) = e2_diagonal(-1) {
            return ClassificationLabel::PseudoBoson(h);
        }
    }
    if full && same_kind(Part11::C) && mixed(1, 0) {
        if let Some(h) = a3_unit() {
            return ClassificationLabel::Matrix(h);
        }
    }
    if full && same_kind(Part11::C) && mixed(0, 1) {
        if let Some(h) = b3_unit() {
            return ClassificationLabel::MatrixDual(h);
        }
    }
    if empty && same_kind(Part11::B) && mixed(1, -1) {
        if let Some(q) = e2_deformed() {
            return ClassificationLabel::QBoson(q);
        }
        if a2_diagonal().is_some() {
            return ClassificationLabel::QBoson(Scalar::zero());
        }
    }
    if empty && same_kind(Part11::A) && mixed(1, 1) {
        if let Some(q) = e2_deformed() {
            return ClassificationLabel::PseudoQBoson(q);
        }
        if a2_diagonal().is_some() {
            return ClassificationLabel::PseudoQBoson(Scalar::zero());
        }
    }
    ClassificationLabel::Unknown
}
