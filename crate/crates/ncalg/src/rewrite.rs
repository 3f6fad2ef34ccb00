//! Reduction systems on the free algebra: rules oriented by a deglex
//! order, normal forms, ambiguity enumeration, confluence certification,
//! completion, and irreducible-monomial bases.
//!
//! A rule `lhs -> rhs` replaces an occurrence of `lhs` inside a word by
//! the polynomial `rhs`; the system invariant that every `rhs` monomial is
//! deglex-smaller than `lhs` makes every reduction chain terminate. When
//! all minimal ambiguities between rules resolve to zero, the irreducible
//! monomials form a linear basis of the quotient algebra, which is what
//! the confluence check certifies.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freealg::{Monomial, Polynomial, Scalar};
use crate::ordering::DeglexOrder;

use num_traits::One;

/// Fallback bound on reduction steps per normal-form computation. The
/// ordering invariant already guarantees termination; the budget exists to
/// catch systems whose invariants were corrupted.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// The step budget, honoring the `NCALG_STEP_BUDGET` environment variable
/// when it holds a positive integer.
pub fn step_budget_from_env() -> u64 {
    std::env::var("NCALG_STEP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("presentation contains a nonzero scalar; the ideal is the whole algebra")]
    ScalarGenerator,
    #[error("rule {lhs} -> ... has monomial {offender} not strictly below the left side")]
    OrderViolation { lhs: String, offender: String },
    #[error("two rules share the left side {lhs}")]
    DuplicateLhs { lhs: String },
    #[error("reduction exceeded the step budget of {budget}")]
    BudgetExceeded { budget: u64 },
}

/// One rewrite rule. The left side is a word of degree at least one and
/// every monomial of the right side is strictly smaller in the ambient
/// deglex order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction {
    pub lhs: Monomial,
    pub rhs: Polynomial,
}

impl Reduction {
    /// The element `lhs - rhs` of the ideal the system presents.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::monomial(self.lhs.clone()).sub(&self.rhs)
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// How `normal_form` picks its next reduction step.
#[derive(Clone, Copy, Debug)]
pub enum ReductionStrategy {
    /// Largest reducible monomial, leftmost position, smallest rule index.
    /// Fully reproducible.
    Deterministic,
    /// Uniformly random choices from a seeded generator. For confluent
    /// systems the result matches the deterministic strategy.
    Randomized { seed: u64 },
}

/// A minimal superposition of two rule left sides.
///
/// For an overlap the witness word is `left·middle·right` with
/// `left·middle` the first rule's left side and `middle·right` the
/// second's; for an inclusion the whole word is the first rule's left side
/// and `middle` is the second's.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub left: Monomial,
    pub middle: Monomial,
    pub right: Monomial,
    pub first_rule: usize,
    pub second_rule: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

impl Ambiguity {
    /// The word both reductions start from.
    pub fn superposition(&self) -> Monomial {
        self.left.concat(&self.middle).concat(&self.right)
    }
}

impl fmt::Display for Ambiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            AmbiguityKind::Overlap => "overlap",
            AmbiguityKind::Inclusion => "inclusion",
        };
        write!(
            f,
            "{kind} ({}, {}, {}) between rules {} and {}",
            self.left, self.middle, self.right, self.first_rule, self.second_rule
        )
    }
}

/// An ambiguity together with the outcome of reducing both sides to
/// normal form. `residual` is the difference of the two normal forms, so
/// the ambiguity is solvable exactly when it vanishes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmbiguityReport {
    pub ambiguity: Ambiguity,
    pub solvable: bool,
    pub residual: Polynomial,
}

/// Result of a full confluence check.
#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub reports: Vec<AmbiguityReport>,
}

/// Result of completion.
#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub system: ReductionSystem,
    /// All processed ambiguities resolve; together with the deferred list
    /// this is an honest certificate for the rules within the bound.
    pub complete: bool,
    pub passes: usize,
    /// Rules added across all passes, as first formed from residuals
    /// (before inter-reduction reshapes the system).
    pub added: Vec<Reduction>,
    /// Ambiguities whose superposition word exceeded twice the degree
    /// bound, skipped rather than silently dropped.
    pub deferred: Vec<Ambiguity>,
    /// A scalar turned up in the ideal: the presented quotient is zero and
    /// the system is meaningless. Completion stops immediately.
    pub collapsed: bool,
}

/// A terminating rewrite system over a fixed deglex order.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    rules: Vec<Reduction>,
    ord: DeglexOrder,
    simplified: bool,
    reduced: bool,
}

impl ReductionSystem {
    /// Build from explicit rules, validating the ordering invariant and
    /// left-side uniqueness.
    pub fn new(rules: Vec<Reduction>, ord: DeglexOrder) -> Result<Self, RewriteError> {
        for rule in &rules {
            if rule.lhs.degree() == 0 {
                return Err(RewriteError::ScalarGenerator);
            }
            for (m, _) in rule.rhs.terms() {
                if ord.compare(m, &rule.lhs) != CmpOrdering::Less {
                    return Err(RewriteError::OrderViolation {
                        lhs: rule.lhs.to_string(),
                        offender: m.to_string(),
                    });
                }
            }
        }
        for (i, rule) in rules.iter().enumerate() {
            if rules[..i].iter().any(|r| r.lhs == rule.lhs) {
                return Err(RewriteError::DuplicateLhs { lhs: rule.lhs.to_string() });
            }
        }
        let mut system = ReductionSystem { rules, ord, simplified: false, reduced: false };
        system.refresh_flags();
        Ok(system)
    }

    /// Orient a set of ideal generators into rules, one per distinct
    /// leading monomial: `g` becomes `lm(g) -> -(1/lc(g))·(g - lt(g))`.
    ///
    /// Generators whose leading monomial repeats an earlier rule's left
    /// side are first reduced by that rule, so the generated ideal is
    /// preserved exactly. Zero generators are skipped. With `simplify`
    /// set, the rules are additionally inter-reduced until no left side
    /// contains another and every right side is irreducible.
    pub fn from_presentation(
        generators: &[Polynomial],
        ord: DeglexOrder,
        simplify: bool,
    ) -> Result<Self, RewriteError> {
        let mut sorted: Vec<Polynomial> =
            generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        // Deterministic processing order: smaller leading monomials first.
        sorted.sort_by(|p, q| {
            let lp = ord.leading_data(p).expect("nonzero").monomial;
            let lq = ord.leading_data(q).expect("nonzero").monomial;
            ord.compare(&lp, &lq)
        });
        let mut rules: Vec<Reduction> = Vec::new();
        for g in sorted {
            let mut g = g;
            loop {
                if g.is_zero() {
                    break;
                }
                let lead = ord.leading_data(&g).expect("nonzero");
                if lead.monomial.is_one() {
                    return Err(RewriteError::ScalarGenerator);
                }
                match rules.iter().find(|r| r.lhs == lead.monomial) {
                    None => {
                        rules.push(orient(&g, &ord)?);
                        break;
                    }
                    Some(existing) => {
                        // Cancel the repeated leading term against the
                        // existing rule; the difference stays in the ideal.
                        g = g.sub(&existing.polynomial().scale(&lead.coefficient));
                    }
                }
            }
        }
        if simplify {
            match inter_reduce(rules, &ord, step_budget_from_env())? {
                InterReduceOutcome::Rules(reduced) => rules = reduced,
                InterReduceOutcome::Collapsed => return Err(RewriteError::ScalarGenerator),
            }
        }
        sort_rules(&mut rules, &ord);
        ReductionSystem::new(rules, ord)
    }

    pub fn rules(&self) -> &[Reduction] {
        &self.rules
    }

    pub fn order(&self) -> &DeglexOrder {
        &self.ord
    }

    pub fn n(&self) -> usize {
        self.ord.n()
    }

    /// No rule's left side contains another rule's left side as a factor.
    pub fn is_simplified(&self) -> bool {
        self.simplified
    }

    /// Every right side is irreducible for the whole system.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    fn refresh_flags(&mut self) {
        self.simplified = self.rules.iter().enumerate().all(|(i, r)| {
            self.rules
                .iter()
                .enumerate()
                .all(|(j, s)| i == j || !r.lhs.contains_factor(&s.lhs))
        });
        self.reduced = self.rules.iter().all(|r| {
            r.rhs
                .terms()
                .iter()
                .all(|(m, _)| self.rules.iter().all(|s| !m.contains_factor(&s.lhs)))
        });
    }

    /// Whether some rule applies inside `m`.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.rules.iter().any(|r| m.contains_factor(&r.lhs))
    }

    /// Normal form with the deterministic strategy and default budget.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, RewriteError> {
        self.normal_form_with(p, ReductionStrategy::Deterministic, step_budget_from_env())
    }

    /// Reduce `p` until no rule applies to any support monomial.
    pub fn normal_form_with(
        &self,
        p: &Polynomial,
        strategy: ReductionStrategy,
        step_budget: u64,
    ) -> Result<Polynomial, RewriteError> {
        let mut rng = match strategy {
            ReductionStrategy::Deterministic => None,
            ReductionStrategy::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let mut current = p.clone();
        let mut steps = 0u64;
        loop {
            let Some((target, coeff)) = self.pick_target(&current, rng.as_mut()) else {
                return Ok(current);
            };
            if steps == step_budget {
                return Err(RewriteError::BudgetExceeded { budget: step_budget });
            }
            steps += 1;
            let (pos, rule_idx) = self
                .pick_site(&target, rng.as_mut())
                .expect("target chosen reducible");
            let rule = &self.rules[rule_idx];
            let prefix = target.subword(0, pos);
            let suffix = target.subword(pos + rule.lhs.degree(), target.degree());
            let replacement = Polynomial::monomial(prefix)
                .mul(&rule.rhs)
                .mul(&Polynomial::monomial(suffix));
            current = current
                .sub(&Polynomial::term(target, coeff.clone()))
                .add(&replacement.scale(&coeff));
        }
    }

    /// The support monomial to reduce next, with its coefficient.
    fn pick_target(
        &self,
        p: &Polynomial,
        rng: Option<&mut ChaCha8Rng>,
    ) -> Option<(Monomial, Scalar)> {
        let reducible: Vec<&(Monomial, Scalar)> = p
            .terms()
            .iter()
            .filter(|(m, _)| self.is_reducible(m))
            .collect();
        match rng {
            None => reducible
                .into_iter()
                .max_by(|(a, _), (b, _)| self.ord.compare(a, b))
                .map(|(m, c)| (m.clone(), c.clone())),
            Some(rng) => reducible.choose(rng).map(|t| (t.0.clone(), t.1.clone())),
        }
    }

    /// A position and rule index applying inside `m`.
    fn pick_site(&self, m: &Monomial, rng: Option<&mut ChaCha8Rng>) -> Option<(usize, usize)> {
        let mut sites = Vec::new();
        for pos in 0..m.degree() {
            for (idx, rule) in self.rules.iter().enumerate() {
                let len = rule.lhs.degree();
                if pos + len <= m.degree() && m.subword(pos, pos + len) == rule.lhs {
                    match rng {
                        None => return Some((pos, idx)),
                        Some(_) => sites.push((pos, idx)),
                    }
                }
            }
        }
        match rng {
            None => None,
            Some(rng) => sites.choose(rng).copied(),
        }
    }

    /// All minimal overlap and inclusion ambiguities between rule pairs,
    /// in a deterministic order.
    pub fn ambiguities(&self) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let wi = ri.lhs.symbols();
                let wj = rj.lhs.symbols();
                // Proper overlaps: a nonempty proper suffix of the first
                // left side equals a prefix of the second.
                for t in 1..wi.len().min(wj.len()) {
                    if wi[wi.len() - t..] == wj[..t] {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Overlap,
                            left: ri.lhs.subword(0, wi.len() - t),
                            middle: ri.lhs.subword(wi.len() - t, wi.len()),
                            right: rj.lhs.subword(t, wj.len()),
                            first_rule: i,
                            second_rule: j,
                        });
                    }
                }
                // Inclusions: the second left side sits strictly inside
                // the first.
                if i != j && wj.len() < wi.len() {
                    for pos in ri.lhs.factor_positions(&rj.lhs) {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            left: ri.lhs.subword(0, pos),
                            middle: rj.lhs.clone(),
                            right: ri.lhs.subword(pos + wj.len(), wi.len()),
                            first_rule: i,
                            second_rule: j,
                        });
                    }
                }
            }
        }
        out
    }

    /// Reduce both sides of an ambiguity to normal form and report the
    /// difference.
    pub fn resolve(&self, ambiguity: &Ambiguity) -> Result<AmbiguityReport, RewriteError> {
        let first = &self.rules[ambiguity.first_rule];
        let second = &self.rules[ambiguity.second_rule];
        let (path_a, path_b) = match ambiguity.kind {
            AmbiguityKind::Overlap => (
                first.rhs.mul(&Polynomial::monomial(ambiguity.right.clone())),
                Polynomial::monomial(ambiguity.left.clone()).mul(&second.rhs),
            ),
            AmbiguityKind::Inclusion => (
                first.rhs.clone(),
                Polynomial::monomial(ambiguity.left.clone())
                    .mul(&second.rhs)
                    .mul(&Polynomial::monomial(ambiguity.right.clone())),
            ),
        };
        let residual = self.normal_form(&path_a)?.sub(&self.normal_form(&path_b)?);
        Ok(AmbiguityReport {
            ambiguity: ambiguity.clone(),
            solvable: residual.is_zero(),
            residual,
        })
    }

    /// Resolve every ambiguity; the system is confluent when all residuals
    /// vanish.
    pub fn confluence(&self) -> Result<ConfluenceReport, RewriteError> {
        let mut reports = Vec::new();
        let mut confluent = true;
        for ambiguity in self.ambiguities() {
            let report = self.resolve(&ambiguity)?;
            confluent &= report.solvable;
            reports.push(report);
        }
        Ok(ConfluenceReport { confluent, reports })
    }

    /// Completion: repeatedly turn unsolvable residuals into new rules and
    /// inter-reduce, until every ambiguity inside the degree window
    /// resolves or the pass bound runs out.
    ///
    /// Critical pairs whose superposition word is longer than
    /// `2·degree_bound` are deferred and reported. Rules whose left sides
    /// are within the bound always superpose below the cutoff, so
    /// `complete` certifies confluence among those rules.
    pub fn buchberger_complete(
        &self,
        degree_bound: usize,
        pass_bound: usize,
    ) -> Result<CompletionOutcome, RewriteError> {
        let mut system = self.clone();
        let mut added = Vec::new();
        let mut deferred = Vec::new();
        let mut passes = 0;
        while passes < pass_bound {
            passes += 1;
            deferred.clear();
            let mut residuals = Vec::new();
            for ambiguity in system.ambiguities() {
                if ambiguity.superposition().degree() > 2 * degree_bound {
                    deferred.push(ambiguity);
                    continue;
                }
                let report = system.resolve(&ambiguity)?;
                if !report.solvable {
                    residuals.push(report.residual);
                }
            }
            if residuals.is_empty() {
                return Ok(CompletionOutcome {
                    system,
                    complete: true,
                    passes,
                    added,
                    deferred,
                    collapsed: false,
                });
            }
            let mut rules = system.rules.clone();
            for residual in residuals {
                // Rules added earlier in this pass may already resolve it.
                let interim = ReductionSystem::raw(rules.clone(), system.ord.clone());
                let reduced = interim.normal_form(&residual)?;
                if reduced.is_zero() {
                    continue;
                }
                if reduced.degree() == Some(0) {
                    return Ok(CompletionOutcome {
                        system,
                        complete: false,
                        passes,
                        added,
                        deferred,
                        collapsed: true,
                    });
                }
                let rule = orient(&reduced, &system.ord)?;
                added.push(rule.clone());
                rules.push(rule);
            }
            match inter_reduce(rules, &system.ord, step_budget_from_env())? {
                InterReduceOutcome::Rules(mut reduced) => {
                    sort_rules(&mut reduced, &system.ord);
                    system = ReductionSystem::new(reduced, system.ord.clone())?;
                }
                InterReduceOutcome::Collapsed => {
                    return Ok(CompletionOutcome {
                        system,
                        complete: false,
                        passes,
                        added,
                        deferred,
                        collapsed: true,
                    });
                }
            }
        }
        Ok(CompletionOutcome {
            system,
            complete: false,
            passes,
            added,
            deferred,
            collapsed: false,
        })
    }

    /// All irreducible monomials of degree at most `degree_bound`, in
    /// ascending deglex order.
    ///
    /// Enumeration walks the tree of irreducible words, extending on the
    /// right; an extension is pruned as soon as some left side becomes a
    /// suffix, so the walk never visits reducible territory.
    pub fn irreducible_basis(&self, degree_bound: usize) -> IrreducibleBasis {
        let mut monomials = Vec::new();
        let mut stack = vec![Monomial::one()];
        while let Some(word) = stack.pop() {
            monomials.push(word.clone());
            if word.degree() == degree_bound {
                continue;
            }
            for &s in self.ord.base().ranking() {
                let extended = Monomial::from_symbols(
                    word.symbols().iter().copied().chain(std::iter::once(s)),
                );
                let blocked = self.rules.iter().any(|r| {
                    let l = r.lhs.degree();
                    l <= extended.degree()
                        && extended.symbols()[extended.degree() - l..] == *r.lhs.symbols()
                });
                if !blocked {
                    stack.push(extended);
                }
            }
        }
        monomials.sort_by(|a, b| self.ord.compare(a, b));
        // Nothing at the top two degrees means no longer irreducible word
        // exists at all: any extension would have to pass through them.
        let saturated = monomials.iter().all(|m| m.degree() + 1 < degree_bound);
        IrreducibleBasis { monomials, saturated }
    }

    /// Internal constructor skipping validation, for intermediate states
    /// whose invariants are maintained by the caller.
    fn raw(rules: Vec<Reduction>, ord: DeglexOrder) -> Self {
        let mut system = ReductionSystem { rules, ord, simplified: false, reduced: false };
        system.refresh_flags();
        system
    }
}

/// Irreducible monomials up to a degree bound. `saturated` records that
/// the top two degrees are empty, which for a confluent system certifies
/// that the finite list is the complete basis of the quotient.
#[derive(Clone, Debug)]
pub struct IrreducibleBasis {
    pub monomials: Vec<Monomial>,
    pub saturated: bool,
}

/// Orient a nonzero, nonscalar polynomial into the rule
/// `lm -> -(1/lc)·(rest)`.
fn orient(g: &Polynomial, ord: &DeglexOrder) -> Result<Reduction, RewriteError> {
    let lead = ord.leading_data(g).expect("nonzero polynomial");
    if lead.monomial.is_one() {
        return Err(RewriteError::ScalarGenerator);
    }
    let rest = g.sub(&lead.term());
    let rhs = rest.scale(&(-Scalar::one() / &lead.coefficient));
    for (m, _) in rhs.terms() {
        if ord.compare(m, &lead.monomial) != CmpOrdering::Less {
            return Err(RewriteError::OrderViolation {
                lhs: lead.monomial.to_string(),
                offender: m.to_string(),
            });
        }
    }
    Ok(Reduction { lhs: lead.monomial, rhs })
}

fn sort_rules(rules: &mut [Reduction], ord: &DeglexOrder) {
    rules.sort_by(|a, b| ord.compare(&a.lhs, &b.lhs));
}

enum InterReduceOutcome {
    Rules(Vec<Reduction>),
    Collapsed,
}

/// Inter-reduce until every rule's polynomial is irreducible with respect
/// to the others. Drops redundant rules; detects a scalar entering the
/// ideal.
fn inter_reduce(
    rules: Vec<Reduction>,
    ord: &DeglexOrder,
    step_budget: u64,
) -> Result<InterReduceOutcome, RewriteError> {
    let mut rules = rules;
    'outer: loop {
        sort_rules(&mut rules, ord);
        for idx in 0..rules.len() {
            let mut others = rules.clone();
            let rule = others.remove(idx);
            let system = ReductionSystem::raw(others, ord.clone());
            let reduced = system.normal_form_with(
                &rule.polynomial(),
                ReductionStrategy::Deterministic,
                step_budget,
            )?;
            if reduced.is_zero() {
                rules.remove(idx);
                continue 'outer;
            }
            if reduced.degree() == Some(0) {
                return Ok(InterReduceOutcome::Collapsed);
            }
            let replacement = orient(&reduced, ord)?;
            if replacement != rule {
                rules[idx] = replacement;
                continue 'outer;
            }
        }
        return Ok(InterReduceOutcome::Rules(rules));
    }
}
