//! Abduction frames, explanation support, exhaustive and minimal explanation
//! enumeration under pluggable orderings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::budget::{Budget, BudgetError};
use crate::logic::{to_cnf, Formula, VariableId};

/// The `<F, I, C>` triple: a formula, hypothesis variables and manifestation
/// variables. Hypotheses and manifestations must be disjoint; they may
/// mention variables absent from the formula, which then behave as
/// unconstrained.
#[derive(Clone, Debug)]
pub struct AbductionFrame {
    formula: Formula,
    hypotheses: BTreeSet<VariableId>,
    manifestations: BTreeSet<VariableId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("hypotheses and manifestations share {0}")]
    OverlappingAlphabets(VariableId),
}

impl AbductionFrame {
    pub fn new(
        formula: Formula,
        hypotheses: BTreeSet<VariableId>,
        manifestations: BTreeSet<VariableId>,
    ) -> Result<Self, FrameError> {
        if let Some(shared) = hypotheses.intersection(&manifestations).next() {
            return Err(FrameError::OverlappingAlphabets(shared.clone()));
        }
        Ok(AbductionFrame {
            formula,
            hypotheses,
            manifestations,
        })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn hypotheses(&self) -> &BTreeSet<VariableId> {
        &self.hypotheses
    }

    pub fn manifestations(&self) -> &BTreeSet<VariableId> {
        &self.manifestations
    }
}

/// An explanation `E => M`: `M` is never empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Explanation {
    hypotheses: BTreeSet<VariableId>,
    manifestations: BTreeSet<VariableId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplanationError {
    #[error("an explanation must explain at least one manifestation")]
    EmptyManifestations,
    #[error("hypothesis {0} is outside the frame's hypothesis alphabet")]
    HypothesisOutsideFrame(VariableId),
    #[error("manifestation {0} is outside the frame's manifestation alphabet")]
    ManifestationOutsideFrame(VariableId),
}

impl Explanation {
    pub fn new(
        hypotheses: BTreeSet<VariableId>,
        manifestations: BTreeSet<VariableId>,
    ) -> Result<Self, ExplanationError> {
        if manifestations.is_empty() {
            return Err(ExplanationError::EmptyManifestations);
        }
        Ok(Explanation {
            hypotheses,
            manifestations,
        })
    }

    pub fn hypotheses(&self) -> &BTreeSet<VariableId> {
        &self.hypotheses
    }

    pub fn manifestations(&self) -> &BTreeSet<VariableId> {
        &self.manifestations
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join =
            |s: &BTreeSet<VariableId>| s.iter().map(|v| v.name()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{} => {}",
            join(&self.hypotheses),
            join(&self.manifestations)
        )
    }
}

/// A canonical finite set of explanations; iteration is lexicographic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplanationSet {
    members: BTreeSet<Explanation>,
}

impl ExplanationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Explanation) {
        self.members.insert(e);
    }

    pub fn contains(&self, e: &Explanation) -> bool {
        self.members.contains(e)
    }

    pub fn contains_parts(
        &self,
        hypotheses: &BTreeSet<VariableId>,
        manifestations: &BTreeSet<VariableId>,
    ) -> bool {
        self.members.iter().any(|e| {
            &e.hypotheses == hypotheses && &e.manifestations == manifestations
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Explanation> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl FromIterator<Explanation> for ExplanationSet {
    fn from_iter<T: IntoIterator<Item = Explanation>>(iter: T) -> Self {
        ExplanationSet {
            members: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a ExplanationSet {
    type Item = &'a Explanation;
    type IntoIter = std::collections::btree_set::Iter<'a, Explanation>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Orderings over hypothesis sets. Every kind refines strict set containment;
/// for weighted cardinality this follows from the strictly positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ordering {
    Subset,
    Cardinality,
    WeightedCardinality(BTreeMap<VariableId, Ratio<u64>>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("weight for {0} must be strictly positive")]
    NonPositiveWeight(VariableId),
}

impl Ordering {
    /// Weighted-cardinality ordering; unlisted variables weigh 1.
    pub fn weighted(weights: BTreeMap<VariableId, Ratio<u64>>) -> Result<Self, OrderingError> {
        for (v, w) in &weights {
            if w.numer() == &0 {
                return Err(OrderingError::NonPositiveWeight(v.clone()));
            }
        }
        Ok(Ordering::WeightedCardinality(weights))
    }
}

/// Strict comparison of hypothesis sets under an ordering kind.
pub fn less(ord: &Ordering, e1: &BTreeSet<VariableId>, e2: &BTreeSet<VariableId>) -> bool {
    match ord {
        Ordering::Subset => e1.is_subset(e2) && e1 != e2,
        Ordering::Cardinality => e1.len() < e2.len(),
        Ordering::WeightedCardinality(w) => {
            let weigh = |s: &BTreeSet<VariableId>| -> Ratio<u64> {
                s.iter()
                    .map(|v| w.get(v).cloned().unwrap_or_else(|| Ratio::from_integer(1)))
                    .sum()
            };
            weigh(e1) < weigh(e2)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbductError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Explanation(#[from] ExplanationError),
}

/// Does the frame support `E => M`, i.e. is `F ∪ E` consistent and does it
/// entail `M`?
pub fn supports(frame: &AbductionFrame, expl: &Explanation) -> Result<bool, AbductError> {
    for h in expl.hypotheses() {
        if !frame.hypotheses().contains(h) {
            return Err(ExplanationError::HypothesisOutsideFrame(h.clone()).into());
        }
    }
    for m in expl.manifestations() {
        if !frame.manifestations().contains(m) {
            return Err(ExplanationError::ManifestationOutsideFrame(m.clone()).into());
        }
    }
    let cnf = to_cnf(frame.formula());
    let base: Vec<_> = expl.hypotheses().iter().map(|v| (v.clone(), true)).collect();
    if !cnf.satisfiable_with(&base) {
        return Ok(false);
    }
    Ok(expl.manifestations().iter().all(|m| {
        let mut lits = base.clone();
        lits.push((m.clone(), false));
        !cnf.satisfiable_with(&lits)
    }))
}

/// Consistent hypothesis subsets with their maximal entailed manifestation
/// set, as bit masks over the sorted alphabets. Inconsistency is monotone in
/// E, so the walk never leaves a consistent set's downward closure.
fn consistent_entailments(
    frame: &AbductionFrame,
    ivars: &[VariableId],
    cvars: &[VariableId],
) -> Vec<(u64, u64)> {
    let cnf = to_cnf(frame.formula());
    let assume = |mask: u64| -> Vec<(VariableId, bool)> {
        ivars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| (v.clone(), true))
            .collect()
    };
    let mut out = Vec::new();
    if !cnf.satisfiable() {
        return out;
    }
    // depth-first over the subset lattice, growing by index
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    while let Some((mask, start)) = stack.pop() {
        let base = assume(mask);
        let mut entailed = 0u64;
        for (ci, c) in cvars.iter().enumerate() {
            let mut lits = base.clone();
            lits.push((c.clone(), false));
            if !cnf.satisfiable_with(&lits) {
                entailed |= 1 << ci;
            }
        }
        if entailed != 0 {
            out.push((mask, entailed));
        }
        for i in start..ivars.len() {
            let child = mask | 1 << i;
            let mut lits = assume(child);
            lits.shrink_to_fit();
            if cnf.satisfiable_with(&lits) {
                stack.push((child, i + 1));
            }
        }
    }
    out
}

fn mask_to_set(mask: u64, vars: &[VariableId]) -> BTreeSet<VariableId> {
    vars.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect()
}

/// All supported explanations: every consistent `E ⊆ I` paired with every
/// nonempty subset of its maximal entailed manifestation set.
pub fn enumerate_explanations(
    frame: &AbductionFrame,
    budget: &Budget,
) -> Result<ExplanationSet, AbductError> {
    budget.check_hypotheses(frame.hypotheses().len())?;
    budget.check_manifestations(frame.manifestations().len())?;
    let ivars: Vec<_> = frame.hypotheses().iter().cloned().collect();
    let cvars: Vec<_> = frame.manifestations().iter().cloned().collect();
    let mut set = ExplanationSet::new();
    for (emask, entailed) in consistent_entailments(frame, &ivars, &cvars) {
        let hypotheses = mask_to_set(emask, &ivars);
        // iterate the nonempty submasks of the entailed set
        let mut sub = entailed;
        loop {
            set.insert(Explanation {
                hypotheses: hypotheses.clone(),
                manifestations: mask_to_set(sub, &cvars),
            });
            sub = (sub - 1) & entailed;
            if sub == 0 {
                break;
            }
        }
    }
    Ok(set)
}

/// The order-minimal subset of `enumerate_explanations`: explanations whose
/// hypothesis set admits no supported strictly-lesser alternative for the
/// same manifestations.
pub fn minimal_explanations(
    frame: &AbductionFrame,
    ord: &Ordering,
    budget: &Budget,
) -> Result<ExplanationSet, AbductError> {
    Ok(minimal_of(&enumerate_explanations(frame, budget)?, ord))
}

/// Filter an already-enumerated set down to its order-minimal members.
pub fn minimal_of(all: &ExplanationSet, ord: &Ordering) -> ExplanationSet {
    all.iter()
        .filter(|e| {
            !all.iter().any(|other| {
                other.manifestations() == e.manifestations()
                    && less(ord, other.hypotheses(), e.hypotheses())
            })
        })
        .cloned()
        .collect()
}
