//! The two abductive forgetting operators. Focusing keeps the remembered
//! part of every explanation, projecting the manifestations; summarizing
//! keeps an explanation only when its manifestations are wholly remembered.

use std::collections::{BTreeMap, BTreeSet};

use crate::abduction::{
    enumerate_explanations, minimal_explanations, AbductError, AbductionFrame, Explanation,
    ExplanationSet, Ordering,
};
use crate::budget::Budget;
use crate::logic::VariableId;

/// Whether forgetting selects all supported explanations or only the
/// order-minimal ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    Minimal(Ordering),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Focus,
    Summarize,
}

/// A forgetting request over the variables to remember. `remember` may
/// intersect or contain the frame alphabets freely; variables outside
/// `I ∪ C` are ignored.
#[derive(Clone, Debug)]
pub struct ForgetRequest {
    pub frame: AbductionFrame,
    pub remember: BTreeSet<VariableId>,
    pub mode: Mode,
    pub operator: Operator,
}

impl ForgetRequest {
    pub fn run(&self, budget: &Budget) -> Result<ExplanationSet, AbductError> {
        match self.operator {
            Operator::Focus => focus(&self.frame, &self.remember, &self.mode, budget),
            Operator::Summarize => summarize(&self.frame, &self.remember, &self.mode, budget),
        }
    }

    /// Remembered variables with no bearing on the result.
    pub fn ignored(&self) -> BTreeSet<VariableId> {
        self.remember
            .iter()
            .filter(|v| {
                !self.frame.hypotheses().contains(v) && !self.frame.manifestations().contains(v)
            })
            .cloned()
            .collect()
    }
}

fn base_set(
    frame: &AbductionFrame,
    mode: &Mode,
    budget: &Budget,
) -> Result<ExplanationSet, AbductError> {
    match mode {
        Mode::All => enumerate_explanations(frame, budget),
        Mode::Minimal(ord) => minimal_explanations(frame, ord, budget),
    }
}

/// `focus(<F,I,C>, R)`: every supported (or minimally supported) explanation
/// restricted to the remembered variables, dropped when no remembered
/// manifestation survives.
pub fn focus(
    frame: &AbductionFrame,
    remember: &BTreeSet<VariableId>,
    mode: &Mode,
    budget: &Budget,
) -> Result<ExplanationSet, AbductError> {
    let base = base_set(frame, mode, budget)?;
    let mut out = ExplanationSet::new();
    for e in base.iter() {
        let m: BTreeSet<_> = e.manifestations().intersection(remember).cloned().collect();
        if m.is_empty() {
            continue;
        }
        let h: BTreeSet<_> = e.hypotheses().intersection(remember).cloned().collect();
        out.insert(Explanation::new(h, m).expect("nonempty by construction"));
    }
    Ok(out)
}

/// `summarize(<F,I,C>, R)`: explanations whose manifestations are wholly
/// remembered, with the forgotten hypotheses removed.
pub fn summarize(
    frame: &AbductionFrame,
    remember: &BTreeSet<VariableId>,
    mode: &Mode,
    budget: &Budget,
) -> Result<ExplanationSet, AbductError> {
    let base = base_set(frame, mode, budget)?;
    let mut out = ExplanationSet::new();
    for e in base.iter() {
        if !e.manifestations().is_subset(remember) {
            continue;
        }
        let h: BTreeSet<_> = e.hypotheses().intersection(remember).cloned().collect();
        out.insert(Explanation::new(h, e.manifestations().clone()).expect("nonempty"));
    }
    Ok(out)
}

/// For each hypothesis set, the inclusion-maximal manifestation sets among
/// its members.
pub fn maximal_antichain(
    s: &ExplanationSet,
) -> BTreeMap<BTreeSet<VariableId>, Vec<BTreeSet<VariableId>>> {
    let mut grouped: BTreeMap<BTreeSet<VariableId>, Vec<BTreeSet<VariableId>>> = BTreeMap::new();
    for e in s.iter() {
        grouped
            .entry(e.hypotheses().clone())
            .or_default()
            .push(e.manifestations().clone());
    }
    for ms in grouped.values_mut() {
        let all = ms.clone();
        ms.retain(|m| !all.iter().any(|other| m.is_subset(other) && m != other));
        ms.sort();
        ms.dedup();
    }
    grouped
}
