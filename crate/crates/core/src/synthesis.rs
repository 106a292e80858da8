//! The tentative-supporting formulas G(S) for the all-explanations and
//! minimal settings, round-trip verification, and the realization of
//! consequentially-monotone sets as forgetting instances.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::abduction::{
    enumerate_explanations, less, minimal_explanations, AbductError, AbductionFrame, Explanation,
    ExplanationSet, FrameError, Ordering,
};
use crate::budget::{Budget, BudgetError};
use crate::expressibility::{check_consequential_monotony, Witness};
use crate::logic::{Formula, FormulaNode, VariableId};

type VarSet = BTreeSet<VariableId>;

#[derive(Debug, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("enumeration failed: {0}")]
    Abduction(AbductError),
    #[error("the set is not consequentially monotone")]
    NotConsequentiallyMonotone(Box<Witness>),
}

impl From<AbductError> for SynthesisError {
    fn from(e: AbductError) -> Self {
        match e {
            AbductError::Budget(b) => SynthesisError::Budget(b),
            other => SynthesisError::Abduction(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MismatchDirection {
    /// The formula supports it, the set does not contain it.
    Extra,
    /// The set contains it, the formula does not support it.
    Missing,
}

/// Outcome of a round-trip verification.
#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub formula: Formula,
    pub verified: bool,
    pub mismatch: Option<(Explanation, MismatchDirection)>,
}

fn masks(universe: &[VariableId], set: &VarSet) -> u64 {
    let mut mask = 0;
    for (i, v) in universe.iter().enumerate() {
        if set.contains(v) {
            mask |= 1 << i;
        }
    }
    mask
}

fn unmask(universe: &[VariableId], mask: u64) -> VarSet {
    universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect()
}

/// The tentative-supporting formula of the all-explanations setting: a clause
/// `E -> m` for every singleton decomposition of a member, and `E -> false`
/// for every absent `E => m` dominated by a present strict subset. Composite
/// members decompose to singletons; a set on which that decomposition is not
/// neutral violates the conjunctive condition and no formula supports it.
pub fn build_gs_all(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    budget: &Budget,
) -> Result<Formula, SynthesisError> {
    budget.check_hypotheses(hypotheses.len())?;
    budget.check_manifestations(manifestations.len())?;
    let ivars: Vec<_> = hypotheses.iter().cloned().collect();
    let mut singles: BTreeSet<(VarSet, VariableId)> = BTreeSet::new();
    for e in s.iter() {
        for m in e.manifestations() {
            singles.insert((e.hypotheses().clone(), m.clone()));
        }
    }
    let mut sentences: Vec<FormulaNode> = singles
        .iter()
        .map(|(e, m)| FormulaNode::clause(e.iter(), Some(m)))
        .collect();
    // per-head masks of the present bodies
    let mut heads: Vec<(&VariableId, Vec<u64>)> = Vec::new();
    for m in manifestations {
        let bodies: Vec<u64> = singles
            .iter()
            .filter(|(_, h)| h == m)
            .map(|(e, _)| masks(&ivars, e))
            .collect();
        heads.push((m, bodies));
    }
    let mut bottoms: BTreeSet<VarSet> = BTreeSet::new();
    for mask in 0..(1u64 << ivars.len()) {
        for (m, bodies) in &heads {
            if bodies.contains(&mask) {
                continue;
            }
            let dominated = bodies.iter().any(|&b| b & mask == b && b != mask);
            if dominated {
                let e = unmask(&ivars, mask);
                let single: VarSet = [(*m).clone()].into_iter().collect();
                debug_assert!(!s.contains_parts(&e, &single));
                bottoms.insert(e);
                break;
            }
        }
    }
    sentences.extend(
        bottoms
            .iter()
            .map(|e| FormulaNode::clause(e.iter(), None)),
    );
    Ok(Formula::new(sentences))
}

/// The tentative-supporting formula of the minimal setting: `E -> m` for
/// every member and manifestation, and `E -> false` for every absent
/// `E => M` whose manifestations are all covered from within `E` while no
/// lesser hypothesis set explains `M`.
pub fn build_gs_minimal(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    ord: &Ordering,
    budget: &Budget,
) -> Result<Formula, SynthesisError> {
    budget.check_hypotheses(hypotheses.len())?;
    budget.check_manifestations(manifestations.len())?;
    let ivars: Vec<_> = hypotheses.iter().cloned().collect();
    let cvars: Vec<_> = manifestations.iter().cloned().collect();
    let mut singles: BTreeSet<(VarSet, VariableId)> = BTreeSet::new();
    for e in s.iter() {
        for m in e.manifestations() {
            singles.insert((e.hypotheses().clone(), m.clone()));
        }
    }
    let mut sentences: Vec<FormulaNode> = singles
        .iter()
        .map(|(e, m)| FormulaNode::clause(e.iter(), Some(m)))
        .collect();
    let mut bottoms: BTreeSet<VarSet> = BTreeSet::new();
    for emask in 0..(1u64 << ivars.len()) {
        let e = unmask(&ivars, emask);
        'outer: for mmask in 1..(1u64 << cvars.len()) {
            let m = unmask(&cvars, mmask);
            if s.contains_parts(&e, &m) {
                continue;
            }
            // (a) every manifestation of M is explained from within E
            for mv in &m {
                let covered = s.iter().any(|other| {
                    other.hypotheses().is_subset(&e) && other.manifestations().contains(mv)
                });
                if !covered {
                    continue 'outer;
                }
            }
            // (b) no lesser hypothesis set explains M
            let lesser = s
                .iter()
                .any(|other| other.manifestations() == &m && less(ord, other.hypotheses(), &e));
            if lesser {
                continue;
            }
            bottoms.insert(e);
            break;
        }
    }
    sentences.extend(
        bottoms
            .iter()
            .map(|e| FormulaNode::clause(e.iter(), None)),
    );
    Ok(Formula::new(sentences))
}

fn first_mismatch(
    got: &ExplanationSet,
    want: &ExplanationSet,
) -> Option<(Explanation, MismatchDirection)> {
    let mut best: Option<(Explanation, MismatchDirection)> = None;
    for e in got.iter() {
        if !want.contains(e) {
            best = Some((e.clone(), MismatchDirection::Extra));
            break;
        }
    }
    for e in want.iter() {
        if !got.contains(e) {
            let cand = (e.clone(), MismatchDirection::Missing);
            if best.as_ref().map(|(b, _)| &cand.0 < b).unwrap_or(true) {
                best = Some(cand);
            }
            break;
        }
    }
    best
}

/// Does the formula support exactly `s`?
pub fn verify_supports_exactly(
    f: &Formula,
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    budget: &Budget,
) -> Result<SynthesisReport, SynthesisError> {
    let frame = AbductionFrame::new(f.clone(), hypotheses.clone(), manifestations.clone())?;
    let got = enumerate_explanations(&frame, budget)?;
    let mismatch = first_mismatch(&got, s);
    Ok(SynthesisReport {
        formula: f.clone(),
        verified: mismatch.is_none(),
        mismatch,
    })
}

/// Does the formula minimally support exactly `s` under the ordering?
pub fn verify_min_supports_exactly(
    f: &Formula,
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    ord: &Ordering,
    budget: &Budget,
) -> Result<SynthesisReport, SynthesisError> {
    let frame = AbductionFrame::new(f.clone(), hypotheses.clone(), manifestations.clone())?;
    let got = minimal_explanations(&frame, ord, budget)?;
    let mismatch = first_mismatch(&got, s);
    Ok(SynthesisReport {
        formula: f.clone(),
        verified: mismatch.is_none(),
        mismatch,
    })
}

/// A consequentially-monotone set rendered as a forgetting instance: one
/// fresh hypothesis per member, clauses `E_i a_i -> M_i`, mutual exclusion
/// between the fresh hypotheses, and `a_i e -> false` for the hypotheses
/// outside `E_i`. Focusing the result on `I ∪ C` reproduces the set.
pub fn realize_as_forgetting(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
) -> Result<(Formula, VarSet), SynthesisError> {
    let monotone = check_consequential_monotony(s);
    if let Some(w) = monotone.witness {
        return Err(SynthesisError::NotConsequentiallyMonotone(Box::new(w)));
    }
    let taken: VarSet = hypotheses.union(manifestations).cloned().collect();
    let mut fresh: Vec<VariableId> = Vec::with_capacity(s.len());
    let mut counter = 0usize;
    while fresh.len() < s.len() {
        counter += 1;
        let v = VariableId::new(&format!("__aux{counter}")).unwrap();
        if !taken.contains(&v) {
            fresh.push(v);
        }
    }
    let mut sentences = Vec::new();
    for (i, member) in s.iter().enumerate() {
        let mut body: Vec<&VariableId> = member.hypotheses().iter().collect();
        body.push(&fresh[i]);
        let head = FormulaNode::conj_of_vars(member.manifestations().iter());
        sentences.push(FormulaNode::implies(
            FormulaNode::conj_of_vars(body.into_iter()),
            head,
        ));
        for e in hypotheses.difference(member.hypotheses()) {
            sentences.push(FormulaNode::clause([&fresh[i], e].into_iter(), None));
        }
    }
    for i in 0..fresh.len() {
        for j in i + 1..fresh.len() {
            sentences.push(FormulaNode::clause([&fresh[i], &fresh[j]].into_iter(), None));
        }
    }
    Ok((Formula::new(sentences), fresh.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forgetting::{focus, Mode};
    use crate::logic::print_formula;

    fn v(n: &str) -> VariableId {
        VariableId::new(n).unwrap()
    }

    fn set(names: &[&str]) -> VarSet {
        names.iter().map(|n| v(n)).collect()
    }

    fn e(h: &[&str], m: &[&str]) -> Explanation {
        Explanation::new(set(h), set(m)).unwrap()
    }

    #[test]
    fn gs_all_of_a_chain() {
        let s: ExplanationSet = [e(&["a"], &["x"]), e(&["a", "b"], &["x"])]
            .into_iter()
            .collect();
        let g = build_gs_all(&s, &set(&["a", "b"]), &set(&["x"]), &Budget::default()).unwrap();
        assert_eq!(print_formula(&g), ["a -> x", "a & b -> x"]);
        let report =
            verify_supports_exactly(&g, &s, &set(&["a", "b"]), &set(&["x"]), &Budget::default())
                .unwrap();
        assert!(report.verified);
    }

    #[test]
    fn gs_all_of_the_unsupportable_pair() {
        let s: ExplanationSet = [e(&["a"], &["x"]), e(&["a"], &["y"])].into_iter().collect();
        let g = build_gs_all(&s, &set(&["a"]), &set(&["x", "y"]), &Budget::default()).unwrap();
        assert_eq!(print_formula(&g), ["a -> x", "a -> y"]);
        let report =
            verify_supports_exactly(&g, &s, &set(&["a"]), &set(&["x", "y"]), &Budget::default())
                .unwrap();
        assert!(!report.verified);
        let (expl, dir) = report.mismatch.unwrap();
        assert_eq!(expl, e(&["a"], &["x", "y"]));
        assert_eq!(dir, MismatchDirection::Extra);
    }

    #[test]
    fn gs_all_of_empty_set_is_empty() {
        let g = build_gs_all(
            &ExplanationSet::new(),
            &set(&["a"]),
            &set(&["x"]),
            &Budget::default(),
        )
        .unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn gs_all_emits_bottom_clauses() {
        // a => x present, ab => x absent: ab -> false is mandatory
        let s: ExplanationSet = [e(&["a"], &["x"])].into_iter().collect();
        let g = build_gs_all(&s, &set(&["a", "b"]), &set(&["x"]), &Budget::default()).unwrap();
        assert_eq!(print_formula(&g), ["a -> x", "a & b -> false"]);
        let report =
            verify_supports_exactly(&g, &s, &set(&["a", "b"]), &set(&["x"]), &Budget::default())
                .unwrap();
        assert!(report.verified);
    }

    #[test]
    fn gs_minimal_round_trips_a_singleton() {
        let s: ExplanationSet = [e(&["a", "b"], &["x"])].into_iter().collect();
        let g = build_gs_minimal(
            &s,
            &set(&["a", "b"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(print_formula(&g), ["a & b -> x"]);
        let report = verify_min_supports_exactly(
            &g,
            &s,
            &set(&["a", "b"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        assert!(report.verified);
    }

    #[test]
    fn gs_minimal_rejects_minority_violations() {
        let s: ExplanationSet = [e(&["a"], &["x"]), e(&["a", "b"], &["x"])]
            .into_iter()
            .collect();
        let g = build_gs_minimal(
            &s,
            &set(&["a", "b"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        let report = verify_min_supports_exactly(
            &g,
            &s,
            &set(&["a", "b"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        assert!(!report.verified);
        let (expl, dir) = report.mismatch.unwrap();
        assert_eq!(expl, e(&["a", "b"], &["x"]));
        assert_eq!(dir, MismatchDirection::Missing);
    }

    #[test]
    fn gs_minimal_of_empty_set() {
        let g = build_gs_minimal(
            &ExplanationSet::new(),
            &set(&["a"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        let report = verify_min_supports_exactly(
            &g,
            &ExplanationSet::new(),
            &set(&["a"]),
            &set(&["x"]),
            &Ordering::Subset,
            &Budget::default(),
        )
        .unwrap();
        assert!(report.verified);
    }

    #[test]
    fn verify_reports_missing_members() {
        let f = crate::logic::parse_formula(&["a -> x"]).unwrap();
        let want: ExplanationSet = [e(&["a"], &["x"]), e(&["c"], &["y"])].into_iter().collect();
        let report = verify_supports_exactly(
            &f,
            &want,
            &set(&["a", "b", "c"]),
            &set(&["x", "y"]),
            &Budget::default(),
        )
        .unwrap();
        assert!(!report.verified);
        // ab => x is supported but absent from the wanted set
        let (expl, dir) = report.mismatch.unwrap();
        assert_eq!(expl, e(&["a", "b"], &["x"]));
        assert_eq!(dir, MismatchDirection::Extra);
    }

    #[test]
    fn realize_the_conjunctive_counterexample() {
        let s: ExplanationSet = [e(&["a"], &["x"]), e(&["a"], &["y"])].into_iter().collect();
        let (f, fresh) =
            realize_as_forgetting(&s, &set(&["a"]), &set(&["x", "y"])).unwrap();
        assert_eq!(fresh.len(), 2);
        let all_i: VarSet = set(&["a"]).union(&fresh).cloned().collect();
        let frame = AbductionFrame::new(f, all_i, set(&["x", "y"])).unwrap();
        let remember = set(&["a", "x", "y"]);
        let got = focus(&frame, &remember, &Mode::All, &Budget::default()).unwrap();
        assert_eq!(got, s);
    }

    #[test]
    fn realize_rejects_non_monotone_sets() {
        let s: ExplanationSet = [e(&["a"], &["x", "y"])].into_iter().collect();
        let err = realize_as_forgetting(&s, &set(&["a"]), &set(&["x", "y"])).unwrap_err();
        assert!(matches!(
            err,
            SynthesisError::NotConsequentiallyMonotone(_)
        ));
    }

    #[test]
    fn realize_empty_set() {
        let (f, fresh) =
            realize_as_forgetting(&ExplanationSet::new(), &set(&["a"]), &set(&["x"])).unwrap();
        assert!(f.is_empty());
        assert!(fresh.is_empty());
    }

    #[test]
    fn realize_downward_closed_composite() {
        let s: ExplanationSet = [
            e(&["a", "b"], &["x", "y"]),
            e(&["a", "b"], &["x"]),
            e(&["a", "b"], &["y"]),
        ]
        .into_iter()
        .collect();
        let (f, fresh) =
            realize_as_forgetting(&s, &set(&["a", "b"]), &set(&["x", "y"])).unwrap();
        assert_eq!(fresh.len(), 3);
        let all_i: VarSet = set(&["a", "b"]).union(&fresh).cloned().collect();
        let frame = AbductionFrame::new(f, all_i, set(&["x", "y"])).unwrap();
        let got = focus(&frame, &set(&["a", "b", "x", "y"]), &Mode::All, &Budget::default())
            .unwrap();
        assert_eq!(got, s);
    }
}
