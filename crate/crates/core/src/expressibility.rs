//! Decision procedures for the characterization conditions on explanation
//! sets. Every violated verdict carries a witness that re-verifies against
//! raw set membership; the reported witness is the lexicographically first.

use std::collections::BTreeSet;

use crate::abduction::{less, Explanation, ExplanationSet, Ordering};
use crate::budget::{Budget, BudgetError};
use crate::logic::{Formula, VariableId};
use crate::synthesis::{build_gs_all, verify_supports_exactly, SynthesisError, SynthesisReport};

type VarSet = BTreeSet<VariableId>;

/// Which side of the conjunctive biconditional failed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConjunctiveDirection {
    /// Both parts are in the set, their union is not.
    UnionMissing,
    /// The union is in the set, a part is not.
    PartMissing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Conjunctive {
        hypotheses: VarSet,
        m1: VarSet,
        m2: VarSet,
        direction: ConjunctiveDirection,
    },
    Monotony {
        lower: VarSet,
        middle: VarSet,
        upper: VarSet,
        m: VariableId,
        m_upper: VariableId,
    },
    Minority {
        greater: Explanation,
        lesser: Explanation,
    },
    Inconsistency {
        hypotheses: VarSet,
        sub_hypotheses: VarSet,
        manifestations: VarSet,
        sub_manifestations: VarSet,
    },
    Consequential {
        hypotheses: VarSet,
        manifestations: VarSet,
        missing_subset: VarSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionVerdict {
    fn holds() -> Self {
        ConditionVerdict {
            holds: true,
            witness: None,
        }
    }

    fn violated(witness: Witness) -> Self {
        ConditionVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

fn nonempty_proper_subsets(m: &VarSet) -> Vec<VarSet> {
    let vars: Vec<_> = m.iter().cloned().collect();
    let mut out = Vec::new();
    for mask in 1..(1u64 << vars.len()) - 1 {
        out.push(
            vars.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect(),
        );
    }
    out.sort();
    out
}

/// Conjunctive condition: the set contains `E => M1` and `E => M2` exactly
/// when it contains `E => M1 ∪ M2`.
pub fn check_conjunctive(s: &ExplanationSet) -> ConditionVerdict {
    let mut best: Option<(VarSet, VarSet, VarSet, ConjunctiveDirection)> = None;
    let mut offer = |cand: (VarSet, VarSet, VarSet, ConjunctiveDirection)| {
        if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
            best = Some(cand);
        }
    };
    for e1 in s.iter() {
        // union of two present parts must be present
        for e2 in s.iter() {
            if e1.hypotheses() != e2.hypotheses() {
                continue;
            }
            let union: VarSet = e1
                .manifestations()
                .union(e2.manifestations())
                .cloned()
                .collect();
            if !s.contains_parts(e1.hypotheses(), &union) {
                offer((
                    e1.hypotheses().clone(),
                    e1.manifestations().clone(),
                    e2.manifestations().clone(),
                    ConjunctiveDirection::UnionMissing,
                ));
            }
        }
        // every nonempty decomposition of a present member must be present;
        // it suffices to check the nonempty proper subsets
        for part in nonempty_proper_subsets(e1.manifestations()) {
            if !s.contains_parts(e1.hypotheses(), &part) {
                offer((
                    e1.hypotheses().clone(),
                    part,
                    e1.manifestations().clone(),
                    ConjunctiveDirection::PartMissing,
                ));
            }
        }
    }
    match best {
        None => ConditionVerdict::holds(),
        Some((hypotheses, m1, m2, direction)) => ConditionVerdict::violated(Witness::Conjunctive {
            hypotheses,
            m1,
            m2,
            direction,
        }),
    }
}

/// Overreaching monotony, on single-manifestation members only: whenever
/// `E => m` and `E'' => m'` are in the set and `E ⊆ E' ⊆ E''`, so is
/// `E' => m`.
pub fn check_overreaching_monotony(
    s: &ExplanationSet,
    universe_i: &VarSet,
    budget: &Budget,
) -> Result<ConditionVerdict, BudgetError> {
    budget.check_condition_universe(universe_i.len())?;
    let singles: Vec<(&VarSet, &VariableId)> = s
        .iter()
        .filter(|e| e.manifestations().len() == 1)
        .map(|e| (e.hypotheses(), e.manifestations().iter().next().unwrap()))
        .collect();
    let mut best: Option<(VarSet, VarSet, VarSet, VariableId, VariableId)> = None;
    for &(lower, m) in &singles {
        for &(upper, m_upper) in &singles {
            if !lower.is_subset(upper) {
                continue;
            }
            let gap: Vec<_> = upper.difference(lower).cloned().collect();
            for mask in 0..(1u64 << gap.len()) {
                let mut middle = lower.clone();
                for (i, v) in gap.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        middle.insert(v.clone());
                    }
                }
                let single: VarSet = [m.clone()].into_iter().collect();
                if !s.contains_parts(&middle, &single) {
                    let cand = (
                        lower.clone(),
                        middle,
                        upper.clone(),
                        m.clone(),
                        m_upper.clone(),
                    );
                    if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    Ok(match best {
        None => ConditionVerdict::holds(),
        Some((lower, middle, upper, m, m_upper)) => ConditionVerdict::violated(Witness::Monotony {
            lower,
            middle,
            upper,
            m,
            m_upper,
        }),
    })
}

/// Minority condition: no two members explain the same manifestations with
/// order-comparable hypothesis sets.
pub fn check_minority(s: &ExplanationSet, ord: &Ordering) -> ConditionVerdict {
    let mut best: Option<(Explanation, Explanation)> = None;
    for greater in s.iter() {
        for lesser in s.iter() {
            if greater.manifestations() == lesser.manifestations()
                && less(ord, lesser.hypotheses(), greater.hypotheses())
            {
                let cand = (greater.clone(), lesser.clone());
                if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
    }
    match best {
        None => ConditionVerdict::holds(),
        Some((greater, lesser)) => ConditionVerdict::violated(Witness::Minority { greater, lesser }),
    }
}

fn subsets_of(vars: &[VariableId]) -> impl Iterator<Item = VarSet> + '_ {
    (0..(1u64 << vars.len())).map(move |mask| {
        vars.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect()
    })
}

/// Inconsistency condition of the minimal setting: no `E => M` in the set
/// admits an `E' ⊆ E` and an absent `E' => M'` whose manifestations are each
/// covered from within `E'` while no lesser hypothesis set explains `M'`.
pub fn check_inconsistency_condition(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    ord: &Ordering,
    budget: &Budget,
) -> Result<ConditionVerdict, BudgetError> {
    budget.check_inconsistency(hypotheses.len())?;
    budget.check_manifestations(manifestations.len())?;
    let cvars: Vec<_> = manifestations.iter().cloned().collect();
    let mut best: Option<(VarSet, VarSet, VarSet, VarSet)> = None;
    for member in s.iter() {
        let e = member.hypotheses();
        let m = member.manifestations();
        let e_vec: Vec<_> = e.iter().cloned().collect();
        for e_sub in subsets_of(&e_vec) {
            for m_sub in subsets_of(&cvars) {
                if m_sub.is_empty() || s.contains_parts(&e_sub, &m_sub) {
                    continue;
                }
                let covered = m_sub.iter().all(|mv| {
                    s.iter().any(|other| {
                        other.hypotheses().is_subset(&e_sub)
                            && other.manifestations().contains(mv)
                    })
                });
                if !covered {
                    continue;
                }
                let lesser_explains = s.iter().any(|other| {
                    other.manifestations() == &m_sub && less(ord, other.hypotheses(), &e_sub)
                });
                if lesser_explains {
                    continue;
                }
                let cand = (e.clone(), e_sub.clone(), m.clone(), m_sub);
                if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(match best {
        None => ConditionVerdict::holds(),
        Some((hypotheses, sub_hypotheses, manifestations, sub_manifestations)) => {
            ConditionVerdict::violated(Witness::Inconsistency {
                hypotheses,
                sub_hypotheses,
                manifestations,
                sub_manifestations,
            })
        }
    })
}

/// Consequential monotony: downward closure on nonempty manifestation
/// subsets.
pub fn check_consequential_monotony(s: &ExplanationSet) -> ConditionVerdict {
    let mut best: Option<(VarSet, VarSet, VarSet)> = None;
    for e in s.iter() {
        for sub in nonempty_proper_subsets(e.manifestations()) {
            if !s.contains_parts(e.hypotheses(), &sub) {
                let cand = (e.hypotheses().clone(), e.manifestations().clone(), sub);
                if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
    }
    match best {
        None => ConditionVerdict::holds(),
        Some((hypotheses, manifestations, missing_subset)) => {
            ConditionVerdict::violated(Witness::Consequential {
                hypotheses,
                manifestations,
                missing_subset,
            })
        }
    }
}

/// The answer to "is this set the abduction output of some formula?", with
/// the synthesized formula when it is.
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub supportable: bool,
    pub conjunctive: ConditionVerdict,
    pub monotony: ConditionVerdict,
    pub formula: Option<Formula>,
    pub verification: Option<SynthesisReport>,
}

/// A set is supportable exactly when it satisfies the conjunctive and
/// overreaching monotony conditions; the verdict is cross-validated by
/// round-tripping the synthesized formula. The empty set is supported by the
/// inconsistent formula, which supports nothing.
pub fn is_supportable(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    budget: &Budget,
) -> Result<SupportReport, SynthesisError> {
    let conjunctive = check_conjunctive(s);
    let monotony = check_overreaching_monotony(s, hypotheses, budget)?;
    let supportable = conjunctive.holds && monotony.holds;
    if !supportable {
        return Ok(SupportReport {
            supportable,
            conjunctive,
            monotony,
            formula: None,
            verification: None,
        });
    }
    let formula = if s.is_empty() {
        Formula::new(vec![crate::logic::FormulaNode::Const(false)])
    } else {
        build_gs_all(s, hypotheses, manifestations, budget)?
    };
    let verification = verify_supports_exactly(&formula, s, hypotheses, manifestations, budget)?;
    Ok(SupportReport {
        supportable: verification.verified,
        conjunctive,
        monotony,
        formula: Some(formula),
        verification: Some(verification),
    })
}
