//! The default theory that credulously supports a consequentially-monotone
//! explanation set, and an extension evaluator restricted to exactly the
//! class the construction emits: normal defaults over literal conjunctions
//! with a literal background. Anything outside that class is a hard error,
//! not an approximation of general Reiter semantics.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::abduction::{Explanation, ExplanationSet};
use crate::budget::{Budget, BudgetError};
use crate::logic::VariableId;

type VarSet = BTreeSet<VariableId>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VariableId,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: VariableId) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: VariableId) -> Self {
        Literal {
            var,
            positive: false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            write!(f, "!")?;
        }
        f.write_str(self.var.name())
    }
}

pub type LiteralSet = BTreeSet<Literal>;

fn consistent(lits: &LiteralSet) -> bool {
    lits.iter()
        .all(|l| !lits.contains(&Literal {
            var: l.var.clone(),
            positive: !l.positive,
        }))
}

/// `PRE : JUST / CONS` with literal-conjunction components. Emitted rules are
/// normal: justification and consequent coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefaultRule {
    pub prerequisite: VarSet,
    pub justification: LiteralSet,
    pub consequent: LiteralSet,
}

impl DefaultRule {
    pub fn is_normal(&self) -> bool {
        self.justification == self.consequent
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefaultTheory {
    pub defaults: Vec<DefaultRule>,
    pub background: LiteralSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefaultError {
    #[error("non-normal rule encountered; the evaluator only handles the emitted class")]
    NonNormal,
    #[error("background and assumptions form an inconsistent literal set")]
    InconsistentBackground,
    #[error(
        "two defaults jointly applicable; the input is outside the emitted class"
    )]
    JointlyApplicable,
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// One normal default per member: prerequisite `E`, justification and
/// consequent `E ∧ ¬(I\E) ∧ M ∧ ¬(C\M)`. The background is empty.
pub fn emit_default_theory(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
) -> DefaultTheory {
    let defaults = s
        .iter()
        .map(|e| {
            let mut lits: LiteralSet = LiteralSet::new();
            for v in e.hypotheses() {
                lits.insert(Literal::pos(v.clone()));
            }
            for v in hypotheses.difference(e.hypotheses()) {
                lits.insert(Literal::neg(v.clone()));
            }
            for v in e.manifestations() {
                lits.insert(Literal::pos(v.clone()));
            }
            for v in manifestations.difference(e.manifestations()) {
                lits.insert(Literal::neg(v.clone()));
            }
            DefaultRule {
                prerequisite: e.hypotheses().clone(),
                justification: lits.clone(),
                consequent: lits,
            }
        })
        .collect();
    DefaultTheory {
        defaults,
        background: LiteralSet::new(),
    }
}

/// Reiter extensions of `<D, W ∪ assumptions>` for the restricted class,
/// as literal sets. With no applicable default the single extension is the
/// background itself; otherwise one extension per applicable default. The
/// emitted class admits no chains of length two, and the evaluator checks
/// that rather than following longer chains.
pub fn extensions(
    theory: &DefaultTheory,
    assumptions: &VarSet,
) -> Result<Vec<LiteralSet>, DefaultError> {
    if theory.defaults.iter().any(|d| !d.is_normal()) {
        return Err(DefaultError::NonNormal);
    }
    let mut base = theory.background.clone();
    for v in assumptions {
        base.insert(Literal::pos(v.clone()));
    }
    if !consistent(&base) {
        return Err(DefaultError::InconsistentBackground);
    }
    let positives: VarSet = base
        .iter()
        .filter(|l| l.positive)
        .map(|l| l.var.clone())
        .collect();
    let applicable: Vec<&DefaultRule> = theory
        .defaults
        .iter()
        .filter(|d| {
            d.prerequisite.is_subset(&positives) && {
                let mut merged = base.clone();
                merged.extend(d.justification.iter().cloned());
                consistent(&merged)
            }
        })
        .collect();
    if applicable.is_empty() {
        return Ok(vec![base]);
    }
    let mut out = Vec::new();
    for d in &applicable {
        let mut ext = base.clone();
        ext.extend(d.consequent.iter().cloned());
        let ext_positives: VarSet = ext
            .iter()
            .filter(|l| l.positive)
            .map(|l| l.var.clone())
            .collect();
        for other in &theory.defaults {
            if std::ptr::eq(*d, other) {
                continue;
            }
            let mut merged = ext.clone();
            merged.extend(other.justification.iter().cloned());
            if other.prerequisite.is_subset(&ext_positives) && consistent(&merged) {
                return Err(DefaultError::JointlyApplicable);
            }
        }
        out.push(ext);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Credulous support: some consistent extension of `<D, W ∪ E>` entails all
/// of `M`. Entailment is literal lookup within the restricted class.
pub fn default_supports(
    theory: &DefaultTheory,
    expl: &Explanation,
) -> Result<bool, DefaultError> {
    let exts = extensions(theory, expl.hypotheses())?;
    Ok(exts.iter().any(|ext| {
        expl.manifestations()
            .iter()
            .all(|m| ext.contains(&Literal::pos(m.clone())))
    }))
}

/// Is the set exactly what its emitted theory supports? Per the paper this
/// holds precisely when the set is consequentially monotone.
pub fn verify_default_roundtrip(
    s: &ExplanationSet,
    hypotheses: &VarSet,
    manifestations: &VarSet,
    budget: &Budget,
) -> Result<bool, DefaultError> {
    budget.check_hypotheses(hypotheses.len())?;
    budget.check_manifestations(manifestations.len())?;
    let theory = emit_default_theory(s, hypotheses, manifestations);
    let ivars: Vec<_> = hypotheses.iter().cloned().collect();
    let cvars: Vec<_> = manifestations.iter().cloned().collect();
    for emask in 0..(1u64 << ivars.len()) {
        let e: VarSet = ivars
            .iter()
            .enumerate()
            .filter(|(i, _)| emask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let exts = extensions(&theory, &e)?;
        for mmask in 1..(1u64 << cvars.len()) {
            let m: VarSet = cvars
                .iter()
                .enumerate()
                .filter(|(i, _)| mmask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            let supported = exts.iter().any(|ext| {
                m.iter().all(|mv| ext.contains(&Literal::pos(mv.clone())))
            });
            if supported != s.contains_parts(&e, &m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Text form: one `PRE :: JUST / CONS` line per rule, literals
/// comma-separated with `!` marking negation; background literals, when
/// present, follow under a `[W]` header.
pub fn serialize_theory(theory: &DefaultTheory) -> String {
    let lits = |ls: &LiteralSet| {
        ls.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    for d in &theory.defaults {
        let pre = d
            .prerequisite
            .iter()
            .map(|v| v.name().to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "{} :: {} / {}\n",
            pre,
            lits(&d.justification),
            lits(&d.consequent)
        ));
    }
    if !theory.background.is_empty() {
        out.push_str("[W]\n");
        out.push_str(&lits(&theory.background));
        out.push('\n');
    }
    out
}
