//! Brute-force oracles for the integration suites. Everything here works by
//! direct truth-table evaluation of the AST, independent of the library's
//! SAT-based path, so the two routes check each other.

#![allow(dead_code)]

use std::collections::BTreeSet;

use abforget::{AbductionFrame, Explanation, ExplanationSet, Formula, FormulaNode, VariableId};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub type VarSet = BTreeSet<VariableId>;

pub fn v(name: &str) -> VariableId {
    VariableId::new(name).unwrap()
}

pub fn vset(names: &[&str]) -> VarSet {
    names.iter().map(|n| v(n)).collect()
}

pub fn expl(e: &[&str], m: &[&str]) -> Explanation {
    Explanation::new(vset(e), vset(m)).unwrap()
}

pub fn eset(members: &[(&[&str], &[&str])]) -> ExplanationSet {
    members.iter().map(|(e, m)| expl(e, m)).collect()
}

/// Render a set as `("ab", "x")` pairs for compact fixture comparison.
pub fn named(s: &ExplanationSet) -> Vec<(String, String)> {
    s.iter()
        .map(|e| {
            let j = |s: &VarSet| s.iter().map(|v| v.name()).collect::<Vec<_>>().concat();
            (j(e.hypotheses()), j(e.manifestations()))
        })
        .collect()
}

/// All assignments over `universe` satisfying the formula, as bit masks.
fn models(f: &Formula, universe: &[VariableId], forced: &VarSet) -> Vec<u64> {
    let mut out = Vec::new();
    for m in 0..(1u64 << universe.len()) {
        let lookup = |var: &VariableId| {
            universe
                .iter()
                .position(|w| w == var)
                .map(|i| m >> i & 1 == 1)
                .unwrap_or(false)
        };
        if forced.iter().any(|fv| !lookup(fv)) {
            continue;
        }
        if f.eval(&lookup) {
            out.push(m);
        }
    }
    out
}

fn universe_of(frame: &AbductionFrame) -> Vec<VariableId> {
    let mut u: VarSet = frame.formula().alphabet().clone();
    u.extend(frame.hypotheses().iter().cloned());
    u.extend(frame.manifestations().iter().cloned());
    u.into_iter().collect()
}

/// Truth-table abduction: every consistent `E ⊆ I` paired with every
/// nonempty entailed `M ⊆ C`.
pub fn oracle_abduct(frame: &AbductionFrame) -> ExplanationSet {
    let universe = universe_of(frame);
    assert!(universe.len() <= 22, "oracle limited to 22 variables");
    let ivars: Vec<_> = frame.hypotheses().iter().cloned().collect();
    let cvars: Vec<_> = frame.manifestations().iter().cloned().collect();
    let mut out = ExplanationSet::new();
    for emask in 0..(1u64 << ivars.len()) {
        let e: VarSet = ivars
            .iter()
            .enumerate()
            .filter(|(i, _)| emask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let ms = models(frame.formula(), &universe, &e);
        if ms.is_empty() {
            continue;
        }
        let entailed: Vec<&VariableId> = cvars
            .iter()
            .filter(|c| {
                let pos = universe.iter().position(|w| &w == c).unwrap();
                ms.iter().all(|m| m >> pos & 1 == 1)
            })
            .collect();
        for mmask in 1..(1u64 << entailed.len()) {
            let m: VarSet = entailed
                .iter()
                .enumerate()
                .filter(|(i, _)| mmask >> i & 1 == 1)
                .map(|(_, v)| (*v).clone())
                .collect();
            out.insert(Explanation::new(e.clone(), m).unwrap());
        }
    }
    out
}

pub fn oracle_minabduct(frame: &AbductionFrame, ord: &abforget::Ordering) -> ExplanationSet {
    let all = oracle_abduct(frame);
    all.iter()
        .filter(|e| {
            !all.iter().any(|other| {
                other.manifestations() == e.manifestations()
                    && abforget::less(ord, other.hypotheses(), e.hypotheses())
            })
        })
        .cloned()
        .collect()
}

fn subsets(vars: &[VariableId]) -> Vec<VarSet> {
    (0..(1u64 << vars.len()))
        .map(|mask| {
            vars.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Focus by its quantified definition, not by projection: a member `E => M`
/// requires some `E' ⊆ I\R` and `M' ⊆ C\R` with `EE' => MM'` in the base.
pub fn oracle_focus(base: &ExplanationSet, i: &VarSet, c: &VarSet, r: &VarSet) -> ExplanationSet {
    let i_keep: Vec<_> = i.intersection(r).cloned().collect();
    let c_keep: Vec<_> = c.intersection(r).cloned().collect();
    let i_drop: Vec<_> = i.difference(r).cloned().collect();
    let c_drop: Vec<_> = c.difference(r).cloned().collect();
    let mut out = ExplanationSet::new();
    for e in subsets(&i_keep) {
        for m in subsets(&c_keep) {
            if m.is_empty() {
                continue;
            }
            let witnessed = subsets(&i_drop).into_iter().any(|e2| {
                subsets(&c_drop).into_iter().any(|m2| {
                    let ee: VarSet = e.union(&e2).cloned().collect();
                    let mm: VarSet = m.union(&m2).cloned().collect();
                    base.contains_parts(&ee, &mm)
                })
            });
            if witnessed {
                out.insert(Explanation::new(e.clone(), m).unwrap());
            }
        }
    }
    out
}

/// Summarize by its quantified definition.
pub fn oracle_summarize(
    base: &ExplanationSet,
    i: &VarSet,
    c: &VarSet,
    r: &VarSet,
) -> ExplanationSet {
    let i_keep: Vec<_> = i.intersection(r).cloned().collect();
    let c_keep: Vec<_> = c.intersection(r).cloned().collect();
    let i_drop: Vec<_> = i.difference(r).cloned().collect();
    let mut out = ExplanationSet::new();
    for e in subsets(&i_keep) {
        for m in subsets(&c_keep) {
            if m.is_empty() {
                continue;
            }
            let witnessed = subsets(&i_drop).into_iter().any(|e2| {
                let ee: VarSet = e.union(&e2).cloned().collect();
                base.contains_parts(&ee, &m)
            });
            if witnessed {
                out.insert(Explanation::new(e.clone(), m).unwrap());
            }
        }
    }
    out
}

/// Project the models of `f` onto `keep` (masks indexed by `keep` order).
pub fn oracle_model_projection(f: &Formula, keep: &[VariableId]) -> BTreeSet<u64> {
    let mut universe: VarSet = f.alphabet().clone();
    universe.extend(keep.iter().cloned());
    let universe: Vec<_> = universe.into_iter().collect();
    let mut out = BTreeSet::new();
    for m in models(f, &universe, &VarSet::new()) {
        let mut proj = 0u64;
        for (k, kv) in keep.iter().enumerate() {
            let pos = universe.iter().position(|w| w == kv).unwrap();
            if m >> pos & 1 == 1 {
                proj |= 1 << k;
            }
        }
        out.insert(proj);
    }
    out
}

// ---- random generators, all deterministic via ChaCha8 ----

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random clause-shaped formula over the given alphabets: bodies are
/// hypothesis conjunctions, heads are manifestations or falsum.
pub fn random_clause_formula(
    rng: &mut ChaCha8Rng,
    hypotheses: &[VariableId],
    manifestations: &[VariableId],
    max_clauses: usize,
) -> Formula {
    let n_clauses = rng.gen_range(1..=max_clauses);
    let mut sentences = Vec::new();
    for _ in 0..n_clauses {
        let body: Vec<&VariableId> = hypotheses
            .iter()
            .filter(|_| rng.gen_bool(0.45))
            .collect();
        let head = if rng.gen_bool(0.8) && !manifestations.is_empty() {
            Some(&manifestations[rng.gen_range(0..manifestations.len())])
        } else {
            None
        };
        sentences.push(FormulaNode::clause(body.into_iter(), head));
    }
    Formula::new(sentences)
}

/// A random general formula (negations, disjunctions, implications) over the
/// given variables.
pub fn random_general_formula(rng: &mut ChaCha8Rng, vars: &[VariableId]) -> Formula {
    fn node(rng: &mut ChaCha8Rng, vars: &[VariableId], depth: usize) -> FormulaNode {
        if depth == 0 || rng.gen_bool(0.35) {
            let leaf = FormulaNode::var(vars[rng.gen_range(0..vars.len())].clone());
            return if rng.gen_bool(0.3) {
                FormulaNode::not(leaf)
            } else {
                leaf
            };
        }
        match rng.gen_range(0..4) {
            0 => FormulaNode::not(node(rng, vars, depth - 1)),
            1 => FormulaNode::and(
                (0..rng.gen_range(2..4))
                    .map(|_| node(rng, vars, depth - 1))
                    .collect(),
            ),
            2 => FormulaNode::or(
                (0..rng.gen_range(2..4))
                    .map(|_| node(rng, vars, depth - 1))
                    .collect(),
            ),
            _ => FormulaNode::implies(node(rng, vars, depth - 1), node(rng, vars, depth - 1)),
        }
    }
    let n = rng.gen_range(1..=3);
    Formula::new((0..n).map(|_| node(rng, vars, 2)).collect())
}

/// A random explanation set over the full candidate grid, with a cap on the
/// member count.
pub fn random_set(
    rng: &mut ChaCha8Rng,
    hypotheses: &[VariableId],
    manifestations: &[VariableId],
    density: f64,
    max_members: usize,
) -> ExplanationSet {
    let mut members = Vec::new();
    for emask in 0..(1u64 << hypotheses.len()) {
        for mmask in 1..(1u64 << manifestations.len()) {
            let e: VarSet = hypotheses
                .iter()
                .enumerate()
                .filter(|(i, _)| emask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            let m: VarSet = manifestations
                .iter()
                .enumerate()
                .filter(|(i, _)| mmask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            if rng.gen_bool(density) {
                members.push(Explanation::new(e, m).unwrap());
            }
        }
    }
    members.shuffle(rng);
    members.truncate(max_members);
    members.into_iter().collect()
}

/// Hypothesis and manifestation alphabets `h1..hk`, `m1..mk`.
pub fn alphabet(prefix: &str, k: usize) -> Vec<VariableId> {
    (1..=k).map(|i| v(&format!("{prefix}{i}"))).collect()
}
