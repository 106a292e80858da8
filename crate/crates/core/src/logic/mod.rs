//! Propositional representation, parsing and decision procedures, plus
//! classical consequential forgetting.

pub mod ast;
pub mod cnf;
pub mod parse;
pub mod print;
mod sat;

use std::collections::BTreeSet;

pub use ast::{Formula, FormulaNode, VarNameError, VariableId};
pub use cnf::{to_cnf, CnfProgram};
pub use parse::{parse_formula, parse_sentence, ParseError};
pub use print::{print_formula, print_sentence};

/// Is `f` together with the positive unit literals of `assumptions`
/// satisfiable?
pub fn is_consistent(f: &Formula, assumptions: &BTreeSet<VariableId>) -> bool {
    let cnf = to_cnf(f);
    let lits: Vec<_> = assumptions.iter().map(|v| (v.clone(), true)).collect();
    cnf.satisfiable_with(&lits)
}

/// Does every model of `f` plus `assumptions` set all of `goal` true?
/// Decided one goal variable at a time through unsatisfiability.
pub fn entails(
    f: &Formula,
    assumptions: &BTreeSet<VariableId>,
    goal: &BTreeSet<VariableId>,
) -> bool {
    let cnf = to_cnf(f);
    let base: Vec<_> = assumptions.iter().map(|v| (v.clone(), true)).collect();
    goal.iter().all(|g| {
        let mut lits = base.clone();
        lits.push((g.clone(), false));
        !cnf.satisfiable_with(&lits)
    })
}

/// Classical consequential forgetting: the disjunction of all substitutions
/// of the dropped variables by constants, folded for readability. The result
/// mentions none of the dropped variables.
pub fn consequential_forget(f: &Formula, drop: &BTreeSet<VariableId>) -> Formula {
    let mut node = if f.is_empty() {
        FormulaNode::Const(true)
    } else if f.sentences().len() == 1 {
        f.sentences()[0].clone()
    } else {
        FormulaNode::And(f.sentences().to_vec())
    };
    for v in drop {
        if !f.alphabet().contains(v) {
            continue;
        }
        node = FormulaNode::Or(vec![node.substitute(v, true), node.substitute(v, false)]);
    }
    Formula::new(vec![node.fold_constants()])
}

/// Truth-table equivalence over the union alphabet. Only meant for desk-scale
/// formulas; panics beyond 20 variables.
pub fn equivalent(a: &Formula, b: &Formula) -> bool {
    let universe: Vec<VariableId> = a.alphabet().union(b.alphabet()).cloned().collect();
    assert!(universe.len() <= 20, "equivalence check limited to 20 variables");
    for m in 0u64..(1u64 << universe.len()) {
        let lookup = |v: &VariableId| {
            universe
                .iter()
                .position(|w| w == v)
                .map(|i| (m >> i) & 1 == 1)
                .unwrap_or(false)
        };
        if a.eval(&lookup) != b.eval(&lookup) {
            return false;
        }
    }
    true
}
