//! Canonical printer. Output re-parses to the same tree modulo child order:
//! conjunct and disjunct children are printed in lexicographic order of their
//! rendered text, so printing is idempotent.

use super::ast::{Formula, FormulaNode};

const PREC_IMP: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_NOT: u8 = 3;

fn prec(node: &FormulaNode) -> u8 {
    match node {
        FormulaNode::Implies(_, _) => PREC_IMP,
        FormulaNode::Or(_) => PREC_OR,
        FormulaNode::And(_) => PREC_AND,
        FormulaNode::Not(_) => PREC_NOT,
        FormulaNode::Var(_) | FormulaNode::Const(_) => 4,
    }
}

fn render(node: &FormulaNode, min_prec: u8) -> String {
    // single-child junctions print as their child
    match node {
        FormulaNode::And(cs) | FormulaNode::Or(cs) if cs.len() == 1 => {
            return render(&cs[0], min_prec);
        }
        _ => {}
    }
    let body = match node {
        FormulaNode::Var(v) => v.name().to_string(),
        FormulaNode::Const(true) => "true".to_string(),
        FormulaNode::Const(false) => "false".to_string(),
        FormulaNode::Not(c) => format!("!{}", render(c, PREC_NOT)),
        FormulaNode::And(cs) => {
            let mut parts: Vec<_> = cs.iter().map(|c| render(c, PREC_NOT)).collect();
            parts.sort();
            parts.join(" & ")
        }
        FormulaNode::Or(cs) => {
            let mut parts: Vec<_> = cs.iter().map(|c| render(c, PREC_AND)).collect();
            parts.sort();
            parts.join(" | ")
        }
        FormulaNode::Implies(a, b) => {
            format!("{} -> {}", render(a, PREC_OR), render(b, PREC_IMP))
        }
    };
    if prec(node) < min_prec {
        format!("({body})")
    } else {
        body
    }
}

pub fn print_sentence(node: &FormulaNode) -> String {
    render(node, PREC_IMP)
}

/// One canonical line per sentence.
pub fn print_formula(f: &Formula) -> Vec<String> {
    f.sentences().iter().map(print_sentence).collect()
}
