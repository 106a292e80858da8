use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An interned propositional variable. Equality and ordering follow the name,
/// so every `BTreeSet<VariableId>` iterates in lexicographic order.
#[derive(Clone, Debug, Eq, PartialEq, Hash)]
pub struct VariableId(Arc<str>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarNameError {
    #[error("invalid variable name {0:?}")]
    Invalid(String),
    #[error("{0:?} is a reserved word and cannot name a variable")]
    Reserved(String),
}

impl VariableId {
    pub fn new(name: &str) -> Result<Self, VarNameError> {
        if name == "true" || name == "false" {
            return Err(VarNameError::Reserved(name.to_string()));
        }
        let mut chars = name.chars();
        let head_ok = chars
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false);
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            return Err(VarNameError::Invalid(name.to_string()));
        }
        Ok(VariableId(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Ord for VariableId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.as_ref().cmp(other.0.as_ref())
    }
}

impl PartialOrd for VariableId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A propositional sentence. Conjunction and disjunction keep explicit child
/// lists, which are never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormulaNode {
    Var(VariableId),
    Not(Box<FormulaNode>),
    And(Vec<FormulaNode>),
    Or(Vec<FormulaNode>),
    Implies(Box<FormulaNode>, Box<FormulaNode>),
    Const(bool),
}

impl FormulaNode {
    pub fn var(v: VariableId) -> Self {
        FormulaNode::Var(v)
    }

    pub fn not(node: FormulaNode) -> Self {
        FormulaNode::Not(Box::new(node))
    }

    /// Panics on an empty child list; the empty conjunction has no
    /// representation in this AST.
    pub fn and(children: Vec<FormulaNode>) -> Self {
        assert!(!children.is_empty(), "conjunction needs at least one child");
        FormulaNode::And(children)
    }

    pub fn or(children: Vec<FormulaNode>) -> Self {
        assert!(!children.is_empty(), "disjunction needs at least one child");
        FormulaNode::Or(children)
    }

    pub fn implies(antecedent: FormulaNode, consequent: FormulaNode) -> Self {
        FormulaNode::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// Conjunction of positive variables, or `true` when the set is empty.
    pub fn conj_of_vars<'a>(vars: impl IntoIterator<Item = &'a VariableId>) -> Self {
        let children: Vec<_> = vars
            .into_iter()
            .map(|v| FormulaNode::Var(v.clone()))
            .collect();
        match children.len() {
            0 => FormulaNode::Const(true),
            1 => children.into_iter().next().unwrap(),
            _ => FormulaNode::And(children),
        }
    }

    /// The clause `body -> head`, with `None` standing for falsum. An empty
    /// body yields the bare head.
    pub fn clause<'a>(
        body: impl IntoIterator<Item = &'a VariableId>,
        head: Option<&VariableId>,
    ) -> Self {
        let head_node = match head {
            Some(h) => FormulaNode::Var(h.clone()),
            None => FormulaNode::Const(false),
        };
        let body: Vec<_> = body.into_iter().collect();
        if body.is_empty() {
            head_node
        } else {
            FormulaNode::implies(FormulaNode::conj_of_vars(body), head_node)
        }
    }

    pub fn collect_vars(&self, acc: &mut BTreeSet<VariableId>) {
        match self {
            FormulaNode::Var(v) => {
                acc.insert(v.clone());
            }
            FormulaNode::Not(c) => c.collect_vars(acc),
            FormulaNode::And(cs) | FormulaNode::Or(cs) => {
                for c in cs {
                    c.collect_vars(acc);
                }
            }
            FormulaNode::Implies(a, b) => {
                a.collect_vars(acc);
                b.collect_vars(acc);
            }
            FormulaNode::Const(_) => {}
        }
    }

    /// Evaluate under a total assignment. Variables missing from `lookup`
    /// count as false.
    pub fn eval(&self, lookup: &dyn Fn(&VariableId) -> bool) -> bool {
        match self {
            FormulaNode::Var(v) => lookup(v),
            FormulaNode::Not(c) => !c.eval(lookup),
            FormulaNode::And(cs) => cs.iter().all(|c| c.eval(lookup)),
            FormulaNode::Or(cs) => cs.iter().any(|c| c.eval(lookup)),
            FormulaNode::Implies(a, b) => !a.eval(lookup) || b.eval(lookup),
            FormulaNode::Const(b) => *b,
        }
    }

    /// Replace a variable by a constant.
    pub fn substitute(&self, var: &VariableId, value: bool) -> FormulaNode {
        match self {
            FormulaNode::Var(v) if v == var => FormulaNode::Const(value),
            FormulaNode::Var(_) | FormulaNode::Const(_) => self.clone(),
            FormulaNode::Not(c) => FormulaNode::not(c.substitute(var, value)),
            FormulaNode::And(cs) => {
                FormulaNode::And(cs.iter().map(|c| c.substitute(var, value)).collect())
            }
            FormulaNode::Or(cs) => {
                FormulaNode::Or(cs.iter().map(|c| c.substitute(var, value)).collect())
            }
            FormulaNode::Implies(a, b) => {
                FormulaNode::implies(a.substitute(var, value), b.substitute(var, value))
            }
        }
    }

    /// Fold constants away. The result contains `Const` only as the whole
    /// node.
    pub fn fold_constants(&self) -> FormulaNode {
        match self {
            FormulaNode::Var(_) | FormulaNode::Const(_) => self.clone(),
            FormulaNode::Not(c) => match c.fold_constants() {
                FormulaNode::Const(b) => FormulaNode::Const(!b),
                other => FormulaNode::not(other),
            },
            FormulaNode::And(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    match c.fold_constants() {
                        FormulaNode::Const(false) => return FormulaNode::Const(false),
                        FormulaNode::Const(true) => {}
                        other => out.push(other),
                    }
                }
                match out.len() {
                    0 => FormulaNode::Const(true),
                    1 => out.into_iter().next().unwrap(),
                    _ => FormulaNode::And(out),
                }
            }
            FormulaNode::Or(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    match c.fold_constants() {
                        FormulaNode::Const(true) => return FormulaNode::Const(true),
                        FormulaNode::Const(false) => {}
                        other => out.push(other),
                    }
                }
                match out.len() {
                    0 => FormulaNode::Const(false),
                    1 => out.into_iter().next().unwrap(),
                    _ => FormulaNode::Or(out),
                }
            }
            FormulaNode::Implies(a, b) => {
                match (a.fold_constants(), b.fold_constants()) {
                    (FormulaNode::Const(false), _) => FormulaNode::Const(true),
                    (FormulaNode::Const(true), b) => b,
                    (_, FormulaNode::Const(true)) => FormulaNode::Const(true),
                    (a, FormulaNode::Const(false)) => match a {
                        FormulaNode::Not(inner) => *inner,
                        other => FormulaNode::not(other),
                    },
                    (a, b) => FormulaNode::implies(a, b),
                }
            }
        }
    }
}

/// A propositional formula: a list of sentences read conjunctively, plus the
/// exact set of variables occurring in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    sentences: Vec<FormulaNode>,
    alphabet: BTreeSet<VariableId>,
}

impl Formula {
    pub fn new(sentences: Vec<FormulaNode>) -> Self {
        let mut alphabet = BTreeSet::new();
        for s in &sentences {
            s.collect_vars(&mut alphabet);
        }
        Formula {
            sentences,
            alphabet,
        }
    }

    pub fn empty() -> Self {
        Formula::new(Vec::new())
    }

    pub fn sentences(&self) -> &[FormulaNode] {
        &self.sentences
    }

    pub fn alphabet(&self) -> &BTreeSet<VariableId> {
        &self.alphabet
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn eval(&self, lookup: &dyn Fn(&VariableId) -> bool) -> bool {
        self.sentences.iter().all(|s| s.eval(lookup))
    }
}
