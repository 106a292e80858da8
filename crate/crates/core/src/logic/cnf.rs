//! Compilation to CNF. Sentences already shaped like clauses (a conjunction
//! of positive variables implying a variable or falsum) become single clauses;
//! everything else goes through a definitional encoding with fresh variables,
//! so models of the CNF restricted to the original alphabet are exactly the
//! models of the source formula.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Formula, FormulaNode, VariableId};
use super::sat::{self, Lit};

pub struct CnfProgram {
    vars: Vec<VariableId>,
    index: BTreeMap<VariableId, u32>,
    n_original: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfProgram {
    pub fn original_vars(&self) -> BTreeSet<VariableId> {
        self.vars[..self.n_original].iter().cloned().collect()
    }

    pub fn auxiliary_vars(&self) -> BTreeSet<VariableId> {
        self.vars[self.n_original..].iter().cloned().collect()
    }

    /// Clauses as named literals, `true` marking a positive occurrence.
    pub fn clauses(&self) -> Vec<Vec<(VariableId, bool)>> {
        self.clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|l| (self.vars[l.var() as usize].clone(), l.is_positive()))
                    .collect()
            })
            .collect()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Satisfiability of the program together with extra unit literals.
    /// Literals over variables foreign to the program are free and only
    /// constrain each other.
    pub fn satisfiable_with(&self, literals: &[(VariableId, bool)]) -> bool {
        let mut extra_index: BTreeMap<&VariableId, u32> = BTreeMap::new();
        let mut next = self.vars.len() as u32;
        let mut assumptions = Vec::with_capacity(literals.len());
        for (v, positive) in literals {
            let idx = match self.index.get(v) {
                Some(&i) => i,
                None => *extra_index.entry(v).or_insert_with(|| {
                    let i = next;
                    next += 1;
                    i
                }),
            };
            assumptions.push(Lit::new(idx, *positive));
        }
        sat::satisfiable(next as usize, &self.clauses, &assumptions)
    }

    pub fn satisfiable(&self) -> bool {
        self.satisfiable_with(&[])
    }
}

struct Builder {
    vars: Vec<VariableId>,
    index: BTreeMap<VariableId, u32>,
    clauses: Vec<Vec<Lit>>,
    true_lit: Option<Lit>,
    next_aux: usize,
}

impl Builder {
    fn var_lit(&mut self, v: &VariableId) -> Lit {
        if let Some(&i) = self.index.get(v) {
            return Lit::positive(i);
        }
        let i = self.vars.len() as u32;
        self.vars.push(v.clone());
        self.index.insert(v.clone(), i);
        Lit::positive(i)
    }

    fn fresh_aux(&mut self) -> Lit {
        let mut name = format!("_t{}", self.next_aux);
        self.next_aux += 1;
        while self.index.contains_key(&VariableId::new(&name).unwrap()) {
            name.push('\'');
        }
        let v = VariableId::new(&name).unwrap();
        let i = self.vars.len() as u32;
        self.vars.push(v.clone());
        self.index.insert(v, i);
        Lit::positive(i)
    }

    fn constant(&mut self, value: bool) -> Lit {
        let t = match self.true_lit {
            Some(t) => t,
            None => {
                let t = self.fresh_aux();
                self.clauses.push(vec![t]);
                self.true_lit = Some(t);
                t
            }
        };
        if value {
            t
        } else {
            t.negated()
        }
    }

    /// Definitional encoding: returns a literal equivalent to the node.
    fn encode(&mut self, node: &FormulaNode) -> Lit {
        match node {
            FormulaNode::Var(v) => self.var_lit(v),
            FormulaNode::Const(b) => self.constant(*b),
            FormulaNode::Not(c) => self.encode(c).negated(),
            FormulaNode::And(cs) => {
                let lits: Vec<Lit> = cs.iter().map(|c| self.encode(c)).collect();
                let out = self.fresh_aux();
                let mut long = vec![out];
                for l in &lits {
                    self.clauses.push(vec![out.negated(), *l]);
                    long.push(l.negated());
                }
                self.clauses.push(long);
                out
            }
            FormulaNode::Or(cs) => {
                let lits: Vec<Lit> = cs.iter().map(|c| self.encode(c)).collect();
                let out = self.fresh_aux();
                let mut long = vec![out.negated()];
                for l in &lits {
                    self.clauses.push(vec![out, l.negated()]);
                    long.push(*l);
                }
                self.clauses.push(long);
                out
            }
            FormulaNode::Implies(a, b) => {
                let la = self.encode(a);
                let lb = self.encode(b);
                let out = self.fresh_aux();
                self.clauses.push(vec![out.negated(), la.negated(), lb]);
                self.clauses.push(vec![out, la]);
                self.clauses.push(vec![out, lb.negated()]);
                out
            }
        }
    }

    /// The `v1 & ... & vk -> head` shape that maps to a single clause.
    fn as_plain_clause(node: &FormulaNode) -> Option<(Vec<&VariableId>, Option<&VariableId>)> {
        fn positive_vars(node: &FormulaNode) -> Option<Vec<&VariableId>> {
            match node {
                FormulaNode::Var(v) => Some(vec![v]),
                FormulaNode::And(cs) => {
                    let mut out = Vec::new();
                    for c in cs {
                        match c {
                            FormulaNode::Var(v) => out.push(v),
                            _ => return None,
                        }
                    }
                    Some(out)
                }
                _ => None,
            }
        }
        match node {
            FormulaNode::Implies(a, b) => {
                let body = positive_vars(a)?;
                match &**b {
                    FormulaNode::Var(v) => Some((body, Some(v))),
                    FormulaNode::Const(false) => Some((body, None)),
                    _ => None,
                }
            }
            FormulaNode::Var(v) => Some((Vec::new(), Some(v))),
            _ => None,
        }
    }

    fn add_sentence(&mut self, node: &FormulaNode) {
        if let FormulaNode::Const(b) = node {
            if !b {
                self.clauses.push(Vec::new());
            }
            return;
        }
        if let Some((body, head)) = Self::as_plain_clause(node) {
            let mut clause: Vec<Lit> = body
                .into_iter()
                .map(|v| self.var_lit(v).negated())
                .collect();
            if let Some(h) = head {
                clause.push(self.var_lit(h));
            }
            self.clauses.push(clause);
            return;
        }
        let root = self.encode(node);
        self.clauses.push(vec![root]);
    }
}

pub fn to_cnf(f: &Formula) -> CnfProgram {
    let mut b = Builder {
        vars: Vec::new(),
        index: BTreeMap::new(),
        clauses: Vec::new(),
        true_lit: None,
        next_aux: 0,
    };
    // register the full alphabet first so original variables take the low indices
    for v in f.alphabet() {
        b.var_lit(v);
    }
    let n_original = b.vars.len();
    for s in f.sentences() {
        b.add_sentence(s);
    }
    CnfProgram {
        vars: b.vars,
        index: b.index,
        n_original,
        clauses: b.clauses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_formula;

    #[test]
    fn true_compiles_to_nothing() {
        let f = parse_formula(&["true"]).unwrap();
        let cnf = to_cnf(&f);
        assert_eq!(cnf.num_clauses(), 0);
        assert!(cnf.satisfiable());
    }

    #[test]
    fn contradiction_is_unsat() {
        let f = parse_formula(&["a", "!a"]).unwrap();
        let cnf = to_cnf(&f);
        assert!(!cnf.satisfiable());
    }

    #[test]
    fn clause_shapes_bypass_the_encoder() {
        let f = parse_formula(&["a & b -> x", "b & c -> false", "a"]).unwrap();
        let cnf = to_cnf(&f);
        assert!(cnf.auxiliary_vars().is_empty());
        assert_eq!(cnf.num_clauses(), 3);
    }

    #[test]
    fn projection_counts_models_of_disjunction() {
        // a | (b & c) has exactly 5 models over {a,b,c}
        let f = parse_formula(&["a | (b & c)"]).unwrap();
        let cnf = to_cnf(&f);
        let vars: Vec<_> = f.alphabet().iter().cloned().collect();
        let mut count = 0;
        for m in 0u32..8 {
            let lits: Vec<_> = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), (m >> i) & 1 == 1))
                .collect();
            let direct = f.eval(&|v| {
                lits.iter()
                    .find(|(w, _)| w == v)
                    .map(|(_, b)| *b)
                    .unwrap()
            });
            assert_eq!(cnf.satisfiable_with(&lits), direct);
            if direct {
                count += 1;
            }
        }
        assert_eq!(count, 5);
    }
}
