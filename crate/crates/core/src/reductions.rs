//! The two QBF-hardness instances and a brute-force evaluator for
//! `∃X ∀Y ∃Z . F`, for cross-validating the constructions at small sizes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::abduction::{AbductionFrame, FrameError};
use crate::logic::{parse_sentence, Formula, FormulaNode, ParseError, VariableId};

type VarSet = BTreeSet<VariableId>;

/// Brute-force evaluation is capped at 18 quantified variables.
pub const MAX_QBF_VARS: usize = 18;

/// `∃X ∀Y ∃Z . matrix` with equally long, pairwise disjoint blocks.
#[derive(Clone, Debug)]
pub struct QbfInstance {
    x_vars: Vec<VariableId>,
    y_vars: Vec<VariableId>,
    z_vars: Vec<VariableId>,
    matrix: FormulaNode,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QbfError {
    #[error("quantifier blocks must have equal nonzero lengths (got {0}, {1}, {2})")]
    UnequalBlocks(usize, usize, usize),
    #[error("variable {0} appears in two quantifier blocks")]
    OverlappingBlocks(VariableId),
    #[error("matrix variable {0} is not bound by any quantifier")]
    UnboundMatrixVariable(VariableId),
    #[error("{required} quantified variables exceed the brute-force cap of {MAX_QBF_VARS}")]
    BudgetExceeded { required: usize },
}

impl QbfInstance {
    pub fn new(
        x_vars: Vec<VariableId>,
        y_vars: Vec<VariableId>,
        z_vars: Vec<VariableId>,
        matrix: FormulaNode,
    ) -> Result<Self, QbfError> {
        let n = x_vars.len();
        if n == 0 || y_vars.len() != n || z_vars.len() != n {
            return Err(QbfError::UnequalBlocks(n, y_vars.len(), z_vars.len()));
        }
        let mut seen = VarSet::new();
        for v in x_vars.iter().chain(&y_vars).chain(&z_vars) {
            if !seen.insert(v.clone()) {
                return Err(QbfError::OverlappingBlocks(v.clone()));
            }
        }
        let mut used = VarSet::new();
        matrix.collect_vars(&mut used);
        if let Some(stray) = used.difference(&seen).next() {
            return Err(QbfError::UnboundMatrixVariable(stray.clone()));
        }
        Ok(QbfInstance {
            x_vars,
            y_vars,
            z_vars,
            matrix,
        })
    }

    pub fn block_len(&self) -> usize {
        self.x_vars.len()
    }

    pub fn matrix(&self) -> &FormulaNode {
        &self.matrix
    }
}

/// Brute-force validity of `∃X ∀Y ∃Z . matrix`.
pub fn eval_qbf(q: &QbfInstance) -> Result<bool, QbfError> {
    let n = q.block_len();
    if 3 * n > MAX_QBF_VARS {
        return Err(QbfError::BudgetExceeded { required: 3 * n });
    }
    let order: Vec<&VariableId> = q
        .x_vars
        .iter()
        .chain(&q.y_vars)
        .chain(&q.z_vars)
        .collect();
    let index: BTreeMap<&VariableId, usize> =
        order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let holds = |xm: u32, ym: u32, zm: u32| {
        q.matrix.eval(&|v| {
            let i = index[v];
            let (block, offset) = (i / n, i % n);
            let mask = [xm, ym, zm][block];
            mask >> offset & 1 == 1
        })
    };
    let size = 1u32 << n;
    Ok((0..size).any(|xm| (0..size).all(|ym| (0..size).any(|zm| holds(xm, ym, zm)))))
}

/// A generated hardness instance: the abduction frame, the variables to
/// remember, and the role of every generated variable.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub frame: AbductionFrame,
    pub remember: VarSet,
    pub fresh_map: BTreeMap<String, VariableId>,
}

struct NameGen {
    taken: VarSet,
}

impl NameGen {
    /// Append primes until the candidate avoids the matrix variables.
    fn fresh(&mut self, base: &str) -> VariableId {
        let mut name = base.to_string();
        loop {
            let v = VariableId::new(&name).expect("generated names are valid");
            if !self.taken.contains(&v) {
                self.taken.insert(v.clone());
                return v;
            }
            name.push('\'');
        }
    }
}

fn not_var(v: &VariableId) -> FormulaNode {
    FormulaNode::not(FormulaNode::var(v.clone()))
}

fn neither(p: &VariableId, n: &VariableId) -> FormulaNode {
    FormulaNode::and(vec![not_var(p), not_var(n)])
}

/// The conjunctive-condition instance. The frame summarized on `remember`
/// violates the conjunctive condition exactly when the QBF is true, for
/// block length at least two.
pub fn reduce_to_conjunctive(q: &QbfInstance) -> Result<ReductionOutput, FrameError> {
    let n = q.block_len();
    let mut gen = NameGen {
        taken: {
            let mut t = VarSet::new();
            q.matrix.collect_vars(&mut t);
            t.extend(q.x_vars.iter().cloned());
            t.extend(q.y_vars.iter().cloned());
            t.extend(q.z_vars.iter().cloned());
            t
        },
    };
    let mut fresh_map = BTreeMap::new();
    let role = |gen: &mut NameGen, map: &mut BTreeMap<String, VariableId>, name: String| {
        let v = gen.fresh(&name);
        map.insert(name, v.clone());
        v
    };
    let xp: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("x{i}_p")))
        .collect();
    let xn: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("x{i}_n")))
        .collect();
    let xs: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("x{i}_s")))
        .collect();
    let yp: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("y{i}_p")))
        .collect();
    let yn: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("y{i}_n")))
        .collect();
    let ms: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("m{i}")))
        .collect();

    let mut sentences = Vec::new();
    for i in 0..n {
        sentences.push(FormulaNode::clause([&xp[i], &xs[i]].into_iter(), Some(&ms[i])));
        sentences.push(FormulaNode::clause([&xn[i], &xs[i]].into_iter(), Some(&ms[i])));
        sentences.push(FormulaNode::clause([&xp[i], &xn[i]].into_iter(), None));
        let mut body = vec![&xs[i]];
        body.extend(ms.iter());
        sentences.push(FormulaNode::clause(body.into_iter(), None));
        sentences.push(FormulaNode::clause([&xp[i]].into_iter(), Some(&q.x_vars[i])));
        sentences.push(FormulaNode::implies(
            FormulaNode::var(xn[i].clone()),
            not_var(&q.x_vars[i]),
        ));
        sentences.push(FormulaNode::clause([&yp[i]].into_iter(), Some(&q.y_vars[i])));
        sentences.push(FormulaNode::implies(
            FormulaNode::var(yn[i].clone()),
            not_var(&q.y_vars[i]),
        ));
    }
    let mut fm = vec![q.matrix.clone()];
    for i in 0..n {
        fm.push(neither(&xp[i], &xn[i]));
    }
    for i in 0..n {
        fm.push(neither(&yp[i], &yn[i]));
    }
    fm.push(FormulaNode::conj_of_vars(ms.iter()));
    sentences.push(FormulaNode::Or(fm));

    let hypotheses: VarSet = xp
        .iter()
        .chain(&xn)
        .chain(&xs)
        .chain(&yp)
        .chain(&yn)
        .cloned()
        .collect();
    let manifestations: VarSet = ms.iter().cloned().collect();
    let remember: VarSet = xp.iter().chain(&xn).chain(&ms).cloned().collect();
    let frame = AbductionFrame::new(Formula::new(sentences), hypotheses, manifestations)?;
    Ok(ReductionOutput {
        frame,
        remember,
        fresh_map,
    })
}

/// The overreaching-monotony instance. The frame summarized on `remember`
/// violates overreaching monotony exactly when the QBF is true.
pub fn reduce_to_monotony(q: &QbfInstance) -> Result<ReductionOutput, FrameError> {
    let n = q.block_len();
    let mut gen = NameGen {
        taken: {
            let mut t = VarSet::new();
            t.extend(q.x_vars.iter().cloned());
            t.extend(q.y_vars.iter().cloned());
            t.extend(q.z_vars.iter().cloned());
            t
        },
    };
    let mut fresh_map = BTreeMap::new();
    let role = |gen: &mut NameGen, map: &mut BTreeMap<String, VariableId>, name: String| {
        let v = gen.fresh(&name);
        map.insert(name, v.clone());
        v
    };
    let a = role(&mut gen, &mut fresh_map, "a".into());
    let b = role(&mut gen, &mut fresh_map, "b".into());
    let c = role(&mut gen, &mut fresh_map, "c".into());
    let m = role(&mut gen, &mut fresh_map, "m".into());
    let xp: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("x{i}_p")))
        .collect();
    let xn: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("x{i}_n")))
        .collect();
    let yp: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("y{i}_p")))
        .collect();
    let yn: Vec<_> = (1..=n)
        .map(|i| role(&mut gen, &mut fresh_map, format!("y{i}_n")))
        .collect();

    let mut sentences = Vec::new();
    sentences.push(FormulaNode::clause([&a, &c].into_iter(), Some(&m)));
    for i in 0..n {
        sentences.push(FormulaNode::clause([&xp[i]].into_iter(), Some(&q.x_vars[i])));
        sentences.push(FormulaNode::implies(
            FormulaNode::var(xn[i].clone()),
            not_var(&q.x_vars[i]),
        ));
    }
    let mut xc_body = vec![FormulaNode::var(a.clone())];
    for i in 0..n {
        xc_body.push(FormulaNode::or(vec![
            FormulaNode::var(xp[i].clone()),
            FormulaNode::var(xn[i].clone()),
        ]));
    }
    sentences.push(FormulaNode::implies(FormulaNode::and(xc_body), not_var(&c)));
    for i in 0..n {
        sentences.push(FormulaNode::clause([&yp[i]].into_iter(), Some(&q.y_vars[i])));
        sentences.push(FormulaNode::implies(
            FormulaNode::var(yn[i].clone()),
            not_var(&q.y_vars[i]),
        ));
    }
    let mut fm = vec![q.matrix.clone(), not_var(&a), FormulaNode::var(c.clone())];
    for i in 0..n {
        fm.push(neither(&yp[i], &yn[i]));
    }
    fm.push(FormulaNode::var(m.clone()));
    sentences.push(FormulaNode::Or(fm));
    sentences.push(FormulaNode::clause([&a, &b].into_iter(), Some(&m)));

    let hypotheses: VarSet = [a.clone(), b.clone(), c.clone()]
        .into_iter()
        .chain(xp.iter().cloned())
        .chain(xn.iter().cloned())
        .chain(yp.iter().cloned())
        .chain(yn.iter().cloned())
        .collect();
    let manifestations: VarSet = [m.clone()].into_iter().collect();
    let remember: VarSet = [a, b, m]
        .into_iter()
        .chain(xp.iter().cloned())
        .chain(xn.iter().cloned())
        .collect();
    let frame = AbductionFrame::new(Formula::new(sentences), hypotheses, manifestations)?;
    Ok(ReductionOutput {
        frame,
        remember,
        fresh_map,
    })
}

#[derive(Debug, Error)]
pub enum QbfParseError {
    #[error("line {0}: expected header {1:?}")]
    MissingHeader(usize, &'static str),
    #[error("bad variable name in header: {0}")]
    BadName(String),
    #[error("missing matrix expression")]
    MissingMatrix,
    #[error(transparent)]
    Matrix(#[from] ParseError),
    #[error(transparent)]
    Instance(#[from] QbfError),
}

/// Text format: `exists:`, `forall:` and `exists2:` headers naming the three
/// blocks, then the matrix expression on the remaining lines.
pub fn parse_qbf(text: &str) -> Result<QbfInstance, QbfParseError> {
    let mut lines = text.lines();
    let mut block = |header: &'static str, lineno: usize| -> Result<Vec<VariableId>, QbfParseError> {
        let line = lines
            .next()
            .ok_or(QbfParseError::MissingHeader(lineno, header))?;
        let rest = line
            .trim()
            .strip_prefix(header)
            .ok_or(QbfParseError::MissingHeader(lineno, header))?;
        rest.split_whitespace()
            .map(|name| VariableId::new(name).map_err(|e| QbfParseError::BadName(e.to_string())))
            .collect()
    };
    let x = block("exists:", 1)?;
    let y = block("forall:", 2)?;
    let z = block("exists2:", 3)?;
    let matrix_text: String = lines.collect::<Vec<_>>().join("\n");
    if matrix_text.trim().is_empty() {
        return Err(QbfParseError::MissingMatrix);
    }
    let matrix = parse_sentence(&matrix_text)?;
    Ok(QbfInstance::new(x, y, z, matrix)?)
}
