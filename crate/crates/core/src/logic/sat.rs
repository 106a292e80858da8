//! A small DPLL solver with unit propagation and pure-literal elimination.
//! Desk-scale instances never exceed a few hundred clauses, so there is no
//! clause learning and no incrementality.

/// A literal: variable index shifted left once, low bit set when negated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn positive(var: u32) -> Lit {
        Lit(var << 1)
    }

    pub fn negative(var: u32) -> Lit {
        Lit((var << 1) | 1)
    }

    pub fn new(var: u32, positive: bool) -> Lit {
        if positive {
            Lit::positive(var)
        } else {
            Lit::negative(var)
        }
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negated(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn sign(self) -> bool {
        self.is_positive()
    }
}

enum Propagation {
    Conflict,
    Done,
}

struct Search<'a> {
    clauses: &'a [Vec<Lit>],
    assign: Vec<Option<bool>>,
}

impl<'a> Search<'a> {
    fn value(&self, lit: Lit) -> Option<bool> {
        self.assign[lit.var() as usize].map(|v| v == lit.sign())
    }

    fn propagate(&mut self) -> Propagation {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut unassigned = None;
                let mut n_unassigned = 0;
                let mut satisfied = false;
                for &lit in clause {
                    match self.value(lit) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            n_unassigned += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match n_unassigned {
                    0 => return Propagation::Conflict,
                    1 => {
                        let lit = unassigned.unwrap();
                        self.assign[lit.var() as usize] = Some(lit.sign());
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Propagation::Done;
            }
        }
    }

    /// Assign every variable that occurs with a single polarity among the
    /// not-yet-satisfied clauses. Returns whether anything was assigned.
    fn assign_pure_literals(&mut self) -> bool {
        const NONE: u8 = 0;
        const POS: u8 = 1;
        const NEG: u8 = 2;
        let mut seen = vec![NONE; self.assign.len()];
        for clause in self.clauses {
            if clause.iter().any(|&l| self.value(l) == Some(true)) {
                continue;
            }
            for &lit in clause {
                if self.value(lit).is_none() {
                    seen[lit.var() as usize] |= if lit.is_positive() { POS } else { NEG };
                }
            }
        }
        let mut changed = false;
        for (var, &polarity) in seen.iter().enumerate() {
            if self.assign[var].is_none() && (polarity == POS || polarity == NEG) {
                self.assign[var] = Some(polarity == POS);
                changed = true;
            }
        }
        changed
    }

    fn all_satisfied(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| self.value(l) == Some(true)))
    }

    fn solve(&mut self) -> bool {
        loop {
            if let Propagation::Conflict = self.propagate() {
                return false;
            }
            if !self.assign_pure_literals() {
                break;
            }
        }
        if self.all_satisfied() {
            return true;
        }
        // branch on the first unassigned variable of an unsatisfied clause
        let var = self
            .clauses
            .iter()
            .filter(|c| !c.iter().any(|&l| self.value(l) == Some(true)))
            .flat_map(|c| c.iter())
            .find(|&&l| self.value(l).is_none())
            .map(|l| l.var());
        let var = match var {
            Some(v) => v,
            // every clause satisfied was handled above; unreachable in practice
            None => return true,
        };
        let saved = self.assign.clone();
        for value in [true, false] {
            self.assign[var as usize] = Some(value);
            if self.solve() {
                return true;
            }
            self.assign = saved.clone();
        }
        false
    }
}

/// Satisfiability of `clauses` together with the `assumptions` unit literals.
pub fn satisfiable(num_vars: usize, clauses: &[Vec<Lit>], assumptions: &[Lit]) -> bool {
    let mut assign = vec![None; num_vars];
    for &lit in assumptions {
        match assign[lit.var() as usize] {
            Some(v) if v != lit.sign() => return false,
            _ => assign[lit.var() as usize] = Some(lit.sign()),
        }
    }
    if clauses.iter().any(|c| c.is_empty()) {
        return false;
    }
    Search { clauses, assign }.solve()
}
