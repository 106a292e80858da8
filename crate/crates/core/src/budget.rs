use thiserror::Error;

/// Caps on the brute-force searches. Exceeding a cap is a hard failure, never
/// a silent truncation: a truncated explanation set would invalidate every
/// downstream theorem check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Subset enumeration over hypotheses.
    pub max_hypotheses: usize,
    /// Subsets of the manifestation alphabet.
    pub max_manifestations: usize,
    /// Hypothesis universe for the pairwise condition checks.
    pub max_condition_universe: usize,
    /// Hypothesis alphabet for the inconsistency condition, which quantifies
    /// doubly over subsets.
    pub max_inconsistency_hypotheses: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_hypotheses: 16,
            max_manifestations: 12,
            max_condition_universe: 12,
            max_inconsistency_hypotheses: 8,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error("{required} hypotheses exceed the enumeration budget of {budget}")]
    Hypotheses { required: usize, budget: usize },
    #[error("{required} manifestations exceed the enumeration budget of {budget}")]
    Manifestations { required: usize, budget: usize },
    #[error("{required} hypotheses exceed the condition-check budget of {budget}")]
    ConditionUniverse { required: usize, budget: usize },
    #[error("{required} hypotheses exceed the inconsistency-condition budget of {budget}")]
    Inconsistency { required: usize, budget: usize },
}

impl Budget {
    pub fn check_hypotheses(&self, required: usize) -> Result<(), BudgetError> {
        if required > self.max_hypotheses {
            Err(BudgetError::Hypotheses {
                required,
                budget: self.max_hypotheses,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_manifestations(&self, required: usize) -> Result<(), BudgetError> {
        if required > self.max_manifestations {
            Err(BudgetError::Manifestations {
                required,
                budget: self.max_manifestations,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_condition_universe(&self, required: usize) -> Result<(), BudgetError> {
        if required > self.max_condition_universe {
            Err(BudgetError::ConditionUniverse {
                required,
                budget: self.max_condition_universe,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_inconsistency(&self, required: usize) -> Result<(), BudgetError> {
        if required > self.max_inconsistency_hypotheses {
            Err(BudgetError::Inconsistency {
                required,
                budget: self.max_inconsistency_hypotheses,
            })
        } else {
            Ok(())
        }
    }
}
