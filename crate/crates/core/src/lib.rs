//! Abductive forgetting for propositional logic: explanation enumeration,
//! the focus and summarize operators, the expressibility characterizations
//! with synthesized witnesses, the default-logic representation, and the
//! QBF hardness instances — all checked against brute force at desk scale.

pub mod abduction;
pub mod budget;
pub mod defaults;
pub mod expressibility;
pub mod forgetting;
pub mod logic;
pub mod reductions;
pub mod synthesis;

pub use abduction::{
    enumerate_explanations, less, minimal_explanations, supports, AbductError, AbductionFrame,
    Explanation, ExplanationSet, FrameError, Ordering,
};
pub use budget::{Budget, BudgetError};
pub use defaults::{
    default_supports, emit_default_theory, extensions, serialize_theory, verify_default_roundtrip,
    DefaultError, DefaultRule, DefaultTheory, Literal,
};
pub use expressibility::{
    check_conjunctive, check_consequential_monotony, check_inconsistency_condition,
    check_minority, check_overreaching_monotony, is_supportable, ConditionVerdict, SupportReport,
    Witness,
};
pub use forgetting::{focus, maximal_antichain, summarize, ForgetRequest, Mode, Operator};
pub use logic::{
    consequential_forget, entails, is_consistent, parse_formula, parse_sentence, print_formula,
    print_sentence, to_cnf, CnfProgram, Formula, FormulaNode, ParseError, VariableId,
};
pub use reductions::{
    eval_qbf, parse_qbf, reduce_to_conjunctive, reduce_to_monotony, QbfError, QbfInstance,
    QbfParseError, ReductionOutput,
};
pub use synthesis::{
    build_gs_all, build_gs_minimal, realize_as_forgetting, verify_min_supports_exactly,
    verify_supports_exactly, MismatchDirection, SynthesisError, SynthesisReport,
};
