//! The derivation engine: rule validators, certificate checking, bounded
//! goal-directed search, exact minimal heights at small scale, morphisms
//! and the derived judgment forms.

mod derivation;
mod exact;
mod morphism;
mod rules;
mod search;

pub use derivation::{cert_from_sexpr, cert_to_sexpr, check_derivation, expanded_size, Derivation};
pub use exact::ExactEngine;
pub use morphism::{
    check_ctx_eq, check_mor_eq, check_morphism, compose, identity_morphism, is_theory,
    morphism_bindings, substitute_judgment, ComponentReport, TheoryReport,
};
pub use rules::{
    canonical_sort, prefix_bindings, validate_step, KernelError, RuleName, Ruleset,
    CARTMELL_RULES, MODIFIED_RULES,
};
pub use search::{derive, DerivResult, Prover, SearchBudget};

pub(crate) use search::match_pattern as search_match;

use crate::syntax::{Judgment, Pretheory};

/// Minimal derivation height by iterative deepening within the budget's
/// expression universe; `None` when nothing was found, which never means
/// "not derivable".
pub fn height_ub(goal: &Judgment, theory: &Pretheory, budget: SearchBudget) -> Option<u32> {
    ExactEngine::new(goal, theory, budget).exact_height(goal)
}
