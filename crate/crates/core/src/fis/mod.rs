//! Zeroth-order Takagi-Sugeno inference over trapezoidal input terms.
//!
//! A [`SugenoFis`] holds its input variables, a single output domain and a
//! conjunctive rule base whose consequents are constants. Evaluation fuzzifies
//! each input, fires every rule with the configured AND operator and returns
//! the firing-strength weighted average of the fired consequents. An input
//! that fires no rule yields a raw value of exactly 0, which callers treat as
//! an anomaly marker.

mod engine;
mod membership;
mod rule;
mod variable;

pub use engine::{AndOperator, InferenceResult, OutputVariable, SugenoFis};
pub use membership::{membership_degree, Interval, TrapezoidMF};
pub use rule::{Clause, Rule};
pub use variable::{FuzzyVariable, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FisError {
    #[error("invalid interval [{lo}, {hi}]: bounds must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid trapezoid ({a}, {b}, {c}, {d}): breakpoints must be finite with a <= b <= c <= d")]
    InvalidTrapezoid { a: f64, b: f64, c: f64, d: f64 },
    #[error("'{0}' is not a valid identifier")]
    InvalidName(String),
    #[error("'{0}' is not a valid unit")]
    InvalidUnit(String),
    #[error("duplicate term '{term}' in variable '{variable}'")]
    DuplicateTerm { variable: String, term: String },
    #[error("support of term '{term}' lies outside the domain of '{variable}'")]
    SupportOutsideDomain { variable: String, term: String },
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("system needs at least one input variable")]
    NoInputs,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown term '{term}' for variable '{variable}'")]
    UnknownTerm { variable: String, term: String },
    #[error("rule {rule} has more than one clause on '{variable}'")]
    RepeatedClause { rule: usize, variable: String },
    #[error("rule {rule} consequent {value} lies outside output domain {domain}")]
    ConsequentOutOfDomain { rule: usize, value: f64, domain: Interval },
    #[error("rules {first} and {second} share an identical antecedent")]
    DuplicateAntecedent { first: usize, second: usize },
    #[error("rule base is empty")]
    EmptyRuleBase,
    #[error("expected {expected} input values, got {got}")]
    InputArity { expected: usize, got: usize },
    #[error("input {value} for '{variable}' lies outside domain {domain}")]
    InputOutOfDomain {
        variable: String,
        value: f64,
        domain: Interval,
    },
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
