use serde::{Deserialize, Serialize};

/// One `variable IS term` condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Self {
            variable: variable.into(),
            term: term.into(),
        }
    }
}

/// Conjunctive rule with a constant consequent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: Vec<Clause>,
    pub consequent: f64,
}

impl Rule {
    pub fn new(antecedent: Vec<Clause>, consequent: f64) -> Self {
        Self { antecedent, consequent }
    }

    /// Two-clause shorthand, `IF a IS x AND b IS y THEN c`.
    pub fn pair(first: (&str, &str), second: (&str, &str), consequent: f64) -> Self {
        Self::new(
            vec![Clause::new(first.0, first.1), Clause::new(second.0, second.1)],
            consequent,
        )
    }
}
