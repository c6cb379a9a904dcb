use serde::{Deserialize, Serialize};

use super::{is_identifier, FisError, Interval, TrapezoidMF};

/// A named linguistic term of an input variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub mf: TrapezoidMF,
}

/// Fuzzy input variable: a crisp domain partitioned by ordered linguistic
/// terms.
///
/// The supports of the terms need not cover the whole domain. Points that no
/// term covers cannot fire any rule; see [`FuzzyVariable::uncovered`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyVariable {
    name: String,
    unit: Option<String>,
    domain: Interval,
    terms: Vec<Term>,
}

impl FuzzyVariable {
    pub fn new(
        name: impl Into<String>,
        unit: Option<String>,
        domain: Interval,
        terms: Vec<Term>,
    ) -> Result<Self, FisError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(FisError::InvalidName(name));
        }
        if let Some(u) = &unit {
            if u.is_empty() || u.chars().any(|c| c.is_whitespace() || c == '[' || c == ']') {
                return Err(FisError::InvalidUnit(u.clone()));
            }
        }
        for (i, term) in terms.iter().enumerate() {
            if !is_identifier(&term.name) {
                return Err(FisError::InvalidName(term.name.clone()));
            }
            if terms[..i].iter().any(|t| t.name == term.name) {
                return Err(FisError::DuplicateTerm {
                    variable: name,
                    term: term.name.clone(),
                });
            }
            let (a, d) = term.mf.support();
            if !domain.contains(a) || !domain.contains(d) {
                return Err(FisError::SupportOutsideDomain {
                    variable: name,
                    term: term.name.clone(),
                });
            }
        }
        Ok(Self {
            name,
            unit,
            domain,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> Option<&str> {
        self.unit.as_deref()
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.name == name)
    }

    pub fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == name)
    }

    /// Degrees of `x` in every term, in declaration order.
    pub fn fuzzify(&self, x: f64) -> Vec<f64> {
        self.terms.iter().map(|t| t.mf.degree(x)).collect()
    }

    /// Maximal open sub-intervals of the domain where every term has degree 0.
    ///
    /// Endpoints of a support have degree 0 unless they are vertical
    /// shoulders, so the returned gaps are reported as closed intervals
    /// `[lo, hi]` containing all zero-degree points between covered stretches.
    pub fn uncovered(&self) -> Vec<(f64, f64)> {
        let mut covered: Vec<(f64, f64)> = self.terms.iter().map(|t| t.mf.support()).collect();
        covered.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut gaps = Vec::new();
        let mut cursor = self.domain.lo();
        for (a, d) in covered {
            if a > cursor {
                gaps.push((cursor, a));
            }
            cursor = cursor.max(d);
        }
        if cursor < self.domain.hi() {
            gaps.push((cursor, self.domain.hi()));
        }
        gaps
    }
}
