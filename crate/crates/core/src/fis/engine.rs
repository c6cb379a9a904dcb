use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{is_identifier, FisError, FuzzyVariable, Interval, Rule};

/// T-norm used to conjoin the clauses of a rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AndOperator {
    #[default]
    Min,
    Product,
}

impl AndOperator {
    pub fn apply(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            AndOperator::Min => lhs.min(rhs),
            AndOperator::Product => lhs * rhs,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AndOperator::Min => "min",
            AndOperator::Product => "product",
        }
    }
}

impl fmt::Display for AndOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AndOperator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(AndOperator::Min),
            "product" => Ok(AndOperator::Product),
            other => Err(format!("unknown AND operator '{other}' (expected min or product)")),
        }
    }
}

/// Output of a zeroth-order system: a name and the interval consequents must
/// lie in. It carries no membership functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputVariable {
    pub name: String,
    pub domain: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InferenceResult {
    /// Weighted average of fired consequents, or 0 when nothing fired.
    pub raw: f64,
    pub fired_rules: usize,
    pub total_strength: f64,
}

impl InferenceResult {
    /// No rule fired: the input lies outside every rule's joint support.
    pub fn is_anomaly(&self) -> bool {
        self.fired_rules == 0
    }
}

/// Immutable Takagi-Sugeno inference system with constant consequents.
#[derive(Debug, Clone, PartialEq)]
pub struct SugenoFis {
    inputs: Vec<FuzzyVariable>,
    output: OutputVariable,
    rules: Vec<Rule>,
    and_operator: AndOperator,
    // (input index, term index) per clause, parallel to `rules`
    compiled: Vec<Vec<(usize, usize)>>,
}

impl SugenoFis {
    pub fn new(
        inputs: Vec<FuzzyVariable>,
        output: OutputVariable,
        rules: Vec<Rule>,
        and_operator: AndOperator,
    ) -> Result<Self, FisError> {
        if inputs.is_empty() {
            return Err(FisError::NoInputs);
        }
        for (i, v) in inputs.iter().enumerate() {
            if inputs[..i].iter().any(|w| w.name() == v.name()) {
                return Err(FisError::DuplicateVariable(v.name().to_string()));
            }
        }
        if !is_identifier(&output.name) {
            return Err(FisError::InvalidName(output.name.clone()));
        }
        if inputs.iter().any(|v| v.name() == output.name) {
            return Err(FisError::DuplicateVariable(output.name.clone()));
        }

        let mut compiled: Vec<Vec<(usize, usize)>> = Vec::with_capacity(rules.len());
        for (index, rule) in rules.iter().enumerate() {
            let clauses = resolve(&inputs, rule, index)?;
            if !rule.consequent.is_finite() || !output.domain.contains(rule.consequent) {
                return Err(FisError::ConsequentOutOfDomain {
                    rule: index,
                    value: rule.consequent,
                    domain: output.domain,
                });
            }
            let mut key = clauses.clone();
            key.sort_unstable();
            if let Some(first) = compiled.iter().position(|other| {
                let mut k = other.clone();
                k.sort_unstable();
                k == key
            }) {
                return Err(FisError::DuplicateAntecedent { first, second: index });
            }
            compiled.push(clauses);
        }

        Ok(Self {
            inputs,
            output,
            rules,
            and_operator,
            compiled,
        })
    }

    /// Same variables and operator with a different rule base.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self, FisError> {
        Self::new(self.inputs.clone(), self.output.clone(), rules, self.and_operator)
    }

    pub fn with_and_operator(mut self, op: AndOperator) -> Self {
        self.and_operator = op;
        self
    }

    pub fn inputs(&self) -> &[FuzzyVariable] {
        &self.inputs
    }

    pub fn input(&self, name: &str) -> Option<&FuzzyVariable> {
        self.inputs.iter().find(|v| v.name() == name)
    }

    pub fn output(&self) -> &OutputVariable {
        &self.output
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn and_operator(&self) -> AndOperator {
        self.and_operator
    }

    /// Firing strength of an arbitrary rule against `input` (one value per
    /// input variable, in declaration order). An empty antecedent fires with
    /// strength 1.
    pub fn firing_strength(&self, rule: &Rule, input: &[f64]) -> Result<f64, FisError> {
        self.check_arity(input)?;
        let clauses = resolve(&self.inputs, rule, 0)?;
        Ok(self.strength(&clauses, input))
    }

    /// Evaluates the system at `input`, one value per input variable in
    /// declaration order.
    pub fn infer(&self, input: &[f64]) -> Result<InferenceResult, FisError> {
        if self.rules.is_empty() {
            return Err(FisError::EmptyRuleBase);
        }
        self.check_arity(input)?;
        for (var, &x) in self.inputs.iter().zip(input) {
            if !var.domain().contains(x) {
                return Err(FisError::InputOutOfDomain {
                    variable: var.name().to_string(),
                    value: x,
                    domain: var.domain(),
                });
            }
        }

        let mut fired: Vec<(f64, f64)> = self
            .compiled
            .iter()
            .zip(&self.rules)
            .filter_map(|(clauses, rule)| {
                let w = self.strength(clauses, input);
                (w > 0.0).then_some((rule.consequent, w))
            })
            .collect();
        if fired.is_empty() {
            return Ok(InferenceResult {
                raw: 0.0,
                fired_rules: 0,
                total_strength: 0.0,
            });
        }

        // Summing in a canonical order makes the result independent of rule
        // order down to the last bit.
        fired.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let low = fired[0].0;
        let high = fired[fired.len() - 1].0;
        let total: f64 = fired.iter().map(|&(_, w)| w).sum();
        let excess: f64 = fired.iter().map(|&(c, w)| w * (c - low)).sum();
        // Offsetting by the smallest consequent keeps single-valued firings
        // exact and the average inside [low, high].
        let raw = (low + excess / total).clamp(low, high);

        Ok(InferenceResult {
            raw,
            fired_rules: fired.len(),
            total_strength: total,
        })
    }

    fn check_arity(&self, input: &[f64]) -> Result<(), FisError> {
        if input.len() != self.inputs.len() {
            return Err(FisError::InputArity {
                expected: self.inputs.len(),
                got: input.len(),
            });
        }
        Ok(())
    }

    fn strength(&self, clauses: &[(usize, usize)], input: &[f64]) -> f64 {
        clauses.iter().fold(1.0, |acc, &(v, t)| {
            let degree = self.inputs[v].terms()[t].mf.degree(input[v]);
            self.and_operator.apply(acc, degree)
        })
    }
}

fn resolve(inputs: &[FuzzyVariable], rule: &Rule, index: usize) -> Result<Vec<(usize, usize)>, FisError> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(rule.antecedent.len());
    for clause in &rule.antecedent {
        let v = inputs
            .iter()
            .position(|var| var.name() == clause.variable)
            .ok_or_else(|| FisError::UnknownVariable(clause.variable.clone()))?;
        let t = inputs[v]
            .term_index(&clause.term)
            .ok_or_else(|| FisError::UnknownTerm {
                variable: clause.variable.clone(),
                term: clause.term.clone(),
            })?;
        if out.iter().any(|&(seen, _)| seen == v) {
            return Err(FisError::RepeatedClause {
                rule: index,
                variable: clause.variable.clone(),
            });
        }
        out.push((v, t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fis::{Clause, Term, TrapezoidMF};

    fn var(name: &str, terms: &[(&str, [f64; 4])]) -> FuzzyVariable {
        FuzzyVariable::new(
            name,
            None,
            Interval::new(0.0, 100.0).unwrap(),
            terms
                .iter()
                .map(|(n, [a, b, c, d])| Term {
                    name: n.to_string(),
                    mf: TrapezoidMF::new(*a, *b, *c, *d).unwrap(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn system(rules: Vec<Rule>, op: AndOperator) -> SugenoFis {
        let x = var("X", &[("A", [0.0, 10.0, 20.0, 30.0]), ("C", [20.0, 30.0, 40.0, 50.0])]);
        let y = var("Y", &[("B", [0.0, 0.0, 50.0, 60.0]), ("D", [50.0, 60.0, 70.0, 80.0])]);
        let output = OutputVariable {
            name: "Out".into(),
            domain: Interval::new(0.0, 6.0).unwrap(),
        };
        SugenoFis::new(vec![x, y], output, rules, op).unwrap()
    }

    #[test]
    fn firing_strength_min_and_product() {
        let rule = Rule::pair(("X", "A"), ("Y", "D"), 1.0);
        // X=25 -> A 0.5; Y=60 -> D 1.0
        let min = system(vec![], AndOperator::Min);
        assert_eq!(min.firing_strength(&rule, &[25.0, 60.0]).unwrap(), 0.5);
        // X=5 -> A 0.5; Y=58 -> D 0.8
        let product = system(vec![], AndOperator::Product);
        assert!((product.firing_strength(&rule, &[5.0, 58.0]).unwrap() - 0.4).abs() < 1e-15);
        // X=45 -> A 0.0
        assert_eq!(min.firing_strength(&rule, &[45.0, 58.0]).unwrap(), 0.0);
    }

    #[test]
    fn empty_antecedent_fires_fully() {
        let fis = system(vec![], AndOperator::Min);
        assert_eq!(
            fis.firing_strength(&Rule::new(vec![], 2.0), &[99.0, 99.0]).unwrap(),
            1.0
        );
    }

    #[test]
    fn unknown_names_are_configuration_errors() {
        let fis = system(vec![], AndOperator::Min);
        let bad_var = Rule::new(vec![Clause::new("Z", "A")], 1.0);
        assert_eq!(
            fis.firing_strength(&bad_var, &[0.0, 0.0]),
            Err(FisError::UnknownVariable("Z".into()))
        );
        let bad_term = Rule::new(vec![Clause::new("X", "Warp")], 1.0);
        assert!(matches!(
            fis.firing_strength(&bad_term, &[0.0, 0.0]),
            Err(FisError::UnknownTerm { .. })
        ));
    }

    #[test]
    fn single_rule_returns_consequent_exactly() {
        let fis = system(
            vec![
                Rule::pair(("X", "A"), ("Y", "B"), 3.0),
                Rule::pair(("X", "C"), ("Y", "D"), 5.0),
            ],
            AndOperator::Min,
        );
        // X=7 -> A 0.7, Y=10 -> B 1
        let r = fis.infer(&[7.0, 10.0]).unwrap();
        assert_eq!(r.raw, 3.0);
        assert_eq!(r.fired_rules, 1);
        assert!((r.total_strength - 0.7).abs() < 1e-15);
    }

    #[test]
    fn equal_weights_average_to_midpoint() {
        let fis = system(
            vec![
                Rule::pair(("X", "A"), ("Y", "B"), 2.0),
                Rule::pair(("X", "C"), ("Y", "B"), 3.0),
            ],
            AndOperator::Min,
        );
        let r = fis.infer(&[25.0, 10.0]).unwrap();
        assert_eq!(r.raw, 2.5);
        assert_eq!(r.fired_rules, 2);
    }

    #[test]
    fn uncovered_input_is_zero_with_no_fired_rules() {
        let fis = system(vec![Rule::pair(("X", "A"), ("Y", "B"), 3.0)], AndOperator::Min);
        let r = fis.infer(&[75.0, 10.0]).unwrap();
        assert_eq!(
            r,
            InferenceResult {
                raw: 0.0,
                fired_rules: 0,
                total_strength: 0.0
            }
        );
        assert!(r.is_anomaly());
    }

    #[test]
    fn out_of_domain_and_empty_rule_base_are_errors() {
        let empty = system(vec![], AndOperator::Min);
        assert_eq!(empty.infer(&[1.0, 1.0]), Err(FisError::EmptyRuleBase));
        let fis = system(vec![Rule::pair(("X", "A"), ("Y", "B"), 3.0)], AndOperator::Min);
        assert!(matches!(
            fis.infer(&[101.0, 1.0]),
            Err(FisError::InputOutOfDomain { .. })
        ));
        assert!(matches!(
            fis.infer(&[f64::NAN, 1.0]),
            Err(FisError::InputOutOfDomain { .. })
        ));
        assert!(matches!(fis.infer(&[1.0]), Err(FisError::InputArity { .. })));
    }

    #[test]
    fn construction_checks() {
        let dup = vec![
            Rule::pair(("X", "A"), ("Y", "B"), 3.0),
            Rule::pair(("Y", "B"), ("X", "A"), 4.0),
        ];
        let fis = system(vec![], AndOperator::Min);
        assert_eq!(
            fis.with_rules(dup).unwrap_err(),
            FisError::DuplicateAntecedent { first: 0, second: 1 }
        );
        let out_of_range = vec![Rule::pair(("X", "A"), ("Y", "B"), 7.0)];
        assert!(matches!(
            fis.with_rules(out_of_range),
            Err(FisError::ConsequentOutOfDomain { .. })
        ));
        let repeated = vec![Rule::pair(("X", "A"), ("X", "C"), 1.0)];
        assert!(matches!(fis.with_rules(repeated), Err(FisError::RepeatedClause { .. })));
    }

    #[test]
    fn and_operator_parses() {
        assert_eq!("min".parse::<AndOperator>(), Ok(AndOperator::Min));
        assert_eq!("product".parse::<AndOperator>(), Ok(AndOperator::Product));
        assert!("max".parse::<AndOperator>().is_err());
    }

    #[test]
    fn shareable_across_threads() {
        fn assert_sync<T: Send + Sync>() {}
        assert_sync::<SugenoFis>();
    }
}
