use std::collections::HashSet;

use super::lexer::{tokenize, Cursor, TokenKind};
use super::{ErrorKind, ParseError, Position};
use crate::fis::{
    AndOperator, Clause, FisError, FuzzyVariable, Interval, OutputVariable, Rule, SugenoFis, Term, TrapezoidMF,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableKind {
    Input,
    Output,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MfDecl {
    pub name: String,
    pub params: [f64; 4],
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableDecl {
    pub name: String,
    pub kind: VariableKind,
    pub unit: Option<String>,
    pub domain: (f64, f64),
    pub mfs: Vec<MfDecl>,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClauseDecl {
    pub variable: String,
    pub term: String,
    pub variable_pos: Position,
    pub term_pos: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleDecl {
    pub clauses: Vec<ClauseDecl>,
    pub output: String,
    pub output_pos: Position,
    pub consequent: f64,
    pub consequent_pos: Position,
    pub pos: Position,
}

/// Parsed `.fis` document with source positions retained for diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FisDocument {
    pub variables: Vec<VariableDecl>,
    pub rules: Vec<RuleDecl>,
    pub and_operator: Option<AndOperator>,
    pub and_operator_pos: Option<Position>,
}

const START: Position = Position { line: 1, column: 1 };

pub(super) fn parse_syntax(source: &str) -> Result<FisDocument, ParseError> {
    let mut cur = Cursor::new(tokenize(source)?);
    let mut doc = FisDocument::default();

    loop {
        cur.skip_newlines();
        let tok = cur.peek().clone();
        match &tok.kind {
            TokenKind::Eof => break,
            TokenKind::Word(w) if w == "variable" => {
                cur.next();
                let kind = if cur.peek_is_word("input") {
                    cur.next();
                    VariableKind::Input
                } else if cur.peek_is_word("output") {
                    cur.next();
                    VariableKind::Output
                } else {
                    return Err(cur.unexpected("'input' or 'output'"));
                };
                let (name, _) = cur.ident("variable name")?;
                let unit = match &cur.peek().kind {
                    TokenKind::Unit(u) => {
                        let u = u.clone();
                        cur.next();
                        Some(u)
                    }
                    _ => None,
                };
                cur.keyword("domain")?;
                let (lo, _) = cur.number("domain lower bound")?;
                let (hi, _) = cur.number("domain upper bound")?;
                doc.variables.push(VariableDecl {
                    name,
                    kind,
                    unit,
                    domain: (lo, hi),
                    mfs: Vec::new(),
                    pos: tok.pos,
                });
                while cur.peek_is_word("mf") {
                    parse_mf(&mut cur, &mut doc)?;
                }
                cur.end_of_statement()?;
            }
            TokenKind::Word(w) if w == "mf" => {
                while cur.peek_is_word("mf") {
                    parse_mf(&mut cur, &mut doc)?;
                }
                cur.end_of_statement()?;
            }
            TokenKind::Word(w) if w == "rule" => {
                cur.next();
                cur.keyword("IF")?;
                let mut clauses = Vec::new();
                loop {
                    let (variable, variable_pos) = cur.ident("variable name")?;
                    cur.keyword("IS")?;
                    let (term, term_pos) = cur.ident("term name")?;
                    clauses.push(ClauseDecl {
                        variable,
                        term,
                        variable_pos,
                        term_pos,
                    });
                    if cur.peek_is_word("AND") {
                        cur.next();
                    } else {
                        break;
                    }
                }
                cur.keyword("THEN")?;
                let (output, output_pos) = cur.ident("output variable name")?;
                if !matches!(cur.peek().kind, TokenKind::Equals) {
                    return Err(cur.unexpected("'='"));
                }
                cur.next();
                let (consequent, consequent_pos) = cur.number("consequent value")?;
                cur.end_of_statement()?;
                doc.rules.push(RuleDecl {
                    clauses,
                    output,
                    output_pos,
                    consequent,
                    consequent_pos,
                    pos: tok.pos,
                });
            }
            TokenKind::Word(w) if w == "set" => {
                cur.next();
                cur.keyword("and_operator")?;
                let op = if cur.peek_is_word("min") {
                    AndOperator::Min
                } else if cur.peek_is_word("product") {
                    AndOperator::Product
                } else {
                    return Err(cur.unexpected("'min' or 'product'"));
                };
                cur.next();
                cur.end_of_statement()?;
                if doc.and_operator.is_some() {
                    return Err(
                        ParseError::new(tok.pos, ErrorKind::Duplicate, "and_operator set more than once")
                            .with_token("set"),
                    );
                }
                doc.and_operator = Some(op);
                doc.and_operator_pos = Some(tok.pos);
            }
            _ => return Err(cur.unexpected("'variable', 'mf', 'rule' or 'set'")),
        }
    }
    Ok(doc)
}

fn parse_mf(cur: &mut Cursor, doc: &mut FisDocument) -> Result<(), ParseError> {
    let pos = cur.keyword("mf")?;
    let owner = match doc.variables.last_mut() {
        Some(v) if v.kind == VariableKind::Input => v,
        Some(v) => {
            return Err(ParseError::new(
                pos,
                ErrorKind::Syntax,
                format!("output variable '{}' takes no membership functions", v.name),
            )
            .with_token("mf"))
        }
        None => {
            return Err(
                ParseError::new(pos, ErrorKind::Syntax, "'mf' before any variable declaration").with_token("mf"),
            )
        }
    };
    let (name, _) = cur.ident("term name")?;
    cur.keyword("trap")?;
    let mut params = [0.0; 4];
    for p in params.iter_mut() {
        *p = cur.number("trapezoid breakpoint")?.0;
    }
    owner.mfs.push(MfDecl { name, params, pos });
    Ok(())
}

impl FisDocument {
    pub fn inputs(&self) -> impl Iterator<Item = &VariableDecl> {
        self.variables.iter().filter(|v| v.kind == VariableKind::Input)
    }

    pub fn output(&self) -> Option<&VariableDecl> {
        self.variables.iter().find(|v| v.kind == VariableKind::Output)
    }

    /// Every semantic problem in the document, in source order.
    pub fn validate(&self) -> Vec<ParseError> {
        let mut errs = Vec::new();
        if self.variables.is_empty() {
            errs.push(ParseError::new(START, ErrorKind::Invalid, "no variables declared"));
            return errs;
        }

        let mut seen = HashSet::new();
        let mut outputs = 0;
        for var in &self.variables {
            if !seen.insert(var.name.as_str()) {
                errs.push(
                    ParseError::new(
                        var.pos,
                        ErrorKind::Duplicate,
                        format!("duplicate variable '{}'", var.name),
                    )
                    .with_token(var.name.clone()),
                );
            }
            if var.kind == VariableKind::Output {
                outputs += 1;
                if outputs > 1 {
                    errs.push(
                        ParseError::new(var.pos, ErrorKind::Duplicate, "more than one output variable declared")
                            .with_token(var.name.clone()),
                    );
                }
            }
            let (lo, hi) = var.domain;
            let domain_ok = lo < hi;
            if !domain_ok {
                errs.push(ParseError::new(
                    var.pos,
                    ErrorKind::Invalid,
                    format!("domain of '{}' must satisfy lo < hi, got {lo} {hi}", var.name),
                ));
            }
            let mut terms = HashSet::new();
            for mf in &var.mfs {
                if !terms.insert(mf.name.as_str()) {
                    errs.push(
                        ParseError::new(
                            mf.pos,
                            ErrorKind::Duplicate,
                            format!("duplicate term '{}' in '{}'", mf.name, var.name),
                        )
                        .with_token(mf.name.clone()),
                    );
                }
                let [a, b, c, d] = mf.params;
                if !(a <= b && b <= c && c <= d) {
                    errs.push(
                        ParseError::new(
                            mf.pos,
                            ErrorKind::Invalid,
                            format!("breakpoints of '{}' must satisfy a <= b <= c <= d", mf.name),
                        )
                        .with_token(mf.name.clone()),
                    );
                } else if domain_ok && (a < lo || d > hi) {
                    errs.push(
                        ParseError::new(
                            mf.pos,
                            ErrorKind::Invalid,
                            format!("support of '{}' lies outside the domain of '{}'", mf.name, var.name),
                        )
                        .with_token(mf.name.clone()),
                    );
                }
            }
        }
        if self.inputs().next().is_none() {
            errs.push(ParseError::new(
                START,
                ErrorKind::Invalid,
                "no input variables declared",
            ));
        }
        let output = self.output();
        if output.is_none() {
            errs.push(ParseError::new(
                START,
                ErrorKind::Invalid,
                "no output variable declared",
            ));
        }

        let mut antecedents: Vec<(Vec<(&str, &str)>, usize)> = Vec::new();
        for (index, rule) in self.rules.iter().enumerate() {
            let mut used = HashSet::new();
            let mut resolved = true;
            for clause in &rule.clauses {
                match self.inputs().find(|v| v.name == clause.variable) {
                    None => {
                        resolved = false;
                        errs.push(
                            ParseError::new(
                                clause.variable_pos,
                                ErrorKind::UnresolvedName,
                                format!("unknown input variable '{}'", clause.variable),
                            )
                            .with_token(clause.variable.clone()),
                        );
                    }
                    Some(var) => {
                        if !var.mfs.iter().any(|m| m.name == clause.term) {
                            resolved = false;
                            errs.push(
                                ParseError::new(
                                    clause.term_pos,
                                    ErrorKind::UnresolvedName,
                                    format!("unknown term '{}' for variable '{}'", clause.term, clause.variable),
                                )
                                .with_token(clause.term.clone()),
                            );
                        }
                    }
                }
                if !used.insert(clause.variable.as_str()) {
                    resolved = false;
                    errs.push(
                        ParseError::new(
                            clause.variable_pos,
                            ErrorKind::Duplicate,
                            format!("more than one clause on '{}' in one rule", clause.variable),
                        )
                        .with_token(clause.variable.clone()),
                    );
                }
            }
            if let Some(out) = output {
                if rule.output != out.name {
                    errs.push(
                        ParseError::new(
                            rule.output_pos,
                            ErrorKind::UnresolvedName,
                            format!("'{}' is not the output variable", rule.output),
                        )
                        .with_token(rule.output.clone()),
                    );
                } else {
                    let (lo, hi) = out.domain;
                    if rule.consequent < lo || rule.consequent > hi {
                        errs.push(ParseError::new(
                            rule.consequent_pos,
                            ErrorKind::Invalid,
                            format!("consequent {} lies outside output domain [{lo}, {hi}]", rule.consequent),
                        ));
                    }
                }
            }
            if resolved {
                let mut key: Vec<(&str, &str)> = rule
                    .clauses
                    .iter()
                    .map(|c| (c.variable.as_str(), c.term.as_str()))
                    .collect();
                key.sort_unstable();
                if let Some((_, first)) = antecedents.iter().find(|(k, _)| *k == key) {
                    errs.push(ParseError::new(
                        rule.pos,
                        ErrorKind::Duplicate,
                        format!("antecedent duplicates the rule on line {}", self.rules[*first].pos.line),
                    ));
                } else {
                    antecedents.push((key, index));
                }
            }
        }
        errs.sort_by_key(|e| (e.line, e.column));
        errs
    }

    /// Builds the inference system. Fails only on documents that did not
    /// pass [`FisDocument::validate`].
    pub fn to_fis(&self) -> Result<SugenoFis, FisError> {
        let inputs = self
            .inputs()
            .map(|v| {
                let terms = v
                    .mfs
                    .iter()
                    .map(|m| {
                        let [a, b, c, d] = m.params;
                        Ok(Term {
                            name: m.name.clone(),
                            mf: TrapezoidMF::new(a, b, c, d)?,
                        })
                    })
                    .collect::<Result<Vec<_>, FisError>>()?;
                FuzzyVariable::new(
                    v.name.clone(),
                    v.unit.clone(),
                    Interval::new(v.domain.0, v.domain.1)?,
                    terms,
                )
            })
            .collect::<Result<Vec<_>, FisError>>()?;
        let out = self.output().ok_or(FisError::NoInputs)?;
        let output = OutputVariable {
            name: out.name.clone(),
            domain: Interval::new(out.domain.0, out.domain.1)?,
        };
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Rule::new(
                    r.clauses
                        .iter()
                        .map(|c| Clause::new(c.variable.clone(), c.term.clone()))
                        .collect(),
                    r.consequent,
                )
            })
            .collect();
        SugenoFis::new(inputs, output, rules, self.and_operator.unwrap_or_default())
    }
}
