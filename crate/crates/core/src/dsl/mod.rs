//! Line-oriented text format for complete inference systems (`.fis`).
//!
//! ```text
//! # comment
//! set and_operator min
//! variable input Speed [km/h] domain 0 80
//!   mf Low trap 0 0 20 30
//!   mf High trap 20 30 80 80
//! variable output LoS domain 0 6
//! rule IF Speed IS High THEN LoS = 1
//! ```
//!
//! Membership functions attach to the most recent `variable input`
//! declaration and may follow it on the same line or on later lines.
//! Keywords and identifiers are case-sensitive. Numbers are plain decimals
//! with an optional sign and fraction.

mod document;
pub(crate) mod lexer;
mod serialize;

use std::fmt;

pub use document::{ClauseDecl, FisDocument, MfDecl, RuleDecl, VariableDecl, VariableKind};
pub use serialize::serialize;

use crate::fis::SugenoFis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    UnresolvedName,
    Duplicate,
    Invalid,
}

/// A diagnostic anchored at a 1-based line and column of the source.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ErrorKind,
    pub message: String,
    pub token: Option<String>,
}

impl ParseError {
    pub(crate) fn new(pos: Position, kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            line: pos.line,
            column: pos.column,
            kind,
            message: message.into(),
            token: None,
        }
    }

    pub(crate) fn with_token(mut self, token: impl Into<String>) -> Self {
        let token = token.into();
        self.token = (!token.is_empty()).then_some(token);
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// One syntax error, or every validation error found in a syntactically
/// valid document. Never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct DslError {
    pub errors: Vec<ParseError>,
}

impl DslError {
    pub fn first(&self) -> &ParseError {
        &self.errors[0]
    }
}

impl From<ParseError> for DslError {
    fn from(e: ParseError) -> Self {
        Self { errors: vec![e] }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.errors.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DslError {}

/// Parses and validates a `.fis` document.
pub fn parse(source: &str) -> Result<FisDocument, DslError> {
    let doc = document::parse_syntax(source)?;
    let problems = doc.validate();
    if problems.is_empty() {
        Ok(doc)
    } else {
        Err(DslError { errors: problems })
    }
}

/// [`parse`] for raw bytes; invalid UTF-8 is reported at its position.
pub fn parse_bytes(bytes: &[u8]) -> Result<FisDocument, DslError> {
    parse(decode_utf8(bytes)?)
}

/// Parses a document straight into an inference system.
pub fn parse_fis(source: &str) -> Result<SugenoFis, DslError> {
    let doc = parse(source)?;
    doc.to_fis().map_err(|e| {
        DslError::from(ParseError::new(
            Position { line: 1, column: 1 },
            ErrorKind::Invalid,
            e.to_string(),
        ))
    })
}

pub(crate) fn decode_utf8(bytes: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        // the prefix is valid UTF-8 by construction
        let prefix = std::str::from_utf8(valid).unwrap_or_default();
        let line = prefix.matches('\n').count() + 1;
        let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError::new(Position { line, column }, ErrorKind::Lexical, "invalid UTF-8")
    })
}
