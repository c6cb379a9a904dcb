use super::{ErrorKind, ParseError, Position};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Word(String),
    Number(f64),
    Unit(String),
    Equals,
    Newline,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: Position,
}

impl Token {
    pub fn describe(&self) -> String {
        match self.kind {
            TokenKind::Newline => "end of line".into(),
            TokenKind::Eof => "end of input".into(),
            _ => format!("'{}'", self.text),
        }
    }
}

/// Splits source text into tokens. `#` starts a comment running to the end
/// of the line; `\r` is treated as plain whitespace so CRLF input lexes like
/// LF input.
pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        match c {
            '\n' => {
                tokens.push(Token {
                    kind: TokenKind::Newline,
                    text: "\n".into(),
                    pos,
                });
                i += 1;
                line += 1;
                col = 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '=' => {
                tokens.push(Token {
                    kind: TokenKind::Equals,
                    text: "=".into(),
                    pos,
                });
                i += 1;
                col += 1;
            }
            '[' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i] != ']' && chars[i] != '\n' {
                    i += 1;
                }
                let inner: String = chars[start + 1..i.min(chars.len())].iter().collect();
                if i >= chars.len() || chars[i] != ']' {
                    return Err(
                        ParseError::new(pos, ErrorKind::Lexical, "unterminated unit, expected ']'")
                            .with_token(format!("[{inner}")),
                    );
                }
                i += 1;
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                if inner.is_empty() || inner.chars().any(|c| c.is_whitespace() || c == '[') {
                    return Err(ParseError::new(pos, ErrorKind::Lexical, "malformed unit").with_token(text));
                }
                tokens.push(Token {
                    kind: TokenKind::Unit(inner),
                    text,
                    pos,
                });
            }
            c if c.is_ascii_digit() || c == '-' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                let int_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let mut ok = i > int_start;
                if ok && i < chars.len() && chars[i] == '.' {
                    i += 1;
                    let frac_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    ok = i > frac_start;
                }
                // swallow the rest of a malformed literal like `1e5` or `2.x`
                if i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '.' || chars[i] == '_') {
                    ok = false;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '.' || chars[i] == '_') {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                let value = text.parse::<f64>().ok().filter(|v| ok && v.is_finite());
                match value {
                    Some(v) => tokens.push(Token {
                        kind: TokenKind::Number(v),
                        text,
                        pos,
                    }),
                    None => return Err(ParseError::new(pos, ErrorKind::Lexical, "malformed number").with_token(text)),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                tokens.push(Token {
                    kind: TokenKind::Word(text.clone()),
                    text,
                    pos,
                });
            }
            other => {
                return Err(
                    ParseError::new(pos, ErrorKind::Lexical, "unexpected character").with_token(other.to_string())
                );
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        pos: Position { line, column: col },
    });
    Ok(tokens)
}

/// Cursor over a token stream with the expectation helpers both file
/// formats need.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Self {
        Self { tokens, at: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    pub fn next(&mut self) -> Token {
        let tok = self.tokens[self.at].clone();
        if !matches!(tok.kind, TokenKind::Eof) {
            self.at += 1;
        }
        tok
    }

    pub fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.at += 1;
        }
    }

    pub fn at_line_end(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Newline | TokenKind::Eof)
    }

    pub fn peek_is_word(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Word(w) if w == word)
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::new(
            tok.pos,
            ErrorKind::Syntax,
            format!("expected {expected}, found {}", tok.describe()),
        )
        .with_token(tok.text.clone())
    }

    pub fn keyword(&mut self, word: &str) -> Result<Position, ParseError> {
        if self.peek_is_word(word) {
            Ok(self.next().pos)
        } else {
            Err(self.unexpected(&format!("'{word}'")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, Position), ParseError> {
        match &self.peek().kind {
            TokenKind::Word(w) => {
                let w = w.clone();
                Ok((w, self.next().pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<(f64, Position), ParseError> {
        match self.peek().kind {
            TokenKind::Number(v) => Ok((v, self.next().pos)),
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn end_of_statement(&mut self) -> Result<(), ParseError> {
        if self.at_line_end() {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }
}
