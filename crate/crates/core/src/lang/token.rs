use std::fmt;

use serde::{Deserialize, Serialize};

/// A single whitespace-free word of program text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Token(String);

impl Token {
    pub const OPEN: &'static str = "[";
    pub const CLOSE: &'static str = "]";
    pub const DEFINE: &'static str = ":";
    pub const END_DEFINE: &'static str = ";";

    /// Wraps `text` as a token. Returns `None` for empty text or text that
    /// contains whitespace.
    pub fn new(text: impl Into<String>) -> Option<Self> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            None
        } else {
            Some(Token(text))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_open(&self) -> bool {
        self.0 == Self::OPEN
    }

    pub fn is_close(&self) -> bool {
        self.0 == Self::CLOSE
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Splits source text into tokens.
///
/// Tokens are maximal whitespace-free runs, except that `[` and `]` always
/// stand alone, so `[dup *]` yields `[`, `dup`, `*`, `]`. Tokenizing never
/// fails.
pub fn tokenize(source: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, tokens: &mut Vec<Token>| {
        if !current.is_empty() {
            tokens.push(Token(std::mem::take(current)));
        }
    };
    for ch in source.chars() {
        match ch {
            '[' | ']' => {
                flush(&mut current, &mut tokens);
                tokens.push(Token(ch.to_string()));
            }
            c if c.is_whitespace() => flush(&mut current, &mut tokens),
            c => current.push(c),
        }
    }
    flush(&mut current, &mut tokens);
    tokens
}

/// Removes `#` line comments. A `#` starts a comment wherever it appears.
pub fn strip_comments(source: &str) -> String {
    source
        .lines()
        .map(|line| match line.find('#') {
            Some(at) => &line[..at],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Tokenizes program-file text: comments are stripped first.
pub fn parse_program(source: &str) -> Vec<Token> {
    tokenize(&strip_comments(source))
}

/// Joins tokens with single spaces.
pub fn render_tokens(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(t.as_str());
    }
    out
}
