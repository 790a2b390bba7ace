use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::token::{render_tokens, Token};

/// A stack item: an integer or a quoted program.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    Quotation(Vec<Token>),
}

impl Value {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Value::Int(n.into())
    }

    /// Reduces integers into `[0, m)`; quotations are untouched.
    pub fn reduce(self, modulus: Option<&BigInt>) -> Self {
        match (self, modulus) {
            (Value::Int(n), Some(m)) => Value::Int(n.mod_floor(m)),
            (v, _) => v,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(n) => Some(n),
            Value::Quotation(_) => None,
        }
    }

    /// The tokens that push this value when evaluated.
    pub fn to_tokens(&self) -> Vec<Token> {
        match self {
            Value::Int(n) => {
                vec![Token::new(n.to_string()).expect("integers render without whitespace")]
            }
            Value::Quotation(body) => {
                let mut out = Vec::with_capacity(body.len() + 2);
                out.push(Token::new(Token::OPEN).unwrap());
                out.extend(body.iter().cloned());
                out.push(Token::new(Token::CLOSE).unwrap());
                out
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Quotation(body) => write!(f, "[{}]", render_tokens(body)),
        }
    }
}

/// A stack of values, bottom first, with an optional depth bound.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StackState {
    items: Vec<Value>,
    cap: Option<usize>,
}

impl StackState {
    pub fn new(cap: Option<usize>) -> Self {
        StackState {
            items: Vec::new(),
            cap,
        }
    }

    /// Builds a stack from bottom-first items. Returns `None` if the items
    /// exceed `cap`.
    pub fn from_items(items: Vec<Value>, cap: Option<usize>) -> Option<Self> {
        match cap {
            Some(c) if items.len() > c => None,
            _ => Some(StackState { items, cap }),
        }
    }

    pub fn items(&self) -> &[Value] {
        &self.items
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.cap.is_some_and(|c| self.items.len() >= c)
    }

    /// Pushes `value`, handing it back if the stack is full.
    pub fn push(&mut self, value: Value) -> Result<(), Value> {
        if self.is_full() {
            return Err(value);
        }
        self.items.push(value);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<Value> {
        self.items.pop()
    }

    pub fn top(&self) -> Option<&Value> {
        self.items.last()
    }

    /// Compact state name: `ε` for the empty stack, digits run together when
    /// every item is a single decimal digit (`01` = 0 pushed, then 1), and
    /// comma-separated otherwise.
    pub fn compact_name(&self) -> String {
        if self.items.is_empty() {
            return "ε".to_string();
        }
        let rendered: Vec<String> = self.items.iter().map(Value::to_string).collect();
        if rendered
            .iter()
            .all(|s| s.len() == 1 && s.chars().all(|c| c.is_ascii_digit()))
        {
            rendered.concat()
        } else {
            rendered.join(",")
        }
    }
}

/// Bottom-first, space-separated.
impl fmt::Display for StackState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
