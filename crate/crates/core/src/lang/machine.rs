use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use super::error::{LangError, TraceError};
use super::token::Token;
use super::value::{StackState, Value};

/// Primitive words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Id,
    Dup,
    Swap,
    Pop,
    Add,
    Mul,
    Map,
    Apply,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::Id,
        Builtin::Dup,
        Builtin::Swap,
        Builtin::Pop,
        Builtin::Add,
        Builtin::Mul,
        Builtin::Map,
        Builtin::Apply,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Id => "id",
            Builtin::Dup => "dup",
            Builtin::Swap => "swap",
            Builtin::Pop => "pop",
            Builtin::Add => "+",
            Builtin::Mul => "*",
            Builtin::Map => "map",
            Builtin::Apply => "apply",
        }
    }

    /// Combinators consume quotations and have no fixed stack effect.
    pub fn effect(self) -> Option<StackEffect> {
        let (consumed, produced) = match self {
            Builtin::Id => (0, 0),
            Builtin::Dup => (1, 2),
            Builtin::Swap => (2, 2),
            Builtin::Pop => (1, 0),
            Builtin::Add | Builtin::Mul => (2, 1),
            Builtin::Map | Builtin::Apply => return None,
        };
        Some(StackEffect { consumed, produced })
    }

    pub fn is_combinator(self) -> bool {
        self.effect().is_none()
    }
}

/// Declared stack effect `( consumed -- produced )`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StackEffect {
    pub consumed: usize,
    pub produced: usize,
}

impl StackEffect {
    pub const PUSH: StackEffect = StackEffect {
        consumed: 0,
        produced: 1,
    };

    /// Effect of running `self` and then `next`.
    pub fn then(self, next: StackEffect) -> StackEffect {
        let borrowed = next.consumed.saturating_sub(self.produced);
        let left = self.produced.saturating_sub(next.consumed);
        StackEffect {
            consumed: self.consumed + borrowed,
            produced: next.produced + left,
        }
    }
}

impl fmt::Display for StackEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "( {} -- {} )", self.consumed, self.produced)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordBody {
    BuiltIn(Builtin),
    Tokens(Vec<Token>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordDef {
    pub name: String,
    pub body: WordBody,
    pub effect: Option<StackEffect>,
}

/// Parses an integer literal: optional `-` followed by decimal digits.
pub fn parse_literal(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn is_reserved(text: &str) -> bool {
    matches!(text, "[" | "]" | ":" | ";")
}

enum Instr<'a> {
    Literal(BigInt),
    Word(&'a Token),
    Quote(&'a [Token]),
    Define(&'a [Token]),
}

/// Index of the `]` matching the `[` at `open`.
fn matching_close(tokens: &[Token], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (i, t) in tokens.iter().enumerate().skip(open) {
        if t.is_open() {
            depth += 1;
        } else if t.is_close() {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Reads the instruction starting at `at`; returns it with the index just past it.
fn next_instr(
    tokens: &[Token],
    at: usize,
    position: usize,
) -> Result<(Instr<'_>, usize), LangError> {
    let token = &tokens[at];
    match token.as_str() {
        "[" => {
            let close =
                matching_close(tokens, at).ok_or(LangError::UnbalancedBracket { position })?;
            Ok((Instr::Quote(&tokens[at + 1..close]), close + 1))
        }
        "]" => Err(LangError::UnbalancedBracket { position }),
        ":" => {
            let mut depth = 0usize;
            for (i, t) in tokens.iter().enumerate().skip(at + 1) {
                match t.as_str() {
                    "[" => depth += 1,
                    "]" => depth = depth.saturating_sub(1),
                    ";" if depth == 0 => return Ok((Instr::Define(&tokens[at..=i]), i + 1)),
                    _ => {}
                }
            }
            Err(LangError::MalformedDefinition {
                position,
                reason: "missing `;`".into(),
            })
        }
        ";" => Err(LangError::MalformedDefinition {
            position,
            reason: "`;` outside a definition".into(),
        }),
        text => Ok(match parse_literal(text) {
            Some(n) => (Instr::Literal(n), at + 1),
            None => (Instr::Word(token), at + 1),
        }),
    }
}

/// Execution context: a stack, a word table and the arithmetic settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Machine {
    stack: StackState,
    words: Vec<WordDef>,
    index: HashMap<String, usize>,
    modulus: Option<BigInt>,
}

impl Default for Machine {
    fn default() -> Self {
        Machine::new()
    }
}

impl Machine {
    /// Empty unbounded stack, built-in vocabulary, arbitrary-precision integers.
    pub fn new() -> Self {
        let mut machine = Machine {
            stack: StackState::new(None),
            words: Vec::new(),
            index: HashMap::new(),
            modulus: None,
        };
        for b in Builtin::ALL {
            machine.insert(WordDef {
                name: b.name().to_string(),
                body: WordBody::BuiltIn(b),
                effect: b.effect(),
            });
        }
        machine
    }

    /// Bounds the stack depth.
    ///
    /// # Panics
    /// If the current stack is already deeper than `cap`.
    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.stack = StackState::from_items(self.stack.items().to_vec(), cap)
            .expect("stack deeper than cap");
        self
    }

    /// Reduces every integer modulo `modulus`.
    ///
    /// # Panics
    /// If `modulus < 2`.
    pub fn with_modulus(mut self, modulus: Option<BigInt>) -> Self {
        if let Some(m) = &modulus {
            assert!(*m >= BigInt::from(2), "modulus must be at least 2");
        }
        self.modulus = modulus;
        self
    }

    /// Replaces the stack; the machine's cap follows the given stack.
    pub fn with_stack(mut self, stack: StackState) -> Self {
        let m = self.modulus.clone();
        let items = stack
            .items()
            .iter()
            .cloned()
            .map(|v| v.reduce(m.as_ref()))
            .collect();
        self.stack = StackState::from_items(items, stack.cap()).expect("reduction keeps length");
        self
    }

    pub fn stack(&self) -> &StackState {
        &self.stack
    }

    pub fn into_stack(self) -> StackState {
        self.stack
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn cap(&self) -> Option<usize> {
        self.stack.cap()
    }

    pub fn words(&self) -> &[WordDef] {
        &self.words
    }

    pub fn lookup(&self, name: &str) -> Option<&WordDef> {
        self.index.get(name).map(|&i| &self.words[i])
    }

    fn insert(&mut self, def: WordDef) {
        self.index.insert(def.name.clone(), self.words.len());
        self.words.push(def);
    }

    /// Evaluates `program` left to right.
    pub fn run(&mut self, program: &[Token]) -> Result<(), LangError> {
        self.exec_seq(program, None, &mut |_| {})
    }

    /// Like [`Machine::run`], recording the stack after each top-level instruction.
    pub fn trace(&mut self, program: &[Token]) -> Result<Vec<StackState>, TraceError> {
        let mut steps = Vec::new();
        match self.exec_seq(program, None, &mut |s| steps.push(s.clone())) {
            Ok(()) => Ok(steps),
            Err(error) => Err(TraceError { steps, error }),
        }
    }

    /// Adds a word from `: name body... ;`.
    pub fn define(&mut self, definition: &[Token]) -> Result<(), LangError> {
        self.define_at(definition, 0)
    }

    fn define_at(&mut self, definition: &[Token], base: usize) -> Result<(), LangError> {
        let malformed = |offset: usize, reason: &str| LangError::MalformedDefinition {
            position: base + offset,
            reason: reason.to_string(),
        };
        let n = definition.len();
        if n == 0 || definition[0].as_str() != Token::DEFINE {
            return Err(malformed(0, "definition must start with `:`"));
        }
        if definition[n - 1].as_str() != Token::END_DEFINE || n < 3 {
            return Err(malformed(
                n.saturating_sub(1),
                "definition must be `: name body... ;`",
            ));
        }
        let name = definition[1].as_str();
        if is_reserved(name) || parse_literal(name).is_some() {
            return Err(malformed(
                1,
                "name must not be a bracket, `:`, `;` or a literal",
            ));
        }
        if self.index.contains_key(name) {
            return Err(LangError::DuplicateName {
                position: base + 1,
                name: name.to_string(),
            });
        }
        let body = &definition[2..n - 1];
        let mut depth = 0i64;
        for (i, t) in body.iter().enumerate() {
            let position = base + 2 + i;
            match t.as_str() {
                "[" => depth += 1,
                "]" => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(LangError::UnbalancedBracket { position });
                    }
                }
                ":" | ";" => return Err(malformed(2 + i, "nested definitions are not allowed")),
                text if parse_literal(text).is_some() => {}
                text => {
                    if !self.index.contains_key(text) {
                        return Err(LangError::UnknownWord {
                            position,
                            word: text.to_string(),
                        });
                    }
                }
            }
        }
        if depth != 0 {
            return Err(LangError::UnbalancedBracket { position: base + 2 });
        }
        let effect = self.infer_effect(body);
        self.insert(WordDef {
            name: name.to_string(),
            body: WordBody::Tokens(body.to_vec()),
            effect,
        });
        Ok(())
    }

    /// Composes the effects of a first-order body; `None` if it involves a combinator.
    fn infer_effect(&self, body: &[Token]) -> Option<StackEffect> {
        let mut effect = StackEffect {
            consumed: 0,
            produced: 0,
        };
        let mut at = 0;
        while at < body.len() {
            let (instr, next) = next_instr(body, at, at).ok()?;
            let step = match instr {
                Instr::Literal(_) | Instr::Quote(_) => StackEffect::PUSH,
                Instr::Word(t) => self.lookup(t.as_str())?.effect?,
                Instr::Define(_) => return None,
            };
            effect = effect.then(step);
            at = next;
        }
        Some(effect)
    }

    fn exec_seq(
        &mut self,
        tokens: &[Token],
        outer: Option<usize>,
        on_step: &mut dyn FnMut(&StackState),
    ) -> Result<(), LangError> {
        let mut at = 0;
        while at < tokens.len() {
            let position = outer.unwrap_or(at);
            let (instr, next) = next_instr(tokens, at, position)?;
            match instr {
                Instr::Literal(n) => {
                    let v = Value::Int(n).reduce(self.modulus.as_ref());
                    self.push(v, position, tokens[at].as_str())?;
                }
                Instr::Quote(body) => self.push(Value::Quotation(body.to_vec()), position, "[")?,
                Instr::Word(t) => self.exec_word(t.as_str(), position)?,
                Instr::Define(def) => {
                    if outer.is_some() {
                        return Err(LangError::MalformedDefinition {
                            position,
                            reason: "definitions are only allowed at top level".into(),
                        });
                    }
                    self.define_at(def, at)?;
                }
            }
            on_step(&self.stack);
            at = next;
        }
        Ok(())
    }

    fn exec_word(&mut self, name: &str, position: usize) -> Result<(), LangError> {
        let body = match self.lookup(name) {
            None => {
                return Err(LangError::UnknownWord {
                    position,
                    word: name.to_string(),
                })
            }
            Some(def) => def.body.clone(),
        };
        match body {
            WordBody::BuiltIn(b) => self.exec_builtin(b, position),
            WordBody::Tokens(body) => self.exec_seq(&body, Some(position), &mut |_| {}),
        }
    }

    fn push(&mut self, value: Value, position: usize, word: &str) -> Result<(), LangError> {
        self.stack
            .push(value)
            .map_err(|_| LangError::StackOverflow {
                position,
                word: word.to_string(),
                cap: self.stack.cap().unwrap_or(usize::MAX),
            })
    }

    fn need(&self, n: usize, b: Builtin, position: usize) -> Result<(), LangError> {
        if self.stack.len() < n {
            return Err(LangError::StackUnderflow {
                position,
                word: b.name().to_string(),
                needed: n,
                depth: self.stack.len(),
            });
        }
        Ok(())
    }

    fn pop_int(&mut self, b: Builtin, position: usize) -> Result<BigInt, LangError> {
        match self.stack.pop() {
            Some(Value::Int(n)) => Ok(n),
            _ => Err(LangError::TypeMismatch {
                position,
                word: b.name().to_string(),
                expected: "integers",
            }),
        }
    }

    fn pop_quotation(&mut self, b: Builtin, position: usize) -> Result<Vec<Token>, LangError> {
        match self.stack.pop() {
            Some(Value::Quotation(q)) => Ok(q),
            _ => Err(LangError::TypeMismatch {
                position,
                word: b.name().to_string(),
                expected: "quotations",
            }),
        }
    }

    fn exec_builtin(&mut self, b: Builtin, position: usize) -> Result<(), LangError> {
        let name = b.name();
        match b {
            Builtin::Id => {}
            Builtin::Dup => {
                self.need(1, b, position)?;
                let top = self.stack.top().cloned().expect("checked depth");
                self.push(top, position, name)?;
            }
            Builtin::Swap => {
                self.need(2, b, position)?;
                let y = self.stack.pop().expect("checked depth");
                let x = self.stack.pop().expect("checked depth");
                self.push(y, position, name)?;
                self.push(x, position, name)?;
            }
            Builtin::Pop => {
                self.need(1, b, position)?;
                self.stack.pop();
            }
            Builtin::Add | Builtin::Mul => {
                self.need(2, b, position)?;
                let y = self.pop_int(b, position)?;
                let x = self.pop_int(b, position)?;
                let r = if b == Builtin::Add { x + y } else { x * y };
                let v = Value::Int(r).reduce(self.modulus.as_ref());
                self.push(v, position, name)?;
            }
            Builtin::Apply => {
                self.need(1, b, position)?;
                let code = self.pop_quotation(b, position)?;
                self.exec_seq(&code, Some(position), &mut |_| {})?;
            }
            Builtin::Map => {
                self.need(2, b, position)?;
                let code = self.pop_quotation(b, position)?;
                let data = self.pop_quotation(b, position)?;
                let items = self.quotation_items(&data, position)?;
                let mut result = Vec::new();
                for item in items {
                    let scratch = StackState::new(self.stack.cap());
                    let saved = std::mem::replace(&mut self.stack, scratch);
                    let outcome = self.map_one(item, &code, position);
                    self.stack = saved;
                    result.extend(outcome?.to_tokens());
                }
                self.push(Value::Quotation(result), position, name)?;
            }
        }
        Ok(())
    }

    fn map_one(
        &mut self,
        item: Value,
        code: &[Token],
        position: usize,
    ) -> Result<Value, LangError> {
        self.push(item, position, Builtin::Map.name())?;
        self.exec_seq(code, Some(position), &mut |_| {})?;
        self.stack.pop().ok_or(LangError::StackUnderflow {
            position,
            word: Builtin::Map.name().to_string(),
            needed: 1,
            depth: 0,
        })
    }

    /// Splits a data quotation into its literal elements.
    fn quotation_items(&self, data: &[Token], position: usize) -> Result<Vec<Value>, LangError> {
        let mut items = Vec::new();
        let mut at = 0;
        while at < data.len() {
            let (instr, next) = next_instr(data, at, position)?;
            items.push(match instr {
                Instr::Literal(n) => Value::Int(n).reduce(self.modulus.as_ref()),
                Instr::Quote(q) => Value::Quotation(q.to_vec()),
                Instr::Word(_) | Instr::Define(_) => {
                    return Err(LangError::TypeMismatch {
                        position,
                        word: Builtin::Map.name().to_string(),
                        expected: "a quotation of values",
                    })
                }
            });
            at = next;
        }
        Ok(items)
    }
}

/// Runs `program` on `machine`, returning the resulting machine.
pub fn run(program: &[Token], mut machine: Machine) -> Result<Machine, LangError> {
    machine.run(program)?;
    Ok(machine)
}

/// Stack after each top-level instruction of `program`.
pub fn trace(program: &[Token], mut machine: Machine) -> Result<Vec<StackState>, TraceError> {
    machine.trace(program)
}

/// Adds the word given as `: name body... ;` to `machine`.
pub fn define_word(mut machine: Machine, definition: &[Token]) -> Result<Machine, LangError> {
    machine.define(definition)?;
    Ok(machine)
}
