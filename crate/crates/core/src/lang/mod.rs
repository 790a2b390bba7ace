//! A minimal concatenative language.
//!
//! Programs are token sequences evaluated left to right against a stack.
//! Integer literals push themselves, `[ ... ]` pushes a quotation, operators
//! pop their arity and push results, and combinators (`map`, `apply`) consume
//! quotations. `: name body... ;` defines a word that expands inline.
//!
//! Juxtaposition is composition: running `p ++ q` is running `p` then `q`.

mod error;
mod machine;
mod token;
mod value;

pub use error::{LangError, TraceError};
pub use machine::{
    define_word, parse_literal, run, trace, Builtin, Machine, StackEffect, WordBody, WordDef,
};
pub use token::{parse_program, render_tokens, strip_comments, tokenize, Token};
pub use value::{StackState, Value};

#[cfg(test)]
mod tests;
