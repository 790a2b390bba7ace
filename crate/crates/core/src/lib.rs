//! Concatenative programs as finite semigroupoids.
//!
//! The crate is layered bottom-up:
//!
//! - [`lang`]: a small concatenative stack language (tokenizer, evaluator,
//!   word definitions).
//! - [`state_space`]: bounded stack states and the partial transformations
//!   words induce on them, with closure and sink completion.
//! - [`sgpoid`]: finite semigroupoids, generation from typed generator
//!   graphs, morphisms, arrow-type images, quotients and isomorphism search.
//! - [`decomposition`]: the two-level covering decomposition
//!   (collapse, copy, compress) and its emulation check.
//! - [`interchange`]: the JSON file schema shared with the command line tool.

pub mod decomposition;
pub mod fixtures;
pub mod interchange;
pub mod lang;
pub mod sgpoid;
pub mod state_space;

pub use decomposition::{covering_decompose, verify_emulation, Decomposition};
pub use lang::{tokenize, Machine, StackState, Token, Value};
pub use sgpoid::{Morphism, Semigroupoid};
pub use state_space::{enumerate_states, word_semantics, PartialTransformation, StateSpace};
