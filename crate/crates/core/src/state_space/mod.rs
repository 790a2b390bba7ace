//! Bounded stack states and the partial transformations that words induce
//! on them.
//!
//! The state space of a first-order vocabulary under a depth cap and a
//! modulus is finite. Each word then acts on it as a partial transformation
//! (undefined on overflow, underflow or type mismatch), and a set of words
//! generates a finite transformation semigroup.

mod graph;
mod transformation;

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lang::{parse_literal, tokenize, Builtin, Machine, StackState, Token, Value};

pub use graph::{GraphEdge, GraphObject, TypedGeneratorGraph};
pub use transformation::{
    compose_pt, pt_closure, totalize, Closure, ImageVector, PartialTransformation,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateSpaceError {
    #[error("no generators given")]
    EmptyGenerators,
    #[error(
        "CombinatorExcluded: `{word}` consumes quotations and cannot act on a finite state space"
    )]
    CombinatorExcluded { word: String },
    #[error("UnknownWord: `{word}` is not in the built-in vocabulary")]
    UnknownWord { word: String },
    #[error("stack cap must be at least 1")]
    InvalidCap,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("LengthMismatch: transformations on {left} and {right} points")]
    LengthMismatch { left: usize, right: usize },
    #[error("state `{0}` listed twice")]
    DuplicateState(String),
    #[error("state `{0}` is deeper than the cap or holds a non-integer")]
    InvalidState(String),
    #[error("edge {from} -> {target} outside {objects} objects")]
    InvalidEdge {
        from: usize,
        target: usize,
        objects: usize,
    },
}

/// Checks that `word` is a nonempty first-order program over the built-in
/// vocabulary and returns its tokens.
pub fn first_order_tokens(word: &str) -> Result<Vec<Token>, StateSpaceError> {
    let tokens = tokenize(word);
    if tokens.is_empty() {
        return Err(StateSpaceError::UnknownWord {
            word: word.to_string(),
        });
    }
    for t in &tokens {
        let text = t.as_str();
        if matches!(text, "[" | "]" | ":" | ";") {
            return Err(StateSpaceError::CombinatorExcluded {
                word: text.to_string(),
            });
        }
        if parse_literal(text).is_some() {
            continue;
        }
        match Builtin::ALL.iter().find(|b| b.name() == text) {
            Some(b) if b.is_combinator() => {
                return Err(StateSpaceError::CombinatorExcluded {
                    word: text.to_string(),
                })
            }
            Some(_) => {}
            None => {
                return Err(StateSpaceError::UnknownWord {
                    word: text.to_string(),
                })
            }
        }
    }
    Ok(tokens)
}

/// The finite set of stack states reachable under a depth cap and modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    states: Vec<StackState>,
    index: HashMap<StackState, usize>,
    cap: usize,
    modulus: u64,
    generators: Vec<String>,
}

fn check_params(cap: usize, modulus: u64) -> Result<(), StateSpaceError> {
    if cap == 0 {
        return Err(StateSpaceError::InvalidCap);
    }
    if modulus < 2 {
        return Err(StateSpaceError::InvalidModulus(modulus));
    }
    Ok(())
}

/// Breadth-first enumeration of the states reachable from the empty stack.
///
/// The stack is explored with `generators` followed by the literal pushes
/// `0..modulus` not already among them, so operator-only vocabularies such
/// as `swap` still see every stack of depth at most `cap`. A push past `cap`
/// is simply undefined.
///
/// Order: index 0 is `ε`, then discovery order level by level. Within a
/// level, successive parents alternate the exploration direction (forward,
/// reverse, forward, ...), which lays the depth-2 binary stacks out as
/// `00, 01, 11, 10`.
pub fn enumerate_states<S: AsRef<str>>(
    generators: &[S],
    cap: usize,
    modulus: u64,
) -> Result<StateSpace, StateSpaceError> {
    check_params(cap, modulus)?;
    if generators.is_empty() {
        return Err(StateSpaceError::EmptyGenerators);
    }
    let m = BigInt::from(modulus);
    let mut explore: Vec<Vec<Token>> = Vec::new();
    let mut pushed: Vec<BigInt> = Vec::new();
    for g in generators {
        let tokens = first_order_tokens(g.as_ref())?;
        if let [single] = tokens.as_slice() {
            if let Some(n) = parse_literal(single.as_str()) {
                pushed.push(Value::Int(n).reduce(Some(&m)).as_int().cloned().unwrap());
            }
        }
        explore.push(tokens);
    }
    for k in 0..modulus {
        if !pushed.contains(&BigInt::from(k)) {
            explore.push(vec![Token::new(k.to_string()).unwrap()]);
        }
    }

    let machine = Machine::new().with_modulus(Some(m));
    let empty = StackState::new(Some(cap));
    let mut states = vec![empty.clone()];
    let mut index = HashMap::from([(empty, 0)]);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (k, &parent) in level.iter().enumerate() {
            let order: Box<dyn Iterator<Item = &Vec<Token>>> = if k % 2 == 0 {
                Box::new(explore.iter())
            } else {
                Box::new(explore.iter().rev())
            };
            for word in order {
                let mut run = machine.clone().with_stack(states[parent].clone());
                if run.run(word).is_err() {
                    continue;
                }
                let s = run.into_stack();
                if !index.contains_key(&s) {
                    index.insert(s.clone(), states.len());
                    next.push(states.len());
                    states.push(s);
                }
            }
        }
        level = next;
    }
    Ok(StateSpace {
        states,
        index,
        cap,
        modulus,
        generators: generators.iter().map(|g| g.as_ref().to_string()).collect(),
    })
}

impl StateSpace {
    /// A space over an explicit state list, e.g. a sub-space closed under
    /// some word. The list need not contain `ε`.
    pub fn from_states(
        states: Vec<Vec<u64>>,
        cap: usize,
        modulus: u64,
        generators: Vec<String>,
    ) -> Result<Self, StateSpaceError> {
        check_params(cap, modulus)?;
        let mut out = Vec::with_capacity(states.len());
        let mut index = HashMap::new();
        for items in states {
            let values = items.iter().map(|&v| Value::int(v % modulus)).collect();
            let s = StackState::from_items(values, Some(cap))
                .ok_or_else(|| StateSpaceError::InvalidState(format!("{items:?}")))?;
            if index.insert(s.clone(), out.len()).is_some() {
                return Err(StateSpaceError::DuplicateState(s.compact_name()));
            }
            out.push(s);
        }
        Ok(StateSpace {
            states: out,
            index,
            cap,
            modulus,
            generators,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StackState] {
        &self.states
    }

    pub fn index_of(&self, state: &StackState) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Compact state names, e.g. `ε, 0, 1, 00, ...`.
    pub fn names(&self) -> Vec<String> {
        self.states.iter().map(StackState::compact_name).collect()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Semantics of every generator, in generator order.
    pub fn generator_semantics(&self) -> Result<Vec<PartialTransformation>, StateSpaceError> {
        self.generators
            .iter()
            .map(|g| word_semantics(self, g))
            .collect()
    }

    pub fn generator_graph(&self) -> Result<TypedGeneratorGraph, StateSpaceError> {
        TypedGeneratorGraph::from_semantics(self.names(), &self.generator_semantics()?)
    }
}

/// The partial transformation a first-order word induces on `space`.
///
/// The image of state `s` is the state reached by running `word` from `s`;
/// it is undefined when evaluation fails or lands outside the space.
pub fn word_semantics(
    space: &StateSpace,
    word: &str,
) -> Result<PartialTransformation, StateSpaceError> {
    let tokens = first_order_tokens(word)?;
    let machine = Machine::new().with_modulus(Some(BigInt::from(space.modulus)));
    let images = space
        .states
        .iter()
        .map(|s| {
            let mut run = machine.clone().with_stack(s.clone());
            run.run(&tokens).ok()?;
            space.index_of(run.stack())
        })
        .collect();
    Ok(PartialTransformation::new(
        images,
        crate::lang::render_tokens(&tokens),
    ))
}
