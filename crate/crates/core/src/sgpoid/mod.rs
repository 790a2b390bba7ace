//! Finite semigroupoids: objects, typed arrows and an associative partial
//! composition, written left to right (`xy` means `x` first, then `y`).

mod generate;
mod iso;
mod morphism;
mod quotient;
mod sublanguage;

use std::fmt;

use thiserror::Error;

use crate::state_space::StateSpaceError;

pub use generate::{closure_semigroup, from_generators};
pub use iso::{find_isomorphism, find_structure_isomorphism, ArrowStructure, Isomorphism};
pub use morphism::{arrow_type, check_morphism, Morphism, MorphismReport, MorphismViolation};
pub use quotient::{quotient_objects, quotient_objects_strict, Partition};
pub use sublanguage::sublanguage_leq;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SgpoidError {
    #[error("arrow {arrow} refers to missing object {object}")]
    InvalidObject { arrow: usize, object: usize },
    #[error("empty arrow sequence")]
    EmptyWord,
    #[error("no arrow with id {0}")]
    InvalidArrow(usize),
    #[error("table lists two different composites for ({x}, {y})")]
    ConflictingEntry { x: usize, y: usize },
    #[error("NotComposable: cod({x}) != dom({y})")]
    NotComposable { x: usize, y: usize },
    #[error("TableIncomplete: composable pair ({x}, {y}) has no composite")]
    TableIncomplete { x: usize, y: usize },
    #[error("NotAMorphism: composition of ({x}, {y}) is not preserved")]
    NotAMorphism { x: usize, y: usize },
    #[error("NotSurjective: {0}")]
    NotSurjective(String),
    #[error("InconsistentSemantics for `{label}`: {detail}")]
    InconsistentSemantics { label: String, detail: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("IncompatiblePartition: label `{label}` on block {block}: {detail}")]
    IncompatiblePartition {
        label: String,
        block: usize,
        detail: String,
    },
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Object {
    pub id: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: usize,
    pub dom: usize,
    pub cod: usize,
    pub label: String,
}

/// Objects, arrows and a dense partial composition table.
///
/// Construction only checks that ids are in range; [`Semigroupoid::validate`]
/// checks composability, typing and associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroupoid {
    objects: Vec<Object>,
    arrows: Vec<Arrow>,
    table: Vec<Option<usize>>,
}

impl Semigroupoid {
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(usize, usize, String)>,
        entries: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, SgpoidError> {
        let n_obj = objects.len();
        let objects: Vec<Object> = objects
            .into_iter()
            .enumerate()
            .map(|(id, name)| Object { id, name })
            .collect();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, (dom, cod, label)) in arrows.into_iter().enumerate() {
            for object in [dom, cod] {
                if object >= n_obj {
                    return Err(SgpoidError::InvalidObject { arrow: id, object });
                }
            }
            out.push(Arrow {
                id,
                dom,
                cod,
                label,
            });
        }
        let n = out.len();
        let mut table = vec![None; n * n];
        for (x, y, z) in entries {
            if let Some(bad) = [x, y, z].into_iter().find(|&a| a >= n) {
                return Err(SgpoidError::InvalidArrow(bad));
            }
            match table[x * n + y] {
                Some(old) if old != z => return Err(SgpoidError::ConflictingEntry { x, y }),
                _ => table[x * n + y] = Some(z),
            }
        }
        Ok(Semigroupoid {
            objects,
            arrows: out,
            table,
        })
    }

    pub fn empty() -> Self {
        Semigroupoid {
            objects: Vec::new(),
            arrows: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: usize) -> Result<&Arrow, SgpoidError> {
        self.arrows.get(id).ok_or(SgpoidError::InvalidArrow(id))
    }

    /// First arrow carrying `label`.
    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Raw table lookup, without composability checks.
    pub fn entry(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.arrows.len();
        if x >= n || y >= n {
            return None;
        }
        self.table[x * n + y]
    }

    pub fn composable(&self, x: usize, y: usize) -> bool {
        matches!((self.arrows.get(x), self.arrows.get(y)), (Some(a), Some(b)) if a.cod == b.dom)
    }

    /// `xy`, defined when `cod(x) = dom(y)`.
    pub fn compose(&self, x: usize, y: usize) -> Result<usize, SgpoidError> {
        let (a, b) = (self.arrow(x)?, self.arrow(y)?);
        if a.cod != b.dom {
            return Err(SgpoidError::NotComposable { x, y });
        }
        self.entry(x, y)
            .ok_or(SgpoidError::TableIncomplete { x, y })
    }

    /// Left-to-right product of a nonempty arrow sequence.
    ///
    /// The sequence is typed first: every adjacent pair must be composable,
    /// and the first pair that is not is reported.
    pub fn compose_word(&self, word: &[usize]) -> Result<usize, SgpoidError> {
        let (&first, rest) = word.split_first().ok_or(SgpoidError::EmptyWord)?;
        for &x in word {
            self.arrow(x)?;
        }
        if let Some(w) = word.windows(2).find(|w| !self.composable(w[0], w[1])) {
            return Err(SgpoidError::NotComposable { x: w[0], y: w[1] });
        }
        rest.iter().try_fold(first, |acc, &y| self.compose(acc, y))
    }

    /// Defined table entries `(x, y, xy)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.arrows.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, z)| z.map(|z| (i / n, i % n, z)))
    }

    /// Pairs `(x, y)` with `cod(x) = dom(y)`, row-major.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().flat_map(move |a| {
            self.arrows
                .iter()
                .filter(move |b| a.cod == b.dom)
                .map(move |b| (a.id, b.id))
        })
    }

    pub fn hom_set(&self, dom: usize, cod: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .filter(|a| a.dom == dom && a.cod == cod)
            .map(|a| a.id)
            .collect()
    }

    /// Nonempty hom-sets as `(dom, cod)`, sorted.
    pub fn nonempty_hom_sets(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.arrows.iter().map(|a| (a.dom, a.cod)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Exhaustive check of composability, typing and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.arrows.len();
        for x in 0..n {
            for y in 0..n {
                let composable = self.composable(x, y);
                match (self.entry(x, y), composable) {
                    (Some(_), false) => violations.push(Violation::DefinedNotComposable { x, y }),
                    (None, true) => violations.push(Violation::MissingComposite { x, y }),
                    (Some(xy), true) => {
                        let (a, b, c) = (&self.arrows[x], &self.arrows[y], &self.arrows[xy]);
                        if c.dom != a.dom || c.cod != b.cod {
                            violations.push(Violation::Typing { x, y, xy });
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for (x, y, xy) in self.entries().collect::<Vec<_>>() {
            if !self.composable(x, y) {
                continue;
            }
            for z in 0..n {
                if !self.composable(y, z) {
                    continue;
                }
                let left = self.entry(xy, z);
                let right = self.entry(y, z).and_then(|yz| self.entry(x, yz));
                if let (Some(left), Some(right)) = (left, right) {
                    if left != right {
                        violations.push(Violation::Associativity {
                            x,
                            y,
                            z,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DefinedNotComposable {
        x: usize,
        y: usize,
    },
    MissingComposite {
        x: usize,
        y: usize,
    },
    Typing {
        x: usize,
        y: usize,
        xy: usize,
    },
    Associativity {
        x: usize,
        y: usize,
        z: usize,
        left: usize,
        right: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DefinedNotComposable { x, y } => {
                write!(f, "({x},{y}) has a composite but cod({x}) != dom({y})")
            }
            Violation::MissingComposite { x, y } => {
                write!(f, "({x},{y}) is composable but has no composite")
            }
            Violation::Typing { x, y, xy } => {
                write!(f, "composite {xy} of ({x},{y}) has the wrong type")
            }
            Violation::Associativity {
                x,
                y,
                z,
                left,
                right,
            } => {
                write!(f, "({x}{y}){z} = {left} but {x}({y}{z}) = {right}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
