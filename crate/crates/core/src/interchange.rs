//! File schema for semigroupoids, generator graphs and decompositions.
//!
//! A semigroupoid file has `objects` (`{id, name}`), `arrows`
//! (`{id, dom, cod, label}`) and `table` (`[x, y, xy]` triples), plus the
//! optional blocks `provenance`, `statespace` and `morphism`. Ids must be
//! dense and listed in order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{
    ClassMember, Component, CompressionClass, Decomposition, EmulationReport,
};
use crate::sgpoid::{Morphism, Semigroupoid, SgpoidError};
use crate::state_space::{
    Closure, GraphEdge, PartialTransformation, StateSpace, StateSpaceError, TypedGeneratorGraph,
};

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Sgpoid(#[from] SgpoidError),
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub id: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub id: usize,
    pub dom: usize,
    pub cod: usize,
    pub label: String,
}

/// Objects, arrows and the partial composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgpoidRecord {
    pub objects: Vec<ObjectRecord>,
    pub arrows: Vec<ArrowRecord>,
    pub table: Vec<[usize; 3]>,
}

fn check_dense<T>(
    items: &[T],
    id: impl Fn(&T) -> usize,
    what: &str,
) -> Result<(), InterchangeError> {
    match items.iter().enumerate().find(|(i, x)| id(x) != *i) {
        Some((i, x)) => Err(InterchangeError::Schema(format!(
            "{what} at position {i} has id {}, ids must be 0..n in order",
            id(x)
        ))),
        None => Ok(()),
    }
}

impl From<&Semigroupoid> for SgpoidRecord {
    fn from(s: &Semigroupoid) -> Self {
        SgpoidRecord {
            objects: s
                .objects()
                .iter()
                .map(|o| ObjectRecord {
                    id: o.id,
                    name: o.name.clone(),
                })
                .collect(),
            arrows: s
                .arrows()
                .iter()
                .map(|a| ArrowRecord {
                    id: a.id,
                    dom: a.dom,
                    cod: a.cod,
                    label: a.label.clone(),
                })
                .collect(),
            table: s.entries().map(|(x, y, z)| [x, y, z]).collect(),
        }
    }
}

impl SgpoidRecord {
    pub fn to_semigroupoid(&self) -> Result<Semigroupoid, InterchangeError> {
        check_dense(&self.objects, |o| o.id, "object")?;
        check_dense(&self.arrows, |a| a.id, "arrow")?;
        Ok(Semigroupoid::new(
            self.objects.iter().map(|o| o.name.clone()).collect(),
            self.arrows
                .iter()
                .map(|a| (a.dom, a.cod, a.label.clone()))
                .collect(),
            self.table.iter().map(|&[x, y, z]| (x, y, z)),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generators: Vec<String>,
    pub cap: usize,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationRecord {
    pub label: String,
    pub images: Vec<Option<usize>>,
}

impl From<&PartialTransformation> for TransformationRecord {
    fn from(f: &PartialTransformation) -> Self {
        TransformationRecord {
            label: f.label().to_string(),
            images: f.images().to_vec(),
        }
    }
}

impl TransformationRecord {
    pub fn to_transformation(&self) -> Result<PartialTransformation, InterchangeError> {
        let n = self.images.len();
        if let Some(bad) = self.images.iter().flatten().find(|&&t| t >= n) {
            return Err(InterchangeError::Schema(format!(
                "`{}` maps to missing state {bad}",
                self.label
            )));
        }
        Ok(PartialTransformation::new(
            self.images.clone(),
            self.label.clone(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: usize,
    pub label: String,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub objects: Vec<ObjectRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl From<&TypedGeneratorGraph> for GraphRecord {
    fn from(g: &TypedGeneratorGraph) -> Self {
        GraphRecord {
            objects: g
                .objects()
                .iter()
                .map(|o| ObjectRecord {
                    id: o.id,
                    name: o.name.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    source: e.source,
                    label: e.label.clone(),
                    target: e.target,
                })
                .collect(),
        }
    }
}

impl GraphRecord {
    pub fn to_graph(&self) -> Result<TypedGeneratorGraph, InterchangeError> {
        check_dense(&self.objects, |o| o.id, "object")?;
        Ok(TypedGeneratorGraph::new(
            self.objects.iter().map(|o| o.name.clone()).collect(),
            self.edges
                .iter()
                .map(|e| GraphEdge {
                    source: e.source,
                    label: e.label.clone(),
                    target: e.target,
                })
                .collect(),
        )?)
    }
}

/// The extracted state space with generator semantics and closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpaceRecord {
    pub states: Vec<String>,
    pub cap: usize,
    pub modulus: u64,
    pub generators: Vec<String>,
    pub transformations: Vec<TransformationRecord>,
    pub closure_size: usize,
    pub closure: Vec<TransformationRecord>,
    pub graph: GraphRecord,
}

impl StateSpaceRecord {
    pub fn new(
        space: &StateSpace,
        generators: &[PartialTransformation],
        closure: &Closure,
        graph: &TypedGeneratorGraph,
    ) -> Self {
        StateSpaceRecord {
            states: space.names(),
            cap: space.cap(),
            modulus: space.modulus(),
            generators: space.generators().to_vec(),
            transformations: generators.iter().map(Into::into).collect(),
            closure_size: closure.len(),
            closure: closure.elements().iter().map(Into::into).collect(),
            graph: graph.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    /// Target semigroupoid; required when the record is a standalone
    /// morphism file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SgpoidRecord>,
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl MorphismRecord {
    pub fn to_morphism(&self) -> Morphism {
        Morphism {
            object_map: self.object_map.clone(),
            arrow_map: self.arrow_map.clone(),
        }
    }
}

/// A semigroupoid file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupoidFile {
    #[serde(flatten)]
    pub semigroupoid: SgpoidRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statespace: Option<StateSpaceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismRecord>,
}

impl SemigroupoidFile {
    pub fn plain(s: &Semigroupoid) -> Self {
        SemigroupoidFile {
            semigroupoid: s.into(),
            provenance: None,
            statespace: None,
            morphism: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub top_arrow: usize,
    pub members: Vec<usize>,
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMemberRecord {
    pub component: usize,
    pub object_map: Vec<[usize; 2]>,
    pub arrow_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: usize,
    pub members: Vec<ClassMemberRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmulationRecord {
    pub ok: bool,
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub top: SgpoidRecord,
    pub morphism: MorphismRecord,
    pub components: Vec<ComponentRecord>,
    pub classes: Vec<ClassRecord>,
    pub emulation: EmulationRecord,
}

impl DecompositionFile {
    pub fn new(d: &Decomposition, report: &EmulationReport) -> Self {
        DecompositionFile {
            top: (&d.top).into(),
            morphism: MorphismRecord {
                target: None,
                object_map: d.morphism.object_map.clone(),
                arrow_map: d.morphism.arrow_map.clone(),
            },
            components: d
                .components
                .iter()
                .map(|c| ComponentRecord {
                    top_arrow: c.top_arrow,
                    members: c.members.clone(),
                    fingerprint: c.fingerprint.clone(),
                })
                .collect(),
            classes: d
                .classes
                .iter()
                .map(|cl| ClassRecord {
                    representative: cl.representative,
                    members: cl
                        .members
                        .iter()
                        .map(|m| ClassMemberRecord {
                            component: m.component,
                            object_map: m.object_map.iter().map(|&(a, b)| [a, b]).collect(),
                            arrow_map: m.arrow_map.clone(),
                        })
                        .collect(),
                })
                .collect(),
            emulation: EmulationRecord {
                ok: report.is_ok(),
                pairs_checked: report.pairs_checked,
                violations: report.violations.iter().map(ToString::to_string).collect(),
            },
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition, InterchangeError> {
        Ok(Decomposition {
            top: self.top.to_semigroupoid()?,
            morphism: self.morphism.to_morphism(),
            components: self
                .components
                .iter()
                .map(|c| Component {
                    top_arrow: c.top_arrow,
                    members: c.members.clone(),
                    fingerprint: c.fingerprint.clone(),
                })
                .collect(),
            classes: self
                .classes
                .iter()
                .map(|cl| CompressionClass {
                    representative: cl.representative,
                    members: cl
                        .members
                        .iter()
                        .map(|m| ClassMember {
                            component: m.component,
                            object_map: m.object_map.iter().map(|&[a, b]| (a, b)).collect(),
                            arrow_map: m.arrow_map.clone(),
                        })
                        .collect(),
                })
                .collect(),
        })
    }
}
