use super::{PartialTransformation, StateSpaceError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphObject {
    pub id: usize,
    pub name: String,
}

/// A labelled generator arrow `source --label--> target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphEdge {
    pub source: usize,
    pub label: String,
    pub target: usize,
}

/// Objects are typed states; edges are the defined entries of the generator
/// transformations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypedGeneratorGraph {
    objects: Vec<GraphObject>,
    edges: Vec<GraphEdge>,
}

impl TypedGeneratorGraph {
    /// Objects are named by `names` in order (ids `0..n`). Edges are checked
    /// against the object range and deduplicated, keeping first occurrence.
    pub fn new(names: Vec<String>, edges: Vec<GraphEdge>) -> Result<Self, StateSpaceError> {
        let n = names.len();
        let mut kept: Vec<GraphEdge> = Vec::with_capacity(edges.len());
        for e in edges {
            if e.source >= n || e.target >= n {
                return Err(StateSpaceError::InvalidEdge {
                    from: e.source,
                    target: e.target,
                    objects: n,
                });
            }
            if !kept.contains(&e) {
                kept.push(e);
            }
        }
        Ok(TypedGeneratorGraph {
            objects: names
                .into_iter()
                .enumerate()
                .map(|(id, name)| GraphObject { id, name })
                .collect(),
            edges: kept,
        })
    }

    /// One edge per defined entry of each generator, ordered by generator and
    /// then by source.
    pub fn from_semantics(
        names: Vec<String>,
        generators: &[PartialTransformation],
    ) -> Result<Self, StateSpaceError> {
        let n = names.len();
        let mut edges = Vec::new();
        for g in generators {
            if g.degree() != n {
                return Err(StateSpaceError::LengthMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
            edges.extend(g.domain().map(|s| GraphEdge {
                source: s,
                label: g.label().to_string(),
                target: g.apply(s).expect("in domain"),
            }));
        }
        Self::new(names, edges)
    }

    pub fn objects(&self) -> &[GraphObject] {
        &self.objects
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Labels in order of first appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.edges {
            if !out.contains(&e.label.as_str()) {
                out.push(&e.label);
            }
        }
        out
    }

    pub fn targets(&self, source: usize, label: &str) -> impl Iterator<Item = usize> + '_ {
        let label = label.to_string();
        self.edges
            .iter()
            .filter(move |e| e.source == source && e.label == label)
            .map(|e| e.target)
    }
}
