use std::collections::{HashMap, HashSet};

use super::{Semigroupoid, SgpoidError};
use crate::state_space::{
    pt_closure, Closure, ImageVector, PartialTransformation, TypedGeneratorGraph,
};

/// The semigroupoid generated by a typed generator graph.
///
/// Arrows are extensional: an arrow is a pair `(σ, f)` where `f` is an
/// element of the transformation closure of the generator semantics and
/// `f` is defined at `σ`. It runs from `σ` to `f(σ)`, and
/// `(σ, f)(f(σ), g) = (σ, f·g)`. Two generator paths from `σ` give the same
/// arrow iff they induce the same transformation. Arrows are ordered by
/// source object, then by the closure's canonical order, and carry the
/// closure element's shortest witness word as label.
pub fn from_generators(
    graph: &TypedGeneratorGraph,
    semantics: &[PartialTransformation],
) -> Result<Semigroupoid, SgpoidError> {
    let n = graph.object_count();
    let by_label: HashMap<&str, &PartialTransformation> =
        semantics.iter().map(|f| (f.label(), f)).collect();
    for f in semantics {
        if f.degree() != n {
            return Err(SgpoidError::InconsistentSemantics {
                label: f.label().to_string(),
                detail: format!("acts on {} points, graph has {n} objects", f.degree()),
            });
        }
    }
    let edges: HashSet<(usize, &str, usize)> = graph
        .edges()
        .iter()
        .map(|e| (e.source, e.label.as_str(), e.target))
        .collect();
    for e in graph.edges() {
        match by_label.get(e.label.as_str()) {
            None => {
                return Err(SgpoidError::InconsistentSemantics {
                    label: e.label.clone(),
                    detail: "no semantics given".into(),
                })
            }
            Some(f) if f.apply(e.source) != Some(e.target) => {
                return Err(SgpoidError::InconsistentSemantics {
                    label: e.label.clone(),
                    detail: format!(
                        "edge {} -> {} disagrees with {}",
                        e.source,
                        e.target,
                        ImageVector(f.images())
                    ),
                })
            }
            _ => {}
        }
    }
    for f in semantics {
        if let Some(s) = f
            .domain()
            .find(|&s| !edges.contains(&(s, f.label(), f.apply(s).unwrap())))
        {
            return Err(SgpoidError::InconsistentSemantics {
                label: f.label().to_string(),
                detail: format!("defined at {s} but the graph has no such edge"),
            });
        }
    }

    let names: Vec<String> = graph.objects().iter().map(|o| o.name.clone()).collect();
    if semantics.is_empty() {
        return Semigroupoid::new(names, Vec::new(), Vec::new());
    }
    let closure = pt_closure(semantics)?;
    Ok(typed_closure(names, &closure))
}

/// Typed arrows `(σ, f)` over a closure, as described in [`from_generators`].
fn typed_closure(names: Vec<String>, closure: &Closure) -> Semigroupoid {
    let mut arrows = Vec::new();
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    for sigma in 0..names.len() {
        for (k, f) in closure.elements().iter().enumerate() {
            if let Some(tau) = f.apply(sigma) {
                id.insert((sigma, k), arrows.len());
                arrows.push((sigma, tau, k));
            }
        }
    }
    let mut entries = Vec::new();
    for (x, &(sigma, tau, f)) in arrows.iter().enumerate() {
        for (g, _) in closure.elements().iter().enumerate() {
            if let Some(&y) = id.get(&(tau, g)) {
                entries.push((x, y, id[&(sigma, closure.product(f, g))]));
            }
        }
    }
    let arrows = arrows
        .into_iter()
        .map(|(sigma, tau, k)| (sigma, tau, closure.elements()[k].label().to_string()))
        .collect();
    Semigroupoid::new(names, arrows, entries).expect("ids built in range")
}

/// The closure as a one-object semigroupoid (its Cayley table).
pub fn closure_semigroup(closure: &Closure) -> Semigroupoid {
    let n = closure.len();
    let arrows = closure
        .elements()
        .iter()
        .map(|f| (0, 0, f.label().to_string()))
        .collect();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, closure.product(i, j))));
    Semigroupoid::new(vec!["•".into()], arrows, entries).expect("ids built in range")
}
