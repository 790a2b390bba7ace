use std::collections::BTreeSet;

use super::SgpoidError;
use crate::state_space::{GraphEdge, TypedGeneratorGraph};

/// Blocks of object ids; every object must occur in exactly one block.
pub type Partition = Vec<Vec<usize>>;

fn block_of(
    graph: &TypedGeneratorGraph,
    partition: &[Vec<usize>],
) -> Result<Vec<usize>, SgpoidError> {
    let n = graph.object_count();
    let mut owner = vec![None; n];
    for (b, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(SgpoidError::InvalidPartition(format!("block {b} is empty")));
        }
        for &o in block {
            if o >= n {
                return Err(SgpoidError::InvalidPartition(format!(
                    "object {o} does not exist"
                )));
            }
            if owner[o].replace(b).is_some() {
                return Err(SgpoidError::InvalidPartition(format!(
                    "object {o} is in two blocks"
                )));
            }
        }
    }
    owner
        .into_iter()
        .enumerate()
        .map(|(o, b)| {
            b.ok_or_else(|| SgpoidError::InvalidPartition(format!("object {o} is in no block")))
        })
        .collect()
}

fn block_name(graph: &TypedGeneratorGraph, block: &[usize]) -> String {
    match block {
        [single] => graph.objects()[*single].name.clone(),
        many => {
            let names: Vec<&str> = many
                .iter()
                .map(|&o| graph.objects()[o].name.as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        }
    }
}

fn quotient(
    graph: &TypedGeneratorGraph,
    partition: &[Vec<usize>],
    strict: bool,
) -> Result<TypedGeneratorGraph, SgpoidError> {
    let owner = block_of(graph, partition)?;
    let labels = graph.labels();
    for (b, block) in partition.iter().enumerate() {
        for &label in &labels {
            let (defined, undefined): (Vec<usize>, Vec<usize>) = block
                .iter()
                .partition(|&&o| graph.targets(o, label).next().is_some());
            if !defined.is_empty() && !undefined.is_empty() {
                return Err(SgpoidError::IncompatiblePartition {
                    label: label.to_string(),
                    block: b,
                    detail: format!(
                        "defined at {} but undefined at {}",
                        graph.objects()[defined[0]].name,
                        graph.objects()[undefined[0]].name
                    ),
                });
            }
            if strict {
                let targets: BTreeSet<usize> = block
                    .iter()
                    .flat_map(|&o| graph.targets(o, label))
                    .map(|t| owner[t])
                    .collect();
                if targets.len() > 1 {
                    return Err(SgpoidError::IncompatiblePartition {
                        label: label.to_string(),
                        block: b,
                        detail: format!("leads to {} different blocks", targets.len()),
                    });
                }
            }
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| {
            let l = labels
                .iter()
                .position(|&l| l == e.label)
                .expect("label listed");
            (owner[e.source], l, owner[e.target])
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let names = partition
        .iter()
        .map(|block| block_name(graph, block))
        .collect();
    let edges = edges
        .into_iter()
        .map(|(source, l, target)| GraphEdge {
            source,
            label: labels[l].to_string(),
            target,
        })
        .collect();
    Ok(TypedGeneratorGraph::new(names, edges)?)
}

/// Merges the objects of each block.
///
/// Every label must be defined at all members of a block or at none. The
/// result has one edge per distinct (block, label, block) triple, so one
/// block may reach several blocks by the same label.
pub fn quotient_objects(
    graph: &TypedGeneratorGraph,
    partition: &[Vec<usize>],
) -> Result<TypedGeneratorGraph, SgpoidError> {
    quotient(graph, partition, false)
}

/// Like [`quotient_objects`], additionally requiring each label to lead from
/// a block into a single block (a congruence of the transition structure).
pub fn quotient_objects_strict(
    graph: &TypedGeneratorGraph,
    partition: &[Vec<usize>],
) -> Result<TypedGeneratorGraph, SgpoidError> {
    quotient(graph, partition, true)
}
