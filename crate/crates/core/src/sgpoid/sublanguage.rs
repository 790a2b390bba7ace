use super::SgpoidError;
use crate::state_space::{enumerate_states, pt_closure, word_semantics};

/// Whether the language generated by `smaller` lies inside the one generated
/// by `larger`: every transformation in the closure of `smaller` belongs to
/// the closure of `larger`, both taken over the joint state space.
pub fn sublanguage_leq<S: AsRef<str>>(
    smaller: &[S],
    larger: &[S],
    cap: usize,
    modulus: u64,
) -> Result<bool, SgpoidError> {
    let mut joint: Vec<&str> = Vec::new();
    for g in smaller.iter().chain(larger) {
        if !joint.contains(&g.as_ref()) {
            joint.push(g.as_ref());
        }
    }
    let space = enumerate_states(&joint, cap, modulus)?;
    let semantics = |gens: &[S]| -> Result<Vec<_>, SgpoidError> {
        Ok(gens
            .iter()
            .map(|g| word_semantics(&space, g.as_ref()))
            .collect::<Result<Vec<_>, _>>()?)
    };
    let small = pt_closure(&semantics(smaller)?)?;
    let large = pt_closure(&semantics(larger)?)?;
    Ok(small.elements().iter().all(|f| large.contains(f)))
}
