//! Two-level covering decomposition.
//!
//! A surjective morphism `φ: S → T` collapses `S` onto the top level `T`.
//! Each arrow `t` of `T` gets a bottom-level component holding its full
//! preimage `φ⁻¹(t)`. Components with isomorphic structure are compressed
//! into classes: the representative is stored once, together with a
//! bijection onto every other member.
//!
//! An arrow `x` of `S` is encoded as the coordinate pair `(φ(x), x)`; the
//! emulation check confirms that encoding, decoding and composition agree.
//!
//! Component structure: the member arrows, their dom/cod pattern, and the
//! products of `S` between members whose result is again a member.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::sgpoid::{
    check_morphism, find_structure_isomorphism, ArrowStructure, Isomorphism, Morphism,
    MorphismViolation, Semigroupoid,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("NotAMorphism: {0}")]
    NotAMorphism(MorphismViolation),
    #[error("NotSurjective: no preimage for top arrow(s) {missing:?}")]
    NotSurjective { missing: Vec<usize> },
}

/// The preimage of one top-level arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub top_arrow: usize,
    /// Arrows of `S`, ascending.
    pub members: Vec<usize>,
    /// Isomorphism invariant; components with different fingerprints are
    /// never isomorphic.
    pub fingerprint: String,
}

/// Bijection from a class representative onto one member component, in
/// ids of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub component: usize,
    /// `(representative object, member object)` pairs.
    pub object_map: Vec<(usize, usize)>,
    /// `arrow_map[i]` is the image of the representative's `i`-th member.
    pub arrow_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionClass {
    /// Index into the component list.
    pub representative: usize,
    /// Every component in the class, the representative first.
    pub members: Vec<ClassMember>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub top: Semigroupoid,
    pub morphism: Morphism,
    pub components: Vec<Component>,
    pub classes: Vec<CompressionClass>,
}

impl Decomposition {
    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.members.len()).collect()
    }

    /// Coordinates `(top arrow, bottom arrow)` of `x`.
    pub fn encode(&self, x: usize) -> (usize, usize) {
        (self.morphism.arrow_map[x], x)
    }

    /// The arrow at `(top, bottom)`, if `bottom` belongs to the component of `top`.
    pub fn decode(&self, top: usize, bottom: usize) -> Option<usize> {
        let c = self.components.get(top)?;
        c.members.binary_search(&bottom).ok().map(|_| bottom)
    }

    pub fn class_of(&self, component: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|cl| cl.members.iter().any(|m| m.component == component))
    }
}

fn fingerprint(s: &Semigroupoid, members: &[usize]) -> String {
    let (structure, objects) = ArrowStructure::induced(s, members);
    let n = structure.arrow_count();
    let loops = (0..n)
        .filter(|&x| structure.ends(x).0 == structure.ends(x).1)
        .count();
    let products = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| structure.product(x, y).is_some())
        .count();
    let idempotents = (0..n)
        .filter(|&x| structure.product(x, x) == Some(x))
        .count();
    format!("a{n}o{}l{loops}p{products}i{idempotents}", objects.len())
}

/// Copy step: one component per top arrow holding its preimage.
pub fn copy_components(
    source: &Semigroupoid,
    top: &Semigroupoid,
    morphism: &Morphism,
) -> Vec<Component> {
    (0..top.arrow_count())
        .map(|t| {
            let members = morphism.preimage(t);
            Component {
                top_arrow: t,
                fingerprint: fingerprint(source, &members),
                members,
            }
        })
        .collect()
}

/// Compress step: groups components whose structures are isomorphic.
/// Classes appear in order of their first component.
pub fn compress_components(
    source: &Semigroupoid,
    components: &[Component],
) -> Vec<CompressionClass> {
    let structures: Vec<(ArrowStructure, Vec<usize>)> = components
        .iter()
        .map(|c| ArrowStructure::induced(source, &c.members))
        .collect();
    let mut classes: Vec<CompressionClass> = Vec::new();
    'next: for (i, c) in components.iter().enumerate() {
        for class in classes.iter_mut() {
            let r = class.representative;
            if components[r].fingerprint != c.fingerprint {
                continue;
            }
            if let Some(iso) = find_structure_isomorphism(&structures[r].0, &structures[i].0) {
                class.members.push(lift(
                    &iso,
                    (&components[r], &structures[r].1),
                    (c, &structures[i].1),
                    i,
                ));
                continue 'next;
            }
        }
        let (st, objects) = &structures[i];
        let identity = Isomorphism {
            object_map: (0..st.object_count()).collect(),
            arrow_map: (0..st.arrow_count()).collect(),
        };
        classes.push(CompressionClass {
            representative: i,
            members: vec![lift(&identity, (c, objects), (c, objects), i)],
        });
    }
    classes
}

/// Rewrites a local isomorphism in terms of ids of `S`.
fn lift(
    iso: &Isomorphism,
    rep: (&Component, &[usize]),
    member: (&Component, &[usize]),
    component: usize,
) -> ClassMember {
    ClassMember {
        component,
        object_map: iso
            .object_map
            .iter()
            .enumerate()
            .map(|(i, &j)| (rep.1[i], member.1[j]))
            .collect(),
        arrow_map: iso.arrow_map.iter().map(|&j| member.0.members[j]).collect(),
    }
}

/// Collapse, copy and compress along a surjective morphism `source → top`.
pub fn covering_decompose(
    source: &Semigroupoid,
    top: Semigroupoid,
    morphism: Morphism,
) -> Result<Decomposition, DecompositionError> {
    let report = check_morphism(source, &top, &morphism);
    if let Some(v) = report.violations.first() {
        let law = report
            .violations
            .iter()
            .find(|v| matches!(v, MorphismViolation::Law { .. }));
        return Err(DecompositionError::NotAMorphism(law.unwrap_or(v).clone()));
    }
    if !report.arrow_surjective {
        let missing = (0..top.arrow_count())
            .filter(|t| !morphism.arrow_map.contains(t))
            .collect();
        return Err(DecompositionError::NotSurjective { missing });
    }
    let components = copy_components(source, &top, &morphism);
    let classes = compress_components(source, &components);
    Ok(Decomposition {
        top,
        morphism,
        components,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmulationViolation {
    /// An arrow is not in exactly one component, or sits in the wrong one.
    Coverage { arrow: usize },
    /// `φ(x)φ(y) != φ(xy)`.
    TopLevel { x: usize, y: usize },
    /// `xy` is missing from the component of `φ(xy)`.
    Membership { x: usize, y: usize, product: usize },
    /// `(φ(xy), xy)` does not decode to `xy`.
    Decoding { x: usize, y: usize, product: usize },
    /// A recorded class bijection does not reproduce its member component.
    Compression { class: usize, component: usize },
}

impl fmt::Display for EmulationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EmulationViolation::Coverage { arrow } => write!(
                f,
                "arrow {arrow} is not covered by exactly its own component"
            ),
            EmulationViolation::TopLevel { x, y } => {
                write!(f, "top level does not preserve ({x},{y})")
            }
            EmulationViolation::Membership { x, y, product } => {
                write!(
                    f,
                    "product {product} of ({x},{y}) is missing from its component"
                )
            }
            EmulationViolation::Decoding { x, y, product } => {
                write!(
                    f,
                    "coordinates of product {product} of ({x},{y}) do not decode"
                )
            }
            EmulationViolation::Compression { class, component } => {
                write!(f, "class {class} does not reproduce component {component}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmulationReport {
    pub pairs_checked: usize,
    pub violations: Vec<EmulationViolation>,
}

impl EmulationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every composable pair `(x, y)` of `source`: the top level
/// composes as `φ`, the product lies in the component of `φ(xy)`, and its
/// coordinates decode back to it. Also checks that the components partition
/// the arrows and that every class bijection is sound.
pub fn verify_emulation(source: &Semigroupoid, d: &Decomposition) -> EmulationReport {
    let mut violations = Vec::new();
    let phi = &d.morphism.arrow_map;

    let mut owner: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in d.components.iter().enumerate() {
        for &x in &c.members {
            owner.entry(x).or_default().push(i);
        }
    }
    for x in 0..source.arrow_count() {
        let ok = phi.get(x).is_some_and(|&t| {
            owner.get(&x).map(Vec::as_slice) == Some(&[t]) && d.components[t].top_arrow == t
        });
        if !ok {
            violations.push(EmulationViolation::Coverage { arrow: x });
        }
    }

    let mut pairs_checked = 0;
    for (x, y) in source.composable_pairs() {
        let Some(xy) = source.entry(x, y) else {
            continue;
        };
        pairs_checked += 1;
        let (Some(&tx), Some(&ty), Some(&txy)) = (phi.get(x), phi.get(y), phi.get(xy)) else {
            violations.push(EmulationViolation::TopLevel { x, y });
            continue;
        };
        if d.top.entry(tx, ty) != Some(txy) {
            violations.push(EmulationViolation::TopLevel { x, y });
        }
        let member = d
            .components
            .get(txy)
            .is_some_and(|c| c.members.contains(&xy));
        if !member {
            violations.push(EmulationViolation::Membership { x, y, product: xy });
        }
        let (top, bottom) = d.encode(xy);
        if d.decode(top, bottom) != Some(xy) {
            violations.push(EmulationViolation::Decoding { x, y, product: xy });
        }
    }

    for (k, class) in d.classes.iter().enumerate() {
        for m in &class.members {
            if !class_member_sound(source, d, class.representative, m) {
                violations.push(EmulationViolation::Compression {
                    class: k,
                    component: m.component,
                });
            }
        }
    }

    EmulationReport {
        pairs_checked,
        violations,
    }
}

fn class_member_sound(
    source: &Semigroupoid,
    d: &Decomposition,
    rep: usize,
    m: &ClassMember,
) -> bool {
    let (Some(rc), Some(mc)) = (d.components.get(rep), d.components.get(m.component)) else {
        return false;
    };
    let (rs, robj) = ArrowStructure::induced(source, &rc.members);
    let (ms, mobj) = ArrowStructure::induced(source, &mc.members);
    let local = |ids: &[usize], x: usize| ids.iter().position(|&y| y == x);
    let mut object_map = vec![usize::MAX; robj.len()];
    for &(a, b) in &m.object_map {
        match (local(&robj, a), local(&mobj, b)) {
            (Some(i), Some(j)) => object_map[i] = j,
            _ => return false,
        }
    }
    if m.object_map.len() != robj.len() || m.arrow_map.len() != rc.members.len() {
        return false;
    }
    let Some(arrow_map) = m
        .arrow_map
        .iter()
        .map(|&x| local(&mc.members, x))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    Isomorphism {
        object_map,
        arrow_map,
    }
    .is_valid(&rs, &ms)
}
