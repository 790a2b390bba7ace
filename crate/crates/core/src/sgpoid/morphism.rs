use std::collections::HashMap;
use std::fmt;

use super::{Semigroupoid, SgpoidError};

/// Object and arrow maps from a source to a target semigroupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl Morphism {
    pub fn identity(s: &Semigroupoid) -> Self {
        Morphism {
            object_map: (0..s.object_count()).collect(),
            arrow_map: (0..s.arrow_count()).collect(),
        }
    }

    /// Arrows of the source sent to `target_arrow`, ascending.
    pub fn preimage(&self, target_arrow: usize) -> Vec<usize> {
        self.arrow_map
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t == target_arrow)
            .map(|(x, _)| x)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// A map has the wrong length.
    Size {
        map: &'static str,
        expected: usize,
        got: usize,
    },
    /// A map sends something outside the target.
    OutOfRange {
        map: &'static str,
        from: usize,
        to: usize,
    },
    /// `φ(x)` does not run from `φ(dom x)` to `φ(cod x)`.
    Type { arrow: usize },
    /// `φ(xy) != φ(x)φ(y)` (or the right side is undefined).
    Law { x: usize, y: usize },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MorphismViolation::Size { map, expected, got } => {
                write!(f, "{map} map has {got} entries, expected {expected}")
            }
            MorphismViolation::OutOfRange { map, from, to } => {
                write!(f, "{map} map sends {from} to missing {to}")
            }
            MorphismViolation::Type { arrow } => {
                write!(f, "arrow {arrow} is sent across the wrong objects")
            }
            MorphismViolation::Law { x, y } => {
                write!(f, "composition of ({x},{y}) is not preserved")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub violations: Vec<MorphismViolation>,
    pub object_surjective: bool,
    pub arrow_surjective: bool,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.object_surjective && self.arrow_surjective
    }

    /// First homomorphism-law witness, if any.
    pub fn law_witness(&self) -> Option<(usize, usize)> {
        self.violations.iter().find_map(|v| match *v {
            MorphismViolation::Law { x, y } => Some((x, y)),
            _ => None,
        })
    }
}

/// Checks type compatibility and the homomorphism law on every composable
/// pair; surjectivity is reported separately.
pub fn check_morphism(
    source: &Semigroupoid,
    target: &Semigroupoid,
    phi: &Morphism,
) -> MorphismReport {
    let mut violations = Vec::new();
    for (map, expected, got, bound) in [
        (
            "object",
            source.object_count(),
            &phi.object_map,
            target.object_count(),
        ),
        (
            "arrow",
            source.arrow_count(),
            &phi.arrow_map,
            target.arrow_count(),
        ),
    ] {
        if got.len() != expected {
            violations.push(MorphismViolation::Size {
                map,
                expected,
                got: got.len(),
            });
        }
        for (from, &to) in got.iter().enumerate() {
            if to >= bound {
                violations.push(MorphismViolation::OutOfRange { map, from, to });
            }
        }
    }
    if !violations.is_empty() {
        return MorphismReport {
            violations,
            object_surjective: false,
            arrow_surjective: false,
        };
    }
    for a in source.arrows() {
        let image = &target.arrows()[phi.arrow_map[a.id]];
        if image.dom != phi.object_map[a.dom] || image.cod != phi.object_map[a.cod] {
            violations.push(MorphismViolation::Type { arrow: a.id });
        }
    }
    for (x, y) in source.composable_pairs() {
        let Some(xy) = source.entry(x, y) else {
            continue;
        };
        let expected = target.entry(phi.arrow_map[x], phi.arrow_map[y]);
        if expected != Some(phi.arrow_map[xy])
            || !target.composable(phi.arrow_map[x], phi.arrow_map[y])
        {
            violations.push(MorphismViolation::Law { x, y });
        }
    }
    let mut hit_obj = vec![false; target.object_count()];
    phi.object_map.iter().for_each(|&o| hit_obj[o] = true);
    let mut hit_arr = vec![false; target.arrow_count()];
    phi.arrow_map.iter().for_each(|&a| hit_arr[a] = true);
    MorphismReport {
        violations,
        object_surjective: hit_obj.into_iter().all(|b| b),
        arrow_surjective: hit_arr.into_iter().all(|b| b),
    }
}

/// Collapses every nonempty hom-set of `s` to a single arrow.
///
/// The image keeps the objects of `s`; its arrows are the nonempty hom-sets
/// sorted by `(dom, cod)` and labelled `dom→cod`.
pub fn arrow_type(s: &Semigroupoid) -> Result<(Semigroupoid, Morphism), SgpoidError> {
    let homs = s.nonempty_hom_sets();
    let position: HashMap<(usize, usize), usize> =
        homs.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let names: Vec<String> = s.objects().iter().map(|o| o.name.clone()).collect();
    let arrows: Vec<(usize, usize, String)> = homs
        .iter()
        .map(|&(d, c)| (d, c, format!("{}→{}", names[d], names[c])))
        .collect();
    let arrow_map: Vec<usize> = s
        .arrows()
        .iter()
        .map(|a| position[&(a.dom, a.cod)])
        .collect();

    let mut entries: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, y) in s.composable_pairs() {
        let xy = s.compose(x, y)?;
        let key = (arrow_map[x], arrow_map[y]);
        match entries.insert(key, arrow_map[xy]) {
            Some(prev) if prev != arrow_map[xy] => return Err(SgpoidError::NotAMorphism { x, y }),
            _ => {}
        }
    }
    let mut entries: Vec<(usize, usize, usize)> =
        entries.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    entries.sort_unstable();
    let top = Semigroupoid::new(names, arrows, entries)?;
    let phi = Morphism {
        object_map: (0..s.object_count()).collect(),
        arrow_map,
    };
    let report = check_morphism(s, &top, &phi);
    if !report.is_morphism() {
        let (x, y) = report.law_witness().unwrap_or((0, 0));
        return Err(SgpoidError::NotAMorphism { x, y });
    }
    Ok((top, phi))
}
