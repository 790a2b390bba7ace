use std::collections::HashMap;
use std::fmt;

use super::StateSpaceError;

/// A partial map on state indices `0..n`; `None` is undefined (`_`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTransformation {
    images: Vec<Option<usize>>,
    label: String,
}

impl PartialTransformation {
    /// # Panics
    /// If an image is not a valid index.
    pub fn new(images: Vec<Option<usize>>, label: impl Into<String>) -> Self {
        let n = images.len();
        assert!(
            images.iter().flatten().all(|&t| t < n),
            "image out of range for {n} points"
        );
        PartialTransformation {
            images,
            label: label.into(),
        }
    }

    /// The empty partial map on `n` points.
    pub fn nowhere(n: usize, label: impl Into<String>) -> Self {
        PartialTransformation {
            images: vec![None; n],
            label: label.into(),
        }
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> Option<usize> {
        self.images.get(point).copied().flatten()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|_| i))
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn is_nowhere_defined(&self) -> bool {
        self.images.iter().all(Option::is_none)
    }

    /// Extensional equality, ignoring labels.
    pub fn same_action(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

/// Renders as `label[_,_,_,1,2,1,2]`.
impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, ImageVector(&self.images))
    }
}

/// Bracketed image list with `_` for undefined points.
pub struct ImageVector<'a>(pub &'a [Option<usize>]);

impl fmt::Display for ImageVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match t {
                Some(t) => write!(f, "{t}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

fn join_labels(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a} {b}"),
    }
}

/// Right action: `f` first, then `g`, so `(f·g)(x) = g(f(x))`.
pub fn compose_pt(
    f: &PartialTransformation,
    g: &PartialTransformation,
) -> Result<PartialTransformation, StateSpaceError> {
    if f.degree() != g.degree() {
        return Err(StateSpaceError::LengthMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    Ok(PartialTransformation {
        images: f
            .images
            .iter()
            .map(|t| t.and_then(|t| g.images[t]))
            .collect(),
        label: join_labels(&f.label, &g.label),
    })
}

/// Sink completion: adds point `n` and sends every undefined entry (and the
/// sink itself) there.
pub fn totalize(f: &PartialTransformation) -> PartialTransformation {
    let sink = f.degree();
    let mut images: Vec<Option<usize>> = f.images.iter().map(|t| Some(t.unwrap_or(sink))).collect();
    images.push(Some(sink));
    PartialTransformation {
        images,
        label: f.label.clone(),
    }
}

/// A composition-closed set of partial transformations in canonical order:
/// by word length, then lexicographically by generator index. Each element
/// keeps the label of its first (shortest) witness word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    generators: Vec<PartialTransformation>,
    elements: Vec<PartialTransformation>,
    index: HashMap<Vec<Option<usize>>, usize>,
}

impl Closure {
    pub fn generators(&self) -> &[PartialTransformation] {
        &self.generators
    }

    pub fn elements(&self) -> &[PartialTransformation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, images: &[Option<usize>]) -> Option<usize> {
        self.index.get(images).copied()
    }

    pub fn contains(&self, f: &PartialTransformation) -> bool {
        self.index.contains_key(f.images())
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        let f = &self.elements[i];
        let g = &self.elements[j];
        let images: Vec<Option<usize>> = f
            .images
            .iter()
            .map(|t| t.and_then(|t| g.images[t]))
            .collect();
        self.index[&images]
    }
}

/// Smallest set containing `generators` and closed under [`compose_pt`].
pub fn pt_closure(generators: &[PartialTransformation]) -> Result<Closure, StateSpaceError> {
    let Some(first) = generators.first() else {
        return Err(StateSpaceError::EmptyGenerators);
    };
    if let Some(bad) = generators.iter().find(|g| g.degree() != first.degree()) {
        return Err(StateSpaceError::LengthMismatch {
            left: first.degree(),
            right: bad.degree(),
        });
    }
    let mut elements: Vec<PartialTransformation> = Vec::new();
    let mut index = HashMap::new();
    let mut frontier = Vec::new();
    for g in generators {
        if !index.contains_key(&g.images) {
            index.insert(g.images.clone(), elements.len());
            frontier.push(elements.len());
            elements.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in generators {
                let h = compose_pt(&elements[i], g)?;
                if !index.contains_key(&h.images) {
                    index.insert(h.images.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(h);
                }
            }
        }
        frontier = next;
    }
    Ok(Closure {
        generators: generators.to_vec(),
        elements,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const U: Option<usize> = None;

    fn pt(images: &[Option<usize>], label: &str) -> PartialTransformation {
        PartialTransformation::new(images.to_vec(), label)
    }

    fn plus() -> PartialTransformation {
        pt(&[U, U, U, Some(1), Some(2), Some(1), Some(2)], "+")
    }

    fn zero() -> PartialTransformation {
        pt(&[Some(1), Some(3), Some(6), U, U, U, U], "0")
    }

    fn one() -> PartialTransformation {
        pt(&[Some(2), Some(4), Some(5), U, U, U, U], "1")
    }

    #[test]
    fn zero_then_plus_is_partial_identity() {
        let h = compose_pt(&zero(), &plus()).unwrap();
        assert_eq!(h.images(), &[U, Some(1), Some(2), U, U, U, U]);
        assert_eq!(h.label(), "0 +");
        assert_eq!(h.to_string(), "0 +[_,1,2,_,_,_,_]");
    }

    #[test]
    fn undefined_propagates() {
        let none = PartialTransformation::nowhere(7, "");
        assert!(compose_pt(&zero(), &none).unwrap().is_nowhere_defined());
        assert!(compose_pt(&none, &zero()).unwrap().is_nowhere_defined());
    }

    #[test]
    fn associativity_instance() {
        let left = compose_pt(&compose_pt(&zero(), &one()).unwrap(), &plus()).unwrap();
        let right = compose_pt(&zero(), &compose_pt(&one(), &plus()).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn length_mismatch() {
        let short = PartialTransformation::nowhere(3, "x");
        assert_eq!(
            compose_pt(&zero(), &short),
            Err(StateSpaceError::LengthMismatch { left: 7, right: 3 })
        );
    }

    #[test]
    fn totalize_plus() {
        let t = totalize(&plus());
        let expected: Vec<Option<usize>> = [7, 7, 7, 1, 2, 1, 2, 7].into_iter().map(Some).collect();
        assert_eq!(t.images(), expected.as_slice());
        assert!(t.is_total());
    }

    #[test]
    fn totalize_total_adds_fixed_sink() {
        let f = pt(&[Some(1), Some(0)], "s");
        assert_eq!(totalize(&f).images(), &[Some(1), Some(0), Some(2)]);
    }

    #[test]
    fn binadd_closure_has_21_elements() {
        let c = pt_closure(&[plus(), zero(), one()]).unwrap();
        assert_eq!(c.len(), 21);
        assert_eq!(c.elements()[0].label(), "+");
        assert!(c
            .elements()
            .iter()
            .any(PartialTransformation::is_nowhere_defined));
    }

    #[test]
    fn idempotent_singleton() {
        let f = pt(&[Some(0), Some(0)], "e");
        assert_eq!(pt_closure(&[f]).unwrap().len(), 1);
    }

    #[test]
    fn duplicate_generators_collapse() {
        let c = pt_closure(&[zero(), zero().with_label("zero")]).unwrap();
        assert_eq!(c.elements()[0].label(), "0");
        assert_eq!(c.len(), pt_closure(&[zero()]).unwrap().len());
    }

    #[test]
    fn empty_generator_set() {
        assert_eq!(pt_closure(&[]), Err(StateSpaceError::EmptyGenerators));
    }
}
