use std::collections::HashMap;

use super::Semigroupoid;

/// Typed arrows with a partial product, the shape shared by semigroupoids
/// and decomposition components. Products need not be closed or
/// associative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowStructure {
    objects: usize,
    ends: Vec<(usize, usize)>,
    table: Vec<Option<usize>>,
}

impl ArrowStructure {
    /// # Panics
    /// If an end or product is out of range.
    pub fn new(
        objects: usize,
        ends: Vec<(usize, usize)>,
        products: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Self {
        let n = ends.len();
        assert!(ends.iter().all(|&(d, c)| d < objects && c < objects));
        let mut table = vec![None; n * n];
        for (x, y, z) in products {
            assert!(x < n && y < n && z < n);
            table[x * n + y] = Some(z);
        }
        ArrowStructure {
            objects,
            ends,
            table,
        }
    }

    /// The sub-structure on `members`: objects are those the members touch
    /// (renumbered in ascending order), products are kept when both factors
    /// and the result are members. Returns the structure and the original
    /// object ids.
    pub fn induced(s: &Semigroupoid, members: &[usize]) -> (Self, Vec<usize>) {
        let mut objects: Vec<usize> = members
            .iter()
            .flat_map(|&x| [s.arrows()[x].dom, s.arrows()[x].cod])
            .collect();
        objects.sort_unstable();
        objects.dedup();
        let obj_pos: HashMap<usize, usize> =
            objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let ends = members
            .iter()
            .map(|&x| (obj_pos[&s.arrows()[x].dom], obj_pos[&s.arrows()[x].cod]))
            .collect();
        let mut products = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                if !s.composable(x, y) {
                    continue;
                }
                if let Some(k) = s.entry(x, y).and_then(|z| pos.get(&z)) {
                    products.push((i, j, *k));
                }
            }
        }
        (Self::new(objects.len(), ends, products), objects)
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, x: usize) -> (usize, usize) {
        self.ends[x]
    }

    pub fn product(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.ends.len() + y]
    }

    fn product_count(&self) -> usize {
        self.table.iter().flatten().count()
    }
}

impl From<&Semigroupoid> for ArrowStructure {
    fn from(s: &Semigroupoid) -> Self {
        ArrowStructure::new(
            s.object_count(),
            s.arrows().iter().map(|a| (a.dom, a.cod)).collect(),
            s.entries().filter(|&(x, y, _)| s.composable(x, y)),
        )
    }
}

/// Object and arrow bijections commuting with dom, cod and products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

impl Isomorphism {
    pub fn inverse(&self) -> Self {
        Isomorphism {
            object_map: invert(&self.object_map),
            arrow_map: invert(&self.arrow_map),
        }
    }

    /// Full check of `self` as an isomorphism `a → b`.
    pub fn is_valid(&self, a: &ArrowStructure, b: &ArrowStructure) -> bool {
        let bijective = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n
                && map
                    .iter()
                    .all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
        };
        if a.objects != b.objects
            || a.arrow_count() != b.arrow_count()
            || !bijective(&self.object_map, a.objects)
            || !bijective(&self.arrow_map, a.arrow_count())
        {
            return false;
        }
        let n = a.arrow_count();
        (0..n).all(|x| {
            let (d, c) = a.ends(x);
            b.ends(self.arrow_map[x]) == (self.object_map[d], self.object_map[c])
        }) && (0..n).all(|x| {
            (0..n).all(|y| {
                a.product(x, y).map(|z| self.arrow_map[z])
                    == b.product(self.arrow_map[x], self.arrow_map[y])
            })
        })
    }
}

/// Local invariants that any isomorphism preserves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ArrowSig {
    is_loop: bool,
    square: u8,
    row: usize,
    col: usize,
    as_product: usize,
    parallel: usize,
    dom: ObjectSig,
    cod: ObjectSig,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ObjectSig {
    out: usize,
    inc: usize,
    loops: usize,
}

fn object_sigs(s: &ArrowStructure) -> Vec<ObjectSig> {
    let mut sigs = vec![
        ObjectSig {
            out: 0,
            inc: 0,
            loops: 0
        };
        s.objects
    ];
    for &(d, c) in &s.ends {
        sigs[d].out += 1;
        sigs[c].inc += 1;
        if d == c {
            sigs[d].loops += 1;
        }
    }
    sigs
}

fn arrow_sigs(s: &ArrowStructure, objs: &[ObjectSig]) -> Vec<ArrowSig> {
    let n = s.arrow_count();
    let mut as_product = vec![0; n];
    s.table.iter().flatten().for_each(|&z| as_product[z] += 1);
    (0..n)
        .map(|x| {
            let (d, c) = s.ends[x];
            ArrowSig {
                is_loop: d == c,
                square: match s.product(x, x) {
                    None => 0,
                    Some(z) if z == x => 1,
                    Some(_) => 2,
                },
                row: (0..n).filter(|&y| s.product(x, y).is_some()).count(),
                col: (0..n).filter(|&y| s.product(y, x).is_some()).count(),
                as_product: as_product[x],
                parallel: s.ends.iter().filter(|&&e| e == (d, c)).count(),
                dom: objs[d].clone(),
                cod: objs[c].clone(),
            }
        })
        .collect()
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

struct Search<'a> {
    a: &'a ArrowStructure,
    b: &'a ArrowStructure,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    factors: Vec<Vec<(usize, usize)>>,
    amap: Vec<Option<usize>>,
    used: Vec<bool>,
    omap: Vec<Option<usize>>,
    oinv: Vec<Option<usize>>,
}

impl Search<'_> {
    fn bind_object(&mut self, o: usize, p: usize, log: &mut Vec<usize>) -> bool {
        match (self.omap[o], self.oinv[p]) {
            (Some(q), _) => q == p,
            (None, Some(_)) => false,
            (None, None) => {
                self.omap[o] = Some(p);
                self.oinv[p] = Some(o);
                log.push(o);
                true
            }
        }
    }

    fn unbind(&mut self, log: &[usize]) {
        for &o in log {
            let p = self.omap[o].take().expect("logged binding");
            self.oinv[p] = None;
        }
    }

    /// Products among mapped arrows that involve `x` agree in both structures.
    fn consistent(&self, x: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let fx = self.amap[x].expect("x just mapped");
        for y in 0..a.arrow_count() {
            let Some(fy) = self.amap[y] else { continue };
            for (l, r, fl, fr) in [(x, y, fx, fy), (y, x, fy, fx)] {
                match (a.product(l, r), b.product(fl, fr)) {
                    (None, None) => {}
                    (Some(z), Some(w)) => match self.amap[z] {
                        Some(fz) if fz != w => return false,
                        None if self.used[w] => return false,
                        _ => {}
                    },
                    _ => return false,
                }
            }
        }
        self.factors[x]
            .iter()
            .all(|&(u, v)| match (self.amap[u], self.amap[v]) {
                (Some(fu), Some(fv)) => b.product(fu, fv) == Some(fx),
                _ => true,
            })
    }

    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let (d, c) = self.a.ends(x);
        for i in 0..self.candidates[x].len() {
            let fx = self.candidates[x][i];
            if self.used[fx] {
                continue;
            }
            let (fd, fc) = self.b.ends(fx);
            let mut log = Vec::new();
            if !(self.bind_object(d, fd, &mut log) && self.bind_object(c, fc, &mut log)) {
                self.unbind(&log);
                continue;
            }
            self.amap[x] = Some(fx);
            self.used[fx] = true;
            if self.consistent(x) && self.assign(depth + 1) {
                return true;
            }
            self.amap[x] = None;
            self.used[fx] = false;
            self.unbind(&log);
        }
        false
    }
}

/// Backtracking search for an isomorphism `a → b`, pruned by local
/// invariants (degrees, loops, squares, hom-set sizes).
pub fn find_structure_isomorphism(a: &ArrowStructure, b: &ArrowStructure) -> Option<Isomorphism> {
    if a.objects != b.objects
        || a.arrow_count() != b.arrow_count()
        || a.product_count() != b.product_count()
    {
        return None;
    }
    let (oa, ob) = (object_sigs(a), object_sigs(b));
    if sorted(&oa) != sorted(&ob) {
        return None;
    }
    let (sa, sb) = (arrow_sigs(a, &oa), arrow_sigs(b, &ob));
    if sorted(&sa) != sorted(&sb) {
        return None;
    }
    let n = a.arrow_count();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| sb[y] == sa[x]).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));
    let mut factors = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            if let Some(z) = a.product(x, y) {
                factors[z].push((x, y));
            }
        }
    }
    let mut search = Search {
        a,
        b,
        order,
        candidates,
        factors,
        amap: vec![None; n],
        used: vec![false; n],
        omap: vec![None; a.objects],
        oinv: vec![None; a.objects],
    };
    if !search.assign(0) {
        return None;
    }
    // objects without arrows pair up in order
    let mut free = (0..b.objects).filter(|&p| search.oinv[p].is_none());
    let object_map: Vec<usize> = search
        .omap
        .iter()
        .map(|o| o.unwrap_or_else(|| free.next().expect("object counts match")))
        .collect();
    let iso = Isomorphism {
        object_map,
        arrow_map: search
            .amap
            .into_iter()
            .map(|x| x.expect("all assigned"))
            .collect(),
    };
    debug_assert!(iso.is_valid(a, b));
    Some(iso)
}

/// Isomorphism between two semigroupoids, if one exists.
pub fn find_isomorphism(s: &Semigroupoid, t: &Semigroupoid) -> Option<Isomorphism> {
    find_structure_isomorphism(&ArrowStructure::from(s), &ArrowStructure::from(t))
}
