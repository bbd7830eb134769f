//! Finite ordered simplicial complexes on `X × ℕ^n`.
//!
//! A [`Complex`] stores its full downward-closed simplex set. All vertices
//! of one complex carry the same number of coordinates (its *level*). The
//! vertex labels of the underlying set `X` are shared through the universe.

mod indexed;
mod map;
mod vertex;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

pub use indexed::IndexedComplex;
pub use map::SimplicialMap;
pub use vertex::{CoordVertex, Coords, Simplex};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    universe: Arc<[String]>,
    level: usize,
    simplices: BTreeSet<Simplex>,
}

/// One invariant violation found by [`Complex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingFace { simplex: String, face: String },
    MissingSingleton { vertex: String },
    NotChain { simplex: String },
    Level { simplex: String, expected: usize },
    UnknownBase { vertex: String },
    MixedStage { simplex: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub simplices: usize,
    pub ordered: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Complex {
    pub fn new(universe: impl Into<Arc<[String]>>, level: usize) -> Self {
        Self { universe: universe.into(), level, simplices: BTreeSet::new() }
    }

    /// An empty complex over the same universe and level.
    pub fn empty_like(&self) -> Self {
        Self { universe: self.universe.clone(), level: self.level, simplices: BTreeSet::new() }
    }

    /// Wraps a simplex set without closing it; use [`Complex::validate`] to check it.
    pub fn from_raw(
        universe: impl Into<Arc<[String]>>,
        level: usize,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        Self { universe: universe.into(), level, simplices: simplices.into_iter().collect() }
    }

    /// Smallest downward-closed complex containing the listed simplices.
    ///
    /// Labels must come from `universe`; the universe order is the linear order.
    pub fn closure<S: AsRef<str>>(maximal: &[Vec<S>], universe: &[String]) -> Result<Self> {
        let index: HashMap<&str, u32> = universe.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();
        let lists = maximal
            .iter()
            .map(|list| {
                list.iter()
                    .map(|l| index.get(l.as_ref()).copied().ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string())))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::closure_of_indices(&lists, universe.to_vec())
    }

    pub fn closure_of_indices(maximal: &[Vec<u32>], universe: impl Into<Arc<[String]>>) -> Result<Self> {
        let mut c = Self::new(universe, 0);
        let n = c.universe.len() as u32;
        for list in maximal {
            if let Some(&bad) = list.iter().find(|&&i| i >= n) {
                return Err(Error::UnknownVertex(format!("#{bad}")));
            }
            c.insert_closed(Simplex::plain(list)?);
        }
        Ok(c)
    }

    /// Closure of arbitrary simplices at the given level.
    pub fn closure_of_simplices(
        universe: impl Into<Arc<[String]>>,
        level: usize,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut c = Self::new(universe, level);
        let n = c.universe.len() as u32;
        for s in simplices {
            if let Some(v) = s.vertices().iter().find(|v| v.level() != level) {
                return Err(Error::LevelMismatch { expected: level, found: v.level() });
            }
            if let Some(v) = s.vertices().iter().find(|v| v.base >= n) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            c.insert_closed(s);
        }
        Ok(c)
    }

    /// The full simplex on `labels` as a plain complex.
    pub fn full_simplex<S: AsRef<str>>(labels: &[S]) -> Self {
        let universe: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let all: Vec<u32> = (0..universe.len() as u32).collect();
        Self::closure_of_indices(&[all], universe).expect("indices in range")
    }

    pub fn universe(&self) -> &Arc<[String]> {
        &self.universe
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &CoordVertex> {
        self.simplices.iter().filter(|s| s.len() == 1).map(|s| &s.vertices()[0])
    }

    pub fn vertex_set(&self) -> BTreeSet<CoordVertex> {
        self.vertices().cloned().collect()
    }

    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for s in &self.simplices {
            covered.extend(s.facets());
        }
        self.simplices.iter().filter(|s| !covered.contains(*s)).collect()
    }

    /// Human-readable vertex with its universe label.
    pub fn label(&self, v: &CoordVertex) -> String {
        let name = self.universe.get(v.base as usize).map_or_else(|| format!("#{}", v.base), Clone::clone);
        let mut out = format!("({name}");
        if !v.coords.is_empty() {
            out.push(';');
            out.push_str(&v.coords.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        }
        if let Some(s) = v.stage {
            out.push_str(&format!(";s{s}"));
        }
        out.push(')');
        out
    }

    pub fn describe(&self, s: &Simplex) -> String {
        format!("{{{}}}", s.vertices().iter().map(|v| self.label(v)).collect::<Vec<_>>().join(","))
    }

    /// Inserts `s` with all of its faces. Returns whether `s` was new.
    pub(crate) fn insert_closed(&mut self, s: Simplex) -> bool {
        debug_assert!(s.vertices().iter().all(|v| v.level() == self.level));
        if self.simplices.contains(&s) {
            return false;
        }
        let facets: Vec<Simplex> = s.facets().collect();
        self.simplices.insert(s);
        for f in facets {
            self.insert_closed(f);
        }
        true
    }

    /// Inserts a simplex without closing. Callers must keep the set closed.
    pub(crate) fn insert_raw(&mut self, s: Simplex) -> bool {
        self.simplices.insert(s)
    }

    /// Checks closure, singletons, levels and (optionally) the chain property.
    pub fn validate(&self, ordered: bool) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.universe.len() as u32;
        for s in &self.simplices {
            if s.vertices().iter().any(|v| v.level() != self.level) {
                violations.push(Violation::Level { simplex: self.describe(s), expected: self.level });
            }
            if let Some(v) = s.vertices().iter().find(|v| v.base >= n) {
                violations.push(Violation::UnknownBase { vertex: v.to_string() });
            }
            let staged = s.vertices().iter().filter(|v| v.stage.is_some()).count();
            if staged != 0 && staged != s.len() {
                violations.push(Violation::MixedStage { simplex: self.describe(s) });
            }
            if s.len() > 1 {
                for f in s.facets() {
                    if !self.simplices.contains(&f) {
                        if f.len() == 1 {
                            violations.push(Violation::MissingSingleton { vertex: self.label(&f.vertices()[0]) });
                        } else {
                            violations
                                .push(Violation::MissingFace { simplex: self.describe(s), face: self.describe(&f) });
                        }
                    }
                }
            }
            if ordered && !s.is_chain() {
                violations.push(Violation::NotChain { simplex: self.describe(s) });
            }
        }
        violations.dedup();
        ValidationReport { simplices: self.simplices.len(), ordered, violations }
    }

    /// The `n`-skeleton: all simplices of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> Complex {
        Self {
            universe: self.universe.clone(),
            level: self.level,
            simplices: self.simplices.iter().filter(|s| s.dim() <= n).cloned().collect(),
        }
    }

    /// `C|Y` for the vertex set described by `keep`.
    pub fn induced(&self, keep: impl Fn(&CoordVertex) -> bool) -> Complex {
        Self {
            universe: self.universe.clone(),
            level: self.level,
            simplices: self.simplices.iter().filter(|s| s.vertices().iter().all(&keep)).cloned().collect(),
        }
    }

    pub fn induced_on(&self, vertices: &BTreeSet<CoordVertex>) -> Complex {
        self.induced(|v| vertices.contains(v))
    }

    /// `C|(Z × ℕ^n)`: simplices whose base indices all lie in `bases`.
    pub fn induced_on_bases(&self, bases: &[u32]) -> Complex {
        self.induced(|v| bases.contains(&v.base))
    }

    /// The image complex `f(C)` for an arbitrary vertex function landing at `level`.
    pub fn map_vertices(&self, level: usize, f: impl Fn(&CoordVertex) -> CoordVertex) -> Complex {
        let mut out = Self::new(self.universe.clone(), level);
        for s in &self.simplices {
            let image = s.map(&f);
            out.simplices.insert(image);
        }
        out
    }

    /// The image complex under a tabulated vertex map.
    pub fn image_complex(&self, map: &BTreeMap<CoordVertex, CoordVertex>) -> Result<Complex> {
        if let Some(v) = self.vertices().find(|v| !map.contains_key(*v)) {
            return Err(Error::PartialVertexMap(self.label(v)));
        }
        let level = map.values().next().map_or(self.level, CoordVertex::level);
        if let Some(v) = map.values().find(|v| v.level() != level) {
            return Err(Error::LevelMismatch { expected: level, found: v.level() });
        }
        Ok(self.map_vertices(level, |v| map[v].clone()))
    }

    /// `p_k`: drop the last `k` coordinates.
    pub fn project(&self, k: usize) -> Complex {
        let k = k.min(self.level);
        self.map_vertices(self.level - k, |v| v.dropped(k))
    }

    /// `C × {c}` at one level higher.
    pub fn append_coord(&self, c: u32) -> Complex {
        Self {
            universe: self.universe.clone(),
            level: self.level + 1,
            simplices: self.simplices.iter().map(|s| Simplex::from_sorted(append(s, c))).collect(),
        }
    }

    /// Embeds into a higher level by padding coordinates with zeros.
    pub fn pad_to(&self, level: usize) -> Complex {
        assert!(level >= self.level);
        Self {
            universe: self.universe.clone(),
            level,
            simplices: self.simplices.iter().map(|s| s.map(|v| v.padded(level))).collect(),
        }
    }

    /// Product of ordered complexes: chains of the product poset whose two
    /// projections are simplices. A vertex `(x, y)` is encoded as
    /// `(x.base; x.coords, y.base, y.coords)`.
    pub fn product(&self, other: &Complex) -> Result<Complex> {
        if self.iter().chain(other.iter()).any(|s| s.vertices().iter().any(|v| v.stage.is_some())) {
            return Err(Error::StagedVertex("product"));
        }
        let level = self.level + 1 + other.level;
        let mut sorted: Vec<Simplex> = Vec::new();
        for s in self.iter() {
            for t in other.iter() {
                product_chains(s.vertices(), t.vertices(), &mut sorted);
            }
        }
        sorted.sort_unstable();
        Ok(Self { universe: self.universe.clone(), level, simplices: sorted.into_iter().collect() })
    }

    pub fn union(&self, other: &Complex) -> Result<Complex> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.simplices.extend(other.simplices.iter().cloned());
        Ok(out)
    }

    pub fn intersection(&self, other: &Complex) -> Result<Complex> {
        self.check_compatible(other)?;
        Ok(Self {
            universe: self.universe.clone(),
            level: self.level,
            simplices: self.simplices.intersection(&other.simplices).cloned().collect(),
        })
    }

    /// In-place union, for assembling large complexes.
    pub fn extend_from(&mut self, other: &Complex) -> Result<()> {
        self.check_compatible(other)?;
        if other.simplices.len() * 8 < self.simplices.len() {
            self.simplices.extend(other.simplices.iter().cloned());
        } else {
            let old = std::mem::take(&mut self.simplices);
            self.simplices = merge_sorted(old.into_iter(), other.simplices.iter().cloned()).collect();
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Complex) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { expected: self.level, found: other.level });
        }
        if !Arc::ptr_eq(&self.universe, &other.universe) && self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    /// Number of 1-simplices containing `v`.
    pub fn edge_degree(&self, v: &CoordVertex) -> Result<usize> {
        if !self.simplices.contains(&Simplex::vertex(v.clone())) {
            return Err(Error::UnknownVertex(self.label(v)));
        }
        Ok(self.simplices_of_dim(1).filter(|e| e.contains(v)).count())
    }

    /// Edge degree of every vertex (isolated vertices map to 0).
    pub fn edge_degrees(&self) -> BTreeMap<CoordVertex, usize> {
        let mut deg: BTreeMap<CoordVertex, usize> = self.vertices().map(|v| (v.clone(), 0)).collect();
        for e in self.simplices_of_dim(1) {
            for v in e.vertices() {
                *deg.get_mut(v).expect("closed complex") += 1;
            }
        }
        deg
    }

    pub fn indexed(&self) -> (IndexedComplex, Vec<CoordVertex>) {
        IndexedComplex::from_complex(self)
    }
}

/// Union of two strictly increasing sequences, still strictly increasing.
fn merge_sorted<T: Ord>(a: impl Iterator<Item = T>, b: impl Iterator<Item = T>) -> impl Iterator<Item = T> {
    let mut a = a.peekable();
    let mut b = b.peekable();
    std::iter::from_fn(move || match (a.peek(), b.peek()) {
        (Some(x), Some(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => a.next(),
            std::cmp::Ordering::Greater => b.next(),
            std::cmp::Ordering::Equal => {
                b.next();
                a.next()
            }
        },
        (Some(_), None) => a.next(),
        (None, _) => b.next(),
    })
}

fn append(s: &Simplex, c: u32) -> SmallVec<[CoordVertex; 4]> {
    s.vertices().iter().map(|v| v.appended(c)).collect()
}

fn pair(x: &CoordVertex, y: &CoordVertex) -> CoordVertex {
    let mut coords = x.coords.clone();
    coords.push(y.base);
    coords.extend_from_slice(&y.coords);
    CoordVertex { base: x.base, coords, stage: None }
}

/// Chains of the grid `xs × ys` whose projections are all of `xs` and all
/// of `ys`. Every product simplex arises this way for exactly one pair.
fn product_chains(xs: &[CoordVertex], ys: &[CoordVertex], out: &mut Vec<Simplex>) {
    fn walk(
        xs: &[CoordVertex],
        ys: &[CoordVertex],
        i: usize,
        j: usize,
        path: &mut SmallVec<[CoordVertex; 4]>,
        out: &mut Vec<Simplex>,
    ) {
        path.push(pair(&xs[i], &ys[j]));
        if i + 1 == xs.len() && j + 1 == ys.len() {
            out.push(Simplex::from_sorted(path.clone()));
        } else {
            if i + 1 < xs.len() {
                walk(xs, ys, i + 1, j, path, out);
            }
            if j + 1 < ys.len() {
                walk(xs, ys, i, j + 1, path, out);
            }
            if i + 1 < xs.len() && j + 1 < ys.len() {
                walk(xs, ys, i + 1, j + 1, path, out);
            }
        }
        path.pop();
    }
    walk(xs, ys, 0, 0, &mut SmallVec::new(), out);
}

/// The truncated ray `N|{start..=end}`: vertices `i` and edges `{i, i+1}`.
///
/// The universe holds the labels `0..=end` so vertex bases equal positions.
pub fn ray_segment(start: u32, end: u32) -> Result<Complex> {
    if start > end {
        return Err(Error::InvalidRange { start, end });
    }
    let universe: Vec<String> = (0..=end).map(|i| i.to_string()).collect();
    let mut c = Complex::new(universe, 0);
    for i in start..=end {
        c.simplices.insert(Simplex::vertex(CoordVertex::plain(i)));
        if i < end {
            c.simplices.insert(Simplex::plain(&[i, i + 1])?);
        }
    }
    Ok(c)
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simplices.iter().map(|s| self.describe(s)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn brute_force_product(c: &Complex, d: &Complex) -> BTreeSet<Simplex> {
        // Enumerate every subset of the product vertex grid and keep the chains
        // whose projections are simplices of both factors.
        let cv: Vec<CoordVertex> = c.vertices().cloned().collect();
        let dv: Vec<CoordVertex> = d.vertices().cloned().collect();
        let grid: Vec<(usize, usize)> = (0..cv.len()).flat_map(|i| (0..dv.len()).map(move |j| (i, j))).collect();
        assert!(grid.len() <= 20);
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << grid.len()) {
            let pts: Vec<(usize, usize)> =
                grid.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            let comparable = |a: (usize, usize), b: (usize, usize)| {
                (cv[a.0].precedes(&cv[b.0]) && dv[a.1].precedes(&dv[b.1]))
                    || (cv[b.0].precedes(&cv[a.0]) && dv[b.1].precedes(&dv[a.1]))
            };
            if !pts.iter().all(|&a| pts.iter().all(|&b| comparable(a, b))) {
                continue;
            }
            let left = Simplex::from_set(pts.iter().map(|p| cv[p.0].clone())).unwrap();
            let right = Simplex::from_set(pts.iter().map(|p| dv[p.1].clone())).unwrap();
            if c.contains(&left) && d.contains(&right) {
                out.insert(Simplex::new(pts.iter().map(|p| pair(&cv[p.0], &dv[p.1]))).unwrap());
            }
        }
        out
    }

    #[test]
    fn closure_of_one_triangle() {
        let c = Complex::closure(&[vec!["a", "b", "c"]], &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c.counts(), vec![3, 3, 1]);
        let point = Complex::closure(&[vec!["a"]], &labels(&["a"])).unwrap();
        assert_eq!(point.len(), 1);
        let path = Complex::closure(&[vec!["a", "b"], vec!["b", "c"]], &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(path.counts(), vec![3, 2]);
    }

    #[test]
    fn closure_errors() {
        let u = labels(&["a", "b"]);
        assert!(matches!(Complex::closure(&[vec!["a", "a"]], &u), Err(Error::DuplicateVertex(_))));
        assert_eq!(Complex::closure(&[vec!["a", "z"]], &u), Err(Error::UnknownVertex("z".into())));
    }

    #[test]
    fn validation_reports() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        assert!(tri.validate(true).is_valid());

        let bare = Complex::from_raw(labels(&["a", "b"]), 0, [Simplex::plain(&[0, 1]).unwrap()]);
        let report = bare.validate(false);
        assert_eq!(report.violations.len(), 2);
        assert!(matches!(report.violations[0], Violation::MissingSingleton { .. }));

        let a1 = CoordVertex::new(0, &[1]);
        let b0 = CoordVertex::new(1, &[0]);
        let edge = Simplex::new([a1.clone(), b0.clone()]).unwrap();
        let c = Complex::from_raw(labels(&["a", "b"]), 1, [edge, Simplex::vertex(a1), Simplex::vertex(b0)]);
        assert!(c.validate(false).is_valid());
        assert!(matches!(c.validate(true).violations[..], [Violation::NotChain { .. }]));
    }

    #[test]
    fn skeleton_cases() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        assert_eq!(tri.skeleton(1).counts(), vec![3, 3]);
        assert_eq!(tri.skeleton(2), tri);
        assert_eq!(tri.skeleton(0).len(), 3);
    }

    #[test]
    fn induced_subcomplexes() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        let ab = tri.induced_on_bases(&[0, 1]);
        assert_eq!(ab, Complex::full_simplex(&["a", "b", "c"]).induced(|v| v.base < 2));
        assert_eq!(ab.counts(), vec![2, 1]);
        assert!(tri.induced(|_| false).is_empty());
    }

    #[test]
    fn image_complexes() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        let constant: BTreeMap<_, _> = tri.vertices().map(|v| (v.clone(), CoordVertex::plain(0))).collect();
        assert_eq!(tri.image_complex(&constant).unwrap().len(), 1);

        let identity: BTreeMap<_, _> = tri.vertices().map(|v| (v.clone(), v.clone())).collect();
        assert_eq!(tri.image_complex(&identity).unwrap(), tri);

        let partial: BTreeMap<_, _> = identity.into_iter().take(2).collect();
        assert!(matches!(tri.image_complex(&partial), Err(Error::PartialVertexMap(_))));

        // p_1 of the triangulated square is the edge.
        let edge = Complex::full_simplex(&["a", "b"]);
        let square = edge.product(&edge).unwrap();
        assert_eq!(square.project(1), edge);
        let cyl = tri.product(&ray_segment(0, 3).unwrap()).unwrap();
        assert_eq!(cyl.project(1), tri);
    }

    #[test]
    fn product_examples() {
        let edge = Complex::full_simplex(&["a", "b"]);
        let point = Complex::full_simplex(&["p"]);
        let ep = edge.product(&point).unwrap();
        assert_eq!(ep.counts(), vec![2, 1]);

        let square = edge.product(&edge).unwrap();
        assert_eq!(square.counts(), vec![4, 5, 2]);
        let v = |b, c| CoordVertex::new(b, &[c]);
        assert!(square.contains(&Simplex::new([v(0, 0), v(1, 0), v(1, 1)]).unwrap()));
        assert!(square.contains(&Simplex::new([v(0, 0), v(0, 1), v(1, 1)]).unwrap()));
        assert_eq!(square.iter().cloned().collect::<BTreeSet<_>>(), brute_force_product(&edge, &edge));

        let tri = Complex::full_simplex(&["a", "b", "c"]);
        let prism = tri.product(&edge).unwrap();
        let brute = brute_force_product(&tri, &edge);
        assert_eq!(prism.iter().cloned().collect::<BTreeSet<_>>(), brute);
        // Frozen from the brute-force enumeration above.
        assert_eq!(prism.counts(), vec![6, 12, 10, 3]);
        assert_eq!(prism.iter().filter(|s| s.dim() >= 1).count(), 25);
        assert_eq!(prism.euler_characteristic(), 1);
        assert!(prism.validate(true).is_valid());
    }

    #[test]
    fn product_rejects_stages() {
        let mut staged = Complex::new(labels(&["a"]), 0);
        staged.insert_closed(Simplex::vertex(CoordVertex::plain(0).with_stage(0)));
        assert_eq!(staged.product(&staged), Err(Error::StagedVertex("product")));
    }

    #[test]
    fn ray_segments() {
        assert_eq!(ray_segment(0, 0).unwrap().len(), 1);
        assert_eq!(ray_segment(0, 2).unwrap().counts(), vec![3, 2]);
        assert_eq!(ray_segment(1, 2).unwrap().counts(), vec![2, 1]);
        assert_eq!(ray_segment(3, 1), Err(Error::InvalidRange { start: 3, end: 1 }));
    }

    #[test]
    fn union_and_intersection() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        assert_eq!(tri.union(&tri.empty_like()).unwrap(), tri);
        assert_eq!(tri.intersection(&tri).unwrap(), tri);
        let lifted = tri.append_coord(0);
        assert!(matches!(tri.union(&lifted), Err(Error::LevelMismatch { .. })));
        let other = Complex::full_simplex(&["x", "y", "z"]);
        assert_eq!(tri.union(&other), Err(Error::UniverseMismatch));
    }

    #[test]
    fn edge_degrees() {
        let path = Complex::closure(&[vec!["a", "b"], vec!["b", "c"]], &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(path.edge_degree(&CoordVertex::plain(1)).unwrap(), 2);
        assert_eq!(path.edge_degree(&CoordVertex::plain(0)).unwrap(), 1);
        assert!(matches!(path.edge_degree(&CoordVertex::plain(7)), Err(Error::UnknownVertex(_))));
        let circle = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        assert!(circle.edge_degrees().values().all(|&d| d == 2));
    }

    #[test]
    fn maximal_simplices_of_path() {
        let path = Complex::closure(&[vec!["a", "b"], vec!["b", "c"]], &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(path.maximal_simplices().len(), 2);
    }

    #[test]
    fn labels_render() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        assert_eq!(tri.label(&CoordVertex::new(1, &[0, 2])), "(b;0,2)");
    }
}
