use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::{Error, Result};

pub type Coords = SmallVec<[u32; 4]>;

/// A vertex of `X × ℕ^n` (optionally `× ℕ` for mapping-telescope stages).
///
/// `base` indexes the vertex list of the input complex; its order is the
/// chosen linear order on `X`. The derived `Ord` is lexicographic on
/// `(base, coords, stage)` and is used for canonical simplex storage. The
/// product partial order is [`CoordVertex::precedes`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordVertex {
    pub base: u32,
    pub coords: Coords,
    pub stage: Option<u32>,
}

impl CoordVertex {
    pub fn plain(base: u32) -> Self {
        Self { base, coords: Coords::new(), stage: None }
    }

    pub fn new(base: u32, coords: &[u32]) -> Self {
        Self { base, coords: Coords::from_slice(coords), stage: None }
    }

    pub fn with_stage(mut self, stage: u32) -> Self {
        self.stage = Some(stage);
        self
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    /// Product-poset order: componentwise `<=` on base, coords and stage.
    pub fn precedes(&self, other: &Self) -> bool {
        self.base <= other.base
            && self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
            && match (self.stage, other.stage) {
                (None, None) => true,
                (Some(a), Some(b)) => a <= b,
                _ => false,
            }
    }

    pub fn appended(&self, coord: u32) -> Self {
        let mut v = self.clone();
        v.coords.push(coord);
        v
    }

    /// The projection `p_k` dropping the last `k` coordinates.
    pub fn dropped(&self, k: usize) -> Self {
        let keep = self.coords.len().saturating_sub(k);
        Self { base: self.base, coords: Coords::from_slice(&self.coords[..keep]), stage: self.stage }
    }

    pub fn padded(&self, len: usize) -> Self {
        let mut v = self.clone();
        while v.coords.len() < len {
            v.coords.push(0);
        }
        v
    }

    pub fn base_only(&self) -> Self {
        Self::plain(self.base)
    }
}

impl fmt::Display for CoordVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(#{}", self.base)?;
        if !self.coords.is_empty() {
            write!(f, ";")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        if let Some(s) = self.stage {
            write!(f, ";s{s}")?;
        }
        write!(f, ")")
    }
}

/// A nonempty finite vertex set, stored sorted in the linear order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[CoordVertex; 4]>);

impl Simplex {
    /// Builds a simplex from a vertex list; repeated vertices are an error.
    pub fn new(vertices: impl IntoIterator<Item = CoordVertex>) -> Result<Self> {
        let mut vs: SmallVec<[CoordVertex; 4]> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        Ok(Self(vs))
    }

    /// Image-set semantics: sorts and collapses repeats.
    pub fn from_set(vertices: impl IntoIterator<Item = CoordVertex>) -> Option<Self> {
        let mut vs: SmallVec<[CoordVertex; 4]> = vertices.into_iter().collect();
        if vs.is_empty() {
            return None;
        }
        vs.sort_unstable();
        vs.dedup();
        Some(Self(vs))
    }

    pub(crate) fn from_sorted(vs: SmallVec<[CoordVertex; 4]>) -> Self {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Self(vs)
    }

    pub fn vertex(v: CoordVertex) -> Self {
        Self(smallvec::smallvec![v])
    }

    pub fn plain(bases: &[u32]) -> Result<Self> {
        Self::new(bases.iter().map(|&b| CoordVertex::plain(b)))
    }

    pub fn vertices(&self) -> &[CoordVertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &CoordVertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// Codimension-one faces; the `i`-th omits vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut vs = self.0.clone();
            vs.remove(i);
            Simplex(vs)
        })
    }

    /// Every nonempty subset, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 31, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i].clone()).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        self.0.iter().any(|v| other.contains(v))
    }

    /// True when consecutive vertices are comparable in the product order.
    pub fn is_chain(&self) -> bool {
        self.0.windows(2).all(|w| w[0].precedes(&w[1]))
    }

    pub fn map(&self, f: impl Fn(&CoordVertex) -> CoordVertex) -> Simplex {
        Simplex::from_set(self.0.iter().map(f)).expect("nonempty")
    }

    /// The base set `p(s) ⊆ X`, as a plain simplex.
    pub fn bases(&self) -> Simplex {
        self.map(CoordVertex::base_only)
    }

    pub fn base_indices(&self) -> SmallVec<[u32; 4]> {
        let mut b: SmallVec<[u32; 4]> = self.0.iter().map(|v| v.base).collect();
        b.dedup();
        b
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_matches_field_order() {
        let a = CoordVertex::new(0, &[5]);
        let b = CoordVertex::new(1, &[0]);
        assert!(a < b);
        assert!(!a.precedes(&b));
        assert!(CoordVertex::new(0, &[1, 2]).precedes(&CoordVertex::new(1, &[1, 3])));
    }

    #[test]
    fn product_order_implies_linear_order() {
        for b0 in 0..3 {
            for c0 in 0..3 {
                for b1 in 0..3 {
                    for c1 in 0..3 {
                        let v = CoordVertex::new(b0, &[c0]);
                        let w = CoordVertex::new(b1, &[c1]);
                        if v.precedes(&w) {
                            assert!(v <= w);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_repeats() {
        assert!(matches!(Simplex::plain(&[1, 0, 1]), Err(Error::DuplicateVertex(_))));
        assert!(matches!(Simplex::plain(&[]), Err(Error::EmptySimplex)));
    }

    #[test]
    fn faces_of_triangle() {
        let s = Simplex::plain(&[0, 1, 2]).unwrap();
        assert_eq!(s.faces().len(), 7);
        let facets: Vec<_> = s.facets().collect();
        assert_eq!(facets[0], Simplex::plain(&[1, 2]).unwrap());
        assert_eq!(facets[2], Simplex::plain(&[0, 1]).unwrap());
        assert_eq!(Simplex::plain(&[3]).unwrap().facets().count(), 0);
    }

    #[test]
    fn incomparable_coordinates_break_chain() {
        let s = Simplex::new([CoordVertex::new(0, &[1]), CoordVertex::new(1, &[0])]).unwrap();
        assert!(!s.is_chain());
    }

    #[test]
    fn display() {
        let v = CoordVertex::new(2, &[0, 3]).with_stage(1);
        assert_eq!(v.to_string(), "(#2;0,3;s1)");
    }
}
