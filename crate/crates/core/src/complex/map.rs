use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use super::{Complex, CoordVertex, Simplex};
use crate::{Error, Result};

/// A vertex map `f` with `f(s) ∈ target` for every `s ∈ source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Complex,
    target: Complex,
    vertex_map: BTreeMap<CoordVertex, CoordVertex>,
}

impl SimplicialMap {
    pub fn new(source: Complex, target: Complex, vertex_map: BTreeMap<CoordVertex, CoordVertex>) -> Result<Self> {
        if let Some(v) = source.vertices().find(|v| !vertex_map.contains_key(*v)) {
            return Err(Error::PartialVertexMap(source.label(v)));
        }
        let (target_ix, target_vertices) = target.indexed();
        let ids: HashMap<&CoordVertex, u32> = vertex_map
            .iter()
            .map(|(v, w)| (v, target_vertices.binary_search(w).map_or(u32::MAX, |i| i as u32)))
            .collect();
        for s in source.iter() {
            let mut image: SmallVec<[u32; 4]> = s.vertices().iter().map(|v| ids[v]).collect();
            image.sort_unstable();
            image.dedup();
            if image.contains(&u32::MAX) || target_ix.index_of(&image).is_none() {
                return Err(Error::NotSimplicial { simplex: source.describe(s) });
            }
        }
        Ok(Self { source, target, vertex_map })
    }

    pub fn from_fn(source: Complex, target: Complex, f: impl Fn(&CoordVertex) -> CoordVertex) -> Result<Self> {
        let vertex_map = source.vertices().map(|v| (v.clone(), f(v))).collect();
        Self::new(source, target, vertex_map)
    }

    pub fn identity(c: Complex) -> Self {
        let vertex_map = c.vertices().map(|v| (v.clone(), v.clone())).collect();
        Self { source: c.clone(), target: c, vertex_map }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<CoordVertex, CoordVertex> {
        &self.vertex_map
    }

    pub fn apply(&self, v: &CoordVertex) -> &CoordVertex {
        &self.vertex_map[v]
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        s.map(|v| self.vertex_map[v].clone())
    }

    /// `f(source)` as a complex over the target's universe.
    pub fn image_complex(&self) -> Complex {
        let level = self.target.level();
        self.source.map_vertices(level, |v| self.vertex_map[v].clone())
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        let vertex_map = self.vertex_map.iter().map(|(k, v)| (k.clone(), after.vertex_map[v].clone())).collect();
        SimplicialMap::new(self.source.clone(), after.target.clone(), vertex_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simplicial_maps() {
        let edge = Complex::full_simplex(&["a", "b"]);
        let two_points = Complex::closure_of_indices(&[vec![0], vec![1]], vec!["a".into(), "b".into()]).unwrap();
        let err = SimplicialMap::from_fn(edge.clone(), two_points, |v| v.clone()).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial { .. }));
        let id = SimplicialMap::identity(edge.clone());
        assert_eq!(id.image_complex(), edge);
    }
}
