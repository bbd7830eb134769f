//! Fibers of simplicial maps.
//!
//! The fiber over a target simplex `t` is the induced subcomplex on the
//! vertices sent into `t`. A map all of whose fibers are contractible is a
//! trivial pseudofibration; here contractibility is certified one-sidedly by
//! a successful greedy collapse, with acyclicity as the necessary check.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{IndexedComplex, Simplex, SimplicialMap};
use crate::homology::{homology_indexed, Coefficients};

use super::collapse::collapse_indexed;

pub const DEFAULT_RESTARTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberStatus {
    Collapsed,
    /// Acyclic, but no attempt collapsed it. Needs review.
    AcyclicOnly,
    /// Empty or with nonzero reduced homology.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEntry {
    pub simplex: String,
    pub dim: usize,
    pub vertices: usize,
    pub simplices: usize,
    pub status: FiberStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub restarts: usize,
    pub seed: u64,
    pub entries: Vec<FiberEntry>,
    /// Target simplices that are not the image of any source simplex.
    pub unhit: Vec<String>,
}

impl FiberReport {
    pub fn all_collapsed(&self) -> bool {
        self.entries.iter().all(|e| e.status == FiberStatus::Collapsed)
    }

    pub fn surjective(&self) -> bool {
        self.unhit.is_empty()
    }

    pub fn count(&self, status: FiberStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &FiberEntry> {
        self.entries.iter().filter(|e| e.status != FiberStatus::Collapsed)
    }
}

struct Indexed {
    source: IndexedComplex,
    target: IndexedComplex,
    target_vertices: Vec<crate::complex::CoordVertex>,
    vertex_map: Vec<u32>,
}

fn index(f: &SimplicialMap) -> Indexed {
    let (source, source_vertices) = f.source().indexed();
    let (target, target_vertices) = f.target().indexed();
    let vertex_map = source_vertices
        .iter()
        .map(|v| target_vertices.binary_search(f.apply(v)).expect("map lands in the target") as u32)
        .collect();
    Indexed { source, target, target_vertices, vertex_map }
}

fn images(ix: &Indexed) -> HashSet<Vec<u32>> {
    let dims = ix.source.counts().len();
    (0..dims)
        .flat_map(|d| ix.source.simplices(d).iter())
        .map(|s| {
            let mut img: Vec<u32> = s.iter().map(|&v| ix.vertex_map[v as usize]).collect();
            img.sort_unstable();
            img.dedup();
            img
        })
        .collect()
}

fn target_simplices(ix: &Indexed) -> Vec<(usize, Vec<u32>)> {
    (0..ix.target.counts().len()).flat_map(|d| ix.target.simplices(d).iter().map(move |s| (d, s.to_vec()))).collect()
}

fn describe(f: &SimplicialMap, ix: &Indexed, ids: &[u32]) -> String {
    let s = Simplex::new(ids.iter().map(|&i| ix.target_vertices[i as usize].clone())).expect("distinct vertices");
    f.target().describe(&s)
}

/// Every target simplex is the image of a source simplex.
pub fn surjective_on_simplices(f: &SimplicialMap) -> bool {
    let ix = index(f);
    let hit = images(&ix);
    target_simplices(&ix).iter().all(|(_, t)| hit.contains(t))
}

pub fn check_pseudofibration(f: &SimplicialMap) -> FiberReport {
    check_pseudofibration_with(f, DEFAULT_RESTARTS, 0)
}

/// Classifies the fiber over every target simplex, in canonical order.
pub fn check_pseudofibration_with(f: &SimplicialMap, restarts: usize, seed: u64) -> FiberReport {
    let ix = index(f);
    let hit = images(&ix);
    let targets = target_simplices(&ix);
    let entries = targets
        .par_iter()
        .map(|(d, t)| {
            let fiber = ix.source.filter(|_, s| s.iter().all(|&v| t.binary_search(&ix.vertex_map[v as usize]).is_ok()));
            let status = if fiber.is_empty() || !homology_indexed(&fiber, Coefficients::Integers, true).is_trivial() {
                FiberStatus::Failed
            } else if collapse_indexed(&fiber, restarts, seed).expect("nonempty").collapsible() {
                FiberStatus::Collapsed
            } else {
                FiberStatus::AcyclicOnly
            };
            FiberEntry {
                simplex: describe(f, &ix, t),
                dim: *d,
                vertices: fiber.count(0),
                simplices: fiber.total(),
                status,
            }
        })
        .collect();
    let unhit = targets.iter().filter(|(_, t)| !hit.contains(t)).map(|(_, t)| describe(f, &ix, t)).collect();
    FiberReport { restarts, seed, entries, unhit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Complex, CoordVertex};
    use crate::construction::{localize, RayPolicy};

    #[test]
    fn identity_fibers_are_simplices() {
        let c = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        let r = check_pseudofibration(&SimplicialMap::identity(c.clone()));
        assert_eq!(r.entries.len(), c.len());
        assert!(r.all_collapsed());
        assert!(r.surjective());
        for e in &r.entries {
            assert_eq!(e.vertices, e.dim + 1);
        }
    }

    #[test]
    fn inclusion_of_a_proper_subcomplex_is_not_surjective() {
        let full = Complex::full_simplex(&["a", "b"]);
        let f = SimplicialMap::from_fn(full.skeleton(0), full.clone(), CoordVertex::clone).unwrap();
        assert!(!surjective_on_simplices(&f));
        assert!(surjective_on_simplices(&SimplicialMap::identity(full)));
    }

    #[test]
    fn two_points_onto_one_fail() {
        let two = Complex::closure_of_indices(&[vec![0], vec![1]], vec!["a".into(), "b".into()]).unwrap();
        let one = two.induced_on_bases(&[0]);
        let f = SimplicialMap::from_fn(two, one, |_| CoordVertex::plain(0)).unwrap();
        let r = check_pseudofibration(&f);
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].status, FiberStatus::Failed);
        assert!(r.surjective());
    }

    #[test]
    fn single_edge_projection() {
        let edge = Complex::full_simplex(&["a", "b"]);
        let loc = localize(&edge, &RayPolicy::Default).unwrap();
        let r = check_pseudofibration(&loc.projection);
        assert!(r.all_collapsed());
        let whole = r.entries.iter().find(|e| e.dim == 1).unwrap();
        assert_eq!(whole.simplices, loc.complex.len());
        let over_a = &r.entries[0];
        assert_eq!(over_a.vertices, loc.tower.ray_bounds()[0] as usize + 1);
    }

    #[test]
    fn hollow_target_simplex_is_reported_unhit() {
        // The boundary of a triangle mapped identically into the full triangle.
        let full = Complex::full_simplex(&["a", "b", "c"]);
        let f = SimplicialMap::from_fn(full.skeleton(1), full, CoordVertex::clone).unwrap();
        let r = check_pseudofibration(&f);
        assert_eq!(r.unhit.len(), 1);
        assert_eq!(r.count(FiberStatus::Failed), 1);
    }
}
