//! Growing pendant edges until every vertex lies in exactly `M` edges.
//!
//! Each round gives every vertex of the current stage that still has fewer
//! than `M` edges one new pendant neighbour. Pendants are themselves grown in
//! later rounds, so the number of vertices can grow exponentially in the
//! number of rounds. [`GrownComplex`] therefore keeps an exact census of the
//! pendants by birth round and only builds the complex on request, through
//! [`GrownComplex::materialize`].

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{Complex, CoordVertex, IndexedComplex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GrownComplex {
    core: Complex,
    bound: usize,
    rounds: usize,
    core_degrees: Vec<(CoordVertex, usize)>,
    births: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Core(CoordVertex),
    Pendant { birth: usize },
}

/// A set of vertices that end with the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub kind: VertexKind,
    pub count: BigUint,
    pub degree: usize,
    /// First round after which the vertex has exactly `M` edges.
    pub completion_round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pendant {
    pub id: u32,
    pub parent: u32,
    pub round: usize,
}

/// An explicit grown complex. Ids `0..core_vertices.len()` are the original
/// vertices in linear order; later ids are pendants in birth order.
#[derive(Clone, Debug)]
pub struct MaterializedGrowth {
    pub complex: IndexedComplex,
    pub core: IndexedComplex,
    pub core_vertices: Vec<CoordVertex>,
    pub pendants: Vec<Pendant>,
}

impl MaterializedGrowth {
    pub fn birth_round(&self, id: u32) -> usize {
        let n = self.core_vertices.len() as u32;
        if id < n {
            0
        } else {
            self.pendants[(id - n) as usize].round
        }
    }
}

/// Runs `rounds` rounds of pendant growth with target degree `bound`.
pub fn grow_edges(t: &Complex, bound: usize, rounds: usize) -> Result<GrownComplex> {
    let core_degrees: Vec<(CoordVertex, usize)> = t.edge_degrees().into_iter().collect();
    if let Some((v, d)) = core_degrees.iter().find(|(_, d)| *d > bound) {
        return Err(Error::DegreeExceeded { vertex: t.label(v), degree: *d, bound });
    }
    // births[r] = vertices deficient at the start of round r.
    let mut births = vec![BigUint::zero(); rounds + 1];
    for r in 1..=rounds {
        let mut count = BigUint::from(core_degrees.iter().filter(|(_, d)| r + d <= bound).count());
        for j in 1..r {
            if r < j + bound {
                count += &births[j];
            }
        }
        births[r] = count;
    }
    Ok(GrownComplex { core: t.clone(), bound, rounds, core_degrees, births })
}

impl GrownComplex {
    pub fn core(&self) -> &Complex {
        &self.core
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Pendants born in each round `1..=rounds` (index 0 is unused).
    pub fn births(&self) -> &[BigUint] {
        &self.births
    }

    pub fn pendant_count(&self) -> BigUint {
        self.births.iter().sum()
    }

    pub fn vertex_count(&self) -> BigUint {
        self.pendant_count() + BigUint::from(self.core_degrees.len())
    }

    /// Final degrees, one class per core vertex and per pendant birth round.
    pub fn classes(&self) -> Vec<DegreeClass> {
        let m = self.bound;
        let mut out: Vec<DegreeClass> = self
            .core_degrees
            .iter()
            .map(|(v, d)| DegreeClass {
                kind: VertexKind::Core(v.clone()),
                count: BigUint::from(1u32),
                degree: d + self.rounds.min(m - d),
                completion_round: m - d,
            })
            .collect();
        for j in 1..=self.rounds {
            if self.births[j].is_zero() {
                continue;
            }
            out.push(DegreeClass {
                kind: VertexKind::Pendant { birth: j },
                count: self.births[j].clone(),
                degree: 1 + (self.rounds - j).min(m.saturating_sub(1)),
                completion_round: j + m.saturating_sub(1),
            });
        }
        out
    }

    /// Removes pendant classes in decreasing birth order, each a batch of
    /// elementary collapses of a leaf vertex with its edge. A class is only
    /// removed once every class that could hold its children is gone.
    /// Returns the number of elementary collapses and what remains.
    pub fn collapse_pendants(&self) -> Result<(BigUint, Complex)> {
        let m = self.bound;
        let mut alive: Vec<bool> = self.births.iter().map(|b| !b.is_zero()).collect();
        let mut collapses = BigUint::zero();
        for j in (1..=self.rounds).rev() {
            if !alive[j] {
                continue;
            }
            let last_child = (j + m.saturating_sub(1)).min(self.rounds);
            if (j + 1..=last_child).any(|c| alive[c]) {
                return Err(Error::CollapseStuck(format!("pendant class born in round {j} still has children")));
            }
            collapses += &self.births[j];
            alive[j] = false;
        }
        Ok((collapses, self.core.clone()))
    }

    /// Builds the grown complex by direct simulation of the rounds.
    pub fn materialize(&self, limit: usize) -> Result<MaterializedGrowth> {
        let total = self.vertex_count();
        if total.to_usize().is_none_or(|t| t > limit) {
            return Err(Error::TooLarge { needed: total.to_string(), limit });
        }
        let (core, core_vertices) = self.core.indexed();
        let mut degree: Vec<usize> = vec![0; core_vertices.len()];
        for e in core.simplices(1) {
            degree[e[0] as usize] += 1;
            degree[e[1] as usize] += 1;
        }
        let mut edges: Vec<Vec<u32>> = Vec::new();
        let mut pendants = Vec::new();
        for round in 1..=self.rounds {
            let deficient: Vec<u32> = (0..degree.len() as u32).filter(|&v| degree[v as usize] < self.bound).collect();
            for parent in deficient {
                let id = degree.len() as u32;
                degree[parent as usize] += 1;
                degree.push(1);
                edges.push(vec![parent, id]);
                pendants.push(Pendant { id, parent, round });
            }
        }
        let existing = (0..=core.dim().unwrap_or(0)).flat_map(|d| core.simplices(d).iter().map(|s| s.to_vec()));
        let complex = IndexedComplex::closure(degree.len(), existing.chain(edges));
        Ok(MaterializedGrowth { complex, core, core_vertices, pendants })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> Complex {
        Complex::closure_of_indices(&[vec![0, 1], vec![1, 2]], vec!["a".into(), "b".into(), "c".into()]).unwrap()
    }

    fn degrees(m: &MaterializedGrowth) -> Vec<usize> {
        let mut deg = vec![0; m.complex.vertex_count()];
        for e in m.complex.simplices(1) {
            deg[e[0] as usize] += 1;
            deg[e[1] as usize] += 1;
        }
        deg
    }

    #[test]
    fn regular_complex_is_unchanged() {
        let circle = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        for rounds in 0..4 {
            let g = grow_edges(&circle, 2, rounds).unwrap();
            assert!(g.pendant_count().is_zero());
            assert_eq!(g.materialize(100).unwrap().complex, circle.indexed().0);
        }
    }

    #[test]
    fn path_one_round() {
        let g = grow_edges(&path(), 3, 1).unwrap();
        let m = g.materialize(100).unwrap();
        assert_eq!(degrees(&m)[..3], [2, 3, 2]);
        assert_eq!(m.pendants.len(), 3);
        assert_eq!(g.births()[1], BigUint::from(3u32));
    }

    #[test]
    fn single_vertex_reaches_bound_at_round_two() {
        let pt = Complex::full_simplex(&["x"]);
        let g = grow_edges(&pt, 2, 3).unwrap();
        let m = g.materialize(100).unwrap();
        let deg = degrees(&m);
        assert_eq!(deg[0], 2);
        let root = g.classes().into_iter().find(|c| matches!(c.kind, VertexKind::Core(_))).unwrap();
        assert_eq!(root.completion_round, 2);
        assert_eq!(grow_edges(&pt, 2, 1).unwrap().materialize(10).map(|m| degrees(&m)[0]).unwrap(), 1);
    }

    #[test]
    fn exceeding_vertex_is_rejected() {
        let star = Complex::closure_of_indices(
            &[vec![0, 1], vec![0, 2], vec![0, 3]],
            vec!["c".into(), "x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        assert!(matches!(grow_edges(&star, 2, 1), Err(Error::DegreeExceeded { degree: 3, bound: 2, .. })));
    }

    #[test]
    fn census_matches_simulation() {
        for bound in 1..6 {
            for rounds in 0..8 {
                let g = grow_edges(&path(), bound.max(2), rounds).unwrap();
                let m = g.materialize(1 << 20).unwrap();
                assert_eq!(BigUint::from(m.complex.vertex_count()), g.vertex_count());
                let deg = degrees(&m);
                for class in g.classes() {
                    match class.kind {
                        VertexKind::Core(ref v) => {
                            let id = m.core_vertices.binary_search(v).unwrap();
                            assert_eq!(deg[id], class.degree);
                        }
                        VertexKind::Pendant { birth } => {
                            let members: Vec<_> = m.pendants.iter().filter(|p| p.round == birth).collect();
                            assert_eq!(BigUint::from(members.len()), class.count);
                            assert!(members.iter().all(|p| deg[p.id as usize] == class.degree));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn census_handles_huge_growth() {
        let g = grow_edges(&path(), 22, 25).unwrap();
        assert!(g.vertex_count() > BigUint::from(1u64 << 25));
        assert!(matches!(g.materialize(1_000_000), Err(Error::TooLarge { .. })));
        let (collapses, rest) = g.collapse_pendants().unwrap();
        assert_eq!(collapses, g.pendant_count());
        assert_eq!(rest, path());
    }
}
