use smallvec::SmallVec;

use super::{Complex, CoordVertex};

pub type IdSimplex = SmallVec<[u32; 4]>;

/// A complex over integer vertex ids `0..vertex_count`, grouped by dimension.
///
/// Each simplex is a strictly increasing id list and each dimension's list
/// is sorted, so faces are found by binary search. This is the working form
/// for homology and collapse computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<IdSimplex>>,
}

impl IndexedComplex {
    /// Ids follow the linear vertex order, so sorted simplices stay sorted.
    pub fn from_complex(c: &Complex) -> (Self, Vec<CoordVertex>) {
        let vertices: Vec<CoordVertex> = c.vertices().cloned().collect();
        let mut by_dim: Vec<Vec<IdSimplex>> = vec![Vec::new(); c.dim().map_or(0, |d| d + 1)];
        for s in c.iter() {
            let ids: IdSimplex =
                s.vertices().iter().map(|v| vertices.binary_search(v).expect("closed complex") as u32).collect();
            by_dim[s.dim()].push(ids);
        }
        for list in &mut by_dim {
            list.sort_unstable();
        }
        (Self { vertex_count: vertices.len(), by_dim }, vertices)
    }

    /// Closes the given id lists (each is sorted and deduplicated first).
    pub fn closure(vertex_count: usize, simplices: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<IdSimplex> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if !s.is_empty() {
                stack.push(IdSimplex::from_vec(s));
            }
        }
        for v in 0..vertex_count as u32 {
            stack.push(smallvec::smallvec![v]);
        }
        while let Some(s) = stack.pop() {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !seen.contains(&f) {
                        stack.push(f);
                    }
                }
            }
            seen.insert(s);
        }
        let max = seen.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max];
        for s in seen {
            by_dim[s.len() - 1].push(s);
        }
        for list in &mut by_dim {
            list.sort_unstable();
        }
        Self { vertex_count, by_dim }
    }

    /// The simplices satisfying `keep`, which must select a subcomplex.
    pub fn filter(&self, keep: impl Fn(usize, &[u32]) -> bool) -> Self {
        let mut by_dim: Vec<Vec<IdSimplex>> = self
            .by_dim
            .iter()
            .enumerate()
            .map(|(d, list)| list.iter().filter(|s| keep(d, s)).cloned().collect())
            .collect();
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        debug_assert!(by_dim.iter().enumerate().skip(1).all(|(d, list)| list.iter().all(|s| {
            (0..s.len()).all(|i| {
                let mut f = s.clone();
                f.remove(i);
                by_dim[d - 1].binary_search(&f).is_ok()
            })
        })));
        Self { vertex_count: self.vertex_count, by_dim }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[IdSimplex] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.by_dim.get(d)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_matches_complex_closure() {
        let c = Complex::closure_of_indices(
            &[vec![0, 1, 2], vec![2, 3]],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        )
        .unwrap();
        let (ix, verts) = c.indexed();
        assert_eq!(verts.len(), 4);
        assert_eq!(ix, IndexedComplex::closure(4, [vec![2, 1, 0], vec![3, 2]]));
        assert_eq!(ix.counts(), vec![4, 4, 1]);
        assert_eq!(ix.index_of(&[1, 2]), Some(2));
        assert_eq!(ix.index_of(&[0, 3]), None);
    }
}
