use crate::complex::{Complex, IndexedComplex};

/// Column-major sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(u32, i64)>>) -> Self {
        for col in &mut columns {
            col.sort_unstable_by_key(|&(r, _)| r);
            debug_assert!(col.iter().all(|&(r, v)| (r as usize) < rows && v != 0));
        }
        Self { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j].binary_search_by_key(&(i as u32), |&(r, _)| r).map_or(0, |k| self.columns[j][k].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// `self · other`, or `None` when the inner dimensions disagree.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols() != other.rows {
            return None;
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = std::collections::BTreeMap::<u32, i64>::new();
                for &(k, b) in col {
                    for &(i, a) in &self.columns[k as usize] {
                        *acc.entry(i).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        Some(SparseMatrix { rows: self.rows, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Simplicial chain complex with integer boundary matrices.
///
/// The basis in dimension `d` is the canonical order of the `d`-simplices.
/// `boundary(d)` is `∂_d : C_d -> C_{d-1}`; for `d = 0` it is the zero map to
/// `C_{-1} = 0`, or the augmentation `C_0 -> ℤ` in the reduced case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    counts: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    reduced: bool,
}

impl ChainComplex {
    pub fn from_indexed(c: &IndexedComplex, reduced: bool) -> Self {
        let counts = c.counts();
        let mut boundaries = Vec::with_capacity(counts.len());
        let n0 = counts.first().copied().unwrap_or(0);
        boundaries.push(if reduced && n0 > 0 {
            SparseMatrix::from_columns(1, vec![vec![(0, 1)]; n0])
        } else {
            SparseMatrix::zero(0, n0)
        });
        for d in 1..counts.len() {
            let columns = c
                .simplices(d)
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            let row = c.index_of(&face).expect("closed complex") as u32;
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(counts[d - 1], columns));
        }
        Self { counts, boundaries, reduced }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    /// Top dimension plus one (0 for the empty complex).
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(d)
    }

    /// `∂_d ∘ ∂_{d+1} = 0` in every dimension.
    pub fn squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_some_and(|p| p.is_zero()))
    }
}

/// The chain complex of `c`, with `∂∂ = 0` asserted.
pub fn chain_complex(c: &Complex) -> ChainComplex {
    let cc = ChainComplex::from_indexed(&c.indexed().0, false);
    assert!(cc.squares_to_zero(), "boundary of a boundary must vanish");
    cc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_boundary() {
        let cc = chain_complex(&Complex::full_simplex(&["a", "b"]));
        assert_eq!(cc.boundary(1).unwrap().to_dense(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn point_has_no_boundaries() {
        let cc = chain_complex(&Complex::full_simplex(&["p"]));
        assert_eq!(cc.counts(), &[1]);
        assert_eq!(cc.boundary(0).unwrap().rows(), 0);
        assert!(cc.boundary(1).is_none());
    }

    #[test]
    fn triangle_boundary_columns_sum_to_zero() {
        let cc = chain_complex(&Complex::full_simplex(&["a", "b", "c"]).skeleton(1));
        let d1 = cc.boundary(1).unwrap().to_dense();
        assert_eq!(d1.len(), 3);
        for j in 0..3 {
            assert_eq!(d1.iter().map(|r| r[j]).sum::<i64>(), 0);
        }
    }

    #[test]
    fn tetrahedron_squares_to_zero() {
        let ix = Complex::full_simplex(&["a", "b", "c", "d"]).indexed().0;
        assert!(ChainComplex::from_indexed(&ix, true).squares_to_zero());
        assert!(ChainComplex::from_indexed(&ix, false).squares_to_zero());
    }
}
