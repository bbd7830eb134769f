//! Sparse elimination with unit pivots.
//!
//! Column operations clear the row of each pivot; the pivot row and column
//! are then dropped. Over the integers only `±1` pivots are used, arithmetic
//! is checked, and whatever remains is handed to the dense Smith normal form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;

use super::chain::SparseMatrix;
use super::snf::{smith_normal_form, IntMatrix};

pub(crate) trait PivotRing {
    type E: Copy + PartialEq + std::fmt::Debug;
    fn from_i64(&self, x: i64) -> Self::E;
    fn is_zero(&self, x: Self::E) -> bool;
    fn is_unit(&self, x: Self::E) -> bool;
    /// `x - f * y`, or `None` on overflow.
    fn sub_mul(&self, x: Self::E, f: Self::E, y: Self::E) -> Option<Self::E>;
    /// `a / p` for a unit `p`.
    fn div_unit(&self, a: Self::E, p: Self::E) -> Self::E;
}

pub(crate) struct Integers;

impl PivotRing for Integers {
    type E = i64;
    fn from_i64(&self, x: i64) -> i64 {
        x
    }
    fn is_zero(&self, x: i64) -> bool {
        x == 0
    }
    fn is_unit(&self, x: i64) -> bool {
        x == 1 || x == -1
    }
    fn sub_mul(&self, x: i64, f: i64, y: i64) -> Option<i64> {
        x.checked_sub(f.checked_mul(y)?)
    }
    fn div_unit(&self, a: i64, p: i64) -> i64 {
        a * p
    }
}

pub(crate) struct PrimeField(pub u64);

impl PrimeField {
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (a % self.0, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl PivotRing for PrimeField {
    type E = u64;
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn is_zero(&self, x: u64) -> bool {
        x == 0
    }
    fn is_unit(&self, x: u64) -> bool {
        x != 0
    }
    fn sub_mul(&self, x: u64, f: u64, y: u64) -> Option<u64> {
        let fy = self.mul(f, y);
        Some(if x >= fy { x - fy } else { x + self.0 - fy })
    }
    fn div_unit(&self, a: u64, p: u64) -> u64 {
        self.mul(a, self.inv(p))
    }
}

/// What is left after the sparse phase.
pub(crate) struct Elimination<E> {
    pub pivots: usize,
    /// Remaining nonzero columns, with their rows renumbered densely.
    pub residual: Vec<Vec<(u32, E)>>,
    pub residual_rows: usize,
}

pub(crate) fn eliminate<R: PivotRing>(ring: &R, m: &SparseMatrix) -> Elimination<R::E> {
    let rows = m.rows();
    let mut cols: Vec<Vec<(u32, R::E)>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, ring.from_i64(v))).filter(|&(_, v)| !ring.is_zero(v)).collect())
        .collect();
    let mut alive = vec![true; cols.len()];
    let mut row_count = vec![0u32; rows];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    let mut heap = BinaryHeap::new();
    for (j, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_count[r as usize] += 1;
            row_cols[r as usize].push(j as u32);
        }
        heap.push(Reverse((col.len(), j)));
    }
    let mut singles: Vec<u32> = (0..rows as u32).filter(|&r| row_count[r as usize] == 1).collect();
    let mut pivots = 0;
    loop {
        // A row met by a single column is a pivot without fill-in.
        while let Some(r) = singles.pop() {
            if row_count[r as usize] != 1 {
                continue;
            }
            let owner = row_cols[r as usize]
                .iter()
                .map(|&c| c as usize)
                .find(|&c| alive[c] && cols[c].binary_search_by_key(&r, |&(x, _)| x).is_ok());
            let Some(c) = owner else { continue };
            let k = cols[c].binary_search_by_key(&r, |&(x, _)| x).expect("present");
            if !ring.is_unit(cols[c][k].1) {
                continue;
            }
            for &(x, _) in &cols[c] {
                row_count[x as usize] -= 1;
                if row_count[x as usize] == 1 {
                    singles.push(x);
                }
            }
            alive[c] = false;
            pivots += 1;
        }
        let Some(Reverse((len, c))) = heap.pop() else {
            break;
        };
        if !alive[c] || cols[c].len() != len {
            continue;
        }
        if len == 0 {
            alive[c] = false;
            continue;
        }
        let Some(&(pr, pv)) =
            cols[c].iter().filter(|&&(_, v)| ring.is_unit(v)).min_by_key(|&&(r, _)| row_count[r as usize])
        else {
            continue;
        };
        let mut others = std::mem::take(&mut row_cols[pr as usize]);
        others.sort_unstable();
        others.dedup();
        let mut updates = Vec::new();
        let mut overflow = false;
        for &o in &others {
            let o = o as usize;
            if o == c || !alive[o] {
                continue;
            }
            let Ok(k) = cols[o].binary_search_by_key(&pr, |&(r, _)| r) else {
                continue;
            };
            let q = ring.div_unit(cols[o][k].1, pv);
            match axpy(ring, &cols[o], q, &cols[c]) {
                Some(new) => updates.push((o, new)),
                None => {
                    overflow = true;
                    break;
                }
            }
        }
        if overflow {
            row_cols[pr as usize] = others;
            break;
        }
        for (o, new) in updates {
            for &(r, _) in &cols[o] {
                row_count[r as usize] -= 1;
                if row_count[r as usize] == 1 {
                    singles.push(r);
                }
            }
            for &(r, _) in &new {
                row_count[r as usize] += 1;
                if cols[o].binary_search_by_key(&r, |&(x, _)| x).is_err() {
                    row_cols[r as usize].push(o as u32);
                }
            }
            heap.push(Reverse((new.len(), o)));
            cols[o] = new;
        }
        for &(r, _) in &cols[c] {
            row_count[r as usize] -= 1;
            if row_count[r as usize] == 1 {
                singles.push(r);
            }
        }
        alive[c] = false;
        pivots += 1;
    }
    let mut renumber = vec![u32::MAX; rows];
    let mut residual_rows = 0;
    let mut residual = Vec::new();
    for (j, col) in cols.into_iter().enumerate() {
        if !alive[j] || col.is_empty() {
            continue;
        }
        residual.push(
            col.into_iter()
                .map(|(r, v)| {
                    if renumber[r as usize] == u32::MAX {
                        renumber[r as usize] = residual_rows;
                        residual_rows += 1;
                    }
                    (renumber[r as usize], v)
                })
                .collect(),
        );
    }
    Elimination { pivots, residual, residual_rows: residual_rows as usize }
}

/// `x - q * y` for sorted sparse columns.
fn axpy<R: PivotRing>(ring: &R, x: &[(u32, R::E)], q: R::E, y: &[(u32, R::E)]) -> Option<Vec<(u32, R::E)>> {
    let zero = ring.from_i64(0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, vx)
            }
            (Some(&(rx, vx)), Some(&(ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (rx, ring.sub_mul(vx, q, vy)?)
            }
            (_, Some(&(ry, vy))) => {
                j += 1;
                (ry, ring.sub_mul(zero, q, vy)?)
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, vx)
            }
            (None, None) => unreachable!(),
        };
        if !ring.is_zero(v) {
            out.push((r, v));
        }
    }
    Some(out)
}

/// Rank and nonunit invariant factors of an integer matrix.
pub(crate) fn integer_rank_and_torsion(m: &SparseMatrix) -> (usize, Vec<BigInt>) {
    let e = eliminate(&Integers, m);
    if e.residual.is_empty() {
        return (e.pivots, Vec::new());
    }
    let mut dense = IntMatrix::zeros(e.residual_rows, e.residual.len());
    for (j, col) in e.residual.iter().enumerate() {
        for &(r, v) in col {
            dense.set(r as usize, j, BigInt::from(v));
        }
    }
    let snf = smith_normal_form(&dense, false);
    (e.pivots + snf.rank, snf.torsion())
}

/// Rank over the field with `p` elements.
pub(crate) fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let e = eliminate(&PrimeField(p), m);
    debug_assert!(e.residual.is_empty(), "every nonzero entry is a unit mod p");
    e.pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn sparse(rows: &[Vec<i64>]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let columns =
            (0..c).map(|j| (0..r).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect()).collect();
        SparseMatrix::from_columns(r, columns)
    }

    #[test]
    fn unit_pivots_only() {
        let m = sparse(&[vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]]);
        assert_eq!(integer_rank_and_torsion(&m), (2, vec![]));
        assert_eq!(rank_mod_p(&m, 2), 2);
    }

    #[test]
    fn torsion_survives() {
        let m = sparse(&[vec![2, 4], vec![6, 8]]);
        let (rank, torsion) = integer_rank_and_torsion(&m);
        assert_eq!(rank, 2);
        assert_eq!(torsion.iter().map(|t| t.to_i64().unwrap()).collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 2);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }

    #[test]
    fn overflow_falls_back_to_dense() {
        let big = i64::MAX / 2 + 1;
        let m = sparse(&[vec![1, big], vec![big, 3]]);
        let (rank, torsion) = integer_rank_and_torsion(&m);
        assert_eq!(rank, 2);
        let det = BigInt::from(big) * BigInt::from(big) - 3;
        assert_eq!(torsion, vec![det]);
    }

    #[test]
    fn inverse_mod_p() {
        let f = PrimeField(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
