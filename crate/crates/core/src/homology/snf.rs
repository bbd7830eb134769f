//! Dense Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.iter().flatten().cloned().map(Into::into).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    out.data[i * other.cols + j] += v;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn row_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] -= v;
        }
    }

    /// col[target] -= q * col[source]
    fn col_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// `left · A · right = D` with `D` diagonal and `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries, nonnegative.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// Nonzero diagonal entries (including units), in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithForm {
    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// With `track`, the unimodular transforms are returned as well.
pub fn smith_normal_form(a: &IntMatrix, track: bool) -> SmithForm {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut left = track.then(|| IntMatrix::identity(rows));
    let mut right = track.then(|| IntMatrix::identity(cols));
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&m, t) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pi);
        }
        if let Some(r) = right.as_mut() {
            r.swap_cols(t, pj);
        }
        loop {
            let mut swapped = false;
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).div_floor(m.get(t, t));
                m.row_sub(i, t, &q);
                if let Some(l) = left.as_mut() {
                    l.row_sub(i, t, &q);
                }
                if !m.get(i, t).is_zero() {
                    m.swap_rows(i, t);
                    if let Some(l) = left.as_mut() {
                        l.swap_rows(i, t);
                    }
                    swapped = true;
                }
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).div_floor(m.get(t, t));
                m.col_sub(j, t, &q);
                if let Some(r) = right.as_mut() {
                    r.col_sub(j, t, &q);
                }
                if !m.get(t, j).is_zero() {
                    m.swap_cols(j, t);
                    if let Some(r) = right.as_mut() {
                        r.swap_cols(j, t);
                    }
                    swapped = true;
                }
            }
            if swapped {
                continue;
            }
            let pivot = m.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    // row[t] += row[i]; the next pass shrinks the pivot.
                    let minus_one = -BigInt::one();
                    m.row_sub(t, i, &minus_one);
                    if let Some(l) = left.as_mut() {
                        l.row_sub(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(l) = left.as_mut() {
                l.negate_row(t);
            }
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..rows.min(cols)).map(|i| m.get(i, i).clone()).collect();
    let invariant_factors: Vec<BigInt> = diagonal.iter().filter(|d| !d.is_zero()).cloned().collect();
    SmithForm { rank: invariant_factors.len(), diagonal, invariant_factors, left, right }
}

fn min_abs_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| &a < b) {
                let unit = a.is_one();
                best = Some(((i, j), a));
                if unit {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        let snf = smith_normal_form(&IntMatrix::from_rows(rows), false);
        snf.invariant_factors.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn zero_matrix() {
        let snf = smith_normal_form(&IntMatrix::zeros(3, 2), false);
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn identity() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = 8.
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn divisibility_fixup() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), vec![2, 2, 60]);
    }

    #[test]
    fn transforms_reproduce_the_diagonal() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let snf = smith_normal_form(&a, true);
        let d = snf.left.as_ref().unwrap().mul(&a).mul(snf.right.as_ref().unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expected);
            }
        }
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }
}
