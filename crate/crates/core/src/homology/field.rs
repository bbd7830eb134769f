//! Dense linear algebra over ℚ and ℤ/p, used for explicit induced maps.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elim::PrimeField;

pub(crate) trait Field {
    type E: Clone + PartialEq + Display;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

pub(crate) struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        PrimeField::inv(self, *a)
    }
}

/// Row-major dense matrix.
pub(crate) type Dense<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref<F: Field>(f: &F, m: &mut Dense<F::E>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !f.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(&m[row][col]);
        for x in m[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i == row || f.is_zero(&m[i][col]) {
                continue;
            }
            let factor = m[i][col].clone();
            for j in 0..cols {
                if !f.is_zero(&m[row][j]) {
                    let v = f.mul(&factor, &m[row][j]);
                    m[i][j] = f.sub(&m[i][j], &v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the kernel of an `rows × cols` matrix.
pub(crate) fn nullspace<F: Field>(f: &F, m: &Dense<F::E>, cols: usize) -> Vec<Vec<F::E>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.from_i64(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[i][fc]);
            }
            v
        })
        .collect()
}

/// Indices of a maximal independent prefix-greedy subset of `vectors`.
pub(crate) fn independent<F: Field>(f: &F, vectors: &[Vec<F::E>], len: usize) -> Vec<usize> {
    let mut m: Dense<F::E> = (0..len).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
    rref(f, &mut m, vectors.len())
}

/// Solves `Σ x_j columns[j] = b`, for independent columns.
pub(crate) fn solve<F: Field>(f: &F, columns: &[Vec<F::E>], b: &[F::E]) -> Option<Vec<F::E>> {
    let n = columns.len();
    let mut m: Dense<F::E> = (0..b.len())
        .map(|i| columns.iter().map(|c| c[i].clone()).chain(std::iter::once(b[i].clone())).collect())
        .collect();
    let pivots = rref(f, &mut m, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> Dense<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let mut r = m.clone();
        assert_eq!(rref(&Rationals, &mut r, 3), vec![0]);
        let ker = nullspace(&Rationals, &m, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let dot: BigRational = (0..3).map(|j| &m[0][j] * &v[j]).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solves_mod_p() {
        let f = PrimeField(5);
        let cols = vec![vec![1, 0], vec![1, 1]];
        let x = solve(&f, &cols, &[3, 4]).unwrap();
        assert_eq!(x, vec![4, 4]);
        assert!(solve(&f, &[vec![1, 1]], &[1, 2]).is_none());
    }

    #[test]
    fn independence() {
        let vs = q(&[vec![1, 0], vec![2, 0], vec![0, 1]]);
        assert_eq!(independent(&Rationals, &vs, 2), vec![0, 2]);
    }
}
