use serde::Serialize;

use crate::{Error, Result};

/// The degree constants at level `n`.
///
/// `k` bounds the one-sided neighbour count (a vertex counts itself), and
/// `m = 2(k - 1)` bounds the number of edges at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub n: usize,
    pub k: u64,
    pub m: u64,
}

/// `K_1 = 3`, `K_{n+1} = 2 K_n + (n+2) 2^n`, `M_n = 2(K_n - 1)`.
pub fn bounds(n: usize) -> Result<BoundsTable> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    let overflow = || Error::BoundsOverflow(n);
    let mut k: u64 = 3;
    for j in 1..n {
        let pow = 1u64.checked_shl(j as u32).filter(|_| j < 64).ok_or_else(overflow)?;
        let step = (j as u64 + 2).checked_mul(pow).ok_or_else(overflow)?;
        k = k.checked_mul(2).and_then(|k2| k2.checked_add(step)).ok_or_else(overflow)?;
    }
    let m = (k - 1).checked_mul(2).ok_or_else(overflow)?;
    debug_assert_eq!(Some(2 * k as u128), closed_form_twice_k(n));
    Ok(BoundsTable { n, k, m })
}

/// `2 K_n = 2^(n-1) (n^2 + 3n + 2)`, evaluated independently of the recurrence.
pub fn closed_form_twice_k(n: usize) -> Option<u128> {
    let n128 = n as u128;
    let poly = n128.checked_mul(n128)?.checked_add(3 * n128)?.checked_add(2)?;
    let pow = 1u128.checked_shl(n.checked_sub(1)? as u32)?;
    pow.checked_mul(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_constants() {
        assert_eq!(bounds(1).unwrap(), BoundsTable { n: 1, k: 3, m: 4 });
        assert_eq!(bounds(2).unwrap(), BoundsTable { n: 2, k: 12, m: 22 });
        assert_eq!(bounds(3).unwrap(), BoundsTable { n: 3, k: 40, m: 78 });
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for n in 1..=40 {
            let b = bounds(n).unwrap();
            assert_eq!(Some(2 * b.k as u128), closed_form_twice_k(n), "n = {n}");
            assert_eq!(b.m, 2 * (b.k - 1));
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(bounds(0), Err(Error::ZeroLevel));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(bounds(90), Err(Error::BoundsOverflow(90)));
    }
}
