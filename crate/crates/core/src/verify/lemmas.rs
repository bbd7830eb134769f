//! Checks of the elementary telescope properties:
//! (a) `T ⊆ 𝒯_n(T)`, (c) restriction to `Z × ℕ^n` commutes with `𝒯_n`,
//! (d) `dim 𝒯_n(T) ≤ dim T + 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::Complex;
use crate::construction::telescope;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopeLemmaReport {
    pub level: usize,
    pub seed: u64,
    pub contains_input: bool,
    /// Sampled base subsets `Z` (as base indices).
    pub samples: Vec<Vec<u32>>,
    /// Subsets where restriction and telescope do not commute.
    pub restriction_failures: Vec<Vec<u32>>,
    pub input_dim: Option<usize>,
    pub telescope_dim: Option<usize>,
    pub dimension_bound: bool,
}

impl TelescopeLemmaReport {
    pub fn passes(&self) -> bool {
        self.contains_input && self.restriction_failures.is_empty() && self.dimension_bound
    }
}

/// Fails only if `T` violates the telescope precondition.
pub fn check_telescope_lemmas(
    t: &Complex,
    n: usize,
    ray_bounds: &[u32],
    samples: usize,
    seed: u64,
) -> Result<TelescopeLemmaReport> {
    let tel = telescope(t, n, ray_bounds)?;
    let bases: Vec<u32> =
        t.vertex_set().iter().map(|v| v.base).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = Vec::with_capacity(samples);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let z: Vec<u32> = bases.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let lhs = tel.induced_on_bases(&z);
        let rhs = telescope(&t.induced_on_bases(&z), n, ray_bounds)?;
        if lhs != rhs {
            failures.push(z.clone());
        }
        sampled.push(z);
    }
    let (input_dim, telescope_dim) = (t.dim(), tel.dim());
    let dimension_bound = match (input_dim, telescope_dim) {
        (Some(k), Some(d)) => d <= k + 1,
        (None, None) => true,
        _ => false,
    };
    Ok(TelescopeLemmaReport {
        level: n,
        seed,
        contains_input: t.is_subcomplex_of(&tel),
        samples: sampled,
        restriction_failures: failures,
        input_dim,
        telescope_dim,
        dimension_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{localize, RayPolicy};
    use crate::Error;

    #[test]
    fn level_zero_is_trivial() {
        let t = Complex::full_simplex(&["a", "b"]);
        let r = check_telescope_lemmas(&t, 0, &[], 5, 0).unwrap();
        assert!(r.passes());
        assert_eq!(r.telescope_dim, r.input_dim);
    }

    #[test]
    fn pipeline_intermediate() {
        let s = Complex::full_simplex(&["a", "b", "c"]);
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        let t1 = loc.tower.level(1).induced_on_bases(&[0, 1, 2]);
        let r = check_telescope_lemmas(&t1, 1, loc.tower.ray_bounds(), 20, 3).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.samples.len(), 20);
    }

    #[test]
    fn adversarial_input_is_rejected() {
        let bad = Complex::full_simplex(&["a", "b"]).append_coord(0).map_vertices(1, |v| {
            let mut w = v.clone();
            w.coords[0] = if v.base == 0 { 0 } else { 2 };
            w
        });
        assert!(matches!(check_telescope_lemmas(&bad, 1, &[3], 5, 0), Err(Error::TelescopePrecondition { .. })));
    }
}
