//! Test inputs: named fixtures, shelled trees and cones.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::{Error, Result};

pub const FIXTURES: [&str; 5] = ["circle_3", "sphere2_4", "torus7", "rp2_6", "klein8"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `size` `dim`-simplices glued one at a time along a random free facet.
    ShelledTree {
        dim: usize,
        size: usize,
        seed: u64,
    },
    Cone {
        over: Box<GeneratorSpec>,
    },
    Fixture {
        name: String,
    },
}

pub fn generate(spec: &GeneratorSpec) -> Result<Complex> {
    match spec {
        GeneratorSpec::ShelledTree { dim, size, seed } => shelled_tree(*dim, *size, *seed),
        GeneratorSpec::Cone { over } => Ok(cone(&generate(over)?)),
        GeneratorSpec::Fixture { name } => fixture(name),
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Starts from one `dim`-simplex and repeatedly glues a new `dim`-simplex
/// with a fresh apex onto a random `(dim-1)`-face. Collapsible.
pub fn shelled_tree(dim: usize, size: usize, seed: u64) -> Result<Complex> {
    if size == 0 {
        return Err(Error::GeneratorSize);
    }
    if dim == 0 {
        return Complex::closure_of_indices(&[vec![0]], labels(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first: Vec<u32> = (0..=dim as u32).collect();
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let push_facets = |s: &[u32], facets: &mut Vec<Vec<u32>>| {
        for i in 0..s.len() {
            let mut f = s.to_vec();
            f.remove(i);
            facets.push(f);
        }
    };
    push_facets(&first, &mut facets);
    let mut maximal = vec![first];
    let mut next = dim as u32 + 1;
    for _ in 1..size {
        let face = facets.choose(&mut rng).expect("nonempty").clone();
        let mut s = face;
        s.push(next);
        next += 1;
        push_facets(&s, &mut facets);
        maximal.push(s);
    }
    Complex::closure_of_indices(&maximal, labels(next as usize))
}

/// Cone with a new apex appended to the vertex list.
pub fn cone(c: &Complex) -> Complex {
    let n = c.universe().len();
    let mut universe: Vec<String> = c.universe().to_vec();
    let mut apex = format!("apex{n}");
    while universe.contains(&apex) {
        apex.push('_');
    }
    universe.push(apex);
    let mut maximal: Vec<Vec<u32>> =
        c.maximal_simplices().iter().map(|s| s.base_indices().iter().copied().chain([n as u32]).collect()).collect();
    if maximal.is_empty() {
        maximal.push(vec![n as u32]);
    }
    Complex::closure_of_indices(&maximal, universe).expect("valid indices")
}

/// `circle_3`, `sphere2_4`, `torus7`, `rp2_6`, `klein8`, `path_k` (`k`
/// edges), `star_k` (`k` leaves) and `simplex_k` (the full `k`-simplex).
pub fn fixture(name: &str) -> Result<Complex> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let (maximal, n): (Vec<Vec<u32>>, usize) = match name {
        "circle_3" => (vec![vec![0, 1], vec![1, 2], vec![0, 2]], 3),
        "sphere2_4" => (vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 4),
        "torus7" => (
            (0..7u32).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect(),
            7,
        ),
        "rp2_6" => (
            [
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ]
            .map(|s| s.to_vec())
            .to_vec(),
            6,
        ),
        "klein8" => (
            [
                [0, 1, 2],
                [0, 1, 5],
                [0, 2, 4],
                [0, 4, 6],
                [0, 5, 6],
                [1, 2, 3],
                [1, 3, 4],
                [1, 4, 6],
                [1, 5, 7],
                [1, 6, 7],
                [2, 3, 6],
                [2, 4, 7],
                [2, 5, 6],
                [2, 5, 7],
                [3, 4, 7],
                [3, 6, 7],
            ]
            .map(|s| s.to_vec())
            .to_vec(),
            8,
        ),
        _ => {
            let (kind, k) = name.rsplit_once('_').ok_or_else(unknown)?;
            let k: u32 = k.parse().map_err(|_| unknown())?;
            match kind {
                "path" => ((0..k).map(|i| vec![i, i + 1]).collect(), k as usize + 1),
                "star" => ((1..=k).map(|i| vec![0, i]).collect(), k as usize + 1),
                "simplex" => (vec![(0..=k).collect()], k as usize + 1),
                _ => return Err(unknown()),
            }
        }
    };
    let maximal = if maximal.is_empty() { vec![vec![0]] } else { maximal };
    Complex::closure_of_indices(&maximal, labels(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, is_acyclic};
    use crate::verify::collapse_to_point;
    use num_bigint::BigInt;

    #[test]
    fn fixture_counts() {
        let expect = [
            ("circle_3", vec![3, 3]),
            ("sphere2_4", vec![4, 6, 4]),
            ("torus7", vec![7, 21, 14]),
            ("rp2_6", vec![6, 15, 10]),
            ("klein8", vec![8, 24, 16]),
            ("path_4", vec![5, 4]),
            ("star_5", vec![6, 5]),
            ("simplex_2", vec![3, 3, 1]),
            ("path_0", vec![1]),
        ];
        for (name, counts) in expect {
            assert_eq!(fixture(name).unwrap().counts(), counts, "{name}");
        }
        assert_eq!(fixture("torus7").unwrap().euler_characteristic(), 0);
        assert!(matches!(fixture("moebius"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("path_x"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn fixture_homology() {
        let h = |n: &str| homology(&fixture(n).unwrap(), false);
        assert_eq!(h("circle_3").betti(), vec![1, 1]);
        assert_eq!(h("sphere2_4").betti(), vec![1, 0, 1]);
        assert_eq!(h("torus7").betti(), vec![1, 2, 1]);
        assert_eq!(h("rp2_6").betti(), vec![1, 0, 0]);
        assert_eq!(h("rp2_6").torsion(1), &[BigInt::from(2)]);
        assert_eq!(h("klein8").betti(), vec![1, 1, 0]);
        assert_eq!(h("klein8").torsion(1), &[BigInt::from(2)]);
    }

    #[test]
    fn fixtures_do_not_collapse() {
        for name in FIXTURES {
            assert!(!collapse_to_point(&fixture(name).unwrap(), 8, 3).unwrap().collapsible(), "{name}");
        }
    }

    #[test]
    fn shelled_trees() {
        let tree = shelled_tree(1, 9, 4).unwrap();
        assert_eq!(tree.counts(), vec![10, 9]);
        for dim in 1..=3 {
            for seed in 0..5 {
                let t = shelled_tree(dim, 6, seed).unwrap();
                assert_eq!(t.dim(), Some(dim));
                assert_eq!(t.counts()[0], dim + 6);
                assert_eq!(t.counts()[dim], 6);
                assert!(is_acyclic(&t).unwrap());
                assert!(collapse_to_point(&t, 1, 0).unwrap().collapsible());
            }
        }
        assert_eq!(shelled_tree(2, 5, 11).unwrap(), shelled_tree(2, 5, 11).unwrap());
        assert_eq!(shelled_tree(2, 0, 0), Err(Error::GeneratorSize));
    }

    #[test]
    fn cones_collapse() {
        let c = generate(&GeneratorSpec::Cone { over: Box::new(GeneratorSpec::Fixture { name: "circle_3".into() }) })
            .unwrap();
        assert_eq!(c.counts(), vec![4, 6, 3]);
        assert!(is_acyclic(&c).unwrap());
        assert!(collapse_to_point(&c, 4, 0).unwrap().collapsible());
        assert!(collapse_to_point(&cone(&fixture("torus7").unwrap()), 4, 0).unwrap().collapsible());
    }
}
