//! Simplicial homology and induced maps.
//!
//! Integer homology uses sparse unit-pivot elimination and falls back to a
//! dense Smith normal form on whatever the sparse phase cannot clear. Induced
//! maps are computed over a field from the ranks of the mapping cone; small
//! complexes also get explicit matrices on chosen homology bases.

mod chain;
mod elim;
mod field;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, IndexedComplex, SimplicialMap};
use crate::{Error, Result};

pub use chain::{chain_complex, ChainComplex, SparseMatrix};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use elim::{integer_rank_and_torsion, rank_mod_p, PrimeField};
use field::{independent, nullspace, solve, Field, Rationals};

/// Complexes with at most this many simplices get explicit induced matrices.
pub const EXPLICIT_LIMIT: usize = 250;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Rationals,
    Mod(u64),
}

impl Coefficients {
    pub fn modulo(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Mod(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Mod(p) => write!(f, "Z/{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Q`, `mod-p`, `mod p`, `Z/p` and `Fp`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "z" | "integers" => return Ok(Coefficients::Integers),
            "q" | "rationals" => return Ok(Coefficients::Rationals),
            _ => {}
        }
        let lower = t.to_ascii_lowercase();
        let digits = ["mod-", "mod ", "mod", "z/", "f"]
            .iter()
            .find_map(|pre| lower.strip_prefix(pre))
            .ok_or_else(|| Error::BadCoefficients(s.to_string()))?;
        let p: u64 = digits.trim().parse().map_err(|_| Error::BadCoefficients(s.to_string()))?;
        Coefficients::modulo(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimHomology {
    pub dim: usize,
    pub betti: usize,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl DimHomology {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DimHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", group_string(self.betti, &self.torsion, "Z"))
    }
}

fn group_string(betti: usize, torsion: &[BigInt], free: &str) -> String {
    let mut parts = Vec::new();
    match betti {
        0 => {}
        1 => parts.push(free.to_string()),
        b => parts.push(format!("{free}^{b}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Homology groups `H_0 .. H_dim`.
///
/// Equality ignores trailing trivial groups, so complexes of different
/// dimension compare by their groups alone.
#[derive(Clone, Debug, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub dims: Vec<DimHomology>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.betti).collect()
    }

    pub fn betti_at(&self, d: usize) -> usize {
        self.dims.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: usize) -> &[BigInt] {
        self.dims.get(d).map_or(&[], |h| &h.torsion)
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.iter().all(DimHomology::is_trivial)
    }

    fn significant(&self) -> &[DimHomology] {
        let n = self.dims.iter().rposition(|d| !d.is_trivial()).map_or(0, |i| i + 1);
        &self.dims[..n]
    }
}

impl PartialEq for HomologyResult {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients
            && self.reduced == other.reduced
            && self.significant() == other.significant()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = self.coefficients.to_string();
        let groups: Vec<String> =
            self.dims.iter().map(|d| format!("H{} = {}", d.dim, group_string(d.betti, &d.torsion, &free))).collect();
        if groups.is_empty() {
            write!(f, "all groups vanish")
        } else {
            write!(f, "{}", groups.join(", "))
        }
    }
}

/// Integer homology of `c`.
pub fn homology(c: &Complex, reduced: bool) -> HomologyResult {
    homology_indexed(&c.indexed().0, Coefficients::Integers, reduced)
}

pub fn homology_with(c: &Complex, coefficients: Coefficients, reduced: bool) -> Result<HomologyResult> {
    if let Coefficients::Mod(p) = coefficients {
        Coefficients::modulo(p)?;
    }
    Ok(homology_indexed(&c.indexed().0, coefficients, reduced))
}

/// Homology of an indexed complex; a `Mod` modulus must be prime.
pub fn homology_indexed(c: &IndexedComplex, coefficients: Coefficients, reduced: bool) -> HomologyResult {
    homology_of_chain(&ChainComplex::from_indexed(c, reduced), coefficients)
}

pub fn homology_of_chain(cc: &ChainComplex, coefficients: Coefficients) -> HomologyResult {
    let n = cc.len();
    let ranks: Vec<(usize, Vec<BigInt>)> = (0..n)
        .into_par_iter()
        .map(|d| matrix_rank(cc.boundary(d).expect("dimension in range"), coefficients))
        .collect();
    let dims = (0..n)
        .map(|d| {
            let next = ranks.get(d + 1);
            DimHomology {
                dim: d,
                betti: cc.counts()[d] - ranks[d].0 - next.map_or(0, |r| r.0),
                torsion: next.map_or_else(Vec::new, |r| r.1.clone()),
            }
        })
        .collect();
    HomologyResult { coefficients, reduced: cc.reduced(), dims }
}

/// Rank, and over the integers the nonunit invariant factors.
fn matrix_rank(m: &SparseMatrix, coefficients: Coefficients) -> (usize, Vec<BigInt>) {
    match coefficients {
        Coefficients::Integers => integer_rank_and_torsion(m),
        Coefficients::Rationals => (integer_rank_and_torsion(m).0, Vec::new()),
        Coefficients::Mod(p) => (rank_mod_p(m, p), Vec::new()),
    }
}

/// Reduced integer homology vanishes.
pub fn is_acyclic(c: &Complex) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(homology(c, true).is_trivial())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedDim {
    pub dim: usize,
    pub source_rank: usize,
    pub target_rank: usize,
    /// Rank of the induced map in this dimension.
    pub rank: usize,
    pub isomorphism: bool,
    /// Matrix on chosen homology bases, `target_rank × source_rank`.
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub coefficients: Coefficients,
    pub dims: Vec<InducedDim>,
}

impl InducedMap {
    pub fn is_isomorphism(&self) -> bool {
        self.dims.iter().all(|d| d.isomorphism)
    }
}

/// Unreduced homology map of `f` over a field.
///
/// Ranks come from the long exact sequence of the mapping cone, so this
/// scales like an ordinary homology computation.
pub fn induced_map_homology(f: &SimplicialMap, coefficients: Coefficients) -> Result<InducedMap> {
    match coefficients {
        Coefficients::Integers => return Err(Error::NotAField(coefficients.to_string())),
        Coefficients::Mod(p) => {
            Coefficients::modulo(p)?;
        }
        Coefficients::Rationals => {}
    }
    let (source, source_vertices) = f.source().indexed();
    let (target, target_vertices) = f.target().indexed();
    let vertex_map: Vec<u32> = source_vertices
        .iter()
        .map(|v| target_vertices.binary_search(f.apply(v)).expect("map lands in the target") as u32)
        .collect();
    let cs = ChainComplex::from_indexed(&source, false);
    let ct = ChainComplex::from_indexed(&target, false);
    let top = cs.len().max(ct.len());
    let chain_maps: Vec<SparseMatrix> = (0..top).map(|d| chain_map(&source, &target, &vertex_map, d)).collect();
    let hs = homology_of_chain(&cs, coefficients);
    let ht = homology_of_chain(&ct, coefficients);
    let hc = cone_betti(&cs, &ct, &chain_maps, coefficients);
    let mut ranks = Vec::with_capacity(top);
    let mut prev_rank = 0usize;
    for d in 0..top {
        let prev_source = if d == 0 { 0 } else { hs.betti_at(d - 1) };
        let r =
            (ht.betti_at(d) + prev_source).checked_sub(prev_rank + hc[d]).expect("exact sequence of the mapping cone");
        debug_assert!(r <= hs.betti_at(d).min(ht.betti_at(d)));
        ranks.push(r);
        prev_rank = r;
    }
    let explicit = source.total() <= EXPLICIT_LIMIT && target.total() <= EXPLICIT_LIMIT;
    let dims = (0..top)
        .map(|d| {
            let matrix = explicit.then(|| match coefficients {
                Coefficients::Mod(p) => explicit_matrix(&PrimeField(p), &cs, &ct, &chain_maps[d], d),
                _ => explicit_matrix(&Rationals, &cs, &ct, &chain_maps[d], d),
            });
            if let Some((_, rank)) = &matrix {
                assert_eq!(*rank, ranks[d], "explicit and cone ranks agree");
            }
            let (s, t) = (hs.betti_at(d), ht.betti_at(d));
            InducedDim {
                dim: d,
                source_rank: s,
                target_rank: t,
                rank: ranks[d],
                isomorphism: s == t && ranks[d] == s,
                matrix: matrix.map(|(m, _)| m),
            }
        })
        .collect();
    Ok(InducedMap { coefficients, dims })
}

/// `F_d : C_d(S) -> C_d(T)`; degenerate images go to zero.
fn chain_map(source: &IndexedComplex, target: &IndexedComplex, vertex_map: &[u32], d: usize) -> SparseMatrix {
    let columns = source
        .simplices(d)
        .iter()
        .map(|s| {
            let image: Vec<u32> = s.iter().map(|&v| vertex_map[v as usize]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != image.len() {
                return Vec::new();
            }
            let inversions = (0..image.len())
                .flat_map(|i| (i + 1..image.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| image[i] > image[j])
                .count();
            let row = target.index_of(&sorted).expect("simplicial map") as u32;
            vec![(row, if inversions % 2 == 0 { 1 } else { -1 })]
        })
        .collect();
    SparseMatrix::from_columns(target.count(d), columns)
}

/// Betti numbers of the mapping cone in dimensions `0..top`.
///
/// `Cone_d = C_{d-1}(S) ⊕ C_d(T)` with `∂(σ, τ) = (-∂σ, F σ + ∂τ)`.
fn cone_betti(cs: &ChainComplex, ct: &ChainComplex, maps: &[SparseMatrix], coefficients: Coefficients) -> Vec<usize> {
    let count = |c: &ChainComplex, d: isize| {
        if d < 0 {
            0
        } else {
            c.counts().get(d as usize).copied().unwrap_or(0)
        }
    };
    let size = |d: usize| count(cs, d as isize - 1) + count(ct, d as isize);
    let top = maps.len();
    let boundary = |d: usize| -> SparseMatrix {
        let row_offset = count(cs, d as isize - 2);
        let mut columns: Vec<Vec<(u32, i64)>> = Vec::with_capacity(size(d));
        for j in 0..count(cs, d as isize - 1) {
            let mut col: Vec<(u32, i64)> = Vec::new();
            if d >= 2 {
                col.extend(cs.boundary(d - 1).unwrap().column(j).iter().map(|&(r, v)| (r, -v)));
            }
            col.extend(maps[d - 1].column(j).iter().map(|&(r, v)| (r + row_offset as u32, v)));
            columns.push(col);
        }
        for j in 0..count(ct, d as isize) {
            let col = ct
                .boundary(d)
                .filter(|_| d >= 1)
                .map_or_else(Vec::new, |b| b.column(j).iter().map(|&(r, v)| (r + row_offset as u32, v)).collect());
            columns.push(col);
        }
        SparseMatrix::from_columns(size(d - 1), columns)
    };
    let ranks: Vec<usize> =
        (0..=top).into_par_iter().map(|d| if d == 0 { 0 } else { matrix_rank(&boundary(d), coefficients).0 }).collect();
    (0..top).map(|d| size(d) - ranks[d] - ranks[d + 1]).collect()
}

fn dense<F: Field>(f: &F, m: &SparseMatrix) -> Vec<Vec<F::E>> {
    m.to_dense().into_iter().map(|row| row.into_iter().map(|x| f.from_i64(x)).collect()).collect()
}

/// Cycle representatives of a homology basis in dimension `d`.
fn homology_basis<F: Field>(f: &F, c: &ChainComplex, d: usize) -> (Vec<Vec<F::E>>, Vec<Vec<F::E>>) {
    let n = c.counts().get(d).copied().unwrap_or(0);
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let cycles = nullspace(f, &dense(f, c.boundary(d).unwrap()), n);
    let boundaries: Vec<Vec<F::E>> = match c.boundary(d + 1) {
        Some(b) => {
            let m = dense(f, b);
            (0..b.cols()).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
        }
        None => Vec::new(),
    };
    let all: Vec<Vec<F::E>> = boundaries.iter().chain(cycles.iter()).cloned().collect();
    let picked = independent(f, &all, n);
    let nb = boundaries.len();
    let b_basis = picked.iter().filter(|&&i| i < nb).map(|&i| all[i].clone()).collect();
    let reps = picked.iter().filter(|&&i| i >= nb).map(|&i| all[i].clone()).collect();
    (b_basis, reps)
}

fn explicit_matrix<F: Field>(
    f: &F,
    cs: &ChainComplex,
    ct: &ChainComplex,
    map: &SparseMatrix,
    d: usize,
) -> (Vec<Vec<String>>, usize) {
    let (_, source_reps) = homology_basis(f, cs, d);
    let (target_b, target_reps) = homology_basis(f, ct, d);
    let nt = ct.counts().get(d).copied().unwrap_or(0);
    let m = dense(f, map);
    let basis: Vec<Vec<F::E>> = target_b.iter().chain(target_reps.iter()).cloned().collect();
    let mut out = vec![vec![f.zero(); source_reps.len()]; target_reps.len()];
    for (j, z) in source_reps.iter().enumerate() {
        let image: Vec<F::E> = (0..nt)
            .map(|i| z.iter().enumerate().fold(f.zero(), |acc, (k, zk)| f.add(&acc, &f.mul(&m[i][k], zk))))
            .collect();
        let x = solve(f, &basis, &image).expect("image of a cycle is a cycle");
        for (i, v) in x[target_b.len()..].iter().enumerate() {
            out[i][j] = v.clone();
        }
    }
    let mut reduced = out.clone();
    let rank = field::rref(f, &mut reduced, source_reps.len()).len();
    (out.into_iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(), rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CoordVertex;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn circle() -> Complex {
        Complex::full_simplex(&["a", "b", "c"]).skeleton(1)
    }

    fn rp2() -> Complex {
        let t = [
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
        ];
        Complex::closure_of_indices(&t.map(|s| s.to_vec()), named(6)).unwrap()
    }

    #[test]
    fn point_and_circle() {
        let pt = Complex::full_simplex(&["p"]);
        assert_eq!(homology(&pt, false).betti(), vec![1]);
        assert!(homology(&pt, true).is_trivial());
        assert_eq!(homology(&circle(), false).betti(), vec![1, 1]);
        assert_eq!(homology(&circle(), true).betti(), vec![0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let h = homology(&rp2(), false);
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        let h2 = homology_with(&rp2(), Coefficients::Mod(2), false).unwrap();
        assert_eq!(h2.betti(), vec![1, 1, 1]);
        let hq = homology_with(&rp2(), Coefficients::Rationals, false).unwrap();
        assert_eq!(hq.betti(), vec![1, 0, 0]);
        assert_eq!(h.to_string(), "H0 = Z, H1 = Z/2, H2 = 0");
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        for c in [rp2(), circle(), Complex::full_simplex(&["a", "b", "c", "d"]).skeleton(2)] {
            let h = homology_with(&c, Coefficients::Rationals, false).unwrap();
            let alt: i64 =
                h.betti().iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            assert_eq!(alt, c.euler_characteristic());
        }
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let disk = Complex::full_simplex(&["a", "b", "c"]);
        assert_eq!(homology(&disk, false), homology(&Complex::full_simplex(&["p"]), false));
        assert_ne!(homology(&disk, false), homology(&circle(), false));
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&Complex::full_simplex(&["a", "b", "c", "d"])).unwrap());
        assert!(!is_acyclic(&circle()).unwrap());
        assert_eq!(is_acyclic(&Complex::empty_like(&circle())), Err(Error::EmptyComplex));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("q".parse::<Coefficients>().unwrap(), Coefficients::Rationals);
        assert_eq!("mod-3".parse::<Coefficients>().unwrap(), Coefficients::Mod(3));
        assert_eq!("Z/7".parse::<Coefficients>().unwrap(), Coefficients::Mod(7));
        assert_eq!("mod-4".parse::<Coefficients>(), Err(Error::NotPrime(4)));
        assert!(matches!("R".parse::<Coefficients>(), Err(Error::BadCoefficients(_))));
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let id = SimplicialMap::identity(rp2());
        let m = induced_map_homology(&id, Coefficients::Mod(2)).unwrap();
        assert!(m.is_isomorphism());
        assert_eq!(m.dims[1].matrix.as_ref().unwrap(), &vec![vec!["1".to_string()]]);
        assert!(induced_map_homology(&id, Coefficients::Integers).is_err());
    }

    #[test]
    fn collapsing_a_circle_kills_h1() {
        let pt = Complex::full_simplex(&["a", "b", "c"]).skeleton(0).induced_on_bases(&[0]);
        let f = SimplicialMap::from_fn(circle(), pt, |_| CoordVertex::plain(0)).unwrap();
        let m = induced_map_homology(&f, Coefficients::Rationals).unwrap();
        assert!(m.dims[0].isomorphism);
        assert_eq!(m.dims[1].rank, 0);
        assert!(!m.is_isomorphism());
    }

    #[test]
    fn double_cover_of_circle_is_degree_two() {
        // hexagon -> triangle, i -> i mod 3
        let hexagon =
            Complex::closure_of_indices(&(0..6).map(|i| vec![i, (i + 1) % 6]).collect::<Vec<_>>(), named(6)).unwrap();
        let triangle = Complex::closure_of_indices(&[vec![0, 1], vec![1, 2], vec![0, 2]], named(6)).unwrap();
        let f = SimplicialMap::from_fn(hexagon, triangle, |v| CoordVertex::plain(v.base % 3)).unwrap();
        let q = induced_map_homology(&f, Coefficients::Rationals).unwrap();
        assert_eq!(q.dims[1].rank, 1);
        assert!(q.is_isomorphism());
        let m2 = induced_map_homology(&f, Coefficients::Mod(2)).unwrap();
        assert_eq!(m2.dims[1].rank, 0);
        let entry = &q.dims[1].matrix.as_ref().unwrap()[0][0];
        assert!(entry == "2" || entry == "-2");
    }
}
