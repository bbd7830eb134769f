use serde::Serialize;

use super::coloring::{first_fit_coloring, max_color, Coloring, ColoringTable};
use super::telescope::telescope;
use crate::complex::{ray_segment, Complex, CoordVertex, SimplicialMap};
use crate::{Error, Result};

/// How the ray `N` is truncated at each level.
///
/// The default truncation at level `k` is `max color of c_k + 2`; every
/// attachment happens at a position no larger than the largest color.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum RayPolicy {
    #[default]
    Default,
    /// `R_k` for `k = 1, 2, ...`; levels past the end use the default.
    Explicit(Vec<u32>),
}

impl RayPolicy {
    fn bound(&self, level: usize, max_color: Option<u32>) -> u32 {
        let default = max_color.map_or(1, |c| c + 2);
        match self {
            RayPolicy::Default => default,
            RayPolicy::Explicit(v) => v.get(level - 1).copied().unwrap_or(default),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    pub counts: Vec<usize>,
    pub prime_counts: Option<Vec<usize>>,
    pub max_degree: usize,
    pub ray_bound: Option<u32>,
    pub max_color: Option<u32>,
}

/// The sequence `T_0 ⊆ T_1 ⊆ ... ⊆ T_n` with the intermediate `T_k'`.
#[derive(Clone, Debug)]
pub struct Tower {
    input: Complex,
    skeleta: Vec<Complex>,
    levels: Vec<Complex>,
    primes: Vec<Complex>,
    colorings: ColoringTable,
    ray_bounds: Vec<u32>,
}

impl Tower {
    pub fn input(&self) -> &Complex {
        &self.input
    }

    /// The top level `n = dim(S)` (0 for an empty input).
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Complex {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Complex] {
        &self.levels
    }

    /// `T_k'` for `1 <= k <= n`.
    pub fn prime(&self, k: usize) -> Option<&Complex> {
        k.checked_sub(1).and_then(|i| self.primes.get(i))
    }

    /// The skeleton `S_k`.
    pub fn skeleton(&self, k: usize) -> &Complex {
        &self.skeleta[k]
    }

    pub fn colorings(&self) -> &ColoringTable {
        &self.colorings
    }

    /// `R_1, ..., R_n`.
    pub fn ray_bounds(&self) -> &[u32] {
        &self.ray_bounds
    }

    /// `p_k : T_k -> S_k`.
    pub fn projection(&self, k: usize) -> Result<SimplicialMap> {
        projection_map(&self.levels[k], &self.skeleta[k])
    }

    /// `p_k : T_k' -> S_{k-1}`.
    pub fn prime_projection(&self, k: usize) -> Option<Result<SimplicialMap>> {
        let prime = self.prime(k)?;
        Some(projection_map(prime, &self.skeleta[k - 1]))
    }

    pub fn stats(&self) -> Vec<LevelStats> {
        (0..self.levels.len())
            .map(|k| {
                let t = &self.levels[k];
                LevelStats {
                    level: k,
                    counts: t.counts(),
                    prime_counts: self.prime(k).map(Complex::counts),
                    max_degree: t.edge_degrees().values().copied().max().unwrap_or(0),
                    ray_bound: k.checked_sub(1).map(|i| self.ray_bounds[i]),
                    max_color: if k == 0 { None } else { self.colorings.max_color(k) },
                }
            })
            .collect()
    }

    /// Structural checks: `T_k ⊆ S_k × N^k`, `T_k × {0} ⊆ T_k × N ⊆ T_{k+1}' ⊆ T_{k+1}`.
    /// Returns a list of problems (empty when consistent).
    pub fn check_structure(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (k, t) in self.levels.iter().enumerate() {
            for s in t.iter() {
                if !self.skeleta[k].contains(&s.bases()) {
                    problems.push(format!("T_{k}: {} projects outside S_{k}", t.describe(s)));
                    break;
                }
                let out_of_range =
                    s.vertices().iter().any(|v| v.coords.iter().zip(&self.ray_bounds).any(|(c, r)| c > r));
                if out_of_range {
                    problems.push(format!("T_{k}: {} leaves the ray truncation", t.describe(s)));
                    break;
                }
            }
        }
        for k in 1..self.levels.len() {
            let prime = &self.primes[k - 1];
            let cyl = match self.levels[k - 1].product(&ray_segment(0, self.ray_bounds[k - 1]).expect("range")) {
                Ok(c) => c,
                Err(e) => {
                    problems.push(e.to_string());
                    continue;
                }
            };
            if !cyl.is_subcomplex_of(prime) {
                problems.push(format!("T_{} × N is not contained in T_{k}'", k - 1));
            }
            if !prime.is_subcomplex_of(&self.levels[k]) {
                problems.push(format!("T_{k}' is not contained in T_{k}"));
            }
            if !self.levels[k - 1].append_coord(0).is_subcomplex_of(&self.levels[k]) {
                problems.push(format!("i_{} does not embed T_{} into T_{k}", k - 1, k - 1));
            }
        }
        problems
    }
}

/// Output of [`localize`]: `T = T_n` with `p = p_n : T -> S`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub complex: Complex,
    pub projection: SimplicialMap,
    pub tower: Tower,
}

/// `T_{n+1}' = (T_n × N) ∪ ⋃_{s ∈ S^(n+1)} 𝒯_n(T_n|(s × ℕ^n)) × {c(s)}`.
///
/// `ray_bounds` holds `R_1..=R_{n+1}`; `R_{n+1}` must exceed every color.
pub fn build_t_prime(t_n: &Complex, s: &Complex, n: usize, coloring: &Coloring, ray_bounds: &[u32]) -> Result<Complex> {
    if t_n.level() != n {
        return Err(Error::LevelMismatch { expected: n, found: t_n.level() });
    }
    let bound = *ray_bounds.get(n).ok_or(Error::MissingRayBound(n + 1))?;
    if let Some(mc) = max_color(coloring) {
        if bound <= mc {
            return Err(Error::RayBoundTooSmall { level: n + 1, bound, max_color: mc });
        }
    }
    let mut out = t_n.product(&ray_segment(0, bound)?)?;
    for simplex in s.simplices_of_dim(n + 1) {
        let color = *coloring.get(simplex).ok_or_else(|| Error::MissingColor(s.describe(simplex)))?;
        let over = t_n.induced_on_bases(&simplex.base_indices());
        let tel = telescope(&over, n, &ray_bounds[..n])?;
        out.extend_from(&tel.append_coord(color))?;
    }
    Ok(out)
}

/// `T_{n+1} = T_{n+1}' ∪ { s × {0}^n × {c(s)} : s ∈ S^(n+1) }`.
///
/// Proper faces of each attached simplex must already be present.
pub fn build_t_next(t_prime: Complex, s: &Complex, n: usize, coloring: &Coloring) -> Result<Complex> {
    let mut out = t_prime;
    let mut attached = Vec::new();
    for simplex in s.simplices_of_dim(n + 1) {
        let color = *coloring.get(simplex).ok_or_else(|| Error::MissingColor(s.describe(simplex)))?;
        let lifted = simplex.map(|v| {
            let mut coords = smallvec::SmallVec::from_elem(0, n);
            coords.push(color);
            CoordVertex { base: v.base, coords, stage: None }
        });
        for face in lifted.facets() {
            if !out.contains(&face) {
                return Err(Error::ClosureAssertion { simplex: out.describe(&lifted), face: out.describe(&face) });
            }
        }
        attached.push(lifted);
    }
    for a in attached {
        out.insert_raw(a);
    }
    Ok(out)
}

/// The projection dropping every coordinate beyond the target's level.
pub fn projection_map(t: &Complex, target: &Complex) -> Result<SimplicialMap> {
    let keep = target.level();
    SimplicialMap::from_fn(t.clone(), target.clone(), |v| {
        let mut w = v.dropped(v.level().saturating_sub(keep));
        w.stage = None;
        w
    })
}

/// Runs the tower `T_0 = S_0, ..., T_n` for `n = dim(S)`.
pub fn localize(s: &Complex, policy: &RayPolicy) -> Result<Localization> {
    if s.level() != 0 {
        return Err(Error::NotPlain(s.level()));
    }
    if s.iter().any(|x| x.vertices().iter().any(|v| v.stage.is_some())) {
        return Err(Error::StagedVertex("localize"));
    }
    let n = s.dim().unwrap_or(0);
    let skeleta: Vec<Complex> = (0..=n).map(|k| s.skeleton(k)).collect();
    let mut levels = vec![skeleta[0].clone()];
    let mut primes = Vec::with_capacity(n);
    let mut colorings = ColoringTable::default();
    let mut ray_bounds = Vec::with_capacity(n);
    for k in 0..n {
        let coloring = first_fit_coloring(s, k + 1)?;
        ray_bounds.push(policy.bound(k + 1, max_color(&coloring)));
        let prime = build_t_prime(&levels[k], s, k, &coloring, &ray_bounds)?;
        let next = build_t_next(prime.clone(), s, k, &coloring)?;
        primes.push(prime);
        levels.push(next);
        colorings.insert(k + 1, coloring);
    }
    let complex = levels[n].clone();
    let projection = projection_map(&complex, s)?;
    let tower = Tower { input: s.clone(), skeleta, levels, primes, colorings, ray_bounds };
    Ok(Localization { complex, projection, tower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;
    use crate::construction::bounds::bounds;

    fn edge() -> Complex {
        Complex::full_simplex(&["a", "b"])
    }

    fn v(b: u32, c: &[u32]) -> CoordVertex {
        CoordVertex::new(b, c)
    }

    #[test]
    fn single_vertex_is_unchanged() {
        let pt = Complex::full_simplex(&["x"]);
        let loc = localize(&pt, &RayPolicy::Default).unwrap();
        assert_eq!(loc.complex, pt);
        assert_eq!(loc.tower.top(), 0);
    }

    #[test]
    fn single_edge_worked_example() {
        let s = edge();
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        let tower = &loc.tower;
        assert_eq!(tower.ray_bounds(), &[2]);
        // T_1' = S_0 × N.
        let s0_ray = s.skeleton(0).product(&ray_segment(0, 2).unwrap()).unwrap();
        assert_eq!(tower.prime(1).unwrap(), &s0_ray);
        // T_1 = T_1' ∪ {(a;0),(b;0)}.
        let mut expected = s0_ray.clone();
        expected.insert_raw(Simplex::new([v(0, &[0]), v(1, &[0])]).unwrap());
        assert_eq!(loc.complex, expected);
        assert_eq!(loc.complex.edge_degree(&v(0, &[0])).unwrap(), 2);
        let max = loc.complex.edge_degrees().values().copied().max().unwrap();
        assert_eq!(max, 2);
        assert!(max as u64 <= bounds(1).unwrap().m);
        // The truncated ray at a.
        let ray_a = loc.complex.induced_on_bases(&[0]);
        assert_eq!(ray_a.counts(), vec![3, 2]);
        assert!(tower.check_structure().is_empty());
    }

    #[test]
    fn circle_attachments_spread_along_the_ray() {
        let s = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        // Colors 0, 1, 2 on ab, ac, bc; R_1 = 4.
        assert_eq!(loc.tower.ray_bounds(), &[4]);
        assert!(loc.complex.contains(&Simplex::new([v(0, &[1]), v(2, &[1])]).unwrap()));
        assert!(loc.complex.contains(&Simplex::new([v(1, &[2]), v(2, &[2])]).unwrap()));
        assert_eq!(loc.complex.edge_degree(&v(0, &[1])).unwrap(), 3);
    }

    #[test]
    fn empty_union_when_no_higher_simplices() {
        let s = edge();
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        let t1 = loc.complex;
        let none = Coloring::new();
        let prime = build_t_prime(&t1, &s, 1, &none, &[2, 3]).unwrap();
        assert_eq!(prime, t1.product(&ray_segment(0, 3).unwrap()).unwrap());
        assert_eq!(build_t_next(prime.clone(), &s, 1, &none).unwrap(), prime);
    }

    #[test]
    fn full_triangle_attaches_one_triangle() {
        let s = Complex::full_simplex(&["a", "b", "c"]);
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        let c2 = loc.tower.colorings().color(2, &Simplex::plain(&[0, 1, 2]).unwrap()).unwrap();
        assert_eq!(c2, 0);
        let top = Simplex::new([v(0, &[0, c2]), v(1, &[0, c2]), v(2, &[0, c2])]).unwrap();
        assert!(loc.complex.contains(&top));
        assert!(!loc.tower.prime(2).unwrap().contains(&top));
        assert_eq!(loc.complex.dim(), Some(2));
        assert!(loc.tower.check_structure().is_empty());
    }

    #[test]
    fn ray_bound_must_exceed_colors() {
        let s = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        let err = localize(&s, &RayPolicy::Explicit(vec![2])).unwrap_err();
        assert_eq!(err, Error::RayBoundTooSmall { level: 1, bound: 2, max_color: 2 });
        assert!(localize(&s, &RayPolicy::Explicit(vec![3])).is_ok());
    }

    #[test]
    fn closure_assertion_catches_bad_input() {
        let s = edge();
        let coloring: Coloring = [(Simplex::plain(&[0, 1]).unwrap(), 5)].into_iter().collect();
        let t0 = s.skeleton(0);
        // Without the ray, the attached edge at height 5 has no faces.
        let err = build_t_next(t0, &s, 0, &coloring).unwrap_err();
        assert!(matches!(err, Error::ClosureAssertion { .. }));
    }

    #[test]
    fn projection_to_a_smaller_target_fails() {
        let s = edge();
        let loc = localize(&s, &RayPolicy::Default).unwrap();
        assert!(matches!(projection_map(&loc.complex, &s.skeleton(0)), Err(Error::NotSimplicial { .. })));
        let cyl = s.product(&ray_segment(0, 3).unwrap()).unwrap();
        assert_eq!(projection_map(&cyl, &s).unwrap().image_complex(), s);
    }

    #[test]
    fn rejects_constructed_input() {
        let lifted = edge().append_coord(0);
        assert_eq!(localize(&lifted, &RayPolicy::Default).unwrap_err(), Error::NotPlain(1));
    }

    #[test]
    fn empty_input() {
        let empty = Complex::new(Vec::<String>::new(), 0);
        let loc = localize(&empty, &RayPolicy::Default).unwrap();
        assert!(loc.complex.is_empty());
    }
}
