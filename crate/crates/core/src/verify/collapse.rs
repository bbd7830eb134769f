//! Greedy elementary collapses.
//!
//! A free pair `(σ, τ)` is a simplex `σ` lying in exactly one other simplex
//! `τ`; removing both is an elementary collapse. Attempt 0 always takes the
//! free faces in canonical order, later attempts pick uniformly at random from
//! a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{Complex, IndexedComplex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseOutcome {
    Collapsible,
    /// No attempt reached the goal. Inconclusive: another order might.
    NotCollapsed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub outcome: CollapseOutcome,
    pub attempts: usize,
    pub seed: u64,
    /// Fewest simplices left by any attempt.
    pub remaining: usize,
    /// Elementary collapses in the best attempt.
    pub collapses: usize,
}

impl CollapseReport {
    pub fn collapsible(&self) -> bool {
        self.outcome == CollapseOutcome::Collapsible
    }
}

/// Face lattice of an indexed complex with global simplex ids.
struct Lattice {
    dims: Vec<u8>,
    facets: Vec<Vec<u32>>,
    cofaces: Vec<Vec<u32>>,
}

impl Lattice {
    fn new(c: &IndexedComplex) -> Self {
        let counts = c.counts();
        let offsets: Vec<usize> = counts
            .iter()
            .scan(0, |acc, &n| {
                let start = *acc;
                *acc += n;
                Some(start)
            })
            .collect();
        let total = c.total();
        let mut dims = Vec::with_capacity(total);
        let mut facets = Vec::with_capacity(total);
        let mut cofaces = vec![Vec::new(); total];
        for d in 0..counts.len() {
            for s in c.simplices(d) {
                let id = dims.len() as u32;
                dims.push(d as u8);
                let fs: Vec<u32> = if d == 0 {
                    Vec::new()
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            (offsets[d - 1] + c.index_of(&face).expect("closed complex")) as u32
                        })
                        .collect()
                };
                for &f in &fs {
                    cofaces[f as usize].push(id);
                }
                facets.push(fs);
            }
        }
        Self { dims, facets, cofaces }
    }

    /// Collapses with `protected` simplices never removed; returns
    /// `(remaining, collapses)`.
    fn run(&self, protected: &[bool], rng: Option<&mut ChaCha8Rng>) -> (usize, usize) {
        let n = self.dims.len();
        let mut alive = vec![true; n];
        let mut live_cofaces: Vec<u32> = self.cofaces.iter().map(|c| c.len() as u32).collect();
        let mut candidates: Vec<u32> =
            (0..n as u32).filter(|&s| live_cofaces[s as usize] == 1 && !protected[s as usize]).collect();
        let mut rng = rng;
        let mut remaining = n;
        let mut collapses = 0;
        let mut cursor_order = true;
        while !candidates.is_empty() {
            let pick = match rng.as_deref_mut() {
                Some(r) => r.gen_range(0..candidates.len()),
                None => {
                    if cursor_order {
                        candidates.reverse();
                        cursor_order = false;
                    }
                    candidates.len() - 1
                }
            };
            let sigma = candidates.swap_remove(pick) as usize;
            if !alive[sigma] || live_cofaces[sigma] != 1 || protected[sigma] {
                continue;
            }
            let tau = *self.cofaces[sigma].iter().find(|&&t| alive[t as usize]).expect("one live coface") as usize;
            alive[sigma] = false;
            alive[tau] = false;
            remaining -= 2;
            collapses += 1;
            for &f in self.facets[tau].iter().chain(&self.facets[sigma]) {
                let f = f as usize;
                if !alive[f] {
                    continue;
                }
                live_cofaces[f] -= 1;
                if live_cofaces[f] == 1 && !protected[f] {
                    candidates.push(f as u32);
                }
            }
        }
        (remaining, collapses)
    }
}

fn attempts(c: &IndexedComplex, protected: &[bool], goal: usize, restarts: usize, seed: u64) -> CollapseReport {
    let lattice = Lattice::new(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (usize::MAX, 0);
    let total = restarts.max(1);
    for attempt in 0..total {
        let result = if attempt == 0 { lattice.run(protected, None) } else { lattice.run(protected, Some(&mut rng)) };
        if result.0 < best.0 {
            best = result;
        }
        if result.0 == goal {
            return CollapseReport {
                outcome: CollapseOutcome::Collapsible,
                attempts: attempt + 1,
                seed,
                remaining: result.0,
                collapses: result.1,
            };
        }
    }
    CollapseReport {
        outcome: CollapseOutcome::NotCollapsed,
        attempts: total,
        seed,
        remaining: best.0,
        collapses: best.1,
    }
}

/// Tries to collapse `c` to a single vertex in at most `restarts` attempts.
pub fn collapse_to_point(c: &Complex, restarts: usize, seed: u64) -> Result<CollapseReport> {
    collapse_indexed(&c.indexed().0, restarts, seed)
}

pub fn collapse_indexed(c: &IndexedComplex, restarts: usize, seed: u64) -> Result<CollapseReport> {
    if c.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(attempts(c, &vec![false; c.total()], 1, restarts, seed))
}

/// Tries to collapse `c` onto the subcomplex spanned by the simplices for
/// which `keep` holds; succeeds iff exactly those remain.
pub fn collapse_onto(
    c: &IndexedComplex,
    keep: impl Fn(usize, &[u32]) -> bool,
    restarts: usize,
    seed: u64,
) -> CollapseReport {
    let protected: Vec<bool> = (0..c.counts().len())
        .flat_map(|d| c.simplices(d).iter().map(move |s| (d, s)))
        .map(|(d, s)| keep(d, s))
        .collect();
    let goal = protected.iter().filter(|&&p| p).count();
    attempts(c, &protected, goal, restarts, seed)
}
