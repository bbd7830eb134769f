//! Oracles and generators.

mod collapse;
mod fibers;
mod generate;
mod lemmas;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::Complex;

pub use collapse::{collapse_indexed, collapse_onto, collapse_to_point, CollapseOutcome, CollapseReport};
pub use fibers::{
    check_pseudofibration, check_pseudofibration_with, surjective_on_simplices, FiberEntry, FiberReport, FiberStatus,
    DEFAULT_RESTARTS,
};
pub use generate::{cone, fixture, generate, shelled_tree, GeneratorSpec, FIXTURES};
pub use lemmas::{check_telescope_lemmas, TelescopeLemmaReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub bound: usize,
    pub vertices: usize,
    pub max_degree: usize,
    /// degree -> number of vertices
    pub histogram: BTreeMap<usize, usize>,
    /// Labels of vertices in more than `bound` edges.
    pub violators: Vec<String>,
}

impl DegreeAudit {
    pub fn passes(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Exact per-vertex edge counts against the bound `m`.
pub fn degree_audit(c: &Complex, m: usize) -> DegreeAudit {
    let degrees = c.edge_degrees();
    let mut histogram = BTreeMap::new();
    for &d in degrees.values() {
        *histogram.entry(d).or_insert(0) += 1;
    }
    DegreeAudit {
        bound: m,
        vertices: degrees.len(),
        max_degree: degrees.values().copied().max().unwrap_or(0),
        histogram,
        violators: degrees.iter().filter(|(_, &d)| d > m).map(|(v, _)| c.label(v)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneSidedAudit {
    pub bound: usize,
    /// Largest `#{y' >= y : {y, y'} ∈ C}`, counting `y` itself.
    pub max_up: usize,
    /// Largest `#{y' <= y : {y, y'} ∈ C}`, counting `y` itself.
    pub max_down: usize,
}

impl OneSidedAudit {
    pub fn passes(&self) -> bool {
        self.max_up <= self.bound && self.max_down <= self.bound
    }
}

/// Counts the neighbours on each side of every vertex in the linear order.
pub fn one_sided_audit(c: &Complex, k: usize) -> OneSidedAudit {
    let mut up: BTreeMap<_, usize> = c.vertices().map(|v| (v.clone(), 1)).collect();
    let mut down = up.clone();
    for e in c.simplices_of_dim(1) {
        let [lo, hi] = [&e.vertices()[0], &e.vertices()[1]];
        *up.get_mut(lo).expect("vertex") += 1;
        *down.get_mut(hi).expect("vertex") += 1;
    }
    OneSidedAudit {
        bound: k,
        max_up: up.values().copied().max().unwrap_or(0),
        max_down: down.values().copied().max().unwrap_or(0),
    }
}
