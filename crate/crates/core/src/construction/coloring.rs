use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{Complex, Simplex};
use crate::{Error, Result};

/// Colors of the `m`-simplices of one complex.
pub type Coloring = BTreeMap<Simplex, u32>;

/// First-fit coloring of the intersection graph on `m`-simplices.
///
/// Simplices are visited in canonical order and each takes the least color not
/// used by an earlier simplex sharing a vertex with it.
pub fn first_fit_coloring(c: &Complex, m: usize) -> Result<Coloring> {
    if m == 0 {
        return Err(Error::ColoringDimension);
    }
    let mut by_vertex: HashMap<_, Vec<u32>> = HashMap::new();
    let mut out = Coloring::new();
    for s in c.simplices_of_dim(m) {
        let mut used: Vec<u32> = s.vertices().iter().filter_map(|v| by_vertex.get(v)).flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let color = used.iter().enumerate().find(|&(i, &c)| i as u32 != c).map_or(used.len() as u32, |(i, _)| i as u32);
        for v in s.vertices() {
            by_vertex.entry(v.clone()).or_default().push(color);
        }
        out.insert(s.clone(), color);
    }
    Ok(out)
}

/// Distinct intersecting simplices receive distinct colors.
pub fn is_proper(coloring: &Coloring) -> bool {
    let mut by_vertex: HashMap<_, Vec<(&Simplex, u32)>> = HashMap::new();
    for (s, &c) in coloring {
        for v in s.vertices() {
            by_vertex.entry(v).or_default().push((s, c));
        }
    }
    by_vertex.values().all(|list| {
        let mut colors: Vec<u32> = list.iter().map(|&(_, c)| c).collect();
        colors.sort_unstable();
        colors.windows(2).all(|w| w[0] != w[1])
    })
}

pub fn max_color(coloring: &Coloring) -> Option<u32> {
    coloring.values().copied().max()
}

/// Per-dimension colorings `c_m` for `m >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoringTable {
    by_dim: BTreeMap<usize, Coloring>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringEntry {
    pub dim: usize,
    pub simplex: Vec<u32>,
    pub color: u32,
}

impl ColoringTable {
    pub fn insert(&mut self, m: usize, coloring: Coloring) {
        self.by_dim.insert(m, coloring);
    }

    pub fn get(&self, m: usize) -> Option<&Coloring> {
        self.by_dim.get(&m)
    }

    pub fn color(&self, m: usize, s: &Simplex) -> Option<u32> {
        self.by_dim.get(&m)?.get(s).copied()
    }

    pub fn max_color(&self, m: usize) -> Option<u32> {
        self.by_dim.get(&m).and_then(max_color)
    }

    pub fn is_proper(&self) -> bool {
        self.by_dim.values().all(is_proper)
    }

    /// Flat listing for reports: simplices by base index.
    pub fn entries(&self) -> Vec<ColoringEntry> {
        self.by_dim
            .iter()
            .flat_map(|(&dim, col)| {
                col.iter().map(move |(s, &color)| ColoringEntry {
                    dim,
                    simplex: s.vertices().iter().map(|v| v.base).collect(),
                    color,
                })
            })
            .collect()
    }
}
