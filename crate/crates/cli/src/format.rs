//! The JSON complex file.
//!
//! ```json
//! {
//!   "vertices": ["a", "b", "c"],
//!   "maximal_simplices": [
//!     [0, 1],
//!     [1, 2]
//!   ]
//! }
//! ```
//!
//! `vertices` lists the labels of `X` in their linear order. For a plain
//! complex the simplices index into `vertices`. A constructed complex carries
//! a `metadata` block whose `points` are its vertices `(base; coords; stage)`,
//! and its simplices index into `points` instead. The complex is the closure
//! of the listed simplices; an optional `simplices` list is read the same way
//! unless `--strict` asks for it to be taken literally.
//!
//! Writing is canonical: points in vertex order, simplices in canonical order,
//! one simplex per line. Reading a written file gives back the same complex.

use std::fmt::Write as _;
use std::sync::Arc;

use locfin::complex::{Coords, Simplex};
use locfin::construction::Tower;
use locfin::{Complex, CoordVertex};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub maximal_simplices: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub level: usize,
    pub points: Vec<Point>,
    /// `R_1, R_2, ...` of the tower that produced the complex.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ray_bounds: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub colorings: Vec<ColoringRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub base: u32,
    pub coords: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<u32>,
}

/// Color of one simplex of `S`, given by base indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringRecord {
    pub dim: usize,
    pub simplex: Vec<u32>,
    pub color: u32,
}

/// Something wrong with the file itself, as opposed to the complex it describes.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed complex file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("simplex {index} of {list} is empty")]
    EmptySimplex { list: &'static str, index: usize },
    #[error("simplex {index} of {list} refers to vertex {vertex}, but only {count} are listed")]
    OutOfRange { list: &'static str, index: usize, vertex: u32, count: usize },
    #[error("simplex {index} of {list} repeats a vertex")]
    Repeated { list: &'static str, index: usize },
    #[error("point {index} has {found} coordinates, expected {level}")]
    PointLevel { index: usize, found: usize, level: usize },
    #[error("point {index} has base {base}, but only {count} vertices are listed")]
    PointBase { index: usize, base: u32, count: usize },
    #[error("point {0} is listed twice")]
    DuplicatePoint(usize),
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the complex: the closure of every listed simplex, or with
    /// `strict` the literal set of `simplices` (or `maximal_simplices` when
    /// no full list is given).
    pub fn to_complex(&self, strict: bool) -> Result<Complex, FormatError> {
        let points = self.points()?;
        let level = self.metadata.as_ref().map_or(0, |m| m.level);
        let universe: Arc<[String]> = self.vertices.clone().into();
        let mut listed = self.resolve("maximal_simplices", &self.maximal_simplices, &points)?;
        if let Some(all) = &self.simplices {
            let full = self.resolve("simplices", all, &points)?;
            listed = if strict { full } else { listed.into_iter().chain(full).collect() };
        }
        if strict {
            return Ok(Complex::from_raw(universe, level, listed));
        }
        Ok(Complex::closure_of_simplices(universe, level, listed).expect("points checked"))
    }

    fn points(&self) -> Result<Vec<CoordVertex>, FormatError> {
        let count = self.vertices.len();
        let Some(meta) = &self.metadata else {
            return Ok((0..count as u32).map(CoordVertex::plain).collect());
        };
        let mut out = Vec::with_capacity(meta.points.len());
        for (index, p) in meta.points.iter().enumerate() {
            if p.coords.len() != meta.level {
                return Err(FormatError::PointLevel { index, found: p.coords.len(), level: meta.level });
            }
            if p.base as usize >= count {
                return Err(FormatError::PointBase { index, base: p.base, count });
            }
            out.push(CoordVertex { base: p.base, coords: Coords::from_slice(&p.coords), stage: p.stage });
        }
        let mut sorted: Vec<(&CoordVertex, usize)> = out.iter().zip(0..).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(FormatError::DuplicatePoint(w[1].1));
        }
        Ok(out)
    }

    fn resolve(
        &self,
        list: &'static str,
        simplices: &[Vec<u32>],
        points: &[CoordVertex],
    ) -> Result<Vec<Simplex>, FormatError> {
        simplices
            .iter()
            .enumerate()
            .map(|(index, ids)| {
                if ids.is_empty() {
                    return Err(FormatError::EmptySimplex { list, index });
                }
                let vertices = ids
                    .iter()
                    .map(|&vertex| {
                        points.get(vertex as usize).cloned().ok_or(FormatError::OutOfRange {
                            list,
                            index,
                            vertex,
                            count: points.len(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Simplex::new(vertices).map_err(|_| FormatError::Repeated { list, index })
            })
            .collect()
    }

    /// Canonical file for `c`; `full` also lists every simplex.
    pub fn from_complex(c: &Complex, full: bool) -> Self {
        let plain = c.level() == 0 && c.vertices().all(|v| v.stage.is_none());
        let vertices: Vec<CoordVertex> = c.vertices().cloned().collect();
        let id = |v: &CoordVertex| {
            if plain {
                v.base
            } else {
                vertices.binary_search(v).expect("vertex of the complex") as u32
            }
        };
        let ids = |s: &Simplex| s.vertices().iter().map(id).collect::<Vec<u32>>();
        let metadata = (!plain).then(|| Metadata {
            level: c.level(),
            points: vertices
                .iter()
                .map(|v| Point { base: v.base, coords: v.coords.to_vec(), stage: v.stage })
                .collect(),
            ray_bounds: Vec::new(),
            colorings: Vec::new(),
        });
        Self {
            vertices: c.universe().to_vec(),
            maximal_simplices: c.maximal_simplices().into_iter().map(ids).collect(),
            simplices: full.then(|| c.iter().map(ids).collect()),
            metadata,
        }
    }

    /// Adds the ray bounds and colorings of `tower`.
    pub fn with_tower(mut self, tower: &Tower) -> Self {
        let meta = self.metadata.get_or_insert_with(|| Metadata {
            level: 0,
            points: (0..self.vertices.len() as u32)
                .map(|base| Point { base, coords: Vec::new(), stage: None })
                .collect(),
            ray_bounds: Vec::new(),
            colorings: Vec::new(),
        });
        meta.ray_bounds = tower.ray_bounds().to_vec();
        meta.colorings = tower
            .colorings()
            .entries()
            .into_iter()
            .map(|e| ColoringRecord { dim: e.dim, simplex: e.simplex, color: e.color })
            .collect();
        self
    }

    /// Pretty JSON with one simplex, point or coloring per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = write!(out, "  \"vertices\": {}", compact(&self.vertices));
        let _ = write!(out, ",\n  \"maximal_simplices\": {}", lines(&self.maximal_simplices, "  "));
        if let Some(all) = &self.simplices {
            let _ = write!(out, ",\n  \"simplices\": {}", lines(all, "  "));
        }
        if let Some(meta) = &self.metadata {
            let _ = write!(out, ",\n  \"metadata\": {{\n    \"level\": {}", meta.level);
            let _ = write!(out, ",\n    \"points\": {}", lines(&meta.points, "    "));
            if !meta.ray_bounds.is_empty() {
                let _ = write!(out, ",\n    \"ray_bounds\": {}", compact(&meta.ray_bounds));
            }
            if !meta.colorings.is_empty() {
                let _ = write!(out, ",\n    \"colorings\": {}", lines(&meta.colorings, "    "));
            }
            out.push_str("\n  }");
        }
        out.push_str("\n}\n");
        out
    }
}

pub fn compact<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// A JSON array with one compact element per line.
pub fn lines<T: Serialize>(items: &[T], indent: &str) -> String {
    if items.is_empty() {
        return "[]".to_string();
    }
    let body: Vec<String> = items.iter().map(|x| format!("{indent}  {}", compact(x))).collect();
    format!("[\n{}\n{indent}]", body.join(",\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use locfin::construction::{localize, RayPolicy};
    use locfin::verify::fixture;

    #[test]
    fn plain_round_trip() {
        let c = fixture("torus7").unwrap();
        let text = ComplexFile::from_complex(&c, false).to_json();
        let back = ComplexFile::parse(&text).unwrap();
        assert_eq!(back.to_complex(false).unwrap(), c);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn constructed_round_trip() {
        let loc = localize(&fixture("circle_3").unwrap(), &RayPolicy::Default).unwrap();
        let file = ComplexFile::from_complex(&loc.complex, true).with_tower(&loc.tower);
        let text = file.to_json();
        let back = ComplexFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_complex(false).unwrap(), loc.complex);
        assert_eq!(back.to_complex(true).unwrap(), loc.complex);
        assert_eq!(back.metadata.unwrap().ray_bounds, loc.tower.ray_bounds());
    }

    #[test]
    fn empty_complex() {
        let file = ComplexFile::parse(r#"{"vertices": []}"#).unwrap();
        let c = file.to_complex(false).unwrap();
        assert!(c.is_empty());
        assert_eq!(
            ComplexFile::from_complex(&c, false).to_json(),
            "{\n  \"vertices\": [],\n  \"maximal_simplices\": []\n}\n"
        );
    }

    #[test]
    fn strict_keeps_the_literal_list() {
        let file = ComplexFile::parse(r#"{"vertices": ["a", "b"], "simplices": [[0, 1]]}"#).unwrap();
        assert_eq!(file.to_complex(false).unwrap().len(), 3);
        let literal = file.to_complex(true).unwrap();
        assert_eq!(literal.len(), 1);
        assert!(!literal.validate(true).is_valid());
    }

    #[test]
    fn malformed_files() {
        let bad = |t: &str| ComplexFile::parse(t).and_then(|f| f.to_complex(false)).unwrap_err();
        assert!(matches!(
            bad(r#"{"vertices": ["a"], "maximal_simplices": [[0, 1]]}"#),
            FormatError::OutOfRange { vertex: 1, .. }
        ));
        assert!(matches!(bad(r#"{"vertices": ["a"], "maximal_simplices": [[]]}"#), FormatError::EmptySimplex { .. }));
        assert!(matches!(
            bad(r#"{"vertices": ["a", "b"], "maximal_simplices": [[1, 1]]}"#),
            FormatError::Repeated { .. }
        ));
        assert!(matches!(bad(r#"{"vertices": ["a"], "maximal": []}"#), FormatError::Json(_)));
        assert!(matches!(
            bad(r#"{"vertices": ["a"], "metadata": {"level": 1, "points": [{"base": 0, "coords": []}]}}"#),
            FormatError::PointLevel { .. }
        ));
        assert!(matches!(
            bad(
                r#"{"vertices": ["a"], "metadata": {"level": 0, "points": [{"base": 0, "coords": []}, {"base": 0, "coords": []}]}}"#
            ),
            FormatError::DuplicatePoint(1)
        ));
    }
}
