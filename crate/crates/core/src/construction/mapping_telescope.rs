use crate::complex::{ray_segment, Complex, CoordVertex, SimplicialMap};
use crate::{Error, Result};

use super::tower::Tower;

/// A finite mapping telescope with its projection to the base complex.
#[derive(Clone, Debug)]
pub struct MappingTelescope {
    pub complex: Complex,
    pub projection: SimplicialMap,
}

/// Mapping telescope of the tower `T_0 -> T_1 -> ... -> T_n`.
pub fn mapping_telescope(tower: &Tower) -> Result<MappingTelescope> {
    mapping_telescope_of(tower.levels(), tower.input())
}

/// `⋃_{k<n} i^k(T_k) × N|{k,k+1}  ∪  i^n(T_n) × {n}` for a finite tower.
///
/// Stage `k` is embedded by zero-padding coordinates to the top level and
/// must be contained in stage `k + 1`. The cylinder coordinate is stored as
/// the vertex stage. The projection drops coordinates and stage, landing in
/// `base`.
pub fn mapping_telescope_of(stages: &[Complex], base: &Complex) -> Result<MappingTelescope> {
    let top = stages.len().checked_sub(1).ok_or(Error::EmptyTower)?;
    let level = stages.iter().map(Complex::level).max().unwrap_or(0);
    let padded: Vec<Complex> = stages.iter().map(|c| c.pad_to(level)).collect();
    for k in 0..top {
        if !padded[k].is_subcomplex_of(&padded[k + 1]) {
            return Err(Error::TowerInclusion { stage: k, next: k + 1 });
        }
    }
    let to_stage = |v: &CoordVertex| {
        let mut w = v.dropped(1);
        w.stage = Some(v.coords[level]);
        w
    };
    let mut complex = Complex::new(base.universe().clone(), level);
    for (k, stage) in padded.iter().enumerate().take(top) {
        let cylinder = stage.product(&ray_segment(k as u32, k as u32 + 1)?)?;
        complex.extend_from(&cylinder.map_vertices(level, to_stage))?;
    }
    complex.extend_from(&padded[top].map_vertices(level, |v| v.clone().with_stage(top as u32)))?;
    let projection = SimplicialMap::from_fn(complex.clone(), base.clone(), CoordVertex::base_only)?;
    Ok(MappingTelescope { complex, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::tower::{localize, RayPolicy};
    use crate::homology::homology;

    #[test]
    fn tower_of_points_is_a_path() {
        let pt = Complex::full_simplex(&["x"]);
        let stages = [pt.clone(), pt.append_coord(0), pt.append_coord(0).append_coord(0)];
        let mt = mapping_telescope_of(&stages, &pt).unwrap();
        assert_eq!(mt.complex.counts(), vec![3, 2]);
        assert!(mt.complex.validate(true).is_valid());
        assert!(mt.complex.edge_degrees().values().all(|&d| d <= 2));
    }

    #[test]
    fn constant_tower_keeps_homology() {
        let circle = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        let mt = mapping_telescope_of(&[circle.clone(), circle.clone()], &circle).unwrap();
        assert_eq!(homology(&mt.complex, false), homology(&circle, false));
    }

    #[test]
    fn zero_dimensional_tower_is_the_base() {
        let pts = Complex::closure_of_indices(&[vec![0], vec![1]], vec!["a".into(), "b".into()]).unwrap();
        let loc = localize(&pts, &RayPolicy::Default).unwrap();
        let mt = mapping_telescope(&loc.tower).unwrap();
        assert_eq!(mt.complex.len(), 2);
        assert_eq!(mt.projection.image_complex(), pts);
    }

    #[test]
    fn errors() {
        let base = Complex::full_simplex(&["a", "b"]);
        assert!(matches!(mapping_telescope_of(&[], &base), Err(Error::EmptyTower)));
        let not_nested = [base.clone(), base.skeleton(0)];
        assert_eq!(mapping_telescope_of(&not_nested, &base).unwrap_err(), Error::TowerInclusion { stage: 0, next: 1 });
    }

    #[test]
    fn localized_circle_telescope() {
        let circle = Complex::full_simplex(&["a", "b", "c"]).skeleton(1);
        let loc = localize(&circle, &RayPolicy::Default).unwrap();
        let mt = mapping_telescope(&loc.tower).unwrap();
        assert_eq!(homology(&mt.complex, false), homology(&circle, false));
        assert!(mt.complex.validate(true).is_valid());
    }
}
