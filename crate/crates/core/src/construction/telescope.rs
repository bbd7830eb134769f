use crate::complex::{ray_segment, Complex};
use crate::{Error, Result};

/// The telescope `𝒯_n(T)` of a level-`n` complex.
///
/// `𝒯_0(T) = T` and `𝒯_n(T) = (p_1(T) × N) ∪ (𝒯_{n-1}(p_1(T)) × {0})`, where the
/// ray in coordinate `j` is truncated to `0..=ray_bounds[j - 1]`.
///
/// Each level of the recursion requires `T ⊆ p_1(T) × N`: every simplex is a
/// chain whose last-coordinate set is a ray simplex `{i}` or `{i, i+1}` lying
/// inside the truncation.
pub fn telescope(t: &Complex, n: usize, ray_bounds: &[u32]) -> Result<Complex> {
    if t.level() != n {
        return Err(Error::LevelMismatch { expected: n, found: t.level() });
    }
    if n == 0 {
        return Ok(t.clone());
    }
    let bound = *ray_bounds.get(n - 1).ok_or(Error::MissingRayBound(n))?;
    check_precondition(t, bound)?;
    let base = t.project(1);
    let mut out = base.product(&ray_segment(0, bound)?)?;
    out.extend_from(&telescope(&base, n - 1, ray_bounds)?.append_coord(0))?;
    Ok(out)
}

/// Verifies `T ⊆ p_1(T) × N|{0..=bound}` for the last coordinate.
pub fn check_precondition(t: &Complex, bound: u32) -> Result<()> {
    let last = t.level().checked_sub(1).ok_or(Error::LevelMismatch { expected: 1, found: 0 })?;
    for s in t.iter() {
        let fail = |reason: &str| Error::TelescopePrecondition { simplex: t.describe(s), reason: reason.to_string() };
        if !s.is_chain() {
            return Err(fail("vertices do not form a chain"));
        }
        let lo = s.vertices().iter().map(|v| v.coords[last]).min().expect("nonempty");
        let hi = s.vertices().iter().map(|v| v.coords[last]).max().expect("nonempty");
        if hi > lo + 1 {
            return Err(fail("last-coordinate set is not a ray simplex"));
        }
        if hi > bound {
            return Err(fail("last coordinate exceeds the ray truncation"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{CoordVertex, Simplex};
    use crate::homology::homology;

    fn level1(simplices: &[&[(u32, u32)]]) -> Complex {
        let mut c = Complex::new(vec!["a".to_string(), "b".to_string(), "c".to_string()], 1);
        for s in simplices {
            c.insert_closed(Simplex::new(s.iter().map(|&(b, i)| CoordVertex::new(b, &[i]))).unwrap());
        }
        c
    }

    #[test]
    fn level_zero_is_identity() {
        let tri = Complex::full_simplex(&["a", "b", "c"]);
        assert_eq!(telescope(&tri, 0, &[]).unwrap(), tri);
    }

    #[test]
    fn single_vertex_becomes_truncated_ray() {
        let t = level1(&[&[(0, 0)]]);
        let tel = telescope(&t, 1, &[4]).unwrap();
        // p_1(T) × N ∪ p_1(T) × {0}: the ray at x.
        let expected = Complex::full_simplex(&["a", "b", "c"])
            .induced_on_bases(&[0])
            .product(&ray_segment(0, 4).unwrap())
            .unwrap();
        assert_eq!(tel, expected);
        assert_eq!(tel.counts(), vec![5, 4]);
    }

    #[test]
    fn dimension_grows_by_at_most_one() {
        let t = level1(&[&[(0, 2), (1, 2)], &[(1, 2), (1, 3)]]);
        let tel = telescope(&t, 1, &[5]).unwrap();
        assert!(t.is_subcomplex_of(&tel));
        assert_eq!(t.dim(), Some(1));
        assert!(tel.dim().unwrap() <= 2);
        // Homotopy equivalent to the projected edge.
        assert!(homology(&tel, true).is_trivial());
    }

    #[test]
    fn rejects_gapped_last_coordinate() {
        let t = level1(&[&[(0, 0), (0, 2)]]);
        assert!(matches!(telescope(&t, 1, &[5]), Err(Error::TelescopePrecondition { .. })));
    }

    #[test]
    fn rejects_out_of_bound() {
        let t = level1(&[&[(0, 6)]]);
        assert!(matches!(telescope(&t, 1, &[5]), Err(Error::TelescopePrecondition { .. })));
        assert_eq!(telescope(&t, 1, &[]), Err(Error::MissingRayBound(1)));
    }

    #[test]
    fn level_two_explicit_form() {
        // 𝒯_2(T) = p_1(T) × N ∪ p_2(T) × N × {0} ∪ p_2(T) × {0}².
        let mut t = Complex::new(vec!["a".to_string(), "b".to_string()], 2);
        t.insert_closed(Simplex::new([CoordVertex::new(0, &[1, 1]), CoordVertex::new(1, &[1, 2])]).unwrap());
        let bounds = [3, 3];
        let tel = telescope(&t, 2, &bounds).unwrap();
        let ray = ray_segment(0, 3).unwrap();
        let p1 = t.project(1);
        let p2 = t.project(2);
        let mut explicit = p1.product(&ray).unwrap();
        explicit.extend_from(&p2.product(&ray).unwrap().append_coord(0)).unwrap();
        explicit.extend_from(&p2.append_coord(0).append_coord(0)).unwrap();
        assert_eq!(tel, explicit);
    }
}
