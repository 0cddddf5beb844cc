//! Deciding whether a normal surface in a knot exterior is an
//! essential disk or an essential annulus. Shape is read off the
//! reconstructed complex; essentiality of the boundary reduces to
//! parity against the generators of the boundary torus it lies on.

use super::curves::{boundary_curve, is_essential_curve, torus_h1_generators};
use super::reconstruct::reconstruct;
use super::{NormalError, NormalSurfaceVector};
use crate::exterior::{BoundaryLabel, Exterior};
use crate::surface::{boundary_components, BoundaryComponent};

fn components_with_labels(
    ext: &Exterior,
) -> Result<Vec<(BoundaryComponent, BoundaryLabel)>, NormalError> {
    let comps = boundary_components(&ext.tri, &ext.skeleton)
        .expect("exterior boundary is unpinched");
    Ok(comps
        .into_iter()
        .map(|comp| {
            let mut labels = comp
                .face_slots
                .iter()
                .map(|&slot| ext.label_of_slot(slot).expect("boundary slot is labeled"));
            let first = labels.next().expect("boundary component is nonempty");
            assert!(labels.all(|l| l == first), "component with mixed labels");
            (comp, first)
        })
        .collect())
}

/// A connected surface with boundary and Euler characteristic one is a
/// disk; it is essential when its boundary circle does not bound on
/// the torus it lies in.
pub fn is_essential_disk(
    ext: &Exterior,
    x: &NormalSurfaceVector,
    max_disks: u64,
) -> Result<bool, NormalError> {
    let s = reconstruct(&ext.tri, x, max_disks)?;
    if s.complex.is_empty()
        || !s.complex.connected()
        || s.complex.is_closed()
        || s.complex.euler() != 1
    {
        return Ok(false);
    }
    for (comp, _) in components_with_labels(ext)? {
        let c = boundary_curve(&comp, x);
        if c.is_zero() {
            continue;
        }
        let (m, l) = torus_h1_generators(&comp, &ext.skeleton)?;
        return is_essential_curve(&comp, &c, &m, &l);
    }
    Ok(false)
}

/// A connected orientable surface with boundary and Euler
/// characteristic zero is an annulus. To be essential here it must
/// span the exterior, one circle on the frontier torus and one on the
/// original boundary, with the original circle essential there.
pub fn is_essential_annulus(
    ext: &Exterior,
    x: &NormalSurfaceVector,
    max_disks: u64,
) -> Result<bool, NormalError> {
    let s = reconstruct(&ext.tri, x, max_disks)?;
    if s.complex.is_empty()
        || !s.complex.connected()
        || s.complex.is_closed()
        || !s.complex.orientable()
        || s.complex.euler() != 0
    {
        return Ok(false);
    }
    let mut on_frontier = false;
    let mut original = None;
    for (comp, label) in components_with_labels(ext)? {
        let c = boundary_curve(&comp, x);
        if c.is_zero() {
            continue;
        }
        match label {
            BoundaryLabel::Frontier => on_frontier = true,
            BoundaryLabel::Original => original = Some((comp, c)),
        }
    }
    let (Some((comp, c)), true) = (original, on_frontier) else {
        return Ok(false);
    };
    let (m, l) = torus_h1_generators(&comp, &ext.skeleton)?;
    match is_essential_curve(&comp, &c, &m, &l) {
        // A spanning annulus has one circle per side; several circles
        // on the original torus mean a different surface entirely.
        Err(NormalError::CurveNotConnected) => Ok(false),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::knot_exterior;
    use crate::fixtures;
    use crate::normal::is_admissible;
    use crate::normal::matching_matrix;
    use crate::normal::satisfies_matching;
    use crate::triangulation::loops::KnotLoop;

    const BUDGET: u64 = 1 << 20;

    fn fan_exterior() -> Exterior {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        knot_exterior(&b.triangulation, &knot).unwrap()
    }

    #[test]
    fn boundary_vertex_link_is_no_essential_disk() {
        let ext = fan_exterior();
        // A boundary vertex link is a disk, but its circle bounds.
        let class = (0..ext.skeleton.vertex_count())
            .find(|&v| {
                let x = NormalSurfaceVector::vertex_link(&ext.skeleton, v);
                let s = reconstruct(&ext.tri, &x, BUDGET).unwrap();
                !s.complex.is_closed() && s.complex.euler() == 1
            })
            .expect("some boundary vertex");
        let x = NormalSurfaceVector::vertex_link(&ext.skeleton, class);
        let m = matching_matrix(&ext.tri);
        assert!(satisfies_matching(&m, &x));
        assert_eq!(is_essential_disk(&ext, &x, BUDGET), Ok(false));
        assert_eq!(is_essential_annulus(&ext, &x, BUDGET), Ok(false));
    }

    #[test]
    fn interior_vertex_link_is_neither() {
        // The core exterior keeps no interior vertices, so use a loop
        // whose exterior needs a subdivision and gains barycenters.
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let e = |a, bb| b.edge_between(&sk, a, bb).unwrap();
        let edges = vec![e((1, 0), (2, 1)), e((2, 0), (3, 1)), e((3, 0), (1, 0))];
        let knot = KnotLoop::new(&sk, edges).unwrap();
        let ext = knot_exterior(&b.triangulation, &knot).unwrap();
        assert!(ext.subdivisions > 0);
        let class = (0..ext.skeleton.vertex_count())
            .find(|&v| {
                let x = NormalSurfaceVector::vertex_link(&ext.skeleton, v);
                reconstruct(&ext.tri, &x, BUDGET).unwrap().complex.is_closed()
            })
            .expect("some interior vertex");
        let x = NormalSurfaceVector::vertex_link(&ext.skeleton, class);
        assert_eq!(is_essential_disk(&ext, &x, BUDGET), Ok(false));
        assert_eq!(is_essential_annulus(&ext, &x, BUDGET), Ok(false));
    }

    #[test]
    fn vertical_annulus_is_essential() {
        let ext = fan_exterior();
        assert_eq!(ext.subdivisions, 0);
        // A vertical annulus over a disk arc running from the frontier
        // circle to the rim: the arc cuts corner 1 of disk triangle
        // [1,2,4] and corner 4 of [1,6,4], so each prism carries two
        // triangles and one quad along its staircase.
        let at = |ambient: usize| {
            ext.ambient_tets
                .iter()
                .position(|&a| a == ambient)
                .expect("tet survives to the exterior")
        };
        let mut x = NormalSurfaceVector::zeros(ext.tri.size());
        x.set_tri(at(9), 0, 1);
        x.set_tri(at(10), 0, 1);
        x.set_quad(at(11), 0, 1);
        x.set_tri(at(24), 1, 1);
        x.set_quad(at(25), 2, 1);
        x.set_tri(at(26), 2, 1);
        let m = matching_matrix(&ext.tri);
        assert!(satisfies_matching(&m, &x));
        assert!(is_admissible(&x));
        let s = reconstruct(&ext.tri, &x, BUDGET).unwrap();
        assert_eq!(s.complex.euler(), 0);
        assert_eq!(is_essential_annulus(&ext, &x, BUDGET), Ok(true));
        assert_eq!(is_essential_disk(&ext, &x, BUDGET), Ok(false));
    }

    #[test]
    fn some_vertex_candidate_is_a_compressing_disk() {
        // A solid torus posing as an exterior with its whole boundary
        // on one torus: the candidate stream must contain a disk whose
        // circle is essential there, the meridian.
        let tri = fixtures::solid_torus_pillow(1).triangulation;
        let sk = tri.skeleton().unwrap();
        let slots = tri.boundary_face_slots().len();
        let ext = Exterior {
            skeleton: sk,
            labels: vec![BoundaryLabel::Frontier; slots],
            subdivisions: 0,
            ambient_tets: (0..tri.size()).collect(),
            tri,
        };
        let (candidates, skipped) =
            crate::cone::vertex_surface_candidates(&ext.tri, BUDGET).unwrap();
        assert!(skipped.is_empty());
        let disks: Vec<_> = candidates
            .iter()
            .filter(|x| is_essential_disk(&ext, x, BUDGET).unwrap())
            .collect();
        assert!(!disks.is_empty());
        for x in disks {
            assert_eq!(is_essential_annulus(&ext, x, BUDGET), Ok(false));
        }
    }

    #[test]
    fn zero_vector_is_neither() {
        let ext = fan_exterior();
        let x = NormalSurfaceVector::zeros(ext.tri.size());
        assert_eq!(is_essential_disk(&ext, &x, BUDGET), Ok(false));
        assert_eq!(is_essential_annulus(&ext, &x, BUDGET), Ok(false));
    }

    #[test]
    fn budget_propagates() {
        let ext = fan_exterior();
        let mut x = NormalSurfaceVector::zeros(ext.tri.size());
        x.set_tri(0, 0, 1_000_000);
        assert!(matches!(
            is_essential_disk(&ext, &x, 10),
            Err(NormalError::BudgetExceeded { .. })
        ));
    }
}
