//! Knot exteriors: remove a neighborhood of a loop in the 1-skeleton.
//!
//! The neighborhood is the closed star of the loop, the union of all
//! tetrahedra meeting one of its vertex classes. Two barycentric
//! subdivisions always make that star a regular neighborhood, but they
//! multiply the size by 576, so by default each level is first tried
//! with a certificate: the star must avoid the boundary, be a manifold
//! with a single torus frontier, and collapse simplicially onto the
//! loop. A compact manifold neighborhood that collapses onto a circle
//! in its interior is a regular neighborhood of it, so a certified
//! level is as good as the unconditional one.
//!
//! Passing `carry` loops transports bystander curves into the exterior;
//! the star must stay clear of their closures, which one subdivision
//! already guarantees for disjoint loops.

use crate::manifold::is_manifold;
use crate::surface::{boundary_components, SurfaceError};
use crate::triangulation::loops::{KnotLoop, LoopError};
use crate::triangulation::perm::FACE_CORNERS;
use crate::triangulation::subdivide::subdivide;
use crate::triangulation::{Skeleton, Triangulation, ValidationError};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryLabel {
    /// Face freed by removing a star tetrahedron; part of the frontier
    /// torus around the knot.
    Frontier,
    /// Face that was already on the boundary of the input.
    Original,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubdivisionPolicy {
    /// Subdivide twice unconditionally before removing the star.
    AlwaysTwice,
    /// Stop at the first level whose star passes the certificate.
    #[default]
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error("knot meets the boundary")]
    KnotOnBoundary,
    #[error("carried loop meets the knot neighborhood at every level")]
    CarryNotSeparated,
}

/// A knot exterior, with one boundary label per entry of
/// `tri.boundary_face_slots()`.
#[derive(Debug, Clone)]
pub struct Exterior {
    pub tri: Triangulation,
    pub skeleton: Skeleton,
    pub labels: Vec<BoundaryLabel>,
    /// Subdivisions applied to the input before removing the star.
    pub subdivisions: u8,
    /// For each tetrahedron, its index in the subdivided input.
    pub ambient_tets: Vec<usize>,
}

impl Exterior {
    pub fn label_of_slot(&self, slot: (usize, u8)) -> Option<BoundaryLabel> {
        let slots = self.tri.boundary_face_slots();
        slots.iter().position(|&s| s == slot).map(|i| self.labels[i])
    }
}

/// Tetrahedra having a corner on one of the vertex classes.
pub fn closed_star(tri: &Triangulation, sk: &Skeleton, vertices: &[usize]) -> Vec<usize> {
    (0..tri.size())
        .filter(|&t| (0..4).any(|c| vertices.contains(&sk.vertex_class[4 * t + c])))
        .collect()
}

pub fn knot_exterior(tri: &Triangulation, knot: &KnotLoop) -> Result<Exterior, ExteriorError> {
    let (ext, _) = knot_exterior_with(tri, knot, &[], SubdivisionPolicy::Adaptive)?;
    Ok(ext)
}

/// Exterior of `knot`, transporting the `carry` loops into it. The
/// carried loops are returned in the exterior's own edge classes.
pub fn knot_exterior_with(
    tri: &Triangulation,
    knot: &KnotLoop,
    carry: &[KnotLoop],
    policy: SubdivisionPolicy,
) -> Result<(Exterior, Vec<KnotLoop>), ExteriorError> {
    let mut cur = tri.clone();
    let mut sk = cur.skeleton()?;
    let mut k = knot.clone();
    let mut carried: Vec<KnotLoop> = carry.to_vec();

    if k.vertices().iter().any(|&v| sk.vertex_boundary[v]) {
        return Err(ExteriorError::KnotOnBoundary);
    }

    for level in 0..=2u8 {
        if level > 0 {
            let (next, map) = subdivide(&cur)?;
            let nsk = next.skeleton()?;
            k = map.transport(&k, &sk, &nsk)?;
            carried = carried
                .iter()
                .map(|c| map.transport(c, &sk, &nsk))
                .collect::<Result<_, _>>()?;
            cur = next;
            sk = nsk;
        }
        let attempt = policy == SubdivisionPolicy::Adaptive || level == 2;
        if !attempt {
            continue;
        }
        // Levels below 2 must earn their keep; level 2 is always a
        // regular neighborhood and only the carry separation can fail.
        let certify = level < 2;
        match try_level(&cur, &sk, &k, &carried, level, certify) {
            Some(result) => return result,
            None if level < 2 => continue,
            None => return Err(ExteriorError::CarryNotSeparated),
        }
    }
    unreachable!("level 2 always returns");
}

/// None means this level does not certify and the caller should
/// subdivide once more.
fn try_level(
    tri: &Triangulation,
    sk: &Skeleton,
    knot: &KnotLoop,
    carried: &[KnotLoop],
    level: u8,
    certify: bool,
) -> Option<Result<(Exterior, Vec<KnotLoop>), ExteriorError>> {
    let star = closed_star(tri, sk, knot.vertices());
    let kept: Vec<usize> = (0..tri.size()).filter(|t| !star.contains(t)).collect();
    if kept.is_empty() {
        return None;
    }

    // The closures of the star and the carried loops must not touch;
    // otherwise the loops would land on or outside the new boundary.
    let star_vertices: Vec<usize> = {
        let mut v: Vec<usize> = star
            .iter()
            .flat_map(|&t| (0..4).map(move |c| sk.vertex_class[4 * t + c]))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if carried
        .iter()
        .any(|c| c.vertices().iter().any(|v| star_vertices.binary_search(v).is_ok()))
    {
        return None;
    }

    if certify {
        if star_vertices.iter().any(|&v| sk.vertex_boundary[v]) {
            return None;
        }
        let (ntri, nstar) = tri.restrict(&star);
        let nsk = ntri.skeleton().expect("restriction keeps edge parities");
        if !is_manifold(&ntri, &nsk) {
            return None;
        }
        match boundary_components(&ntri, &nsk) {
            Ok(comps) => {
                if comps.len() != 1 {
                    return None;
                }
                let c = &comps[0].complex;
                if !(c.is_closed() && c.connected() && c.orientable() && c.euler() == 0) {
                    return None;
                }
            }
            Err(SurfaceError::NonManifoldEdge { .. }) => return None,
        }
        if !collapses_onto_knot(&ntri, &nsk, sk, &nstar, knot) {
            return None;
        }
    }

    let (etri, ekept) = tri.restrict(&kept);
    let esk = etri.skeleton().expect("restriction keeps edge parities");
    if certify && !is_manifold(&etri, &esk) {
        return None;
    }
    let labels = etri
        .boundary_face_slots()
        .iter()
        .map(|&(t, f)| {
            if tri.gluing(ekept[t], f).is_some() {
                BoundaryLabel::Frontier
            } else {
                BoundaryLabel::Original
            }
        })
        .collect();

    // Re-express the carried loops in the exterior's edge classes via
    // any slot that survived.
    let mut out_loops = Vec::with_capacity(carried.len());
    for c in carried {
        let mut edges = Vec::with_capacity(c.len());
        for &e in c.edges() {
            let slot = sk.edge_members[e].iter().find_map(|&s| {
                let (t, eidx) = (s / 6, (s % 6) as u8);
                kept.binary_search(&t).ok().map(|nt| (nt, eidx))
            });
            match slot {
                Some((nt, eidx)) => edges.push(esk.edge_class_of(nt, eidx)),
                None => return None,
            }
        }
        match KnotLoop::new(&esk, edges) {
            Ok(l) => out_loops.push(l),
            Err(e) => return Some(Err(ExteriorError::Loop(e))),
        }
    }

    Some(Ok((
        Exterior { tri: etri, skeleton: esk, labels, subdivisions: level, ambient_tets: ekept },
        out_loops,
    )))
}

/// Greedy simplicial collapse of the star onto the knot. `nstar` maps
/// the star's tetrahedra back to the ambient triangulation, whose
/// skeleton is `amb`; the knot lives in ambient classes.
fn collapses_onto_knot(
    tri: &Triangulation,
    sk: &Skeleton,
    amb: &Skeleton,
    nstar: &[usize],
    knot: &KnotLoop,
) -> bool {
    // Knot cells in the star's own skeleton. Identification paths of a
    // knot edge or vertex run through tetrahedra that contain it, all
    // of which are star tetrahedra, so each ambient class restricts to
    // a single class here.
    let mut keep_edges = Vec::new();
    let mut keep_vertices = Vec::new();
    for (nt, &ot) in nstar.iter().enumerate() {
        for e in 0..6u8 {
            if knot.edges().contains(&amb.edge_class_of(ot, e)) {
                keep_edges.push(sk.edge_class_of(nt, e));
            }
        }
        for c in 0..4u8 {
            if knot.vertices().contains(&amb.vertex_class_of(ot, c)) {
                keep_vertices.push(sk.vertex_class_of(nt, c));
            }
        }
    }
    keep_edges.sort_unstable();
    keep_edges.dedup();
    keep_vertices.sort_unstable();
    keep_vertices.dedup();
    if keep_edges.len() != knot.len() {
        return false;
    }

    collapses_onto(tri, sk, &keep_edges, &keep_vertices)
}

/// Whether the triangulation collapses onto the given 1-subcomplex:
/// repeatedly removes free (face, tetrahedron), then (edge, face),
/// then (vertex, edge) pairs. Tetrahedron collapses never become
/// available again once exhausted, so a single descending sweep is
/// enough.
fn collapses_onto(
    tri: &Triangulation,
    sk: &Skeleton,
    keep_edges: &[usize],
    keep_vertices: &[usize],
) -> bool {
    let n = tri.size();
    let mut tet_alive = vec![true; n];
    let mut face_alive = vec![true; sk.face_count()];
    let mut edge_alive = vec![true; sk.edge_count()];
    let mut vertex_alive = vec![true; sk.vertex_count()];

    // Face classes of each tetrahedron and edge classes of each face
    // class, with multiplicity.
    let tet_faces: Vec<[usize; 4]> = (0..n)
        .map(|t| [0, 1, 2, 3].map(|f| sk.face_class_of(t, f)))
        .collect();
    let face_edges: Vec<[usize; 3]> = (0..sk.face_count())
        .map(|fc| {
            let slot = sk.face_members[fc][0];
            let (t, f) = (slot / 4, slot % 4);
            let c = FACE_CORNERS[f];
            [(c[0], c[1]), (c[1], c[2]), (c[0], c[2])].map(|(a, b)| {
                sk.edge_class_of(t, crate::triangulation::perm::edge_index(a, b))
            })
        })
        .collect();

    let mut face_tets = vec![0usize; sk.face_count()];
    for t in 0..n {
        for fc in tet_faces[t] {
            face_tets[fc] += 1;
        }
    }
    let mut edge_faces = vec![0usize; sk.edge_count()];
    for fc in 0..sk.face_count() {
        for ec in face_edges[fc] {
            edge_faces[ec] += 1;
        }
    }
    // Edge ends at each vertex; a loop edge contributes two.
    let mut vertex_ends = vec![0usize; sk.vertex_count()];
    for ec in 0..sk.edge_count() {
        let (a, b) = sk.edge_endpoints(ec);
        vertex_ends[a] += 1;
        vertex_ends[b] += 1;
    }

    let mut changed = true;
    while changed {
        changed = false;
        for fc in 0..sk.face_count() {
            if !face_alive[fc] || face_tets[fc] != 1 {
                continue;
            }
            let t = (0..n)
                .find(|&t| tet_alive[t] && tet_faces[t].contains(&fc))
                .expect("one live incidence");
            tet_alive[t] = false;
            for other in tet_faces[t] {
                face_tets[other] -= 1;
            }
            face_alive[fc] = false;
            for ec in face_edges[fc] {
                edge_faces[ec] -= 1;
            }
            changed = true;
        }
    }
    if tet_alive.iter().any(|&a| a) {
        return false;
    }

    changed = true;
    while changed {
        changed = false;
        for ec in 0..sk.edge_count() {
            if !edge_alive[ec] || edge_faces[ec] != 1 || keep_edges.contains(&ec) {
                continue;
            }
            let fc = (0..sk.face_count())
                .find(|&fc| face_alive[fc] && face_edges[fc].contains(&ec))
                .expect("one live incidence");
            face_alive[fc] = false;
            for other in face_edges[fc] {
                edge_faces[other] -= 1;
            }
            edge_alive[ec] = false;
            let (a, b) = sk.edge_endpoints(ec);
            vertex_ends[a] -= 1;
            vertex_ends[b] -= 1;
            changed = true;
        }
    }
    if face_alive.iter().any(|&a| a) {
        return false;
    }

    changed = true;
    while changed {
        changed = false;
        for vc in 0..sk.vertex_count() {
            if !vertex_alive[vc] || vertex_ends[vc] != 1 || keep_vertices.contains(&vc) {
                continue;
            }
            let ec = (0..sk.edge_count())
                .find(|&ec| {
                    let (a, b) = sk.edge_endpoints(ec);
                    edge_alive[ec] && (a == vc || b == vc)
                })
                .expect("one live end");
            if keep_edges.contains(&ec) {
                continue;
            }
            edge_alive[ec] = false;
            let (a, b) = sk.edge_endpoints(ec);
            vertex_ends[a] -= 1;
            vertex_ends[b] -= 1;
            vertex_alive[vc] = false;
            changed = true;
        }
    }

    (0..sk.edge_count()).all(|ec| edge_alive[ec] == keep_edges.contains(&ec))
        && (0..sk.vertex_count()).all(|vc| vertex_alive[vc] == keep_vertices.contains(&vc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fan_core_exterior_needs_no_subdivision() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let core = b.vertical_loop(&sk, 0);
        let knot = KnotLoop::new(&sk, core).unwrap();
        let ext = knot_exterior(&b.triangulation, &knot).unwrap();
        assert_eq!(ext.subdivisions, 0);
        assert_eq!(ext.tri.size(), 18);
        let frontier = ext.labels.iter().filter(|l| **l == BoundaryLabel::Frontier).count();
        let original = ext.labels.len() - frontier;
        assert_eq!((frontier, original), (6, 6));
        assert!(is_manifold(&ext.tri, &ext.skeleton));
        // Both boundary components are tori.
        let comps = boundary_components(&ext.tri, &ext.skeleton).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.complex.euler(), 0);
            assert!(c.complex.is_closed());
        }
    }

    #[test]
    fn exterior_size_is_bounded_by_two_subdivisions() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let ext = knot_exterior(&b.triangulation, &knot).unwrap();
        assert!(ext.tri.size() < 576 * b.triangulation.size());
    }

    #[test]
    fn boundary_knot_is_rejected() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 4)).unwrap();
        assert_eq!(
            knot_exterior(&b.triangulation, &knot).unwrap_err(),
            ExteriorError::KnotOnBoundary
        );
    }

    #[test]
    fn star_of_fan_core_is_the_inner_ring() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let star = closed_star(&b.triangulation, &sk, knot.vertices());
        assert_eq!(star.len(), 9);
    }

    #[test]
    fn fan_star_collapses_onto_core() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let star = closed_star(&b.triangulation, &sk, knot.vertices());
        let (ntri, nstar) = b.triangulation.restrict(&star);
        let nsk = ntri.skeleton().unwrap();
        assert!(collapses_onto_knot(&ntri, &nsk, &sk, &nstar, &knot));
    }

    #[test]
    fn winding_two_loop_gets_an_exterior() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let edges = vec![
            b.edge_between(&sk, (1, 0), (2, 1)).unwrap(),
            b.edge_between(&sk, (2, 0), (3, 1)).unwrap(),
            b.edge_between(&sk, (3, 0), (1, 0)).unwrap(),
        ];
        let knot = KnotLoop::new(&sk, edges).unwrap();
        let ext = knot_exterior(&b.triangulation, &knot).unwrap();
        assert!(ext.tri.size() < 576 * 27);
        assert!(is_manifold(&ext.tri, &ext.skeleton));
        let comps = boundary_components(&ext.tri, &ext.skeleton).unwrap();
        assert_eq!(comps.len(), 2);
    }
}
