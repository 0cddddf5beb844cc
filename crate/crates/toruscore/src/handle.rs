//! Attaching a 2-handle along a boundary curve and coning sphere
//! boundaries, the two steps that close a solid torus complement back
//! up into a closed manifold.
//!
//! The handle is built as a cone: the star of alpha in the boundary is
//! an annulus A with alpha as its core, and capping the two boundary
//! circles of A with fans gives a sphere S; the handle is the cone
//! over S, one tetrahedron per triangle of S, glued to the old
//! boundary along A. Any annulus in the boundary sphere of a ball is
//! standard and a twist along its core extends over the ball, so this
//! cone is the 2-handle attachment along alpha, independent of the
//! details of the identification.
//!
//! If the star of alpha fails to be an annulus with alpha as interior
//! core, the triangulation is subdivided once and the star is tried
//! again; a second failure raises [`HandleError::AnnulusDegenerate`].
//! Alpha is a [`KnotLoop`], so simplicity already held at
//! construction.

use crate::surface::{boundary_components, boundary_view, BoundaryView, SurfaceError, TriangleComplex};
use crate::triangulation::loops::{KnotLoop, LoopError};
use crate::triangulation::perm::{perm_index, position_in_face, FACE_CORNERS};
use crate::triangulation::subdivide::subdivide;
use crate::triangulation::{Triangulation, ValidationError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandleError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Pinched(#[from] SurfaceError),
    #[error("alpha has an edge not on the boundary")]
    AlphaNotOnBoundary,
    #[error("star of alpha is not an annulus with alpha as core, even after a subdivision")]
    AnnulusDegenerate,
    #[error("boundary component {component} has Euler characteristic {euler}, not a sphere")]
    ConeOverNonSphere { component: usize, euler: i64 },
}

/// Tetrahedron face lying over side `s` of the base triangle of a
/// cone tetrahedron whose apex is corner 3.
const FACE_OVER_SIDE: [u8; 3] = [2, 0, 1];

/// Records a pairing given by an explicit corner relabeling of the
/// source tetrahedron into the target.
fn glue_by_map(out: &mut Triangulation, t1: usize, f1: u8, t2: usize, f2: u8, map: [u8; 4]) {
    let mut perm = [0u8; 3];
    for (i, p) in perm.iter_mut().enumerate() {
        let a = FACE_CORNERS[f1 as usize][i];
        *p = position_in_face(f2, map[a as usize]);
    }
    out.add_gluing(t1, f1, t2, f2, perm_index(perm)).expect("fresh pairing");
}

/// Cones a family of boundary face slots: one new tetrahedron per
/// slot, base (face 3) glued to the slot, side faces glued wherever
/// `complex` pairs the corresponding sides. All tetrahedra of one call
/// share the apex, corner 3. Returns the index of the first new one.
fn cone_tets(
    out: &mut Triangulation,
    slots: &[(usize, u8)],
    complex: &TriangleComplex,
) -> usize {
    let base = out.add_tets(slots.len());
    for (i, &(t, f)) in slots.iter().enumerate() {
        // Corner j of the base triangle is corner j of face 3, so the
        // pairing permutation is the identity.
        out.add_gluing(base + i, 3, t, f, 0).expect("fresh pairing");
    }
    for i in 0..slots.len() {
        for s in 0..3u8 {
            let Some(g) = complex.side(i, s) else { continue };
            if (g.tri, g.side) < (i, s) {
                continue;
            }
            let (s2, rev) = (g.side as usize, g.reversed);
            let mut map = [0u8; 4];
            map[s as usize] = if rev { ((s2 + 1) % 3) as u8 } else { s2 as u8 };
            map[(s as usize + 1) % 3] = if rev { s2 as u8 } else { ((s2 + 1) % 3) as u8 };
            map[(s as usize + 2) % 3] = ((s2 + 2) % 3) as u8;
            map[3] = 3;
            glue_by_map(out, base + i, FACE_OVER_SIDE[s as usize], base + g.tri, FACE_OVER_SIDE[s2], map);
        }
    }
    base
}

struct StarAnnulus {
    /// Local triangle ids within the boundary complex.
    triangles: Vec<usize>,
    complex: TriangleComplex,
    /// Boundary circles of the star, as oriented walks.
    circles: Vec<Vec<crate::surface::BoundaryStep>>,
}

/// The star of alpha in the boundary, if it is an annulus with alpha
/// as an interior core curve.
fn star_annulus(bv: &BoundaryView, alpha: &KnotLoop) -> Option<StarAnnulus> {
    let star = bv.triangles_touching_vertices(alpha.vertices());
    let (complex, orig) = bv.complex.restrict(&star);
    if !(complex.connected() && complex.orientable() && complex.euler() == 0) {
        return None;
    }
    let circles = complex.boundary_circles()?;
    if circles.len() != 2 {
        return None;
    }
    // Alpha must be interior: no edge and no vertex of it on the
    // boundary circles of the star.
    for circle in &circles {
        for step in circle {
            let amb = orig[step.tri];
            if alpha.edges().contains(&bv.side_edge_class[amb][step.side as usize]) {
                return None;
            }
            let v = bv.corner_vertex_class[amb][step.tail() as usize];
            if alpha.vertices().contains(&v) {
                return None;
            }
        }
    }
    // Alpha must be a core: cutting along it leaves two annuli.
    let cut = complex.cut_along(|i, j| {
        alpha.edges().contains(&bv.side_edge_class[orig[i]][j as usize])
    });
    let comps = cut.components();
    if comps.len() != 2 {
        return None;
    }
    for comp in &comps {
        let (piece, _) = cut.restrict(comp);
        if piece.euler() != 0 {
            return None;
        }
    }
    Some(StarAnnulus { triangles: orig, complex, circles })
}

/// Attaches a 2-handle along `alpha` and transports the `carry` loops
/// into the result. Returns the new triangulation, the carried loops
/// and how many subdivisions were needed (0 or 1).
pub fn attach_2_handle_with(
    tri: &Triangulation,
    alpha: &KnotLoop,
    carry: &[KnotLoop],
) -> Result<(Triangulation, Vec<KnotLoop>, u8), HandleError> {
    let mut cur = tri.clone();
    let mut sk = cur.skeleton()?;
    let mut a = alpha.clone();
    let mut carried: Vec<KnotLoop> = carry.to_vec();

    if a.edges().iter().any(|&e| !sk.edge_boundary[e]) {
        return Err(HandleError::AlphaNotOnBoundary);
    }

    for level in 0..=1u8 {
        if level > 0 {
            let (next, map) = subdivide(&cur)?;
            let nsk = next.skeleton()?;
            a = map.transport(&a, &sk, &nsk)?;
            carried = carried
                .iter()
                .map(|c| map.transport(c, &sk, &nsk))
                .collect::<Result<_, _>>()?;
            cur = next;
            sk = nsk;
        }
        let bv = boundary_view(&cur, &sk)?;
        let Some(star) = star_annulus(&bv, &a) else { continue };

        let mut out = cur.clone();
        let slots: Vec<(usize, u8)> = star.triangles.iter().map(|&i| bv.face_slots[i]).collect();
        let over_a = cone_tets(&mut out, &slots, &star.complex);

        // One cap fan per boundary circle of the annulus; corner 2 is
        // the circle's own apex, corner 3 the handle apex shared with
        // the tetrahedra over A.
        for circle in &star.circles {
            let caps = out.add_tets(circle.len());
            for (i, step) in circle.iter().enumerate() {
                let tail = step.tail();
                let head = step.head();
                let off = 3 - tail - head;
                let map = [tail, head, off, 3];
                glue_by_map(
                    &mut out,
                    caps + i,
                    2,
                    over_a + step.tri,
                    FACE_OVER_SIDE[step.side as usize],
                    map,
                );
                let next = caps + (i + 1) % circle.len();
                // Head of one step is the tail of the next.
                glue_by_map(&mut out, caps + i, 0, next, 1, [1, 0, 2, 3]);
            }
        }

        let nsk = out.skeleton().expect("handle gluings keep edge parities");
        let mut out_loops = Vec::with_capacity(carried.len());
        for c in &carried {
            let edges = c
                .edges()
                .iter()
                .map(|&e| {
                    let slot = sk.edge_members[e][0];
                    nsk.edge_class_of(slot / 6, (slot % 6) as u8)
                })
                .collect();
            out_loops.push(KnotLoop::new(&nsk, edges)?);
        }
        return Ok((out, out_loops, level));
    }
    Err(HandleError::AnnulusDegenerate)
}

pub fn attach_2_handle(tri: &Triangulation, alpha: &KnotLoop) -> Result<Triangulation, HandleError> {
    attach_2_handle_with(tri, alpha, &[]).map(|(t, _, _)| t)
}

/// Cones every boundary component, which must all be spheres.
pub fn cone_boundary(tri: &Triangulation) -> Result<Triangulation, HandleError> {
    let sk = tri.skeleton()?;
    let comps = boundary_components(tri, &sk)?;
    let mut out = tri.clone();
    for (i, comp) in comps.iter().enumerate() {
        if !(comp.complex.is_closed() && comp.complex.euler() == 2) {
            return Err(HandleError::ConeOverNonSphere { component: i, euler: comp.complex.euler() });
        }
        cone_tets(&mut out, &comp.face_slots, &comp.complex);
    }
    debug_assert!(out.is_closed());
    Ok(out)
}

/// Fills the boundary of a solid torus with the solid torus whose
/// meridian is `alpha`: a 2-handle along alpha followed by a ball.
/// Returns the closed manifold and the image of `k` in it.
pub fn glue_solid_torus(
    tri: &Triangulation,
    k: &KnotLoop,
    alpha: &KnotLoop,
) -> Result<(Triangulation, KnotLoop), HandleError> {
    let (handled, carried, _) = attach_2_handle_with(tri, alpha, std::slice::from_ref(k))?;
    let hsk = handled.skeleton()?;
    let closed = cone_boundary(&handled)?;
    let csk = closed.skeleton()?;
    let k1 = &carried[0];
    let edges = k1
        .edges()
        .iter()
        .map(|&e| {
            let slot = hsk.edge_members[e][0];
            csk.edge_class_of(slot / 6, (slot % 6) as u8)
        })
        .collect();
    let km = KnotLoop::new(&csk, edges)?;
    Ok((closed, km))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{chain::chain_complex, homology_groups};
    use crate::manifold::is_manifold;
    use crate::triangulation::Skeleton;

    fn fan_and_alpha() -> (Triangulation, Skeleton, KnotLoop, KnotLoop) {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let core = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let alpha = KnotLoop::new(&sk, b.vertical_loop(&sk, 4)).unwrap();
        (b.triangulation.clone(), sk, core, alpha)
    }

    #[test]
    fn handle_along_longitude_leaves_a_sphere_boundary() {
        let (tri, _, _, alpha) = fan_and_alpha();
        let out = attach_2_handle(&tri, &alpha).unwrap();
        assert_eq!(out.size(), 27 + 6);
        let sk = out.skeleton().unwrap();
        let comps = boundary_components(&out, &sk).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].complex.euler(), 2);
        assert!(is_manifold(&out, &sk));
    }

    #[test]
    fn euler_of_boundary_rises_by_two() {
        let (tri, sk0, _, alpha) = fan_and_alpha();
        let before = boundary_view(&tri, &sk0).unwrap().complex.euler();
        let out = attach_2_handle(&tri, &alpha).unwrap();
        let sk = out.skeleton().unwrap();
        let after = boundary_view(&out, &sk).unwrap().complex.euler();
        assert_eq!(after, before + 2);
    }

    #[test]
    fn filling_along_longitude_gives_a_sphere() {
        let (tri, _, core, alpha) = fan_and_alpha();
        let (closed, km) = glue_solid_torus(&tri, &core, &alpha).unwrap();
        assert_eq!(closed.size(), 37);
        assert!(closed.is_closed());
        let sk = closed.skeleton().unwrap();
        assert!(is_manifold(&closed, &sk));
        assert_eq!(km.len(), 1);
        let h = homology_groups(&chain_complex(&closed, &sk));
        assert!(h[1].is_trivial());
        assert!(h[2].is_trivial());
        assert_eq!(h[3].free_rank, 1);
    }

    #[test]
    fn filling_along_meridian_gives_s2_x_s1_homology() {
        // Alpha bounding a disk in the solid torus kills nothing: the
        // result has the homology of S2 x S1. Three sections keep a
        // band of the boundary torus clear of the bigon's star.
        let b = fixtures::solid_torus_pillow(3);
        let sk = b.triangulation.skeleton().unwrap();
        let alpha = KnotLoop::new(&sk, b.meridian_bigon(&sk)).unwrap();
        let core = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let (closed, _) = glue_solid_torus(&b.triangulation, &core, &alpha).unwrap();
        assert!(closed.is_closed());
        let csk = closed.skeleton().unwrap();
        assert!(is_manifold(&closed, &csk));
        let h = homology_groups(&chain_complex(&closed, &csk));
        assert_eq!(h[1].free_rank, 1);
        assert!(h[1].torsion.is_empty());
        assert_eq!(h[2].free_rank, 1);
    }

    #[test]
    fn crowded_star_is_rejected_after_one_retry() {
        // Every boundary vertex of the one-section pillow lies on the
        // meridian, so its star is the whole torus at depth 0 and the
        // vertex corners of the subdivided triangles keep it so at
        // depth 1.
        let b = fixtures::solid_torus_pillow(1);
        let sk = b.triangulation.skeleton().unwrap();
        let alpha = KnotLoop::new(&sk, b.meridian_bigon(&sk)).unwrap();
        assert_eq!(
            attach_2_handle(&b.triangulation, &alpha).unwrap_err(),
            HandleError::AnnulusDegenerate
        );
    }

    #[test]
    fn cone_over_torus_is_rejected() {
        let (tri, _, _, _) = fan_and_alpha();
        assert!(matches!(
            cone_boundary(&tri),
            Err(HandleError::ConeOverNonSphere { euler: 0, .. })
        ));
    }
}
