//! Vertex links and the manifold test.
//!
//! The link of a vertex class is a triangle complex with one triangle
//! per (tetrahedron, corner) slot in the class. A triangulation is a
//! manifold exactly when every interior vertex has a sphere link and
//! every boundary vertex a disk link; edge links need no separate
//! check because validated face pairings already force them to be
//! arcs or circles.

use crate::surface::TriangleComplex;
use crate::triangulation::perm::corner_map;
use crate::triangulation::{Skeleton, Triangulation};

/// Corners of the link triangle of (tet, corner): the other three
/// corners of the tetrahedron in increasing order.
fn link_corners(corner: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for c in 0..4u8 {
        if c != corner {
            out[k] = c;
            k += 1;
        }
    }
    out
}

/// The link of every vertex class, indexed by class.
pub fn vertex_links(tri: &Triangulation, sk: &Skeleton) -> Vec<TriangleComplex> {
    let n = tri.size();
    // Local triangle id of each (tet, corner) slot within its class.
    let mut local = vec![usize::MAX; 4 * n];
    let mut sizes = vec![0usize; sk.vertex_count()];
    for slot in 0..4 * n {
        let v = sk.vertex_class[slot];
        local[slot] = sizes[v];
        sizes[v] += 1;
    }
    let mut links: Vec<TriangleComplex> =
        sizes.into_iter().map(TriangleComplex::new).collect();

    for t in 0..n {
        for c in 0..4u8 {
            let v = sk.vertex_class[4 * t + c as usize];
            let others = link_corners(c);
            for j in 0..3usize {
                // Side j lies in the face opposite the third corner.
                let f = others[(j + 2) % 3];
                let Some(g) = tri.gluing(t, f) else { continue };
                if (g.tet, g.face) < (t, f) {
                    continue;
                }
                let cm = corner_map(f, g.face, g.perm);
                let c2 = cm[c as usize];
                let others2 = link_corners(c2);
                let idx = others2
                    .iter()
                    .position(|&x| x == g.face)
                    .expect("paired face meets the image corner");
                let j2 = (idx + 1) % 3;
                let a = local[4 * t + c as usize];
                let b = local[4 * g.tet + c2 as usize];
                let reversed = cm[others[j] as usize] != others2[j2];
                links[v].glue((a, j as u8), (b, j2 as u8), reversed);
            }
        }
    }
    links
}

/// Every interior vertex has a sphere link, every boundary vertex a
/// disk link.
pub fn is_manifold(tri: &Triangulation, sk: &Skeleton) -> bool {
    let links = vertex_links(tri, sk);
    links.iter().enumerate().all(|(v, link)| {
        if !link.connected() {
            return false;
        }
        if sk.vertex_boundary[v] {
            !link.is_closed() && link.euler() == 1
        } else {
            link.is_closed() && link.euler() == 2
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lone_tet_links_are_disks() {
        let t = Triangulation::new(1);
        let sk = t.skeleton().unwrap();
        let links = vertex_links(&t, &sk);
        assert_eq!(links.len(), 4);
        for l in &links {
            assert_eq!(l.len(), 1);
            assert!(!l.is_closed());
            assert_eq!(l.euler(), 1);
        }
        assert!(is_manifold(&t, &sk));
    }

    #[test]
    fn solid_torus_fixtures_are_manifolds() {
        for t in [
            fixtures::solid_torus_fan(1).triangulation,
            fixtures::solid_torus_fan(2).triangulation,
            fixtures::solid_torus_pillow(1).triangulation,
            fixtures::solid_torus_pillow(3).triangulation,
            fixtures::one_tet_solid_torus(),
        ] {
            let sk = t.skeleton().unwrap();
            assert!(is_manifold(&t, &sk));
            let links = vertex_links(&t, &sk);
            for (v, l) in links.iter().enumerate() {
                if sk.vertex_boundary[v] {
                    assert_eq!((l.connected(), l.euler()), (true, 1));
                } else {
                    assert_eq!((l.connected(), l.euler(), l.is_closed()), (true, 2, true));
                }
            }
        }
    }

    #[test]
    fn interior_links_of_closed_fixture_are_spheres() {
        let t = fixtures::doubled_tet();
        let sk = t.skeleton().unwrap();
        assert!(t.is_closed());
        for l in vertex_links(&t, &sk) {
            assert!(l.is_closed());
            assert_eq!(l.euler(), 2);
            assert!(l.connected());
        }
        assert!(is_manifold(&t, &sk));
    }

    #[test]
    fn link_triangle_count_matches_class_size() {
        let b = fixtures::solid_torus_fan(2);
        let sk = b.triangulation.skeleton().unwrap();
        let links = vertex_links(&b.triangulation, &sk);
        for (v, l) in links.iter().enumerate() {
            assert_eq!(l.len(), sk.vertex_members[v].len());
        }
    }
}
