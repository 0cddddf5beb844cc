//! Barycentric subdivision.
//!
//! Every tetrahedron splits into 24 small ones, one per flag: a corner,
//! an edge through it, a face around that. The corners of a small
//! tetrahedron are, in this order, the original corner, the midpoint of
//! the edge, the barycenter of the face and the barycenter of the
//! tetrahedron. Ordering corners by the dimension of the cell they sit
//! on makes every induced pairing the identity permutation, both inside
//! a tetrahedron and across original face pairings.
//!
//! [`SubdivisionMap`] records where the old skeleton lands so that
//! loops can be carried through, each edge becoming its two halves.

use super::loops::{KnotLoop, LoopError};
use super::perm::{corner_map, EDGE_PAIRS, FACE_CORNERS};
use super::{Skeleton, Triangulation, ValidationError};

/// Edge `i` of face `f` as a sorted pair of tetrahedron corners.
fn face_edge(f: u8, i: u8) -> (u8, u8) {
    let c = FACE_CORNERS[f as usize];
    match i {
        0 => (c[0], c[1]),
        1 => (c[0], c[2]),
        _ => (c[1], c[2]),
    }
}

/// Index of the pair {u, v} among the edges of face `f`.
fn edge_in_face(f: u8, u: u8, v: u8) -> u8 {
    let key = if u < v { (u, v) } else { (v, u) };
    (0..3).find(|&i| face_edge(f, i) == key).expect("edge lies on face")
}

/// Small tetrahedra within one tetrahedron are numbered by flag:
/// face, edge within the face, end of that edge.
fn flag(f: u8, i: u8, j: u8) -> usize {
    (f * 6 + i * 2 + j) as usize
}

/// Flag whose corner is `v`, for picking representatives.
fn flag_at_corner(v: u8) -> (u8, u8, u8) {
    let f = if v == 0 { 1 } else { 0 };
    for i in 0..3 {
        let (a, b) = face_edge(f, i);
        if a == v {
            return (f, i, 0);
        }
        if b == v {
            return (f, i, 1);
        }
    }
    unreachable!("every face has three corners");
}

/// Where the pieces of the original complex land in the subdivision.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    /// Original vertex class to vertex class of the subdivision.
    pub vertex: Vec<usize>,
    /// Original edge class to the vertex class of its midpoint.
    pub midpoint: Vec<usize>,
    /// Original edge class to its two halves, tail half first in the
    /// orientation of the class representative.
    pub halves: Vec<[usize; 2]>,
}

impl SubdivisionMap {
    /// Carries a loop through the subdivision, edge by edge. `sk` and
    /// `new_sk` are the skeletons the loop and its image live in.
    pub fn transport(
        &self,
        knot: &KnotLoop,
        sk: &Skeleton,
        new_sk: &Skeleton,
    ) -> Result<KnotLoop, LoopError> {
        let mut edges = Vec::with_capacity(2 * knot.len());
        for (idx, &e) in knot.edges().iter().enumerate() {
            let [tail_half, head_half] = self.halves[e];
            if knot.direction(sk, idx) == 1 {
                edges.extend([tail_half, head_half]);
            } else {
                edges.extend([head_half, tail_half]);
            }
        }
        KnotLoop::new(new_sk, edges)
    }
}

/// Subdivides every tetrahedron into 24. The result has one vertex
/// class per original vertex, edge, face and tetrahedron, and the
/// returned map locates the original skeleton inside it.
pub fn subdivide(tri: &Triangulation) -> Result<(Triangulation, SubdivisionMap), ValidationError> {
    let sk = tri.skeleton()?;
    let n = tri.size();
    let mut out = Triangulation::new(24 * n);

    for t in 0..n {
        for f in 0..4u8 {
            for i in 0..3u8 {
                let (p, q) = face_edge(f, i);
                for j in 0..2u8 {
                    let v = if j == 0 { p } else { q };
                    let s = t * 24 + flag(f, i, j);

                    // Facet opposite the corner: other end of the edge.
                    if j == 0 {
                        out.add_gluing(s, 0, t * 24 + flag(f, i, 1), 0, 0)
                            .expect("fresh internal pairing");
                    }

                    // Facet opposite the midpoint: other edge of the
                    // face through the same corner.
                    let i2 = (0..3)
                        .find(|&x| {
                            let (a, b) = face_edge(f, x);
                            x != i && (a == v || b == v)
                        })
                        .expect("two edges of a face at a corner");
                    if i < i2 {
                        let j2 = if face_edge(f, i2).0 == v { 0 } else { 1 };
                        out.add_gluing(s, 1, t * 24 + flag(f, i2, j2), 1, 0)
                            .expect("fresh internal pairing");
                    }

                    // Facet opposite the face barycenter: other face of
                    // the tetrahedron around the same edge.
                    let f2 = (0..4u8)
                        .find(|&x| x != f && x != p && x != q)
                        .expect("two faces of a tetrahedron at an edge");
                    if f < f2 {
                        let i2 = edge_in_face(f2, p, q);
                        out.add_gluing(s, 2, t * 24 + flag(f2, i2, j), 2, 0)
                            .expect("fresh internal pairing");
                    }

                    // Facet on the original face: across the pairing,
                    // or boundary if there is none.
                    if let Some(g) = tri.gluing(t, f) {
                        if (t, f) < (g.tet, g.face) {
                            let map = corner_map(f, g.face, g.perm);
                            let (p2, q2) = (map[p as usize], map[q as usize]);
                            let i2 = edge_in_face(g.face, p2, q2);
                            let j2 = if map[v as usize] == p2.min(q2) { 0 } else { 1 };
                            out.add_gluing(s, 3, g.tet * 24 + flag(g.face, i2, j2), 3, 0)
                                .expect("fresh pairing across an original face");
                        }
                    }
                }
            }
        }
    }
    assert_eq!(out.size(), 24 * n);

    let new_sk = out.skeleton().expect("subdivision of a valid triangulation is valid");

    let vertex = sk
        .vertex_members
        .iter()
        .map(|members| {
            let (t, v) = (members[0] / 4, (members[0] % 4) as u8);
            let (f, i, j) = flag_at_corner(v);
            new_sk.vertex_class_of(t * 24 + flag(f, i, j), 0)
        })
        .collect();

    let mut midpoint = Vec::with_capacity(sk.edge_count());
    let mut halves = Vec::with_capacity(sk.edge_count());
    for members in &sk.edge_members {
        let (t, e) = (members[0] / 6, members[0] % 6);
        let (p, q) = EDGE_PAIRS[e];
        let f = (0..4u8).find(|&x| x != p && x != q).expect("face containing the edge");
        let i = edge_in_face(f, p, q);
        let s0 = t * 24 + flag(f, i, 0);
        let s1 = t * 24 + flag(f, i, 1);
        midpoint.push(new_sk.vertex_class_of(s0, 1));
        // Edge 0 of a small tetrahedron joins corners 0 and 1: the
        // original corner and the midpoint.
        halves.push([new_sk.edge_class_of(s0, 0), new_sk.edge_class_of(s1, 0)]);
    }

    Ok((out, SubdivisionMap { vertex, midpoint, halves }))
}
