//! Abstract triangle complexes: surfaces built from triangles with
//! paired sides.
//!
//! One engine serves every 2-dimensional question in the crate: the
//! boundary of a triangulation, stars of curves inside it, frontiers of
//! tetrahedron subsets and reconstructed normal surfaces (quads split
//! into two triangles) all become [`TriangleComplex`] values, which
//! then answer connectivity, Euler characteristic, orientability,
//! boundary circle and cutting queries.
//!
//! Corners of triangle `i` are 0, 1, 2; side `j` joins corners `j` and
//! `(j + 1) % 3`. A side pairing with `reversed == false` matches
//! corner `j` to corner `j'` and `j + 1` to `j' + 1`; `reversed` swaps
//! them.

use crate::triangulation::perm::{edge_index, FACE_CORNERS};
use crate::triangulation::{Skeleton, Triangulation};
use crate::unionfind::{ParityUnionFind, UnionFind};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideGlue {
    pub tri: usize,
    pub side: u8,
    pub reversed: bool,
}

/// One step of a boundary walk: a free side traversed from corner
/// `side` to `side + 1` when `forward`, the other way when not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryStep {
    pub tri: usize,
    pub side: u8,
    pub forward: bool,
}

impl BoundaryStep {
    /// Corner of the triangle the step starts at.
    pub fn tail(&self) -> u8 {
        if self.forward {
            self.side
        } else {
            (self.side + 1) % 3
        }
    }

    /// Corner of the triangle the step ends at.
    pub fn head(&self) -> u8 {
        if self.forward {
            (self.side + 1) % 3
        } else {
            self.side
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TriangleComplex {
    side_glue: Vec<[Option<SideGlue>; 3]>,
}

impl TriangleComplex {
    pub fn new(triangles: usize) -> Self {
        TriangleComplex { side_glue: vec![[None; 3]; triangles] }
    }

    pub fn len(&self) -> usize {
        self.side_glue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side_glue.is_empty()
    }

    pub fn side(&self, tri: usize, side: u8) -> Option<SideGlue> {
        self.side_glue[tri][side as usize]
    }

    /// Pairs two distinct free sides.
    pub fn glue(&mut self, a: (usize, u8), b: (usize, u8), reversed: bool) {
        assert_ne!(a, b, "side glued to itself");
        assert!(self.side_glue[a.0][a.1 as usize].is_none(), "side already glued");
        assert!(self.side_glue[b.0][b.1 as usize].is_none(), "side already glued");
        self.side_glue[a.0][a.1 as usize] = Some(SideGlue { tri: b.0, side: b.1, reversed });
        self.side_glue[b.0][b.1 as usize] = Some(SideGlue { tri: a.0, side: a.1, reversed });
    }

    fn corner_union(&self) -> UnionFind {
        let mut uf = UnionFind::new(3 * self.len());
        for (i, sides) in self.side_glue.iter().enumerate() {
            for (j, g) in sides.iter().enumerate() {
                let Some(g) = g else { continue };
                let (a, b) = (3 * i + j, 3 * i + (j + 1) % 3);
                let (a2, b2) = (
                    3 * g.tri + g.side as usize,
                    3 * g.tri + (g.side as usize + 1) % 3,
                );
                if g.reversed {
                    uf.union(a, b2);
                    uf.union(b, a2);
                } else {
                    uf.union(a, a2);
                    uf.union(b, b2);
                }
            }
        }
        uf
    }

    /// Corner class per (triangle, corner) slot, plus the class count.
    pub fn corner_classes(&self) -> (Vec<[usize; 3]>, usize) {
        let mut uf = self.corner_union();
        let mut ids = vec![usize::MAX; 3 * self.len()];
        let mut next = 0;
        for s in 0..3 * self.len() {
            let r = uf.find(s);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[s] = ids[r];
        }
        let per_tri = (0..self.len())
            .map(|i| [ids[3 * i], ids[3 * i + 1], ids[3 * i + 2]])
            .collect();
        (per_tri, next)
    }

    pub fn free_sides(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (i, sides) in self.side_glue.iter().enumerate() {
            for (j, g) in sides.iter().enumerate() {
                if g.is_none() {
                    out.push((i, j as u8));
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_sides().is_empty()
    }

    pub fn euler(&self) -> i64 {
        let glued: usize = self
            .side_glue
            .iter()
            .flatten()
            .filter(|g| g.is_some())
            .count();
        let edges = glued / 2 + (3 * self.len() - glued);
        let (_, vertices) = self.corner_classes();
        vertices as i64 - edges as i64 + self.len() as i64
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for (i, sides) in self.side_glue.iter().enumerate() {
            for g in sides.iter().flatten() {
                uf.union(i, g.tri);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut id_of_root = vec![usize::MAX; self.len()];
        for i in 0..self.len() {
            let r = uf.find(i);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[id_of_root[r]].push(i);
        }
        comps
    }

    pub fn connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Coherent orientability: triangle orientations can be chosen so
    /// that every pairing reverses the induced side direction.
    pub fn orientable(&self) -> bool {
        let mut uf = ParityUnionFind::new(self.len());
        for (i, sides) in self.side_glue.iter().enumerate() {
            for g in sides.iter().flatten() {
                // An unreversed pairing traverses the edge the same way
                // on both sides, so the triangles must disagree.
                let rel = if g.reversed { 0 } else { 1 };
                if uf.union(i, g.tri, rel).is_err() {
                    return false;
                }
            }
        }
        true
    }

    /// Boundary circles as cyclic lists of oriented free sides: the
    /// head corner class of each step is the tail corner class of the
    /// next. Returns None if some corner meets a number of free side
    /// ends other than 0 or 2, i.e. the complex is pinched and not a
    /// surface with boundary.
    pub fn boundary_circles(&self) -> Option<Vec<Vec<BoundaryStep>>> {
        let (corner_ids, classes) = self.corner_classes();
        let free = self.free_sides();
        // Each free side has two ends, attached at its corner classes.
        let mut at_class: Vec<Vec<(usize, u8)>> = vec![Vec::new(); classes];
        for (idx, &(i, j)) in free.iter().enumerate() {
            let c0 = corner_ids[i][j as usize];
            let c1 = corner_ids[i][(j as usize + 1) % 3];
            at_class[c0].push((idx, 0));
            at_class[c1].push((idx, 1));
        }
        if at_class.iter().any(|v| v.len() != 0 && v.len() != 2) {
            return None;
        }
        let class_of_end = |idx: usize, end: u8| -> usize {
            let (i, j) = free[idx];
            if end == 0 {
                corner_ids[i][j as usize]
            } else {
                corner_ids[i][(j as usize + 1) % 3]
            }
        };
        let mut visited = vec![false; free.len()];
        let mut circles = Vec::new();
        for start in 0..free.len() {
            if visited[start] {
                continue;
            }
            let mut circle = Vec::new();
            // `end` is the end about to be exited, so `end == 1` means
            // the side is traversed from corner j to corner j + 1.
            let (mut idx, mut end) = (start, 1u8);
            loop {
                visited[idx] = true;
                let (tri, side) = free[idx];
                circle.push(BoundaryStep { tri, side, forward: end == 1 });
                let class = class_of_end(idx, end);
                let (nidx, nend) = *at_class[class]
                    .iter()
                    .find(|&&(i2, e2)| (i2, e2) != (idx, end))
                    .expect("two ends per class");
                idx = nidx;
                end = 1 - nend;
                if idx == start && end == 1 {
                    break;
                }
            }
            circles.push(circle);
        }
        Some(circles)
    }

    /// Unglues every internal pairing whose side matches the
    /// predicate.
    pub fn cut_along(&self, on_cut: impl Fn(usize, u8) -> bool) -> TriangleComplex {
        let mut out = self.clone();
        for (i, sides) in self.side_glue.iter().enumerate() {
            for (j, g) in sides.iter().enumerate() {
                let Some(g) = g else { continue };
                if on_cut(i, j as u8) {
                    out.side_glue[i][j] = None;
                    out.side_glue[g.tri][g.side as usize] = None;
                }
            }
        }
        out
    }

    /// Induced subcomplex on a set of triangles. Returns the complex
    /// and the original index of each kept triangle.
    pub fn restrict(&self, keep: &[usize]) -> (TriangleComplex, Vec<usize>) {
        let mut orig: Vec<usize> = keep.to_vec();
        orig.sort_unstable();
        orig.dedup();
        let mut new_id = vec![usize::MAX; self.len()];
        for (ni, &oi) in orig.iter().enumerate() {
            new_id[oi] = ni;
        }
        let mut out = TriangleComplex::new(orig.len());
        for (ni, &oi) in orig.iter().enumerate() {
            for j in 0..3 {
                if let Some(g) = self.side_glue[oi][j] {
                    if new_id[g.tri] != usize::MAX {
                        out.side_glue[ni][j] =
                            Some(SideGlue { tri: new_id[g.tri], side: g.side, reversed: g.reversed });
                    }
                }
            }
        }
        (out, orig)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("boundary edge class {edge} lies in {count} boundary faces")]
    NonManifoldEdge { edge: usize, count: usize },
}

/// The boundary of a triangulation as a triangle complex, with maps
/// back to tetrahedron face slots, ambient edge classes and ambient
/// vertex classes.
pub struct BoundaryView {
    pub complex: TriangleComplex,
    /// Triangle i of the complex is this boundary face slot.
    pub face_slots: Vec<(usize, u8)>,
    /// Ambient edge class under each (triangle, side).
    pub side_edge_class: Vec<[usize; 3]>,
    /// Ambient vertex class under each (triangle, corner).
    pub corner_vertex_class: Vec<[usize; 3]>,
}

pub fn boundary_view(tri: &Triangulation, sk: &Skeleton) -> Result<BoundaryView, SurfaceError> {
    let face_slots = tri.boundary_face_slots();
    let mut side_edge_class = Vec::with_capacity(face_slots.len());
    let mut corner_vertex_class = Vec::with_capacity(face_slots.len());
    // (edge class) -> sides seen, with the sign relating the side's
    // traversal direction to the class orientation.
    let mut by_edge: Vec<(usize, Vec<((usize, u8), i8)>)> = Vec::new();

    for (i, &(t, f)) in face_slots.iter().enumerate() {
        let corners = FACE_CORNERS[f as usize];
        corner_vertex_class.push(corners.map(|c| sk.vertex_class[t * 4 + c as usize]));
        let mut side_classes = [0usize; 3];
        for j in 0..3 {
            let (a, b) = (corners[j], corners[(j + 1) % 3]);
            let e = edge_index(a, b);
            let slot = t * 6 + e as usize;
            let class = sk.edge_class[slot];
            side_classes[j] = class;
            // Direction of the side (a -> b) against the class
            // orientation: the slot runs min to max corner.
            let dir = if a < b { 1 } else { -1 } * sk.edge_orient[slot];
            match by_edge.iter_mut().find(|(c, _)| *c == class) {
                Some((_, v)) => v.push(((i, j as u8), dir)),
                None => by_edge.push((class, vec![((i, j as u8), dir)])),
            }
        }
        side_edge_class.push(side_classes);
    }

    let mut complex = TriangleComplex::new(face_slots.len());
    for (class, sides) in by_edge {
        if sides.len() != 2 {
            return Err(SurfaceError::NonManifoldEdge { edge: class, count: sides.len() });
        }
        let ((s1, d1), (s2, d2)) = (sides[0], sides[1]);
        // Same direction against the class means corner j matches
        // corner j'.
        complex.glue(s1, s2, d1 != d2);
    }

    Ok(BoundaryView { complex, face_slots, side_edge_class, corner_vertex_class })
}

impl BoundaryView {
    /// Triangle indices whose closure meets any of the given ambient
    /// edge classes.
    pub fn triangles_touching_edges(&self, edges: &[usize]) -> Vec<usize> {
        (0..self.complex.len())
            .filter(|&i| self.side_edge_class[i].iter().any(|c| edges.contains(c)))
            .collect()
    }

    /// Triangle indices incident to any of the given ambient vertex
    /// classes.
    pub fn triangles_touching_vertices(&self, vertices: &[usize]) -> Vec<usize> {
        (0..self.complex.len())
            .filter(|&i| self.corner_vertex_class[i].iter().any(|c| vertices.contains(c)))
            .collect()
    }
}

/// One connected component of the boundary, with the same back
/// references as [`BoundaryView`].
pub struct BoundaryComponent {
    pub complex: TriangleComplex,
    pub face_slots: Vec<(usize, u8)>,
    pub side_edge_class: Vec<[usize; 3]>,
    pub corner_vertex_class: Vec<[usize; 3]>,
}

impl BoundaryComponent {
    /// Some (triangle, side) lying over the ambient edge class.
    pub fn side_of_edge(&self, class: usize) -> Option<(usize, u8)> {
        for (i, sides) in self.side_edge_class.iter().enumerate() {
            for (j, &c) in sides.iter().enumerate() {
                if c == class {
                    return Some((i, j as u8));
                }
            }
        }
        None
    }

    /// Triangle of the component lying in the ambient face slot.
    pub fn triangle_of_slot(&self, slot: (usize, u8)) -> Option<usize> {
        self.face_slots.iter().position(|&s| s == slot)
    }
}

/// Connected components of the boundary, ordered by their smallest
/// ambient face slot.
pub fn boundary_components(
    tri: &Triangulation,
    sk: &Skeleton,
) -> Result<Vec<BoundaryComponent>, SurfaceError> {
    let bv = boundary_view(tri, sk)?;
    let comps = bv.complex.components();
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps {
        let (complex, orig) = bv.complex.restrict(&comp);
        out.push(BoundaryComponent {
            complex,
            face_slots: orig.iter().map(|&i| bv.face_slots[i]).collect(),
            side_edge_class: orig.iter().map(|&i| bv.side_edge_class[i]).collect(),
            corner_vertex_class: orig.iter().map(|&i| bv.corner_vertex_class[i]).collect(),
        });
    }
    Ok(out)
}
