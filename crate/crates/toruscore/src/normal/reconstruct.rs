//! Building the actual surface out of a coordinate vector: one
//! triangle cell per triangle disk, two per quad disk, glued along the
//! arcs where neighboring disks meet in the faces of the
//! triangulation.
//!
//! Conventions fixed here and relied on throughout: the corners of the
//! triangle disk at corner `v` sit on the edges from `v` to the other
//! corners in ascending order, and side `j` joins corners `j` and
//! `j + 1`. The quad of type `q` separates edge `(0, q + 1)` from its
//! opposite; its four corners run cyclically starting from the edge
//! pair at corner 0, and it is split along the diagonal into halves
//! `(c0, c1, c2)` and `(c0, c2, c3)`. Parallel copies are numbered
//! outward from the corner for triangles and away from edge
//! `(0, q + 1)` for quads.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{quad_cutting, NormalError, NormalSurfaceVector};
use crate::surface::TriangleComplex;
use crate::triangulation::perm::{corner_map, FACE_CORNERS};
use crate::triangulation::Triangulation;

/// One normal disk: `disk_type` 0..4 is the triangle at that corner,
/// 4..7 is quad type `disk_type - 4`. Quads appear twice, once per
/// half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiskCell {
    pub tet: usize,
    pub disk_type: u8,
    pub copy: usize,
    pub half: u8,
}

/// Where a cell side lies in the ambient triangulation: inside face
/// `face` of the cell's tetrahedron, cutting off corner `cut`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcInFace {
    pub face: u8,
    pub cut: u8,
}

#[derive(Debug, Clone)]
pub struct ReconstructedSurface {
    pub complex: TriangleComplex,
    /// Parallel to the triangles of `complex`.
    pub cells: Vec<DiskCell>,
}

/// The two corners of `P1`, ascending, for quad type `q`.
fn quad_far_pair(q: u8) -> (u8, u8) {
    let mut far = [0u8; 2];
    let mut k = 0;
    for c in 0..4u8 {
        if c != 0 && c != q + 1 {
            far[k] = c;
            k += 1;
        }
    }
    (far[0], far[1])
}

/// Quad side data: (half, side within the half, ordered endpoint
/// edges). Sides are numbered cyclically; 0 starts at the corner on
/// edges (0, p10).
fn quad_side(q: u8, qside: u8) -> (u8, u8, (u8, u8), (u8, u8)) {
    let (p00, p01) = (0u8, q + 1);
    let (p10, p11) = quad_far_pair(q);
    match qside {
        0 => (0, 0, ordered(p00, p10), ordered(p00, p11)),
        1 => (0, 1, ordered(p00, p11), ordered(p01, p11)),
        2 => (1, 1, ordered(p01, p11), ordered(p01, p10)),
        3 => (1, 2, ordered(p01, p10), ordered(p00, p10)),
        _ => unreachable!(),
    }
}

/// Which quad side lies in face `f` for quad type `q`.
fn quad_side_in_face(q: u8, f: u8) -> u8 {
    let (p00, p01) = (0u8, q + 1);
    let (p10, p11) = quad_far_pair(q);
    if f == p01 {
        0
    } else if f == p10 {
        1
    } else if f == p00 {
        2
    } else {
        debug_assert_eq!(f, p11);
        3
    }
}

struct Arc {
    id: usize,
    side: u8,
    e_start: (u8, u8),
    e_end: (u8, u8),
}

struct Builder {
    tri_counts: Vec<[usize; 4]>,
    quad_counts: Vec<[usize; 3]>,
    offsets: Vec<usize>,
}

impl Builder {
    fn tri_id(&self, t: usize, v: u8, copy: usize) -> usize {
        let mut id = self.offsets[t];
        for v2 in 0..v as usize {
            id += self.tri_counts[t][v2];
        }
        id + copy
    }

    fn quad_id(&self, t: usize, q: u8, copy: usize, half: u8) -> usize {
        let mut id = self.offsets[t] + self.tri_counts[t].iter().sum::<usize>();
        for q2 in 0..q as usize {
            id += 2 * self.quad_counts[t][q2];
        }
        id + 2 * copy + half as usize
    }

    /// The arcs in face `f` of tet `t` cutting off corner `v`, ordered
    /// outward from the corner: triangle copies first, then the quad
    /// copies nearest the corner's own edge pair first.
    fn arcs_at(&self, t: usize, v: u8, f: u8) -> Vec<Arc> {
        let others: Vec<u8> = (0..4u8).filter(|&c| c != v).collect();
        let idx = others.iter().position(|&c| c == f).unwrap();
        let j = (idx + 1) % 3;
        let mut arcs = Vec::new();
        for copy in 0..self.tri_counts[t][v as usize] {
            arcs.push(Arc {
                id: self.tri_id(t, v, copy),
                side: j as u8,
                e_start: ordered(v, others[j]),
                e_end: ordered(v, others[(j + 1) % 3]),
            });
        }
        let q = quad_cutting(v, f);
        let n_q = self.quad_counts[t][q as usize];
        let qside = quad_side_in_face(q, f);
        let (half, side, e_start, e_end) = quad_side(q, qside);
        for c in 0..n_q {
            // Copy 0 sits against edge (0, q + 1); it is nearest the
            // corner exactly when the corner's edge pair is that one.
            let copy = if v == 0 || f == 0 { c } else { n_q - 1 - c };
            arcs.push(Arc { id: self.quad_id(t, q, copy, half), side, e_start, e_end });
        }
        arcs
    }
}

fn ordered(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

fn count(c: &BigInt) -> usize {
    assert!(c.sign() != num_bigint::Sign::Minus, "negative normal coordinate");
    c.to_usize().expect("disk count exceeds address space")
}

/// Assembles the surface carried by a matched, admissible vector.
/// Fails with [`NormalError::BudgetExceeded`] when the total disk
/// count passes `max_disks`; unmatched vectors panic when arc counts
/// disagree across a face.
pub fn reconstruct(
    tri: &Triangulation,
    x: &NormalSurfaceVector,
    max_disks: u64,
) -> Result<ReconstructedSurface, NormalError> {
    assert_eq!(x.tets(), tri.size());
    let disks: BigInt = x.coords().iter().sum();
    if disks > BigInt::from(max_disks) {
        return Err(NormalError::BudgetExceeded { disks });
    }

    let n = tri.size();
    let mut b = Builder {
        tri_counts: vec![[0; 4]; n],
        quad_counts: vec![[0; 3]; n],
        offsets: vec![0; n],
    };
    let mut cells = Vec::new();
    for t in 0..n {
        b.offsets[t] = cells.len();
        for v in 0..4u8 {
            b.tri_counts[t][v as usize] = count(x.tri(t, v));
            for copy in 0..b.tri_counts[t][v as usize] {
                cells.push(DiskCell { tet: t, disk_type: v, copy, half: 0 });
            }
        }
        for q in 0..3u8 {
            b.quad_counts[t][q as usize] = count(x.quad(t, q));
            for copy in 0..b.quad_counts[t][q as usize] {
                for half in 0..2u8 {
                    cells.push(DiskCell { tet: t, disk_type: 4 + q, copy, half });
                }
            }
        }
    }

    let mut complex = TriangleComplex::new(cells.len());
    for t in 0..n {
        for q in 0..3u8 {
            for copy in 0..b.quad_counts[t][q as usize] {
                let a = b.quad_id(t, q, copy, 0);
                complex.glue((a, 2), (a + 1, 0), true);
            }
        }
    }
    for (t1, f1, g) in tri.pairings() {
        let cm = corner_map(f1, g.face, g.perm);
        for &v1 in &FACE_CORNERS[f1 as usize] {
            let v2 = cm[v1 as usize];
            let near = b.arcs_at(t1, v1, f1);
            let far = b.arcs_at(g.tet, v2, g.face);
            assert_eq!(near.len(), far.len(), "arc counts disagree across a face");
            for (a, c) in near.iter().zip(&far) {
                let image = ordered(cm[a.e_start.0 as usize], cm[a.e_start.1 as usize]);
                debug_assert!(image == c.e_start || image == c.e_end);
                complex.glue((a.id, a.side), (c.id, c.side), image != c.e_start);
            }
        }
    }

    Ok(ReconstructedSurface { complex, cells })
}

impl ReconstructedSurface {
    /// The ambient location of a cell side, if it lies in a face of
    /// the tetrahedron; the quad diagonal does not.
    pub fn arc_of_side(&self, id: usize, side: u8) -> Option<ArcInFace> {
        let cell = self.cells[id];
        if cell.disk_type < 4 {
            let v = cell.disk_type;
            let others: Vec<u8> = (0..4u8).filter(|&c| c != v).collect();
            return Some(ArcInFace { face: others[(side as usize + 2) % 3], cut: v });
        }
        let q = cell.disk_type - 4;
        let qside = match (cell.half, side) {
            (0, 0) => 0u8,
            (0, 1) => 1,
            (1, 1) => 2,
            (1, 2) => 3,
            _ => return None,
        };
        let (p00, p01) = (0u8, q + 1);
        let (p10, p11) = quad_far_pair(q);
        let (face, cut) = match qside {
            0 => (p01, p00),
            1 => (p10, p11),
            2 => (p00, p01),
            _ => (p11, p10),
        };
        Some(ArcInFace { face, cut })
    }
}
