//! Generalized triangulations: tetrahedra with affine face pairings.
//!
//! A triangulation is a list of abstract tetrahedra and a partial
//! matching of their faces. Faces, edges and corners of a tetrahedron
//! are indexed by the conventions in [`perm`]: face `f` is opposite
//! vertex `f`, corners of a face are listed in increasing order, and a
//! pairing permutation relates those sorted corner lists.
//!
//! The quotient skeleton (vertex, edge and face classes of the glued
//! complex) is computed by union-find over the slots of all tetrahedra.
//! Edges additionally carry a parity so that an edge identified with
//! itself in reverse is detected and rejected; such a quotient is not a
//! triangulation in the sense used here.

pub mod loops;
pub mod perm;
pub mod subdivide;

use crate::unionfind::{ParityUnionFind, UnionFind};
use perm::{corner_map, corner_map_sign, edge_index, perm_inverse, perm_sign, EDGE_PAIRS, FACE_CORNERS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("index out of range in pairing ({tet}, {face}) with permutation {perm}: triangulation has {size} tetrahedra")]
    IndexOutOfRange { tet: usize, face: u8, perm: u8, size: usize },
    #[error("face slot ({tet}, {face}) appears in more than one pairing")]
    DuplicateFaceSlot { tet: usize, face: u8 },
    #[error("face slot ({tet}, {face}) is paired with itself")]
    SelfPairing { tet: usize, face: u8 },
    #[error("edge {edge} of tetrahedron {tet} is identified with itself reversed")]
    EdgeSelfReversed { tet: usize, edge: u8 },
}

/// One side of a face pairing, as seen from the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    /// Permutation from the sorted corners of the source face to the
    /// sorted corners of `face`.
    pub perm: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    glue: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    pub fn new(size: usize) -> Self {
        Triangulation { glue: vec![[None; 4]; size] }
    }

    pub fn size(&self) -> usize {
        self.glue.len()
    }

    /// Appends `count` unglued tetrahedra, returning the index of the
    /// first one.
    pub fn add_tets(&mut self, count: usize) -> usize {
        let start = self.glue.len();
        self.glue.resize(start + count, [None; 4]);
        start
    }

    /// Records the pairing of (t1, f1) with (t2, f2). The permutation
    /// maps sorted corners of f1 to sorted corners of f2; the reverse
    /// slot receives its inverse.
    pub fn add_gluing(
        &mut self,
        t1: usize,
        f1: u8,
        t2: usize,
        f2: u8,
        p: u8,
    ) -> Result<(), ValidationError> {
        let size = self.size();
        let range_err = ValidationError::IndexOutOfRange { tet: t1.max(t2), face: f1.max(f2), perm: p, size };
        if t1 >= size || t2 >= size || f1 > 3 || f2 > 3 || p > 5 {
            return Err(range_err);
        }
        if t1 == t2 && f1 == f2 {
            return Err(ValidationError::SelfPairing { tet: t1, face: f1 });
        }
        if self.glue[t1][f1 as usize].is_some() {
            return Err(ValidationError::DuplicateFaceSlot { tet: t1, face: f1 });
        }
        if self.glue[t2][f2 as usize].is_some() {
            return Err(ValidationError::DuplicateFaceSlot { tet: t2, face: f2 });
        }
        self.glue[t1][f1 as usize] = Some(Gluing { tet: t2, face: f2, perm: p });
        self.glue[t2][f2 as usize] = Some(Gluing { tet: t1, face: f1, perm: perm_inverse(p) });
        Ok(())
    }

    pub fn from_gluings(
        size: usize,
        gluings: &[(usize, u8, usize, u8, u8)],
    ) -> Result<Self, ValidationError> {
        let mut t = Triangulation::new(size);
        for &(t1, f1, t2, f2, p) in gluings {
            t.add_gluing(t1, f1, t2, f2, p)?;
        }
        Ok(t)
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.glue[tet][face as usize]
    }

    /// Every pairing once, keyed by its lexicographically smaller slot.
    pub fn pairings(&self) -> impl Iterator<Item = (usize, u8, Gluing)> + '_ {
        self.glue.iter().enumerate().flat_map(|(t, faces)| {
            faces.iter().enumerate().filter_map(move |(f, g)| {
                let g = (*g)?;
                if (t, f as u8) <= (g.tet, g.face) {
                    Some((t, f as u8, g))
                } else {
                    None
                }
            })
        })
    }

    /// Induced triangulation on a set of tetrahedra. Pairings with a
    /// removed tetrahedron become boundary faces. Returns the
    /// restriction and the original index of each kept tetrahedron.
    pub fn restrict(&self, keep: &[usize]) -> (Triangulation, Vec<usize>) {
        let mut orig: Vec<usize> = keep.to_vec();
        orig.sort_unstable();
        orig.dedup();
        let mut new_id = vec![usize::MAX; self.size()];
        for (ni, &oi) in orig.iter().enumerate() {
            new_id[oi] = ni;
        }
        let mut out = Triangulation::new(orig.len());
        for (ni, &oi) in orig.iter().enumerate() {
            for f in 0..4 {
                if let Some(g) = self.glue[oi][f] {
                    if new_id[g.tet] != usize::MAX {
                        out.glue[ni][f] =
                            Some(Gluing { tet: new_id[g.tet], face: g.face, perm: g.perm });
                    }
                }
            }
        }
        (out, orig)
    }

    pub fn boundary_face_slots(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (t, faces) in self.glue.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.is_none() {
                    out.push((t, f as u8));
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.glue.iter().all(|faces| faces.iter().all(Option::is_some))
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        self.skeleton().map(|_| ())
    }

    /// Computes the quotient skeleton. Fails only on an edge that is
    /// identified with itself reversed; the structural pairing errors
    /// are caught when gluings are added.
    pub fn skeleton(&self) -> Result<Skeleton, ValidationError> {
        let n = self.size();
        let mut vertices = UnionFind::new(4 * n);
        let mut edges = ParityUnionFind::new(6 * n);
        let mut faces = UnionFind::new(4 * n);
        let mut orient = ParityUnionFind::new(n);
        let mut orientable = true;

        for (t1, f1, g) in self.pairings() {
            let map = corner_map(f1, g.face, g.perm);
            faces.union(t1 * 4 + f1 as usize, g.tet * 4 + g.face as usize);
            for i in 0..3 {
                let c = FACE_CORNERS[f1 as usize][i];
                vertices.union(t1 * 4 + c as usize, g.tet * 4 + map[c as usize] as usize);
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    let u = FACE_CORNERS[f1 as usize][i];
                    let v = FACE_CORNERS[f1 as usize][j];
                    let (mu, mv) = (map[u as usize], map[v as usize]);
                    let e1 = edge_index(u, v);
                    let e2 = edge_index(mu, mv);
                    let rel = if mu < mv { 0 } else { 1 };
                    if edges
                        .union(t1 * 6 + e1 as usize, g.tet * 6 + e2 as usize, rel)
                        .is_err()
                    {
                        return Err(ValidationError::EdgeSelfReversed { tet: t1, edge: e1 });
                    }
                }
            }
            // Coherent orientations must flip across an orientation
            // preserving corner map.
            let rel = if corner_map_sign(map) == 1 { 1 } else { 0 };
            if orient.union(t1, g.tet, rel).is_err() {
                orientable = false;
            }
        }

        let (vertex_class, vertex_members) = canonicalize(4 * n, |s| vertices.find(s));
        let (face_class, face_members) = canonicalize(4 * n, |s| faces.find(s));
        let (edge_class, edge_members) = canonicalize(6 * n, |s| edges.find(s).0);

        // Slot parity relative to the minimal slot of its class.
        let mut root_parity = vec![0u8; 6 * n];
        for s in 0..6 * n {
            root_parity[s] = edges.find(s).1;
        }
        let mut rep_parity = vec![0u8; edge_members.len()];
        for (c, members) in edge_members.iter().enumerate() {
            rep_parity[c] = root_parity[members[0]];
        }
        let edge_orient: Vec<i8> = (0..6 * n)
            .map(|s| if root_parity[s] ^ rep_parity[edge_class[s]] == 0 { 1 } else { -1 })
            .collect();

        // A face class with two slots inherits its orientation from
        // the representative; the partner differs by the sign of the
        // pairing permutation on sorted corners.
        let mut face_orient = vec![1i8; 4 * n];
        for members in &face_members {
            if members.len() == 2 {
                let (rt, rf) = (members[0] / 4, members[0] % 4);
                let g = self.glue[rt][rf].expect("glued face class");
                debug_assert_eq!(g.tet * 4 + g.face as usize, members[1]);
                face_orient[members[1]] = perm_sign(g.perm);
            }
        }

        let mut face_boundary = vec![false; face_members.len()];
        let mut edge_boundary = vec![false; edge_members.len()];
        let mut vertex_boundary = vec![false; vertex_members.len()];
        for (t, f) in self.boundary_face_slots() {
            face_boundary[face_class[t * 4 + f as usize]] = true;
            for i in 0..3 {
                for j in i + 1..3 {
                    let u = FACE_CORNERS[f as usize][i];
                    let v = FACE_CORNERS[f as usize][j];
                    edge_boundary[edge_class[t * 6 + edge_index(u, v) as usize]] = true;
                }
            }
            for c in FACE_CORNERS[f as usize] {
                vertex_boundary[vertex_class[t * 4 + c as usize]] = true;
            }
        }

        let tet_sign: Vec<i8> = (0..n)
            .map(|t| if orient.find(t).1 == 0 { 1 } else { -1 })
            .collect();

        Ok(Skeleton {
            vertex_class,
            edge_class,
            edge_orient,
            face_class,
            face_orient,
            vertex_members,
            edge_members,
            face_members,
            vertex_boundary,
            edge_boundary,
            face_boundary,
            orientable,
            tet_sign,
        })
    }
}

fn canonicalize(slots: usize, mut find: impl FnMut(usize) -> usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut class_of_root = vec![usize::MAX; slots];
    let mut class = vec![0usize; slots];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..slots {
        let r = find(s);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = members.len();
            members.push(Vec::new());
        }
        class[s] = class_of_root[r];
        members[class_of_root[r]].push(s);
    }
    (class, members)
}

/// Quotient skeleton of a triangulation. Classes are numbered by their
/// minimal slot; slot `i` of tetrahedron `t` is `t * k + i` where `k`
/// is 4 for vertices and faces and 6 for edges. The representative of
/// a class is its first member.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub vertex_class: Vec<usize>,
    pub edge_class: Vec<usize>,
    /// +1 where the slot's corner order agrees with the orientation of
    /// the class representative, -1 where it is reversed.
    pub edge_orient: Vec<i8>,
    pub face_class: Vec<usize>,
    /// Same convention for face slots: sign of the pairing permutation
    /// relating the slot to its class representative.
    pub face_orient: Vec<i8>,
    pub vertex_members: Vec<Vec<usize>>,
    pub edge_members: Vec<Vec<usize>>,
    pub face_members: Vec<Vec<usize>>,
    pub vertex_boundary: Vec<bool>,
    pub edge_boundary: Vec<bool>,
    pub face_boundary: Vec<bool>,
    pub orientable: bool,
    /// Orientation signs making every pairing coherent, meaningful
    /// only when `orientable` holds.
    pub tet_sign: Vec<i8>,
}

impl Skeleton {
    pub fn vertex_count(&self) -> usize {
        self.vertex_members.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_members.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_members.len()
    }

    pub fn vertex_class_of(&self, tet: usize, corner: u8) -> usize {
        self.vertex_class[tet * 4 + corner as usize]
    }

    pub fn edge_class_of(&self, tet: usize, edge: u8) -> usize {
        self.edge_class[tet * 6 + edge as usize]
    }

    pub fn face_class_of(&self, tet: usize, face: u8) -> usize {
        self.face_class[tet * 4 + face as usize]
    }

    /// Degree of an edge class: the number of tetrahedron edge slots
    /// identified into it.
    pub fn edge_degree(&self, class: usize) -> usize {
        self.edge_members[class].len()
    }

    /// Tail and head vertex classes of an edge class, oriented by the
    /// corner order of its representative slot.
    pub fn edge_endpoints(&self, class: usize) -> (usize, usize) {
        let rep = self.edge_members[class][0];
        let (tet, e) = (rep / 6, rep % 6);
        let (u, v) = EDGE_PAIRS[e];
        (
            self.vertex_class[tet * 4 + u as usize],
            self.vertex_class[tet * 4 + v as usize],
        )
    }

    /// Representative slot of an edge class as (tet, edge).
    pub fn edge_rep(&self, class: usize) -> (usize, u8) {
        let rep = self.edge_members[class][0];
        (rep / 6, (rep % 6) as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two tetrahedra glued along all four faces by the identity
    /// permutation form a closed orientable 3-sphere with one vertex
    /// class per corner pair.
    fn doubled_tet() -> Triangulation {
        Triangulation::from_gluings(
            2,
            &[(0, 0, 1, 0, 0), (0, 1, 1, 1, 0), (0, 2, 1, 2, 0), (0, 3, 1, 3, 0)],
        )
        .unwrap()
    }

    #[test]
    fn lone_tetrahedron_has_trivial_skeleton() {
        let t = Triangulation::new(1);
        let sk = t.skeleton().unwrap();
        assert_eq!(sk.vertex_count(), 4);
        assert_eq!(sk.edge_count(), 6);
        assert_eq!(sk.face_count(), 4);
        assert!(sk.orientable);
        assert!(!t.is_closed());
        assert_eq!(t.boundary_face_slots().len(), 4);
        assert!(sk.face_boundary.iter().all(|&b| b));
        assert!(sk.edge_boundary.iter().all(|&b| b));
        assert!(sk.vertex_boundary.iter().all(|&b| b));
    }

    #[test]
    fn doubled_tet_is_closed_and_orientable() {
        let t = doubled_tet();
        assert!(t.is_closed());
        let sk = t.skeleton().unwrap();
        assert_eq!(sk.vertex_count(), 4);
        assert_eq!(sk.edge_count(), 6);
        assert_eq!(sk.face_count(), 4);
        assert!(sk.orientable);
        assert_ne!(sk.tet_sign[0], sk.tet_sign[1]);
        assert!(sk.face_boundary.iter().all(|&b| !b));
        for c in 0..sk.edge_count() {
            assert_eq!(sk.edge_degree(c), 2);
        }
    }

    #[test]
    fn pairing_errors_are_reported() {
        let mut t = Triangulation::new(2);
        assert_eq!(
            t.add_gluing(0, 0, 2, 1, 0),
            Err(ValidationError::IndexOutOfRange { tet: 2, face: 1, perm: 0, size: 2 })
        );
        assert_eq!(
            t.add_gluing(0, 0, 0, 0, 2),
            Err(ValidationError::SelfPairing { tet: 0, face: 0 })
        );
        t.add_gluing(0, 0, 1, 0, 0).unwrap();
        assert_eq!(
            t.add_gluing(0, 0, 1, 1, 0),
            Err(ValidationError::DuplicateFaceSlot { tet: 0, face: 0 })
        );
    }

    #[test]
    fn reverse_slot_carries_inverse_permutation() {
        let mut t = Triangulation::new(2);
        t.add_gluing(0, 1, 1, 2, 3).unwrap();
        let g = t.gluing(1, 2).unwrap();
        assert_eq!(g.tet, 0);
        assert_eq!(g.face, 1);
        assert_eq!(g.perm, perm_inverse(3));
        assert_eq!(t.pairings().count(), 1);
    }

    #[test]
    fn edge_identified_with_itself_reversed_is_rejected() {
        // Pair faces 2 and 3 of a lone tetrahedron so that the shared
        // edge {0,1} returns to itself with opposite direction.
        // Face 2 corners (0,1,3), face 3 corners (0,1,2). Perm 2 sends
        // 0->1, 1->0, 3->2, so edge {0,1} -> {1,0}: reversed.
        let mut t = Triangulation::new(1);
        t.add_gluing(0, 2, 0, 3, 2).unwrap();
        assert_eq!(
            t.skeleton().unwrap_err(),
            ValidationError::EdgeSelfReversed { tet: 0, edge: 0 }
        );
    }

    #[test]
    fn edge_orientations_are_consistent_within_a_class() {
        let t = doubled_tet();
        let sk = t.skeleton().unwrap();
        // Identity gluings preserve corner order everywhere.
        assert!(sk.edge_orient.iter().all(|&o| o == 1));
        // Each edge class has one slot in each tetrahedron.
        for members in &sk.edge_members {
            assert_eq!(members.len(), 2);
        }
    }

    #[test]
    fn class_ids_follow_minimal_slots() {
        let t = doubled_tet();
        let sk = t.skeleton().unwrap();
        // Classes seen while scanning slots in order get ascending ids.
        assert_eq!(sk.vertex_class[0], 0);
        assert_eq!(sk.vertex_class[1], 1);
        assert_eq!(sk.edge_class[0], 0);
        let mut seen = Vec::new();
        for &c in &sk.edge_class {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        assert_eq!(seen, (0..sk.edge_count()).collect::<Vec<_>>());
    }
}
