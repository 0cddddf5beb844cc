//! Normal surfaces in coordinate form: seven numbers per tetrahedron
//! counting parallel copies of the four triangle types and three quad
//! types, together with the matching system that makes the pieces fit
//! across faces and the exact Euler characteristic of the result.

pub mod curves;
pub mod essential;
pub mod reconstruct;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::homology::matrix::IntMatrix;
use crate::triangulation::perm::{corner_map, edge_index, EDGE_PAIRS, FACE_CORNERS};
use crate::triangulation::{Skeleton, Triangulation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error("coordinate vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("surface has {disks} disks, over the reconstruction budget")]
    BudgetExceeded { disks: num_bigint::BigInt },
    #[error("boundary component is not a torus")]
    NotATorus,
    #[error("boundary curve is not connected")]
    CurveNotConnected,
    #[error("first homology of the boundary torus maps onto more than one circle factor")]
    WrongHomology,
    #[error("extreme ray {index} exceeds the coordinate bound")]
    RayBoundViolated { index: usize },
    #[error("ray enumeration gave up after {pairs} candidate pairs")]
    EnumerationBudget { pairs: u64 },
}

/// The quad type disjoint from edge `e` (and from its opposite edge);
/// it separates the two.
pub fn quad_of_edge(e: u8) -> u8 {
    if e < 3 {
        e
    } else {
        5 - e
    }
}

/// The quad type whose arc in face `f` cuts off corner `v`: the quad
/// separating `v` from the corner opposite the face.
pub fn quad_cutting(v: u8, f: u8) -> u8 {
    debug_assert_ne!(v, f);
    quad_of_edge(edge_index(v.min(f), v.max(f)))
}

/// Coordinates of a normal surface: for tetrahedron `t`, positions
/// `7t..7t + 4` count the triangle types at corners 0..4 and positions
/// `7t + 4..7t + 7` the quad types 0..3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSurfaceVector {
    coords: Vec<BigInt>,
}

impl NormalSurfaceVector {
    pub fn new(tets: usize, coords: Vec<BigInt>) -> Result<Self, NormalError> {
        if coords.len() != 7 * tets {
            return Err(NormalError::DimensionMismatch { expected: 7 * tets, got: coords.len() });
        }
        Ok(NormalSurfaceVector { coords })
    }

    pub fn zeros(tets: usize) -> Self {
        NormalSurfaceVector { coords: vec![BigInt::zero(); 7 * tets] }
    }

    pub fn tets(&self) -> usize {
        self.coords.len() / 7
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn tri(&self, t: usize, v: u8) -> &BigInt {
        &self.coords[7 * t + v as usize]
    }

    pub fn quad(&self, t: usize, q: u8) -> &BigInt {
        &self.coords[7 * t + 4 + q as usize]
    }

    pub fn set_tri(&mut self, t: usize, v: u8, x: impl Into<BigInt>) {
        self.coords[7 * t + v as usize] = x.into();
    }

    pub fn set_quad(&mut self, t: usize, q: u8, x: impl Into<BigInt>) {
        self.coords[7 * t + 4 + q as usize] = x.into();
    }

    /// The link of a vertex class: one triangle of each slot.
    pub fn vertex_link(sk: &Skeleton, class: usize) -> Self {
        let mut x = NormalSurfaceVector::zeros(sk.vertex_class.len() / 4);
        for &slot in &sk.vertex_members[class] {
            x.set_tri(slot / 4, (slot % 4) as u8, 1);
        }
        x
    }

    pub fn scaled_add(&mut self, c: &BigInt, other: &NormalSurfaceVector) {
        assert_eq!(self.coords.len(), other.coords.len());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += c * b;
        }
    }
}

/// Nonnegative with at most one nonzero quad type per tetrahedron.
pub fn is_admissible(x: &NormalSurfaceVector) -> bool {
    if x.coords.iter().any(|c| c.sign() == num_bigint::Sign::Minus) {
        return false;
    }
    (0..x.tets()).all(|t| (0..3).filter(|&q| !x.quad(t, q).is_zero()).count() <= 1)
}

/// One row per face pairing and corner: the triangle and quad counts
/// inducing a given arc type must agree from both sides. A solution
/// glues up into a surface; for a closed triangulation there are
/// exactly `6n` rows.
pub fn matching_matrix(tri: &Triangulation) -> IntMatrix {
    let n = tri.size();
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for (t1, f1, g) in tri.pairings() {
        let cm = corner_map(f1, g.face, g.perm);
        for &v1 in &FACE_CORNERS[f1 as usize] {
            let v2 = cm[v1 as usize];
            let mut row = vec![
                (7 * t1 + v1 as usize, 1),
                (7 * t1 + 4 + quad_cutting(v1, f1) as usize, 1),
                (7 * g.tet + v2 as usize, -1),
                (7 * g.tet + 4 + quad_cutting(v2, g.face) as usize, -1),
            ];
            // A face glued to itself can pit a coordinate against
            // itself; keep the row well formed by merging.
            row.sort_unstable();
            rows.push(row);
        }
    }
    let mut m = IntMatrix::zeros(rows.len(), 7 * n);
    for (i, row) in rows.iter().enumerate() {
        for &(j, c) in row {
            let cur = m.get(i, j) + c;
            m.set(i, j, cur);
        }
    }
    m
}

/// Whether `x` lies in the kernel of the matching system.
pub fn satisfies_matching(m: &IntMatrix, x: &NormalSurfaceVector) -> bool {
    assert_eq!(m.cols(), x.coords.len());
    (0..m.rows()).all(|i| {
        let mut s = BigInt::zero();
        for j in 0..m.cols() {
            let c = m.get(i, j);
            if !c.is_zero() {
                s += c * &x.coords[j];
            }
        }
        s.is_zero()
    })
}

/// Euler characteristic of the surface carried by a matched vector,
/// computed cell by cell: disks are faces, arcs in triangulation faces
/// are edges, crossings of triangulation edges are vertices. Arc and
/// crossing counts agree across the slots of a class; the sums below
/// divide exactly, and a failed division means the vector was not
/// matched.
pub fn euler_characteristic(
    tri: &Triangulation,
    sk: &Skeleton,
    x: &NormalSurfaceVector,
) -> BigInt {
    assert_eq!(x.tets(), tri.size());
    let n_f: BigInt = x.coords.iter().sum();

    let mut n_e = BigInt::zero();
    for members in &sk.face_members {
        let mut arcs = BigInt::zero();
        for &slot in members {
            let (t, f) = (slot / 4, (slot % 4) as u8);
            for &v in &FACE_CORNERS[f as usize] {
                arcs += x.tri(t, v) + x.quad(t, quad_cutting(v, f));
            }
        }
        let (q, r) = arcs.div_rem(&BigInt::from(members.len()));
        assert!(r.is_zero(), "arc counts disagree across a face class");
        n_e += q;
    }

    let mut n_v = BigInt::zero();
    for members in &sk.edge_members {
        let mut crossings = BigInt::zero();
        for &slot in members {
            let (t, e) = (slot / 6, (slot % 6) as u8);
            let (a, b) = EDGE_PAIRS[e as usize];
            crossings += x.tri(t, a) + x.tri(t, b);
            for q in 0..3 {
                if q != quad_of_edge(e) {
                    crossings += x.quad(t, q);
                }
            }
        }
        let (q, r) = crossings.div_rem(&BigInt::from(members.len()));
        assert!(r.is_zero(), "crossing counts disagree across an edge class");
        n_v += q;
    }

    n_v - n_e + n_f
}
