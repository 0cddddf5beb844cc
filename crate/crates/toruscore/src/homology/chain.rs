//! Boundary matrices of the quotient cell complex of a triangulation.
//!
//! Chain groups are freely generated by the vertex, edge, face and
//! tetrahedron classes of the skeleton. An edge class is oriented by
//! the corner order of its representative slot, a face class by the
//! sorted corners of its representative; the boundary maps below are
//! expressed in those bases. `d1 * d2` and `d2 * d3` vanish, which the
//! test suite checks on every fixture.

use crate::homology::matrix::IntMatrix;
use crate::triangulation::perm::{edge_index, FACE_CORNERS};
use crate::triangulation::{Skeleton, Triangulation};
use num_bigint::BigInt;

pub struct ChainComplex {
    /// vertices x edges: head minus tail. Loop edges give zero columns.
    pub d1: IntMatrix,
    /// edges x faces.
    pub d2: IntMatrix,
    /// faces x tetrahedra.
    pub d3: IntMatrix,
}

pub fn chain_complex(tri: &Triangulation, sk: &Skeleton) -> ChainComplex {
    let (nv, ne, nf, nt) = (sk.vertex_count(), sk.edge_count(), sk.face_count(), tri.size());

    let mut d1 = IntMatrix::zeros(nv, ne);
    for e in 0..ne {
        let (tail, head) = sk.edge_endpoints(e);
        if tail != head {
            let v = d1.get(head, e) + 1;
            d1.set(head, e, v);
            let v = d1.get(tail, e) - 1;
            d1.set(tail, e, v);
        }
    }

    // Boundary of a face with sorted corners (x, y, z): the edge
    // (y, z) minus (x, z) plus (x, y), each oriented small to large
    // and translated into its class orientation.
    let mut d2 = IntMatrix::zeros(ne, nf);
    for fc in 0..nf {
        let rep = sk.face_members[fc][0];
        let (t, f) = (rep / 4, rep % 4);
        let [x, y, z] = FACE_CORNERS[f];
        for (sign, u, v) in [(1, y, z), (-1, x, z), (1, x, y)] {
            let slot = t * 6 + edge_index(u, v) as usize;
            let coeff = sign * sk.edge_orient[slot] as i64;
            let e = sk.edge_class[slot];
            let cur = d2.get(e, fc) + coeff;
            d2.set(e, fc, cur);
        }
    }

    // Boundary of a tetrahedron: alternating sum of its faces, each
    // translated into its class orientation.
    let mut d3 = IntMatrix::zeros(nf, nt);
    for t in 0..nt {
        for f in 0..4 {
            let slot = t * 4 + f;
            let sign = if f % 2 == 0 { 1 } else { -1 };
            let coeff = sign * sk.face_orient[slot] as i64;
            let fc = sk.face_class[slot];
            let cur = d3.get(fc, t) + coeff;
            d3.set(fc, t, cur);
        }
    }

    ChainComplex { d1, d2, d3 }
}

/// Finitely generated abelian group in invariant factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Homology groups H0 through H3 of the complex.
pub fn homology_groups(cc: &ChainComplex) -> [HomologyGroup; 4] {
    use crate::homology::matrix::smith_normal_form_extended;
    let e1 = smith_normal_form_extended(&cc.d1);
    let e2 = smith_normal_form_extended(&cc.d2);
    let e3 = smith_normal_form_extended(&cc.d3);
    let (r1, r2, r3) = (e1.rank(), e2.rank(), e3.rank());
    let nontrivial = |divs: Vec<BigInt>| -> Vec<BigInt> {
        divs.into_iter().filter(|d| *d != BigInt::from(1)).collect()
    };
    [
        HomologyGroup { free_rank: cc.d1.rows() - r1, torsion: nontrivial(e1.divisors()) },
        HomologyGroup {
            free_rank: cc.d1.cols() - r1 - r2,
            torsion: nontrivial(e2.divisors()),
        },
        HomologyGroup {
            free_rank: cc.d2.cols() - r2 - r3,
            torsion: nontrivial(e3.divisors()),
        },
        HomologyGroup { free_rank: cc.d3.cols() - r3, torsion: Vec::new() },
    ]
}
