//! Homology of the cell complex underlying a triangulation, and the
//! winding number functional it induces on knots.
//!
//! For a solid torus (or any space with infinite cyclic first
//! homology) there is a homomorphism from cycles to the integers whose
//! kernel is exactly the nullhomologous classes. [`winding_map`]
//! constructs it from two Smith normal forms: one of the vertex-edge
//! boundary map to coordinatize the cycle lattice, one of the face
//! boundaries expressed in those coordinates to split off the free
//! quotient.

pub mod chain;
pub mod matrix;
pub mod modp;

pub use chain::{chain_complex, homology_groups, ChainComplex, HomologyGroup};
pub use modp::h1_dims_mod;

use crate::triangulation::loops::KnotLoop;
use crate::triangulation::{Skeleton, Triangulation, ValidationError};
use matrix::{greedy_column_basis, smith_normal_form_extended, IntMatrix};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("triangulation is invalid: {0}")]
    InvalidTriangulation(#[from] ValidationError),
    #[error("first homology is not infinite cyclic (free rank {free_rank}, torsion {torsion:?})")]
    NotInfiniteCyclic { free_rank: usize, torsion: Vec<BigInt> },
}

/// The knot as a 1-cycle: coefficient per edge class, respecting the
/// traversal direction.
pub fn cycle_chain(sk: &Skeleton, knot: &KnotLoop) -> Vec<BigInt> {
    let mut z = vec![BigInt::zero(); sk.edge_count()];
    for (i, &e) in knot.edges().iter().enumerate() {
        z[e] += BigInt::from(knot.direction(sk, i));
    }
    z
}

/// Homomorphism from 1-cycles to the integers inducing an isomorphism
/// of the first homology with the integers. Exists only when the first
/// homology is infinite cyclic.
pub struct WindingMap {
    /// One weight per edge class; the winding of a cycle is the dot
    /// product.
    pub weights: Vec<BigInt>,
}

impl WindingMap {
    pub fn winding(&self, sk: &Skeleton, knot: &KnotLoop) -> BigInt {
        let z = cycle_chain(sk, knot);
        self.weights.iter().zip(&z).map(|(w, c)| w * c).sum()
    }
}

pub fn winding_map(cc: &ChainComplex) -> Result<WindingMap, HomologyError> {
    let ne = cc.d1.cols();
    let ext1 = smith_normal_form_extended(&cc.d1);
    let r1 = ext1.rank();
    let k = ne - r1;

    // Coordinates on the cycle lattice: rows r1.. of q1_inv. A vector
    // is a cycle iff its first r1 coordinates vanish, and the last k
    // coordinates identify it within the kernel.
    let cycle_coords = |v: &[BigInt]| -> Vec<BigInt> {
        let u = ext1.q_inv.apply(v);
        debug_assert!(u[..r1].iter().all(Zero::is_zero), "not a cycle");
        u[r1..].to_vec()
    };

    // Boundary lattice inside those coordinates, one column per
    // independent face boundary.
    let basis = greedy_column_basis(&cc.d2);
    let mut m = IntMatrix::zeros(k, basis.len());
    for (jj, &j) in basis.iter().enumerate() {
        let col = cycle_coords(&cc.d2.column(j));
        for (i, val) in col.into_iter().enumerate() {
            m.set(i, jj, val);
        }
    }

    let ext2 = smith_normal_form_extended(&m);
    let free_rank = k - ext2.rank();
    let torsion: Vec<BigInt> =
        ext2.divisors().into_iter().filter(|d| !d.is_one()).collect();
    if free_rank != 1 || !torsion.is_empty() {
        return Err(HomologyError::NotInfiniteCyclic { free_rank, torsion });
    }

    // In the coordinates p * c the quotient by the boundary lattice
    // kills everything except the last entry, so the functional is the
    // last row of p pulled back through the cycle coordinates.
    let p_last = ext2.p.row(k - 1);
    let weights = (0..ne)
        .map(|e| {
            (0..k)
                .map(|i| &p_last[i] * ext1.q_inv.get(r1 + i, e))
                .sum()
        })
        .collect();
    Ok(WindingMap { weights })
}

/// Absolute winding number of a knot around the solid torus.
pub fn rotation_number(tri: &Triangulation, knot: &KnotLoop) -> Result<BigInt, HomologyError> {
    let sk = tri.skeleton()?;
    let cc = chain_complex(tri, &sk);
    let map = winding_map(&cc)?;
    Ok(map.winding(&sk, knot).abs())
}
