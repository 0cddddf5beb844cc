//! Double covers classified by mod 2 cohomology.
//!
//! A double cover of a triangulation is cut out by a weight in Z/2 on
//! every face pairing: two copies of each tetrahedron, with weight 1
//! pairings crossing between the copies. The cover is an honest
//! covering space exactly when the weights around every interior edge
//! sum to zero, so the admissible weight vectors form the kernel of a
//! linear system over GF(2). Weights differing by a coboundary (a flip
//! of some set of tetrahedra) give isomorphic covers, and the quotient
//! is the first cohomology of the manifold with Z/2 coefficients.
//!
//! Covers separate spaces that homology alone cannot: the first
//! homology of a double cover is not determined by that of the base.
//! [`double_covers`] returns one cover per nonzero cohomology class.

use crate::triangulation::perm::{corner_map, EDGE_PAIRS};
use crate::triangulation::{Gluing, Triangulation, ValidationError};

/// Dense bit vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor_in(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn first_set(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }
}

/// Rows in reduced echelon form, each keyed by its pivot column.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Bits)>,
}

impl Echelon {
    fn reduce(&self, mut v: Bits) -> Bits {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_in(row);
            }
        }
        v
    }

    /// Reduces `v` and inserts the remainder if nonzero, keeping all
    /// rows reduced against each other. Returns whether the span grew.
    fn insert(&mut self, v: Bits) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.first_set() else { return false };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_in(&v);
            }
        }
        self.rows.push((p, v));
        true
    }

    fn pivots(&self) -> Vec<usize> {
        let mut ps: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        ps.sort_unstable();
        ps
    }
}

/// The face pairings of a triangulation together with one weight
/// vector per nonzero mod 2 cohomology class. Weights are indexed in
/// the order of [`Triangulation::pairings`].
pub struct CoverClasses {
    pub pairings: Vec<(usize, u8, Gluing)>,
    pub classes: Vec<Vec<bool>>,
}

/// Computes all nonzero classes of weight vectors. The relations are
/// one per interior edge: the walk around the edge must return to the
/// same copy.
pub fn mod2_cover_classes(tri: &Triangulation) -> Result<CoverClasses, ValidationError> {
    let sk = tri.skeleton()?;
    let n = tri.size();
    let pairings: Vec<(usize, u8, Gluing)> = tri.pairings().collect();
    let m = pairings.len();

    let mut pairing_of_slot = vec![usize::MAX; 4 * n];
    for (i, &(t, f, g)) in pairings.iter().enumerate() {
        pairing_of_slot[4 * t + f as usize] = i;
        pairing_of_slot[4 * g.tet + g.face as usize] = i;
    }

    // Relation matrix, one row per interior edge class.
    let mut relations = Echelon::default();
    for class in 0..sk.edge_count() {
        if sk.edge_boundary[class] {
            continue;
        }
        relations.insert(edge_relation(tri, &sk, class, &pairing_of_slot, m));
    }

    // Kernel basis from the reduced relations: one vector per free
    // column, solving each pivot row against it.
    let pivots = relations.pivots();
    let mut kernel = Vec::new();
    for j in 0..m {
        if pivots.binary_search(&j).is_ok() {
            continue;
        }
        let mut v = Bits::zeros(m);
        v.toggle(j);
        for (p, row) in &relations.rows {
            if row.get(j) {
                v.toggle(*p);
            }
        }
        kernel.push(v);
    }

    // Coboundaries: flipping one tetrahedron toggles every pairing
    // with exactly one end on it.
    let mut span = Echelon::default();
    for t in 0..n {
        let mut v = Bits::zeros(m);
        for (i, &(t1, _, g)) in pairings.iter().enumerate() {
            if (t1 == t) != (g.tet == t) {
                v.toggle(i);
            }
        }
        span.insert(v);
    }

    let mut reps: Vec<Bits> = Vec::new();
    for v in kernel {
        let r = span.reduce(v);
        if span.insert(r.clone()) {
            reps.push(r);
        }
    }

    let mut classes = Vec::new();
    for mask in 1u32..1 << reps.len() {
        let mut v = Bits::zeros(m);
        for (i, rep) in reps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v.xor_in(rep);
            }
        }
        classes.push((0..m).map(|i| v.get(i)).collect());
    }
    Ok(CoverClasses { pairings, classes })
}

/// Weights crossed by the walk around one interior edge class.
fn edge_relation(
    tri: &Triangulation,
    sk: &crate::triangulation::Skeleton,
    class: usize,
    pairing_of_slot: &[usize],
    m: usize,
) -> Bits {
    let (t0, e0) = sk.edge_rep(class);
    let (u0, v0) = EDGE_PAIRS[e0 as usize];
    let f0 = (0..4u8).find(|f| *f != u0 && *f != v0).expect("two faces contain the edge");

    let mut row = Bits::zeros(m);
    let (mut t, mut u, mut v, mut f) = (t0, u0, v0, f0);
    for _ in 0..sk.edge_degree(class) {
        let g = tri.gluing(t, f).expect("interior edge walk stays glued");
        row.toggle(pairing_of_slot[4 * t + f as usize]);
        let map = corner_map(f, g.face, g.perm);
        let (nu, nv) = (map[u as usize], map[v as usize]);
        t = g.tet;
        f = 6 - nu - nv - g.face;
        (u, v) = (nu, nv);
    }
    debug_assert_eq!((t, f), (t0, f0), "edge walk closes after one round");
    row
}

/// The double cover for one weight vector: tetrahedron `t` lifts to
/// `t` and `t + n`, and a weight 1 pairing swaps the copies.
pub fn double_cover(
    tri: &Triangulation,
    pairings: &[(usize, u8, Gluing)],
    weights: &[bool],
) -> Triangulation {
    assert_eq!(pairings.len(), weights.len());
    let n = tri.size();
    let mut out = Triangulation::new(2 * n);
    for (&(t1, f1, g), &w) in pairings.iter().zip(weights) {
        for s in 0..2usize {
            let s2 = if w { 1 - s } else { s };
            out.add_gluing(t1 + s * n, f1, g.tet + s2 * n, g.face, g.perm)
                .expect("cover pairings are fresh");
        }
    }
    out
}

/// One connected double cover per nonzero mod 2 cohomology class.
pub fn double_covers(tri: &Triangulation) -> Result<Vec<Triangulation>, ValidationError> {
    let cc = mod2_cover_classes(tri)?;
    Ok(cc.classes.iter().map(|w| double_cover(tri, &cc.pairings, w)).collect())
}
