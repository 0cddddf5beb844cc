//! First homology dimensions over small prime fields.
//!
//! Vertex classes generate a free group in degree zero, so over the
//! field with p elements the dimension of H1 equals the free rank of
//! the integral H1 plus the number of its invariant factors divisible
//! by p. Dimensions that disagree between two primes therefore certify
//! torsion without a Smith normal form, and the sparse elimination
//! here handles complexes far beyond the reach of the exact path.

use crate::triangulation::perm::{edge_index, FACE_CORNERS};
use crate::triangulation::Skeleton;

/// Sparse column: strictly increasing row indices, values in 1..p.
type Col = Vec<(usize, u64)>;

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `c - k * pivot`, both sorted by row.
fn axpy(c: &Col, k: u64, pivot: &Col, p: u64) -> Col {
    let mut out = Vec::with_capacity(c.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < pivot.len() {
        let (row, val) = if j == pivot.len() || (i < c.len() && c[i].0 < pivot[j].0) {
            let x = c[i];
            i += 1;
            x
        } else if i == c.len() || pivot[j].0 < c[i].0 {
            let (r, v) = pivot[j];
            j += 1;
            (r, (p - k) * v % p)
        } else {
            let v = (c[i].1 + (p - k) * pivot[j].1) % p;
            i += 1;
            j += 1;
            (c[i - 1].0, v)
        };
        if val != 0 {
            out.push((row, val));
        }
    }
    out
}

/// Rank by column elimination. Pivots are normalized to 1 and kept
/// reduced at their leading row only; shorter columns go first to
/// limit fill-in.
fn rank(nrows: usize, mut cols: Vec<Col>, p: u64) -> usize {
    cols.sort_by_key(Vec::len);
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced: Vec<Col> = Vec::new();
    let mut rank = 0;
    for mut c in cols {
        while let Some(&(r, v)) = c.first() {
            match pivot_of_row[r] {
                Some(k) => c = axpy(&c, v, &reduced[k], p),
                None => {
                    let inv = inv_mod(v, p);
                    for (_, x) in c.iter_mut() {
                        *x = *x * inv % p;
                    }
                    pivot_of_row[r] = Some(reduced.len());
                    reduced.push(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Sparse mod p columns of the two lower boundary maps: one column per
/// edge class over vertex rows, one per face class over edge rows,
/// with the same orientation conventions as the integral complex.
fn boundary_columns(sk: &Skeleton, p: u64) -> (Vec<Col>, Vec<Col>) {
    let d1 = (0..sk.edge_count())
        .map(|e| {
            let (tail, head) = sk.edge_endpoints(e);
            if tail == head {
                return Vec::new();
            }
            let mut col = vec![(head, 1), (tail, p - 1)];
            col.sort_unstable();
            col
        })
        .collect();

    let d2 = (0..sk.face_count())
        .map(|fc| {
            let rep = sk.face_members[fc][0];
            let (t, f) = (rep / 4, rep % 4);
            let [x, y, z] = FACE_CORNERS[f];
            let mut acc: Vec<(usize, i64)> = Vec::with_capacity(3);
            for (sign, u, v) in [(1i64, y, z), (-1, x, z), (1, x, y)] {
                let slot = t * 6 + edge_index(u, v) as usize;
                let coeff = sign * sk.edge_orient[slot] as i64;
                let e = sk.edge_class[slot];
                match acc.iter_mut().find(|(row, _)| *row == e) {
                    Some((_, c)) => *c += coeff,
                    None => acc.push((e, coeff)),
                }
            }
            let mut col: Col = acc
                .into_iter()
                .filter_map(|(row, c)| match c.rem_euclid(p as i64) as u64 {
                    0 => None,
                    v => Some((row, v)),
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();

    (d1, d2)
}

/// Dimension of H1 with coefficients in the field with p elements, one
/// entry per prime.
pub fn h1_dims_mod(sk: &Skeleton, primes: &[u64]) -> Vec<usize> {
    primes
        .iter()
        .map(|&p| {
            assert!(p >= 2 && p < 1 << 20, "prime out of range");
            let (d1, d2) = boundary_columns(sk, p);
            let r1 = rank(sk.vertex_count(), d1, p);
            let r2 = rank(sk.edge_count(), d2, p);
            sk.edge_count() - r1 - r2
        })
        .collect()
}
