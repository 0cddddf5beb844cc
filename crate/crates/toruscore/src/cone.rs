//! Extreme rays of the cone of nonnegative solutions of an integer
//! equality system, by double description: start from the orthant and
//! cut one hyperplane at a time, keeping the zero rays and the
//! adjacent positive-negative combinations. Everything is exact; rays
//! come out primitive and sorted.
//!
//! Enumeration can be restricted to rays whose support satisfies a
//! predicate closed under subsets. Rays with bad supports are dropped
//! as they appear, which keeps intermediate generations small. The
//! restriction loses nothing: a combination of rays from opposite
//! sides of a hyperplane has support exactly the union of the two
//! supports, so the parents of a good extreme ray are good, and a
//! surviving witness inside that union certifies every non-adjacent
//! pair whose combination would have been kept.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::homology::matrix::{smith_normal_form_extended, IntMatrix, RowEchelon};
use crate::normal::reconstruct::reconstruct;
use crate::normal::{is_admissible, matching_matrix, NormalError, NormalSurfaceVector};
use crate::triangulation::Triangulation;

struct Ray {
    v: Vec<BigInt>,
    /// Bitset over coordinates: which entries vanish.
    zero: Vec<u64>,
}

fn zero_bits(v: &[BigInt]) -> Vec<u64> {
    let mut bits = vec![0u64; v.len().div_ceil(64)];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            bits[j / 64] |= 1 << (j % 64);
        }
    }
    bits
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

fn sparse_rows(a: &IntMatrix) -> Vec<Vec<(usize, BigInt)>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .filter(|&j| !a.get(i, j).is_zero())
                .map(|j| (j, a.get(i, j).clone()))
                .collect()
        })
        .collect()
}

fn dot(row: &[(usize, BigInt)], v: &[BigInt]) -> BigInt {
    row.iter().map(|(j, c)| c * &v[*j]).sum()
}

fn dd_core(
    a: &IntMatrix,
    keep: impl Fn(&[u64]) -> bool,
    max_pairs: u64,
) -> Result<Vec<Ray>, NormalError> {
    let n = a.cols();
    let rows = sparse_rows(a);
    let trace = std::env::var_os("CONE_TRACE").is_some();
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::from(1);
            let zero = zero_bits(&v);
            Ray { v, zero }
        })
        .filter(|r| keep(&r.zero))
        .collect();

    let mut pairs: u64 = 0;
    for row in &rows {
        let dots: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_negative()).collect();
        let cut = pos.len() as u64 * neg.len() as u64;
        pairs = pairs.saturating_add(cut);
        // Each pair scans all current rays for witnesses, so the
        // projected work of this cut alone is pairs times rays.
        let projected = cut.saturating_mul(rays.len() as u64);
        if pairs > max_pairs || projected > max_pairs.saturating_mul(64) {
            return Err(NormalError::EnumerationBudget { pairs });
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if dots[i].is_zero() {
                next.push(Ray { v: r.v.clone(), zero: r.zero.clone() });
            }
        }
        for &p in &pos {
            for &m in &neg {
                let meet: Vec<u64> = rays[p]
                    .zero
                    .iter()
                    .zip(&rays[m].zero)
                    .map(|(x, y)| x & y)
                    .collect();
                if !keep(&meet) {
                    continue;
                }
                // Adjacency: no third ray is tight everywhere both are.
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(w, rw)| w != p && w != m && is_subset(&meet, &rw.zero));
                if blocked {
                    continue;
                }
                let (dp, dm) = (&dots[p], &dots[m]);
                let v: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[m].v)
                    .map(|(xp, xm)| dp * xm - dm * xp)
                    .collect();
                let v = primitive(v);
                let zero = zero_bits(&v);
                next.push(Ray { v, zero });
            }
        }
        next.sort_unstable_by(|x, y| x.v.cmp(&y.v));
        next.dedup_by(|x, y| x.v == y.v);
        rays = next;
        if trace {
            eprintln!(
                "cut: {} rays ({} pos x {} neg), {} pairs total",
                rays.len(),
                pos.len(),
                neg.len(),
                pairs
            );
        }
    }

    for r in &rays {
        let supp: Vec<usize> = (0..n).filter(|&j| !r.v[j].is_zero()).collect();
        let mut ech = RowEchelon::new(supp.len());
        for row in &rows {
            if row.iter().any(|(j, _)| !r.v[*j].is_zero()) {
                ech.insert(
                    supp.iter()
                        .map(|&j| {
                            row.iter()
                                .find(|(k, _)| *k == j)
                                .map_or_else(BigInt::zero, |(_, c)| c.clone())
                        })
                        .collect(),
                );
            }
        }
        assert_eq!(supp.len() - ech.rank(), 1, "ray fails the support rank test");
    }

    rays.sort_unstable_by(|x, y| x.v.cmp(&y.v));
    Ok(rays)
}

/// Primitive generators of the extreme rays of
/// `{x >= 0 : a x = 0}`, sorted lexicographically. Every returned ray
/// passes the support rank test: the columns it is supported on have
/// kernel of dimension exactly one.
pub fn enumerate_extreme_rays(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    dd_core(a, |_| true, u64::MAX)
        .expect("unbudgeted run")
        .into_iter()
        .map(|r| r.v)
        .collect()
}

/// True when the zero bitset leaves at most one of the three quad
/// coordinates of each tetrahedron nonzero.
fn quad_support_ok(zero: &[u64], tets: usize) -> bool {
    for t in 0..tets {
        let mut live = 0;
        for q in 0..3 {
            let j = 7 * t + 4 + q;
            if zero[j / 64] & (1 << (j % 64)) == 0 {
                live += 1;
            }
        }
        if live > 1 {
            return false;
        }
    }
    true
}

/// The admissible extreme rays of the matching cone of a
/// triangulation, in standard coordinates, sorted lexicographically.
/// Equivalent to filtering [`enumerate_extreme_rays`] by
/// admissibility, but prunes two-quad supports during the run.
pub fn enumerate_admissible_extreme_rays(a: &IntMatrix, tets: usize) -> Vec<Vec<BigInt>> {
    enumerate_admissible_extreme_rays_with(a, tets, u64::MAX).expect("unbudgeted run")
}

/// Budgeted variant: gives up with [`NormalError::EnumerationBudget`]
/// once the cumulative number of candidate ray pairs passes
/// `max_pairs`. No partial ray is ever returned; intermediate rays of
/// an unfinished run are not extreme rays of the full cone.
pub fn enumerate_admissible_extreme_rays_with(
    a: &IntMatrix,
    tets: usize,
    max_pairs: u64,
) -> Result<Vec<Vec<BigInt>>, NormalError> {
    assert_eq!(a.cols(), 7 * tets, "standard coordinates have seven entries per tet");
    Ok(dd_core(a, |zero| quad_support_ok(zero, tets), max_pairs)?
        .into_iter()
        .map(|r| r.v)
        .collect())
}

/// Reference enumeration for small systems: try every support set,
/// keep those whose column restriction has a one-dimensional kernel
/// spanned by a strictly positive vector.
pub fn support_subset_rays(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    assert!(n <= 20, "support enumeration is exponential in the dimension");
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let sub = IntMatrix::from_fn(a.rows(), cols.len(), |i, j| a.get(i, cols[j]).clone());
        let ext = smith_normal_form_extended(&sub);
        let rank = ext.rank();
        if cols.len() - rank != 1 {
            continue;
        }
        let mut gen: Vec<BigInt> = ext.q.column(rank);
        if gen.iter().any(Zero::is_zero) {
            continue;
        }
        if gen[0].is_negative() {
            for x in gen.iter_mut() {
                *x = -&*x;
            }
        }
        if gen.iter().any(Signed::is_negative) {
            continue;
        }
        let mut full = vec![BigInt::zero(); n];
        for (k, &j) in cols.iter().enumerate() {
            full[j] = gen[k].clone();
        }
        out.push(primitive(full));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// A vertex ray set aside because its surface was too big to rebuild
/// within the disk budget.
#[derive(Debug, Clone)]
pub struct SkippedRay {
    pub index: usize,
    pub disks: BigInt,
}

/// The vertex normal surfaces of a triangulation that can serve as
/// certificates: admissible extreme rays of the matching cone whose
/// surface is connected and two-sided. Rays too large for the budget
/// are reported rather than silently dropped, and any ray exceeding
/// the theoretical coordinate bound is a hard error.
pub fn vertex_surface_candidates(
    tri: &Triangulation,
    max_disks: u64,
) -> Result<(Vec<NormalSurfaceVector>, Vec<SkippedRay>), NormalError> {
    vertex_surface_candidates_with(tri, max_disks, u64::MAX)
}

/// Like [`vertex_surface_candidates`] with a cap on enumeration work;
/// an exhausted budget is an error, not an empty stream, so callers
/// can report incompleteness honestly.
pub fn vertex_surface_candidates_with(
    tri: &Triangulation,
    max_disks: u64,
    max_pairs: u64,
) -> Result<(Vec<NormalSurfaceVector>, Vec<SkippedRay>), NormalError> {
    let m = matching_matrix(tri);
    let rays = enumerate_admissible_extreme_rays_with(&m, tri.size(), max_pairs)?;
    let bound = BigInt::from(1) << (7 * tri.size() - 1);
    let mut surfaces = Vec::new();
    let mut skipped = Vec::new();
    for (index, ray) in rays.into_iter().enumerate() {
        if ray.iter().any(|c| c > &bound) {
            return Err(NormalError::RayBoundViolated { index });
        }
        let x = NormalSurfaceVector::new(tri.size(), ray)?;
        debug_assert!(is_admissible(&x));
        match reconstruct(tri, &x, max_disks) {
            Ok(s) => {
                if s.complex.connected() && s.complex.orientable() {
                    surfaces.push(x);
                }
            }
            Err(NormalError::BudgetExceeded { disks }) => {
                skipped.push(SkippedRay { index, disks });
            }
            Err(e) => return Err(e),
        }
    }
    Ok((surfaces, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rays_of(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, cols)
        } else {
            IntMatrix::from_rows(rows)
        };
        enumerate_extreme_rays(&m)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn admissible_only(rays: Vec<Vec<BigInt>>, tets: usize) -> Vec<Vec<BigInt>> {
        rays.into_iter()
            .filter(|v| {
                (0..tets).all(|t| {
                    (0..3).filter(|&q| !v[7 * t + 4 + q].is_zero()).count() <= 1
                })
            })
            .collect()
    }

    #[test]
    fn orthant_rays_are_unit_vectors() {
        let rays = rays_of(&[], 3);
        assert_eq!(rays, vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
    }

    #[test]
    fn balance_constraint_gives_the_diagonal() {
        let rays = rays_of(&[vec![1, -1]], 2);
        assert_eq!(rays, vec![ints(&[1, 1])]);
    }

    #[test]
    fn infeasible_sum_has_no_rays() {
        let rays = rays_of(&[vec![1, 1]], 2);
        assert!(rays.is_empty());
    }

    #[test]
    fn kirchhoff_square_has_four_rays() {
        // Two independent two-coordinate balances: the defect cone is
        // a product of two half-lines.
        let rays = rays_of(&[vec![1, -1, 0, 0], vec![0, 0, 1, -1]], 4);
        assert_eq!(rays, vec![ints(&[0, 0, 1, 1]), ints(&[1, 1, 0, 0])]);
    }

    #[test]
    fn oracle_agrees_on_handmade_systems() {
        for rows in [
            vec![vec![1, -1, 0], vec![0, 1, -1]],
            vec![vec![1, 1, -1]],
            vec![vec![2, -3, 0, 1]],
            vec![vec![1, -1, 1, -1], vec![1, 0, -1, 0]],
        ] {
            let m = IntMatrix::from_rows(&rows);
            assert_eq!(enumerate_extreme_rays(&m), support_subset_rays(&m));
        }
    }

    #[test]
    fn oracle_agrees_on_random_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let rows = rng.gen_range(0..4usize);
            let cols = rng.gen_range(2..8usize);
            let m = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-2i64..=2)));
            assert_eq!(enumerate_extreme_rays(&m), support_subset_rays(&m));
        }
    }

    #[test]
    fn oracle_agrees_on_the_one_tet_matching_cone() {
        let tri = fixtures::one_tet_solid_torus();
        let m = matching_matrix(&tri);
        let dd = enumerate_extreme_rays(&m);
        assert_eq!(dd, support_subset_rays(&m));
        assert!(!dd.is_empty());
        let filtered = enumerate_admissible_extreme_rays(&m, 1);
        assert_eq!(filtered, admissible_only(dd, 1));
    }

    #[test]
    fn oracle_agrees_on_the_doubled_tet_cone() {
        let tri = fixtures::doubled_tet();
        let m = matching_matrix(&tri);
        let dd = enumerate_extreme_rays(&m);
        assert_eq!(dd, support_subset_rays(&m));
        // Vertex links and quad spheres at least.
        assert!(dd.len() >= 7);
        let filtered = enumerate_admissible_extreme_rays(&m, 2);
        assert_eq!(filtered, admissible_only(dd, 2));
    }

    #[test]
    fn doubled_tet_candidates_are_spheres() {
        let tri = fixtures::doubled_tet();
        let (surfaces, skipped) = vertex_surface_candidates(&tri, 1 << 20).unwrap();
        assert!(skipped.is_empty());
        assert!(!surfaces.is_empty());
        for x in &surfaces {
            let s = reconstruct(&tri, x, 1 << 20).unwrap();
            assert!(s.complex.is_closed());
            assert_eq!(s.complex.euler(), 2);
        }
    }

    #[test]
    fn tiny_budget_reports_skips() {
        let tri = fixtures::doubled_tet();
        let (surfaces, skipped) = vertex_surface_candidates(&tri, 1).unwrap();
        assert!(surfaces.len() + skipped.len() >= 4);
        assert!(!skipped.is_empty());
    }
}
