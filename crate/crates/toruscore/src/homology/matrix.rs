//! Exact integer matrices, Smith normal form and rank computations.
//!
//! Everything here works over arbitrary-precision integers so that no
//! boundary matrix or divisor can silently overflow. Matrices are dense
//! and row-major; the dimensions involved (edge and face class counts)
//! stay small enough that sparse storage would buy nothing.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row slices of machine integers. Panics on
    /// ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + c * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation: `p * m * q = s` with `p`
/// and `q` unimodular and `s` diagonal, each diagonal entry dividing
/// the next.
pub struct SnfDecomposition {
    pub p: IntMatrix,
    pub s: IntMatrix,
    pub q: IntMatrix,
}

/// Smith normal form together with the inverses of the transforms,
/// accumulated during the reduction. `p_inv * s * q_inv = m`.
pub struct SnfExtended {
    pub p: IntMatrix,
    pub s: IntMatrix,
    pub q: IntMatrix,
    pub p_inv: IntMatrix,
    pub q_inv: IntMatrix,
}

impl SnfExtended {
    /// Number of nonzero diagonal entries, i.e. the rank of the input.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).filter(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// The nonzero diagonal entries, in divisibility order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).filter(|d| !d.is_zero()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let ext = smith_normal_form_extended(m);
    SnfDecomposition { p: ext.p, s: ext.s, q: ext.q }
}

/// Reduction state: every elementary operation is mirrored onto the
/// transform matrices and their inverses, so `p * m * q = s` and
/// `p * p_inv = q * q_inv = I` hold at every step.
struct SnfState {
    s: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_row_multiple(dst, src, c);
        self.p.add_row_multiple(dst, src, c);
        self.p_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_col_multiple(dst, src, c);
        self.q.add_col_multiple(dst, src, c);
        self.q_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.p.negate_row(i);
        for r in 0..self.p_inv.rows() {
            let v = -self.p_inv.get(r, i);
            self.p_inv.set(r, i, v);
        }
    }
}

pub fn smith_normal_form_extended(m: &IntMatrix) -> SnfExtended {
    let rows = m.rows();
    let cols = m.cols();
    let mut st = SnfState {
        s: m.clone(),
        p: IntMatrix::identity(rows),
        p_inv: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        q_inv: IntMatrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the active submatrix becomes the
        // pivot; picking the minimum keeps intermediate entries small.
        let Some((pi, pj)) = min_abs_nonzero(&st.s, t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);

        'reduce: loop {
            // Clear column t. A nonzero remainder yields a strictly
            // smaller pivot, so this loop terminates.
            for i in t + 1..rows {
                if st.s.get(i, t).is_zero() {
                    continue;
                }
                let f = st.s.get(i, t) / st.s.get(t, t);
                st.add_row(i, t, &-f);
                if !st.s.get(i, t).is_zero() {
                    st.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            // Clear row t.
            for j in t + 1..cols {
                if st.s.get(t, j).is_zero() {
                    continue;
                }
                let f = st.s.get(t, j) / st.s.get(t, t);
                st.add_col(j, t, &-f);
                if !st.s.get(t, j).is_zero() {
                    st.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // Divisibility: the pivot must divide the rest of the
            // active submatrix. Folding an offending row into row t
            // shrinks the pivot to a common divisor on the next pass.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !st.s.get(i, j).mod_floor(st.s.get(t, t)).is_zero() {
                        st.add_row(t, i, &BigInt::one());
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        if st.s.get(t, t).is_negative() {
            st.negate_row(t);
        }
    }

    SnfExtended { p: st.p, s: st.s, q: st.q, p_inv: st.p_inv, q_inv: st.q_inv }
}

fn min_abs_nonzero(m: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Incremental integer row echelon form. Vectors are reduced by
/// cross-multiplication, so membership in the spanned subspace is
/// decided exactly without fractions; entries are kept small by
/// dividing out content after every step.
pub struct RowEchelon {
    dim: usize,
    /// Sorted by pivot column; each row is content-free with positive
    /// leading entry.
    rows: Vec<Vec<BigInt>>,
}

impl RowEchelon {
    pub fn new(dim: usize) -> Self {
        RowEchelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows, zeroing every pivot
    /// position. Afterwards `v` is zero iff it lies in the span.
    pub fn reduce(&self, v: &mut Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        for row in &self.rows {
            let pc = leading(row).expect("stored rows are nonzero");
            if v[pc].is_zero() {
                continue;
            }
            let a = row[pc].clone();
            let b = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &a - r * &b;
            }
            normalize(v);
        }
    }

    /// Inserts `v` if it is independent of the rows so far; reports
    /// whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = leading(&v) else { return false };
        if v[pc].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        let pos = self.rows.partition_point(|r| leading(r).unwrap() < pc);
        self.rows.insert(pos, v);
        true
    }
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Divides out the gcd of all entries.
fn normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Rank over the rationals, computed exactly.
pub fn rank(m: &IntMatrix) -> usize {
    let mut ech = RowEchelon::new(m.cols());
    for i in 0..m.rows() {
        ech.insert(m.row(i));
    }
    ech.rank()
}

/// Greedy basis of the column space: scans columns left to right and
/// keeps each one that increases the rank. Returns the kept indices.
pub fn greedy_column_basis(m: &IntMatrix) -> Vec<usize> {
    let mut ech = RowEchelon::new(m.rows());
    let mut kept = Vec::new();
    for j in 0..m.cols() {
        if ech.insert(m.column(j)) {
            kept.push(j);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn is_diagonal(m: &IntMatrix) -> bool {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
    }

    fn check_decomposition(m: &IntMatrix) {
        let ext = smith_normal_form_extended(m);
        assert_eq!(ext.p.mul(m).mul(&ext.q), ext.s, "p*m*q != s for {m:?}");
        assert!(is_diagonal(&ext.s), "not diagonal: {:?}", ext.s);
        let divs = ext.divisors();
        for w in divs.windows(2) {
            assert!(
                w[1].mod_floor(&w[0]).is_zero(),
                "divisibility chain broken: {divs:?}"
            );
        }
        for d in &divs {
            assert!(d.is_positive(), "non-positive divisor in {divs:?}");
        }
        let n = ext.p.rows();
        let k = ext.q.rows();
        assert_eq!(ext.p.mul(&ext.p_inv), IntMatrix::identity(n));
        assert_eq!(ext.p_inv.mul(&ext.p), IntMatrix::identity(n));
        assert_eq!(ext.q.mul(&ext.q_inv), IntMatrix::identity(k));
        assert_eq!(ext.q_inv.mul(&ext.q), IntMatrix::identity(k));
    }

    #[test]
    fn snf_of_diag_2_3_is_diag_1_6() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(*snf.s.get(0, 0), BigInt::from(1));
        assert_eq!(*snf.s.get(1, 1), BigInt::from(6));
        check_decomposition(&m);
    }

    #[test]
    fn snf_of_zero_and_empty_matrices() {
        check_decomposition(&IntMatrix::zeros(3, 2));
        check_decomposition(&IntMatrix::zeros(0, 4));
        check_decomposition(&IntMatrix::zeros(4, 0));
        check_decomposition(&IntMatrix::zeros(0, 0));
    }

    /// For a nonsingular 2x2 matrix the divisors are forced: gcd of
    /// the entries, then |det| / gcd.
    #[test]
    fn snf_2x2_matches_gcd_det_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
            let det = e[0] * e[3] - e[1] * e[2];
            if det == 0 {
                continue;
            }
            let g = e
                .iter()
                .fold(0i64, |acc, x| num_integer::gcd(acc, *x));
            let m = IntMatrix::from_rows(&[vec![e[0], e[1]], vec![e[2], e[3]]]);
            let snf = smith_normal_form(&m);
            assert_eq!(*snf.s.get(0, 0), BigInt::from(g));
            assert_eq!(*snf.s.get(1, 1), BigInt::from((det / g).abs()));
        }
    }

    #[test]
    fn snf_random_matrices_decompose_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let m = IntMatrix::from_fn(r, c, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            check_decomposition(&m);
        }
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&IntMatrix::identity(5)), 5);
        assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank(&m), 1);
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![0, 3, 1], vec![2, 3, 2]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_agrees_with_snf_and_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let m = IntMatrix::from_fn(r, c, |_, _| BigInt::from(rng.gen_range(-4i64..=4)));
            let by_snf = smith_normal_form_extended(&m).rank();
            assert_eq!(rank(&m), by_snf);
            assert_eq!(rank(&m.transpose()), by_snf);
        }
    }

    #[test]
    fn greedy_column_basis_skips_dependent_columns() {
        let m = IntMatrix::from_rows(&[
            vec![1, 2, 0, 3],
            vec![2, 4, 1, 6],
            vec![0, 0, 5, 0],
        ]);
        // Column 1 is twice column 0; column 3 is three times column 0.
        assert_eq!(greedy_column_basis(&m), vec![0, 2]);
    }

    #[test]
    fn echelon_membership_is_exact() {
        let mut ech = RowEchelon::new(3);
        assert!(ech.insert(vec![BigInt::from(2), BigInt::from(4), BigInt::from(0)]));
        assert!(ech.insert(vec![BigInt::from(0), BigInt::from(0), BigInt::from(3)]));
        // In the span over the rationals.
        let mut v = vec![BigInt::from(1), BigInt::from(2), BigInt::from(7)];
        ech.reduce(&mut v);
        assert!(v.iter().all(Zero::is_zero));
        // Not in the span.
        let mut w = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)];
        ech.reduce(&mut w);
        assert!(!w.iter().all(Zero::is_zero));
    }
}
