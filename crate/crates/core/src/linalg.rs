//! Dense linear algebra over `F_p`.
//!
//! Matrices are row-major `u64` buffers paired with a modulus. Reduced row
//! echelon form is the canonical normal form used throughout: subspaces are
//! stored as RREF bases, so subspace equality is literal equality of the
//! basis matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::fp::Fp;

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    #[must_use]
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self {
            field: Fp::new(p),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[must_use]
    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod p.
    ///
    /// All rows must have equal length.
    #[must_use]
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let field = Fp::new(p);
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows in MatFp::from_rows");
            data.extend(r.iter().map(|&x| x % p));
        }
        Self {
            field,
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    /// Builds from signed entries, reducing each into `0..p`.
    #[must_use]
    pub fn from_i64_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let field = Fp::new(p);
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows in MatFp::from_i64_rows");
            data.extend(r.iter().map(|&x| field.from_i64(x)));
        }
        Self {
            field,
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    #[must_use]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "modulus mismatch in MatFp::mul");
        assert_eq!(self.cols, other.rows, "shape mismatch in MatFp::mul");
        let f = self.field;
        let mut out = Self::zeros(self.modulus(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.at(k, j))));
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    #[must_use]
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in MatFp::mul_vec");
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self.at(i, j), v[j] % f.modulus()));
            }
            out[i] = acc;
        }
        out
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "modulus mismatch in MatFp::add");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = f.add(*a, b);
        }
        out
    }

    #[must_use]
    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let mut out = self.clone();
        for a in &mut out.data {
            *a = f.mul(*a, c);
        }
        out
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let f = self.field;
        let mut out = self.clone();
        for a in &mut out.data {
            *a = f.neg(*a);
        }
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let tmp = self.at(r, j);
                    let v = self.at(pr, j);
                    self.set(r, j, v);
                    self.set(pr, j, tmp);
                }
            }
            let inv = f.inv(self.at(r, c));
            for j in 0..self.cols {
                let v = self.at(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let factor = self.at(i, c);
                    for j in 0..self.cols {
                        let v = f.sub(self.at(i, j), f.mul(factor, self.at(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per free
    /// column, in ascending free-column order. Each vector has a 1 in its
    /// free column, so the result is already in a canonical form.
    #[must_use]
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // Row r reads: x_pc + sum over free cols of m[r][c] x_c = 0.
                v[pc] = f.neg(m.at(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse via Gauss-Jordan on the augmented matrix, `None` if singular.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let p = self.modulus();
        let mut aug = Self::zeros(p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.at(i, n + j));
            }
        }
        Some(inv)
    }

    /// Determinant by Gaussian elimination on a working copy.
    #[must_use]
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.at(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    let tmp = m.at(c, j);
                    let v = m.at(pr, j);
                    m.set(c, j, v);
                    m.set(pr, j, tmp);
                }
                det = f.neg(det);
            }
            let piv = m.at(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in (c + 1)..n {
                let factor = f.mul(m.at(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.at(i, j), f.mul(factor, m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// A subspace of `F_p^n` in canonical form: the basis rows are the nonzero
/// rows of a reduced row echelon form, so two values are equal as subspaces
/// exactly when they are equal as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceModP {
    p: u64,
    ambient: usize,
    /// RREF rows: pivot entries are 1, pivots strictly increase, and every
    /// pivot column is zero in all other rows.
    basis: Vec<Vec<u64>>,
}

impl SubspaceModP {
    #[must_use]
    pub fn zero(p: u64, ambient: usize) -> Self {
        assert!(crate::fp::is_prime(p), "modulus {p} is not prime");
        Self {
            p,
            ambient,
            basis: Vec::new(),
        }
    }

    #[must_use]
    pub fn full(p: u64, ambient: usize) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0u64; ambient];
            v[i] = 1;
            s.basis.push(v);
        }
        s
    }

    #[must_use]
    pub fn from_vectors(p: u64, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    #[must_use]
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    fn pivot_of(row: &[u64]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    /// Reduces `v` against the basis. Returns the residue.
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let f = Fp::new(self.p);
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for row in &self.basis {
            let pc = Self::pivot_of(row).expect("stored basis rows are nonzero");
            let c = w[pc];
            if c != 0 {
                for (wi, &ri) in w.iter_mut().zip(row.iter()) {
                    *wi = f.sub(*wi, f.mul(c, ri));
                }
            }
        }
        w
    }

    #[must_use]
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds a vector to the span; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let f = Fp::new(self.p);
        let mut w = self.reduce(v);
        let Some(pc) = Self::pivot_of(&w) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in &mut w {
            *x = f.mul(*x, inv);
        }
        // Back-substitute the new pivot column out of the existing rows,
        // then insert keeping pivots sorted: this preserves full RREF.
        for row in &mut self.basis {
            let c = row[pc];
            if c != 0 {
                for (ri, &wi) in row.iter_mut().zip(w.iter()) {
                    *ri = f.sub(*ri, f.mul(c, wi));
                }
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|row| Self::pivot_of(row).expect("nonzero row") > pc)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, w);
        true
    }

    /// Sum of two subspaces of the same ambient space.
    #[must_use]
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "modulus mismatch in subspace sum");
        assert_eq!(
            self.ambient, other.ambient,
            "ambient mismatch in subspace sum"
        );
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        s
    }

    /// Whether `self` is contained in `other`.
    #[must_use]
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// The annihilator `{f : f . v = 0 for all v in self}` under the
    /// standard dot pairing, as a subspace of the dual coordinates.
    #[must_use]
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.p, self.ambient);
        }
        let m = MatFp::from_rows(self.p, &self.basis);
        Self::from_vectors(self.p, self.ambient, &m.nullspace())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = MatFp> {
        proptest::collection::vec(0..p, rows * cols).prop_map(move |data| {
            let rows_vec: Vec<Vec<u64>> = data.chunks(cols).map(<[u64]>::to_vec).collect();
            MatFp::from_rows(p, &rows_vec)
        })
    }

    #[test]
    fn rref_canonicalizes_a_known_matrix() {
        // Over F_5: rows (2,4,0), (1,2,1) reduce to (1,2,0), (0,0,1).
        let mut m = MatFp::from_rows(5, &[vec![2, 4, 0], vec![1, 2, 1]]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(m.row(0), &[1, 2, 0]);
        assert_eq!(m.row(1), &[0, 0, 1]);
    }

    #[test]
    fn nullspace_vectors_are_killed_by_the_matrix() {
        let m = MatFp::from_rows(11, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        // Rank-nullity.
        assert_eq!(m.rank() + ns.len(), m.ncols());
    }

    #[test]
    fn inverse_roundtrips_and_detects_singularity() {
        let m = MatFp::from_rows(11, &[vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]);
        let inv = m.inverse().expect("matrix is invertible");
        assert_eq!(m.mul(&inv), MatFp::identity(11, 3));
        assert_eq!(inv.mul(&m), MatFp::identity(11, 3));

        let s = MatFp::from_rows(11, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 0]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), 0);
    }

    #[test]
    fn det_matches_cofactor_on_3x3() {
        let m = MatFp::from_rows(13, &[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        // Cofactor expansion by hand: 3*(25-54) - 1*(5-18) + 4*(6-10)
        //   = 3*(-29) + 13 + 4*(-4) = -87 + 13 - 16 = -90 = -90 + 7*13 = 1 mod 13.
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn subspace_insert_contains_and_sum() {
        let mut s = SubspaceModP::zero(3, 4);
        assert!(s.insert(&[1, 2, 0, 1]));
        assert!(s.insert(&[0, 1, 1, 0]));
        assert!(!s.insert(&[1, 0, 1, 1])); // = row1 - 2*row2 over F_3
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 1, 0, 2])); // 2*row1 over F_3
        assert!(!s.contains(&[2, 1, 2, 2]));
        assert!(!s.contains(&[0, 0, 0, 1]));

        let t = SubspaceModP::from_vectors(3, 4, &[vec![0, 0, 0, 1]]);
        let u = s.sum(&t);
        assert_eq!(u.dim(), 3);
        assert!(s.is_subspace_of(&u));
        assert!(t.is_subspace_of(&u));
    }

    #[test]
    fn subspace_canonical_form_is_order_independent() {
        let a = SubspaceModP::from_vectors(5, 3, &[vec![1, 1, 0], vec![0, 2, 1]]);
        let b = SubspaceModP::from_vectors(5, 3, &[vec![0, 4, 2], vec![2, 2, 0], vec![1, 3, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn annihilator_dimensions_pair_up() {
        let s = SubspaceModP::from_vectors(5, 4, &[vec![1, 2, 3, 4], vec![0, 0, 1, 1]]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        for f in ann.basis() {
            for v in s.basis() {
                let dot: u64 = f.iter().zip(v.iter()).map(|(&a, &b)| a * b).sum::<u64>() % 5;
                assert_eq!(dot, 0);
            }
        }
    }

    proptest! {
        #[test]
        fn prop_rref_is_idempotent(m in small_matrix(5, 4, 5)) {
            let mut once = m.clone();
            once.rref();
            let mut twice = once.clone();
            twice.rref();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn prop_rank_nullity(m in small_matrix(3, 4, 6)) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), m.ncols());
        }

        #[test]
        fn prop_subspace_sum_is_commutative_and_monotone(
            vs in proptest::collection::vec(proptest::collection::vec(0u64..7, 5), 1..4),
            ws in proptest::collection::vec(proptest::collection::vec(0u64..7, 5), 1..4),
        ) {
            let a = SubspaceModP::from_vectors(7, 5, &vs);
            let b = SubspaceModP::from_vectors(7, 5, &ws);
            let ab = a.sum(&b);
            let ba = b.sum(&a);
            prop_assert_eq!(&ab, &ba);
            prop_assert!(a.is_subspace_of(&ab));
            prop_assert!(b.is_subspace_of(&ab));
        }

        #[test]
        fn prop_double_annihilator_is_identity(
            vs in proptest::collection::vec(proptest::collection::vec(0u64..3, 4), 0..4),
        ) {
            let s = SubspaceModP::from_vectors(3, 4, &vs);
            prop_assert_eq!(s.annihilator().annihilator(), s);
        }
    }
}
