//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order (total degree first, then lex with the first
//! variable dominant), so iteration is ascending and the leading term is
//! the last entry. Coefficients are reduced mod p at every boundary and
//! zero terms are never stored, which makes structural equality semantic
//! equality.
//!
//! Everything downstream leans on three exact operations here: Frobenius
//! powers `f -> f^(p^r)` (termwise exponent scaling, since coefficient
//! Frobenius is the identity on the prime field), single-divisor division
//! with remainder (whose zero remainder is a divisibility certificate), and
//! fraction-free determinants of polynomial matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::fp::{is_prime, Fp};

/// Exponent vector of one monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    #[must_use]
    pub fn constant(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    #[must_use]
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    #[must_use]
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a <= b)
    }

    /// Quotient exponent vector; caller checks divisibility first.
    #[must_use]
    pub fn div(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_sub(b).expect("monomial division underflow"))
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lex: compare total degree, then exponent vectors
    /// lexicographically (first variable dominant).
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Errors from polynomial operations with data-dependent failure modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    /// Division by the zero polynomial.
    ZeroDivisor,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroDivisor => write!(f, "division by the zero polynomial"),
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse polynomial over `F_p` in `nvars` variables `w1..wn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl FpPoly {
    #[must_use]
    pub fn zero(p: u64, nvars: usize) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        Self {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn constant(p: u64, nvars: usize, c: u64) -> Self {
        let mut out = Self::zero(p, nvars);
        if !c.is_multiple_of(p) {
            out.terms.insert(Monomial::constant(nvars), c % p);
        }
        out
    }

    #[must_use]
    pub fn one(p: u64, nvars: usize) -> Self {
        Self::constant(p, nvars, 1)
    }

    /// The variable `w_{i+1}` (zero-based index).
    #[must_use]
    pub fn variable(p: u64, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut out = Self::zero(p, nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        out.terms.insert(Monomial(e), 1);
        out
    }

    /// A linear form `sum coeffs_i w_i`.
    #[must_use]
    pub fn linear_form(p: u64, coeffs: &[u64]) -> Self {
        let mut out = Self::zero(p, coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            if c % p != 0 {
                let mut e = vec![0u32; coeffs.len()];
                e[i] = 1;
                out.terms.insert(Monomial(e), c % p);
            }
        }
        out
    }

    /// Builds from raw (exponents, coefficient) pairs, combining duplicates.
    #[must_use]
    pub fn from_terms(p: u64, nvars: usize, terms: &[(Vec<u32>, u64)]) -> Self {
        let f = Fp::new(p);
        let mut out = Self::zero(p, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector of wrong length");
            let slot = out.terms.entry(Monomial(e.clone())).or_insert(0);
            *slot = f.add(*slot, c % p);
        }
        out.terms.retain(|_, &mut c| c != 0);
        out
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree of the leading term; `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<u64> {
        self.terms.last_key_value().map(|(m, _)| m.total_degree())
    }

    /// Leading (greatest) term under graded lex.
    #[must_use]
    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.last_key_value().map(|(m, &c)| (m, c))
    }

    #[must_use]
    pub fn coeff(&self, e: &[u32]) -> u64 {
        self.terms.get(&Monomial(e.to_vec())).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Evaluates at a point of `F_p^n`.
    #[must_use]
    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let f = Fp::new(self.p);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (&e, &x) in m.0.iter().zip(point.iter()) {
                if e > 0 {
                    t = f.mul(t, f.pow(x, u64::from(e)));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    fn assert_same_ring(&self, other: &Self, op: &str) {
        assert_eq!(self.p, other.p, "modulus mismatch in {op}");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch in {op}");
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other, "add");
        let f = Fp::new(self.p);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            let slot = out.terms.entry(m.clone()).or_insert(0);
            *slot = f.add(*slot, c);
        }
        out.terms.retain(|_, &mut c| c != 0);
        out
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        let f = Fp::new(self.p);
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = f.neg(*c);
        }
        out
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    #[must_use]
    pub fn scalar_mul(&self, c: u64) -> Self {
        let f = Fp::new(self.p);
        let c = c % self.p;
        let mut out = Self::zero(self.p, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.clone(), f.mul(a, c));
        }
        out
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other, "mul");
        let f = Fp::new(self.p);
        let mut out = Self::zero(self.p, self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let m = m1.mul(m2);
                let slot = out.terms.entry(m).or_insert(0);
                *slot = f.add(*slot, f.mul(c1, c2));
            }
        }
        out.terms.retain(|_, &mut c| c != 0);
        out
    }

    /// `self^e` by binary exponentiation.
    #[must_use]
    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.p, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The Frobenius power `self^(p^r)`: every exponent scales by `p^r`
    /// while coefficients stay fixed, because `a^p = a` in `F_p` and the
    /// p-th power map is additive in characteristic p.
    #[must_use]
    pub fn frobenius_pow(&self, r: u32) -> Self {
        let mut scale: u64 = 1;
        for _ in 0..r {
            scale = scale.checked_mul(self.p).expect("Frobenius scale overflow");
        }
        let scale32 = u32::try_from(scale).expect("Frobenius exponent exceeds u32");
        let mut out = Self::zero(self.p, self.nvars);
        for (m, &c) in &self.terms {
            let e: Vec<u32> =
                m.0.iter()
                    .map(|&x| x.checked_mul(scale32).expect("monomial exponent overflow"))
                    .collect();
            out.terms.insert(Monomial(e), c);
        }
        out
    }

    /// Single-divisor division: returns the exact quotient `g / f` when `f`
    /// divides `g` and `None` otherwise; dividing by zero is an error.
    ///
    /// Soundness of the `None` branch: if `f | g`, every intermediate
    /// remainder is still a multiple of `f`, and the leading term of a
    /// nonzero multiple of `f` is divisible by the leading term of `f` — so
    /// hitting an indivisible leading term proves indivisibility.
    pub fn divides(f: &Self, g: &Self) -> Result<Option<Self>, PolyError> {
        f.assert_same_ring(g, "divides");
        if f.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let field = Fp::new(f.p);
        let (fm, fc) = f.leading_term().expect("nonzero divisor");
        let fm = fm.clone();
        let fc_inv = field.inv(fc);
        let mut rem = g.clone();
        let mut quo = Self::zero(f.p, f.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !fm.divides(rm) {
                return Ok(None);
            }
            let qm = rm.div(&fm);
            let qc = field.mul(rc, fc_inv);
            let mut t = Self::zero(f.p, f.nvars);
            t.terms.insert(qm, qc);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(f));
        }
        Ok(Some(quo))
    }

    /// Ring homomorphism substituting `images[i]` for `w_{i+1}`. Images may
    /// live in a ring with a different variable count (same `p`).
    #[must_use]
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target_nvars = images.first().map_or(self.nvars, Self::nvars);
        for im in images {
            assert_eq!(im.modulus(), self.p, "modulus mismatch in substitute");
            assert_eq!(im.nvars(), target_nvars, "images must share one ring");
        }
        let mut out = Self::zero(self.p, target_nvars);
        for (m, &c) in &self.terms {
            let mut t = Self::constant(self.p, target_nvars, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(u64::from(e)));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for FpPoly {
    /// Canonical rendering: terms in descending graded-lex order, variables
    /// `w1..wn`, unit coefficients and unit exponents elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("w{}", i + 1)
                        } else {
                            format!("w{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Dense matrix of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    p: u64,
    nvars: usize,
    nrows: usize,
    ncols: usize,
    data: Vec<FpPoly>,
}

impl PolyMatrix {
    #[must_use]
    pub fn zeros(p: u64, nvars: usize, nrows: usize, ncols: usize) -> Self {
        Self {
            p,
            nvars,
            nrows,
            ncols,
            data: vec![FpPoly::zero(p, nvars); nrows * ncols],
        }
    }

    pub fn from_fn(
        p: u64,
        nvars: usize,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> FpPoly,
    ) -> Self {
        let mut m = Self::zeros(p, nvars, nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[must_use]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[must_use]
    pub fn at(&self, i: usize, j: usize) -> &FpPoly {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FpPoly) {
        assert_eq!(v.modulus(), self.p, "modulus mismatch in PolyMatrix::set");
        assert_eq!(v.nvars(), self.nvars, "ring mismatch in PolyMatrix::set");
        self.data[i * self.ncols + j] = v;
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in PolyMatrix::mul");
        assert_eq!(self.p, other.p, "modulus mismatch in PolyMatrix::mul");
        let mut out = Self::zeros(self.p, self.nvars, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let cur = out.at(i, j).add(&a.mul(other.at(k, j)));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Deletes one row and one column.
    #[must_use]
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let mut out = Self::zeros(self.p, self.nvars, self.nrows - 1, self.ncols - 1);
        let mut r = 0;
        for i in 0..self.nrows {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..self.ncols {
                if j == col {
                    continue;
                }
                out.set(r, c, self.at(i, j).clone());
                c += 1;
            }
            r += 1;
        }
        out
    }

    /// Determinant by cofactor expansion along the first column.
    #[must_use]
    pub fn det_cofactor(&self) -> FpPoly {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return FpPoly::one(self.p, self.nvars);
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = FpPoly::zero(self.p, self.nvars);
        for i in 0..n {
            let a = self.at(i, 0);
            if a.is_zero() {
                continue;
            }
            let sub = self.minor(i, 0).det_cofactor();
            let term = a.mul(&sub);
            acc = if i % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// Fraction-free Bareiss determinant. Every division is exact (the
    /// working entries are minors of the row-permuted input), so this stays
    /// in the polynomial ring throughout.
    #[must_use]
    pub fn det_bareiss(&self) -> FpPoly {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return FpPoly::one(self.p, self.nvars);
        }
        let mut m: Vec<Vec<FpPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = FpPoly::one(self.p, self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                    return FpPoly::zero(self.p, self.nvars);
                };
                m.swap(k, swap);
                sign_flip = !sign_flip;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    let q = FpPoly::divides(&prev, &num)
                        .expect("previous pivot is nonzero")
                        .expect("Bareiss division is exact");
                    m[i][j] = q;
                }
            }
            for row in m.iter_mut().skip(k + 1) {
                row[k] = FpPoly::zero(self.p, self.nvars);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    /// Determinant: cofactor expansion up to 4x4, Bareiss beyond.
    #[must_use]
    pub fn determinant(&self) -> FpPoly {
        if self.nrows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Adjugate matrix: `adj(A)[j][i] = (-1)^(i+j) det(minor(i, j))`, so
    /// that `adj(A) . A = A . adj(A) = det(A) . I`.
    #[must_use]
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.nrows, self.ncols, "adjugate of non-square matrix");
        let n = self.nrows;
        let mut out = Self::zeros(self.p, self.nvars, n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).determinant();
                let signed = if (i + j) % 2 == 0 { d } else { d.neg() };
                out.set(j, i, signed);
            }
        }
        out
    }

    /// `det(A) . I` for comparison against `adj(A) . A`.
    #[must_use]
    pub fn det_times_identity(&self) -> Self {
        let det = self.determinant();
        let mut out = Self::zeros(self.p, self.nvars, self.nrows, self.nrows);
        for i in 0..self.nrows {
            out.set(i, i, det.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, nvars: usize, terms: &[(&[u32], u64)]) -> FpPoly {
        FpPoly::from_terms(
            p,
            nvars,
            &terms
                .iter()
                .map(|(e, c)| (e.to_vec(), *c))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn graded_lex_order_on_two_variables() {
        // 1 < w2 < w1 < w2^2 < w1*w2 < w1^2.
        let expected = [
            vec![0u32, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 2],
            vec![1, 1],
            vec![2, 0],
        ];
        let mut monos: Vec<Monomial> = expected.iter().rev().map(|e| Monomial(e.clone())).collect();
        monos.sort();
        let sorted: Vec<Vec<u32>> = monos.into_iter().map(|m| m.0).collect();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn freshmans_dream_squares() {
        let p5 = FpPoly::variable(5, 2, 0).add(&FpPoly::variable(5, 2, 1));
        let sq = p5.pow(2);
        assert_eq!(sq.coeff(&[2, 0]), 1);
        assert_eq!(sq.coeff(&[1, 1]), 2);
        assert_eq!(sq.coeff(&[0, 2]), 1);
        let p2 = FpPoly::variable(2, 2, 0).add(&FpPoly::variable(2, 2, 1));
        let sq2 = p2.pow(2);
        assert_eq!(sq2.coeff(&[1, 1]), 0);
        assert_eq!(sq2, p2.frobenius_pow(1));
    }

    #[test]
    fn frobenius_square_over_f5_fixes_the_coefficient() {
        // 2 w1 -> 2 w1^25: the exponent scales by p^2 while the
        // coefficient is fixed, because c^(p^r) = c over F_p.
        let f = poly(5, 1, &[(&[1], 2)]);
        let g = f.frobenius_pow(2);
        assert_eq!(g.num_terms(), 1);
        assert_eq!(g.coeff(&[25]), 2);
    }

    #[test]
    fn divides_factors_a_difference_of_squares() {
        let p = 7;
        let w1 = FpPoly::variable(p, 2, 0);
        let w2 = FpPoly::variable(p, 2, 1);
        let f = w1.add(&w2);
        let g = w1.mul(&w1).sub(&w2.mul(&w2));
        let q = FpPoly::divides(&f, &g).unwrap().expect("f divides g");
        assert_eq!(q, w1.sub(&w2));
        assert_eq!(q.mul(&f), g);
        // Indivisible case.
        let h = w1.mul(&w1).add(&w2);
        assert_eq!(FpPoly::divides(&f, &h).unwrap(), None);
        // Zero divisor is an error.
        let zero = FpPoly::zero(p, 2);
        assert_eq!(
            FpPoly::divides(&zero, &g).unwrap_err(),
            PolyError::ZeroDivisor
        );
    }

    #[test]
    fn substitute_is_a_ring_map_into_fewer_variables() {
        // w1 -> w1, w2 -> w1 collapses w1 + w2 to 2*w1.
        let f = FpPoly::variable(5, 2, 0).add(&FpPoly::variable(5, 2, 1));
        let images = vec![FpPoly::variable(5, 1, 0), FpPoly::variable(5, 1, 0)];
        let g = f.substitute(&images);
        assert_eq!(g, FpPoly::variable(5, 1, 0).scalar_mul(2));
    }

    #[test]
    fn display_is_descending_and_canonical() {
        let f = poly(5, 2, &[(&[0, 0], 1), (&[0, 1], 4), (&[2, 0], 1)]);
        assert_eq!(format!("{f}"), "w1^2 + 4*w2 + 1");
        assert_eq!(format!("{}", FpPoly::zero(5, 2)), "0");
        assert_eq!(format!("{}", FpPoly::constant(5, 2, 3)), "3");
    }

    #[test]
    fn eval_agrees_with_substitution_by_constants() {
        let f = poly(7, 2, &[(&[2, 1], 3), (&[0, 1], 5), (&[0, 0], 2)]);
        for a in 0..7 {
            for b in 0..7 {
                let images = vec![FpPoly::constant(7, 1, a), FpPoly::constant(7, 1, b)];
                let sub = f.substitute(&images);
                assert_eq!(sub.coeff(&[0]), f.eval(&[a, b]));
            }
        }
    }

    #[test]
    fn vandermonde_2x2_determinant() {
        let p = 5;
        let m = PolyMatrix::from_fn(p, 2, 2, 2, |i, j| {
            if j == 0 {
                FpPoly::one(p, 2)
            } else {
                FpPoly::variable(p, 2, i)
            }
        });
        let det = m.determinant();
        // det = w2 - w1.
        let expected = FpPoly::variable(p, 2, 1).sub(&FpPoly::variable(p, 2, 0));
        assert_eq!(det, expected);
        assert_eq!(m.det_bareiss(), expected);
    }

    #[test]
    fn adjugate_times_matrix_is_det_times_identity() {
        let p = 5;
        let entries = [
            [(&[1u32, 0][..], 1u64), (&[0, 1][..], 2)],
            [(&[0, 0][..], 3), (&[2, 0][..], 1)],
        ];
        let m = PolyMatrix::from_fn(p, 2, 2, 2, |i, j| poly(p, 2, &[entries[i][j]]));
        assert_eq!(m.adjugate().mul(&m), m.det_times_identity());
        assert_eq!(m.mul(&m.adjugate()), m.det_times_identity());
    }

    #[test]
    fn singular_bareiss_returns_zero() {
        let p = 3;
        // Two equal rows of a 5x5 matrix (Bareiss path).
        let m = PolyMatrix::from_fn(p, 1, 5, 5, |i, j| {
            let i = if i == 1 { 0 } else { i };
            FpPoly::variable(p, 1, 0).pow((i * j) as u64)
        });
        assert!(m.det_bareiss().is_zero());
        assert!(m.determinant().is_zero());
    }

    fn arb_poly(
        p: u64,
        nvars: usize,
        max_terms: usize,
        max_exp: u32,
    ) -> impl Strategy<Value = FpPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0..=max_exp, nvars), 0..p),
            0..=max_terms,
        )
        .prop_map(move |terms| FpPoly::from_terms(p, nvars, &terms))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_mul_is_commutative_and_distributive(
            f in arb_poly(5, 2, 4, 3),
            g in arb_poly(5, 2, 4, 3),
            h in arb_poly(5, 2, 4, 3),
        ) {
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }

        #[test]
        fn prop_degree_is_additive_over_products(
            f in arb_poly(7, 2, 3, 3),
            g in arb_poly(7, 2, 3, 3),
        ) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(
                f.mul(&g).degree().unwrap(),
                f.degree().unwrap() + g.degree().unwrap()
            );
        }

        #[test]
        fn prop_frobenius_matches_plain_power(
            f in arb_poly(3, 2, 3, 2),
        ) {
            prop_assert_eq!(f.frobenius_pow(1), f.pow(3));
            prop_assert_eq!(f.frobenius_pow(2), f.pow(9));
        }

        #[test]
        fn prop_division_roundtrips(
            f in arb_poly(5, 2, 3, 2),
            q in arb_poly(5, 2, 3, 2),
        ) {
            prop_assume!(!f.is_zero());
            let g = f.mul(&q);
            let found = FpPoly::divides(&f, &g).unwrap().expect("exact by construction");
            prop_assert_eq!(found, q);
        }

        #[test]
        fn prop_bareiss_agrees_with_cofactor(
            entries in proptest::collection::vec(arb_poly(3, 1, 2, 2), 9),
        ) {
            let m = PolyMatrix::from_fn(3, 1, 3, 3, |i, j| entries[3 * i + j].clone());
            prop_assert_eq!(m.det_bareiss(), m.det_cofactor());
        }

        #[test]
        fn prop_substitution_is_a_ring_homomorphism(
            f in arb_poly(3, 2, 3, 2),
            g in arb_poly(3, 2, 3, 2),
            im1 in arb_poly(3, 2, 2, 1),
            im2 in arb_poly(3, 2, 2, 1),
        ) {
            let images = vec![im1, im2];
            prop_assert_eq!(
                f.add(&g).substitute(&images),
                f.substitute(&images).add(&g.substitute(&images))
            );
            prop_assert_eq!(
                f.mul(&g).substitute(&images),
                f.substitute(&images).mul(&g.substitute(&images))
            );
        }
    }
}
