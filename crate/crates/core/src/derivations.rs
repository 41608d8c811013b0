//! Derivations of `F_p[w1..wn]` and Frobenius-twisted membership
//! certificates.
//!
//! A derivation is recorded by its images on the variables and acts on
//! arbitrary polynomials through the formal partials. In characteristic p
//! the `p`-th-power subring is killed by every derivation, which drives
//! the decomposition of a polynomial into `p`-th-power coefficients times
//! reduced monomials, the two membership tests for that subring, and the
//! stability analysis of principal monomial ideals.
//!
//! The centerpiece is [`Derivation::certify_constant_field_membership`]:
//! given a linear derivation `d` and a dual vector `g`, it produces an
//! explicit nonzero polynomial prefactor `P` and polynomial coefficients
//! `c_r` with
//!
//! ```text
//! P * h_j = sum_r c_r * d(w_j)^(p^(s+r))        for every variable w_j,
//! ```
//!
//! where `h = L g` and `L` is the coefficient matrix of `d`. In other
//! words, `P` times the constant vector field `h` lies in the module
//! spanned by the Frobenius twists `p^s, .., p^(s+rank-1)` of `d`. The
//! construction runs through the adjugate diagonalization of a Moore
//! matrix on a basis of the image forms of `d`, chosen so the
//! distinguished diagonal entry matches `h`; the resulting identity is
//! re-verified coefficientwise before the certificate is returned, and
//! [`MembershipCertificate::verify`] lets callers repeat that check.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fppoly::FpPoly;
use crate::linalg::{MatFp, SubspaceModP};
use crate::moore::{build_u_d, MooreError};

/// Errors from derivation construction and certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationError {
    /// Variable images disagree on modulus or variable count.
    ShapeMismatch,
    /// Certification needs a derivation whose variable images are all
    /// homogeneous linear (or zero).
    NotLinear,
    /// The target vector `L g` is zero, so there is nothing to certify.
    DegenerateTarget,
    /// A failure inside the Moore-matrix machinery.
    Moore(MooreError),
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationError::ShapeMismatch => write!(f, "variable images have mismatched shape"),
            DerivationError::NotLinear => write!(f, "derivation is not linear"),
            DerivationError::DegenerateTarget => {
                write!(f, "target vector is zero; nothing to certify")
            }
            DerivationError::Moore(e) => write!(f, "moore-matrix failure: {e}"),
        }
    }
}

impl core::error::Error for DerivationError {}

impl From<MooreError> for DerivationError {
    fn from(e: MooreError) -> Self {
        DerivationError::Moore(e)
    }
}

/// Formal partial derivative with respect to variable `j` (0-based).
///
/// Each monomial `c * w^e` maps to `c * (e_j mod p) * w^(e - unit_j)`;
/// distinct monomials land on distinct monomials, so a polynomial has all
/// partials zero exactly when every exponent is divisible by p.
#[must_use]
pub fn partial(f: &FpPoly, j: usize) -> FpPoly {
    assert!(j < f.nvars(), "variable index out of range");
    let p = f.modulus();
    let mut terms: Vec<(Vec<u32>, u64)> = Vec::new();
    for (mono, c) in f.terms() {
        let ej = mono.0[j];
        let mult = u64::from(ej) % p;
        if mult == 0 {
            continue;
        }
        let mut e = mono.0.clone();
        e[j] -= 1;
        terms.push((e, (c * mult) % p));
    }
    FpPoly::from_terms(p, f.nvars(), &terms)
}

/// Membership in the `p`-th-power subring, detected by vanishing of all
/// formal partials.
#[must_use]
pub fn is_in_b1(f: &FpPoly) -> bool {
    (0..f.nvars()).all(|j| partial(f, j).is_zero())
}

/// Membership in the `p`-th-power subring, detected syntactically: every
/// exponent of every monomial is divisible by p.
#[must_use]
pub fn is_in_b1_syntactic(f: &FpPoly) -> bool {
    let p = f.modulus();
    f.terms()
        .all(|(mono, _)| mono.0.iter().all(|&e| u64::from(e) % p == 0))
}

/// Writes `f = sum_a u_a * w^a` with `a` ranging over exponent vectors
/// whose entries lie in `0..p` and each `u_a` lying in the
/// `p`-th-power subring. Returns the map `a -> u_a`; absent keys mean a
/// zero coefficient.
#[must_use]
pub fn decompose(f: &FpPoly) -> BTreeMap<Vec<u32>, FpPoly> {
    let p = f.modulus();
    let p32 = u32::try_from(p).expect("modulus fits in u32 for decomposition");
    let nvars = f.nvars();
    let mut grouped: BTreeMap<Vec<u32>, Vec<(Vec<u32>, u64)>> = BTreeMap::new();
    for (mono, c) in f.terms() {
        let mut rem = Vec::with_capacity(nvars);
        let mut quo = Vec::with_capacity(nvars);
        for &e in &mono.0 {
            rem.push(e % p32);
            quo.push(e - e % p32);
        }
        grouped.entry(rem).or_default().push((quo, c));
    }
    grouped
        .into_iter()
        .map(|(a, terms)| (a, FpPoly::from_terms(p, nvars, &terms)))
        .collect()
}

/// Reassembles a polynomial from its [`decompose`] output.
#[must_use]
pub fn recompose(p: u64, nvars: usize, parts: &BTreeMap<Vec<u32>, FpPoly>) -> FpPoly {
    let mut acc = FpPoly::zero(p, nvars);
    for (a, u) in parts {
        let monomial = FpPoly::from_terms(p, nvars, &[(a.clone(), 1)]);
        acc = acc.add(&u.mul(&monomial));
    }
    acc
}

/// A derivation of `F_p[w1..wn]`, stored as its images on the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    p: u64,
    nvars: usize,
    images: Vec<FpPoly>,
}

impl Derivation {
    /// Builds the derivation with `d(w_j) = images[j]`; every image must
    /// live in `F_p[w1..wn]` with `n = images.len()`.
    pub fn new(p: u64, images: Vec<FpPoly>) -> Result<Self, DerivationError> {
        let nvars = images.len();
        for f in &images {
            if f.modulus() != p || f.nvars() != nvars {
                return Err(DerivationError::ShapeMismatch);
            }
        }
        Ok(Derivation { p, nvars, images })
    }

    /// The linear derivation attached to a square matrix: `d(w_j)` is the
    /// linear form whose coefficients are row `j`, i.e. the pullback of
    /// the coordinate `w_j` along the endomorphism.
    #[must_use]
    pub fn from_endomorphism(phi: &MatFp) -> Self {
        assert_eq!(phi.nrows(), phi.ncols(), "endomorphism must be square");
        let p = phi.modulus();
        let n = phi.nrows();
        let images = (0..n).map(|j| FpPoly::linear_form(p, phi.row(j))).collect();
        Derivation {
            p,
            nvars: n,
            images,
        }
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
    pub fn images(&self) -> &[FpPoly] {
        &self.images
    }

    /// Applies the derivation to an arbitrary polynomial via the formal
    /// partials: `d(f) = sum_j d(w_j) * df/dw_j`.
    #[must_use]
    pub fn apply(&self, f: &FpPoly) -> FpPoly {
        assert_eq!(f.nvars(), self.nvars, "variable count mismatch");
        assert_eq!(f.modulus(), self.p, "modulus mismatch");
        let mut acc = FpPoly::zero(self.p, self.nvars);
        for j in 0..self.nvars {
            let pj = partial(f, j);
            if !pj.is_zero() && !self.images[j].is_zero() {
                acc = acc.add(&self.images[j].mul(&pj));
            }
        }
        acc
    }

    /// The `p^r`-th Frobenius twist: each variable image is raised to the
    /// `p^r`-th power.
    #[must_use]
    pub fn frobenius_twist(&self, r: u32) -> Self {
        Derivation {
            p: self.p,
            nvars: self.nvars,
            images: self.images.iter().map(|f| f.frobenius_pow(r)).collect(),
        }
    }

    /// True when every variable image is homogeneous linear or zero.
    #[must_use]
    pub fn is_linear(&self) -> bool {
        self.linear_matrix().is_some()
    }

    /// The coefficient matrix `L` with row `j` holding the coefficients
    /// of `d(w_j)`, when the derivation is linear.
    #[must_use]
    pub fn linear_matrix(&self) -> Option<MatFp> {
        let mut rows = Vec::with_capacity(self.nvars);
        for f in &self.images {
            let mut coeffs = vec![0u64; self.nvars];
            for (mono, c) in f.terms() {
                if mono.total_degree() != 1 {
                    return None;
                }
                let var = mono.0.iter().position(|&e| e == 1).expect("degree-1 term");
                coeffs[var] = c;
            }
            rows.push(coeffs);
        }
        Some(MatFp::from_rows(self.p, &rows))
    }

    /// Builds the certificate described in the module docs: `P` times the
    /// constant field `h = L g` lies in the span of the twists
    /// `p^s..p^(s+rank-1)` of this derivation. Requires a linear
    /// derivation and a `g` with `L g` nonzero.
    pub fn certify_constant_field_membership(
        &self,
        g: &[u64],
        s: u32,
    ) -> Result<MembershipCertificate, DerivationError> {
        if g.len() != self.nvars {
            return Err(DerivationError::ShapeMismatch);
        }
        let l = self.linear_matrix().ok_or(DerivationError::NotLinear)?;
        let f = l.field();
        let target: Vec<u64> = (0..self.nvars)
            .map(|j| {
                l.row(j)
                    .iter()
                    .zip(g)
                    .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect();
        if target.iter().all(|&h| h == 0) {
            return Err(DerivationError::DegenerateTarget);
        }

        // Span of the image forms, in reduced row-echelon basis.
        let image_rows: Vec<Vec<u64>> = (0..self.nvars).map(|j| l.row(j).to_vec()).collect();
        let image_space = SubspaceModP::from_vectors(self.p, self.nvars, &image_rows);
        let rank = image_space.dim();
        let basis = image_space.basis();

        // gamma_k = g . r_k; the lemma's coordinate functional. gamma = 0
        // would force the target to vanish, which was excluded above.
        let gamma: Vec<u64> = basis
            .iter()
            .map(|r| {
                r.iter()
                    .zip(g)
                    .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect();
        debug_assert!(gamma.iter().any(|&x| x != 0));

        // Change of basis T on echelon coordinates with gamma as final
        // row; the final coordinate of any image form then equals the
        // matching entry of the target.
        let mut t_rows: Vec<Vec<u64>> = Vec::with_capacity(rank);
        let mut span = SubspaceModP::from_vectors(self.p, rank, core::slice::from_ref(&gamma));
        for i in 0..rank {
            let mut unit = vec![0u64; rank];
            unit[i] = 1;
            if span.insert(&unit) {
                t_rows.push(unit);
            }
            if t_rows.len() == rank - 1 {
                break;
            }
        }
        t_rows.push(gamma.clone());
        let t = MatFp::from_rows(self.p, &t_rows);
        let s_mat = t.inverse().expect("rows of T are a basis by construction");

        // u_k = sum_l S[l][k] r_l, realized as linear forms.
        let mut basis_forms = Vec::with_capacity(rank);
        for k in 0..rank {
            let mut coeffs = vec![0u64; self.nvars];
            for (l_idx, r) in basis.iter().enumerate() {
                let sc = s_mat.at(l_idx, k);
                for (c, &rv) in coeffs.iter_mut().zip(r) {
                    *c = f.add(*c, f.mul(sc, rv));
                }
            }
            basis_forms.push(FpPoly::linear_form(self.p, &coeffs));
        }

        let diag = build_u_d(self.p, &basis_forms, s)?;
        let prefactor = diag.d.at(rank - 1, rank - 1).clone();
        let coeffs: Vec<FpPoly> = (0..rank).map(|r| diag.u.at(rank - 1, r).clone()).collect();

        let cert = MembershipCertificate {
            p: self.p,
            nvars: self.nvars,
            twist_base: s,
            rank,
            target,
            source_forms: self.images.clone(),
            basis_forms,
            prefactor,
            coeffs,
        };
        if !cert.verify() {
            return Err(DerivationError::Moore(MooreError::VerificationFailed));
        }
        Ok(cert)
    }
}

/// A verified witness that a prefactor times a constant vector field lies
/// in the Frobenius-twisted span of a linear derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub p: u64,
    pub nvars: usize,
    /// Twists run over `p^(twist_base + r)` for `r` in `0..rank`.
    pub twist_base: u32,
    pub rank: usize,
    /// The constant field being expressed, `h = L g`.
    pub target: Vec<u64>,
    /// The variable images `d(w_j)` of the certified derivation.
    pub source_forms: Vec<FpPoly>,
    /// Basis of the span of the image forms used by the Moore matrix.
    pub basis_forms: Vec<FpPoly>,
    /// Nonzero polynomial prefactor `P`.
    pub prefactor: FpPoly,
    /// Polynomial coefficients `c_r` of the twisted derivations.
    pub coeffs: Vec<FpPoly>,
}

impl MembershipCertificate {
    /// The Frobenius exponents paired with each coefficient.
    #[must_use]
    pub fn twists(&self) -> Vec<u32> {
        (0..self.rank as u32).map(|r| self.twist_base + r).collect()
    }

    /// Re-checks the defining identity `P * h_j = sum_r c_r *
    /// d(w_j)^(p^(twist_base+r))` for every variable, as exact
    /// polynomials.
    #[must_use]
    pub fn verify(&self) -> bool {
        if self.prefactor.is_zero() || self.coeffs.len() != self.rank {
            return false;
        }
        for (j, form) in self.source_forms.iter().enumerate() {
            let lhs = self.prefactor.scalar_mul(self.target[j]);
            let mut rhs = FpPoly::zero(self.p, self.nvars);
            for (r, c) in self.coeffs.iter().enumerate() {
                let twisted = form.frobenius_pow(self.twist_base + r as u32);
                rhs = rhs.add(&c.mul(&twisted));
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Stability analysis of the principal ideal of one monomial under all
/// formal partials, together with the `p`-th-power-subring generator of
/// its intersection with that subring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlledReport {
    /// Exponents of the examined monomial.
    pub exponents: Vec<u32>,
    /// Every formal partial of the monomial vanishes.
    pub stable: bool,
    /// Componentwise least exponent vector above `exponents` with all
    /// entries divisible by p: the generator of the intersection.
    pub generator: Vec<u32>,
    pub generator_equals_monomial: bool,
    /// Every monomial in the intersection (within the sweep box) is a
    /// subring multiple of the generator.
    pub generation_verified: bool,
    pub samples_checked: usize,
    /// `stable` holds exactly when the generator is the monomial itself.
    pub iff_holds: bool,
}

/// Examines `w^a` inside `F_p[w1..wn]`: computes stability under the
/// formal partials, the generator of the intersection of `(w^a)` with the
/// `p`-th-power subring, and verifies generation exhaustively over the
/// exponent box `[0, bound]^n`.
#[must_use]
pub fn controlled_monomial_check(p: u64, a: &[u32], bound: u32) -> ControlledReport {
    let nvars = a.len();
    let p32 = u32::try_from(p).expect("modulus fits in u32");
    let monomial = FpPoly::from_terms(p, nvars, &[(a.to_vec(), 1)]);
    let stable = (0..nvars).all(|j| partial(&monomial, j).is_zero());
    let generator: Vec<u32> = a.iter().map(|&e| e.div_ceil(p32) * p32).collect();
    let generator_equals_monomial = generator == a;

    let mut samples_checked = 0usize;
    let mut generation_verified = true;
    let mut e = vec![0u32; nvars];
    loop {
        let in_ideal = e.iter().zip(a).all(|(&x, &y)| x >= y);
        let in_subring = e.iter().all(|&x| x % p32 == 0);
        if in_ideal && in_subring {
            samples_checked += 1;
            let multiple_of_generator = e
                .iter()
                .zip(&generator)
                .all(|(&x, &b)| x >= b && (x - b) % p32 == 0);
            generation_verified &= multiple_of_generator;
        }
        // Odometer over the box.
        let mut i = nvars;
        loop {
            if i == 0 {
                break;
            }
            e[i - 1] += 1;
            if e[i - 1] <= bound {
                break;
            }
            e[i - 1] = 0;
            i -= 1;
        }
        if i == 0 {
            break;
        }
    }

    ControlledReport {
        exponents: a.to_vec(),
        stable,
        generator,
        generator_equals_monomial,
        generation_verified,
        samples_checked,
        iff_holds: stable == generator_equals_monomial,
    }
}
