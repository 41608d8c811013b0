//! Invariant bilinear forms on reduced Chevalley algebras, the Killing
//! form and its Coxeter normalization, dual-module machinery, and the
//! lattice hypothesis checks built from them.
//!
//! The contracts here are verification-first: the Killing Gram matrix is
//! an exact integer trace computation, its normalization divides by twice
//! the per-component Coxeter number with p-adic exactness checked entry
//! by entry, the space of invariant forms is the literal nullspace of the
//! invariance system over all basis triples, and every downstream verdict
//! (dual-span fullness, module identification, centrality of the
//! distinguished element in the divisible type-A case) is reported with
//! enough data to replay the computation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chevalley::{ChevalleyAlgebra, ChevalleyError, ModpAlgebra};
use crate::fp::is_prime;
use crate::linalg::{MatFp, SubspaceModP};
use crate::moore::enumerate_lines;
use crate::rootsystem::{Family, RootSystem};

/// Errors from form construction and the hypothesis checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormsError {
    /// An entry of the Killing Gram matrix is not divisible by its
    /// component's `2h` inside the p-adic integers, so the normalized
    /// form is not well-defined.
    NormalizationNotIntegral {
        row: usize,
        col: usize,
        entry: i64,
        two_h: i64,
        p: u64,
    },
    /// A Killing entry couples two distinct direct summands.
    CrossComponentEntry {
        row: usize,
        col: usize,
        entry: i64,
    },
    /// The normalized Killing form failed its invariance recheck.
    NotInvariant,
    /// The normalized Killing form is degenerate although the prime is
    /// nice — a counterexample to the normalization theorem.
    DegenerateUnderNicePrime {
        p: u64,
    },
    /// Parameters outside the contract of the check.
    BadParameters(&'static str),
    Chevalley(ChevalleyError),
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::NormalizationNotIntegral {
                row,
                col,
                entry,
                two_h,
                p,
            } => write!(
                f,
                "Killing entry ({row},{col}) = {entry} is not divisible by {two_h} in Z_{p}"
            ),
            FormsError::CrossComponentEntry { row, col, entry } => write!(
                f,
                "Killing entry ({row},{col}) = {entry} couples distinct components"
            ),
            FormsError::NotInvariant => write!(f, "normalized form failed invariance"),
            FormsError::DegenerateUnderNicePrime { p } => {
                write!(f, "normalized form degenerate at nice prime {p}")
            }
            FormsError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
            FormsError::Chevalley(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FormsError {}

impl From<ChevalleyError> for FormsError {
    fn from(e: ChevalleyError) -> Self {
        FormsError::Chevalley(e)
    }
}

/// A bilinear form on a reduced algebra, stored as its Gram matrix in the
/// canonical basis: `(v, w) = v^T G w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: MatFp,
}

impl BilinearForm {
    #[must_use]
    pub fn new(gram: MatFp) -> Self {
        assert_eq!(gram.nrows(), gram.ncols(), "Gram matrix must be square");
        BilinearForm { gram }
    }

    #[must_use]
    pub fn gram(&self) -> &MatFp {
        &self.gram
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.gram.modulus()
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// Evaluates `(v, w) = v^T G w`.
    #[must_use]
    pub fn eval(&self, v: &[u64], w: &[u64]) -> u64 {
        let f = self.gram.field();
        let gw = self.gram.mul_vec(w);
        v.iter()
            .zip(&gw)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// The dual vector `beta(y)`: the functional `w -> (y, w)`, i.e.
    /// `G^T y` in coordinates.
    #[must_use]
    pub fn beta(&self, y: &[u64]) -> Vec<u64> {
        self.gram.transpose().mul_vec(y)
    }

    /// The radical `{v : (v, w) = 0 for all w}`.
    #[must_use]
    pub fn radical(&self) -> SubspaceModP {
        let basis = self.gram.transpose().nullspace();
        SubspaceModP::from_vectors(self.modulus(), self.dim(), &basis)
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    #[must_use]
    pub fn scale(&self, c: u64) -> Self {
        BilinearForm {
            gram: self.gram.scale(c),
        }
    }

    /// Checks `([x,v], w) + (v, [x,w]) = 0` over all basis triples, via
    /// the matrix identity `ad(x)^T G + G ad(x) = 0` for basis `x`.
    #[must_use]
    pub fn is_invariant(&self, g: &ModpAlgebra) -> bool {
        assert_eq!(g.dim(), self.dim(), "dimension mismatch");
        for i in 0..g.dim() {
            let adx = g.ad(&unit_vec(g.dim(), i));
            let lhs = adx.transpose().mul(&self.gram).add(&self.gram.mul(&adx));
            if !lhs.is_zero() {
                return false;
            }
        }
        true
    }
}

fn unit_vec(dim: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    v[j] = 1;
    v
}

/// The dual action of `x` on a functional: `(x . f)(v) = -f([x, v])`,
/// i.e. `-ad(x)^T f` in coordinates.
#[must_use]
pub fn dual_action(g: &ModpAlgebra, x: &[u64], f: &[u64]) -> Vec<u64> {
    let adx = g.ad(x);
    let v = adx.transpose().mul_vec(f);
    let fld = g.field();
    v.into_iter().map(|c| fld.neg(c)).collect()
}

/// The exact integer Killing Gram matrix `tr(ad(e_i) ad(e_j))` over the
/// canonical basis, computed from the sparse structure-constant table.
#[must_use]
pub fn killing_form_z(alg: &ChevalleyAlgebra) -> Vec<Vec<i64>> {
    let dim = alg.dim();
    let mut gram = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut acc: i64 = 0;
            for l in 0..dim {
                for &(m, c) in alg.entry(j, l) {
                    for &(k, d) in alg.entry(i, m) {
                        if k == l {
                            acc += c * d;
                        }
                    }
                }
            }
            gram[i][j] = acc;
            gram[j][i] = acc;
        }
    }
    gram
}

/// The p-adic valuation of a nonnegative integer.
fn valuation(p: u64, mut n: u64) -> u32 {
    assert!(n > 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The Killing form scaled by `1/(2h)` per indecomposable component —
/// `h` the *dual* Coxeter number — and reduced mod p, together with the
/// verification data accumulated while building it.
///
/// The divisor must be the dual Coxeter number: the Killing form of a
/// Chevalley lattice equals `2h_dual` times an integral form, so
/// division is exact over `Z`, and the quotient stays nondegenerate
/// mod every nice prime. Dividing by the plain Coxeter number instead
/// would not even be integral in type B, and would reduce to the zero
/// form whenever `p` divides `h / h_dual`-adjusted content (for
/// example B3 at p = 5, where `2h = 12` but the Killing entries carry
/// exactly one factor of 5 from `2h_dual = 10`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedKilling {
    /// Raw integer Killing Gram matrix.
    pub gram_z: Vec<Vec<i64>>,
    /// `2h` with `h` the dual Coxeter number, for each component,
    /// indexed like the root system's components.
    pub two_h: Vec<i64>,
    /// The normalized form mod p.
    pub form: BilinearForm,
    /// Whether every entry was divisible by its component's `2h` over
    /// the plain integers. With the dual Coxeter number this holds
    /// identically; it is still verified and recorded rather than
    /// assumed (p-adic exactness is what the reduction needs).
    pub z_divisible: bool,
    pub nondegenerate: bool,
    pub det: u64,
}

/// Divides the Killing form by `2h` (`h` the dual Coxeter number)
/// blockwise with p-adic exactness, reduces mod p, verifies invariance,
/// and — at nice primes — verifies nondegeneracy. Cross-component
/// entries must vanish.
pub fn normalized_killing(alg: &ChevalleyAlgebra, p: u64) -> Result<NormalizedKilling, FormsError> {
    let modp = alg.reduce_mod_p(p)?;
    let f = modp.field();
    let rs = alg.rs();
    let dim = alg.dim();
    let gram_z = killing_form_z(alg);
    let two_h: Vec<i64> = rs
        .dual_coxeter_numbers()
        .iter()
        .map(|&h| 2 * h as i64)
        .collect();
    let comp_of_basis: Vec<usize> = (0..dim).map(|i| basis_component(alg, i)).collect();

    let mut z_divisible = true;
    let mut reduced = MatFp::zeros(p, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let entry = gram_z[i][j];
            if comp_of_basis[i] != comp_of_basis[j] {
                if entry != 0 {
                    return Err(FormsError::CrossComponentEntry {
                        row: i,
                        col: j,
                        entry,
                    });
                }
                continue;
            }
            let divisor = two_h[comp_of_basis[i]];
            if entry == 0 {
                continue;
            }
            z_divisible &= entry % divisor == 0;
            // Split the divisor as p^a * u and require p^a to divide the
            // entry over Z; the unit u is inverted mod p.
            let a = valuation(p, divisor as u64);
            let pa = (p as i64).pow(a);
            if entry % pa != 0 {
                return Err(FormsError::NormalizationNotIntegral {
                    row: i,
                    col: j,
                    entry,
                    two_h: divisor,
                    p,
                });
            }
            let unit = (divisor / pa) as u64 % p;
            let val = f.mul(f.from_i64(entry / pa), f.inv(unit));
            reduced.set(i, j, val);
        }
    }

    let form = BilinearForm::new(reduced);
    if !form.is_invariant(&modp) {
        return Err(FormsError::NotInvariant);
    }
    let det = form.gram().det();
    let nondegenerate = det != 0;
    if is_nice_prime(p, rs).verdict && !nondegenerate {
        return Err(FormsError::DegenerateUnderNicePrime { p });
    }
    Ok(NormalizedKilling {
        gram_z,
        two_h,
        form,
        z_divisible,
        nondegenerate,
        det,
    })
}

/// Which direct summand a canonical basis vector belongs to.
fn basis_component(alg: &ChevalleyAlgebra, i: usize) -> usize {
    use crate::chevalley::BasisLabel;
    match alg.label(i) {
        BasisLabel::Root(r) => alg.rs().component_of_root(alg.rs().root(r)),
        BasisLabel::Cartan(k) => alg.rs().component_of_coord(k),
    }
}

/// A basis of the space of invariant bilinear forms: all solutions `G` of
/// `ad(x)^T G + G ad(x) = 0` over every basis element `x`.
///
/// When the Cartan generators act diagonally (always true for reduced
/// Chevalley tables), the diagonal action first restricts the support of
/// `G` to weight-opposite basis pairs, and the remaining generators
/// produce a linear system on those unknowns; otherwise the full system
/// is solved directly.
#[must_use]
pub fn invariant_form_space(g: &ModpAlgebra) -> Vec<BilinearForm> {
    let p = g.modulus();
    let f = g.field();
    let dim = g.dim();
    let nroots = g.num_roots();
    let rank = dim - nroots;

    // Weights of basis vectors under the Cartan generators, read off the
    // diagonal of each ad(H); fall back to full support if any Cartan
    // action is non-diagonal.
    let mut diagonal = true;
    let mut weights = vec![vec![0u64; rank]; dim];
    'outer: for ci in 0..rank {
        let i = nroots + ci;
        for k in 0..dim {
            for &(tgt, c) in g.entry(i, k) {
                if tgt == k {
                    weights[k][ci] = c;
                } else if c != 0 {
                    diagonal = false;
                    break 'outer;
                }
            }
        }
    }

    let mut support: Vec<(usize, usize)> = Vec::new();
    for k in 0..dim {
        for l in 0..dim {
            let opposite =
                !diagonal || (0..rank).all(|ci| f.add(weights[k][ci], weights[l][ci]) == 0);
            if opposite {
                support.push((k, l));
            }
        }
    }
    if support.is_empty() {
        return Vec::new();
    }
    let index_of = |k: usize, l: usize| support.binary_search(&(k, l)).ok();

    // One constraint row per (x, v, w): coefficient of G_{k,w} is
    // ad(x)_{k,v} and of G_{v,l} is ad(x)_{l,w}. Cartan generators are
    // already fully encoded in the support restriction when diagonal.
    let generator_range = if diagonal { 0..nroots } else { 0..dim };
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for x in generator_range {
        for v in 0..dim {
            for w in 0..dim {
                let mut row = vec![0u64; support.len()];
                let mut nonzero = false;
                for &(k, c) in g.entry(x, v) {
                    if let Some(idx) = index_of(k, w) {
                        row[idx] = f.add(row[idx], c);
                        nonzero |= row[idx] != 0;
                    }
                }
                for &(l, c) in g.entry(x, w) {
                    if let Some(idx) = index_of(v, l) {
                        row[idx] = f.add(row[idx], c);
                        nonzero |= row[idx] != 0;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }

    let solutions: Vec<Vec<u64>> = if rows.is_empty() {
        (0..support.len())
            .map(|i| unit_vec(support.len(), i))
            .collect()
    } else {
        MatFp::from_rows(p, &rows).nullspace()
    };

    solutions
        .into_iter()
        .map(|sol| {
            let mut gram = MatFp::zeros(p, dim, dim);
            for (idx, &(k, l)) in support.iter().enumerate() {
                gram.set(k, l, sol[idx]);
            }
            BilinearForm::new(gram)
        })
        .collect()
}

/// Outcome of the dual-compatibility checks of one invariant form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCompatibilityReport {
    /// Basis pairs violating `x . beta(y) = y . beta(-x)`.
    pub swap_violations: Vec<(usize, usize)>,
    /// Basis pairs `(x, j)` violating `beta(x)([x, e_j]) = 0`.
    pub kernel_violations: Vec<(usize, usize)>,
    /// Sampled pairs `(x, y)` with a projective line lying in both
    /// bracket images while avoiding both beta-kernels, with the witness
    /// line.
    pub disjointness_violations: Vec<(usize, usize, Vec<u64>)>,
    pub pairs_sampled: usize,
    pub lines_enumerated: usize,
}

impl FormCompatibilityReport {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.swap_violations.is_empty()
            && self.kernel_violations.is_empty()
            && self.disjointness_violations.is_empty()
    }
}

/// Checks the two dual-compatibility identities of an invariant form on
/// all basis pairs, plus — on the supplied sampled pairs `(x, y)` — the
/// projective disjointness
/// `(P([x,g]) - P(ker beta(y))) ∩ (P([y,g]) - P(ker beta(x))) = ∅`
/// by explicit enumeration of the lines of the ambient space.
#[must_use]
pub fn check_form_compatibility(
    g: &ModpAlgebra,
    form: &BilinearForm,
    disjointness_pairs: &[(usize, usize)],
) -> FormCompatibilityReport {
    let dim = g.dim();
    let p = g.modulus();
    let f = g.field();
    let betas: Vec<Vec<u64>> = (0..dim).map(|i| form.beta(&unit_vec(dim, i))).collect();

    let mut swap_violations = Vec::new();
    let mut kernel_violations = Vec::new();
    for i in 0..dim {
        let neg_beta_i: Vec<u64> = betas[i].iter().map(|&c| f.neg(c)).collect();
        for j in 0..dim {
            let lhs = dual_action(g, &unit_vec(dim, i), &betas[j]);
            let rhs = dual_action(g, &unit_vec(dim, j), &neg_beta_i);
            if lhs != rhs {
                swap_violations.push((i, j));
            }
            let w = g.bracket_basis_vec(i, &unit_vec(dim, j));
            let pairing = betas[i]
                .iter()
                .zip(&w)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            if pairing != 0 {
                kernel_violations.push((i, j));
            }
        }
    }

    let mut disjointness_violations = Vec::new();
    let mut lines_enumerated = 0usize;
    if !disjointness_pairs.is_empty() {
        let lines = enumerate_lines(p, dim);
        lines_enumerated = lines.len();
        for &(x, y) in disjointness_pairs {
            let im_x = bracket_image(g, x);
            let im_y = bracket_image(g, y);
            for line in &lines {
                let dot = |b: &Vec<u64>| {
                    b.iter()
                        .zip(line)
                        .fold(0, |acc, (&a, &v)| f.add(acc, f.mul(a, v)))
                };
                if dot(&betas[y]) != 0
                    && dot(&betas[x]) != 0
                    && im_x.contains(line)
                    && im_y.contains(line)
                {
                    disjointness_violations.push((x, y, line.clone()));
                }
            }
        }
    }

    FormCompatibilityReport {
        swap_violations,
        kernel_violations,
        disjointness_violations,
        pairs_sampled: disjointness_pairs.len(),
        lines_enumerated,
    }
}

/// The image `[e_x, g]` as a subspace.
fn bracket_image(g: &ModpAlgebra, x: usize) -> SubspaceModP {
    let dim = g.dim();
    let cols: Vec<Vec<u64>> = (0..dim)
        .map(|j| g.bracket_basis_vec(x, &unit_vec(dim, j)))
        .collect();
    SubspaceModP::from_vectors(g.modulus(), dim, &cols)
}

/// Report of the identification between the reduced algebra and the
/// scaled-lattice module it acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleIsomorphismReport {
    pub p: u64,
    pub t: u32,
    pub epsilon: u32,
    pub t_ok: bool,
    pub center_dim: usize,
    /// The identification route requires a trivial center.
    pub precondition_ok: bool,
    pub equivariance_ok: bool,
}

impl ModuleIsomorphismReport {
    #[must_use]
    pub fn pass(&self) -> bool {
        self.t_ok && self.precondition_ok && self.equivariance_ok
    }
}

/// Certifies the module identification for the scaled lattice `p^t L`:
/// requires `t >= epsilon` and a trivial center, and verifies on every
/// basis pair that the identity map intertwines the bracket action with
/// the module action (structure constants reduced mod p agree).
pub fn module_isomorphism_check(
    alg: &ChevalleyAlgebra,
    p: u64,
    t: u32,
) -> Result<ModuleIsomorphismReport, FormsError> {
    let modp = alg.reduce_mod_p(p)?;
    let f = modp.field();
    let epsilon = if p == 2 { 2 } else { 1 };
    let t_ok = t >= epsilon;
    let center_dim = modp.center().dim();
    let precondition_ok = center_dim == 0;

    let dim = alg.dim();
    let mut equivariance_ok = true;
    for i in 0..dim {
        for j in 0..dim {
            // Module action of e_i on the identified basis vector e_j,
            // recomputed from the integer table, against the reduced
            // bracket.
            let mut from_z = vec![0u64; dim];
            for &(k, c) in alg.entry(i, j) {
                from_z[k] = f.add(from_z[k], f.from_i64(c));
            }
            let mut reduced = vec![0u64; dim];
            for &(k, c) in modp.entry(i, j) {
                reduced[k] = f.add(reduced[k], c);
            }
            equivariance_ok &= from_z == reduced;
        }
    }

    Ok(ModuleIsomorphismReport {
        p,
        t,
        epsilon,
        t_ok,
        center_dim,
        precondition_ok,
        equivariance_ok,
    })
}

/// Report on whether the functionals `beta(y)` generate the full dual
/// space as a module, over a basis of the invariant-form space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSpanReport {
    pub span_dim: usize,
    pub required_dim: usize,
    pub num_forms: usize,
    pub span: SubspaceModP,
}

impl DualSpanReport {
    #[must_use]
    pub fn pass(&self) -> bool {
        self.span_dim == self.required_dim
    }
}

/// Computes the submodule of the dual generated by the functionals
/// `beta(y)` over all basis `y` and all `beta` from a basis of the
/// invariant-form space, and compares its dimension with `dim g`.
///
/// Invariance makes the image of each `beta` a submodule already —
/// `x . beta(y) = beta([x, y])` up to sign — so the dual-action
/// translates add nothing beyond the generators; they are still
/// inserted so that the computed span genuinely witnesses closure
/// under the action. The distinction matters for imperfect algebras:
/// the rank-one type-A algebra over `F_2` has `beta([g, g]) = 0` for
/// every invariant form, while the generated submodule is the full
/// annihilator of the centre.
#[must_use]
pub fn dual_span_check(g: &ModpAlgebra) -> DualSpanReport {
    let dim = g.dim();
    let forms = invariant_form_space(g);
    let mut span = SubspaceModP::zero(g.modulus(), dim);
    'fill: for form in &forms {
        for j in 0..dim {
            let beta_j = form.beta(&unit_vec(dim, j));
            span.insert(&beta_j);
            if span.is_full() {
                break 'fill;
            }
            for i in 0..dim {
                // x . beta(y) = -ad(x)^T beta(y); contained in the
                // image by invariance, inserted to witness closure.
                let v = g.bracket_basis_transpose_vec(i, &beta_j);
                let f = g.field();
                let v: Vec<u64> = v.into_iter().map(|c| f.neg(c)).collect();
                span.insert(&v);
                if span.is_full() {
                    break 'fill;
                }
            }
        }
    }
    DualSpanReport {
        span_dim: span.dim(),
        required_dim: dim,
        num_forms: forms.len(),
        span,
    }
}

/// Why a prime fails to be nice for a root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceFailure {
    /// `p < 5`.
    TooSmall,
    /// `p` divides `n + 1` for a type-A component of rank `n`.
    DividesAPlusOne { rank: usize },
}

impl fmt::Display for NiceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NiceFailure::TooSmall => write!(f, "p < 5"),
            NiceFailure::DividesAPlusOne { rank } => {
                write!(
                    f,
                    "p divides {} for a type-A component of rank {rank}",
                    rank + 1
                )
            }
        }
    }
}

/// Verdict of the nice-prime predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePrimeVerdict {
    pub p: u64,
    pub type_string: String,
    pub verdict: bool,
    pub failure: Option<NiceFailure>,
}

/// `p` is nice for the root system when `p >= 5` and `p` does not divide
/// `n + 1` for any type-A component of rank `n`.
#[must_use]
pub fn is_nice_prime(p: u64, rs: &RootSystem) -> NicePrimeVerdict {
    let failure = if p < 5 {
        Some(NiceFailure::TooSmall)
    } else {
        rs.components()
            .iter()
            .find(|(fam, rank)| *fam == Family::A && (*rank as u64 + 1).is_multiple_of(p))
            .map(|&(_, rank)| NiceFailure::DividesAPlusOne { rank })
    };
    NicePrimeVerdict {
        p,
        type_string: rs.type_string(),
        verdict: failure.is_none(),
        failure,
    }
}

/// Report on the distinguished central element of type A at a divisible
/// prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralElementReport {
    pub n: usize,
    pub p: u64,
    /// Coordinates of `z = sum i * h_i` in the canonical basis, mod p.
    pub z: Vec<u64>,
    pub is_central: bool,
    pub center_dim: usize,
    pub center_equals_z_span: bool,
}

impl CentralElementReport {
    #[must_use]
    pub fn pass(&self) -> bool {
        self.is_central && self.center_dim == 1 && self.center_equals_z_span
    }
}

/// For type A of rank `n` with `p | n + 1`: verifies that
/// `z = sum_{i=1..n} i h_i` is central mod p and generates the full
/// center.
pub fn central_element_check(n: usize, p: u64) -> Result<CentralElementReport, FormsError> {
    if !is_prime(p) {
        return Err(FormsError::Chevalley(ChevalleyError::NotPrime(p)));
    }
    if n < 1 {
        return Err(FormsError::BadParameters("type A needs rank >= 1"));
    }
    if !(n as u64 + 1).is_multiple_of(p) {
        return Err(FormsError::BadParameters("p must divide n + 1"));
    }
    let rs = RootSystem::build(&[(Family::A, n)]).expect("admissible rank");
    let alg = ChevalleyAlgebra::build(rs);
    let modp = alg.reduce_mod_p(p)?;
    let dim = modp.dim();
    let nroots = modp.num_roots();

    let mut z = vec![0u64; dim];
    for k in 0..n {
        z[nroots + k] = (k as u64 + 1) % p;
    }
    let is_central = (0..dim).all(|j| modp.bracket(&z, &unit_vec(dim, j)).iter().all(|&c| c == 0));
    let center = modp.center();
    let z_span = SubspaceModP::from_vectors(p, dim, &[z.clone()]);
    Ok(CentralElementReport {
        n,
        p,
        z,
        is_central,
        center_dim: center.dim(),
        center_equals_z_span: center == z_span,
    })
}

/// Per-component result inside [`lattice_hypothesis_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentHypothesisReport {
    pub type_string: String,
    pub iso: ModuleIsomorphismReport,
    pub span: DualSpanReport,
    /// Nice-prime consistency: at a nice prime, perfect plus a
    /// nondegenerate normalized Killing form must imply a full dual
    /// span.
    pub consistency_ok: bool,
    pub pass: bool,
}

/// Aggregated hypothesis report over all direct summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHypothesisReport {
    pub p: u64,
    pub t: u32,
    pub epsilon: u32,
    pub components: Vec<ComponentHypothesisReport>,
    pub pass: bool,
}

/// Runs the module-identification and dual-span checks on every
/// indecomposable component of the root system and aggregates: the sum
/// satisfies the hypothesis exactly when every summand does. At nice
/// primes the theorem route (perfect + nondegenerate normalized Killing
/// implies full dual span) is asserted as a consistency condition.
pub fn lattice_hypothesis_check(
    rs: &RootSystem,
    p: u64,
    t: u32,
) -> Result<LatticeHypothesisReport, FormsError> {
    let epsilon = if p == 2 { 2 } else { 1 };
    if t < epsilon {
        return Err(FormsError::BadParameters("t must be at least epsilon"));
    }
    let mut components = Vec::new();
    let mut all_pass = true;
    for &(fam, rank) in rs.components() {
        let crs = RootSystem::build(&[(fam, rank)]).expect("components are admissible");
        let type_string = crs.type_string();
        let calg = ChevalleyAlgebra::build(crs);
        let iso = module_isomorphism_check(&calg, p, t)?;
        let modp = calg.reduce_mod_p(p)?;
        let span = dual_span_check(&modp);

        let mut consistency_ok = true;
        if is_nice_prime(p, calg.rs()).verdict {
            let perfect = modp.derived_subalgebra().is_full();
            match normalized_killing(&calg, p) {
                Ok(nk) => {
                    if perfect && nk.nondegenerate && !span.pass() {
                        consistency_ok = false;
                    }
                }
                Err(FormsError::DegenerateUnderNicePrime { .. }) => {
                    consistency_ok = false;
                }
                Err(e) => return Err(e),
            }
        }

        let pass = iso.pass() && span.pass() && consistency_ok;
        all_pass &= pass;
        components.push(ComponentHypothesisReport {
            type_string,
            iso,
            span,
            consistency_ok,
            pass,
        });
    }
    Ok(LatticeHypothesisReport {
        p,
        t,
        epsilon,
        components,
        pass: all_pass,
    })
}
