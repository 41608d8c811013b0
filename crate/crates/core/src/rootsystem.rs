//! Root systems of types A..G and their direct sums.
//!
//! Roots are integer coefficient vectors over the simple roots, so the whole
//! module is exact integer arithmetic. A system is built per irreducible
//! component by closing the simple roots under the simple reflections
//!
//! ```text
//! s_i(v) = v - <v, alpha_i^vee> e_i,   <v, alpha_i^vee> = sum_j a_ij v_j,
//! ```
//!
//! with the Cartan convention `a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`
//! (row `i` scaled by the norm of root `i`). Components follow the standard
//! Bourbaki node numbering.
//!
//! The root list is sorted by (height, lexicographic coefficients), which
//! puts all negative roots before all positive roots and fixes the basis
//! order used everywhere downstream; rebuilding a system always reproduces
//! the identical ordering.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// The seven families of irreducible root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    #[must_use]
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    #[must_use]
    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    /// Admissible ranks. The low-rank exclusions (`B_1`, `C_1`, `C_2`,
    /// `D_2`, `D_3`) avoid duplicating systems that already occur under an
    /// earlier letter.
    #[must_use]
    pub fn admits_rank(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B => n >= 2,
            Family::C => n >= 3,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Errors from root-system construction and type-string parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    /// Family/rank combination outside the admissible table.
    BadRank { family: Family, rank: usize },
    /// A direct sum needs at least one component.
    EmptySum,
    /// Unparseable type string such as `"A0"` or `"X3"`.
    BadTypeString(String),
}

impl fmt::Display for RootSystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystemError::BadRank { family, rank } => {
                write!(f, "inadmissible rank: {family}{rank}")
            }
            RootSystemError::EmptySum => write!(f, "direct sum needs at least one component"),
            RootSystemError::BadTypeString(s) => write!(f, "cannot parse type string {s:?}"),
        }
    }
}

impl core::error::Error for RootSystemError {}

/// A root system, possibly a direct sum of irreducible components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<(Family, usize)>,
    /// Start coordinate of each component in the global simple-root basis.
    comp_offsets: Vec<usize>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Half-norms `d_i = (alpha_i, alpha_i)/2`, normalized so the short
    /// roots of each component have half-norm 1.
    half_norms: Vec<i64>,
    /// All roots, sorted by (height, lex). Negative roots come first.
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

fn cartan_matrix_irreducible(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edge = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        Family::A => {
            for i in 0..n - 1 {
                edge(&mut a, i, i + 1, -1, -1);
            }
        }
        Family::B => {
            // Last simple root short: its row carries the -2.
            for i in 0..n.saturating_sub(2) {
                edge(&mut a, i, i + 1, -1, -1);
            }
            edge(&mut a, n - 2, n - 1, -1, -2);
        }
        Family::C => {
            // Last simple root long: its column carries the -2.
            for i in 0..n - 2 {
                edge(&mut a, i, i + 1, -1, -1);
            }
            edge(&mut a, n - 2, n - 1, -2, -1);
        }
        Family::D => {
            for i in 0..n - 2 {
                edge(&mut a, i, i + 1, -1, -1);
            }
            edge(&mut a, n - 3, n - 1, -1, -1);
        }
        Family::E => {
            // Bourbaki numbering: a chain 1-3-4-5-6(-7-8) with node 2
            // hanging off node 4. Zero-based below.
            let chain: &[usize] = match n {
                6 => &[0, 2, 3, 4, 5],
                7 => &[0, 2, 3, 4, 5, 6],
                _ => &[0, 2, 3, 4, 5, 6, 7],
            };
            for w in chain.windows(2) {
                edge(&mut a, w[0], w[1], -1, -1);
            }
            edge(&mut a, 1, 3, -1, -1);
        }
        Family::F => {
            edge(&mut a, 0, 1, -1, -1);
            edge(&mut a, 1, 2, -1, -2);
            edge(&mut a, 2, 3, -1, -1);
        }
        Family::G => {
            // First simple root short.
            edge(&mut a, 0, 1, -3, -1);
        }
    }
    a
}

/// Half-norms for a connected Cartan matrix: the unique positive integer
/// vector with `d_i a_ij = d_j a_ji` and minimum value 1. Found by
/// propagating exact ratios along the Dynkin graph.
fn half_norms_irreducible(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // (num, den) per node, node 0 seeded at 1/1.
    let mut val: Vec<Option<(i64, i64)>> = vec![None; n];
    val[0] = Some((1, 1));
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let (ni, di) = val[i].expect("queued nodes have values");
        for j in 0..n {
            if i == j || cartan[i][j] == 0 || val[j].is_some() {
                continue;
            }
            // d_j = d_i * a_ij / a_ji.
            let (mut nj, mut dj) = (ni * cartan[i][j], di * cartan[j][i]);
            if dj < 0 {
                nj = -nj;
                dj = -dj;
            }
            let g = gcd(nj.abs(), dj.abs());
            nj /= g;
            dj /= g;
            val[j] = Some((nj, dj));
            queue.push(j);
        }
    }
    let mut lcm_den = 1i64;
    for v in &val {
        let (_, d) = v.expect("Dynkin graph of an irreducible system is connected");
        lcm_den = lcm(lcm_den, d);
    }
    let mut out: Vec<i64> = val
        .iter()
        .map(|v| {
            let (num, den) = v.expect("all nodes reached");
            num * (lcm_den / den)
        })
        .collect();
    let min = *out.iter().min().expect("nonempty");
    assert!(
        min > 0,
        "half-norm propagation produced a non-positive value"
    );
    assert!(
        out.iter().all(|x| x % min == 0),
        "half-norms must be integer multiples of the shortest"
    );
    for x in &mut out {
        *x /= min;
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Closes the simple roots of one component under simple reflections.
fn reflection_closure(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = cartan.len();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        set.insert(e.clone());
        queue.push(e);
    }
    while let Some(v) = queue.pop() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if set.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    set
}

impl RootSystem {
    /// Builds the root system for a list of irreducible components.
    ///
    /// Rejects inadmissible ranks and the empty sum. The result is fully
    /// deterministic in the component list.
    pub fn build(components: &[(Family, usize)]) -> Result<Self, RootSystemError> {
        if components.is_empty() {
            return Err(RootSystemError::EmptySum);
        }
        for &(family, rank) in components {
            if !family.admits_rank(rank) {
                return Err(RootSystemError::BadRank { family, rank });
            }
        }
        let rank: usize = components.iter().map(|&(_, n)| n).sum();
        let mut comp_offsets = Vec::with_capacity(components.len());
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut half_norms = Vec::with_capacity(rank);
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut offset = 0usize;
        for &(family, n) in components {
            comp_offsets.push(offset);
            let block = cartan_matrix_irreducible(family, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = block[i][j];
                }
            }
            half_norms.extend(half_norms_irreducible(&block));
            for local in reflection_closure(&block) {
                let mut v = vec![0i64; rank];
                v[offset..offset + n].copy_from_slice(&local);
                roots.push(v);
            }
            offset += n;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(Self {
            components: components.to_vec(),
            comp_offsets,
            rank,
            cartan,
            half_norms,
            roots,
            index,
        })
    }

    /// Parses a type string such as `"A2"`, `"E8"`, or `"B2+G2"`.
    pub fn parse(s: &str) -> Result<Self, RootSystemError> {
        let mut components = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let mut chars = part.chars();
            let fam = chars
                .next()
                .and_then(Family::from_letter)
                .ok_or_else(|| RootSystemError::BadTypeString(part.into()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| RootSystemError::BadTypeString(part.into()))?;
            components.push((fam, rank));
        }
        Self::build(&components)
    }

    #[must_use]
    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    /// Start coordinate of each component in the simple-root basis.
    #[must_use]
    pub fn component_offsets(&self) -> &[usize] {
        &self.comp_offsets
    }

    /// Component index owning coordinate `j`.
    #[must_use]
    pub fn component_of_coord(&self, j: usize) -> usize {
        let mut c = 0;
        for (k, &off) in self.comp_offsets.iter().enumerate() {
            if j >= off {
                c = k;
            }
        }
        c
    }

    /// Component index of a root (roots are supported in one component).
    #[must_use]
    pub fn component_of_root(&self, root: &[i64]) -> usize {
        let j = root
            .iter()
            .position(|&x| x != 0)
            .expect("the zero vector is not a root");
        self.component_of_coord(j)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[must_use]
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    #[must_use]
    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    /// All roots in the canonical (height, lex) order.
    #[must_use]
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    #[must_use]
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Positions of the positive roots: the second half of the sorted list.
    #[must_use]
    pub fn positive_range(&self) -> core::ops::Range<usize> {
        self.roots.len() / 2..self.roots.len()
    }

    #[must_use]
    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    #[must_use]
    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    #[must_use]
    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// Index of the negated root.
    #[must_use]
    pub fn opposite(&self, i: usize) -> usize {
        let neg: Vec<i64> = self.roots[i].iter().map(|&x| -x).collect();
        self.index[&neg]
    }

    #[must_use]
    pub fn height(v: &[i64]) -> i64 {
        v.iter().sum()
    }

    /// Symmetric bilinear form `(u, v)` extended from
    /// `(alpha_i, alpha_j) = d_i a_ij`.
    #[must_use]
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.rank {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += u[i] * v[j] * self.half_norms[i] * self.cartan[i][j];
            }
        }
        acc
    }

    #[must_use]
    pub fn norm2(&self, v: &[i64]) -> i64 {
        self.bilinear(v, v)
    }

    /// Exact Cartan pairing `<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)`.
    ///
    /// Panics if the division is not exact, which cannot happen when `alpha`
    /// is a root and `v` is in the root lattice.
    #[must_use]
    pub fn pairing(&self, v: &[i64], alpha: &[i64]) -> i64 {
        let num = 2 * self.bilinear(v, alpha);
        let den = self.norm2(alpha);
        assert!(den != 0 && num % den == 0, "non-integral Cartan pairing");
        num / den
    }

    /// Reflection of `v` in the hyperplane orthogonal to the root `alpha`.
    #[must_use]
    pub fn reflect(&self, v: &[i64], alpha: &[i64]) -> Vec<i64> {
        let c = self.pairing(v, alpha);
        v.iter()
            .zip(alpha.iter())
            .map(|(&x, &a)| x - c * a)
            .collect()
    }

    /// The alpha-string through beta: largest `(q, r)` with
    /// `beta - q alpha` and `beta + r alpha` both roots.
    ///
    /// Requires `alpha` and `beta` to be roots with `beta != +-alpha`.
    #[must_use]
    pub fn root_string(&self, alpha: &[i64], beta: &[i64]) -> (i64, i64) {
        assert!(
            self.is_root(alpha) && self.is_root(beta),
            "root_string needs roots"
        );
        let neg: Vec<i64> = alpha.iter().map(|&x| -x).collect();
        assert!(
            beta != alpha && beta != neg.as_slice(),
            "root_string through +-alpha is undefined"
        );
        let step = |dir: i64| {
            let mut k = 0i64;
            loop {
                let probe: Vec<i64> = beta
                    .iter()
                    .zip(alpha.iter())
                    .map(|(&b, &a)| b + dir * (k + 1) * a)
                    .collect();
                if !self.is_root(&probe) {
                    return k;
                }
                k += 1;
            }
        };
        (step(-1), step(1))
    }

    /// Coxeter number of each component: root count over rank.
    #[must_use]
    pub fn coxeter_numbers(&self) -> Vec<u64> {
        self.components
            .iter()
            .enumerate()
            .map(|(c, &(_, n))| {
                let count = self
                    .roots
                    .iter()
                    .filter(|r| self.component_of_root(r) == c)
                    .count();
                (count / n) as u64
            })
            .collect()
    }

    /// Dual Coxeter number of each indecomposable component, via
    /// `h_dual = 1 + <rho, theta_dual>` with `theta` the highest root:
    /// the pairing expands to the exact integer
    /// `sum_{beta > 0} (beta, theta) / (theta, theta)`.
    #[must_use]
    pub fn dual_coxeter_numbers(&self) -> Vec<u64> {
        (0..self.components.len())
            .map(|c| {
                let positives: Vec<&Vec<i64>> = self.roots[self.positive_range()]
                    .iter()
                    .filter(|r| self.component_of_root(r) == c)
                    .collect();
                let theta = positives
                    .iter()
                    .max_by_key(|r| RootSystem::height(r))
                    .expect("component has positive roots");
                let theta_norm = self.norm2(theta);
                let total: i64 = positives
                    .iter()
                    .map(|beta| self.bilinear(beta, theta))
                    .sum();
                assert!(
                    total % theta_norm == 0,
                    "pairing sum must be an exact multiple of the highest-root norm"
                );
                (1 + total / theta_norm) as u64
            })
            .collect()
    }

    /// Renders a component list such as `"B2+G2"`.
    #[must_use]
    pub fn type_string(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (k, &(fam, n)) in self.components.iter().enumerate() {
            if k > 0 {
                s.push('+');
            }
            let _ = write!(s, "{fam}{n}");
        }
        s
    }
}
