//! Acceptance suite: ten headline criteria, one test and one printed
//! PASS/FAIL line each. Run with `cargo test --test acceptance --
//! --nocapture` to see the lines; the two exceptional-type variants are
//! ignored by default and unlocked with `-- --ignored`.

use chevalley_core::chevalley::{lattice_valuation_check, ChevalleyAlgebra, SimplicityOutcome};
use chevalley_core::derivations::{
    controlled_monomial_check, decompose, is_in_b1, is_in_b1_syntactic, partial, recompose,
    Derivation, DerivationError,
};
use chevalley_core::forms::{
    central_element_check, check_form_compatibility, dual_span_check, invariant_form_space,
    is_nice_prime, module_isomorphism_check, normalized_killing,
};
use chevalley_core::fppoly::{FpPoly, PolyMatrix};
use chevalley_core::linalg::{MatFp, SubspaceModP};
use chevalley_core::moore::{
    build_u_d, delta, divisibility_report, sample_exponent_sequences, scalar_ratio, standard_forms,
};
use chevalley_core::rootsystem::{Family, RootSystem};
use chevalley_core::task_seed;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::time::{Duration, Instant};

const SEED: u64 = 0xACCE5;

fn conclude(tag: &str, started: Instant, limit: Duration, mut problems: Vec<String>) {
    let elapsed = started.elapsed();
    if elapsed > limit {
        problems.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    let ok = problems.is_empty();
    println!("acceptance {tag}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{tag}: {problems:?}");
}

fn rng_for(label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(task_seed(SEED, label))
}

fn build(type_string: &str) -> ChevalleyAlgebra {
    ChevalleyAlgebra::build(RootSystem::parse(type_string).unwrap())
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    p: u64,
    nvars: usize,
    max_terms: usize,
    max_deg: u32,
) -> FpPoly {
    let nterms = 1 + (rng.next_u64() as usize) % max_terms;
    let terms: Vec<(Vec<u32>, u64)> = (0..nterms)
        .map(|_| {
            (
                (0..nvars)
                    .map(|_| (rng.next_u64() as u32) % (max_deg + 1))
                    .collect(),
                rng.next_u64() % p,
            )
        })
        .collect();
    FpPoly::from_terms(p, nvars, &terms)
}

fn unit_mod_p_vector(rng: &mut ChaCha8Rng, dim: usize, p: u64) -> Vec<i64> {
    loop {
        let x: Vec<i64> = (0..dim).map(|_| (rng.next_u64() % 9) as i64 - 4).collect();
        if x.iter().any(|&c| c.rem_euclid(p as i64) != 0) {
            return x;
        }
    }
}

/// Criterion 1: the integral structure constants satisfy antisymmetry and the
/// Jacobi identity across every classical type and both small
/// exceptional types, with zero violations.
#[test]
fn acceptance_01_bracket_identities() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for ty in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let alg = build(ty);
        let rep = alg.verify_jacobi();
        if !rep.ok() {
            problems.push(format!(
                "{ty}: {} jacobi and {} antisymmetry violations",
                rep.violations.len(),
                rep.antisymmetry_violations.len()
            ));
        }
        if rep.triples_checked == 0 {
            problems.push(format!("{ty}: no triples checked"));
        }
    }
    conclude(
        "01 bracket-identities",
        started,
        Duration::from_secs(60),
        problems,
    );
}

/// Criterion 1, heavy variant: the same sweep over the three large exceptional types.
#[test]
#[ignore = "heavy: exceptional E series"]
fn acceptance_01_bracket_identities_heavy() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for ty in ["E6", "E7", "E8"] {
        let rep = build(ty).verify_jacobi();
        if !rep.ok() {
            problems.push(format!("{ty}: violations"));
        }
    }
    conclude(
        "01h bracket-identities-heavy",
        started,
        Duration::from_secs(600),
        problems,
    );
}

/// Criterion 2: Moore determinants: the line-form product divides exactly with
/// the right degree on seeded distinct exponent sequences, the
/// consecutive-exponent quotient is a nonzero constant, and any
/// repeated exponent collapses the determinant.
#[test]
fn acceptance_02_moore_factorization() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for p in [2u64, 3, 5] {
        for m in [1usize, 2, 3] {
            let seqs =
                sample_exponent_sequences(task_seed(SEED, &format!("moore:{p}:{m}")), 20, m, 3);
            for d in &seqs {
                let rep = divisibility_report(p, m, d);
                let expected: u64 = d.iter().map(|&e| p.pow(e)).sum();
                if rep.determinant_zero || !rep.divisible || rep.det_degree != Some(expected) {
                    problems.push(format!("p={p} m={m} d={d:?}: bad factorization"));
                }
            }
            match scalar_ratio(p, m) {
                Ok(0) | Err(_) => {
                    problems.push(format!("p={p} m={m}: ratio not a nonzero constant"))
                }
                Ok(_) => {}
            }
            let lines = (p.pow(m as u32) - 1) / (p - 1);
            if delta(p, m).degree() != Some(lines) {
                problems.push(format!("p={p} m={m}: delta degree"));
            }
            if m >= 2 {
                for d in all_boxes(m, 2) {
                    let mut sorted = d.clone();
                    sorted.sort_unstable();
                    if sorted.windows(2).any(|w| w[0] == w[1])
                        && !divisibility_report(p, m, &d).determinant_zero
                    {
                        problems.push(format!("p={p} m={m} d={d:?}: repeat should vanish"));
                    }
                }
            }
        }
    }
    conclude(
        "02 moore-factorization",
        started,
        Duration::from_secs(120),
        problems,
    );
}

fn all_boxes(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=max).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Criterion 3: adjugate identity on seeded random polynomial matrices up to
/// 3x3, and the verified twisted diagonalization on standard forms.
#[test]
fn acceptance_03_adjugate_and_diagonalization() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let mut rng = rng_for("adjugate");
    for size in [1usize, 2, 3] {
        for trial in 0..10 {
            let p = [2u64, 3, 5][trial % 3];
            let a = PolyMatrix::from_fn(p, size, size, size, |_, _| {
                random_poly(&mut rng, p, size, 3, 2)
            });
            let adj = a.adjugate();
            let det_i = a.det_times_identity();
            if adj.mul(&a) != det_i || a.mul(&adj) != det_i {
                problems.push(format!("size {size} trial {trial}: adjugate identity"));
            }
        }
    }
    for p in [2u64, 3] {
        for m in [2usize, 3] {
            for s in [0u32, 1] {
                match build_u_d(p, &standard_forms(p, m), s) {
                    Ok(ud) => {
                        if ud.u.mul(&ud.a) != ud.d {
                            problems.push(format!("p={p} m={m} s={s}: U.A != D"));
                        }
                    }
                    Err(e) => problems.push(format!("p={p} m={m} s={s}: {e}")),
                }
            }
        }
    }
    conclude(
        "03 adjugate-diagonalization",
        started,
        Duration::from_secs(120),
        problems,
    );
}

/// Criterion 4: fifty seeded membership certificates over p in {2,3,5}, up to
/// three variables and twist offset 1, rank-deficient maps included;
/// every certificate re-verifies as an exact polynomial identity.
#[test]
fn acceptance_04_membership_certificates() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let combos = [
        (2u64, 1usize, 0u32),
        (2, 2, 1),
        (2, 3, 0),
        (3, 1, 1),
        (3, 2, 0),
        (3, 3, 1),
        (5, 1, 0),
        (5, 2, 1),
        (5, 3, 0),
    ];
    let mut rng = rng_for("certificates");
    let mut certificates = 0usize;
    let mut deficient = 0usize;
    let mut trial = 0usize;
    while certificates < 50 && trial < 400 {
        let (p, m, s) = combos[trial % combos.len()];
        let mut rows: Vec<Vec<u64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.next_u64() % p).collect())
            .collect();
        if m >= 2 && trial % 3 == 2 {
            rows[m - 1] = rows[0].clone();
        }
        trial += 1;
        let l = MatFp::from_rows(p, &rows);
        let deriv = Derivation::from_endomorphism(&l);
        let mut g: Vec<u64> = (0..m).map(|_| rng.next_u64() % p).collect();
        let mut tries = 0;
        while l.mul_vec(&g).iter().all(|&c| c == 0) && tries < 30 {
            g = (0..m).map(|_| rng.next_u64() % p).collect();
            tries += 1;
        }
        match deriv.certify_constant_field_membership(&g, s) {
            Ok(cert) => {
                certificates += 1;
                if cert.rank < m {
                    deficient += 1;
                }
                if !cert.verify() {
                    problems.push(format!("trial {trial}: certificate failed to re-verify"));
                }
                if cert.rank != l.rank() {
                    problems.push(format!("trial {trial}: rank mismatch"));
                }
            }
            Err(DerivationError::DegenerateTarget) => {}
            Err(e) => problems.push(format!("trial {trial}: {e}")),
        }
    }
    if certificates < 50 {
        problems.push(format!(
            "only {certificates} certificates in {trial} trials"
        ));
    }
    if deficient == 0 {
        problems.push("no rank-deficient map was certified".into());
    }
    conclude(
        "04 membership-certificates",
        started,
        Duration::from_secs(180),
        problems,
    );
}

/// Criterion 5: graded decomposition round-trips, the Leibniz rule for formal
/// partials, agreement of the two subring-stability tests, and the
/// exhaustive controlled-monomial equivalence.
#[test]
fn acceptance_05_graded_derivation_layer() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let mut rng = rng_for("graded");
    let primes = [2u64, 3, 5];
    for trial in 0..200 {
        let p = primes[trial % 3];
        let nvars = 1 + trial % 3;
        let f = random_poly(&mut rng, p, nvars, 5, 2 * p as u32 + 1);
        if recompose(p, nvars, &decompose(&f)) != f {
            problems.push(format!("trial {trial}: decompose round-trip"));
        }
    }
    for trial in 0..100 {
        let p = primes[trial % 3];
        let f = random_poly(&mut rng, p, 2, 4, 3);
        let g = random_poly(&mut rng, p, 2, 4, 3);
        let fg = f.mul(&g);
        for j in 0..2 {
            let rhs = f.mul(&partial(&g, j)).add(&g.mul(&partial(&f, j)));
            if partial(&fg, j) != rhs {
                problems.push(format!("trial {trial} var {j}: Leibniz"));
            }
        }
    }
    for trial in 0..200 {
        let p = primes[trial % 3];
        let raw = random_poly(&mut rng, p, 2, 4, 3);
        let f = if trial % 2 == 0 {
            raw
        } else {
            raw.frobenius_pow(1)
        };
        if is_in_b1(&f) != is_in_b1_syntactic(&f) {
            problems.push(format!("trial {trial}: stability oracles disagree"));
        }
    }
    for p in [2u64, 3] {
        for a in all_boxes(2, 2 * p as u32) {
            let rep = controlled_monomial_check(p, &a, 2 * p as u32);
            if !rep.iff_holds || !rep.generation_verified {
                problems.push(format!("p={p} a={a:?}: controlled equivalence"));
            }
        }
    }
    conclude(
        "05 graded-derivations",
        started,
        Duration::from_secs(60),
        problems,
    );
}

/// Criterion 6: both dual-compatibility identities on all basis pairs for every
/// basis form of the invariant space over four types and four primes,
/// with projective disjointness sampled at small dimension.
#[test]
fn acceptance_06_form_compatibility() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for ty in ["A1", "A2", "B2", "G2"] {
        let alg = build(ty);
        for p in [2u64, 3, 5, 7] {
            let modp = match alg.reduce_mod_p(p) {
                Ok(g) => g,
                Err(e) => {
                    problems.push(format!("{ty} mod {p}: {e}"));
                    continue;
                }
            };
            let dim = modp.dim();
            let pairs: Vec<(usize, usize)> = if dim <= 8 && p <= 3 {
                let mut rng = rng_for(&format!("disjoint:{ty}:{p}"));
                (0..20)
                    .map(|_| {
                        (
                            (rng.next_u64() as usize) % dim,
                            (rng.next_u64() as usize) % dim,
                        )
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let forms = invariant_form_space(&modp);
            if forms.is_empty() {
                problems.push(format!("{ty} mod {p}: empty invariant-form space"));
            }
            for (idx, form) in forms.iter().enumerate() {
                let rep = check_form_compatibility(&modp, form, &pairs);
                if !rep.ok() {
                    problems.push(format!(
                        "{ty} mod {p} form {idx}: {} swap, {} kernel, {} disjointness",
                        rep.swap_violations.len(),
                        rep.kernel_violations.len(),
                        rep.disjointness_violations.len()
                    ));
                }
            }
        }
    }
    conclude(
        "06 form-compatibility",
        started,
        Duration::from_secs(120),
        problems,
    );
}

/// Criterion 7: the full structural suite over the nice grid: trivial center,
/// perfectness, exactly divisible and nondegenerate normalized Killing
/// form, certified simplicity, module identification, full dual span,
/// and five seeded valuation probes per cell.
#[test]
fn acceptance_07_nice_grid() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for ty in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
        let alg = build(ty);
        for p in [5u64, 7, 11] {
            let tag = format!("{ty} mod {p}");
            let modp = match alg.reduce_mod_p(p) {
                Ok(g) => g,
                Err(e) => {
                    problems.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            if modp.center().dim() != 0 {
                problems.push(format!("{tag}: nonzero center"));
            }
            if !modp.derived_subalgebra().is_full() {
                problems.push(format!("{tag}: not perfect"));
            }
            match normalized_killing(&alg, p) {
                Ok(nk) => {
                    if !nk.z_divisible {
                        problems.push(format!("{tag}: Killing entries not divisible over Z"));
                    }
                    if !nk.nondegenerate {
                        problems.push(format!("{tag}: degenerate normalized Killing form"));
                    }
                }
                Err(e) => problems.push(format!("{tag}: {e}")),
            }
            let cert = modp.certify_simple(task_seed(SEED, &tag), 64);
            if !matches!(cert.outcome, SimplicityOutcome::Simple) {
                problems.push(format!("{tag}: not certified simple"));
            }
            match module_isomorphism_check(&alg, p, 1) {
                Ok(iso) => {
                    if !iso.pass() {
                        problems.push(format!("{tag}: module identification"));
                    }
                }
                Err(e) => problems.push(format!("{tag}: {e}")),
            }
            if !dual_span_check(&modp).pass() {
                problems.push(format!("{tag}: dual span not full"));
            }
            let mut rng = rng_for(&format!("valuation:{tag}"));
            for probe in 0..5 {
                let x = unit_mod_p_vector(&mut rng, alg.dim(), p);
                let k = 1 + (rng.next_u64() % 3) as u32;
                match lattice_valuation_check(&alg, p, 1, &x, k) {
                    Ok(rep) => {
                        if !(rep.containment_holds
                            && rep.exactness_holds
                            && rep.shifted_containment_holds
                            && rep.shifted_exactness_holds)
                        {
                            problems.push(format!("{tag} probe {probe}: valuation"));
                        }
                    }
                    Err(e) => problems.push(format!("{tag} probe {probe}: {e}")),
                }
            }
        }
    }
    conclude("07 nice-grid", started, Duration::from_secs(300), problems);
}

/// Criterion 8: the central-element route at dividing primes of type A: the
/// distinguished element spans the center, the dual span falls exactly
/// one dimension short, and it coincides with the annihilator.
#[test]
fn acceptance_08_central_element_route() {
    let started = Instant::now();
    let mut problems = Vec::new();
    for (n, p) in [(1usize, 2u64), (2, 3), (4, 5)] {
        let tag = format!("A{n} mod {p}");
        match central_element_check(n, p) {
            Ok(rep) => {
                if !rep.pass() {
                    problems.push(format!("{tag}: central element does not span the center"));
                }
                let alg = build(&format!("A{n}"));
                let modp = alg.reduce_mod_p(p).unwrap();
                let dim = modp.dim();
                let span = dual_span_check(&modp);
                if span.span_dim != dim - 1 {
                    problems.push(format!("{tag}: span dim {} != {}", span.span_dim, dim - 1));
                }
                let z_line = SubspaceModP::from_vectors(p, dim, std::slice::from_ref(&rep.z));
                if span.span != z_line.annihilator() {
                    problems.push(format!("{tag}: span is not the annihilator"));
                }
            }
            Err(e) => problems.push(format!("{tag}: {e}")),
        }
    }
    conclude(
        "08 central-element",
        started,
        Duration::from_secs(60),
        problems,
    );
}

/// Criterion 9: the nice-prime predicate against an independent oracle,
/// exhaustively over all admissible single types of rank at most 8 and
/// primes up to 13, plus direct sums involving type A.
#[test]
fn acceptance_09_nice_prime_predicate() {
    let started = Instant::now();
    let mut problems = Vec::new();
    let mut singles: Vec<(Family, usize)> = Vec::new();
    singles.extend((1..=8).map(|n| (Family::A, n)));
    singles.extend((2..=8).map(|n| (Family::B, n)));
    singles.extend((3..=8).map(|n| (Family::C, n)));
    singles.extend((4..=8).map(|n| (Family::D, n)));
    singles.extend((6..=8).map(|n| (Family::E, n)));
    singles.push((Family::F, 4));
    singles.push((Family::G, 2));
    for &(fam, n) in &singles {
        let rs = RootSystem::build(&[(fam, n)]).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let expected = p >= 5 && !(fam == Family::A && (n as u64 + 1).is_multiple_of(p));
            if is_nice_prime(p, &rs).verdict != expected {
                problems.push(format!("{fam:?}{n} at p={p}: expected {expected}"));
            }
        }
    }
    let sums = [
        ("A4+B2", 5u64, false),
        ("A4+B2", 7, true),
        ("A2+A4", 3, false),
        ("A1+A2", 5, true),
        ("A6+G2", 7, false),
        ("B3+C3", 5, true),
        ("A4+A9", 11, true),
        ("A4+A10", 11, false),
        ("A1+G2", 2, false),
    ];
    for (ty, p, expected) in sums {
        let rs = RootSystem::parse(ty).unwrap();
        if is_nice_prime(p, &rs).verdict != expected {
            problems.push(format!("{ty} at p={p}: expected {expected}"));
        }
    }
    conclude(
        "09 nice-prime-predicate",
        started,
        Duration::from_secs(60),
        problems,
    );
}

/// Criterion 10: reproducibility of the published reports (same seed, identical
/// bytes once the timestamp is removed) and fault injection: a single
/// corrupted structure constant is caught by the bracket sweep.
#[test]
fn acceptance_10_reproducibility_and_fault_injection() {
    let started = Instant::now();
    let mut problems = Vec::new();

    let args = [
        "grid", "--types", "A1,A2,B2", "--primes", "5", "--seed", "123",
    ];
    let mut reports = Vec::new();
    for _ in 0..2 {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_chevalley"))
            .args(args)
            .output()
            .expect("binary runs");
        if !out.status.success() {
            problems.push("grid run failed".into());
        }
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report parses");
        v.as_object_mut().unwrap().remove("timestamp");
        reports.push(serde_json::to_string(&v).unwrap());
    }
    if reports[0] != reports[1] {
        problems.push("reports differ beyond the timestamp".into());
    }

    // Flip the sign of one bracket coherently on both sides so
    // antisymmetry survives and only the Jacobi sweep can object.
    let alg = build("A2");
    let dim = alg.dim();
    let mut table: Vec<Vec<Vec<(usize, i64)>>> = (0..dim)
        .map(|i| (0..dim).map(|j| alg.entry(i, j).to_vec()).collect())
        .collect();
    let (i, j) = (3usize, 4usize);
    if table[i][j].is_empty() || table[j][i].is_empty() {
        problems.push("expected a nonzero bracket to corrupt".into());
    } else {
        table[i][j][0].1 = -table[i][j][0].1;
        table[j][i][0].1 = -table[j][i][0].1;
        let corrupted =
            ChevalleyAlgebra::from_parts_unchecked(RootSystem::parse("A2").unwrap(), table);
        let rep = corrupted.verify_jacobi();
        if rep.antisymmetry_violations.is_empty() && !rep.violations.is_empty() {
            // Exactly what we want: caught by the Jacobi sweep alone.
        } else if rep.ok() {
            problems.push("corrupted constants passed the sweep".into());
        } else {
            problems.push("corruption was caught, but not by the Jacobi sweep".into());
        }
    }
    conclude(
        "10 reproducibility-fault-injection",
        started,
        Duration::from_secs(120),
        problems,
    );
}
