//! Randomized identity suites.
//!
//! Each suite draws seeded random values — scalars and matrices of
//! truncated series over a chosen coefficient semiring — evaluates both
//! sides of a family of star identities, and reports every disagreement
//! with the first differing word. The carrier is the truncated-series
//! algebra because it is the most discriminating instance available here:
//! multiplication is noncommutative, star is genuinely partial, and two
//! series are equal exactly when all their coefficients are.
//!
//! The suites, by name:
//!
//! - `basic`: fixed-point and plus laws for scalar star, the star-domain
//!   gate, and agreement with iterating `t ← a·t + 1` from two starts.
//! - `conway`: the sum-star and product-star identities, including mixed
//!   cases where one factor is not proper.
//! - `matrix`: the same identities for matrices, rectangular product star,
//!   and agreement with matrix fixed-point iteration.
//! - `permutation`: `(π·A·πᵀ)* = π·A*·πᵀ`.
//! - `block`: the two-star block formula at every split against the
//!   single-recursion elimination form.
//! - `duality`: `dual_star(Aᵀ) = (A*)ᵀ` plus the scalar identities
//!   re-checked in the dual (reversed-multiplication) carrier.
//! - `functorial`: `A·C = C·B ⟹ A*·C = C·B*` for three constructed
//!   shapes of `C`.
//! - `group`: the group-matrix identities `e·M_G*·u = (Σa)*` and its dual,
//!   plus the order-2 closed form.
//! - `kleene`: random well-starred expressions evaluated directly and via
//!   the compiled automaton.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{build_group_matrix, FiniteGroup};
use crate::matrix::Matrix;
use crate::ratexpr::{kleene_round_trip, random_well_starred};
use crate::semiring::{Dual, Semiring};
use crate::series::{Alphabet, SeriesSemiring, TruncatedSeries, Word};

/// Names accepted by [`run_suite`], in the order they are documented.
pub const SUITE_NAMES: [&str; 9] = [
    "basic",
    "conway",
    "matrix",
    "permutation",
    "block",
    "duality",
    "functorial",
    "group",
    "kleene",
];

/// Parameters shared by all suites. `max_len` is the series truncation
/// length and must be at least 1 for the random values to be nontrivial;
/// `max_coeff` bounds the natural numbers lowered into coefficients.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub alphabet: Alphabet,
    pub max_len: usize,
    pub cases: usize,
    pub seed: u64,
    pub max_coeff: u64,
}

impl VerifyConfig {
    pub fn new(alphabet: Alphabet) -> Self {
        VerifyConfig {
            alphabet,
            max_len: 4,
            cases: 50,
            seed: 0,
            max_coeff: 3,
        }
    }
}

/// One refuted identity instance.
#[derive(Clone, Debug)]
pub struct CheckFailure {
    pub case: usize,
    pub law: String,
    pub detail: String,
}

/// Outcome of one suite run.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub suite: String,
    pub carrier: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite {} over {} (seed {}): {} cases, {} checks — {}",
            self.suite,
            self.carrier,
            self.seed,
            self.cases,
            self.checks,
            if self.passed() {
                "PASS".to_string()
            } else {
                format!("{} FAILURES", self.failures.len())
            }
        )?;
        for failure in &self.failures {
            write!(
                f,
                "\n  case {}: {} violated; {}",
                failure.case, failure.law, failure.detail
            )?;
        }
        Ok(())
    }
}

/// A truncated series over the coefficient semiring `S`.
pub type Ser<S> = TruncatedSeries<<S as Semiring>::Elem>;
/// A matrix of truncated series over the coefficient semiring `S`.
pub type SerMatrix<S> = Matrix<TruncatedSeries<<S as Semiring>::Elem>>;

struct Checker {
    report: CheckReport,
}

impl Checker {
    fn new(suite: &str, carrier: String, seed: u64) -> Self {
        Checker {
            report: CheckReport {
                suite: suite.to_string(),
                carrier,
                seed,
                cases: 0,
                checks: 0,
                failures: Vec::new(),
            },
        }
    }

    fn fail(&mut self, case: usize, law: &str, detail: String) {
        self.report.failures.push(CheckFailure {
            case,
            law: law.to_string(),
            detail,
        });
    }

    fn check_bool(
        &mut self,
        case: usize,
        law: &str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.report.checks += 1;
        if !ok {
            self.fail(case, law, detail());
        }
    }

    fn eq_series<S: Semiring>(
        &mut self,
        sr: &SeriesSemiring<S>,
        case: usize,
        law: &str,
        left: &Ser<S>,
        right: &Ser<S>,
    ) {
        self.report.checks += 1;
        if left != right {
            let detail = match left.first_difference(right) {
                Some(w) => format!(
                    "first difference at {}: {} vs {}",
                    sr.alphabet().format_word(&w),
                    coeff_str(sr, left, &w),
                    coeff_str(sr, right, &w),
                ),
                None => "series differ".to_string(),
            };
            self.fail(case, law, detail);
        }
    }

    fn eq_matrices<S: Semiring>(
        &mut self,
        sr: &SeriesSemiring<S>,
        case: usize,
        law: &str,
        left: &SerMatrix<S>,
        right: &SerMatrix<S>,
    ) {
        self.report.checks += 1;
        if left == right {
            return;
        }
        let mut detail = "matrices differ".to_string();
        'outer: for (i, j, l) in left.iter() {
            let r = right.get(i, j);
            if l != r {
                if let Some(w) = l.first_difference(r) {
                    detail = format!(
                        "first difference at entry ({i},{j}), word {}: {} vs {}",
                        sr.alphabet().format_word(&w),
                        coeff_str(sr, l, &w),
                        coeff_str(sr, r, &w),
                    );
                }
                break 'outer;
            }
        }
        self.fail(case, law, detail);
    }

    fn finish(mut self, cases: usize) -> CheckReport {
        self.report.cases = cases;
        self.report
    }
}

fn coeff_str<S: Semiring>(sr: &SeriesSemiring<S>, s: &Ser<S>, w: &Word) -> String {
    match s.get(w) {
        Some(c) => sr.coeff_ring().format_elem(c),
        None => sr.coeff_ring().format_elem(&sr.coeff_ring().zero()),
    }
}

// ---------------------------------------------------------------------------
// Random value generation. Values are drawn as natural-number coefficient
// tables and lowered through `from_nat`, so the same drawing logic serves
// every coefficient semiring.

fn random_word<R: Rng>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    Word(
        (0..len)
            .map(|_| rng.gen_range(0..alphabet.len()) as u8)
            .collect(),
    )
}

/// Up to three terms of word length `min_len..=word_cap` with coefficients
/// `1..=max_coeff`, as a natural-number table.
fn random_table<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    min_len: usize,
    word_cap: usize,
    max_coeff: u64,
) -> BTreeMap<Word, u64> {
    let mut table = BTreeMap::new();
    if word_cap < min_len {
        return table;
    }
    let terms = rng.gen_range(0..=3);
    for _ in 0..terms {
        let len = rng.gen_range(min_len..=word_cap);
        let w = random_word(rng, alphabet, len);
        let c = rng.gen_range(1..=max_coeff.max(1));
        *table.entry(w).or_insert(0) += c;
    }
    table
}

fn lower<S: Semiring>(
    sr: &SeriesSemiring<S>,
    table: &BTreeMap<Word, u64>,
) -> Result<Ser<S>> {
    let terms = table
        .iter()
        .map(|(w, &c)| Ok((w.clone(), sr.coeff_ring().from_nat(c)?)))
        .collect::<Result<Vec<_>>>()?;
    sr.from_terms(terms)
}

fn word_cap<S: Semiring>(sr: &SeriesSemiring<S>) -> usize {
    sr.max_len().min(2)
}

/// A random series with up to three terms, coefficients lowered from
/// naturals `1..=max_coeff`. With `proper` set, the empty word is excluded
/// so the result lies in the star domain.
pub fn random_series<S: Semiring, R: Rng>(
    sr: &SeriesSemiring<S>,
    rng: &mut R,
    max_coeff: u64,
    proper: bool,
) -> Result<Ser<S>> {
    let min_len = usize::from(proper);
    let table = random_table(rng, sr.alphabet(), min_len, word_cap(sr), max_coeff);
    lower(sr, &table)
}

/// A matrix of random series; with `proper` set every entry is proper, so
/// the matrix lies inside the matrix ideal.
pub fn random_series_matrix<S: Semiring, R: Rng>(
    sr: &SeriesSemiring<S>,
    rng: &mut R,
    rows: usize,
    cols: usize,
    max_coeff: u64,
    proper: bool,
) -> Result<SerMatrix<S>> {
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            row.push(random_series(sr, rng, max_coeff, proper)?);
        }
        out.push(row);
    }
    Matrix::from_rows(out)
}

fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Split a natural-number table into `parts` tables summing exactly to it,
/// by distributing each coefficient unit to a random part.
fn split_table<R: Rng>(
    rng: &mut R,
    table: &BTreeMap<Word, u64>,
    parts: usize,
) -> Vec<BTreeMap<Word, u64>> {
    let mut out = vec![BTreeMap::new(); parts];
    for (w, &c) in table {
        for _ in 0..c {
            let k = rng.gen_range(0..parts);
            *out[k].entry(w.clone()).or_insert(0) += 1;
        }
    }
    out
}

fn iterate_scalar<S: Semiring>(
    sr: &SeriesSemiring<S>,
    a: &Ser<S>,
    start: &Ser<S>,
) -> Result<Ser<S>> {
    let mut t = start.clone();
    for _ in 0..=sr.max_len() {
        t = sr.add(&sr.mul(a, &t)?, &sr.one())?;
    }
    Ok(t)
}

fn iterate_matrix<S: Semiring>(
    sr: &SeriesSemiring<S>,
    a: &SerMatrix<S>,
    start: &SerMatrix<S>,
) -> Result<SerMatrix<S>> {
    let e = Matrix::identity(sr, a.rows());
    let mut t = start.clone();
    for _ in 0..=sr.max_len() {
        t = a.mul(sr, &t)?.add(sr, &e)?;
    }
    Ok(t)
}

/// Entrywise word reversal. For a commutative coefficient semiring this is
/// an isomorphism onto the reversed-multiplication algebra, which makes
/// `rev(star(rev(A)))` an independent oracle for [`Matrix::dual_star`].
pub fn reverse_words_matrix<S: Semiring>(
    sr: &SeriesSemiring<S>,
    m: &Matrix<Ser<S>>,
) -> Result<Matrix<Ser<S>>> {
    m.try_map(|s| sr.from_terms(s.support().map(|(w, c)| (w.reversed(), c.clone()))))
}

// ---------------------------------------------------------------------------
// Suites.

fn series_ring<S: Semiring>(ring: &S, cfg: &VerifyConfig) -> SeriesSemiring<S> {
    SeriesSemiring::new(ring.clone(), cfg.alphabet.clone(), cfg.max_len)
}

/// Scalar star basics: the fixed-point equations, the plus laws, the
/// star-domain gate, and agreement with iteration from two starts.
pub fn check_basic_star_laws<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("basic", sr.name(), cfg.seed);
    let one = sr.one();

    ck.eq_series(&sr, 0, "0* = 1", &sr.star(&sr.zero())?, &one);

    for case in 0..cfg.cases {
        let a = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let astar = sr.star(&a)?;
        let aplus = sr.plus(&a)?;

        ck.eq_series(&sr, case, "a* = 1 + a·a*", &astar, &sr.add(&one, &sr.mul(&a, &astar)?)?);
        ck.eq_series(&sr, case, "a* = 1 + a*·a", &astar, &sr.add(&one, &sr.mul(&astar, &a)?)?);
        ck.eq_series(&sr, case, "a+ = a·a*", &aplus, &sr.mul(&a, &astar)?);
        ck.eq_series(&sr, case, "a+ = a*·a", &aplus, &sr.mul(&astar, &a)?);
        ck.eq_series(&sr, case, "a* = 1 + a+", &astar, &sr.add(&one, &aplus)?);

        let from_zero = iterate_scalar(&sr, &a, &sr.zero())?;
        ck.eq_series(&sr, case, "iterating t = a·t + 1 from 0 reaches a*", &from_zero, &astar);
        let other_start = sr.inject(ring.from_nat(2)?);
        let from_two = iterate_scalar(&sr, &a, &other_start)?;
        ck.eq_series(&sr, case, "iterating t = a·t + 1 from 2 reaches a*", &from_two, &astar);

        let improper = sr.add(&one, &a)?;
        ck.check_bool(
            case,
            "series with nonzero constant term are outside the star domain",
            !sr.in_star_domain(&improper) && sr.star(&improper).is_err(),
            || format!("star accepted {}", sr.format_elem(&improper)),
        );
    }
    Ok(ck.finish(cfg.cases))
}

/// The scalar sum-star and product-star identities, with mixed
/// proper/non-proper operands where the laws still apply.
pub fn check_conway_scalar<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("conway", sr.name(), cfg.seed);
    let one = sr.one();

    for case in 0..cfg.cases {
        let p = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let q = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let r = random_series(&sr, &mut rng, cfg.max_coeff, false)?;

        // Sum star, both ways it can be written.
        let sum_star = sr.star(&sr.add(&p, &q)?)?;
        let lhs = sr.mul(&sr.star(&p)?, &sr.star(&sr.mul(&q, &sr.star(&p)?)?)?)?;
        ck.eq_series(&sr, case, "(p+q)* = p*·(q·p*)*", &sum_star, &lhs);
        let rhs = sr.mul(&sr.star(&sr.mul(&sr.star(&p)?, &q)?)?, &sr.star(&p)?)?;
        ck.eq_series(&sr, case, "(p+q)* = (p*·q)*·p*", &sum_star, &rhs);

        // Product star with one arbitrary (possibly non-proper) factor: the
        // products p·r and r·p are proper because p is.
        let pr_star = sr.star(&sr.mul(&p, &r)?)?;
        let rp_star = sr.star(&sr.mul(&r, &p)?)?;
        ck.eq_series(
            &sr,
            case,
            "(p·r)* = 1 + p·(r·p)*·r",
            &pr_star,
            &sr.add(&one, &sr.mul(&sr.mul(&p, &rp_star)?, &r)?)?,
        );
        ck.eq_series(
            &sr,
            case,
            "(r·p)* = 1 + r·(p·r)*·p",
            &rp_star,
            &sr.add(&one, &sr.mul(&sr.mul(&r, &pr_star)?, &p)?)?,
        );
        ck.eq_series(
            &sr,
            case,
            "(p·r)*·p = p·(r·p)*",
            &sr.mul(&pr_star, &p)?,
            &sr.mul(&p, &rp_star)?,
        );
    }
    Ok(ck.finish(cfg.cases))
}

/// The matrix forms of the star identities, rectangular product star, and
/// matrix fixed-point iteration.
pub fn check_matrix_conway<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("matrix", sr.name(), cfg.seed);

    let e2 = Matrix::identity(&sr, 2);
    ck.eq_matrices(&sr, 0, "0* = E", &Matrix::zero(&sr, 2, 2).star(&sr)?, &e2);

    for case in 0..cfg.cases {
        let n = rng.gen_range(1..=4);
        let e = Matrix::identity(&sr, n);
        let a = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
        let b = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
        let astar = a.star(&sr)?;

        let sum_star = a.add(&sr, &b)?.star(&sr)?;
        let via_conway = astar.mul(&sr, &b.mul(&sr, &astar)?.star(&sr)?)?;
        ck.eq_matrices(&sr, case, "(A+B)* = A*·(B·A*)*", &sum_star, &via_conway);

        ck.eq_matrices(&sr, case, "A* = E + A·A*", &astar, &e.add(&sr, &a.mul(&sr, &astar)?)?);
        ck.eq_matrices(&sr, case, "A* = E + A*·A", &astar, &e.add(&sr, &astar.mul(&sr, &a)?)?);

        let aplus = a.plus(&sr)?;
        ck.eq_matrices(&sr, case, "A+ = A*·A", &aplus, &astar.mul(&sr, &a)?);
        ck.eq_matrices(&sr, case, "A* = E + A+", &astar, &e.add(&sr, &aplus)?);

        // Rectangular product star.
        let m = rng.gen_range(1..=3);
        let p = random_series_matrix(&sr, &mut rng, n, m, cfg.max_coeff, true)?;
        let q = random_series_matrix(&sr, &mut rng, m, n, cfg.max_coeff, true)?;
        let pq_star = p.mul(&sr, &q)?.star(&sr)?;
        let qp_star = q.mul(&sr, &p)?.star(&sr)?;
        ck.eq_matrices(
            &sr,
            case,
            "(P·Q)* = E + P·(Q·P)*·Q",
            &pq_star,
            &e.add(&sr, &p.mul(&sr, &qp_star)?.mul(&sr, &q)?)?,
        );
        ck.eq_matrices(
            &sr,
            case,
            "(P·Q)*·P = P·(Q·P)*",
            &pq_star.mul(&sr, &p)?,
            &p.mul(&sr, &qp_star)?,
        );

        let from_zero = iterate_matrix(&sr, &a, &Matrix::zero(&sr, n, n))?;
        ck.eq_matrices(&sr, case, "iterating T = A·T + E from 0 reaches A*", &from_zero, &astar);
        let two = sr.inject(ring.from_nat(2)?);
        let start = Matrix::from_fn(n, n, |_, _| two.clone());
        let from_two = iterate_matrix(&sr, &a, &start)?;
        ck.eq_matrices(&sr, case, "iterating T = A·T + E from 2·J reaches A*", &from_two, &astar);
    }
    Ok(ck.finish(cfg.cases))
}

/// Conjugation by a permutation commutes with star.
pub fn check_permutation_identity<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("permutation", sr.name(), cfg.seed);

    for case in 0..cfg.cases {
        let n = rng.gen_range(1..=4);
        let a = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
        let perm = random_perm(&mut rng, n);
        let p = Matrix::permutation(&sr, &perm)?;
        let pt = p.transpose();
        let conjugated = p.mul(&sr, &a)?.mul(&sr, &pt)?;
        ck.eq_matrices(
            &sr,
            case,
            "(π·A·πᵀ)* = π·A*·πᵀ",
            &conjugated.star(&sr)?,
            &p.mul(&sr, &a.star(&sr)?)?.mul(&sr, &pt)?,
        );
    }
    Ok(ck.finish(cfg.cases))
}

/// The textbook two-star block formula agrees with the star at every split.
pub fn check_block_invariance<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("block", sr.name(), cfg.seed);

    for case in 0..cfg.cases {
        let n = rng.gen_range(2..=4);
        let a = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
        let full = a.star(&sr)?;
        for split in 1..n {
            ck.eq_matrices(
                &sr,
                case,
                "block star at every split equals the star",
                &a.block_star(&sr, split)?,
                &full,
            );
        }
    }
    Ok(ck.finish(cfg.cases))
}

/// Transpose duality for matrices, and the scalar identities re-checked in
/// the reversed-multiplication carrier.
pub fn check_transpose_duality<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let dual = Dual(sr.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("duality", sr.name(), cfg.seed);
    let one = sr.one();

    for case in 0..cfg.cases {
        let n = rng.gen_range(1..=3);
        let a = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
        ck.eq_matrices(
            &sr,
            case,
            "dual_star(Aᵀ) = (A*)ᵀ",
            &a.transpose().dual_star(&sr)?,
            &a.star(&sr)?.transpose(),
        );

        // Scalar identities in the dual carrier: same elements, products
        // reversed, same star.
        let p = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let q = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let sum_star = dual.star(&dual.add(&p, &q)?)?;
        let via_conway = dual.mul(
            &dual.star(&p)?,
            &dual.star(&dual.mul(&q, &dual.star(&p)?)?)?,
        )?;
        ck.eq_series(&sr, case, "dual carrier: (p+q)* = p*∘(q∘p*)*", &sum_star, &via_conway);
        let pq_star = dual.star(&dual.mul(&p, &q)?)?;
        let qp_star = dual.star(&dual.mul(&q, &p)?)?;
        ck.eq_series(
            &sr,
            case,
            "dual carrier: (p∘q)* = 1 + p∘(q∘p)*∘q",
            &pq_star,
            &dual.add(&one, &dual.mul(&dual.mul(&p, &qp_star)?, &q)?)?,
        );
    }
    Ok(ck.finish(cfg.cases))
}

/// Simulation: whenever `A·C = C·B` for the constructed shapes of `C`,
/// also `A*·C = C·B*`. The premise is itself checked, so a broken
/// generator cannot silently weaken the suite.
pub fn check_functorial_star<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("functorial", sr.name(), cfg.seed);

    for case in 0..cfg.cases {
        // Family 1: C is the all-ones column; the premise says every row of
        // A sums to b.
        {
            let n = rng.gen_range(1..=4);
            let b_table = random_table(&mut rng, sr.alphabet(), 1, word_cap(&sr), cfg.max_coeff);
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let parts = split_table(&mut rng, &b_table, n);
                let row = parts
                    .iter()
                    .map(|t| lower(&sr, t))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            let a = Matrix::from_rows(rows)?;
            let b = Matrix::from_rows(vec![vec![lower(&sr, &b_table)?]])?;
            let c = Matrix::from_index_map(&sr, &vec![0; n], 1)?;
            ck.eq_matrices(&sr, case, "family 1 premise: A·u = u·b", &a.mul(&sr, &c)?, &c.mul(&sr, &b)?);
            ck.eq_matrices(
                &sr,
                case,
                "family 1: A·u = u·b ⟹ A*·u = u·b*",
                &a.star(&sr)?.mul(&sr, &c)?,
                &c.mul(&sr, &b.star(&sr)?)?,
            );
        }

        // Family 2: C = [E|0] picks out the leading block of a lower
        // block-triangular matrix.
        {
            let n = rng.gen_range(1..=2);
            let k = rng.gen_range(1..=2);
            let a = random_series_matrix(&sr, &mut rng, n, n, cfg.max_coeff, true)?;
            let x = random_series_matrix(&sr, &mut rng, k, n, cfg.max_coeff, true)?;
            let y = random_series_matrix(&sr, &mut rng, k, k, cfg.max_coeff, true)?;
            let b = Matrix::from_fn(n + k, n + k, |i, j| {
                if i < n {
                    if j < n {
                        a.get(i, j).clone()
                    } else {
                        sr.zero()
                    }
                } else if j < n {
                    x.get(i - n, j).clone()
                } else {
                    y.get(i - n, j - n).clone()
                }
            });
            let c = Matrix::from_index_map(&sr, &(0..n).collect::<Vec<_>>(), n + k)?;
            ck.eq_matrices(&sr, case, "family 2 premise: A·C = C·B", &a.mul(&sr, &c)?, &c.mul(&sr, &b)?);
            ck.eq_matrices(
                &sr,
                case,
                "family 2: A·C = C·B ⟹ A*·C = C·B*",
                &a.star(&sr)?.mul(&sr, &c)?,
                &c.mul(&sr, &b.star(&sr)?)?,
            );
        }

        // Family 3: C is block-diagonal with two all-ones columns; the
        // premise says each block of A has constant row sums.
        {
            let n1 = rng.gen_range(1..=2);
            let n2 = rng.gen_range(1..=2);
            let n = n1 + n2;
            let mut targets = Vec::new();
            for _ in 0..4 {
                targets.push(random_table(
                    &mut rng,
                    sr.alphabet(),
                    1,
                    word_cap(&sr),
                    cfg.max_coeff,
                ));
            }
            let block_of = |i: usize| if i < n1 { 0 } else { 1 };
            let widths = [n1, n2];
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for (bj, &width) in widths.iter().enumerate() {
                    let target = &targets[2 * block_of(i) + bj];
                    let parts = split_table(&mut rng, target, width);
                    for t in &parts {
                        row.push(lower(&sr, t)?);
                    }
                }
                rows.push(row);
            }
            let a = Matrix::from_rows(rows)?;
            let b = Matrix::from_rows(vec![
                vec![lower(&sr, &targets[0])?, lower(&sr, &targets[1])?],
                vec![lower(&sr, &targets[2])?, lower(&sr, &targets[3])?],
            ])?;
            let map: Vec<usize> = (0..n).map(|i| usize::from(i >= n1)).collect();
            let c = Matrix::from_index_map(&sr, &map, 2)?;
            ck.eq_matrices(&sr, case, "family 3 premise: A·C = C·B", &a.mul(&sr, &c)?, &c.mul(&sr, &b)?);
            ck.eq_matrices(
                &sr,
                case,
                "family 3: A·C = C·B ⟹ A*·C = C·B*",
                &a.star(&sr)?.mul(&sr, &c)?,
                &c.mul(&sr, &b.star(&sr)?)?,
            );
        }
    }
    Ok(ck.finish(cfg.cases))
}

/// The group-matrix identities over every built-in group, plus the order-2
/// closed form as a scalar identity.
pub fn check_group_identities<S: Semiring>(
    ring: &S,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let sr = series_ring(ring, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ck = Checker::new("group", sr.name(), cfg.seed);
    let one = sr.one();
    let groups = FiniteGroup::builtin_suite();

    for case in 0..cfg.cases {
        for g in &groups {
            let n = g.order();
            let coeffs = (0..n)
                .map(|_| random_series(&sr, &mut rng, cfg.max_coeff, true))
                .collect::<Result<Vec<_>>>()?;
            let m = build_group_matrix(&sr, g, &coeffs)?;
            let mut total = sr.zero();
            for c in &coeffs {
                total = sr.add(&total, c)?;
            }
            let total_star = sr.star(&total)?;
            let mstar = m.star(&sr)?;

            let mut row_sum = sr.zero();
            let mut col_sum = sr.zero();
            for j in 0..n {
                row_sum = sr.add(&row_sum, mstar.get(0, j))?;
                col_sum = sr.add(&col_sum, mstar.get(j, 0))?;
            }
            let law_row = format!("e·M*·u = (Σa)* for {}", g.name());
            ck.eq_series(&sr, case, &law_row, &row_sum, &total_star);
            let law_col = format!("u·M*·e = (Σa)* for {}", g.name());
            ck.eq_series(&sr, case, &law_col, &col_sum, &total_star);
        }

        // Order-2 closed form and the squaring identity, directly.
        let p = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let q = random_series(&sr, &mut rng, cfg.max_coeff, true)?;
        let pstar = sr.star(&p)?;
        let closed = sr.mul(
            &sr.star(&sr.add(&p, &sr.mul(&sr.mul(&q, &pstar)?, &q)?)?)?,
            &sr.add(&one, &sr.mul(&q, &pstar)?)?,
        )?;
        ck.eq_series(&sr, case, "(p + q·p*·q)*·(1 + q·p*) = (p+q)*", &closed, &sr.star(&sr.add(&p, &q)?)?);
        let squares = sr.mul(&sr.star(&sr.mul(&p, &p)?)?, &sr.add(&one, &p)?)?;
        ck.eq_series(&sr, case, "(p·p)*·(1 + p) = p*", &squares, &pstar);
    }
    Ok(ck.finish(cfg.cases))
}

/// Random well-starred expressions: direct evaluation agrees with the
/// compiled automaton, both via the behavior series and via run summation.
pub fn check_kleene<S: Semiring>(ring: &S, cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let carrier = format!(
        "rational expressions over {} (alphabet {}, L={})",
        ring.name(),
        cfg.alphabet.symbols().iter().collect::<String>(),
        cfg.max_len
    );
    let mut ck = Checker::new("kleene", carrier, cfg.seed);

    for case in 0..cfg.cases {
        let e = random_well_starred(&mut rng, &cfg.alphabet, 4, cfg.max_coeff);
        let check = kleene_round_trip(ring, &cfg.alphabet, &e, cfg.max_len)?;
        ck.check_bool(
            case,
            "evaluation and compiled behavior agree",
            check.matches(),
            || match &check.first_difference {
                Some(w) => format!(
                    "expression {e} differs at {}",
                    cfg.alphabet.format_word(w)
                ),
                None => format!("expression {e} differs"),
            },
        );
    }
    Ok(ck.finish(cfg.cases))
}

/// Run one suite by name; `None` when the name is unknown.
pub fn run_suite<S: Semiring>(
    ring: &S,
    name: &str,
    cfg: &VerifyConfig,
) -> Option<Result<CheckReport>> {
    match name {
        "basic" => Some(check_basic_star_laws(ring, cfg)),
        "conway" => Some(check_conway_scalar(ring, cfg)),
        "matrix" => Some(check_matrix_conway(ring, cfg)),
        "permutation" => Some(check_permutation_identity(ring, cfg)),
        "block" => Some(check_block_invariance(ring, cfg)),
        "duality" => Some(check_transpose_duality(ring, cfg)),
        "functorial" => Some(check_functorial_star(ring, cfg)),
        "group" => Some(check_group_identities(ring, cfg)),
        "kleene" => Some(check_kleene(ring, cfg)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Booleans, Naturals};

    fn small_config() -> VerifyConfig {
        let mut cfg = VerifyConfig::new(Alphabet::new("xy").unwrap());
        cfg.max_len = 3;
        cfg.cases = 6;
        cfg.seed = 1;
        cfg
    }

    #[test]
    fn all_suites_pass_over_natural_coefficients() {
        let cfg = small_config();
        for name in SUITE_NAMES {
            let report = run_suite(&Naturals, name, &cfg)
                .expect("known suite")
                .unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn suites_pass_over_boolean_coefficients() {
        let mut cfg = small_config();
        cfg.cases = 4;
        for name in ["conway", "matrix", "group", "kleene"] {
            let report = run_suite(&Booleans, name, &cfg)
                .expect("known suite")
                .unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn unknown_suite_is_signalled() {
        let cfg = small_config();
        assert!(run_suite(&Naturals, "nonsense", &cfg).is_none());
    }

    #[test]
    fn reports_are_deterministic_for_a_fixed_seed() {
        let cfg = small_config();
        let a = check_conway_scalar(&Naturals, &cfg).unwrap();
        let b = check_conway_scalar(&Naturals, &cfg).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn failures_carry_the_first_differing_word() {
        let sr = SeriesSemiring::new(Naturals, Alphabet::new("xy").unwrap(), 3);
        let mut ck = Checker::new("demo", sr.name(), 0);
        let x = sr.letter('x').unwrap();
        let y = sr.letter('y').unwrap();
        ck.eq_series(&sr, 3, "x = y", &x, &y);
        let report = ck.finish(1);
        assert!(!report.passed());
        let shown = report.to_string();
        assert!(shown.contains("case 3"), "{shown}");
        assert!(shown.contains("x = y"), "{shown}");
        assert!(shown.contains("first difference at x"), "{shown}");
    }

    #[test]
    fn word_reversal_is_an_independent_dual_star_oracle() {
        // Valid because natural-number multiplication is commutative.
        let cfg = small_config();
        let sr = SeriesSemiring::new(Naturals, cfg.alphabet.clone(), cfg.max_len);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let n = rng.gen_range(1..=3);
            let a = random_series_matrix(&sr, &mut rng, n, n, 3, true).unwrap();
            let via_dual = a.dual_star(&sr).unwrap();
            let reversed_star = reverse_words_matrix(&sr, &a)
                .unwrap()
                .star(&sr)
                .unwrap();
            let via_reversal = reverse_words_matrix(&sr, &reversed_star).unwrap();
            assert_eq!(via_dual, via_reversal);
        }
    }

    #[test]
    fn split_tables_sum_back_to_the_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alphabet = Alphabet::new("xy").unwrap();
        let table = random_table(&mut rng, &alphabet, 1, 2, 3);
        let parts = split_table(&mut rng, &table, 3);
        let mut sum: BTreeMap<Word, u64> = BTreeMap::new();
        for part in &parts {
            for (w, c) in part {
                *sum.entry(w.clone()).or_insert(0) += c;
            }
        }
        assert_eq!(sum, table);
    }
}
