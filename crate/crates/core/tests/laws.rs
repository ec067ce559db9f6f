//! Property-based checks of the algebraic laws the library is built on.
//!
//! These complement the seeded verifier suites: instead of fixed seeds they
//! let proptest search for counterexamples and shrink any it finds.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use partial_conway::instances::{Booleans, ExtendedNaturals, NatMatrix2, Naturals};
use partial_conway::{
    kleene_round_trip, parse_expr, random_well_starred, Alphabet, Matrix, RatExpr, Semiring,
    SeriesSemiring, TruncatedSeries,
};

fn xy() -> Alphabet {
    Alphabet::new("xy").unwrap()
}

fn series_ring() -> SeriesSemiring<Naturals> {
    SeriesSemiring::new(Naturals, xy(), 3)
}

/// Build a series from `(word text, coefficient)` pairs.
fn series(sr: &SeriesSemiring<Naturals>, terms: &[(String, u64)]) -> TruncatedSeries<u64> {
    let parsed = terms
        .iter()
        .map(|(w, c)| (sr.alphabet().parse_word(w).unwrap(), *c));
    sr.from_terms(parsed).unwrap()
}

fn term_strategy() -> impl Strategy<Value = (String, u64)> {
    ("[xy]{0,3}", 0u64..=3)
}

fn terms_strategy() -> impl Strategy<Value = Vec<(String, u64)>> {
    proptest::collection::vec(term_strategy(), 0..6)
}

fn expr_strategy() -> impl Strategy<Value = RatExpr> {
    let leaf = prop_oneof![
        (0u64..=3).prop_map(RatExpr::Const),
        prop_oneof![Just('x'), Just('y')].prop_map(RatExpr::Letter),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RatExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RatExpr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| RatExpr::Star(Box::new(a))),
            inner.prop_map(|a| RatExpr::Plus(Box::new(a))),
        ]
    })
}

fn bool_matrix(entries: &[bool], n: usize) -> Matrix<bool> {
    Matrix::from_fn(n, n, |i, j| entries[i * n + j])
}

proptest! {
    /// Printing and reparsing an expression gives back the same tree, even
    /// for ill-starred expressions (parsing is purely syntactic).
    #[test]
    fn printed_expressions_reparse_to_the_same_tree(e in expr_strategy()) {
        let text = e.to_string();
        let back = parse_expr(&text, &xy()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn series_addition_is_commutative(a in terms_strategy(), b in terms_strategy()) {
        let sr = series_ring();
        let (a, b) = (series(&sr, &a), series(&sr, &b));
        prop_assert_eq!(sr.add(&a, &b).unwrap(), sr.add(&b, &a).unwrap());
    }

    #[test]
    fn series_multiplication_is_associative(
        a in terms_strategy(),
        b in terms_strategy(),
        c in terms_strategy(),
    ) {
        let sr = series_ring();
        let (a, b, c) = (series(&sr, &a), series(&sr, &b), series(&sr, &c));
        let left = sr.mul(&sr.mul(&a, &b).unwrap(), &c).unwrap();
        let right = sr.mul(&a, &sr.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn series_multiplication_distributes_over_addition(
        a in terms_strategy(),
        b in terms_strategy(),
        c in terms_strategy(),
    ) {
        let sr = series_ring();
        let (a, b, c) = (series(&sr, &a), series(&sr, &b), series(&sr, &c));
        let bc = sr.add(&b, &c).unwrap();
        let left_dist = sr.mul(&a, &bc).unwrap();
        let left_expanded = sr.add(&sr.mul(&a, &b).unwrap(), &sr.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left_dist, left_expanded);
        let right_dist = sr.mul(&bc, &a).unwrap();
        let right_expanded = sr.add(&sr.mul(&b, &a).unwrap(), &sr.mul(&c, &a).unwrap()).unwrap();
        prop_assert_eq!(right_dist, right_expanded);
    }

    /// On proper series, star solves its defining fixed-point equation both
    /// ways: `s* = 1 + s·s*` and `s* = 1 + s*·s`.
    #[test]
    fn proper_star_satisfies_its_fixed_point_equation(t in terms_strategy()) {
        let sr = series_ring();
        let s = sr.proper_part(&series(&sr, &t));
        let star = sr.proper_star(&s).unwrap();
        let one = sr.one();
        let left = sr.add(&one, &sr.mul(&s, &star).unwrap()).unwrap();
        let right = sr.add(&one, &sr.mul(&star, &s).unwrap()).unwrap();
        prop_assert_eq!(&left, &star);
        prop_assert_eq!(&right, &star);
    }

    /// `a⁺ = a·a*` always has the same value as `a* · a` and as `a* − 1`
    /// (checked additively: `1 + a⁺ = a*`).
    #[test]
    fn proper_plus_agrees_with_star(t in terms_strategy()) {
        let sr = series_ring();
        let s = sr.proper_part(&series(&sr, &t));
        let star = sr.star(&s).unwrap();
        let plus = sr.plus(&s).unwrap();
        prop_assert_eq!(&plus, &sr.mul(&star, &s).unwrap());
        prop_assert_eq!(&sr.add(&sr.one(), &plus).unwrap(), &star);
    }

    /// Word enumeration is strictly sorted by (length, leftmost letter
    /// index) and complete: it contains every product of letter counts.
    #[test]
    fn word_enumeration_is_sorted_and_complete(max_len in 0usize..=4) {
        let alphabet = Alphabet::new("xyz").unwrap();
        let words = alphabet.words_up_to(max_len);
        let expected: usize = (0..=max_len as u32).map(|k| 3usize.pow(k)).sum();
        prop_assert_eq!(words.len(), expected);
        for pair in words.windows(2) {
            prop_assert!(pair[0] < pair[1]);
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert!(a.len() < b.len() || (a.len() == b.len() && a.letters() < b.letters()));
        }
    }

    /// The one-shot elimination star and the explicit two-block star agree
    /// at every split position, here over boolean matrices where star is
    /// total.
    #[test]
    fn boolean_matrix_star_matches_every_block_split(
        entries in proptest::collection::vec(any::<bool>(), 9),
    ) {
        let m = bool_matrix(&entries, 3);
        let star = m.star(&Booleans).unwrap();
        for split in 1..3 {
            prop_assert_eq!(&m.block_star(&Booleans, split).unwrap(), &star);
        }
        // The matrix star satisfies the same fixed-point shape as scalars.
        let identity = Matrix::identity(&Booleans, 3);
        let unfold = identity.add(&Booleans, &m.mul(&Booleans, &star).unwrap()).unwrap();
        prop_assert_eq!(&unfold, &star);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `from_nat` is a semiring morphism: it turns `+` and `·` on machine
    /// naturals into the instance's own operations. The default
    /// implementation computes by binary doubling, so this exercises
    /// nontrivial addition chains.
    #[test]
    fn from_nat_is_a_morphism_into_every_instance(a in 0u64..=100, b in 0u64..=100) {
        fn check<S: Semiring>(ring: &S, a: u64, b: u64) {
            let (fa, fb) = (ring.from_nat(a).unwrap(), ring.from_nat(b).unwrap());
            assert_eq!(ring.from_nat(a + b).unwrap(), ring.add(&fa, &fb).unwrap());
            assert_eq!(ring.from_nat(a * b).unwrap(), ring.mul(&fa, &fb).unwrap());
        }
        check(&Booleans, a, b);
        check(&Naturals, a, b);
        check(&ExtendedNaturals, a, b);
        check(&NatMatrix2, a, b);
        check(&series_ring(), a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// For any seed, a generated well-starred expression evaluates to the
    /// same series directly, through its compiled automaton's behavior, and
    /// through per-word run summation.
    #[test]
    fn compiled_automata_match_direct_evaluation(seed in any::<u64>()) {
        let alphabet = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_well_starred(&mut rng, &alphabet, 3, 3);
        let check = kleene_round_trip(&Naturals, &alphabet, &e, 3).unwrap();
        prop_assert!(
            check.matches(),
            "expression {} first differs at {:?}",
            e,
            check.first_difference
        );
    }
}
