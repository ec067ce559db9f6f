//! Partial Conway semirings, concretely.
//!
//! This crate implements semirings with a *partial* star operation: star is
//! only defined on an ideal of the carrier, but wherever it is defined it
//! satisfies the sum-star and product-star identities and everything that
//! follows from them. The pieces fit together like this:
//!
//! - [`semiring`] defines the dictionary-passing [`Semiring`] trait (a ring
//!   is a value, so one type can carry many differently-parameterized
//!   algebras), the [`Dual`] wrapper that reverses multiplication, and a
//!   randomized axiom checker.
//! - [`instances`] provides the base coefficient semirings: the Booleans,
//!   the natural numbers (star defined only at zero), the naturals with
//!   infinity (total star), and 2x2 natural matrices (a noncommutative
//!   example).
//! - [`matrix`] implements matrices over any of these, with a
//!   block-recursive [`Matrix::star`](matrix::Matrix::star) that stays
//!   polynomial in the dimension, the textbook two-star block form for
//!   cross-checking, and the dual star.
//! - [`series`] implements power series over a finite alphabet truncated at
//!   a maximum word length — the canonical carrier where star is genuinely
//!   partial (defined exactly on series without an empty-word term), plus
//!   the cycle-free and total-star variants.
//! - [`automaton`] implements weighted finite automata whose behaviors are
//!   such series, with the rational-operation constructions and run-based
//!   coefficient computation as an independent oracle.
//! - [`ratexpr`] parses rational expressions, evaluates them directly, and
//!   compiles them to automata; the two routes agreeing on every input is
//!   the equivalence the [`verify`] suites and the test corpus keep
//!   probing.
//! - [`group`] and [`verify`] provide finite groups given by Cayley tables
//!   and the randomized identity suites (fixed-point laws, sum/product
//!   star, permutation and block invariance, transpose duality, functorial
//!   star, group identities, and expression/automaton round trips).
//!
//! Everything is deterministic: random suites are seeded, and all
//! collections iterate in a stable order.

pub mod automaton;
pub mod error;
pub mod group;
pub mod instances;
pub mod matrix;
pub mod ratexpr;
pub mod semiring;
pub mod series;
pub mod verify;

pub use automaton::{Automaton, LinComb};
pub use error::{Error, Result};
pub use group::{build_group_matrix, check_table, FiniteGroup};
pub use instances::{Booleans, ExtendedNaturals, NatMatrix2, NatOrInf, Naturals};
pub use matrix::Matrix;
pub use ratexpr::{
    compile, const_part, eval_series, kleene_round_trip, parse_expr, random_well_starred,
    KleeneCheck, RatExpr,
};
pub use semiring::{axiom_check, AxiomReport, AxiomViolation, Dual, ElemCodec, Semiring};
pub use series::{Alphabet, SeriesSemiring, TruncatedSeries, Word};
pub use verify::{
    run_suite, CheckFailure, CheckReport, VerifyConfig, SUITE_NAMES,
};
