//! Rational expressions: parsing, direct series evaluation, and compilation
//! to weighted automata.
//!
//! The concrete syntax is
//!
//! ```text
//! expr := prod ('+' prod)*
//! prod := post ('.' post)*
//! post := atom ('^*' | '^+')*
//! atom := LETTER | NAT | '(' expr ')'
//! ```
//!
//! with arbitrary whitespace between tokens. Letters must belong to the
//! alphabet the parser is given; natural-number literals denote `n·1` in the
//! coefficient semiring.
//!
//! Star and plus are only defined on *well-starred* subexpressions: ones
//! whose denotation has no empty-word term. That restriction is what lets
//! every expression be evaluated in the truncated-series algebra (where only
//! proper elements have a star) and compiled to an automaton with `α·β = 0`,
//! and [`kleene_round_trip`] checks that the two routes agree coefficient by
//! coefficient.

use std::fmt;

use rand::Rng;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::instances::Naturals;
use crate::semiring::Semiring;
use crate::series::{Alphabet, SeriesSemiring, TruncatedSeries, Word};

/// Abstract syntax of rational expressions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RatExpr {
    Const(u64),
    Letter(char),
    Add(Box<RatExpr>, Box<RatExpr>),
    Mul(Box<RatExpr>, Box<RatExpr>),
    Star(Box<RatExpr>),
    Plus(Box<RatExpr>),
}

impl RatExpr {
    /// Binding strength: sums bind loosest, then products, then the postfix
    /// operators; atoms never need parentheses.
    fn prec(&self) -> u8 {
        match self {
            RatExpr::Add(..) => 0,
            RatExpr::Mul(..) => 1,
            RatExpr::Star(_) | RatExpr::Plus(_) => 2,
            RatExpr::Const(_) | RatExpr::Letter(_) => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.prec() < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            RatExpr::Const(n) => write!(f, "{n}")?,
            RatExpr::Letter(c) => write!(f, "{c}")?,
            RatExpr::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
            }
            RatExpr::Mul(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, ".")?;
                b.fmt_prec(f, 2)?;
            }
            RatExpr::Star(a) => {
                a.fmt_prec(f, 2)?;
                write!(f, "^*")?;
            }
            RatExpr::Plus(a) => {
                a.fmt_prec(f, 2)?;
                write!(f, "^+")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RatExpr {
    /// Prints a form that reparses to the identical tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            alphabet,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<RatExpr> {
        let mut acc = self.prod()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
                let rhs = self.prod()?;
                acc = RatExpr::Add(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<RatExpr> {
        let mut acc = self.post()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('.') {
                self.pos += 1;
                let rhs = self.post()?;
                acc = RatExpr::Mul(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn post(&mut self) -> Result<RatExpr> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('^') {
                self.pos += 1;
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        acc = RatExpr::Star(Box::new(acc));
                    }
                    Some('+') => {
                        self.pos += 1;
                        acc = RatExpr::Plus(Box::new(acc));
                    }
                    _ => return Err(self.err("expected '*' or '+' after '^'")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<RatExpr> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.pos += 1;
                    Ok(e)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                match text.parse::<u64>() {
                    Ok(n) => Ok(RatExpr::Const(n)),
                    Err(_) => Err(Error::Syntax {
                        pos: start,
                        message: format!("number {text} does not fit in 64 bits"),
                    }),
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                if self.alphabet.index_of(c).is_some() {
                    self.pos += 1;
                    Ok(RatExpr::Letter(c))
                } else {
                    Err(self.err(format!("letter '{c}' is not in the alphabet")))
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
        }
    }
}

/// Parse an expression over the given alphabet. Positions in syntax errors
/// are 0-based character offsets.
pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<RatExpr> {
    let mut p = Parser::new(text, alphabet);
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.err(format!("unexpected character '{c}'"))),
    }
}

/// The empty-word coefficient of the expression's denotation, and at the
/// same time the well-starredness check: starring a subexpression whose
/// constant part is nonzero is reported as [`Error::IllStarred`].
pub fn const_part<S: Semiring>(ring: &S, e: &RatExpr) -> Result<S::Elem> {
    match e {
        RatExpr::Const(n) => ring.from_nat(*n),
        RatExpr::Letter(_) => Ok(ring.zero()),
        RatExpr::Add(a, b) => ring.add(&const_part(ring, a)?, &const_part(ring, b)?),
        RatExpr::Mul(a, b) => ring.mul(&const_part(ring, a)?, &const_part(ring, b)?),
        RatExpr::Star(a) => {
            let inner = const_part(ring, a)?;
            if ring.is_zero(&inner) {
                Ok(ring.one())
            } else {
                Err(Error::IllStarred(a.to_string()))
            }
        }
        RatExpr::Plus(a) => {
            let inner = const_part(ring, a)?;
            if ring.is_zero(&inner) {
                Ok(ring.zero())
            } else {
                Err(Error::IllStarred(a.to_string()))
            }
        }
    }
}

/// Evaluate directly in the truncated-series algebra. Star and plus of a
/// subexpression with a nonzero empty-word coefficient fail with
/// [`Error::IllStarred`].
pub fn eval_series<S: Semiring>(
    sr: &SeriesSemiring<S>,
    e: &RatExpr,
) -> Result<TruncatedSeries<S::Elem>> {
    match e {
        RatExpr::Const(n) => Ok(sr.inject(sr.coeff_ring().from_nat(*n)?)),
        RatExpr::Letter(c) => sr.letter(*c),
        RatExpr::Add(a, b) => sr.add(&eval_series(sr, a)?, &eval_series(sr, b)?),
        RatExpr::Mul(a, b) => sr.mul(&eval_series(sr, a)?, &eval_series(sr, b)?),
        RatExpr::Star(a) => {
            let t = eval_series(sr, a)?;
            if !t.is_proper() {
                return Err(Error::IllStarred(a.to_string()));
            }
            sr.proper_star(&t)
        }
        RatExpr::Plus(a) => {
            let t = eval_series(sr, a)?;
            if !t.is_proper() {
                return Err(Error::IllStarred(a.to_string()));
            }
            sr.mul(&t, &sr.proper_star(&t)?)
        }
    }
}

/// Compile a subexpression to the triple `(x, A, proper_is_zero)` with
/// denotation `x·ε + |A|`, where `A` always satisfies `α·β = 0` and the flag
/// records whether `|A|` is known to be the zero series (so that vacuous
/// constructions can be skipped).
fn compile_proper<S: Semiring>(
    ring: &S,
    alphabet: &Alphabet,
    e: &RatExpr,
) -> Result<(S::Elem, Automaton<S>, bool)> {
    match e {
        RatExpr::Const(n) => Ok((
            ring.from_nat(*n)?,
            Automaton::zero(ring.clone(), alphabet.clone()),
            true,
        )),
        RatExpr::Letter(c) => Ok((
            ring.zero(),
            Automaton::letter(ring.clone(), alphabet.clone(), *c)?,
            false,
        )),
        RatExpr::Add(a, b) => {
            let (x1, a1, z1) = compile_proper(ring, alphabet, a)?;
            let (x2, a2, z2) = compile_proper(ring, alphabet, b)?;
            let x = ring.add(&x1, &x2)?;
            let (aut, z) = match (z1, z2) {
                (true, true) => (a1, true),
                (true, false) => (a2, false),
                (false, true) => (a1, false),
                (false, false) => (a1.sum(&a2)?, false),
            };
            Ok((x, aut, z))
        }
        RatExpr::Mul(a, b) => {
            let (x1, a1, z1) = compile_proper(ring, alphabet, a)?;
            let (x2, a2, z2) = compile_proper(ring, alphabet, b)?;
            let x = ring.mul(&x1, &x2)?;
            // x1·|A2| + |A1|·x2 + |A1|·|A2|, skipping pieces known zero.
            let mut pieces = Vec::new();
            if !z2 && !ring.is_zero(&x1) {
                pieces.push(a2.scale_left(&x1)?);
            }
            if !z1 && !ring.is_zero(&x2) {
                pieces.push(a1.scale_right(&x2)?);
            }
            if !z1 && !z2 {
                pieces.push(a1.product(&a2)?);
            }
            let z = pieces.is_empty();
            let aut = match pieces.split_first() {
                None => Automaton::zero(ring.clone(), alphabet.clone()),
                Some((first, rest)) => {
                    let mut acc = first.clone();
                    for piece in rest {
                        acc = acc.sum(piece)?;
                    }
                    acc
                }
            };
            Ok((x, aut, z))
        }
        RatExpr::Star(a) => {
            let (x, aut, z) = compile_proper(ring, alphabet, a)?;
            if !ring.is_zero(&x) {
                return Err(Error::IllStarred(a.to_string()));
            }
            Ok((ring.one(), aut.plus()?, z))
        }
        RatExpr::Plus(a) => {
            let (x, aut, z) = compile_proper(ring, alphabet, a)?;
            if !ring.is_zero(&x) {
                return Err(Error::IllStarred(a.to_string()));
            }
            Ok((ring.zero(), aut.plus()?, z))
        }
    }
}

/// Compile an expression to a weighted automaton whose behavior is the
/// expression's denotation.
pub fn compile<S: Semiring>(
    ring: &S,
    alphabet: &Alphabet,
    e: &RatExpr,
) -> Result<Automaton<S>> {
    let (x, aut, _) = compile_proper(ring, alphabet, e)?;
    if ring.is_zero(&x) {
        Ok(aut)
    } else {
        aut.add_constant(&x)
    }
}

/// Result of checking one expression both ways: direct series evaluation
/// against the compiled automaton's behavior and against run summation.
#[derive(Clone, Debug)]
pub struct KleeneCheck {
    pub automaton_dim: usize,
    pub first_difference: Option<Word>,
}

impl KleeneCheck {
    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Evaluate `e` directly, compile it, and compare all coefficients up to
/// `max_len` — once structurally against the behavior series and once
/// against per-word run summation, which exercises an independent code
/// path.
pub fn kleene_round_trip<S: Semiring>(
    ring: &S,
    alphabet: &Alphabet,
    e: &RatExpr,
    max_len: usize,
) -> Result<KleeneCheck> {
    let sr = SeriesSemiring::new(ring.clone(), alphabet.clone(), max_len);
    let direct = eval_series(&sr, e)?;
    let aut = compile(ring, alphabet, e)?;
    let behavior = aut.behavior(max_len)?;
    let mut first_difference = direct.first_difference(&behavior);
    if first_difference.is_none() {
        for w in alphabet.words_up_to(max_len) {
            if aut.coefficient_by_paths(&w)? != sr.coefficient(&direct, &w)? {
                first_difference = Some(w);
                break;
            }
        }
    }
    Ok(KleeneCheck {
        automaton_dim: aut.dim(),
        first_difference,
    })
}

/// Generate a random well-starred expression: every starred or plussed
/// subexpression has empty-word coefficient zero, arranged by prefixing a
/// letter when a draw comes out improper. Constants are drawn from
/// `0..=max_const`. Deterministic for a fixed generator state.
pub fn random_well_starred<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_depth: usize,
    max_const: u64,
) -> RatExpr {
    assert!(!alphabet.is_empty(), "alphabet must be nonempty");
    if max_depth == 0 {
        return random_leaf(rng, alphabet, max_const);
    }
    match rng.gen_range(0u32..100) {
        0..=24 => RatExpr::Add(
            Box::new(random_well_starred(rng, alphabet, max_depth - 1, max_const)),
            Box::new(random_well_starred(rng, alphabet, max_depth - 1, max_const)),
        ),
        25..=49 => RatExpr::Mul(
            Box::new(random_well_starred(rng, alphabet, max_depth - 1, max_const)),
            Box::new(random_well_starred(rng, alphabet, max_depth - 1, max_const)),
        ),
        50..=64 => {
            let inner = random_well_starred(rng, alphabet, max_depth - 1, max_const);
            RatExpr::Star(Box::new(make_proper(rng, alphabet, inner)))
        }
        65..=74 => {
            let inner = random_well_starred(rng, alphabet, max_depth - 1, max_const);
            RatExpr::Plus(Box::new(make_proper(rng, alphabet, inner)))
        }
        _ => random_leaf(rng, alphabet, max_const),
    }
}

fn random_leaf<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_const: u64) -> RatExpr {
    if rng.gen_range(0u32..100) < 70 {
        let idx = rng.gen_range(0..alphabet.len());
        RatExpr::Letter(alphabet.symbols()[idx])
    } else {
        RatExpr::Const(rng.gen_range(0..=max_const))
    }
}

fn make_proper<R: Rng>(rng: &mut R, alphabet: &Alphabet, e: RatExpr) -> RatExpr {
    if const_part(&Naturals, &e) == Ok(0) {
        e
    } else {
        let idx = rng.gen_range(0..alphabet.len());
        RatExpr::Mul(
            Box::new(RatExpr::Letter(alphabet.symbols()[idx])),
            Box::new(e),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xy() -> Alphabet {
        Alphabet::new("xy").unwrap()
    }

    fn parse(text: &str) -> RatExpr {
        parse_expr(text, &xy()).unwrap()
    }

    fn x() -> Box<RatExpr> {
        Box::new(RatExpr::Letter('x'))
    }

    fn y() -> Box<RatExpr> {
        Box::new(RatExpr::Letter('y'))
    }

    #[test]
    fn parser_builds_expected_trees() {
        assert_eq!(
            parse("2.x^* + y"),
            RatExpr::Add(
                Box::new(RatExpr::Mul(
                    Box::new(RatExpr::Const(2)),
                    Box::new(RatExpr::Star(x())),
                )),
                y(),
            )
        );
        assert_eq!(parse("x^+^*"), RatExpr::Star(Box::new(RatExpr::Plus(x()))));
        assert_eq!(parse("((x))"), RatExpr::Letter('x'));
        assert_eq!(parse(" x . y "), RatExpr::Mul(x(), y()));
        // '+' and '.' associate to the left; parentheses override.
        assert_eq!(
            parse("x + y + x"),
            RatExpr::Add(Box::new(RatExpr::Add(x(), y())), x())
        );
        assert_eq!(
            parse("x + (y + x)"),
            RatExpr::Add(x(), Box::new(RatExpr::Add(y(), x())))
        );
        assert_eq!(parse("10"), RatExpr::Const(10));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = |text: &str| match parse_expr(text, &xy()) {
            Err(Error::Syntax { pos, message }) => (pos, message),
            other => panic!("expected syntax error for {text:?}, got {other:?}"),
        };
        assert_eq!(err("x +").0, 3);
        assert_eq!(err("x)").0, 1);
        assert_eq!(err("(x").0, 2);
        assert_eq!(err("x^").0, 2);
        let (pos, msg) = err("z");
        assert_eq!(pos, 0);
        assert!(msg.contains("not in the alphabet"), "{msg}");
        assert_eq!(err("2 x").0, 2);
        assert_eq!(err("").0, 0);
        let (pos, msg) = err("99999999999999999999");
        assert_eq!(pos, 0);
        assert!(msg.contains("64 bits"), "{msg}");
    }

    #[test]
    fn display_round_trips_exactly() {
        for text in [
            "2.x^* + y",
            "x^+^*",
            "x + (y + x)",
            "x.(y.x)",
            "(x + y)^*",
            "(x + y).x",
            "0",
            "x.(y + 2)^+.x",
        ] {
            let e = parse(text);
            let printed = e.to_string();
            assert_eq!(parse(&printed), e, "round trip through {printed:?}");
        }
    }

    #[test]
    fn const_part_over_naturals() {
        let c = |text: &str| const_part(&Naturals, &parse(text));
        assert_eq!(c("3 + x").unwrap(), 3);
        assert_eq!(c("x").unwrap(), 0);
        assert_eq!(c("2.3").unwrap(), 6);
        assert_eq!(c("(2.x)^*").unwrap(), 1);
        assert_eq!(c("x^*.y").unwrap(), 0);
        assert_eq!(c("x^* . y^*").unwrap(), 1);
        assert!(matches!(c("(1 + x)^+"), Err(Error::IllStarred(_))));
        assert!(matches!(c("1^*"), Err(Error::IllStarred(_))));
        assert!(matches!(
            c("9999999999.9999999999"),
            Err(Error::Overflow(_))
        ));
        // The ill-starred message names the offending subexpression.
        match c("y + (1 + x)^*") {
            Err(Error::IllStarred(sub)) => assert_eq!(sub, "1 + x"),
            other => panic!("expected ill-starred, got {other:?}"),
        }
    }

    #[test]
    fn eval_star_and_plus() {
        let sr = SeriesSemiring::new(Naturals, xy(), 3);
        let star = eval_series(&sr, &parse("x^*")).unwrap();
        assert_eq!(sr.dump(&star), "eps\t1\nx\t1\nxx\t1\nxxx\t1\n");
        let doubled = eval_series(&sr, &parse("(2.x)^*")).unwrap();
        assert_eq!(sr.dump(&doubled), "eps\t1\nx\t2\nxx\t4\nxxx\t8\n");
        let plus = eval_series(&sr, &parse("x^+")).unwrap();
        assert_eq!(sr.dump(&plus), "x\t1\nxx\t1\nxxx\t1\n");

        let sr2 = SeriesSemiring::new(Naturals, xy(), 2);
        let all = eval_series(&sr2, &parse("(x + y)^*")).unwrap();
        assert_eq!(all.term_count(), 7);
        for w in xy().words_up_to(2) {
            assert_eq!(sr2.coefficient(&all, &w).unwrap(), 1);
        }

        assert!(matches!(
            eval_series(&sr, &parse("(1 + x)^*")),
            Err(Error::IllStarred(_))
        ));
        assert!(matches!(
            eval_series(&sr, &parse("1^+")),
            Err(Error::IllStarred(_))
        ));
        // The zero series is proper, so 0^* = 1.
        let zero_star = eval_series(&sr, &parse("0^*")).unwrap();
        assert_eq!(sr.dump(&zero_star), "eps\t1\n");
    }

    #[test]
    fn compile_shapes_and_behaviors() {
        let ring = Naturals;
        let ab = xy();
        let sr = SeriesSemiring::new(ring, ab.clone(), 3);

        let ax = compile(&ring, &ab, &parse("x")).unwrap();
        assert_eq!(ax.dim(), 2);
        assert!(ax.zero_alpha_beta());
        assert_eq!(sr.dump(&ax.behavior(3).unwrap()), "x\t1\n");

        let mixed = compile(&ring, &ab, &parse("x.y + y.x")).unwrap();
        assert_eq!(sr.dump(&mixed.behavior(3).unwrap()), "xy\t1\nyx\t1\n");

        let shifted = compile(&ring, &ab, &parse("3 + x^+")).unwrap();
        assert_eq!(
            sr.dump(&shifted.behavior(3).unwrap()),
            "eps\t3\nx\t1\nxx\t1\nxxx\t1\n"
        );
        assert!(!shifted.zero_alpha_beta());

        let zero = compile(&ring, &ab, &parse("0")).unwrap();
        assert_eq!(zero.dim(), 1);
        assert!(zero.behavior(3).unwrap().is_zero());

        // Scaling pieces: constants distribute into the proper part.
        let scaled = compile(&ring, &ab, &parse("2.x.3")).unwrap();
        assert_eq!(sr.dump(&scaled.behavior(3).unwrap()), "x\t6\n");

        assert!(matches!(
            compile(&ring, &ab, &parse("(1 + x)^*")),
            Err(Error::IllStarred(_))
        ));
    }

    #[test]
    fn round_trip_agrees_on_fixed_corpus() {
        let ring = Naturals;
        let ab = xy();
        for text in [
            "0",
            "1",
            "x",
            "x^*",
            "0^*",
            "x.y + y.x",
            "(x + y)^*",
            "(2.x)^* + 3.y",
            "(x.y)^+",
            "2 + x.(y + 1)",
            "(x + y.y)^*.x",
            "x^+.y^+",
            "(x^*.y)^+",
            "3.(x + 2.y)^* . x",
        ] {
            let e = parse(text);
            let check = kleene_round_trip(&ring, &ab, &e, 5).unwrap();
            assert!(
                check.matches(),
                "mismatch for {text} at {:?}",
                check.first_difference.map(|w| ab.format_word(&w))
            );
        }
    }

    #[test]
    fn generator_is_deterministic_and_well_starred() {
        let ab = xy();
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let a: Vec<RatExpr> = (0..50)
            .map(|_| random_well_starred(&mut rng1, &ab, 4, 3))
            .collect();
        let b: Vec<RatExpr> = (0..50)
            .map(|_| random_well_starred(&mut rng2, &ab, 4, 3))
            .collect();
        assert_eq!(a, b);
        let mut saw_star = false;
        for e in &a {
            assert!(const_part(&Naturals, e).is_ok(), "ill-starred: {e}");
            saw_star |= matches!(
                e,
                RatExpr::Star(_) | RatExpr::Plus(_)
            ) || e.to_string().contains('^');
            // Printing and reparsing preserves the tree.
            assert_eq!(parse_expr(&e.to_string(), &ab).unwrap(), *e);
        }
        assert!(saw_star, "corpus never exercised star or plus");
    }
}
