//! Power series over a free monoid of words, truncated at a fixed word
//! length.
//!
//! A series assigns a coefficient from a base semiring to every word of
//! length at most `max_len`. Addition is pointwise and multiplication is
//! the Cauchy product; because multiplication never shortens words, the
//! truncation is exact degreewise — the coefficient of a word of length
//! `≤ max_len` is the same as it would be without truncation.
//!
//! Series with zero constant term ("proper" series) form an ideal on which
//! the star `s* = Σ sⁿ` is a finite sum here, since `s^{max_len+1}`
//! truncates to zero. [`SeriesSemiring::cycle_free_star`] and
//! [`SeriesSemiring::total_star`] extend the star beyond the proper ideal
//! where the coefficient semiring permits it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// An ordered alphabet of distinct lowercase ASCII letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Build from a string of distinct lowercase ASCII letters, e.g. `"xy"`.
    pub fn new(symbols: &str) -> Result<Self> {
        let symbols: Vec<char> = symbols.chars().collect();
        for (i, &c) in symbols.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {c:?} is not a lowercase ASCII letter"
                )));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    /// Parse a word written as concatenated symbols. Both the empty string
    /// and `"eps"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() || text == "eps" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            letters.push(self.index_of(c).ok_or(Error::UnknownLetter(c))?);
        }
        Ok(Word(letters))
    }

    /// Render a word; the empty word is rendered as `"eps"`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "eps".into()
        } else {
            w.0.iter().map(|&i| self.symbol(i)).collect()
        }
    }

    /// All words of length at most `max_len`, shortest first and in
    /// alphabet order within each length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for i in 0..self.len() as u8 {
                    let mut letters = w.0.clone();
                    letters.push(i);
                    next.push(Word(letters));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A word over an alphabet, stored as letter indices.
///
/// Words order by length first, then lexicographically in alphabet order,
/// which is also the order of every listing this crate produces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub(crate) Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.0.clone();
        letters.reverse();
        Word(letters)
    }

    /// The smallest word of the given length; used as an exclusive range
    /// bound to sweep all strictly shorter words.
    fn first_of_len(len: usize) -> Word {
        Word(vec![0; len])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A truncated power series: finitely many `word → coefficient` terms, all
/// words no longer than `max_len`. Zero coefficients are never stored, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<C> {
    alphabet: Alphabet,
    max_len: usize,
    coeffs: BTreeMap<Word, C>,
}

impl<C: Clone + PartialEq + Debug> TruncatedSeries<C> {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn get(&self, w: &Word) -> Option<&C> {
        self.coeffs.get(w)
    }

    /// The nonzero terms in word order (shortest first).
    pub fn support(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether the coefficient of the empty word is zero.
    pub fn is_proper(&self) -> bool {
        !self.coeffs.contains_key(&Word::empty())
    }

    /// The smallest word at which the two series differ, if any.
    /// Series over different contexts differ everywhere; the empty word is
    /// returned in that case.
    pub fn first_difference(&self, other: &Self) -> Option<Word> {
        if self.alphabet != other.alphabet || self.max_len != other.max_len {
            return Some(Word::empty());
        }
        let mut lhs = self.coeffs.iter().peekable();
        let mut rhs = other.coeffs.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => return None,
                (Some((w, _)), None) => return Some((*w).clone()),
                (None, Some((w, _))) => return Some((*w).clone()),
                (Some((wl, cl)), Some((wr, cr))) => match wl.cmp(wr) {
                    Ordering::Less => return Some((*wl).clone()),
                    Ordering::Greater => return Some((*wr).clone()),
                    Ordering::Equal => {
                        if cl != cr {
                            return Some((*wl).clone());
                        }
                        lhs.next();
                        rhs.next();
                    }
                },
            }
        }
    }
}

/// The semiring of truncated power series over a base coefficient
/// semiring, a fixed alphabet and a fixed truncation length.
///
/// This is itself a [`Semiring`] instance — its elements are
/// [`TruncatedSeries`] — so matrices of series and series-weighted
/// automata reuse all generic code. The trait star is the proper star,
/// defined exactly on the ideal of proper series.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesSemiring<S: Semiring> {
    coeff: S,
    alphabet: Alphabet,
    max_len: usize,
}

impl<S: Semiring> SeriesSemiring<S> {
    pub fn new(coeff: S, alphabet: Alphabet, max_len: usize) -> Self {
        SeriesSemiring {
            coeff,
            alphabet,
            max_len,
        }
    }

    pub fn coeff_ring(&self) -> &S {
        &self.coeff
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn empty(&self) -> TruncatedSeries<S::Elem> {
        TruncatedSeries {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len,
            coeffs: BTreeMap::new(),
        }
    }

    fn check_context(&self, s: &TruncatedSeries<S::Elem>) -> Result<()> {
        if s.alphabet != self.alphabet || s.max_len != self.max_len {
            return Err(Error::ContextMismatch {
                left: self.name(),
                right: format!(
                    "series({}; {}; L={})",
                    self.coeff.name(),
                    s.alphabet.symbols().iter().collect::<String>(),
                    s.max_len
                ),
            });
        }
        Ok(())
    }

    /// The constant series `x·ε`.
    pub fn inject(&self, x: S::Elem) -> TruncatedSeries<S::Elem> {
        let mut s = self.empty();
        if !self.coeff.is_zero(&x) {
            s.coeffs.insert(Word::empty(), x);
        }
        s
    }

    /// The series of a single letter with coefficient one. Letters
    /// truncate to zero when `max_len` is 0.
    pub fn letter(&self, c: char) -> Result<TruncatedSeries<S::Elem>> {
        let idx = self.alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
        let mut s = self.empty();
        if self.max_len >= 1 {
            s.coeffs.insert(Word(vec![idx]), self.coeff.one());
        }
        Ok(s)
    }

    /// The single-term series `c·w`.
    pub fn monomial(&self, w: &Word, c: S::Elem) -> Result<TruncatedSeries<S::Elem>> {
        if w.len() > self.max_len {
            return Err(Error::WordTooLong {
                len: w.len(),
                max: self.max_len,
            });
        }
        let mut s = self.empty();
        if !self.coeff.is_zero(&c) {
            s.coeffs.insert(w.clone(), c);
        }
        Ok(s)
    }

    /// Sum of `c·w` terms; coefficients of repeated words are added.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Word, S::Elem)>,
    ) -> Result<TruncatedSeries<S::Elem>> {
        let mut s = self.empty();
        for (w, c) in terms {
            if w.len() > self.max_len {
                return Err(Error::WordTooLong {
                    len: w.len(),
                    max: self.max_len,
                });
            }
            debug_assert!(w.0.iter().all(|&i| (i as usize) < self.alphabet.len()));
            match s.coeffs.remove(&w) {
                None => {
                    s.coeffs.insert(w, c);
                }
                Some(old) => {
                    s.coeffs.insert(w, self.coeff.add(&old, &c)?);
                }
            }
        }
        s.coeffs.retain(|_, c| !self.coeff.is_zero(c));
        Ok(s)
    }

    /// The coefficient of `w`, which must not exceed the truncation length.
    pub fn coefficient(&self, s: &TruncatedSeries<S::Elem>, w: &Word) -> Result<S::Elem> {
        if w.len() > self.max_len {
            return Err(Error::WordTooLong {
                len: w.len(),
                max: self.max_len,
            });
        }
        Ok(s.coeffs.get(w).cloned().unwrap_or_else(|| self.coeff.zero()))
    }

    /// The coefficient of the empty word.
    pub fn constant_term(&self, s: &TruncatedSeries<S::Elem>) -> S::Elem {
        s.coeffs
            .get(&Word::empty())
            .cloned()
            .unwrap_or_else(|| self.coeff.zero())
    }

    /// The series with the empty-word term removed. No subtraction is
    /// involved: the term is simply dropped from the table.
    pub fn proper_part(&self, s: &TruncatedSeries<S::Elem>) -> TruncatedSeries<S::Elem> {
        let mut out = s.clone();
        out.coeffs.remove(&Word::empty());
        out
    }

    /// The star `Σ_{n=0}^{max_len} sⁿ` of a proper series.
    ///
    /// For proper `s` every summand beyond `n = max_len` truncates to zero,
    /// so the sum is exact; the result is the unique solution of
    /// `t = s·t + 1` in the truncated algebra.
    pub fn proper_star(&self, s: &TruncatedSeries<S::Elem>) -> Result<TruncatedSeries<S::Elem>> {
        self.check_context(s)?;
        if !s.is_proper() {
            return Err(Error::NotProper(
                self.coeff.format_elem(&self.constant_term(s)),
            ));
        }
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 1..=self.max_len {
            power = self.mul(&power, s)?;
            if power.is_zero() {
                break;
            }
            acc = self.add(&acc, &power)?;
        }
        Ok(acc)
    }

    /// The least `k ≤ k_max` such that the `k`-th power of the constant
    /// term vanishes — equivalently, such that `s^k` is proper.
    pub fn cycle_free_index(&self, s: &TruncatedSeries<S::Elem>, k_max: usize) -> Result<usize> {
        let x = self.constant_term(s);
        let mut power = self.coeff.one();
        for k in 1..=k_max {
            power = self.coeff.mul(&power, &x)?;
            if self.coeff.is_zero(&power) {
                return Ok(k);
            }
        }
        Err(Error::NotCycleFree { k_max })
    }

    /// The star of a cycle-free series: searches for the least valid power
    /// index `k ≤ k_max` and evaluates [`Self::cycle_free_star_at`] there.
    pub fn cycle_free_star(
        &self,
        s: &TruncatedSeries<S::Elem>,
        k_max: usize,
    ) -> Result<TruncatedSeries<S::Elem>> {
        let k = self.cycle_free_index(s, k_max)?;
        self.cycle_free_star_at(s, k)
    }

    /// The star of a cycle-free series at a given power index:
    /// `s* = (s^k)*·(s^{k-1} + ⋯ + s + 1)`, valid whenever `s^k` is
    /// proper. The result does not depend on which valid `k` is used.
    pub fn cycle_free_star_at(
        &self,
        s: &TruncatedSeries<S::Elem>,
        k: usize,
    ) -> Result<TruncatedSeries<S::Elem>> {
        self.check_context(s)?;
        if k == 0 {
            return Err(Error::NotCycleFree { k_max: 0 });
        }
        let mut prefix = self.one(); // s^{k-1} + … + s + 1
        let mut power = self.one(); // s^i
        for _ in 1..k {
            power = self.mul(&power, s)?;
            prefix = self.add(&prefix, &power)?;
        }
        let sk = self.mul(&power, s)?; // s^k
        if !sk.is_proper() {
            return Err(Error::NotCycleFree { k_max: k });
        }
        self.mul(&self.proper_star(&sk)?, &prefix)
    }

    /// The star of an arbitrary series when the coefficient star is total:
    /// split `s = x·ε + a` with `a` proper, then `s* = (x*·a)*·x*`.
    pub fn total_star(&self, s: &TruncatedSeries<S::Elem>) -> Result<TruncatedSeries<S::Elem>> {
        self.check_context(s)?;
        if !self.coeff.star_is_total() {
            return Err(Error::CoefficientStarUndefined(self.coeff.name()));
        }
        let xstar = self.inject(self.coeff.star(&self.constant_term(s))?);
        let a = self.proper_part(s);
        let looped = self.proper_star(&self.mul(&xstar, &a)?)?;
        self.mul(&looped, &xstar)
    }

    /// Render as `word<TAB>coefficient` lines, shortest word first, one
    /// term per line. The zero series renders as the empty string.
    pub fn dump(&self, s: &TruncatedSeries<S::Elem>) -> String {
        let mut out = String::new();
        for (w, c) in s.support() {
            out.push_str(&self.alphabet.format_word(w));
            out.push('\t');
            out.push_str(&self.coeff.format_elem(c));
            out.push('\n');
        }
        out
    }
}

impl<S: Semiring> Semiring for SeriesSemiring<S> {
    type Elem = TruncatedSeries<S::Elem>;

    fn name(&self) -> String {
        format!(
            "series({}; {}; L={})",
            self.coeff.name(),
            self.alphabet.symbols().iter().collect::<String>(),
            self.max_len
        )
    }

    fn zero(&self) -> Self::Elem {
        self.empty()
    }

    fn one(&self) -> Self::Elem {
        self.inject(self.coeff.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_context(a)?;
        self.check_context(b)?;
        let mut out = a.clone();
        for (w, c) in &b.coeffs {
            match out.coeffs.remove(w) {
                None => {
                    out.coeffs.insert(w.clone(), c.clone());
                }
                Some(old) => {
                    let sum = self.coeff.add(&old, c)?;
                    if !self.coeff.is_zero(&sum) {
                        out.coeffs.insert(w.clone(), sum);
                    }
                }
            }
        }
        Ok(out)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_context(a)?;
        self.check_context(b)?;
        let mut out = self.empty();
        for (u, cu) in &a.coeffs {
            let budget = self.max_len - u.len();
            // Only words of b no longer than the remaining budget matter.
            let bound = Word::first_of_len(budget + 1);
            for (v, cv) in b.coeffs.range(..bound) {
                let prod = self.coeff.mul(cu, cv)?;
                if self.coeff.is_zero(&prod) {
                    continue;
                }
                let w = u.concat(v);
                match out.coeffs.remove(&w) {
                    None => {
                        out.coeffs.insert(w, prod);
                    }
                    Some(old) => {
                        let sum = self.coeff.add(&old, &prod)?;
                        if !self.coeff.is_zero(&sum) {
                            out.coeffs.insert(w, sum);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn in_star_domain(&self, a: &Self::Elem) -> bool {
        a.is_proper()
    }

    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.proper_star(a)
    }

    fn from_nat(&self, n: u64) -> Result<Self::Elem> {
        Ok(self.inject(self.coeff.from_nat(n)?))
    }

    fn direct_sum_property(&self) -> bool {
        true
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let one = self.coeff.one();
        a.support()
            .map(|(w, c)| {
                if w.is_empty() {
                    self.coeff.format_elem(c)
                } else if *c == one {
                    self.alphabet.format_word(w)
                } else {
                    format!("{}*{}", self.coeff.format_elem(c), self.alphabet.format_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Extend a pair of maps — one on coefficients, one on letters — to a
/// polynomial: `p ↦ Σ_w h(c_w)·h(w₁)⋯h(w_k)`.
///
/// For the extension to be a semiring morphism the image of every
/// coefficient must commute with the image of every letter; this is
/// spot-checked on exactly the coefficients and letters occurring in `p`,
/// and violations are reported as [`Error::CommutationViolated`].
pub fn extend_morphism<C, T>(
    p: &TruncatedSeries<C>,
    target: &T,
    mut h_coeff: impl FnMut(&C) -> Result<T::Elem>,
    mut h_letter: impl FnMut(char) -> Result<T::Elem>,
) -> Result<T::Elem>
where
    C: Clone + PartialEq + Debug,
    T: Semiring,
{
    // Images of the letters that actually occur.
    let mut letter_images: BTreeMap<u8, T::Elem> = BTreeMap::new();
    for (w, _) in p.support() {
        for &i in w.letters() {
            if let std::collections::btree_map::Entry::Vacant(slot) = letter_images.entry(i) {
                slot.insert(h_letter(p.alphabet().symbol(i))?);
            }
        }
    }

    // Commutation spot-check on occurring coefficient/letter pairs.
    for (_, c) in p.support() {
        let hc = h_coeff(c)?;
        for (&i, hl) in &letter_images {
            if target.mul(&hc, hl)? != target.mul(hl, &hc)? {
                return Err(Error::CommutationViolated {
                    coeff: target.format_elem(&hc),
                    letter: format!(
                        "{} (image of {:?})",
                        target.format_elem(hl),
                        p.alphabet().symbol(i)
                    ),
                });
            }
        }
    }

    let mut acc = target.zero();
    for (w, c) in p.support() {
        let mut term = h_coeff(c)?;
        for &i in w.letters() {
            term = target.mul(&term, &letter_images[&i])?;
        }
        acc = target.add(&acc, &term)?;
    }
    Ok(acc)
}
