//! Weighted finite automata over a coefficient semiring and an alphabet.
//!
//! An automaton is a triple `(α, A, β)`: an initial row vector, a square
//! transition matrix whose entries are letter-linear combinations
//! `Σ_σ c_σ·σ`, and a final column vector. Its behavior is the series
//! `α·A*·β`, computed in the truncated-series matrix algebra; the
//! coefficient of a word can independently be computed by summing the
//! weights of all runs spelling that word ([`Automaton::coefficient_by_paths`]),
//! which is what the test suites compare against.
//!
//! The constructions ([`Automaton::sum`], [`Automaton::product`],
//! [`Automaton::plus`], the scalings and [`Automaton::add_constant`])
//! mirror the closure of recognizable series under rational operations.
//! All of them except `add_constant` work on the subclass of automata with
//! `α·β = 0` (no weight on the empty word); that property is recomputed,
//! not trusted, whenever an automaton is built.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{ElemCodec, Semiring};
use crate::series::{Alphabet, SeriesSemiring, TruncatedSeries, Word};

/// A letter-linear combination `Σ_σ c_σ·σ`, the entry type of transition
/// matrices. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<C> {
    terms: BTreeMap<u8, C>,
}

impl<C: Clone + PartialEq + std::fmt::Debug> LinComb<C> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn single<S: Semiring<Elem = C>>(ring: &S, letter: u8, coeff: C) -> Self {
        let mut lc = LinComb::zero();
        if !ring.is_zero(&coeff) {
            lc.terms.insert(letter, coeff);
        }
        lc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &C)> {
        self.terms.iter().map(|(&l, c)| (l, c))
    }

    pub fn coeff_of<S: Semiring<Elem = C>>(&self, ring: &S, letter: u8) -> C {
        self.terms
            .get(&letter)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    pub fn add<S: Semiring<Elem = C>>(&self, ring: &S, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&l, c) in &other.terms {
            match out.terms.remove(&l) {
                None => {
                    out.terms.insert(l, c.clone());
                }
                Some(old) => {
                    let sum = ring.add(&old, c)?;
                    if !ring.is_zero(&sum) {
                        out.terms.insert(l, sum);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale_left<S: Semiring<Elem = C>>(&self, ring: &S, x: &C) -> Result<Self> {
        let mut out = LinComb::zero();
        for (&l, c) in &self.terms {
            let p = ring.mul(x, c)?;
            if !ring.is_zero(&p) {
                out.terms.insert(l, p);
            }
        }
        Ok(out)
    }

    pub fn scale_right<S: Semiring<Elem = C>>(&self, ring: &S, x: &C) -> Result<Self> {
        let mut out = LinComb::zero();
        for (&l, c) in &self.terms {
            let p = ring.mul(c, x)?;
            if !ring.is_zero(&p) {
                out.terms.insert(l, p);
            }
        }
        Ok(out)
    }
}

/// A weighted finite automaton `(α, A, β)` over a coefficient semiring
/// and an alphabet.
#[derive(Clone, PartialEq, Debug)]
pub struct Automaton<S: Semiring> {
    ring: S,
    alphabet: Alphabet,
    alpha: Vec<S::Elem>,
    trans: Vec<Vec<LinComb<S::Elem>>>,
    beta: Vec<S::Elem>,
    /// Whether `α·β = 0`; computed at construction.
    zero_alpha_beta: bool,
}

impl<S: Semiring> Automaton<S> {
    /// Build an automaton, canonicalizing transition entries and computing
    /// the `α·β = 0` property.
    pub fn new(
        ring: S,
        alphabet: Alphabet,
        alpha: Vec<S::Elem>,
        trans: Vec<Vec<LinComb<S::Elem>>>,
        beta: Vec<S::Elem>,
    ) -> Result<Self> {
        let dim = alpha.len();
        if beta.len() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                got: beta.len(),
            });
        }
        if trans.len() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                got: trans.len(),
            });
        }
        let mut canonical = Vec::with_capacity(dim);
        for row in trans {
            if row.len() != dim {
                return Err(Error::SizeMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            let mut crow = Vec::with_capacity(dim);
            for lc in row {
                for (l, _) in lc.terms() {
                    if l as usize >= alphabet.len() {
                        return Err(Error::InvalidAutomaton(format!(
                            "transition letter index {l} outside alphabet of size {}",
                            alphabet.len()
                        )));
                    }
                }
                let mut c = lc.clone();
                c.terms.retain(|_, v| !ring.is_zero(v));
                crow.push(c);
            }
            canonical.push(crow);
        }
        let mut pairing = ring.zero();
        for (a, b) in alpha.iter().zip(&beta) {
            pairing = ring.add(&pairing, &ring.mul(a, b)?)?;
        }
        let zero_alpha_beta = ring.is_zero(&pairing);
        Ok(Automaton {
            ring,
            alphabet,
            alpha,
            trans: canonical,
            beta,
            zero_alpha_beta,
        })
    }

    /// The one-state automaton recognizing the zero series.
    pub fn zero(ring: S, alphabet: Alphabet) -> Self {
        Automaton::new(
            ring.clone(),
            alphabet,
            vec![ring.zero()],
            vec![vec![LinComb::zero()]],
            vec![ring.zero()],
        )
        .expect("shapes are consistent by construction")
    }

    /// The two-state automaton recognizing a single letter.
    pub fn letter(ring: S, alphabet: Alphabet, c: char) -> Result<Self> {
        let idx = alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
        let one = ring.one();
        let zero = ring.zero();
        Automaton::new(
            ring.clone(),
            alphabet,
            vec![one.clone(), zero.clone()],
            vec![
                vec![LinComb::zero(), LinComb::single(&ring, idx, one.clone())],
                vec![LinComb::zero(), LinComb::zero()],
            ],
            vec![zero, one],
        )
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alpha(&self) -> &[S::Elem] {
        &self.alpha
    }

    pub fn beta(&self) -> &[S::Elem] {
        &self.beta
    }

    pub fn transition(&self, from: usize, to: usize) -> &LinComb<S::Elem> {
        &self.trans[from][to]
    }

    /// Whether `α·β = 0`, i.e. the behavior has no empty-word term.
    pub fn zero_alpha_beta(&self) -> bool {
        self.zero_alpha_beta
    }

    fn require_zero_alpha_beta(&self, op: &str) -> Result<()> {
        if self.zero_alpha_beta {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!(
                "{op} requires α·β = 0"
            )))
        }
    }

    fn require_same_context(&self, other: &Self, op: &str) -> Result<()> {
        if self.ring != other.ring || self.alphabet != other.alphabet {
            return Err(Error::PreconditionViolated(format!(
                "{op} requires automata over the same semiring and alphabet"
            )));
        }
        Ok(())
    }

    /// The behavior `α·A*·β` as a series truncated at `max_len`.
    pub fn behavior(&self, max_len: usize) -> Result<TruncatedSeries<S::Elem>> {
        let sr = SeriesSemiring::new(self.ring.clone(), self.alphabet.clone(), max_len);
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(self.embed_lin_comb(&sr, &self.trans[i][j])?);
            }
            rows.push(row);
        }
        let a = Matrix::from_rows(rows)?;
        let astar = a.star(&sr)?;
        let init = Matrix::from_rows(vec![self
            .alpha
            .iter()
            .map(|x| sr.inject(x.clone()))
            .collect()])?;
        let fin = Matrix::from_rows(self.beta.iter().map(|x| vec![sr.inject(x.clone())]).collect())?;
        let out = init.mul(&sr, &astar)?.mul(&sr, &fin)?;
        Ok(out.get(0, 0).clone())
    }

    fn embed_lin_comb(
        &self,
        sr: &SeriesSemiring<S>,
        lc: &LinComb<S::Elem>,
    ) -> Result<TruncatedSeries<S::Elem>> {
        if sr.max_len() == 0 {
            // Letters truncate away entirely.
            return Ok(sr.zero());
        }
        sr.from_terms(lc.terms().map(|(l, c)| (Word(vec![l]), c.clone())))
    }

    /// The coefficient of `w` in the behavior, computed by direct run
    /// summation: `α·A_{w₁}·⋯·A_{w_k}·β` with `A_σ` the matrix of
    /// σ-coefficients. Independent of the series/star code path.
    pub fn coefficient_by_paths(&self, w: &Word) -> Result<S::Elem> {
        let n = self.dim();
        let ring = &self.ring;
        let mut vec = self.alpha.clone();
        for &letter in w.letters() {
            assert!(
                (letter as usize) < self.alphabet.len(),
                "word letter index outside the automaton's alphabet"
            );
            let mut next = vec![ring.zero(); n];
            for (i, vi) in vec.iter().enumerate() {
                if ring.is_zero(vi) {
                    continue;
                }
                for (j, slot) in next.iter_mut().enumerate() {
                    if let Some(c) = self.trans[i][j].terms.get(&letter) {
                        *slot = ring.add(slot, &ring.mul(vi, c)?)?;
                    }
                }
            }
            vec = next;
        }
        let mut acc = ring.zero();
        for (v, b) in vec.iter().zip(&self.beta) {
            acc = ring.add(&acc, &ring.mul(v, b)?)?;
        }
        Ok(acc)
    }

    /// Disjoint union: recognizes the sum of the two behaviors.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.require_same_context(other, "sum")?;
        self.require_zero_alpha_beta("sum")?;
        other.require_zero_alpha_beta("sum")?;
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut alpha = self.alpha.clone();
        alpha.extend(other.alpha.iter().cloned());
        let mut beta = self.beta.clone();
        beta.extend(other.beta.iter().cloned());
        let mut trans = vec![vec![LinComb::zero(); n]; n];
        for (i, row) in self.trans.iter().enumerate() {
            trans[i][..n1].clone_from_slice(row);
        }
        for (i, row) in other.trans.iter().enumerate() {
            trans[n1 + i][n1..].clone_from_slice(row);
        }
        Automaton::new(self.ring.clone(), self.alphabet.clone(), alpha, trans, beta)
    }

    /// Concatenation: recognizes the product of the two behaviors.
    ///
    /// The second block is entered through `β₁·α₂`-weighted copies of the
    /// second automaton's transitions; the general form is kept even when
    /// `α₂·β₂ = 0` makes the top final weights vanish.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.require_same_context(other, "product")?;
        self.require_zero_alpha_beta("product")?;
        other.require_zero_alpha_beta("product")?;
        let ring = &self.ring;
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;

        let mut alpha = self.alpha.clone();
        alpha.extend(std::iter::repeat_with(|| ring.zero()).take(n2));

        // v_j = Σ_k α₂[k]·A₂[k][j]  (a row of letter-linear combinations)
        let mut v = vec![LinComb::zero(); n2];
        for (k, ak) in other.alpha.iter().enumerate() {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = slot.add(ring, &other.trans[k][j].scale_left(ring, ak)?)?;
            }
        }

        let mut trans = vec![vec![LinComb::zero(); n]; n];
        for (i, row) in self.trans.iter().enumerate() {
            trans[i][..n1].clone_from_slice(row);
            // β₁[i]·v_j enters the second block.
            for (j, vj) in v.iter().enumerate() {
                trans[i][n1 + j] = vj.scale_left(ring, &self.beta[i])?;
            }
        }
        for (i, row) in other.trans.iter().enumerate() {
            trans[n1 + i][n1..].clone_from_slice(row);
        }

        // α₂·β₂, then β₁-weighted copies of it finish the first block.
        let mut pairing = ring.zero();
        for (a, b) in other.alpha.iter().zip(&other.beta) {
            pairing = ring.add(&pairing, &ring.mul(a, b)?)?;
        }
        let mut beta = Vec::with_capacity(n);
        for b1 in &self.beta {
            beta.push(ring.mul(b1, &pairing)?);
        }
        beta.extend(other.beta.iter().cloned());

        Automaton::new(ring.clone(), self.alphabet.clone(), alpha, trans, beta)
    }

    /// Strict iteration: recognizes the plus `|A|⁺ = |A|·|A|*` of the
    /// behavior, by feeding final weight back to the initial states:
    /// `(α, A + β·α·A, β)`.
    pub fn plus(&self) -> Result<Self> {
        self.require_zero_alpha_beta("plus")?;
        let ring = &self.ring;
        let n = self.dim();

        // v_j = Σ_k α[k]·A[k][j]
        let mut v = vec![LinComb::zero(); n];
        for (k, ak) in self.alpha.iter().enumerate() {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = slot.add(ring, &self.trans[k][j].scale_left(ring, ak)?)?;
            }
        }
        let mut trans = self.trans.clone();
        for (i, bi) in self.beta.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                trans[i][j] = trans[i][j].add(ring, &vj.scale_left(ring, bi)?)?;
            }
        }
        Automaton::new(
            ring.clone(),
            self.alphabet.clone(),
            self.alpha.clone(),
            trans,
            self.beta.clone(),
        )
    }

    /// Left-scale the behavior by a constant: `(x·α, A, β)`.
    pub fn scale_left(&self, x: &S::Elem) -> Result<Self> {
        self.require_zero_alpha_beta("scale_left")?;
        let ring = &self.ring;
        let alpha = self
            .alpha
            .iter()
            .map(|a| ring.mul(x, a))
            .collect::<Result<Vec<_>>>()?;
        Automaton::new(
            ring.clone(),
            self.alphabet.clone(),
            alpha,
            self.trans.clone(),
            self.beta.clone(),
        )
    }

    /// Right-scale the behavior by a constant: `(α, A, β·x)`.
    pub fn scale_right(&self, x: &S::Elem) -> Result<Self> {
        self.require_zero_alpha_beta("scale_right")?;
        let ring = &self.ring;
        let beta = self
            .beta
            .iter()
            .map(|b| ring.mul(b, x))
            .collect::<Result<Vec<_>>>()?;
        Automaton::new(
            ring.clone(),
            self.alphabet.clone(),
            self.alpha.clone(),
            self.trans.clone(),
            beta,
        )
    }

    /// Add a constant to the behavior with one fresh state:
    /// `((x, α), [[0, 0], [0, A]], (1, β))`. The result generally has
    /// `α·β ≠ 0` and so does not carry the zero-pairing property.
    pub fn add_constant(&self, x: &S::Elem) -> Result<Self> {
        let ring = &self.ring;
        let n = self.dim();
        let mut alpha = Vec::with_capacity(n + 1);
        alpha.push(x.clone());
        alpha.extend(self.alpha.iter().cloned());
        let mut beta = Vec::with_capacity(n + 1);
        beta.push(ring.one());
        beta.extend(self.beta.iter().cloned());
        let mut trans = vec![vec![LinComb::zero(); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                trans[i + 1][j + 1] = self.trans[i][j].clone();
            }
        }
        Automaton::new(ring.clone(), self.alphabet.clone(), alpha, trans, beta)
    }
}

impl<S: ElemCodec> Automaton<S> {
    /// Serialize to the JSON interchange format:
    ///
    /// ```json
    /// {"semiring": "nat", "alphabet": ["x","y"], "dim": 2,
    ///  "alpha": [1,0], "beta": [0,1],
    ///  "transitions": [{"from":0,"to":1,"letter":"x","coeff":1}]}
    /// ```
    ///
    /// State indices are 0-based; absent transitions are zero. Transitions
    /// are emitted sorted by `(from, to, letter)`.
    pub fn to_json(&self) -> Value {
        let mut transitions = Vec::new();
        for (i, row) in self.trans.iter().enumerate() {
            for (j, lc) in row.iter().enumerate() {
                for (l, c) in lc.terms() {
                    transitions.push(json!({
                        "from": i,
                        "to": j,
                        "letter": self.alphabet.symbol(l).to_string(),
                        "coeff": self.ring.elem_to_json(c),
                    }));
                }
            }
        }
        json!({
            "semiring": self.ring.name(),
            "alphabet": self
                .alphabet
                .symbols()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            "dim": self.dim(),
            "alpha": self.alpha.iter().map(|e| self.ring.elem_to_json(e)).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(|e| self.ring.elem_to_json(e)).collect::<Vec<_>>(),
            "transitions": transitions,
        })
    }

    /// Deserialize from the JSON interchange format; the `semiring` field
    /// must match `ring.name()`. Coefficients of repeated
    /// `(from, to, letter)` triples are added.
    pub fn from_json(ring: S, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidAutomaton("expected a JSON object".into()))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| Error::InvalidAutomaton(format!("missing field {name:?}")))
        };

        let sr_name = field("semiring")?
            .as_str()
            .ok_or_else(|| Error::InvalidAutomaton("\"semiring\" must be a string".into()))?;
        if sr_name != ring.name() {
            return Err(Error::InvalidAutomaton(format!(
                "semiring {sr_name:?} does not match expected {:?}",
                ring.name()
            )));
        }

        let alphabet_items = field("alphabet")?
            .as_array()
            .ok_or_else(|| Error::InvalidAutomaton("\"alphabet\" must be an array".into()))?;
        let mut letters = String::new();
        for item in alphabet_items {
            let s = item.as_str().ok_or_else(|| {
                Error::InvalidAutomaton("alphabet entries must be strings".into())
            })?;
            if s.chars().count() != 1 {
                return Err(Error::InvalidAutomaton(format!(
                    "alphabet entry {s:?} is not a single character"
                )));
            }
            letters.push_str(s);
        }
        let alphabet =
            Alphabet::new(&letters).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;

        let dim = field("dim")?
            .as_u64()
            .ok_or_else(|| Error::InvalidAutomaton("\"dim\" must be a natural number".into()))?
            as usize;

        let decode_vec = |v: &Value, name: &str| -> Result<Vec<S::Elem>> {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::InvalidAutomaton(format!("{name:?} must be an array")))?;
            if arr.len() != dim {
                return Err(Error::SizeMismatch {
                    expected: dim,
                    got: arr.len(),
                });
            }
            arr.iter().map(|e| ring.elem_from_json(e)).collect()
        };
        let alpha = decode_vec(field("alpha")?, "alpha")?;
        let beta = decode_vec(field("beta")?, "beta")?;

        let mut trans = vec![vec![LinComb::zero(); dim]; dim];
        let transitions = field("transitions")?
            .as_array()
            .ok_or_else(|| Error::InvalidAutomaton("\"transitions\" must be an array".into()))?;
        for t in transitions {
            let tobj = t.as_object().ok_or_else(|| {
                Error::InvalidAutomaton("transitions must be objects".into())
            })?;
            let index = |name: &str| -> Result<usize> {
                let i = tobj
                    .get(name)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| {
                        Error::InvalidAutomaton(format!(
                            "transition field {name:?} must be a natural number"
                        ))
                    })? as usize;
                if i >= dim {
                    return Err(Error::InvalidAutomaton(format!(
                        "transition {name:?} index {i} outside 0..{dim}"
                    )));
                }
                Ok(i)
            };
            let from = index("from")?;
            let to = index("to")?;
            let letter_str = tobj
                .get("letter")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidAutomaton("transition \"letter\" must be a string".into()))?;
            let letter_char = {
                let mut chars = letter_str.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => {
                        return Err(Error::InvalidAutomaton(format!(
                            "transition letter {letter_str:?} is not a single character"
                        )))
                    }
                }
            };
            let letter = alphabet
                .index_of(letter_char)
                .ok_or(Error::UnknownLetter(letter_char))?;
            let coeff = ring.elem_from_json(tobj.get("coeff").ok_or_else(|| {
                Error::InvalidAutomaton("transition is missing \"coeff\"".into())
            })?)?;
            let single = LinComb::single(&ring, letter, coeff);
            trans[from][to] = trans[from][to].add(&ring, &single)?;
        }

        Automaton::new(ring, alphabet, alpha, trans, beta)
    }
}
