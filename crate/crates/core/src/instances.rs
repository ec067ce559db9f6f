//! The base semiring instances: the booleans, the naturals, the naturals
//! extended with infinity, and 2x2 matrices over the naturals.
//!
//! | name      | carrier            | star domain  | total? |
//! |-----------|--------------------|--------------|--------|
//! | `bool`    | `bool`             | everything   | yes    |
//! | `nat`     | `u64` (checked)    | `{0}`        | no     |
//! | `natinf`  | `u64` or infinity  | everything   | yes    |
//! | `natmat2` | 2x2 over `nat`     | zero matrix  | no     |

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{ElemCodec, Semiring};

/// The boolean semiring: `+` is or, `·` is and, star is constantly `1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Booleans;

impl Semiring for Booleans {
    type Elem = bool;

    fn name(&self) -> String {
        "bool".into()
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> Result<bool> {
        Ok(*a || *b)
    }

    fn mul(&self, a: &bool, b: &bool) -> Result<bool> {
        Ok(*a && *b)
    }

    fn in_star_domain(&self, _a: &bool) -> bool {
        true
    }

    fn star(&self, _a: &bool) -> Result<bool> {
        Ok(true)
    }

    fn from_nat(&self, n: u64) -> Result<bool> {
        Ok(n > 0)
    }

    fn star_is_total(&self) -> bool {
        true
    }

    fn format_elem(&self, a: &bool) -> String {
        if *a { "1".into() } else { "0".into() }
    }
}

impl ElemCodec for Booleans {
    fn elem_to_json(&self, a: &bool) -> Value {
        json!(a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<bool> {
        v.as_bool()
            .ok_or_else(|| Error::InvalidAutomaton(format!("expected a boolean, got {v}")))
    }
}

/// The semiring of natural numbers backed by `u64`.
///
/// Arithmetic is checked: leaving the `u64` range is reported as
/// [`Error::Overflow`], never wrapped. Only `0` is starrable.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = u64;

    fn name(&self) -> String {
        "nat".into()
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> Result<u64> {
        a.checked_add(*b).ok_or_else(|| Error::Overflow(self.name()))
    }

    fn mul(&self, a: &u64, b: &u64) -> Result<u64> {
        a.checked_mul(*b).ok_or_else(|| Error::Overflow(self.name()))
    }

    fn in_star_domain(&self, a: &u64) -> bool {
        *a == 0
    }

    fn star(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            Ok(1)
        } else {
            Err(Error::StarUndefined {
                ring: self.name(),
                value: a.to_string(),
            })
        }
    }

    fn from_nat(&self, n: u64) -> Result<u64> {
        Ok(n)
    }

    fn direct_sum_property(&self) -> bool {
        true
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl ElemCodec for Naturals {
    fn elem_to_json(&self, a: &u64) -> Value {
        json!(a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        v.as_u64()
            .ok_or_else(|| Error::InvalidAutomaton(format!("expected a natural number, got {v}")))
    }
}

/// A natural number or infinity: the carrier of [`ExtendedNaturals`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NatOrInf {
    Fin(u64),
    Inf,
}

/// The naturals extended with an absorbing infinity.
///
/// Addition and multiplication extend the natural operations with
/// `∞ + a = ∞`, `∞ · a = ∞` for `a ≠ 0`, and `∞ · 0 = 0`. The star is
/// total and picks the least solution of `x = a·x + 1` in the natural
/// order: `0* = 1` and `a* = ∞` for every `a ≥ 1` (including `∞`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ExtendedNaturals;

impl Semiring for ExtendedNaturals {
    type Elem = NatOrInf;

    fn name(&self) -> String {
        "natinf".into()
    }

    fn zero(&self) -> NatOrInf {
        NatOrInf::Fin(0)
    }

    fn one(&self) -> NatOrInf {
        NatOrInf::Fin(1)
    }

    fn add(&self, a: &NatOrInf, b: &NatOrInf) -> Result<NatOrInf> {
        match (a, b) {
            (NatOrInf::Inf, _) | (_, NatOrInf::Inf) => Ok(NatOrInf::Inf),
            (NatOrInf::Fin(x), NatOrInf::Fin(y)) => x
                .checked_add(*y)
                .map(NatOrInf::Fin)
                .ok_or_else(|| Error::Overflow(self.name())),
        }
    }

    fn mul(&self, a: &NatOrInf, b: &NatOrInf) -> Result<NatOrInf> {
        match (a, b) {
            (NatOrInf::Fin(0), _) | (_, NatOrInf::Fin(0)) => Ok(NatOrInf::Fin(0)),
            (NatOrInf::Inf, _) | (_, NatOrInf::Inf) => Ok(NatOrInf::Inf),
            (NatOrInf::Fin(x), NatOrInf::Fin(y)) => x
                .checked_mul(*y)
                .map(NatOrInf::Fin)
                .ok_or_else(|| Error::Overflow(self.name())),
        }
    }

    fn in_star_domain(&self, _a: &NatOrInf) -> bool {
        true
    }

    fn star(&self, a: &NatOrInf) -> Result<NatOrInf> {
        Ok(match a {
            NatOrInf::Fin(0) => NatOrInf::Fin(1),
            _ => NatOrInf::Inf,
        })
    }

    fn from_nat(&self, n: u64) -> Result<NatOrInf> {
        Ok(NatOrInf::Fin(n))
    }

    fn star_is_total(&self) -> bool {
        true
    }

    fn format_elem(&self, a: &NatOrInf) -> String {
        match a {
            NatOrInf::Fin(x) => x.to_string(),
            NatOrInf::Inf => "inf".into(),
        }
    }
}

impl ElemCodec for ExtendedNaturals {
    fn elem_to_json(&self, a: &NatOrInf) -> Value {
        match a {
            NatOrInf::Fin(x) => json!(x),
            NatOrInf::Inf => json!("inf"),
        }
    }

    fn elem_from_json(&self, v: &Value) -> Result<NatOrInf> {
        if let Some(n) = v.as_u64() {
            return Ok(NatOrInf::Fin(n));
        }
        if v.as_str() == Some("inf") {
            return Ok(NatOrInf::Inf);
        }
        Err(Error::InvalidAutomaton(format!(
            "expected a natural number or \"inf\", got {v}"
        )))
    }
}

/// 2x2 matrices over the checked naturals.
///
/// Noncommutative, and with nonzero nilpotents (for example
/// `[[0,1],[0,0]]`), which makes it the workhorse for exercising
/// cycle-free stars over a noncommutative coefficient semiring. Only the
/// zero matrix is starrable; its star is the identity matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct NatMatrix2;

impl NatMatrix2 {
    /// The nilpotent matrix `[[0,1],[0,0]]`.
    pub fn nilpotent(&self) -> Matrix<u64> {
        Matrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap()
    }
}

impl Semiring for NatMatrix2 {
    type Elem = Matrix<u64>;

    fn name(&self) -> String {
        "natmat2".into()
    }

    fn zero(&self) -> Matrix<u64> {
        Matrix::zero(&Naturals, 2, 2)
    }

    fn one(&self) -> Matrix<u64> {
        Matrix::identity(&Naturals, 2)
    }

    fn add(&self, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<Matrix<u64>> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        a.add(&Naturals, b)
    }

    fn mul(&self, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<Matrix<u64>> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        a.mul(&Naturals, b)
    }

    fn in_star_domain(&self, a: &Matrix<u64>) -> bool {
        *a == self.zero()
    }

    fn star(&self, a: &Matrix<u64>) -> Result<Matrix<u64>> {
        if self.in_star_domain(a) {
            Ok(self.one())
        } else {
            Err(Error::StarUndefined {
                ring: self.name(),
                value: self.format_elem(a),
            })
        }
    }

    fn direct_sum_property(&self) -> bool {
        true
    }

    fn format_elem(&self, a: &Matrix<u64>) -> String {
        format!(
            "[[{},{}],[{},{}]]",
            a.get(0, 0),
            a.get(0, 1),
            a.get(1, 0),
            a.get(1, 1)
        )
    }
}

impl NatMatrix2 {
    fn check_shape(&self, a: &Matrix<u64>) -> Result<()> {
        if a.rows() == 2 && a.cols() == 2 {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op: "natmat2",
                lhs: (a.rows(), a.cols()),
                rhs: (2, 2),
            })
        }
    }
}

impl ElemCodec for NatMatrix2 {
    fn elem_to_json(&self, a: &Matrix<u64>) -> Value {
        json!([
            [a.get(0, 0), a.get(0, 1)],
            [a.get(1, 0), a.get(1, 1)]
        ])
    }

    fn elem_from_json(&self, v: &Value) -> Result<Matrix<u64>> {
        let bad = || Error::InvalidAutomaton(format!("expected a 2x2 matrix of naturals, got {v}"));
        let rows = v.as_array().ok_or_else(bad)?;
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut out = Vec::with_capacity(2);
        for row in rows {
            let cells = row.as_array().ok_or_else(bad)?;
            if cells.len() != 2 {
                return Err(bad());
            }
            out.push(
                cells
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(bad))
                    .collect::<Result<Vec<u64>>>()?,
            );
        }
        Ok(Matrix::from_rows(out).expect("2x2 shape checked above"))
    }
}
