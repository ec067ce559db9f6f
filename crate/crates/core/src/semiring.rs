//! The semiring abstraction: a semiring with a *partial* star operation
//! defined on an ideal of the carrier.
//!
//! Instances are passed around as values (dictionaries). This lets carriers
//! that need context — such as truncated power series, which carry an
//! alphabet and a truncation length — share all of the generic matrix and
//! automaton code with plain carriers like the booleans or the naturals.

use std::fmt::Debug;

use crate::error::Result;

/// A semiring `(S, +, ·, 0, 1)` together with a star operation defined on a
/// subset `D(S)` of the carrier.
///
/// The star domain is expected to be an *ideal*: it contains `0`, is closed
/// under `+`, and absorbs multiplication by arbitrary elements on either
/// side. On that domain the star must satisfy the sum-star and product-star
/// identities
///
/// ```text
/// (a + b)* = a*·(b·a*)*          (a b)* = 1 + a·(b a)*·b
/// ```
///
/// and their consequences (`a·a* + 1 = a*`, `0* = 1`, `(a b)*·a = a·(b a)*`,
/// `a·a* = a*·a`, `(a + b)* = (a*·b)*·a*`). [`axiom_check`] probes all of
/// this on caller-supplied samples.
///
/// Addition and multiplication are fallible because fixed-width carriers
/// (the naturals backed by `u64`) report [`Overflow`](crate::Error::Overflow)
/// instead of wrapping.
pub trait Semiring: Clone + PartialEq + Debug {
    /// Carrier type. Equality of elements is structural and exact; every
    /// instance keeps its elements in a canonical form that makes this
    /// coincide with semantic equality.
    type Elem: Clone + PartialEq + Debug;

    /// Short identifier used in diagnostics and serialized data.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// Whether `a` lies in the star domain `D(S)`.
    fn in_star_domain(&self, a: &Self::Elem) -> bool;

    /// The star of `a`; defined exactly when [`Self::in_star_domain`] holds.
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// The strict iteration `a⁺ = a·a*` (equal to `a*·a` on the star
    /// domain).
    fn plus(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let s = self.star(a)?;
        self.mul(a, &s)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Image of a natural number under the unique semiring morphism from
    /// the naturals, i.e. the `n`-fold sum `1 + ⋯ + 1`.
    ///
    /// The default computes it by binary doubling; instances with a direct
    /// representation override it.
    #[allow(clippy::wrong_self_convention)] // dictionary-passing style: every method takes the instance
    fn from_nat(&self, n: u64) -> Result<Self::Elem> {
        let mut acc = self.zero();
        let mut power = self.one(); // 2^i summands folded together
        let mut rest = n;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = self.add(&acc, &power)?;
            }
            rest >>= 1;
            if rest > 0 {
                power = self.add(&power, &power)?;
            }
        }
        Ok(acc)
    }

    /// Whether the star domain is the whole carrier.
    fn star_is_total(&self) -> bool {
        false
    }

    /// Whether the carrier splits as a direct sum of its designated
    /// constant part and the star domain — that is, whether `x + a ∈ D(S)`
    /// with `x` a constant and `a ∈ D(S)` forces `x = 0`.
    fn direct_sum_property(&self) -> bool {
        false
    }

    /// Render an element for diagnostics and listings.
    fn format_elem(&self, a: &Self::Elem) -> String;
}

/// JSON encoding of carrier elements, implemented by the base instances so
/// automata over them can be serialized.
pub trait ElemCodec: Semiring {
    fn elem_to_json(&self, a: &Self::Elem) -> serde_json::Value;

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;
}

/// The dual of a semiring: same carrier, same addition, multiplication
/// reversed. Star and its domain are unchanged.
///
/// Matrix algebra over `Dual<S>` is how the dual matrix star is computed;
/// see [`crate::matrix::Matrix::dual_star`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dual<S>(pub S);

impl<S: Semiring> Semiring for Dual<S> {
    type Elem = S::Elem;

    fn name(&self) -> String {
        format!("dual({})", self.0.name())
    }

    fn zero(&self) -> Self::Elem {
        self.0.zero()
    }

    fn one(&self) -> Self::Elem {
        self.0.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.0.add(a, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.0.mul(b, a)
    }

    fn in_star_domain(&self, a: &Self::Elem) -> bool {
        self.0.in_star_domain(a)
    }

    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.0.star(a)
    }

    fn from_nat(&self, n: u64) -> Result<Self::Elem> {
        self.0.from_nat(n)
    }

    fn star_is_total(&self) -> bool {
        self.0.star_is_total()
    }

    fn direct_sum_property(&self) -> bool {
        self.0.direct_sum_property()
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        self.0.format_elem(a)
    }
}

/// One violated law found by [`axiom_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    /// Name of the violated law, e.g. `"distributivity (left)"`.
    pub law: &'static str,
    /// The witnessing elements, rendered.
    pub witness: String,
}

/// Outcome of probing the semiring and star-domain laws on samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub ring: String,
    /// Number of individual law instances evaluated.
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Probe the semiring axioms, the ideal laws of the star domain, and the
/// basic star laws on the given samples.
///
/// Violations are collected in the report, not raised as errors; the
/// `Result` only carries arithmetic failures such as overflow.
pub fn axiom_check<S: Semiring>(ring: &S, samples: &[S::Elem]) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        ring: ring.name(),
        checked: 0,
        violations: Vec::new(),
    };
    let zero = ring.zero();
    let one = ring.one();

    let record = |report: &mut AxiomReport, law, elems: &[&S::Elem], ok: bool| {
        report.checked += 1;
        if !ok {
            let witness = elems
                .iter()
                .map(|e| ring.format_elem(e))
                .collect::<Vec<_>>()
                .join(", ");
            report.violations.push(AxiomViolation { law, witness });
        }
    };

    for a in samples {
        record(
            &mut report,
            "additive identity",
            &[a],
            ring.add(a, &zero)? == *a && ring.add(&zero, a)? == *a,
        );
        record(
            &mut report,
            "multiplicative identity",
            &[a],
            ring.mul(a, &one)? == *a && ring.mul(&one, a)? == *a,
        );
        record(
            &mut report,
            "zero is absorbing",
            &[a],
            ring.is_zero(&ring.mul(a, &zero)?) && ring.is_zero(&ring.mul(&zero, a)?),
        );
    }

    for a in samples {
        for b in samples {
            record(
                &mut report,
                "addition commutes",
                &[a, b],
                ring.add(a, b)? == ring.add(b, a)?,
            );
            for c in samples {
                record(
                    &mut report,
                    "addition associates",
                    &[a, b, c],
                    ring.add(&ring.add(a, b)?, c)? == ring.add(a, &ring.add(b, c)?)?,
                );
                record(
                    &mut report,
                    "multiplication associates",
                    &[a, b, c],
                    ring.mul(&ring.mul(a, b)?, c)? == ring.mul(a, &ring.mul(b, c)?)?,
                );
                record(
                    &mut report,
                    "distributivity (left)",
                    &[a, b, c],
                    ring.mul(a, &ring.add(b, c)?)? == ring.add(&ring.mul(a, b)?, &ring.mul(a, c)?)?,
                );
                record(
                    &mut report,
                    "distributivity (right)",
                    &[a, b, c],
                    ring.mul(&ring.add(a, b)?, c)? == ring.add(&ring.mul(a, c)?, &ring.mul(b, c)?)?,
                );
            }
        }
    }

    // Ideal laws of the star domain.
    record(
        &mut report,
        "star domain contains zero",
        &[],
        ring.in_star_domain(&zero),
    );
    record(
        &mut report,
        "star of zero is one",
        &[],
        ring.star(&zero)? == one,
    );
    for a in samples {
        record(
            &mut report,
            "star defined exactly on its domain",
            &[a],
            ring.star(a).is_ok() == ring.in_star_domain(a),
        );
        for b in samples {
            if ring.in_star_domain(a) {
                record(
                    &mut report,
                    "star domain absorbs products",
                    &[a, b],
                    ring.in_star_domain(&ring.mul(a, b)?)
                        && ring.in_star_domain(&ring.mul(b, a)?),
                );
                if ring.in_star_domain(b) {
                    record(
                        &mut report,
                        "star domain is closed under addition",
                        &[a, b],
                        ring.in_star_domain(&ring.add(a, b)?),
                    );
                }
            }
        }
    }

    // Basic star laws on starrable samples.
    for a in samples {
        if !ring.in_star_domain(a) {
            continue;
        }
        let s = ring.star(a)?;
        record(
            &mut report,
            "a·a* + 1 = a*",
            &[a],
            ring.add(&ring.mul(a, &s)?, &one)? == s,
        );
        record(
            &mut report,
            "a*·a + 1 = a*",
            &[a],
            ring.add(&ring.mul(&s, a)?, &one)? == s,
        );
        record(
            &mut report,
            "a·a* = a*·a",
            &[a],
            ring.mul(a, &s)? == ring.mul(&s, a)?,
        );
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::instances::{Booleans, ExtendedNaturals, NatOrInf, Naturals};

    #[test]
    fn dual_reverses_products() {
        // Check on a noncommutative carrier: 2x2 matrices over the naturals.
        use crate::instances::NatMatrix2;
        use crate::matrix::Matrix;
        let ring = NatMatrix2;
        let dual = Dual(ring);
        let a = Matrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap();
        let b = Matrix::from_rows(vec![vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(dual.mul(&a, &b).unwrap(), ring.mul(&b, &a).unwrap());
        assert_ne!(ring.mul(&a, &b).unwrap(), ring.mul(&b, &a).unwrap());
    }

    #[test]
    fn default_from_nat_matches_repeated_addition() {
        let ring = ExtendedNaturals;
        let mut acc = ring.zero();
        for n in 0..20u64 {
            assert_eq!(ring.from_nat(n).unwrap(), acc);
            acc = ring.add(&acc, &ring.one()).unwrap();
        }
        assert_eq!(ring.from_nat(0).unwrap(), NatOrInf::Fin(0));
    }

    #[test]
    fn axiom_check_passes_for_booleans_and_naturals() {
        let b = axiom_check(&Booleans, &[false, true]).unwrap();
        assert!(b.passed(), "violations: {:?}", b.violations);
        let n = axiom_check(&Naturals, &[0, 1, 2, 3]).unwrap();
        assert!(n.passed(), "violations: {:?}", n.violations);
        assert!(n.checked > 100);
    }

    /// The naturals with multiplication replaced by `max`: distributivity
    /// of `max` over `+` fails, and the checker must find a witness.
    #[derive(Clone, PartialEq, Debug)]
    struct NatWithMax;

    impl Semiring for NatWithMax {
        type Elem = u64;

        fn name(&self) -> String {
            "nat-max".into()
        }

        fn zero(&self) -> u64 {
            0
        }

        fn one(&self) -> u64 {
            1
        }

        fn add(&self, a: &u64, b: &u64) -> Result<u64> {
            Ok(a + b)
        }

        fn mul(&self, a: &u64, b: &u64) -> Result<u64> {
            Ok((*a).max(*b))
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

        fn format_elem(&self, a: &u64) -> String {
            a.to_string()
        }
    }

    #[test]
    fn axiom_check_reports_broken_distributivity() {
        // Independent brute-force scan for a witness first: max does not
        // distribute over + already on {0,1,2,3}.
        let mut brute_force_witness = None;
        'outer: for a in 0u64..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if a.max(b + c) != a.max(b) + a.max(c) {
                        brute_force_witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert!(brute_force_witness.is_some());

        let report = axiom_check(&NatWithMax, &[0, 1, 2, 3]).unwrap();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law.starts_with("distributivity")));
        // `max(1, 1) = 1` but the identity law needs `max(a, 1) = a`.
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "multiplicative identity"));
    }
}
