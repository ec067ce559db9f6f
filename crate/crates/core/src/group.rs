//! Finite groups given by Cayley tables, and the group matrices used by the
//! identity suites.
//!
//! A group of order `n` is stored 0-based with element 0 the identity;
//! the JSON interchange format is 1-based with element 1 the identity.
//! [`FiniteGroup::new`] checks the full group axioms, so every constructed
//! value really is a group; [`check_table`] exposes the same diagnostics on
//! raw tables, which is what the negative tests probe.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;

/// A finite group presented by its Cayley table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// `table[i][j]` is the product `i∘j`, 0-based.
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// Exhaustively check a candidate Cayley table (0-based, element 0 expected
/// to be the identity) and return human-readable descriptions of every
/// violated group axiom: well-formed shape, identity, associativity,
/// inverses, and row/column bijectivity.
pub fn check_table(table: &[Vec<usize>]) -> Vec<String> {
    let n = table.len();
    let mut problems = Vec::new();
    if n == 0 {
        problems.push("table is empty".to_string());
        return problems;
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            problems.push(format!("row {i} has {} entries, expected {n}", row.len()));
            return problems;
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                problems.push(format!("entry ({i},{j}) is {v}, outside 0..{n}"));
                return problems;
            }
        }
    }
    for (i, row) in table.iter().enumerate() {
        let top = table[0][i];
        if top != i {
            problems.push(format!("0 is not a left identity: 0∘{i} = {top}"));
        }
        if row[0] != i {
            problems.push(format!("0 is not a right identity: {i}∘0 = {}", row[0]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = table[table[i][j]][k];
                let right = table[i][table[j][k]];
                if left != right {
                    problems.push(format!(
                        "not associative: ({i}∘{j})∘{k} = {left} but {i}∘({j}∘{k}) = {right}"
                    ));
                }
            }
        }
    }
    for (i, row) in table.iter().enumerate() {
        let has_inverse = (0..n).any(|j| row[j] == 0 && table[j][i] == 0);
        if !has_inverse {
            problems.push(format!("{i} has no two-sided inverse"));
        }
    }
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            row_seen[table[i][j]] = true;
            col_seen[table[j][i]] = true;
        }
        if row_seen.iter().any(|s| !s) {
            problems.push(format!("row {i} is not a permutation"));
        }
        if col_seen.iter().any(|s| !s) {
            problems.push(format!("column {i} is not a permutation"));
        }
    }
    problems
}

impl FiniteGroup {
    /// Build a group from a 0-based Cayley table with element 0 the
    /// identity, verifying all group axioms.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let problems = check_table(&table);
        if let Some(first) = problems.first() {
            return Err(Error::InvalidGroup(first.clone()));
        }
        let n = table.len();
        let inv = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| table[i][j] == 0)
                    .expect("inverses exist after check_table")
            })
            .collect();
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            table,
            inv,
        })
    }

    /// The cyclic group of order `n`, with `i∘j = (i+j) mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::new(format!("Z{n}"), table).expect("cyclic tables satisfy the axioms")
    }

    /// The symmetric group on three points, with a fixed numbering:
    /// 0 the identity, 1 and 2 the three-cycles, 3–5 the transpositions.
    /// `i∘j` means "apply `i`, then apply `j`".
    pub fn symmetric3() -> Self {
        let table = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ];
        FiniteGroup::new("S3", table).expect("the S3 table satisfies the axioms")
    }

    /// The groups the built-in identity suite runs over: Z1–Z5 and S3.
    pub fn builtin_suite() -> Vec<FiniteGroup> {
        let mut groups: Vec<FiniteGroup> = (1..=5).map(FiniteGroup::cyclic).collect();
        groups.push(FiniteGroup::symmetric3());
        groups
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Serialize as `{"name", "order", "table"}` with 1-based entries.
    pub fn to_json(&self) -> Value {
        let table: Vec<Vec<u64>> = self
            .table
            .iter()
            .map(|row| row.iter().map(|&v| v as u64 + 1).collect())
            .collect();
        json!({"name": self.name, "order": self.order, "table": table})
    }

    /// Deserialize from `{"order", "table"}` (1-based, element 1 the
    /// identity); `"name"` is optional.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidGroup("expected a JSON object".into()))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidGroup("\"order\" must be a natural number".into()))?
            as usize;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("group")
            .to_string();
        let rows = obj
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGroup("\"table\" must be an array".into()))?;
        if rows.len() != order {
            return Err(Error::InvalidGroup(format!(
                "table has {} rows, expected {order}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(order);
        for row in rows {
            let entries = row
                .as_array()
                .ok_or_else(|| Error::InvalidGroup("table rows must be arrays".into()))?;
            let mut out = Vec::with_capacity(order);
            for e in entries {
                let v = e.as_u64().ok_or_else(|| {
                    Error::InvalidGroup("table entries must be natural numbers".into())
                })? as usize;
                if v < 1 || v > order {
                    return Err(Error::InvalidGroup(format!(
                        "table entry {v} outside 1..={order}"
                    )));
                }
                out.push(v - 1);
            }
            if out.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "table row has {} entries, expected {order}",
                    out.len()
                )));
            }
            table.push(out);
        }
        FiniteGroup::new(name, table)
    }
}

/// The group matrix of a coefficient vector: entry `(i,j)` is
/// `a[i⁻¹∘j]`, so row 0 lists the coefficients in order and every row and
/// column is a permutation of them.
pub fn build_group_matrix<S: Semiring>(
    _ring: &S,
    group: &FiniteGroup,
    coeffs: &[S::Elem],
) -> Result<Matrix<S::Elem>> {
    if coeffs.len() != group.order() {
        return Err(Error::SizeMismatch {
            expected: group.order(),
            got: coeffs.len(),
        });
    }
    let n = group.order();
    Ok(Matrix::from_fn(n, n, |i, j| {
        coeffs[group.mul(group.inv(i), j)].clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Naturals;

    #[test]
    fn builtin_tables_satisfy_the_axioms() {
        for g in FiniteGroup::builtin_suite() {
            // `new` already checked; exercise the diagnostics path too.
            let violations = check_table(
                &(0..g.order())
                    .map(|i| (0..g.order()).map(|j| g.mul(i, j)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            );
            assert!(violations.is_empty(), "{}: {violations:?}", g.name());
        }
    }

    #[test]
    fn symmetric3_matches_permutation_composition() {
        // 0..6 name the permutations below; the hard-coded table must agree
        // with "apply i, then apply j" on three points.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let g = FiniteGroup::symmetric3();
        for i in 0..6 {
            for j in 0..6 {
                let composed = [0, 1, 2].map(|x| perms[j][perms[i][x]]);
                let index = perms
                    .iter()
                    .position(|p| *p == composed)
                    .expect("composition of permutations is a permutation");
                assert_eq!(g.mul(i, j), index, "at ({i},{j})");
            }
        }
        assert_ne!(g.mul(1, 3), g.mul(3, 1), "S3 should be noncommutative");
    }

    #[test]
    fn inverses_are_two_sided() {
        for g in FiniteGroup::builtin_suite() {
            for i in 0..g.order() {
                assert_eq!(g.mul(i, g.inv(i)), 0);
                assert_eq!(g.mul(g.inv(i), i), 0);
            }
        }
    }

    #[test]
    fn group_matrices_are_frozen_for_small_cyclic_groups() {
        let ring = Naturals;
        let z1 = build_group_matrix(&ring, &FiniteGroup::cyclic(1), &[7]).unwrap();
        assert_eq!(z1, Matrix::from_rows(vec![vec![7]]).unwrap());

        let z2 = build_group_matrix(&ring, &FiniteGroup::cyclic(2), &[10, 20]).unwrap();
        assert_eq!(
            z2,
            Matrix::from_rows(vec![vec![10, 20], vec![20, 10]]).unwrap()
        );

        let z3 = build_group_matrix(&ring, &FiniteGroup::cyclic(3), &[1, 2, 3]).unwrap();
        assert_eq!(
            z3,
            Matrix::from_rows(vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]]).unwrap()
        );
    }

    #[test]
    fn group_matrix_rows_and_columns_permute_the_coefficients() {
        let ring = Naturals;
        let coeffs = [1u64, 2, 4, 8, 16, 32];
        for g in FiniteGroup::builtin_suite() {
            let n = g.order();
            let m = build_group_matrix(&ring, &g, &coeffs[..n]).unwrap();
            let expected: u64 = coeffs[..n].iter().sum();
            for i in 0..n {
                let row: u64 = (0..n).map(|j| *m.get(i, j)).sum();
                let col: u64 = (0..n).map(|j| *m.get(j, i)).sum();
                assert_eq!(row, expected);
                assert_eq!(col, expected);
            }
            // Row 0 lists the coefficients in order.
            for (j, c) in coeffs[..n].iter().enumerate() {
                assert_eq!(m.get(0, j), c);
            }
        }
    }

    #[test]
    fn check_table_reports_specific_violations() {
        // Shifted identity: element 0 is no longer neutral.
        let shifted = vec![vec![1, 0], vec![0, 1]];
        let problems = check_table(&shifted);
        assert!(problems.iter().any(|p| p.contains("identity")), "{problems:?}");

        // A Latin square with identity that is not associative (a loop of
        // order 5, which cannot be a group since the only group of order 5
        // is cyclic): (1∘1)∘2 = 0∘2 = 2 but 1∘(1∘2) = 1∘3 = 4.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let problems = check_table(&loop5);
        assert!(
            problems.iter().any(|p| p.contains("not associative")),
            "{problems:?}"
        );
        // Rows, columns, and the identity element are all still fine.
        assert!(
            !problems
                .iter()
                .any(|p| p.contains("permutation") || p.contains("identity")),
            "{problems:?}"
        );

        let ragged = vec![vec![0, 1], vec![0]];
        assert!(!check_table(&ragged).is_empty());
        let out_of_range = vec![vec![0, 1], vec![1, 7]];
        assert!(!check_table(&out_of_range).is_empty());
    }

    #[test]
    fn json_round_trip_and_validation() {
        for g in FiniteGroup::builtin_suite() {
            let v = g.to_json();
            let back = FiniteGroup::from_json(&v).unwrap();
            assert_eq!(back, g);
        }
        // 1-based identity convention: Z2 as {"order":2,"table":[[1,2],[2,1]]}.
        let z2 = FiniteGroup::from_json(&json!({
            "order": 2,
            "table": [[1, 2], [2, 1]]
        }))
        .unwrap();
        assert_eq!(z2.mul(1, 1), 0);

        let bad = [
            json!({"order": 2}),
            json!({"order": 2, "table": [[1, 2]]}),
            json!({"order": 2, "table": [[0, 1], [1, 0]]}),
            json!({"order": 2, "table": [[2, 1], [1, 2]]}),
            json!({"order": 1, "table": [["x"]]}),
        ];
        for case in &bad {
            assert!(
                matches!(FiniteGroup::from_json(case), Err(Error::InvalidGroup(_))),
                "accepted {case}"
            );
        }
    }
}
