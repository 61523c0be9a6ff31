//! Finite monoid multiplication tables.
//!
//! A validated table is the input to the delooping construction and the
//! parameter of the writer monad. Validation reports the first broken axiom
//! with a concrete witness, in canonical (lexicographic) order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("element `{0}` appears more than once")]
    DuplicateElement(String),
    #[error("unit `{0}` is not an element of the table")]
    MissingUnit(String),
    #[error("product `{0}`*`{1}` is missing from the table")]
    MissingProduct(String, String),
    #[error("product `{0}`*`{1}` = `{2}` is not an element")]
    UnknownProduct(String, String, String),
    #[error("unit law fails at `{0}`")]
    UnitLaw(String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(String, String, String),
}

/// A finite monoid given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidTable {
    elements: Vec<String>,
    unit: String,
    /// `table[a][b]` is the product a*b.
    table: BTreeMap<String, BTreeMap<String, String>>,
}

impl MonoidTable {
    /// Validates the table: distinct elements, total multiplication,
    /// two-sided unit, associativity.
    pub fn new(
        elements: Vec<String>,
        unit: String,
        table: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self, MonoidError> {
        let mut sorted = elements.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(MonoidError::DuplicateElement(w[0].clone()));
            }
        }
        let m = MonoidTable {
            elements: sorted,
            unit,
            table,
        };
        if !m.elements.contains(&m.unit) {
            return Err(MonoidError::MissingUnit(m.unit.clone()));
        }
        for a in &m.elements {
            for b in &m.elements {
                match m.table.get(a).and_then(|r| r.get(b)) {
                    None => return Err(MonoidError::MissingProduct(a.clone(), b.clone())),
                    Some(c) if !m.elements.contains(c) => {
                        return Err(MonoidError::UnknownProduct(a.clone(), b.clone(), c.clone()))
                    }
                    Some(_) => {}
                }
            }
        }
        for a in &m.elements {
            if m.mul(&m.unit, a) != a || m.mul(a, &m.unit) != a {
                return Err(MonoidError::UnitLaw(a.clone()));
            }
        }
        for a in &m.elements {
            for b in &m.elements {
                for c in &m.elements {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(MonoidError::Associativity(a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a table without checking the axioms. Used to produce forced
    /// law-failure corpora; everything downstream must then detect the break.
    pub fn new_unchecked(
        elements: Vec<String>,
        unit: String,
        table: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Self {
        let mut sorted = elements;
        sorted.sort();
        MonoidTable {
            elements: sorted,
            unit,
            table,
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn mul<'a>(&'a self, a: &str, b: &str) -> &'a str {
        self.table
            .get(a)
            .and_then(|r| r.get(b))
            .map(|s| s.as_str())
            .unwrap_or(&self.unit)
    }

    /// Two-sided inverse of `a`, if the table has one.
    pub fn inverse(&self, a: &str) -> Option<&str> {
        self.elements
            .iter()
            .find(|b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
            .map(|s| s.as_str())
    }

    /// Cyclic group of order n, elements "0".."n-1".
    pub fn cyclic(n: u32) -> Self {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut table = BTreeMap::new();
        for a in 0..n {
            let mut row = BTreeMap::new();
            for b in 0..n {
                row.insert(b.to_string(), ((a + b) % n).to_string());
            }
            table.insert(a.to_string(), row);
        }
        MonoidTable::new(elements, "0".into(), table).expect("cyclic group is a monoid")
    }

    /// Symmetric group S3 as permutations of {0,1,2}; an element is named by
    /// its image string, e.g. "120" maps 0->1, 1->2, 2->0.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let name = |p: &[usize; 3]| format!("{}{}{}", p[0], p[1], p[2]);
        let elements: Vec<String> = perms.iter().map(name).collect();
        let mut table = BTreeMap::new();
        for p in &perms {
            let mut row = BTreeMap::new();
            for q in &perms {
                // (p*q)(i) = p(q(i)): q acts first.
                let pq = [p[q[0]], p[q[1]], p[q[2]]];
                row.insert(name(q), name(&pq));
            }
            table.insert(name(p), row);
        }
        MonoidTable::new(elements, "012".into(), table).expect("S3 is a monoid")
    }

    /// The two-element monoid {1, a} with a*a = a.
    pub fn idempotent2() -> Self {
        let mut table = BTreeMap::new();
        table.insert(
            "1".to_string(),
            BTreeMap::from([("1".to_string(), "1".to_string()), ("a".to_string(), "a".to_string())]),
        );
        table.insert(
            "a".to_string(),
            BTreeMap::from([("1".to_string(), "a".to_string()), ("a".to_string(), "a".to_string())]),
        );
        MonoidTable::new(vec!["1".into(), "a".into()], "1".into(), table)
            .expect("idempotent monoid is a monoid")
    }

    /// Searches for a monoid isomorphism onto `other` by brute force over
    /// unit-preserving bijections. Returns the witness mapping if found.
    pub fn isomorphism_to(&self, other: &MonoidTable) -> Option<BTreeMap<String, String>> {
        if self.elements.len() != other.elements.len() {
            return None;
        }
        let n = self.elements.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut assignment = vec![usize::MAX; n];
        let unit_a = self.elements.iter().position(|e| e == &self.unit)?;
        let unit_b = other.elements.iter().position(|e| e == &other.unit)?;
        fn extend(
            a: &MonoidTable,
            b: &MonoidTable,
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
            pos: usize,
        ) -> bool {
            let n = a.elements.len();
            if pos == n {
                return true;
            }
            if assignment[pos] != usize::MAX {
                return extend(a, b, assignment, used, pos + 1);
            }
            for cand in 0..n {
                if used[cand] {
                    continue;
                }
                assignment[pos] = cand;
                used[cand] = true;
                let ok = (0..n).all(|i| {
                    (0..n).all(|j| {
                        if assignment[i] == usize::MAX || assignment[j] == usize::MAX {
                            return true;
                        }
                        let prod = a.mul(&a.elements[i], &a.elements[j]);
                        let k = a.elements.iter().position(|e| e == prod).unwrap();
                        if assignment[k] == usize::MAX {
                            return true;
                        }
                        b.mul(&b.elements[assignment[i]], &b.elements[assignment[j]])
                            == b.elements[assignment[k]]
                    })
                });
                if ok && extend(a, b, assignment, used, pos + 1) {
                    return true;
                }
                assignment[pos] = usize::MAX;
                used[cand] = false;
            }
            false
        }
        let mut used = vec![false; n];
        assignment[unit_a] = unit_b;
        used[unit_b] = true;
        perm.clear();
        if extend(self, other, &mut assignment, &mut used, 0) {
            Some(
                self.elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), other.elements[assignment[i]].clone()))
                    .collect(),
            )
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=6 {
            let m = MonoidTable::cyclic(n);
            assert_eq!(m.elements().len(), n as usize);
        }
    }

    #[test]
    fn s3_is_nonabelian() {
        let s3 = MonoidTable::symmetric3();
        assert_eq!(s3.elements().len(), 6);
        assert_ne!(s3.mul("021", "102"), s3.mul("102", "021"));
    }

    #[test]
    fn broken_associativity_detected() {
        // {1, a, b} with a*b = 1 but b*(b*a) != (b*b)*a forced.
        let elements = vec!["1".to_string(), "a".to_string(), "b".to_string()];
        let mut table = BTreeMap::new();
        for x in &elements {
            let mut row = BTreeMap::new();
            for y in &elements {
                let v = if x == "1" {
                    y.clone()
                } else if y == "1" {
                    x.clone()
                } else if x == "a" && y == "a" {
                    "b".to_string()
                } else {
                    "1".to_string()
                };
                row.insert(y.clone(), v);
            }
            table.insert(x.clone(), row);
        }
        let err = MonoidTable::new(elements, "1".into(), table).unwrap_err();
        assert!(matches!(err, MonoidError::Associativity(..)));
    }

    #[test]
    fn isomorphic_cyclic_groups_found() {
        let z3 = MonoidTable::cyclic(3);
        // Same group with renamed elements.
        let renamed = {
            let names = ["e", "r", "rr"];
            let mut table = BTreeMap::new();
            for (i, a) in names.iter().enumerate() {
                let mut row = BTreeMap::new();
                for (j, b) in names.iter().enumerate() {
                    row.insert(b.to_string(), names[(i + j) % 3].to_string());
                }
                table.insert(a.to_string(), row);
            }
            MonoidTable::new(names.iter().map(|s| s.to_string()).collect(), "e".into(), table)
                .unwrap()
        };
        let iso = z3.isomorphism_to(&renamed).unwrap();
        assert_eq!(iso.get("0").unwrap(), "e");
        assert!(z3.isomorphism_to(&MonoidTable::cyclic(4)).is_none());
    }

    #[test]
    fn inverses() {
        let z3 = MonoidTable::cyclic(3);
        assert_eq!(z3.inverse("1"), Some("2"));
        let m = MonoidTable::idempotent2();
        assert_eq!(m.inverse("a"), None);
    }
}
