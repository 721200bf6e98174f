//! Finite hom-lattices given by an explicit order table.
//!
//! A [`HomLattice`] stores the element names and the full `≤` relation. When
//! the relation is a partial order with a bottom element and all binary joins,
//! join and meet tables are precomputed; otherwise the structure can still be
//! inspected (and reported on by the validators) but lattice operations panic.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    tables: Option<Tables>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// Why an order table fails to be a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeDefect {
    NotReflexive(usize),
    NotAntisymmetric(usize, usize),
    NotTransitive(usize, usize, usize),
    NoBottom,
    NoJoin(usize, usize),
    Empty,
}

impl HomLattice {
    /// Builds a lattice from names and a row-major `leq[i * n + j] = (i ≤ j)` table.
    ///
    /// Panics if the table size does not match or names repeat; both are
    /// structural errors the callers check beforehand.
    pub fn new(names: Vec<String>, leq: Vec<bool>) -> Self {
        let n = names.len();
        assert_eq!(leq.len(), n * n, "order table has wrong size");
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        assert_eq!(index.len(), n, "duplicate element names");
        let mut lat = HomLattice {
            names,
            index,
            leq,
            tables: None,
        };
        if lat.defect().is_none() {
            lat.tables = Some(lat.compute_tables());
        }
        lat
    }

    /// A chain `names[0] < names[1] < ...`.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        Self::from_fn(names, |i, j| i <= j && j < n)
    }

    pub fn from_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let table = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        Self::new(names, table)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn is_lattice(&self) -> bool {
        self.tables.is_some()
    }

    fn tables(&self) -> &Tables {
        self.tables
            .as_ref()
            .expect("hom-set is not a lattice; validate the quantaloid first")
    }

    pub fn bottom(&self) -> usize {
        self.tables().bottom
    }

    pub fn top(&self) -> usize {
        self.tables().top
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.tables().join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.tables().meet[a * self.len() + b] as usize
    }

    /// Join of a finite set; the empty join is the bottom.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a finite set; the empty meet is the top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// First defect found in the order table, scanning in index order.
    pub fn defect(&self) -> Option<LatticeDefect> {
        let n = self.len();
        if n == 0 {
            return Some(LatticeDefect::Empty);
        }
        for a in 0..n {
            if !self.leq(a, a) {
                return Some(LatticeDefect::NotReflexive(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Some(LatticeDefect::NotAntisymmetric(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Some(LatticeDefect::NotTransitive(a, b, c));
                    }
                }
            }
        }
        if !(0..n).any(|b| (0..n).all(|x| self.leq(b, x))) {
            return Some(LatticeDefect::NoBottom);
        }
        for a in 0..n {
            for b in a..n {
                if self.least_upper_bound(a, b).is_none() {
                    return Some(LatticeDefect::NoJoin(a, b));
                }
            }
        }
        None
    }

    fn least_upper_bound(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let uppers: Vec<usize> = (0..n).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        uppers.iter().copied().find(|&c| uppers.iter().all(|&u| self.leq(c, u)))
    }

    fn compute_tables(&self) -> Tables {
        let n = self.len();
        let bottom = (0..n).find(|&b| (0..n).all(|x| self.leq(b, x))).expect("checked");
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = self.least_upper_bound(a, b).expect("checked") as u32;
            }
        }
        let top = (0..n).fold(bottom, |acc, x| join[acc * n + x] as usize);
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let m = (0..n)
                    .filter(|&c| self.leq(c, a) && self.leq(c, b))
                    .fold(bottom, |acc, c| join[acc * n + c] as usize);
                meet[a * n + b] = m as u32;
            }
        }
        Tables {
            join,
            meet,
            bottom,
            top,
        }
    }

    /// Whether binary meets distribute over binary joins.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// The sublattice-as-a-lattice on the given elements, with the inherited order.
    pub fn restrict(&self, keep: &[usize]) -> HomLattice {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        HomLattice::from_fn(names, |i, j| self.leq(keep[i], keep[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn chain_joins_and_meets() {
        let l = HomLattice::chain(["a", "b", "c"]);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
        assert_eq!(l.join(0, 2), 2);
        assert_eq!(l.meet(1, 2), 1);
        assert_eq!(l.join_all([]), 0);
        assert_eq!(l.meet_all([]), 2);
    }

    #[test]
    fn diamond_is_distributive() {
        let l = HomLattice::from_fn(names(&["0", "a", "b", "1"]), |i, j| i == j || i == 0 || j == 3);
        assert!(l.is_lattice());
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert!(l.distributivity_violation().is_none());
    }

    #[test]
    fn m3_is_not_distributive() {
        let l = HomLattice::from_fn(names(&["0", "a", "b", "c", "1"]), |i, j| i == j || i == 0 || j == 4);
        assert!(l.is_lattice());
        assert!(l.distributivity_violation().is_some());
    }

    #[test]
    fn antichain_has_no_bottom() {
        let l = HomLattice::from_fn(names(&["a", "b"]), |i, j| i == j);
        assert_eq!(l.defect(), Some(LatticeDefect::NoBottom));
        assert!(!l.is_lattice());
    }

    #[test]
    fn missing_join_detected() {
        // 0 < a, b < c, d with no least upper bound of a and b
        let l = HomLattice::from_fn(names(&["0", "a", "b", "c", "d"]), |i, j| {
            i == j || i == 0 || (matches!(i, 1 | 2) && matches!(j, 3 | 4))
        });
        assert_eq!(l.defect(), Some(LatticeDefect::NoJoin(1, 2)));
    }

    #[test]
    fn non_transitive_detected() {
        let l = HomLattice::from_fn(names(&["a", "b", "c"]), |i, j| {
            i == j || (i, j) == (0, 1) || (i, j) == (1, 2)
        });
        assert_eq!(l.defect(), Some(LatticeDefect::NotTransitive(0, 1, 2)));
    }
}
