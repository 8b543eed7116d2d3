//! Finite groups given by multiplication tables, finite abelian groups,
//! pre-metric groups and exact character tables.

mod abelian;
pub mod builtin;
mod character_table;
mod form;

pub use abelian::{AbelianGroup, Presentation, Subgroup};
pub use character_table::{CharacterTable, CharacterTableReport, DEFAULT_ORDER_BOUND};
pub use form::{FormReport, FormViolation, PreMetricGroup};

use crate::arith;
use crate::error::{GroupDefect, Result};

/// A finite group as a validated multiplication table; index 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        for (row, r) in table.iter().enumerate() {
            if r.len() != n || r.iter().any(|&x| x >= n) {
                return Err(GroupDefect::Shape { row }.into());
            }
        }
        if n == 0 {
            return Err(GroupDefect::Shape { row: 0 }.into());
        }
        for (x, row) in table.iter().enumerate() {
            if table[0][x] != x || row[0] != x {
                return Err(GroupDefect::NoUnit { element: x }.into());
            }
        }
        let mut inverse = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == 0 && table[y][x] == 0) {
                Some(y) => inverse[x] = y,
                None => return Err(GroupDefect::NoInverse { element: x }.into()),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupDefect::NonAssociative { a, b, c }.into());
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverse })
    }

    /// Group generated by `gens` inside an ambient multiplication, with the
    /// identity first and the rest in breadth-first discovery order.
    pub fn generated_by<T, F>(identity: T, gens: &[T], mul: F) -> Self
    where
        T: Clone + PartialEq,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !elems.contains(&x) {
                    elems.push(x);
                }
            }
            i += 1;
        }
        let index = |x: &T| elems.iter().position(|y| y == x).expect("closed");
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&mul(a, b))).collect())
            .collect();
        FiniteGroup::from_table(table).expect("closure of a group action is a group")
    }

    /// Componentwise addition on ⊕ ℤ/n_i, elements enumerated in mixed radix.
    pub fn abelian(orders: &[u64]) -> Self {
        let a = AbelianGroup::new(orders.to_vec());
        let n = a.size();
        let table = (0..n).map(|x| (0..n).map(|y| a.add(x, y)).collect()).collect();
        FiniteGroup::from_table(table).expect("direct sum of cyclic groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        // g x g^{-1}
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |e, a| arith::lcm(e, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes sorted by (size, smallest member); each class is
    /// sorted, so its first member is the representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    /// The centralizer of `g` with its induced table; `elements[i]` is the
    /// ambient index of subgroup element `i` (so `elements[0] = 0`).
    pub fn centralizer(&self, g: usize) -> (Vec<usize>, FiniteGroup) {
        let elements: Vec<usize> = (0..self.order())
            .filter(|&h| self.mul(h, g) == self.mul(g, h))
            .collect();
        (elements.clone(), self.subgroup_table(&elements))
    }

    /// Induced table on a subset closed under multiplication, listed with the
    /// identity first.
    pub fn subgroup_table(&self, elements: &[usize]) -> FiniteGroup {
        let pos = |x: usize| elements.iter().position(|&y| y == x).expect("closed subset");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        FiniteGroup::from_table(table).expect("subgroup of a group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn trivial_and_cyclic_tables() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn defects_are_distinguished() {
        let no_unit = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(no_unit, Err(Error::InvalidGroup(GroupDefect::NoUnit { .. }))));
        let no_inv = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(no_inv, Err(Error::InvalidGroup(GroupDefect::NoInverse { element: 1 }))));
        // a unital loop of order 5 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(loop5) {
            Err(Error::InvalidGroup(GroupDefect::NonAssociative { a, b, c })) => {
                assert!(a < 5 && b < 5 && c < 5);
            }
            other => panic!("expected associativity witness, got {other:?}"),
        }
        let ragged = FiniteGroup::from_table(vec![vec![0, 1], vec![1]]);
        assert!(matches!(ragged, Err(Error::InvalidGroup(GroupDefect::Shape { row: 1 }))));
    }

    #[test]
    fn abelian_constructor() {
        assert_eq!(FiniteGroup::abelian(&[2, 2]).order(), 4);
        assert_eq!(FiniteGroup::abelian(&[3]).exponent(), 3);
        assert_eq!(FiniteGroup::abelian(&[]).order(), 1);
        assert!(FiniteGroup::abelian(&[2, 3]).is_abelian());
    }

    #[test]
    fn class_structure() {
        let z6 = builtin::cyclic(6);
        assert_eq!(z6.conjugacy_classes().len(), 6);
        let s3 = builtin::s3();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let q8 = builtin::q8();
        let sizes: Vec<usize> = q8.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        for g in [&s3, &q8, &builtin::d4()] {
            for c in g.conjugacy_classes() {
                assert_eq!(g.order() % c.len(), 0);
            }
        }
    }

    #[test]
    fn centralizers() {
        let s3 = builtin::s3();
        assert_eq!(s3.centralizer(0).1.order(), 6);
        let three_cycle = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let (_, c) = s3.centralizer(three_cycle);
        assert_eq!(c.order(), 3);
        assert!(c.is_abelian());
        for class in s3.conjugacy_classes() {
            assert_eq!(class.len() * s3.centralizer(class[0]).1.order(), 6);
        }
        let z4 = builtin::cyclic(4);
        assert_eq!(z4.centralizer(1).1.order(), 4);
    }
}
