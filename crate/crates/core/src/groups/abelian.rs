//! Finite abelian groups ⊕ ℤ/n_i with mixed-radix element indices.

use std::collections::{HashMap, VecDeque};

use crate::arith;
use crate::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

/// A subgroup as its sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

/// Invariant-factor presentation of a finite abelian group: the group is
/// ⊕ ℤ/invariants[i], generated by `basis[i]` (indices in some ambient group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub invariants: Vec<u64>,
    pub basis: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(orders.iter().all(|&n| n >= 1), "cyclic orders must be positive");
        AbelianGroup { orders }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |e, &n| arith::lcm(e, n))
    }

    /// Mixed-radix index of a coordinate tuple (first coordinate most significant).
    pub fn encode(&self, coords: &[u64]) -> usize {
        debug_assert_eq!(coords.len(), self.orders.len());
        coords
            .iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&c, &n)| acc * n + c % n) as usize
    }

    pub fn encode_signed(&self, coords: &[i64]) -> usize {
        let c: Vec<u64> = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| arith::rem_euclid(c, n))
            .collect();
        self.encode(&c)
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (x as u64) % n;
            x /= n as usize;
        }
        out
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        let c: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(&self.orders)
            .map(|((p, q), n)| (p + q) % n)
            .collect();
        self.encode(&c)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.scale(x, -1)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, x: usize, k: i64) -> usize {
        let c: Vec<i64> = self.decode(x).iter().map(|&c| c as i64 * k).collect();
        self.encode_signed(&c)
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.decode(x)
            .iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &n)| arith::lcm(acc, n / arith::gcd(c, n)))
    }

    pub fn span(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            elements: (0..self.size()).filter(|&x| seen[x]).collect(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.size()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Every subgroup, sorted by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![self.trivial_subgroup()];
        let mut index: HashMap<Subgroup, ()> = HashMap::from([(self.trivial_subgroup(), ())]);
        let mut i = 0;
        while i < found.len() {
            let h = found[i].clone();
            for x in 0..self.size() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = self.canonical_generators(&h);
                gens.push(x);
                let k = self.span(&gens);
                if index.insert(k.clone(), ()).is_none() {
                    found.push(k);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        found
    }

    /// Greedy generating set: smallest elements not already spanned.
    pub fn canonical_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for &x in &h.elements {
            if !span.contains(x) {
                gens.push(x);
                span = self.span(&gens);
                if span.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Smallest element of the coset `x + h`.
    pub fn coset_min(&self, x: usize, h: &Subgroup) -> usize {
        h.elements.iter().map(|&y| self.add(x, y)).min().unwrap()
    }

    /// Invariant-factor presentation of ⟨gens⟩ + modulo / modulo, with basis
    /// representatives expressed as elements of `self`.
    pub fn quotient_presentation(&self, gens: &[usize], modulo: &Subgroup) -> Presentation {
        let s = gens.len();
        // Cayley graph of the quotient: each coset gets a coefficient vector;
        // non-tree edges give the relation lattice.
        let mut coords: HashMap<usize, Vec<i64>> = HashMap::new();
        let start = self.coset_min(0, modulo);
        coords.insert(start, vec![0; s]);
        let mut queue = VecDeque::from([start]);
        let mut relations = Vec::new();
        while let Some(x) = queue.pop_front() {
            let cx = coords[&x].clone();
            for (j, &g) in gens.iter().enumerate() {
                let y = self.coset_min(self.add(x, g), modulo);
                let mut cy = cx.clone();
                cy[j] += 1;
                match coords.get(&y) {
                    Some(existing) => {
                        let rel: Vec<i64> = cy.iter().zip(existing).map(|(a, b)| a - b).collect();
                        if rel.iter().any(|&r| r != 0) {
                            relations.push(rel);
                        }
                    }
                    None => {
                        coords.insert(y, cy);
                        queue.push_back(y);
                    }
                }
            }
        }
        let f = smith_normal_form(&relations, s);
        let mut invariants = Vec::new();
        let mut basis = Vec::new();
        for (i, &d) in f.diagonal.iter().enumerate() {
            assert!(d != 0, "quotient of a finite group is finite");
            if d == 1 {
                continue;
            }
            let coeffs: Vec<i64> = f.v_inv[i].clone();
            let elem = gens
                .iter()
                .zip(&coeffs)
                .fold(0, |acc, (&g, &c)| self.add(acc, self.scale(g, c)));
            invariants.push(d as u64);
            basis.push(elem);
        }
        Presentation { invariants, basis }
    }
}

impl Subgroup {
    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codec_round_trip() {
        let a = AbelianGroup::new(vec![2, 3, 4]);
        assert_eq!(a.size(), 24);
        for x in 0..24 {
            assert_eq!(a.encode(&a.decode(x)), x);
        }
        assert_eq!(a.decode(1), vec![0, 0, 1]);
        assert_eq!(a.encode(&[1, 0, 0]), 12);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(AbelianGroup::new(vec![2, 2]).all_subgroups().len(), 5);
        assert_eq!(AbelianGroup::new(vec![12]).all_subgroups().len(), 6);
        assert_eq!(AbelianGroup::new(vec![]).all_subgroups().len(), 1);
        // (ℤ/2)³ has 1 + 7 + 7 + 1 subgroups
        assert_eq!(AbelianGroup::new(vec![2, 2, 2]).all_subgroups().len(), 16);
    }

    #[test]
    fn quotient_structure() {
        let a = AbelianGroup::new(vec![2, 4]);
        let h = a.span(&[a.encode(&[0, 2])]);
        let all: Vec<usize> = (0..a.size()).collect();
        let p = a.quotient_presentation(&all, &h);
        let mut inv = p.invariants.clone();
        inv.sort_unstable();
        assert_eq!(inv, vec![2, 2]);
        // ℤ/2 ⊕ ℤ/3 presented as ℤ/6
        let b = AbelianGroup::new(vec![2, 3]);
        let p = b.quotient_presentation(&[b.encode(&[1, 0]), b.encode(&[0, 1])], &b.trivial_subgroup());
        assert_eq!(p.invariants, vec![6]);
        assert_eq!(b.element_order(p.basis[0]), 6);
    }
}
