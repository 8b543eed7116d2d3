//! Fusion rings (finite hypergroups): validation, Frobenius–Perron
//! dimensions, universal grading, invertible objects and fusion subrings.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::snf::smith_normal_form;

pub const DEFAULT_MAX_RANK: usize = 24;

/// Structure constants N_{ij}^k over the basis `0..rank`, unit 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    dual: Vec<usize>,
    /// `products[i * rank + j]` lists `(k, N_ij^k)` with positive multiplicity, sorted by k.
    products: Vec<Vec<(usize, u64)>>,
}

/// A subset of simple indices containing 0, closed under duals and fusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionSubring {
    members: Vec<usize>,
}

impl FusionSubring {
    /// Wraps a member list that is already known to be closed.
    pub(crate) fn from_closed(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        FusionSubring { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn intersection(&self, other: &FusionSubring) -> FusionSubring {
        FusionSubring {
            members: self.members.iter().copied().filter(|&i| other.contains(i)).collect(),
        }
    }

    /// Position of a ring index inside the subring's sorted member list.
    pub fn local_index(&self, i: usize) -> Option<usize> {
        self.members.binary_search(&i).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    Shape(String),
    DualNotInvolution { i: usize },
    UnitLaw { i: usize, j: usize },
    Duality { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
}

impl std::fmt::Display for RingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingViolation::Shape(s) => write!(f, "{s}"),
            RingViolation::DualNotInvolution { i } => write!(f, "duality is not an involution fixing 0 at {i}"),
            RingViolation::UnitLaw { i, j } => write!(f, "unit law fails: N_{{{i},0}}^{j} or N_{{0,{i}}}^{j}"),
            RingViolation::Duality { i, j } => write!(f, "N_{{{i},{j}}}^0 ≠ δ(i, dual j)"),
            RingViolation::Associativity { i, j, k, l } => {
                write!(f, "associativity fails at (i,j,k,l) = ({i},{j},{k},{l})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingReport {
    pub violations: Vec<RingViolation>,
    pub commutative: bool,
}

impl RingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FpDims {
    pub dims: Vec<f64>,
    /// Σ FPdim(i)².
    pub global: f64,
    /// max |FPdim(i)FPdim(j) − Σ_k N_ij^k FPdim(k)| at the returned vector.
    pub residual: f64,
}

/// Universal grading of a commutative ring: ∂(i) as coordinates in ⊕ ℤ/invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub group: AbelianGroup,
    pub degree: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invertibles {
    pub elements: Vec<usize>,
    /// `product[a][b]` = position in `elements` of elements[a]·elements[b].
    pub product: Vec<Vec<usize>>,
}

impl FusionRing {
    /// Builds a ring from sparse `(i, j, k, N)` entries. Only shape is checked
    /// here; see [`FusionRing::validate`] for the axioms.
    pub fn new(rank: usize, dual: Vec<usize>, entries: &[(usize, usize, usize, u64)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRing("rank must be positive".into()));
        }
        if dual.len() != rank || dual.iter().any(|&d| d >= rank) {
            return Err(Error::InvalidRing("dual must be a map on 0..rank".into()));
        }
        let mut products = vec![Vec::new(); rank * rank];
        for &(i, j, k, n) in entries {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::InvalidRing(format!("index out of range in ({i},{j},{k})")));
            }
            if n == 0 {
                continue;
            }
            let slot: &mut Vec<(usize, u64)> = &mut products[i * rank + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some(e) => e.1 += n,
                None => slot.push((k, n)),
            }
        }
        for s in &mut products {
            s.sort_unstable();
        }
        Ok(FusionRing { rank, dual, products })
    }

    /// Group ring of a finite group given by its multiplication and inverse.
    pub fn from_group_law(rank: usize, mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> Self {
        let entries: Vec<_> = (0..rank)
            .flat_map(|i| (0..rank).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, mul(i, j), 1))
            .collect();
        FusionRing::new(rank, (0..rank).map(inv).collect(), &entries).expect("group law is in range")
    }

    pub fn pointed(group: &AbelianGroup) -> Self {
        Self::from_group_law(group.size(), |x, y| group.add(x, y), |x| group.neg(x))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// Nonzero `(k, N_ij^k)` pairs.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.products[i * self.rank + j]
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        self.product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or(0, |&(_, n)| n)
    }

    /// Sparse `(i, j, k, N)` entries in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for &(k, n) in self.product(i, j) {
                    out.push((i, j, k, n));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    pub fn validate(&self) -> RingReport {
        let r = self.rank;
        let mut violations = Vec::new();
        if self.dual[0] != 0 {
            violations.push(RingViolation::DualNotInvolution { i: 0 });
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                violations.push(RingViolation::DualNotInvolution { i });
            }
        }
        for i in 0..r {
            let unit = [(i, 1u64)];
            if self.product(i, 0) != unit || self.product(0, i) != unit {
                violations.push(RingViolation::UnitLaw { i, j: i });
            }
        }
        for i in 0..r {
            for j in 0..r {
                let want = u64::from(i == self.dual[j]);
                if self.n(i, j, 0) != want {
                    violations.push(RingViolation::Duality { i, j });
                }
            }
        }
        'assoc: for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let left = self.triple_left(i, j, k);
                    let right = self.triple_right(i, j, k);
                    if left != right {
                        let l = (0..r).find(|&l| left[l] != right[l]).unwrap();
                        violations.push(RingViolation::Associativity { i, j, k, l });
                        break 'assoc;
                    }
                }
            }
        }
        RingReport {
            violations,
            commutative: self.is_commutative(),
        }
    }

    fn triple_left(&self, i: usize, j: usize, k: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank];
        for &(m, a) in self.product(i, j) {
            for &(l, b) in self.product(m, k) {
                out[l] += a * b;
            }
        }
        out
    }

    fn triple_right(&self, i: usize, j: usize, k: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank];
        for &(m, a) in self.product(j, k) {
            for &(l, b) in self.product(i, m) {
                out[l] += a * b;
            }
        }
        out
    }

    /// Frobenius–Perron dimensions by power iteration on Σ_i N_i, a positive
    /// matrix whose Perron vector is the dimension vector.
    pub fn fp_dims(&self) -> FpDims {
        let r = self.rank;
        let mut m = vec![vec![0f64; r]; r];
        for i in 0..r {
            for j in 0..r {
                for &(k, n) in self.product(i, j) {
                    m[j][k] += n as f64;
                }
            }
        }
        let mut v = vec![1f64; r];
        for _ in 0..200_000 {
            let mut w: Vec<f64> = (0..r).map(|j| v[j] + (0..r).map(|k| m[j][k] * v[k]).sum::<f64>()).collect();
            let (lo, hi) = (0..r).fold((f64::INFINITY, 0f64), |(lo, hi), j| {
                let ratio = w[j] / v[j];
                (lo.min(ratio), hi.max(ratio))
            });
            let norm = w[0];
            w.iter_mut().for_each(|x| *x /= norm);
            v = w;
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        let global = v.iter().map(|d| d * d).sum();
        let mut residual = 0f64;
        for i in 0..r {
            for j in 0..r {
                let s: f64 = self.product(i, j).iter().map(|&(k, n)| n as f64 * v[k]).sum();
                residual = residual.max((v[i] * v[j] - s).abs());
            }
        }
        FpDims {
            dims: v,
            global,
            residual,
        }
    }

    /// Universal grading group (commutative rings only), via Smith normal
    /// form of the relation lattice ∂0 = 0, ∂ī = −∂i, ∂k = ∂i + ∂j when N_ij^k > 0.
    pub fn grading(&self) -> Result<Grading> {
        if !self.is_commutative() {
            return Err(Error::Precondition(
                "universal grading is only computed for commutative rings".into(),
            ));
        }
        let r = self.rank;
        let mut relations = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        relations.push(unit(0));
        for i in 0..r {
            let mut v = unit(i);
            v[self.dual[i]] += 1;
            relations.push(v);
        }
        for i in 0..r {
            for j in i..r {
                for &(k, _) in self.product(i, j) {
                    let mut v = vec![0i64; r];
                    v[k] += 1;
                    v[i] -= 1;
                    v[j] -= 1;
                    relations.push(v);
                }
            }
        }
        let f = smith_normal_form(&relations, r);
        if f.diagonal.contains(&0) {
            return Err(Error::InvalidRing("grading group is infinite".into()));
        }
        let kept: Vec<usize> = (0..r).filter(|&t| f.diagonal[t] > 1).collect();
        let group = AbelianGroup::new(kept.iter().map(|&t| f.diagonal[t] as u64).collect());
        let degree = (0..r)
            .map(|i| {
                // e_i · V, read in the kept coordinates
                let coords: Vec<i64> = kept.iter().map(|&t| f.v[i][t]).collect();
                group.encode_signed(&coords)
            })
            .collect();
        Ok(Grading { group, degree })
    }

    pub fn invertibles(&self) -> Invertibles {
        let elements: Vec<usize> = (0..self.rank)
            .filter(|&i| {
                self.product(i, self.dual[i]).iter().map(|&(_, n)| n).sum::<u64>() == 1
            })
            .collect();
        let product = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| {
                        let k = self.product(a, b)[0].0;
                        elements.iter().position(|&e| e == k).expect("invertibles are closed")
                    })
                    .collect()
            })
            .collect();
        Invertibles { elements, product }
    }

    /// Smallest fusion subring containing `seed` (and 0).
    pub fn closure(&self, seed: &[usize]) -> FusionSubring {
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        set.insert(0);
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let mut new = Vec::new();
            let d = self.dual[x];
            if !set.contains(&d) {
                new.push(d);
            }
            for &y in set.iter() {
                for &(k, _) in self.product(x, y).iter().chain(self.product(y, x)) {
                    if !set.contains(&k) {
                        new.push(k);
                    }
                }
            }
            for k in new {
                if set.insert(k) {
                    frontier.push(k);
                }
            }
        }
        FusionSubring {
            members: set.into_iter().collect(),
        }
    }

    pub fn whole(&self) -> FusionSubring {
        FusionSubring {
            members: (0..self.rank).collect(),
        }
    }

    pub fn trivial_subring(&self) -> FusionSubring {
        FusionSubring { members: vec![0] }
    }

    /// Checks closure of an arbitrary member list; returns it as a subring.
    pub fn subring(&self, members: &[usize]) -> Result<FusionSubring> {
        let closed = self.closure(members);
        let mut given: Vec<usize> = members.to_vec();
        given.push(0);
        given.sort_unstable();
        given.dedup();
        if closed.members != given {
            return Err(Error::InvalidRing(format!("{members:?} is not closed under fusion and duals")));
        }
        Ok(closed)
    }

    /// All fusion subrings, sorted by (size, members).
    pub fn enumerate_subrings(&self, max_rank: usize) -> Result<Vec<FusionSubring>> {
        if self.rank > max_rank {
            return Err(Error::RankTooLarge {
                rank: self.rank,
                bound: max_rank,
            });
        }
        let start = self.trivial_subring();
        let mut seen: HashSet<FusionSubring> = HashSet::from([start.clone()]);
        let mut found = vec![start];
        let mut i = 0;
        while i < found.len() {
            let s = found[i].clone();
            for x in 0..self.rank {
                if s.contains(x) {
                    continue;
                }
                let mut seed = s.members.clone();
                seed.push(x);
                let t = self.closure(&seed);
                if seen.insert(t.clone()) {
                    found.push(t);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        Ok(found)
    }

    /// The ring restricted to a subring, reindexed by position in the member list.
    pub fn restrict(&self, sub: &FusionSubring) -> FusionRing {
        let local = |i: usize| sub.local_index(i).expect("closed subring");
        let dual = sub.members.iter().map(|&i| local(self.dual[i])).collect();
        let mut entries = Vec::new();
        for &i in &sub.members {
            for &j in &sub.members {
                for &(k, n) in self.product(i, j) {
                    entries.push((local(i), local(j), local(k), n));
                }
            }
        }
        FusionRing::new(sub.len(), dual, &entries).expect("restriction is in range")
    }

    /// Tensor product ring on index pairs (a, b) ↦ a·rank₂ + b.
    pub fn tensor(&self, other: &FusionRing) -> FusionRing {
        let r2 = other.rank;
        let idx = |a: usize, b: usize| a * r2 + b;
        let rank = self.rank * r2;
        let dual = (0..rank).map(|x| idx(self.dual[x / r2], other.dual[x % r2])).collect();
        let mut entries = Vec::new();
        for x in 0..rank {
            for y in 0..rank {
                for &(k1, n1) in self.product(x / r2, y / r2) {
                    for &(k2, n2) in other.product(x % r2, y % r2) {
                        entries.push((x, y, idx(k1, k2), n1 * n2));
                    }
                }
            }
        }
        FusionRing::new(rank, dual, &entries).expect("tensor product is in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// {1, ε, σ} with ε² = 1, εσ = σ, σ² = 1 + ε + σ.
    pub(crate) fn rep_s3_type() -> FusionRing {
        let entries = vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 2, 2, 1),
            (2, 0, 2, 1),
            (2, 1, 2, 1),
            (2, 2, 0, 1),
            (2, 2, 1, 1),
            (2, 2, 2, 1),
        ];
        FusionRing::new(3, vec![0, 1, 2], &entries).unwrap()
    }

    fn z(n: u64) -> FusionRing {
        FusionRing::pointed(&AbelianGroup::new(vec![n]))
    }

    #[test]
    fn group_ring_is_valid_and_commutative() {
        let rep = z(2).validate();
        assert!(rep.is_valid());
        assert!(rep.commutative);
    }

    #[test]
    fn duality_violation_is_detected() {
        let mut entries = z(2).entries();
        entries.retain(|e| !(e.0 == 1 && e.1 == 1));
        entries.push((1, 1, 0, 2));
        let bad = FusionRing::new(2, vec![0, 1], &entries).unwrap();
        let rep = bad.validate();
        assert!(rep.violations.contains(&RingViolation::Duality { i: 1, j: 1 }));
    }

    #[test]
    fn rep_s3_type_ring() {
        let r = rep_s3_type();
        assert!(r.validate().is_valid());
        let fp = r.fp_dims();
        assert!((fp.dims[2] - 2.0).abs() < 1e-9);
        assert!((fp.global - 6.0).abs() < 1e-9);
        let g = r.grading().unwrap();
        assert_eq!(g.group.size(), 1);
        let inv = r.invertibles();
        assert_eq!(inv.elements, vec![0, 1]);
        assert_eq!(inv.product, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn pointed_dims_and_grading() {
        let a = AbelianGroup::new(vec![2, 2]);
        let r = FusionRing::pointed(&a);
        let fp = r.fp_dims();
        assert!(fp.dims.iter().all(|d| (d - 1.0).abs() < 1e-12));
        assert!((fp.global - 4.0).abs() < 1e-12);
        let g = r.grading().unwrap();
        let mut inv = g.group.orders().to_vec();
        inv.sort_unstable();
        assert_eq!(inv, vec![2, 2]);
        // ∂ is a bijection for a pointed ring
        let mut d = g.degree.clone();
        d.sort_unstable();
        assert_eq!(d, vec![0, 1, 2, 3]);
        assert_eq!(r.enumerate_subrings(24).unwrap().len(), 5);
        assert!((z(7).fp_dims().global - 7.0).abs() < 1e-12);
    }

    #[test]
    fn subring_enumeration_basics() {
        let one = FusionRing::pointed(&AbelianGroup::new(vec![]));
        assert_eq!(one.enumerate_subrings(24).unwrap().len(), 1);
        let subs = rep_s3_type().enumerate_subrings(24).unwrap();
        let members: Vec<&[usize]> = subs.iter().map(|s| s.members()).collect();
        assert_eq!(members, vec![&[0][..], &[0, 1][..], &[0, 1, 2][..]]);
        assert!(matches!(z(30).enumerate_subrings(24), Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn non_commutative_grading_is_rejected() {
        let s3 = crate::groups::builtin::s3();
        let r = FusionRing::from_group_law(6, |a, b| s3.mul(a, b), |a| s3.inv(a));
        assert!(r.validate().is_valid());
        assert!(!r.validate().commutative);
        assert!(r.grading().is_err());
    }
}
