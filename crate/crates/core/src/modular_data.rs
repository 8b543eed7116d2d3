//! Premodular data (N, d, θ, S) and the analyses built on it: transparency,
//! centralizers, modularity, Gauss sums, restriction and prime factorization.
//!
//! S is unnormalized with S₀ᵢ = dᵢ. Every comparison is exact.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::{Cyc, CycMatrix};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, FusionSubring, RingViolation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    ring: FusionRing,
    dims: Vec<Cyc>,
    twists: Vec<Cyc>,
    s: CycMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DataViolation {
    Ring(RingViolation),
    UnitDimension,
    UnitTwist,
    NotSymmetric { i: usize, j: usize },
    FirstRow { i: usize },
    DualSymmetry { i: usize, j: usize },
    TwistNotRootOfUnity { i: usize },
    DualTwist { i: usize },
    DimensionCharacter { i: usize, j: usize },
    Projection { subring: Vec<usize>, j: usize },
}

impl std::fmt::Display for DataViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DataViolation::Ring(v) => write!(f, "ring: {v}"),
            DataViolation::UnitDimension => write!(f, "d_0 ≠ 1"),
            DataViolation::UnitTwist => write!(f, "θ_0 ≠ 1"),
            DataViolation::NotSymmetric { i, j } => write!(f, "S_{i},{j} ≠ S_{j},{i}"),
            DataViolation::FirstRow { i } => write!(f, "S_0,{i} ≠ d_{i}"),
            DataViolation::DualSymmetry { i, j } => write!(f, "S at duals of ({i}, {j}) differs from S_{i},{j}"),
            DataViolation::TwistNotRootOfUnity { i } => write!(f, "θ_{i} is not a root of unity"),
            DataViolation::DualTwist { i } => write!(f, "θ of the dual of {i} differs from θ_{i}"),
            DataViolation::DimensionCharacter { i, j } => {
                write!(f, "d_{i}·d_{j} ≠ Σ_k N_{i},{j}^k d_k")
            }
            DataViolation::Projection { subring, j } => {
                write!(f, "projection formula fails for subring {subring:?} at {j}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PremodularReport {
    pub violations: Vec<DataViolation>,
    /// Number of subrings the projection formula was checked on; `None`
    /// when the rank exceeded the bound and the check was skipped.
    pub subrings_checked: Option<usize>,
}

impl PremodularReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modularity {
    pub modular: bool,
    pub transparent: FusionSubring,
    /// S² = dim·C, the certificate; agrees with `modular`.
    pub s_squared_is_dim_c: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSums {
    pub plus: Cyc,
    pub minus: Cyc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    /// First entry where the two sides differ.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub s_squared: RelationCheck,
    pub tstst: RelationCheck,
}

impl RelationsReport {
    pub fn holds(&self) -> bool {
        self.s_squared.holds && self.tstst.holds
    }
}

/// The pairing between the universal grading group and the invertible
/// simples, (∂x, L) ↦ S_xL / (d_x d_L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnPairing {
    pub grading_order: usize,
    pub invertibles: Vec<usize>,
    /// `table[g][l]`: pairing of grading element g with `invertibles[l]`.
    pub table: Vec<Vec<Cyc>>,
    pub well_defined: bool,
    pub bimultiplicative: bool,
    pub nondegenerate: bool,
}

impl GnPairing {
    /// The pairing identifies the invertibles with the dual of the grading group.
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined
            && self.bimultiplicative
            && self.nondegenerate
            && self.grading_order == self.invertibles.len()
    }
}

/// A modular subring D with its centralizer D′ and the index bijection
/// witnessing C ≅ D ⊠ D′ at data level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub factor: FusionSubring,
    pub complement: FusionSubring,
    /// `pairs[k] = (a, b)`: simple k matches `factor[a] ⊠ complement[b]` (local indices).
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub is_prime: bool,
    /// Nontrivial proper subrings whose restriction is modular.
    pub modular_subrings: Vec<FusionSubring>,
    /// The subset of `modular_subrings` that are prime.
    pub prime_subrings: Vec<FusionSubring>,
    pub splittings: Vec<Splitting>,
    /// Each entry lists prime factors whose product is the whole datum: a
    /// leading prime followed by a sorted factorization of its centralizer.
    pub factorizations: Vec<Vec<FusionSubring>>,
}

impl ModularData {
    /// Assembles data after checking shapes; see [`ModularData::validate_premodular`]
    /// for the axioms.
    pub fn new(ring: FusionRing, dims: Vec<Cyc>, twists: Vec<Cyc>, s: CycMatrix) -> Result<Self> {
        let r = ring.rank();
        if dims.len() != r || twists.len() != r {
            return Err(Error::InvalidData(format!(
                "rank {r} but {} dims and {} twists",
                dims.len(),
                twists.len()
            )));
        }
        if s.rows() != r || s.cols() != r {
            return Err(Error::InvalidData(format!("S must be {r}×{r}")));
        }
        Ok(ModularData { ring, dims, twists, s })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn dims(&self) -> &[Cyc] {
        &self.dims
    }

    pub fn twists(&self) -> &[Cyc] {
        &self.twists
    }

    pub fn s(&self) -> &CycMatrix {
        &self.s
    }

    pub fn t(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.twists)
    }

    /// C_ij = δ_{i, j̄}.
    pub fn charge_conjugation(&self) -> CycMatrix {
        CycMatrix::from_fn(self.rank(), self.rank(), |i, j| {
            Cyc::from_int(i64::from(self.ring.dual(j) == i))
        })
    }

    pub fn validate_premodular(&self, max_rank: usize) -> PremodularReport {
        let mut violations: Vec<DataViolation> = self
            .ring
            .validate()
            .violations
            .into_iter()
            .map(DataViolation::Ring)
            .collect();
        let r = self.rank();
        let dual = |i: usize| self.ring.dual(i);
        if !self.dims[0].is_one() {
            violations.push(DataViolation::UnitDimension);
        }
        if !self.twists[0].is_one() {
            violations.push(DataViolation::UnitTwist);
        }
        for i in 0..r {
            if self.s[(0, i)] != self.dims[i] {
                violations.push(DataViolation::FirstRow { i });
            }
            if self.twists[i].root_of_unity().is_none() {
                violations.push(DataViolation::TwistNotRootOfUnity { i });
            }
            if self.twists[dual(i)] != self.twists[i] {
                violations.push(DataViolation::DualTwist { i });
            }
            for j in 0..i {
                if self.s[(i, j)] != self.s[(j, i)] {
                    violations.push(DataViolation::NotSymmetric { i, j });
                }
            }
            for j in 0..r {
                if self.s[(dual(i), dual(j))] != self.s[(i, j)] {
                    violations.push(DataViolation::DualSymmetry { i, j });
                }
            }
        }
        let ring_ok = violations.iter().all(|v| !matches!(v, DataViolation::Ring(_)));
        if ring_ok {
            for i in 0..r {
                for j in 0..=i {
                    let rhs: Cyc = self
                        .ring
                        .product(i, j)
                        .iter()
                        .map(|&(k, n)| self.dims[k].scale(&BigInt::from(n).into()))
                        .sum();
                    if &self.dims[i] * &self.dims[j] != rhs {
                        violations.push(DataViolation::DimensionCharacter { i, j });
                    }
                }
            }
        }
        let mut subrings_checked = None;
        if ring_ok {
            if let Ok(subrings) = self.ring.enumerate_subrings(max_rank) {
                for k in &subrings {
                    let dim_k = self.dim_of(k);
                    let centralizer = self.centralizer_of(k);
                    for j in 0..r {
                        let lhs: Cyc = k.members().iter().map(|&i| &self.dims[i] * &self.s[(i, j)]).sum();
                        let rhs = if centralizer.contains(j) {
                            &self.dims[j] * &dim_k
                        } else {
                            Cyc::zero(1)
                        };
                        if lhs != rhs {
                            violations.push(DataViolation::Projection {
                                subring: k.members().to_vec(),
                                j,
                            });
                        }
                    }
                }
                subrings_checked = Some(subrings.len());
            }
        }
        PremodularReport {
            violations,
            subrings_checked,
        }
    }

    /// dim C = Σ dᵢ².
    pub fn global_dim(&self) -> Cyc {
        self.dims.iter().map(|d| d * d).sum()
    }

    /// Σ_{i∈K} dᵢ².
    pub fn dim_of(&self, k: &FusionSubring) -> Cyc {
        k.members().iter().map(|&i| &self.dims[i] * &self.dims[i]).sum()
    }

    fn commutes(&self, i: usize, j: usize) -> bool {
        self.s[(i, j)] == &self.dims[i] * &self.dims[j]
    }

    /// Simples whose double braiding with everything is trivial.
    pub fn transparent_objects(&self) -> FusionSubring {
        self.centralizer_of(&self.ring.whole())
    }

    /// {j : S_ij = d_i d_j for all i ∈ K}.
    pub fn centralizer_of(&self, k: &FusionSubring) -> FusionSubring {
        FusionSubring::from_closed(
            (0..self.rank())
                .filter(|&j| k.members().iter().all(|&i| self.commutes(i, j)))
                .collect(),
        )
    }

    pub fn is_modular(&self) -> Result<Modularity> {
        let transparent = self.transparent_objects();
        let modular = transparent.is_trivial();
        let s2 = self.s.mul(&self.s);
        let s_squared_is_dim_c = s2 == self.charge_conjugation().scale(&self.global_dim());
        if modular != s_squared_is_dim_c {
            return Err(Error::Internal(format!(
                "transparency says modular = {modular} but S² = dim·C is {s_squared_is_dim_c}"
            )));
        }
        Ok(Modularity {
            modular,
            transparent,
            s_squared_is_dim_c,
        })
    }

    /// Ω± = Σ θᵢ^{±1} dᵢ².
    pub fn gauss_sums(&self) -> Result<GaussSums> {
        let mut plus = Cyc::zero(1);
        let mut minus = Cyc::zero(1);
        for (d, t) in self.dims.iter().zip(&self.twists) {
            let d2 = d * d;
            plus = &plus + &(&d2 * t);
            minus = &minus + &(&d2 * &t.inv()?);
        }
        if self.transparent_objects().is_trivial() && &plus * &minus != self.global_dim() {
            return Err(Error::Internal("Ω⁺Ω⁻ ≠ dim on modular data".into()));
        }
        Ok(GaussSums { plus, minus })
    }

    pub fn is_anomaly_free(&self) -> Result<bool> {
        let g = self.gauss_sums()?;
        Ok(g.plus == g.minus)
    }

    /// Checks S² = dim·C and TSTST = Ω⁺S.
    pub fn verify_modular_relations(&self) -> Result<RelationsReport> {
        if !self.transparent_objects().is_trivial() {
            return Err(Error::Precondition("data is not modular".into()));
        }
        let check = |lhs: &CycMatrix, rhs: &CycMatrix| {
            let witness = lhs.first_difference(rhs);
            RelationCheck {
                holds: witness.is_none(),
                witness,
            }
        };
        let s2 = self.s.mul(&self.s);
        let s_squared = check(&s2, &self.charge_conjugation().scale(&self.global_dim()));
        let omega = self.gauss_sums()?.plus;
        // T·S·T·S·T with T diagonal
        let ts = self.s.scale_rows(&self.twists);
        let tstst = ts.mul(&ts).scale_cols(&self.twists);
        let tstst = check(&tstst, &self.s.scale(&omega));
        Ok(RelationsReport { s_squared, tstst })
    }

    /// The data on the simples of `k`, reindexed by position in the member list.
    pub fn restrict(&self, k: &FusionSubring) -> ModularData {
        let m = k.members();
        ModularData {
            ring: self.ring.restrict(k),
            dims: m.iter().map(|&i| self.dims[i].clone()).collect(),
            twists: m.iter().map(|&i| self.twists[i].clone()).collect(),
            s: CycMatrix::from_fn(m.len(), m.len(), |a, b| self.s[(m[a], m[b])].clone()),
        }
    }

    /// Verlinde reconstruction of the fusion rules from S, compared with the ring.
    pub fn verlinde_matches(&self) -> Result<bool> {
        let entries = verlinde_fusion(&self.s, self.ring.duals())?;
        Ok(entries == self.ring.entries())
    }

    /// The grading/invertibles pairing; meaningful on modular data.
    pub fn gn_pairing(&self) -> Result<GnPairing> {
        let grading = self.ring.grading()?;
        let inv = self.ring.invertibles();
        let order = grading.group.size();
        let mut table: Vec<Vec<Option<Cyc>>> = vec![vec![None; inv.elements.len()]; order];
        let mut well_defined = true;
        for x in 0..self.rank() {
            let g = grading.degree[x];
            for (l, &el) in inv.elements.iter().enumerate() {
                let value = self.s[(x, el)].checked_div(&(&self.dims[x] * &self.dims[el]))?;
                match &table[g][l] {
                    Some(v) if *v != value => well_defined = false,
                    Some(_) => {}
                    None => table[g][l] = Some(value),
                }
            }
        }
        if table.iter().flatten().any(Option::is_none) {
            return Err(Error::Internal("grading map is not surjective".into()));
        }
        let table: Vec<Vec<Cyc>> = table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect();
        let grp = &grading.group;
        let mut bimultiplicative = true;
        'outer: for g in 0..order {
            for h in 0..order {
                for l in 0..inv.elements.len() {
                    if table[grp.add(g, h)][l] != &table[g][l] * &table[h][l] {
                        bimultiplicative = false;
                        break 'outer;
                    }
                }
            }
            for a in 0..inv.elements.len() {
                for b in 0..inv.elements.len() {
                    if table[g][inv.product[a][b]] != &table[g][a] * &table[g][b] {
                        bimultiplicative = false;
                        break 'outer;
                    }
                }
            }
        }
        // trivial left and right kernels
        let unit_pos = inv.elements.iter().position(|&e| e == 0);
        let left_kernel = (0..order).filter(|&g| table[g].iter().all(Cyc::is_one)).count();
        let right_kernel = (0..inv.elements.len())
            .filter(|&l| (0..order).all(|g| table[g][l].is_one()))
            .count();
        let nondegenerate = left_kernel == 1 && right_kernel == 1 && unit_pos.is_some();
        Ok(GnPairing {
            grading_order: order,
            invertibles: inv.elements,
            table,
            well_defined,
            bimultiplicative,
            nondegenerate,
        })
    }

    /// Every splitting C ≅ D ⊠ D′ by a modular subring D, and every
    /// factorization into prime modular subrings.
    pub fn prime_factorize(&self, max_rank: usize) -> Result<PrimeFactorization> {
        if !self.is_modular()?.modular {
            return Err(Error::Precondition("prime factorization needs modular data".into()));
        }
        let whole = self.ring.whole();
        let modular_subrings: Vec<FusionSubring> = self
            .ring
            .enumerate_subrings(max_rank)?
            .into_iter()
            .filter(|k| !k.is_trivial() && *k != whole)
            .filter(|k| self.restrict(k).transparent_objects().is_trivial())
            .collect();
        let dim = self.global_dim();
        let mut splittings = Vec::new();
        for d in &modular_subrings {
            let complement = self.centralizer_of(d);
            if &self.dim_of(d) * &self.dim_of(&complement) != dim {
                return Err(Error::Internal(format!(
                    "dim D · dim D′ ≠ dim C for D = {:?}",
                    d.members()
                )));
            }
            let pairs = self.split_bijection(d, &complement).ok_or_else(|| {
                Error::Internal(format!("no data-level splitting for D = {:?}", d.members()))
            })?;
            splittings.push(Splitting {
                factor: d.clone(),
                complement,
                pairs,
            });
        }
        let is_proper_sub = |a: &FusionSubring, b: &FusionSubring| {
            a != b && a.members().iter().all(|&x| b.contains(x))
        };
        let prime_subrings: Vec<FusionSubring> = modular_subrings
            .iter()
            .filter(|d| !modular_subrings.iter().any(|e| is_proper_sub(e, d)))
            .cloned()
            .collect();
        let is_prime = self.rank() > 1 && modular_subrings.is_empty();

        let mut memo = BTreeMap::new();
        let mut factorizations: BTreeSet<Vec<FusionSubring>> = BTreeSet::new();
        if self.rank() == 1 {
            factorizations.insert(Vec::new());
        } else if is_prime {
            factorizations.insert(vec![whole.clone()]);
        } else {
            for p in &prime_subrings {
                let rest = self.centralizer_of(p);
                for tail in self.unordered_factorizations(&rest, &prime_subrings, &mut memo) {
                    let mut f = vec![p.clone()];
                    f.extend(tail);
                    factorizations.insert(f);
                }
            }
        }
        Ok(PrimeFactorization {
            is_prime,
            modular_subrings,
            prime_subrings,
            splittings,
            factorizations: factorizations.into_iter().collect(),
        })
    }

    /// Sorted prime factorizations of the modular subring `x`.
    fn unordered_factorizations(
        &self,
        x: &FusionSubring,
        primes: &[FusionSubring],
        memo: &mut BTreeMap<FusionSubring, Vec<Vec<FusionSubring>>>,
    ) -> Vec<Vec<FusionSubring>> {
        if let Some(v) = memo.get(x) {
            return v.clone();
        }
        let inside: Vec<&FusionSubring> = primes
            .iter()
            .filter(|p| p.members().iter().all(|&m| x.contains(m)))
            .collect();
        let mut out: BTreeSet<Vec<FusionSubring>> = BTreeSet::new();
        if x.is_trivial() {
            out.insert(Vec::new());
        } else if inside.iter().any(|p| *p == x) {
            out.insert(vec![x.clone()]);
        } else {
            for p in inside {
                let rest = self.centralizer_of(p).intersection(x);
                for mut tail in self.unordered_factorizations(&rest, primes, memo) {
                    tail.push(p.clone());
                    tail.sort();
                    out.insert(tail);
                }
            }
        }
        let v: Vec<_> = out.into_iter().collect();
        memo.insert(x.clone(), v.clone());
        v
    }

    /// Backtracking search for k ↔ (a, b) matching d, θ, S and N.
    fn split_bijection(&self, d: &FusionSubring, e: &FusionSubring) -> Option<Vec<(usize, usize)>> {
        let (dm, em) = (d.members(), e.members());
        if dm.len() * em.len() != self.rank() {
            return None;
        }
        let pairs: Vec<(usize, usize)> = (0..dm.len())
            .flat_map(|a| (0..em.len()).map(move |b| (a, b)))
            .collect();
        let candidates: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (dm[a], em[b]);
                let d_xy = &self.dims[x] * &self.dims[y];
                let t_xy = &self.twists[x] * &self.twists[y];
                let mut c: Vec<usize> = (0..self.rank())
                    .filter(|&k| self.dims[k] == d_xy && self.twists[k] == t_xy)
                    .collect();
                // the fusion product is the expected image; try it first
                if let [(k, 1)] = self.ring.product(x, y) {
                    if let Some(pos) = c.iter().position(|c| c == k) {
                        c.swap(0, pos);
                    }
                }
                c
            })
            .collect();
        let mut image = vec![usize::MAX; pairs.len()];
        let mut used = vec![false; self.rank()];
        if !self.assign(0, &pairs, &candidates, dm, em, &mut image, &mut used) {
            return None;
        }
        // fusion rules under the bijection
        let idx = |a: usize, b: usize| image[a * em.len() + b];
        for p in 0..pairs.len() {
            for q in 0..pairs.len() {
                let (a1, b1) = pairs[p];
                let (a2, b2) = pairs[q];
                for a3 in 0..dm.len() {
                    for b3 in 0..em.len() {
                        let lhs = self.ring.n(image[p], image[q], idx(a3, b3));
                        let rhs = self.ring.n(dm[a1], dm[a2], dm[a3]) * self.ring.n(em[b1], em[b2], em[b3]);
                        if lhs != rhs {
                            return None;
                        }
                    }
                }
            }
        }
        let mut out = vec![(0, 0); self.rank()];
        for (p, &k) in image.iter().enumerate() {
            out[k] = pairs[p];
        }
        Some(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        p: usize,
        pairs: &[(usize, usize)],
        candidates: &[Vec<usize>],
        dm: &[usize],
        em: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if p == pairs.len() {
            return true;
        }
        let (a, b) = pairs[p];
        for &k in &candidates[p] {
            if used[k] {
                continue;
            }
            let consistent = (0..=p).all(|q| {
                let kq = if q == p { k } else { image[q] };
                let (a2, b2) = pairs[q];
                self.s[(k, kq)] == &self.s[(dm[a], dm[a2])] * &self.s[(em[b], em[b2])]
            });
            if !consistent {
                continue;
            }
            image[p] = k;
            used[k] = true;
            if self.assign(p + 1, pairs, candidates, dm, em, image, used) {
                return true;
            }
            used[k] = false;
            image[p] = usize::MAX;
        }
        false
    }
}

/// N_ij^k = (1/dim) Σ_r S_ir S_jr S_{k̄r} / S_0r, required to be a
/// nonnegative integer; returns the positive entries as (i, j, k, N).
pub fn verlinde_fusion(s: &CycMatrix, dual: &[usize]) -> Result<Vec<(usize, usize, usize, u64)>> {
    let r = s.rows();
    let dim: Cyc = (0..r).map(|i| &s[(0, i)] * &s[(0, i)]).sum();
    // w[x][k] = S_{k̄ x} / (dim · S_0x), so that N_i = S · diag(S_i·) · w
    let inv: Vec<Cyc> = (0..r)
        .map(|x| (&dim * &s[(0, x)]).inv())
        .collect::<Result<_>>()?;
    let w = CycMatrix::from_fn(r, r, |x, k| &s[(dual[k], x)] * &inv[x]);
    let mut entries = Vec::new();
    for i in 0..r {
        let n_i = s.scale_cols(s.row(i)).mul(&w);
        for j in 0..r {
            for k in 0..r {
                let n = &n_i[(j, k)];
                let value = n.as_integer().ok_or_else(|| {
                    Error::Internal(format!("Verlinde coefficient N_{i},{j}^{k} = {n} is not an integer"))
                })?;
                if value.is_negative() {
                    return Err(Error::Internal(format!("Verlinde coefficient N_{i},{j}^{k} is negative")));
                }
                let v = value.to_u64().expect("small multiplicity");
                if v > 0 {
                    entries.push((i, j, k, v));
                }
            }
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianGroup;

    fn semion() -> ModularData {
        let ring = FusionRing::pointed(&AbelianGroup::new(vec![2]));
        let one = Cyc::one();
        let s = CycMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![one.clone(), -&one]]);
        ModularData::new(ring, vec![one.clone(), one.clone()], vec![one, Cyc::root(4, 1)], s).unwrap()
    }

    #[test]
    fn semion_basics() {
        let md = semion();
        assert!(md.validate_premodular(24).is_valid());
        assert_eq!(md.global_dim(), Cyc::from_int(2));
        let m = md.is_modular().unwrap();
        assert!(m.modular && m.s_squared_is_dim_c);
        let g = md.gauss_sums().unwrap();
        assert_eq!(g.plus, &Cyc::one() + &Cyc::root(4, 1));
        assert!(!md.is_anomaly_free().unwrap());
        assert!(md.verify_modular_relations().unwrap().holds());
        assert!(md.verlinde_matches().unwrap());
    }

    #[test]
    fn semion_is_prime() {
        let f = semion().prime_factorize(24).unwrap();
        assert!(f.is_prime);
        assert_eq!(f.factorizations.len(), 1);
    }

    #[test]
    fn tampered_s_breaks_projection() {
        let md = semion();
        let mut s = md.s().clone();
        s[(1, 1)] = Cyc::from_int(2);
        let bad = ModularData::new(md.ring().clone(), md.dims().to_vec(), md.twists().to_vec(), s).unwrap();
        let rep = bad.validate_premodular(24);
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, DataViolation::Projection { .. })));
    }

    #[test]
    fn restriction_to_unit() {
        let md = semion();
        let t = md.restrict(&md.ring().trivial_subring());
        assert_eq!(t.rank(), 1);
        assert!(t.global_dim().is_one());
    }
}
