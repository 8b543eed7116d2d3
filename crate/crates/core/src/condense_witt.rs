//! Condensation of pre-metric groups by isotropic subgroups, modularization,
//! anisotropic parts and Witt equivalence of pointed data.

use num_rational::Rational64;
use num_traits::Zero;

use crate::constructors;
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, PreMetricGroup, Subgroup};
use crate::modular_data::ModularData;
use crate::sl2z;

/// Isotropic enumeration refuses groups above this size.
pub const ISOTROPIC_BOUND: usize = 4096;

/// A subgroup on which q vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubgroup {
    pub subgroup: Subgroup,
    pub generators: Vec<usize>,
}

impl IsotropicSubgroup {
    /// Checks isotropy of the span of `generators`.
    pub fn new(m: &PreMetricGroup, generators: &[usize]) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= m.size()) {
            return Err(Error::Precondition(format!("element {g} is out of range")));
        }
        let subgroup = m.group().span(generators);
        if !m.is_isotropic(&subgroup) {
            return Err(Error::Precondition("subgroup is not isotropic".into()));
        }
        let generators = m.group().canonical_generators(&subgroup);
        Ok(IsotropicSubgroup { subgroup, generators })
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

/// All isotropic subgroups, sorted by (order, generators).
pub fn isotropic_subgroups(m: &PreMetricGroup) -> Result<Vec<IsotropicSubgroup>> {
    if m.size() > ISOTROPIC_BOUND {
        return Err(Error::GroupTooLarge {
            order: m.size(),
            bound: ISOTROPIC_BOUND,
        });
    }
    let mut out: Vec<IsotropicSubgroup> = m
        .group()
        .all_subgroups()
        .into_iter()
        .filter(|h| m.is_isotropic(h))
        .map(|h| IsotropicSubgroup {
            generators: m.group().canonical_generators(&h),
            subgroup: h,
        })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.generators).cmp(&(b.order(), &b.generators)));
    Ok(out)
}

/// H^⊥/H with the induced form, presented in invariant factors.
pub fn condense(m: &PreMetricGroup, h: &IsotropicSubgroup) -> Result<PreMetricGroup> {
    if !m.is_isotropic(&h.subgroup) {
        return Err(Error::Precondition("subgroup is not isotropic".into()));
    }
    quotient_form(m, &m.orthogonal(&h.subgroup), &h.subgroup)
}

/// The form on `k/h` for h ⊆ k with q constant on h-cosets of k.
fn quotient_form(m: &PreMetricGroup, k: &Subgroup, h: &Subgroup) -> Result<PreMetricGroup> {
    let a = m.group();
    let gens = a.canonical_generators(k);
    let p = a.quotient_presentation(&gens, h);
    let quotient = AbelianGroup::new(p.invariants.clone());
    let q = (0..quotient.size())
        .map(|x| {
            let c = quotient.decode(x);
            let elem = c
                .iter()
                .zip(&p.basis)
                .fold(0, |acc, (&ci, &bi)| a.add(acc, a.scale(bi, ci as i64)));
            m.q(elem)
        })
        .collect();
    PreMetricGroup::new(p.invariants, q)
}

/// (|A|/|H|, |A|/|H|²): the dimensions of the module and local-module data.
pub fn module_dims(m: &PreMetricGroup, h: &IsotropicSubgroup) -> Result<(u64, u64)> {
    let (a, k) = (m.size() as u64, h.order() as u64);
    if a % (k * k) != 0 {
        return Err(Error::Precondition(format!("|H|² = {} does not divide |A| = {a}", k * k)));
    }
    let condensed = condense(m, h)?.size() as u64;
    if condensed != a / (k * k) {
        return Err(Error::Precondition(format!(
            "condensed order {condensed} ≠ |A|/|H|² = {}; the form is degenerate",
            a / (k * k)
        )));
    }
    Ok((a / k, a / (k * k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    /// Trivial radical.
    Modular,
    /// q vanishes on a nontrivial radical.
    Modularizable,
    /// Radical of order 2 with q = 1/2 on its generator (super vector spaces).
    Almost,
    Other,
}

impl CenterKind {
    pub fn name(self) -> &'static str {
        match self {
            CenterKind::Modular => "modular",
            CenterKind::Modularizable => "modularizable",
            CenterKind::Almost => "almost",
            CenterKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterType {
    pub kind: CenterKind,
    pub radical: Subgroup,
    /// q on the radical's elements, in order.
    pub q_on_radical: Vec<Rational64>,
}

pub fn center_type(m: &PreMetricGroup) -> CenterType {
    let radical = m.radical();
    let q_on_radical: Vec<Rational64> = radical.elements().iter().map(|&x| m.q(x)).collect();
    let kind = if radical.is_trivial() {
        CenterKind::Modular
    } else if q_on_radical.iter().all(Zero::is_zero) {
        CenterKind::Modularizable
    } else if radical.order() == 2 && q_on_radical[1] == Rational64::new(1, 2) {
        CenterKind::Almost
    } else {
        CenterKind::Other
    };
    CenterType {
        kind,
        radical,
        q_on_radical,
    }
}

/// Quotient by the radical, for purely even radicals.
pub fn modularize(m: &PreMetricGroup) -> Result<PreMetricGroup> {
    let ct = center_type(m);
    match ct.kind {
        CenterKind::Modular => Ok(m.clone()),
        CenterKind::Modularizable => quotient_form(m, &m.group().whole(), &ct.radical),
        other => Err(Error::Precondition(format!(
            "center type is {}, not modularizable",
            other.name()
        ))),
    }
}

/// Smallest-order isotropic cyclic subgroup, ties broken by the generator.
fn minimal_isotropic(m: &PreMetricGroup) -> Option<IsotropicSubgroup> {
    let a = m.group();
    (1..m.size())
        .filter(|&x| m.q(x).is_zero())
        .min_by_key(|&x| (a.element_order(x), x))
        .map(|x| IsotropicSubgroup {
            subgroup: a.span(&[x]),
            generators: vec![x],
        })
}

/// Repeated condensation by minimal isotropic subgroups until no nonzero
/// isotropic vector remains.
pub fn anisotropic_part(m: &PreMetricGroup) -> Result<PreMetricGroup> {
    if !m.is_nondegenerate() {
        return Err(Error::Precondition("anisotropic part needs a non-degenerate form".into()));
    }
    let mut cur = m.clone();
    while let Some(h) = minimal_isotropic(&cur) {
        cur = condense(&cur, &h)?;
    }
    Ok(cur)
}

/// An isometry as the images of the standard generators of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub images: Vec<usize>,
}

/// Backtracking search for a group isomorphism preserving q.
pub fn find_isometry(m1: &PreMetricGroup, m2: &PreMetricGroup) -> Option<Isometry> {
    if m1.size() != m2.size() || m1.values_on(&m1.group().whole()) != m2.values_on(&m2.group().whole()) {
        return None;
    }
    let a1 = m1.group();
    let gens: Vec<usize> = (0..a1.rank())
        .map(|i| {
            let mut c = vec![0; a1.rank()];
            c[i] = 1;
            a1.encode(&c)
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    if search(m1, m2, &gens, &mut images) {
        Some(Isometry { images })
    } else {
        None
    }
}

fn search(m1: &PreMetricGroup, m2: &PreMetricGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
    let (a1, a2) = (m1.group(), m2.group());
    let i = images.len();
    if i == gens.len() {
        return is_isometry(m1, m2, images);
    }
    let order = a1.orders()[i];
    for y in 0..m2.size() {
        if a2.scale(y, order as i64) != 0 || m2.q(y) != m1.q(gens[i]) {
            continue;
        }
        if (0..i).any(|j| m2.b(y, images[j]) != m1.b(gens[i], gens[j])) {
            continue;
        }
        images.push(y);
        if search(m1, m2, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn is_isometry(m1: &PreMetricGroup, m2: &PreMetricGroup, images: &[usize]) -> bool {
    let (a1, a2) = (m1.group(), m2.group());
    let mut hit = vec![false; m2.size()];
    for x in 0..m1.size() {
        let y = a1
            .decode(x)
            .iter()
            .zip(images)
            .fold(0, |acc, (&c, &g)| a2.add(acc, a2.scale(g, c as i64)));
        if hit[y] || m2.q(y) != m1.q(x) {
            return false;
        }
        hit[y] = true;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittComparison {
    pub equivalent: bool,
    pub anisotropic: (PreMetricGroup, PreMetricGroup),
    /// Isometry from the first anisotropic part to the second.
    pub witness: Option<Isometry>,
}

pub fn witt_equivalent(m1: &PreMetricGroup, m2: &PreMetricGroup) -> Result<WittComparison> {
    let (p1, p2) = (anisotropic_part(m1)?, anisotropic_part(m2)?);
    let witness = find_isometry(&p1, &p2);
    Ok(WittComparison {
        equivalent: witness.is_some(),
        anisotropic: (p1, p2),
        witness,
    })
}

/// Ω⁺/√dim for modular data, verified to be a root of unity of modulus one.
pub fn central_charge(md: &ModularData) -> Result<Cyc> {
    if !md.transparent_objects().is_trivial() {
        return Err(Error::Precondition("central charge needs modular data".into()));
    }
    let xi = md.gauss_sums()?.plus.checked_div(&sl2z::sqrt_dim(md)?)?;
    if !(&xi * &xi.conj()).is_one() || xi.root_of_unity().is_none() {
        return Err(Error::RootConstruction("Ω⁺/√dim is not a root of unity".into()));
    }
    Ok(xi)
}

/// Central charge of the pointed datum of a non-degenerate form.
pub fn central_charge_of_form(m: &PreMetricGroup) -> Result<Cyc> {
    central_charge(&constructors::pointed(m)?)
}

/// Ω⁺ = Σ_x e^{2πi q(x)}.
pub fn gauss_sum_of_form(m: &PreMetricGroup) -> Cyc {
    m.q_values().iter().map(|&q| constructors::turn(q)).sum()
}

/// Recovers (A, q) from pointed modular data: A is the universal grading
/// group (the group of simples) and q(∂x) is read off θ_x. The S-matrix is
/// checked against e^{−2πi b}.
pub fn form_from_pointed(md: &ModularData) -> Result<PreMetricGroup> {
    let ring = md.ring();
    if ring.invertibles().elements.len() != md.rank() {
        return Err(Error::Precondition("data is not pointed".into()));
    }
    let grading = ring.grading()?;
    if grading.group.size() != md.rank() {
        return Err(Error::Internal("grading of a pointed ring is not bijective".into()));
    }
    let mut q = vec![Rational64::zero(); md.rank()];
    for (x, &g) in grading.degree.iter().enumerate() {
        let r = md.twists()[x]
            .root_of_unity()
            .ok_or_else(|| Error::InvalidData(format!("θ_{x} is not a root of unity")))?;
        q[g] = Rational64::new(r.exponent as i64, r.order as i64);
    }
    let m = PreMetricGroup::new(grading.group.orders().to_vec(), q)?;
    for x in 0..md.rank() {
        for y in 0..md.rank() {
            let b = m.b(grading.degree[x], grading.degree[y]);
            if md.s()[(x, y)] != constructors::turn(-b) {
                return Err(Error::InvalidData(format!(
                    "S_{x},{y} does not match the form read off the twists"
                )));
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn semion() -> PreMetricGroup {
        PreMetricGroup::new(vec![2], vec![r(0, 1), r(1, 4)]).unwrap()
    }

    #[test]
    fn toric_code_isotropics() {
        let m = constructors::double_form(&[2]);
        let iso = isotropic_subgroups(&m).unwrap();
        assert_eq!(iso.len(), 3);
        let lagrangian = &iso[1];
        assert_eq!(condense(&m, lagrangian).unwrap().size(), 1);
        assert_eq!(module_dims(&m, lagrangian).unwrap(), (2, 1));
    }

    #[test]
    fn semion_is_anisotropic() {
        let s = semion();
        assert_eq!(isotropic_subgroups(&s).unwrap().len(), 1);
        assert_eq!(anisotropic_part(&s).unwrap(), s);
        assert!(!witt_equivalent(&s, &s.negated()).unwrap().equivalent);
        assert!(witt_equivalent(&s, &s).unwrap().equivalent);
    }

    #[test]
    fn modularization_of_degenerate_form() {
        let m = PreMetricGroup::from_fn(vec![2, 2], |c| r((c[0] * c[0]) as i64, 4)).unwrap();
        let ct = center_type(&m);
        assert_eq!(ct.kind, CenterKind::Modularizable);
        let q = modularize(&m).unwrap();
        assert!(find_isometry(&q, &semion()).is_some());
        let svec = PreMetricGroup::new(vec![2], vec![r(0, 1), r(1, 2)]).unwrap();
        assert_eq!(center_type(&svec).kind, CenterKind::Almost);
        assert!(modularize(&svec).is_err());
    }

    #[test]
    fn semion_central_charge() {
        assert_eq!(central_charge_of_form(&semion()).unwrap(), Cyc::root(8, 1));
    }

    #[test]
    fn form_round_trip() {
        let m = constructors::double_form(&[3]);
        let back = form_from_pointed(&constructors::pointed(&m).unwrap()).unwrap();
        assert!(find_isometry(&m, &back).is_some());
    }
}
