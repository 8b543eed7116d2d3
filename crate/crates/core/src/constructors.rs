//! Builders for modular data: pointed categories of pre-metric groups, the
//! doubles C(A) = A × Â, the diagonal subcategories D_N, Drinfeld doubles of
//! finite groups, Deligne products and reversed braidings.
//!
//! Braiding convention: with θ_x = e^{2πi q(x)}, a pointed datum has
//! S_xy = e^{−2πi b(x,y)}, the trace of the double braiding of x̄ with y.
//! This is the convention under which (S, T) satisfies TSTST = Ω⁺S; the
//! opposite sign is what [`reverse`] produces from the reversed form.

use num_rational::Rational64;

use crate::cyclotomic::{Cyc, CycMatrix};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::groups::{CharacterTable, FiniteGroup, PreMetricGroup};
use crate::modular_data::{verlinde_fusion, ModularData};

/// e^{2πi r} for a rational number of turns.
pub fn turn(r: Rational64) -> Cyc {
    Cyc::root(*r.denom() as u32, *r.numer())
}

/// The rank-one datum (Vec).
pub fn trivial() -> ModularData {
    pointed_unchecked(&PreMetricGroup::zero(vec![]))
}

/// The pointed datum of a pre-metric group: fusion is the group law,
/// d_x = 1, θ_x = e^{2πi q(x)}, S_xy = e^{−2πi b(x,y)}.
pub fn pointed(m: &PreMetricGroup) -> Result<ModularData> {
    if let Some(v) = m.validate().violations.first() {
        return Err(Error::InvalidForm(v.to_string()));
    }
    Ok(pointed_unchecked(m))
}

fn pointed_unchecked(m: &PreMetricGroup) -> ModularData {
    let n = m.size();
    let ring = FusionRing::pointed(m.group());
    let twists = m.q_values().iter().map(|&q| turn(q)).collect();
    let s = CycMatrix::from_fn(n, n, |x, y| turn(-m.b(x, y)));
    ModularData::new(ring, vec![Cyc::one(); n], twists, s).expect("shapes agree")
}

/// The form of C(A) on A ⊕ Â: q(g, φ) = φ(g).
pub fn double_form(orders: &[u64]) -> PreMetricGroup {
    PreMetricGroup::hyperbolic(orders)
}

/// C(A) = A × Â with θ(g, φ) = φ(g). Simples are ordered by the mixed-radix
/// index of (g₁, …, φ₁, …).
pub fn double_abelian(orders: &[u64]) -> ModularData {
    pointed_unchecked(&double_form(orders))
}

/// The pointed datum on ℤ/N with q(k) = k²/N, for odd N. Checked against
/// the restriction of C(ℤ/N) to the diagonal objects (k, k).
pub fn diagonal_dn(n: u64) -> Result<ModularData> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Precondition(format!("D_N needs odd N ≥ 1, got {n}")));
    }
    let md = pointed_unchecked(&diagonal_form(n));
    if n > 1 {
        let double = double_abelian(&[n]);
        let diagonal: Vec<usize> = (0..n as usize).map(|k| k * (n as usize + 1)).collect();
        let restricted = double.restrict(&double.ring().subring(&diagonal)?);
        if restricted != md {
            return Err(Error::Internal(format!("D_{n} differs from the diagonal of C(ℤ/{n})")));
        }
    }
    Ok(md)
}

pub(crate) fn diagonal_form(n: u64) -> PreMetricGroup {
    let orders = if n == 1 { vec![] } else { vec![n] };
    PreMetricGroup::from_fn(orders, |c| {
        let k = c.first().copied().unwrap_or(0) as i64;
        Rational64::new(k * k, n as i64)
    })
    .expect("k²/N is a quadratic form")
}

/// A simple object of D(G): a conjugacy class and an irreducible character
/// of the centralizer of its representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleSimple {
    pub class: usize,
    pub character: usize,
}

/// D(G) with simples ordered by (class, character); see
/// [`drinfeld_double_labeled`] for the labels.
pub fn drinfeld_double(g: &FiniteGroup, bound: usize) -> Result<ModularData> {
    drinfeld_double_labeled(g, bound).map(|(md, _)| md)
}

/// D(G) via
///
/// S_{(a,α),(b,β)} = |G| / (|C(a)| |C(b)|) · Σ_{g : [a, gbg⁻¹] = 1} conj(α(gbg⁻¹) β(g⁻¹ag)),
///
/// d = |[a]|·α(1), θ = α(a)/α(1), and fusion by the Verlinde formula. The
/// result is checked for integral fusion and S² = dim·C before returning.
pub fn drinfeld_double_labeled(g: &FiniteGroup, bound: usize) -> Result<(ModularData, Vec<DoubleSimple>)> {
    let n = g.order();
    if n > bound {
        return Err(Error::GroupTooLarge { order: n, bound });
    }
    let classes = g.conjugacy_classes();
    struct Block {
        rep: usize,
        /// ambient index → centralizer index
        local: Vec<usize>,
        order: usize,
        table: CharacterTable,
        class_map: Vec<usize>,
    }
    let mut blocks = Vec::with_capacity(classes.len());
    for class in &classes {
        let rep = class[0];
        let (elements, sub) = g.centralizer(rep);
        let table = CharacterTable::compute(&sub, bound)?;
        let mut local = vec![usize::MAX; n];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        let class_map = table.class_map(sub.order());
        blocks.push(Block {
            rep,
            local,
            order: sub.order(),
            table,
            class_map,
        });
    }
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    let mut twists = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        let size = Cyc::from_int(classes[k].len() as i64);
        for c in 0..b.table.chars.len() {
            let chi = &b.table.chars[c];
            let deg = &chi[b.class_map[0]];
            let at_rep = &chi[b.class_map[b.local[b.rep]]];
            labels.push(DoubleSimple { class: k, character: c });
            dims.push(&size * deg);
            twists.push(at_rep.checked_div(deg)?);
        }
    }
    let r = labels.len();
    // for each pair of classes: the (α-argument, β-argument) local pairs
    let mut pairs = vec![Vec::new(); blocks.len() * blocks.len()];
    for (k, bk) in blocks.iter().enumerate() {
        for (l, bl) in blocks.iter().enumerate() {
            let (a, b) = (bk.rep, bl.rep);
            for x in 0..n {
                let conj_b = g.conjugate(x, b);
                if g.mul(a, conj_b) != g.mul(conj_b, a) {
                    continue;
                }
                let back = g.conjugate(g.inv(x), a);
                pairs[k * blocks.len() + l].push((bk.local[conj_b], bl.local[back]));
            }
        }
    }
    let mut s = CycMatrix::zeros(r, r);
    for (p, sp) in labels.iter().enumerate() {
        for (q, sq) in labels.iter().enumerate().skip(p) {
            let (bk, bl) = (&blocks[sp.class], &blocks[sq.class]);
            let alpha = &bk.table.chars[sp.character];
            let beta = &bl.table.chars[sq.character];
            let sum: Cyc = pairs[sp.class * blocks.len() + sq.class]
                .iter()
                .map(|&(u, v)| &alpha[bk.class_map[u]] * &beta[bl.class_map[v]])
                .sum();
            let factor = Cyc::from_ratio(n as i64, (bk.order * bl.order) as i64);
            let value = (&factor * &sum).conj();
            s[(q, p)] = value.clone();
            s[(p, q)] = value;
        }
    }
    let dual: Vec<usize> = (0..r)
        .map(|i| {
            let conj: Vec<Cyc> = s.row(i).iter().map(Cyc::conj).collect();
            let found: Vec<usize> = (0..r).filter(|&j| s.row(j) == conj.as_slice()).collect();
            match found.as_slice() {
                [j] => Ok(*j),
                _ => Err(Error::Internal(format!("no unique dual for simple {i} of D(G)"))),
            }
        })
        .collect::<Result<_>>()?;
    let entries = verlinde_fusion(&s, &dual)?;
    let ring = FusionRing::new(r, dual, &entries)?;
    let md = ModularData::new(ring, dims, twists, s)?;
    if !md.is_modular()?.modular {
        return Err(Error::Internal("D(G) came out degenerate".into()));
    }
    Ok((md, labels))
}

/// Kronecker product on index pairs (a, b) ↦ a·rank₂ + b.
pub fn deligne_product(x: &ModularData, y: &ModularData) -> ModularData {
    let r2 = y.rank();
    let r = x.rank() * r2;
    let kron = |u: &[Cyc], v: &[Cyc]| -> Vec<Cyc> {
        u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
    };
    let s = CycMatrix::from_fn(r, r, |i, j| &x.s()[(i / r2, j / r2)] * &y.s()[(i % r2, j % r2)]);
    ModularData::new(
        x.ring().tensor(y.ring()),
        kron(x.dims(), y.dims()),
        kron(x.twists(), y.twists()),
        s,
    )
    .expect("shapes agree")
}

/// The opposite braiding: θ and S conjugated.
pub fn reverse(md: &ModularData) -> ModularData {
    ModularData::new(
        md.ring().clone(),
        md.dims().to_vec(),
        md.twists().iter().map(Cyc::conj).collect(),
        md.s().map(Cyc::conj),
    )
    .expect("shapes agree")
}
