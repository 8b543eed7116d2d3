//! The SL(2,ℤ) representation attached to modular data.
//!
//! (S, T) is projective: S² = dim·C and (ST)³ = Ω⁺S². Rescaling s̄ = S/λ,
//! t̄ = T/μ with λ² = dim and μ³ = Ω⁺/λ gives a true representation. For the
//! congruence property the principal congruence subgroup Γ(N) is generated
//! by Schreier words read off a shortlex spanning tree of SL(2,ℤ/N).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::arith;
use crate::cyclotomic::{common_conductor, sqrt_rational, Cyc, CycMatrix, Dense, RootOfUnity};
use crate::error::{Error, Result};
use crate::modular_data::ModularData;

/// Largest level accepted by [`gamma_generators`].
pub const MAX_LEVEL: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S,
    SInv,
    T,
    TInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    fn matrix(self) -> [[i128; 2]; 2] {
        match self {
            Letter::S => [[0, -1], [1, 0]],
            Letter::SInv => [[0, 1], [-1, 0]],
            Letter::T => [[1, 1], [0, 1]],
            Letter::TInv => [[1, -1], [0, 1]],
        }
    }
}

/// A word in s, s⁻¹, t, t⁻¹; written with `S`, `T` for the inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2Word(pub Vec<Letter>);

impl SL2Word {
    pub fn inverse(&self) -> SL2Word {
        SL2Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Image in SL(2,ℤ) with s = [[0,−1],[1,0]], t = [[1,1],[0,1]], so that
    /// s⁴ = 1 and (st)³ = s², the relations the letter images satisfy.
    pub fn matrix(&self) -> Result<[[i128; 2]; 2]> {
        let mut m = [[1i128, 0], [0, 1]];
        for l in &self.0 {
            let x = l.matrix();
            let mut out = [[0i128; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = m[i][0]
                        .checked_mul(x[0][j])
                        .zip(m[i][1].checked_mul(x[1][j]))
                        .and_then(|(a, b)| a.checked_add(b))
                        .ok_or_else(|| Error::Internal("SL(2,ℤ) word overflowed".into()))?;
                }
            }
            m = out;
        }
        Ok(m)
    }

    pub fn is_identity_mod(&self, n: u64) -> Result<bool> {
        let m = self.matrix()?;
        let r = |x: i128| x.rem_euclid(n as i128);
        Ok(r(m[0][0]) == r(1) && r(m[0][1]) == 0 && r(m[1][0]) == 0 && r(m[1][1]) == r(1))
    }

    pub fn parse(s: &str) -> Result<SL2Word> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                's' => Ok(Letter::S),
                'S' => Ok(Letter::SInv),
                't' => Ok(Letter::T),
                'T' => Ok(Letter::TInv),
                other => Err(Error::parse("word", format!("unknown letter {other:?}"))),
            })
            .collect::<Result<_>>()
            .map(SL2Word)
    }
}

impl fmt::Display for SL2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            let c = match l {
                Letter::S => 's',
                Letter::SInv => 'S',
                Letter::T => 't',
                Letter::TInv => 'T',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Matrices assigned to the four letters.
#[derive(Clone, Debug)]
pub struct LetterImages {
    pub s: CycMatrix,
    pub s_inv: CycMatrix,
    pub t: CycMatrix,
    pub t_inv: CycMatrix,
}

impl LetterImages {
    /// The projective pair (S, T) itself, with S⁻¹ = C·S/dim.
    pub fn projective(md: &ModularData) -> Result<LetterImages> {
        let dim_inv = md.global_dim().inv()?;
        let t_inv: Vec<Cyc> = md.twists().iter().map(Cyc::inv).collect::<Result<_>>()?;
        Ok(LetterImages {
            s: md.s().clone(),
            s_inv: md.charge_conjugation().mul(md.s()).scale(&dim_inv),
            t: md.t(),
            t_inv: CycMatrix::diagonal(&t_inv),
        })
    }

    fn image(&self, l: Letter) -> &CycMatrix {
        match l {
            Letter::S => &self.s,
            Letter::SInv => &self.s_inv,
            Letter::T => &self.t,
            Letter::TInv => &self.t_inv,
        }
    }
}

/// A genuine representation s̄ = S/λ, t̄ = T/μ.
#[derive(Clone, Debug)]
pub struct TrueRep {
    pub lambda: Cyc,
    pub mu: Cyc,
    pub s: CycMatrix,
    pub t: CycMatrix,
    /// λ = Ω⁺ and μ = 1 on anomaly-free data.
    pub canonical: bool,
}

impl TrueRep {
    pub fn images(&self) -> Result<LetterImages> {
        let s2 = self.s.mul(&self.s);
        let t_inv: Vec<Cyc> = (0..self.t.rows()).map(|i| self.t[(i, i)].inv()).collect::<Result<_>>()?;
        Ok(LetterImages {
            s_inv: s2.mul(&self.s),
            s: self.s.clone(),
            t: self.t.clone(),
            t_inv: CycMatrix::diagonal(&t_inv),
        })
    }
}

/// Least N with θᵢᴺ = 1 for all i.
pub fn t_order(md: &ModularData) -> Result<u64> {
    md.twists().iter().try_fold(1u64, |acc, t| {
        let r = t
            .root_of_unity()
            .ok_or_else(|| Error::InvalidData("a twist is not a root of unity".into()))?;
        Ok(arith::lcm(acc, r.order as u64))
    })
}

/// The positive square root of dim C. Rational dimensions use Gauss-sum
/// radicals; otherwise √dim = Ω⁺/ξ with ξ² = Ω⁺/Ω⁻ a root of unity.
pub fn sqrt_dim(md: &ModularData) -> Result<Cyc> {
    let dim = md.global_dim();
    if let Some(r) = dim.as_rational() {
        return sqrt_rational(&r);
    }
    let g = md.gauss_sums()?;
    let ratio = g.plus.checked_div(&g.minus)?;
    let rou = ratio
        .root_of_unity()
        .ok_or_else(|| Error::RootConstruction("Ω⁺/Ω⁻ is not a root of unity".into()))?;
    let xi = Cyc::root(2 * rou.order, rou.exponent as i64);
    let mut root = g.plus.checked_div(&xi)?;
    if root.approx().re < 0.0 {
        root = -root;
    }
    if &root * &root != dim {
        return Err(Error::RootConstruction("√dim failed verification".into()));
    }
    Ok(root)
}

/// All six (λ, μ) with λ² = dim and μ³ = Ω⁺/λ, each verified to satisfy
/// s̄⁴ = 1 and (s̄t̄)³ = s̄².
pub fn renormalizations(md: &ModularData) -> Result<Vec<TrueRep>> {
    if !md.transparent_objects().is_trivial() {
        return Err(Error::Precondition("renormalization needs modular data".into()));
    }
    let g = md.gauss_sums()?;
    let anomaly_free = g.plus == g.minus;
    let root = sqrt_dim(md)?;
    let id = CycMatrix::identity(md.rank());
    let mut out = Vec::with_capacity(6);
    for lambda in [root.clone(), -&root] {
        let ratio = g.plus.checked_div(&lambda)?;
        let rou: RootOfUnity = ratio
            .root_of_unity()
            .ok_or_else(|| Error::RootConstruction("Ω⁺/λ is not a root of unity".into()))?;
        for mu in rou.cube_roots() {
            if mu.pow(3) != ratio {
                return Err(Error::RootConstruction("cube root failed verification".into()));
            }
            let s = md.s().scale(&lambda.inv()?);
            let mu_inv = mu.inv()?;
            let t = CycMatrix::diagonal(&md.twists().iter().map(|x| x * &mu_inv).collect::<Vec<_>>());
            let s2 = s.mul(&s);
            let st = s.mul(&t);
            let st3 = st.mul(&st).mul(&st);
            if s2.mul(&s2) != id || st3 != s2 {
                return Err(Error::Internal("renormalized pair is not a representation".into()));
            }
            let canonical = anomaly_free && lambda == g.plus && mu.is_one();
            out.push(TrueRep {
                lambda: lambda.clone(),
                mu,
                s,
                t,
                canonical,
            });
        }
    }
    Ok(out)
}

/// Product of letter images; the empty word gives the identity.
pub fn evaluate(images: &LetterImages, w: &SL2Word) -> CycMatrix {
    let mut m = CycMatrix::identity(images.s.rows());
    for &l in &w.0 {
        m = m.mul(images.image(l));
    }
    m
}

type Mat2 = [u64; 4];

fn act(m: Mat2, l: Letter, n: u64) -> Mat2 {
    let [a, b, c, d] = m;
    match l {
        Letter::S => [b, (n - a) % n, d, (n - c) % n],
        Letter::T => [a, (a + b) % n, c, (c + d) % n],
        _ => unreachable!("tree uses positive letters only"),
    }
}

/// Shortlex spanning tree of SL(2,ℤ/N) under right multiplication by s, t.
struct CosetTree {
    reps: Vec<SL2Word>,
    /// `edges[c][x]` = coset reached from c by letter x (0 = s, 1 = t).
    edges: Vec<[usize; 2]>,
    /// `parent[c] = (p, x)` for the tree edge into c.
    parent: Vec<Option<(usize, usize)>>,
}

fn coset_tree(n: u64) -> CosetTree {
    let m = n.max(1);
    let start: Mat2 = [1 % m, 0, 0, 1 % m];
    let mut index: HashMap<Mat2, usize> = HashMap::from([(start, 0)]);
    let mut elems = vec![start];
    let mut reps = vec![SL2Word::default()];
    let mut parent = vec![None];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let mut e = [0; 2];
        for (xi, l) in [Letter::S, Letter::T].into_iter().enumerate() {
            let y = act(elems[c], l, m);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elems.len();
                    index.insert(y, id);
                    elems.push(y);
                    let mut w = reps[c].clone();
                    w.0.push(l);
                    reps.push(w);
                    parent.push(Some((c, xi)));
                    queue.push_back(id);
                    id
                }
            };
            e[xi] = id;
        }
        if edges.len() <= c {
            edges.resize(c + 1, [0; 2]);
        }
        edges[c] = e;
    }
    CosetTree { reps, edges, parent }
}

#[derive(Clone, Debug)]
pub struct GammaGenerators {
    pub level: u64,
    pub cosets: usize,
    pub words: Vec<SL2Word>,
}

/// Schreier generators r·x·(rep of r·x)⁻¹ of Γ(N), each verified ≡ 1 mod N.
pub fn gamma_generators(n: u64) -> Result<GammaGenerators> {
    if !(1..=MAX_LEVEL).contains(&n) {
        return Err(Error::Precondition(format!("level must be in 1..={MAX_LEVEL}, got {n}")));
    }
    let tree = coset_tree(n);
    let mut words = Vec::new();
    for (c, e) in tree.edges.iter().enumerate() {
        for (xi, l) in [Letter::S, Letter::T].into_iter().enumerate() {
            let target = e[xi];
            if tree.parent[target] == Some((c, xi)) {
                continue;
            }
            let mut w = tree.reps[c].clone();
            w.0.push(l);
            w.0.extend(tree.reps[target].inverse().0);
            if !w.is_identity_mod(n)? {
                return Err(Error::Internal(format!("Schreier word {w} is not in Γ({n})")));
            }
            words.push(w);
        }
    }
    Ok(GammaGenerators {
        level: n,
        cosets: tree.reps.len(),
        words,
    })
}

/// |SL(2,ℤ/N)| = N³ Π_{p|N} (1 − p⁻²).
pub fn sl2_order(n: u64) -> u64 {
    arith::factorize(n)
        .into_iter()
        .fold(n * n * n, |acc, (p, _)| acc / (p * p) * (p * p - 1))
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub t_order: u64,
    /// Level actually used: ord(T), or 2·ord(T) after a failed first pass.
    pub level: u64,
    pub retried: bool,
    pub cosets: usize,
    pub generators: usize,
    pub lambda: Cyc,
    pub mu: Cyc,
    pub canonical: bool,
    /// Image of each Schreier generator under the chosen representation;
    /// `None` when it is not a scalar.
    pub scalars: Vec<Option<Cyc>>,
    /// On anomaly-free data with the canonical representation: every scalar is 1.
    pub all_one: Option<bool>,
}

impl CongruenceReport {
    pub fn all_scalar(&self) -> bool {
        self.scalars.iter().all(Option::is_some)
    }
}

/// Checks that Γ(N), N = ord(T), acts by scalars under a true representation
/// (the canonical one when anomaly-free, otherwise the first renormalization).
///
/// The image of a Schreier word r·x·(rx)⁻¹ is read off the spanning tree:
/// if P(r)·P(x) = κ·P(rx) for the unnormalized words, its image under
/// s̄ = S/λ, t̄ = T/μ is κ·λ^a·μ^b with a, b the letter-count differences.
pub fn congruence_check(md: &ModularData) -> Result<CongruenceReport> {
    let reps = renormalizations(md)?;
    let rep = reps.iter().find(|r| r.canonical).unwrap_or(&reps[0]).clone();
    let n = t_order(md)?;
    if n > MAX_LEVEL {
        return Err(Error::Precondition(format!("ord(T) = {n} exceeds {MAX_LEVEL}")));
    }
    let mut report = check_level(md, &rep, n, n)?;
    if !report.all_scalar() && 2 * n <= MAX_LEVEL {
        report = check_level(md, &rep, n, 2 * n)?;
        report.retried = true;
    }
    Ok(report)
}

/// (coset, letter index, target) for every edge outside the spanning tree.
fn non_tree_edges(tree: &CosetTree) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    (0..tree.reps.len()).flat_map(move |c| {
        (0..2).filter_map(move |xi| {
            let target = tree.edges[c][xi];
            (tree.parent[target] != Some((c, xi))).then_some((c, xi, target))
        })
    })
}

/// κ with P(rep c)·P(x) = κ·P(rep cx) for each non-tree edge, `None` where
/// the two sides are not proportional.
fn generic_kappas(md: &ModularData, tree: &CosetTree) -> Result<Vec<Option<Cyc>>> {
    let step = |m: &CycMatrix, xi: usize| if xi == 0 { m.mul(md.s()) } else { m.scale_cols(md.twists()) };
    let mut mats: Vec<Option<CycMatrix>> = vec![None; tree.reps.len()];
    mats[0] = Some(CycMatrix::identity(md.rank()));
    for (target, p) in tree.parent.iter().enumerate() {
        if let Some((c, xi)) = *p {
            mats[target] = Some(step(mats[c].as_ref().expect("parents precede children"), xi));
        }
    }
    non_tree_edges(tree)
        .map(|(c, xi, target)| step(mats[c].as_ref().unwrap(), xi).proportionality(mats[target].as_ref().unwrap()))
        .collect()
}

/// The same computation with machine-word entries; `None` on overflow.
fn dense_kappas(md: &ModularData, tree: &CosetTree) -> Result<Option<Vec<Option<Cyc>>>> {
    let t_row = CycMatrix::from_fn(1, md.rank(), |_, j| md.twists()[j].clone());
    let m = common_conductor([md.s(), &t_row]);
    let (Some(s), Some(id)) = (
        Dense::from_matrix(md.s(), m),
        Dense::from_matrix(&CycMatrix::identity(md.rank()), m),
    ) else {
        return Ok(None);
    };
    let step = |a: &Dense, xi: usize| if xi == 0 { a.mul(&s) } else { a.scale_cols(md.twists()) };
    let mut mats: Vec<Option<Dense>> = (0..tree.reps.len()).map(|_| None).collect();
    mats[0] = Some(id);
    for (target, p) in tree.parent.iter().enumerate() {
        if let Some((c, xi)) = *p {
            let Some(next) = step(mats[c].as_ref().expect("parents precede children"), xi) else {
                return Ok(None);
            };
            mats[target] = Some(next);
        }
    }
    let mut out = Vec::new();
    for (c, xi, target) in non_tree_edges(tree) {
        let Some(k) = step(mats[c].as_ref().unwrap(), xi).and_then(|p| p.proportionality(mats[target].as_ref().unwrap()))
        else {
            return Ok(None);
        };
        out.push(k);
    }
    Ok(Some(out))
}

fn check_level(md: &ModularData, rep: &TrueRep, t_ord: u64, level: u64) -> Result<CongruenceReport> {
    let tree = coset_tree(level);
    let count = |w: &SL2Word, l: Letter| w.0.iter().filter(|&&x| x == l).count() as i64;
    let kappas = match dense_kappas(md, &tree)? {
        Some(k) => k,
        None => generic_kappas(md, &tree)?,
    };
    let lambda_inv = rep.lambda.inv()?;
    let mu_inv = rep.mu.inv()?;
    let power = |base: &Cyc, inv: &Cyc, e: i64| if e >= 0 { base.pow(e as u64) } else { inv.pow((-e) as u64) };
    let mut scalars = Vec::new();
    for ((c, xi, target), kappa) in non_tree_edges(&tree).zip(kappas) {
        let l = [Letter::S, Letter::T][xi];
        let (rc, rt) = (&tree.reps[c], &tree.reps[target]);
        let a = count(rt, Letter::S) - count(rc, Letter::S) - i64::from(l == Letter::S);
        let b = count(rt, Letter::T) - count(rc, Letter::T) - i64::from(l == Letter::T);
        scalars.push(kappa.map(|k| &(&k * &power(&rep.lambda, &lambda_inv, a)) * &power(&rep.mu, &mu_inv, b)));
    }
    let all_one = rep
        .canonical
        .then(|| scalars.iter().all(|s| s.as_ref().is_some_and(Cyc::is_one)));
    Ok(CongruenceReport {
        t_order: t_ord,
        level,
        retried: false,
        cosets: tree.reps.len(),
        generators: scalars.len(),
        lambda: rep.lambda.clone(),
        mu: rep.mu.clone(),
        canonical: rep.canonical,
        scalars,
        all_one,
    })
}
