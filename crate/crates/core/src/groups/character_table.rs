//! Exact character tables by Dixon's modular method.
//!
//! Central characters ω_χ(C_j) = |C_j|·χ(g_j)/χ(1) are the common
//! eigenvectors of the class-multiplication matrices. They are computed over
//! 𝔽_p for a prime p ≡ 1 (mod exponent(G)), after which each character value
//! is recovered exactly as Σ_l m_l ζ^l from the eigenvalue multiplicities
//! m_l, obtained by a discrete Fourier transform over the powers of a class
//! representative. The result is verified by exact orthogonality over [`Cyc`].

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteGroup;
use crate::arith;
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    /// Conjugacy classes, each sorted; `classes[k][0]` is the representative.
    pub classes: Vec<Vec<usize>>,
    /// `chars[i][k]` = χ_i on class k.
    pub chars: Vec<Vec<Cyc>>,
}

/// Outcome of checking a (possibly externally supplied) table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterTableReport {
    pub problems: Vec<String>,
}

impl CharacterTableReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl CharacterTable {
    /// Computes the table, rejecting groups above `bound` elements.
    pub fn compute(g: &FiniteGroup, bound: usize) -> Result<Self> {
        if g.order() > bound {
            return Err(Error::GroupTooLarge {
                order: g.order(),
                bound,
            });
        }
        let table = dixon(g)?;
        let report = table.validate(g);
        if !report.is_valid() {
            return Err(Error::Internal(format!(
                "character table failed verification: {}",
                report.problems.join("; ")
            )));
        }
        Ok(table)
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.chars
            .iter()
            .map(|row| {
                row[0]
                    .as_integer()
                    .and_then(|d| u64::try_from(d).ok())
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Class index of every group element.
    pub fn class_map(&self, order: usize) -> Vec<usize> {
        let mut map = vec![usize::MAX; order];
        for (k, class) in self.classes.iter().enumerate() {
            for &x in class {
                map[x] = k;
            }
        }
        map
    }

    /// χ_i evaluated at an element.
    pub fn value(&self, class_map: &[usize], i: usize, x: usize) -> &Cyc {
        &self.chars[i][class_map[x]]
    }

    /// Checks class partition, Σχ(1)² = |G|, and row and column orthogonality.
    pub fn validate(&self, g: &FiniteGroup) -> CharacterTableReport {
        let mut problems = Vec::new();
        let n = g.order();
        let mut expected = g.conjugacy_classes();
        let mut given = self.classes.clone();
        expected.sort();
        given.iter_mut().for_each(|c| c.sort_unstable());
        given.sort();
        if expected != given {
            problems.push("classes are not the conjugacy classes of the group".into());
            return CharacterTableReport { problems };
        }
        let r = self.classes.len();
        if self.chars.len() != r || self.chars.iter().any(|row| row.len() != r) {
            problems.push(format!("table must be {r}×{r}"));
            return CharacterTableReport { problems };
        }
        let id_class = self.classes.iter().position(|c| c.contains(&0)).unwrap();
        let inv_class: Vec<usize> = {
            let map = self.class_map(n);
            self.classes.iter().map(|c| map[g.inv(c[0])]).collect()
        };
        let sum_sq: Cyc = self
            .chars
            .iter()
            .map(|row| &row[id_class] * &row[id_class])
            .sum();
        if sum_sq != Cyc::from_int(n as i64) {
            problems.push(format!("Σ χ(e)² = {sum_sq}, expected {n}"));
        }
        let order = Cyc::from_int(n as i64);
        for i in 0..r {
            for j in 0..=i {
                let ip: Cyc = (0..r)
                    .map(|k| {
                        let h = Cyc::from_int(self.classes[k].len() as i64);
                        &h * &(&self.chars[i][k] * &self.chars[j][inv_class[k]])
                    })
                    .sum();
                let want = if i == j { order.clone() } else { Cyc::zero(1) };
                if ip != want {
                    problems.push(format!("rows {i} and {j} are not orthonormal"));
                }
            }
        }
        for k in 0..r {
            for l in 0..=k {
                let s: Cyc = (0..r)
                    .map(|i| &self.chars[i][k] * &self.chars[i][inv_class[l]])
                    .sum();
                let want = if k == l {
                    Cyc::from_int((n / self.classes[k].len()) as i64)
                } else {
                    Cyc::zero(1)
                };
                if s != want {
                    problems.push(format!("columns {k} and {l} are not orthogonal"));
                }
            }
        }
        CharacterTableReport { problems }
    }
}

fn dixon(g: &FiniteGroup) -> Result<CharacterTable> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let e = g.exponent();

    // a[j][i][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_i}
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck[0];
        for (j, cj) in classes.iter().enumerate() {
            for &x in cj {
                let i = class_of[g.mul(g.inv(x), z)];
                structure[j][i][k] += 1;
            }
        }
    }

    let bound = (4 * n).max(10 * r * r).max(100) as u64;
    let mut p = (bound / e + 1) * e + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _attempt in 0..64 {
        while !arith::is_prime(p) {
            p += e;
        }
        let combo: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
        let mut m = vec![vec![0u64; r]; r];
        for (j, &c) in combo.iter().enumerate() {
            for i in 0..r {
                for k in 0..r {
                    m[i][k] = (m[i][k] + c * (structure[j][i][k] % p)) % p;
                }
            }
        }
        let poly = charpoly_mod(&m, p);
        let roots: Vec<u64> = (0..p).filter(|&x| eval_mod(&poly, x, p) == 0).collect();
        if roots.len() != r {
            p += e;
            continue;
        }
        let mut eigvecs = Vec::with_capacity(r);
        for &lambda in &roots {
            let mut a = m.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = (row[i] + p - lambda) % p;
            }
            match null_vector(a, p) {
                Some(v) if v[0] != 0 => {
                    let s = arith::inv_mod(v[0], p);
                    eigvecs.push(v.iter().map(|&x| x * s % p).collect::<Vec<u64>>());
                }
                _ => break,
            }
        }
        if eigvecs.len() != r {
            p += e;
            continue;
        }
        return lift_characters(g, &classes, &class_of, &sizes, &inv_class, &eigvecs, p, e);
    }
    Err(Error::Internal("Dixon's method failed to split the class algebra".into()))
}

#[allow(clippy::too_many_arguments)]
fn lift_characters(
    g: &FiniteGroup,
    classes: &[Vec<usize>],
    class_of: &[usize],
    sizes: &[u64],
    inv_class: &[usize],
    eigvecs: &[Vec<u64>],
    p: u64,
    e: u64,
) -> Result<CharacterTable> {
    let n = g.order() as u64;
    let r = classes.len();
    let z = arith::primitive_root(p);
    let omega_e = arith::pow_mod(z, (p - 1) / e, p);
    let mut chars = Vec::with_capacity(r);
    for v in eigvecs {
        // χ(1)² = |G| / Σ_k ω_k ω_{k*} / h_k
        let s = (0..r).fold(0, |acc, k| {
            (acc + v[k] * v[inv_class[k]] % p * arith::inv_mod(sizes[k] % p, p)) % p
        });
        if s == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = n % p * arith::inv_mod(s, p) % p;
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Internal("no integral degree".into()))?;
        let values_mod: Vec<u64> = (0..r)
            .map(|k| v[k] * (degree % p) % p * arith::inv_mod(sizes[k] % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(r);
        for class in classes {
            let x = class[0];
            let o = g.element_order(x);
            let omega_o = arith::pow_mod(omega_e, e / o, p);
            let inv_o = arith::inv_mod(o % p, p);
            let powers: Vec<u64> = (0..o).map(|j| values_mod[class_of[g.pow(x, j)]]).collect();
            let mut value = Cyc::zero(e as u32);
            for l in 0..o {
                let mut acc = 0;
                for (j, &cv) in powers.iter().enumerate() {
                    let w = arith::pow_mod(omega_o, (o - (j as u64 * l) % o) % o, p);
                    acc = (acc + cv * w) % p;
                }
                let mult = acc * inv_o % p;
                if mult > degree {
                    return Err(Error::Internal("eigenvalue multiplicity out of range".into()));
                }
                if mult > 0 {
                    let term = Cyc::root(e as u32, (l * (e / o)) as i64);
                    value = &value + &term.scale(&BigRational::from_integer((mult as i64).into()));
                }
            }
            row.push(value);
        }
        chars.push(row);
    }
    // by degree, with the trivial character leading
    chars.sort_by(|a, b| {
        let da = a[0].as_integer().unwrap_or_default();
        let db = b[0].as_integer().unwrap_or_default();
        let trivial = |row: &[Cyc]| row.iter().all(Cyc::is_one);
        da.cmp(&db).then(trivial(b).cmp(&trivial(a))).then_with(|| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.cmp_canonical(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(CharacterTable {
        classes: classes.to_vec(),
        chars,
    })
}

fn eval_mod(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
fn charpoly_mod(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = arith::inv_mod(h[k + 1][k], p);
        for i in k + 2..n {
            let f = h[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - f * h[k + 1][j] % p) % p;
            }
            // similarity: column k+1 += f · column i
            for row in h.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % p;
            }
        }
    }
    // polys[m] = char poly of leading m×m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        let idx = mm - 1;
        // (x - h[idx][idx]) · polys[mm-1]
        let prev = &polys[mm - 1];
        let mut next = vec![0u64; mm + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - c * h[idx][idx] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..idx).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = h[i][idx] * prod % p;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// A nonzero vector in the kernel of a matrix with one-dimensional kernel.
fn null_vector(mut a: Vec<Vec<u64>>, p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = arith::inv_mod(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - f * a[row][j] % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![0u64; n];
    v[free] = 1;
    for (i, &c) in pivot_cols.iter().enumerate() {
        v[c] = (p - a[i][free]) % p;
    }
    Some(v)
}

/// Characters of an abelian group by brute-force search for homomorphisms
/// into μ_e, rows sorted; an independent oracle for the tests.
#[cfg(test)]
pub(crate) fn abelian_oracle(g: &FiniteGroup) -> Vec<Vec<Cyc>> {
    // characters = homomorphisms to μ_e, found by brute force on generators
    let n = g.order();
    let e = g.exponent() as u32;
    let mut out = Vec::new();
    // enumerate all maps x ↦ ζ_e^{f(x)} that are homomorphisms, via a
    // search over a generating set
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for x in 0..n {
        if !span.contains(&x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    while let Some(partial) = stack.pop() {
        if partial.len() == gens.len() {
            if let Some(f) = extend_hom(g, &gens, &partial, e) {
                out.push(f);
            }
            continue;
        }
        for v in 0..e {
            let mut next = partial.clone();
            next.push(v);
            stack.push(next);
        }
    }
    let classes = g.conjugacy_classes();
    let mut rows: Vec<Vec<Cyc>> = out
        .into_iter()
        .map(|f| classes.iter().map(|c| Cyc::root(e, f[c[0]] as i64)).collect())
        .collect();
    rows.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.cmp_canonical(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    rows.dedup();
    rows
}

#[cfg(test)]
fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut s = vec![0usize];
    let mut i = 0;
    while i < s.len() {
        for &x in gens {
            let y = g.mul(s[i], x);
            if !s.contains(&y) {
                s.push(y);
            }
        }
        i += 1;
    }
    s
}

#[cfg(test)]
fn extend_hom(g: &FiniteGroup, gens: &[usize], images: &[u32], e: u32) -> Option<Vec<u32>> {
    let n = g.order();
    let mut f: Vec<Option<u32>> = vec![None; n];
    f[0] = Some(0);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&s, &v) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let val = (f[x].unwrap() + v) % e;
            match f[y] {
                Some(w) if w != val => return None,
                Some(_) => {}
                None => {
                    f[y] = Some(val);
                    queue.push(y);
                }
            }
        }
    }
    Some(f.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;

    #[test]
    fn cyclic_three() {
        let t = CharacterTable::compute(&builtin::cyclic(3), 200).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let z3 = [Cyc::one(), Cyc::root(3, 1), Cyc::root(3, 2)];
        for row in &t.chars {
            assert!(row.iter().all(|v| z3.contains(v)));
        }
    }

    #[test]
    fn abelian_tables_match_dual_group_oracle() {
        for g in [builtin::cyclic(4), builtin::cyclic(6), FiniteGroup::abelian(&[2, 2]), FiniteGroup::abelian(&[2, 4])] {
            let t = CharacterTable::compute(&g, 200).unwrap();
            assert!(t.chars[0].iter().all(Cyc::is_one));
            let mut got = t.chars.clone();
            got.sort_by(|a, b| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.cmp_canonical(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            assert_eq!(got, abelian_oracle(&g));
        }
    }

    #[test]
    fn nonabelian_degrees() {
        assert_eq!(CharacterTable::compute(&builtin::s3(), 200).unwrap().degrees(), vec![1, 1, 2]);
        assert_eq!(CharacterTable::compute(&builtin::d4(), 200).unwrap().degrees(), vec![1, 1, 1, 1, 2]);
        assert_eq!(CharacterTable::compute(&builtin::q8(), 200).unwrap().degrees(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn bound_is_enforced() {
        let err = CharacterTable::compute(&builtin::cyclic(12), 10).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { order: 12, bound: 10 });
    }

    #[test]
    fn tampered_table_fails_validation() {
        let g = builtin::s3();
        let mut t = CharacterTable::compute(&g, 200).unwrap();
        t.chars[2][1] = Cyc::zero(1);
        assert!(!t.validate(&g).is_valid());
    }
}
