//! Matrices over a single ℚ(ζ_m) with machine-word numerators.
//!
//! Products accumulate full polynomial products per entry and reduce modulo
//! Φ_m once, instead of once per term. Every operation returns `None` when a
//! value would leave the i128 range, so callers can fall back to [`Cyc`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{field, Field};
use super::{Cyc, CycMatrix};
use std::sync::Arc;

pub(crate) struct Dense {
    m: u32,
    f: Arc<Field>,
    rows: usize,
    cols: usize,
    den: i128,
    num: Vec<i128>,
}

/// Smallest conductor holding every entry of the given matrices.
pub(crate) fn common_conductor<'a>(ms: impl IntoIterator<Item = &'a CycMatrix>) -> u32 {
    let mut m = 1u64;
    for a in ms {
        for i in 0..a.rows() {
            for c in a.row(i) {
                if !c.is_zero() {
                    m = crate::arith::lcm(m, c.n as u64);
                }
            }
        }
    }
    m as u32
}

fn bits(v: i128) -> u32 {
    128 - v.unsigned_abs().leading_zeros()
}

impl Dense {
    pub fn from_matrix(a: &CycMatrix, m: u32) -> Option<Dense> {
        let f = field(m);
        let phi = f.phi;
        let mut den = BigInt::from(1);
        for i in 0..a.rows() {
            for c in a.row(i) {
                if !c.den.is_one() {
                    den = den.lcm(&c.den);
                }
            }
        }
        let den_small = den.to_i128()?;
        let mut num = vec![0i128; a.rows() * a.cols() * phi];
        for i in 0..a.rows() {
            for (j, c) in a.row(i).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if m % c.n != 0 {
                    return None;
                }
                let lifted = c.lift_unchecked(m);
                let factor = &den / &lifted.den;
                let base = (i * a.cols() + j) * phi;
                for (t, x) in lifted.num.iter().enumerate() {
                    if !x.is_zero() {
                        num[base + t] = (x * &factor).to_i128()?;
                    }
                }
            }
        }
        Some(Dense {
            m,
            f,
            rows: a.rows(),
            cols: a.cols(),
            den: den_small,
            num,
        })
    }

    /// `self · diag(d)`.
    pub fn scale_cols(&self, d: &[Cyc]) -> Option<Dense> {
        let diag = Dense::from_matrix(&CycMatrix::from_fn(1, d.len(), |_, j| d[j].clone()), self.m)?;
        let phi = self.f.phi;
        let mut num = vec![0i128; self.num.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let base = (i * self.cols + j) * phi;
                self.poly_product(self.entry(i, j), diag.entry(0, j), &mut num[base..base + phi])?;
            }
        }
        let mut out = Dense {
            m: self.m,
            f: self.f.clone(),
            rows: self.rows,
            cols: self.cols,
            den: self.den.checked_mul(diag.den)?,
            num,
        };
        out.normalize();
        Some(out)
    }

    pub fn to_matrix(&self) -> CycMatrix {
        let phi = self.f.phi;
        let den = BigInt::from(self.den);
        CycMatrix::from_fn(self.rows, self.cols, |i, j| {
            let base = (i * self.cols + j) * phi;
            let slice = &self.num[base..base + phi];
            if slice.iter().all(|&x| x == 0) {
                return Cyc::zero(1);
            }
            let coeffs: Vec<BigRational> = slice
                .iter()
                .map(|&x| BigRational::new(BigInt::from(x), den.clone()))
                .collect();
            Cyc::from_coeffs(self.m, &coeffs).expect("length matches φ(m)")
        })
    }

    fn max_bits(&self) -> u32 {
        self.num.iter().map(|&x| bits(x)).max().unwrap_or(0)
    }

    fn entry(&self, i: usize, j: usize) -> &[i128] {
        let phi = self.f.phi;
        let base = (i * self.cols + j) * phi;
        &self.num[base..base + phi]
    }

    /// Reduce a polynomial of degree < 2φ−1 modulo Φ_m into `out`.
    fn reduce(&self, acc: &[i128], out: &mut [i128]) -> Option<()> {
        let phi = self.f.phi;
        out.copy_from_slice(&acc[..phi]);
        for (d, &c) in acc.iter().enumerate().skip(phi) {
            if c == 0 {
                continue;
            }
            let p = &self.f.powers[d % self.m as usize];
            for (o, &pt) in out.iter_mut().zip(p) {
                if pt != 0 {
                    *o = o.checked_add(c.checked_mul(pt as i128)?)?;
                }
            }
        }
        Some(())
    }

    pub fn mul(&self, other: &Dense) -> Option<Dense> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.m, other.m, "conductor mismatch");
        let phi = self.f.phi;
        let inner = (self.cols * phi).max(1) as u128;
        let budget = self.max_bits() + other.max_bits() + (128 - inner.leading_zeros());
        if budget > 120 {
            return None;
        }
        let den = self.den.checked_mul(other.den)?;
        let mut num = vec![0i128; self.rows * other.cols * phi];
        let mut acc = vec![0i128; 2 * phi - 1];
        let mut out = Dense {
            m: self.m,
            f: self.f.clone(),
            rows: self.rows,
            cols: other.cols,
            den,
            num: Vec::new(),
        };
        for i in 0..self.rows {
            for j in 0..other.cols {
                acc.iter_mut().for_each(|x| *x = 0);
                let mut any = false;
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if a.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let b = other.entry(k, j);
                    for (s, &x) in a.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (t, &y) in b.iter().enumerate() {
                            acc[s + t] += x * y;
                        }
                    }
                    any = true;
                }
                if any {
                    let base = (i * other.cols + j) * phi;
                    out.reduce(&acc, &mut num[base..base + phi])?;
                }
            }
        }
        out.num = num;
        out.normalize();
        Some(out)
    }

    fn normalize(&mut self) {
        if self.den == 1 {
            return;
        }
        let mut g = self.den;
        for &x in &self.num {
            if g == 1 {
                return;
            }
            g = g.gcd(&x);
        }
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|x| *x /= g);
        }
    }

    fn poly_product(&self, a: &[i128], b: &[i128], out: &mut [i128]) -> Option<()> {
        let phi = self.f.phi;
        let mut acc = vec![0i128; 2 * phi - 1];
        for (s, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (t, &y) in b.iter().enumerate() {
                acc[s + t] = acc[s + t].checked_add(x.checked_mul(y)?)?;
            }
        }
        self.reduce(&acc, out)
    }

    /// `Some(Some(κ))` with `self = κ·other`, `Some(None)` when the two are
    /// not proportional, `None` on overflow.
    pub fn proportionality(&self, other: &Dense) -> Option<Option<Cyc>> {
        if self.rows != other.rows || self.cols != other.cols || self.m != other.m {
            return Some(None);
        }
        let phi = self.f.phi;
        let cells = self.rows * self.cols;
        let Some(k) = (0..cells).find(|&c| other.num[c * phi..(c + 1) * phi].iter().any(|&x| x != 0)) else {
            return Some(None);
        };
        let ak = &self.num[k * phi..(k + 1) * phi];
        let bk = &other.num[k * phi..(k + 1) * phi];
        let mut lhs = vec![0i128; phi];
        let mut rhs = vec![0i128; phi];
        for c in 0..cells {
            let a = &self.num[c * phi..(c + 1) * phi];
            let b = &other.num[c * phi..(c + 1) * phi];
            // a·b_k = a_k·b
            self.poly_product(a, bk, &mut lhs)?;
            self.poly_product(ak, b, &mut rhs)?;
            if lhs != rhs {
                return Some(None);
            }
        }
        let to_cyc = |v: &[i128], den: i128| {
            let d = BigInt::from(den);
            let coeffs: Vec<BigRational> = v.iter().map(|&x| BigRational::new(BigInt::from(x), d.clone())).collect();
            Cyc::from_coeffs(self.m, &coeffs).expect("length matches φ(m)")
        };
        let kappa = to_cyc(ak, self.den).checked_div(&to_cyc(bk, other.den)).ok()?;
        Some(Some(kappa))
    }
}
