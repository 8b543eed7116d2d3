//! Exact arithmetic in cyclotomic fields ℚ(ζ_n).
//!
//! A [`Cyc`] stores its value in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`
//! reduced modulo the cyclotomic polynomial Φ_n, as integer numerators over a
//! single positive common denominator. Binary operations on values with
//! different conductors lift both operands to the lcm first. Results are never
//! compressed implicitly; [`Cyc::compress`] finds the minimal conductor.

mod dense;
mod field;
mod matrix;
mod roots;

pub(crate) use dense::{common_conductor, Dense};
pub use matrix::CycMatrix;
pub use roots::{sqrt_rational, RootOfUnity};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use field::field;

#[derive(Clone, Debug)]
pub struct Cyc {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    pub fn zero(n: u32) -> Self {
        let phi = field(n).phi;
        Cyc {
            n,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyc {
            n: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Cyc {
            n: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
        .normalized()
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()))
    }

    /// ζ_n^k; `k` is read modulo `n`.
    pub fn root(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let e = arith::rem_euclid(k, n as u64) as usize;
        Cyc {
            n,
            num: f.powers[e].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds a value from power-basis coordinates at conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("conductor", "must be positive"));
        }
        let phi = field(n).phi;
        if coeffs.len() != phi {
            return Err(Error::CoefficientCount {
                n,
                expected: phi,
                got: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Cyc { n, num, den }.normalized())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.is_zero() {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        self
    }

    /// The same value represented at conductor `m`, a multiple of the current one.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.n != 0 {
            return Err(Error::NotDivisible {
                from: self.n,
                to: m,
            });
        }
        Ok(self.lift_unchecked(m))
    }

    fn lift_unchecked(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        let target = field(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = j * step;
            if e < target.phi {
                num[e] += c;
            } else {
                for (slot, &p) in num.iter_mut().zip(&target.powers[e]) {
                    if p != 0 {
                        *slot += c * p;
                    }
                }
            }
        }
        Cyc {
            n: m,
            num,
            den: self.den.clone(),
        }
    }

    fn common(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = arith::lcm(a.n as u64, b.n as u64) as u32;
        (a.lift_unchecked(m), b.lift_unchecked(m))
    }

    fn add_sub(&self, other: &Cyc, negate: bool) -> Cyc {
        let (a, b) = if self.n == other.n {
            (None, None)
        } else {
            let (a, b) = Self::common(self, other);
            (Some(a), Some(b))
        };
        let a = a.as_ref().unwrap_or(self);
        let b = b.as_ref().unwrap_or(other);
        let num = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        Cyc { n: a.n, num, den }.normalized()
    }

    fn mul_impl(&self, other: &Cyc) -> Cyc {
        if let Some(r) = other.as_rational_fast() {
            return self.scale_int(&r.0, &r.1);
        }
        if let Some(r) = self.as_rational_fast() {
            return other.scale_int(&r.0, &r.1);
        }
        let (a, b) = if self.n == other.n {
            (None, None)
        } else {
            let (a, b) = Self::common(self, other);
            (Some(a), Some(b))
        };
        let a = a.as_ref().unwrap_or(self);
        let b = b.as_ref().unwrap_or(other);
        let f = field(a.n);
        let phi = f.phi;
        let mut r = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    r[i + j] += x * y;
                }
            }
        }
        for d in (phi..r.len()).rev() {
            if r[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[d]);
            for (j, &p) in f.poly[..phi].iter().enumerate() {
                if p != 0 {
                    r[d - phi + j] -= &c * p;
                }
            }
        }
        r.truncate(phi);
        Cyc {
            n: a.n,
            num: r,
            den: &a.den * &b.den,
        }
        .normalized()
    }

    fn as_rational_fast(&self) -> Option<(BigInt, BigInt)> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn scale_int(&self, p: &BigInt, q: &BigInt) -> Cyc {
        Cyc {
            n: self.n,
            num: self.num.iter().map(|c| c * p).collect(),
            den: &self.den * q,
        }
        .normalized()
    }

    /// Multiplication by a rational number.
    pub fn scale(&self, r: &BigRational) -> Cyc {
        self.scale_int(r.numer(), r.denom())
    }

    /// The Galois automorphism ζ_n ↦ ζ_n^k, `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyc {
        let f = field(self.n);
        let n = self.n as u64;
        let k = arith::rem_euclid(k, n) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * k) % self.n as usize;
            for (slot, &p) in num.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Cyc {
            n: self.n,
            num,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyc {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((p, q)) = self.as_rational_fast() {
            return Ok(Cyc::from_rational(&BigRational::new(q, p)));
        }
        // a^{-1} = (product of the other conjugates) / norm(a)
        let n = self.n as u64;
        let mut prod = Cyc::one();
        for k in 2..n {
            if arith::gcd(k, n) == 1 {
                prod = &prod * &self.galois(k as i64);
            }
        }
        let norm = (self * &prod)
            .as_rational()
            .ok_or_else(|| Error::Internal("field norm is not rational".into()))?;
        Ok(prod.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc> {
        if let Some((p, q)) = other.as_rational_fast() {
            if p.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale_int(&q, &p));
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e` for a signed exponent.
    pub fn powi(&self, e: i64) -> Result<Cyc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Numerical value at ζ_n = e^{2πi/n}; absolute error well below 1e-12
    /// for values of moderate height.
    pub fn approx(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            let coef = c.to_f64().unwrap_or(f64::NAN) / den;
            acc += Complex64::from_polar(coef, angle);
        }
        acc
    }

    /// The same value at its minimal conductor.
    pub fn compress(&self) -> Cyc {
        if self.n <= 2 || self.as_rational_fast().is_some() {
            return match self.as_rational() {
                Some(r) => Cyc::from_rational(&r),
                None => self.clone(),
            };
        }
        for d in arith::divisors(self.n as u64) {
            let d = d as u32;
            if d == self.n {
                break;
            }
            if let Some(c) = self.descend(d) {
                return c;
            }
        }
        self.clone()
    }

    /// Expresses the value in ℚ(ζ_d) for `d | n`, if it lies there.
    fn descend(&self, d: u32) -> Option<Cyc> {
        let big = field(self.n);
        let small = field(d);
        let step = (self.n / d) as usize;
        // columns: lifts of ζ_d^j, j < φ(d)
        let cols: Vec<&Vec<i64>> = (0..small.phi).map(|j| &big.powers[j * step]).collect();
        let rows = big.phi;
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut row: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::from_integer(c[i].into()))
                    .collect();
                row.push(BigRational::new(self.num[i].clone(), self.den.clone()));
                row
            })
            .collect();
        let ncols = small.phi;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for k in c..=ncols {
                        let v = &m[r][k] * &f;
                        m[i][k] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[ncols].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); ncols];
        for (i, &c) in pivots.iter().enumerate() {
            coeffs[c] = m[i][ncols].clone();
        }
        Cyc::from_coeffs(d, &coeffs).ok()
    }

    /// Total order used for canonical sorting: compares coordinate vectors at
    /// the common conductor.
    pub fn cmp_canonical(&self, other: &Cyc) -> Ordering {
        let (a, b) = Self::common(self, other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let o = (x * &b.den).cmp(&(y * &a.den));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyc {}

impl From<i64> for Cyc {
    fn from(v: i64) -> Self {
        Cyc::from_int(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                $body(self, rhs)
            }
        }
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                $body(&self, rhs)
            }
        }
        impl $tr<Cyc> for &Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyc, b: &Cyc| a.add_sub(b, false));
binop!(Sub, sub, |a: &Cyc, b: &Cyc| a.add_sub(b, true));
binop!(Mul, mul, |a: &Cyc, b: &Cyc| a.mul_impl(b));

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl std::iter::Sum for Cyc {
    fn sum<I: Iterator<Item = Cyc>>(iter: I) -> Cyc {
        iter.fold(Cyc::zero(1), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.compress();
        if c.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, coef) in c.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match j {
                0 => String::new(),
                1 => format!("ζ{}", c.n),
                _ => format!("ζ{}^{}", c.n, j),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}{root}")?;
            }
        }
        Ok(())
    }
}

/// Canonical text form of a rational: `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("rational {s:?}"), "expected \"p\" or \"p/q\"");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    n: u32,
    c: Vec<String>,
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.compress();
        CycJson {
            n: c.n,
            c: c.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        let coeffs = raw
            .c
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Cyc::from_coeffs(raw.n, &coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyc {
        Cyc::root(n, k)
    }

    #[test]
    fn roots_and_units() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 1).coeffs(), vec![BigRational::zero(), BigRational::one()]);
        assert_eq!(z(3, 1) + z(3, 2), Cyc::from_int(-1));
        assert_eq!(z(7, 7), Cyc::one());
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn mixed_conductor_equality() {
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        assert_eq!(z(2, 1), z(6, 3));
        assert_eq!(Cyc::from_int(-1), z(6, 3));
        let prod = (Cyc::one() + z(3, 1)) * (Cyc::one() + z(3, 2));
        assert!(prod.is_one());
    }

    #[test]
    fn lifting() {
        assert_eq!(z(2, 1).lift(6).unwrap(), z(6, 3));
        assert_eq!(z(3, 1).lift(12).unwrap(), z(12, 4));
        assert_eq!(z(3, 1).lift(12).unwrap().conductor(), 12);
        assert!(matches!(z(4, 1).lift(6), Err(Error::NotDivisible { .. })));
        let x = z(5, 2) + Cyc::from_ratio(1, 3);
        assert_eq!(x.lift(5).unwrap().coeffs(), x.coeffs());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert_eq!(Cyc::from_int(-1).conj(), Cyc::from_int(-1));
        let i = z(4, 1);
        assert_eq!((Cyc::one() + &i).conj(), Cyc::one() - &i);
    }

    #[test]
    fn division() {
        let a = Cyc::from_int(2) + z(7, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyc::zero(5).inv(), Err(Error::DivisionByZero));
        assert_eq!(a.checked_div(&Cyc::zero(1)), Err(Error::DivisionByZero));
        let q = Cyc::from_ratio(3, 4);
        assert_eq!(q.inv().unwrap(), Cyc::from_ratio(4, 3));
    }

    #[test]
    fn approximations() {
        let i = z(4, 1).approx();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let v = (Cyc::one() + Cyc::from_int(2) * z(3, 1)).approx();
        assert!((v - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert_eq!(Cyc::zero(3).approx(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn compression_finds_minimal_conductor() {
        let x = z(3, 1).lift(12).unwrap();
        assert_eq!(x.compress().conductor(), 3);
        assert_eq!(z(6, 3).compress().conductor(), 1);
        // ζ6 = -ζ3^2 lives in ℚ(ζ3)
        assert_eq!(z(6, 1).compress().conductor(), 3);
        // √2 = ζ8 + ζ8^7 stays at conductor 8
        assert_eq!((z(8, 1) + z(8, 7)).compress().conductor(), 8);
        // i + ζ3 needs conductor 12
        assert_eq!((z(4, 1) + z(3, 1)).compress().conductor(), 12);
    }

    #[test]
    fn json_form() {
        let x = Cyc::from_ratio(1, 2) * z(4, 1) + Cyc::from_int(3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":4,"c":["3","1/2"]}"#);
        let back: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Cyc>(r#"{"n":5,"c":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let x = Cyc::one() + Cyc::from_int(2) * z(3, 1);
        assert_eq!(x.to_string(), "1 + 2ζ3");
        assert_eq!(Cyc::from_ratio(-1, 2).to_string(), "-1/2");
    }
}
