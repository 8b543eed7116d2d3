//! Roots of unity and square roots of rationals inside cyclotomic fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::field;
use super::Cyc;
use crate::arith;
use crate::error::{Error, Result};

/// e^{2πi·exponent/order} with `gcd(exponent, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: u32,
}

impl RootOfUnity {
    pub fn new(exponent: i64, modulus: u32) -> Self {
        let e = arith::rem_euclid(exponent, modulus as u64);
        let g = arith::gcd(e, modulus as u64).max(1);
        let (e, m) = (e / g, modulus as u64 / g);
        RootOfUnity {
            order: m as u32,
            exponent: if m == 1 { 0 } else { e as u32 },
        }
    }

    pub fn to_cyc(self) -> Cyc {
        Cyc::root(self.order, self.exponent as i64)
    }

    /// The three cube roots, at conductor `3·order`.
    pub fn cube_roots(self) -> [Cyc; 3] {
        let m = 3 * self.order;
        let e = self.exponent as i64;
        let o = self.order as i64;
        [0, 1, 2].map(|k| Cyc::root(m, e + k * o))
    }

    /// Value as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(self) -> BigRational {
        BigRational::new(self.exponent.into(), self.order.into())
    }
}

impl Cyc {
    /// Recognizes roots of unity: returns `Some` iff the value is ±ζ_n^k.
    pub fn root_of_unity(&self) -> Option<RootOfUnity> {
        if !self.den.is_one() {
            return None;
        }
        let l = arith::lcm(2, self.n as u64) as u32;
        let lifted = self.lift_unchecked(l);
        let f = field(l);
        // cheap filter: every coordinate of a reduced root is small
        if lifted.num.iter().any(|c| c.abs() > BigInt::from(64)) {
            return None;
        }
        let coords: Vec<i64> = lifted.num.iter().map(|c| c.to_i64().unwrap()).collect();
        (0..l)
            .find(|&e| f.powers[e as usize] == coords)
            .map(|e| RootOfUnity::new(e as i64, l))
    }
}

/// Positive square root of a nonnegative rational (or `i·√|r|` for negative
/// `r`), built from quadratic Gauss sums and ζ₈, verified by squaring.
pub fn sqrt_rational(r: &BigRational) -> Result<Cyc> {
    if r.is_zero() {
        return Ok(Cyc::zero(1));
    }
    let negative = r.is_negative();
    let a = r.abs();
    // √(p/q) = √(pq)/q
    let m = a.numer() * a.denom();
    let m = m
        .to_u64()
        .ok_or_else(|| Error::RootConstruction(format!("√{r}: radicand too large")))?;
    let mut root = Cyc::one();
    for (p, e) in arith::factorize(m) {
        root = &root * &Cyc::from_int((p as i64).pow(e / 2));
        if e % 2 == 1 {
            root = &root * &sqrt_prime(p);
        }
    }
    root = root.scale(&BigRational::new(BigInt::one(), a.denom().clone()));
    if negative {
        root = &root * &Cyc::root(4, 1);
    }
    if &(&root * &root) != &Cyc::from_rational(r) {
        return Err(Error::RootConstruction(format!("√{r} failed verification")));
    }
    Ok(root)
}

fn sqrt_prime(p: u64) -> Cyc {
    if p == 2 {
        return Cyc::root(8, 1) + Cyc::root(8, 7);
    }
    let g: Cyc = (0..p as i64).map(|k| Cyc::root(p as u32, k * k)).sum();
    if p % 4 == 1 {
        g
    } else {
        // g = i√p
        &g * &Cyc::root(4, 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_roots() {
        assert_eq!(
            Cyc::root(4, 1).root_of_unity(),
            Some(RootOfUnity { order: 4, exponent: 1 })
        );
        assert_eq!(
            Cyc::from_int(-1).root_of_unity(),
            Some(RootOfUnity { order: 2, exponent: 1 })
        );
        // -ζ3 has order 6
        assert_eq!((-Cyc::root(3, 1)).root_of_unity().unwrap().order, 6);
        assert_eq!(Cyc::one().root_of_unity().unwrap().order, 1);
        assert_eq!(Cyc::from_int(2).root_of_unity(), None);
        assert_eq!((Cyc::one() + Cyc::root(4, 1)).root_of_unity(), None);
    }

    #[test]
    fn cube_roots_cube_back() {
        let r = RootOfUnity::new(1, 4);
        for c in r.cube_roots() {
            assert_eq!(c.pow(3), Cyc::root(4, 1));
        }
    }

    #[test]
    fn square_roots() {
        for m in 1..=30i64 {
            let s = sqrt_rational(&BigRational::from_integer(m.into())).unwrap();
            assert_eq!(&s * &s, Cyc::from_int(m));
            let v = s.approx();
            assert!((v.re - (m as f64).sqrt()).abs() < 1e-9 && v.im.abs() < 1e-9);
        }
        let s = sqrt_rational(&BigRational::new((-3).into(), 4.into())).unwrap();
        assert_eq!(&s * &s, Cyc::from_ratio(-3, 4));
        let v = s.approx();
        assert!((v.im - 0.75f64.sqrt()).abs() < 1e-12);
    }
}
