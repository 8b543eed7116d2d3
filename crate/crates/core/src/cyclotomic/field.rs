//! Per-conductor tables: the cyclotomic polynomial and reduced powers of x.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;

pub(crate) struct Field {
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first; monic, length `phi + 1`.
    pub poly: Vec<i64>,
    /// `powers[e]` is x^e reduced modulo Φ_n, for `e` in `0..n`.
    pub powers: Vec<Vec<i64>>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn field(n: u32) -> Arc<Field> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_poly(n);
    let built = Arc::new(build(n, poly));
    cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(built)
        .clone()
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in arith::divisors(n as u64) {
        if d as u32 == n {
            continue;
        }
        let f = field(d as u32);
        p = div_monic(&p, &f.poly);
    }
    p
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem: Vec<i128> = num.iter().map(|&c| c as i128).collect();
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quot[k] = c as i64;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn build(n: u32, poly: Vec<i64>) -> Field {
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi.max(1)];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("Φ_n has positive degree");
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * poly[j];
            }
        }
    }
    Field { phi, poly, powers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(field(1).poly, vec![-1, 1]);
        assert_eq!(field(2).poly, vec![1, 1]);
        assert_eq!(field(4).poly, vec![1, 0, 1]);
        assert_eq!(field(6).poly, vec![1, -1, 1]);
        assert_eq!(field(12).poly, vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(field(105).poly.iter().any(|&c| c == -2));
        assert_eq!(field(105).phi, 48);
    }

    #[test]
    fn powers_wrap_around() {
        let f = field(4);
        assert_eq!(f.powers[2], vec![-1, 0]);
        assert_eq!(f.powers[3], vec![0, -1]);
    }
}
