//! Test corpus shared by the integration suites.
#![allow(dead_code)]

use modcat::constructors::{self, double_abelian, drinfeld_double, reverse};
use modcat::groups::{builtin, PreMetricGroup};
use modcat::modular_data::ModularData;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Entry {
    pub name: String,
    pub md: ModularData,
}

fn entry(name: impl Into<String>, md: ModularData) -> Entry {
    Entry { name: name.into(), md }
}

/// Every n₁ | n₂ | … with nᵢ ≥ 2 and product ≤ `max`, starting with [].
pub fn invariant_factor_lists(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        // each new factor is a multiple of the previous one
        let last = prefix.last().copied();
        let mut n = last.unwrap_or(2);
        while product * n <= max {
            if last.map_or(true, |l| n % l == 0) {
                prefix.push(n);
                extend(prefix, product * n, max, out);
                prefix.pop();
            }
            n += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out.sort_by_key(|o| (o.iter().product::<u64>(), o.clone()));
    out
}

/// q(x) = Σ aᵢxᵢ²/(2nᵢ) + Σ_{i<j} c_ij xᵢxⱼ/gcd(nᵢ,nⱼ), with aᵢnᵢ even.
fn form_from_coefficients(orders: &[u64], a: &[i64], c: &[i64]) -> PreMetricGroup {
    let orders_v = orders.to_vec();
    PreMetricGroup::from_fn(orders_v, |x| {
        let mut q = Rational64::from_integer(0);
        let mut idx = 0;
        for i in 0..orders.len() {
            let xi = x[i] as i64;
            q += Rational64::new(a[i] * xi * xi, 2 * orders[i] as i64);
            for j in i + 1..orders.len() {
                let g = num_integer::gcd(orders[i], orders[j]) as i64;
                q += Rational64::new(c[idx] * xi * x[j] as i64, g);
                idx += 1;
            }
        }
        q
    })
    .expect("coefficient forms are quadratic")
}

/// Up to `count` distinct forms on the group, drawn with a fixed seed;
/// non-degenerate ones only when `nondegenerate` is set.
pub fn sample_forms(orders: &[u64], count: usize, nondegenerate: bool, seed: u64) -> Vec<PreMetricGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ orders.iter().fold(17, |h, &n| h * 31 + n));
    let mut out: Vec<PreMetricGroup> = Vec::new();
    for _ in 0..400 {
        if out.len() >= count {
            break;
        }
        let a: Vec<i64> = orders
            .iter()
            .map(|&n| {
                let step = if n % 2 == 0 { 1 } else { 2 };
                step * rng.gen_range(0..(2 * n as i64) / step)
            })
            .collect();
        let mut c = Vec::new();
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                c.push(rng.gen_range(0..num_integer::gcd(orders[i], orders[j]) as i64));
            }
        }
        let m = form_from_coefficients(orders, &a, &c);
        if (!nondegenerate || m.is_nondegenerate()) && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Non-degenerate forms on every group of order ≤ `max`.
pub fn form_corpus(max: u64, per_group: usize) -> Vec<PreMetricGroup> {
    invariant_factor_lists(max)
        .iter()
        .flat_map(|o| sample_forms(o, per_group, true, 7))
        .collect()
}

pub fn semion() -> PreMetricGroup {
    PreMetricGroup::new(vec![2], vec![Rational64::new(0, 1), Rational64::new(1, 4)]).unwrap()
}

/// The modular corpus: pointed data on |A| ≤ 16, the doubles C(A) for
/// |A| ≤ 6, D_N for odd N ≤ 13, D(G) for every built-in group, a few
/// Deligne products and reverses.
pub fn modular_corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for m in form_corpus(16, 2) {
        out.push(entry(format!("pointed {:?} {:?}", m.orders(), m.q_values()), constructors::pointed(&m).unwrap()));
    }
    for o in invariant_factor_lists(6) {
        out.push(entry(format!("C{o:?}"), double_abelian(&o)));
    }
    for n in (3..=13).step_by(2) {
        out.push(entry(format!("D_{n}"), constructors::diagonal_dn(n).unwrap()));
    }
    for (name, g) in builtin::all() {
        out.push(entry(format!("D({name})"), drinfeld_double(&g, 200).unwrap()));
    }
    let semion = constructors::pointed(&semion()).unwrap();
    let d3 = constructors::diagonal_dn(3).unwrap();
    let d5 = constructors::diagonal_dn(5).unwrap();
    let toric = double_abelian(&[2]);
    let ds3 = drinfeld_double(&builtin::s3(), 200).unwrap();
    out.push(entry("semion ⊠ rev(semion)", constructors::deligne_product(&semion, &reverse(&semion))));
    out.push(entry("D_3 ⊠ D_5", constructors::deligne_product(&d3, &d5)));
    out.push(entry("toric ⊠ D_3", constructors::deligne_product(&toric, &d3)));
    out.push(entry("D(S3) ⊠ semion", constructors::deligne_product(&ds3, &semion)));
    out.push(entry("rev(D(S3))", reverse(&ds3)));
    out.push(entry("rev(D_5)", reverse(&d5)));
    out.push(entry("rev(semion)", reverse(&semion)));
    out
}
