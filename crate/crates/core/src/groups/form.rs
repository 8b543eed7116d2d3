//! Pre-metric groups: a finite abelian group with a quadratic form q: A → ℚ/ℤ.

use num_rational::Rational64;
use num_traits::Zero;

use super::abelian::{AbelianGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

/// Reduces a rational into `[0, 1)`.
pub(crate) fn mod_one(r: Rational64) -> Rational64 {
    r - r.floor()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMetricGroup {
    group: AbelianGroup,
    q: Vec<Rational64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormViolation {
    NonzeroAtZero,
    NotEven { x: usize },
    Homogeneity { x: usize, m: u64 },
    NotBiadditive { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for FormViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormViolation::NonzeroAtZero => write!(f, "q(0) ≠ 0"),
            FormViolation::NotEven { x } => write!(f, "q(-x) ≠ q(x) at element {x}"),
            FormViolation::Homogeneity { x, m } => write!(f, "q({m}·x) ≠ {m}²·q(x) at element {x}"),
            FormViolation::NotBiadditive { x, y, z } => {
                write!(f, "b(x+y, z) ≠ b(x,z) + b(y,z) at ({x}, {y}, {z})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub violations: Vec<FormViolation>,
    /// b(x, y) as rationals mod 1; omitted above 256 elements.
    pub bicharacter: Option<Vec<Vec<Rational64>>>,
}

impl FormReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl PreMetricGroup {
    /// Builds and validates a form; `q[x]` is indexed by mixed-radix element index.
    pub fn new(orders: Vec<u64>, q: Vec<Rational64>) -> Result<Self> {
        let m = Self::new_unchecked(orders, q)?;
        let report = m.validate();
        match report.violations.first() {
            None => Ok(m),
            Some(v) => Err(Error::InvalidForm(v.to_string())),
        }
    }

    /// Builds a form without checking the quadratic-form axioms.
    pub fn new_unchecked(orders: Vec<u64>, q: Vec<Rational64>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidForm("cyclic orders must be positive".into()));
        }
        let group = AbelianGroup::new(orders);
        if q.len() != group.size() {
            return Err(Error::InvalidForm(format!(
                "expected {} values of q, got {}",
                group.size(),
                q.len()
            )));
        }
        let q = q.into_iter().map(mod_one).collect();
        Ok(PreMetricGroup { group, q })
    }

    pub fn from_fn(orders: Vec<u64>, f: impl Fn(&[u64]) -> Rational64) -> Result<Self> {
        let group = AbelianGroup::new(orders.clone());
        let q = (0..group.size()).map(|x| f(&group.decode(x))).collect();
        Self::new(orders, q)
    }

    /// q ≡ 0 on ⊕ ℤ/n_i.
    pub fn zero(orders: Vec<u64>) -> Self {
        let group = AbelianGroup::new(orders);
        let q = vec![Rational64::zero(); group.size()];
        PreMetricGroup { group, q }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn orders(&self) -> &[u64] {
        self.group.orders()
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn q(&self, x: usize) -> Rational64 {
        self.q[x]
    }

    pub fn q_values(&self) -> &[Rational64] {
        &self.q
    }

    /// b(x, y) = q(x+y) − q(x) − q(y) mod 1.
    pub fn b(&self, x: usize, y: usize) -> Rational64 {
        mod_one(self.q[self.group.add(x, y)] - self.q[x] - self.q[y])
    }

    pub fn validate(&self) -> FormReport {
        let a = &self.group;
        let n = a.size();
        let mut violations = Vec::new();
        if !self.q[0].is_zero() {
            violations.push(FormViolation::NonzeroAtZero);
        }
        for x in 0..n {
            if self.q[a.neg(x)] != self.q[x] {
                violations.push(FormViolation::NotEven { x });
            }
        }
        for x in 0..n {
            let period = arith::lcm(a.element_order(x), *self.q[x].denom() as u64);
            if let Some(m) = (0..period).find(|&m| {
                self.q[a.scale(x, m as i64)] != mod_one(self.q[x] * Rational64::from((m * m) as i64))
            }) {
                violations.push(FormViolation::Homogeneity { x, m });
            }
        }
        // biadditivity in the first slot along generator steps implies it in general
        let gens: Vec<usize> = (0..a.rank())
            .map(|i| {
                let mut c = vec![0; a.rank()];
                c[i] = 1;
                a.encode(&c)
            })
            .collect();
        'outer: for x in 0..n {
            for &g in &gens {
                for z in 0..n {
                    let lhs = self.b(a.add(x, g), z);
                    let rhs = mod_one(self.b(x, z) + self.b(g, z));
                    if lhs != rhs {
                        violations.push(FormViolation::NotBiadditive { x, y: g, z });
                        break 'outer;
                    }
                }
            }
        }
        let bicharacter = (n <= 256).then(|| {
            (0..n)
                .map(|x| (0..n).map(|y| self.b(x, y)).collect())
                .collect()
        });
        FormReport {
            violations,
            bicharacter,
        }
    }

    /// Elements orthogonal to everything under b.
    pub fn radical(&self) -> Subgroup {
        self.orthogonal(&self.group.whole())
    }

    /// {x : b(x, h) = 0 for all h ∈ H}.
    pub fn orthogonal(&self, h: &Subgroup) -> Subgroup {
        let gens = self.group.canonical_generators(h);
        Subgroup::from_elements(
            (0..self.size())
                .filter(|&x| gens.iter().all(|&g| self.b(x, g).is_zero()))
                .collect(),
        )
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &PreMetricGroup) -> PreMetricGroup {
        let mut orders = self.orders().to_vec();
        orders.extend_from_slice(other.orders());
        let group = AbelianGroup::new(orders);
        let n2 = other.size();
        let q = (0..group.size())
            .map(|x| mod_one(self.q[x / n2] + other.q[x % n2]))
            .collect();
        PreMetricGroup { group, q }
    }

    /// The form −q (reverse braiding).
    pub fn negated(&self) -> PreMetricGroup {
        PreMetricGroup {
            group: self.group.clone(),
            q: self.q.iter().map(|&v| mod_one(-v)).collect(),
        }
    }

    /// The metric group A ⊕ Â with q(g, φ) = φ(g); Â is identified with A
    /// through φ_y(x) = Σ_i x_i y_i / n_i.
    pub fn hyperbolic(orders: &[u64]) -> PreMetricGroup {
        let mut all = orders.to_vec();
        all.extend_from_slice(orders);
        let r = orders.len();
        Self::from_fn(all, |c| {
            (0..r)
                .map(|i| Rational64::new((c[i] * c[r + i]) as i64, orders[i] as i64))
                .sum()
        })
        .expect("hyperbolic form is quadratic")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_trivial()
    }

    /// q vanishes on every element of `h`.
    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|&x| self.q[x].is_zero())
    }

    /// Distinct values of q on `h`, sorted.
    pub fn values_on(&self, h: &Subgroup) -> Vec<Rational64> {
        let mut v: Vec<Rational64> = h.elements().iter().map(|&x| self.q[x]).collect();
        v.sort();
        v.dedup();
        v
    }
}
