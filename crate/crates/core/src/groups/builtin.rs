//! Small groups used throughout the tests and examples.

use super::FiniteGroup;

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a, then b
    a.iter().map(|&i| b[i]).collect()
}

pub fn cyclic(n: u64) -> FiniteGroup {
    FiniteGroup::abelian(&[n])
}

/// Symmetric group on three letters.
pub fn s3() -> FiniteGroup {
    FiniteGroup::generated_by(vec![0, 1, 2], &[vec![1, 0, 2], vec![1, 2, 0]], compose)
}

/// Symmetries of a square (order 8).
pub fn d4() -> FiniteGroup {
    FiniteGroup::generated_by(
        vec![0, 1, 2, 3],
        &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
        compose,
    )
}

/// Quaternion group {±1, ±i, ±j, ±k}.
pub fn q8() -> FiniteGroup {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
    fn mul(a: &(i8, u8), b: &(i8, u8)) -> (i8, u8) {
        const T: [[(i8, u8); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let (s, u) = T[a.1 as usize][b.1 as usize];
        (a.0 * b.0 * s, u)
    }
    FiniteGroup::generated_by((1, 0), &[(1, 1), (1, 2)], mul)
}

/// Looks up a built-in group by name: `Z<n>`, `S3`, `D4`, `Q8`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    match name.to_ascii_uppercase().as_str() {
        "S3" => Some(s3()),
        "D4" => Some(d4()),
        "Q8" => Some(q8()),
        s => s
            .strip_prefix('Z')
            .and_then(|n| n.parse::<u64>().ok())
            .filter(|&n| n >= 1)
            .map(cyclic),
    }
}

/// The groups on which the Drinfeld double is exercised: ℤ/n for n ≤ 8, S₃, D₄, Q₈.
pub fn all() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> =
        (1..=8).map(|n| (format!("Z{n}"), cyclic(n))).collect();
    out.push(("S3".into(), s3()));
    out.push(("D4".into(), d4()));
    out.push(("Q8".into(), q8()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(d4().order(), 8);
        assert_eq!(q8().order(), 8);
        assert!(!s3().is_abelian());
        assert!(!q8().is_abelian());
        assert_eq!(q8().exponent(), 4);
        assert_eq!(d4().exponent(), 4);
        assert_eq!(s3().exponent(), 6);
        // Q8 has a unique involution, D4 has five
        let inv = |g: &FiniteGroup| (1..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(inv(&q8()), 1);
        assert_eq!(inv(&d4()), 5);
        assert_eq!(by_name("z5").unwrap().order(), 5);
        assert!(by_name("A5").is_none());
    }
}
