//! Smith normal form over ℤ with the column transform tracked.
//!
//! For a relation matrix `R` (rows are relations in ℤ^s) this finds
//! unimodular `V` and diagonal `d` with `rowspace(R)·V = ⊕ d_i ℤ`, so
//! `ℤ^s / rowspace(R) ≅ ⊕ ℤ/d_i` via `c ↦ c·V`, with inverse `y ↦ y·V⁻¹`.

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries, each dividing the next; `0` marks a free factor.
    pub diagonal: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub v_inv: Vec<Vec<i64>>,
}

pub fn smith_normal_form(relations: &[Vec<i64>], cols: usize) -> SmithForm {
    let mut a: Vec<Vec<i64>> = relations.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let m = a.len();
    let s = cols;
    let mut v = identity(s);
    let mut v_inv = identity(s);
    let mut diagonal = Vec::new();

    for t in 0..s {
        loop {
            // smallest nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for j in t..s {
                    if row[j] != 0
                        && best.map_or(true, |(bi, bj)| row[j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..s {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..s {
                let q = a[t][j] / p;
                if q != 0 {
                    add_col(&mut a, &mut v, &mut v_inv, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..m).find(|&i| (t + 1..s).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..s {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if t < m && a[t][t] != 0 {
            if a[t][t] < 0 {
                for row in a.iter_mut() {
                    row[t] = -row[t];
                }
                for row in v.iter_mut() {
                    row[t] = -row[t];
                }
                for x in v_inv[t].iter_mut() {
                    *x = -*x;
                }
            }
            diagonal.push(a[t][t]);
        } else {
            diagonal.push(0);
        }
    }
    SmithForm {
        diagonal,
        v,
        v_inv,
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i64>], v: &mut [Vec<i64>], v_inv: &mut [Vec<i64>], i: usize, j: usize) {
    for row in a.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
    v_inv.swap(i, j);
}

/// column `dst += k · column src`, tracked in `v` and `v⁻¹`.
fn add_col(a: &mut [Vec<i64>], v: &mut [Vec<i64>], v_inv: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    for row in a.iter_mut().chain(v.iter_mut()) {
        row[dst] += k * row[src];
    }
    // E = I + k·e_src e_dstᵀ, so E⁻¹ = I − k·e_src e_dstᵀ: row src −= k · row dst
    let (lo, hi) = v_inv.split_at_mut(src.max(dst));
    let (src_row, dst_row) = if src < dst {
        (&mut lo[src], &hi[0])
    } else {
        (&mut hi[0], &lo[dst])
    };
    for (x, &y) in src_row.iter_mut().zip(dst_row.iter()) {
        *x -= k * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn invariant_factors() {
        // ℤ²/⟨(2,0),(0,3)⟩ ≅ ℤ/6
        let f = smith_normal_form(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(f.diagonal, vec![1, 6]);
        assert_eq!(mul(&f.v, &f.v_inv), identity(2));
        // ℤ³/⟨(2,4,4),(-6,6,12),(10,-4,-16)⟩ has invariants 2, 6, 12
        let r = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let f = smith_normal_form(&r, 3);
        assert_eq!(f.diagonal, vec![2, 6, 12]);
        assert_eq!(mul(&f.v, &f.v_inv), identity(3));
    }

    #[test]
    fn free_part_is_zero() {
        let f = smith_normal_form(&[vec![0, 4]], 2);
        assert_eq!(f.diagonal, vec![4, 0]);
    }

    #[test]
    fn transformed_relations_are_diagonal_multiples() {
        let r = vec![vec![4, 6], vec![6, 9], vec![2, 2]];
        let f = smith_normal_form(&r, 2);
        let rv = mul(&r, &f.v);
        for row in rv {
            for (j, x) in row.iter().enumerate() {
                let d = f.diagonal[j];
                assert!(if d == 0 { *x == 0 } else { x % d == 0 });
            }
        }
    }
}
