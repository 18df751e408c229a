//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// `col_j -= q · col_i`.
fn sub_col(m: &mut IntMatrix, j: usize, i: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[i] * q;
        row[j] -= t;
    }
}

fn sub_row(m: &mut IntMatrix, j: usize, i: usize, q: &BigInt) {
    let src = m[i].clone();
    for (x, y) in m[j].iter_mut().zip(src) {
        *x -= y * q;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if !d[i][t].is_zero() {
                let q = d[i][t].div_floor(&d[t][t]);
                sub_row(&mut d, i, t, &q);
                sub_row(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !d[t][j].is_zero() {
                let q = d[t][j].div_floor(&d[t][t]);
                sub_col(&mut d, j, t, &q);
                sub_col(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let mut bad = None;
        'find: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    bad = Some(i);
                    break 'find;
                }
            }
        }
        if let Some(i) = bad {
            sub_row(&mut d, t, i, &-BigInt::one());
            sub_row(&mut u, t, i, &-BigInt::one());
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    SmithForm { u, v, d, rank: t }
}

/// Lattice basis of `{x : A x = 0}` as the trailing columns of `V`.
pub fn integer_kernel(a: &IntMatrix, k: usize) -> Vec<Vec<BigInt>> {
    if a.is_empty() {
        return identity(k);
    }
    let snf = smith_normal_form(a);
    (snf.rank..k)
        .map(|j| snf.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    sub_row(&mut m, i, r, &q);
                    done &= m[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    sub_row(&mut m, i, r, &q);
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn decomposition_identity_holds() {
        for a in [
            mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            mat(&[&[1, 2], &[1, 1]]),
            mat(&[&[2, 3, 0, 5]]),
            mat(&[&[0, 0], &[0, 0]]),
        ] {
            let s = smith_normal_form(&a);
            assert_eq!(mul(&mul(&s.u, &a), &s.v), s.d);
            for i in 0..s.d.len() {
                for j in 0..s.d[0].len() {
                    if i != j {
                        assert!(s.d[i][j].is_zero());
                    }
                }
            }
            for i in 1..s.rank {
                assert!((&s.d[i][i] % &s.d[i - 1][i - 1]).is_zero());
            }
        }
        let s = smith_normal_form(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            (0..3).map(|i| s.d[i][i].clone()).collect::<Vec<_>>(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn kernels() {
        let k = hermite_rows(&integer_kernel(&mat(&[&[2, 3]]), 2));
        assert_eq!(k, mat(&[&[3, -2]]));
        assert!(integer_kernel(&mat(&[&[1, 2], &[1, 1]]), 2).is_empty());
    }
}
