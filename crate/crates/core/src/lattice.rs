//! Integer matrix normal forms: Smith (with both transforms) and row Hermite.

/// `u * a * v = diag(d)` with `u`, `v` unimodular and `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Nonzero invariant factors, all positive, in divisibility order.
    pub factors: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Smith normal form of an `m x n` matrix given row by row.
pub fn smith(a: &[Vec<i64>], n_cols: usize) -> Smith {
    let m = a.len();
    let n = n_cols;
    let mut a: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut factors = Vec::new();

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, v, factors);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..m {
                        u[i][j] -= q * u[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in 0..n {
                    a[t][j] += a[i][j];
                }
                for j in 0..m {
                    u[t][j] += u[i][j];
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        factors.push(a[t][t]);
    }
    finish(u, v, factors)
}

fn finish(u: Vec<Vec<i64>>, v: Vec<Vec<i64>>, factors: Vec<i64>) -> Smith {
    Smith { u, v, factors }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<i64>], n_cols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut r = 0;
    for c in 0..n_cols {
        if r == a.len() {
            break;
        }
        loop {
            let piv = (r..a.len())
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(pi) = piv else { break };
            a.swap(r, pi);
            let mut clean = true;
            for i in r + 1..a.len() {
                let q = a[i][c].div_euclid(a[r][c]);
                if q != 0 {
                    for j in 0..n_cols {
                        a[i][j] -= q * a[r][j];
                    }
                }
                clean &= a[i][c] == 0;
            }
            if clean {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            if q != 0 {
                for j in 0..n_cols {
                    a[i][j] -= q * a[r][j];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], b_cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
