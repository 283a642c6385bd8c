//! Dense exact matrices over ℚ and ℤ.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::Q;

/// Row-major rational matrix.
pub type QMat = Vec<Vec<Q>>;

/// Row-major integer matrix.
pub type ZMat = Vec<Vec<BigInt>>;

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn cols(m: &[Vec<Q>]) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn transpose(m: &[Vec<Q>]) -> QMat {
    let (r, c) = (m.len(), cols(m));
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMat {
    let (r, k, c) = (a.len(), b.len(), cols(b));
    let mut out = zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn add(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn sub(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

pub fn scale(a: &[Vec<Q>], s: &Q) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

/// Columns `range` of `m`.
pub fn column_block(m: &[Vec<Q>], range: std::ops::Range<usize>) -> QMat {
    m.iter().map(|r| r[range.clone()].to_vec()).collect()
}

/// `[a | b]`.
pub fn hcat(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMat {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect()
}

pub fn is_symmetric(m: &[Vec<Q>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn is_antisymmetric(m: &[Vec<Q>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..=i).all(|j| m[i][j] == -m[j][i].clone()))
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[Vec<Q>]) -> (QMat, Vec<usize>) {
    let mut a = m.to_vec();
    let (r, c) = (a.len(), cols(&a));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Q::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..c {
                    let d = &f * &a[row][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}` as columns of the returned matrix (n × k).
pub fn nullspace(m: &[Vec<Q>], n: usize) -> QMat {
    let (a, pivots) = if m.is_empty() { (vec![], vec![]) } else { rref(m) };
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut basis = zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[f][k] = Q::one();
        for (i, &p) in pivots.iter().enumerate() {
            basis[p][k] = -a[i][f].clone();
        }
    }
    basis
}

pub fn inverse(m: &[Vec<Q>]) -> Option<QMat> {
    let n = m.len();
    let (a, pivots) = rref(&hcat(m, &identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(column_block(&a, n..2 * n))
}

/// Do the column spans of `a` and `b` coincide?
pub fn same_column_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = rank(&transpose(a));
    ra == rank(&transpose(b)) && ra == rank(&transpose(&hcat(a, b)))
}

pub fn to_q(m: &[Vec<BigInt>]) -> QMat {
    m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

pub fn zmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> ZMat {
    let (r, k) = (a.len(), b.len());
    let c = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); c]; r];
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn ztranspose(m: &[Vec<BigInt>]) -> ZMat {
    let c = m.first().map_or(0, Vec::len);
    (0..c).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn zidentity(n: usize) -> ZMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Smith form `u · m · v = d` with `u`, `v` unimodular. Returns `(d, u, v)`.
pub fn smith(m: &[Vec<BigInt>]) -> (ZMat, ZMat, ZMat) {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut d = m.to_vec();
    let mut u = zidentity(r);
    let mut v = zidentity(c);
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..r {
            let q = d[i][t].div_floor(&d[t][t]);
            if !q.is_zero() {
                for j in 0..c {
                    let x = &q * &d[t][j];
                    d[i][j] -= x;
                }
                for j in 0..r {
                    let x = &q * &u[t][j];
                    u[i][j] -= x;
                }
            }
            clean &= d[i][t].is_zero();
        }
        for j in t + 1..c {
            let q = d[t][j].div_floor(&d[t][t]);
            if !q.is_zero() {
                for i in 0..r {
                    let x = &q * &d[i][t];
                    d[i][j] -= x;
                }
                for i in 0..c {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
            }
            clean &= d[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility of the rest by the pivot
        let mut fix = None;
        'outer: for i in t + 1..r {
            for j in t + 1..c {
                if !d[i][j].is_multiple_of(&d[t][t]) {
                    fix = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = fix {
            for j in 0..c {
                let x = d[i][j].clone();
                d[t][j] += x;
            }
            for j in 0..r {
                let x = u[i][j].clone();
                u[t][j] += x;
            }
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    (d, u, v)
}

/// Inverse of a unimodular integer matrix.
pub fn zinverse_unimodular(m: &[Vec<BigInt>]) -> Option<ZMat> {
    let inv = inverse(&to_q(m))?;
    inv.into_iter().map(|row| row.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()).collect()
}
