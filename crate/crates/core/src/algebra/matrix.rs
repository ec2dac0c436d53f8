//! Dense matrices as row vectors, with field operations passed explicitly.

use super::field::Field;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<F: Field>(f: &F, r: usize, c: usize) -> Mat<F::Elem> {
    vec![vec![f.zero(); c]; r]
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

pub fn diag<F: Field>(f: &F, d: &[F::Elem]) -> Mat<F::Elem> {
    let mut m = zeros(f, d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        m[i][i] = x.clone();
    }
    m
}

pub fn mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut r = zeros(f, n, m);
    for i in 0..n {
        for l in 0..k {
            if f.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                if f.is_zero(&b[l][j]) {
                    continue;
                }
                let t = f.mul(&a[i][l], &b[l][j]);
                r[i][j] = f.add(&r[i][j], &t);
            }
        }
    }
    r
}

pub fn mul_vec<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (x, y)| {
                if f.is_zero(x) || f.is_zero(y) {
                    acc
                } else {
                    f.add(&acc, &f.mul(x, y))
                }
            })
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &Mat<E>) -> Mat<E> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn column<E: Clone>(a: &Mat<E>, j: usize) -> Vec<E> {
    a.iter().map(|row| row[j].clone()).collect()
}

pub fn from_columns<E: Clone>(cols: &[Vec<E>]) -> Mat<E> {
    if cols.is_empty() {
        return vec![];
    }
    (0..cols[0].len())
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

pub fn scale<F: Field>(f: &F, a: &Mat<F::Elem>, c: &F::Elem) -> Mat<F::Elem> {
    a.iter()
        .map(|row| row.iter().map(|x| f.mul(x, c)).collect())
        .collect()
}

pub fn is_identity<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { f.is_one(x) } else { f.is_zero(x) })
    })
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(f: &F, a: &Mat<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut m = a.clone();
    let mut d = f.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !f.is_zero(&m[i][k])) else {
            return f.zero();
        };
        if p != k {
            m.swap(p, k);
            d = f.neg(&d);
        }
        let piv = m[k][k].clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv);
        for i in k + 1..n {
            if f.is_zero(&m[i][k]) {
                continue;
            }
            let c = f.mul(&m[i][k], &inv);
            for j in k..n {
                let t = f.mul(&c, &m[k][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
    }
    d
}

/// Inverse by Gauss-Jordan elimination; None if singular.
pub fn inverse<F: Field>(f: &F, a: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    let n = a.len();
    let mut m = a.clone();
    let mut r = identity(f, n);
    for k in 0..n {
        let p = (k..n).find(|&i| !f.is_zero(&m[i][k]))?;
        m.swap(p, k);
        r.swap(p, k);
        let inv = f.inv(&m[k][k]);
        for j in 0..n {
            m[k][j] = f.mul(&m[k][j], &inv);
            r[k][j] = f.mul(&r[k][j], &inv);
        }
        for i in 0..n {
            if i == k || f.is_zero(&m[i][k]) {
                continue;
            }
            let c = m[i][k].clone();
            for j in 0..n {
                let t = f.mul(&c, &m[k][j]);
                m[i][j] = f.sub(&m[i][j], &t);
                let t = f.mul(&c, &r[k][j]);
                r[i][j] = f.sub(&r[i][j], &t);
            }
        }
    }
    Some(r)
}

/// Block diagonal matrix diag(a, b).
pub fn block_diag<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    let (n, m) = (a.len(), b.len());
    let mut r = zeros(f, n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            r[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            r[n + i][n + j] = b[i][j].clone();
        }
    }
    r
}

/// Submatrix on rows and columns `lo..hi`.
pub fn block<E: Clone>(a: &Mat<E>, lo: usize, hi: usize) -> Mat<E> {
    a[lo..hi].iter().map(|row| row[lo..hi].to_vec()).collect()
}
