//! Smith and Hermite forms over the valuation ring of a [`ValuedFrac`]
//! (t-adic over F(u)(t) or u-adic over F_q(u)).

use super::field::Field;
use super::matrix::{self, Mat};
use super::valued::{VElem, ValuedFrac};
use crate::error::{Error, Result};

/// `left * diag(x^exps) * right` equals the input; left and right are units
/// over the valuation ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DvrMatrixForm<E> {
    pub left: Mat<E>,
    pub exps: Vec<i64>,
    pub right: Mat<E>,
    pub uniformizer: char,
}

/// Full elimination data for a rectangular matrix M (r x c):
/// M = left * D * right with D = diag(x^exps) padded by zeros, exps nondecreasing.
pub struct SmithData<E> {
    pub left: Mat<E>,
    pub left_inv: Mat<E>,
    pub right: Mat<E>,
    pub right_inv: Mat<E>,
    pub exps: Vec<i64>,
}

/// Pivoted elimination with minimal-valuation pivots. `track` enables the
/// transforms (otherwise they stay empty).
pub fn smith_rect<F: Field>(
    vf: &ValuedFrac<F>,
    m: &Mat<VElem<F::Elem>>,
    track: bool,
) -> SmithData<VElem<F::Elem>> {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let (mut l, mut li, mut rt, mut ri) = if track {
        (
            matrix::identity(vf, r),
            matrix::identity(vf, r),
            matrix::identity(vf, c),
            matrix::identity(vf, c),
        )
    } else {
        (vec![], vec![], vec![], vec![])
    };
    let mut exps = Vec::new();
    for k in 0..r.min(c) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..r {
            for j in k..c {
                if let Some(v) = vf.valuation(&a[i][j]) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        if pi != k {
            a.swap(pi, k);
            if track {
                li.swap(pi, k);
                for row in l.iter_mut() {
                    row.swap(pi, k);
                }
            }
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            if track {
                rt.swap(pj, k);
                for row in ri.iter_mut() {
                    row.swap(pj, k);
                }
            }
        }
        let w = vf.unit_part(&a[k][k]);
        if !vf.is_one(&w) {
            let winv = vf.inv(&w);
            for x in a[k].iter_mut() {
                *x = vf.mul(x, &winv);
            }
            if track {
                for x in li[k].iter_mut() {
                    *x = vf.mul(x, &winv);
                }
                for row in l.iter_mut() {
                    row[k] = vf.mul(&row[k], &w);
                }
            }
        }
        let piv_inv = vf.x_pow(-e);
        for i in k + 1..r {
            if vf.is_zero(&a[i][k]) {
                continue;
            }
            let q = vf.mul(&a[i][k], &piv_inv);
            for j in k..c {
                if vf.is_zero(&a[k][j]) {
                    continue;
                }
                let t = vf.mul(&q, &a[k][j]);
                a[i][j] = vf.sub(&a[i][j], &t);
            }
            if track {
                for j in 0..r {
                    if !vf.is_zero(&li[k][j]) {
                        let t = vf.mul(&q, &li[k][j]);
                        li[i][j] = vf.sub(&li[i][j], &t);
                    }
                }
                for row in l.iter_mut() {
                    if !vf.is_zero(&row[i]) {
                        let t = vf.mul(&q, &row[i]);
                        row[k] = vf.add(&row[k], &t);
                    }
                }
            }
        }
        for j in k + 1..c {
            if vf.is_zero(&a[k][j]) {
                continue;
            }
            let q = vf.mul(&a[k][j], &piv_inv);
            a[k][j] = vf.zero();
            if track {
                for row in ri.iter_mut() {
                    if !vf.is_zero(&row[k]) {
                        let t = vf.mul(&q, &row[k]);
                        row[j] = vf.sub(&row[j], &t);
                    }
                }
                let rj = rt[j].clone();
                for (x, y) in rt[k].iter_mut().zip(rj.iter()) {
                    if !vf.is_zero(y) {
                        *x = vf.add(x, &vf.mul(&q, y));
                    }
                }
            }
        }
        exps.push(e);
    }
    SmithData {
        left: l,
        left_inv: li,
        right: rt,
        right_inv: ri,
        exps,
    }
}

/// Smith form of a square nonsingular matrix, exponents nonincreasing.
pub fn dvr_smith<F: Field>(
    vf: &ValuedFrac<F>,
    m: &Mat<VElem<F::Elem>>,
) -> Result<DvrMatrixForm<VElem<F::Elem>>> {
    let n = m.len();
    let sd = smith_rect(vf, m, true);
    if sd.exps.len() < n {
        return Err(Error::SingularMatrix);
    }
    let rev = |v: &mut Vec<VElem<F::Elem>>| v.reverse();
    let mut left = sd.left;
    for row in left.iter_mut() {
        rev(row);
    }
    let mut right = sd.right;
    right.reverse();
    let mut exps = sd.exps;
    exps.reverse();
    Ok(DvrMatrixForm {
        left,
        exps,
        right,
        uniformizer: vf.var,
    })
}

/// Sum of the elementary-divisor exponents of a full-column-rank matrix
/// (the minimal valuation of its maximal minors).
pub fn min_minor_val<F: Field>(vf: &ValuedFrac<F>, m: &Mat<VElem<F::Elem>>) -> Result<i64> {
    let c = m.first().map_or(0, |r| r.len());
    let sd = smith_rect(vf, m, false);
    if sd.exps.len() < c {
        return Err(Error::RankDeficient);
    }
    Ok(sd.exps.iter().sum())
}

/// Canonical upper-triangular basis (columns) of the span of the columns of `g`
/// over the valuation ring: diagonal x^{e_i}, entries above the diagonal are
/// Laurent polynomials with exponents below the pivot exponent of their row.
pub fn dvr_image_hnf<F: Field>(
    vf: &ValuedFrac<F>,
    g: &Mat<VElem<F::Elem>>,
) -> Result<Mat<VElem<F::Elem>>> {
    let n = g.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut cols: Vec<Vec<VElem<F::Elem>>> =
        (0..g[0].len()).map(|j| matrix::column(g, j)).collect();
    let mut basis: Vec<Vec<VElem<F::Elem>>> = vec![vec![]; n];
    let mut exps = vec![0i64; n];
    for i in (0..n).rev() {
        let mut best: Option<(i64, usize)> = None;
        for (j, col) in cols.iter().enumerate() {
            if let Some(v) = vf.valuation(&col[i]) {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let Some((e, pj)) = best else {
            return Err(Error::RankDeficient);
        };
        let mut piv = cols.swap_remove(pj);
        let w = vf.unit_part(&piv[i]);
        if !vf.is_one(&w) {
            let winv = vf.inv(&w);
            for x in piv.iter_mut().take(i + 1) {
                *x = vf.mul(x, &winv);
            }
        }
        let piv_inv = vf.x_pow(-e);
        for col in cols.iter_mut() {
            if vf.is_zero(&col[i]) {
                continue;
            }
            let q = vf.mul(&col[i], &piv_inv);
            for r in 0..=i {
                if !vf.is_zero(&piv[r]) {
                    let t = vf.mul(&q, &piv[r]);
                    col[r] = vf.sub(&col[r], &t);
                }
            }
        }
        cols.retain(|c| c.iter().any(|x| !vf.is_zero(x)));
        basis[i] = piv;
        exps[i] = e;
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let entry = basis[j][i].clone();
            if entry.is_zero() {
                continue;
            }
            let r = vf.trunc_below(&entry, exps[i]);
            let q = vf.mul(&vf.sub(&entry, &r), &vf.x_pow(-exps[i]));
            if q.is_zero() {
                continue;
            }
            for rr in 0..=i {
                if !vf.is_zero(&basis[i][rr]) {
                    let t = vf.mul(&q, &basis[i][rr]);
                    basis[j][rr] = vf.sub(&basis[j][rr], &t);
                }
            }
        }
    }
    Ok(matrix::from_columns(&basis))
}

/// Valuation of the determinant of an upper-triangular canonical basis.
pub fn hnf_det_val<F: Field>(vf: &ValuedFrac<F>, b: &Mat<VElem<F::Elem>>) -> i64 {
    (0..b.len())
        .map(|i| vf.valuation(&b[i][i]).expect("nonzero pivot"))
        .sum()
}

/// Minimal valuation over all nonzero entries (None if all are zero).
pub fn min_val<F: Field>(vf: &ValuedFrac<F>, m: &Mat<VElem<F::Elem>>) -> Option<i64> {
    m.iter().flatten().filter_map(|x| vf.valuation(x)).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn fu() -> ValuedFrac<PrimeField> {
        ValuedFrac::new(PrimeField::with_p(2), 'u')
    }

    #[test]
    fn smith_examples() {
        let k = fu();
        let m = vec![vec![k.x_pow(1), k.one()], vec![k.zero(), k.x_pow(1)]];
        let s = dvr_smith(&k, &m).unwrap();
        assert_eq!(s.exps, vec![2, 0]);
        let d = matrix::diag(&k, &s.exps.iter().map(|&e| k.x_pow(e)).collect::<Vec<_>>());
        assert_eq!(matrix::mul(&k, &matrix::mul(&k, &s.left, &d), &s.right), m);
        let m2 = vec![vec![k.x_pow(2), k.zero()], vec![k.zero(), k.x_pow(1)]];
        assert_eq!(dvr_smith(&k, &m2).unwrap().exps, vec![2, 1]);
    }

    #[test]
    fn hnf_examples() {
        let k = fu();
        let u = k.x_pow(1);
        let g = vec![
            vec![k.one(), k.zero(), u.clone()],
            vec![k.zero(), k.one(), u.clone()],
        ];
        assert_eq!(dvr_image_hnf(&k, &g).unwrap(), matrix::identity(&k, 2));
        let g = vec![
            vec![u.clone(), k.zero(), k.one()],
            vec![k.zero(), u.clone(), k.one()],
        ];
        let b = dvr_image_hnf(&k, &g).unwrap();
        assert_eq!(hnf_det_val(&k, &b), 1);
        assert_eq!(b, vec![vec![u.clone(), k.one()], vec![k.zero(), k.one()]]);
        let g = vec![vec![k.one()], vec![k.one()]];
        assert_eq!(dvr_image_hnf(&k, &g), Err(Error::RankDeficient));
    }
}
