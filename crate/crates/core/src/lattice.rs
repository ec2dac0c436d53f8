//! O_K-lattices in K^n, their quotients as F(u)-vector spaces, the image of
//! B^n = F[[u]]((t))^n in a quotient, relative u-indices, and the action defect.

use serde::Serialize;

use crate::algebra::dvr::{dvr_image_hnf, hnf_det_val, smith_rect};
use crate::algebra::field::Field;
use crate::algebra::matrix::{self, Mat};
use crate::algebra::series::{pivot_valuation_sum, SeriesRing, TruncSeries, EXACT};
use crate::algebra::valued::{VElem, ValuedFrac};
use crate::error::{Error, Result};
use crate::tlf::{KElem, KField};

type UElem<F> = VElem<<F as Field>::Elem>;

/// L = basis * O^n with `basis` in canonical t-adic Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice<E> {
    pub basis: Mat<VElem<VElem<E>>>,
}

impl<E> Lattice<E> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Full-rank F[[u]]-lattice in F(u)^d, canonical u-adic Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ULattice<E> {
    pub d: usize,
    pub basis: Mat<VElem<E>>,
}

/// L1/L2 with the basis t^j C e_i (j < e_i) where L1 = C O^n and L2 = C t^e O^n.
#[derive(Clone, Debug)]
pub struct QuotientSpace<E> {
    pub l1: Lattice<E>,
    pub l2: Lattice<E>,
    pub c: Mat<VElem<VElem<E>>>,
    pub c_inv: Mat<VElem<VElem<E>>>,
    pub exps: Vec<i64>,
    pub d: usize,
    /// Per-row truncation level: vectors of L1 whose row r lies in t^{top_r} O lie in L2.
    pub top: Vec<i64>,
}

pub fn lattice_from_matrix<F: Field>(k: &KField<F>, a: &Mat<KElem<F>>) -> Result<Lattice<F::Elem>> {
    if a.iter().any(|r| r.len() != a.len()) {
        return Err(Error::DimensionMismatch(
            a.len(),
            a.first().map_or(0, |r| r.len()),
        ));
    }
    let basis = dvr_image_hnf(k, a).map_err(|_| Error::SingularMatrix)?;
    Ok(Lattice { basis })
}

pub fn standard_lattice<F: Field>(k: &KField<F>, n: usize) -> Lattice<F::Elem> {
    Lattice {
        basis: matrix::identity(k, n),
    }
}

fn inverse<F: Field>(k: &KField<F>, a: &Mat<KElem<F>>) -> Result<Mat<KElem<F>>> {
    matrix::inverse(k, a).ok_or(Error::SingularMatrix)
}

fn is_integral_matrix<E>(m: &Mat<VElem<E>>) -> bool {
    m.iter().flatten().all(|x| x.is_zero() || x.val >= 0)
}

/// Whether `v` lies in `l`.
pub fn contains<F: Field>(k: &KField<F>, l: &Lattice<F::Elem>, v: &[KElem<F>]) -> Result<bool> {
    let inv = inverse(k, &l.basis)?;
    Ok(matrix::mul_vec(k, &inv, v)
        .iter()
        .all(|x| x.is_zero() || x.val >= 0))
}

/// Whether l2 is contained in l1.
pub fn is_sublattice<F: Field>(
    k: &KField<F>,
    l1: &Lattice<F::Elem>,
    l2: &Lattice<F::Elem>,
) -> Result<bool> {
    Ok(is_integral_matrix(&matrix::mul(
        k,
        &inverse(k, &l1.basis)?,
        &l2.basis,
    )))
}

fn min_row_vals<E>(c: &Mat<VElem<E>>) -> Vec<i64> {
    c.iter()
        .map(|row| {
            row.iter()
                .filter(|x| !x.is_zero())
                .map(|x| x.val)
                .min()
                .unwrap_or(0)
        })
        .collect()
}

fn top_levels(c_inv_vals: &[Vec<Option<i64>>], e: &[i64]) -> Vec<i64> {
    let n = e.len();
    (0..n)
        .map(|r| {
            (0..n)
                .filter_map(|i| c_inv_vals[i][r].map(|v| e[i] - v))
                .max()
                .expect("invertible")
        })
        .collect()
}

fn vals<E>(m: &Mat<VElem<E>>) -> Vec<Vec<Option<i64>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| (!x.is_zero()).then_some(x.val))
                .collect()
        })
        .collect()
}

pub fn quotient_data<F: Field>(
    k: &KField<F>,
    l1: &Lattice<F::Elem>,
    l2: &Lattice<F::Elem>,
) -> Result<QuotientSpace<F::Elem>> {
    if l1.rank() != l2.rank() {
        return Err(Error::DimensionMismatch(l1.rank(), l2.rank()));
    }
    let a1_inv = inverse(k, &l1.basis)?;
    let b = matrix::mul(k, &a1_inv, &l2.basis);
    if !is_integral_matrix(&b) {
        return Err(Error::NotNested);
    }
    let sd = smith_rect(k, &b, true);
    if sd.exps.len() < b.len() {
        return Err(Error::SingularMatrix);
    }
    let c = matrix::mul(k, &l1.basis, &sd.left);
    let c_inv = matrix::mul(k, &sd.left_inv, &a1_inv);
    let top = top_levels(&vals(&c_inv), &sd.exps);
    let d = sd.exps.iter().sum::<i64>() as usize;
    Ok(QuotientSpace {
        l1: l1.clone(),
        l2: l2.clone(),
        c,
        c_inv,
        exps: sd.exps,
        d,
        top,
    })
}

/// The basis vector t^j C e_i of L1/L2.
pub fn basis_vector<F: Field>(
    k: &KField<F>,
    q: &QuotientSpace<F::Elem>,
    i: usize,
    j: i64,
) -> Vec<KElem<F>> {
    q.c.iter().map(|row| k.shift(&row[i], j)).collect()
}

/// Coordinates over F(u) of the class of v in L1/L2.
pub fn coordinates<F: Field>(
    k: &KField<F>,
    q: &QuotientSpace<F::Elem>,
    v: &[KElem<F>],
) -> Result<Vec<UElem<F>>> {
    let x = matrix::mul_vec(k, &q.c_inv, v);
    if x.iter().any(|c| !c.is_zero() && c.val < 0) {
        return Err(Error::NotNested);
    }
    let mut out = Vec::with_capacity(q.d);
    for (i, xi) in x.iter().enumerate() {
        out.extend(k.laurent(xi, 0, q.exps[i]));
    }
    Ok(out)
}

/// Canonical lattice spanned by the columns of a generator matrix.
pub fn ulattice_from_generators<F: Field>(
    fu: &ValuedFrac<F>,
    d: usize,
    gens: &Mat<UElem<F>>,
) -> Result<ULattice<F::Elem>> {
    if d == 0 {
        return Ok(ULattice { d, basis: vec![] });
    }
    Ok(ULattice {
        d,
        basis: dvr_image_hnf(fu, gens)?,
    })
}

/// The image of B^n ∩ L1 in L1/L2, by exact elimination over F(u).
pub fn b_lattice_image<F: Field>(
    k: &KField<F>,
    q: &QuotientSpace<F::Elem>,
) -> Result<ULattice<F::Elem>> {
    let fu = &k.base;
    let n = q.c.len();
    if q.d == 0 {
        return Ok(ULattice {
            d: 0,
            basis: vec![],
        });
    }
    let lo = min_row_vals(&q.c);
    let hi = &q.top;
    let mut row_off = vec![0usize; n + 1];
    for r in 0..n {
        row_off[r + 1] = row_off[r] + (hi[r] - lo[r]).max(0) as usize;
    }
    let w = row_off[n];
    let lau: Vec<Vec<Vec<UElem<F>>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|i| k.laurent(&q.c[r][i], lo[r], hi[r]))
                .collect()
        })
        .collect();
    let column = |i: usize, j: i64| -> Vec<UElem<F>> {
        let mut col = vec![fu.zero(); w];
        for r in 0..n {
            for kexp in lo[r]..hi[r] {
                let src = kexp - j - lo[r];
                if src >= 0 {
                    col[row_off[r] + (kexp - lo[r]) as usize] = lau[r][i][src as usize].clone();
                }
            }
        }
        col
    };
    let span = |i: usize| {
        (0..n)
            .filter(|&r| !q.c[r][i].is_zero())
            .map(|r| hi[r] - q.c[r][i].val)
            .max()
            .unwrap_or(0)
            .max(0)
    };
    let mut cols = Vec::new();
    for i in 0..n {
        for j in 0..q.exps[i] {
            cols.push(column(i, j));
        }
    }
    for i in 0..n {
        for j in q.exps[i]..span(i) {
            cols.push(column(i, j));
        }
    }
    let mfull = matrix::from_columns(&cols);
    let sd = smith_rect(fu, &mfull, true);
    let gens: Mat<UElem<F>> = (0..q.d)
        .map(|a| {
            (0..sd.exps.len())
                .map(|c| fu.shift(&sd.right_inv[a][c], -sd.exps[c]))
                .collect()
        })
        .collect();
    ulattice_from_generators(fu, q.d, &gens)
}

/// m(V, W) = v_u det(P_V^{-1} P_W).
pub fn u_rel_index<F: Field>(
    fu: &ValuedFrac<F>,
    v: &ULattice<F::Elem>,
    w: &ULattice<F::Elem>,
) -> Result<i64> {
    if v.d != w.d {
        return Err(Error::DimensionMismatch(v.d, w.d));
    }
    Ok(hnf_det_val(fu, &w.basis) - hnf_det_val(fu, &v.basis))
}

/// Image of a u-lattice under a linear map given by its matrix.
pub fn ulattice_map<F: Field>(
    fu: &ValuedFrac<F>,
    phi: &Mat<UElem<F>>,
    v: &ULattice<F::Elem>,
) -> Result<ULattice<F::Elem>> {
    ulattice_from_generators(fu, v.d, &matrix::mul(fu, phi, &v.basis))
}

fn translate<F: Field>(
    k: &KField<F>,
    g: &Mat<KElem<F>>,
    l: &Lattice<F::Elem>,
) -> Result<Lattice<F::Elem>> {
    lattice_from_matrix(k, &matrix::mul(k, g, &l.basis))
}

fn nested_defect<F: Field>(
    k: &KField<F>,
    g: &Mat<KElem<F>>,
    l1: &Lattice<F::Elem>,
    l2: &Lattice<F::Elem>,
) -> Result<i64> {
    let fu = &k.base;
    let q = quotient_data(k, l1, l2)?;
    if q.d == 0 {
        return Ok(0);
    }
    let gq = quotient_data(k, &translate(k, g, l1)?, &translate(k, g, l2)?)?;
    let v = b_lattice_image(k, &q)?;
    let vg = b_lattice_image(k, &gq)?;
    let mut phi_cols = Vec::with_capacity(q.d);
    for i in 0..q.c.len() {
        for j in 0..q.exps[i] {
            let b = basis_vector(k, &q, i, j);
            phi_cols.push(coordinates(k, &gq, &matrix::mul_vec(k, g, &b))?);
        }
    }
    let phi = matrix::from_columns(&phi_cols);
    let moved = ulattice_map(fu, &phi, &v)?;
    u_rel_index(fu, &moved, &vg)
}

/// Comparison of the transported B-normalized measure with the B-normalized
/// measure on gL1/gL2, as a q-exponent. Non-nested pairs go through t^N L1.
pub fn action_defect<F: Field>(
    k: &KField<F>,
    g: &Mat<KElem<F>>,
    l1: &Lattice<F::Elem>,
    l2: &Lattice<F::Elem>,
) -> Result<i64> {
    inverse(k, g)?;
    if is_sublattice(k, l1, l2)? {
        return nested_defect(k, g, l1, l2);
    }
    let b = matrix::mul(k, &inverse(k, &l2.basis)?, &l1.basis);
    let low = b
        .iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| x.val)
        .min()
        .unwrap_or(0);
    let shift = (-low).max(0);
    action_defect_via(k, g, l1, l2, shift)
}

/// The non-nested reduction with an explicit admissible shift N (t^N L1 ⊆ L1 ∩ L2).
pub fn action_defect_via<F: Field>(
    k: &KField<F>,
    g: &Mat<KElem<F>>,
    l1: &Lattice<F::Elem>,
    l2: &Lattice<F::Elem>,
    shift: i64,
) -> Result<i64> {
    let l3 = lattice_from_matrix(k, &matrix::scale(k, &l1.basis, &k.x_pow(shift)))?;
    if !is_sublattice(k, l2, &l3)? || !is_sublattice(k, l1, &l3)? {
        return Err(Error::NotNested);
    }
    Ok(nested_defect(k, g, l1, &l3)? - nested_defect(k, g, l2, &l3)?)
}

/// t-adic coefficients of x for exponents lo..hi as u-adic series.
fn t_expand<F: Field>(
    k: &KField<F>,
    ring: &SeriesRing<F>,
    x: &KElem<F>,
    lo: i64,
    hi: i64,
    rel: i64,
) -> Result<Vec<TruncSeries<F::Elem>>> {
    let fu = &k.base;
    let len = (hi - lo).max(0) as usize;
    let mut out = vec![ring.zero_exact(); len];
    if x.is_zero() || x.val >= hi {
        return Ok(out);
    }
    let conv = |c: &UElem<F>| ring.from_velem(fu, c, if c.is_zero() { EXACT } else { c.val + rel });
    let n = (hi - x.val) as usize;
    let mut s: Vec<TruncSeries<F::Elem>> = Vec::with_capacity(n);
    if x.den.len() == 1 {
        let d0 = conv(&x.den[0]);
        for j in 0..n {
            let p = x.num.get(j).map_or_else(|| ring.zero_exact(), &conv);
            s.push(ring.div(&p, &d0)?);
        }
    } else {
        let q0inv = ring.inv(&conv(&x.den[0]))?;
        let qs: Vec<_> = x.den.iter().map(&conv).collect();
        for j in 0..n {
            let mut acc = x.num.get(j).map_or_else(|| ring.zero_exact(), &conv);
            for l in 1..=j.min(qs.len() - 1) {
                if qs[l].is_exact_zero() {
                    continue;
                }
                acc = ring.sub(&acc, &ring.mul(&qs[l], &s[j - l]));
            }
            s.push(ring.mul(&acc, &q0inv));
        }
    }
    for (j, c) in s.into_iter().enumerate() {
        let e = x.val + j as i64;
        if e >= lo {
            out[(e - lo) as usize] = c;
        }
    }
    Ok(out)
}

/// v_u det of the B-image of C O^n / C t^e O^n in the basis t^j C e_i,
/// via index(span of t^j C e_i, j >= e_i) - index(span of all t^j C e_i).
fn beta<F: Field>(
    k: &KField<F>,
    c: &Mat<KElem<F>>,
    c_inv_vals: &[Vec<Option<i64>>],
    e: &[i64],
    nu_det_c: i64,
    rel: i64,
) -> Result<i64> {
    let n = c.len();
    if e.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    let ring = SeriesRing::new(k.base.base.clone(), rel);
    let hi = top_levels(c_inv_vals, e);
    let lo = min_row_vals(c);
    let mut row_off = vec![0usize; n + 1];
    for r in 0..n {
        row_off[r + 1] = row_off[r] + (hi[r] - lo[r]).max(0) as usize;
    }
    let w = row_off[n];
    let mut ser = vec![vec![vec![]; n]; n];
    for r in 0..n {
        for i in 0..n {
            ser[r][i] = t_expand(k, &ring, &c[r][i], lo[r], hi[r], rel)?;
        }
    }
    let span = |i: usize| {
        (0..n)
            .filter(|&r| !c[r][i].is_zero())
            .map(|r| hi[r] - c[r][i].val)
            .max()
            .unwrap_or(0)
            .max(0)
    };
    let mut all_cols: Vec<Vec<TruncSeries<F::Elem>>> = Vec::new();
    let mut ge_cols = Vec::new();
    for i in 0..n {
        for j in 0..span(i) {
            let mut col = vec![ring.zero_exact(); w];
            for r in 0..n {
                for kexp in lo[r]..hi[r] {
                    let src = kexp - j - lo[r];
                    if src >= 0 {
                        col[row_off[r] + (kexp - lo[r]) as usize] = ser[r][i][src as usize].clone();
                    }
                }
            }
            if j >= e[i] {
                ge_cols.push(col.clone());
            }
            all_cols.push(col);
        }
    }
    let rank_all = hi.iter().sum::<i64>() - nu_det_c;
    let rank_ge = rank_all - e.iter().sum::<i64>();
    let to_rows = |cols: &Vec<Vec<TruncSeries<F::Elem>>>| -> Vec<Vec<TruncSeries<F::Elem>>> {
        (0..w)
            .map(|r| cols.iter().map(|col| col[r].clone()).collect())
            .collect()
    };
    let idx_ge = pivot_valuation_sum(&ring, to_rows(&ge_cols), rank_ge as usize)?;
    let idx_all = pivot_valuation_sum(&ring, to_rows(&all_cols), rank_all as usize)?;
    Ok(idx_ge - idx_all)
}

/// Data of g reused across defect evaluations.
pub struct Mover<F: Field> {
    pub g: Mat<KElem<F>>,
    pub g_inv: Mat<KElem<F>>,
    pub nu_det: i64,
}

impl<F: Field> Mover<F> {
    pub fn new(k: &KField<F>, g: &Mat<KElem<F>>) -> Result<Self> {
        let g_inv = inverse(k, g)?;
        let nu_det = k
            .valuation(&matrix::det(k, g))
            .ok_or(Error::SingularMatrix)?;
        Ok(Mover {
            g: g.clone(),
            g_inv,
            nu_det,
        })
    }
}

/// Defect of g on the pair (C O^n, C t^e O^n), series route.
pub fn defect_on_pair<F: Field>(
    k: &KField<F>,
    mv: &Mover<F>,
    c: &Mat<KElem<F>>,
    c_inv: &Mat<KElem<F>>,
    e: &[i64],
    nu_det_c: i64,
    rel: i64,
) -> Result<i64> {
    if e.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    let gc = matrix::mul(k, &mv.g, c);
    let gc_inv = matrix::mul(k, c_inv, &mv.g_inv);
    let b1 = beta(k, c, &vals(c_inv), e, nu_det_c, rel)?;
    let b2 = beta(k, &gc, &vals(&gc_inv), e, nu_det_c + mv.nu_det, rel)?;
    Ok(b2 - b1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    pub start: i64,
    pub cap: i64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start: 16,
            cap: 1024,
        }
    }
}

/// Run `f` with doubling relative precision until it stops reporting
/// insufficient precision.
pub fn with_precision<T>(
    policy: PrecisionPolicy,
    mut f: impl FnMut(i64) -> Result<T>,
) -> Result<T> {
    let mut rel = policy.start.max(1);
    loop {
        match f(rel) {
            Err(Error::InsufficientPrecision) if rel < policy.cap => {
                rel = (2 * rel).min(policy.cap)
            }
            Err(Error::InsufficientPrecision) => return Err(Error::PrecisionCap(policy.cap)),
            other => return other,
        }
    }
}

/// Defect of g on (O^n, hO^n) through the t-adic Smith form h = X t^k Y.
pub fn defect_standard_pair<F: Field>(
    k: &KField<F>,
    mv: &Mover<F>,
    h: &Mat<KElem<F>>,
    policy: PrecisionPolicy,
) -> Result<i64> {
    let n = h.len();
    let sd = smith_rect(k, h, true);
    if sd.exps.len() < n {
        return Err(Error::SingularMatrix);
    }
    if sd.exps.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    let x = sd.left;
    let x_inv = sd.left_inv;
    let kp: Vec<i64> = sd.exps.iter().map(|&v| v.max(0)).collect();
    let km: Vec<i64> = sd.exps.iter().map(|&v| (-v).max(0)).collect();
    let xt: Mat<KElem<F>> = x
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, a)| k.shift(a, sd.exps[i]))
                .collect()
        })
        .collect();
    let xt_inv: Mat<KElem<F>> = x_inv
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|a| k.shift(a, -sd.exps[i])).collect())
        .collect();
    let total: i64 = sd.exps.iter().sum();
    with_precision(policy, |rel| {
        let d1 = defect_on_pair(k, mv, &x, &x_inv, &kp, 0, rel)?;
        let d2 = defect_on_pair(k, mv, &xt, &xt_inv, &km, total, rel)?;
        Ok(d1 - d2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::tlf::{k_field, parse_k};

    fn k2() -> KField<PrimeField> {
        k_field(PrimeField::with_p(2))
    }

    fn mat(k: &KField<PrimeField>, rows: &[&[&str]]) -> Mat<KElem<PrimeField>> {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_k(k, s).unwrap()).collect())
            .collect()
    }

    #[test]
    fn hnf_examples() {
        let k = k2();
        let a = mat(&k, &[&["t^2", "0"], &["0", "t^-1"]]);
        assert_eq!(lattice_from_matrix(&k, &a).unwrap().basis, a);
        let a = matrix::mul(
            &k,
            &mat(&k, &[&["1", "u/t"], &["0", "1"]]),
            &mat(&k, &[&["t", "0"], &["0", "1"]]),
        );
        assert_eq!(
            lattice_from_matrix(&k, &a).unwrap().basis,
            mat(&k, &[&["t", "u/t"], &["0", "1"]])
        );
        let e = mat(&k, &[&["1", "1+t"], &["0", "1"]]);
        assert_eq!(
            lattice_from_matrix(&k, &matrix::mul(&k, &a, &e)).unwrap(),
            lattice_from_matrix(&k, &a).unwrap()
        );
    }

    #[test]
    fn quotient_dimensions() {
        let k = k2();
        let o1 = standard_lattice(&k, 1);
        let t1 = lattice_from_matrix(&k, &mat(&k, &[&["t"]])).unwrap();
        assert_eq!(quotient_data(&k, &o1, &t1).unwrap().d, 1);
        let o2 = standard_lattice(&k, 2);
        let l = lattice_from_matrix(&k, &mat(&k, &[&["t^2", "0"], &["0", "t"]])).unwrap();
        assert_eq!(quotient_data(&k, &o2, &l).unwrap().d, 3);
        assert_eq!(quotient_data(&k, &l, &l).unwrap().d, 0);
        assert!(matches!(quotient_data(&k, &l, &o2), Err(Error::NotNested)));
    }

    #[test]
    fn b_image_rank_one() {
        let k = k2();
        let fu = &k.base;
        let q = quotient_data(
            &k,
            &standard_lattice(&k, 1),
            &lattice_from_matrix(&k, &mat(&k, &[&["t"]])).unwrap(),
        )
        .unwrap();
        let v = b_lattice_image(&k, &q).unwrap();
        assert_eq!(v.basis, matrix::identity(fu, 1));
        let w = ULattice {
            d: 1,
            basis: vec![vec![fu.x_pow(1)]],
        };
        assert_eq!(u_rel_index(fu, &v, &w).unwrap(), 1);
        assert_eq!(u_rel_index(fu, &v, &v).unwrap(), 0);
    }

    #[test]
    fn defect_of_u_on_rank_one() {
        let k = k2();
        let g = mat(&k, &[&["u"]]);
        let l2 = lattice_from_matrix(&k, &mat(&k, &[&["t"]])).unwrap();
        let d = action_defect(&k, &g, &standard_lattice(&k, 1), &l2).unwrap();
        assert_eq!(d.abs(), 1);
    }

    #[test]
    fn series_route_matches_exact_route() {
        let k = k2();
        let cases = [
            (mat(&k, &[&["u"]]), mat(&k, &[&["t"]])),
            (mat(&k, &[&["t"]]), mat(&k, &[&["u"]])),
            (
                mat(&k, &[&["u", "t"], &["0", "1+u"]]),
                mat(&k, &[&["t", "u"], &["0", "t^-1"]]),
            ),
            (
                mat(&k, &[&["1", "1/u"], &["t", "u"]]),
                mat(&k, &[&["t^2", "0"], &["u*t", "1/(1+u)"]]),
            ),
        ];
        for (g, h) in cases {
            let mv = Mover::new(&k, &g).unwrap();
            let fast = defect_standard_pair(&k, &mv, &h, PrecisionPolicy::default()).unwrap();
            let hl = lattice_from_matrix(&k, &h).unwrap();
            let slow = action_defect(&k, &g, &standard_lattice(&k, g.len()), &hl).unwrap();
            assert_eq!(fast, slow);
        }
    }
}
