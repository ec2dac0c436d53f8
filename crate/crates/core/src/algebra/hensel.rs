//! Bivariate polynomials in F_q[u][t], squarefree coprime bases, Newton
//! polygons, Hensel lifting over F_q[[u]] and branch factorization.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use super::ffactor;
use super::field::{Field, FiniteField};
use super::poly::{self, Poly};
use super::series::{pivot_valuation_sum, SeriesRing, TruncSeries, EXACT};
use super::valued::{VElem, ValuedFrac};
use crate::error::{Error, Result};

/// Coefficient j is the polynomial in u multiplying t^j.
pub type BiPoly<E> = Vec<Poly<E>>;
/// Polynomial in t with u-adic series coefficients.
pub type SPoly<E> = Vec<TruncSeries<E>>;

pub fn bi_trim<F: Field>(f: &F, a: BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    let mut a: BiPoly<F::Elem> = a.into_iter().map(|c| poly::trim(f, c)).collect();
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

pub fn bi_deg_t<E>(a: &BiPoly<E>) -> isize {
    a.len() as isize - 1
}

pub fn bi_mul<F: Field>(f: &F, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![vec![]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = poly::add(f, &out[i + j], &poly::mul(f, x, y));
        }
    }
    bi_trim(f, out)
}

pub fn bi_pow<F: Field>(f: &F, a: &BiPoly<F::Elem>, e: usize) -> BiPoly<F::Elem> {
    let mut acc = vec![vec![f.one()]];
    for _ in 0..e {
        acc = bi_mul(f, &acc, a);
    }
    acc
}

/// The polynomial P(0, t).
pub fn bi_at_u0<F: Field>(f: &F, a: &BiPoly<F::Elem>) -> Poly<F::Elem> {
    poly::trim(
        f,
        a.iter()
            .map(|c| c.first().cloned().unwrap_or_else(|| f.zero()))
            .collect(),
    )
}

/// Largest r with u^r dividing every coefficient.
pub fn bi_u_order<F: Field>(f: &F, a: &BiPoly<F::Elem>) -> usize {
    a.iter().filter_map(|c| poly::ord0(f, c)).min().unwrap_or(0)
}

pub fn bi_div_u_pow<F: Field>(f: &F, a: &BiPoly<F::Elem>, r: usize) -> BiPoly<F::Elem> {
    bi_trim(
        f,
        a.iter()
            .map(|c| if c.len() > r { c[r..].to_vec() } else { vec![] })
            .collect(),
    )
}

/// Substitute t = s(u).
pub fn bi_eval_t<F: Field>(f: &F, a: &BiPoly<F::Elem>, s: &[F::Elem]) -> Poly<F::Elem> {
    let mut acc = vec![];
    for c in a.iter().rev() {
        acc = poly::add(f, &poly::mul(f, &acc, s), c);
    }
    acc
}

fn partial_t<F: Field>(f: &F, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    bi_trim(
        f,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| poly::scale(f, c, &f.from_i64(j as i64)))
            .collect(),
    )
}

fn partial_u<F: Field>(f: &F, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    bi_trim(f, a.iter().map(|c| poly::derivative(f, c)).collect())
}

fn pth_root<F: FiniteField>(f: &F, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    let p = f.characteristic() as usize;
    let e = f.order() / BigUint::from(p as u64);
    let root =
        |c: &Poly<F::Elem>| poly::trim(f, c.iter().step_by(p).map(|x| f.pow_big(x, &e)).collect());
    bi_trim(f, a.iter().step_by(p).map(root).collect())
}

pub fn bi_to_fu<F: Field>(fu: &ValuedFrac<F>, a: &BiPoly<F::Elem>) -> Vec<VElem<F::Elem>> {
    a.iter().map(|c| fu.from_poly(c.clone())).collect()
}

/// Clear denominators and content; normalize the leading u-coefficient of the
/// leading t-coefficient to 1.
pub fn bi_from_fu<F: Field>(fu: &ValuedFrac<F>, a: &[VElem<F::Elem>]) -> BiPoly<F::Elem> {
    let f = &fu.base;
    let a = poly::trim(fu, a.to_vec());
    if a.is_empty() {
        return vec![];
    }
    let fracs: Vec<_> = a.iter().map(|x| fu.to_frac(x)).collect();
    let mut l = vec![f.one()];
    for (_, d) in fracs.iter().filter(|(n, _)| !n.is_empty()) {
        let g = poly::gcd(f, &l, d);
        l = poly::mul(f, &l, &poly::div_exact(f, d, &g).unwrap());
    }
    let mut coeffs: Vec<Poly<F::Elem>> = fracs
        .iter()
        .map(|(n, d)| {
            if n.is_empty() {
                vec![]
            } else {
                poly::mul(f, n, &poly::div_exact(f, &l, d).unwrap())
            }
        })
        .collect();
    let mut g: Poly<F::Elem> = vec![];
    for c in &coeffs {
        g = poly::gcd(f, &g, c);
    }
    for c in coeffs.iter_mut() {
        *c = poly::div_exact(f, c, &g).unwrap();
    }
    let lc = poly::lc(f, coeffs.last().unwrap());
    let inv = f.inv(&lc);
    bi_trim(f, coeffs.iter().map(|c| poly::scale(f, c, &inv)).collect())
}

pub fn bi_normalize<F: Field>(fu: &ValuedFrac<F>, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
    bi_from_fu(fu, &bi_to_fu(fu, a))
}

fn bi_gcd<F: Field>(
    fu: &ValuedFrac<F>,
    a: &BiPoly<F::Elem>,
    b: &BiPoly<F::Elem>,
) -> BiPoly<F::Elem> {
    bi_from_fu(fu, &poly::gcd(fu, &bi_to_fu(fu, a), &bi_to_fu(fu, b)))
}

fn bi_div<F: Field>(
    fu: &ValuedFrac<F>,
    a: &BiPoly<F::Elem>,
    b: &BiPoly<F::Elem>,
) -> BiPoly<F::Elem> {
    bi_from_fu(
        fu,
        &poly::div_exact(fu, &bi_to_fu(fu, a), &bi_to_fu(fu, b)).expect("exact division"),
    )
}

/// A squarefree primitive factor with its multiplicity in each input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<E> {
    pub p: BiPoly<E>,
    pub mult: Vec<usize>,
}

/// Pairwise coprime squarefree primitive polynomials P_j with
/// input_i = (content) * Π_j P_j^{mult_j[i]}. Factors free of t are dropped.
pub fn coprime_base<F: FiniteField>(f: &F, inputs: &[BiPoly<F::Elem>]) -> Vec<Piece<F::Elem>> {
    let fu = ValuedFrac::new(f.clone(), 'u');
    let n = inputs.len();
    let mut list: Vec<Piece<F::Elem>> = Vec::new();
    for (i, a) in inputs.iter().enumerate() {
        if bi_deg_t(a) >= 1 {
            let mut mult = vec![0; n];
            mult[i] = 1;
            list.push(Piece {
                p: bi_normalize(&fu, a),
                mult,
            });
        }
    }
    let add = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>();
    'outer: loop {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if list[i].p == list[j].p {
                    let pj = list.remove(j);
                    list[i].mult = add(&list[i].mult, &pj.mult);
                    continue 'outer;
                }
            }
        }
        for i in 0..list.len() {
            let p = list[i].p.clone();
            let dt = partial_t(f, &p);
            let du = partial_u(f, &p);
            if dt.is_empty() && du.is_empty() {
                let m = list[i]
                    .mult
                    .iter()
                    .map(|x| x * f.characteristic() as usize)
                    .collect();
                list[i] = Piece {
                    p: bi_normalize(&fu, &pth_root(f, &p)),
                    mult: m,
                };
                continue 'outer;
            }
            for d in [dt, du] {
                if d.is_empty() {
                    continue;
                }
                let g = bi_gcd(&fu, &p, &d);
                if bi_deg_t(&g) >= 1 && bi_deg_t(&g) < bi_deg_t(&p) {
                    let q = bi_div(&fu, &p, &g);
                    let m = list[i].mult.clone();
                    list[i].p = g;
                    list.push(Piece { p: q, mult: m });
                    continue 'outer;
                }
            }
        }
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = bi_gcd(&fu, &list[i].p, &list[j].p);
                if bi_deg_t(&g) >= 1 {
                    let b = list.remove(j);
                    let a = list.remove(i);
                    for (x, m) in [
                        (bi_div(&fu, &a.p, &g), a.mult.clone()),
                        (bi_div(&fu, &b.p, &g), b.mult.clone()),
                    ] {
                        if bi_deg_t(&x) >= 1 {
                            list.push(Piece { p: x, mult: m });
                        }
                    }
                    list.push(Piece {
                        p: g,
                        mult: add(&a.mult, &b.mult),
                    });
                    continue 'outer;
                }
            }
        }
        break;
    }
    list.sort_by(|a, b| format!("{:?}", a.p).cmp(&format!("{:?}", b.p)));
    list
}

pub fn bi_to_spoly<F: Field>(ring: &SeriesRing<F>, a: &BiPoly<F::Elem>) -> SPoly<F::Elem> {
    a.iter().map(|c| ring.from_poly(c)).collect()
}

/// Coefficients of s^k across an SPoly, as a polynomial in the main variable.
fn layer<F: Field>(ring: &SeriesRing<F>, w: &SPoly<F::Elem>, k: i64) -> Result<Poly<F::Elem>> {
    let c = w
        .iter()
        .map(|x| ring.coeff(x, k).ok_or(Error::InsufficientPrecision))
        .collect::<Result<Vec<_>>>()?;
    Ok(poly::trim(&ring.base, c))
}

/// Lift w ≡ g0 h0 (mod s), g0 monic and coprime to h0, to w ≡ G H (mod s^k)
/// with G monic of degree deg g0.
pub fn hensel_lift<F: Field>(
    ring: &SeriesRing<F>,
    w: &SPoly<F::Elem>,
    g0: &Poly<F::Elem>,
    h0: &Poly<F::Elem>,
    k: i64,
) -> Result<(SPoly<F::Elem>, SPoly<F::Elem>)> {
    let f = &ring.base;
    if layer(ring, w, 0)? != poly::mul(f, g0, h0) {
        return Err(Error::Invalid(
            "Hensel start does not reduce to the input".into(),
        ));
    }
    let (g, _, tt) = poly::xgcd(f, g0, h0);
    if g.len() != 1 {
        return Err(Error::Invalid("Hensel factors are not coprime".into()));
    }
    let mut gs = vec![g0.to_vec()];
    let mut hs = vec![h0.to_vec()];
    for step in 1..k {
        let mut e = layer(ring, w, step)?;
        for i in 1..step as usize {
            e = poly::sub(f, &e, &poly::mul(f, &gs[i], &hs[step as usize - i]));
        }
        let dg = poly::rem(f, &poly::mul(f, &e, &tt), g0);
        let dh = poly::div_exact(f, &poly::sub(f, &e, &poly::mul(f, &dg, h0)), g0)
            .ok_or_else(|| Error::Invalid("Hensel correction not divisible".into()))?;
        gs.push(dg);
        hs.push(dh);
    }
    let assemble = |parts: &[Poly<F::Elem>], monic_deg: Option<usize>| -> SPoly<F::Elem> {
        let deg = parts.iter().map(|p| p.len()).max().unwrap_or(0);
        (0..deg)
            .map(|j| {
                if Some(j) == monic_deg {
                    return ring.one();
                }
                let c = parts
                    .iter()
                    .map(|p| p.get(j).cloned().unwrap_or_else(|| f.zero()))
                    .collect();
                ring.make(0, c, k)
            })
            .collect()
    };
    let dg = g0.len() - 1;
    Ok((assemble(&gs, Some(dg)), assemble(&hs, None)))
}

/// Monic factor of P over F_q[[u]] whose roots have positive valuation.
pub fn weierstrass_part<F: Field>(
    ring: &SeriesRing<F>,
    p: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<SPoly<F::Elem>> {
    let f = &ring.base;
    let p0 = bi_at_u0(f, p);
    if p0.is_empty() {
        return Err(Error::Invalid("polynomial divisible by u".into()));
    }
    let m = poly::ord0(f, &p0).unwrap();
    let g0 = poly::monomial(f, f.one(), m);
    let h0 = p0[m..].to_vec();
    Ok(hensel_lift(ring, &bi_to_spoly(ring, p), &g0, &h0, prec)?.0)
}

/// Monic factor of P over F_q[[u]] whose roots have nonnegative valuation.
pub fn integral_part<F: Field>(
    ring: &SeriesRing<F>,
    p: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<SPoly<F::Elem>> {
    let f = &ring.base;
    let p0 = bi_at_u0(f, p);
    if p0.is_empty() {
        return Err(Error::Invalid("polynomial divisible by u".into()));
    }
    let g0 = poly::monic(f, &p0);
    let h0 = vec![poly::lc(f, &p0)];
    Ok(hensel_lift(ring, &bi_to_spoly(ring, p), &g0, &h0, prec)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub slope_num: i64,
    pub slope_den: i64,
    pub length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub ord_t: usize,
    pub segments: Vec<Segment>,
}

/// Lower hull vertices (index, valuation) after removing exact low zeros.
fn hull<E>(w: &SPoly<E>) -> Result<(usize, Vec<(i64, i64)>)> {
    let ord = w
        .iter()
        .position(|c| !c.is_exact_zero())
        .ok_or(Error::ZeroInput)?;
    let w = &w[ord..];
    let last = w.len() - 1;
    if w[0].val().is_none() || w[last].val().is_none() {
        return Err(Error::InsufficientPrecision);
    }
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for (j, c) in w.iter().enumerate() {
        if let Some(v) = c.val() {
            let p = (j as i64, v);
            while pts.len() >= 2 {
                let (a, b) = (pts[pts.len() - 2], pts[pts.len() - 1]);
                if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) <= 0 {
                    pts.pop();
                } else {
                    break;
                }
            }
            pts.push(p);
        }
    }
    for (j, c) in w.iter().enumerate() {
        if c.val().is_some() || c.is_exact() {
            continue;
        }
        let j = j as i64;
        let seg = pts.windows(2).find(|s| s[0].0 <= j && j <= s[1].0).unwrap();
        let (a, b) = (seg[0], seg[1]);
        // prec > a.1 + (b.1 - a.1)(j - a.0)/(b.0 - a.0)
        if c.prec * (b.0 - a.0) <= a.1 * (b.0 - a.0) + (b.1 - a.1) * (j - a.0) {
            return Err(Error::InsufficientPrecision);
        }
    }
    Ok((ord, pts))
}

pub fn newton_polygon<E>(w: &SPoly<E>) -> Result<NewtonPolygon> {
    let (ord, pts) = hull(w)?;
    let segments = pts
        .windows(2)
        .map(|s| {
            let (dx, dy) = (s[1].0 - s[0].0, s[1].1 - s[0].1);
            let g = dx.gcd(&dy);
            Segment {
                slope_num: dy / g,
                slope_den: dx / g,
                length: dx,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        ord_t: ord,
        segments,
    })
}

/// An irreducible factor over F_q((u)), monic in t, with ramification index e
/// and residue degree f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch<E> {
    pub w: SPoly<E>,
    pub e: i64,
    pub f: i64,
    pub through_origin: bool,
    /// False for a product of branches away from the origin that was not
    /// split further; e and f are then 0.
    pub resolved: bool,
}

impl<E> Branch<E> {
    pub fn deg(&self) -> i64 {
        self.w.len() as i64 - 1
    }
}

/// w(t + c).
pub fn spoly_shift<F: Field>(
    ring: &SeriesRing<F>,
    w: &SPoly<F::Elem>,
    c: &TruncSeries<F::Elem>,
) -> SPoly<F::Elem> {
    let mut acc: SPoly<F::Elem> = vec![];
    for a in w.iter().rev() {
        let mut next = vec![ring.zero_exact(); acc.len() + 1];
        for (i, x) in acc.iter().enumerate() {
            next[i + 1] = ring.add(&next[i + 1], x);
            next[i] = ring.add(&next[i], &ring.mul(x, c));
        }
        next[0] = ring.add(&next[0], a);
        acc = next;
    }
    acc
}

/// Remainder of a modulo the monic w.
pub fn spoly_rem<F: Field>(
    ring: &SeriesRing<F>,
    a: &SPoly<F::Elem>,
    w: &SPoly<F::Elem>,
) -> SPoly<F::Elem> {
    let d = w.len() - 1;
    let mut a = a.to_vec();
    while a.len() > d {
        let q = a.pop().unwrap();
        if q.is_exact_zero() {
            continue;
        }
        let base = a.len() - d;
        for k in 0..d {
            if !w[k].is_exact_zero() {
                a[base + k] = ring.sub(&a[base + k], &ring.mul(&q, &w[k]));
            }
        }
    }
    a.resize(d, ring.zero_exact());
    a
}

/// v_u Res_t(w, h) for monic w, through the multiplication-by-h matrix modulo w.
pub fn res_val<F: Field>(
    ring: &SeriesRing<F>,
    w: &SPoly<F::Elem>,
    h: &SPoly<F::Elem>,
) -> Result<i64> {
    let d = w.len() - 1;
    if d == 0 {
        return Ok(0);
    }
    let mut col = spoly_rem(ring, h, w);
    let mut cols = Vec::with_capacity(d);
    for _ in 0..d {
        cols.push(col.clone());
        let mut next = vec![ring.zero_exact()];
        next.extend(col);
        col = spoly_rem(ring, &next, w);
    }
    let m = (0..d)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    pivot_valuation_sum(ring, m, d)
}

pub fn through_origin<E>(w: &SPoly<E>) -> bool {
    w[..w.len() - 1].iter().all(|c| c.val_bound() >= 1)
}

const MAX_DEPTH: usize = 16;

/// Irreducible factors of a monic g over F_q((u)) whose roots have
/// nonnegative valuation; g(t) = P-factor(t + sigma) for the exact shift sigma.
fn factor_monic<F: FiniteField>(
    ring: &SeriesRing<F>,
    piece: &BiPoly<F::Elem>,
    g: SPoly<F::Elem>,
    sigma: &[F::Elem],
    depth: usize,
) -> Result<Vec<Branch<F::Elem>>> {
    let f = &ring.base;
    let back = ring.neg(&ring.from_poly(sigma));
    let mk = |w: SPoly<F::Elem>, e: i64, fd: i64| {
        let w = if sigma.is_empty() {
            w
        } else {
            spoly_shift(ring, &w, &back)
        };
        let through_origin = through_origin(&w);
        Branch {
            w,
            e,
            f: fd,
            through_origin,
            resolved: e > 0,
        }
    };
    let d = g.len() - 1;
    if d == 0 {
        return Ok(vec![]);
    }
    if g[0].val().is_none() {
        if !g[0].is_exact() && !bi_eval_t(f, piece, sigma).is_empty() {
            return Err(Error::InsufficientPrecision);
        }
        let mut out = vec![mk(vec![ring.zero_exact(), ring.one()], 1, 1)];
        out.extend(factor_monic(ring, piece, g[1..].to_vec(), sigma, depth)?);
        return Ok(out);
    }
    if d == 1 {
        return Ok(vec![mk(g, 1, 1)]);
    }
    let (_, pts) = hull(&g)?;
    let single_side = pts.len() == 2;
    let mut out = Vec::new();
    for side in pts.windows(2) {
        let ((i0, v0), (i1, v1)) = (side[0], side[1]);
        let gg = (i1 - i0).gcd(&(v0 - v1));
        let (e, h) = ((i1 - i0) / gg, (v0 - v1) / gg);
        let psi: Poly<F::Elem> = (0..=gg)
            .map(|l| {
                ring.coeff(&g[(i0 + e * l) as usize], v0 - h * l)
                    .ok_or(Error::InsufficientPrecision)
            })
            .collect::<Result<_>>()?;
        let (_, facs) = ffactor::factor(f, &psi);
        if single_side && facs.len() == 1 && facs[0].1 == 1 {
            return Ok(vec![mk(g, e, facs[0].0.len() as i64 - 1)]);
        }
        for (phi, m) in facs {
            let fd = phi.len() as i64 - 1;
            let part = side_factor(ring, &g, (i0, v0), e, h, &phi, m)?;
            if m == 1 {
                out.push(mk(part, e, fd));
            } else if e == 1 && fd == 1 && depth < MAX_DEPTH {
                let c = f.neg(&phi[0]);
                let step = poly::monomial(f, c, h as usize);
                let shifted = spoly_shift(ring, &part, &ring.from_poly(&step));
                out.extend(factor_monic(
                    ring,
                    piece,
                    shifted,
                    &poly::add(f, sigma, &step),
                    depth + 1,
                )?);
            } else if h == 0 {
                out.push(mk(part, 0, 0));
            } else {
                return Err(Error::Unsupported(format!(
                    "non-regular Newton side (slope -{h}/{e}, residual factor of degree {fd} with multiplicity {m})"
                )));
            }
        }
    }
    Ok(out)
}

/// Factor of g attached to a side of slope -h/e and a residual factor phi^m.
fn side_factor<F: FiniteField>(
    ring: &SeriesRing<F>,
    g: &SPoly<F::Elem>,
    start: (i64, i64),
    e: i64,
    h: i64,
    phi: &Poly<F::Elem>,
    m: usize,
) -> Result<SPoly<F::Elem>> {
    let f = &ring.base;
    let n0 = e * start.1 + h * start.0;
    let wt: SPoly<F::Elem> = g
        .iter()
        .enumerate()
        .map(|(j, c)| ring.shift(&ring.inflate(c, e), h * j as i64 - n0))
        .collect();
    let ks = wt.iter().map(|c| c.prec).min().unwrap();
    let ks = if ks >= EXACT {
        e * ring.default_rel
    } else {
        ks
    };
    if ks < 1 {
        return Err(Error::InsufficientPrecision);
    }
    let mut phi_e = vec![f.zero(); (phi.len() - 1) * e as usize + 1];
    for (i, c) in phi.iter().enumerate() {
        phi_e[i * e as usize] = c.clone();
    }
    let g0 = poly::pow(f, &phi_e, m as u64);
    let w0 = layer(ring, &wt, 0)?;
    let h0 = poly::div_exact(f, &w0, &g0)
        .ok_or_else(|| Error::Invalid("residual factor does not divide".into()))?;
    let (gt, _) = hensel_lift(ring, &wt, &g0, &h0, ks)?;
    let dg = gt.len() as i64 - 1;
    gt.iter()
        .enumerate()
        .map(|(j, c)| {
            ring.deflate(&ring.shift(c, h * (dg - j as i64)), e)
                .ok_or_else(|| Error::Invalid("ramified factor does not descend".into()))
        })
        .collect()
}

/// All irreducible factors over F_q((u)) of the integral part of a squarefree
/// primitive polynomial, at u-adic precision `prec`.
pub fn factor_integral<F: FiniteField>(
    ring: &SeriesRing<F>,
    piece: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<Vec<Branch<F::Elem>>> {
    let g = integral_part(ring, piece, prec)?;
    factor_monic(ring, piece, g, &[], 0)
}

#[derive(Clone, Debug)]
pub struct HenselFactorization<E> {
    /// Polynomial in u times t: the powers of u and t split off.
    pub u_power: usize,
    pub t_power: usize,
    /// Branches through the origin, with multiplicities.
    pub branches: Vec<(Branch<E>, usize)>,
    /// Branches of the integral part away from the origin.
    pub other_branches: Vec<(Branch<E>, usize)>,
    pub prec: i64,
}

fn signature<E>(bs: &[(Branch<E>, usize)]) -> Vec<(i64, i64, i64, usize, bool)> {
    let mut s: Vec<_> = bs
        .iter()
        .map(|(b, m)| (b.deg(), b.e, b.f, *m, b.through_origin))
        .collect();
    s.sort();
    s
}

/// h = u^r t^m (unit of F_q[[u]][t]) Π w^mult at certified precision. Precision
/// doubles from `prec` until branch data agree at two successive levels, up to 16 prec.
pub fn hensel_factor<F: FiniteField>(
    f: &F,
    h: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<HenselFactorization<F::Elem>> {
    let h = bi_trim(f, h.clone());
    if h.is_empty() {
        return Err(Error::ZeroInput);
    }
    let r = bi_u_order(f, &h);
    let core = bi_div_u_pow(f, &h, r);
    let m = core.iter().position(|c| !c.is_empty()).unwrap();
    let core: BiPoly<F::Elem> = core[m..].to_vec();
    let pieces = coprime_base(f, &[core]);
    let run = |k: i64| -> Result<Vec<(Branch<F::Elem>, usize)>> {
        let ring = SeriesRing::new(f.clone(), k);
        let mut out = Vec::new();
        for pc in &pieces {
            for b in factor_integral(&ring, &pc.p, k)? {
                out.push((b, pc.mult[0]));
            }
        }
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                if out[i].0.through_origin
                    && out[j].0.through_origin
                    && res_val(&ring, &out[i].0.w, &out[j].0.w)? >= k
                {
                    return Err(Error::InsufficientPrecision);
                }
            }
        }
        Ok(out)
    };
    let cap = 16 * prec.max(1);
    let mut k = prec.max(1);
    let mut prev: Option<Vec<(Branch<F::Elem>, usize)>> = None;
    loop {
        match run(k) {
            Ok(bs) => {
                if let Some(p) = &prev {
                    if signature(p) == signature(&bs) {
                        let (branches, other_branches) =
                            bs.into_iter().partition(|(b, _)| b.through_origin);
                        return Ok(HenselFactorization {
                            u_power: r,
                            t_power: m,
                            branches,
                            other_branches,
                            prec: k,
                        });
                    }
                }
                prev = Some(bs);
            }
            Err(Error::InsufficientPrecision) => prev = None,
            Err(e) => return Err(e),
        }
        if k >= cap {
            return Err(Error::PrecisionCap(cap));
        }
        k = (2 * k).min(cap);
    }
}

/// Text form of a series polynomial in t, coefficients shown up to u^(terms).
pub fn format_spoly<F: Field>(ring: &SeriesRing<F>, w: &SPoly<F::Elem>, terms: i64) -> String {
    let f = &ring.base;
    let mut parts = Vec::new();
    for (j, c) in w.iter().enumerate().rev() {
        if c.is_exact_zero() {
            continue;
        }
        let top = if c.is_exact() {
            c.start + c.coeffs.len() as i64
        } else {
            c.prec.min(c.val_bound() + terms)
        };
        let mut body: Vec<String> = Vec::new();
        for k in c.val_bound()..top {
            if let Some(x) = ring.coeff(c, k) {
                if !f.is_zero(&x) {
                    body.push(poly::format(f, &poly::monomial(f, x, k as usize), 'u'));
                }
            }
        }
        if !c.is_exact() {
            body.push(format!("O(u^{})", top));
        }
        let coef = body.join(" + ");
        let tpart = match j {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{j}"),
        };
        parts.push(match (coef.as_str(), tpart.is_empty()) {
            ("1", false) => tpart,
            (_, true) => coef,
            _ if body.len() == 1 => format!("{coef}*{tpart}"),
            _ => format!("({coef})*{tpart}"),
        });
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{GaloisField, PrimeField};

    fn bp(rows: &[&[u32]]) -> BiPoly<u32> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn newton_examples() {
        let f = PrimeField::with_p(5);
        let ring = SeriesRing::new(f.clone(), 8);
        // t^2 - u
        let np = newton_polygon(&bi_to_spoly(&ring, &bp(&[&[0, 4], &[], &[1]]))).unwrap();
        assert_eq!(
            np.segments,
            vec![Segment {
                slope_num: -1,
                slope_den: 2,
                length: 2
            }]
        );
        // t^2 - u^2
        let np = newton_polygon(&bi_to_spoly(&ring, &bp(&[&[0, 0, 4], &[], &[1]]))).unwrap();
        assert_eq!(
            np.segments,
            vec![Segment {
                slope_num: -1,
                slope_den: 1,
                length: 2
            }]
        );
        // t^2 - u t
        let np = newton_polygon(&bi_to_spoly(&ring, &bp(&[&[], &[0, 4], &[1]]))).unwrap();
        assert_eq!(
            (np.ord_t, np.segments),
            (
                1,
                vec![Segment {
                    slope_num: -1,
                    slope_den: 1,
                    length: 1
                }]
            )
        );
    }

    #[test]
    fn hensel_examples() {
        let f = PrimeField::with_p(5);
        // t^2 - u^2 - u^3
        let h = bp(&[&[0, 0, 4, 4], &[], &[1]]);
        let hf = hensel_factor(&f, &h, 8).unwrap();
        assert_eq!(hf.branches.len(), 2);
        assert!(hf
            .branches
            .iter()
            .all(|(b, m)| b.e == 1 && b.f == 1 && *m == 1));
        let ring = SeriesRing::new(f.clone(), hf.prec);
        let prod = hf.branches.iter().fold(vec![ring.one()], |acc, (b, _)| {
            let mut out = vec![ring.zero_exact(); acc.len() + b.w.len() - 1];
            for (i, x) in acc.iter().enumerate() {
                for (j, y) in b.w.iter().enumerate() {
                    out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
                }
            }
            out
        });
        for (x, y) in prod.iter().zip(bi_to_spoly(&ring, &h)) {
            assert!(ring.sub(x, &y).val().is_none());
        }
        // t^2 - u
        let hf = hensel_factor(&f, &bp(&[&[0, 4], &[], &[1]]), 8).unwrap();
        assert_eq!(hf.branches.len(), 1);
        assert_eq!((hf.branches[0].0.e, hf.branches[0].0.f), (2, 1));
        // t^2 + 1 over GF(3): unramified of degree 2, away from the origin
        let f3 = PrimeField::with_p(3);
        let hf = hensel_factor(&f3, &bp(&[&[1], &[], &[1]]), 8).unwrap();
        assert!(hf.branches.is_empty());
        assert_eq!(hf.other_branches.len(), 1);
        assert_eq!((hf.other_branches[0].0.e, hf.other_branches[0].0.f), (1, 2));
    }

    #[test]
    fn repeated_roots_need_shifts() {
        let f = PrimeField::with_p(3);
        // (t - u)(t - u - u^2)(t + u^2)
        let a = bp(&[&[0, 2], &[1]]);
        let b = bp(&[&[0, 2, 2], &[1]]);
        let c = bp(&[&[0, 0, 1], &[1]]);
        let h = bi_mul(&f, &bi_mul(&f, &a, &b), &c);
        let hf = hensel_factor(&f, &h, 8).unwrap();
        assert_eq!(hf.branches.len(), 3);
    }

    #[test]
    fn inseparable_branch_in_char_two() {
        let f = PrimeField::with_p(2);
        // (t^2 + u) (t + 1)^2
        let h = bi_mul(&f, &bp(&[&[0, 1], &[], &[1]]), &bp(&[&[1], &[], &[1]]));
        let hf = hensel_factor(&f, &h, 8).unwrap();
        assert_eq!(hf.branches.len(), 1);
        assert_eq!((hf.branches[0].0.e, hf.branches[0].1), (2, 1));
        assert_eq!(hf.other_branches[0].1, 2);
    }

    #[test]
    fn coprime_base_multiplicities() {
        let f = PrimeField::with_p(2);
        let a = bp(&[&[0, 1], &[], &[1]]);
        let b = bp(&[&[1, 1], &[], &[1]]);
        let x = bi_mul(&f, &bi_pow(&f, &a, 2), &b);
        let y = bi_mul(&f, &a, &bp(&[&[], &[1]]));
        let base = coprime_base(&f, &[x, y]);
        let mut got: Vec<_> = base.iter().map(|p| p.mult.clone()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0], vec![2, 1]]);
    }

    #[test]
    fn resultant_valuation() {
        let f = PrimeField::with_p(5);
        let ring = SeriesRing::new(f.clone(), 8);
        let w = bi_to_spoly(&ring, &bp(&[&[0, 1], &[1]]));
        let h = bi_to_spoly(&ring, &bp(&[&[0, 1]]));
        assert_eq!(res_val(&ring, &w, &h).unwrap(), 1);
        let w2 = bi_to_spoly(&ring, &bp(&[&[0, 4], &[], &[1]]));
        let t = bi_to_spoly(&ring, &bp(&[&[], &[1]]));
        assert_eq!(res_val(&ring, &w2, &t).unwrap(), 1);
    }

    #[test]
    fn extension_residue_field() {
        let f = GaloisField::new(&crate::algebra::field::field_make(2, 2, None).unwrap());
        // t^2 + t + 1 splits over GF(4)
        let h: BiPoly<_> = vec![vec![f.one()], vec![f.one()], vec![f.one()]];
        let hf = hensel_factor(&f, &h, 4).unwrap();
        assert_eq!(hf.other_branches.len(), 2);
    }
}
