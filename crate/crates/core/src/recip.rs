//! Reciprocity laws: around the origin of the (u, t)-plane, along the line
//! t = 0, and the product formula over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::ffactor;
use crate::algebra::field::{rational_padic_val, Field, FiniteField, Rationals};
use crate::algebra::hensel::{
    bi_deg_t, bi_div_u_pow, bi_mul, bi_to_spoly, bi_trim, bi_u_order, coprime_base,
    factor_integral, format_spoly, integral_part, res_val, spoly_rem, BiPoly, Branch, SPoly,
};
use crate::algebra::poly;
use crate::algebra::series::SeriesRing;
use crate::algebra::valued::ValuedFrac;
use crate::error::{Error, Result};
use crate::tlf::{arch_symbol_r, padic_nu_symbol, KElem, KField};

/// An element of F(u)(t) that is a polynomial in u and t.
pub fn k_to_bipoly<F: Field>(k: &KField<F>, x: &KElem<F>) -> Result<BiPoly<F::Elem>> {
    let fu = &k.base;
    let not_poly = || Error::Invalid("expected a polynomial in u and t".into());
    let coeffs = k.as_poly(x).ok_or_else(not_poly)?;
    let out = coeffs
        .iter()
        .map(|c| fu.as_poly(c).ok_or_else(not_poly))
        .collect::<Result<Vec<_>>>()?;
    Ok(bi_trim(&fu.base, out))
}

pub fn bipoly_to_k<F: Field>(k: &KField<F>, a: &BiPoly<F::Elem>) -> KElem<F> {
    let fu = &k.base;
    k.make(
        0,
        a.iter().map(|c| fu.from_poly(c.clone())).collect(),
        vec![fu.one()],
    )
}

pub fn format_bipoly<F: Field>(k: &KField<F>, a: &BiPoly<F::Elem>) -> String {
    k.format(&bipoly_to_k(k, a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRow {
    pub branch: String,
    pub e: i64,
    pub f_deg: i64,
    pub nu_f: i64,
    pub nu_g: i64,
    /// Residue-field valuations of the cofactors, each times f_deg.
    pub resid_f: i64,
    pub resid_g: i64,
    pub term: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReciprocityReport {
    pub point: String,
    pub f: String,
    pub g: String,
    pub rows: Vec<PointRow>,
    pub total: i64,
    pub prec: i64,
    pub pass: bool,
}

/// v_u N(w, h) = sum over roots of w of v_u h(root), for each polynomial factor.
fn norm_val<F: Field>(
    ring: &SeriesRing<F>,
    w: &SPoly<F::Elem>,
    h: &BiPoly<F::Elem>,
) -> Result<i64> {
    res_val(ring, w, &bi_to_spoly(ring, h))
}

/// Quotient of the monic-divisible a by the monic w.
fn spoly_quo<F: Field>(
    ring: &SeriesRing<F>,
    a: &SPoly<F::Elem>,
    w: &SPoly<F::Elem>,
) -> SPoly<F::Elem> {
    let d = w.len() - 1;
    let mut a = a.to_vec();
    let mut q = vec![ring.zero_exact(); a.len().saturating_sub(d)];
    while a.len() > d {
        let c = a.pop().unwrap();
        let base = a.len() - d;
        for k in 0..d {
            a[base + k] = ring.sub(&a[base + k], &ring.mul(&c, &w[k]));
        }
        q[base] = c;
    }
    q
}

fn rows_at<F: FiniteField>(
    f: &F,
    rf: usize,
    rg: usize,
    fp: &BiPoly<F::Elem>,
    gp: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<Vec<PointRow>> {
    let field = f;
    let ord_t0 = |h: &BiPoly<F::Elem>| {
        let h0: Vec<F::Elem> = h
            .iter()
            .map(|c| c.first().cloned().unwrap_or_else(|| field.zero()))
            .collect();
        poly::ord0(field, &h0).unwrap() as i64
    };
    let mut rows = Vec::new();
    if rf != 0 || rg != 0 {
        let nf = ord_t0(fp);
        let ng = ord_t0(gp);
        rows.push(PointRow {
            branch: "u".into(),
            e: 1,
            f_deg: 1,
            nu_f: rf as i64,
            nu_g: rg as i64,
            resid_f: nf,
            resid_g: ng,
            term: rg as i64 * nf - rf as i64 * ng,
        });
    }
    let ring = SeriesRing::new(f.clone(), prec);
    let pieces = coprime_base(f, &[fp.clone(), gp.clone()]);
    for (j, pj) in pieces.iter().enumerate() {
        let (a, b) = (pj.mult[0] as i64, pj.mult[1] as i64);
        let branches = factor_integral(&ring, &pj.p, prec)?;
        let whole = integral_part(&ring, &pj.p, prec)?;
        let pj_s = bi_to_spoly(&ring, &pj.p);
        if branches.iter().map(Branch::deg).sum::<i64>() != whole.len() as i64 - 1 {
            return Err(Error::Invalid("branch degrees do not add up".into()));
        }
        for (i, pi) in pieces.iter().enumerate() {
            if i != j {
                let mut sum = 0;
                for br in &branches {
                    sum += norm_val(&ring, &br.w, &pi.p)?;
                }
                if sum != norm_val(&ring, &whole, &pi.p)? {
                    return Err(Error::Invalid("branch resultants do not add up".into()));
                }
            }
        }
        for br in branches.iter().filter(|b| b.through_origin) {
            let deg = br.deg();
            let q = spoly_quo(&ring, &pj_s, &br.w);
            if spoly_rem(&ring, &pj_s, &br.w)
                .iter()
                .any(|c| c.val().is_some())
            {
                return Err(Error::InsufficientPrecision);
            }
            let own = res_val(&ring, &br.w, &q)?;
            let mut others_f = 0;
            let mut others_g = 0;
            for (i, pi) in pieces.iter().enumerate() {
                if i != j {
                    let r = norm_val(&ring, &br.w, &pi.p)?;
                    others_f += pi.mult[0] as i64 * r;
                    others_g += pi.mult[1] as i64 * r;
                }
            }
            let resid_f = rf as i64 * deg + others_f + a * own;
            let resid_g = rg as i64 * deg + others_g + b * own;
            if resid_f % br.f != 0 || resid_g % br.f != 0 {
                return Err(Error::NotCoprimeAfterExtraction);
            }
            rows.push(PointRow {
                branch: format_spoly(&ring, &br.w, 4),
                e: br.e,
                f_deg: br.f,
                nu_f: a,
                nu_g: b,
                resid_f,
                resid_g,
                term: b * resid_f - a * resid_g,
            });
        }
    }
    Ok(rows)
}

fn row_key(r: &PointRow) -> (i64, i64, i64, i64, i64, i64, i64) {
    (r.e, r.f_deg, r.nu_f, r.nu_g, r.resid_f, r.resid_g, r.term)
}

/// Weighted branch sum of the symbols of f and g at the origin. Precision
/// doubles from `prec` until the rows agree at two successive levels.
pub fn point_reciprocity<F: FiniteField>(
    k: &KField<F>,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<PointReciprocityReport> {
    let field = &k.base.base;
    let (f, g) = (bi_trim(field, f.clone()), bi_trim(field, g.clone()));
    if f.is_empty() || g.is_empty() {
        return Err(Error::ZeroElement);
    }
    let rf = bi_u_order(field, &f);
    let rg = bi_u_order(field, &g);
    let fp = bi_div_u_pow(field, &f, rf);
    let gp = bi_div_u_pow(field, &g, rg);
    let cap = 16 * prec.max(1);
    let mut kp = prec.max(1);
    let mut prev: Option<Vec<PointRow>> = None;
    loop {
        match rows_at(field, rf, rg, &fp, &gp, kp) {
            Ok(rows) => {
                if let Some(p) = &prev {
                    let mut a: Vec<_> = p.iter().map(row_key).collect();
                    let mut b: Vec<_> = rows.iter().map(row_key).collect();
                    a.sort();
                    b.sort();
                    if a == b {
                        let total = rows.iter().map(|r| r.term).sum();
                        return Ok(PointReciprocityReport {
                            point: "origin".into(),
                            f: format_bipoly(k, &f),
                            g: format_bipoly(k, &g),
                            rows,
                            total,
                            prec: kp,
                            pass: total == 0,
                        });
                    }
                }
                prev = Some(rows);
            }
            Err(Error::InsufficientPrecision) => prev = None,
            Err(e) => return Err(e),
        }
        if kp >= cap {
            return Err(Error::PrecisionCap(cap));
        }
        kp = (2 * kp).min(cap);
    }
}

/// Symbol of f and g at the prime of F_q[[u, t]] cut out by the polynomial
/// `branch`, which must be u or have exactly one branch through the origin.
pub fn branch_nu_symbol<F: FiniteField>(
    k: &KField<F>,
    branch: &BiPoly<F::Elem>,
    f: &BiPoly<F::Elem>,
    g: &BiPoly<F::Elem>,
    prec: i64,
) -> Result<i64> {
    let field = &k.base.base;
    let fu = &k.base;
    let (w, f, g) = (
        bi_trim(field, branch.clone()),
        bi_trim(field, f.clone()),
        bi_trim(field, g.clone()),
    );
    if f.is_empty() || g.is_empty() {
        return Err(Error::ZeroElement);
    }
    // exact multiplicity of w in h, and the cofactor
    let split = |h: &BiPoly<F::Elem>| -> (i64, BiPoly<F::Elem>) {
        let wf: Vec<_> = w.iter().map(|c| fu.from_poly(c.clone())).collect();
        let mut h: Vec<_> = h.iter().map(|c| fu.from_poly(c.clone())).collect();
        let mut n = 0;
        loop {
            let (q, r) = poly::divrem(fu, &h, &wf);
            if !r.is_empty() || bi_deg_t(&w) < 0 {
                break;
            }
            // stay inside F_q[u][t]
            match q.iter().map(|c| fu.as_poly(c)).collect::<Option<Vec<_>>>() {
                Some(_) => {
                    h = q;
                    n += 1;
                }
                None => break,
            }
        }
        (n, h.iter().map(|c| fu.as_poly(c).unwrap()).collect())
    };
    if bi_deg_t(&w) == 0 {
        if w[0].len() != 2 || !field.is_zero(&w[0][0]) {
            return Err(Error::Invalid("branch must be u or monic in t".into()));
        }
        let (rf, rg) = (bi_u_order(field, &f) as i64, bi_u_order(field, &g) as i64);
        let ord = |h: &BiPoly<F::Elem>, r: i64| {
            let h = bi_div_u_pow(field, h, r as usize);
            let h0: Vec<F::Elem> = h
                .iter()
                .map(|c| c.first().cloned().unwrap_or_else(|| field.zero()))
                .collect();
            poly::ord0(field, &h0).unwrap() as i64
        };
        return Ok(rg * ord(&f, rf) - rf * ord(&g, rg));
    }
    let lc = w.last().unwrap();
    if lc.len() != 1 {
        return Err(Error::Invalid("branch must be u or monic in t".into()));
    }
    let (nf, f0) = split(&f);
    let (ng, g0) = split(&g);
    let cap = 16 * prec.max(1);
    let mut kp = prec.max(1);
    loop {
        let ring = SeriesRing::new(field.clone(), kp);
        let attempt = (|| -> Result<i64> {
            let mut origin = factor_integral(&ring, &w, kp)?
                .into_iter()
                .filter(|b| b.through_origin);
            let br = origin
                .next()
                .ok_or_else(|| Error::Invalid("branch misses the origin".into()))?;
            if origin.next().is_some() {
                return Err(Error::Invalid(
                    "branch polynomial is reducible at the origin".into(),
                ));
            }
            let rf = norm_val(&ring, &br.w, &f0)?;
            let rg = norm_val(&ring, &br.w, &g0)?;
            if rf % br.f != 0 || rg % br.f != 0 {
                return Err(Error::NotCoprimeAfterExtraction);
            }
            Ok(ng * (rf / br.f) - nf * (rg / br.f))
        })();
        match attempt {
            Err(Error::InsufficientPrecision) if kp < cap => kp = (2 * kp).min(cap),
            Err(Error::InsufficientPrecision) => return Err(Error::PrecisionCap(cap)),
            other => return other,
        }
    }
}

/// Random polynomial of t-degree and u-degree at most 3.
pub fn random_bipoly<F: FiniteField, R: Rng>(f: &F, rng: &mut R) -> BiPoly<F::Elem> {
    loop {
        let dt = rng.random_range(0..=3);
        let p: BiPoly<F::Elem> = (0..=dt)
            .map(|_| {
                let du = rng.random_range(0..=3);
                poly::trim(f, (0..=du).map(|_| f.random(rng)).collect())
            })
            .collect();
        let p = bi_trim(f, p);
        if !p.is_empty() {
            return p;
        }
    }
}

/// u^a t^b times one or two random polynomials.
pub fn random_point_input<F: FiniteField, R: Rng>(f: &F, rng: &mut R) -> BiPoly<F::Elem> {
    let a = rng.random_range(0..=2);
    let b = rng.random_range(0..=2);
    let mut acc: BiPoly<F::Elem> = vec![vec![]; b];
    acc.push(poly::monomial(f, f.one(), a));
    for _ in 0..rng.random_range(1..=2) {
        acc = bi_mul(f, &acc, &random_bipoly(f, rng));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Place {
    pub place: String,
    pub deg: i64,
    pub term: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReciprocityReport {
    pub curve: String,
    pub places: Vec<Place>,
    pub total: i64,
    pub pass: bool,
}

/// Places of the projective u-line along t = 0 for the leading coefficients of f and g.
pub fn curve_reciprocity_p1<F: FiniteField>(
    k: &KField<F>,
    f: &KElem<F>,
    g: &KElem<F>,
) -> Result<CurveReciprocityReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroElement);
    }
    let fu = &k.base;
    let field = &fu.base;
    let (f0, g0) = (k.residue(f), k.residue(g));
    let (vf, vg) = (f.val, g.val);
    // divisor of r: irreducible -> multiplicity, plus infinity
    let divisor = |r: &crate::algebra::valued::VElem<F::Elem>| {
        let (n, d) = fu.to_frac(r);
        let mut out: Vec<(Vec<F::Elem>, i64)> = Vec::new();
        for (p, sign) in [(&n, 1i64), (&d, -1i64)] {
            for (phi, m) in ffactor::factor(field, p).1 {
                match out.iter_mut().find(|(q, _)| *q == phi) {
                    Some(e) => e.1 += sign * m as i64,
                    None => out.push((phi, sign * m as i64)),
                }
            }
        }
        (out, poly::deg(&d) as i64 - poly::deg(&n) as i64)
    };
    let (df, inf_f) = divisor(&f0);
    let (dg, inf_g) = divisor(&g0);
    let mut primes: Vec<Vec<F::Elem>> =
        df.iter().chain(dg.iter()).map(|(p, _)| p.clone()).collect();
    primes.sort_by_key(|p| (p.len(), poly::format(field, p, 'u')));
    primes.dedup();
    let mult = |d: &[(Vec<F::Elem>, i64)], p: &Vec<F::Elem>| {
        d.iter().find(|(q, _)| q == p).map_or(0, |x| x.1)
    };
    let mut places: Vec<Place> = primes
        .iter()
        .map(|p| Place {
            place: poly::format(field, p, 'u'),
            deg: poly::deg(p) as i64,
            term: vg * mult(&df, p) - vf * mult(&dg, p),
        })
        .collect();
    places.push(Place {
        place: "inf".into(),
        deg: 1,
        term: vg * inf_f - vf * inf_g,
    });
    let total = places.iter().map(|p| p.deg * p.term).sum();
    Ok(CurveReciprocityReport {
        curve: "t=0".into(),
        places,
        total,
        pass: total == 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizontalReport {
    pub a: String,
    pub padic_factors: Vec<(u64, i64)>,
    pub arch_factor: String,
    pub product: String,
    pub pass: bool,
}

fn factor_int(n: &BigInt) -> Vec<(u64, i64)> {
    let mut n = n.abs().to_u64().expect("integer part fits in 64 bits");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes dividing the numerator or denominator of a.
pub fn support(a: &BigRational) -> Vec<u64> {
    let mut ps: Vec<u64> = factor_int(a.numer())
        .into_iter()
        .chain(factor_int(a.denom()))
        .map(|x| x.0)
        .collect();
    ps.sort();
    ps
}

fn pow_p(p: u64, e: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(p)).pow(e.abs() as i32);
    if e >= 0 {
        x
    } else {
        x.recip()
    }
}

/// |a| times p^{-v_p(a)} over all p.
pub fn product_formula_q(a: &BigRational) -> Result<HorizontalReport> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let padic: Vec<(u64, i64)> = support(a)
        .into_iter()
        .map(|p| (p, rational_padic_val(a, p)))
        .collect();
    let arch = a.abs();
    let product = padic
        .iter()
        .fold(arch.clone(), |acc, &(p, v)| acc * pow_p(p, -v));
    Ok(HorizontalReport {
        a: a.to_string(),
        padic_factors: padic,
        arch_factor: arch.to_string(),
        pass: product.is_one(),
        product: product.to_string(),
    })
}

/// Local symbols of a and t over Q_p((t)) for every p, and the archimedean symbol.
pub fn horizontal_symbol_check(a: &BigRational) -> Result<HorizontalReport> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let kq = ValuedFrac::new(Rationals, 't');
    let ae = kq.from_base(a.clone());
    let t = kq.x_pow(1);
    let padic = support(a)
        .into_iter()
        .map(|p| Ok((p, padic_nu_symbol(&kq, &ae, &t, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let arch = arch_symbol_r(&kq, &t, &ae)?;
    let product = padic
        .iter()
        .fold(arch.clone(), |acc, &(p, v)| acc * pow_p(p, v));
    Ok(HorizontalReport {
        a: a.to_string(),
        padic_factors: padic,
        arch_factor: arch.to_string(),
        pass: product.is_one(),
        product: product.to_string(),
    })
}

/// Nonzero rational with numerator and denominator bounded by `bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: u64) -> BigRational {
    let n = rng.random_range(1..=bound) as i64 * if rng.random_bool(0.5) { -1 } else { 1 };
    let d = rng.random_range(1..=bound);
    let g = (n.unsigned_abs()).gcd(&d);
    BigRational::new(BigInt::from(n / g as i64), BigInt::from(d / g))
}
