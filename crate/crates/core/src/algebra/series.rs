//! Truncated Laurent series with absolute precision tracking.

use super::field::Field;
use super::valued::{VElem, ValuedFrac};
use crate::error::{Error, Result};

/// Precision marker for exactly known values.
pub const EXACT: i64 = i64::MAX / 4;

fn padd(p: i64, v: i64) -> i64 {
    if p >= EXACT || v >= EXACT {
        EXACT
    } else {
        p + v
    }
}

/// Sum of `coeffs[i] x^(start + i)` plus O(x^prec). `coeffs` is either empty
/// (value zero to precision `prec`) or has a nonzero first entry, so `start` is
/// then the exact valuation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries<E> {
    pub start: i64,
    pub coeffs: Vec<E>,
    pub prec: i64,
}

impl<E> TruncSeries<E> {
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    /// Known valuation; None when the value vanishes to the available precision.
    pub fn val(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }
    /// Lower bound for the valuation.
    pub fn val_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.start
        }
    }
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }
}

#[derive(Clone, Debug)]
pub struct SeriesRing<F: Field> {
    pub base: F,
    /// Relative precision used when inverting an exact non-monomial.
    pub default_rel: i64,
}

impl<F: Field> SeriesRing<F> {
    pub fn new(base: F, default_rel: i64) -> Self {
        SeriesRing { base, default_rel }
    }

    pub fn make(&self, start: i64, mut coeffs: Vec<F::Elem>, prec: i64) -> TruncSeries<F::Elem> {
        let f = &self.base;
        if prec < EXACT {
            let keep = (prec - start).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !f.is_zero(c));
        match lead {
            None => TruncSeries {
                start: prec,
                coeffs: vec![],
                prec,
            },
            Some(k) => {
                coeffs.drain(..k);
                while coeffs.last().is_some_and(|c| f.is_zero(c)) {
                    coeffs.pop();
                }
                TruncSeries {
                    start: start + k as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    pub fn zero_exact(&self) -> TruncSeries<F::Elem> {
        TruncSeries {
            start: EXACT,
            coeffs: vec![],
            prec: EXACT,
        }
    }

    pub fn zero_to(&self, prec: i64) -> TruncSeries<F::Elem> {
        TruncSeries {
            start: prec,
            coeffs: vec![],
            prec,
        }
    }

    pub fn constant(&self, c: F::Elem) -> TruncSeries<F::Elem> {
        self.make(0, vec![c], EXACT)
    }

    pub fn one(&self) -> TruncSeries<F::Elem> {
        self.constant(self.base.one())
    }

    pub fn monomial(&self, c: F::Elem, k: i64) -> TruncSeries<F::Elem> {
        self.make(k, vec![c], EXACT)
    }

    /// Exact polynomial in x.
    pub fn from_poly(&self, p: &[F::Elem]) -> TruncSeries<F::Elem> {
        self.make(0, p.to_vec(), EXACT)
    }

    /// Coefficient of x^e (zero outside the stored range); None past the precision.
    pub fn coeff(&self, a: &TruncSeries<F::Elem>, e: i64) -> Option<F::Elem> {
        if e >= a.prec {
            return None;
        }
        if e < a.start || e >= a.start + a.coeffs.len() as i64 {
            return Some(self.base.zero());
        }
        Some(a.coeffs[(e - a.start) as usize].clone())
    }

    pub fn truncate(&self, a: &TruncSeries<F::Elem>, prec: i64) -> TruncSeries<F::Elem> {
        if prec >= a.prec {
            return a.clone();
        }
        self.make(a.start, a.coeffs.clone(), prec)
    }

    /// Expansion of an exact rational function to absolute precision `prec`.
    pub fn from_velem(
        &self,
        vf: &ValuedFrac<F>,
        a: &VElem<F::Elem>,
        prec: i64,
    ) -> TruncSeries<F::Elem> {
        if a.is_zero() {
            return self.zero_exact();
        }
        if a.den.len() == 1 {
            // a polynomial times x^val: exact
            return self.make(
                a.val,
                crate::algebra::poly::scale(&self.base, &a.num, &self.base.inv(&a.den[0])),
                EXACT,
            );
        }
        if prec <= a.val {
            return self.zero_to(prec);
        }
        let n = (prec - a.val) as usize;
        self.make(a.val, vf.series(&a.num, &a.den, n), prec)
    }

    pub fn add(&self, a: &TruncSeries<F::Elem>, b: &TruncSeries<F::Elem>) -> TruncSeries<F::Elem> {
        self.lin(a, b, false)
    }

    pub fn sub(&self, a: &TruncSeries<F::Elem>, b: &TruncSeries<F::Elem>) -> TruncSeries<F::Elem> {
        self.lin(a, b, true)
    }

    fn lin(
        &self,
        a: &TruncSeries<F::Elem>,
        b: &TruncSeries<F::Elem>,
        minus: bool,
    ) -> TruncSeries<F::Elem> {
        let f = &self.base;
        let prec = a.prec.min(b.prec);
        if b.coeffs.is_empty() {
            return self.truncate(a, prec);
        }
        if a.coeffs.is_empty() {
            let nb = if minus { self.neg(b) } else { b.clone() };
            return self.truncate(&nb, prec);
        }
        let start = a.start.min(b.start);
        let end = (a.start + a.coeffs.len() as i64)
            .max(b.start + b.coeffs.len() as i64)
            .min(prec);
        if end <= start {
            return self.zero_to(prec);
        }
        let mut c = vec![f.zero(); (end - start) as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            let e = a.start + i as i64;
            if e >= end {
                break;
            }
            c[(e - start) as usize] = x.clone();
        }
        for (i, y) in b.coeffs.iter().enumerate() {
            let e = b.start + i as i64;
            if e >= end {
                break;
            }
            let slot = &mut c[(e - start) as usize];
            *slot = if minus {
                f.sub(slot, y)
            } else {
                f.add(slot, y)
            };
        }
        self.make(start, c, prec)
    }

    pub fn neg(&self, a: &TruncSeries<F::Elem>) -> TruncSeries<F::Elem> {
        TruncSeries {
            start: a.start,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
            prec: a.prec,
        }
    }

    pub fn mul(&self, a: &TruncSeries<F::Elem>, b: &TruncSeries<F::Elem>) -> TruncSeries<F::Elem> {
        if a.is_exact_zero() || b.is_exact_zero() {
            return self.zero_exact();
        }
        let f = &self.base;
        let va = a.val_bound();
        let vb = b.val_bound();
        let prec = padd(a.prec, vb).min(padd(b.prec, va));
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero_to(prec);
        }
        let start = a.start + b.start;
        let full = a.coeffs.len() + b.coeffs.len() - 1;
        let len = if prec >= EXACT {
            full
        } else {
            ((prec - start).max(0) as usize).min(full)
        };
        let mut c = vec![f.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let t = f.mul(x, y);
                c[i + j] = f.add(&c[i + j], &t);
            }
        }
        self.make(start, c, prec)
    }

    pub fn scale(&self, a: &TruncSeries<F::Elem>, c: &F::Elem) -> TruncSeries<F::Elem> {
        if self.base.is_zero(c) {
            return self.zero_exact();
        }
        TruncSeries {
            start: a.start,
            coeffs: a.coeffs.iter().map(|x| self.base.mul(x, c)).collect(),
            prec: a.prec,
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, a: &TruncSeries<F::Elem>, k: i64) -> TruncSeries<F::Elem> {
        TruncSeries {
            start: if a.coeffs.is_empty() {
                padd(a.start, k)
            } else {
                a.start + k
            },
            coeffs: a.coeffs.clone(),
            prec: padd(a.prec, k),
        }
    }

    pub fn inv(&self, a: &TruncSeries<F::Elem>) -> Result<TruncSeries<F::Elem>> {
        let f = &self.base;
        let Some(v) = a.val() else {
            return Err(Error::InsufficientPrecision);
        };
        let rel = if a.is_exact() {
            if a.coeffs.len() == 1 {
                return Ok(self.monomial(f.inv(&a.coeffs[0]), -v));
            }
            self.default_rel
        } else {
            a.prec - v
        };
        let n = rel as usize;
        let c0inv = f.inv(&a.coeffs[0]);
        let mut r: Vec<F::Elem> = Vec::with_capacity(n);
        for j in 0..n {
            let mut s = if j == 0 { f.one() } else { f.zero() };
            for k in 1..=j.min(a.coeffs.len() - 1) {
                if f.is_zero(&a.coeffs[k]) {
                    continue;
                }
                s = f.sub(&s, &f.mul(&a.coeffs[k], &r[j - k]));
            }
            r.push(f.mul(&s, &c0inv));
        }
        Ok(self.make(-v, r, -v + rel))
    }

    pub fn div(
        &self,
        a: &TruncSeries<F::Elem>,
        b: &TruncSeries<F::Elem>,
    ) -> Result<TruncSeries<F::Elem>> {
        if b.is_exact() && b.coeffs.len() == 1 {
            let v = b.start;
            let s = self.shift(a, -v);
            return Ok(self.scale(&s, &self.base.inv(&b.coeffs[0])));
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Replace x by x^e.
    pub fn inflate(&self, a: &TruncSeries<F::Elem>, e: i64) -> TruncSeries<F::Elem> {
        let f = &self.base;
        if a.coeffs.is_empty() {
            return self.zero_to(if a.is_exact() { EXACT } else { a.prec * e });
        }
        let mut c = vec![f.zero(); (a.coeffs.len() - 1) * e as usize + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            c[i * e as usize] = x.clone();
        }
        let prec = if a.is_exact() { EXACT } else { a.prec * e };
        self.make(a.start * e, c, prec)
    }

    /// Inverse of `inflate`: keep exponents divisible by e. Fails if another exponent
    /// carries a nonzero coefficient.
    pub fn deflate(&self, a: &TruncSeries<F::Elem>, e: i64) -> Option<TruncSeries<F::Elem>> {
        let f = &self.base;
        let prec = if a.is_exact() {
            EXACT
        } else {
            a.prec.div_euclid(e) + i64::from(a.prec.rem_euclid(e) != 0)
        };
        if a.coeffs.is_empty() {
            return Some(self.zero_to(prec));
        }
        let mut out = Vec::new();
        let lo = a.start.div_euclid(e) + i64::from(a.start.rem_euclid(e) != 0);
        for (i, x) in a.coeffs.iter().enumerate() {
            let ex = a.start + i as i64;
            if ex.rem_euclid(e) != 0 {
                if !f.is_zero(x) {
                    return None;
                }
                continue;
            }
            let k = ex.div_euclid(e);
            while out.len() < (k - lo) as usize {
                out.push(f.zero());
            }
            out.push(x.clone());
        }
        Some(self.make(lo, out, prec))
    }
}

/// Sum of the valuations of `rank` pivots chosen by minimal valuation: the
/// index of the F[[u]]-span of the columns inside its saturation.
pub fn pivot_valuation_sum<F: Field>(
    ring: &SeriesRing<F>,
    mut m: Vec<Vec<TruncSeries<F::Elem>>>,
    rank: usize,
) -> Result<i64> {
    if rank == 0 {
        return Ok(0);
    }
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut row_alive = vec![true; rows];
    let mut col_alive = vec![true; cols];
    let mut total = 0;
    for _ in 0..rank {
        let mut best: Option<(i64, i64, usize, usize)> = None;
        let mut unknown = EXACT;
        for i in (0..rows).filter(|&i| row_alive[i]) {
            for j in (0..cols).filter(|&j| col_alive[j]) {
                let x = &m[i][j];
                match x.val() {
                    Some(v) => {
                        let relp = if x.is_exact() { EXACT } else { x.prec - v };
                        if best.is_none_or(|(bv, br, _, _)| v < bv || (v == bv && relp > br)) {
                            best = Some((v, relp, i, j));
                        }
                    }
                    None if !x.is_exact() => unknown = unknown.min(x.prec),
                    None => {}
                }
            }
        }
        let Some((v, _, pi, pj)) = best else {
            return Err(Error::InsufficientPrecision);
        };
        if v > unknown {
            return Err(Error::InsufficientPrecision);
        }
        total += v;
        row_alive[pi] = false;
        col_alive[pj] = false;
        let pinv = ring.inv(&m[pi][pj])?;
        let prow = std::mem::take(&mut m[pi]);
        for i in (0..rows).filter(|&i| row_alive[i]) {
            if m[i][pj].is_exact_zero() {
                continue;
            }
            let fct = ring.mul(&m[i][pj], &pinv);
            for j in (0..cols).filter(|&j| col_alive[j]) {
                if prow[j].is_exact_zero() {
                    continue;
                }
                let t = ring.mul(&fct, &prow[j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    #[test]
    fn inverse_precision() {
        let f = PrimeField::with_p(5);
        let r = SeriesRing::new(f.clone(), 8);
        let a = r.make(1, vec![1, 1, 0, 0, 0], 6);
        let ai = r.inv(&a).unwrap();
        assert_eq!(ai.start, -1);
        assert_eq!(ai.prec, 4);
        let p = r.mul(&a, &ai);
        assert_eq!(p.val(), Some(0));
        assert_eq!(p.coeffs, vec![1]);
        assert_eq!(p.prec, 5);
    }

    #[test]
    fn exact_zero_absorbs() {
        let f = PrimeField::with_p(3);
        let r = SeriesRing::new(f, 8);
        let a = r.make(0, vec![1, 2], 4);
        assert!(r.mul(&a, &r.zero_exact()).is_exact_zero());
        assert_eq!(r.add(&a, &r.zero_exact()), a);
    }

    #[test]
    fn inflate_deflate() {
        let f = PrimeField::with_p(3);
        let r = SeriesRing::new(f, 8);
        let a = r.make(1, vec![1, 2, 0, 1], 5);
        let b = r.inflate(&a, 2);
        assert_eq!(b.prec, 10);
        assert_eq!(r.deflate(&b, 2).unwrap(), a);
    }
}
