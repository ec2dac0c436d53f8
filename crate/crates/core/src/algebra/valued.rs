//! Rational functions in one variable with their order at zero factored out:
//! an element is x^val * num / den with num(0), den(0) nonzero, den monic and
//! gcd(num, den) = 1. Nesting gives F_q(u), F_q(u)(t), Q(t), Q(i)(t).

use super::field::Field;
use super::poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VElem<E> {
    pub val: i64,
    pub num: Vec<E>,
    pub den: Vec<E>,
}

impl<E> VElem<E> {
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ValuedFrac<F: Field> {
    pub base: F,
    pub var: char,
}

impl<F: Field> ValuedFrac<F> {
    pub fn new(base: F, var: char) -> Self {
        ValuedFrac { base, var }
    }

    /// Canonicalize x^val * num / den. Panics on a zero denominator.
    pub fn make(&self, val: i64, num: Vec<F::Elem>, den: Vec<F::Elem>) -> VElem<F::Elem> {
        let f = &self.base;
        let mut num = poly::trim(f, num);
        let mut den = poly::trim(f, den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let mut val = val;
        let kn = poly::ord0(f, &num).unwrap();
        if kn > 0 {
            num.drain(..kn);
            val += kn as i64;
        }
        let kd = poly::ord0(f, &den).unwrap();
        if kd > 0 {
            den.drain(..kd);
            val -= kd as i64;
        }
        if den.len() > 1 && num.len() > 1 {
            let g = poly::gcd(f, &num, &den);
            if g.len() > 1 {
                num = poly::div_exact(f, &num, &g).unwrap();
                den = poly::div_exact(f, &den, &g).unwrap();
            }
        }
        self.normalize_den(val, num, den)
    }

    fn normalize_den(&self, val: i64, num: Vec<F::Elem>, den: Vec<F::Elem>) -> VElem<F::Elem> {
        let f = &self.base;
        let l = den.last().unwrap();
        if f.is_one(l) {
            return VElem { val, num, den };
        }
        let inv = f.inv(l);
        VElem {
            val,
            num: poly::scale(f, &num, &inv),
            den: poly::scale(f, &den, &inv),
        }
    }

    pub fn from_poly(&self, p: Vec<F::Elem>) -> VElem<F::Elem> {
        self.make(0, p, vec![self.base.one()])
    }

    pub fn from_base(&self, c: F::Elem) -> VElem<F::Elem> {
        self.from_poly(vec![c])
    }

    pub fn x_pow(&self, k: i64) -> VElem<F::Elem> {
        VElem {
            val: k,
            num: vec![self.base.one()],
            den: vec![self.base.one()],
        }
    }

    /// Monomial c * x^k.
    pub fn monomial(&self, c: F::Elem, k: i64) -> VElem<F::Elem> {
        if self.base.is_zero(&c) {
            return self.zero();
        }
        VElem {
            val: k,
            num: vec![c],
            den: vec![self.base.one()],
        }
    }

    /// Order at x = 0, None for zero.
    pub fn valuation(&self, a: &VElem<F::Elem>) -> Option<i64> {
        (!a.is_zero()).then_some(a.val)
    }

    /// Leading coefficient num(0)/den(0): the residue of x^{-val} a.
    pub fn residue(&self, a: &VElem<F::Elem>) -> F::Elem {
        assert!(!a.is_zero());
        self.base.div(&a.num[0], &a.den[0])
    }

    /// The element with valuation removed.
    pub fn unit_part(&self, a: &VElem<F::Elem>) -> VElem<F::Elem> {
        VElem {
            val: 0,
            ..a.clone()
        }
    }

    pub fn is_integral(&self, a: &VElem<F::Elem>) -> bool {
        a.is_zero() || a.val >= 0
    }

    /// Multiply by x^k.
    pub fn shift(&self, a: &VElem<F::Elem>, k: i64) -> VElem<F::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        VElem {
            val: a.val + k,
            ..a.clone()
        }
    }

    /// Power-series coefficients of num/den, `n` terms.
    pub fn series(&self, num: &[F::Elem], den: &[F::Elem], n: usize) -> Vec<F::Elem> {
        let f = &self.base;
        let d0inv = f.inv(&den[0]);
        let mut c: Vec<F::Elem> = Vec::with_capacity(n);
        for j in 0..n {
            let mut s = num.get(j).cloned().unwrap_or_else(|| f.zero());
            for k in 1..=j.min(den.len() - 1) {
                if f.is_zero(&den[k]) {
                    continue;
                }
                s = f.sub(&s, &f.mul(&den[k], &c[j - k]));
            }
            c.push(if f.is_one(&d0inv) {
                s
            } else {
                f.mul(&s, &d0inv)
            });
        }
        c
    }

    /// Laurent coefficients of `a` for exponents `lo..hi` (zeros below the valuation).
    pub fn laurent(&self, a: &VElem<F::Elem>, lo: i64, hi: i64) -> Vec<F::Elem> {
        let f = &self.base;
        if hi <= lo {
            return vec![];
        }
        let mut out = vec![f.zero(); (hi - lo) as usize];
        if a.is_zero() || a.val >= hi {
            return out;
        }
        let start = a.val.max(lo);
        let n = (hi - a.val) as usize;
        let s = self.series(&a.num, &a.den, n);
        for e in start..hi {
            out[(e - lo) as usize] = s[(e - a.val) as usize].clone();
        }
        out
    }

    /// The Laurent polynomial formed by the terms of `a` with exponent below `k`.
    pub fn trunc_below(&self, a: &VElem<F::Elem>, k: i64) -> VElem<F::Elem> {
        if a.is_zero() || a.val >= k {
            return self.zero();
        }
        let s = self.series(&a.num, &a.den, (k - a.val) as usize);
        self.make(a.val, s, vec![self.base.one()])
    }

    /// Substitute x = c (c a base element) into an integral element; None at a pole.
    pub fn eval_at(&self, a: &VElem<F::Elem>, c: &F::Elem) -> Option<F::Elem> {
        let f = &self.base;
        if a.is_zero() {
            return Some(f.zero());
        }
        let d = poly::eval(f, &a.den, c);
        let n = poly::eval(f, &a.num, c);
        let xv = if a.val >= 0 {
            f.pow(c, a.val as u64)
        } else {
            if f.is_zero(c) {
                return None;
            }
            f.powi(c, a.val)
        };
        if f.is_zero(&d) {
            return None;
        }
        Some(f.mul(&xv, &f.div(&n, &d)))
    }

    /// Numerator and denominator as plain polynomials (valuation folded in).
    pub fn to_frac(&self, a: &VElem<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.base;
        if a.val >= 0 {
            (poly::shift(f, &a.num, a.val as usize), a.den.clone())
        } else {
            (a.num.clone(), poly::shift(f, &a.den, (-a.val) as usize))
        }
    }

    pub fn from_frac(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> VElem<F::Elem> {
        self.make(0, num, den)
    }

    /// Polynomial if the element is one (valuation folded in).
    pub fn as_poly(&self, a: &VElem<F::Elem>) -> Option<Vec<F::Elem>> {
        if a.is_zero() {
            return Some(vec![]);
        }
        (a.den.len() == 1 && a.val >= 0).then(|| poly::shift(&self.base, &a.num, a.val as usize))
    }
}

impl<F: Field> Field for ValuedFrac<F> {
    type Elem = VElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        VElem {
            val: 0,
            num: vec![],
            den: vec![self.base.one()],
        }
    }
    fn one(&self) -> Self::Elem {
        VElem {
            val: 0,
            num: vec![self.base.one()],
            den: vec![self.base.one()],
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let f = &self.base;
        let v = a.val.min(b.val);
        let an = poly::shift(f, &a.num, (a.val - v) as usize);
        let bn = poly::shift(f, &b.num, (b.val - v) as usize);
        let (num, den, g) = if a.den == b.den {
            (poly::add(f, &an, &bn), a.den.clone(), a.den.clone())
        } else if a.den.len() == 1 {
            (
                poly::add(f, &poly::mul(f, &an, &b.den), &bn),
                b.den.clone(),
                vec![f.one()],
            )
        } else if b.den.len() == 1 {
            (
                poly::add(f, &an, &poly::mul(f, &bn, &a.den)),
                a.den.clone(),
                vec![f.one()],
            )
        } else {
            let g = poly::gcd(f, &a.den, &b.den);
            let ad = poly::div_exact(f, &a.den, &g).unwrap();
            let bd = poly::div_exact(f, &b.den, &g).unwrap();
            let num = poly::add(f, &poly::mul(f, &an, &bd), &poly::mul(f, &bn, &ad));
            (num, poly::mul(f, &a.den, &bd), g)
        };
        if num.is_empty() {
            return self.zero();
        }
        let mut num = num;
        let mut den = den;
        let mut val = v;
        let k = poly::ord0(f, &num).unwrap();
        if k > 0 {
            num.drain(..k);
            val += k as i64;
        }
        if g.len() > 1 && num.len() > 1 {
            let h = poly::gcd(f, &num, &g);
            if h.len() > 1 {
                num = poly::div_exact(f, &num, &h).unwrap();
                den = poly::div_exact(f, &den, &h).unwrap();
            }
        }
        VElem { val, num, den }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        VElem {
            val: a.val,
            num: poly::neg(&self.base, &a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let f = &self.base;
        let cancel = |n: &Vec<F::Elem>, d: &Vec<F::Elem>| {
            if n.len() > 1 && d.len() > 1 {
                let g = poly::gcd(f, n, d);
                if g.len() > 1 {
                    return (
                        poly::div_exact(f, n, &g).unwrap(),
                        poly::div_exact(f, d, &g).unwrap(),
                    );
                }
            }
            (n.clone(), d.clone())
        };
        let (an, bd) = cancel(&a.num, &b.den);
        let (bn, ad) = cancel(&b.num, &a.den);
        VElem {
            val: a.val + b.val,
            num: poly::mul(f, &an, &bn),
            den: poly::mul(f, &ad, &bd),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!a.is_zero(), "inverse of zero");
        self.normalize_den(-a.val, a.den.clone(), a.num.clone())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(self.base.from_i64(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn format(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let f = &self.base;
        let num = poly::format(f, &a.num, self.var);
        let wrap = |s: String| {
            if s.contains(['+', '-', '/']) {
                format!("({s})")
            } else {
                s
            }
        };
        let xv = match a.val {
            0 => None,
            1 => Some(self.var.to_string()),
            v => Some(format!("{}^{}", self.var, v)),
        };
        let has_den = a.den.len() > 1;
        let head = match xv {
            None if has_den => wrap(num),
            None => num,
            Some(x) if num == "1" => x,
            Some(x) => format!("{x}*{}", wrap(num)),
        };
        if has_den {
            format!("{head}/({})", poly::format(f, &a.den, self.var))
        } else {
            head
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn fu() -> ValuedFrac<PrimeField> {
        ValuedFrac::new(PrimeField::with_p(5), 'u')
    }

    #[test]
    fn valuation_examples() {
        let k = fu();
        let u2 = k.x_pow(2);
        let one_plus_u = k.from_poly(vec![1, 1]);
        assert_eq!(k.valuation(&k.div(&u2, &one_plus_u)), Some(2));
        let u = k.x_pow(1);
        assert_eq!(k.valuation(&k.div(&one_plus_u, &u)), Some(-1));
        assert_eq!(k.valuation(&k.zero()), None);
    }

    #[test]
    fn arithmetic_roundtrip() {
        let k = fu();
        let a = k.make(-1, vec![1, 2], vec![3, 0, 1]);
        let b = k.make(2, vec![4], vec![1, 1]);
        let s = k.add(&a, &b);
        assert_eq!(k.sub(&s, &b), a);
        let p = k.mul(&a, &b);
        assert_eq!(k.div(&p, &b), a);
        assert_eq!(k.mul(&a, &k.inv(&a)), k.one());
    }

    #[test]
    fn laurent_expansion() {
        let k = fu();
        // 1/(1-u) = 1 + u + u^2 + ...
        let a = k.from_frac(vec![1], vec![1, 4]);
        assert_eq!(k.laurent(&a, -1, 3), vec![0, 1, 1, 1]);
        let t = k.trunc_below(&a, 2);
        assert_eq!(t, k.from_poly(vec![1, 1]));
    }
}
