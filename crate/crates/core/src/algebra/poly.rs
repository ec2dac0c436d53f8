//! Dense univariate polynomials over a [`Field`], lowest degree first, trimmed.

use super::field::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with -1 for the zero polynomial.
pub fn deg<E>(a: &[E]) -> isize {
    a.len() as isize - 1
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

pub fn monomial<F: Field>(f: &F, c: F::Elem, k: usize) -> Poly<F::Elem> {
    if f.is_zero(&c) {
        return vec![];
    }
    let mut v = vec![f.zero(); k];
    v.push(c);
    v
}

pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, r)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trim(f, r)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    if f.is_zero(c) {
        return vec![];
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn shift<F: Field>(f: &F, a: &[F::Elem], k: usize) -> Poly<F::Elem> {
    if a.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); k];
    r.extend_from_slice(a);
    r
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            r[i + j] = f.add(&r[i + j], &t);
        }
    }
    trim(f, r)
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], mut e: u64) -> Poly<F::Elem> {
    let mut acc = vec![f.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lead_inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    for d in (db..r.len()).rev() {
        if f.is_zero(&r[d]) {
            continue;
        }
        let c = f.mul(&r[d], &lead_inv);
        for i in 0..db {
            let t = f.mul(&c, &b[i]);
            r[d - db + i] = f.sub(&r[d - db + i], &t);
        }
        r[d] = f.zero();
        q[d - db] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

/// Exact quotient; returns None when the division leaves a remainder.
pub fn div_exact<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<Poly<F::Elem>> {
    let (q, r) = divrem(f, a, b);
    r.is_empty().then_some(q)
}

pub fn lc<F: Field>(f: &F, a: &[F::Elem]) -> F::Elem {
    a.last().cloned().unwrap_or_else(|| f.zero())
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() {
        return vec![];
    }
    let l = a.last().unwrap();
    if f.is_one(l) {
        return a.to_vec();
    }
    let inv = f.inv(l);
    a.iter().map(|c| f.mul(c, &inv)).collect()
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended gcd: (g, s, t) with s*a + t*b = g monic.
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = f.inv(r0.last().unwrap());
    (
        scale(f, &r0, &inv),
        scale(f, &s0, &inv),
        scale(f, &t0, &inv),
    )
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let r = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, r)
}

/// a(b(x)).
pub fn compose<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut acc: Poly<F::Elem> = vec![];
    for c in a.iter().rev() {
        acc = add(f, &mul(f, &acc, b), &constant(f, c.clone()));
    }
    acc
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

/// Number of trailing zero coefficients (order at x = 0); None for zero.
pub fn ord0<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

/// Polynomial text in `var`, with parenthesized compound coefficients.
pub fn format<F: Field>(f: &F, a: &[F::Elem], var: char) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in a.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let cs = f.format(c);
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let atomic = is_atomic(&cs);
        let term = if i == 0 {
            if atomic || out.is_empty() {
                cs
            } else {
                format!("({cs})")
            }
        } else if cs == "1" {
            mono
        } else if atomic {
            format!("{cs}*{mono}")
        } else {
            format!("({cs})*{mono}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(&term);
        }
    }
    out
}

/// True when the text can be juxtaposed under `*` without parentheses.
pub fn is_atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains(['+', '-', '/'])
}
