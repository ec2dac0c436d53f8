//! Fields: prime fields, small Galois extensions, and the rationals with
//! their Gaussian extension.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field given as a context object; elements are plain values in canonical form,
/// so structural equality is field equality.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Text form accepted by the expression parser.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
    /// Integer power, negative exponents allowed for nonzero `a`.
    fn powi(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.inv(&self.pow(a, e.unsigned_abs()))
        }
    }
}

/// Finite fields: enumerable, with a random element generator.
pub trait FiniteField: Field {
    fn ctx(&self) -> &FieldCtx;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Element with index `i` in `0..q` (base-p digits as coefficients).
    fn from_index(&self, i: u64) -> Self::Elem;
    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
    fn order(&self) -> &BigUint {
        &self.ctx().q
    }
}

/// Parameters of GF(p^k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    pub p: u64,
    pub k: usize,
    /// Monic, low degree first; present iff k > 1.
    pub modulus: Option<Vec<u32>>,
    pub q: BigUint,
}

impl FieldCtx {
    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }

    pub fn describe(&self) -> String {
        match &self.modulus {
            None => format!("GF({})", self.p),
            Some(m) => format!("GF({}^{}) mod {}", self.p, self.k, format_fp_poly(m, 'x')),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

const DEFAULT_MODULI: &[(u64, &[u32])] = &[
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (7, &[3, 6, 1]),
    (7, &[4, 0, 6, 1]),
];

/// Build GF(p^k). Without an explicit modulus, a table entry is used when
/// available, else the lexicographically first monic irreducible.
pub fn field_make(p: u64, k: usize, modulus: Option<Vec<u32>>) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p > (1u64 << 31) {
        return Err(Error::BadField(format!("p = {p} exceeds 2^31")));
    }
    if k == 0 || k > 8 {
        return Err(Error::BadField(format!(
            "extension degree {k} outside 1..=8"
        )));
    }
    let q = BigUint::from(p).pow(k as u32);
    if k == 1 {
        if let Some(m) = &modulus {
            let m = trim_fp(m.iter().map(|&c| c % p as u32).collect());
            if m.len() != 2 {
                return Err(Error::DegreeMismatch {
                    want: 1,
                    got: m.len().saturating_sub(1),
                });
            }
        }
        return Ok(FieldCtx {
            p,
            k,
            modulus: None,
            q,
        });
    }
    let m = match modulus {
        Some(m) => {
            let m = trim_fp(m.iter().map(|&c| c % p as u32).collect());
            if m.len() != k + 1 {
                return Err(Error::DegreeMismatch {
                    want: k,
                    got: m.len().saturating_sub(1),
                });
            }
            let lc = m[k];
            let inv = fp_inv(lc, p as u32);
            let m: Vec<u32> = m.iter().map(|&c| fp_mul(c, inv, p as u32)).collect();
            if !fp_poly_irreducible(&m, p as u32) {
                return Err(Error::ReducibleModulus(p));
            }
            m
        }
        None => default_modulus(p as u32, k),
    };
    Ok(FieldCtx {
        p,
        k,
        modulus: Some(m),
        q,
    })
}

fn default_modulus(p: u32, k: usize) -> Vec<u32> {
    for (pp, m) in DEFAULT_MODULI {
        if *pp == p as u64 && m.len() == k + 1 {
            return m.to_vec();
        }
    }
    // lexicographic search over monic polynomials x^k + ... + c0
    let mut coeffs = vec![0u32; k];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if m[0] != 0 && fp_poly_irreducible(&m, p) {
            return m;
        }
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

#[inline]
fn fp_mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn fp_add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
fn fp_sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

fn fp_pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(acc, a, p);
        }
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn fp_inv(a: u32, p: u32) -> u32 {
    assert!(a != 0, "inverse of zero");
    fp_pow(a, p as u64 - 2, p)
}

fn trim_fp(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim_fp(a.to_vec());
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = fp_mul(r[d], inv, p);
        for i in 0..=dm {
            r[d - dm + i] = fp_sub(r[d - dm + i], fp_mul(c, m[i], p), p);
        }
        r = trim_fp(r);
    }
    r
}

fn fp_poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fp_add(prod[i + j], fp_mul(x, y, p), p);
        }
    }
    fp_poly_rem(&prod, m, p)
}

fn fp_poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim_fp(a.to_vec());
    let mut b = trim_fp(b.to_vec());
    while !b.is_empty() {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility via gcd(m, x^{p^d} - x) = 1 for every proper divisor d of deg m,
/// plus x^{p^k} = x mod m.
pub(crate) fn fp_poly_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let mut xp = vec![0u32, 1u32];
    let mut frob = Vec::with_capacity(k);
    for _ in 0..k {
        // xp <- xp^p mod m
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_poly_mulmod(&acc, &base, m, p);
            }
            base = fp_poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        xp = acc;
        frob.push(xp.clone());
    }
    let x = vec![0u32, 1u32];
    if trim_fp(frob[k - 1].clone()) != x {
        return false;
    }
    for d in 1..k {
        if k % d != 0 {
            continue;
        }
        let mut diff = frob[d - 1].clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = fp_sub(diff[1], 1, p);
        let g = fp_poly_gcd(m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub fn format_fp_poly(c: &[u32], var: char) -> String {
    let mut terms = Vec::new();
    for (i, &x) in c.iter().enumerate().rev() {
        if x == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (x, i) {
            (_, 0) => x.to_string(),
            (1, _) => mono,
            _ => format!("{x}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// GF(p) with elements as residues in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u32,
    ctx: Arc<FieldCtx>,
}

impl PrimeField {
    pub fn new(ctx: &FieldCtx) -> Self {
        assert_eq!(ctx.k, 1);
        PrimeField {
            p: ctx.p as u32,
            ctx: Arc::new(ctx.clone()),
        }
    }
    pub fn with_p(p: u32) -> Self {
        Self::new(&field_make(p as u64, 1, None).expect("prime"))
    }
}

impl Field for PrimeField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        fp_add(*a, *b, self.p)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        fp_sub(*a, *b, self.p)
    }
    fn neg(&self, a: &u32) -> u32 {
        fp_sub(0, *a, self.p)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        fp_mul(*a, *b, self.p)
    }
    fn inv(&self, a: &u32) -> u32 {
        fp_inv(*a, self.p)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
}

impl FiniteField for PrimeField {
    fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.p)
    }
    fn from_index(&self, i: u64) -> u32 {
        (i % self.p as u64) as u32
    }
}

pub const MAX_EXT: usize = 8;
pub type GfElem = [u32; MAX_EXT];

/// GF(p^k) for 1 <= k <= 8, elements as coefficient arrays in the generator `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    pub p: u32,
    pub k: usize,
    modulus: Vec<u32>,
    ctx: Arc<FieldCtx>,
}

impl GaloisField {
    pub fn new(ctx: &FieldCtx) -> Self {
        let modulus = ctx.modulus.clone().unwrap_or_else(|| vec![0, 1]);
        GaloisField {
            p: ctx.p as u32,
            k: ctx.k,
            modulus,
            ctx: Arc::new(ctx.clone()),
        }
    }

    /// The generator `a` (class of x).
    pub fn generator(&self) -> GfElem {
        let mut e = [0u32; MAX_EXT];
        if self.k == 1 {
            // x mod (x - 0)
            e[0] = 0;
        } else {
            e[1] = 1;
        }
        e
    }

    fn from_vec(&self, v: &[u32]) -> GfElem {
        let r = fp_poly_rem(v, &self.modulus, self.p);
        let mut e = [0u32; MAX_EXT];
        e[..r.len()].copy_from_slice(&r);
        e
    }

    fn to_vec(&self, a: &GfElem) -> Vec<u32> {
        trim_fp(a[..self.k].to_vec())
    }
}

impl Field for GaloisField {
    type Elem = GfElem;
    fn zero(&self) -> GfElem {
        [0; MAX_EXT]
    }
    fn one(&self) -> GfElem {
        let mut e = [0; MAX_EXT];
        e[0] = 1;
        e
    }
    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = [0; MAX_EXT];
        for i in 0..self.k {
            r[i] = fp_add(a[i], b[i], self.p);
        }
        r
    }
    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut r = [0; MAX_EXT];
        for i in 0..self.k {
            r[i] = fp_sub(a[i], b[i], self.p);
        }
        r
    }
    fn neg(&self, a: &GfElem) -> GfElem {
        let mut r = [0; MAX_EXT];
        for i in 0..self.k {
            r[i] = fp_sub(0, a[i], self.p);
        }
        r
    }
    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let k = self.k;
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_EXT];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u64;
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
        }
        let mut r = [0u32; MAX_EXT];
        for i in 0..k {
            r[i] = prod[i] as u32;
        }
        r
    }
    fn inv(&self, a: &GfElem) -> GfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        // extended Euclid in F_p[x]
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), self.to_vec(a));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (vec![], vec![1]);
        while r1.len() > 1 {
            let (q, r) = fp_poly_divrem(&r0, &r1, p);
            let qs = fp_poly_mul(&q, &s1, p);
            let ns = fp_poly_sub(&s0, &qs, p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
        }
        let c = fp_inv(r1[0], p);
        let s: Vec<u32> = s1.iter().map(|&x| fp_mul(x, c, p)).collect();
        self.from_vec(&s)
    }
    fn from_i64(&self, n: i64) -> GfElem {
        let mut e = [0; MAX_EXT];
        e[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn format(&self, a: &GfElem) -> String {
        format_fp_poly(&a[..self.k], 'a')
    }
}

impl FiniteField for GaloisField {
    fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GfElem {
        let mut e = [0; MAX_EXT];
        for x in e.iter_mut().take(self.k) {
            *x = rng.random_range(0..self.p);
        }
        e
    }
    fn from_index(&self, mut i: u64) -> GfElem {
        let mut e = [0; MAX_EXT];
        for x in e.iter_mut().take(self.k) {
            *x = (i % self.p as u64) as u32;
            i /= self.p as u64;
        }
        e
    }
}

fn fp_poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = fp_add(r[i + j], fp_mul(x, y, p), p);
        }
    }
    trim_fp(r)
}

fn fp_poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| fp_sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim_fp(r)
}

fn fp_poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = trim_fp(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u32; r.len() - db];
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let d = r.len() - 1;
        let c = fp_mul(r[d], inv, p);
        q[d - db] = c;
        for i in 0..=db {
            r[d - db + i] = fp_sub(r[d - db + i], fp_mul(c, b[i], p), p);
        }
        r = trim_fp(r);
    }
    (trim_fp(q), r)
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rational_padic_val(a: &BigRational, p: u64) -> i64 {
    assert!(!a.is_zero());
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    count(a.numer().abs()) - count(a.denom().abs())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    /// |z|^2 = re^2 + im^2.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// The Gaussian rationals Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussianRationals;

impl GaussianRationals {
    pub fn i(&self) -> Gauss {
        Gauss {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }
}

impl Field for GaussianRationals {
    type Elem = Gauss;
    fn zero(&self) -> Gauss {
        Gauss {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one(&self) -> Gauss {
        Gauss {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self, a: &Gauss) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }
    fn add(&self, a: &Gauss, b: &Gauss) -> Gauss {
        Gauss {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }
    fn sub(&self, a: &Gauss, b: &Gauss) -> Gauss {
        Gauss {
            re: &a.re - &b.re,
            im: &a.im - &b.im,
        }
    }
    fn neg(&self, a: &Gauss) -> Gauss {
        Gauss {
            re: -&a.re,
            im: -&a.im,
        }
    }
    fn mul(&self, a: &Gauss, b: &Gauss) -> Gauss {
        Gauss {
            re: &a.re * &b.re - &a.im * &b.im,
            im: &a.re * &b.im + &a.im * &b.re,
        }
    }
    fn inv(&self, a: &Gauss) -> Gauss {
        let n = a.norm();
        assert!(!n.is_zero(), "inverse of zero");
        Gauss {
            re: &a.re / &n,
            im: -&a.im / &n,
        }
    }
    fn from_i64(&self, n: i64) -> Gauss {
        Gauss {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &Gauss) -> String {
        let re = format_rational(&a.re);
        let im = format_rational(&a.im.abs());
        if a.im.is_zero() {
            return re;
        }
        let imt = if a.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{im}*i")
        };
        match (a.re.is_zero(), a.im.is_negative()) {
            (true, false) => imt,
            (true, true) => format!("-{imt}"),
            (false, false) => format!("{re}+{imt}"),
            (false, true) => format!("{re}-{imt}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_fields() {
        assert_eq!(field_make(5, 1, None).unwrap().q, BigUint::from(5u32));
        let f8 = field_make(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
        assert_eq!(f8.q, BigUint::from(8u32));
        assert_eq!(field_make(4, 1, None), Err(Error::NonPrime(4)));
        assert_eq!(
            field_make(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus(2))
        );
        assert!(matches!(
            field_make(2, 3, Some(vec![1, 1, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn default_table_entries_irreducible() {
        for (p, m) in DEFAULT_MODULI {
            assert!(fp_poly_irreducible(m, *p as u32), "p={p} m={m:?}");
        }
        for p in [2u64, 3, 5, 7, 11] {
            for k in 1..=8 {
                assert!(field_make(p, k, None).is_ok());
            }
        }
    }

    #[test]
    fn gf8_generator_cube() {
        let f = GaloisField::new(&field_make(2, 3, None).unwrap());
        let a = f.generator();
        let a3 = f.pow(&a, 3);
        assert_eq!(a3, f.add(&a, &f.one()));
    }

    #[test]
    fn galois_inverse_and_order() {
        for (p, k) in [(2u64, 4usize), (3, 3), (5, 2)] {
            let f = GaloisField::new(&field_make(p, k, None).unwrap());
            let q = p.pow(k as u32);
            for i in 1..q {
                let x = f.from_index(i);
                assert_eq!(f.mul(&x, &f.inv(&x)), f.one());
                assert_eq!(f.pow(&x, q - 1), f.one());
            }
        }
    }

    #[test]
    fn gaussian_format() {
        let g = GaussianRationals;
        let z = g.add(&g.from_i64(3), &g.neg(&g.i()));
        assert_eq!(g.format(&z), "3-i");
        assert_eq!(g.inv(&g.i()), g.neg(&g.i()));
    }
}
