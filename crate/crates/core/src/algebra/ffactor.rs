//! Factorization of univariate polynomials over GF(q): squarefree split,
//! distinct-degree and equal-degree (Cantor-Zassenhaus) stages.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FiniteField};
use super::poly::{self, Poly};

/// a^e mod m.
pub fn powmod<F: Field>(f: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Poly<F::Elem> {
    let mut acc = poly::constant(f, f.one());
    let base = poly::rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = poly::mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = poly::mulmod(f, &acc, &base, m);
        }
    }
    acc
}

fn pth_root<F: FiniteField>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let p = f.characteristic() as usize;
    let e = f.order() / BigUint::from(p as u64);
    let r = (0..a.len())
        .step_by(p)
        .map(|i| f.pow_big(&a[i], &e))
        .collect();
    poly::trim(f, r)
}

/// Squarefree decomposition of a monic polynomial: pairs (factor, multiplicity).
pub fn squarefree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Poly<F::Elem>, usize)> {
    let a = poly::monic(f, a);
    if a.len() <= 1 {
        return vec![];
    }
    let p = f.characteristic() as usize;
    let mut out = Vec::new();
    let d = poly::derivative(f, &a);
    if d.is_empty() {
        for (g, m) in squarefree(f, &pth_root(f, &a)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = poly::gcd(f, &a, &d);
    let mut w = poly::div_exact(f, &a, &c).unwrap();
    let mut i = 1;
    while w.len() > 1 {
        let y = poly::gcd(f, &w, &c);
        let z = poly::div_exact(f, &w, &y).unwrap();
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = poly::div_exact(f, &c, &w).unwrap();
    }
    if c.len() > 1 {
        for (g, m) in squarefree(f, &pth_root(f, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Poly<F::Elem>, usize)> {
    let q = f.order().clone();
    let mut rest = poly::monic(f, a);
    let x = poly::x(f);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > poly::deg(&rest) as usize {
            let deg = poly::deg(&rest) as usize;
            out.push((rest, deg));
            break;
        }
        h = powmod(f, &h, &q, &rest);
        let g = poly::gcd(f, &rest, &poly::sub(f, &h, &x));
        if g.len() > 1 {
            rest = poly::div_exact(f, &rest, &g).unwrap();
            h = poly::rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Split a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<F::Elem>> {
    let n = poly::deg(a) as usize;
    if n == d {
        return vec![poly::monic(f, a)];
    }
    let qd = f.order().pow(d as u32);
    let two = f.characteristic() == 2;
    loop {
        let r: Poly<F::Elem> = poly::trim(f, (0..n).map(|_| f.random(rng)).collect());
        if r.len() <= 1 {
            continue;
        }
        let s = if two {
            let bits = (qd.bits() - 1) as usize;
            let mut acc = r.clone();
            let mut term = r.clone();
            for _ in 1..bits {
                term = poly::mulmod(f, &term, &term, a);
                acc = poly::add(f, &acc, &term);
            }
            acc
        } else {
            let e = (&qd - BigUint::one()) / BigUint::from(2u32);
            poly::sub(f, &powmod(f, &r, &e, a), &[f.one()])
        };
        let g = poly::gcd(f, a, &s);
        if g.len() > 1 && g.len() < a.len() {
            let h = poly::div_exact(f, a, &g).unwrap();
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Full factorization: leading coefficient and sorted (monic irreducible, multiplicity) pairs.
pub fn factor<F: FiniteField>(f: &F, a: &[F::Elem]) -> (F::Elem, Vec<(Poly<F::Elem>, usize)>) {
    assert!(!a.is_empty(), "factor of zero polynomial");
    let lc = poly::lc(f, a);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, m) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for irr in equal_degree(f, &h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_cached_key(|(g, m)| (g.len(), poly::format(f, g, 'x'), *m));
    (lc, out)
}

pub fn is_irreducible<F: FiniteField>(f: &F, a: &[F::Elem]) -> bool {
    if a.len() <= 1 {
        return false;
    }
    let (_, fs) = factor(f, a);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{field_make, GaloisField, PrimeField};

    fn expand<F: Field>(f: &F, lc: F::Elem, fs: &[(Poly<F::Elem>, usize)]) -> Poly<F::Elem> {
        let mut acc = vec![lc];
        for (g, m) in fs {
            acc = poly::mul(f, &acc, &poly::pow(f, g, *m as u64));
        }
        acc
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u32, 3, 5, 7] {
            let f = PrimeField::with_p(p);
            let a: Vec<u32> = vec![1, 0, 2 % p, 1, 0, 1, 3 % p, 0, 1];
            let sq = poly::mul(&f, &a, &poly::mul(&f, &a, &[1, 1]));
            let (lc, fs) = factor(&f, &sq);
            assert_eq!(expand(&f, lc, &fs), sq);
            for (g, _) in &fs {
                let (_, gs) = factor(&f, g);
                assert_eq!(gs.len(), 1);
            }
        }
    }

    #[test]
    fn char_two_extension() {
        let f = GaloisField::new(&field_make(2, 3, None).unwrap());
        let a = f.generator();
        // x^4 + a x + 1 times (x + a)^2
        let p1 = vec![f.one(), a, f.zero(), f.zero(), f.one()];
        let p2 = poly::pow(&f, &[a, f.one()], 2);
        let prod = poly::mul(&f, &p1, &p2);
        let (lc, fs) = factor(&f, &prod);
        assert_eq!(expand(&f, lc, &fs), prod);
        assert!(fs.iter().any(|(g, m)| *g == vec![a, f.one()] && *m == 2));
    }

    #[test]
    fn irreducibility() {
        let f = PrimeField::with_p(3);
        assert!(is_irreducible(&f, &[1, 0, 1]));
        assert!(!is_irreducible(&f, &[2, 0, 1]));
        let f2 = PrimeField::with_p(2);
        assert!(is_irreducible(&f2, &[1, 1, 1]));
    }
}
