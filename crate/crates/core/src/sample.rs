//! Seeded samplers for field elements and matrices in GL_n(K), GL_n(O), GL_n(B).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{Field, FiniteField};
use crate::algebra::matrix::{self, Mat};
use crate::algebra::valued::{VElem, ValuedFrac};
use crate::tlf::{KElem, KField};

/// Per-case generator derived from a master seed and a case index.
pub fn case_rng(master: u64, idx: u64) -> ChaCha8Rng {
    let mut x = master ^ idx.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(x ^ (x >> 31))
}

pub fn nonzero<F: FiniteField, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    loop {
        let c = f.random(rng);
        if !f.is_zero(&c) {
            return c;
        }
    }
}

/// u^v (c0 + c1 u), sometimes divided by (1 + c u).
pub fn u_coeff<F: FiniteField, R: Rng>(
    fu: &ValuedFrac<F>,
    rng: &mut R,
    v: i64,
    frac: bool,
) -> VElem<F::Elem> {
    let f = &fu.base;
    let num = vec![nonzero(f, rng), f.random(rng)];
    let den = if frac && rng.random_bool(0.3) {
        vec![f.one(), nonzero(f, rng)]
    } else {
        vec![f.one()]
    };
    fu.make(v, num, den)
}

/// t^a P/Q with P, Q in F(u)[t] of t-degree at most 3, P(0) and Q(0) nonzero.
pub fn k_elem<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R) -> KElem<F> {
    let fu = &k.base;
    let a = rng.random_range(-3..=3);
    let dp = rng.random_range(0..=3);
    let dq = rng.random_range(0..=2);
    let coeff = |rng: &mut R, lead: bool| {
        if lead || rng.random_bool(0.5) {
            {
                let v = rng.random_range(-3..=3);
                u_coeff(fu, rng, v, true)
            }
        } else {
            fu.zero()
        }
    };
    let p: Vec<_> = (0..=dp).map(|i| coeff(rng, i == 0)).collect();
    let mut q: Vec<_> = (0..dq).map(|i| coeff(rng, i == 0)).collect();
    q.push(fu.one());
    k.make(a, p, q)
}

/// c0 u^v0 + c1 u^v1 t, times t^a.
fn small<F: FiniteField, R: Rng>(
    k: &KField<F>,
    rng: &mut R,
    a: i64,
    vlo: i64,
    vhi: i64,
) -> KElem<F> {
    let fu = &k.base;
    let f = &fu.base;
    let c0 = fu.monomial(nonzero(f, rng), rng.random_range(vlo..=vhi));
    let c1 = if rng.random_bool(0.5) {
        fu.monomial(nonzero(f, rng), rng.random_range(vlo..=vhi))
    } else {
        fu.zero()
    };
    k.make(a, vec![c0, c1], vec![fu.one()])
}

/// Unit of O: val_t 0.
pub fn o_unit<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R) -> KElem<F> {
    small(k, rng, 0, -2, 2)
}

/// Unit of B: val_t arbitrary, t-leading coefficient a u-unit, other coefficients u-integral.
pub fn b_unit<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R) -> KElem<F> {
    let fu = &k.base;
    let f = &fu.base;
    let a = rng.random_range(-1..=1);
    let c0 = fu.make(0, vec![nonzero(f, rng), f.random(rng)], vec![f.one()]);
    let c1 = if rng.random_bool(0.5) {
        fu.monomial(nonzero(f, rng), rng.random_range(0..=2))
    } else {
        fu.zero()
    };
    k.make(a, vec![c0, c1], vec![fu.one()])
}

/// Unit of O whose residue is a u-unit.
pub fn o_unit_u_unit<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R) -> KElem<F> {
    let fu = &k.base;
    let f = &fu.base;
    let c0 = fu.make(
        0,
        vec![nonzero(f, rng), f.random(rng)],
        vec![f.one(), f.random(rng)],
    );
    let c1 = fu.monomial(f.random(rng), rng.random_range(-2..=2));
    k.make(0, vec![c0, c1], vec![fu.one()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    K,
    O,
    B,
}

fn diag_entry<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R, g: Group) -> KElem<F> {
    match g {
        Group::K => {
            let a = rng.random_range(-2..=2);
            small(k, rng, a, -2, 2)
        }
        Group::O => o_unit(k, rng),
        Group::B => b_unit(k, rng),
    }
}

fn off_entry<F: FiniteField, R: Rng>(k: &KField<F>, rng: &mut R, g: Group) -> KElem<F> {
    match g {
        Group::K => {
            let a = rng.random_range(-1..=1);
            small(k, rng, a, -2, 2)
        }
        Group::O => {
            let a = rng.random_range(0..=1);
            small(k, rng, a, -2, 2)
        }
        Group::B => {
            let a = rng.random_range(-1..=1);
            small(k, rng, a, 0, 2)
        }
    }
}

/// Permutation times diagonal times one or two elementary factors.
pub fn matrix<F: FiniteField, R: Rng>(
    k: &KField<F>,
    rng: &mut R,
    n: usize,
    g: Group,
) -> Mat<KElem<F>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = matrix::zeros(k, n, n);
    for (i, &p) in perm.iter().enumerate() {
        m[i][p] = k.one();
    }
    let d: Vec<_> = (0..n).map(|_| diag_entry(k, rng, g)).collect();
    m = matrix::mul(k, &m, &matrix::diag(k, &d));
    if n >= 2 {
        for _ in 0..rng.random_range(1..=2) {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let mut e = matrix::identity(k, n);
            e[i][j] = off_entry(k, rng, g);
            m = matrix::mul(k, &m, &e);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::tlf::k_field;

    #[test]
    fn samples_land_in_their_groups() {
        let k = k_field(PrimeField::with_p(3));
        let mut rng = case_rng(7, 0);
        for _ in 0..50 {
            let o = matrix(&k, &mut rng, 2, Group::O);
            assert!(o.iter().flatten().all(|x| x.is_zero() || x.val >= 0));
            assert_eq!(k.valuation(&matrix::det(&k, &o)), Some(0));
            let b = matrix(&k, &mut rng, 2, Group::B);
            let bi = matrix::inverse(&k, &b).unwrap();
            for m in [&b, &bi] {
                for x in m.iter().flatten() {
                    let c = k.base.clone();
                    assert!(k.laurent(x, -4, 4).iter().all(|y| c.is_integral(y)));
                }
            }
            assert!(!k_elem(&k, &mut rng).is_zero());
        }
    }
}
