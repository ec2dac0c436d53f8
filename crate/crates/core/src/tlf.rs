//! Elements of two-dimensional local fields and their symbols.
//!
//! An element of K = F((u))((t)) is held exactly as t^a P/Q with P, Q in
//! F(u)[t] (a [`VElem`] over `ValuedFrac<ValuedFrac<F>>`). The same shape over
//! Q or Q(i) gives the one-dimensional fields Q((t)) and Q(i)((t)).

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::field::{
    is_prime, rational_padic_val, Field, GaloisField, Gauss, GaussianRationals, PrimeField,
    Rationals,
};
use crate::algebra::valued::{VElem, ValuedFrac};
use crate::error::{Error, Result};
use crate::expr;

/// F(u)(t) over a coefficient field F.
pub type KField<F> = ValuedFrac<ValuedFrac<F>>;
pub type KElem<F> = VElem<VElem<<F as Field>::Elem>>;

pub fn k_field<F: Field>(base: F) -> KField<F> {
    ValuedFrac::new(ValuedFrac::new(base, 'u'), 't')
}

/// Symbol table for parsing over a base field: `u`, `t`, and `a` when the base
/// has a generator.
pub trait Symbols: Field {
    fn generator(&self) -> Option<Self::Elem> {
        None
    }
    fn imaginary(&self) -> Option<Self::Elem> {
        None
    }
}

impl Symbols for PrimeField {}
impl Symbols for Rationals {}

impl Symbols for GaloisField {
    fn generator(&self) -> Option<Self::Elem> {
        (self.k > 1).then(|| GaloisField::generator(self))
    }
}

impl Symbols for GaussianRationals {
    fn imaginary(&self) -> Option<Self::Elem> {
        Some(self.i())
    }
}

/// Parse an element of F(u)(t); zero is allowed.
pub fn parse_k<F: Symbols>(k: &KField<F>, text: &str) -> Result<KElem<F>> {
    let ast = expr::parse(text)?;
    let fu = &k.base;
    let sym = |c: char| match c {
        'u' => Some(k.from_base(fu.x_pow(1))),
        't' => Some(k.x_pow(1)),
        'a' => fu.base.generator().map(|g| k.from_base(fu.from_base(g))),
        _ => None,
    };
    expr::eval(&ast, k, &sym)
}

/// Parse an element of C(t) for C = Q or Q(i); zero is allowed.
pub fn parse_t<C: Symbols>(k: &ValuedFrac<C>, text: &str) -> Result<VElem<C::Elem>> {
    let ast = expr::parse(text)?;
    let sym = |c: char| match c {
        't' => Some(k.x_pow(1)),
        'i' => k.base.imaginary().map(|i| k.from_base(i)),
        _ => None,
    };
    expr::eval(&ast, k, &sym)
}

/// Parse a nonzero element (symbol arguments).
pub fn tlf_parse<F: Symbols>(k: &KField<F>, text: &str) -> Result<KElem<F>> {
    let x = parse_k(k, text)?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub nu: i64,
    pub route: String,
    pub residue: Option<String>,
}

fn nonzero<E>(x: &VElem<E>) -> Result<()> {
    if x.is_zero() {
        Err(Error::ZeroElement)
    } else {
        Ok(())
    }
}

/// Closed form nu = v_t(g) v_u(f0) - v_t(f) v_u(g0).
pub fn nu_symbol<F: Field>(k: &KField<F>, f: &KElem<F>, g: &KElem<F>) -> Result<SymbolReport> {
    nonzero(f)?;
    nonzero(g)?;
    let f0 = k.residue(f);
    let g0 = k.residue(g);
    let nu = g.val * f0.val - f.val * g0.val;
    Ok(SymbolReport {
        nu,
        route: "closed".into(),
        residue: None,
    })
}

/// Two-step route: the unsigned tame symbol f^{v(g)} / g^{v(f)} reduced to F(u),
/// then its u-adic valuation.
pub fn nu_symbol_composite<F: Field>(
    k: &KField<F>,
    f: &KElem<F>,
    g: &KElem<F>,
) -> Result<SymbolReport> {
    nonzero(f)?;
    nonzero(g)?;
    let x = k.div(&k.powi(f, g.val), &k.powi(g, f.val));
    debug_assert_eq!(x.val, 0);
    let r = k.residue(&x);
    Ok(SymbolReport {
        nu: r.val,
        route: "composite".into(),
        residue: Some(k.base.format(&r)),
    })
}

/// Signed tame symbol (-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} at the closed point.
pub fn tame_symbol_1d<C: Field>(
    vf: &ValuedFrac<C>,
    f: &VElem<C::Elem>,
    g: &VElem<C::Elem>,
) -> Result<C::Elem> {
    nonzero(f)?;
    nonzero(g)?;
    let x = vf.div(&vf.powi(f, g.val), &vf.powi(g, f.val));
    let r = vf.residue(&x);
    Ok(if (f.val * g.val).rem_euclid(2) == 1 {
        vf.base.neg(&r)
    } else {
        r
    })
}

fn unsigned_residue<C: Field>(
    vf: &ValuedFrac<C>,
    f: &VElem<C::Elem>,
    g: &VElem<C::Elem>,
) -> Result<C::Elem> {
    nonzero(f)?;
    nonzero(g)?;
    let x = vf.div(&vf.powi(f, g.val), &vf.powi(g, f.val));
    Ok(vf.residue(&x))
}

/// |f^{v(g)} / g^{v(f)}| at t = 0 over Q.
pub fn arch_symbol_r(
    k: &ValuedFrac<Rationals>,
    f: &VElem<BigRational>,
    g: &VElem<BigRational>,
) -> Result<BigRational> {
    Ok(unsigned_residue(k, f, g)?.abs())
}

/// Squared complex absolute value of the unsigned residue over Q(i).
pub fn arch_symbol_c(
    k: &ValuedFrac<GaussianRationals>,
    f: &VElem<Gauss>,
    g: &VElem<Gauss>,
) -> Result<BigRational> {
    Ok(unsigned_residue(k, f, g)?.norm())
}

/// v_t(g) v_p(f0) - v_t(f) v_p(g0) in Q_p((t)).
pub fn padic_nu_symbol(
    k: &ValuedFrac<Rationals>,
    f: &VElem<BigRational>,
    g: &VElem<BigRational>,
    p: u64,
) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    nonzero(f)?;
    nonzero(g)?;
    let f0 = k.residue(f);
    let g0 = k.residue(g);
    Ok(g.val * rational_padic_val(&f0, p) - f.val * rational_padic_val(&g0, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::field_make;

    fn k5() -> KField<PrimeField> {
        k_field(PrimeField::with_p(5))
    }

    #[test]
    fn parse_examples() {
        let k = k5();
        let x = tlf_parse(&k, "u*t^-1").unwrap();
        assert_eq!(x.val, -1);
        assert_eq!(k.format(&x), "t^-1*u");
        let y = tlf_parse(&k, "(1 - u*t)/(t^2)").unwrap();
        assert_eq!(y.val, -2);
        assert_eq!(tlf_parse(&k, "1/(t - t)"), Err(Error::ZeroDenominator));
        assert_eq!(tlf_parse(&k, "t - t"), Err(Error::ZeroElement));
        let z = tlf_parse(&k, "u^2*t^-1/(1+u)").unwrap();
        assert_eq!(z.val, -1);
        assert_eq!(k.base.format(&z.num[0]), "u^2/(1+u)");
        assert_eq!(parse_k(&k, "i"), Err(Error::UndefinedSymbol("i".into())));
    }

    #[test]
    fn generator_reduces() {
        let gf8 = GaloisField::new(&field_make(2, 3, Some(vec![1, 1, 0, 1])).unwrap());
        let k = k_field(gf8);
        assert_eq!(parse_k(&k, "a^3").unwrap(), parse_k(&k, "a+1").unwrap());
    }

    #[test]
    fn round_trip_print() {
        let k = k5();
        for s in [
            "u*t^-1",
            "(1-u*t)/(t^2)",
            "t^3*(2+u^-1*t)/(1+t+u*t^2)",
            "-u/(1+u)",
            "3*t/(u+t)",
        ] {
            let x = parse_k(&k, s).unwrap();
            assert_eq!(
                parse_k(&k, &k.format(&x)).unwrap(),
                x,
                "{s} -> {}",
                k.format(&x)
            );
        }
    }

    #[test]
    fn symbol_examples() {
        let k = k5();
        let p = |s| tlf_parse(&k, s).unwrap();
        assert_eq!(nu_symbol(&k, &p("u"), &p("t")).unwrap().nu, 1);
        assert_eq!(nu_symbol(&k, &p("t"), &p("u")).unwrap().nu, -1);
        assert_eq!(nu_symbol(&k, &p("u*t^-1"), &p("1-u*t^-1")).unwrap().nu, 0);
        let c = nu_symbol_composite(&k, &p("u"), &p("t")).unwrap();
        assert_eq!((c.nu, c.residue.as_deref()), (1, Some("u")));
        let c = nu_symbol_composite(&k, &p("t"), &p("u")).unwrap();
        assert_eq!((c.nu, c.residue.as_deref()), (-1, Some("u^-1")));
        assert_eq!(nu_symbol_composite(&k, &p("1-u"), &p("1-t")).unwrap().nu, 0);
    }

    #[test]
    fn tame_examples() {
        let fu = ValuedFrac::new(PrimeField::with_p(5), 'u');
        let u = fu.x_pow(1);
        assert_eq!(tame_symbol_1d(&fu, &u, &u).unwrap(), 4);
        let one_minus_u = fu.sub(&fu.one(), &u);
        assert_eq!(tame_symbol_1d(&fu, &one_minus_u, &u).unwrap(), 1);
        let c = fu.from_i64(3);
        let d = fu.from_i64(2);
        assert_eq!(tame_symbol_1d(&fu, &c, &d).unwrap(), 1);
    }

    #[test]
    fn archimedean_and_padic() {
        let kq = ValuedFrac::new(Rationals, 't');
        let q = |s| parse_t(&kq, s).unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(arch_symbol_r(&kq, &q("t"), &q("-2")).unwrap(), r(1, 2));
        assert_eq!(arch_symbol_r(&kq, &q("3"), &q("5")).unwrap(), r(1, 1));
        assert_eq!(arch_symbol_r(&kq, &q("t"), &q("t")).unwrap(), r(1, 1));
        assert_eq!(padic_nu_symbol(&kq, &q("12"), &q("t"), 2).unwrap(), 2);
        assert_eq!(padic_nu_symbol(&kq, &q("12"), &q("t"), 5).unwrap(), 0);
        assert_eq!(padic_nu_symbol(&kq, &q("t"), &q("t"), 3).unwrap(), 0);
        assert_eq!(
            padic_nu_symbol(&kq, &q("t"), &q("t"), 4),
            Err(Error::NonPrime(4))
        );
        let kc = ValuedFrac::new(GaussianRationals, 't');
        let c = |s| parse_t(&kc, s).unwrap();
        assert_eq!(arch_symbol_c(&kc, &c("t"), &c("i")).unwrap(), r(1, 1));
        assert_eq!(arch_symbol_c(&kc, &c("t"), &c("1+i")).unwrap(), r(1, 2));
        assert_eq!(arch_symbol_c(&kc, &c("2"), &c("3")).unwrap(), r(1, 1));
    }
}
