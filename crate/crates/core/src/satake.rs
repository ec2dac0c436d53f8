//! Satake parameters, the principal-series character on block-triangular
//! matrices and the parabolic cocycle, all as integer exponent vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::field::{Field, FiniteField};
use crate::algebra::matrix::{self, Mat};
use crate::centext::Extension;
use crate::error::{Error, Result};
use crate::sample;
use crate::tlf::{nu_symbol, KElem, KField};

/// a = r + theta * 2 pi i / ln q, theta taken modulo 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Param {
    #[serde(serialize_with = "ser_rat")]
    pub r: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub theta: BigRational,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn frac_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl Param {
    pub fn new(r: BigRational, theta: BigRational) -> Self {
        Param {
            r,
            theta: frac_part(&theta),
        }
    }

    /// "r" or "r:theta" with rational r, theta.
    pub fn parse(s: &str) -> Result<Self> {
        let rat = |x: &str| {
            x.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::Invalid(format!("bad rational '{x}'")))
        };
        match s.split_once(':') {
            Some((r, th)) => Ok(Param::new(rat(r)?, rat(th)?)),
            None => Ok(Param::new(rat(s)?, BigRational::zero())),
        }
    }
}

/// alpha = q^{-a} = q^{log_abs} e^{2 pi i turn}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alpha {
    #[serde(serialize_with = "ser_rat")]
    pub log_abs: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub turn: BigRational,
}

impl Alpha {
    pub fn to_complex(&self, q: u64) -> (f64, f64) {
        let m = (q as f64).powf(self.log_abs.to_f64().unwrap_or(f64::NAN));
        let ang = 2.0 * std::f64::consts::PI * self.turn.to_f64().unwrap_or(f64::NAN);
        (m * ang.cos(), m * ang.sin())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeData {
    pub q: u64,
    pub params: Vec<Param>,
}

impl SatakeData {
    pub fn new(q: u64, params: Vec<Param>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid("q must be at least 2".into()));
        }
        Ok(SatakeData { q, params })
    }

    /// Comma-separated parameters.
    pub fn parse(q: u64, text: &str) -> Result<Self> {
        SatakeData::new(q, text.split(',').map(Param::parse).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.params.len()
    }

    pub fn alphas(&self) -> Vec<Alpha> {
        self.params
            .iter()
            .map(|p| Alpha {
                log_abs: -p.r.clone(),
                turn: frac_part(&-p.theta.clone()),
            })
            .collect()
    }

    pub fn from_alphas(q: u64, alphas: &[Alpha]) -> Result<Self> {
        SatakeData::new(
            q,
            alphas
                .iter()
                .map(|a| Param::new(-a.log_abs.clone(), -a.turn.clone()))
                .collect(),
        )
    }

    /// prod alpha_i^{m_i}.
    pub fn evaluate(&self, m: &[i64]) -> Result<Alpha> {
        if m.len() != self.n() {
            return Err(Error::DimensionMismatch(m.len(), self.n()));
        }
        let mut log_abs = BigRational::zero();
        let mut turn = BigRational::zero();
        for (a, &k) in self.alphas().iter().zip(m) {
            let k = BigRational::from_integer(BigInt::from(k));
            log_abs += &a.log_abs * &k;
            turn += &a.turn * &k;
        }
        Ok(Alpha {
            log_abs,
            turn: frac_part(&turn),
        })
    }
}

pub fn satake_round_trip(data: &SatakeData) -> Result<SatakeData> {
    SatakeData::from_alphas(data.q, &data.alphas())
}

/// Checks that m is block upper triangular for the given block sizes and
/// returns the diagonal blocks.
fn diagonal_blocks<F: Field>(
    k: &KField<F>,
    m: &Mat<KElem<F>>,
    sizes: &[usize],
) -> Option<Vec<Mat<KElem<F>>>> {
    let n: usize = sizes.iter().sum();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut starts = vec![0];
    for s in sizes {
        starts.push(starts.last().unwrap() + s);
    }
    for (bi, w) in starts.windows(2).enumerate() {
        for i in w[0]..w[1] {
            if m[i][..starts[bi]].iter().any(|x| !k.is_zero(x)) {
                return None;
            }
        }
    }
    Some(
        starts
            .windows(2)
            .map(|w| matrix::block(m, w[0], w[1]))
            .collect(),
    )
}

/// m_i = t-valuation of det b_i for the diagonal blocks of sizes `sizes`.
pub fn chi_exponent<F: Field>(
    k: &KField<F>,
    b: &Mat<KElem<F>>,
    sizes: &[usize],
    data: &SatakeData,
) -> Result<Vec<i64>> {
    if sizes.len() != data.n() {
        return Err(Error::DimensionMismatch(sizes.len(), data.n()));
    }
    let blocks = diagonal_blocks(k, b, sizes).ok_or(Error::NotTriangular)?;
    blocks
        .iter()
        .map(|bl| {
            k.valuation(&matrix::det(k, bl))
                .ok_or(Error::SingularMatrix)
        })
        .collect()
}

pub fn frobenius_exponent<F: Field>(k: &KField<F>, f: &KElem<F>, g: &KElem<F>) -> Result<i64> {
    Ok(nu_symbol(k, f, g)?.nu)
}

/// Componentwise cocycle of the GL_2 diagonal blocks of g and h.
pub fn parabolic_cocycle<F: Field>(
    ext: &Extension<F>,
    g: &Mat<KElem<F>>,
    h: &Mat<KElem<F>>,
    data: &SatakeData,
) -> Result<Vec<i64>> {
    let k = &ext.k;
    let sizes = vec![2; data.n()];
    let gb = diagonal_blocks(k, g, &sizes).ok_or(Error::NotParabolic)?;
    let hb = diagonal_blocks(k, h, &sizes).ok_or(Error::NotParabolic)?;
    gb.iter().zip(&hb).map(|(x, y)| ext.cocycle(x, y)).collect()
}

/// Block upper triangular matrix with the given diagonal blocks and random
/// entries above them.
pub fn assemble<F: FiniteField, R: Rng>(
    k: &KField<F>,
    rng: &mut R,
    blocks: &[Mat<KElem<F>>],
    fill: bool,
) -> Mat<KElem<F>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = matrix::zeros(k, n, n);
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[off + i][off + j] = x.clone();
            }
            for j in off + b.len()..n {
                if fill && rng.random_bool(0.5) {
                    m[off + i][j] = sample::k_elem(k, rng);
                }
            }
        }
        off += b.len();
    }
    m
}

/// Random rational with numerator in [-6, 6] and denominator in [1, 4].
pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n: i64 = rng.random_range(-6..=6);
    let d: i64 = rng.random_range(1..=4);
    let g = n.gcd(&d).max(1);
    BigRational::new(BigInt::from(n / g), BigInt::from(d / g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::centext::Flavor;
    use crate::tlf::{k_field, parse_k};

    #[test]
    fn round_trip_examples() {
        let d = SatakeData::parse(5, "0").unwrap();
        assert_eq!(
            d.alphas()[0],
            Alpha {
                log_abs: BigRational::zero(),
                turn: BigRational::zero()
            }
        );
        assert_eq!(satake_round_trip(&d).unwrap(), d);
        let d = SatakeData::parse(5, "1,1/2").unwrap();
        let a = d.alphas();
        assert_eq!(
            (a[0].log_abs.to_string(), a[1].log_abs.to_string()),
            ("-1".into(), "-1/2".into())
        );
        assert_eq!(satake_round_trip(&d).unwrap(), d);
        assert_eq!(
            SatakeData::parse(5, "1/3:1/4").unwrap(),
            SatakeData::parse(5, "1/3:5/4").unwrap()
        );
    }

    #[test]
    fn chi_examples() {
        let k = k_field(PrimeField::with_p(5));
        let p = |s: &str| parse_k(&k, s).unwrap();
        let d1 = SatakeData::parse(5, "1/2").unwrap();
        assert_eq!(
            chi_exponent(&k, &vec![vec![p("t^3")]], &[1], &d1).unwrap(),
            vec![3]
        );
        let d2 = SatakeData::parse(5, "0,1").unwrap();
        let b = vec![vec![p("1+u"), p("t^-2")], vec![p("0"), p("3+t")]];
        assert_eq!(chi_exponent(&k, &b, &[1, 1], &d2).unwrap(), vec![0, 0]);
        let lower = vec![vec![p("1"), p("0")], vec![p("t"), p("1")]];
        assert_eq!(
            chi_exponent(&k, &lower, &[1, 1], &d2),
            Err(Error::NotTriangular)
        );
    }

    #[test]
    fn frobenius_examples() {
        let k = k_field(PrimeField::with_p(5));
        let p = |s: &str| parse_k(&k, s).unwrap();
        assert_eq!(frobenius_exponent(&k, &p("u"), &p("t")).unwrap(), 1);
        assert_eq!(frobenius_exponent(&k, &p("u+t"), &p("1-u-t")).unwrap(), 0);
        assert_eq!(frobenius_exponent(&k, &p("t"), &p("u")).unwrap(), -1);
    }

    #[test]
    fn parabolic_examples() {
        let k = k_field(PrimeField::with_p(5));
        let p = |s: &str| parse_k(&k, s).unwrap();
        let ext = Extension::new(k.clone(), Flavor::Hat);
        let d1 = SatakeData::parse(5, "1").unwrap();
        let a = vec![vec![p("u"), p("0")], vec![p("0"), p("1")]];
        let b = vec![vec![p("1"), p("0")], vec![p("0"), p("t")]];
        let comm = parabolic_cocycle(&ext, &a, &b, &d1).unwrap()[0]
            - parabolic_cocycle(&ext, &b, &a, &d1).unwrap()[0];
        assert_eq!(comm, 1);
        let d2 = SatakeData::parse(5, "0,1/2").unwrap();
        let mut rng = sample::case_rng(3, 0);
        for _ in 0..20 {
            let blocks = |rng: &mut _| {
                vec![
                    sample::matrix(&k, rng, 2, sample::Group::O),
                    sample::matrix(&k, rng, 2, sample::Group::O),
                ]
            };
            let bg = blocks(&mut rng);
            let bh = blocks(&mut rng);
            let g = assemble(&k, &mut rng, &bg, true);
            let h = assemble(&k, &mut rng, &bh, true);
            assert_eq!(parabolic_cocycle(&ext, &g, &h, &d2).unwrap(), vec![0, 0]);
        }
        let wrong = vec![vec![p("1"), p("0"), p("0"), p("0")]; 4];
        let mut wrong = wrong;
        wrong[3][0] = p("u");
        assert_eq!(
            parabolic_cocycle(&ext, &wrong, &wrong, &d2),
            Err(Error::NotParabolic)
        );
    }
}
