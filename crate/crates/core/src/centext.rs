//! The central extension of GL_n(K) by q^Z: its 2-cocycle, group law,
//! commutator pairing, splitting checks and weighted Baer sums.
//!
//! The tilde extension has cocycle σ(g, h) = a(g; O^n, hO^n). The hat
//! extension is θ^{-1}(SL_n) ⋊ K^*, with K^* acting through diag(a, 1, ..., 1).

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::algebra::field::{Field, FiniteField};
use crate::algebra::matrix::{self, Mat};
use crate::error::{Error, Result};
use crate::lattice::{defect_standard_pair, Mover, PrecisionPolicy};
use crate::report::Case;
use crate::sample::{self, case_rng, Group};
use crate::tlf::{nu_symbol, KElem, KField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Tilde,
    Hat,
}

#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub k: KField<F>,
    pub flavor: Flavor,
    pub policy: PrecisionPolicy,
    pub n_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement<E> {
    pub g: Mat<E>,
    pub z: i64,
}

impl<F: Field> Extension<F> {
    pub fn new(k: KField<F>, flavor: Flavor) -> Self {
        Extension {
            k,
            flavor,
            policy: PrecisionPolicy::default(),
            n_cap: 4,
        }
    }

    fn check_dims(&self, g: &Mat<KElem<F>>, h: &Mat<KElem<F>>) -> Result<()> {
        if g.len() != h.len() {
            return Err(Error::DimensionMismatch(g.len(), h.len()));
        }
        if g.len() > self.n_cap {
            return Err(Error::Invalid(format!(
                "rank {} exceeds the cap {}",
                g.len(),
                self.n_cap
            )));
        }
        Ok(())
    }

    fn tilde(&self, g: &Mat<KElem<F>>, h: &Mat<KElem<F>>) -> Result<i64> {
        let mv = Mover::new(&self.k, g)?;
        defect_standard_pair(&self.k, &mv, h, self.policy)
    }

    fn det_diag(&self, g: &Mat<KElem<F>>, inv: bool) -> Result<Mat<KElem<F>>> {
        let k = &self.k;
        let d = matrix::det(k, g);
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut m = matrix::identity(k, g.len());
        m[0][0] = if inv { k.inv(&d) } else { d };
        Ok(m)
    }

    fn hat(&self, g: &Mat<KElem<F>>, h: &Mat<KElem<F>>) -> Result<i64> {
        let k = &self.k;
        if g.len() == 1 {
            return Ok(0);
        }
        let d = self.det_diag(g, false)?;
        let d_inv = self.det_diag(g, true)?;
        let gs = matrix::mul(k, g, &d_inv);
        let hs = matrix::mul(k, h, &self.det_diag(h, true)?);
        let dhs = matrix::mul(k, &d, &hs);
        let conj = matrix::mul(k, &dhs, &d_inv);
        Ok(
            self.tilde(&gs, &conj)? + self.tilde(&d, &hs)? + self.tilde(&dhs, &d_inv)?
                - self.tilde(&d, &d_inv)?,
        )
    }

    /// The 2-cocycle σ(g, h).
    pub fn cocycle(&self, g: &Mat<KElem<F>>, h: &Mat<KElem<F>>) -> Result<i64> {
        self.check_dims(g, h)?;
        match self.flavor {
            Flavor::Tilde => self.tilde(g, h),
            Flavor::Hat => self.hat(g, h),
        }
    }

    pub fn identity(&self, n: usize) -> ExtElement<KElem<F>> {
        ExtElement {
            g: matrix::identity(&self.k, n),
            z: 0,
        }
    }

    pub fn ext_mul(
        &self,
        a: &ExtElement<KElem<F>>,
        b: &ExtElement<KElem<F>>,
    ) -> Result<ExtElement<KElem<F>>> {
        let s = self.cocycle(&a.g, &b.g)?;
        Ok(ExtElement {
            g: matrix::mul(&self.k, &a.g, &b.g),
            z: a.z + b.z + s,
        })
    }

    pub fn ext_inv(&self, a: &ExtElement<KElem<F>>) -> Result<ExtElement<KElem<F>>> {
        let gi = matrix::inverse(&self.k, &a.g).ok_or(Error::SingularMatrix)?;
        let s = self.cocycle(&a.g, &gi)?;
        Ok(ExtElement { g: gi, z: -a.z - s })
    }

    /// z with [Â, B̂] = (1, z) for commuting A, B.
    pub fn commutator_pairing(&self, a: &Mat<KElem<F>>, b: &Mat<KElem<F>>) -> Result<i64> {
        self.check_dims(a, b)?;
        let k = &self.k;
        if matrix::mul(k, a, b) != matrix::mul(k, b, a) {
            return Err(Error::NotCommuting);
        }
        Ok(self.cocycle(a, b)? - self.cocycle(b, a)?)
    }

    /// The commutator of explicit lifts, through the group law.
    pub fn commutator_of_lifts(
        &self,
        a: &ExtElement<KElem<F>>,
        b: &ExtElement<KElem<F>>,
    ) -> Result<ExtElement<KElem<F>>> {
        let ab = self.ext_mul(a, b)?;
        let ab_ai = self.ext_mul(&ab, &self.ext_inv(a)?)?;
        self.ext_mul(&ab_ai, &self.ext_inv(b)?)
    }
}

/// Σ weight_c σ_c(g_c, h_c) over components with matching labels.
pub fn adelic_cocycle<F: Field>(
    components: &[(String, u64, &Extension<F>, Mat<KElem<F>>)],
    others: &[(String, Mat<KElem<F>>)],
) -> Result<i64> {
    if components.len() != others.len() {
        return Err(Error::LabelMismatch);
    }
    let mut total = 0;
    for ((label, weight, ext, g), (label2, h)) in components.iter().zip(others) {
        if label != label2 {
            return Err(Error::LabelMismatch);
        }
        total += *weight as i64 * ext.cocycle(g, h)?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitTag {
    O,
    B,
    DiagonalOUnits,
}

pub fn format_matrix<F: Field>(k: &KField<F>, m: &Mat<KElem<F>>) -> serde_json::Value {
    json!(m
        .iter()
        .map(|r| r.iter().map(|x| k.format(x)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn skip_or_err<T>(
    r: Result<T>,
    id: &str,
    inputs: &serde_json::Value,
) -> std::result::Result<T, Case> {
    r.map_err(|e| Case::skip(id, inputs.clone(), e.to_string()))
}

/// Sampled splitting check: σ vanishes on the subgroup (or the commutator of
/// diagonal unit lifts vanishes).
pub fn splitting_check<F: FiniteField>(
    ext: &Extension<F>,
    tag: SplitTag,
    n: usize,
    trials: usize,
    seed: u64,
) -> Vec<Case> {
    let k = &ext.k;
    (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let id = format!(
                "{}-{i}",
                serde_json::to_value(tag).unwrap().as_str().unwrap()
            );
            match tag {
                SplitTag::O | SplitTag::B => {
                    let grp = if tag == SplitTag::O {
                        Group::O
                    } else {
                        Group::B
                    };
                    let g = sample::matrix(k, &mut rng, n, grp);
                    let h = sample::matrix(k, &mut rng, n, grp);
                    let inputs = json!({"g": format_matrix(k, &g), "h": format_matrix(k, &h)});
                    match skip_or_err(ext.cocycle(&g, &h), &id, &inputs) {
                        Ok(s) => Case::check(id, inputs, json!(s), json!(0)),
                        Err(c) => c,
                    }
                }
                SplitTag::DiagonalOUnits => {
                    let y = sample::o_unit_u_unit(k, &mut rng);
                    let x = sample::o_unit_u_unit(k, &mut rng);
                    diag_bridge_case(ext, id, &y, &x, n, &mut rng)
                }
            }
        })
        .collect()
}

/// ⟨diag(y,1,..), diag(1,x,..)⟩ against ν_K(y, x).
pub fn diag_bridge_case<F: Field, R: Rng>(
    ext: &Extension<F>,
    id: String,
    y: &KElem<F>,
    x: &KElem<F>,
    n: usize,
    _rng: &mut R,
) -> Case {
    let k = &ext.k;
    let n = n.max(2);
    let mut a = matrix::identity(k, n);
    a[0][0] = y.clone();
    let mut b = matrix::identity(k, n);
    b[1][1] = x.clone();
    let inputs = json!({"y": k.format(y), "x": k.format(x)});
    let expected = match nu_symbol(k, y, x) {
        Ok(r) => r.nu,
        Err(e) => return Case::skip(id, inputs, e.to_string()),
    };
    match ext.commutator_pairing(&a, &b) {
        Ok(z) => Case::check(id, inputs, json!(z), json!(expected)),
        Err(e) => Case::skip(id, inputs, e.to_string()),
    }
}
