//! Seeded property suites behind `verify`.

use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::field::{Field, FiniteField};
use crate::algebra::matrix::{self, Mat};
use crate::centext::{
    diag_bridge_case, format_matrix, splitting_check, Extension, Flavor, SplitTag,
};
use crate::error::Result;
use crate::recip::{
    curve_reciprocity_p1, format_bipoly, horizontal_symbol_check, k_to_bipoly, point_reciprocity,
    product_formula_q, random_point_input, random_rational,
};
use crate::report::Case;
use crate::sample::{self, case_rng, Group};
use crate::satake::{self, chi_exponent, frobenius_exponent, parabolic_cocycle, Param, SatakeData};
use crate::tlf::{nu_symbol, nu_symbol_composite, parse_k, KElem, KField, Symbols};

pub const SUITES: &[&str] = &[
    "symbol-laws",
    "cocycle-id",
    "o-split",
    "b-split",
    "commutator-bridge",
    "block-laws",
    "recip-point",
    "recip-curve",
    "horizontal",
    "satake-laws",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    pub prec: i64,
    pub flavor: Flavor,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 200,
            n: 2,
            prec: 16,
            flavor: Flavor::Tilde,
        }
    }
}

/// Distinct seed stream per suite.
fn salt(name: &str, seed: u64) -> u64 {
    name.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

fn nu<F: Field>(k: &KField<F>, f: &KElem<F>, g: &KElem<F>) -> Result<i64> {
    Ok(nu_symbol(k, f, g)?.nu)
}

fn skip_on<T>(r: Result<T>, id: &str, inputs: &Value) -> std::result::Result<T, Case> {
    r.map_err(|e| Case::skip(id, inputs.clone(), e.to_string()))
}

/// Antisymmetry, bilinearity, Steinberg and agreement of the two routes.
pub fn symbol_laws<F: FiniteField>(k: &KField<F>, cfg: &SuiteConfig) -> Vec<Case> {
    let seed = salt("symbol-laws", cfg.seed);
    (0..cfg.trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let f = sample::k_elem(k, &mut rng);
            let g = sample::k_elem(k, &mut rng);
            let h = sample::k_elem(k, &mut rng);
            let id = format!("symbol-laws-{i}");
            let inputs = json!({"f": k.format(&f), "g": k.format(&g), "h": k.format(&h)});
            let one_minus = k.sub(&k.one(), &f);
            let run = || -> Result<Value> {
                let fg = nu(k, &f, &g)?;
                let steinberg = if one_minus.is_zero() { 0 } else { nu(k, &f, &one_minus)? };
                Ok(json!({
                    "antisymmetry": fg + nu(k, &g, &f)?,
                    "bilinear_left": nu(k, &k.mul(&f, &h), &g)? - fg - nu(k, &h, &g)?,
                    "bilinear_right": nu(k, &f, &k.mul(&g, &h))? - fg - nu(k, &f, &h)?,
                    "steinberg": steinberg,
                    "composite_gap": nu_symbol_composite(k, &f, &g)?.nu - fg,
                }))
            };
            let zero = json!({"antisymmetry": 0, "bilinear_left": 0, "bilinear_right": 0, "steinberg": 0, "composite_gap": 0});
            match skip_on(run(), &id, &inputs) {
                Ok(v) => Case::check(id, inputs, v, zero),
                Err(c) => c,
            }
        })
        .collect()
}

/// sigma(g,h) + sigma(gh,k) - sigma(g,hk) - sigma(h,k) on random triples in GL_n(K).
pub fn cocycle_identity<F: FiniteField>(
    ext: &Extension<F>,
    n: usize,
    trials: usize,
    seed: u64,
) -> Vec<Case> {
    let k = &ext.k;
    let seed = salt("cocycle-id", seed ^ n as u64);
    (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let g = sample::matrix(k, &mut rng, n, Group::K);
            let h = sample::matrix(k, &mut rng, n, Group::K);
            let l = sample::matrix(k, &mut rng, n, Group::K);
            let id = format!("cocycle-id-n{n}-{i}");
            let inputs = json!({"g": format_matrix(k, &g), "h": format_matrix(k, &h), "k": format_matrix(k, &l)});
            let run = || -> Result<i64> {
                let gh = matrix::mul(k, &g, &h);
                let hl = matrix::mul(k, &h, &l);
                Ok(ext.cocycle(&g, &h)? + ext.cocycle(&gh, &l)? - ext.cocycle(&g, &hl)? - ext.cocycle(&h, &l)?)
            };
            match skip_on(run(), &id, &inputs) {
                Ok(v) => Case::check(id, inputs, json!(v), json!(0)),
                Err(c) => c,
            }
        })
        .collect()
}

/// The calibration pairings followed by sampled diagonal bridges.
pub fn commutator_bridge<F: FiniteField + Symbols>(
    k: &KField<F>,
    n: usize,
    trials: usize,
    seed: u64,
) -> Vec<Case> {
    let hat = Extension::new(k.clone(), Flavor::Hat);
    let tilde = Extension::new(k.clone(), Flavor::Tilde);
    let p = |s: &str| parse_k(k, s).expect("fixed input");
    let u = p("u");
    let t = p("t");
    let mut out = vec![
        diag_bridge_case(
            &hat,
            "commutator-bridge-calibration".into(),
            &u,
            &t,
            n,
            &mut case_rng(seed, 0),
        ),
        match tilde.commutator_pairing(&vec![vec![u.clone()]], &vec![vec![p("t^-1")]]) {
            Ok(z) => Case::check(
                "commutator-bridge-calibration-rank-one",
                json!({"a": "u", "b": "t^-1"}),
                json!(z),
                json!(1),
            ),
            Err(e) => Case::skip(
                "commutator-bridge-calibration-rank-one",
                json!({"a": "u", "b": "t^-1"}),
                e.to_string(),
            ),
        },
    ];
    let seed = salt("commutator-bridge", seed);
    out.extend((0..trials).map(|i| {
        let mut rng = case_rng(seed, i as u64);
        let y = sample::k_elem(k, &mut rng);
        let x = sample::k_elem(k, &mut rng);
        diag_bridge_case(&hat, format!("commutator-bridge-{i}"), &y, &x, n, &mut rng)
    }));
    out
}

/// Additivity of sigma over block-diagonal pairs and independence of block order.
/// Holds for the tilde extension; the hat cocycle is not block additive.
pub fn block_laws<F: FiniteField>(ext: &Extension<F>, trials: usize, seed: u64) -> Vec<Case> {
    let k = &ext.k;
    let seed = salt("block-laws", seed);
    (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let (n1, n2) = (rng.random_range(1..=2), rng.random_range(1..=2));
            let g1 = sample::matrix(k, &mut rng, n1, Group::K);
            let h1 = sample::matrix(k, &mut rng, n1, Group::K);
            let g2 = sample::matrix(k, &mut rng, n2, Group::K);
            let h2 = sample::matrix(k, &mut rng, n2, Group::K);
            let id = format!("block-laws-{i}");
            let inputs = json!({
                "g1": format_matrix(k, &g1), "h1": format_matrix(k, &h1),
                "g2": format_matrix(k, &g2), "h2": format_matrix(k, &h2),
            });
            let run = || -> Result<Value> {
                let parts = ext.cocycle(&g1, &h1)? + ext.cocycle(&g2, &h2)?;
                let whole = ext.cocycle(
                    &matrix::block_diag(k, &g1, &g2),
                    &matrix::block_diag(k, &h1, &h2),
                )?;
                let swapped = ext.cocycle(
                    &matrix::block_diag(k, &g2, &g1),
                    &matrix::block_diag(k, &h2, &h1),
                )?;
                Ok(json!({"additivity": whole - parts, "order": whole - swapped}))
            };
            match skip_on(run(), &id, &inputs) {
                Ok(v) => Case::check(id, inputs, v, json!({"additivity": 0, "order": 0})),
                Err(c) => c,
            }
        })
        .collect()
}

/// Fixed pairs and sampled pairs of polynomials at the origin.
pub fn recip_point<F: FiniteField + Symbols>(
    k: &KField<F>,
    trials: usize,
    prec: i64,
    seed: u64,
) -> Vec<Case> {
    let field = &k.base.base;
    let fixed = [("u", "t"), ("u", "u+t"), ("t^2-u^2-u^3", "t")];
    let mut inputs: Vec<(String, _, _)> = fixed
        .iter()
        .enumerate()
        .map(|(i, (f, g))| {
            let bp = |s: &str| {
                k_to_bipoly(k, &parse_k(k, s).expect("fixed input")).expect("fixed input")
            };
            (format!("recip-point-fixed-{i}"), bp(f), bp(g))
        })
        .collect();
    let seed = salt("recip-point", seed);
    for i in 0..trials {
        let mut rng = case_rng(seed, i as u64);
        let f = random_point_input(field, &mut rng);
        let g = random_point_input(field, &mut rng);
        inputs.push((format!("recip-point-{i}"), f, g));
    }
    inputs
        .into_iter()
        .map(|(id, f, g)| {
            let inp = json!({"f": format_bipoly(k, &f), "g": format_bipoly(k, &g)});
            match point_reciprocity(k, &f, &g, prec) {
                Ok(r) => Case::check(id, inp, json!(r.total), json!(0))
                    .with_detail(json!({"rows": r.rows, "prec": r.prec})),
                Err(e) => Case::skip(id, inp, e.to_string()),
            }
        })
        .collect()
}

pub fn recip_curve<F: FiniteField>(k: &KField<F>, trials: usize, seed: u64) -> Vec<Case> {
    let seed = salt("recip-curve", seed);
    (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let f = sample::k_elem(k, &mut rng);
            let g = sample::k_elem(k, &mut rng);
            let id = format!("recip-curve-{i}");
            let inp = json!({"f": k.format(&f), "g": k.format(&g)});
            match curve_reciprocity_p1(k, &f, &g) {
                Ok(r) => Case::check(id, inp, json!(r.total), json!(0))
                    .with_detail(json!({"places": r.places})),
                Err(e) => Case::skip(id, inp, e.to_string()),
            }
        })
        .collect()
}

pub fn horizontal(trials: usize, seed: u64) -> Vec<Case> {
    let seed = salt("horizontal", seed);
    (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let a = random_rational(&mut rng, 1_000_000_000);
            let id = format!("horizontal-{i}");
            let inp = json!({"a": a.to_string()});
            match (product_formula_q(&a), horizontal_symbol_check(&a)) {
                (Ok(p), Ok(h)) => Case::check(
                    id,
                    inp,
                    json!({"product_formula": p.product, "horizontal": h.product}),
                    json!({"product_formula": "1", "horizontal": "1"}),
                )
                .with_detail(
                    json!({"padic_factors": h.padic_factors, "arch_factor": h.arch_factor}),
                ),
                (Err(e), _) | (_, Err(e)) => Case::skip(id, inp, e.to_string()),
            }
        })
        .collect()
}

fn random_data<R: Rng>(q: u64, n: usize, rng: &mut R) -> SatakeData {
    let params = (0..n)
        .map(|_| Param::new(satake::random_rational(rng), satake::random_rational(rng)))
        .collect();
    SatakeData::new(q, params).expect("q >= 2")
}

fn triangular<F: FiniteField, R: Rng>(
    k: &KField<F>,
    rng: &mut R,
    sizes: &[usize],
) -> Mat<KElem<F>> {
    let blocks: Vec<_> = sizes
        .iter()
        .map(|&s| sample::matrix(k, rng, s, Group::K))
        .collect();
    satake::assemble(k, rng, &blocks, true)
}

/// Character homomorphism, parabolic cocycle identity, Frobenius K_2 relations
/// and exact parameter round trips.
pub fn satake_laws<F: FiniteField>(k: &KField<F>, trials: usize, seed: u64) -> Vec<Case> {
    let q = k.base.base.ctx().q_u64().unwrap_or(u64::MAX);
    let hat = Extension::new(k.clone(), Flavor::Hat);
    let seed = salt("satake-laws", seed);
    let mut out = Vec::new();
    for i in 0..trials {
        let mut rng = case_rng(seed, i as u64);
        let nb = rng.random_range(1..=2);
        let sizes: Vec<usize> = (0..nb).map(|_| rng.random_range(1..=2)).collect();
        let data = random_data(q, nb, &mut rng);
        let b = triangular(k, &mut rng, &sizes);
        let b2 = triangular(k, &mut rng, &sizes);
        let id = format!("satake-chi-{i}");
        let inp = json!({"b": format_matrix(k, &b), "b2": format_matrix(k, &b2), "sizes": sizes, "data": data});
        let run = || -> Result<Value> {
            let m = chi_exponent(k, &b, &sizes, &data)?;
            let m2 = chi_exponent(k, &b2, &sizes, &data)?;
            let mm = chi_exponent(k, &matrix::mul(k, &b, &b2), &sizes, &data)?;
            let sum: Vec<i64> = m.iter().zip(&m2).map(|(x, y)| x + y).collect();
            let (e, e1, e2) = (
                data.evaluate(&sum)?,
                data.evaluate(&m)?,
                data.evaluate(&m2)?,
            );
            let prod_turn = {
                let s = &e1.turn + &e2.turn;
                &s - s.floor()
            };
            Ok(json!({
                "homomorphism": mm == sum,
                "evaluation": e.log_abs == &e1.log_abs + &e2.log_abs && e.turn == prod_turn,
                "round_trip": satake::satake_round_trip(&data)? == data,
            }))
        };
        out.push(match skip_on(run(), &id, &inp) {
            Ok(v) => Case::check(
                id,
                inp,
                v,
                json!({"homomorphism": true, "evaluation": true, "round_trip": true}),
            ),
            Err(c) => c,
        });

        let pb = rng.random_range(1..=2);
        let pdata = random_data(q, pb, &mut rng);
        let sizes2 = vec![2; pb];
        let (g, h, l) = (
            triangular(k, &mut rng, &sizes2),
            triangular(k, &mut rng, &sizes2),
            triangular(k, &mut rng, &sizes2),
        );
        let id = format!("satake-parabolic-{i}");
        let inp = json!({"g": format_matrix(k, &g), "h": format_matrix(k, &h), "k": format_matrix(k, &l)});
        let run = || -> Result<Value> {
            let s1 = parabolic_cocycle(&hat, &g, &h, &pdata)?;
            let s2 = parabolic_cocycle(&hat, &matrix::mul(k, &g, &h), &l, &pdata)?;
            let s3 = parabolic_cocycle(&hat, &g, &matrix::mul(k, &h, &l), &pdata)?;
            let s4 = parabolic_cocycle(&hat, &h, &l, &pdata)?;
            Ok(json!((0..pb)
                .map(|j| s1[j] + s2[j] - s3[j] - s4[j])
                .collect::<Vec<_>>()))
        };
        out.push(match skip_on(run(), &id, &inp) {
            Ok(v) => Case::check(id, inp, v, json!(vec![0; pb])),
            Err(c) => c,
        });

        let f = sample::k_elem(k, &mut rng);
        let g = sample::k_elem(k, &mut rng);
        let h = sample::k_elem(k, &mut rng);
        let id = format!("satake-frobenius-{i}");
        let inp = json!({"f": k.format(&f), "g": k.format(&g), "h": k.format(&h)});
        let one_minus = k.sub(&k.one(), &f);
        let run = || -> Result<Value> {
            let fr = |a: &KElem<F>, b: &KElem<F>| frobenius_exponent(k, a, b);
            let fg = fr(&f, &g)?;
            Ok(json!({
                "antisymmetry": fg + fr(&g, &f)?,
                "bilinear": fr(&k.mul(&f, &h), &g)? - fg - fr(&h, &g)?,
                "steinberg": if one_minus.is_zero() { 0 } else { fr(&f, &one_minus)? },
            }))
        };
        out.push(match skip_on(run(), &id, &inp) {
            Ok(v) => Case::check(
                id,
                inp,
                v,
                json!({"antisymmetry": 0, "bilinear": 0, "steinberg": 0}),
            ),
            Err(c) => c,
        });
    }
    out
}

/// Runs a named suite, or every suite for "all".
pub fn run_suite<F: FiniteField + Symbols>(
    name: &str,
    k: &KField<F>,
    cfg: &SuiteConfig,
) -> Option<Vec<Case>> {
    let ext = |fl: Flavor| Extension::new(k.clone(), fl);
    let (n, t, s) = (cfg.n, cfg.trials, cfg.seed);
    Some(match name {
        "symbol-laws" => symbol_laws(k, cfg),
        "cocycle-id" => cocycle_identity(&ext(cfg.flavor), n, t, s),
        "o-split" => splitting_check(&ext(cfg.flavor), SplitTag::O, n, t, salt("o-split", s)),
        "b-split" => splitting_check(&ext(cfg.flavor), SplitTag::B, n, t, salt("b-split", s)),
        "commutator-bridge" => commutator_bridge(k, n, t, s),
        "block-laws" => block_laws(&ext(Flavor::Tilde), t, s),
        "recip-point" => recip_point(k, t, cfg.prec, s),
        "recip-curve" => recip_curve(k, t, s),
        "horizontal" => horizontal(t, s),
        "satake-laws" => satake_laws(k, t, s),
        "all" => SUITES
            .iter()
            .flat_map(|x| run_suite(x, k, cfg).expect("known suite"))
            .collect(),
        _ => return None,
    })
}
