//! Acceptance run: one line per criterion, with timings against the limits.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use twodim::algebra::field::{field_make, Field, FiniteField, GaloisField, PrimeField};
use twodim::algebra::matrix::{self, Mat};
use twodim::algebra::valued::{VElem, ValuedFrac};
use twodim::centext::{splitting_check, Extension, Flavor, SplitTag};
use twodim::lattice::{
    b_lattice_image, lattice_from_matrix, quotient_data, u_rel_index, ulattice_from_generators,
    ULattice,
};
use twodim::report::{Case, Summary};
use twodim::sample::case_rng;
use twodim::suites::{self, SuiteConfig};
use twodim::tlf::{k_field, KElem, KField};

struct Outcome {
    ok: bool,
    detail: String,
}

fn all_pass(cases: &[Case], need: usize) -> Outcome {
    let s = Summary::of(cases);
    let first_bad = cases
        .iter()
        .find(|c| !c.pass)
        .map(|c| format!(", first: {} {:?}", c.id, c.skipped));
    Outcome {
        ok: s.failed == 0 && s.skipped == 0 && s.passed >= need,
        detail: format!(
            "{} passed, {} failed, {} skipped{}",
            s.passed,
            s.failed,
            s.skipped,
            first_bad.unwrap_or_default()
        ),
    }
}

fn merge(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        ok: parts.iter().all(|p| p.ok),
        detail: parts
            .iter()
            .map(|p| p.detail.as_str())
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn criterion(no: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let out = f();
    let el = t0.elapsed();
    let in_time = limit.is_none_or(|l| el < l);
    let ok = out.ok && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(" < {} s", l.as_secs()));
    println!(
        "[PRIMARY] criterion {no:>2} {name}: {} ({}; {:.2} s{limit_text})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        el.as_secs_f64()
    );
    ok
}

fn gf(p: u64, k: usize) -> GaloisField {
    GaloisField::new(&field_make(p, k, None).unwrap())
}

fn cfg(seed: u64, trials: usize, n: usize, flavor: Flavor) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials,
        n,
        prec: 16,
        flavor,
    }
}

// ---- exhaustive oracle for the B-image and relative indices ----

type U<F> = VElem<<F as Field>::Elem>;

fn min_val<F: Field>(m: &Mat<U<F>>) -> i64 {
    m.iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| x.val)
        .min()
        .unwrap_or(0)
}

fn in_ulattice<F: Field>(fu: &ValuedFrac<F>, inv: &Mat<U<F>>, x: &[U<F>]) -> bool {
    matrix::mul_vec(fu, inv, x)
        .iter()
        .all(|c| c.is_zero() || c.val >= 0)
}

/// Window [a, b) with u^b std ⊆ V ⊆ u^a std.
fn window<F: Field>(fu: &ValuedFrac<F>, v: &ULattice<F::Elem>) -> (i64, i64) {
    let inv = matrix::inverse(fu, &v.basis).unwrap();
    (min_val::<F>(&v.basis), -min_val::<F>(&inv))
}

/// Every F_p-combination of `gens`, visited by an odometer that adds one
/// generator per step.
fn for_each_combination<F: Field>(
    f: &ValuedFrac<F>,
    p: u32,
    gens: &[Vec<U<F>>],
    mut visit: impl FnMut(&[U<F>]),
) {
    let len = gens.first().map_or(0, |g| g.len());
    let mut acc = vec![f.zero(); len];
    let mut digits = vec![0u32; gens.len()];
    loop {
        visit(&acc);
        let mut i = 0;
        loop {
            if i == gens.len() {
                return;
            }
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a = f.add(a, g);
            }
            digits[i] = (digits[i] + 1) % p;
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// Random rank-n pair L1 ⊇ L2 with quotient of dimension 1..=3 and small windows.
fn random_pair<F: FiniteField, R: Rng>(
    k: &KField<F>,
    rng: &mut R,
    n: usize,
) -> (Mat<KElem<F>>, Mat<KElem<F>>) {
    let fu = &k.base;
    let f = &fu.base;
    let mono = |rng: &mut R, vlo: i64, tlo: i64, thi: i64| {
        let c = twodim::sample::nonzero(f, rng);
        let v = rng.random_range(vlo..=1);
        let j = rng.random_range(tlo..=thi);
        k.shift(&k.from_base(fu.monomial(c, v)), j)
    };
    let mut a1 = matrix::identity(k, n);
    for (i, row) in a1.iter_mut().enumerate() {
        row[i] = k.x_pow(rng.random_range(-1..=1));
    }
    if n == 2 && rng.random_bool(0.7) {
        a1[0][1] = mono(rng, -1, -1, 1);
    }
    loop {
        let e: Vec<i64> = (0..n).map(|_| rng.random_range(0..=2)).collect();
        let d: i64 = e.iter().sum();
        if d == 0 || d > 3 {
            continue;
        }
        let mut h = matrix::identity(k, n);
        for (i, row) in h.iter_mut().enumerate() {
            row[i] = k.x_pow(e[i]);
        }
        if n == 2 && rng.random_bool(0.7) {
            h[0][1] = mono(rng, -1, 0, 1);
        }
        return (a1.clone(), matrix::mul(k, &a1, &h));
    }
}

/// Compares the B-image of L1/L2 with the classes of all B-integral vectors of
/// bounded t- and u-support lying in L1.
fn b_image_instance<F: FiniteField>(
    k: &KField<F>,
    seed: u64,
    idx: u64,
) -> Option<std::result::Result<(), String>> {
    let fu = &k.base;
    let p = k.base.base.ctx().p as u32;
    let mut rng = case_rng(seed, idx);
    let n = rng.random_range(1..=2);
    let (a1, a2) = random_pair(k, &mut rng, n);
    let l1 = lattice_from_matrix(k, &a1).unwrap();
    let l2 = lattice_from_matrix(k, &a2).unwrap();
    let q = quotient_data(k, &l1, &l2).unwrap();
    let v = b_lattice_image(k, &q).unwrap();
    let std = ULattice {
        d: q.d,
        basis: matrix::identity(fu, q.d),
    };
    let det_v = u_rel_index(fu, &std, &v).unwrap();
    let (a, b) = window(fu, &v);
    // one step past the conductor, so the count is never trivial
    let b = b + 1;
    let v_inv = matrix::inverse(fu, &v.basis).unwrap();
    // t-support of L1 modulo L2, row by row
    let lo: Vec<i64> =
        q.c.iter()
            .map(|row| {
                row.iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| x.val)
                    .min()
                    .unwrap()
            })
            .collect();
    let t_window: i64 = (0..n).map(|r| q.top[r] - lo[r]).sum();
    let depth = 3;
    let dim_e = t_window * depth;
    if t_window > 3 || dim_e > if p == 2 { 12 } else { 9 } {
        return None;
    }
    let mut gens = Vec::new();
    let mut neg_lo = 0;
    let mut raw = Vec::new();
    for r in 0..n {
        for j in lo[r]..q.top[r] {
            for s in 0..depth {
                let mut e = vec![k.zero(); n];
                e[r] = k.shift(&k.from_base(fu.x_pow(s)), j);
                let x = matrix::mul_vec(k, &q.c_inv, &e);
                neg_lo = neg_lo.min(
                    x.iter()
                        .filter(|c| !c.is_zero())
                        .map(|c| c.val)
                        .min()
                        .unwrap_or(0),
                );
                raw.push(x);
            }
        }
    }
    for x in &raw {
        let mut g = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            g.extend(k.laurent(xi, neg_lo, q.exps[i]));
        }
        gens.push(g);
    }
    // per coordinate: negative part first, then the quotient coordinates
    let layout: Vec<(usize, usize)> = {
        let mut off = 0;
        q.exps
            .iter()
            .map(|&e| {
                let neg = (-neg_lo) as usize;
                let s = (off, neg);
                off += neg + e as usize;
                s
            })
            .collect()
    };
    let mut images = HashSet::new();
    let mut unsound = None;
    for_each_combination(fu, p, &gens, |acc| {
        if layout
            .iter()
            .any(|&(off, neg)| acc[off..off + neg].iter().any(|c| !c.is_zero()))
        {
            return;
        }
        let coords: Vec<U<F>> = layout
            .iter()
            .zip(&q.exps)
            .flat_map(|(&(off, neg), &e)| acc[off + neg..off + neg + e as usize].to_vec())
            .collect();
        if !in_ulattice(fu, &v_inv, &coords) {
            unsound = Some(format!(
                "{:?}",
                coords.iter().map(|c| fu.format(c)).collect::<Vec<_>>()
            ));
        }
        let key: Vec<String> = coords
            .iter()
            .map(|c| format!("{:?}", fu.laurent(c, a, b)))
            .collect();
        images.insert(key);
    });
    if let Some(u) = unsound {
        return Some(Err(format!(
            "instance {idx}: enumerated class {u} outside the computed image"
        )));
    }
    let want = (q.d as i64 * b - det_v) as u32;
    let got = images.len();
    if got != (p as usize).pow(want) {
        return Some(Err(format!(
            "instance {idx}: {got} classes, expected {}^{want}",
            p
        )));
    }
    Some(Ok(()))
}

/// Relative index of two random u-lattices against counting their classes
/// in a common finite window.
fn rel_index_instance<F: FiniteField>(
    k: &KField<F>,
    seed: u64,
    idx: u64,
) -> Option<std::result::Result<(), String>> {
    let fu = &k.base;
    let f = &fu.base;
    let p = f.ctx().p as u32;
    let mut rng = case_rng(seed, idx);
    let d = rng.random_range(1..=2);
    let gen = |rng: &mut rand_chacha::ChaCha8Rng| -> ULattice<F::Elem> {
        let m: Mat<U<F>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j || rng.random_bool(0.5) {
                            fu.monomial(twodim::sample::nonzero(f, rng), rng.random_range(-1..=1))
                        } else {
                            fu.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ulattice_from_generators(fu, d, &m).unwrap_or_else(|_| ULattice {
            d,
            basis: matrix::identity(fu, d),
        })
    };
    let v = gen(&mut rng);
    let w = gen(&mut rng);
    let (av, bv) = window(fu, &v);
    let (aw, bw) = window(fu, &w);
    let (a, b) = (av.min(aw), bv.max(bw));
    let dim = d as i64 * (b - a);
    if b - a > 3 || dim > if p == 2 { 10 } else { 6 } {
        return None;
    }
    let gens: Vec<Vec<U<F>>> = (0..d)
        .flat_map(|i| {
            (a..b).map(move |s| {
                let mut e = vec![fu.zero(); d];
                e[i] = fu.x_pow(s);
                e
            })
        })
        .collect();
    let (vi, wi) = (
        matrix::inverse(fu, &v.basis).unwrap(),
        matrix::inverse(fu, &w.basis).unwrap(),
    );
    let (mut cv, mut cw) = (0usize, 0usize);
    for_each_combination(fu, p, &gens, |x| {
        cv += in_ulattice(fu, &vi, x) as usize;
        cw += in_ulattice(fu, &wi, x) as usize;
    });
    let log = |mut c: usize| {
        let mut e = 0i64;
        while c > 1 {
            c /= p as usize;
            e += 1;
        }
        e
    };
    let brute = log(cv) - log(cw);
    let m = u_rel_index(fu, &v, &w).unwrap();
    Some(if brute == m {
        Ok(())
    } else {
        Err(format!("instance {idx}: index {m}, counted {brute}"))
    })
}

fn oracle_run<F: FiniteField>(
    k: &KField<F>,
    seed: u64,
    want: usize,
    inst: fn(&KField<F>, u64, u64) -> Option<std::result::Result<(), String>>,
) -> (usize, Vec<String>) {
    let mut done = 0;
    let mut errs = Vec::new();
    let mut idx = 0;
    while done < want && idx < 50 * want as u64 {
        if let Some(r) = inst(k, seed, idx) {
            done += 1;
            if let Err(e) = r {
                errs.push(e);
            }
        }
        idx += 1;
    }
    (done, errs)
}

fn main() {
    let k5 = k_field(PrimeField::with_p(5));
    let k8 = k_field(gf(2, 3));
    let mut ok = true;

    ok &= criterion(
        1,
        "symbol laws over GF(5) and GF(8)",
        Some(Duration::from_secs(5)),
        || {
            merge(vec![
                all_pass(
                    &suites::symbol_laws(&k5, &cfg(1, 500, 2, Flavor::Tilde)),
                    500,
                ),
                all_pass(
                    &suites::symbol_laws(&k8, &cfg(1, 500, 2, Flavor::Tilde)),
                    500,
                ),
            ])
        },
    );

    ok &= criterion(
        2,
        "cocycle identity, n = 1, 2, 3, q = 5",
        Some(Duration::from_secs(60)),
        || {
            let mut parts = Vec::new();
            for fl in [Flavor::Tilde, Flavor::Hat] {
                let ext = Extension::new(k5.clone(), fl);
                let mut cases = Vec::new();
                for n in 1..=3 {
                    cases.extend(suites::cocycle_identity(&ext, n, 100, 2));
                }
                let mut o = all_pass(&cases, 300);
                o.detail = format!("{fl:?}: {}", o.detail);
                parts.push(o);
            }
            merge(parts)
        },
    );

    ok &= criterion(
        3,
        "splitting over GL_2(O) and GL_2(B)",
        Some(Duration::from_secs(60)),
        || {
            let mut parts = Vec::new();
            for fl in [Flavor::Tilde, Flavor::Hat] {
                let ext = Extension::new(k5.clone(), fl);
                for tag in [SplitTag::O, SplitTag::B] {
                    let mut o = all_pass(&splitting_check(&ext, tag, 2, 200, 3), 200);
                    o.detail = format!("{fl:?} {tag:?}: {}", o.detail);
                    parts.push(o);
                }
            }
            merge(parts)
        },
    );

    ok &= criterion(
        4,
        "commutator bridge and calibration",
        Some(Duration::from_secs(60)),
        || {
            let cases = suites::commutator_bridge(&k5, 2, 200, 4);
            let calibrated = cases[..2].iter().all(|c| c.pass);
            let mut o = all_pass(&cases, 202);
            o.ok &= calibrated;
            o.detail = format!(
                "calibration {}, {}",
                if calibrated { "holds" } else { "fails" },
                o.detail
            );
            o
        },
    );

    ok &= criterion(
        5,
        "exhaustive oracle for B-images and relative indices",
        Some(Duration::from_secs(120)),
        || {
            let k2 = k_field(PrimeField::with_p(2));
            let k3 = k_field(PrimeField::with_p(3));
            let runs = [
                ("B-image q=2", oracle_run(&k2, 5, 20, b_image_instance)),
                ("B-image q=3", oracle_run(&k3, 5, 20, b_image_instance)),
                ("index q=2", oracle_run(&k2, 5, 20, rel_index_instance)),
                ("index q=3", oracle_run(&k3, 5, 20, rel_index_instance)),
            ];
            let total: usize = runs.iter().map(|r| r.1 .0).sum();
            let errs: Vec<String> = runs.iter().flat_map(|r| r.1 .1.clone()).collect();
            Outcome {
                ok: errs.is_empty() && total >= 50,
                detail: format!(
                    "{} instances ({}), {} mismatches{}",
                    total,
                    runs.iter()
                        .map(|r| format!("{} {}", r.0, r.1 .0))
                        .collect::<Vec<_>>()
                        .join(", "),
                    errs.len(),
                    errs.first()
                        .map(|e| format!(", first: {e}"))
                        .unwrap_or_default()
                ),
            }
        },
    );

    ok &= criterion(
        6,
        "reciprocity around the origin",
        Some(Duration::from_secs(120)),
        || {
            let mut parts = Vec::new();
            let fixed = suites::recip_point(&k5, 0, 16, 6);
            parts.push(all_pass(&fixed, 3));
            let mut certified = 0;
            let mut failed = 0;
            let mut skipped = 0;
            let mut seed = 6;
            while certified < 100 && seed < 20 {
                let cases: Vec<Case> = suites::recip_point(&k5, 100, 16, seed)
                    .into_iter()
                    .skip(3)
                    .collect();
                let s = Summary::of(&cases);
                failed += s.failed;
                skipped += s.skipped;
                certified += s.passed + s.failed;
                seed += 1;
            }
            parts.push(Outcome {
                ok: failed == 0 && certified >= 100,
                detail: format!(
                    "GF(5) sampled: {certified} certified, {failed} failed, {skipped} unsupported"
                ),
            });
            for p in [2, 3] {
                let kp = k_field(PrimeField::with_p(p));
                let cases: Vec<Case> = suites::recip_point(&kp, 100, 16, 6)
                    .into_iter()
                    .skip(3)
                    .collect();
                let s = Summary::of(&cases);
                parts.push(Outcome {
                    ok: s.failed == 0,
                    detail: format!(
                        "GF({p}) sampled: {} certified, {} failed, {} unsupported",
                        s.passed + s.failed,
                        s.failed,
                        s.skipped
                    ),
                });
            }
            merge(parts)
        },
    );

    ok &= criterion(
        7,
        "reciprocity along t = 0",
        Some(Duration::from_secs(10)),
        || all_pass(&suites::recip_curve(&k5, 200, 7), 200),
    );

    ok &= criterion(
        8,
        "product formula and horizontal symbols",
        Some(Duration::from_secs(5)),
        || all_pass(&suites::horizontal(500, 8), 500),
    );

    ok &= criterion(
        9,
        "block additivity and block order",
        Some(Duration::from_secs(60)),
        || {
            all_pass(
                &suites::block_laws(&Extension::new(k5.clone(), Flavor::Tilde), 100, 9),
                100,
            )
        },
    );

    ok &= criterion(
        10,
        "Satake layer laws",
        Some(Duration::from_secs(30)),
        || all_pass(&suites::satake_laws(&k5, 200, 10), 600),
    );

    ok &= criterion(11, "deterministic reports", None, || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_twodim"))
                .args(["verify", "all", "--seed", "42", "--deterministic"])
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        let same = a.stdout == b.stdout && !a.stdout.is_empty();
        Outcome {
            ok: same && a.status.success() && b.status.success(),
            detail: format!(
                "{} bytes, {}, exit codes {:?}/{:?}",
                a.stdout.len(),
                if same { "identical" } else { "different" },
                a.status.code(),
                b.status.code()
            ),
        }
    });

    println!(
        "acceptance: {}",
        if ok {
            "all criteria pass"
        } else {
            "some criteria fail"
        }
    );
    if !ok {
        std::process::exit(1);
    }
}
