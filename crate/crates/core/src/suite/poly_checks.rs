//! Checks over ℚ: the evaluation subspaces `N_{B,α}` and the integral
//! subspaces `N_q`. Polynomials are random with small integer or
//! fractional coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exactfield::{Field, Rationals, Vector};
use crate::io::{poly_to_json, vector_to_json};
use crate::polyspaces::{
    alpha_f_b, exact_integral, integrate, nba_member, nba_sigma_member, nba_tau_member, nq_member, nq_sigma_member,
    nq_tau_member, omega_member, ratio, support, EvalConfig, IntegralConfig, Poly,
};

use super::checks::rng;
use super::{Entry, Profile, Task};

type Q = BigRational;

fn small_ratio(r: &mut ChaCha8Rng) -> Q {
    ratio(r.gen_range(-5..=5), r.gen_range(1..=4))
}

/// Random polynomial in `vars` variables of total degree at most `deg`;
/// about half the monomials are dropped.
fn random_poly(vars: usize, deg: u32, r: &mut ChaCha8Rng) -> Poly<Rationals> {
    let d = r.gen_range(0..=deg);
    let mut terms = Vec::new();
    let mut exps = vec![vec![]];
    for _ in 0..vars {
        exps = exps.into_iter().flat_map(|e: Vec<u32>| (0..=d).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    for e in exps.into_iter().filter(|e| e.iter().sum::<u32>() <= d) {
        if r.gen_bool(0.5) {
            terms.push((e, small_ratio(r)));
        }
    }
    Poly::from_terms(Rationals, vars, terms).expect("exponents match vars")
}

/// `Π (z_1 - u_{i,1})` over a random subset of the points, times a random
/// polynomial: vanishes on that subset.
fn vanishing_poly(cfg: &EvalConfig<Rationals>, deg: u32, r: &mut ChaCha8Rng) -> Poly<Rationals> {
    let vars = cfg.vars();
    let mut p = random_poly(vars, deg / 2, r);
    for u in cfg.points() {
        if r.gen_bool(0.5) {
            let lin = Poly::variable(Rationals, vars, 0).sub(&Poly::constant(Rationals, vars, u[0].clone())).expect("same ring");
            p = p.mul(&lin).expect("same ring");
        }
    }
    p
}

fn random_config(l: usize, r: &mut ChaCha8Rng) -> EvalConfig<Rationals> {
    let vars = r.gen_range(1..=2);
    let mut points: Vec<Vector<Rationals>> = Vec::new();
    while points.len() < l {
        let u: Vector<Rationals> = (0..vars).map(|_| small_ratio(r)).collect();
        if !points.contains(&u) {
            points.push(u);
        }
    }
    // weights from a tiny range so that subset sums cancel often
    let alpha = (0..l).map(|_| Q::from_integer(BigInt::from(r.gen_range(-2..=2)))).collect();
    EvalConfig::new(Rationals, points, alpha).expect("distinct points")
}

fn config_json(cfg: &EvalConfig<Rationals>) -> Value {
    json!({
        "points": cfg.points().iter().map(|u| vector_to_json(&Rationals, u)).collect::<Vec<_>>(),
        "alpha": vector_to_json(&Rationals, cfg.alpha()),
    })
}

/// Which identities fail for the pair `(f, g)`.
pub(crate) fn nba_failures(cfg: &EvalConfig<Rationals>, f: &Poly<Rationals>, g: &Poly<Rationals>) -> crate::error::Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let fg = f.mul(g)?;
    let cfg_f = cfg.with_alpha(alpha_f_b(f, cfg)?)?;
    if nba_member(&fg, cfg)? != nba_member(g, &cfg_f)? {
        bad.push("colon");
    }
    let vanishes = support(&Rationals, cfg.alpha()).iter().all(|&i| Rationals.is_zero(&g.eval(&cfg.points()[i]).expect("matching vars")));
    if (nba_member(g, cfg)? && nba_sigma_member(g, cfg)?) != vanishes {
        bad.push("zero-set");
    }
    if nba_sigma_member(g, cfg)? && !nba_tau_member(g, cfg)? {
        bad.push("sigma-in-tau");
    }
    Ok(bad)
}

/// Colon, zero-set and inclusion identities of `N_{B,α}` on random data,
/// one entry per number of points.
pub(super) fn evaluation_identities(profile: &Profile) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for l in 1..=4usize {
        let profile = profile.clone();
        let configs = profile.poly_configs / 4 + usize::from(l <= profile.poly_configs % 4);
        out.push(Box::new(move || {
            let e = Entry::new(
                "evaluation-identities",
                "(N:f) is N with weights alpha_i f(u_i); N meet sigma(N) is the polynomials vanishing on the support; sigma inside tau",
                format!("{configs} random configurations with {l} points over Q"),
            );
            let mut r = rng(&profile, &format!("evaluation {l}"));
            let (mut failures, mut checks, mut sigma_hits) = (0u64, 0u64, 0u64);
            let mut witness = None;
            for _ in 0..configs {
                let cfg = random_config(l, &mut r);
                let f = random_poly(cfg.vars(), profile.poly_degree, &mut r);
                for s in 0..profile.poly_samples {
                    let g = if s % 2 == 0 { random_poly(cfg.vars(), profile.poly_degree, &mut r) } else { vanishing_poly(&cfg, profile.poly_degree, &mut r) };
                    checks += 1;
                    sigma_hits += u64::from(nba_sigma_member(&g, &cfg).unwrap_or(false));
                    match nba_failures(&cfg, &f, &g) {
                        Ok(bad) if bad.is_empty() => {}
                        Ok(bad) => {
                            failures += 1;
                            witness.get_or_insert_with(|| {
                                json!({"kind": "nba-identity", "config": config_json(&cfg), "f": poly_to_json(&f), "g": poly_to_json(&g), "failed": bad})
                            });
                        }
                        Err(err) => return e.errored(err),
                    }
                }
            }
            e.compare(json!({"failures": 0}), json!({"failures": failures}))
                .stats(json!({"pairs": checks, "sigma_members": sigma_hits}))
                .witness(witness)
        }));
    }
    out.push(Box::new(move || {
        let e = Entry::new(
            "evaluation-sigma-not-additive",
            "sigma(N) of an evaluation subspace need not be closed under addition",
            "B = {0, 1} in Q, alpha = (1, 1), f = z, g = 1 - z",
        );
        let cfg = EvalConfig::new(Rationals, vec![vec![Q::zero()], vec![Q::one()]], vec![Q::one(), Q::one()]).expect("distinct");
        let z = Poly::variable(Rationals, 1, 0);
        let g = Poly::one(Rationals, 1).sub(&z).expect("same ring");
        let sum = z.add(&g).expect("same ring");
        let computed = (|| -> crate::error::Result<Value> {
            Ok(json!({
                "f": nba_sigma_member(&z, &cfg)?,
                "g": nba_sigma_member(&g, &cfg)?,
                "f+g": nba_sigma_member(&sum, &cfg)?,
            }))
        })();
        match computed {
            Ok(c) => e.compare(json!({"f": true, "g": true, "f+g": false}), c),
            Err(err) => e.errored(err),
        }
    }));
    let profile = profile.clone();
    out.push(Box::new(move || {
        let e = Entry::new(
            "omega-subset-scan",
            "the Gray-code subset scan agrees with listing every nonempty support subset",
            format!("{} random weight vectors over Q", profile.poly_configs),
        );
        let mut r = rng(&profile, "omega");
        let mut mismatches = 0u64;
        let mut witness = None;
        for _ in 0..profile.poly_configs {
            let l = r.gen_range(0..=8);
            let alpha: Vec<Q> = (0..l).map(|_| Q::from_integer(BigInt::from(r.gen_range(-3..=3)))).collect();
            let s = support(&Rationals, &alpha);
            let brute = (1u32..(1 << s.len())).all(|mask| {
                let sum: Q = s.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| alpha[i].clone()).sum();
                !sum.is_zero()
            });
            if omega_member(&Rationals, &alpha).ok() != Some(brute) {
                mismatches += 1;
                witness.get_or_insert_with(|| json!({"kind": "omega", "alpha": vector_to_json(&Rationals, &alpha), "expected": brute}));
            }
        }
        e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches})).witness(witness)
    }));
    out
}

/// `∫_a^b f` from an antiderivative evaluated by Horner's rule, with the
/// product `f·q` formed by coefficient convolution.
fn integral_oracle(f: &[Q], q: &[Q], a: &Q, b: &Q) -> Q {
    let mut prod = vec![Q::zero(); (f.len() + q.len()).saturating_sub(1)];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    // F(z) = Σ c_k z^{k+1}/(k+1)
    let anti: Vec<Q> = std::iter::once(Q::zero())
        .chain(prod.iter().enumerate().map(|(k, c)| c / Q::from_integer(BigInt::from(k + 1))))
        .collect();
    let horner = |z: &Q| anti.iter().rev().fold(Q::zero(), |acc, c| acc * z + c);
    horner(b) - horner(a)
}

fn random_interval(r: &mut ChaCha8Rng) -> (Q, Q) {
    loop {
        let (a, b) = (small_ratio(r), small_ratio(r));
        if a != b {
            return if a < b { (a, b) } else { (b, a) };
        }
    }
}

fn nonzero_poly(deg: u32, r: &mut ChaCha8Rng) -> Poly<Rationals> {
    loop {
        let q = random_poly(1, deg, r);
        if !q.is_zero() {
            return q;
        }
    }
}

fn integral_json(a: &Q, b: &Q, q: &Poly<Rationals>) -> Value {
    json!({"a": Rationals.elem_to_json(a), "b": Rationals.elem_to_json(b), "q": poly_to_json(q)})
}

pub(super) fn integral_battery(profile: &Profile) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    let p = profile.clone();
    out.push(Box::new(move || {
        let e = Entry::new(
            "integral-monomial-rule",
            "the exact integral of f q over [a, b] matches an antiderivative evaluated at the endpoints",
            format!("{} random (f, q, a, b) over Q", p.integral_samples),
        );
        let mut r = rng(&p, "integral rule");
        let mut mismatches = 0u64;
        let mut witness = None;
        for _ in 0..p.integral_samples {
            let (f, q) = (random_poly(1, p.poly_degree, &mut r), random_poly(1, p.poly_degree, &mut r));
            let (a, b) = random_interval(&mut r);
            let cfg = IntegralConfig::new(a.clone(), b.clone(), q.clone()).expect("a < b");
            let got = exact_integral(&f, &cfg).expect("univariate");
            if got != integral_oracle(&f.coeffs(), &q.coeffs(), &a, &b) {
                mismatches += 1;
                witness.get_or_insert_with(|| json!({"kind": "integral", "f": poly_to_json(&f), "config": integral_json(&a, &b, &q)}));
            }
        }
        e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches})).witness(witness)
    }));
    let p = profile.clone();
    out.push(Box::new(move || {
        let e = Entry::new(
            "integral-positivity",
            "for nonzero q and a < b the integral of q^2 is positive, so q itself lies outside N_q",
            format!("{} random nonzero q over Q", p.integral_samples),
        );
        let mut r = rng(&p, "positivity");
        let mut failures = 0u64;
        let mut witness = None;
        for _ in 0..p.integral_samples {
            let q = nonzero_poly(p.poly_degree, &mut r);
            let (a, b) = random_interval(&mut r);
            let sq = integrate(&q.mul(&q).expect("same ring"), &a, &b).expect("univariate");
            // shift q to integrate to zero: then 1 ∈ N_q but q·1 ∉ N_q
            let mean = integrate(&q, &a, &b).expect("univariate") / (&b - &a);
            let q0 = q.sub(&Poly::constant(Rationals, 1, mean)).expect("same ring");
            let cfg0 = (!q0.is_zero()).then(|| IntegralConfig::new(a.clone(), b.clone(), q0.clone()).expect("a < b"));
            let shifted_ok = cfg0.is_none_or(|c| {
                nq_member(&Poly::one(Rationals, 1), &c).unwrap_or(false) && !nq_member(&q0, &c).unwrap_or(true)
            });
            if sq <= Q::zero() || !shifted_ok {
                failures += 1;
                witness.get_or_insert_with(|| json!({"kind": "positivity", "config": integral_json(&a, &b, &q)}));
            }
        }
        e.compare(json!({"failures": 0}), json!({"failures": failures})).witness(witness)
    }));
    let p = profile.clone();
    out.push(Box::new(move || {
        let e = Entry::new(
            "integral-tau-consistency",
            "sigma(N_q) = {0} and tau(N_q) is the complement of N_q together with 0",
            format!("{} random (q, h) over Q", p.integral_samples),
        );
        let mut r = rng(&p, "tau");
        let (mut failures, mut outside, mut inside) = (0u64, 0u64, 0u64);
        let mut witness = None;
        for _ in 0..p.integral_samples {
            let q = nonzero_poly(p.poly_degree, &mut r);
            let (a, b) = random_interval(&mut r);
            let cfg = IntegralConfig::new(a.clone(), b.clone(), q.clone()).expect("a < b");
            let h = random_poly(1, p.poly_degree, &mut r);
            // project h onto N_q along q
            let hq = exact_integral(&h, &cfg).expect("univariate");
            let qq = exact_integral(&q, &cfg).expect("univariate");
            let h_in = h.sub(&q.scale(&(hq.clone() / qq))).expect("same ring");
            let zero = Poly::zero(Rationals, 1);
            let mut ok = nq_sigma_member(&zero, &cfg).unwrap_or(false) && nq_tau_member(&zero, &cfg).unwrap_or(false);
            if !hq.is_zero() {
                outside += 1;
                ok &= nq_tau_member(&h, &cfg).unwrap_or(false) && !nq_sigma_member(&h, &cfg).unwrap_or(true);
            }
            if !h_in.is_zero() {
                inside += 1;
                ok &= nq_member(&h_in, &cfg).unwrap_or(false)
                    && !nq_tau_member(&h_in, &cfg).unwrap_or(true)
                    && !nq_sigma_member(&h_in, &cfg).unwrap_or(true);
            }
            if !ok {
                failures += 1;
                witness.get_or_insert_with(|| json!({"kind": "nq", "h": poly_to_json(&h), "config": integral_json(&a, &b, &q)}));
            }
        }
        e.compare(json!({"failures": 0}), json!({"failures": failures}))
            .stats(json!({"outside_cases": outside, "inside_cases": inside}))
            .witness(witness)
    }));
    out
}

fn q_field(doc: &Value, key: &str) -> crate::error::Result<Q> {
    Rationals.elem_from_json(doc.get(key).ok_or_else(|| crate::error::Error::Invalid(format!("missing key {key:?}")))?)
}

fn key<'a>(doc: &'a Value, k: &str) -> crate::error::Result<&'a Value> {
    doc.get(k).ok_or_else(|| crate::error::Error::Invalid(format!("missing key {k:?}")))
}

fn integral_config_from(doc: &Value) -> crate::error::Result<IntegralConfig> {
    IntegralConfig::new(q_field(doc, "a")?, q_field(doc, "b")?, crate::io::rational_poly_from_json(key(doc, "q")?)?)
}

/// Re-checks a failure document over ℚ: `Ok(true)` when the recorded
/// data really violates the identity it names.
pub(crate) fn recheck_rational_doc(kind: &str, doc: &Value) -> crate::error::Result<bool> {
    use crate::io::{poly_from_json, vector_from_json};
    match kind {
        "nba-identity" => {
            let c = key(doc, "config")?;
            let points = key(c, "points")?
                .as_array()
                .ok_or_else(|| crate::error::Error::Invalid("points must be an array".into()))?
                .iter()
                .map(|u| vector_from_json(&Rationals, u))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let cfg = EvalConfig::new(Rationals, points, vector_from_json(&Rationals, key(c, "alpha")?)?)?;
            let f = poly_from_json(&Rationals, key(doc, "f")?)?;
            let g = poly_from_json(&Rationals, key(doc, "g")?)?;
            Ok(!nba_failures(&cfg, &f, &g)?.is_empty())
        }
        "omega" => {
            let alpha = vector_from_json(&Rationals, key(doc, "alpha")?)?;
            let expected = key(doc, "expected")?.as_bool().ok_or_else(|| crate::error::Error::Invalid("expected must be a boolean".into()))?;
            Ok(omega_member(&Rationals, &alpha)? != expected)
        }
        "integral" => {
            let cfg = integral_config_from(key(doc, "config")?)?;
            let f = crate::io::rational_poly_from_json(key(doc, "f")?)?;
            Ok(exact_integral(&f, &cfg)? != integral_oracle(&f.coeffs(), &cfg.q().coeffs(), cfg.a(), cfg.b()))
        }
        "positivity" => {
            let cfg = integral_config_from(key(doc, "config")?)?;
            let (a, b) = if cfg.a() < cfg.b() { (cfg.a(), cfg.b()) } else { (cfg.b(), cfg.a()) };
            Ok(cfg.q().is_zero() || integrate(&cfg.q().mul(cfg.q())?, a, b)? <= Q::zero())
        }
        "nq" => {
            let cfg = integral_config_from(key(doc, "config")?)?;
            let h = crate::io::rational_poly_from_json(key(doc, "h")?)?;
            let outside = !nq_member(&h, &cfg)?;
            Ok(nq_tau_member(&h, &cfg)? != (h.is_zero() || outside) || nq_sigma_member(&h, &cfg)? != h.is_zero())
        }
        other => Err(crate::error::Error::Invalid(format!("unknown witness kind {other:?}"))),
    }
}
