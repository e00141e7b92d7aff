//! Checks over finite fields: deciders, element sets, stability and the
//! functorial identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{
    matrix_algebra, product_algebra, trace_hyperplane, truncated_poly, upper_triangular, vector_to_matrix, Algebra,
    PowerTable, Theta,
};
use crate::error::Error;
use crate::exactfield::{
    count_subspaces, count_vectors, enumerate_subspaces, enumerate_vectors, index_of_vector, vector_from_index, Caps,
    Field, FiniteField, Matrix, PrimeField, Subspace, Vector,
};
use crate::mathieu::{
    algebra_stability, bruteforce_with_table, check_mathieu_witness, check_stability_witness,
    is_theta_mathieu_bruteforce, quasi_stable_by_classification, stable_by_classification, MathieuDecider, SetKind,
    StableSets,
};
use crate::modules::{
    hom_space, regular_module, right_regular_module, standard_module, triangular_module, ModuleHom, ModuleSpace,
};
use crate::polyspaces::{omega_member, reduce_to_product_algebra, EvalConfig};

use super::docs::{mathieu_doc, membership_doc, stability_doc};
use super::{Entry, Profile, Task};

const KINDS: [SetKind; 2] = [SetKind::Stable, SetKind::QuasiStable];

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).expect("profile primes are validated")
}

pub(super) fn rng(profile: &Profile, salt: &str) -> ChaCha8Rng {
    // FNV-1a over the salt keeps streams independent per entry
    let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(profile.seed ^ h)
}

fn random_vector(f: &PrimeField, dim: usize, rng: &mut ChaCha8Rng) -> Vector<PrimeField> {
    (0..dim).map(|_| f.element(rng.gen_range(0..f.order()))).collect()
}

/// Span of `k` random vectors, `k` uniform in `0..=dim`.
fn random_subspace(f: &PrimeField, dim: usize, rng: &mut ChaCha8Rng) -> Subspace<PrimeField> {
    let k = rng.gen_range(0..=dim);
    let vs: Vec<_> = (0..k).map(|_| random_vector(f, dim, rng)).collect();
    Subspace::span(*f, dim, &vs).expect("vectors of ambient length")
}

/// Up to `n` distinct random subspaces.
fn sample_subspaces(f: &PrimeField, dim: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Subspace<PrimeField>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n && attempts < 20 * n.max(1) {
        attempts += 1;
        let s = random_subspace(f, dim, rng);
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

fn too_big(count: u128, cap: u64) -> bool {
    count > cap as u128
}

fn caps(profile: &Profile) -> Caps {
    Caps { elements: profile.element_cap, subspaces: profile.subspace_cap }
}

fn task(f: impl FnOnce() -> Entry + Send + 'static) -> Task {
    Box::new(f)
}

fn named_algebras(p: u64, dims: &[usize]) -> Vec<(String, Algebra<PrimeField>)> {
    let f = field(p);
    let mut v = vec![
        (format!("F_{p}+F_{p}"), product_algebra(f, 2)),
        (format!("F_{p}[x]/(x^2)"), truncated_poly(f, 2)),
        (format!("T_2(F_{p})"), upper_triangular(f, 2)),
    ];
    for &n in dims.iter().filter(|&&n| n >= 2) {
        v.push((format!("M_{n}(F_{p})"), matrix_algebra(f, n)));
    }
    v
}

/// Brute force and the idempotent criterion agree, and every negative
/// verdict carries a witness that re-checks.
pub(super) fn oracle_agreement(profile: &Profile) -> Vec<Task> {
    let mut out = Vec::new();
    for &p in &profile.primes {
        for (name, alg) in named_algebras(p, &profile.dims) {
            let profile = profile.clone();
            out.push(task(move || {
                let e = Entry::new(
                    "oracle-agreement",
                    "the definition and the idempotent criterion give the same Mathieu verdict",
                    name.clone(),
                );
                let f = *alg.field();
                let elems = count_vectors(p, alg.dim());
                if too_big(elems, profile.element_cap) {
                    return e.skipped(format!("{elems} elements exceed element_cap"));
                }
                let total = count_subspaces(alg.dim(), p);
                let (subspaces, mode) = if !too_big(total, profile.subspace_cap) {
                    (enumerate_subspaces(&f, alg.dim(), profile.subspace_cap).expect("under cap"), "all")
                } else {
                    let mut r = rng(&profile, &format!("oracle {name}"));
                    (sample_subspaces(&f, alg.dim(), profile.subspace_samples, &mut r), "sample")
                };
                if too_big(subspaces.len() as u128 * elems, profile.work_cap) {
                    return e.skipped(format!("{} subspaces times {elems} elements exceed work_cap", subspaces.len()));
                }
                let table = match PowerTable::new(&alg, profile.element_cap) {
                    Ok(t) => t,
                    Err(err) => return e.errored(err),
                };
                let decider = MathieuDecider::new(&alg, profile.element_cap).expect("under cap");
                let (mut disagree, mut invalid, mut negative) = (0u64, 0u64, 0u64);
                let mut witness = None;
                for j in &subspaces {
                    for t in Theta::ALL {
                        let bf = bruteforce_with_table(&alg, &table, j, t);
                        let id = decider.decide(j, t);
                        if bf.is_mathieu != id.is_mathieu {
                            disagree += 1;
                            if witness.is_none() {
                                let w = bf.witness.as_ref().or(id.witness.as_ref()).expect("one side is negative");
                                witness = Some(mathieu_doc(&alg, j, t, w));
                            }
                            continue;
                        }
                        if !bf.is_mathieu {
                            negative += 1;
                            for w in [&bf.witness, &id.witness].into_iter().flatten() {
                                if check_mathieu_witness(&alg, j, t, w).is_err() {
                                    invalid += 1;
                                    witness.get_or_insert_with(|| mathieu_doc(&alg, j, t, w));
                                }
                            }
                        }
                    }
                }
                e.compare(
                    json!({"disagreements": 0, "invalid_witnesses": 0}),
                    json!({"disagreements": disagree, "invalid_witnesses": invalid}),
                )
                .stats(json!({"subspaces": subspaces.len(), "mode": mode, "verdicts": 4 * subspaces.len(), "non_mathieu": negative}))
                .witness(witness)
            }));
        }
    }
    out
}

/// Compares a computed table against expected membership for every
/// element and ϑ. Returns the mismatch count and a document for the first.
fn compare_table(
    module: &ModuleSpace<PrimeField>,
    n: &Subspace<PrimeField>,
    table: &StableSets<PrimeField>,
    expected: impl Fn(usize, SetKind, Theta) -> bool,
) -> (u64, Option<Value>) {
    let mut mismatches = 0;
    let mut doc = None;
    for i in 0..table.elements().len() {
        for t in Theta::ALL {
            for kind in KINDS {
                let got = table.is_member(i, kind, t);
                if got != expected(i, kind, t) {
                    mismatches += 1;
                    doc.get_or_insert_with(|| membership_doc(module, n, &table.elements()[i], t, kind, got));
                }
            }
        }
    }
    (mismatches, doc)
}

/// `K^n` over `M_n(K)`: both sets are everything for `N = K^n`, everything
/// or zero at `N = 0` depending on ϑ, and zero otherwise.
pub(super) fn standard_module_sets(profile: &Profile) -> Vec<Task> {
    let mut out = Vec::new();
    for &p in &profile.primes {
        for &n in profile.dims.iter().filter(|&&n| n >= 2) {
            let profile = profile.clone();
            out.push(task(move || {
                let e = Entry::new(
                    "standard-module-sets",
                    "for K^n over M_n(K), sigma and tau are K^n when N = K^n, K^n (left) or 0 (other theta) when N = 0, and 0 otherwise",
                    format!("F_{p}^{n} over M_{n}(F_{p})"),
                );
                let alg_size = count_vectors(p, n * n);
                if too_big(alg_size, profile.element_cap) {
                    return e.skipped(format!("M_{n}(F_{p}) has {alg_size} elements, above element_cap"));
                }
                let total = count_subspaces(n, p);
                if too_big(total, profile.subspace_cap) {
                    return e.skipped(format!("{total} subspaces exceed subspace_cap"));
                }
                let f = field(p);
                let m = standard_module(f, n);
                let decider = MathieuDecider::new(m.algebra(), profile.element_cap).expect("under cap");
                let mut mismatches = 0;
                let mut witness = None;
                let subspaces = enumerate_subspaces(&f, n, profile.subspace_cap).expect("under cap");
                for sub in &subspaces {
                    let table = match StableSets::with_decider(&m, sub, &decider, profile.element_cap) {
                        Ok(t) => t,
                        Err(err) => return e.errored(err),
                    };
                    let zero = f.zero();
                    let expected = |i: usize, _k: SetKind, t: Theta| {
                        let u = &table.elements()[i];
                        if sub.is_full() {
                            true
                        } else if sub.is_zero() {
                            t == Theta::Left || u.iter().all(|x| *x == zero)
                        } else {
                            u.iter().all(|x| *x == zero)
                        }
                    };
                    let (mm, doc) = compare_table(&m, sub, &table, expected);
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"subspaces": subspaces.len(), "comparisons": subspaces.len() as u128 * count_vectors(p, n) * 8}))
                    .witness(witness)
            }));
        }
    }
    out
}

/// `Some(λ)` when `m = λ·I` with `λ ≠ 0`.
fn nonzero_scalar(m: &Matrix<PrimeField>) -> Option<u32> {
    let f = m.field();
    let l = *m.get(0, 0);
    if f.is_zero(&l) {
        return None;
    }
    let n = m.rows();
    let ok = (0..n).all(|r| (0..n).all(|c| *m.get(r, c) == if r == c { l } else { 0 }));
    ok.then_some(l)
}

/// For `H_X = {Y : Tr(YX) = 0}` in the regular module of `M_n(F_p)`:
/// `σ(H_X) = {Y : YX = 0}`; `τ(H_X)` adds `{Y : YX ∼ I}` when `p > n`.
pub(super) fn trace_hyperplane_sets(profile: &Profile) -> Vec<Task> {
    let mut out = Vec::new();
    for &p in &profile.primes {
        for &n in profile.dims.iter().filter(|&&n| n >= 2) {
            let profile = profile.clone();
            out.push(task(move || {
                let e = Entry::new(
                    "trace-hyperplane-sets",
                    "sigma(H_X) = {Y : YX = 0}; tau(H_X) = {Y : YX = 0 or YX = cI, c != 0} if p > n, else tau = sigma",
                    format!("all X in M_{n}(F_{p})"),
                );
                let size = count_vectors(p, n * n);
                if too_big(size, profile.element_cap) || too_big(size * size, profile.work_cap) {
                    return e.skipped(format!("{size}^2 (X, Y) pairs exceed work_cap"));
                }
                let f = field(p);
                let alg = matrix_algebra(f, n);
                let reg = regular_module(&alg);
                let decider = MathieuDecider::new(&alg, profile.element_cap).expect("under cap");
                let mats: Vec<Matrix<PrimeField>> = enumerate_vectors(&f, n * n, profile.element_cap)
                    .expect("under cap")
                    .map(|v| vector_to_matrix(&f, n, &v))
                    .collect();
                let mut mismatches = 0;
                let mut witness = None;
                let (mut sigma_size, mut tau_size) = (0u64, 0u64);
                for x in &mats {
                    let h = trace_hyperplane(&f, n, x);
                    let table = StableSets::with_decider(&reg, &h, &decider, profile.element_cap).expect("under cap");
                    let shape: Vec<(bool, bool)> = mats
                        .iter()
                        .map(|y| {
                            let yx = y.mul(x).expect("square");
                            (yx.is_zero(), nonzero_scalar(&yx).is_some())
                        })
                        .collect();
                    let expected = |i: usize, k: SetKind, _t: Theta| {
                        let (zero, scalar) = shape[i];
                        match k {
                            SetKind::Stable => zero,
                            SetKind::QuasiStable => zero || (p as usize > n && scalar),
                        }
                    };
                    sigma_size += shape.iter().filter(|s| s.0).count() as u64;
                    tau_size += shape.iter().filter(|s| s.0 || (p as usize > n && s.1)).count() as u64;
                    let (mm, doc) = compare_table(&reg, &h, &table, expected);
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"pairs": size * size, "sigma_members": sigma_size, "tau_members": tau_size}))
                    .witness(witness)
            }));
        }
    }
    out
}

/// A codimension-one `H_X`, `X ≠ 0`, is Mathieu iff `p > n` and `X ∼ I`.
pub(super) fn codimension_one(profile: &Profile) -> Vec<Task> {
    let mut out = Vec::new();
    for &p in &profile.primes {
        for &n in profile.dims.iter().filter(|&&n| n >= 2) {
            let profile = profile.clone();
            out.push(task(move || {
                let e = Entry::new(
                    "codimension-one",
                    "a hyperplane H_X of M_n(K) is Mathieu exactly when p > n and X is a nonzero scalar matrix",
                    format!("all X != 0 in M_{n}(F_{p}), all theta"),
                );
                let size = count_vectors(p, n * n);
                if too_big(size, profile.element_cap) {
                    return e.skipped(format!("{size} elements exceed element_cap"));
                }
                let f = field(p);
                let alg = matrix_algebra(f, n);
                let decider = MathieuDecider::new(&alg, profile.element_cap).expect("under cap");
                let mut mismatches = 0;
                let mut mathieu = 0;
                let mut witness = None;
                for v in enumerate_vectors(&f, n * n, profile.element_cap).expect("under cap").skip(1) {
                    let x = vector_to_matrix(&f, n, &v);
                    let h = trace_hyperplane(&f, n, &x);
                    let expect = p as usize > n && nonzero_scalar(&x).is_some();
                    for t in Theta::ALL {
                        let d = decider.decide(&h, t);
                        mathieu += d.is_mathieu as u64;
                        if d.is_mathieu != expect {
                            mismatches += 1;
                            if witness.is_none() {
                                let w = d.witness.or_else(|| {
                                    is_theta_mathieu_bruteforce(&alg, &h, t, profile.element_cap).ok().and_then(|b| b.witness)
                                });
                                witness = w.map(|w| mathieu_doc(&alg, &h, t, &w));
                            }
                        }
                    }
                }
                let expected_mathieu = if p as usize > n { 4 * (p - 1) } else { 0 };
                e.compare(
                    json!({"mismatches": 0, "mathieu_hyperplanes": expected_mathieu}),
                    json!({"mismatches": mismatches, "mathieu_hyperplanes": mathieu}),
                )
                .witness(witness)
            }));
        }
    }
    out
}

fn module_zoo(p: u64) -> Vec<(String, ModuleSpace<PrimeField>)> {
    let f = field(p);
    let std2 = standard_module(f, 2);
    vec![
        (format!("F_{p}^2 over M_2"), std2.clone()),
        (format!("F_{p}^2+F_{p}^2 over M_2"), std2.direct_sum(&std2).expect("same algebra")),
        (format!("F_{p}^2 over T_2"), triangular_module(f, 2)),
        (format!("F_{p}^3 over T_3"), triangular_module(f, 3)),
        (format!("regular F_{p}+F_{p}"), regular_module(&product_algebra(f, 2))),
        (format!("regular F_{p}[x]/(x^3)"), regular_module(&truncated_poly(f, 3))),
        (format!("regular T_2(F_{p})"), regular_module(&upper_triangular(f, 2))),
        (format!("right regular T_2(F_{p})"), right_regular_module(&upper_triangular(f, 2))),
        (format!("regular M_2(F_{p})"), regular_module(&matrix_algebra(f, 2))),
    ]
}

fn small_primes(profile: &Profile) -> Vec<u64> {
    profile.primes.iter().copied().filter(|&p| p <= 3).collect()
}

/// Splits `total` samples over `parts` entries, earlier entries first.
fn share(total: usize, parts: usize, i: usize) -> usize {
    total / parts + usize::from(i < total % parts)
}

fn module_fits(m: &ModuleSpace<PrimeField>, profile: &Profile) -> Option<String> {
    let p = m.field().order();
    let a = count_vectors(p, m.algebra().dim());
    let e = count_vectors(p, m.dim());
    if too_big(a, profile.element_cap) || too_big(e, profile.element_cap) {
        Some(format!("algebra or module exceeds element_cap ({a}, {e})"))
    } else {
        None
    }
}

/// `I_N = N ∩ σ_ϑ(N) = N ∩ τ_ϑ(N)` with `I_N` the largest submodule in `N`.
pub(super) fn max_submodule(profile: &Profile) -> Vec<Task> {
    let zoo: Vec<(u64, String, ModuleSpace<PrimeField>)> = small_primes(profile)
        .into_iter()
        .flat_map(|p| module_zoo(p).into_iter().map(move |(n, m)| (p, n, m)))
        .collect();
    let parts = zoo.len();
    zoo.into_iter()
        .enumerate()
        .map(|(i, (_, name, m))| {
            let profile = profile.clone();
            let pairs = share(profile.module_pairs, parts, i);
            task(move || {
                let e = Entry::new(
                    "max-submodule",
                    "the largest submodule inside N equals N meet sigma(N) and N meet tau(N) for every theta",
                    format!("{pairs} random N in {name}"),
                );
                if let Some(why) = module_fits(&m, &profile) {
                    return e.skipped(why);
                }
                let f = *m.field();
                let decider = MathieuDecider::new(m.algebra(), profile.element_cap).expect("under cap");
                let mut r = rng(&profile, &format!("max-submodule {name}"));
                let mut mismatches = 0;
                let mut witness = None;
                let mut proper = 0;
                for _ in 0..pairs {
                    let n = random_subspace(&f, m.dim(), &mut r);
                    let core = m.max_submodule(&n);
                    proper += usize::from(core != n);
                    let table = StableSets::with_decider(&m, &n, &decider, profile.element_cap).expect("under cap");
                    let (mm, doc) = compare_table(&m, &n, &table, |i, k, t| {
                        let u = &table.elements()[i];
                        // outside N the sets are unconstrained here
                        if n.contains(u) { core.contains(u) } else { table.is_member(i, k, t) }
                    });
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"pairs": pairs, "non_submodule_pairs": proper}))
                    .witness(witness)
            })
        })
        .collect()
}

/// Exhaustive stability per ϑ next to the classification answer, with
/// every counterexample re-checked.
fn classification_task(profile: &Profile, id: &'static str, claim: &'static str, name: String, alg: Algebra<PrimeField>, expect: bool, kind: SetKind) -> Task {
    let profile = profile.clone();
    task(move || {
        let e = Entry::new(id, claim, name);
        let p = alg.field().order();
        if too_big(count_vectors(p, alg.dim()), profile.element_cap) || too_big(count_subspaces(alg.dim(), p), profile.subspace_cap) {
            return e.skipped("algebra or its subspace lattice exceeds the caps");
        }
        let reg = regular_module(&alg);
        let mut computed = serde_json::Map::new();
        let mut witness = None;
        let mut bad_witnesses = 0;
        for t in Theta::ALL {
            let v = match algebra_stability(&alg, t, kind, caps(&profile)) {
                Ok(v) => v,
                Err(err) => return e.errored(err),
            };
            computed.insert(t.short_name().into(), json!(v.holds));
            if let Some(w) = &v.witness {
                if check_stability_witness(&reg, t, kind, w).is_err() {
                    bad_witnesses += 1;
                }
                witness.get_or_insert_with(|| stability_doc(&reg, t, kind, w));
            }
        }
        let classified = match kind {
            SetKind::QuasiStable => quasi_stable_by_classification(&alg, profile.element_cap),
            SetKind::Stable => stable_by_classification(&alg, profile.element_cap),
        };
        computed.insert("classification".into(), json!(classified.ok()));
        computed.insert("invalid_witnesses".into(), json!(bad_witnesses));
        let expected = json!({
            "left": expect, "right": expect, "pre": expect, "two": expect,
            "classification": Some(expect), "invalid_witnesses": 0,
        });
        e.compare(expected, Value::Object(computed)).witness(witness)
    })
}

pub(super) fn quasi_stable_classification(profile: &Profile) -> Vec<Task> {
    let claim = "every subspace avoiding 1 is Mathieu exactly for K, K+K and local algebras";
    let mut out = Vec::new();
    for &p in &profile.primes {
        let f = field(p);
        let cases = [
            (format!("F_{p}"), product_algebra(f, 1), true),
            (format!("F_{p}+F_{p}"), product_algebra(f, 2), true),
            (format!("F_{p}[x]/(x^2)"), truncated_poly(f, 2), true),
            (format!("F_{p}[x]/(x^3)"), truncated_poly(f, 3), true),
            (format!("F_{p}+F_{p}+F_{p}"), product_algebra(f, 3), false),
            (format!("T_2(F_{p})"), upper_triangular(f, 2), false),
            (format!("M_2(F_{p})"), matrix_algebra(f, 2), false),
        ];
        for (name, alg, expect) in cases {
            out.push(classification_task(profile, "quasi-stable-classification", claim, name, alg, expect, SetKind::QuasiStable));
        }
    }
    out
}

pub(super) fn stable_classification(profile: &Profile) -> Vec<Task> {
    let claim = "every subspace avoiding 1 is an ideal exactly for K and for F_2+F_2";
    let mut out = Vec::new();
    for &p in &profile.primes {
        let f = field(p);
        let cases = [
            (format!("F_{p}"), product_algebra(f, 1), true),
            (format!("F_{p}+F_{p}"), product_algebra(f, 2), p == 2),
            (format!("F_{p}[x]/(x^2)"), truncated_poly(f, 2), false),
        ];
        for (name, alg, expect) in cases {
            out.push(classification_task(profile, "stable-classification", claim, name, alg, expect, SetKind::Stable));
        }
    }
    out
}

/// Points `0, 1, 2, …` of `F_p^vars` in index order.
fn grid_config(f: PrimeField, l: usize, alpha: Vector<PrimeField>) -> crate::error::Result<EvalConfig<PrimeField>> {
    let vars = if l as u64 <= f.order() { 1 } else { 2 };
    let points = (0..l as u64).map(|i| vector_from_index(&f, vars, i)).collect();
    EvalConfig::new(f, points, alpha)
}

/// The hyperplane `Σ α_i x_i = 0` of `F_p^ℓ` is Mathieu iff `α ∈ Ω_ℓ`.
pub(super) fn product_algebra_reduction(profile: &Profile) -> Vec<Task> {
    let mut out = Vec::new();
    for &p in &profile.primes {
        for l in 1..=3usize {
            let profile = profile.clone();
            out.push(task(move || {
                let e = Entry::new(
                    "product-algebra-reduction",
                    "the alpha-hyperplane of K^l is Mathieu iff every nonempty subset sum of the support of alpha is nonzero",
                    format!("all alpha in F_{p}^{l}, all theta"),
                );
                let f = field(p);
                let count = count_vectors(p, l);
                if too_big(count, profile.element_cap) {
                    return e.skipped("too many weight vectors");
                }
                let mut decider: Option<MathieuDecider<PrimeField>> = None;
                let (mut mismatches, mut in_omega) = (0u64, 0u64);
                let mut witness = None;
                for alpha in enumerate_vectors(&f, l, profile.element_cap).expect("under cap") {
                    let cfg = grid_config(f, l, alpha.clone()).expect("distinct grid points");
                    let (alg, h) = match reduce_to_product_algebra(&cfg) {
                        Ok(x) => x,
                        Err(err) => return e.errored(err),
                    };
                    let d = decider.get_or_insert_with(|| MathieuDecider::new(&alg, profile.element_cap).expect("tiny"));
                    let omega = omega_member(&f, &alpha).expect("short support");
                    in_omega += omega as u64;
                    for t in Theta::ALL {
                        let v = d.decide(&h, t);
                        if v.is_mathieu != omega {
                            mismatches += 1;
                            if let (None, Some(w)) = (&witness, &v.witness) {
                                witness = Some(mathieu_doc(&alg, &h, t, w));
                            }
                        }
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"weights": count, "in_omega": in_omega}))
                    .witness(witness)
            }));
        }
    }
    out
}

fn hom_pairs(p: u64) -> Vec<(String, ModuleSpace<PrimeField>, ModuleSpace<PrimeField>)> {
    let f = field(p);
    let std2 = standard_module(f, 2);
    let sum = std2.direct_sum(&std2).expect("same algebra");
    let reg_m2 = regular_module(&matrix_algebra(f, 2));
    let reg_t2 = regular_module(&upper_triangular(f, 2));
    let tri2 = triangular_module(f, 2);
    let reg_tp = regular_module(&truncated_poly(f, 3));
    let reg_pr = regular_module(&product_algebra(f, 2));
    vec![
        (format!("F_{p}^2 -> F_{p}^2+F_{p}^2 over M_2"), std2.clone(), sum.clone()),
        (format!("F_{p}^2+F_{p}^2 -> F_{p}^2 over M_2"), sum, std2.clone()),
        (format!("regular M_2(F_{p}) -> F_{p}^2"), reg_m2, std2),
        (format!("regular T_2(F_{p}) -> F_{p}^2 over T_2"), reg_t2.clone(), tri2.clone()),
        (format!("F_{p}^2 -> F_{p}^2 over T_2"), tri2, triangular_module(f, 2)),
        (format!("regular T_2(F_{p}) endomorphisms"), reg_t2.clone(), reg_t2),
        (format!("regular F_{p}[x]/(x^3) endomorphisms"), reg_tp.clone(), reg_tp),
        (format!("regular F_{p}+F_{p} endomorphisms"), reg_pr.clone(), reg_pr),
    ]
}

/// Membership of `u` in the source table against membership of `map(u)`
/// in the target table, for every `u`, ϑ and set.
fn compare_along(
    source: &ModuleSpace<PrimeField>,
    source_sub: &Subspace<PrimeField>,
    s: &StableSets<PrimeField>,
    t: &StableSets<PrimeField>,
    map: impl Fn(&[u32]) -> Vector<PrimeField>,
) -> (u64, Option<Value>) {
    let f = *source.field();
    let image: Vec<usize> = s.elements().iter().map(|u| index_of_vector(&f, &map(u)) as usize).collect();
    compare_table(source, source_sub, s, |i, k, th| t.is_member(image[i], k, th))
}

/// `φ⁻¹(τ_ϑ(H)) = τ_ϑ(φ⁻¹(H))`, and the same for σ.
pub(super) fn pullbacks(profile: &Profile) -> Vec<Task> {
    let pairs: Vec<_> = small_primes(profile).into_iter().flat_map(hom_pairs).collect();
    let parts = pairs.len();
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (name, src, tgt))| {
            let profile = profile.clone();
            let samples = share(profile.hom_samples, parts, i);
            task(move || {
                let e = Entry::new(
                    "pullback-along-module-maps",
                    "for a module map phi, the preimage of tau(H) is tau of the preimage of H, and likewise for sigma",
                    format!("{samples} random maps {name}"),
                );
                if let Some(why) = module_fits(&src, &profile).or_else(|| module_fits(&tgt, &profile)) {
                    return e.skipped(why);
                }
                let f = *src.field();
                let basis = match hom_space(&src, &tgt) {
                    Ok(b) => b,
                    Err(err) => return e.errored(err),
                };
                let decider = MathieuDecider::new(src.algebra(), profile.element_cap).expect("under cap");
                let mut r = rng(&profile, &format!("pullback {name}"));
                let mut mismatches = 0;
                let mut witness = None;
                let mut nonzero = 0;
                for _ in 0..samples {
                    let mut m = Matrix::zeros(f, tgt.dim(), src.dim());
                    for b in &basis {
                        let c = f.element(r.gen_range(0..f.order()));
                        m = m.add(&b.scale(&c)).expect("same shape");
                    }
                    nonzero += usize::from(!m.is_zero());
                    let phi = match ModuleHom::new(src.clone(), tgt.clone(), m) {
                        Ok(phi) => phi,
                        Err(err) => return e.errored(err),
                    };
                    let h = random_subspace(&f, tgt.dim(), &mut r);
                    let pre = phi.pullback_subspace(&h).expect("shapes agree");
                    let ts = StableSets::with_decider(&tgt, &h, &decider, profile.element_cap).expect("under cap");
                    let ss = StableSets::with_decider(&src, &pre, &decider, profile.element_cap).expect("under cap");
                    let (mm, doc) = compare_along(&src, &pre, &ss, &ts, |u| phi.apply(u));
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"maps": samples, "nonzero_maps": nonzero, "hom_dimension": basis.len()}))
                    .witness(witness)
            })
        })
        .collect()
}

/// For a submodule `V ⊆ N`: `τ_ϑ(N) = π⁻¹(τ_ϑ(N/V))`, and the same for σ.
pub(super) fn quotient_modules(profile: &Profile) -> Vec<Task> {
    let zoo: Vec<_> = small_primes(profile).into_iter().flat_map(module_zoo).collect();
    let parts = zoo.len();
    zoo.into_iter()
        .enumerate()
        .map(|(i, (name, m))| {
            let profile = profile.clone();
            let samples = share(profile.hom_samples, parts, i);
            task(move || {
                let e = Entry::new(
                    "quotient-module",
                    "for a submodule V inside N, tau(N) is the preimage of tau(N/V) under M -> M/V, and likewise for sigma",
                    format!("{samples} random (V, N) in {name}"),
                );
                if let Some(why) = module_fits(&m, &profile) {
                    return e.skipped(why);
                }
                let f = *m.field();
                let decider = MathieuDecider::new(m.algebra(), profile.element_cap).expect("under cap");
                let mut r = rng(&profile, &format!("quotient {name}"));
                let mut mismatches = 0;
                let mut witness = None;
                let mut nonzero_v = 0;
                for s in 0..samples {
                    // alternate cyclic submodules and cores of random subspaces
                    let v = if s % 2 == 0 {
                        m.cyclic_submodule(&random_vector(&f, m.dim(), &mut r))
                    } else {
                        m.max_submodule(&random_subspace(&f, m.dim(), &mut r))
                    };
                    nonzero_v += usize::from(!v.is_zero());
                    let n = v.sum(&random_subspace(&f, m.dim(), &mut r)).expect("same ambient");
                    let (q, pi) = match m.quotient(&v) {
                        Ok(x) => x,
                        Err(err) => return e.errored(err),
                    };
                    let nq = n.image(pi.matrix()).expect("shapes agree");
                    let ms = StableSets::with_decider(&m, &n, &decider, profile.element_cap).expect("under cap");
                    let qs = StableSets::with_decider(&q, &nq, &decider, profile.element_cap).expect("under cap");
                    let (mm, doc) = compare_along(&m, &n, &ms, &qs, |u| pi.apply(u));
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"samples": samples, "nonzero_submodules": nonzero_v}))
                    .witness(witness)
            })
        })
        .collect()
}

/// For a surjection `ψ: A → A/I` and `J ⊆ A/I`, in the regular modules:
/// `ψ⁻¹(τ_ϑ(J)) = τ_ϑ(ψ⁻¹(J))`, and the same for σ.
pub(super) fn algebra_surjections(profile: &Profile) -> Vec<Task> {
    let mut cases = Vec::new();
    for p in small_primes(profile) {
        let f = field(p);
        let span = |d: usize, vs: &[Vec<u32>]| Subspace::span(f, d, vs).expect("basis vectors");
        cases.push((format!("F_{p}[x]/(x^3) -> /(x^2)"), truncated_poly(f, 3), span(3, &[vec![0, 0, 1]])));
        cases.push((format!("F_{p}[x]/(x^3) -> /(x)"), truncated_poly(f, 3), span(3, &[vec![0, 1, 0], vec![0, 0, 1]])));
        cases.push((format!("T_2(F_{p}) -> /(E_12)"), upper_triangular(f, 2), span(3, &[vec![0, 1, 0]])));
        cases.push((format!("F_{p}^3 -> /(e_3)"), product_algebra(f, 3), span(3, &[vec![0, 0, 1]])));
        cases.push((format!("M_2(F_{p}) -> itself"), matrix_algebra(f, 2), Subspace::zero(f, 4)));
    }
    let parts = cases.len();
    cases
        .into_iter()
        .enumerate()
        .map(|(i, (name, alg, ideal))| {
            let profile = profile.clone();
            let samples = share(profile.hom_samples, parts, i);
            task(move || {
                let e = Entry::new(
                    "algebra-surjection",
                    "for a surjection psi of algebras, the preimage of tau(J) is tau of the preimage of J, and likewise for sigma",
                    format!("{samples} random J, {name}"),
                );
                let f = *alg.field();
                if too_big(count_vectors(f.order(), alg.dim()), profile.element_cap) {
                    return e.skipped("algebra exceeds element_cap");
                }
                let (quot, psi) = match alg.quotient(&ideal) {
                    Ok(x) => x,
                    Err(err) => return e.errored(err),
                };
                if !psi.is_surjective() {
                    return e.errored(Error::Invalid("quotient map is not onto".into()));
                }
                let (ra, rq) = (regular_module(&alg), regular_module(&quot));
                let da = MathieuDecider::new(&alg, profile.element_cap).expect("under cap");
                let dq = MathieuDecider::new(&quot, profile.element_cap).expect("under cap");
                let mut r = rng(&profile, &format!("surjection {name}"));
                let mut mismatches = 0;
                let mut witness = None;
                for _ in 0..samples {
                    let j = random_subspace(&f, quot.dim(), &mut r);
                    let pre = psi.pullback(&j).expect("shapes agree");
                    let sa = StableSets::with_decider(&ra, &pre, &da, profile.element_cap).expect("under cap");
                    let sq = StableSets::with_decider(&rq, &j, &dq, profile.element_cap).expect("under cap");
                    let (mm, doc) = compare_along(&ra, &pre, &sa, &sq, |a| psi.apply(a));
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"samples": samples, "quotient_dimension": quot.dim()}))
                    .witness(witness)
            })
        })
        .collect()
}

/// Over a division algebra every element is in `σ_ϑ(J)` and `τ_ϑ(J)`
/// for `J = 0` and `J = A`, the only subspaces of `F_p`.
pub(super) fn division_algebras(profile: &Profile) -> Vec<Task> {
    profile
        .primes
        .iter()
        .map(|&p| {
            task(move || {
                let e = Entry::new(
                    "division-algebra",
                    "over a division algebra sigma(J) = tau(J) = A for every proper J, and for J = A",
                    format!("F_{p} over itself"),
                );
                let f = field(p);
                let alg = product_algebra(f, 1);
                let m = regular_module(&alg);
                let mut mismatches = 0;
                let mut witness = None;
                for j in [Subspace::zero(f, 1), Subspace::full(f, 1)] {
                    let t = StableSets::new(&m, &j, 1 << 20).expect("tiny");
                    let (mm, doc) = compare_table(&m, &j, &t, |_, _, _| true);
                    mismatches += mm;
                    if witness.is_none() {
                        witness = doc;
                    }
                }
                e.compare(json!({"mismatches": 0}), json!({"mismatches": mismatches}))
                    .stats(json!({"elements": p, "subspaces": 2}))
                    .witness(witness)
            })
        })
        .collect()
}
