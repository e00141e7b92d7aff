//! `mathieu`: command-line front end for the deciders and the
//! verification battery.
//!
//! Exit codes: 0 when the check passes (or a query succeeds), 1 when a
//! check fails, 2 on usage, schema or capacity errors.

mod input;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mathieu_core::algebra::{
    ideal_violation, matrix_algebra, product_algebra, radical_of_subspace, trace_hyperplane, truncated_poly,
    upper_triangular, Algebra, Theta,
};
use mathieu_core::exactfield::{Caps, Field, FieldTag, PrimeField, Rationals, Subspace};
use mathieu_core::io::{
    algebra_from_json, algebra_to_json, ideal_witness_to_json, module_from_json,
    module_to_json, poly_from_json, rational_poly_from_json, subspace_to_json, vector_to_json, vectors_to_json,
};
use mathieu_core::mathieu::{
    algebra_stability, is_theta_ideal, is_theta_mathieu_bruteforce, module_stability, quasi_stable_by_classification,
    stable_by_classification, MathieuDecider, SetKind, StableSets,
};
use mathieu_core::modules::{regular_module, standard_module, triangular_module, ModuleSpace};
use mathieu_core::polyspaces::{
    exact_integral, nba_member, nba_sigma_member, nba_tau_member, nq_member, nq_sigma_member, nq_tau_member,
    omega_member, EvalConfig, IntegralConfig, Poly,
};
use mathieu_core::suite::{mathieu_doc, run_suite, stability_doc, verify_witness_doc, Profile};

use input::{inline_algebra, read, resolve_field};

#[derive(Parser)]
#[command(name = "mathieu", version, about = "Mathieu subspaces of finite-dimensional algebras and modules")]
struct Cli {
    /// A prime p, or Q. Documents that name a field take precedence (a conflict is an error).
    #[arg(long, global = true)]
    field: Option<String>,
    /// left, right, pre, two, or all.
    #[arg(long, global = true, default_value = "left")]
    theta: String,
    /// Largest number of elements or subspaces any scan may visit.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Algebra, module and subspace arguments take inline JSON, a file path or `-`.
#[derive(Subcommand)]
enum Verb {
    /// Emit a builder's algebra, module or subspace as JSON.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Size parameter: n for matrices, l for products, k for K[x]/(x^k).
        #[arg(short, default_value_t = 2)]
        n: usize,
        /// Matrix X (list of rows) for trace-hyperplane.
        #[arg(long)]
        x: Option<String>,
        /// Algebra for regular-module.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Is J a theta-Mathieu subspace of A?
    IsMathieu {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subspace: String,
        #[arg(long, value_enum, default_value_t = Oracle::Idempotent)]
        oracle: Oracle,
    },
    /// Is J a theta-ideal of A?
    IsIdeal {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subspace: String,
    },
    /// Stable elements: u with (N:u) a theta-ideal.
    Sigma(SetArgs),
    /// Quasi-stable elements: u with (N:u) theta-Mathieu.
    Tau(SetArgs),
    /// Largest submodule contained in N.
    MaxSubmodule {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        subspace: String,
    },
    /// Elements whose powers eventually lie in J (default J = 0: the nilpotents).
    Radical {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subspace: Option<String>,
    },
    /// Exhaustive (quasi-)stability of an algebra or module.
    QuasiStable {
        #[command(flatten)]
        target: Target,
        /// Check stability (ideals) instead of quasi-stability.
        #[arg(long)]
        stable: bool,
    },
    /// Is every nonempty support-subset sum of alpha nonzero?
    Omega {
        #[arg(long)]
        alpha: String,
    },
    /// Evaluation subspace N_{B,alpha} of K[z_1..z_n].
    Nba {
        #[arg(value_enum)]
        query: Query,
        /// Points, a list of coordinate lists.
        #[arg(long)]
        points: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        poly: String,
    },
    /// Integral subspace N_q = {f : int_a^b f q = 0} of Q[z].
    Nq {
        #[arg(value_enum)]
        query: Query,
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        poly: String,
    },
    /// Exact value of int_a^b f q.
    Integral {
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        poly: String,
    },
    /// Run the verification battery.
    VerifyPaper {
        /// default, quick, empty, or a JSON profile file.
        #[arg(long, default_value = "default")]
        profile: String,
        /// Also write the JSON report here.
        #[arg(long)]
        output: Option<String>,
        /// Include per-entry runtimes.
        #[arg(long)]
        timing: bool,
    },
    /// Re-check a witness document, a list of them, or every witness in a report.
    VerifyWitness { document: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Matrix,
    Product,
    Truncated,
    UpperTriangular,
    StandardModule,
    TriangularModule,
    RegularModule,
    TraceHyperplane,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Idempotent,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Member,
    Sigma,
    Tau,
}

#[derive(Args)]
struct Target {
    /// A module document.
    #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
    module: Option<String>,
    /// An algebra, taken as its regular module.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Args)]
struct SetArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    subspace: String,
    /// Test one element instead of listing the set.
    #[arg(long)]
    element: Option<String>,
}

#[derive(Args)]
struct Interval {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Weight q; defaults to 1.
    #[arg(long)]
    q: Option<String>,
}

/// What a command reports.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, text: impl Into<String>, ok: bool) -> Self {
        Outcome { json, text: text.into(), ok }
    }
}

struct Ctx {
    field: Option<FieldTag>,
    thetas: Vec<Theta>,
    cap: u64,
}

fn finite(tag: FieldTag) -> Result<PrimeField> {
    match tag {
        FieldTag::Prime(p) => Ok(PrimeField::new(p as u64)?),
        FieldTag::Rational => Err(mathieu_core::Error::Unsupported("enumerative commands need a finite field F_p".into()).into()),
    }
}

fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.fmt_elem(x)).collect();
    format!("({})", parts.join(", "))
}

fn load_algebra(ctx: &Ctx, arg: &str) -> Result<(Value, FieldTag)> {
    let v = read(arg)?.value;
    let tag = resolve_field(Some(&v), ctx.field, None)?;
    Ok((v, tag))
}

/// Module document (with its algebra inlined) or an algebra's regular module.
fn load_target(ctx: &Ctx, t: &Target) -> Result<(Value, bool, FieldTag)> {
    let (v, regular) = match (&t.module, &t.algebra) {
        (Some(m), _) => (inline_algebra(read(m)?)?, false),
        (None, Some(a)) => (read(a)?.value, true),
        (None, None) => bail!("pass --module or --algebra"),
    };
    let tag = resolve_field(Some(&v), ctx.field, None)?;
    Ok((v, regular, tag))
}

fn build_module<F: Field>(f: &F, v: &Value, regular: bool) -> Result<ModuleSpace<F>> {
    Ok(if regular { regular_module(&algebra_from_json(f, v)?) } else { module_from_json(f, v)? })
}

fn gen<F: Field>(f: F, kind: GenKind, n: usize, x: Option<&str>, algebra: Option<&str>) -> Result<Outcome> {
    if n == 0 {
        bail!("size must be positive");
    }
    let json = match kind {
        GenKind::Matrix => algebra_to_json(&matrix_algebra(f, n)),
        GenKind::Product => algebra_to_json(&product_algebra(f, n)),
        GenKind::Truncated => algebra_to_json(&truncated_poly(f, n)),
        GenKind::UpperTriangular => algebra_to_json(&upper_triangular(f, n)),
        GenKind::StandardModule => module_to_json(&standard_module(f, n)),
        GenKind::TriangularModule => module_to_json(&triangular_module(f, n)),
        GenKind::RegularModule => {
            let a = read(algebra.ok_or_else(|| anyhow!("regular-module needs --algebra"))?)?.value;
            module_to_json(&regular_module(&algebra_from_json(&f, &a)?))
        }
        GenKind::TraceHyperplane => {
            let xv = read(x.ok_or_else(|| anyhow!("trace-hyperplane needs --x"))?)?.value;
            let m = mathieu_core::io::matrix_from_json(&f, &xv, n, n)?;
            subspace_to_json(&trace_hyperplane(&f, n, &m))
        }
    };
    let text = serde_json::to_string_pretty(&json)?;
    Ok(Outcome::new(json, text, true))
}

fn is_mathieu(ctx: &Ctx, algebra: &str, subspace: &str, oracle: Oracle) -> Result<Outcome> {
    let (av, tag) = load_algebra(ctx, algebra)?;
    let f = finite(tag)?;
    let alg = algebra_from_json(&f, &av)?;
    let j = input::subspace(&f, &read(subspace)?.value, alg.dim())?;
    let decider = MathieuDecider::new(&alg, ctx.cap)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for &t in &ctx.thetas {
        let v = decider.decide(&j, t);
        let mut row = json!({"theta": t, "is_mathieu": v.is_mathieu});
        if oracle != Oracle::Idempotent {
            let b = is_theta_mathieu_bruteforce(&alg, &j, t, ctx.cap)?;
            if b.is_mathieu != v.is_mathieu {
                bail!("internal disagreement between oracles at theta = {t}");
            }
            row["brute_force"] = json!(b.is_mathieu);
        }
        text.push_str(&format!("theta={t}: {}\n", if v.is_mathieu { "Mathieu" } else { "not Mathieu" }));
        if let Some(w) = &v.witness {
            row["witness"] = mathieu_doc(&alg, &j, t, w);
            let b = w.b.as_ref().map_or(String::new(), |b| format!("{} * ", fmt_vec(&f, b)));
            let c = w.c.as_ref().map_or(String::new(), |c| format!(" * {}", fmt_vec(&f, c)));
            text.push_str(&format!("  all powers of a = {} lie in J, but {b}a^{}{c} = {} does not\n", fmt_vec(&f, &w.a), w.m, fmt_vec(&f, &w.product)));
        }
        all &= v.is_mathieu;
        rows.push(row);
    }
    Ok(Outcome::new(json!({"results": rows}), text, all))
}

fn is_ideal<F: Field>(f: F, ctx: &Ctx, av: &Value, subspace: &str) -> Result<Outcome> {
    let alg = algebra_from_json(&f, av)?;
    let j = input::subspace(&f, &read(subspace)?.value, alg.dim())?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for &t in &ctx.thetas {
        let w = ideal_violation(&alg, &j, t);
        let mut row = json!({"theta": t, "is_ideal": w.is_none()});
        text.push_str(&format!("theta={t}: {}\n", if w.is_none() { "ideal" } else { "not an ideal" }));
        if let Some(w) = &w {
            row["witness"] = ideal_witness_to_json(&f, w);
            text.push_str(&format!("  {} in J, product with {} is {} outside J\n", fmt_vec(&f, &w.element), fmt_vec(&f, &w.multiplier), fmt_vec(&f, &w.product)));
        }
        all &= w.is_none();
        rows.push(row);
    }
    if ctx.thetas.contains(&Theta::PreTwoSided) {
        text.push_str("note: pre-two-sided ideals are two-sided ideals\n");
    }
    Ok(Outcome::new(json!({"results": rows}), text, all))
}

fn element_sets(ctx: &Ctx, args: &SetArgs, kind: SetKind) -> Result<Outcome> {
    let (v, regular, tag) = load_target(ctx, &args.target)?;
    let f = finite(tag)?;
    let m = build_module(&f, &v, regular)?;
    let n = input::subspace(&f, &read(&args.subspace)?.value, m.dim())?;
    let decider = MathieuDecider::new(m.algebra(), ctx.cap)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    if let Some(e) = &args.element {
        let u = input::vector(&f, &read(e)?.value, m.dim())?;
        let colon = m.colon(&n, &u);
        for &t in &ctx.thetas {
            let member = match kind {
                SetKind::Stable => is_theta_ideal(m.algebra(), &colon, t),
                SetKind::QuasiStable => decider.is_mathieu(&colon, t),
            };
            ok &= member;
            text.push_str(&format!("theta={t}: {} {} {}(N)\n", fmt_vec(&f, &u), if member { "is in" } else { "is not in" }, kind.name()));
            rows.push(json!({"theta": t, "member": member}));
        }
        text.push_str(&format!("(N:u) has dimension {}\n", colon.dim()));
        let json = json!({"set": kind.name(), "element": vector_to_json(&f, &u), "colon": subspace_to_json(&colon), "results": rows});
        return Ok(Outcome::new(json, text, ok));
    }
    let table = StableSets::with_decider(&m, &n, &decider, ctx.cap)?;
    for &t in &ctx.thetas {
        let members = table.set(kind, t);
        text.push_str(&format!("{}_{t}(N): {} of {} elements\n", kind.name(), members.len(), table.elements().len()));
        for u in &members {
            text.push_str(&format!("  {}\n", fmt_vec(&f, u)));
        }
        rows.push(json!({"theta": t, "size": members.len(), "elements": vectors_to_json(&f, &members)}));
    }
    if kind == SetKind::Stable && ctx.thetas.contains(&Theta::PreTwoSided) {
        text.push_str("note: sigma for pre-two-sided equals sigma for two-sided\n");
    }
    Ok(Outcome::new(json!({"set": kind.name(), "module_size": table.elements().len(), "results": rows}), text, true))
}

fn max_submodule<F: Field>(f: F, v: &Value, regular: bool, subspace: &str) -> Result<Outcome> {
    let m = build_module(&f, v, regular)?;
    let n = input::subspace(&f, &read(subspace)?.value, m.dim())?;
    let core = m.max_submodule(&n);
    let mut text = format!("largest submodule in N has dimension {} (N has {})\n", core.dim(), n.dim());
    for b in core.basis() {
        text.push_str(&format!("  {}\n", fmt_vec(&f, b)));
    }
    Ok(Outcome::new(json!({"max_submodule": subspace_to_json(&core), "is_submodule": core == n}), text, true))
}

fn radical(ctx: &Ctx, algebra: &str, subspace: Option<&str>) -> Result<Outcome> {
    let (av, tag) = load_algebra(ctx, algebra)?;
    let f = finite(tag)?;
    let alg = algebra_from_json(&f, &av)?;
    let j = match subspace {
        Some(s) => input::subspace(&f, &read(s)?.value, alg.dim())?,
        None => Subspace::zero(f, alg.dim()),
    };
    let r = radical_of_subspace(&alg, &j, ctx.cap)?;
    let mut text = format!("radical: {} elements\n", r.len());
    for u in &r {
        text.push_str(&format!("  {}\n", fmt_vec(&f, u)));
    }
    Ok(Outcome::new(json!({"size": r.len(), "elements": vectors_to_json(&f, &r)}), text, true))
}

fn quasi_stable(ctx: &Ctx, target: &Target, stable: bool) -> Result<Outcome> {
    let (v, regular, tag) = load_target(ctx, target)?;
    let f = finite(tag)?;
    let kind = if stable { SetKind::Stable } else { SetKind::QuasiStable };
    let word = if stable { "stable" } else { "quasi-stable" };
    let caps = Caps::uniform(ctx.cap);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    let alg: Option<Algebra<PrimeField>> = if regular { Some(algebra_from_json(&f, &v)?) } else { None };
    let module = build_module(&f, &v, regular)?;
    for &t in &ctx.thetas {
        let verdict = match &alg {
            Some(a) => algebra_stability(a, t, kind, caps)?,
            None => module_stability(&module, t, kind, caps)?,
        };
        ok &= verdict.holds;
        text.push_str(&format!("theta={t}: {} ({} subspaces checked)\n", if verdict.holds { word.to_string() } else { format!("not {word}") }, verdict.subspaces_checked));
        let mut row = json!({"theta": t, "holds": verdict.holds, "subspaces_checked": verdict.subspaces_checked});
        if let Some(w) = &verdict.witness {
            row["witness"] = stability_doc(&module, t, kind, w);
            let at = w.element.as_ref().map_or(String::new(), |u| format!(" at u = {}", fmt_vec(&f, u)));
            text.push_str(&format!("  counterexample: subspace of dimension {}{at}\n", w.subspace.dim()));
        }
        rows.push(row);
    }
    let mut json = json!({"property": word, "results": rows});
    if let Some(a) = &alg {
        let c = if stable { stable_by_classification(a, ctx.cap)? } else { quasi_stable_by_classification(a, ctx.cap)? };
        text.push_str(&format!("classification predicts: {}\n", if c { word.to_string() } else { format!("not {word}") }));
        json["classification"] = json!(c);
    }
    Ok(Outcome::new(json, text, ok))
}

fn omega<F: Field>(f: F, alpha: &Value) -> Result<Outcome> {
    let a = mathieu_core::io::vector_from_json(&f, alpha)?;
    let m = omega_member(&f, &a)?;
    Ok(Outcome::new(json!({"omega_member": m}), format!("alpha {} Omega\n", if m { "is in" } else { "is not in" }), m))
}

fn poly<F: Field>(f: &F, v: &Value) -> Result<Poly<F>> {
    Ok(match v {
        Value::Array(_) => Poly::from_coeffs(f.clone(), &mathieu_core::io::vector_from_json(f, v)?),
        _ => poly_from_json(f, v)?,
    })
}

fn nba<F: Field>(f: F, query: Query, points: &Value, alpha: &Value, p: &Value) -> Result<Outcome> {
    let pts = points
        .as_array()
        .ok_or_else(|| anyhow!("points must be a list of coordinate lists"))?
        .iter()
        .map(|u| mathieu_core::io::vector_from_json(&f, u))
        .collect::<mathieu_core::Result<Vec<_>>>()?;
    let cfg = EvalConfig::new(f.clone(), pts, mathieu_core::io::vector_from_json(&f, alpha)?)?;
    let g = poly(&f, p)?;
    let (name, ans) = match query {
        Query::Member => ("member", nba_member(&g, &cfg)?),
        Query::Sigma => ("sigma", nba_sigma_member(&g, &cfg)?),
        Query::Tau => ("tau", nba_tau_member(&g, &cfg)?),
    };
    Ok(Outcome::new(json!({"query": name, "answer": ans}), format!("{name}: {ans}\n"), ans))
}

fn interval(iv: &Interval) -> Result<IntegralConfig> {
    let a = mathieu_core::exactfield::parse_rational(&iv.a)?;
    let b = mathieu_core::exactfield::parse_rational(&iv.b)?;
    let q = match &iv.q {
        Some(q) => rational_poly_from_json(&read(q)?.value)?,
        None => Poly::one(Rationals, 1),
    };
    Ok(IntegralConfig::new(a, b, q)?)
}

fn rational_only(ctx: &Ctx) -> Result<()> {
    match ctx.field {
        None | Some(FieldTag::Rational) => Ok(()),
        Some(t) => Err(mathieu_core::Error::Unsupported(format!("integrals are over Q, not {t}")).into()),
    }
}

fn verify_paper(profile: &str, output: Option<&str>, timing: bool, format: Format) -> Result<Outcome> {
    let p = match Profile::named(profile) {
        Ok(p) => p,
        Err(_) if std::path::Path::new(profile).exists() || profile.trim_start().starts_with('{') => Profile::from_json(&read(profile)?.value)?,
        Err(e) => return Err(e.into()),
    };
    let report = run_suite(&p)?;
    let json = report.to_json(timing);
    if let Some(path) = output {
        std::fs::write(path, serde_json::to_string_pretty(&json)? + "\n")?;
    }
    let text = if format == Format::Text { report.to_text(timing) } else { String::new() };
    Ok(Outcome::new(json, text, report.passed()))
}

fn verify_witness(doc: &str) -> Result<Outcome> {
    let v = read(doc)?.value;
    let docs: Vec<Value> = if let Some(entries) = v.get("entries").and_then(Value::as_array) {
        entries.iter().filter_map(|e| e.get("witness").cloned()).collect()
    } else if let Value::Array(list) = v {
        list
    } else {
        vec![v]
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for d in &docs {
        let c = verify_witness_doc(d)?;
        ok &= c.valid;
        text.push_str(&format!("{} {}: {}\n", if c.valid { "VALID" } else { "INVALID" }, c.kind, c.detail));
        rows.push(json!({"kind": c.kind, "valid": c.valid, "detail": c.detail}));
    }
    if docs.is_empty() {
        text.push_str("no witnesses found\n");
    }
    Ok(Outcome::new(json!({"checked": docs.len(), "valid": ok, "results": rows}), text, ok))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let field = cli.field.as_deref().map(FieldTag::parse_flag).transpose()?;
    let thetas = if cli.theta == "all" { Theta::ALL.to_vec() } else { vec![cli.theta.parse::<Theta>()?] };
    let ctx = Ctx { field, thetas, cap: cli.cap };
    match &cli.verb {
        Verb::Gen { kind, n, x, algebra } => {
            let tag = field.unwrap_or(FieldTag::Prime(2));
            match tag {
                FieldTag::Prime(p) => gen(PrimeField::new(p as u64)?, *kind, *n, x.as_deref(), algebra.as_deref()),
                FieldTag::Rational => gen(Rationals, *kind, *n, x.as_deref(), algebra.as_deref()),
            }
        }
        Verb::IsMathieu { algebra, subspace, oracle } => is_mathieu(&ctx, algebra, subspace, *oracle),
        Verb::IsIdeal { algebra, subspace } => {
            let (av, tag) = load_algebra(&ctx, algebra)?;
            match tag {
                FieldTag::Prime(p) => is_ideal(PrimeField::new(p as u64)?, &ctx, &av, subspace),
                FieldTag::Rational => is_ideal(Rationals, &ctx, &av, subspace),
            }
        }
        Verb::Sigma(a) => element_sets(&ctx, a, SetKind::Stable),
        Verb::Tau(a) => element_sets(&ctx, a, SetKind::QuasiStable),
        Verb::MaxSubmodule { target, subspace } => {
            let (v, regular, tag) = load_target(&ctx, target)?;
            match tag {
                FieldTag::Prime(p) => max_submodule(PrimeField::new(p as u64)?, &v, regular, subspace),
                FieldTag::Rational => max_submodule(Rationals, &v, regular, subspace),
            }
        }
        Verb::Radical { algebra, subspace } => radical(&ctx, algebra, subspace.as_deref()),
        Verb::QuasiStable { target, stable } => quasi_stable(&ctx, target, *stable),
        Verb::Omega { alpha } => {
            let a = read(alpha)?.value;
            match field.unwrap_or(FieldTag::Rational) {
                FieldTag::Prime(p) => omega(PrimeField::new(p as u64)?, &a),
                FieldTag::Rational => omega(Rationals, &a),
            }
        }
        Verb::Nba { query, points, alpha, poly } => {
            let (pts, al, pl) = (read(points)?.value, read(alpha)?.value, read(poly)?.value);
            match field.unwrap_or(FieldTag::Rational) {
                FieldTag::Prime(p) => nba(PrimeField::new(p as u64)?, *query, &pts, &al, &pl),
                FieldTag::Rational => nba(Rationals, *query, &pts, &al, &pl),
            }
        }
        Verb::Nq { query, interval: iv, poly } => {
            rational_only(&ctx)?;
            let cfg = interval(iv)?;
            let h = rational_poly_from_json(&read(poly)?.value)?;
            let (name, ans) = match query {
                Query::Member => ("member", nq_member(&h, &cfg)?),
                Query::Sigma => ("sigma", nq_sigma_member(&h, &cfg)?),
                Query::Tau => ("tau", nq_tau_member(&h, &cfg)?),
            };
            Ok(Outcome::new(json!({"query": name, "answer": ans}), format!("{name}: {ans}\n"), ans))
        }
        Verb::Integral { interval: iv, poly } => {
            rational_only(&ctx)?;
            let cfg = interval(iv)?;
            let v = exact_integral(&rational_poly_from_json(&read(poly)?.value)?, &cfg)?;
            Ok(Outcome::new(json!({"value": Rationals.elem_to_json(&v)}), format!("{v}\n"), true))
        }
        Verb::VerifyPaper { profile, output, timing } => verify_paper(profile, output.as_deref(), *timing, cli.format),
        Verb::VerifyWitness { document } => verify_witness(document),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Format::Text => out.text,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().write_all(body.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
