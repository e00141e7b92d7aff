//! Self-contained witness documents. Each one carries the algebra or
//! module it talks about, so it can be re-checked without the run that
//! produced it.

use serde_json::{json, Value};

use crate::algebra::{is_theta_ideal, Algebra, IdealWitness, Theta};
use crate::error::{Error, Result};
use crate::exactfield::{FieldTag, FiniteField, PrimeField, Subspace, Vector, DEFAULT_CAP};
use crate::io::{
    algebra_from_json, algebra_to_json, ideal_witness_from_json, ideal_witness_to_json, mathieu_witness_from_json,
    mathieu_witness_to_json, module_from_json, module_to_json, stability_witness_from_json,
    stability_witness_to_json, subspace_from_json, subspace_to_json, theta_from_json, vector_from_json, vector_to_json,
};
use crate::mathieu::{
    check_ideal_witness, check_mathieu_witness, check_stability_witness, is_theta_mathieu_bruteforce, MathieuWitness,
    SetKind, StabilityWitness,
};
use crate::modules::ModuleSpace;

/// `J` is not ϑ-Mathieu.
pub fn mathieu_doc<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, w: &MathieuWitness<F>) -> Value {
    json!({
        "kind": "mathieu",
        "theta": theta,
        "algebra": algebra_to_json(alg),
        "subspace": subspace_to_json(j),
        "witness": mathieu_witness_to_json(alg.field(), w),
    })
}

/// `J` is not a ϑ-ideal.
pub fn ideal_doc<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, w: &IdealWitness<F>) -> Value {
    json!({
        "kind": "ideal",
        "theta": theta,
        "algebra": algebra_to_json(alg),
        "subspace": subspace_to_json(j),
        "witness": ideal_witness_to_json(alg.field(), w),
    })
}

/// The module (or algebra, through its regular module) is not
/// (quasi-)stable.
pub fn stability_doc<F: FiniteField>(module: &ModuleSpace<F>, theta: Theta, kind: SetKind, w: &StabilityWitness<F>) -> Value {
    json!({
        "kind": "stability",
        "set": kind.name(),
        "theta": theta,
        "module": module_to_json(module),
        "witness": stability_witness_to_json(module.field(), w),
    })
}

/// A claimed membership `u ∈ σ_ϑ(N)` (or `τ_ϑ(N)`), true or false.
/// Re-checking recomputes the colon space and decides it from the
/// definition.
pub fn membership_doc<F: FiniteField>(
    module: &ModuleSpace<F>,
    n: &Subspace<F>,
    u: &[F::Elem],
    theta: Theta,
    kind: SetKind,
    claimed: bool,
) -> Value {
    json!({
        "kind": "membership",
        "set": kind.name(),
        "theta": theta,
        "module": module_to_json(module),
        "subspace": subspace_to_json(n),
        "element": vector_to_json(module.field(), u),
        "claimed": claimed,
    })
}

/// Outcome of re-checking a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub kind: String,
    pub valid: bool,
    pub detail: String,
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Invalid(format!("missing key {key:?}")))
}

fn set_kind(v: &Value) -> Result<SetKind> {
    match get(v, "set")?.as_str() {
        Some("sigma") => Ok(SetKind::Stable),
        Some("tau") => Ok(SetKind::QuasiStable),
        _ => Err(Error::Invalid("\"set\" must be \"sigma\" or \"tau\"".into())),
    }
}

fn prime_field(doc: &Value) -> Result<PrimeField> {
    let holder = doc.get("algebra").or_else(|| doc.get("module")).ok_or_else(|| Error::Invalid("document names no algebra or module".into()))?;
    match crate::io::field_of(holder)? {
        FieldTag::Prime(p) => PrimeField::new(p as u64),
        FieldTag::Rational => Err(Error::Unsupported("witness documents need a finite field".into())),
    }
}

/// Failure records from the checks over ℚ.
const RATIONAL_KINDS: [&str; 5] = ["nba-identity", "omega", "integral", "positivity", "nq"];

/// Re-validates a witness document. `Err` means the document is malformed;
/// `Ok` with `valid == false` means it parsed but does not prove its claim.
pub fn verify_witness_doc(doc: &Value) -> Result<WitnessCheck> {
    let kind = get(doc, "kind")?.as_str().ok_or_else(|| Error::Invalid("\"kind\" must be a string".into()))?.to_string();
    if RATIONAL_KINDS.contains(&kind.as_str()) {
        let violated = super::poly_checks::recheck_rational_doc(&kind, doc)?;
        let detail = if violated { "the recorded data violates the identity" } else { "the identity holds on the recorded data" };
        return Ok(WitnessCheck { kind, valid: violated, detail: detail.into() });
    }
    let f = prime_field(doc)?;
    let theta = theta_from_json(get(doc, "theta")?)?;
    let outcome = match kind.as_str() {
        "mathieu" => {
            let alg = algebra_from_json(&f, get(doc, "algebra")?)?;
            let j = subspace_from_json(&f, get(doc, "subspace")?)?;
            let w = mathieu_witness_from_json(&f, get(doc, "witness")?)?;
            check_mathieu_witness(&alg, &j, theta, &w).map(|_| "subspace is not Mathieu".to_string())
        }
        "ideal" => {
            let alg = algebra_from_json(&f, get(doc, "algebra")?)?;
            let j = subspace_from_json(&f, get(doc, "subspace")?)?;
            let w = ideal_witness_from_json(&f, get(doc, "witness")?)?;
            check_ideal_witness(&alg, &j, theta, &w).map(|_| "subspace is not an ideal".to_string())
        }
        "stability" => {
            let kind = set_kind(doc)?;
            let module = module_from_json(&f, get(doc, "module")?)?;
            let w = stability_witness_from_json(&f, get(doc, "witness")?)?;
            check_stability_witness(&module, theta, kind, &w).map(|_| format!("{} stability fails", kind.name()))
        }
        "membership" => {
            let kind = set_kind(doc)?;
            let module = module_from_json(&f, get(doc, "module")?)?;
            let n = subspace_from_json(&f, get(doc, "subspace")?)?;
            let u: Vector<PrimeField> = vector_from_json(&f, get(doc, "element")?)?;
            if u.len() != module.dim() || n.ambient() != module.dim() {
                return Err(Error::DimensionMismatch { expected: module.dim(), found: u.len() });
            }
            let claimed = get(doc, "claimed")?.as_bool().ok_or_else(|| Error::Invalid("\"claimed\" must be a boolean".into()))?;
            let colon = module.colon(&n, &u);
            let actual = match kind {
                SetKind::Stable => is_theta_ideal(module.algebra(), &colon, theta),
                SetKind::QuasiStable => is_theta_mathieu_bruteforce(module.algebra(), &colon, theta, DEFAULT_CAP)?.is_mathieu,
            };
            if actual == claimed {
                Ok(format!("membership in {} is {actual}, as claimed", kind.name()))
            } else {
                Err(Error::Invalid(format!("membership in {} is {actual}, claim says {claimed}", kind.name())))
            }
        }
        other => return Err(Error::Invalid(format!("unknown witness kind {other:?}"))),
    };
    Ok(match outcome {
        Ok(detail) => WitnessCheck { kind, valid: true, detail },
        Err(Error::Invalid(detail)) => WitnessCheck { kind, valid: false, detail },
        Err(e) => return Err(e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ideal_violation, matrix_algebra, product_algebra};
    use crate::exactfield::Caps;
    use crate::mathieu::{is_quasi_stable_algebra, MathieuDecider};
    use crate::modules::{regular_module, standard_module};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn docs_round_trip_and_validate() {
        let alg = matrix_algebra(f(2), 2);
        let j = Subspace::span(f(2), 4, &[vec![1, 0, 0, 0]]).unwrap();
        let d = MathieuDecider::new(&alg, DEFAULT_CAP).unwrap();
        let w = d.decide(&j, Theta::TwoSided).witness.unwrap();
        let doc = mathieu_doc(&alg, &j, Theta::TwoSided, &w);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(verify_witness_doc(&serde_json::from_str(&text).unwrap()).unwrap().valid);

        let iw = ideal_violation(&alg, &j, Theta::Left).unwrap();
        assert!(verify_witness_doc(&ideal_doc(&alg, &j, Theta::Left, &iw)).unwrap().valid);

        let v = is_quasi_stable_algebra(&alg, Theta::Right, Caps::default()).unwrap();
        let doc = stability_doc(&regular_module(&alg), Theta::Right, SetKind::QuasiStable, v.witness.as_ref().unwrap());
        assert!(verify_witness_doc(&doc).unwrap().valid);
    }

    #[test]
    fn tampered_docs_are_rejected() {
        let alg = product_algebra(f(3), 2);
        let j = Subspace::span(f(3), 2, &[vec![1, 0]]).unwrap();
        let d = MathieuDecider::new(&alg, DEFAULT_CAP).unwrap();
        // span{e_1} is an ideal of K∔K, hence Mathieu; a forged witness must fail
        assert!(d.decide(&j, Theta::Left).is_mathieu);
        let forged = MathieuWitness { a: vec![1, 0], m: 1, b: Some(vec![0, 1]), c: None, product: vec![0, 1] };
        let check = verify_witness_doc(&mathieu_doc(&alg, &j, Theta::Left, &forged)).unwrap();
        assert!(!check.valid, "{check:?}");
    }

    #[test]
    fn membership_claims() {
        let m = standard_module(f(2), 2);
        let n = Subspace::zero(f(2), 2);
        // N = 0: K^n is in τ for ϑ = left only
        let yes = membership_doc(&m, &n, &[1, 0], Theta::Left, SetKind::QuasiStable, true);
        assert!(verify_witness_doc(&yes).unwrap().valid);
        let no = membership_doc(&m, &n, &[1, 0], Theta::Right, SetKind::QuasiStable, true);
        assert!(!verify_witness_doc(&no).unwrap().valid);
    }

    #[test]
    fn malformed_docs_error() {
        assert!(verify_witness_doc(&json!({"kind": "mathieu"})).is_err());
        assert!(verify_witness_doc(&json!({"kind": "nonsense", "theta": "left", "algebra": {"field": {"p": 2}}})).is_err());
    }
}
