//! Browser demo. Each exported function takes plain numbers and JSON
//! strings and returns a JSON string, so the page needs no glue beyond
//! `JSON.parse`. Errors come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mathieu_core::algebra::{
    matrix_algebra, power_trajectory, product_algebra, trace_hyperplane, truncated_poly, upper_triangular, vector_to_matrix, Algebra, Theta,
};
use mathieu_core::exactfield::{Field, PrimeField, Rationals};
use mathieu_core::io::{vector_from_json, vector_from_json_len};
use mathieu_core::mathieu::{MathieuDecider, SetKind, StableSets};
use mathieu_core::modules::regular_module;
use mathieu_core::polyspaces::{omega_member, support};

/// Keeps the page responsive: `M_2(F_7)` has 2401 elements.
const MAX_PRIME: u64 = 7;
const CAP: u64 = 1 << 16;

type Out = Result<Value, String>;

fn finish(r: Out) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn small_prime(p: u32) -> Result<PrimeField, String> {
    if p as u64 > MAX_PRIME {
        return Err(format!("the demo stops at p = {MAX_PRIME}"));
    }
    PrimeField::new(p as u64).map_err(|e| e.to_string())
}

fn theta(name: &str) -> Result<Theta, String> {
    name.parse::<Theta>().map_err(|e| e.to_string())
}

fn parse(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))
}

/// For `X` in `M_2(F_p)`: every `Y`, whether it is stable or quasi-stable
/// for the trace hyperplane `H_X`, and the product `YX`.
pub fn trace_grid_json(p: u32, x: &str, theta_name: &str) -> Out {
    let f = small_prime(p)?;
    let t = theta(theta_name)?;
    let xv = vector_from_json_len(&f, &parse(x)?, 4).map_err(|e| e.to_string())?;
    let alg = matrix_algebra(f, 2);
    let xm = vector_to_matrix(&f, 2, &xv);
    let h = trace_hyperplane(&f, 2, &xm);
    let sets = StableSets::new(&regular_module(&alg), &h, CAP).map_err(|e| e.to_string())?;
    let mut cells = Vec::new();
    let (mut sigma, mut tau) = (0, 0);
    for (i, y) in sets.elements().iter().enumerate() {
        let s = sets.is_member(i, SetKind::Stable, t);
        let q = sets.is_member(i, SetKind::QuasiStable, t);
        sigma += usize::from(s);
        tau += usize::from(q);
        let yx = alg.multiply(y, &xv);
        cells.push(json!({ "y": y, "yx": yx, "sigma": s, "tau": q }));
    }
    Ok(json!({
        "p": p,
        "x": xv,
        "theta": t.short_name(),
        "hyperplane_dim": h.dim(),
        "sigma_size": sigma,
        "tau_size": tau,
        "cells": cells,
    }))
}

/// Membership of `α` in Ω, the subsets of its support that sum to zero,
/// and, over `F_p`, the Mathieu verdict for the matching hyperplane of
/// `F_p^ℓ` (`p = 0` means the rationals).
pub fn omega_json(p: u32, alpha: &str) -> Out {
    let v = parse(alpha)?;
    if p == 0 {
        let a = vector_from_json(&Rationals, &v).map_err(|e| e.to_string())?;
        return omega_report(&Rationals, &a, None);
    }
    let f = small_prime(p)?;
    let a = vector_from_json(&f, &v).map_err(|e| e.to_string())?;
    if a.is_empty() || a.len() > 4 {
        return Err("give between 1 and 4 weights over F_p".into());
    }
    let alg = product_algebra(f, a.len());
    let row = mathieu_core::exactfield::Matrix::from_rows(f, a.len(), std::slice::from_ref(&a)).map_err(|e| e.to_string())?;
    let h = row.right_kernel();
    let decider = MathieuDecider::new(&alg, CAP).map_err(|e| e.to_string())?;
    omega_report(&f, &a, Some(decider.is_mathieu(&h, Theta::Left)))
}

fn omega_report<F: Field>(f: &F, a: &[F::Elem], mathieu: Option<bool>) -> Out {
    let member = omega_member(f, a).map_err(|e| e.to_string())?;
    let s = support(f, a);
    let vanishing: Vec<Vec<usize>> = (1u32..1 << s.len())
        .map(|mask| (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Vec<_>>())
        .filter(|sub| f.is_zero(&sub.iter().fold(f.zero(), |acc, &i| f.add(&acc, &a[i]))))
        .collect();
    let mut out = json!({ "member": member, "support": s, "vanishing_subsets": vanishing });
    if let Some(m) = mathieu {
        out["hyperplane_is_mathieu"] = json!(m);
    }
    Ok(out)
}

fn named_algebra(kind: &str, f: PrimeField, n: usize) -> Result<Algebra<PrimeField>, String> {
    if n == 0 || n > 3 {
        return Err("size must be 1, 2 or 3".into());
    }
    Ok(match kind {
        "matrix" => matrix_algebra(f, n),
        "product" => product_algebra(f, n),
        "truncated" => truncated_poly(f, n),
        "upper-triangular" => upper_triangular(f, n),
        other => return Err(format!("unknown algebra {other:?}")),
    })
}

/// Powers `a, a², …` of an element until they repeat.
pub fn powers_json(kind: &str, p: u32, n: u32, element: &str) -> Out {
    let f = small_prime(p)?;
    let alg = named_algebra(kind, f, n as usize)?;
    let a = vector_from_json_len(&f, &parse(element)?, alg.dim()).map_err(|e| e.to_string())?;
    let t = power_trajectory(&alg, &a);
    let idempotent = t.cycle.len() == 1 && alg.multiply(&t.cycle[0], &t.cycle[0]) == t.cycle[0];
    Ok(json!({
        "dim": alg.dim(),
        "tail": t.tail,
        "cycle": t.cycle,
        "cycle_start": t.cycle_start(),
        "nilpotent": t.cycle.len() == 1 && t.cycle[0].iter().all(|&c| c == 0),
        "cycle_is_idempotent": idempotent,
    }))
}

#[wasm_bindgen]
pub fn trace_grid(p: u32, x: &str, theta: &str) -> String {
    finish(trace_grid_json(p, x, theta))
}

#[wasm_bindgen]
pub fn omega(p: u32, alpha: &str) -> String {
    finish(omega_json(p, alpha))
}

#[wasm_bindgen]
pub fn powers(kind: &str, p: u32, n: u32, element: &str) -> String {
    finish(powers_json(kind, p, n, element))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_hyperplane_over_f5() {
        let v = trace_grid_json(5, "[1,0,0,1]", "left").unwrap();
        // YX = Y, so sigma is {0} and tau adds the 4 nonzero scalars
        assert_eq!(v["sigma_size"], 1);
        assert_eq!(v["tau_size"], 5);
        assert_eq!(v["cells"].as_array().unwrap().len(), 625);
    }

    #[test]
    fn identity_hyperplane_over_f2_gains_nothing() {
        let v = trace_grid_json(2, "[1,0,0,1]", "two-sided").unwrap();
        assert_eq!(v["sigma_size"], 1);
        assert_eq!(v["tau_size"], 1);
    }

    #[test]
    fn omega_agrees_with_the_hyperplane() {
        let v = omega_json(3, "[1, 2]").unwrap();
        assert_eq!(v["member"], false);
        assert_eq!(v["hyperplane_is_mathieu"], false);
        assert_eq!(v["vanishing_subsets"], json!([[0, 1]]));
        let v = omega_json(3, "[1, 1]").unwrap();
        assert_eq!(v["member"], true);
        assert_eq!(v["hyperplane_is_mathieu"], true);
        let v = omega_json(0, r#"["1/2", "-1/2", "3"]"#).unwrap();
        assert_eq!(v["member"], false);
    }

    #[test]
    fn powers_of_a_nilpotent_and_an_idempotent() {
        let v = powers_json("truncated", 2, 3, "[0,1,0]").unwrap();
        assert_eq!(v["nilpotent"], true);
        assert_eq!(v["tail"], json!([[0, 1, 0], [0, 0, 1]]));
        let v = powers_json("matrix", 3, 2, "[1,0,0,0]").unwrap();
        assert_eq!(v["cycle_is_idempotent"], true);
        assert_eq!(v["cycle_start"], 1);
    }

    #[test]
    fn errors_are_reported_as_json() {
        let s = trace_grid(11, "[1,0,0,1]", "left");
        assert!(s.contains("error"));
        let s = powers("matrix", 2, 2, "[1,0]");
        assert!(s.contains("error"));
        let s = omega(2, "not json");
        assert!(s.contains("error"));
    }
}
