//! Independent re-validation of certificates. Each check recomputes the
//! claim from the raw algebra data.

use crate::algebra::{power_trajectory, Algebra, IdealWitness, Side, Theta};
use crate::error::{Error, Result};
use crate::exactfield::{FiniteField, Subspace};
use crate::modules::ModuleSpace;

use super::decide::MathieuWitness;
use super::sets::SetKind;
use super::stability::{Failure, StabilityWitness};

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn check_len<F: FiniteField>(alg: &Algebra<F>, v: &[F::Elem], what: &str) -> Result<()> {
    if v.len() != alg.dim() {
        return Err(bad(format!("{what} has length {}, expected {}", v.len(), alg.dim())));
    }
    Ok(())
}

pub fn check_mathieu_witness<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, w: &MathieuWitness<F>) -> Result<()> {
    check_len(alg, &w.a, "a")?;
    let shape_ok = match theta {
        Theta::Left => w.b.is_some() && w.c.is_none(),
        Theta::Right => w.b.is_none() && w.c.is_some(),
        Theta::PreTwoSided => w.b.is_some() != w.c.is_some(),
        Theta::TwoSided => w.b.is_some() && w.c.is_some(),
    };
    if !shape_ok {
        return Err(bad(format!("multipliers do not match theta = {theta}")));
    }
    let t = power_trajectory(alg, &w.a);
    if !t.all_in(j) {
        return Err(bad("some power of a lies outside J"));
    }
    if w.m < t.cycle_start() {
        return Err(bad(format!("a^{} is not in the eventual cycle (starts at {})", w.m, t.cycle_start())));
    }
    let mut x = alg.power(&w.a, w.m);
    if let Some(b) = &w.b {
        check_len(alg, b, "b")?;
        x = alg.multiply(b, &x);
    }
    if let Some(c) = &w.c {
        check_len(alg, c, "c")?;
        x = alg.multiply(&x, c);
    }
    if x != w.product {
        return Err(bad("recorded product does not match b a^m c"));
    }
    if j.contains(&x) {
        return Err(bad("b a^m c lies in J"));
    }
    Ok(())
}

pub fn check_ideal_witness<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, w: &IdealWitness<F>) -> Result<()> {
    check_len(alg, &w.element, "element")?;
    check_len(alg, &w.multiplier, "multiplier")?;
    let side_ok = match theta.for_ideals() {
        Theta::Left => w.side == Side::Left,
        Theta::Right => w.side == Side::Right,
        _ => true,
    };
    if !side_ok {
        return Err(bad(format!("side does not match theta = {theta}")));
    }
    if !j.contains(&w.element) {
        return Err(bad("element is not in J"));
    }
    let p = match w.side {
        Side::Left => alg.multiply(&w.multiplier, &w.element),
        Side::Right => alg.multiply(&w.element, &w.multiplier),
    };
    if p != w.product {
        return Err(bad("recorded product does not match"));
    }
    if j.contains(&p) {
        return Err(bad("product lies in J"));
    }
    Ok(())
}

/// Validates a (quasi-)stability counterexample. The algebra form is
/// checked against the regular module.
pub fn check_stability_witness<F: FiniteField>(module: &ModuleSpace<F>, theta: Theta, kind: SetKind, w: &StabilityWitness<F>) -> Result<()> {
    let alg = module.algebra();
    match &w.element {
        Some(u) => {
            if w.subspace.ambient() != module.dim() || u.len() != module.dim() {
                return Err(bad("witness has the wrong ambient dimension"));
            }
            if w.subspace.contains(u) {
                return Err(bad("u lies in N"));
            }
            if module.colon(&w.subspace, u) != w.colon {
                return Err(bad("recorded colon space is wrong"));
            }
        }
        None => {
            if w.subspace.ambient() != alg.dim() {
                return Err(bad("witness has the wrong ambient dimension"));
            }
            if w.subspace.contains(alg.unit()) {
                return Err(bad("J contains the unit"));
            }
            if w.colon != w.subspace {
                return Err(bad("algebra-form witness must use J itself"));
            }
        }
    }
    match (&w.failure, kind) {
        (Failure::NotMathieu(m), SetKind::QuasiStable) => check_mathieu_witness(alg, &w.colon, theta, m),
        (Failure::NotIdeal(i), SetKind::Stable) => check_ideal_witness(alg, &w.colon, theta, i),
        // a non-Mathieu colon is not an ideal either
        (Failure::NotMathieu(m), SetKind::Stable) => check_mathieu_witness(alg, &w.colon, theta, m),
        (Failure::NotIdeal(_), SetKind::QuasiStable) => Err(bad("an ideal violation does not refute quasi-stability")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_poly};
    use crate::exactfield::PrimeField;

    #[test]
    fn forged_witnesses_are_rejected() {
        let f = PrimeField::new(2).unwrap();
        let a = matrix_algebra(f, 2);
        let j = Subspace::span(f, 4, &[vec![1, 0, 0, 0]]).unwrap();
        let good = MathieuWitness { a: vec![1, 0, 0, 0], m: 1, b: Some(vec![0, 0, 1, 0]), c: None, product: vec![0, 0, 1, 0] };
        check_mathieu_witness(&a, &j, Theta::Left, &good).unwrap();
        assert!(check_mathieu_witness(&a, &j, Theta::Right, &good).is_err());
        let mut wrong = good.clone();
        wrong.product = vec![0, 0, 0, 1];
        assert!(check_mathieu_witness(&a, &j, Theta::Left, &wrong).is_err());
        let mut outside = good.clone();
        outside.a = vec![0, 1, 0, 0];
        assert!(check_mathieu_witness(&a, &j, Theta::Left, &outside).is_err());
    }

    #[test]
    fn tail_powers_are_not_accepted() {
        // x in F_2[x]/(x^2): x^1 = x is in the tail, only x^2 = 0 recurs
        let f = PrimeField::new(2).unwrap();
        let a = truncated_poly(f, 2);
        let j = Subspace::full(f, 2);
        let w = MathieuWitness { a: vec![0, 1], m: 1, b: Some(vec![1, 0]), c: None, product: vec![0, 1] };
        assert!(check_mathieu_witness(&a, &j, Theta::Left, &w).is_err());
    }
}
