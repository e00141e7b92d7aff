use crate::algebra::{ideal_violation, Algebra, IdealWitness, Theta};
use crate::error::Result;
use crate::exactfield::{enumerate_subspaces, enumerate_vectors, Caps, FiniteField, Subspace, Vector};
use crate::modules::{regular_module, ModuleSpace};

use super::decide::{MathieuDecider, MathieuWitness};
use super::sets::SetKind;

/// Why a colon space fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure<F: FiniteField> {
    NotMathieu(MathieuWitness<F>),
    NotIdeal(IdealWitness<F>),
}

/// A subspace violating (quasi-)stability. In the algebra form `element`
/// is `None` and `colon` is the subspace itself (which avoids the unit);
/// in the module form `element` is some `u ∉ N` and `colon = (N:u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityWitness<F: FiniteField> {
    pub subspace: Subspace<F>,
    pub element: Option<Vector<F>>,
    pub colon: Subspace<F>,
    pub failure: Failure<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict<F: FiniteField> {
    pub holds: bool,
    pub witness: Option<StabilityWitness<F>>,
    pub subspaces_checked: usize,
}

fn judge<F: FiniteField>(decider: &MathieuDecider<F>, colon: &Subspace<F>, theta: Theta, kind: SetKind) -> Option<Failure<F>> {
    match kind {
        SetKind::Stable => ideal_violation(decider.algebra(), colon, theta).map(Failure::NotIdeal),
        SetKind::QuasiStable => decider.decide(colon, theta).witness.map(Failure::NotMathieu),
    }
}

/// Algebra form: every subspace `J` with `1 ∉ J` is ϑ-Mathieu
/// (`QuasiStable`) or a ϑ-ideal (`Stable`).
pub fn algebra_stability<F: FiniteField>(alg: &Algebra<F>, theta: Theta, kind: SetKind, caps: Caps) -> Result<StabilityVerdict<F>> {
    let decider = MathieuDecider::new(alg, caps.elements)?;
    let subspaces = enumerate_subspaces(alg.field(), alg.dim(), caps.subspaces)?;
    let mut checked = 0;
    for j in subspaces {
        if j.contains(alg.unit()) {
            continue;
        }
        checked += 1;
        if let Some(failure) = judge(&decider, &j, theta, kind) {
            let witness = StabilityWitness { subspace: j.clone(), element: None, colon: j, failure };
            return Ok(StabilityVerdict { holds: false, witness: Some(witness), subspaces_checked: checked });
        }
    }
    Ok(StabilityVerdict { holds: true, witness: None, subspaces_checked: checked })
}

/// Module form: `N^c ⊆ τ_ϑ(N)` (resp. `σ_ϑ(N)`) for every subspace `N`.
pub fn module_stability<F: FiniteField>(module: &ModuleSpace<F>, theta: Theta, kind: SetKind, caps: Caps) -> Result<StabilityVerdict<F>> {
    let decider = MathieuDecider::new(module.algebra(), caps.elements)?;
    let subspaces = enumerate_subspaces(module.field(), module.dim(), caps.subspaces)?;
    let elements: Vec<Vector<F>> = enumerate_vectors(module.field(), module.dim(), caps.elements)?.collect();
    let mut checked = 0;
    for n in subspaces {
        checked += 1;
        for u in elements.iter().filter(|u| !n.contains(u)) {
            let colon = module.colon(&n, u);
            if let Some(failure) = judge(&decider, &colon, theta, kind) {
                let witness = StabilityWitness { subspace: n.clone(), element: Some(u.clone()), colon, failure };
                return Ok(StabilityVerdict { holds: false, witness: Some(witness), subspaces_checked: checked });
            }
        }
    }
    Ok(StabilityVerdict { holds: true, witness: None, subspaces_checked: checked })
}

pub fn is_quasi_stable_algebra<F: FiniteField>(alg: &Algebra<F>, theta: Theta, caps: Caps) -> Result<StabilityVerdict<F>> {
    algebra_stability(alg, theta, SetKind::QuasiStable, caps)
}

pub fn is_stable_algebra<F: FiniteField>(alg: &Algebra<F>, theta: Theta, caps: Caps) -> Result<StabilityVerdict<F>> {
    algebra_stability(alg, theta, SetKind::Stable, caps)
}

pub fn is_quasi_stable_module<F: FiniteField>(module: &ModuleSpace<F>, theta: Theta, caps: Caps) -> Result<StabilityVerdict<F>> {
    module_stability(module, theta, SetKind::QuasiStable, caps)
}

pub fn is_stable_module<F: FiniteField>(module: &ModuleSpace<F>, theta: Theta, caps: Caps) -> Result<StabilityVerdict<F>> {
    module_stability(module, theta, SetKind::Stable, caps)
}

/// Quasi-stable by the classification: `A ≅ K∔K` or `A` local. A
/// two-dimensional algebra with an idempotent `e ∉ {0, 1}` splits as
/// `Ke ⊕ K(1-e) ≅ K∔K`; a finite algebra is local iff its only
/// idempotents are 0 and 1.
pub fn quasi_stable_by_classification<F: FiniteField>(alg: &Algebra<F>, cap: u64) -> Result<bool> {
    let ids = crate::algebra::idempotents(alg, cap)?;
    let local = ids.len() == 2;
    let split = alg.dim() == 2 && ids.len() == 4;
    Ok(local || split)
}

/// Stable by the classification: `A = K`, or `K = F_2` and `A ≅ F_2∔F_2`.
pub fn stable_by_classification<F: FiniteField>(alg: &Algebra<F>, cap: u64) -> Result<bool> {
    if alg.dim() == 1 {
        return Ok(true);
    }
    let ids = crate::algebra::idempotents(alg, cap)?;
    Ok(alg.field().order() == 2 && alg.dim() == 2 && ids.len() == 4)
}

/// Exhaustive and classification answers side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCheck<F: FiniteField> {
    pub exhaustive: StabilityVerdict<F>,
    pub classified: bool,
}

impl<F: FiniteField> ClassifiedCheck<F> {
    pub fn agrees(&self) -> bool {
        self.exhaustive.holds == self.classified
    }
}

pub fn is_stable_algebra_classified<F: FiniteField>(alg: &Algebra<F>, theta: Theta, caps: Caps) -> Result<ClassifiedCheck<F>> {
    Ok(ClassifiedCheck { exhaustive: is_stable_algebra(alg, theta, caps)?, classified: stable_by_classification(alg, caps.elements)? })
}

pub fn is_quasi_stable_algebra_classified<F: FiniteField>(alg: &Algebra<F>, theta: Theta, caps: Caps) -> Result<ClassifiedCheck<F>> {
    Ok(ClassifiedCheck { exhaustive: is_quasi_stable_algebra(alg, theta, caps)?, classified: quasi_stable_by_classification(alg, caps.elements)? })
}

/// The algebra form checked through the regular module; the two forms
/// agree for every algebra.
pub fn regular_module_stability<F: FiniteField>(alg: &Algebra<F>, theta: Theta, kind: SetKind, caps: Caps) -> Result<StabilityVerdict<F>> {
    module_stability(&regular_module(alg), theta, kind, caps)
}
