use serde::{Deserialize, Serialize};

use crate::exactfield::{Field, Subspace, Vector};

use super::{Algebra, Theta};

/// Side a multiplier acts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `element ∈ J` but `multiplier·element` (or `element·multiplier`) is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness<F: Field> {
    pub element: Vector<F>,
    pub multiplier: Vector<F>,
    pub side: Side,
    pub product: Vector<F>,
}

/// `(a)_ϑ`: `Aa`, `aA`, `Aa + aA` (pre-two-sided) or `AaA`.
pub fn theta_ideal_generated<F: Field>(alg: &Algebra<F>, a: &[F::Elem], theta: Theta) -> Subspace<F> {
    let d = alg.dim();
    let basis: Vec<Vector<F>> = (0..d).map(|i| alg.basis_element(i)).collect();
    let mut gens: Vec<Vector<F>> = Vec::new();
    match theta {
        Theta::Left => gens.extend(basis.iter().map(|b| alg.multiply(b, a))),
        Theta::Right => gens.extend(basis.iter().map(|c| alg.multiply(a, c))),
        Theta::PreTwoSided => {
            gens.extend(basis.iter().map(|b| alg.multiply(b, a)));
            gens.extend(basis.iter().map(|c| alg.multiply(a, c)));
        }
        Theta::TwoSided => {
            for b in &basis {
                let ba = alg.multiply(b, a);
                gens.extend(basis.iter().map(|c| alg.multiply(&ba, c)));
            }
        }
    }
    Subspace::span(alg.field().clone(), d, &gens).expect("algebra-length vectors")
}

/// First basis product leaving `J`, or `None` when `J` is a ϑ-ideal.
/// Pre-two-sided ideals are two-sided.
pub fn ideal_violation<F: Field>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta) -> Option<IdealWitness<F>> {
    let sides: &[Side] = match theta.for_ideals() {
        Theta::Left => &[Side::Left],
        Theta::Right => &[Side::Right],
        _ => &[Side::Left, Side::Right],
    };
    for x in j.basis() {
        for i in 0..alg.dim() {
            let e = alg.basis_element(i);
            for &side in sides {
                let product = match side {
                    Side::Left => alg.multiply(&e, x),
                    Side::Right => alg.multiply(x, &e),
                };
                if !j.contains(&product) {
                    return Some(IdealWitness { element: x.clone(), multiplier: e.clone(), side, product });
                }
            }
        }
    }
    None
}

pub fn is_theta_ideal<F: Field>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta) -> bool {
    ideal_violation(alg, j, theta).is_none()
}
