use crate::algebra::{idempotents, theta_ideal_generated, Algebra, PowerTable, Theta};
use crate::error::Result;
use crate::exactfield::{FiniteField, Subspace, Vector};
use crate::modules::ModuleSpace;

/// Certificate that `J` is not ϑ-Mathieu: every power of `a` lies in `J`,
/// `a^m` sits in the eventual cycle of the powers, and `b·a^m·c ∉ J`
/// (a missing multiplier means the unit). Since `a^m` recurs infinitely
/// often, the product leaves `J` for infinitely many exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MathieuWitness<F: FiniteField> {
    pub a: Vector<F>,
    pub m: usize,
    pub b: Option<Vector<F>>,
    pub c: Option<Vector<F>>,
    pub product: Vector<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MathieuVerdict<F: FiniteField> {
    pub is_mathieu: bool,
    pub witness: Option<MathieuWitness<F>>,
}

impl<F: FiniteField> MathieuVerdict<F> {
    fn yes() -> Self {
        MathieuVerdict { is_mathieu: true, witness: None }
    }

    fn no(w: MathieuWitness<F>) -> Self {
        MathieuVerdict { is_mathieu: false, witness: Some(w) }
    }
}

pub(crate) fn theta_index(t: Theta) -> usize {
    match t {
        Theta::Left => 0,
        Theta::Right => 1,
        Theta::PreTwoSided => 2,
        Theta::TwoSided => 3,
    }
}

/// First basis product `b·x·c` leaving `J`, with multipliers per ϑ
/// (pre-two-sided tries left then right).
fn escaping_product<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, x: &[F::Elem], theta: Theta) -> Option<(Option<Vector<F>>, Option<Vector<F>>, Vector<F>)> {
    let d = alg.dim();
    let left = || {
        (0..d).find_map(|i| {
            let b = alg.basis_element(i);
            let p = alg.multiply(&b, x);
            (!j.contains(&p)).then(|| (Some(b), None, p))
        })
    };
    let right = || {
        (0..d).find_map(|i| {
            let c = alg.basis_element(i);
            let p = alg.multiply(x, &c);
            (!j.contains(&p)).then(|| (None, Some(c), p))
        })
    };
    match theta {
        Theta::Left => left(),
        Theta::Right => right(),
        Theta::PreTwoSided => left().or_else(right),
        Theta::TwoSided => (0..d).find_map(|i| {
            let b = alg.basis_element(i);
            let bx = alg.multiply(&b, x);
            (0..d).find_map(|k| {
                let c = alg.basis_element(k);
                let p = alg.multiply(&bx, &c);
                (!j.contains(&p)).then(|| (Some(b.clone()), Some(c), p))
            })
        }),
    }
}

/// Decides ϑ-Mathieu status by the idempotent criterion: `J` is ϑ-Mathieu
/// iff `(e)_ϑ ⊆ J` for each idempotent `e ∈ J`. Idempotents and the
/// subspaces they generate are computed once per algebra.
#[derive(Debug, Clone)]
pub struct MathieuDecider<F: FiniteField> {
    alg: Algebra<F>,
    idempotents: Vec<Vector<F>>,
    generated: Vec<[Subspace<F>; 4]>,
}

impl<F: FiniteField> MathieuDecider<F> {
    pub fn new(alg: &Algebra<F>, cap: u64) -> Result<Self> {
        let idempotents = idempotents(alg, cap)?;
        let generated = idempotents
            .iter()
            .map(|e| Theta::ALL.map(|t| theta_ideal_generated(alg, e, t)))
            .collect();
        Ok(MathieuDecider { alg: alg.clone(), idempotents, generated })
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.alg
    }

    pub fn idempotents(&self) -> &[Vector<F>] {
        &self.idempotents
    }

    pub fn is_mathieu(&self, j: &Subspace<F>, theta: Theta) -> bool {
        let t = theta_index(theta);
        self.idempotents
            .iter()
            .zip(&self.generated)
            .all(|(e, g)| !j.contains(e) || g[t].is_subspace_of(j))
    }

    pub fn decide(&self, j: &Subspace<F>, theta: Theta) -> MathieuVerdict<F> {
        let t = theta_index(theta);
        for (e, g) in self.idempotents.iter().zip(&self.generated) {
            if j.contains(e) && !g[t].is_subspace_of(j) {
                let (b, c, product) = escaping_product(&self.alg, j, e, theta).expect("(e) not inside J");
                return MathieuVerdict::no(MathieuWitness { a: e.clone(), m: 1, b, c, product });
            }
        }
        MathieuVerdict::yes()
    }

    /// ϑ-Mathieu status of `(N : u)`.
    pub fn decide_module(&self, module: &ModuleSpace<F>, n: &Subspace<F>, u: &[F::Elem], theta: Theta) -> MathieuVerdict<F> {
        self.decide(&module.colon(n, u), theta)
    }
}

/// Idempotent-criterion decider for a single query.
pub fn is_theta_mathieu_idempotent<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, cap: u64) -> Result<MathieuVerdict<F>> {
    Ok(MathieuDecider::new(alg, cap)?.decide(j, theta))
}

/// Checks the definition directly: for every `a` with all powers in `J`,
/// every cycle power `a^m` and every basis multiplier. Basis multipliers
/// suffice because `b·a^m·c` is bilinear in `(b, c)`.
pub fn is_theta_mathieu_bruteforce<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, theta: Theta, cap: u64) -> Result<MathieuVerdict<F>> {
    let table = PowerTable::new(alg, cap)?;
    Ok(bruteforce_with_table(alg, &table, j, theta))
}

pub fn bruteforce_with_table<F: FiniteField>(alg: &Algebra<F>, table: &PowerTable<F>, j: &Subspace<F>, theta: Theta) -> MathieuVerdict<F> {
    for t in table.iter() {
        if !t.all_in(j) {
            continue;
        }
        for (k, x) in t.cycle.iter().enumerate() {
            if let Some((b, c, product)) = escaping_product(alg, j, x, theta) {
                return MathieuVerdict::no(MathieuWitness { a: t.element.clone(), m: t.cycle_start() + k, b, c, product });
            }
        }
    }
    MathieuVerdict::yes()
}

/// Mathieu status of `(N : u)` in the acting algebra.
pub fn is_module_mathieu<F: FiniteField>(module: &ModuleSpace<F>, n: &Subspace<F>, u: &[F::Elem], theta: Theta, cap: u64) -> Result<MathieuVerdict<F>> {
    is_theta_mathieu_idempotent(module.algebra(), &module.colon(n, u), theta, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, product_algebra, trace_hyperplane, truncated_poly, upper_triangular};
    use crate::exactfield::{enumerate_subspaces, Matrix, PrimeField, DEFAULT_CAP};
    use crate::mathieu::check_mathieu_witness;
    use crate::modules::standard_module;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn both(alg: &Algebra<PrimeField>, j: &Subspace<PrimeField>, t: Theta) -> (bool, bool) {
        let b = is_theta_mathieu_bruteforce(alg, j, t, DEFAULT_CAP).unwrap();
        let i = is_theta_mathieu_idempotent(alg, j, t, DEFAULT_CAP).unwrap();
        for v in [&b, &i] {
            if let Some(w) = &v.witness {
                check_mathieu_witness(alg, j, t, w).unwrap();
            }
        }
        (b.is_mathieu, i.is_mathieu)
    }

    #[test]
    fn trace_zero_in_char_three_is_mathieu() {
        let a = matrix_algebra(f(3), 2);
        let h = trace_hyperplane(&f(3), 2, &Matrix::identity(f(3), 2));
        for t in Theta::ALL {
            assert_eq!(both(&a, &h, t), (true, true));
        }
    }

    #[test]
    fn trace_zero_in_char_two_is_not() {
        let a = matrix_algebra(f(2), 2);
        let h = trace_hyperplane(&f(2), 2, &Matrix::identity(f(2), 2));
        for t in Theta::ALL {
            assert_eq!(both(&a, &h, t), (false, false));
        }
    }

    #[test]
    fn nilpotent_line_is_mathieu() {
        let a = truncated_poly(f(2), 2);
        let j = Subspace::span(f(2), 2, &[vec![0, 1]]).unwrap();
        for t in Theta::ALL {
            assert_eq!(both(&a, &j, t), (true, true));
        }
    }

    #[test]
    fn span_e11_witness() {
        let a = matrix_algebra(f(2), 2);
        let j = Subspace::span(f(2), 4, &[vec![1, 0, 0, 0]]).unwrap();
        let v = is_theta_mathieu_idempotent(&a, &j, Theta::Left, DEFAULT_CAP).unwrap();
        assert!(!v.is_mathieu);
        let w = v.witness.unwrap();
        assert_eq!(w.a, vec![1, 0, 0, 0]);
        check_mathieu_witness(&a, &j, Theta::Left, &w).unwrap();
    }

    #[test]
    fn oracles_agree_on_small_algebras() {
        for alg in [product_algebra(f(2), 2), truncated_poly(f(3), 2), upper_triangular(f(2), 2)] {
            for j in enumerate_subspaces(alg.field(), alg.dim(), DEFAULT_CAP).unwrap() {
                for t in Theta::ALL {
                    let (b, i) = both(&alg, &j, t);
                    assert_eq!(b, i, "{j:?} {t}");
                }
            }
        }
    }

    #[test]
    fn module_level_examples() {
        let m = standard_module(f(2), 2);
        let n = Subspace::span(f(2), 2, &[vec![1, 0]]).unwrap();
        for t in Theta::ALL {
            assert!(is_module_mathieu(&m, &n, &[0, 0], t, DEFAULT_CAP).unwrap().is_mathieu);
            assert!(!is_module_mathieu(&m, &n, &[0, 1], t, DEFAULT_CAP).unwrap().is_mathieu);
        }
    }
}
