//! Eventually periodic power sequences in finite algebras.

use std::collections::HashMap;

use crate::error::Result;
use crate::exactfield::{enumerate_vectors, index_of_vector, is_zero_vector, Field, FiniteField, Subspace, Vector};

use super::Algebra;

/// `a, a², a³, …` split as `tail` followed by a repeating `cycle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTrajectory<F: Field> {
    pub element: Vector<F>,
    pub tail: Vec<Vector<F>>,
    pub cycle: Vec<Vector<F>>,
}

impl<F: Field> PowerTrajectory<F> {
    /// `a^m` for `m ≥ 1`, read off the tail and cycle.
    pub fn power(&self, m: usize) -> &Vector<F> {
        assert!(m >= 1);
        let i = m - 1;
        if i < self.tail.len() {
            &self.tail[i]
        } else {
            &self.cycle[(i - self.tail.len()) % self.cycle.len()]
        }
    }

    /// Exponent of the first cycle element.
    pub fn cycle_start(&self) -> usize {
        self.tail.len() + 1
    }

    /// Every power `a^m`, `m ≥ 1`.
    pub fn all_powers(&self) -> impl Iterator<Item = &Vector<F>> {
        self.tail.iter().chain(&self.cycle)
    }

    /// `a^m ∈ J` for all `m ≥ 1`.
    pub fn all_in(&self, j: &Subspace<F>) -> bool {
        self.all_powers().all(|v| j.contains(v))
    }

    /// `a^m ∈ J` for all `m ≫ 0`.
    pub fn eventually_in(&self, j: &Subspace<F>) -> bool {
        self.cycle.iter().all(|v| j.contains(v))
    }
}

/// Powers of `a` until the first repeat. Terminates because `A` is finite.
pub fn power_trajectory<F: FiniteField>(alg: &Algebra<F>, a: &[F::Elem]) -> PowerTrajectory<F> {
    let mut seen: HashMap<Vector<F>, usize> = HashMap::new();
    let mut powers: Vec<Vector<F>> = Vec::new();
    let mut cur = a.to_vec();
    loop {
        if let Some(&start) = seen.get(&cur) {
            let cycle = powers.split_off(start);
            return PowerTrajectory { element: a.to_vec(), tail: powers, cycle };
        }
        seen.insert(cur.clone(), powers.len());
        let next = alg.multiply(&cur, a);
        powers.push(cur);
        cur = next;
    }
}

/// `a^dim = 0`; valid over any field since the minimal polynomial of left
/// multiplication by a nilpotent `a` divides `x^dim`.
pub fn is_nilpotent<F: Field>(alg: &Algebra<F>, a: &[F::Elem]) -> bool {
    if alg.dim() == 0 {
        return true;
    }
    is_zero_vector(alg.field(), &alg.power(a, alg.dim()))
}

/// All idempotents, sorted.
pub fn idempotents<F: FiniteField>(alg: &Algebra<F>, cap: u64) -> Result<Vec<Vector<F>>> {
    let mut out: Vec<_> = enumerate_vectors(alg.field(), alg.dim(), cap)?
        .filter(|e| alg.multiply(e, e) == *e)
        .collect();
    out.sort();
    Ok(out)
}

/// All nilpotent elements, sorted.
pub fn nil_set<F: FiniteField>(alg: &Algebra<F>, cap: u64) -> Result<Vec<Vector<F>>> {
    let zero = alg.zero();
    Ok(enumerate_vectors(alg.field(), alg.dim(), cap)?
        .filter(|a| power_trajectory(alg, a).cycle == [zero.clone()])
        .collect())
}

/// `√J`: elements whose powers eventually stay in `J`.
pub fn radical_of_subspace<F: FiniteField>(alg: &Algebra<F>, j: &Subspace<F>, cap: u64) -> Result<Vec<Vector<F>>> {
    Ok(enumerate_vectors(alg.field(), alg.dim(), cap)?
        .filter(|a| power_trajectory(alg, a).eventually_in(j))
        .collect())
}

/// Power trajectories of every element of a finite algebra, indexed by the
/// lexicographic index of the element.
#[derive(Debug, Clone)]
pub struct PowerTable<F: FiniteField> {
    trajectories: Vec<PowerTrajectory<F>>,
}

impl<F: FiniteField> PowerTable<F> {
    pub fn new(alg: &Algebra<F>, cap: u64) -> Result<Self> {
        let elems: Vec<Vector<F>> = enumerate_vectors(alg.field(), alg.dim(), cap)?.collect();
        #[cfg(feature = "parallel")]
        let trajectories = {
            use rayon::prelude::*;
            elems.par_iter().map(|a| power_trajectory(alg, a)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let trajectories = elems.iter().map(|a| power_trajectory(alg, a)).collect();
        Ok(PowerTable { trajectories })
    }

    pub fn get(&self, field: &F, a: &[F::Elem]) -> &PowerTrajectory<F> {
        &self.trajectories[index_of_vector(field, a) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PowerTrajectory<F>> {
        self.trajectories.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, product_algebra, truncated_poly};
    use crate::exactfield::{PrimeField, DEFAULT_CAP};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn nilpotent_trajectory() {
        let a = truncated_poly(f(2), 2);
        let t = power_trajectory(&a, &[0, 1]);
        assert_eq!(t.tail, vec![vec![0, 1]]);
        assert_eq!(t.cycle, vec![vec![0, 0]]);
        assert_eq!(t.cycle_start(), 2);
    }

    #[test]
    fn idempotent_trajectory() {
        let a = product_algebra(f(3), 2);
        let t = power_trajectory(&a, &[1, 0]);
        assert!(t.tail.is_empty());
        assert_eq!(t.cycle, vec![vec![1, 0]]);
    }

    #[test]
    fn two_in_f3_cycles() {
        let a = product_algebra(f(3), 1);
        let t = power_trajectory(&a, &[2]);
        assert!(t.tail.is_empty());
        assert_eq!(t.cycle, vec![vec![2], vec![1]]);
        assert_eq!(t.power(5), &vec![2]);
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(idempotents(&product_algebra(f(5), 1), DEFAULT_CAP).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(
            idempotents(&product_algebra(f(2), 2), DEFAULT_CAP).unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(idempotents(&matrix_algebra(f(2), 2), DEFAULT_CAP).unwrap().len(), 8);
        assert_eq!(idempotents(&product_algebra(f(3), 3), DEFAULT_CAP).unwrap().len(), 8);
    }

    #[test]
    fn nilpotents() {
        let a = truncated_poly(f(2), 2);
        assert!(is_nilpotent(&a, &[0, 0]));
        assert!(is_nilpotent(&a, &[0, 1]));
        assert_eq!(nil_set(&a, DEFAULT_CAP).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        let m = matrix_algebra(f(3), 2);
        assert!(!is_nilpotent(&m, m.unit()));
    }

    #[test]
    fn radicals() {
        let a = truncated_poly(f(2), 2);
        let full = Subspace::full(f(2), 2);
        assert_eq!(radical_of_subspace(&a, &full, DEFAULT_CAP).unwrap().len(), 4);
        let zero = Subspace::zero(f(2), 2);
        assert_eq!(radical_of_subspace(&a, &zero, DEFAULT_CAP).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        let x = Subspace::span(f(2), 2, &[vec![0, 1]]).unwrap();
        assert_eq!(radical_of_subspace(&a, &x, DEFAULT_CAP).unwrap(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn cap_is_enforced() {
        let m = matrix_algebra(f(5), 2);
        assert!(idempotents(&m, 100).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::{matrix_algebra, upper_triangular};
    use crate::exactfield::{PrimeField, DEFAULT_CAP};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn cycle_rotates_under_multiplication(v in prop::collection::vec(0u32..3, 4)) {
            let a = matrix_algebra(PrimeField::new(3).unwrap(), 2);
            let t = power_trajectory(&a, &v);
            let n = t.cycle.len();
            for (i, c) in t.cycle.iter().enumerate() {
                prop_assert_eq!(&a.multiply(c, &v), &t.cycle[(i + 1) % n]);
            }
            for m in 1..12 {
                prop_assert_eq!(t.power(m), &a.power(&v, m));
            }
            prop_assert_eq!(is_nilpotent(&a, &v), t.cycle == vec![a.zero()]);
        }

        #[test]
        fn nilpotents_lie_in_every_radical(rows in prop::collection::vec(prop::collection::vec(0u32..2, 3), 0..3)) {
            let f = PrimeField::new(2).unwrap();
            let a = upper_triangular(f, 2);
            let j = Subspace::span(f, 3, &rows).unwrap();
            let rad = radical_of_subspace(&a, &j, DEFAULT_CAP).unwrap();
            for n in nil_set(&a, DEFAULT_CAP).unwrap() {
                prop_assert!(rad.contains(&n));
            }
            let ids = idempotents(&a, DEFAULT_CAP).unwrap();
            prop_assert!(ids.contains(&a.zero()) && ids.contains(a.unit()));
            for e in ids.iter().filter(|e| j.contains(e)) {
                prop_assert!(rad.contains(e));
            }
        }
    }
}
