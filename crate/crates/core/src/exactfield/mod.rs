//! Exact scalars, dense linear algebra and canonical subspaces.

mod enumerate;
mod matrix;
mod scalar;
mod subspace;

pub use enumerate::{
    check_cap, combinations, count_subspaces, count_vectors, enumerate_subspaces, enumerate_vectors,
    gaussian_binomial, index_of_vector, subspace_elements, vector_from_index, Caps, VectorIter,
    DEFAULT_CAP,
};
pub use matrix::{
    add_vectors, dot, is_zero_vector, scale_vector, sub_vectors, unit_vector, zero_vector, Matrix, Vector,
};
pub use scalar::{is_positive, parse_rational, Field, FieldTag, FiniteField, PrimeField, Rationals};
pub use subspace::Subspace;

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn vecs(p: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0..p, n), 0..5)
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in vecs(5, 4)) {
            let f = PrimeField::new(5).unwrap();
            let s = Subspace::span(f, 4, &rows).unwrap();
            let again = Subspace::span(f, 4, s.basis()).unwrap();
            prop_assert_eq!(&again, &s);
            for r in &rows {
                prop_assert!(s.contains(r));
            }
        }

        #[test]
        fn dimension_formula(a in vecs(3, 4), b in vecs(3, 4)) {
            let f = PrimeField::new(3).unwrap();
            let u = Subspace::span(f, 4, &a).unwrap();
            let v = Subspace::span(f, 4, &b).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert!(u.is_subspace_of(&s));
            prop_assert!(i.is_subspace_of(&u));
            prop_assert!(i.is_subspace_of(&v));
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        }

        #[test]
        fn equality_agrees_with_mutual_containment(a in vecs(2, 3), b in vecs(2, 3)) {
            let f = PrimeField::new(2).unwrap();
            let u = Subspace::span(f, 3, &a).unwrap();
            let v = Subspace::span(f, 3, &b).unwrap();
            prop_assert_eq!(u == v, u.is_subspace_of(&v) && v.is_subspace_of(&u));
        }
    }
}
