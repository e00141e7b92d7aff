use crate::error::{Error, Result};
use crate::exactfield::{Matrix, Subspace, Vector};
use crate::exactfield::Field;

use super::Algebra;

/// A unital algebra homomorphism given by its matrix on the bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraHom<F: Field> {
    source: Algebra<F>,
    target: Algebra<F>,
    matrix: Matrix<F>,
}

impl<F: Field> AlgebraHom<F> {
    pub fn new(source: Algebra<F>, target: Algebra<F>, matrix: Matrix<F>) -> Result<Self> {
        source.field().check_same(target.field())?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim() * source.dim(), found: matrix.data().len() });
        }
        let hom = AlgebraHom { source, target, matrix };
        if hom.apply(hom.source.unit()) != *hom.target.unit() {
            return Err(Error::NotAlgebraHom("unit is not preserved".into()));
        }
        for i in 0..hom.source.dim() {
            let ei = hom.source.basis_element(i);
            for j in 0..hom.source.dim() {
                let ej = hom.source.basis_element(j);
                let lhs = hom.apply(&hom.source.multiply(&ei, &ej));
                let rhs = hom.target.multiply(&hom.apply(&ei), &hom.apply(&ej));
                if lhs != rhs {
                    return Err(Error::NotAlgebraHom(format!("product e{i}*e{j} is not preserved")));
                }
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, a: &[F::Elem]) -> Vector<F> {
        self.matrix.mul_vec(a).expect("source-dimension vector")
    }

    pub fn pullback(&self, j: &Subspace<F>) -> Result<Subspace<F>> {
        Subspace::preimage(&self.matrix, j)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, product_algebra};
    use crate::exactfield::PrimeField;

    #[test]
    fn diagonal_embedding_is_a_hom() {
        let f = PrimeField::new(3).unwrap();
        let kk = product_algebra(f, 2);
        let m2 = matrix_algebra(f, 2);
        // (x, y) -> diag(x, y)
        let m = Matrix::from_columns(f, 4, &[vec![1, 0, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        let hom = AlgebraHom::new(kk, m2, m).unwrap();
        assert!(!hom.is_surjective());
        assert_eq!(hom.apply(&[2, 1]), vec![2, 0, 0, 1]);
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let f = PrimeField::new(3).unwrap();
        let kk = product_algebra(f, 2);
        // (x, y) -> (x + y, y) sends the unit to (2, 1)
        let m = Matrix::new(f, 2, 2, vec![1, 1, 0, 1]).unwrap();
        assert!(matches!(AlgebraHom::new(kk.clone(), kk, m), Err(Error::NotAlgebraHom(_))));
    }
}
