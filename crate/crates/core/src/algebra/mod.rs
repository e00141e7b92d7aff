//! Finite-dimensional unital associative algebras given by structure
//! constants.

mod builders;
mod hom;
mod ideal;
mod power;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, zero_vector, Field, Matrix, Subspace, Vector};

pub use builders::{
    matrix_algebra, matrix_to_vector, matrix_unit, product_algebra, trace_hyperplane, truncated_poly,
    upper_triangular, vector_to_matrix,
};
pub use hom::AlgebraHom;
pub use ideal::{ideal_violation, is_theta_ideal, theta_ideal_generated, IdealWitness, Side};
pub use power::{idempotents, is_nilpotent, nil_set, power_trajectory, radical_of_subspace, PowerTable, PowerTrajectory};

/// Which side(s) multipliers act from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theta {
    Left,
    Right,
    /// Mathieu: left and right. Ideals: two-sided.
    PreTwoSided,
    TwoSided,
}

impl Theta {
    pub const ALL: [Theta; 4] = [Theta::Left, Theta::Right, Theta::PreTwoSided, Theta::TwoSided];

    pub fn short_name(self) -> &'static str {
        match self {
            Theta::Left => "left",
            Theta::Right => "right",
            Theta::PreTwoSided => "pre",
            Theta::TwoSided => "two",
        }
    }

    /// The variant used for ideals: pre-two-sided ideals are two-sided.
    pub fn for_ideals(self) -> Theta {
        match self {
            Theta::PreTwoSided => Theta::TwoSided,
            t => t,
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Theta::Left),
            "right" => Ok(Theta::Right),
            "pre" | "pre-two-sided" => Ok(Theta::PreTwoSided),
            "two" | "two-sided" => Ok(Theta::TwoSided),
            _ => Err(Error::Invalid(format!("unknown theta {s:?} (left|right|pre|two)"))),
        }
    }
}

/// A unital associative algebra `A = K^dim` with `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    /// Flattened `c[i][j][k]` at `(i * dim + j) * dim + k`.
    structure: Vec<F::Elem>,
    unit: Vector<F>,
}

impl<F: Field> Algebra<F> {
    /// Builds and validates associativity on every basis triple and the
    /// unit axiom on every basis element.
    pub fn new(field: F, dim: usize, structure: Vec<F::Elem>, unit: Vector<F>) -> Result<Self> {
        let a = Self::new_unchecked(field, dim, structure, unit)?;
        a.validate()?;
        Ok(a)
    }

    /// Skips the O(dim^4) axiom check. Shapes are still verified.
    pub fn new_unchecked(field: F, dim: usize, structure: Vec<F::Elem>, unit: Vector<F>) -> Result<Self> {
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: structure.len() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: unit.len() });
        }
        Ok(Algebra { field, dim, structure, unit })
    }

    /// Builds from the table of basis products `products[i][j] = e_i e_j`.
    pub fn from_products(field: F, products: &[Vec<Vector<F>>], unit: Vector<F>) -> Result<Self> {
        let dim = products.len();
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for row in products {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                structure.extend(v.iter().cloned());
            }
        }
        Self::new(field, dim, structure, unit)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        let basis: Vec<Vector<F>> = (0..d).map(|i| unit_vector(&self.field, d, i)).collect();
        for i in 0..d {
            if self.multiply(&self.unit, &basis[i]) != basis[i] || self.multiply(&basis[i], &self.unit) != basis[i] {
                return Err(Error::UnitAxiom(i));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.multiply(&ij, &basis[k]);
                    let right = self.multiply(&basis[i], &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector<F> {
        &self.unit
    }

    pub fn zero(&self) -> Vector<F> {
        zero_vector(&self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Vector<F> {
        unit_vector(&self.field, self.dim, i)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector<F> {
        let start = (i * self.dim + j) * self.dim;
        self.structure[start..start + self.dim].to_vec()
    }

    pub fn multiply(&self, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        assert_eq!(a.len(), self.dim, "left factor has wrong length");
        assert_eq!(b.len(), self.dim, "right factor has wrong length");
        let f = &self.field;
        let d = self.dim;
        let mut out = zero_vector(f, d);
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let coef = f.mul(ai, bj);
                let start = (i * d + j) * d;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.structure[start + k];
                    if !f.is_zero(c) {
                        *slot = f.mul_add(slot, &coef, c);
                    }
                }
            }
        }
        out
    }

    pub fn try_multiply(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<Vector<F>> {
        for v in [a, b] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.multiply(a, b))
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_multiplication(&self, a: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.multiply(a, &self.basis_element(j))).collect();
        Matrix::from_columns(self.field.clone(), self.dim, &cols).expect("square")
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_multiplication(&self, a: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.multiply(&self.basis_element(j), a)).collect();
        Matrix::from_columns(self.field.clone(), self.dim, &cols).expect("square")
    }

    /// `a^m` for `m ≥ 1`.
    pub fn power(&self, a: &[F::Elem], m: usize) -> Vector<F> {
        assert!(m >= 1, "powers start at 1");
        let mut acc = a.to_vec();
        for _ in 1..m {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// `A^op`: `e_i * e_j := e_j e_i`.
    pub fn opposite(&self) -> Algebra<F> {
        let d = self.dim;
        let mut structure = Vec::with_capacity(self.structure.len());
        for i in 0..d {
            for j in 0..d {
                structure.extend(self.basis_product(j, i));
            }
        }
        Algebra { field: self.field.clone(), dim: d, structure, unit: self.unit.clone() }
    }

    /// `(J : a) = {b : b a ∈ J}`.
    pub fn colon(&self, j: &Subspace<F>, a: &[F::Elem]) -> Subspace<F> {
        Subspace::preimage(&self.right_multiplication(a), j).expect("shapes agree")
    }

    /// `a⁻¹J = {b : a b ∈ J}`.
    pub fn inverse_image(&self, a: &[F::Elem], j: &Subspace<F>) -> Subspace<F> {
        Subspace::preimage(&self.left_multiplication(a), j).expect("shapes agree")
    }

    /// Quotient by a two-sided ideal, in coordinates on the non-pivot
    /// columns of the ideal's canonical basis.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<(Algebra<F>, AlgebraHom<F>)> {
        if ideal.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: ideal.ambient() });
        }
        if !is_theta_ideal(self, ideal, Theta::TwoSided) {
            return Err(Error::NotIdeal);
        }
        let keep = ideal.non_pivots();
        let coords = |v: &Vector<F>| -> Vector<F> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let q = keep.len();
        let mut structure = Vec::with_capacity(q * q * q);
        for &a in &keep {
            for &b in &keep {
                structure.extend(coords(&self.basis_product(a, b)));
            }
        }
        let unit = coords(&self.unit);
        let quotient = Algebra::new(self.field.clone(), q, structure, unit)?;
        let columns: Vec<Vector<F>> = (0..self.dim).map(|j| coords(&self.basis_element(j))).collect();
        let proj = Matrix::from_columns(self.field.clone(), q, &columns)?;
        let hom = AlgebraHom::new(self.clone(), quotient.clone(), proj)?;
        Ok((quotient, hom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn matrix_unit_product() {
        let m2 = matrix_algebra(f(2), 2);
        // basis E11, E12, E21, E22
        assert_eq!(m2.multiply(&[1, 0, 0, 0], &[0, 1, 0, 0]), vec![0, 1, 0, 0]);
    }

    #[test]
    fn unit_acts_trivially() {
        let m2 = matrix_algebra(f(3), 2);
        let a = vec![2, 1, 0, 2];
        assert_eq!(m2.multiply(m2.unit(), &a), a);
        assert_eq!(m2.multiply(&a, m2.unit()), a);
    }

    #[test]
    fn split_product_has_orthogonal_idempotents() {
        let kk = product_algebra(f(2), 2);
        assert_eq!(kk.multiply(&[1, 0], &[0, 1]), vec![0, 0]);
        assert_eq!(kk.unit(), &vec![1, 1]);
        assert_eq!(kk.dim(), 2);
    }

    #[test]
    fn perturbed_constants_fail_associativity() {
        let a = truncated_poly(f(3), 3);
        let mut products: Vec<Vec<Vector<PrimeField>>> =
            (0..3).map(|i| (0..3).map(|j| a.basis_product(i, j)).collect()).collect();
        // x * x^2 = 0 changed to x; then (x x) x = 0 but x (x x) = x
        products[1][2] = vec![0, 1, 0];
        let err = Algebra::from_products(f(3), &products, a.unit().clone()).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn broken_unit_is_reported() {
        let a = truncated_poly(f(2), 2);
        let err = Algebra::new(f(2), 2, a.structure.clone(), vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::UnitAxiom(_)));
    }

    #[test]
    fn opposite_is_an_involution() {
        let t = upper_triangular(f(3), 2);
        let op = t.opposite();
        assert!(op.validate().is_ok());
        assert_ne!(op, t);
        assert_eq!(op.opposite(), t);
    }

    #[test]
    fn quotient_of_cubic_truncation() {
        let a = truncated_poly(f(2), 3);
        let ideal = Subspace::span(f(2), 3, &[vec![0, 0, 1]]).unwrap();
        let (q, proj) = a.quotient(&ideal).unwrap();
        assert_eq!(q, truncated_poly(f(2), 2));
        assert_eq!(proj.apply(&[1, 1, 1]), vec![1, 1]);
    }

    #[test]
    fn quotient_by_non_ideal_rejected() {
        let m2 = matrix_algebra(f(2), 2);
        let j = Subspace::span(f(2), 4, &[vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(m2.quotient(&j).unwrap_err(), Error::NotIdeal);
    }

    #[test]
    fn theta_parsing() {
        assert_eq!("pre".parse::<Theta>().unwrap(), Theta::PreTwoSided);
        assert_eq!("two-sided".parse::<Theta>().unwrap(), Theta::TwoSided);
        assert!("up".parse::<Theta>().is_err());
        assert_eq!(Theta::PreTwoSided.for_ideals(), Theta::TwoSided);
    }
}
