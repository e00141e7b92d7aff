use crate::error::{Error, Result};
use crate::exactfield::matrix::{kernel_of_rref, rref_rows, zero_vector};
use crate::exactfield::{Field, Matrix, Vector};

/// A linear subspace of `K^n`, always held in canonical reduced row-echelon
/// form so that set equality is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| crate::exactfield::unit_vector(&field, ambient, i))
            .collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: F, ambient: usize, vectors: &[Vector<F>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: bad.len() });
        }
        Ok(Self::from_rows_unchecked(field, ambient, vectors.to_vec()))
    }

    pub(crate) fn from_rows_unchecked(field: F, ambient: usize, mut rows: Vec<Vector<F>>) -> Self {
        let pivots = rref_rows(&field, ambient, &mut rows);
        Subspace { field, ambient, basis: rows, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Columns that are not pivots; coordinates on these parametrise the
    /// quotient `K^n / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical representative of `v + self`: zero in every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(v.len(), self.ambient, "vector length must match the ambient dimension");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (x, y) in out.iter_mut().zip(row).skip(p) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        out
    }

    /// Panics if `v` has the wrong length.
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v);
        r.iter().all(|x| self.field.is_zero(x))
    }

    pub fn try_contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        Ok(self.contains(v))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(self.field.clone(), self.ambient, rows))
    }

    /// Zassenhaus: row-reduce `[u | u]` over `[v | 0]`; rows with zero left
    /// half carry the intersection in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.ambient;
        let f = &self.field;
        let mut rows: Vec<Vector<F>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(zero_vector(f, n));
            rows.push(r);
        }
        let pivots = rref_rows(f, 2 * n, &mut rows);
        let inter = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::from_rows_unchecked(f.clone(), n, inter))
    }

    /// Rows spanning the annihilator of `self` under the standard pairing,
    /// so that `self = {v : equations * v = 0}`.
    pub fn equations(&self) -> Matrix<F> {
        let k = kernel_of_rref(&self.field, self.ambient, &self.basis, &self.pivots);
        Matrix::from_rows(self.field.clone(), self.ambient, k.basis())
            .expect("kernel vectors have ambient length")
    }

    /// `{x : map * x ∈ target}` for a linear map given by its matrix.
    pub fn preimage(map: &Matrix<F>, target: &Self) -> Result<Self> {
        map.field().check_same(&target.field)?;
        if map.rows() != target.ambient {
            return Err(Error::DimensionMismatch { expected: target.ambient, found: map.rows() });
        }
        if target.is_full() {
            return Ok(Self::full(target.field.clone(), map.cols()));
        }
        let eq = target.equations();
        Ok(eq.mul(map)?.right_kernel())
    }

    pub fn image(&self, map: &Matrix<F>) -> Result<Self> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: map.cols() });
        }
        let imgs = self.basis.iter().map(|v| map.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(self.field.clone(), map.rows(), imgs))
    }

    /// Coordinates of `v` (assumed to lie in `self`) on the canonical basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vector<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vector(f, self.ambient);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x = f.mul_add(x, c, y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let u = Subspace::span(f2(), 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(u.sum(&Subspace::zero(f2(), 3)).unwrap(), u);
    }

    #[test]
    fn coordinate_lines_meet_in_zero() {
        let a = Subspace::span(f2(), 2, &[vec![1, 0]]).unwrap();
        let b = Subspace::span(f2(), 2, &[vec![0, 1]]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn two_lines_span_the_plane() {
        let a = Subspace::span(f2(), 2, &[vec![1, 0]]).unwrap();
        let b = Subspace::span(f2(), 2, &[vec![1, 1]]).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Subspace::zero(f2(), 2);
        let b = Subspace::zero(f2(), 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.try_contains(&[0, 0, 0]).is_err());
    }

    #[test]
    fn equations_cut_out_the_subspace() {
        let f5 = PrimeField::new(5).unwrap();
        let s = Subspace::span(f5, 4, &[vec![1, 2, 0, 3], vec![0, 1, 1, 1]]).unwrap();
        let eq = s.equations();
        assert_eq!(eq.right_kernel(), s);
    }

    #[test]
    fn preimage_of_line_under_embedding() {
        // span{e1} -> F_2^2, preimage of span{e2} is zero
        let emb = Matrix::new(f2(), 2, 1, vec![1, 0]).unwrap();
        let h = Subspace::span(f2(), 2, &[vec![0, 1]]).unwrap();
        assert!(Subspace::preimage(&emb, &h).unwrap().is_zero());
    }
}
