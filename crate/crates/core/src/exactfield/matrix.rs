use crate::error::{Error, Result};
use crate::exactfield::{Field, Subspace};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Coordinate vectors are plain `Vec`s of field elements.
pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vector<F: Field>(field: &F, n: usize) -> Vector<F> {
    vec![field.zero(); n]
}

pub fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn add_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn scale_vector<F: Field>(field: &F, c: &F::Elem, v: &[F::Elem]) -> Vector<F> {
    v.iter().map(|x| field.mul(c, x)).collect()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.mul_add(&acc, x, y))
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: F, cols: usize, rows: &[Vector<F>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vector<F>]) -> Result<Self> {
        let t = Matrix::from_rows(field, rows, columns)?;
        Ok(t.transpose())
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.field, &self.data)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut data = vec![f.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut data[i * other.cols + j];
                    *slot = f.mul_add(slot, a, other.get(k, j));
                }
            }
        }
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vector<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(&self.field, self.row(r), v)).collect())
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.check_same(&other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.data.len(), found: other.data.len() });
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.field, &self.data, &other.data),
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(&self.field, c, &self.data),
        }
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    /// Row space in canonical reduced row-echelon form, with its rank.
    pub fn rref(&self) -> (Subspace<F>, usize) {
        let s = Subspace::from_rows_unchecked(self.field.clone(), self.cols, self.row_vectors());
        let rank = s.dim();
        (s, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// `{v : self * v = 0}`.
    pub fn right_kernel(&self) -> Subspace<F> {
        let (rref, _) = self.rref();
        kernel_of_rref(&self.field, self.cols, rref.basis(), rref.pivots())
    }
}

/// Kernel of a matrix already in RREF (given by its nonzero rows and pivots).
pub(crate) fn kernel_of_rref<F: Field>(
    field: &F,
    cols: usize,
    rows: &[Vector<F>],
    pivots: &[usize],
) -> Subspace<F> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(field, cols);
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    Subspace::from_rows_unchecked(field.clone(), cols, basis)
}

/// Reduced row echelon form of the rows, in place. Returns pivot columns;
/// zero rows are dropped.
pub(crate) fn rref_rows<F: Field>(field: &F, cols: usize, rows: &mut Vec<Vector<F>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        if !field.is_one(&rows[r][c]) {
            for x in rows[r].iter_mut().skip(c) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let (s, rank) = Matrix::identity(f2(), 2).rref();
        assert_eq!(rank, 2);
        assert_eq!(s.basis(), &[vec![1, 0], vec![0, 1]]);
        let (z, rank) = Matrix::zeros(f2(), 2, 2).rref();
        assert_eq!(rank, 0);
        assert!(z.basis().is_empty());
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let m = Matrix::new(f2(), 2, 2, vec![1, 1, 1, 1]).unwrap();
        let (s, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(s.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::identity(f2(), 3).right_kernel().dim(), 0);
        assert_eq!(Matrix::zeros(f2(), 2, 2).right_kernel().dim(), 2);
        let f3 = PrimeField::new(3).unwrap();
        let k = Matrix::new(f3, 1, 2, vec![1, 1]).unwrap().right_kernel();
        assert_eq!(k.basis(), &[vec![1, 2]]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(f2(), 2);
        let b = Matrix::identity(PrimeField::new(3).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn rational_rref_is_exact() {
        let q = Rationals;
        let rows = vec![
            vec![q.from_i64(2), q.from_i64(4), q.from_i64(1)],
            vec![q.from_i64(1), q.from_i64(3), q.from_i64(0)],
        ];
        let m = Matrix::from_rows(q, 3, &rows).unwrap();
        let (s, rank) = m.rref();
        assert_eq!(rank, 2);
        let half = crate::exactfield::parse_rational("3/2").unwrap();
        assert_eq!(s.basis()[0][2], half);
        let k = m.right_kernel();
        assert_eq!(k.dim(), 1);
        assert!(is_zero_vector(&q, &m.mul_vec(&k.basis()[0]).unwrap()));
    }
}
