use crate::exactfield::{unit_vector, zero_vector, Field, Matrix, Subspace, Vector};

use super::Algebra;

/// Index of the matrix unit `E_ij` in the row-major basis of `M_n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `M_n(K)` on the basis `E_11, E_12, …, E_nn` (row-major).
pub fn matrix_algebra<F: Field>(field: F, n: usize) -> Algebra<F> {
    let d = n * n;
    let mut structure = vec![field.zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                let a = matrix_unit(n, i, j);
                let b = matrix_unit(n, j, l);
                structure[(a * d + b) * d + matrix_unit(n, i, l)] = field.one();
            }
        }
    }
    let mut unit = zero_vector(&field, d);
    for i in 0..n {
        unit[matrix_unit(n, i, i)] = field.one();
    }
    Algebra::new_unchecked(field, d, structure, unit).expect("well-formed")
}

/// `K^ℓ` with componentwise product; `ℓ = 2` is `K ∔ K`.
pub fn product_algebra<F: Field>(field: F, l: usize) -> Algebra<F> {
    let mut structure = vec![field.zero(); l * l * l];
    for i in 0..l {
        structure[(i * l + i) * l + i] = field.one();
    }
    let unit = vec![field.one(); l];
    Algebra::new_unchecked(field, l, structure, unit).expect("well-formed")
}

/// `K[x]/(x^k)` on the basis `1, x, …, x^{k-1}`.
pub fn truncated_poly<F: Field>(field: F, k: usize) -> Algebra<F> {
    assert!(k >= 1, "K[x]/(x^0) is the zero ring");
    let mut structure = vec![field.zero(); k * k * k];
    for i in 0..k {
        for j in 0..k - i {
            structure[(i * k + j) * k + i + j] = field.one();
        }
    }
    let unit = unit_vector(&field, k, 0);
    Algebra::new_unchecked(field, k, structure, unit).expect("well-formed")
}

/// Upper-triangular `n×n` matrices on the basis `E_ij`, `i ≤ j`, row-major.
pub fn upper_triangular<F: Field>(field: F, n: usize) -> Algebra<F> {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j)).expect("upper");
    let d = units.len();
    let mut structure = vec![field.zero(); d * d * d];
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                structure[(a * d + b) * d + index(i, l)] = field.one();
            }
        }
    }
    let mut unit = zero_vector(&field, d);
    for i in 0..n {
        unit[index(i, i)] = field.one();
    }
    Algebra::new_unchecked(field, d, structure, unit).expect("well-formed")
}

/// Coordinates of an `n×n` matrix in `M_n`.
pub fn matrix_to_vector<F: Field>(m: &Matrix<F>) -> Vector<F> {
    m.data().to_vec()
}

pub fn vector_to_matrix<F: Field>(field: &F, n: usize, v: &[F::Elem]) -> Matrix<F> {
    Matrix::new(field.clone(), n, n, v.to_vec()).expect("length n^2")
}

/// `H_X = {Y ∈ M_n : Tr(YX) = 0}`.
pub fn trace_hyperplane<F: Field>(field: &F, n: usize, x: &Matrix<F>) -> Subspace<F> {
    // Tr(YX) = Σ_{i,j} Y_ij X_ji
    let mut row = zero_vector(field, n * n);
    for i in 0..n {
        for j in 0..n {
            row[matrix_unit(n, i, j)] = x.get(j, i).clone();
        }
    }
    Matrix::from_rows(field.clone(), n * n, &[row]).expect("one row").right_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;

    #[test]
    fn builders_satisfy_axioms() {
        for p in [2u64, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for a in [
                matrix_algebra(f, 2),
                matrix_algebra(f, 1),
                product_algebra(f, 3),
                truncated_poly(f, 3),
                upper_triangular(f, 2),
                upper_triangular(f, 3),
            ] {
                a.validate().unwrap();
            }
        }
    }

    #[test]
    fn matrix_algebra_unit() {
        let a = matrix_algebra(PrimeField::new(2).unwrap(), 2);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.unit(), &vec![1, 0, 0, 1]);
    }

    #[test]
    fn trace_zero_hyperplane() {
        let f3 = PrimeField::new(3).unwrap();
        let h = trace_hyperplane(&f3, 2, &Matrix::identity(f3, 2));
        assert_eq!(h.dim(), 3);
        assert!(h.contains(&[1, 0, 0, 2]));
        assert!(h.contains(&[0, 1, 0, 0]));
        assert!(!h.contains(&[1, 0, 0, 0]));
    }
}
