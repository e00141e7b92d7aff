//! Exhaustive enumeration of vectors and subspaces over finite fields.

use crate::error::{Error, Result};
use crate::exactfield::{FiniteField, Subspace, Vector};

/// Default bound on the number of items any exhaustive scan will visit.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Enumeration caps. `elements` bounds element scans, `subspaces` bounds
/// subspace scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub elements: u64,
    pub subspaces: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { elements: DEFAULT_CAP, subspaces: DEFAULT_CAP }
    }
}

impl Caps {
    pub fn uniform(cap: u64) -> Self {
        Caps { elements: cap, subspaces: cap }
    }
}

/// `q^dim`, saturating.
pub fn count_vectors(q: u64, dim: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..dim {
        n = n.saturating_mul(q as u128);
    }
    n
}

pub fn check_cap(count: u128, cap: u64) -> Result<()> {
    if count > cap as u128 {
        Err(Error::CapExceeded { count, cap })
    } else {
        Ok(())
    }
}

/// Decodes `index` (base-`q`, most significant coordinate first).
pub fn vector_from_index<F: FiniteField>(field: &F, dim: usize, mut index: u64) -> Vector<F> {
    let q = field.order();
    let mut v = vec![field.zero(); dim];
    for slot in v.iter_mut().rev() {
        *slot = field.element(index % q);
        index /= q;
    }
    v
}

pub fn index_of_vector<F: FiniteField>(field: &F, v: &[F::Elem]) -> u64 {
    let q = field.order();
    v.iter().fold(0u64, |acc, x| acc * q + field.index_of(x))
}

/// Iterator over all of `F^dim` in lexicographic order.
#[derive(Debug, Clone)]
pub struct VectorIter<F: FiniteField> {
    field: F,
    dim: usize,
    next: u64,
    total: u64,
}

impl<F: FiniteField> Iterator for VectorIter<F> {
    type Item = Vector<F>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let v = vector_from_index(&self.field, self.dim, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl<F: FiniteField> ExactSizeIterator for VectorIter<F> {}

pub fn enumerate_vectors<F: FiniteField>(field: &F, dim: usize, cap: u64) -> Result<VectorIter<F>> {
    let count = count_vectors(field.order(), dim);
    check_cap(count, cap)?;
    Ok(VectorIter { field: field.clone(), dim, next: 0, total: count as u64 })
}

/// All elements of a subspace, enumerated through coefficient vectors on
/// its canonical basis.
pub fn subspace_elements<F: FiniteField>(s: &Subspace<F>, cap: u64) -> Result<Vec<Vector<F>>> {
    let coeffs = enumerate_vectors(s.field(), s.dim(), cap)?;
    let mut out: Vec<_> = coeffs.map(|c| s.combine(&c)).collect();
    out.sort();
    Ok(out)
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Total number of subspaces of `F_q^n`.
pub fn count_subspaces(n: usize, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).fold(0u128, |a, b| a.saturating_add(b))
}

/// Every subspace of `F^dim` exactly once, generated from RREF profiles:
/// for each pivot set, every filling of the free entries.
pub fn enumerate_subspaces<F: FiniteField>(field: &F, dim: usize, cap: u64) -> Result<Vec<Subspace<F>>> {
    let count = count_subspaces(dim, field.order());
    check_cap(count, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..=dim {
        for pivots in combinations(dim, k) {
            // free slots: (row r, column c) with c > pivot_r and c not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    ((p + 1)..dim).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            for fill in enumerate_vectors(field, free.len(), u64::MAX)? {
                let mut rows: Vec<Vector<F>> = pivots
                    .iter()
                    .map(|&p| crate::exactfield::unit_vector(field, dim, p))
                    .collect();
                for (&(r, c), x) in free.iter().zip(fill) {
                    rows[r][c] = x;
                }
                out.push(Subspace::from_rows_unchecked(field.clone(), dim, rows));
            }
        }
    }
    Ok(out)
}

/// Increasing `k`-subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;

    #[test]
    fn small_vector_listings() {
        let f2 = PrimeField::new(2).unwrap();
        let v: Vec<_> = enumerate_vectors(&f2, 1, DEFAULT_CAP).unwrap().collect();
        assert_eq!(v, vec![vec![0], vec![1]]);
        assert_eq!(enumerate_vectors(&f2, 2, DEFAULT_CAP).unwrap().count(), 4);
        let f3 = PrimeField::new(3).unwrap();
        let all: Vec<_> = enumerate_vectors(&f3, 3, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[26], vec![2, 2, 2]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn cap_refusal_reports_count() {
        let f3 = PrimeField::new(3).unwrap();
        match enumerate_vectors(&f3, 5, 100) {
            Err(Error::CapExceeded { count, cap }) => {
                assert_eq!(count, 243);
                assert_eq!(cap, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn index_round_trip() {
        let f5 = PrimeField::new(5).unwrap();
        for i in 0..125 {
            assert_eq!(index_of_vector(&f5, &vector_from_index(&f5, 3, i)), i);
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 2, DEFAULT_CAP).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(&f3, 1, DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(enumerate_subspaces(&f2, 3, DEFAULT_CAP).unwrap().len(), 16);
        assert_eq!(count_subspaces(4, 2), 67);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
    }

    #[test]
    fn enumerated_subspaces_are_distinct() {
        let f3 = PrimeField::new(3).unwrap();
        let subs = enumerate_subspaces(&f3, 3, DEFAULT_CAP).unwrap();
        let set: std::collections::HashSet<_> = subs.iter().cloned().collect();
        assert_eq!(set.len(), subs.len());
        assert_eq!(subs.len() as u128, count_subspaces(3, 3));
    }
}
