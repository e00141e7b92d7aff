//! Left modules over an [`Algebra`], given by one action matrix per basis
//! element of the algebra.

use crate::algebra::{matrix_unit, Algebra};
use crate::error::{Error, Result};
use crate::exactfield::{zero_vector, Field, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleSpace<F: Field> {
    algebra: Algebra<F>,
    dim: usize,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> ModuleSpace<F> {
    pub fn new(algebra: Algebra<F>, dim: usize, actions: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, dim, actions)?;
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes only.
    pub fn new_unchecked(algebra: Algebra<F>, dim: usize, actions: Vec<Matrix<F>>) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: actions.len() });
        }
        for a in &actions {
            a.field().check_same(algebra.field())?;
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim * dim, found: a.rows() * a.cols() });
            }
        }
        Ok(ModuleSpace { algebra, dim, actions })
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.algebra.field();
        if self.action_matrix(self.algebra.unit()) != Matrix::identity(f.clone(), self.dim) {
            return Err(Error::ModuleUnit);
        }
        for i in 0..self.algebra.dim() {
            for j in 0..self.algebra.dim() {
                let lhs = self.actions[i].mul(&self.actions[j])?;
                let rhs = self.action_matrix(&self.algebra.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::ModuleAxiom { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    pub fn zero(&self) -> Vector<F> {
        zero_vector(self.field(), self.dim)
    }

    /// Matrix of `u ↦ a·u`.
    pub fn action_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f.clone(), self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.actions) {
            if !f.is_zero(c) {
                out = out.add(&m.scale(c)).expect("square");
            }
        }
        out
    }

    pub fn act(&self, a: &[F::Elem], u: &[F::Elem]) -> Vector<F> {
        assert_eq!(a.len(), self.algebra.dim(), "algebra element has wrong length");
        assert_eq!(u.len(), self.dim, "module element has wrong length");
        let f = self.field();
        let mut out = zero_vector(f, self.dim);
        for (c, m) in a.iter().zip(&self.actions) {
            if f.is_zero(c) {
                continue;
            }
            let mu = m.mul_vec(u).expect("shape");
            for (x, y) in out.iter_mut().zip(&mu) {
                *x = f.mul_add(x, c, y);
            }
        }
        out
    }

    pub fn try_act(&self, a: &[F::Elem], u: &[F::Elem]) -> Result<Vector<F>> {
        if a.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim(), found: a.len() });
        }
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        Ok(self.act(a, u))
    }

    /// Matrix of the orbit map `A → M, a ↦ a·u`.
    pub fn orbit_map(&self, u: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = self.actions.iter().map(|m| m.mul_vec(u).expect("shape")).collect();
        Matrix::from_columns(self.field().clone(), self.dim, &cols).expect("shape")
    }

    /// `(N : u) = {a ∈ A : a·u ∈ N}`.
    pub fn colon(&self, n: &Subspace<F>, u: &[F::Elem]) -> Subspace<F> {
        Subspace::preimage(&self.orbit_map(u), n).expect("shape")
    }

    /// `a⁻¹N = {v ∈ M : a·v ∈ N}`.
    pub fn inverse_image(&self, a: &[F::Elem], n: &Subspace<F>) -> Subspace<F> {
        Subspace::preimage(&self.action_matrix(a), n).expect("shape")
    }

    pub fn is_submodule(&self, n: &Subspace<F>) -> bool {
        n.basis()
            .iter()
            .all(|v| self.actions.iter().all(|m| n.contains(&m.mul_vec(v).expect("shape"))))
    }

    /// `A·u`, the cyclic submodule generated by `u`.
    pub fn cyclic_submodule(&self, u: &[F::Elem]) -> Subspace<F> {
        Subspace::full(self.field().clone(), self.algebra.dim()).image(&self.orbit_map(u)).expect("shape")
    }

    /// Largest submodule `I_N` inside `N`.
    pub fn max_submodule(&self, n: &Subspace<F>) -> Subspace<F> {
        let mut v = n.clone();
        loop {
            let mut w = v.clone();
            for m in &self.actions {
                w = w.intersect(&Subspace::preimage(m, &v).expect("shape")).expect("shape");
            }
            if w == v {
                return v;
            }
            v = w;
        }
    }

    /// `M/V` on coordinates indexed by the non-pivot columns of `V`, with the
    /// projection.
    pub fn quotient(&self, v: &Subspace<F>) -> Result<(ModuleSpace<F>, ModuleHom<F>)> {
        if v.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.ambient() });
        }
        if !self.is_submodule(v) {
            return Err(Error::NotSubmodule);
        }
        let keep = v.non_pivots();
        let f = self.field().clone();
        let coords = |x: &[F::Elem]| -> Vector<F> {
            let r = v.reduce(x);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let q = keep.len();
        let mut actions = Vec::with_capacity(self.actions.len());
        for m in &self.actions {
            let cols: Vec<Vector<F>> = keep.iter().map(|&c| coords(&m.column(c))).collect();
            actions.push(Matrix::from_columns(f.clone(), q, &cols)?);
        }
        let quotient = ModuleSpace::new(self.algebra.clone(), q, actions)?;
        let proj_cols: Vec<Vector<F>> = (0..self.dim)
            .map(|j| coords(&crate::exactfield::unit_vector(&f, self.dim, j)))
            .collect();
        let proj = Matrix::from_columns(f, q, &proj_cols)?;
        let hom = ModuleHom::new(self.clone(), quotient.clone(), proj)?;
        Ok((quotient, hom))
    }

    /// `V ⊕ W` with block-diagonal actions.
    pub fn direct_sum(&self, other: &ModuleSpace<F>) -> Result<ModuleSpace<F>> {
        if self.algebra != other.algebra {
            return Err(Error::Invalid("direct sum of modules over different algebras".into()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let f = self.field().clone();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(f.clone(), d1 + d2, d1 + d2);
                for r in 0..d1 {
                    for c in 0..d1 {
                        m.set(r, c, a.get(r, c).clone());
                    }
                }
                for r in 0..d2 {
                    for c in 0..d2 {
                        m.set(d1 + r, d1 + c, b.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        Ok(ModuleSpace { algebra: self.algebra.clone(), dim: d1 + d2, actions })
    }
}

/// `A` as a left module over itself.
pub fn regular_module<F: Field>(alg: &Algebra<F>) -> ModuleSpace<F> {
    let actions = (0..alg.dim()).map(|i| alg.left_multiplication(&alg.basis_element(i))).collect();
    ModuleSpace { algebra: alg.clone(), dim: alg.dim(), actions }
}

/// `A` as a right module, i.e. a left module over `A^op`.
pub fn right_regular_module<F: Field>(alg: &Algebra<F>) -> ModuleSpace<F> {
    regular_module(&alg.opposite())
}

/// `K^n` over `M_n(K)` (matrix-vector product), with `M_n` built by
/// [`crate::algebra::matrix_algebra`].
pub fn standard_module<F: Field>(field: F, n: usize) -> ModuleSpace<F> {
    let alg = crate::algebra::matrix_algebra(field.clone(), n);
    let mut actions = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(field.clone(), n, n);
            m.set(i, j, field.one());
            debug_assert_eq!(actions.len(), matrix_unit(n, i, j));
            actions.push(m);
        }
    }
    ModuleSpace { algebra: alg, dim: n, actions }
}

/// `K^n` as a module over the upper-triangular matrices.
pub fn triangular_module<F: Field>(field: F, n: usize) -> ModuleSpace<F> {
    let alg = crate::algebra::upper_triangular(field.clone(), n);
    let mut actions = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut m = Matrix::zeros(field.clone(), n, n);
            m.set(i, j, field.one());
            actions.push(m);
        }
    }
    ModuleSpace { algebra: alg, dim: n, actions }
}

/// Basis of the space of module homomorphisms `source → target`, each a
/// `target.dim × source.dim` matrix `X` with `X·S_i = T_i·X` for every
/// basis action.
pub fn hom_space<F: Field>(source: &ModuleSpace<F>, target: &ModuleSpace<F>) -> Result<Vec<Matrix<F>>> {
    if source.algebra != target.algebra {
        return Err(Error::Invalid("modules over different algebras".into()));
    }
    let (m1, m2) = (source.dim, target.dim);
    let f = source.field().clone();
    let var = |r: usize, c: usize| r * m1 + c;
    let mut rows: Vec<Vector<F>> = Vec::new();
    for (s, t) in source.actions.iter().zip(&target.actions) {
        for r in 0..m2 {
            for c in 0..m1 {
                let mut row = zero_vector(&f, m1 * m2);
                for k in 0..m1 {
                    let x = &mut row[var(r, k)];
                    *x = f.add(x, s.get(k, c));
                }
                for k in 0..m2 {
                    let x = &mut row[var(k, c)];
                    *x = f.sub(x, t.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Subspace::full(f.clone(), m1 * m2)
    } else {
        Matrix::from_rows(f.clone(), m1 * m2, &rows)?.right_kernel()
    };
    kernel.basis().iter().map(|v| Matrix::new(f.clone(), m2, m1, v.clone())).collect()
}

/// Homomorphism of left modules over a common algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom<F: Field> {
    source: ModuleSpace<F>,
    target: ModuleSpace<F>,
    matrix: Matrix<F>,
}

impl<F: Field> ModuleHom<F> {
    pub fn new(source: ModuleSpace<F>, target: ModuleSpace<F>, matrix: Matrix<F>) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::Invalid("module homomorphism between modules over different algebras".into()));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch { expected: target.dim * source.dim, found: matrix.rows() * matrix.cols() });
        }
        for (i, (s, t)) in source.actions.iter().zip(&target.actions).enumerate() {
            if matrix.mul(s)? != t.mul(&matrix)? {
                return Err(Error::NotModuleHom(i));
            }
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn source(&self) -> &ModuleSpace<F> {
        &self.source
    }

    pub fn target(&self) -> &ModuleSpace<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, u: &[F::Elem]) -> Vector<F> {
        self.matrix.mul_vec(u).expect("source-dimension vector")
    }

    /// `φ⁻¹(H)`.
    pub fn pullback_subspace(&self, h: &Subspace<F>) -> Result<Subspace<F>> {
        Subspace::preimage(&self.matrix, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, trace_hyperplane, truncated_poly};
    use crate::exactfield::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn builders_satisfy_module_axioms() {
        for p in [2, 3] {
            standard_module(f(p), 2).validate().unwrap();
            standard_module(f(p), 3).validate().unwrap();
            triangular_module(f(p), 3).validate().unwrap();
            regular_module(&matrix_algebra(f(p), 2)).validate().unwrap();
            right_regular_module(&crate::algebra::upper_triangular(f(p), 2)).validate().unwrap();
            let m = standard_module(f(p), 2);
            m.direct_sum(&m).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn bad_action_rejected() {
        let m = standard_module(f(2), 2);
        let mut actions = m.actions().to_vec();
        actions.swap(0, 1);
        let err = ModuleSpace::new(m.algebra().clone(), 2, actions).unwrap_err();
        assert!(matches!(err, Error::ModuleUnit | Error::ModuleAxiom { .. }));
    }

    #[test]
    fn act_examples() {
        let m = standard_module(f(2), 2);
        let u = vec![1, 1];
        assert_eq!(m.act(m.algebra().unit(), &u), u);
        assert_eq!(m.act(&[1, 0, 0, 0], &[0, 1]), vec![0, 0]);
        assert_eq!(m.act(&[0, 0, 0, 0], &u), vec![0, 0]);
    }

    #[test]
    fn colon_examples() {
        let m = standard_module(f(2), 2);
        let n = Subspace::span(f(2), 2, &[vec![1, 0]]).unwrap();
        assert!(m.colon(&n, &[0, 0]).is_full());
        let c = m.colon(&Subspace::zero(f(2), 2), &[1, 0]);
        assert_eq!(c.dim(), 2);
        // Y e1 = 0 means the first column of Y vanishes
        for v in c.basis() {
            assert_eq!(v[matrix_unit(2, 0, 0)], 0);
            assert_eq!(v[matrix_unit(2, 1, 0)], 0);
        }
    }

    #[test]
    fn colon_of_trace_hyperplane() {
        let p = f(5);
        let a = matrix_algebra(p, 2);
        let reg = regular_module(&a);
        let x = crate::exactfield::Matrix::new(p, 2, 2, vec![1, 2, 3, 4]).unwrap();
        let y = crate::exactfield::Matrix::new(p, 2, 2, vec![0, 1, 4, 2]).unwrap();
        let hx = trace_hyperplane(&p, 2, &x);
        let yx = y.mul(&x).unwrap();
        assert_eq!(reg.colon(&hx, y.data()), trace_hyperplane(&p, 2, &yx));
    }

    #[test]
    fn inverse_image_examples() {
        let m = standard_module(f(2), 2);
        let n = Subspace::span(f(2), 2, &[vec![1, 0]]).unwrap();
        assert_eq!(m.inverse_image(m.algebra().unit(), &n), n);
        assert!(m.inverse_image(&[0, 0, 0, 0], &n).is_full());
        assert!(m.inverse_image(&[1, 0, 0, 0], &n).is_full());
    }

    #[test]
    fn max_submodule_examples() {
        let m = standard_module(f(2), 2);
        let n = Subspace::span(f(2), 2, &[vec![1, 0]]).unwrap();
        assert!(m.max_submodule(&n).is_zero());
        let full = Subspace::full(f(2), 2);
        assert_eq!(m.max_submodule(&full), full);

        let p = f(5);
        let reg = regular_module(&matrix_algebra(p, 2));
        let x = crate::exactfield::Matrix::new(p, 2, 2, vec![1, 0, 0, 0]).unwrap();
        let h = trace_hyperplane(&p, 2, &x);
        // {Y : YX = 0} is spanned by E12, E22
        let expected = Subspace::span(p, 4, &[vec![0, 1, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(reg.max_submodule(&h), expected);
    }

    #[test]
    fn quotient_examples() {
        let reg = regular_module(&truncated_poly(f(2), 2));
        let v = Subspace::span(f(2), 2, &[vec![0, 1]]).unwrap();
        let (q, proj) = reg.quotient(&v).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.actions()[1].is_zero());
        assert_eq!(proj.apply(&[1, 1]), vec![1]);
        let (same, _) = reg.quotient(&Subspace::zero(f(2), 2)).unwrap();
        assert_eq!(same.dim(), 2);
        let (triv, _) = reg.quotient(&Subspace::full(f(2), 2)).unwrap();
        assert_eq!(triv.dim(), 0);
        let m = standard_module(f(2), 2);
        assert_eq!(m.quotient(&v).unwrap_err(), Error::NotSubmodule);
    }

    #[test]
    fn pullback_examples() {
        let p = f(2);
        let alg = crate::algebra::product_algebra(p, 1);
        let one = |d: usize| {
            ModuleSpace::new(alg.clone(), d, vec![Matrix::identity(p, d)]).unwrap()
        };
        let line = one(1);
        let plane = one(2);
        let emb = ModuleHom::new(line, plane.clone(), Matrix::new(p, 2, 1, vec![1, 0]).unwrap()).unwrap();
        let h = Subspace::span(p, 2, &[vec![0, 1]]).unwrap();
        assert!(emb.pullback_subspace(&h).unwrap().is_zero());
        let id = ModuleHom::new(plane.clone(), plane.clone(), Matrix::identity(p, 2)).unwrap();
        assert_eq!(id.pullback_subspace(&h).unwrap(), h);
        let zero = ModuleHom::new(plane.clone(), plane, Matrix::zeros(p, 2, 2)).unwrap();
        assert!(zero.pullback_subspace(&h).unwrap().is_full());
    }

    #[test]
    fn hom_spaces() {
        let p = f(3);
        let k2 = standard_module(p, 2);
        // End of a simple module over M_2 is K
        let end = hom_space(&k2, &k2).unwrap();
        assert_eq!(end.len(), 1);
        let reg = regular_module(&matrix_algebra(p, 2));
        let homs = hom_space(&reg, &k2).unwrap();
        // Hom(A, M) = M via 1 ↦ u
        assert_eq!(homs.len(), 2);
        for h in homs {
            ModuleHom::new(reg.clone(), k2.clone(), h).unwrap();
        }
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let m = standard_module(f(3), 2);
        let proj = Matrix::new(f(3), 2, 2, vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(ModuleHom::new(m.clone(), m, proj), Err(Error::NotModuleHom(_))));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::exactfield::{enumerate_subspaces, PrimeField, DEFAULT_CAP};
    use proptest::prelude::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    proptest! {
        #[test]
        fn colon_of_product(a in prop::collection::vec(0u32..3, 4),
                            u in prop::collection::vec(0u32..3, 2),
                            rows in prop::collection::vec(prop::collection::vec(0u32..3, 2), 0..2)) {
            let m = standard_module(f3(), 2);
            let alg = m.algebra().clone();
            let n = Subspace::span(f3(), 2, &rows).unwrap();
            let au = m.act(&a, &u);
            prop_assert_eq!(m.colon(&n, &au), alg.colon(&m.colon(&n, &u), &a));
        }

        #[test]
        fn colon_commutes_with_intersection(u in prop::collection::vec(0u32..3, 4),
                                            r1 in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4),
                                            r2 in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4)) {
            let reg = regular_module(&matrix_algebra(f3(), 2));
            let n1 = Subspace::span(f3(), 4, &r1).unwrap();
            let n2 = Subspace::span(f3(), 4, &r2).unwrap();
            let lhs = reg.colon(&n1.intersect(&n2).unwrap(), &u);
            let rhs = reg.colon(&n1, &u).intersect(&reg.colon(&n2, &u)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn max_submodule_is_maximal() {
        let m = triangular_module(PrimeField::new(2).unwrap(), 3);
        let all = enumerate_subspaces(m.field(), 3, DEFAULT_CAP).unwrap();
        for n in &all {
            let i = m.max_submodule(n);
            assert!(i.is_subspace_of(n));
            assert!(m.is_submodule(&i));
            for s in &all {
                if s.is_subspace_of(n) && m.is_submodule(s) {
                    assert!(s.is_subspace_of(&i));
                }
            }
        }
    }
}
