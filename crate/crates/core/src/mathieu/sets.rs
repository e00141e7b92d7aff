use std::collections::HashMap;

use crate::algebra::{is_theta_ideal, Theta};
use crate::error::{Error, Result};
use crate::exactfield::{check_cap, count_vectors, enumerate_vectors, FiniteField, Subspace, Vector};
use crate::modules::ModuleSpace;

use super::decide::{theta_index, MathieuDecider};

/// Which of the two element sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    /// `σ_ϑ(N)`: `(N:u)` is a ϑ-ideal.
    Stable,
    /// `τ_ϑ(N)`: `(N:u)` is ϑ-Mathieu.
    QuasiStable,
}

impl SetKind {
    pub fn name(self) -> &'static str {
        match self {
            SetKind::Stable => "sigma",
            SetKind::QuasiStable => "tau",
        }
    }
}

/// `σ_ϑ(N)` or `τ_ϑ(N)` for a subspace `N` of a module. Either an explicit
/// sorted list of members or, when the module is too large to scan, a
/// membership predicate.
#[derive(Debug, Clone)]
pub struct ElementSet<F: FiniteField> {
    kind: SetKind,
    theta: Theta,
    module: ModuleSpace<F>,
    subspace: Subspace<F>,
    decider: MathieuDecider<F>,
    members: Option<Vec<Vector<F>>>,
}

impl<F: FiniteField> ElementSet<F> {
    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn subspace(&self) -> &Subspace<F> {
        &self.subspace
    }

    pub fn is_explicit(&self) -> bool {
        self.members.is_some()
    }

    pub fn members(&self) -> Option<&[Vector<F>]> {
        self.members.as_deref()
    }

    pub fn contains(&self, u: &[F::Elem]) -> bool {
        match &self.members {
            Some(m) => m.binary_search_by(|x| x.as_slice().cmp(u)).is_ok(),
            None => member(&self.decider, &self.module, &self.subspace, u, self.kind, self.theta),
        }
    }
}

fn member<F: FiniteField>(
    decider: &MathieuDecider<F>,
    module: &ModuleSpace<F>,
    n: &Subspace<F>,
    u: &[F::Elem],
    kind: SetKind,
    theta: Theta,
) -> bool {
    let colon = module.colon(n, u);
    match kind {
        SetKind::Stable => is_theta_ideal(module.algebra(), &colon, theta),
        SetKind::QuasiStable => decider.is_mathieu(&colon, theta),
    }
}

fn check_module<F: FiniteField>(module: &ModuleSpace<F>, n: &Subspace<F>) -> Result<()> {
    if n.ambient() != module.dim() {
        return Err(Error::DimensionMismatch { expected: module.dim(), found: n.ambient() });
    }
    n.field().check_same(module.field())
}

/// `σ_ϑ(N)` or `τ_ϑ(N)`; a predicate handle when `|M|` exceeds `cap`.
/// The acting algebra must itself be scannable within `cap`.
pub fn element_set<F: FiniteField>(module: &ModuleSpace<F>, n: &Subspace<F>, theta: Theta, kind: SetKind, cap: u64) -> Result<ElementSet<F>> {
    check_module(module, n)?;
    let decider = MathieuDecider::new(module.algebra(), cap)?;
    let members = if check_cap(count_vectors(module.field().order(), module.dim()), cap).is_ok() {
        let table = StableSets::with_decider(module, n, &decider, cap)?;
        Some(table.set(kind, theta))
    } else {
        None
    };
    Ok(ElementSet { kind, theta, module: module.clone(), subspace: n.clone(), decider, members })
}

pub fn sigma<F: FiniteField>(module: &ModuleSpace<F>, n: &Subspace<F>, theta: Theta, cap: u64) -> Result<ElementSet<F>> {
    element_set(module, n, theta, SetKind::Stable, cap)
}

pub fn tau<F: FiniteField>(module: &ModuleSpace<F>, n: &Subspace<F>, theta: Theta, cap: u64) -> Result<ElementSet<F>> {
    element_set(module, n, theta, SetKind::QuasiStable, cap)
}

/// Every element of `M` with its membership in `σ_ϑ(N)` and `τ_ϑ(N)` for
/// all four ϑ at once. Elements are listed in lexicographic order. Colon
/// spaces repeat heavily, so each distinct one is decided once.
#[derive(Debug, Clone)]
pub struct StableSets<F: FiniteField> {
    elements: Vec<Vector<F>>,
    /// Index into `verdicts` for each element.
    class: Vec<usize>,
    /// Per distinct colon: `[σ flags; τ flags]`, indexed by ϑ.
    verdicts: Vec<[[bool; 4]; 2]>,
}

impl<F: FiniteField> StableSets<F> {
    pub fn new(module: &ModuleSpace<F>, n: &Subspace<F>, cap: u64) -> Result<Self> {
        check_module(module, n)?;
        let decider = MathieuDecider::new(module.algebra(), cap)?;
        Self::with_decider(module, n, &decider, cap)
    }

    pub fn with_decider(module: &ModuleSpace<F>, n: &Subspace<F>, decider: &MathieuDecider<F>, cap: u64) -> Result<Self> {
        check_module(module, n)?;
        let elements: Vec<Vector<F>> = enumerate_vectors(module.field(), module.dim(), cap)?.collect();
        #[cfg(feature = "parallel")]
        let colons: Vec<Subspace<F>> = {
            use rayon::prelude::*;
            elements.par_iter().map(|u| module.colon(n, u)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let colons: Vec<Subspace<F>> = elements.iter().map(|u| module.colon(n, u)).collect();

        let mut index: HashMap<&Subspace<F>, usize> = HashMap::new();
        let mut distinct: Vec<&Subspace<F>> = Vec::new();
        let class = colons
            .iter()
            .map(|c| {
                *index.entry(c).or_insert_with(|| {
                    distinct.push(c);
                    distinct.len() - 1
                })
            })
            .collect();
        let alg = module.algebra();
        let verdicts = distinct
            .iter()
            .map(|c| {
                let ideal = Theta::ALL.map(|t| is_theta_ideal(alg, c, t));
                let mathieu = Theta::ALL.map(|t| decider.is_mathieu(c, t));
                [ideal, mathieu]
            })
            .collect();
        Ok(StableSets { elements, class, verdicts })
    }

    pub fn elements(&self) -> &[Vector<F>] {
        &self.elements
    }

    pub fn is_member(&self, index: usize, kind: SetKind, theta: Theta) -> bool {
        let k = match kind {
            SetKind::Stable => 0,
            SetKind::QuasiStable => 1,
        };
        self.verdicts[self.class[index]][k][theta_index(theta)]
    }

    /// Sorted member list.
    pub fn set(&self, kind: SetKind, theta: Theta) -> Vec<Vector<F>> {
        (0..self.elements.len())
            .filter(|&i| self.is_member(i, kind, theta))
            .map(|i| self.elements[i].clone())
            .collect()
    }

    pub fn sigma(&self, theta: Theta) -> Vec<Vector<F>> {
        self.set(SetKind::Stable, theta)
    }

    pub fn tau(&self, theta: Theta) -> Vec<Vector<F>> {
        self.set(SetKind::QuasiStable, theta)
    }

    /// Number of distinct colon spaces met during the scan.
    pub fn distinct_colons(&self) -> usize {
        self.verdicts.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_poly};
    use crate::exactfield::{enumerate_subspaces, subspace_elements, PrimeField, DEFAULT_CAP};
    use crate::modules::{regular_module, standard_module};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn whole_module_is_stable() {
        let m = standard_module(f(2), 2);
        let full = Subspace::full(f(2), 2);
        for t in Theta::ALL {
            assert_eq!(sigma(&m, &full, t, DEFAULT_CAP).unwrap().members().unwrap().len(), 4);
            assert_eq!(tau(&m, &full, t, DEFAULT_CAP).unwrap().members().unwrap().len(), 4);
        }
    }

    #[test]
    fn zero_subspace_splits_on_theta() {
        let m = standard_module(f(2), 2);
        let zero = Subspace::zero(f(2), 2);
        assert_eq!(tau(&m, &zero, Theta::Left, DEFAULT_CAP).unwrap().members().unwrap().len(), 4);
        for t in [Theta::Right, Theta::PreTwoSided, Theta::TwoSided] {
            assert_eq!(tau(&m, &zero, t, DEFAULT_CAP).unwrap().members().unwrap(), &[vec![0, 0]]);
        }
    }

    #[test]
    fn predicate_agrees_with_list() {
        let m = regular_module(&matrix_algebra(f(2), 2));
        let j = Subspace::span(f(2), 4, &[vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        for t in Theta::ALL {
            let explicit = tau(&m, &j, t, DEFAULT_CAP).unwrap();
            // 16 algebra elements fit, 16 module elements do not
            let mut lazy = explicit.clone();
            lazy.members = None;
            for u in crate::exactfield::enumerate_vectors(&f(2), 4, DEFAULT_CAP).unwrap() {
                assert_eq!(explicit.contains(&u), lazy.contains(&u));
            }
        }
    }

    #[test]
    fn sigma_inside_tau_and_contains_zero() {
        let m = regular_module(&truncated_poly(f(3), 2));
        for n in enumerate_subspaces(&f(3), 2, DEFAULT_CAP).unwrap() {
            let table = StableSets::new(&m, &n, DEFAULT_CAP).unwrap();
            for t in Theta::ALL {
                let s = table.sigma(t);
                let q = table.tau(t);
                assert!(s.contains(&vec![0, 0]));
                assert!(s.iter().all(|u| q.contains(u)));
                // I_N = N ∩ σ = N ∩ τ
                let i = subspace_elements(&m.max_submodule(&n), DEFAULT_CAP).unwrap();
                let ns: Vec<_> = s.iter().filter(|u| n.contains(u)).cloned().collect();
                let nt: Vec<_> = q.iter().filter(|u| n.contains(u)).cloned().collect();
                assert_eq!(ns, i);
                assert_eq!(nt, i);
            }
        }
    }

    #[test]
    fn over_cap_gives_predicate() {
        let k = crate::algebra::product_algebra(f(2), 1);
        let m = ModuleSpace::new(k, 10, vec![crate::exactfield::Matrix::identity(f(2), 10)]).unwrap();
        let n = Subspace::span(f(2), 10, &[crate::exactfield::unit_vector(&f(2), 10, 0)]).unwrap();
        let s = sigma(&m, &n, Theta::Left, 1000).unwrap();
        assert!(!s.is_explicit());
        // (N:u) is 0 or K, both ideals
        assert!(s.contains(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]));
        let m3 = standard_module(f(3), 3);
        assert!(matches!(tau(&m3, &Subspace::zero(f(3), 3), Theta::Left, 100), Err(Error::CapExceeded { .. })));
    }
}
