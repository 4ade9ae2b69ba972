//! Gröbner bases of submodules of graded free modules, and the operations
//! built on them: syzygies, colon ideals, saturation, elimination of the
//! x-variables, square-free tests and ω-homogenization.

pub(crate) mod engine;
mod homogenize;
mod ideal_ops;
mod order;
pub(crate) mod syzygy;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::module::{GradedFreeModule, PolyVector};
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial, TermOrder};

use engine::{Reducer, Space, Vector};

pub use homogenize::{homogenize_omega, weight_vector_for, Homogenization};
pub use ideal_ops::{
    colon_by_polynomial, colon_by_vector, contract_to_parameter, is_squarefree, minimal_monomial_generators,
    saturate, submodule_contains, submodule_equal,
};
pub use order::{ModuleOrder, PositionRule};
pub use syzygy::{kernel, kernel_with_twists, syzygies, SyzygyModule};

/// Generators of a submodule `U` of a graded free module; stands for the
/// quotient module `ambient / U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodulePresentation<F: Field> {
    ambient: GradedFreeModule<F>,
    generators: Vec<PolyVector<F>>,
}

impl<F: Field> SubmodulePresentation<F> {
    pub fn new(ambient: &GradedFreeModule<F>, generators: Vec<PolyVector<F>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.module() != ambient) {
            return Err(AlgebraError::InvalidArgument(format!(
                "generator {g} does not live in the ambient module"
            )));
        }
        Ok(SubmodulePresentation {
            ambient: ambient.clone(),
            generators,
        })
    }

    /// An ideal of `ring`, viewed as a submodule of the rank-one free module.
    pub fn ideal(ring: &GradedRing<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let ambient = GradedFreeModule::free(ring, 1);
        let gens = generators
            .into_iter()
            .map(|g| ambient.vector(vec![g]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ambient, gens)
    }

    /// Parses ideal generators written in the ring's variable names.
    pub fn parse_ideal(ring: &GradedRing<F>, generators: &[&str]) -> Result<Self> {
        let polys = generators
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::ideal(ring, polys)
    }

    pub fn ambient(&self) -> &GradedFreeModule<F> {
        &self.ambient
    }

    pub fn ring(&self) -> &GradedRing<F> {
        self.ambient.ring()
    }

    pub fn generators(&self) -> &[PolyVector<F>] {
        &self.generators
    }

    pub fn is_ideal(&self) -> bool {
        self.ambient.rank() == 1
    }

    /// Generators of an ideal as polynomials.
    pub fn ideal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        if !self.is_ideal() {
            return Err(AlgebraError::InvalidArgument(
                "presentation is not an ideal".into(),
            ));
        }
        Ok(self
            .generators
            .iter()
            .map(|g| g.component(0).clone())
            .collect())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(AlgebraError::InvalidArgument(format!(
                "generator {g} is not homogeneous"
            ))),
            None => Ok(()),
        }
    }

    pub fn nonzero_generators(&self) -> impl Iterator<Item = &PolyVector<F>> {
        self.generators.iter().filter(|g| !g.is_zero())
    }
}

/// The order used internally when the caller does not pick one.
pub fn default_order<F: Field>(ring: &GradedRing<F>) -> TermOrder {
    if ring.has_parameter() {
        TermOrder::BlockXOverT
    } else {
        TermOrder::Grevlex
    }
}

/// A Gröbner basis of a submodule with respect to a module order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    module: GradedFreeModule<F>,
    order: ModuleOrder,
    elements: Vec<Vector<F::Elem>>,
    reduced: bool,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.order == other.order && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_parts(
        module: GradedFreeModule<F>,
        order: ModuleOrder,
        elements: Vec<Vector<F::Elem>>,
        reduced: bool,
    ) -> Self {
        GroebnerBasis {
            module,
            order,
            elements,
            reduced,
        }
    }

    pub fn module(&self) -> &GradedFreeModule<F> {
        &self.module
    }

    pub fn ring(&self) -> &GradedRing<F> {
        self.module.ring()
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the submodule is the whole ambient module.
    pub fn is_whole_module(&self) -> bool {
        let mut hit = vec![false; self.module.rank()];
        for e in &self.elements {
            if e[0].0.is_one() {
                hit[e[0].1] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub(crate) fn space(&self) -> Space<'_, F> {
        Space::new(self.module.ring(), &self.order, self.module.twists())
    }

    pub(crate) fn raw_elements(&self) -> &[Vector<F::Elem>] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<PolyVector<F>> {
        let sp = self.space();
        self.elements
            .iter()
            .map(|v| sp.to_poly_vector(v, &self.module))
            .collect()
    }

    /// Leading `(monomial, position)` of each element.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elements.iter().map(|v| (v[0].0.clone(), v[0].1)).collect()
    }

    pub fn to_presentation(&self) -> SubmodulePresentation<F> {
        SubmodulePresentation {
            ambient: self.module.clone(),
            generators: self.elements(),
        }
    }

    pub(crate) fn reduce_raw(&self, v: Vector<F::Elem>) -> Vector<F::Elem> {
        let red = Reducer::from_elements(self.elements.clone());
        red.reduce(&self.space(), v, true, None)
    }

    pub fn normal_form(&self, v: &PolyVector<F>) -> Result<PolyVector<F>> {
        if v.module() != &self.module {
            return Err(AlgebraError::OrderMismatch(
                "vector does not live in the module of the basis".into(),
            ));
        }
        let sp = self.space();
        let nf = self.reduce_raw(sp.from_poly_vector(v));
        Ok(sp.to_poly_vector(&nf, &self.module))
    }

    pub fn contains(&self, v: &PolyVector<F>) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Every S-vector reduces to zero (Buchberger's criterion).
    pub fn s_vectors_reduce_to_zero(&self) -> bool {
        let sp = self.space();
        let red = Reducer::from_elements(self.elements.clone());
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                if let Some(s) = engine::s_vector(&sp, &self.elements[i], &self.elements[j]) {
                    if !red.reduce(&sp, s, true, None).is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis under the term-over-position extension of `order`.
pub fn buchberger<F: Field>(gens: &SubmodulePresentation<F>, order: &TermOrder) -> GroebnerBasis<F> {
    let mo = ModuleOrder::term_over_position(order.clone(), gens.ambient.rank());
    groebner_basis(gens, &mo)
}

/// Reduced Gröbner basis under an arbitrary module order.
pub fn groebner_basis<F: Field>(gens: &SubmodulePresentation<F>, order: &ModuleOrder) -> GroebnerBasis<F> {
    assert_eq!(order.rank(), gens.ambient.rank(), "order rank mismatch");
    let sp = Space::new(gens.ring(), order, gens.ambient.twists());
    let raw = gens.generators.iter().map(|g| sp.from_poly_vector(g)).collect();
    let elements = engine::groebner(&sp, raw);
    GroebnerBasis::from_parts(gens.ambient.clone(), order.clone(), elements, true)
}

pub fn normal_form<F: Field>(v: &PolyVector<F>, basis: &GroebnerBasis<F>) -> Result<PolyVector<F>> {
    basis.normal_form(v)
}

/// The monomial submodule generated by the leading terms.
pub fn initial_module<F: Field>(basis: &GroebnerBasis<F>) -> SubmodulePresentation<F> {
    let ring = basis.ring();
    let one = ring.field().one();
    let gens = basis
        .leading_terms()
        .into_iter()
        .map(|(m, c)| {
            let mut comps = vec![Polynomial::zero(ring); basis.module.rank()];
            comps[c] = Polynomial::term(ring, m, one.clone());
            PolyVector::new(&basis.module, comps).expect("shape")
        })
        .collect();
    SubmodulePresentation {
        ambient: basis.module.clone(),
        generators: gens,
    }
}
