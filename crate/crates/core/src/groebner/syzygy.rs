//! Schreyer syzygies of Gröbner bases and kernels of module maps.

use std::cmp::Ordering;

use crate::error::Result;
use crate::field::Field;
use crate::module::{GradedFreeModule, PolyVector};
use crate::ring::Monomial;

use super::engine::{self, Reducer, Space, Term, Vector};
use super::order::ModuleOrder;
use super::{default_order, GroebnerBasis, SubmodulePresentation};

/// The syzygy module of a Gröbner basis, together with the basis elements
/// (in the order used for the new free module) it is a kernel of.
#[derive(Debug, Clone)]
pub struct SyzygyModule<F: Field> {
    sources: Vec<PolyVector<F>>,
    basis: GroebnerBasis<F>,
}

impl<F: Field> SyzygyModule<F> {
    /// Images of the basis elements of the syzygy module's ambient module.
    pub fn sources(&self) -> &[PolyVector<F>] {
        &self.sources
    }

    /// The syzygies, a Gröbner basis under the induced Schreyer order.
    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    pub fn presentation(&self) -> SubmodulePresentation<F> {
        self.basis.to_presentation()
    }

    pub fn into_parts(self) -> (Vec<PolyVector<F>>, GroebnerBasis<F>) {
        (self.sources, self.basis)
    }
}

fn lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.exponents().cmp(a.exponents())
}

/// Syzygies of `G` by Schreyer's algorithm.
///
/// The elements of `G` are first sorted by leading position and then by
/// descending lex order of their leading monomials; this ordering makes
/// the iterated construction terminate after at most as many steps as
/// there are variables.
pub fn syzygies<F: Field>(g: &GroebnerBasis<F>) -> SyzygyModule<F> {
    let sp = g.space();
    let mut elems: Vec<Vector<F::Elem>> = g.raw_elements().to_vec();
    elems.sort_by(|a, b| a[0].1.cmp(&b[0].1).then_with(|| lex_desc(&a[0].0, &b[0].0)));
    let (basis, _) = schreyer_level(&sp, &elems, g.module());
    let sources = elems.iter().map(|v| sp.to_poly_vector(v, g.module())).collect();
    SyzygyModule { sources, basis }
}

/// Pairwise syzygies of monic `elems` sharing leading positions, pruned so
/// that the leading terms stay minimal. Also returns the new free module.
pub(crate) fn schreyer_level<F: Field>(
    sp: &Space<'_, F>,
    elems: &[Vector<F::Elem>],
    module: &GradedFreeModule<F>,
) -> (GroebnerBasis<F>, GradedFreeModule<F>) {
    let field = sp.field();
    let one = field.one();
    let leads: Vec<(Monomial, usize)> = elems.iter().map(|v| (v[0].0.clone(), v[0].1)).collect();
    let twists: Vec<i64> = leads.iter().map(|(m, c)| sp.degree(m, *c)).collect();
    let target = GradedFreeModule::new(module.ring(), twists);
    let order = sp.order.schreyer(&leads);
    let tsp = Space::new(module.ring(), &order, target.twists());
    let red = Reducer::from_elements(elems.to_vec());

    let mut out: Vec<Vector<F::Elem>> = Vec::new();
    for i in 0..elems.len() {
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for j in i + 1..elems.len() {
            if leads[i].1 != leads[j].1 {
                continue;
            }
            let qi = leads[i].0.quotient_into(&leads[i].0.lcm(&leads[j].0)).expect("lcm");
            cands.push((j, qi));
        }
        let keep: Vec<&(usize, Monomial)> = cands
            .iter()
            .enumerate()
            .filter(|(k, (_, q))| {
                !cands
                    .iter()
                    .enumerate()
                    .any(|(l, (_, p))| l != *k && p.divides(q) && (p != q || l < *k))
            })
            .map(|(_, c)| c)
            .collect();
        for (j, qi) in keep {
            let l = leads[i].0.mul(qi);
            let qj = leads[*j].0.quotient_into(&l).expect("lcm");
            let s = sp.mul_monomial(&elems[i], qi, &one);
            let s = sp.axpy(&s, &one, &qj, &elems[*j]);
            let mut quots = Vec::new();
            let rem = red.reduce(sp, s, true, Some(&mut quots));
            debug_assert!(rem.is_empty(), "basis is not a Gröbner basis");
            let mut terms: Vec<Term<F::Elem>> = vec![(qi.clone(), i, one.clone()), (qj, *j, field.neg(&one))];
            for (k, m, c) in quots {
                terms.push((m, k, field.neg(&c)));
            }
            let v = tsp.normalize(terms);
            debug_assert_eq!(v[0].1, i);
            out.push(v);
        }
    }
    out.sort_by(|a, b| tsp.cmp(&a[0].0, a[0].1, &b[0].0, b[0].1));
    (
        GroebnerBasis::from_parts(target.clone(), order, out, false),
        target,
    )
}

/// Generators of the kernel of `R^n -> F`, `e_j -> vectors[j]`. Basis
/// elements of the source are twisted by the degrees of the images.
pub fn kernel<F: Field>(
    ambient: &GradedFreeModule<F>,
    vectors: &[PolyVector<F>],
) -> Result<SubmodulePresentation<F>> {
    let twists: Vec<i64> = vectors.iter().map(|v| vector_degree(v)).collect();
    kernel_with_twists(ambient, vectors, twists)
}

/// [`kernel`] with prescribed source twists, which matter for zero images.
pub fn kernel_with_twists<F: Field>(
    ambient: &GradedFreeModule<F>,
    vectors: &[PolyVector<F>],
    src_twists: Vec<i64>,
) -> Result<SubmodulePresentation<F>> {
    assert_eq!(src_twists.len(), vectors.len());
    let ring = ambient.ring();
    let n = vectors.len();
    let high = ambient.rank();
    let source = GradedFreeModule::new(ring, src_twists.clone());
    let mut twists = ambient.twists().to_vec();
    twists.extend(&src_twists);
    let order = ModuleOrder::eliminating(default_order(ring), high, n);
    let sp = Space::new(ring, &order, &twists);
    let one = ring.field().one();
    let gens: Vec<Vector<F::Elem>> = vectors
        .iter()
        .enumerate()
        .map(|(j, v)| {
            if v.module() != ambient {
                return Err(crate::error::AlgebraError::InvalidArgument(
                    "kernel input lives in another module".into(),
                ));
            }
            let mut terms: Vec<Term<F::Elem>> = Vec::new();
            for (c, p) in v.components().iter().enumerate() {
                for (m, a) in p.terms() {
                    terms.push((m.clone(), c, a.clone()));
                }
            }
            terms.push((ring.one_monomial(), high + j, one.clone()));
            Ok(sp.normalize(terms))
        })
        .collect::<Result<_>>()?;
    let basis = engine::groebner(&sp, gens);
    let lsp_order = ModuleOrder::term_over_position(default_order(ring), n);
    let lsp = Space::new(ring, &lsp_order, source.twists());
    let gens = basis
        .into_iter()
        .filter(|v| v[0].1 >= high)
        .map(|v| {
            let shifted: Vec<Term<F::Elem>> = v.into_iter().map(|(m, c, a)| (m, c - high, a)).collect();
            lsp.to_poly_vector(&shifted, &source)
        })
        .collect();
    SubmodulePresentation::new(&source, gens)
}

/// Degree of a homogeneous vector; for inhomogeneous ones the largest
/// degree of a term, and 0 for zero.
pub(crate) fn vector_degree<F: Field>(v: &PolyVector<F>) -> i64 {
    if let Some(d) = v.degree() {
        return d;
    }
    let ring = v.module().ring();
    v.components()
        .iter()
        .zip(v.module().twists())
        .flat_map(|(p, tw)| p.terms().iter().map(move |(m, _)| ring.degree(m) + tw))
        .max()
        .unwrap_or(0)
}
