//! Colon ideals, saturation, elimination of the x-variables and monomial tests.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::module::PolyVector;
use crate::poly::Polynomial;
use crate::ring::{Monomial, TermOrder};

use super::order::ModuleOrder;
use super::syzygy::kernel;
use super::{buchberger, default_order, groebner_basis, GroebnerBasis, SubmodulePresentation};

fn default_basis<F: Field>(u: &SubmodulePresentation<F>) -> GroebnerBasis<F> {
    buchberger(u, &default_order(u.ring()))
}

/// `(U : h) = { v : h v ∈ U }`.
pub fn colon_by_polynomial<F: Field>(
    u: &SubmodulePresentation<F>,
    h: &Polynomial<F>,
) -> Result<SubmodulePresentation<F>> {
    if h.ring() != u.ring() {
        return Err(AlgebraError::RingMismatch("colon by a polynomial of another ring".into()));
    }
    let amb = u.ambient();
    let n = amb.rank();
    let mut cols: Vec<PolyVector<F>> = (0..n)
        .map(|j| {
            let mut comps = vec![Polynomial::zero(u.ring()); n];
            comps[j] = h.clone();
            PolyVector::new(amb, comps)
        })
        .collect::<Result<_>>()?;
    cols.extend(u.nonzero_generators().cloned());
    let k = kernel(amb, &cols)?;
    let gens = k
        .generators()
        .iter()
        .map(|v| amb.vector(v.components()[..n].to_vec()))
        .filter(|v| v.as_ref().map_or(true, |v| !v.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    let p = SubmodulePresentation::new(amb, gens)?;
    Ok(default_basis(&p).to_presentation())
}

/// The ideal `(U : s) = { a : a s ∈ U }`.
pub fn colon_by_vector<F: Field>(
    u: &SubmodulePresentation<F>,
    s: &PolyVector<F>,
) -> Result<SubmodulePresentation<F>> {
    let amb = u.ambient();
    let mut cols = vec![s.clone()];
    cols.extend(u.nonzero_generators().cloned());
    let k = kernel(amb, &cols)?;
    let ring = u.ring();
    let gens: Vec<Polynomial<F>> = k
        .generators()
        .iter()
        .map(|v| v.component(0).clone())
        .filter(|p| !p.is_zero())
        .collect();
    let p = SubmodulePresentation::ideal(ring, gens)?;
    Ok(default_basis(&p).to_presentation())
}

/// Whether every generator of `v` lies in `u`.
pub fn submodule_contains<F: Field>(u: &SubmodulePresentation<F>, v: &SubmodulePresentation<F>) -> Result<bool> {
    let g = default_basis(u);
    for x in v.generators() {
        if !g.contains(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn submodule_equal<F: Field>(u: &SubmodulePresentation<F>, v: &SubmodulePresentation<F>) -> Result<bool> {
    if u.ambient() != v.ambient() {
        return Ok(false);
    }
    Ok(default_basis(u) == default_basis(v))
}

/// `(U : h^∞)`, by iterating the colon until it stabilizes. The result is
/// given by its reduced Gröbner basis under the default order.
pub fn saturate<F: Field>(u: &SubmodulePresentation<F>, h: &Polynomial<F>) -> Result<SubmodulePresentation<F>> {
    if h.is_zero() {
        return Err(AlgebraError::InvalidArgument("cannot saturate by zero".into()));
    }
    let mut cur = default_basis(u);
    if h.is_unit() {
        return Ok(cur.to_presentation());
    }
    loop {
        let next = colon_by_polynomial(&cur.to_presentation(), h)?;
        let nb = default_basis(&next);
        if nb == cur {
            return Ok(cur.to_presentation());
        }
        cur = nb;
    }
}

/// Generators of `I ∩ k[t]` for an ideal of `k[t][x]`.
pub fn contract_to_parameter<F: Field>(i: &SubmodulePresentation<F>) -> Result<Vec<Polynomial<F>>> {
    let ring = i.ring();
    if !ring.has_parameter() {
        return Err(AlgebraError::InvalidArgument(
            "contraction needs a parameter variable".into(),
        ));
    }
    if !i.is_ideal() {
        return Err(AlgebraError::InvalidArgument("contraction applies to ideals".into()));
    }
    let g = groebner_basis(i, &ModuleOrder::term_over_position(TermOrder::BlockXOverT, 1));
    Ok(g
        .elements()
        .into_iter()
        .map(|v| v.into_components().remove(0))
        .filter(|p| p.is_parameter_only())
        .collect())
}

fn monomial_of<F: Field>(v: &PolyVector<F>) -> Result<Option<(Monomial, usize)>> {
    let mut found = None;
    for (c, p) in v.components().iter().enumerate() {
        match p.len() {
            0 => {}
            1 if found.is_none() => found = Some((p.terms()[0].0.clone(), c)),
            _ => {
                return Err(AlgebraError::InvalidArgument(format!("generator {v} is not a monomial")));
            }
        }
    }
    Ok(found)
}

/// Minimal generators of a monomial submodule, as `(monomial, position)`.
pub fn minimal_monomial_generators<F: Field>(u: &SubmodulePresentation<F>) -> Result<Vec<(Monomial, usize)>> {
    let mut mons: Vec<(Monomial, usize)> = Vec::new();
    for g in u.generators() {
        if let Some(m) = monomial_of(g)? {
            mons.push(m);
        }
    }
    mons.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.total_degree().cmp(&b.0.total_degree())).then(a.0.exponents().cmp(b.0.exponents())));
    mons.dedup();
    let mut out: Vec<(Monomial, usize)> = Vec::new();
    for (m, c) in mons {
        if !out.iter().any(|(n, d)| *d == c && n.divides(&m)) {
            out.push((m, c));
        }
    }
    Ok(out)
}

/// True iff every minimal generator of the monomial submodule is square-free.
pub fn is_squarefree<F: Field>(u: &SubmodulePresentation<F>) -> Result<bool> {
    Ok(minimal_monomial_generators(u)?
        .iter()
        .all(|(m, _)| m.exponents().iter().all(|&e| e <= 1)))
}
