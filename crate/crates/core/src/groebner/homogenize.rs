//! ω-homogenization of ideals and recovery of a weight vector for a term order.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial, TermOrder};

use super::ideal_ops::submodule_equal;
use super::{buchberger, initial_module, GroebnerBasis, SubmodulePresentation};

/// Largest total weight tried by [`weight_vector_for`].
const MAX_TOTAL_WEIGHT: u64 = 200;
/// Largest number of candidate vectors tried by [`weight_vector_for`].
const MAX_CANDIDATES: u64 = 10_000_000;

/// The family `J = hom_ω(I)` over `k[t]` together with its two fibers.
#[derive(Debug, Clone)]
pub struct Homogenization<F: Field> {
    pub omega: Vec<u64>,
    /// `k[t][x]`, the ring of `J`.
    pub family_ring: GradedRing<F>,
    pub family: SubmodulePresentation<F>,
    /// Gröbner basis of `I` for the ω-weighted refinement of the order.
    pub basis: GroebnerBasis<F>,
    /// `in_<(I)`, generated by leading monomials.
    pub initial: SubmodulePresentation<F>,
}

fn dot(omega: &[u64], m: &Monomial) -> u64 {
    omega.iter().zip(m.exponents()).map(|(&w, &e)| w * e as u64).sum()
}

fn fresh_parameter_name<F: Field>(ring: &GradedRing<F>) -> String {
    let mut name = "t".to_string();
    while ring.variable_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn hom_of<F: Field>(g: &Polynomial<F>, omega: &[u64], target: &GradedRing<F>) -> Polynomial<F> {
    let m = g.terms().iter().map(|(a, _)| dot(omega, a)).max().unwrap_or(0);
    let r = target.num_vars();
    Polynomial::from_terms(
        target,
        g.terms().iter().map(|(a, c)| {
            let mut e = a.exponents()[..r].to_vec();
            e.push((m - dot(omega, a)) as u32);
            (Monomial::from_exponents(&e), c.clone())
        }),
    )
}

fn check_plain_ideal<F: Field>(i: &SubmodulePresentation<F>) -> Result<()> {
    if !i.is_ideal() {
        return Err(AlgebraError::InvalidArgument("expected an ideal".into()));
    }
    if i.ring().has_parameter() {
        return Err(AlgebraError::InvalidArgument(
            "expected an ideal of a ring without parameter".into(),
        ));
    }
    i.require_homogeneous()
}

/// `J = hom_ω(I)`, generated by `Σ c_a t^(m - ω·a) x^a` for `g = Σ c_a x^a`
/// running over a Gröbner basis of `I`. Checks that `t = 0` recovers
/// `in_<(I)` and `t = 1` recovers `I`.
pub fn homogenize_omega<F: Field>(
    i: &SubmodulePresentation<F>,
    omega: &[u64],
    order: &TermOrder,
) -> Result<Homogenization<F>> {
    check_plain_ideal(i)?;
    let ring = i.ring();
    if omega.len() != ring.num_vars() {
        return Err(AlgebraError::InvalidArgument(format!(
            "weight vector has {} entries for {} variables",
            omega.len(),
            ring.num_vars()
        )));
    }
    let target = ring.with_parameter(&fresh_parameter_name(ring))?;
    let basis = buchberger(i, &TermOrder::weighted(omega.to_vec(), order.clone()));
    let family_gens: Vec<Polynomial<F>> = basis
        .elements()
        .iter()
        .map(|v| hom_of(v.component(0), omega, &target))
        .collect();
    let family = SubmodulePresentation::ideal(&target, family_gens.clone())?;

    let initial = initial_module(&buchberger(i, order));
    let field = ring.field();
    let at = |c: F::Elem| -> Result<SubmodulePresentation<F>> {
        let gens = family_gens
            .iter()
            .map(|g| g.substitute_parameter(&c, ring))
            .collect::<Result<Vec<_>>>()?;
        SubmodulePresentation::ideal(ring, gens)
    };
    if !submodule_equal(&at(field.zero())?, &initial)? {
        return Err(AlgebraError::WeightVectorMismatch(format!(
            "the fiber at t = 0 of hom_ω(I) with ω = {omega:?} is not in_<(I) for order {order}"
        )));
    }
    if !submodule_equal(&at(field.one())?, i)? {
        return Err(AlgebraError::WeightVectorMismatch(format!(
            "the fiber at t = 1 of hom_ω(I) with ω = {omega:?} is not I"
        )));
    }
    Ok(Homogenization {
        omega: omega.to_vec(),
        family_ring: target,
        family,
        basis,
        initial,
    })
}

/// Calls `f` on each vector of `r` nonnegative entries summing to `total`,
/// in increasing lexicographic order, until it returns `true`.
fn for_each_composition(r: usize, total: u64, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(buf: &mut Vec<u64>, r: usize, left: u64, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if buf.len() + 1 == r {
            buf.push(left);
            let hit = f(buf);
            buf.pop();
            return hit;
        }
        for v in 0..=left {
            buf.push(v);
            let hit = rec(buf, r, left - v, f);
            buf.pop();
            if hit {
                return true;
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(r), r, total, f)
}

/// A weight vector `ω ≥ 0` with `ω·lead > ω·other` for every non-leading
/// exponent of every element of the reduced Gröbner basis of `I` under
/// `order`. The smallest total weight wins, then the lexicographically
/// smallest vector; if no constraints arise the answer is `(1, ..., 1)`.
pub fn weight_vector_for<F: Field>(i: &SubmodulePresentation<F>, order: &TermOrder) -> Result<Vec<u64>> {
    check_plain_ideal(i)?;
    let ring = i.ring();
    let r = ring.num_vars();
    let g = buchberger(i, order);
    let mut diffs: Vec<Vec<i64>> = Vec::new();
    for v in g.elements() {
        let p = v.component(0);
        let lead = &p.leading_under(order).expect("nonzero").0;
        for (a, _) in p.terms() {
            if a != lead {
                diffs.push(
                    (0..r)
                        .map(|k| lead.exponents()[k] as i64 - a.exponents()[k] as i64)
                        .collect(),
                );
            }
        }
    }
    diffs.sort();
    diffs.dedup();
    if diffs.is_empty() {
        return Ok(vec![1; r]);
    }
    let mut tried = 0u64;
    let mut found: Option<Vec<u64>> = None;
    for total in 1..=MAX_TOTAL_WEIGHT {
        let hit = for_each_composition(r, total, &mut |w| {
            tried += 1;
            let ok = diffs
                .iter()
                .all(|d| d.iter().zip(w).map(|(&x, &y)| x * y as i64).sum::<i64>() >= 1);
            if ok {
                found = Some(w.to_vec());
            }
            ok || tried >= MAX_CANDIDATES
        });
        if hit {
            break;
        }
    }
    found.ok_or(AlgebraError::WeightSearchExhausted(tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(names: &[&str]) -> GradedRing<Rationals> {
        GradedRing::named(names, &vec![1; names.len()], None, Rationals).unwrap()
    }

    #[test]
    fn hypersurface_weights_and_family() {
        let r = ring(&["x", "y", "z"]);
        let i = SubmodulePresentation::parse_ideal(&r, &["x*z - y^2"]).unwrap();
        let w = weight_vector_for(&i, &TermOrder::Lex).unwrap();
        assert_eq!(w, vec![0, 0, 1]);
        let h = homogenize_omega(&i, &[1, 1, 2], &TermOrder::Lex).unwrap();
        let expected = Polynomial::parse(&h.family_ring, "x*z - t*y^2").unwrap();
        assert_eq!(h.family.generators()[0].component(0), &expected);
        let h = homogenize_omega(&i, &w, &TermOrder::Lex).unwrap();
        assert_eq!(h.family.generators()[0].component(0), &expected);
    }

    #[test]
    fn bad_weight_is_rejected() {
        let r = ring(&["x", "y", "z"]);
        let i = SubmodulePresentation::parse_ideal(&r, &["x*z - y^2"]).unwrap();
        assert!(matches!(
            homogenize_omega(&i, &[1, 1, 0], &TermOrder::Lex),
            Err(AlgebraError::WeightVectorMismatch(_))
        ));
    }

    #[test]
    fn monomial_ideal_gets_all_ones() {
        let r = ring(&["x", "y"]);
        let i = SubmodulePresentation::parse_ideal(&r, &["x*y"]).unwrap();
        assert_eq!(weight_vector_for(&i, &TermOrder::Grevlex).unwrap(), vec![1, 1]);
        let h = homogenize_omega(&i, &[1, 1], &TermOrder::Grevlex).unwrap();
        assert_eq!(h.family.generators()[0].to_string(), "x*y");
    }

    #[test]
    fn twisted_cubic_weights() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = SubmodulePresentation::parse_ideal(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]).unwrap();
        let w = weight_vector_for(&i, &TermOrder::Grevlex).unwrap();
        let ok = |w: &[u64]| 2 * w[1] > w[0] + w[2] && 2 * w[2] > w[1] + w[3] && w[1] + w[2] > w[0] + w[3];
        assert!(ok(&w));
        assert_eq!(w, vec![0, 1, 1, 0]);
        let h = homogenize_omega(&i, &w, &TermOrder::Grevlex).unwrap();
        assert_eq!(h.family.generators().len(), 3);
    }

    #[test]
    fn mixed_weights_on_xw_minus_yz() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = SubmodulePresentation::parse_ideal(&r, &["x*w - y*z"]).unwrap();
        let h = homogenize_omega(&i, &[1, 2, 2, 1], &TermOrder::Grevlex).unwrap();
        let expected = Polynomial::parse(&h.family_ring, "t^2*x*w - y*z").unwrap();
        assert_eq!(h.family.generators()[0].component(0), &expected.neg());
    }
}
