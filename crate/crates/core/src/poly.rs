//! Sparse polynomials with exact coefficients in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::{rational_is_negative, Field};
use crate::ring::{GradedRing, Monomial, TermOrder};

/// Order used for the canonical term list of every [`Polynomial`].
pub const CANONICAL_ORDER: TermOrder = TermOrder::BlockXOverT;

/// A polynomial as a strictly decreasing list of `(monomial, coefficient)`
/// under [`CANONICAL_ORDER`], with no zero coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial<F: Field> {
    ring: GradedRing<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn canonical_cmp<F: Field>(ring: &GradedRing<F>, a: &Monomial, b: &Monomial) -> Ordering {
    ring.compare(&CANONICAL_ORDER, a, b)
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &GradedRing<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &GradedRing<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &GradedRing<F>, c: F::Elem) -> Self {
        Self::term(ring, ring.one_monomial(), c)
    }

    pub fn term(ring: &GradedRing<F>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable in exponent slot `slot` (the parameter is slot `r`).
    pub fn variable(ring: &GradedRing<F>, slot: usize) -> Self {
        Self::term(ring, ring.variable_monomial(slot), ring.field().one())
    }

    pub fn parameter(ring: &GradedRing<F>) -> Result<Self> {
        let slot = ring
            .parameter_slot()
            .ok_or_else(|| AlgebraError::InvalidArgument("ring has no parameter".into()))?;
        Ok(Self::variable(ring, slot))
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms(ring: &GradedRing<F>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut terms: Vec<(Monomial, F::Elem)> = terms.into_iter().collect();
        terms.sort_by(|a, b| canonical_cmp(ring, &b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant polynomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_parameter_only(&self) -> bool {
        self.terms.iter().all(|(m, _)| self.ring.is_parameter_only(m))
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// Leading term under the canonical order.
    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Leading term under an arbitrary order.
    pub fn leading_under(&self, order: &TermOrder) -> Option<&(Monomial, F::Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| self.ring.compare(order, &a.0, &b.0))
    }

    /// Weighted degree if all terms share it; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let first = self.ring.degree(&self.terms.first()?.0);
        self.terms
            .iter()
            .all(|(m, _)| self.ring.degree(m) == first)
            .then_some(first)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    /// Canonical leading coefficient normalized to one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field().inv(c);
                self.scale(&inv)
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names(),
                other.ring.names()
            )));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &F::Elem| if negate_other { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match canonical_cmp(&self.ring, &a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.combine(&big.mul_term(m, c), false);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Specializes `t -> c`, landing in the parameter-free ring `target`.
    pub fn substitute_parameter(&self, c: &F::Elem, target: &GradedRing<F>) -> Result<Self> {
        let slot = self
            .ring
            .parameter_slot()
            .ok_or_else(|| AlgebraError::InvalidArgument("ring has no parameter".into()))?;
        if target.has_parameter() || target.weights() != self.ring.weights() {
            return Err(AlgebraError::RingMismatch(
                "specialization target must be the parameter-free ring".into(),
            ));
        }
        let f = self.ring.field();
        let terms = self.terms.iter().map(|(m, a)| {
            let e = m.exponents();
            let mut coeff = a.clone();
            for _ in 0..e[slot] {
                coeff = f.mul(&coeff, c);
            }
            (Monomial::from_exponents(&e[..slot]), coeff)
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Embeds a parameter-free polynomial into `target = self.ring[t]`.
    pub fn extend_to_parameter(&self, target: &GradedRing<F>) -> Result<Self> {
        if self.ring.has_parameter() || !target.has_parameter() || target.weights() != self.ring.weights()
        {
            return Err(AlgebraError::RingMismatch(
                "embedding target must be the parameter ring over the same grading".into(),
            ));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: Vec<u32> = m.exponents().to_vec();
            e.push(0);
            (Monomial::from_exponents(&e), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Maps the polynomial into a ring with the same monomial layout.
    pub fn map_into<G: Field>(
        &self,
        target: &GradedRing<G>,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        if target.num_slots() != self.ring.num_slots() {
            return Err(AlgebraError::RingMismatch("different variable count".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), f(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Dense coefficients of a parameter-only polynomial, index = t-exponent.
    pub fn parameter_coefficients(&self) -> Option<Vec<F::Elem>> {
        let slot = self.ring.parameter_slot()?;
        if !self.is_parameter_only() {
            return None;
        }
        let f = self.ring.field();
        let deg = self.terms.iter().map(|(m, _)| m.exponents()[slot]).max().unwrap_or(0);
        let mut out = vec![f.zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponents()[slot] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_parameter_coefficients(ring: &GradedRing<F>, coeffs: &[F::Elem]) -> Result<Self> {
        let slot = ring
            .parameter_slot()
            .ok_or_else(|| AlgebraError::InvalidArgument("ring has no parameter".into()))?;
        let terms = coeffs.iter().enumerate().map(|(e, c)| {
            let mut m = ring.one_monomial().exponents().to_vec();
            m[slot] = e as u32;
            (Monomial::from_exponents(&m), c.clone())
        });
        Ok(Self::from_terms(ring, terms))
    }

    /// Evaluates a parameter-only polynomial at `t = c`.
    pub fn evaluate_parameter(&self, c: &F::Elem) -> Option<F::Elem> {
        let coeffs = self.parameter_coefficients()?;
        let f = self.ring.field();
        let mut acc = f.zero();
        for a in coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, c), a);
        }
        Some(acc)
    }

    pub fn parse(ring: &GradedRing<F>, text: &str) -> Result<Self> {
        crate::parse::parse_polynomial(ring, text)
    }
}

/// `f * g`, failing when the rings differ.
pub fn poly_multiply<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    f.checked_mul(g)
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let q = field.to_rational(c);
            let neg = rational_is_negative(&q);
            let abs = if neg { -q } else { q };
            let coeff = crate::field::format_rational(&abs);
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(out, "{coeff}")?;
            } else if coeff == "1" {
                write!(out, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(out, "{coeff}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $trait<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> $trait for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Monic gcd of two univariate polynomials in the parameter.
pub fn parameter_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    let ring = a.ring();
    let f = ring.field();
    let mut x = a
        .parameter_coefficients()
        .ok_or_else(|| AlgebraError::InvalidArgument(format!("{a} is not a polynomial in t")))?;
    let mut y = b
        .parameter_coefficients()
        .ok_or_else(|| AlgebraError::InvalidArgument(format!("{b} is not a polynomial in t")))?;
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = univariate_rem(f, &x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Ok(Polynomial::zero(ring));
    }
    let lead = f.inv(x.last().unwrap());
    let x: Vec<F::Elem> = x.iter().map(|c| f.mul(c, &lead)).collect();
    Polynomial::from_parameter_coefficients(ring, &x)
}

/// Monic lcm of two univariate polynomials in the parameter.
pub fn parameter_lcm<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    if a.is_zero() || b.is_zero() {
        return Ok(Polynomial::zero(a.ring()));
    }
    let g = parameter_gcd(a, b)?;
    let prod = a * b;
    let q = parameter_div_exact(&prod, &g)?;
    Ok(monic_in_parameter(&q))
}

/// Normalizes a parameter-only polynomial so its top t-coefficient is one.
pub fn monic_in_parameter<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    match p.parameter_coefficients() {
        Some(mut c) => {
            let f = p.ring().field();
            trim(f, &mut c);
            match c.last() {
                None => p.clone(),
                Some(l) => {
                    let inv = f.inv(l);
                    p.scale(&inv)
                }
            }
        }
        None => p.clone(),
    }
}

fn parameter_div_exact<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    let f = a.ring().field();
    let mut x = a.parameter_coefficients().unwrap_or_default();
    let mut y = b.parameter_coefficients().unwrap_or_default();
    trim(f, &mut x);
    trim(f, &mut y);
    let (q, r) = univariate_divmod(f, &x, &y);
    if !r.is_empty() {
        return Err(AlgebraError::InvalidArgument("inexact division".into()));
    }
    Polynomial::from_parameter_coefficients(a.ring(), &q)
}

fn trim<F: Field>(f: &F, v: &mut Vec<F::Elem>) {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
}

fn univariate_divmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b.last().expect("nonzero divisor"));
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] = f.sub(&r[shift + k], &f.mul(&c, bk));
        }
        q[shift] = c;
        r.pop();
        trim(f, &mut r);
    }
    (q, r)
}

fn univariate_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    univariate_divmod(f, a, b).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::make_ring;

    fn ring_xyz() -> GradedRing<Rationals> {
        GradedRing::with_names(
            &[1, 1, 1],
            true,
            Rationals,
            vec!["x".into(), "y".into(), "z".into(), "t".into()],
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring_xyz();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2 - y^2"));
        assert!((&p("x+y") * &Polynomial::zero(&r)).is_zero());
        assert_eq!(&p("x*z - t*y^2") * &p("t"), p("t*x*z - t^2*y^2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = make_ring(&[1, 1], false, Rationals).unwrap();
        let b = make_ring(&[1, 2], false, Rationals).unwrap();
        let f = Polynomial::variable(&a, 0);
        let g = Polynomial::variable(&b, 0);
        assert!(matches!(poly_multiply(&f, &g), Err(AlgebraError::RingMismatch(_))));
    }

    #[test]
    fn degree_ignores_parameter() {
        let r = ring_xyz();
        let f = Polynomial::parse(&r, "t^3*x*y + y*z").unwrap();
        assert_eq!(f.homogeneous_degree(), Some(2));
        assert!(!Polynomial::parse(&r, "x + y^2").unwrap().is_homogeneous());
    }

    #[test]
    fn display_is_canonical() {
        let r = ring_xyz();
        let f = Polynomial::parse(&r, "-1/2*t*z + 3*x^2*y - x*t").unwrap();
        assert_eq!(f.to_string(), "3*x^2*y - t*x - 1/2*t*z");
        assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn parameter_gcd_lcm() {
        let r = make_ring(&[1], true, PrimeField::new(101).unwrap()).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(parameter_gcd(&p("t^2 - t"), &p("t^2 - 1")).unwrap(), p("t - 1"));
        assert_eq!(parameter_lcm(&p("t^2 - t"), &p("2*t")).unwrap(), p("t^2 - t"));
        assert_eq!(parameter_lcm(&p("t"), &p("t + 1")).unwrap(), p("t^2 + t"));
    }

    #[test]
    fn specialization() {
        let r = ring_xyz();
        let s = r.without_parameter();
        let f = Polynomial::parse(&r, "x*z - t*y^2").unwrap();
        let g = f.substitute_parameter(&Rationals.from_i64(2), &s).unwrap();
        assert_eq!(g, Polynomial::parse(&s, "x*z - 2*y^2").unwrap());
        let back = g.extend_to_parameter(&r).unwrap();
        assert_eq!(back, Polynomial::parse(&r, "x*z - 2*y^2").unwrap());
    }
}
