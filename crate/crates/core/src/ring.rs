//! Positively graded polynomial rings, monomials and term orders.
//!
//! A ring has `r` variables `x_1..x_r` of positive weight and optionally a
//! parameter `t` of degree zero, stored as the last exponent slot. All
//! Gröbner machinery over `k[t][x]` therefore runs over the field `k`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

pub type Exponents = SmallVec<[u32; 8]>;

/// A monomial `t^e * x^a`; the parameter exponent (if any) is the last slot.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Bit `k % 64` set when variable `k` occurs.
    pub(crate) fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (k % 64);
            }
        }
        m
    }
}

#[derive(Debug)]
struct RingData<F: Field> {
    weights: Vec<u32>,
    has_parameter: bool,
    field: F,
    names: Vec<String>,
}

/// A positively graded polynomial ring `k[x_1..x_r]`, optionally with a
/// degree-zero parameter `t` adjoined.
#[derive(Debug)]
pub struct GradedRing<F: Field> {
    inner: Arc<RingData<F>>,
}

impl<F: Field> Clone for GradedRing<F> {
    fn clone(&self) -> Self {
        GradedRing {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<F: Field> PartialEq for GradedRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.weights == other.inner.weights
                && self.inner.has_parameter == other.inner.has_parameter
                && self.inner.field == other.inner.field
                && self.inner.names == other.inner.names)
    }
}

impl<F: Field> Eq for GradedRing<F> {}

/// Builds a ring with default variable names `x1..xr` and `t`.
pub fn make_ring<F: Field>(weights: &[u32], has_parameter: bool, field: F) -> Result<GradedRing<F>> {
    let mut names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
    if has_parameter {
        names.push("t".to_string());
    }
    GradedRing::with_names(weights, has_parameter, field, names)
}

impl<F: Field> GradedRing<F> {
    /// `names` lists the x-variables followed by the parameter name when present.
    pub fn with_names(
        weights: &[u32],
        has_parameter: bool,
        field: F,
        names: Vec<String>,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(AlgebraError::InvalidGrading(
                "at least one variable is required".into(),
            ));
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(AlgebraError::InvalidGrading(format!(
                "weight of variable {} must be positive",
                pos + 1
            )));
        }
        field.descriptor().validate()?;
        let expected = weights.len() + usize::from(has_parameter);
        if names.len() != expected {
            return Err(AlgebraError::InvalidArgument(format!(
                "expected {expected} variable names, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "duplicate variable name `{n}`"
                )));
            }
        }
        Ok(GradedRing {
            inner: Arc::new(RingData {
                weights: weights.to_vec(),
                has_parameter,
                field,
                names,
            }),
        })
    }

    /// Convenience constructor from variable names and an optional parameter name.
    pub fn named(x_names: &[&str], weights: &[u32], parameter: Option<&str>, field: F) -> Result<Self> {
        let mut names: Vec<String> = x_names.iter().map(|s| s.to_string()).collect();
        names.extend(parameter.map(str::to_string));
        Self::with_names(weights, parameter.is_some(), field, names)
    }

    /// Number of positive-degree variables `r`.
    pub fn num_vars(&self) -> usize {
        self.inner.weights.len()
    }

    /// Number of exponent slots (`r`, plus one for `t`).
    pub fn num_slots(&self) -> usize {
        self.inner.weights.len() + usize::from(self.inner.has_parameter)
    }

    pub fn weights(&self) -> &[u32] {
        &self.inner.weights
    }

    pub fn has_parameter(&self) -> bool {
        self.inner.has_parameter
    }

    pub fn parameter_slot(&self) -> Option<usize> {
        self.has_parameter().then(|| self.num_vars())
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    /// Sum of the variable weights.
    pub fn delta(&self) -> i64 {
        self.inner.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn x_names(&self) -> &[String] {
        &self.inner.names[..self.num_vars()]
    }

    pub fn parameter_name(&self) -> Option<&str> {
        self.parameter_slot().map(|s| self.inner.names[s].as_str())
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    /// Weighted degree; the parameter contributes nothing.
    pub fn degree(&self, m: &Monomial) -> i64 {
        self.inner
            .weights
            .iter()
            .zip(m.exponents())
            .map(|(&w, &e)| w as i64 * e as i64)
            .sum()
    }

    pub fn t_exponent(&self, m: &Monomial) -> u32 {
        self.parameter_slot().map_or(0, |s| m.exponents()[s])
    }

    /// True when only the parameter occurs in `m`.
    pub fn is_parameter_only(&self, m: &Monomial) -> bool {
        m.exponents()[..self.num_vars()].iter().all(|&e| e == 0)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.num_slots())
    }

    pub fn variable_monomial(&self, slot: usize) -> Monomial {
        let mut m = Monomial::one(self.num_slots());
        m.exps[slot] = 1;
        m
    }

    /// The same ring with the parameter dropped.
    pub fn without_parameter(&self) -> GradedRing<F> {
        if !self.has_parameter() {
            return self.clone();
        }
        GradedRing::with_names(
            self.weights(),
            false,
            self.field().clone(),
            self.x_names().to_vec(),
        )
        .expect("sub-ring of a valid ring is valid")
    }

    /// The same ring with a parameter named `name` adjoined.
    pub fn with_parameter(&self, name: &str) -> Result<GradedRing<F>> {
        if self.has_parameter() {
            return Ok(self.clone());
        }
        let mut names = self.names().to_vec();
        names.push(name.to_string());
        GradedRing::with_names(self.weights(), true, self.field().clone(), names)
    }

    /// Same grading and names over another field.
    pub fn over_field<G: Field>(&self, field: G) -> Result<GradedRing<G>> {
        GradedRing::with_names(
            self.weights(),
            self.has_parameter(),
            field,
            self.names().to_vec(),
        )
    }

    pub fn compare(&self, order: &TermOrder, a: &Monomial, b: &Monomial) -> Ordering {
        order.compare_diff(self.weights(), self.num_slots(), |k| {
            a.exponents()[k] as i64 - b.exponents()[k] as i64
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let order: Vec<usize> = match self.parameter_slot() {
            Some(s) => std::iter::once(s).chain(0..self.num_vars()).collect(),
            None => (0..self.num_vars()).collect(),
        };
        for k in order {
            let e = m.exponents()[k];
            match e {
                0 => {}
                1 => parts.push(self.inner.names[k].clone()),
                _ => parts.push(format!("{}^{}", self.inner.names[k], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Compares monomials of `ring` under `order`.
pub fn compare_monomials<F: Field>(
    ring: &GradedRing<F>,
    order: &TermOrder,
    a: &Monomial,
    b: &Monomial,
) -> Ordering {
    ring.compare(order, a, b)
}

/// A global, multiplicative term order.
///
/// Variables are ranked `x_1 > x_2 > ... > x_r`; the parameter `t` (when
/// present) sits below every x-variable in lex and last in grevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    /// Weighted degree (the parameter counted with weight one), then reverse lex.
    Grevlex,
    /// `omega . a` on the x-exponents, ties broken by `tiebreak`.
    Weighted {
        weights: Vec<u64>,
        tiebreak: Box<TermOrder>,
    },
    /// Grevlex on the x-part, then the t-exponent. Every pure power of `t`
    /// lies below every monomial containing an x-variable.
    BlockXOverT,
}

impl TermOrder {
    pub fn weighted(weights: Vec<u64>, tiebreak: TermOrder) -> Self {
        TermOrder::Weighted {
            weights,
            tiebreak: Box::new(tiebreak),
        }
    }

    /// Compares `a` and `b` given their exponent difference `d(k) = a_k - b_k`.
    /// Every supported order only depends on that difference.
    pub(crate) fn compare_diff(
        &self,
        weights: &[u32],
        nslots: usize,
        d: impl Fn(usize) -> i64 + Copy,
    ) -> Ordering {
        let r = weights.len();
        match self {
            TermOrder::Lex => {
                for k in 0..nslots {
                    let v = d(k);
                    if v != 0 {
                        return v.cmp(&0);
                    }
                }
                Ordering::Equal
            }
            TermOrder::Grevlex => {
                let mut deg: i64 = (0..r).map(|k| weights[k] as i64 * d(k)).sum();
                if nslots > r {
                    deg += d(r);
                }
                if deg != 0 {
                    return deg.cmp(&0);
                }
                for k in (0..nslots).rev() {
                    let v = d(k);
                    if v != 0 {
                        return 0.cmp(&v);
                    }
                }
                Ordering::Equal
            }
            TermOrder::BlockXOverT => {
                let deg: i64 = (0..r).map(|k| weights[k] as i64 * d(k)).sum();
                if deg != 0 {
                    return deg.cmp(&0);
                }
                for k in (0..r).rev() {
                    let v = d(k);
                    if v != 0 {
                        return 0.cmp(&v);
                    }
                }
                if nslots > r {
                    return d(r).cmp(&0);
                }
                Ordering::Equal
            }
            TermOrder::Weighted {
                weights: omega,
                tiebreak,
            } => {
                let w: i64 = omega
                    .iter()
                    .take(r)
                    .enumerate()
                    .map(|(k, &o)| o as i64 * d(k))
                    .sum();
                if w != 0 {
                    return w.cmp(&0);
                }
                tiebreak.compare_diff(weights, nslots, d)
            }
        }
    }

    /// Parses `lex`, `grevlex`, `block` or `weights:<csv>` (grevlex tiebreak).
    pub fn parse(s: &str) -> Result<TermOrder> {
        let s = s.trim();
        match s {
            "lex" => Ok(TermOrder::Lex),
            "grevlex" => Ok(TermOrder::Grevlex),
            "block" | "block-x-over-t" => Ok(TermOrder::BlockXOverT),
            _ => {
                if let Some(rest) = s.strip_prefix("weights:") {
                    let weights = rest
                        .split(',')
                        .map(|w| w.trim().parse::<u64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| {
                            AlgebraError::InvalidArgument(format!("bad weight list `{rest}`"))
                        })?;
                    Ok(TermOrder::weighted(weights, TermOrder::Grevlex))
                } else {
                    Err(AlgebraError::InvalidArgument(format!("unknown order `{s}`")))
                }
            }
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Grevlex => write!(f, "grevlex"),
            TermOrder::BlockXOverT => write!(f, "block"),
            TermOrder::Weighted { weights, tiebreak } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                if **tiebreak == TermOrder::Grevlex {
                    write!(f, "weights:{}", w.join(","))
                } else {
                    write!(f, "weights:{}/{}", w.join(","), tiebreak)
                }
            }
        }
    }
}
