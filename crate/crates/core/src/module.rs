//! Graded free modules `⊕ T(-a_i)` and their elements.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// A graded free module; basis element `i` sits in degree `twists[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeModule<F: Field> {
    ring: GradedRing<F>,
    twists: Vec<i64>,
}

impl<F: Field> GradedFreeModule<F> {
    pub fn new(ring: &GradedRing<F>, twists: Vec<i64>) -> Self {
        GradedFreeModule {
            ring: ring.clone(),
            twists,
        }
    }

    /// Rank-`rank` module generated in degree zero.
    pub fn free(ring: &GradedRing<F>, rank: usize) -> Self {
        Self::new(ring, vec![0; rank])
    }

    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// `Hom(F, T)`: the twists change sign.
    pub fn dual(&self) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|t| -t).collect())
    }

    pub fn zero_vector(&self) -> PolyVector<F> {
        PolyVector {
            module: self.clone(),
            components: vec![Polynomial::zero(&self.ring); self.rank()],
        }
    }

    pub fn basis_vector(&self, i: usize) -> PolyVector<F> {
        let mut v = self.zero_vector();
        v.components[i] = Polynomial::one(&self.ring);
        v
    }

    pub fn vector(&self, components: Vec<Polynomial<F>>) -> Result<PolyVector<F>> {
        PolyVector::new(self, components)
    }
}

/// An element of a graded free module, stored as one polynomial per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector<F: Field> {
    module: GradedFreeModule<F>,
    components: Vec<Polynomial<F>>,
}

impl<F: Field> PolyVector<F> {
    pub fn new(module: &GradedFreeModule<F>, components: Vec<Polynomial<F>>) -> Result<Self> {
        if components.len() != module.rank() {
            return Err(AlgebraError::InvalidArgument(format!(
                "expected {} components, got {}",
                module.rank(),
                components.len()
            )));
        }
        if let Some(bad) = components.iter().find(|p| p.ring() != module.ring()) {
            return Err(AlgebraError::RingMismatch(format!(
                "component {bad} lives in another ring"
            )));
        }
        Ok(PolyVector {
            module: module.clone(),
            components,
        })
    }

    pub fn module(&self) -> &GradedFreeModule<F> {
        &self.module
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<F> {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial<F>> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    /// Common degree `deg(c_i) + twist_i` of all terms; `None` for zero or
    /// inhomogeneous vectors.
    pub fn degree(&self) -> Option<i64> {
        let ring = self.module.ring();
        let mut deg = None;
        for (c, tw) in self.components.iter().zip(self.module.twists()) {
            for (m, _) in c.terms() {
                let d = ring.degree(m) + tw;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_module(other)?;
        Ok(PolyVector {
            module: self.module.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_module(other)?;
        Ok(PolyVector {
            module: self.module.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul_poly(&self, f: &Polynomial<F>) -> Result<Self> {
        if f.ring() != self.module.ring() {
            return Err(AlgebraError::RingMismatch("scalar from another ring".into()));
        }
        Ok(PolyVector {
            module: self.module.clone(),
            components: self.components.iter().map(|c| c * f).collect(),
        })
    }

    fn check_module(&self, other: &Self) -> Result<()> {
        if self.module != other.module {
            return Err(AlgebraError::InvalidArgument(
                "vectors live in different free modules".into(),
            ));
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for PolyVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.len() == 1 {
            return write!(f, "{}", self.components[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
