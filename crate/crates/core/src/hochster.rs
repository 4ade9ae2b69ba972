//! Local cohomology of Stanley–Reisner rings by Hochster's formula, used as an
//! oracle independent of resolutions and Ext.
//!
//! For `S/I_Δ` and `a ∈ Z^r` with `a ≤ 0` and support `F ∈ Δ`,
//! `dim [H^i(S/I_Δ)]_a = dim H̃_{i-|F|-1}(lk F)`, and all other degrees vanish.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::ext::{check_window, HilbertTable};
use crate::field::Field;
use crate::groebner::{minimal_monomial_generators, SubmodulePresentation};
use crate::linalg::rank;

/// Simplicial complex on `n` vertices, faces stored as bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<u32>,
}

impl SimplicialComplex {
    /// The Stanley–Reisner complex of the square-free monomial ideal with
    /// minimal generator supports `nonfaces`. Void when `0` is a nonface.
    pub fn from_minimal_nonfaces(n: usize, nonfaces: &[u32]) -> Self {
        let faces = (0..1u32 << n)
            .filter(|f| !nonfaces.iter().any(|m| m & f == *m))
            .collect();
        SimplicialComplex { n, faces }
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: u32) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    pub fn link(&self, f: u32) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|g| g & f == 0 && self.contains(g | f))
            .collect();
        SimplicialComplex { n: self.n, faces }
    }

    /// `dim_k H̃_j(Δ; k)` for `j >= -1`.
    pub fn reduced_homology<F: Field>(&self, field: &F, j: i64) -> usize {
        if j < -1 {
            return 0;
        }
        let of_size = |s: i64| -> Vec<u32> {
            if s < 0 {
                return Vec::new();
            }
            self.faces
                .iter()
                .copied()
                .filter(|f| f.count_ones() as i64 == s)
                .collect()
        };
        let cj = of_size(j + 1);
        let rank_of = |top: &[u32], bottom: &[u32]| -> usize {
            if top.is_empty() || bottom.is_empty() {
                return 0;
            }
            let idx: BTreeMap<u32, usize> = bottom.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            let rows: Vec<Vec<F::Elem>> = top
                .iter()
                .map(|&f| {
                    let mut row = vec![field.zero(); bottom.len()];
                    let mut sign = 1;
                    for v in 0..self.n {
                        if f & (1 << v) != 0 {
                            row[idx[&(f & !(1 << v))]] = field.from_i64(sign);
                            sign = -sign;
                        }
                    }
                    row
                })
                .collect();
            rank(field, rows)
        };
        let down = rank_of(&cj, &of_size(j));
        let up = rank_of(&of_size(j + 2), &cj);
        cj.len() - down - up
    }
}

/// Number of vectors `b` of positive integers indexed by the set bits of `f`
/// with `Σ w_v b_v = d`.
fn positive_solutions(weights: &[u32], f: u32, d: i64) -> usize {
    let vs: Vec<i64> = (0..weights.len())
        .filter(|v| f & (1 << v) != 0)
        .map(|v| weights[v] as i64)
        .collect();
    let base: i64 = vs.iter().sum();
    if d < base {
        return 0;
    }
    let rest = (d - base) as usize;
    let mut ways = vec![0usize; rest + 1];
    ways[0] = 1;
    for w in vs {
        let w = w as usize;
        for s in w..=rest {
            ways[s] += ways[s - w];
        }
    }
    ways[rest]
}

/// `dim [H^i_m(S/I)]_ν` by Hochster's formula for a square-free monomial ideal.
pub fn hochster_hilbert<F: Field>(
    i: &SubmodulePresentation<F>,
    index: usize,
    window: (i64, i64),
) -> Result<HilbertTable> {
    check_window(window)?;
    let ring = i.ring();
    if !i.is_ideal() || ring.has_parameter() {
        return Err(AlgebraError::InvalidArgument(
            "Hochster's formula needs an ideal of a ring without parameter".into(),
        ));
    }
    let r = ring.num_vars();
    if r > 20 {
        return Err(AlgebraError::InvalidArgument("too many variables for face enumeration".into()));
    }
    let gens = minimal_monomial_generators(i)?;
    let mut nonfaces = Vec::new();
    for (m, _) in &gens {
        if m.exponents().iter().any(|&e| e > 1) {
            return Err(AlgebraError::InvalidArgument(format!(
                "{} is not square-free",
                ring.format_monomial(m)
            )));
        }
        nonfaces.push(
            (0..r)
                .filter(|&v| m.exponents()[v] == 1)
                .fold(0u32, |acc, v| acc | 1 << v),
        );
    }
    let delta = SimplicialComplex::from_minimal_nonfaces(r, &nonfaces);
    if delta.is_void() {
        return Ok(HilbertTable::zero(window));
    }
    let field = ring.field();
    let contributions: Vec<(u32, usize)> = delta
        .faces()
        .iter()
        .map(|&f| {
            let j = index as i64 - f.count_ones() as i64 - 1;
            (f, delta.link(f).reduced_homology(field, j))
        })
        .filter(|(_, h)| *h > 0)
        .collect();
    Ok(HilbertTable::new(window, |nu| {
        contributions
            .iter()
            .map(|&(f, h)| {
                let count = if f == 0 {
                    usize::from(nu == 0)
                } else {
                    positive_solutions(ring.weights(), f, -nu)
                };
                h * count
            })
            .sum()
    }))
}
