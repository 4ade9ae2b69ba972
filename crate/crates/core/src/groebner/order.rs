use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::ring::{Monomial, TermOrder};

/// How basis positions interact with the term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionRule {
    /// Compare (shifted) monomials first, then positions.
    TermOverPosition,
    /// Compare the x-part, then positions, then the t-exponent. Over the
    /// field `k(t)` this restricts to term-over-position on `k(t)[x]`.
    PositionBeforeParameter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ComponentKey {
    block: u32,
    shift: Option<Monomial>,
    chain: SmallVec<[u32; 4]>,
}

/// A monomial order on a free module `⊕ T e_i`.
///
/// Each basis element carries a block number (higher blocks dominate), an
/// optional shift monomial and a position chain. Schreyer orders are encoded
/// by shifting with the leading monomial of the image and extending the chain.
/// Smaller chains rank higher, so `e_0 > e_1 > ...` at equal monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    base: TermOrder,
    rule: PositionRule,
    comps: Vec<ComponentKey>,
}

impl ModuleOrder {
    pub fn term_over_position(base: TermOrder, rank: usize) -> Self {
        ModuleOrder {
            base,
            rule: PositionRule::TermOverPosition,
            comps: (0..rank)
                .map(|i| ComponentKey {
                    block: 0,
                    shift: None,
                    chain: SmallVec::from_slice(&[i as u32]),
                })
                .collect(),
        }
    }

    /// Grevlex on x, then position, then t.
    pub fn position_before_parameter(rank: usize) -> Self {
        ModuleOrder {
            rule: PositionRule::PositionBeforeParameter,
            ..Self::term_over_position(TermOrder::BlockXOverT, rank)
        }
    }

    /// Term-over-position where the first `high` basis elements dominate the
    /// remaining `low` ones regardless of monomials.
    pub fn eliminating(base: TermOrder, high: usize, low: usize) -> Self {
        let mut o = Self::term_over_position(base, high + low);
        for c in &mut o.comps[..high] {
            c.block = 1;
        }
        o
    }

    /// The order induced on the syzygy module of elements with leading terms
    /// `leads[i] = (monomial, position)`.
    pub fn schreyer(&self, leads: &[(Monomial, usize)]) -> Self {
        assert_eq!(self.rule, PositionRule::TermOverPosition);
        let comps = leads
            .iter()
            .enumerate()
            .map(|(i, (m, c))| {
                let parent = &self.comps[*c];
                let shift = match &parent.shift {
                    None => m.clone(),
                    Some(s) => s.mul(m),
                };
                let mut chain = parent.chain.clone();
                chain.push(i as u32);
                ComponentKey {
                    block: parent.block,
                    shift: Some(shift),
                    chain,
                }
            })
            .collect();
        ModuleOrder {
            base: self.base.clone(),
            rule: PositionRule::TermOverPosition,
            comps,
        }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn base(&self) -> &TermOrder {
        &self.base
    }

    pub fn rule(&self) -> PositionRule {
        self.rule
    }

    pub fn is_schreyer(&self) -> bool {
        self.comps.iter().any(|c| c.shift.is_some())
    }

    pub(crate) fn compare(
        &self,
        weights: &[u32],
        nslots: usize,
        a: &Monomial,
        ca: usize,
        b: &Monomial,
        cb: usize,
    ) -> Ordering {
        let (ka, kb) = (&self.comps[ca], &self.comps[cb]);
        if ka.block != kb.block {
            return ka.block.cmp(&kb.block);
        }
        let (ae, be) = (a.exponents(), b.exponents());
        match self.rule {
            PositionRule::TermOverPosition => {
                let o = match (&ka.shift, &kb.shift) {
                    (None, None) => self
                        .base
                        .compare_diff(weights, nslots, |k| ae[k] as i64 - be[k] as i64),
                    (sa, sb) => {
                        let sa = sa.as_ref().map(|m| m.exponents());
                        let sb = sb.as_ref().map(|m| m.exponents());
                        self.base.compare_diff(weights, nslots, |k| {
                            let x = ae[k] as i64 + sa.map_or(0, |s| s[k] as i64);
                            let y = be[k] as i64 + sb.map_or(0, |s| s[k] as i64);
                            x - y
                        })
                    }
                };
                if o != Ordering::Equal {
                    return o;
                }
                kb.chain.cmp(&ka.chain)
            }
            PositionRule::PositionBeforeParameter => {
                let r = weights.len();
                let o = self.base.compare_diff(weights, nslots, |k| {
                    if k >= r {
                        0
                    } else {
                        ae[k] as i64 - be[k] as i64
                    }
                });
                if o != Ordering::Equal {
                    return o;
                }
                let o = kb.chain.cmp(&ka.chain);
                if o != Ordering::Equal {
                    return o;
                }
                if nslots > r {
                    ae[r].cmp(&be[r])
                } else {
                    Ordering::Equal
                }
            }
        }
    }
}
