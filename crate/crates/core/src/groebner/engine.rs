//! Sorted sparse module vectors, division and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::Field;
use crate::module::{GradedFreeModule, PolyVector};
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial};

use super::order::ModuleOrder;

/// `(monomial, position, coefficient)`
pub(crate) type Term<E> = (Monomial, usize, E);

/// Terms strictly decreasing under the ambient [`ModuleOrder`].
pub(crate) type Vector<E> = Vec<Term<E>>;

/// A free module together with the order its vectors are sorted by.
pub(crate) struct Space<'a, F: Field> {
    pub ring: &'a GradedRing<F>,
    pub order: &'a ModuleOrder,
    pub twists: &'a [i64],
}

impl<'a, F: Field> Space<'a, F> {
    pub fn new(ring: &'a GradedRing<F>, order: &'a ModuleOrder, twists: &'a [i64]) -> Self {
        debug_assert_eq!(order.rank(), twists.len());
        Space { ring, order, twists }
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, ca: usize, b: &Monomial, cb: usize) -> Ordering {
        self.order
            .compare(self.ring.weights(), self.ring.num_slots(), a, ca, b, cb)
    }

    pub fn degree(&self, m: &Monomial, comp: usize) -> i64 {
        self.ring.degree(m) + self.twists[comp]
    }

    pub fn normalize(&self, mut terms: Vec<Term<F::Elem>>) -> Vector<F::Elem> {
        let f = self.field();
        terms.sort_by(|a, b| self.cmp(&b.0, b.1, &a.0, a.1));
        let mut out: Vector<F::Elem> = Vec::with_capacity(terms.len());
        for (m, c, a) in terms {
            match out.last_mut() {
                Some((lm, lc, la)) if *lm == m && *lc == c => *la = f.add(la, &a),
                _ => out.push((m, c, a)),
            }
        }
        out.retain(|t| !f.is_zero(&t.2));
        out
    }

    pub fn from_poly_vector(&self, v: &PolyVector<F>) -> Vector<F::Elem> {
        let terms = v
            .components()
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| (m.clone(), i, c.clone())))
            .collect();
        self.normalize(terms)
    }

    pub fn to_poly_vector(&self, v: &[Term<F::Elem>], module: &GradedFreeModule<F>) -> PolyVector<F> {
        let mut comps: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); module.rank()];
        for (m, c, a) in v {
            comps[*c].push((m.clone(), a.clone()));
        }
        let comps = comps
            .into_iter()
            .map(|t| Polynomial::from_terms(self.ring, t))
            .collect();
        PolyVector::new(module, comps).expect("vector shape matches module")
    }

    /// `a - c * m * b`
    pub fn axpy(
        &self,
        a: &[Term<F::Elem>],
        c: &F::Elem,
        m: &Monomial,
        b: &[Term<F::Elem>],
    ) -> Vector<F::Elem> {
        let f = self.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<(Monomial, usize, F::Elem)> = None;
        let shifted = |j: usize| {
            let (bm, bc, ba) = &b[j];
            (bm.mul(m), *bc, f.mul(ba, c))
        };
        while i < a.len() || j < b.len() {
            if bj.is_none() && j < b.len() {
                bj = Some(shifted(j));
            }
            match (a.get(i), &bj) {
                (Some(at), Some(bt)) => match self.cmp(&at.0, at.1, &bt.0, bt.1) {
                    Ordering::Greater => {
                        out.push(at.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (bm, bc, ba) = bj.take().unwrap();
                        out.push((bm, bc, f.neg(&ba)));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let (bm, bc, ba) = bj.take().unwrap();
                        let v = f.sub(&at.2, &ba);
                        if !f.is_zero(&v) {
                            out.push((bm, bc, v));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(at), None) => {
                    out.push(at.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let (bm, bc, ba) = bj.take().unwrap();
                    out.push((bm, bc, f.neg(&ba)));
                    j += 1;
                }
                (None, None) => break,
            }
        }
        out
    }

    pub fn mul_monomial(&self, v: &[Term<F::Elem>], m: &Monomial, c: &F::Elem) -> Vector<F::Elem> {
        let f = self.field();
        v.iter()
            .map(|(vm, vc, va)| (vm.mul(m), *vc, f.mul(va, c)))
            .collect()
    }

    pub fn monic(&self, v: &mut Vector<F::Elem>) {
        if let Some((_, _, lc)) = v.first() {
            let f = self.field();
            if !f.is_one(lc) {
                let inv = f.inv(lc);
                for t in v.iter_mut() {
                    t.2 = f.mul(&t.2, &inv);
                }
            }
        }
    }
}

/// Divisor lookup over monic vectors.
pub(crate) struct Reducer<E> {
    pub elems: Vec<Vector<E>>,
    lead: Vec<(Monomial, usize)>,
    mask: Vec<u64>,
    pub active: Vec<bool>,
}

impl<E: Clone> Reducer<E> {
    pub fn new() -> Self {
        Reducer {
            elems: Vec::new(),
            lead: Vec::new(),
            mask: Vec::new(),
            active: Vec::new(),
        }
    }

    pub fn from_elements(elems: Vec<Vector<E>>) -> Self {
        let mut r = Self::new();
        for e in elems {
            r.push(e);
        }
        r
    }

    pub fn push(&mut self, v: Vector<E>) -> usize {
        let (m, c, _) = &v[0];
        self.lead.push((m.clone(), *c));
        self.mask.push(m.support_mask());
        self.elems.push(v);
        self.active.push(true);
        self.elems.len() - 1
    }

    pub fn lead(&self, i: usize) -> &(Monomial, usize) {
        &self.lead[i]
    }

    pub fn find(&self, m: &Monomial, comp: usize) -> Option<usize> {
        let mm = m.support_mask();
        (0..self.elems.len()).find(|&i| {
            self.active[i]
                && self.lead[i].1 == comp
                && self.mask[i] & !mm == 0
                && self.lead[i].0.divides(m)
        })
    }

    /// Division by the active elements. With `full`, every term is reduced,
    /// otherwise only leading terms. Quotients `(index, monomial, coeff)`
    /// satisfy `v = sum coeff * monomial * elem[index] + remainder`.
    pub fn reduce<F: Field<Elem = E>>(
        &self,
        sp: &Space<'_, F>,
        v: Vector<E>,
        full: bool,
        mut quotients: Option<&mut Vec<(usize, Monomial, E)>>,
    ) -> Vector<E> {
        let mut p = v;
        let mut start = 0;
        let mut rem: Vector<E> = Vec::new();
        while start < p.len() {
            let (m, c, a) = &p[start];
            match self.find(m, *c) {
                Some(i) => {
                    let q = self.lead[i].0.quotient_into(m).expect("divisor");
                    let coeff = a.clone();
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs.push((i, q.clone(), coeff.clone()));
                    }
                    p = sp.axpy(&p[start..], &coeff, &q, &self.elems[i]);
                    start = 0;
                }
                None => {
                    if !full {
                        rem.extend(p.drain(start..));
                        return rem;
                    }
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: i64,
    tdeg: u64,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm with the Gebauer–Möller criteria and the normal
/// selection strategy. Returns the reduced basis sorted by increasing
/// leading term.
pub(crate) fn groebner<F: Field>(sp: &Space<'_, F>, gens: Vec<Vector<F::Elem>>) -> Vec<Vector<F::Elem>> {
    let product_criterion = sp.order.rank() == 1;
    let mut gens: Vec<Vector<F::Elem>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    let key_of = |v: &Vector<F::Elem>| {
        let (m, c, _) = &v[0];
        (sp.degree(m, *c), m.total_degree())
    };
    gens.sort_by_key(|g| key_of(g));
    let mut gi = 0;

    let mut red: Reducer<F::Elem> = Reducer::new();
    let mut pairs: BTreeMap<PairKey, Monomial> = BTreeMap::new();

    loop {
        let take_gen = match (gens.get(gi), pairs.keys().next()) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(g), Some(pk)) => key_of(g) <= (pk.degree, pk.tdeg),
        };
        let candidate = if take_gen {
            gi += 1;
            std::mem::take(&mut gens[gi - 1])
        } else {
            let (pk, lcm) = pairs.pop_first().expect("pair");
            let qi = red.lead(pk.i).0.quotient_into(&lcm).expect("lcm");
            let qj = red.lead(pk.j).0.quotient_into(&lcm).expect("lcm");
            let one = sp.field().one();
            let a = sp.mul_monomial(&red.elems[pk.i], &qi, &one);
            sp.axpy(&a, &one, &qj, &red.elems[pk.j])
        };
        let mut h = red.reduce(sp, candidate, true, None);
        if h.is_empty() {
            continue;
        }
        sp.monic(&mut h);
        let hi = red.push(h);
        update(sp, &mut red, &mut pairs, hi, product_criterion);
    }

    let mut basis: Vec<Vector<F::Elem>> = red
        .elems
        .into_iter()
        .zip(red.active)
        .filter_map(|(v, a)| a.then_some(v))
        .collect();
    basis.sort_by(|a, b| sp.cmp(&a[0].0, a[0].1, &b[0].0, b[0].1));
    interreduce(sp, basis)
}

fn update<F: Field>(
    sp: &Space<'_, F>,
    red: &mut Reducer<F::Elem>,
    pairs: &mut BTreeMap<PairKey, Monomial>,
    h: usize,
    product_criterion: bool,
) {
    let (mh, ch) = red.lead(h).clone();
    let cands: Vec<(usize, Monomial, bool)> = (0..h)
        .filter(|&g| red.active[g] && red.lead(g).1 == ch)
        .map(|g| {
            let lg = &red.lead(g).0;
            (g, lg.lcm(&mh), product_criterion && lg.is_coprime(&mh))
        })
        .collect();

    let mut kept: Vec<usize> = Vec::new();
    for idx in 0..cands.len() {
        let (_, l, coprime) = &cands[idx];
        let dominated = cands[idx + 1..].iter().any(|c| c.1.divides(l))
            || kept.iter().any(|&k| cands[k].1.divides(l));
        if *coprime || !dominated {
            kept.push(idx);
        }
    }

    pairs.retain(|pk, l| {
        if red.lead(pk.i).1 != ch || !mh.divides(l) {
            return true;
        }
        let li = red.lead(pk.i).0.lcm(&mh);
        let lj = red.lead(pk.j).0.lcm(&mh);
        li == *l || lj == *l
    });

    for idx in kept {
        let (g, l, coprime) = &cands[idx];
        if *coprime {
            continue;
        }
        let key = PairKey {
            degree: sp.degree(l, ch),
            tdeg: l.total_degree(),
            i: *g,
            j: h,
        };
        pairs.insert(key, l.clone());
    }

    for g in 0..h {
        if red.active[g] && red.lead(g).1 == ch && mh.divides(&red.lead(g).0) {
            red.active[g] = false;
        }
    }
}

/// Tail-reduces a minimal basis into the reduced basis.
pub(crate) fn interreduce<F: Field>(sp: &Space<'_, F>, basis: Vec<Vector<F::Elem>>) -> Vec<Vector<F::Elem>> {
    let red = Reducer::from_elements(basis.clone());
    basis
        .into_iter()
        .map(|v| {
            let mut it = v.into_iter();
            let lead = it.next().expect("nonzero");
            let tail = red.reduce(sp, it.collect(), true, None);
            let mut out = Vec::with_capacity(tail.len() + 1);
            out.push(lead);
            out.extend(tail);
            out
        })
        .collect()
}

/// S-vector of two monic basis elements sharing a leading position.
pub(crate) fn s_vector<F: Field>(
    sp: &Space<'_, F>,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
) -> Option<Vector<F::Elem>> {
    if a[0].1 != b[0].1 {
        return None;
    }
    let l = a[0].0.lcm(&b[0].0);
    let qa = a[0].0.quotient_into(&l)?;
    let qb = b[0].0.quotient_into(&l)?;
    let f = sp.field();
    let ca = f.inv(&a[0].2);
    let cb = f.inv(&b[0].2);
    let x = sp.mul_monomial(a, &qa, &ca);
    Some(sp.axpy(&x, &cb, &qb, b))
}
