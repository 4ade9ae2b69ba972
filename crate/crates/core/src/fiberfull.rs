//! Fiber-fullness over `A = k[t]`: parameter torsion of a module and of its
//! Ext modules, the fiber-full locus `D(g)`, fiberwise local cohomology and
//! the square-free degeneration check.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::ext::{ext_modules, GradedModulePresentation, HilbertTable, LocalCohomology};
use crate::field::Field;
use crate::groebner::{
    buchberger, colon_by_vector, contract_to_parameter, groebner_basis, homogenize_omega, initial_module,
    is_squarefree, saturate, weight_vector_for, ModuleOrder, SubmodulePresentation,
};
use crate::module::{GradedFreeModule, PolyVector};
use crate::poly::{monic_in_parameter, parameter_lcm, Polynomial};
use crate::resolve::{betti_table, depth_and_regularity, free_resolution, BettiTable};
use crate::ring::{GradedRing, Monomial, TermOrder};

/// Parameter torsion of one module: generators of the torsion submodule
/// modulo the relations, and the monic `g ∈ k[t]` annihilating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCertificate<F: Field> {
    /// `Some(i)` for `Ext^i`, `None` for the module itself.
    pub ext_index: Option<usize>,
    pub torsion_generators: Vec<PolyVector<F>>,
    pub annihilator: Polynomial<F>,
}

impl<F: Field> TorsionCertificate<F> {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_generators.is_empty()
    }

    /// No `(t - c)`-torsion, i.e. `g(c) ≠ 0`.
    pub fn free_at(&self, c: &F::Elem) -> bool {
        let f = self.annihilator.ring().field();
        !f.is_zero(&self.annihilator.evaluate_parameter(c).expect("annihilator lies in k[t]"))
    }

    /// Checks `g · s ∈ relations` for every torsion generator `s`.
    pub fn verify(&self, relations: &SubmodulePresentation<F>) -> Result<bool> {
        let g = buchberger(relations, &crate::groebner::default_order(relations.ring()));
        for s in &self.torsion_generators {
            if !g.contains(&s.mul_poly(&self.annihilator)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ext_index": self.ext_index,
            "torsion_generators": self.torsion_generators.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "annihilator": self.annihilator.to_string(),
        })
    }
}

/// The coefficient in `k[t]` of the leading x-monomial of each element of a
/// basis under the position-before-parameter order.
fn leading_parameter_coefficients<F: Field>(u: &SubmodulePresentation<F>) -> Vec<Polynomial<F>> {
    let ring = u.ring();
    let r = ring.num_vars();
    let slot = r;
    let g = groebner_basis(u, &ModuleOrder::position_before_parameter(u.ambient().rank()));
    g.raw_elements()
        .iter()
        .map(|v| {
            let (m0, c0, _) = &v[0];
            let x0 = &m0.exponents()[..r];
            let terms = v
                .iter()
                .take_while(|(m, c, _)| c == c0 && &m.exponents()[..r] == x0)
                .map(|(m, _, a)| {
                    let mut e = vec![0u32; ring.num_slots()];
                    e[slot] = m.exponents()[slot];
                    (Monomial::from_exponents(&e), a.clone())
                });
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// Torsion of `N = ambient / U` as a `k[t]`-module.
pub fn parameter_torsion<F: Field>(n: &GradedModulePresentation<F>) -> Result<TorsionCertificate<F>> {
    torsion_of(n.relations(), None)
}

fn torsion_of<F: Field>(u: &SubmodulePresentation<F>, ext_index: Option<usize>) -> Result<TorsionCertificate<F>> {
    let ring = u.ring();
    if !ring.has_parameter() {
        return Err(AlgebraError::InvalidArgument(
            "parameter torsion needs a ring with a parameter".into(),
        ));
    }
    let one = Polynomial::one(ring);
    let free = TorsionCertificate {
        ext_index,
        torsion_generators: Vec::new(),
        annihilator: one.clone(),
    };
    if u.ambient().rank() == 0 {
        return Ok(free);
    }
    let mut h = one.clone();
    for c in leading_parameter_coefficients(u) {
        h = parameter_lcm(&h, &c)?;
    }
    if h.is_unit() {
        return Ok(free);
    }
    let base = buchberger(u, &crate::groebner::default_order(ring));
    let sat = saturate(u, &h)?;
    let mut gens = Vec::new();
    let mut g = one;
    for s in sat.generators() {
        let s = base.normal_form(s)?;
        if s.is_zero() {
            continue;
        }
        let ann = colon_by_vector(u, &s)?;
        let c = contract_to_parameter(&ann)?;
        let a = c.into_iter().next().ok_or_else(|| {
            AlgebraError::InvalidArgument(format!("{s} is not annihilated by any polynomial in t"))
        })?;
        g = parameter_lcm(&g, &monic_in_parameter(&a))?;
        gens.push(s);
    }
    Ok(TorsionCertificate {
        ext_index,
        torsion_generators: gens,
        annihilator: g,
    })
}

fn format_point<F: Field>(ring: &GradedRing<F>, c: &F::Elem) -> String {
    let t = ring.parameter_name().unwrap_or("t");
    let f = ring.field();
    if f.is_zero(c) {
        format!("({t})")
    } else {
        let p = Polynomial::parameter(ring).expect("parameter") - Polynomial::constant(ring, c.clone());
        format!("({p})")
    }
}

/// Torsion certificates of `M` and of `Ext^i(M, T)` for `0 <= i <= r`.
#[derive(Debug, Clone)]
pub struct FiberFullAnalysis<F: Field> {
    ring: GradedRing<F>,
    pub module: TorsionCertificate<F>,
    pub exts: Vec<TorsionCertificate<F>>,
}

impl<F: Field> FiberFullAnalysis<F> {
    pub fn new(m: &SubmodulePresentation<F>) -> Result<Self> {
        let ring = m.ring();
        if !ring.has_parameter() {
            return Err(AlgebraError::InvalidArgument(
                "fiber-fullness is decided over a ring with a parameter".into(),
            ));
        }
        let module = torsion_of(m, None)?;
        let exts = ext_modules(m)?;
        let r = ring.num_vars();
        let exts = exts
            .par_iter()
            .take(r + 1)
            .enumerate()
            .map(|(i, e)| torsion_of(e.relations(), Some(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiberFullAnalysis {
            ring: ring.clone(),
            module,
            exts,
        })
    }

    /// Monic lcm of all annihilators; the fiber-full locus is `D(g)`.
    pub fn locus(&self) -> Polynomial<F> {
        let mut g = self.module.annihilator.clone();
        for c in &self.exts {
            g = parameter_lcm(&g, &c.annihilator).expect("annihilators lie in k[t]");
        }
        monic_in_parameter(&g)
    }

    pub fn report_at(&self, c: &F::Elem) -> FiberFullReport<F> {
        let module_free = self.module.free_at(c);
        let verdicts: Vec<bool> = self.exts.iter().map(|e| e.free_at(c)).collect();
        FiberFullReport {
            point: c.clone(),
            prime: format_point(&self.ring, c),
            module_free_over_base: module_free,
            overall: module_free && verdicts.iter().all(|&v| v),
            ext_free: verdicts,
            module: self.module.clone(),
            certificates: self.exts.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiberFullReport<F: Field> {
    pub point: F::Elem,
    /// `(t)` or `(t - c)`.
    pub prime: String,
    pub module_free_over_base: bool,
    /// `ext_free[i]`: `Ext^i` has no torsion at the prime.
    pub ext_free: Vec<bool>,
    pub overall: bool,
    pub module: TorsionCertificate<F>,
    pub certificates: Vec<TorsionCertificate<F>>,
}

impl<F: Field> FiberFullReport<F> {
    /// All `g_i` equal one.
    pub fn all_torsion_free(&self) -> bool {
        self.module.is_torsion_free() && self.certificates.iter().all(|c| c.is_torsion_free())
    }

    pub fn to_json(&self) -> Value {
        let per_index: Vec<Value> = self
            .certificates
            .iter()
            .zip(&self.ext_free)
            .map(|(c, v)| {
                json!({
                    "i": c.ext_index,
                    "free_over_base": v,
                    "certificate": c.to_json(),
                })
            })
            .collect();
        json!({
            "evaluated_prime": self.prime,
            "module_free_over_base": self.module_free_over_base,
            "module_certificate": self.module.to_json(),
            "ext": per_index,
            "overall": self.overall,
        })
    }
}

/// Fiber-fullness of `M` at the prime `(t - c)`.
pub fn fiber_full_check<F: Field>(m: &SubmodulePresentation<F>, c: &F::Elem) -> Result<FiberFullReport<F>> {
    Ok(FiberFullAnalysis::new(m)?.report_at(c))
}

/// `g` with fiber-full locus `D(g)`.
pub fn fiber_full_locus<F: Field>(m: &SubmodulePresentation<F>) -> Result<Polynomial<F>> {
    Ok(FiberFullAnalysis::new(m)?.locus())
}

/// Specializes `ambient / U` over `k[t][x]` at `t = c`.
pub fn specialize<F: Field>(m: &SubmodulePresentation<F>, c: &F::Elem) -> Result<SubmodulePresentation<F>> {
    let target = m.ring().without_parameter();
    let amb = GradedFreeModule::new(&target, m.ambient().twists().to_vec());
    let gens = m
        .generators()
        .iter()
        .map(|v| {
            let comps = v
                .components()
                .iter()
                .map(|p| p.substitute_parameter(c, &target))
                .collect::<Result<Vec<_>>>()?;
            PolyVector::new(&amb, comps)
        })
        .collect::<Result<Vec<_>>>()?;
    SubmodulePresentation::new(&amb, gens)
}

/// Points at which to compare fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberPoints<E> {
    List(Vec<E>),
    /// The smallest integer `c >= 0` with `g(c) ≠ 0`.
    Generic,
}

/// The generic point used for [`FiberPoints::Generic`].
pub fn generic_point<F: Field>(g: &Polynomial<F>) -> F::Elem {
    let f = g.ring().field();
    let mut c = 0i64;
    loop {
        let e = f.from_i64(c);
        if !f.is_zero(&g.evaluate_parameter(&e).expect("parameter polynomial")) {
            return e;
        }
        c += 1;
    }
}

/// `dim [H^i_m(M ⊗ k(c))]_ν` for each point `c`.
pub fn fiber_hilbert_compare<F: Field>(
    m: &SubmodulePresentation<F>,
    points: &FiberPoints<F::Elem>,
    i: usize,
    window: (i64, i64),
) -> Result<Vec<HilbertTable>> {
    let pts = match points {
        FiberPoints::List(v) => v.clone(),
        FiberPoints::Generic => vec![generic_point(&fiber_full_locus(m)?)],
    };
    pts.par_iter()
        .map(|c| LocalCohomology::new(&specialize(m, c)?)?.table(i, window))
        .collect()
}

/// One side of a degeneration: `S/I` or `S/in(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSummary {
    /// `tables[i]` is the Hilbert table of `H^i_m`.
    pub tables: Vec<HilbertTable>,
    pub betti: BettiTable,
    pub extremal: Vec<(usize, i64, usize)>,
    pub depth: Option<i64>,
    pub regularity: Option<i64>,
}

impl FiberSummary {
    pub fn compute<F: Field>(m: &SubmodulePresentation<F>, window: (i64, i64)) -> Result<Self> {
        let r = m.ring().num_vars();
        let lc = LocalCohomology::new(m)?;
        let tables = lc.all_tables(window)?;
        let betti = betti_table(&free_resolution(m, true)?)?;
        let dr = depth_and_regularity(&betti, r);
        Ok(FiberSummary {
            tables,
            extremal: betti.extremal(),
            betti,
            depth: dr.map(|d| d.0),
            regularity: dr.map(|d| d.1),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "local_cohomology": self.tables.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "betti": self.betti.to_json(),
            "depth": self.depth,
            "regularity": self.regularity,
        })
    }
}

/// Result of comparing `S/I` with its Gröbner degeneration `S/in_<(I)`.
#[derive(Debug, Clone)]
pub struct DegenerationReport<F: Field> {
    pub order: TermOrder,
    pub window: (i64, i64),
    pub omega: Vec<u64>,
    pub ideal: SubmodulePresentation<F>,
    pub initial: SubmodulePresentation<F>,
    pub family: SubmodulePresentation<F>,
    pub squarefree: bool,
    pub fiber_full: FiberFullReport<F>,
    pub generic: FiberSummary,
    pub special: FiberSummary,
    /// Degreewise equality of every local cohomology table.
    pub equal: bool,
}

impl<F: Field> DegenerationReport<F> {
    pub fn extremal_equal(&self) -> bool {
        self.generic.extremal == self.special.extremal
    }

    pub fn depth_reg_equal(&self) -> bool {
        self.generic.depth == self.special.depth && self.generic.regularity == self.special.regularity
    }

    pub fn to_json(&self) -> Value {
        let gens = |p: &SubmodulePresentation<F>| p.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>();
        json!({
            "field": self.ideal.ring().field().descriptor().to_string(),
            "order": self.order.to_string(),
            "window": [self.window.0, self.window.1],
            "ideal": gens(&self.ideal),
            "initial_ideal": gens(&self.initial),
            "squarefree": self.squarefree,
            "omega": self.omega,
            "family": gens(&self.family),
            "fiber_full": self.fiber_full.to_json(),
            "ideal_side": self.generic.to_json(),
            "initial_side": self.special.to_json(),
            "equal": self.equal,
            "extremal_equal": self.extremal_equal(),
            "depth_regularity_equal": self.depth_reg_equal(),
        })
    }
}

/// Runs the degeneration pipeline: `in_<(I)`, square-freeness, ω and
/// `J = hom_ω(I)`, fiber-fullness of `R/J` at `(t)`, and both families of
/// local cohomology tables and Betti data. Square-free and fiber-full but
/// unequal tables raise a theorem-violation error.
pub fn cv_verify<F: Field>(
    i: &SubmodulePresentation<F>,
    order: &TermOrder,
    window: (i64, i64),
) -> Result<DegenerationReport<F>> {
    crate::ext::check_window(window)?;
    if !i.is_ideal() || i.ring().has_parameter() {
        return Err(AlgebraError::InvalidArgument(
            "degeneration needs an ideal of a ring without parameter".into(),
        ));
    }
    i.require_homogeneous()?;
    let initial = initial_module(&buchberger(i, order));
    let squarefree = is_squarefree(&initial)?;
    let omega = weight_vector_for(i, order)?;
    let hom = homogenize_omega(i, &omega, order)?;
    let family_ring = hom.family_ring.clone();
    let fiber_full = fiber_full_check(&hom.family, &family_ring.field().zero())?;
    let (generic, special) = rayon::join(
        || FiberSummary::compute(i, window),
        || FiberSummary::compute(&initial, window),
    );
    let (generic, special) = (generic?, special?);
    let equal = generic.tables == special.tables;
    let report = DegenerationReport {
        order: order.clone(),
        window,
        omega,
        ideal: i.clone(),
        initial,
        family: hom.family,
        squarefree,
        fiber_full,
        generic,
        special,
        equal,
    };
    if report.squarefree && report.fiber_full.overall && !report.equal {
        return Err(AlgebraError::TheoremViolation {
            instance: report.to_json().to_string(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring_t(names: &[&str]) -> GradedRing<Rationals> {
        GradedRing::named(names, &vec![1; names.len()], Some("t"), Rationals).unwrap()
    }

    fn quotient(r: &GradedRing<Rationals>, g: &[&str]) -> SubmodulePresentation<Rationals> {
        SubmodulePresentation::parse_ideal(r, g).unwrap()
    }

    fn q(n: i64) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(n.into())
    }

    #[test]
    fn torsion_examples() {
        let r = ring_t(&["x"]);
        let n = GradedModulePresentation::new(quotient(&r, &["t*x"]), "M");
        let c = parameter_torsion(&n).unwrap();
        assert_eq!(c.annihilator, Polynomial::parse(&r, "t").unwrap());
        assert_eq!(c.torsion_generators.len(), 1);
        assert_eq!(c.torsion_generators[0].to_string(), "x");
        assert!(c.verify(n.relations()).unwrap());

        let n = GradedModulePresentation::new(quotient(&r, &[]), "T");
        let c = parameter_torsion(&n).unwrap();
        assert!(c.is_torsion_free() && c.annihilator.is_unit());

        let n = GradedModulePresentation::new(quotient(&r, &["(t^2 - t)*x"]), "M");
        let c = parameter_torsion(&n).unwrap();
        assert_eq!(c.annihilator, Polynomial::parse(&r, "t^2 - t").unwrap());
    }

    #[test]
    fn negative_control() {
        let r = ring_t(&["x"]);
        let m = quotient(&r, &["t*x"]);
        let a = FiberFullAnalysis::new(&m).unwrap();
        assert!(!a.report_at(&q(0)).overall);
        assert!(a.report_at(&q(1)).overall);
        assert_eq!(a.locus(), Polynomial::parse(&r, "t").unwrap());
        let m = quotient(&r, &["(t^2 - t)*x"]);
        assert_eq!(fiber_full_locus(&m).unwrap(), Polynomial::parse(&r, "t^2 - t").unwrap());
    }

    #[test]
    fn hypersurface_family_is_fiber_full() {
        let r = ring_t(&["x", "y", "z"]);
        let m = quotient(&r, &["x*z - t*y^2"]);
        let rep = fiber_full_check(&m, &q(0)).unwrap();
        assert!(rep.overall);
        assert!(rep.all_torsion_free());
        let tables = fiber_hilbert_compare(&m, &FiberPoints::List(vec![q(0), q(1)]), 2, (-4, 1)).unwrap();
        assert_eq!(tables[0], tables[1]);
        assert_eq!(tables[0].support(), [(-4, 7), (-3, 5), (-2, 3), (-1, 1)].into_iter().collect());
    }

    #[test]
    fn torsion_changes_the_special_fiber() {
        let r = ring_t(&["x"]);
        let m = quotient(&r, &["t*x"]);
        let tables = fiber_hilbert_compare(&m, &FiberPoints::List(vec![q(0), q(1)]), 0, (0, 0)).unwrap();
        assert_ne!(tables[0], tables[1]);
        let g = fiber_hilbert_compare(&m, &FiberPoints::Generic, 0, (0, 0)).unwrap();
        assert_eq!(g[0], tables[1]);
    }

    #[test]
    fn degeneration_of_a_conic() {
        let s = GradedRing::named(&["x", "y", "z"], &[1, 1, 1], None, Rationals).unwrap();
        let i = quotient(&s, &["x*z - y^2"]);
        let rep = cv_verify(&i, &TermOrder::Lex, (-10, 5)).unwrap();
        assert!(rep.squarefree && rep.equal && rep.fiber_full.overall);
        assert_eq!(rep.generic.depth, Some(2));
        assert_eq!(rep.generic.regularity, Some(1));
        assert!(rep.extremal_equal() && rep.depth_reg_equal());
    }
}
