//! Ext modules `Ext^i_T(M, T)` from dualized resolutions, Hilbert functions
//! and local cohomology through graded local duality.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger, default_order, kernel_with_twists, GroebnerBasis, SubmodulePresentation};
use crate::linalg::monomials_of_degree;
use crate::module::{GradedFreeModule, PolyVector};
use crate::resolve::{free_resolution, GradedMatrix, Resolution};
use crate::ring::GradedRing;

/// Degreewise dimensions on a closed window `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    window: (i64, i64),
    dims: BTreeMap<i64, usize>,
}

impl HilbertTable {
    pub fn new(window: (i64, i64), mut f: impl FnMut(i64) -> usize) -> Self {
        HilbertTable {
            window,
            dims: (window.0..=window.1).map(|n| (n, f(n))).collect(),
        }
    }

    pub fn zero(window: (i64, i64)) -> Self {
        Self::new(window, |_| 0)
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Dimension in degree `nu`; zero outside the window.
    pub fn get(&self, nu: i64) -> usize {
        self.dims.get(&nu).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// Nonzero entries only.
    pub fn support(&self) -> BTreeMap<i64, usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&n, &d)| (n, d)).collect()
    }

    /// Degreewise `self >= other` on the common window.
    pub fn dominates(&self, other: &HilbertTable) -> bool {
        self.dims.iter().all(|(n, &d)| d >= other.get(*n))
    }

    /// `{"window": [lo, hi], "dims": {nu: dim}}` in increasing degree.
    pub fn to_json(&self) -> Value {
        let mut dims = Map::new();
        for (n, d) in &self.dims {
            dims.insert(n.to_string(), json!(d));
        }
        json!({ "window": [self.window.0, self.window.1], "dims": dims })
    }

    pub fn csv_rows(&self) -> Vec<[String; 2]> {
        self.dims.iter().map(|(n, d)| [n.to_string(), d.to_string()]).collect()
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A graded module `ambient / relations`.
#[derive(Debug, Clone)]
pub struct GradedModulePresentation<F: Field> {
    relations: SubmodulePresentation<F>,
    basis: GroebnerBasis<F>,
    label: String,
}

impl<F: Field> GradedModulePresentation<F> {
    pub fn new(relations: SubmodulePresentation<F>, label: impl Into<String>) -> Self {
        let basis = buchberger(&relations, &default_order(relations.ring()));
        GradedModulePresentation {
            relations,
            basis,
            label: label.into(),
        }
    }

    pub fn ambient(&self) -> &GradedFreeModule<F> {
        self.relations.ambient()
    }

    pub fn ring(&self) -> &GradedRing<F> {
        self.relations.ring()
    }

    pub fn relations(&self) -> &SubmodulePresentation<F> {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        self.ambient().rank() == 0 || self.basis.is_whole_module()
    }

    /// Relations given by their reduced Gröbner basis.
    pub fn reduced_relations(&self) -> SubmodulePresentation<F> {
        self.basis.to_presentation()
    }

    /// Number of standard monomials of degree `nu`.
    pub fn dimension(&self, nu: i64) -> Result<usize> {
        let ring = self.ring();
        if ring.has_parameter() && !self.is_zero() {
            return Err(AlgebraError::InfiniteDimension(
                "graded pieces over k[t][x] are infinite dimensional; specialize t first".into(),
            ));
        }
        let leads = self.basis.leading_terms();
        let mut count = 0;
        for (c, tw) in self.ambient().twists().iter().enumerate() {
            let lc: Vec<_> = leads.iter().filter(|(_, p)| *p == c).map(|(m, _)| m).collect();
            if lc.iter().any(|m| m.is_one()) {
                continue;
            }
            count += monomials_of_degree(ring, nu - tw)
                .iter()
                .filter(|m| !lc.iter().any(|l| l.divides(m)))
                .count();
        }
        Ok(count)
    }

    pub fn hilbert_function(&self, window: (i64, i64)) -> Result<HilbertTable> {
        check_window(window)?;
        if self.is_zero() {
            return Ok(HilbertTable::zero(window));
        }
        let mut dims = BTreeMap::new();
        for nu in window.0..=window.1 {
            dims.insert(nu, self.dimension(nu)?);
        }
        Ok(HilbertTable { window, dims })
    }
}

pub(crate) fn check_window(window: (i64, i64)) -> Result<()> {
    if window.0 > window.1 {
        return Err(AlgebraError::InvalidArgument(format!(
            "empty window [{}, {}]",
            window.0, window.1
        )));
    }
    Ok(())
}

/// The default window `[-δ - 10, 10]`.
pub fn default_window<F: Field>(ring: &GradedRing<F>) -> (i64, i64) {
    (-ring.delta() - 10, 10)
}

pub fn hilbert_function<F: Field>(n: &GradedModulePresentation<F>, window: (i64, i64)) -> Result<HilbertTable> {
    n.hilbert_function(window)
}

fn rows_as_dual_vectors<F: Field>(d: &GradedMatrix<F>, dual_source: &GradedFreeModule<F>) -> Vec<PolyVector<F>> {
    (0..d.nrows())
        .map(|i| PolyVector::new(dual_source, d.row(i)).expect("shape"))
        .collect()
}

/// `Ext^i(M, T)` from a resolution of `M`: `ker(d_{i+1}^T) / im(d_i^T)`,
/// presented on the generators of the kernel.
pub fn ext_from_resolution<F: Field>(res: &Resolution<F>, i: usize) -> Result<GradedModulePresentation<F>> {
    let ring = res.ring();
    let label = format!("Ext^{i}");
    let Some(fi) = res.module(i) else {
        return Ok(GradedModulePresentation::new(
            SubmodulePresentation::new(&GradedFreeModule::new(ring, vec![]), vec![])?,
            label,
        ));
    };
    let fi_dual = fi.dual();
    let image: Vec<PolyVector<F>> = match res.differential(i) {
        Some(d) => rows_as_dual_vectors(d, &fi_dual),
        None => Vec::new(),
    };
    let image_twists: Vec<i64> = match i.checked_sub(1).and_then(|k| res.module(k)) {
        Some(m) => m.twists().iter().map(|t| -t).collect(),
        None => Vec::new(),
    };

    let next = res.differential(i + 1).filter(|d| !d.is_zero());
    let Some(next) = next else {
        return Ok(GradedModulePresentation::new(
            SubmodulePresentation::new(&fi_dual, image)?,
            label,
        ));
    };
    let next_dual = next.source_module().dual();
    let rows: Vec<PolyVector<F>> = (0..next.nrows())
        .map(|r| PolyVector::new(&next_dual, next.row(r)).expect("shape"))
        .collect();
    let ker = kernel_with_twists(&next_dual, &rows, fi_dual.twists().to_vec())?;
    let ker = buchberger(&ker, &default_order(ring)).to_presentation();
    let ker_gens: Vec<PolyVector<F>> = ker
        .generators()
        .iter()
        .map(|v| PolyVector::new(&fi_dual, v.components().to_vec()).expect("shape"))
        .collect();
    let m = ker_gens.len();
    let gen_twists: Vec<i64> = ker_gens.iter().map(crate::groebner::syzygy::vector_degree).collect();
    let gmod = GradedFreeModule::new(ring, gen_twists.clone());
    if image.is_empty() && m == 0 {
        return Ok(GradedModulePresentation::new(SubmodulePresentation::new(&gmod, vec![])?, label));
    }
    let mut cols = ker_gens;
    cols.extend(image);
    let mut twists = gen_twists;
    twists.extend(image_twists);
    let rel = kernel_with_twists(&fi_dual, &cols, twists)?;
    let rels: Vec<PolyVector<F>> = rel
        .generators()
        .iter()
        .map(|v| PolyVector::new(&gmod, v.components()[..m].to_vec()).expect("shape"))
        .filter(|v| !v.is_zero())
        .collect();
    Ok(GradedModulePresentation::new(
        SubmodulePresentation::new(&gmod, rels)?,
        label,
    ))
}

/// Presentations of `Ext^i_T(M, T)` for `i = 0..=max(r, pd)`, where `M` is
/// `ambient / U` and `r` counts the positive-degree variables.
pub fn ext_modules<F: Field>(m: &SubmodulePresentation<F>) -> Result<Vec<GradedModulePresentation<F>>> {
    let ring = m.ring();
    let res = free_resolution(m, !ring.has_parameter())?;
    let top = ring.num_vars().max(res.length().unwrap_or(0));
    (0..=top).map(|i| ext_from_resolution(&res, i)).collect()
}

/// Local cohomology of one module, with its Ext modules computed once.
#[derive(Debug, Clone)]
pub struct LocalCohomology<F: Field> {
    ring: GradedRing<F>,
    exts: Vec<GradedModulePresentation<F>>,
}

impl<F: Field> LocalCohomology<F> {
    pub fn new(m: &SubmodulePresentation<F>) -> Result<Self> {
        if m.ring().has_parameter() {
            return Err(AlgebraError::InvalidArgument(
                "local cohomology tables need a ring without parameter; specialize t first".into(),
            ));
        }
        Ok(LocalCohomology {
            ring: m.ring().clone(),
            exts: ext_modules(m)?,
        })
    }

    pub fn ext_modules(&self) -> &[GradedModulePresentation<F>] {
        &self.exts
    }

    /// `dim [H^i_m(M)]_ν = dim [Ext^{r-i}(M, T)]_{-ν-δ}`; zero for `i > r`.
    pub fn table(&self, i: usize, window: (i64, i64)) -> Result<HilbertTable> {
        check_window(window)?;
        let r = self.ring.num_vars();
        if i > r {
            return Ok(HilbertTable::zero(window));
        }
        let e = &self.exts[r - i];
        if e.is_zero() {
            return Ok(HilbertTable::zero(window));
        }
        let delta = self.ring.delta();
        let mut dims = BTreeMap::new();
        for nu in window.0..=window.1 {
            dims.insert(nu, e.dimension(-nu - delta)?);
        }
        Ok(HilbertTable { window, dims })
    }

    /// Tables for `i = 0..=r`.
    pub fn all_tables(&self, window: (i64, i64)) -> Result<Vec<HilbertTable>> {
        (0..=self.ring.num_vars()).map(|i| self.table(i, window)).collect()
    }
}

/// `dim [H^i_m(M)]_ν` on the window, for `M = ambient / U` over `k[x]`.
pub fn local_cohomology_hilbert<F: Field>(
    m: &SubmodulePresentation<F>,
    i: i64,
    window: (i64, i64),
) -> Result<HilbertTable> {
    let r = m.ring().num_vars();
    if i < 0 || i as usize > r {
        return Err(AlgebraError::IndexOutOfRange { index: i, max: r });
    }
    LocalCohomology::new(m)?.table(i as usize, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(names: &[&str]) -> GradedRing<Rationals> {
        GradedRing::named(names, &vec![1; names.len()], None, Rationals).unwrap()
    }

    fn quotient(r: &GradedRing<Rationals>, g: &[&str]) -> SubmodulePresentation<Rationals> {
        SubmodulePresentation::parse_ideal(r, g).unwrap()
    }

    fn table(pairs: &[(i64, usize)], window: (i64, i64)) -> HilbertTable {
        let m: BTreeMap<i64, usize> = pairs.iter().copied().collect();
        HilbertTable::new(window, |n| m.get(&n).copied().unwrap_or(0))
    }

    #[test]
    fn hilbert_functions() {
        let r = ring(&["x", "y"]);
        let n = GradedModulePresentation::new(quotient(&r, &[]), "S");
        assert_eq!(n.hilbert_function((0, 2)).unwrap(), table(&[(0, 1), (1, 2), (2, 3)], (0, 2)));
        let n = GradedModulePresentation::new(quotient(&r, &["x*y"]), "S/I");
        assert_eq!(n.hilbert_function((0, 3)).unwrap(), table(&[(0, 1), (1, 2), (2, 2), (3, 2)], (0, 3)));
        let r4 = ring(&["x", "y", "z", "w"]);
        let n = GradedModulePresentation::new(quotient(&r4, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]), "S/I");
        assert_eq!(n.hilbert_function((0, 3)).unwrap(), table(&[(0, 1), (1, 4), (2, 7), (3, 10)], (0, 3)));
    }

    #[test]
    fn ext_of_free_and_residue_field() {
        let r = ring(&["x", "y"]);
        let e = ext_modules(&quotient(&r, &[])).unwrap();
        assert_eq!(e[0].hilbert_function((0, 2)).unwrap(), table(&[(0, 1), (1, 2), (2, 3)], (0, 2)));
        assert!(e[1].is_zero() && e[2].is_zero());

        let e = ext_modules(&quotient(&r, &["x", "y"])).unwrap();
        assert!(e[0].is_zero() && e[1].is_zero());
        assert_eq!(e[2].hilbert_function((-4, 2)).unwrap(), table(&[(-2, 1)], (-4, 2)));
    }

    #[test]
    fn ext_of_hypersurface() {
        let r = ring(&["x", "y", "z"]);
        let e = ext_modules(&quotient(&r, &["x*z - y^2"])).unwrap();
        assert!(e[0].is_zero());
        // (S/f)(2): dimension 2d+1 in degree d-2
        let h = e[1].hilbert_function((-3, 2)).unwrap();
        assert_eq!(h, table(&[(-2, 1), (-1, 3), (0, 5), (1, 7), (2, 9)], (-3, 2)));
        assert!(e[2].is_zero() && e[3].is_zero());
    }

    #[test]
    fn polynomial_ring_top_cohomology() {
        let r = ring(&["x", "y", "z"]);
        let s = quotient(&r, &[]);
        let lc = LocalCohomology::new(&s).unwrap();
        assert_eq!(lc.table(3, (-6, 0)).unwrap(), table(&[(-3, 1), (-4, 3), (-5, 6), (-6, 10)], (-6, 0)));
        for i in 0..3 {
            assert!(lc.table(i, (-6, 0)).unwrap().is_zero());
        }
        assert!(matches!(
            local_cohomology_hilbert(&s, 4, (0, 0)),
            Err(AlgebraError::IndexOutOfRange { .. })
        ));
        assert!(lc.table(4, (0, 0)).unwrap().is_zero());
    }

    #[test]
    fn finite_length_and_double_line() {
        let r = ring(&["x", "y"]);
        let k = local_cohomology_hilbert(&quotient(&r, &["x", "y"]), 0, (-3, 3)).unwrap();
        assert_eq!(k, table(&[(0, 1)], (-3, 3)));
        let h = local_cohomology_hilbert(&quotient(&r, &["x^2"]), 1, (-3, 1)).unwrap();
        assert_eq!(h, table(&[(0, 1), (-1, 2), (-2, 2), (-3, 2)], (-3, 1)));
    }

    #[test]
    fn weighted_grading() {
        let r = GradedRing::named(&["x", "y"], &[1, 2], None, Rationals).unwrap();
        let h = local_cohomology_hilbert(&quotient(&r, &[]), 2, (-6, 0)).unwrap();
        // inverse monomials x^-a y^-b with a, b >= 1 in degree -(a + 2b)
        assert_eq!(h, table(&[(-3, 1), (-4, 1), (-5, 2), (-6, 2)], (-6, 0)));
    }

    #[test]
    fn hilbert_rejects_parameter_rings() {
        let r = GradedRing::named(&["x"], &[1], Some("t"), Rationals).unwrap();
        let n = GradedModulePresentation::new(quotient(&r, &["t*x"]), "M");
        assert!(matches!(n.hilbert_function((0, 1)), Err(AlgebraError::InfiniteDimension(_))));
    }
}
