//! Graded free resolutions, Betti tables, depth and regularity.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger, default_order, syzygies, SubmodulePresentation};
use crate::linalg::{degree_slice, rank};
use crate::module::{GradedFreeModule, PolyVector};
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// A degree-preserving map `F -> G` of graded free modules, stored by columns:
/// `columns[j][i]` is the `i`-th coordinate of the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix<F: Field> {
    ring: GradedRing<F>,
    source: Vec<i64>,
    target: Vec<i64>,
    columns: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> GradedMatrix<F> {
    pub fn from_columns(source: &GradedFreeModule<F>, target: &GradedFreeModule<F>, columns: Vec<Vec<Polynomial<F>>>) -> Self {
        assert_eq!(columns.len(), source.rank());
        assert!(columns.iter().all(|c| c.len() == target.rank()));
        GradedMatrix {
            ring: source.ring().clone(),
            source: source.twists().to_vec(),
            target: target.twists().to_vec(),
            columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<F> {
        &self.columns[col][row]
    }

    pub fn columns(&self) -> &[Vec<Polynomial<F>>] {
        &self.columns
    }

    /// Row `i` as a list of polynomials.
    pub fn row(&self, i: usize) -> Vec<Polynomial<F>> {
        self.columns.iter().map(|c| c[i].clone()).collect()
    }

    pub fn source_module(&self) -> GradedFreeModule<F> {
        GradedFreeModule::new(&self.ring, self.source.clone())
    }

    pub fn target_module(&self) -> GradedFreeModule<F> {
        GradedFreeModule::new(&self.ring, self.target.clone())
    }

    pub fn column_vector(&self, j: usize) -> PolyVector<F> {
        PolyVector::new(&self.target_module(), self.columns[j].clone()).expect("shape")
    }

    /// Every entry has degree `source twist - target twist`.
    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, col)| {
            col.iter().enumerate().all(|(i, p)| {
                p.terms()
                    .iter()
                    .all(|(m, _)| self.ring.degree(m) + self.target[i] == self.source[j])
            })
        })
    }

    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().flatten().any(|p| p.is_unit())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(self.source, other.target);
        let columns = other
            .columns
            .iter()
            .map(|oc| {
                (0..self.nrows())
                    .map(|i| {
                        oc.iter()
                            .enumerate()
                            .filter(|(_, b)| !b.is_zero())
                            .fold(Polynomial::zero(&self.ring), |acc, (k, b)| &acc + &(&self.columns[k][i] * b))
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            ring: self.ring.clone(),
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().flatten().all(|p| p.is_zero())
    }

    /// Matrix of the map in degree `nu`, rows indexed by the target basis.
    pub fn degree_slice(&self, nu: i64) -> Vec<Vec<F::Elem>> {
        degree_slice(&self.ring, &self.columns, &self.source, &self.target, nu)
    }

    fn remove_row(&mut self, i: usize) {
        self.target.remove(i);
        for c in &mut self.columns {
            c.remove(i);
        }
    }

    fn remove_column(&mut self, j: usize) {
        self.source.remove(j);
        self.columns.remove(j);
    }
}

/// `F_0 <- F_1 <- ... <- F_n`, resolving `F_0 / U`.
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    ring: GradedRing<F>,
    modules: Vec<GradedFreeModule<F>>,
    /// `differentials[k]` is `d_{k+1} : F_{k+1} -> F_k`.
    differentials: Vec<GradedMatrix<F>>,
    minimal: bool,
}

impl<F: Field> Resolution<F> {
    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn modules(&self) -> &[GradedFreeModule<F>] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> Option<&GradedFreeModule<F>> {
        self.modules.get(i)
    }

    /// `d_i : F_i -> F_{i-1}` for `i >= 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix<F>> {
        i.checked_sub(1).and_then(|k| self.differentials.get(k))
    }

    pub fn differentials(&self) -> &[GradedMatrix<F>] {
        &self.differentials
    }

    /// Index of the last nonzero module, or `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.modules.iter().rposition(|m| m.rank() > 0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).is_zero())
    }

    /// Homology of the complex at `F_i` in degree `nu`, for `i >= 1`, plus
    /// the dimension of the cokernel of `d_1` at `i = 0`.
    pub fn homology_dimension(&self, i: usize, nu: i64) -> Result<usize> {
        if self.ring.has_parameter() {
            return Err(AlgebraError::InfiniteDimension(
                "graded pieces over k[t][x] are not finite dimensional".into(),
            ));
        }
        let Some(m) = self.modules.get(i) else {
            return Ok(0);
        };
        let dim = crate::linalg::graded_piece_basis(&self.ring, m.twists(), nu).len();
        let field = self.ring.field();
        let out_rank = match i.checked_sub(1).and_then(|k| self.differentials.get(k)) {
            Some(d) => rank(field, d.degree_slice(nu)),
            None => 0,
        };
        let in_rank = match self.differentials.get(i) {
            Some(d) => rank(field, d.degree_slice(nu)),
            None => 0,
        };
        Ok(dim - out_rank - in_rank)
    }

    /// All homology at positions `>= 1` vanishes in the given degrees.
    pub fn is_exact_on(&self, window: (i64, i64)) -> Result<bool> {
        for i in 1..self.modules.len() {
            for nu in window.0..=window.1 {
                if self.homology_dimension(i, nu)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A graded free resolution of `ambient / U` by iterated Schreyer syzygies,
/// optionally pruned to a minimal one.
pub fn free_resolution<F: Field>(m: &SubmodulePresentation<F>, minimize: bool) -> Result<Resolution<F>> {
    m.require_homogeneous()?;
    let ring = m.ring().clone();
    let f0 = m.ambient().clone();
    let order = default_order(&ring);
    let mut g = buchberger(m, &order);
    let mut modules = vec![f0];
    let mut differentials = Vec::new();
    let cap = ring.num_slots() + 2;
    while !g.is_empty() && modules.len() <= cap {
        let syz = syzygies(&g);
        let (sources, next) = syz.into_parts();
        let target = modules.last().expect("F_0").clone();
        let source = next.module().clone();
        let cols = sources.into_iter().map(|v| v.into_components()).collect();
        differentials.push(GradedMatrix::from_columns(&source, &target, cols));
        modules.push(source);
        g = next;
    }
    let mut res = Resolution {
        ring,
        modules,
        differentials,
        minimal: false,
    };
    if minimize {
        minimize_resolution(&mut res);
    }
    res.minimal = !res.differentials.iter().any(|d| d.has_unit_entry());
    Ok(res)
}

fn minimize_resolution<F: Field>(res: &mut Resolution<F>) {
    let field = res.ring.field().clone();
    for k in 0..res.differentials.len() {
        loop {
            let d = &res.differentials[k];
            let pivot = (0..d.nrows())
                .flat_map(|p| (0..d.ncols()).map(move |q| (p, q)))
                .find(|&(p, q)| d.entry(p, q).is_unit());
            let Some((p, q)) = pivot else { break };
            let d = &mut res.differentials[k];
            let a = d.entry(p, q).terms()[0].1.clone();
            let inv = field.inv(&a);
            let col_q = d.columns[q].clone();
            let row_p = d.row(p);
            for (j, c) in d.columns.iter_mut().enumerate() {
                if j == q || row_p[j].is_zero() {
                    continue;
                }
                let f = row_p[j].scale(&inv);
                for (i, e) in c.iter_mut().enumerate() {
                    if !col_q[i].is_zero() {
                        *e = &*e - &(&col_q[i] * &f);
                    }
                }
            }
            d.remove_row(p);
            d.remove_column(q);
            if let Some(up) = res.differentials.get_mut(k + 1) {
                up.remove_row(q);
            }
            if k > 0 {
                res.differentials[k - 1].remove_column(p);
            }
            let mut tw = res.modules[k + 1].twists().to_vec();
            tw.remove(q);
            res.modules[k + 1] = GradedFreeModule::new(&res.ring, tw);
            let mut tw = res.modules[k].twists().to_vec();
            tw.remove(p);
            res.modules[k] = GradedFreeModule::new(&res.ring, tw);
        }
    }
    while res.modules.len() > 1 && res.modules.last().is_some_and(|m| m.rank() == 0) {
        res.modules.pop();
        res.differentials.pop();
    }
}

/// Graded Betti numbers `β_{i,i+j}`, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, b)| *b > 0).collect(),
        }
    }

    /// `β_{i,i+j}`.
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|k| k.1).max()
    }

    /// Total Betti numbers `β_i = Σ_j β_{i,i+j}`.
    pub fn totals(&self) -> Vec<usize> {
        let n = self.projective_dimension().map_or(0, |p| p + 1);
        let mut out = vec![0; n];
        for ((i, _), b) in &self.entries {
            out[*i] += b;
        }
        out
    }

    pub fn extremal(&self) -> Vec<(usize, i64, usize)> {
        extremal_betti(self)
    }

    /// `{"betti": {i: {j: β}}, "extremal": [[i, j, β], ...]}`.
    pub fn to_json(&self) -> Value {
        let mut rows: Map<String, Value> = Map::new();
        for ((i, j), b) in &self.entries {
            let row = rows
                .entry(i.to_string())
                .or_insert_with(|| Value::Object(Map::new()));
            row.as_object_mut()
                .expect("object")
                .insert(j.to_string(), json!(b));
        }
        let ext: Vec<Value> = self.extremal().iter().map(|(i, j, b)| json!([i, j, b])).collect();
        json!({ "betti": rows, "extremal": ext })
    }

    /// Rows `i,j,beta` for CSV output.
    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        self.entries
            .iter()
            .map(|((i, j), b)| [i.to_string(), j.to_string(), b.to_string()])
            .collect()
    }
}

impl std::fmt::Display for BettiTable {
    /// The usual grid: columns are homological degrees, rows are `j`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return write!(f, "0");
        };
        let jmin = self.entries.keys().map(|k| k.1).min().unwrap_or(0);
        let jmax = self.regularity().unwrap_or(0);
        write!(f, "{:>4}:", "")?;
        for i in 0..=pd {
            write!(f, " {i:>4}")?;
        }
        for j in jmin..=jmax {
            write!(f, "\n{j:>4}:")?;
            for i in 0..=pd {
                match self.get(i, j) {
                    0 => write!(f, " {:>4}", "-")?,
                    b => write!(f, " {b:>4}")?,
                }
            }
        }
        Ok(())
    }
}

/// Betti table of a minimal resolution.
pub fn betti_table<F: Field>(res: &Resolution<F>) -> Result<BettiTable> {
    if !res.is_minimal() {
        return Err(AlgebraError::InvalidArgument(
            "Betti numbers need a minimal resolution".into(),
        ));
    }
    let mut entries: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for (i, m) in res.modules().iter().enumerate() {
        for &tw in m.twists() {
            *entries.entry((i, tw - i as i64)).or_default() += 1;
        }
    }
    Ok(BettiTable::from_entries(entries))
}

/// `(depth, regularity)` with `depth = r - pd`; `None` for the zero module.
pub fn depth_and_regularity(b: &BettiTable, r: usize) -> Option<(i64, i64)> {
    let pd = b.projective_dimension()?;
    Some((r as i64 - pd as i64, b.regularity()?))
}

/// Positions `(i, j, β_{i,i+j})` with `β_{i,i+j} ≠ 0` and `β_{h,h+k} = 0` for
/// every other `h ≥ i`, `k ≥ j`.
pub fn extremal_betti(b: &BettiTable) -> Vec<(usize, i64, usize)> {
    b.entries
        .iter()
        .filter(|((i, j), _)| {
            !b.entries
                .keys()
                .any(|(h, k)| h >= i && k >= j && (h, k) != (i, j))
        })
        .map(|((i, j), v)| (*i, *j, *v))
        .collect()
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

    #[test]
    fn koszul_resolution() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&quotient(&r, &["x", "y"]), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.modules()[1].twists(), &[1, 1]);
        assert_eq!(res.modules()[2].twists(), &[2]);
        assert!(res.is_complex());
        assert!(res.is_exact_on((0, 5)).unwrap());
        let b = betti_table(&res).unwrap();
        assert_eq!((b.get(0, 0), b.get(1, 0), b.get(2, 0)), (1, 2, 1));
        assert_eq!(depth_and_regularity(&b, 2), Some((0, 0)));
        assert_eq!(extremal_betti(&b), vec![(2, 0, 1)]);
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&["x", "y", "z"]);
        let res = free_resolution(&quotient(&r, &["x^3 - y*z^2"]), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 1]);
        assert_eq!(res.modules()[1].twists(), &[3]);
        let b = betti_table(&res).unwrap();
        assert_eq!(depth_and_regularity(&b, 3), Some((2, 2)));
    }

    #[test]
    fn twisted_cubic() {
        let r = ring(&["x", "y", "z", "w"]);
        let m = quotient(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        let res = free_resolution(&m, true).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 2]);
        assert_eq!(res.modules()[2].twists(), &[3, 3]);
        assert!(res.is_complex());
        assert!(res.is_exact_on((0, 6)).unwrap());
        assert!(!res.differentials().iter().any(|d| d.has_unit_entry()));
        let b = betti_table(&res).unwrap();
        assert_eq!((b.get(0, 0), b.get(1, 1), b.get(2, 1)), (1, 3, 2));
        assert_eq!(depth_and_regularity(&b, 4), Some((2, 1)));
        assert_eq!(extremal_betti(&b), vec![(2, 1, 2)]);
    }

    #[test]
    fn free_module_and_zero_module() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&quotient(&r, &[]), true).unwrap();
        let b = betti_table(&res).unwrap();
        assert_eq!(b.entries().len(), 1);
        assert_eq!(extremal_betti(&b), vec![(0, 0, 1)]);
        let res = free_resolution(&quotient(&r, &["1"]), true).unwrap();
        assert!(betti_table(&res).unwrap().is_zero());
    }

    #[test]
    fn non_minimal_is_rejected() {
        let r = ring(&["x", "y", "z"]);
        let res = free_resolution(&quotient(&r, &["x*y", "x*z", "y*z"]), false).unwrap();
        assert!(res.is_complex());
        assert!(res.is_exact_on((0, 4)).unwrap());
        if !res.is_minimal() {
            assert!(betti_table(&res).is_err());
        }
        let res = free_resolution(&quotient(&r, &["x*y", "x*z", "y*z"]), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 2]);
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let r = ring(&["x", "y"]);
        assert!(free_resolution(&quotient(&r, &["x^2 - y"]), true).is_err());
    }

    #[test]
    fn json_layout() {
        let b = BettiTable::from_entries([((0, 0), 1), ((1, 1), 3), ((2, 1), 2)]);
        assert_eq!(
            b.to_json().to_string(),
            r#"{"betti":{"0":{"0":1},"1":{"1":3},"2":{"1":2}},"extremal":[[2,1,2]]}"#
        );
    }
}
