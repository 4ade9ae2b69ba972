//! Dense linear algebra over a field and degreewise slices of graded maps.

use std::collections::HashMap;

use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial};

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]);
        let pivot: Vec<F::Elem> = rows[rank].iter().map(|a| field.mul(a, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (a, b) in row.iter_mut().zip(&pivot).skip(col) {
                *a = field.sub(a, &field.mul(&c, b));
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Monomials in the positive-degree variables of weighted degree `d`, in
/// increasing lexicographic order of exponent vectors.
pub fn monomials_of_degree<F: Field>(ring: &GradedRing<F>, d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let w = ring.weights();
    let mut exps = vec![0u32; ring.num_slots()];
    fn rec(k: usize, left: i64, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        let wk = w[k] as i64;
        let mut e = 0;
        while e * wk <= left {
            exps[k] = e as u32;
            rec(k + 1, left - e * wk, w, exps, out);
            e += 1;
        }
        exps[k] = 0;
    }
    rec(0, d, w, &mut exps, &mut out);
    out
}

/// Basis `(monomial, position)` of the degree-`nu` piece of a graded free
/// module over a ring without parameter.
pub fn graded_piece_basis<F: Field>(ring: &GradedRing<F>, twists: &[i64], nu: i64) -> Vec<(Monomial, usize)> {
    twists
        .iter()
        .enumerate()
        .flat_map(|(c, tw)| monomials_of_degree(ring, nu - tw).into_iter().map(move |m| (m, c)))
        .collect()
}

/// The matrix of a graded map in degree `nu`; `columns[j]` is the image of the
/// `j`-th source basis element as one polynomial per target position.
/// Returned with one row per target basis element.
pub fn degree_slice<F: Field>(
    ring: &GradedRing<F>,
    columns: &[Vec<Polynomial<F>>],
    source_twists: &[i64],
    target_twists: &[i64],
    nu: i64,
) -> Vec<Vec<F::Elem>> {
    let field = ring.field();
    let src = graded_piece_basis(ring, source_twists, nu);
    let tgt = graded_piece_basis(ring, target_twists, nu);
    let index: HashMap<(Monomial, usize), usize> = tgt.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = vec![vec![field.zero(); src.len()]; index.len()];
    for (j, (m, c)) in src.iter().enumerate() {
        for (pos, p) in columns[*c].iter().enumerate() {
            for (a, coeff) in p.terms() {
                let key = (a.mul(m), pos);
                let i = *index.get(&key).expect("graded map of degree zero");
                rows[i][j] = field.add(&rows[i][j], coeff);
            }
        }
    }
    rows
}
