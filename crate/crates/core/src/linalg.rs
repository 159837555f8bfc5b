//! Gauss–Jordan elimination over `Q(ζ_p)`.

use alloc::vec::Vec;

use crate::cyclotomic::CycNum;
use crate::residue::PrimeModulus;

/// Reduced row echelon form of `rows` (each of length `cols`), returned with
/// the pivot column of every nonzero row. Zero rows are dropped.
pub(crate) fn rref(mut rows: Vec<Vec<CycNum>>, cols: usize) -> (Vec<Vec<CycNum>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // Prefer the sparsest nonzero pivot; unit rows then clear whole columns cheaply.
        let Some(best) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i].iter().filter(|v| !v.is_zero()).count())
        else {
            continue;
        };
        rows.swap(r, best);
        if !rows[r][c].is_one() {
            let inv = rows[r][c].inverse().expect("pivot is nonzero");
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : M v = 0}` read off the reduced form: one vector per free
/// column, 1 in that column.
pub(crate) fn nullspace(modulus: PrimeModulus, rows: Vec<Vec<CycNum>>, cols: usize) -> Vec<Vec<CycNum>> {
    let (reduced, pivots) = rref(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = alloc::vec![CycNum::zero(modulus); cols];
            v[free] = CycNum::one(modulus);
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -&row[free];
            }
            v
        })
        .collect()
}
