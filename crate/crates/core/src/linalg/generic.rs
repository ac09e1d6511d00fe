use crate::field::Scalar;

use super::{EchelonResult, Matrix};

/// Textbook Gauss-Jordan over any field. Pivots are the first nonzero entry
/// in column order; `reduced_rows` keeps only the `rank` nonzero rows.
pub fn gauss_jordan<T: Scalar>(m: Matrix<T>) -> EchelonResult<T> {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    EchelonResult { rank: r, pivot_columns: pivots, reduced_rows: Matrix::from_rows(rows, cols) }
}
