use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{EchelonResult, Matrix, RationalMatrix};

/// Each row scaled by the lcm of its denominators. Row spaces are unchanged.
pub fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the rank, the pivot columns
/// and the first `rank` rows of the echelon form (integer entries).
pub fn bareiss_rank_profile(rows: &[Vec<BigInt>], cols: usize) -> (usize, Vec<usize>, Vec<Vec<BigInt>>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut x = if row[j].is_zero() { BigInt::zero() } else { pv * &row[j] };
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    x -= &f * &pivot_row[j];
                }
                row[j] = if prev.is_one() { x } else { x / &prev };
            }
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (r, pivots, a)
}

/// Reduced row echelon form over the rationals, via fraction-free forward
/// elimination and rational back-substitution.
pub fn echelonize(m: &RationalMatrix) -> EchelonResult<BigRational> {
    let cols = m.cols();
    let (rank, pivots, ech) = bareiss_rank_profile(&integer_rows(m), cols);
    let mut rows: Vec<Vec<BigRational>> = ech
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.into_iter().map(|x| BigRational::new(x, lead.clone())).collect()
        })
        .collect();
    for i in (0..rank).rev() {
        let pc = pivots[i];
        let (above, below) = rows.split_at_mut(i);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    EchelonResult { rank, pivot_columns: pivots, reduced_rows: Matrix::from_rows(rows, cols) }
}
