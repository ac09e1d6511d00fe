use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{EchelonResult, IntMatrix, Matrix};

/// Row-major residues modulo a runtime prime `p < 2^62`.
#[derive(Clone, Debug)]
pub struct PrimeRows {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl PrimeRows {
    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let bp = BigInt::from(p);
        let data = (0..m.rows())
            .flat_map(|i| m.row(i).iter())
            .map(|x| {
                let r = x % &bp;
                let r = if r.sign() == num_bigint::Sign::Minus { r + &bp } else { r };
                r.to_u64().expect("residue below p")
            })
            .collect();
        PrimeRows { p, rows: m.rows(), cols: m.cols(), data }
    }

    pub fn from_i128(rows: usize, cols: usize, entries: &[i128], p: u64) -> Self {
        let data = entries.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect();
        PrimeRows { p, rows, cols, data }
    }
}

#[inline]
fn shoup_pre(w: u64, p: u64) -> u64 {
    ((u128::from(w) << 64) / u128::from(p)) as u64
}

/// `w * x mod p` for `x < p`, given `wp = shoup_pre(w, p)`.
#[inline]
fn mul_shoup(w: u64, wp: u64, x: u64, p: u64) -> u64 {
    let q = ((u128::from(wp) * u128::from(x)) >> 64) as u64;
    let r = w.wrapping_mul(x).wrapping_sub(q.wrapping_mul(p));
    if r >= p {
        r - p
    } else {
        r
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

/// Gaussian elimination mod `p` with first-nonzero pivots. With `full` the
/// result is the reduced row echelon form; otherwise only forward
/// elimination is done and the returned rows are not normalized.
pub fn echelon_mod(mut m: PrimeRows, full: bool) -> EchelonResult<u64> {
    let (p, nrows, cols) = (m.p, m.rows, m.cols);
    let data = &mut m.data;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                data.swap(r * cols + j, piv * cols + j);
            }
        }
        if full {
            let inv = inv_mod(data[r * cols + c], p);
            let invp = shoup_pre(inv, p);
            for x in &mut data[r * cols + c..(r + 1) * cols] {
                *x = mul_shoup(inv, invp, *x, p);
            }
        }
        let lead_inv = if full { 1 } else { inv_mod(data[r * cols + c], p) };
        let targets: Box<dyn Iterator<Item = usize>> =
            if full { Box::new((0..nrows).filter(|&i| i != r)) } else { Box::new(r + 1..nrows) };
        for i in targets {
            let x = data[i * cols + c];
            if x == 0 {
                continue;
            }
            let f = if full { x } else { (u128::from(x) * u128::from(lead_inv) % u128::from(p)) as u64 };
            let fp = shoup_pre(f, p);
            let (pivot_row, target) = if i < r {
                let (lo, hi) = data.split_at_mut(r * cols);
                (&hi[c..cols], &mut lo[i * cols + c..(i + 1) * cols])
            } else {
                let (lo, hi) = data.split_at_mut(i * cols);
                (&lo[r * cols + c..(r + 1) * cols], &mut hi[c..cols])
            };
            for (t, &y) in target.iter_mut().zip(pivot_row) {
                if y != 0 {
                    let s = mul_shoup(f, fp, y, p);
                    *t = if *t >= s { *t - s } else { *t + p - s };
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.data.truncate(r * cols);
    EchelonResult { rank: r, pivot_columns: pivots, reduced_rows: Matrix::new(r, cols, m.data) }
}

pub fn rank_mod(m: &PrimeRows) -> usize {
    // eliminating along the shorter side is cheaper
    if m.rows > m.cols {
        let mut t = vec![0u64; m.data.len()];
        for i in 0..m.rows {
            for j in 0..m.cols {
                t[j * m.rows + i] = m.data[i * m.cols + j];
            }
        }
        let tm = PrimeRows { p: m.p, rows: m.cols, cols: m.rows, data: t };
        return echelon_mod(tm, false).rank;
    }
    echelon_mod(m.clone(), false).rank
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `n`.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..n).rev().find(|&k| is_prime(k))
}
