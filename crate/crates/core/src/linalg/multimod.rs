//! Exact rank over the rationals from ranks modulo several primes.
//!
//! A prime at which the rank drops below the true rank `R` divides every
//! `R x R` minor. Once the product of the primes seen exceeds the Hadamard
//! bound for `(r+1)`-minors, where `r` is the largest modular rank observed,
//! no nonzero `(r+1)`-minor can exist and the rank is exactly `r`.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::MERSENNE_61;

use super::{bareiss_rank_profile, prev_prime, rank_mod, IntMatrix, PrimeRows};

/// Matrices with at most this many entries go straight to fraction-free elimination.
const BAREISS_ENTRIES: usize = 4096;
const MAX_PRIMES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// `bareiss`, `full-rank`, `upper-bound` or `hadamard`.
    pub method: String,
    pub primes_used: usize,
}

/// `log2` of the product of the `k` largest row norms (or column norms,
/// whichever is smaller): a bound for the absolute value of any `k x k` minor.
pub fn hadamard_log2(m: &IntMatrix, k: usize) -> f64 {
    // log2 |x| bounded above; exact enough while entries fit an f64
    let log_abs = |x: &num_bigint::BigInt| -> f64 {
        match x.abs().to_f64() {
            Some(f) if f.is_finite() => f.log2(),
            _ => x.bits() as f64,
        }
    };
    let mut rows = vec![Vec::new(); m.rows()];
    let mut cols = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if x.sign() != num_bigint::Sign::NoSign {
                let l = log_abs(x);
                rows[i].push(l);
                cols[j].push(l);
            }
        }
    }
    // log2 sqrt(sum 2^(2 l)) computed relative to the largest term
    let norm_log = |ls: &Vec<f64>| -> f64 {
        let top = ls.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return top;
        }
        top + 0.5 * ls.iter().map(|l| (2.0 * (l - top)).exp2()).sum::<f64>().log2()
    };
    let largest = |lines: &[Vec<f64>]| -> f64 {
        let mut v: Vec<f64> = lines.iter().map(norm_log).collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v.iter().take(k).sum()
    };
    largest(&rows).min(largest(&cols))
}

/// Rank over the rationals, exactly. `upper_hint` is a known upper bound
/// on the rank; reaching it with one prime ends the computation.
pub fn exact_rank(m: &IntMatrix, upper_hint: Option<usize>) -> Result<RankCertificate> {
    let full = m.rows().min(m.cols());
    let cert = |rank, method: &str, primes_used| RankCertificate { rank, method: method.into(), primes_used };
    if full == 0 {
        return Ok(cert(0, "full-rank", 0));
    }
    if m.rows() * m.cols() <= BAREISS_ENTRIES {
        let rank = bareiss_rank_profile(&m.row_vecs(), m.cols()).0;
        return Ok(cert(rank, "bareiss", 0));
    }
    let small: Option<Vec<i128>> = (0..m.rows()).flat_map(|i| m.row(i).iter()).map(|x| x.to_i128()).collect();
    let reduce = |p: u64| match &small {
        Some(v) => PrimeRows::from_i128(m.rows(), m.cols(), v, p),
        None => PrimeRows::from_int(m, p),
    };
    let done = |r: usize| r == full || upper_hint == Some(r);
    let mut p = MERSENNE_61;
    let mut r = rank_mod(&reduce(p));
    if done(r) {
        let method = if r == full { "full-rank" } else { "upper-bound" };
        return Ok(cert(r, method, 1));
    }
    let mut bound = hadamard_log2(m, r + 1);
    let mut acc = (p as f64).log2();
    let mut used = 1;
    while acc <= bound + 1.0 {
        if used >= MAX_PRIMES {
            return Err(Error::ResourceGuard(format!("rank certificate needs more than {MAX_PRIMES} primes")));
        }
        p = prev_prime(p).expect("primes below 2^61 are plentiful");
        used += 1;
        let rp = rank_mod(&reduce(p));
        if rp > r {
            r = rp;
            if done(r) {
                let method = if r == full { "full-rank" } else { "upper-bound" };
                return Ok(cert(r, method, used));
            }
            bound = hadamard_log2(m, r + 1);
        }
        acc += (p as f64).log2();
    }
    Ok(cert(r, "hadamard", used))
}
