//! Hilbert functions of monomial complete intersections and of the almost
//! complete intersections `(x_1^a, .., x_n^a, (x_1 + .. + x_n)^a)`, plus
//! truncated Fröberg series.

use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::generators::{in_combinatorial_ideal, initial_generators, Case};
use crate::monomial::enumerate_degree_piece;

/// Values of `dim (P_n / (x_1^a, .., x_n^a))_d` for `d = 0 ..= (a-1) n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub n: usize,
    pub a: u32,
    pub values: Vec<BigUint>,
}

impl HilbertTable {
    pub fn new(n: usize, a: u32) -> Self {
        let top = (a.saturating_sub(1) as usize) * n;
        let values = power_ci_row::<BigUint>(n, a, top);
        HilbertTable { n, a, values }
    }

    pub fn socle_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, d: usize) -> BigUint {
        self.values.get(d).cloned().unwrap_or_default()
    }
}

/// Row `d = 0 ..= top` of the complete-intersection Hilbert function, via
/// `G(n, d) = G(n-1, d) + .. + G(n-1, d-a+1)`.
pub fn power_ci_row<T>(n: usize, a: u32, top: usize) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T>,
{
    let mut row = vec![T::zero(); top + 1];
    row[0] = T::one();
    if a == 0 {
        return vec![T::zero(); top + 1];
    }
    let a = a as usize;
    for _ in 0..n {
        // prefix-window sum over the previous row
        let mut next = vec![T::zero(); top + 1];
        let mut window = T::zero();
        let prev = row;
        let mut queue: std::collections::VecDeque<T> = std::collections::VecDeque::with_capacity(a);
        for (d, slot) in next.iter_mut().enumerate() {
            window = window + prev[d].clone();
            queue.push_back(prev[d].clone());
            if queue.len() > a {
                // subtract by rebuilding; T has no Sub bound
                queue.pop_front();
                window = queue.iter().cloned().fold(T::zero(), |s, x| s + x);
            }
            *slot = window.clone();
        }
        row = next;
    }
    row
}

/// `dim (P_n / (x_1^a, .., x_n^a))_d`.
pub fn power_ci_hilbert(n: usize, a: u32, d: usize) -> BigUint {
    power_ci_row::<BigUint>(n, a, d).pop().unwrap_or_default()
}

/// `dim (P_n / (x_1^a, .., x_n^a, (x_1 + .. + x_n)^a))_d`, computed as
/// `max(P(n+1, d) - P(n+1, d-1), 0)` where `P` is the complete-intersection
/// Hilbert function in `n + 1` variables.
pub fn aci_hilbert(n: usize, a: u32, d: usize) -> BigUint {
    let row = power_ci_row::<BigUint>(n + 1, a, d);
    let here = &row[d];
    let before = if d == 0 { BigUint::zero() } else { row[d - 1].clone() };
    if *here > before {
        here - before
    } else {
        BigUint::zero()
    }
}

/// Whole row of [`aci_hilbert`] for `d = 0 ..= top`.
pub fn aci_row(n: usize, a: u32, top: usize) -> Vec<BigUint> {
    let row = power_ci_row::<BigUint>(n + 1, a, top);
    (0..=top)
        .map(|d| {
            let before = if d == 0 { BigUint::zero() } else { row[d - 1].clone() };
            if row[d] > before {
                &row[d] - before
            } else {
                BigUint::zero()
            }
        })
        .collect()
}

/// Number of degree-`d` monomials with exponents below `a` that avoid the
/// explicit squares or cubes generating set.
pub fn complement_count(case: Case, n: usize, d: u32) -> Result<usize> {
    let a = case.power();
    if !matches!(case, Case::Squares | Case::Cubes) {
        return Err(invalid!("complement counts exist for squares and cubes only"));
    }
    let gens = initial_generators(case, n, d.max(a))?;
    let mut count = 0;
    for m in enumerate_degree_piece(n, d, Some(a - 1)) {
        if !in_combinatorial_ideal(&m, &gens)? {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    /// Strictly positive coefficients of `t^0 ..= t^truncation_degree`.
    pub coefficients: Vec<BigUint>,
    pub truncation_degree: usize,
}

/// Keeps `values[0..=cap]` up to (not including) the first non-positive entry.
pub fn truncate_series(values: &[BigInt], cap: usize) -> TruncatedSeries {
    let coefficients: Vec<BigUint> = values
        .iter()
        .take(cap + 1)
        .take_while(|v| v.is_positive())
        .map(|v| v.magnitude().clone())
        .collect();
    let truncation_degree = coefficients.len().saturating_sub(1);
    TruncatedSeries { coefficients, truncation_degree }
}

/// Raw coefficients of `prod (1 - t^{d_k}) / (1 - t)^n` for `t^0 ..= t^top`.
pub fn froberg_raw(n: usize, form_degrees: &[u32], top: usize) -> Vec<BigInt> {
    let mut numerator = vec![BigInt::zero(); top + 1];
    numerator[0] = BigInt::one();
    for &dk in form_degrees {
        let dk = dk as usize;
        for i in (dk..=top).rev() {
            let shifted = numerator[i - dk].clone();
            numerator[i] -= shifted;
        }
    }
    // 1 / (1 - t)^n has coefficients C(n - 1 + j, j)
    let mut free = vec![BigInt::zero(); top + 1];
    if n == 0 {
        free[0] = BigInt::one();
    } else {
        let mut c = BigInt::one();
        for (j, slot) in free.iter_mut().enumerate() {
            *slot = c.clone();
            c = c * BigInt::from(n + j) / BigInt::from(j + 1);
        }
    }
    (0..=top)
        .map(|d| (0..=d).map(|i| &numerator[i] * &free[d - i]).sum())
        .collect()
}

pub fn froberg_truncation(n: usize, form_degrees: &[u32], cap: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(invalid!("need at least one variable"));
    }
    if form_degrees.contains(&0) {
        return Err(invalid!("form degrees must be positive"));
    }
    Ok(truncate_series(&froberg_raw(n, form_degrees, cap), cap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorollaryKind {
    GeneralA,
    Squares,
    Cubes,
}

/// Guaranteed truncation degree `D` for `n + 2` forms of degree `a`.
pub fn froberg_corollary_degree(n: usize, a: u32, which: CorollaryKind) -> Result<usize> {
    match which {
        CorollaryKind::Squares if a != 2 => Err(invalid!("squares corollary needs a = 2")),
        CorollaryKind::Cubes if a != 3 => Err(invalid!("cubes corollary needs a = 3")),
        CorollaryKind::GeneralA if a < 2 => Err(invalid!("power must be at least 2")),
        CorollaryKind::Squares => Ok((n + 2) / 3),
        CorollaryKind::Cubes => Ok(2 * n / 3 + 1),
        CorollaryKind::GeneralA => Ok((n * (a as usize - 1) + 1) / 4),
    }
}

/// Convenience for small values.
pub fn to_u64(v: &BigUint) -> u64 {
    v.to_u64().expect("value exceeds u64")
}
